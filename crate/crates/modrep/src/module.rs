use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::field::{Elt, Field};
use crate::group::{Group, QuotientGroup, SubgroupEmbedding};
use crate::matrix::{Echelon, Matrix};

/// A finite-dimensional left kG-module: one invertible matrix per group
/// generator, extended to all elements by word evaluation (memoized).
/// Vectors are columns and matrices act from the left.
pub struct GModule {
    pub group: Arc<Group>,
    pub field: Arc<Field>,
    pub dim: usize,
    pub gen_mats: Vec<Matrix>,
    actions: OnceLock<Arc<Vec<Matrix>>>,
}

impl Clone for GModule {
    fn clone(&self) -> Self {
        GModule {
            group: self.group.clone(),
            field: self.field.clone(),
            dim: self.dim,
            gen_mats: self.gen_mats.clone(),
            actions: clone_cache(&self.actions),
        }
    }
}

fn clone_cache(cache: &OnceLock<Arc<Vec<Matrix>>>) -> OnceLock<Arc<Vec<Matrix>>> {
    let fresh = OnceLock::new();
    if let Some(v) = cache.get() {
        let _ = fresh.set(v.clone());
    }
    fresh
}

impl fmt::Debug for GModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GModule(dim {}, group order {})", self.dim, self.group.order())
    }
}

impl GModule {
    pub fn new(group: &Arc<Group>, field: &Arc<Field>, dim: usize, gen_mats: Vec<Matrix>) -> Result<GModule> {
        if gen_mats.len() != group.gens.len() {
            return Err(Error::AlgebraMismatch(format!(
                "expected {} generator matrices, got {}",
                group.gens.len(),
                gen_mats.len()
            )));
        }
        for m in &gen_mats {
            if m.rows != dim || m.cols != dim {
                return Err(Error::DimensionMismatch("generator matrices must be square of equal size".into()));
            }
            if m.field.as_ref() != field.as_ref() {
                return Err(Error::AlgebraMismatch("generator matrix over wrong field".into()));
            }
            if dim > 0 && !m.is_invertible() {
                return Err(Error::AlgebraMismatch("generator matrix not invertible".into()));
            }
        }
        Ok(GModule {
            group: group.clone(),
            field: field.clone(),
            dim,
            gen_mats,
            actions: OnceLock::new(),
        })
    }

    /// The zero module.
    pub fn zero(group: &Arc<Group>, field: &Arc<Field>) -> GModule {
        let gen_mats = group.gens.iter().map(|_| Matrix::zero(field, 0, 0)).collect();
        GModule {
            group: group.clone(),
            field: field.clone(),
            dim: 0,
            gen_mats,
            actions: OnceLock::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.dim == 0
    }

    /// The trivial one-dimensional module.
    pub fn trivial(group: &Arc<Group>, field: &Arc<Field>) -> GModule {
        let gen_mats = group.gens.iter().map(|_| Matrix::identity(field, 1)).collect();
        GModule {
            group: group.clone(),
            field: field.clone(),
            dim: 1,
            gen_mats,
            actions: OnceLock::new(),
        }
    }

    /// The regular module kG: permutation matrices of left translation.
    pub fn regular(group: &Arc<Group>, field: &Arc<Field>) -> GModule {
        let n = group.order();
        let gen_mats = group
            .gens
            .iter()
            .map(|g| {
                let gi = group.elem_index(g).expect("generator enumerated");
                let mut m = Matrix::zero(field, n, n);
                for y in 0..n {
                    m[(group.mul(gi, y), y)] = 1;
                }
                m
            })
            .collect();
        GModule {
            group: group.clone(),
            field: field.clone(),
            dim: n,
            gen_mats,
            actions: OnceLock::new(),
        }
    }

    /// Matrices for every group element, built once by walking the BFS words.
    pub fn actions(&self) -> Arc<Vec<Matrix>> {
        self.actions
            .get_or_init(|| {
                let n = self.group.order();
                let mut out: Vec<Matrix> = Vec::with_capacity(n);
                out.push(Matrix::identity(&self.field, self.dim));
                for i in 1..n {
                    let (parent, g) = self.group.word_step(i).expect("non-identity has a word");
                    out.push(self.gen_mats[g].mul(&out[parent]));
                }
                Arc::new(out)
            })
            .clone()
    }

    pub fn action(&self, elem: usize) -> Matrix {
        self.actions()[elem].clone()
    }

    /// The action of a group-algebra element given by its coefficient vector
    /// over the element basis.
    pub fn algebra_action(&self, coeffs: &[Elt]) -> Matrix {
        assert_eq!(coeffs.len(), self.group.order());
        let acts = self.actions();
        let f = &self.field;
        let mut out = Matrix::zero(f, self.dim, self.dim);
        for (e, &c) in coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (slot, &a) in out.data.iter_mut().zip(&acts[e].data) {
                *slot = f.add(*slot, f.mul(c, a));
            }
        }
        out
    }

    /// Exhaustively verify that the generator matrices satisfy all relations,
    /// i.e. the element-wise action is a homomorphism.
    pub fn verify_action(&self) -> bool {
        let acts = self.actions();
        let n = self.group.order();
        for a in 0..n {
            for b in 0..n {
                if acts[self.group.mul(a, b)] != acts[a].mul(&acts[b]) {
                    return false;
                }
            }
        }
        true
    }

    pub fn same_algebra(&self, other: &GModule) -> bool {
        Arc::ptr_eq(&self.group, &other.group) && self.field.as_ref() == other.field.as_ref()
    }

    pub fn direct_sum(&self, other: &GModule) -> Result<GModule> {
        if !self.same_algebra(other) {
            return Err(Error::AlgebraMismatch("direct sum needs one algebra".into()));
        }
        let gen_mats = self
            .gen_mats
            .iter()
            .zip(&other.gen_mats)
            .map(|(a, b)| a.direct_sum(b))
            .collect();
        Ok(GModule {
            group: self.group.clone(),
            field: self.field.clone(),
            dim: self.dim + other.dim,
            gen_mats,
            actions: OnceLock::new(),
        })
    }

    pub fn direct_sum_all(group: &Arc<Group>, field: &Arc<Field>, parts: &[GModule]) -> Result<GModule> {
        let mut acc = GModule::zero(group, field);
        for p in parts {
            acc = acc.direct_sum(p)?;
        }
        Ok(acc)
    }

    /// Inner tensor product over k with the diagonal G-action.
    pub fn tensor(&self, other: &GModule) -> Result<GModule> {
        if !self.same_algebra(other) {
            return Err(Error::AlgebraMismatch("tensor needs one algebra".into()));
        }
        let gen_mats = self
            .gen_mats
            .iter()
            .zip(&other.gen_mats)
            .map(|(a, b)| a.kronecker(b))
            .collect();
        Ok(GModule {
            group: self.group.clone(),
            field: self.field.clone(),
            dim: self.dim * other.dim,
            gen_mats,
            actions: OnceLock::new(),
        })
    }

    /// The submodule spanned by an invariant subspace. Returns the module on
    /// the given basis together with the inclusion matrix (dim x rank).
    pub fn sub_module(&self, basis: &[Vec<Elt>]) -> Result<(GModule, Matrix)> {
        let f = &self.field;
        let r = basis.len();
        let mut incl = Matrix::zero(f, self.dim, r);
        for (j, v) in basis.iter().enumerate() {
            if v.len() != self.dim {
                return Err(Error::DimensionMismatch("basis vector of wrong length".into()));
            }
            for i in 0..self.dim {
                incl[(i, j)] = v[i];
            }
        }
        let mut gen_mats = Vec::with_capacity(self.gen_mats.len());
        for g in &self.gen_mats {
            let image = g.mul(&incl); // dim x r
            // Solve incl * X = image column by column.
            let mut x = Matrix::zero(f, r, r);
            for c in 0..r {
                let col = image.col(c);
                let (sol, _) = incl.solve(&col)?;
                let sol = sol.ok_or_else(|| {
                    Error::Internal("subspace is not invariant under the action".into())
                })?;
                for i in 0..r {
                    x[(i, c)] = sol[i];
                }
            }
            gen_mats.push(x);
        }
        Ok((GModule::new(&self.group, f, r, gen_mats)?, incl))
    }

    /// The quotient by an invariant subspace. Returns the quotient module and
    /// the projection matrix (rank x dim).
    pub fn quotient_module(&self, sub_basis: &[Vec<Elt>]) -> Result<(GModule, Matrix)> {
        let f = &self.field;
        let r = sub_basis.len();
        let q = self.dim - r;
        // Complete the subspace basis to a full basis.
        let mut ech = Echelon::new(f, self.dim);
        for v in sub_basis {
            if !ech.add(v) {
                return Err(Error::Internal("dependent subspace basis".into()));
            }
        }
        let mut complement: Vec<usize> = Vec::with_capacity(q);
        for i in 0..self.dim {
            let mut e = vec![0; self.dim];
            e[i] = 1;
            if ech.add(&e) {
                complement.push(i);
            }
        }
        debug_assert_eq!(complement.len(), q);
        // P = [sub | complement] column basis, change to that basis.
        let mut p = Matrix::zero(f, self.dim, self.dim);
        for (j, v) in sub_basis.iter().enumerate() {
            for i in 0..self.dim {
                p[(i, j)] = v[i];
            }
        }
        for (j, &ei) in complement.iter().enumerate() {
            p[(ei, r + j)] = 1;
        }
        let p_inv = p.inverse().ok_or_else(|| Error::Internal("basis completion failed".into()))?;
        let mut gen_mats = Vec::with_capacity(self.gen_mats.len());
        for g in &self.gen_mats {
            let conj = p_inv.mul(&g.mul(&p));
            // Lower-left block must vanish; lower-right is the quotient action.
            let mut qm = Matrix::zero(f, q, q);
            for i in 0..q {
                for j in 0..q {
                    qm[(i, j)] = conj[(r + i, r + j)];
                }
                for j in 0..r {
                    if conj[(r + i, j)] != 0 {
                        return Err(Error::Internal("subspace not invariant in quotient".into()));
                    }
                }
            }
            gen_mats.push(qm);
        }
        // Projection = last q rows of P^-1.
        let mut proj = Matrix::zero(f, q, self.dim);
        for i in 0..q {
            for j in 0..self.dim {
                proj[(i, j)] = p_inv[(r + i, j)];
            }
        }
        Ok((GModule::new(&self.group, f, q, gen_mats)?, proj))
    }

    /// Serialize to the plain text exchange format: group reference line,
    /// field header, then one matrix per generator (elements as integer codes).
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "module dim {} group order {} degree {}\n",
            self.dim,
            self.group.order(),
            self.group.degree
        ));
        out.push_str(&self.field.header());
        out.push('\n');
        for (gi, m) in self.gen_mats.iter().enumerate() {
            out.push_str(&format!("generator {} {}\n", gi, self.group.gens[gi].cycle_string()));
            for r in 0..m.rows {
                let row: Vec<String> = m.row(r).iter().map(|e| e.to_string()).collect();
                out.push_str(&row.join(" "));
                out.push('\n');
            }
        }
        out
    }
}

/// A homomorphism of kG-modules: a (target.dim x source.dim) matrix verified
/// to intertwine the two actions.
#[derive(Clone, Debug)]
pub struct ModuleHom {
    pub matrix: Matrix,
}

impl ModuleHom {
    pub fn new(source: &GModule, target: &GModule, matrix: Matrix) -> Result<ModuleHom> {
        if matrix.rows != target.dim || matrix.cols != source.dim {
            return Err(Error::DimensionMismatch("hom matrix shape".into()));
        }
        if !is_intertwiner(source, target, &matrix) {
            return Err(Error::AlgebraMismatch("matrix does not intertwine the actions".into()));
        }
        Ok(ModuleHom { matrix })
    }
}

/// Does H satisfy rho_N(g) H = H rho_M(g) for every generator?
pub fn is_intertwiner(m: &GModule, n: &GModule, h: &Matrix) -> bool {
    m.gen_mats
        .iter()
        .zip(&n.gen_mats)
        .all(|(gm, gn)| gn.mul(h) == h.mul(gm))
}

/// Basis of Hom_kG(m, n): the solution space of the intertwining equations
/// rho_N(g) H = H rho_M(g) over the group generators.
pub fn hom_space(m: &GModule, n: &GModule) -> Result<Vec<Matrix>> {
    if !m.same_algebra(n) {
        return Err(Error::AlgebraMismatch("hom space needs one algebra".into()));
    }
    let f = &m.field;
    let (dm, dn) = (m.dim, n.dim);
    if dm == 0 || dn == 0 {
        return Ok(Vec::new());
    }
    let unknowns = dm * dn; // H[i][j], i < dn, j < dm, index i*dm + j
    let gens = m.gen_mats.len();
    let mut sys = Matrix::zero(f, gens * unknowns, unknowns);
    for g in 0..gens {
        let a = &n.gen_mats[g]; // dn x dn
        let b = &m.gen_mats[g]; // dm x dm
        // Row for equation (i, j): sum_k a[i,k] H[k,j] - sum_k H[i,k] b[k,j] = 0.
        for i in 0..dn {
            for j in 0..dm {
                let row = g * unknowns + i * dm + j;
                for k in 0..dn {
                    let idx = k * dm + j;
                    sys[(row, idx)] = f.add(sys[(row, idx)], a[(i, k)]);
                }
                for k in 0..dm {
                    let idx = i * dm + k;
                    sys[(row, idx)] = f.sub(sys[(row, idx)], b[(k, j)]);
                }
            }
        }
    }
    let kernel = sys.nullspace();
    Ok(kernel
        .into_iter()
        .map(|v| {
            let mut h = Matrix::zero(f, dn, dm);
            h.data.copy_from_slice(&v);
            h
        })
        .collect())
}

pub fn hom_dim(m: &GModule, n: &GModule) -> Result<usize> {
    Ok(hom_space(m, n)?.len())
}

/// Restriction along a subgroup embedding: same space, action through the
/// subgroup's generators.
pub fn restrict(m: &GModule, emb: &SubgroupEmbedding) -> Result<GModule> {
    if !Arc::ptr_eq(&emb.parent, &m.group) {
        return Err(Error::AlgebraMismatch("restrict: module not over embedding parent".into()));
    }
    let acts = m.actions();
    let gen_mats = emb
        .sub
        .gens
        .iter()
        .map(|g| {
            let si = emb.sub.elem_index(g).expect("generator enumerated");
            acts[emb.to_parent(si)].clone()
        })
        .collect();
    GModule::new(&emb.sub, &m.field, m.dim, gen_mats)
}

/// Induction along a subgroup embedding: kG (x)_{kH} V on the basis
/// {coset rep (x) basis vector}, with block-permutation action.
pub fn induce(v: &GModule, emb: &SubgroupEmbedding) -> Result<GModule> {
    if !Arc::ptr_eq(&emb.sub, &v.group) {
        return Err(Error::AlgebraMismatch("induce: module not over embedding subgroup".into()));
    }
    let parent = &emb.parent;
    let field = &v.field;
    let reps = parent.coset_reps(emb);
    let index = reps.len();
    let dim = index * v.dim;
    // coset position of every parent element
    let mut coset_pos = vec![usize::MAX; parent.order()];
    for (i, &r) in reps.iter().enumerate() {
        for &h in &emb.map {
            coset_pos[parent.mul(r, h)] = i;
        }
    }
    let vacts = v.actions();
    let mut gen_mats = Vec::with_capacity(parent.gens.len());
    for gperm in &parent.gens {
        let g = parent.elem_index(gperm).expect("generator enumerated");
        let mut mat = Matrix::zero(field, dim, dim);
        for (i, &t) in reps.iter().enumerate() {
            let gt = parent.mul(g, t);
            let ip = coset_pos[gt];
            // h = t_{ip}^{-1} g t_i lies in the subgroup image.
            let h_parent = parent.mul(parent.inv(reps[ip]), gt);
            let h = emb
                .from_parent(h_parent)
                .expect("coset arithmetic stays in the subgroup");
            let block = &vacts[h];
            for r in 0..v.dim {
                for c in 0..v.dim {
                    let val = block[(r, c)];
                    if val != 0 {
                        mat[(ip * v.dim + r, i * v.dim + c)] = val;
                    }
                }
            }
        }
        gen_mats.push(mat);
    }
    GModule::new(parent, field, dim, gen_mats)
}

/// The conjugate module: same space, g acts as the old action of
/// gtilde^-1 g gtilde. Requires the embedded subgroup to be normal.
pub fn conjugate(m: &GModule, emb: &SubgroupEmbedding, gtilde: usize) -> Result<GModule> {
    if !Arc::ptr_eq(&emb.sub, &m.group) {
        return Err(Error::AlgebraMismatch("conjugate: module not over embedded subgroup".into()));
    }
    if !emb.is_normal() {
        return Err(Error::NotNormal("conjugation twist needs a normal subgroup".into()));
    }
    let parent = &emb.parent;
    let acts = m.actions();
    let inv = parent.inv(gtilde);
    let gen_mats = m
        .group
        .gens
        .iter()
        .map(|gperm| {
            let si = m.group.elem_index(gperm).expect("generator enumerated");
            let p = emb.to_parent(si);
            let conj_parent = parent.mul(parent.mul(inv, p), gtilde);
            let cs = emb
                .from_parent(conj_parent)
                .expect("normality keeps conjugates inside");
            acts[cs].clone()
        })
        .collect();
    GModule::new(&m.group, &m.field, m.dim, gen_mats)
}

/// Inflation along a quotient map: the parent acts through the projection.
pub fn inflate(q: &QuotientGroup, v: &GModule) -> Result<GModule> {
    if !Arc::ptr_eq(&q.quotient, &v.group) {
        return Err(Error::AlgebraMismatch("inflate: module not over the quotient group".into()));
    }
    let vacts = v.actions();
    let gen_mats = q
        .parent
        .gens
        .iter()
        .map(|gperm| {
            let gi = q.parent.elem_index(gperm).expect("generator enumerated");
            vacts[q.projection[gi]].clone()
        })
        .collect();
    GModule::new(&q.parent, &v.field, v.dim, gen_mats)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::group::{alternating, cyclic, parse_normal_spec, symmetric};

    #[test]
    fn regular_module_is_a_representation() {
        let f = Field::new(2, 2).unwrap();
        for g in [cyclic(4).unwrap(), symmetric(3).unwrap(), alternating(4).unwrap()] {
            let m = GModule::regular(&g, &f);
            assert_eq!(m.dim, g.order());
            assert!(m.verify_action());
        }
    }

    #[test]
    fn hom_space_returns_intertwiners() {
        let f = Field::new(2, 2).unwrap();
        let g = symmetric(3).unwrap();
        let reg = GModule::regular(&g, &f);
        for h in hom_space(&reg, &reg).unwrap() {
            assert!(is_intertwiner(&reg, &reg, &h));
            ModuleHom::new(&reg, &reg, h).unwrap();
        }
    }

    #[test]
    fn hom_from_regular_has_dim_of_target() {
        let f = Field::new(2, 2).unwrap();
        let g = symmetric(3).unwrap();
        let reg = GModule::regular(&g, &f);
        let triv = GModule::trivial(&g, &f);
        assert_eq!(hom_dim(&reg, &triv).unwrap(), 1);
        assert_eq!(hom_dim(&reg, &reg).unwrap(), g.order());
        let sum = triv.direct_sum(&triv).unwrap();
        assert_eq!(hom_dim(&reg, &sum).unwrap(), 2);
    }

    #[test]
    fn tensor_dims_multiply_and_trivial_is_identity() {
        let f = Field::new(2, 2).unwrap();
        let g = alternating(4).unwrap();
        let reg = GModule::regular(&g, &f);
        let triv = GModule::trivial(&g, &f);
        let t = reg.tensor(&triv).unwrap();
        assert_eq!(t.dim, reg.dim);
        assert!(t.verify_action());
        let t2 = reg.tensor(&reg).unwrap();
        assert_eq!(t2.dim, reg.dim * reg.dim);
    }

    #[test]
    fn induce_restrict_dims() {
        let f = Field::new(2, 2).unwrap();
        let s4 = symmetric(4).unwrap();
        let a4 = parse_normal_spec(&s4, "builtin:alternating:4").unwrap();
        let triv = GModule::trivial(&a4.sub, &f);
        let ind = induce(&triv, &a4).unwrap();
        assert_eq!(ind.dim, 2);
        assert!(ind.verify_action());
        let reg_s4 = GModule::regular(&s4, &f);
        let res = restrict(&reg_s4, &a4).unwrap();
        assert_eq!(res.dim, 24);
        assert!(res.verify_action());
    }

    #[test]
    fn induction_of_regular_is_regular() {
        // Ind_H^G kH = kG, so dims and hom dims must match the regular module.
        let f = Field::new(2, 2).unwrap();
        let s4 = symmetric(4).unwrap();
        let a4 = parse_normal_spec(&s4, "builtin:alternating:4").unwrap();
        let reg_h = GModule::regular(&a4.sub, &f);
        let ind = induce(&reg_h, &a4).unwrap();
        assert_eq!(ind.dim, 24);
        assert!(ind.verify_action());
        let reg_g = GModule::regular(&s4, &f);
        assert_eq!(hom_dim(&ind, &reg_g).unwrap(), hom_dim(&reg_g, &reg_g).unwrap());
    }

    #[test]
    fn conjugation_by_inner_elements_preserves_homs() {
        let f = Field::new(2, 2).unwrap();
        let s4 = symmetric(4).unwrap();
        let a4 = parse_normal_spec(&s4, "builtin:alternating:4").unwrap();
        let reg = GModule::regular(&a4.sub, &f);
        // conjugating by an element of A4 itself gives an isomorphic module
        let inner = a4.to_parent(5.min(a4.sub.order() - 1));
        let twisted = conjugate(&reg, &a4, inner).unwrap();
        assert!(twisted.verify_action());
        assert_eq!(hom_dim(&reg, &twisted).unwrap(), hom_dim(&reg, &reg).unwrap());
    }

    #[test]
    fn inflate_through_s4_mod_a4() {
        let f = Field::new(2, 2).unwrap();
        let s4 = symmetric(4).unwrap();
        let a4 = parse_normal_spec(&s4, "builtin:alternating:4").unwrap();
        let q = crate::group::QuotientGroup::new(&s4, a4).unwrap();
        let reg_q = GModule::regular(&q.quotient, &f);
        let infl = inflate(&q, &reg_q).unwrap();
        assert_eq!(infl.dim, 2);
        assert!(infl.verify_action());
    }

    #[test]
    fn sub_and_quotient_of_regular_c2() {
        let f = Field::new(2, 1).unwrap();
        let c2 = cyclic(2).unwrap();
        let reg = GModule::regular(&c2, &f);
        // The span of (1,1) is the socle.
        let (sub, incl) = reg.sub_module(&[vec![1, 1]]).unwrap();
        assert_eq!(sub.dim, 1);
        assert!(sub.verify_action());
        assert_eq!(incl.col(0), vec![1, 1]);
        let (quot, _proj) = reg.quotient_module(&[vec![1, 1]]).unwrap();
        assert_eq!(quot.dim, 1);
        // both are the trivial module
        assert_eq!(hom_dim(&sub, &quot).unwrap(), 1);
    }

    #[test]
    fn serialization_mentions_field_header() {
        let f = Field::new(2, 2).unwrap();
        let c2 = cyclic(2).unwrap();
        let reg = GModule::regular(&c2, &f);
        let text = reg.serialize();
        assert!(text.contains("GF(2^2) mod 1 1 1"));
        assert!(text.contains("generator 0"));
    }
}
