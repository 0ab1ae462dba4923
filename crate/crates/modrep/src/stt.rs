//! Support tau-tilting pairs and the mutation-driven enumeration of their
//! poset, for a full group algebra or for one block of it.
//!
//! Nodes are basic pairs (M, P) keyed by sorted iso-class lists. Enumeration
//! runs breadth-first from the maximum (kG, 0), exchanging one summand at a
//! time; the exchange graph of a tau-tilting finite algebra is connected and
//! coincides with the Hasse quiver, so this reaches every class and every
//! arrow. The semantic order (Fac-containment via traces) is computed
//! independently and checked against arrow reachability.

use std::collections::{HashMap, VecDeque};
use std::sync::Arc;

use crate::algebra::{ClassId, GroupAlgebra};
use crate::error::{Error, Result};
use crate::field::Elt;
use crate::matrix::{Echelon, Matrix};
use crate::module::GModule;
use crate::rng::Rng;

pub const DEFAULT_NODE_CAP: usize = 100_000;

/// A group algebra, optionally restricted to one block: the block's central
/// idempotent filters which simples, projectives and modules belong.
#[derive(Clone)]
pub struct AlgebraView {
    pub ga: Arc<GroupAlgebra>,
    /// (block index, central idempotent as a kG coefficient vector)
    pub block: Option<(usize, Vec<Elt>)>,
}

impl AlgebraView {
    pub fn full(ga: &Arc<GroupAlgebra>) -> AlgebraView {
        AlgebraView { ga: ga.clone(), block: None }
    }

    pub fn of_block(ga: &Arc<GroupAlgebra>, block_index: usize, idempotent: Vec<Elt>) -> AlgebraView {
        AlgebraView { ga: ga.clone(), block: Some((block_index, idempotent)) }
    }

    /// Does the given indecomposable class lie in this view's algebra?
    pub fn contains_class(&self, id: ClassId) -> Result<bool> {
        match &self.block {
            None => Ok(true),
            Some((_, idem)) => {
                let rep = self.ga.class_rep(id);
                let action = rep.algebra_action(idem);
                Ok(action.is_identity())
            }
        }
    }

    /// Project a module onto the view (image of the block idempotent); the
    /// identity for the full view.
    pub fn project(&self, m: &GModule) -> Result<GModule> {
        match &self.block {
            None => Ok(m.clone()),
            Some((_, idem)) => {
                let action = m.algebra_action(idem);
                let mut ech = Echelon::new(&m.field, m.dim);
                for c in 0..action.cols {
                    ech.add(&action.col(c));
                }
                let basis = ech.into_basis();
                Ok(m.sub_module(&basis)?.0)
            }
        }
    }

    pub fn simples(&self) -> Result<Vec<ClassId>> {
        let mut out = Vec::new();
        for id in self.ga.simple_ids()? {
            if self.contains_class(id)? {
                out.push(id);
            }
        }
        Ok(out)
    }

    pub fn projectives(&self) -> Result<Vec<ClassId>> {
        let mut out = Vec::new();
        for id in self.ga.projective_ids()? {
            if self.contains_class(id)? {
                out.push(id);
            }
        }
        Ok(out)
    }

    pub fn num_simples(&self) -> Result<usize> {
        Ok(self.simples()?.len())
    }
}

/// A basic support tau-tilting pair, stored as sorted class-id lists.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SttPair {
    pub m: Vec<ClassId>,
    pub p: Vec<ClassId>,
}

impl SttPair {
    pub fn new(mut m: Vec<ClassId>, mut p: Vec<ClassId>) -> SttPair {
        m.sort();
        m.dedup();
        p.sort();
        p.dedup();
        SttPair { m, p }
    }

    pub fn key(&self) -> (Vec<ClassId>, Vec<ClassId>) {
        (self.m.clone(), self.p.clone())
    }
}

/// Is the module with these summand classes tau-rigid?
pub fn is_tau_rigid_classes(view: &AlgebraView, m: &[ClassId]) -> Result<bool> {
    view.ga.is_tau_rigid_pair_classes(m, &[])
}

pub fn is_tau_rigid(view: &AlgebraView, module: &GModule, rng: &mut Rng) -> Result<bool> {
    if module.dim == 0 {
        return Ok(true);
    }
    let classes: Vec<ClassId> =
        view.ga.decompose_classes(module, rng)?.into_iter().map(|(c, _)| c).collect();
    is_tau_rigid_classes(view, &classes)
}

/// The full support-tau-tilting-pair test: tau-rigid pair, P projective in
/// the view, disjoint summand lists, and |M| + |P| = number of simples.
pub fn is_stt_pair(view: &AlgebraView, pair: &SttPair) -> Result<bool> {
    for &c in &pair.m {
        if !view.contains_class(c)? {
            return Ok(false);
        }
    }
    let projs = view.projectives()?;
    for &q in &pair.p {
        if !projs.contains(&q) {
            return Ok(false);
        }
    }
    if pair.m.iter().any(|c| pair.p.contains(c)) {
        return Ok(false);
    }
    if pair.m.len() + pair.p.len() != view.num_simples()? {
        return Ok(false);
    }
    view.ga.is_tau_rigid_pair_classes(&pair.m, &pair.p)
}

/// Consistency audit from the completion criterion: a tau-rigid pair (M, P)
/// is support tau-tilting iff no test module X outside add M satisfies
/// Hom(M, tau X) = Hom(X, tau M) = Hom(P, X) = 0. The test modules range
/// over every discovered class of the view.
pub fn maximality_check(view: &AlgebraView, pair: &SttPair, test_classes: &[ClassId]) -> Result<bool> {
    let ga = &view.ga;
    for &x in test_classes {
        if pair.m.contains(&x) {
            continue;
        }
        if !view.contains_class(x)? {
            continue;
        }
        let mut passes = true;
        for t in ga.tau_classes(x)? {
            for &a in &pair.m {
                if ga.hom_dim_classes(a, t)? > 0 {
                    passes = false;
                }
            }
        }
        if passes {
            'outer: for &a in &pair.m {
                for t in ga.tau_classes(a)? {
                    if ga.hom_dim_classes(x, t)? > 0 {
                        passes = false;
                        break 'outer;
                    }
                }
            }
        }
        if passes {
            for &q in &pair.p {
                if ga.hom_dim_classes(q, x)? > 0 {
                    passes = false;
                }
            }
        }
        if passes {
            return Ok(false); // X would complete the pair further: not maximal
        }
    }
    Ok(true)
}

/// Exchange at one indecomposable summand of M: compute the other completion
/// of the almost complete pair (M/X, P). When X lies outside Fac(M/X) the
/// partner is smaller and comes from the left-approximation recipe; otherwise
/// the partner is larger and is recovered as the unique other completion
/// among the discovered classes.
pub fn mutate(view: &AlgebraView, pair: &SttPair, at: usize, rng: &mut Rng) -> Result<SttPair> {
    let x = pair.m[at];
    let rest: Vec<ClassId> = pair.m.iter().copied().filter(|&c| c != x).collect();
    if view.ga.generates_classes(&rest, x)? {
        mutate_up(view, pair, x, &rest)
    } else {
        mutate_down(view, pair, x, &rest, rng)
    }
}

/// Is the exchange at this summand a descent? True exactly when X does not
/// lie in Fac(M/X).
pub fn mutation_decreases(view: &AlgebraView, pair: &SttPair, at: usize) -> Result<bool> {
    let x = pair.m[at];
    let rest: Vec<ClassId> = pair.m.iter().copied().filter(|&c| c != x).collect();
    Ok(!view.ga.generates_classes(&rest, x)?)
}

fn mutate_down(
    view: &AlgebraView,
    pair: &SttPair,
    x: ClassId,
    rest: &[ClassId],
    rng: &mut Rng,
) -> Result<SttPair> {
    let ga = &view.ga;
    let rest = rest.to_vec();

    // Universal map X -> (+) N_i over a hom basis for each target, then drop
    // components that factor through the others (left-minimal approximation).
    let mut components: Vec<(ClassId, Matrix)> = Vec::new();
    for &n in &rest {
        for h in ga.hom_basis_classes(x, n)?.iter() {
            components.push((n, h.clone()));
        }
    }
    minimize_approximation(ga, x, &mut components)?;

    let x_rep = ga.class_rep(x);
    let new_class = if components.is_empty() {
        None
    } else {
        // E, f and its cokernel.
        let parts: Vec<GModule> = components.iter().map(|(n, _)| ga.class_rep(*n)).collect();
        let e = GModule::direct_sum_all(&ga.group, &ga.field, &parts)?;
        let mut f = Matrix::zero(&ga.field, e.dim, x_rep.dim);
        let mut roff = 0;
        for (_, h) in &components {
            for r in 0..h.rows {
                for c in 0..h.cols {
                    f[(roff + r, c)] = h[(r, c)];
                }
            }
            roff += h.rows;
        }
        let mut img = Echelon::new(&ga.field, e.dim);
        for c in 0..f.cols {
            img.add(&f.col(c));
        }
        let (coker, _) = e.quotient_module(&img.into_basis())?;
        if coker.dim == 0 {
            None
        } else {
            let classes = ga.decompose_classes(&coker, rng)?;
            let fresh: Vec<ClassId> = classes
                .iter()
                .map(|&(c, _)| c)
                .filter(|c| !rest.contains(c))
                .collect();
            match fresh.len() {
                0 => None,
                1 => Some(fresh[0]),
                _ => {
                    return Err(Error::Internal(format!(
                        "mutation produced {} new classes",
                        fresh.len()
                    )))
                }
            }
        }
    };

    let new_pair = match new_class {
        Some(y) => SttPair::new(
            rest.iter().copied().chain([y]).collect(),
            pair.p.clone(),
        ),
        None => {
            // Support drop: the unique projective outside add P with
            // Hom(Q, M/X) = 0 joins the projective part.
            let mut candidates = Vec::new();
            for q in view.projectives()? {
                if pair.p.contains(&q) {
                    continue;
                }
                let mut vanish = true;
                for &n in &rest {
                    if ga.hom_dim_classes(q, n)? > 0 {
                        vanish = false;
                        break;
                    }
                }
                if vanish {
                    candidates.push(q);
                }
            }
            if candidates.len() != 1 {
                return Err(Error::Internal(format!(
                    "support drop found {} completing projectives",
                    candidates.len()
                )));
            }
            SttPair::new(rest, pair.p.iter().copied().chain([candidates[0]]).collect())
        }
    };
    if new_pair.key() == pair.key() {
        return Err(Error::Internal("mutation returned the same pair".into()));
    }
    if !is_stt_pair(view, &new_pair)? {
        return Err(Error::Internal("mutation produced a non-stt pair".into()));
    }
    Ok(new_pair)
}

/// The larger completion of (M/X, P): by uniqueness of completions it is the
/// single other stt pair (M/X + W, P) over the classes discovered so far.
fn mutate_up(view: &AlgebraView, pair: &SttPair, x: ClassId, rest: &[ClassId]) -> Result<SttPair> {
    let mut found: Option<SttPair> = None;
    for idx in 0..view.ga.class_count() {
        let w = ClassId(idx);
        if w == x || rest.contains(&w) || !view.contains_class(w)? {
            continue;
        }
        let cand = SttPair::new(rest.iter().copied().chain([w]).collect(), pair.p.clone());
        if is_stt_pair(view, &cand)? {
            if found.is_some() {
                return Err(Error::Internal(
                    "two distinct completions of an almost complete pair".into(),
                ));
            }
            found = Some(cand);
        }
    }
    found.ok_or_else(|| {
        Error::Internal("upward mutation partner not among discovered classes".into())
    })
}

/// Greedy left-minimization: drop any component that factors through the map
/// assembled from the remaining ones.
fn minimize_approximation(
    ga: &Arc<GroupAlgebra>,
    x: ClassId,
    components: &mut Vec<(ClassId, Matrix)>,
) -> Result<()> {
    let x_dim = ga.class_info(x).dim;
    'outer: loop {
        for j in 0..components.len() {
            let (target_j, h_j) = components[j].clone();
            // columns: vec(g_s o f_t) for each other component t and each
            // basis hom g_s: target_t -> target_j.
            let mut cols: Vec<Vec<Elt>> = Vec::new();
            for (t, (target_t, f_t)) in components.iter().enumerate() {
                if t == j {
                    continue;
                }
                for g in ga.hom_basis_classes(*target_t, target_j)?.iter() {
                    cols.push(g.mul(f_t).data);
                }
            }
            if cols.is_empty() {
                continue;
            }
            let rows = h_j.rows * x_dim;
            let mut sys = Matrix::zero(&ga.field, rows, cols.len());
            for (ci, col) in cols.iter().enumerate() {
                for (ri, &v) in col.iter().enumerate() {
                    sys[(ri, ci)] = v;
                }
            }
            let (sol, _) = sys.solve(&h_j.data)?;
            if sol.is_some() {
                components.remove(j);
                continue 'outer;
            }
        }
        return Ok(());
    }
}

#[derive(Clone, Debug)]
pub struct SttNode {
    pub pair: SttPair,
}

/// The enumerated poset: nodes in BFS discovery order (node 0 is the maximum
/// (kG, 0)), Hasse arrows oriented from larger to smaller, and the
/// reachability closure of the arrows.
pub struct SttPoset {
    pub view: AlgebraView,
    pub nodes: Vec<SttNode>,
    pub edges: Vec<(usize, usize)>,
    index: HashMap<(Vec<ClassId>, Vec<ClassId>), usize>,
    m_index: HashMap<Vec<ClassId>, usize>,
    reach: Vec<Vec<bool>>,
}

impl SttPoset {
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn find(&self, pair: &SttPair) -> Option<usize> {
        self.index.get(&pair.key()).copied()
    }

    /// Look a node up by its module part (the projective part is determined).
    pub fn find_by_m(&self, m: &[ClassId]) -> Option<usize> {
        let mut key = m.to_vec();
        key.sort();
        key.dedup();
        self.m_index.get(&key).copied()
    }

    /// Arrow-reachability order: does node i dominate node j (i >= j)?
    pub fn ge(&self, i: usize, j: usize) -> bool {
        self.reach[i][j]
    }

    /// Semantic order by Fac-containment: node i >= node j iff every summand
    /// of M_j is generated by M_i.
    pub fn ge_fac(&self, i: usize, j: usize) -> Result<bool> {
        for &c in &self.nodes[j].pair.m {
            if !self.view.ga.generates_classes(&self.nodes[i].pair.m, c)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The maximum node (kG, 0) and the minimum (0, kG).
    pub fn maximum(&self) -> usize {
        0
    }

    pub fn minimum(&self) -> Result<usize> {
        let projs = self.view.projectives()?;
        let pair = SttPair::new(Vec::new(), projs);
        self.find(&pair)
            .ok_or_else(|| Error::Internal("poset has no minimum node".into()))
    }

    /// Assert the agreement of the two order computations on all node pairs
    /// and the structural Hasse invariants.
    pub fn verify_order_agreement(&self) -> Result<()> {
        let n = self.node_count();
        for i in 0..n {
            for j in 0..n {
                let fac = self.ge_fac(i, j)?;
                if fac != self.ge(i, j) {
                    return Err(Error::Internal(format!(
                        "order disagreement between Fac and reachability at ({i}, {j})"
                    )));
                }
            }
        }
        // Antisymmetry.
        for i in 0..n {
            for j in 0..n {
                if i != j && self.ge(i, j) && self.ge(j, i) {
                    return Err(Error::Internal("directed cycle in the Hasse diagram".into()));
                }
            }
        }
        // Every non-maximal node has an incoming arrow; out-degree bound.
        let mut indeg = vec![0usize; n];
        let mut outdeg = vec![0usize; n];
        for &(a, b) in &self.edges {
            outdeg[a] += 1;
            indeg[b] += 1;
        }
        let bound = self.view.num_simples()?;
        for i in 0..n {
            if i != self.maximum() && indeg[i] == 0 {
                return Err(Error::Internal(format!("node {i} unreachable from above")));
            }
            if outdeg[i] > bound {
                return Err(Error::Internal(format!("node {i} exceeds the out-degree bound")));
            }
        }
        Ok(())
    }

    /// Run the completion-criterion audit on every node.
    pub fn verify_maximality(&self) -> Result<()> {
        let all_classes: Vec<ClassId> = {
            let mut set: Vec<ClassId> = self
                .nodes
                .iter()
                .flat_map(|nd| nd.pair.m.iter().copied().chain(nd.pair.p.iter().copied()))
                .collect();
            set.extend(self.view.simples()?);
            set.extend(self.view.projectives()?);
            set.sort();
            set.dedup();
            set
        };
        for node in &self.nodes {
            if !maximality_check(&self.view, &node.pair, &all_classes)? {
                return Err(Error::Internal("a poset node failed the maximality audit".into()));
            }
        }
        Ok(())
    }
}

/// Breadth-first mutation enumeration from (kG, 0).
pub fn enumerate(view: &AlgebraView, cap: usize, rng: &mut Rng) -> Result<SttPoset> {
    let projs = view.projectives()?;
    let top = SttPair::new(projs, Vec::new());
    if !is_stt_pair(view, &top)? {
        return Err(Error::Internal("the progenerator is not a stt pair".into()));
    }
    let mut nodes = vec![SttNode { pair: top.clone() }];
    let mut index = HashMap::new();
    index.insert(top.key(), 0usize);
    let mut edge_set: HashMap<(usize, usize), ()> = HashMap::new();
    let mut queue = VecDeque::from([0usize]);
    while let Some(cur) = queue.pop_front() {
        let pair = nodes[cur].pair.clone();
        for at in 0..pair.m.len() {
            // Only descend: every Hasse arrow is generated at its larger
            // endpoint, which always carries the exchanged summand in M.
            if !mutation_decreases(view, &pair, at)? {
                continue;
            }
            let other = mutate(view, &pair, at, rng)?;
            let id = match index.get(&other.key()) {
                Some(&id) => id,
                None => {
                    if nodes.len() >= cap {
                        return Err(Error::NodeCapExceeded { cap });
                    }
                    let id = nodes.len();
                    nodes.push(SttNode { pair: other.clone() });
                    index.insert(other.key(), id);
                    queue.push_back(id);
                    id
                }
            };
            if !pair_ge(view, &nodes[cur].pair, &nodes[id].pair)? {
                return Err(Error::Internal("descending mutation failed the order check".into()));
            }
            edge_set.entry((cur, id)).or_insert(());
        }
    }
    let mut edges: Vec<(usize, usize)> = edge_set.into_keys().collect();
    edges.sort_unstable();
    // Reachability closure.
    let n = nodes.len();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(a, b) in &edges {
        adj[a].push(b);
    }
    let mut reach = vec![vec![false; n]; n];
    for start in 0..n {
        let mut stack = vec![start];
        reach[start][start] = true;
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if !reach[start][w] {
                    reach[start][w] = true;
                    stack.push(w);
                }
            }
        }
    }
    let mut m_index = HashMap::new();
    for (i, node) in nodes.iter().enumerate() {
        m_index.insert(node.pair.m.clone(), i);
    }
    Ok(SttPoset { view: view.clone(), nodes, edges, index, m_index, reach })
}

fn pair_ge(view: &AlgebraView, a: &SttPair, b: &SttPair) -> Result<bool> {
    for &c in &b.m {
        if !view.ga.generates_classes(&a.m, c)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::GroupAlgebra;
    use crate::field::Field;
    use crate::group::{alternating, cyclic, symmetric};

    fn view(g: Arc<crate::group::Group>, p: u64, m: u32) -> AlgebraView {
        let f = Field::new(p, m).unwrap();
        AlgebraView::full(&GroupAlgebra::new(&g, &f, 0xBEEF))
    }

    #[test]
    fn kc2_poset_is_a_two_chain() {
        let v = view(cyclic(2).unwrap(), 2, 1);
        let mut rng = Rng::new(1);
        let poset = enumerate(&v, DEFAULT_NODE_CAP, &mut rng).unwrap();
        assert_eq!(poset.node_count(), 2);
        assert_eq!(poset.edge_count(), 1);
        let min = poset.minimum().unwrap();
        assert!(poset.ge(poset.maximum(), min));
        poset.verify_order_agreement().unwrap();
    }

    #[test]
    fn kcp_poset_for_p3() {
        let f = Field::new(3, 1).unwrap();
        let c3 = cyclic(3).unwrap();
        let ga = GroupAlgebra::new(&c3, &f, 0xBEEF);
        let v = AlgebraView::full(&ga);
        let mut rng = Rng::new(2);
        let poset = enumerate(&v, DEFAULT_NODE_CAP, &mut rng).unwrap();
        assert_eq!(poset.node_count(), 2);
    }

    #[test]
    fn semisimple_kc3_p2_gives_boolean_lattice() {
        let v = view(cyclic(3).unwrap(), 2, 2);
        let mut rng = Rng::new(3);
        let poset = enumerate(&v, DEFAULT_NODE_CAP, &mut rng).unwrap();
        // three simples, all modules semisimple: nodes = subsets of simples
        assert_eq!(poset.node_count(), 8);
        poset.verify_order_agreement().unwrap();
    }

    #[test]
    fn trivial_module_tau_rigidity_landrock_s4_vs_a4() {
        // S4 has a normal subgroup of index 2, so the trivial module is not
        // tau-rigid at p = 2; A4 has none, so it is.
        let vs4 = view(symmetric(4).unwrap(), 2, 2);
        let triv_id = vs4.ga.simple_ids().unwrap()[0];
        assert!(!is_tau_rigid_classes(&vs4, &[triv_id]).unwrap());

        let va4 = view(alternating(4).unwrap(), 2, 2);
        let triv_id = va4.ga.simple_ids().unwrap()[0];
        assert!(is_tau_rigid_classes(&va4, &[triv_id]).unwrap());
    }

    #[test]
    fn ks4_poset_has_eight_nodes_and_edges() {
        let v = view(symmetric(4).unwrap(), 2, 2);
        let mut rng = Rng::new(4);
        let poset = enumerate(&v, DEFAULT_NODE_CAP, &mut rng).unwrap();
        assert_eq!(poset.node_count(), 8);
        assert_eq!(poset.edge_count(), 8);
        poset.verify_order_agreement().unwrap();
        poset.verify_maximality().unwrap();
    }

    #[test]
    fn node_cap_reports_possible_infiniteness() {
        let v = view(alternating(4).unwrap(), 2, 2);
        let mut rng = Rng::new(9);
        match enumerate(&v, 5, &mut rng) {
            Err(crate::error::Error::NodeCapExceeded { cap: 5 }) => {}
            other => panic!("expected node cap error, got {:?}", other.map(|p| p.node_count())),
        }
    }

    #[test]
    fn double_mutation_returns_to_start() {
        let v = view(symmetric(4).unwrap(), 2, 2);
        let mut rng = Rng::new(5);
        let poset = enumerate(&v, DEFAULT_NODE_CAP, &mut rng).unwrap();
        let top = poset.nodes[0].pair.clone();
        for at in 0..top.m.len() {
            let one = mutate(&v, &top, at, &mut rng).unwrap();
            // find the index of the exchanged class in the mutated pair
            let diff: Vec<usize> = (0..one.m.len())
                .filter(|&i| !top.m.contains(&one.m[i]))
                .collect();
            if diff.len() == 1 {
                let back = mutate(&v, &one, diff[0], &mut rng).unwrap();
                assert_eq!(back.key(), top.key());
            }
        }
    }
}
