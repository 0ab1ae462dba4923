//! Group actions on the support tau-tilting poset (conjugation twists and
//! tensor twists by one-dimensional simples of the quotient), the invariant
//! subposet, the map induced by induction, and the three-condition star
//! subset whose equivalence the main theorems assert.

use std::collections::HashMap;

use crate::algebra::ClassId;
use crate::error::{Error, Result};
use crate::group::{QuotientGroup, SubgroupEmbedding};
use crate::module::{conjugate, induce, inflate, restrict, GModule};
use crate::rng::Rng;
use crate::stt::{SttPoset, SttPair};
use crate::vertex::is_relatively_projective;

/// The node permutation induced by the conjugation twist M -> gtilde M.
/// Hard error when the twist fails to be a poset automorphism.
pub fn conjugation_action(
    poset: &SttPoset,
    emb: &SubgroupEmbedding,
    gtilde: usize,
) -> Result<Vec<usize>> {
    let ga = &poset.view.ga;
    let mut class_map: HashMap<ClassId, ClassId> = HashMap::new();
    let mut node_map = Vec::with_capacity(poset.node_count());
    for node in &poset.nodes {
        let twist = |ids: &[ClassId], map: &mut HashMap<ClassId, ClassId>| -> Result<Vec<ClassId>> {
            let mut out = Vec::with_capacity(ids.len());
            for &c in ids {
                let image = match map.get(&c) {
                    Some(&i) => i,
                    None => {
                        let t = conjugate(&ga.class_rep(c), emb, gtilde)?;
                        let i = ga.resolve(&t)?;
                        map.insert(c, i);
                        i
                    }
                };
                out.push(image);
            }
            Ok(out)
        };
        let m = twist(&node.pair.m, &mut class_map)?;
        let p = twist(&node.pair.p, &mut class_map)?;
        let pair = SttPair::new(m, p);
        let target = poset.find(&pair).ok_or_else(|| {
            Error::TheoremViolation("conjugation twist left the poset".into())
        })?;
        node_map.push(target);
    }
    verify_automorphism(poset, &node_map, "conjugation twist")?;
    Ok(node_map)
}

/// The node permutation induced by M -> basic(S (x) M) for a one-dimensional
/// module S (inflated from the quotient); the twist is a Morita
/// self-equivalence, so it must permute the poset.
pub fn tensor_action(poset: &SttPoset, s: &GModule, rng: &mut Rng) -> Result<Vec<usize>> {
    if s.dim != 1 {
        return Err(Error::Internal(
            "tensor twists act through one-dimensional modules".into(),
        ));
    }
    let ga = &poset.view.ga;
    let mut class_map: HashMap<ClassId, ClassId> = HashMap::new();
    let mut node_map = Vec::with_capacity(poset.node_count());
    for node in &poset.nodes {
        let mut twist = |ids: &[ClassId], map: &mut HashMap<ClassId, ClassId>| -> Result<Vec<ClassId>> {
            let mut out = Vec::with_capacity(ids.len());
            for &c in ids {
                let image = match map.get(&c) {
                    Some(&i) => i,
                    None => {
                        let t = s.tensor(&ga.class_rep(c))?;
                        let t = poset.view.project(&t)?;
                        let classes = ga.decompose_classes(&t, rng)?;
                        if classes.len() != 1 || classes[0].1 != 1 {
                            return Err(Error::TheoremViolation(
                                "tensor twist by a 1-dim module split a summand".into(),
                            ));
                        }
                        let i = classes[0].0;
                        map.insert(c, i);
                        i
                    }
                };
                out.push(image);
            }
            Ok(out)
        };
        let m = twist(&node.pair.m, &mut class_map)?;
        let p = twist(&node.pair.p, &mut class_map)?;
        let pair = SttPair::new(m, p);
        let target = poset.find(&pair).ok_or_else(|| {
            Error::TheoremViolation("tensor twist left the poset".into())
        })?;
        node_map.push(target);
    }
    verify_automorphism(poset, &node_map, "tensor twist")?;
    Ok(node_map)
}

fn verify_automorphism(poset: &SttPoset, node_map: &[usize], what: &str) -> Result<()> {
    let n = poset.node_count();
    let mut seen = vec![false; n];
    for &t in node_map {
        if seen[t] {
            return Err(Error::TheoremViolation(format!("{what} is not a bijection")));
        }
        seen[t] = true;
    }
    for &(a, b) in &poset.edges {
        let (ta, tb) = (node_map[a], node_map[b]);
        if !poset.edges.binary_search(&(ta, tb)).is_ok() {
            return Err(Error::TheoremViolation(format!(
                "{what} does not preserve Hasse arrows"
            )));
        }
    }
    Ok(())
}

/// Nodes fixed by every conjugation twist over coset representatives of the
/// embedded normal subgroup.
pub fn invariant_flags(poset: &SttPoset, emb: &SubgroupEmbedding) -> Result<Vec<bool>> {
    let mut flags = vec![true; poset.node_count()];
    for rep in emb.parent.coset_reps(emb) {
        if rep == emb.parent.identity() {
            continue;
        }
        let map = conjugation_action(poset, emb, rep)?;
        for (i, &t) in map.iter().enumerate() {
            if t != i {
                flags[i] = false;
            }
        }
    }
    Ok(flags)
}

/// The subposet on the flagged nodes: relabeled nodes plus the induced Hasse
/// arrows (cover relations of the restricted order).
pub struct SubPoset {
    /// Indices into the ambient poset, in ambient order.
    pub members: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
}

pub fn sub_poset(poset: &SttPoset, flags: &[bool]) -> SubPoset {
    let members: Vec<usize> = (0..poset.node_count()).filter(|&i| flags[i]).collect();
    let pos: HashMap<usize, usize> = members.iter().enumerate().map(|(k, &i)| (i, k)).collect();
    let mut edges = Vec::new();
    for (a_pos, &a) in members.iter().enumerate() {
        for (b_pos, &b) in members.iter().enumerate() {
            if a == b || !poset.ge(a, b) {
                continue;
            }
            // cover within the subposet: nothing flagged strictly between
            let covered = members.iter().any(|&c| {
                c != a && c != b && poset.ge(a, c) && poset.ge(c, b)
            });
            if !covered {
                edges.push((a_pos, b_pos));
            }
        }
    }
    let _ = pos;
    edges.sort_unstable();
    SubPoset { members, edges }
}

/// The map induced by induction (block-projected when the target view is a
/// block): source node M over kG goes to basic(project(Ind M)) resolved as a
/// node of the target poset by its module part. Nodes whose image is not a
/// target node map to None.
pub fn induced_node_map(
    source: &SttPoset,
    emb: &SubgroupEmbedding,
    target: &SttPoset,
    rng: &mut Rng,
) -> Result<Vec<Option<usize>>> {
    let sga = &source.view.ga;
    let tga = &target.view.ga;
    let mut class_map: HashMap<ClassId, Vec<ClassId>> = HashMap::new();
    let mut out = Vec::with_capacity(source.node_count());
    for node in &source.nodes {
        let mut image_classes: Vec<ClassId> = Vec::new();
        for &c in &node.pair.m {
            let parts = match class_map.get(&c) {
                Some(p) => p.clone(),
                None => {
                    let ind = induce(&sga.class_rep(c), emb)?;
                    let ind = target.view.project(&ind)?;
                    let classes: Vec<ClassId> = tga
                        .decompose_classes(&ind, rng)?
                        .into_iter()
                        .map(|(id, _)| id)
                        .collect();
                    class_map.insert(c, classes.clone());
                    classes
                }
            };
            image_classes.extend(parts);
        }
        image_classes.sort();
        image_classes.dedup();
        out.push(target.find_by_m(&image_classes));
    }
    Ok(out)
}

/// Evaluation of the three equivalent conditions for a node Mtilde of
/// s-tau-tilt kGtilde (full group algebra view):
///   (1) Mtilde is add-equal to Ind M for an invariant stt kG-module M,
///   (2) Ind Res Mtilde lies in add Mtilde and Mtilde is relatively
///       G-projective,
///   (3) S (x) Mtilde lies in add Mtilde for each simple k(Gtilde/G)-module.
/// The three evaluations must agree on every node; the flags are returned.
pub struct StarReport {
    pub flags: Vec<bool>,
    pub invariant_source_nodes: Vec<usize>,
    /// target node index -> source node index of its preimage
    pub preimage: HashMap<usize, usize>,
}

pub fn star_subset(
    target: &SttPoset,
    emb: &SubgroupEmbedding,
    quotient: &QuotientGroup,
    source: &SttPoset,
    rng: &mut Rng,
) -> Result<StarReport> {
    let tga = &target.view.ga;

    // Condition (1): image of the invariant part of the source poset.
    let inv = invariant_flags(source, emb)?;
    let images = induced_node_map(source, emb, target, rng)?;
    let mut cond1 = vec![false; target.node_count()];
    let mut preimage = HashMap::new();
    let mut invariant_source_nodes = Vec::new();
    for (i, (&is_inv, img)) in inv.iter().zip(&images).enumerate() {
        if !is_inv {
            continue;
        }
        invariant_source_nodes.push(i);
        let t = img.ok_or_else(|| {
            Error::TheoremViolation(
                "induction of an invariant stt module is not a target node".into(),
            )
        })?;
        if preimage.insert(t, i).is_some() {
            return Err(Error::TheoremViolation(
                "induction is not injective on the invariant part".into(),
            ));
        }
        cond1[t] = true;
    }

    // Condition (2): per-class data, assembled per node.
    let mut indres_classes: HashMap<ClassId, Vec<ClassId>> = HashMap::new();
    let mut relproj: HashMap<ClassId, bool> = HashMap::new();
    let mut cond2 = vec![false; target.node_count()];
    for (i, node) in target.nodes.iter().enumerate() {
        let mut ok = true;
        for &c in &node.pair.m {
            let parts = match indres_classes.get(&c) {
                Some(p) => p.clone(),
                None => {
                    let rep = tga.class_rep(c);
                    let ir = induce(&restrict(&rep, emb)?, emb)?;
                    let classes: Vec<ClassId> = tga
                        .decompose_classes(&ir, rng)?
                        .into_iter()
                        .map(|(id, _)| id)
                        .collect();
                    indres_classes.insert(c, classes.clone());
                    classes
                }
            };
            if !parts.iter().all(|p| node.pair.m.contains(p)) {
                ok = false;
                break;
            }
            let rp = match relproj.get(&c) {
                Some(&v) => v,
                None => {
                    let v = is_relatively_projective(&tga.class_rep(c), emb)?;
                    relproj.insert(c, v);
                    v
                }
            };
            if !rp {
                ok = false;
                break;
            }
        }
        cond2[i] = ok;
    }

    // Condition (3): tensor with every simple of the quotient algebra.
    let qga = crate::algebra::GroupAlgebra::new(&quotient.quotient, &tga.field, 0x5117);
    let mut tensored: HashMap<(usize, ClassId), Vec<ClassId>> = HashMap::new();
    let mut cond3 = vec![false; target.node_count()];
    let num_q_simples = qga.num_simples()?;
    for (i, node) in target.nodes.iter().enumerate() {
        let mut ok = true;
        'simples: for si in 0..num_q_simples {
            let s_inflated = inflate(quotient, &qga.simple_module(si)?)?;
            for &c in &node.pair.m {
                let parts = match tensored.get(&(si, c)) {
                    Some(p) => p.clone(),
                    None => {
                        let t = s_inflated.tensor(&tga.class_rep(c))?;
                        let classes: Vec<ClassId> = tga
                            .decompose_classes(&t, rng)?
                            .into_iter()
                            .map(|(id, _)| id)
                            .collect();
                        tensored.insert((si, c), classes.clone());
                        classes
                    }
                };
                if !parts.iter().all(|p| node.pair.m.contains(p)) {
                    ok = false;
                    break 'simples;
                }
            }
        }
        cond3[i] = ok;
    }

    for i in 0..target.node_count() {
        if cond1[i] != cond2[i] || cond2[i] != cond3[i] {
            return Err(Error::TheoremViolation(format!(
                "star conditions disagree on node {i}: induced-image {} / ind-res {} / tensor {}",
                cond1[i], cond2[i], cond3[i]
            )));
        }
    }
    Ok(StarReport { flags: cond1, invariant_source_nodes, preimage })
}

/// Check that the induced map restricted to the invariant part is a poset
/// isomorphism onto the star subset: bijective and order-preserving in both
/// directions.
pub fn verify_star_isomorphism(
    source: &SttPoset,
    target: &SttPoset,
    report: &StarReport,
) -> Result<()> {
    let star_count = report.flags.iter().filter(|&&b| b).count();
    if star_count != report.invariant_source_nodes.len() {
        return Err(Error::TheoremViolation(format!(
            "invariant part has {} nodes but the star subset has {}",
            report.invariant_source_nodes.len(),
            star_count
        )));
    }
    // order preservation both ways
    let mut fwd: HashMap<usize, usize> = HashMap::new();
    for (&t, &s) in &report.preimage {
        fwd.insert(s, t);
    }
    for &a in &report.invariant_source_nodes {
        for &b in &report.invariant_source_nodes {
            let (ta, tb) = (fwd[&a], fwd[&b]);
            if source.ge(a, b) != target.ge(ta, tb) {
                return Err(Error::TheoremViolation(format!(
                    "induction does not preserve the order between source nodes {a} and {b}"
                )));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::GroupAlgebra;
    use crate::field::Field;
    use crate::group::{alternating, parse_normal_spec, symmetric};
    use crate::stt::{enumerate, AlgebraView, DEFAULT_NODE_CAP};

    #[test]
    fn s4_twist_on_ka4_fixes_eight_nodes() {
        let f = Field::new(2, 2).unwrap();
        let s4 = symmetric(4).unwrap();
        let a4 = parse_normal_spec(&s4, "builtin:alternating:4").unwrap();
        let ga = GroupAlgebra::new(&a4.sub, &f, 77);
        let view = AlgebraView::full(&ga);
        let mut rng = Rng::new(21);
        let poset = enumerate(&view, DEFAULT_NODE_CAP, &mut rng).unwrap();
        assert_eq!(poset.node_count(), 32);
        let flags = invariant_flags(&poset, &a4).unwrap();
        assert_eq!(flags.iter().filter(|&&b| b).count(), 8);
    }

    #[test]
    fn inner_conjugation_acts_trivially() {
        let f = Field::new(2, 2).unwrap();
        let s4 = symmetric(4).unwrap();
        let a4 = parse_normal_spec(&s4, "builtin:alternating:4").unwrap();
        let ga = GroupAlgebra::new(&a4.sub, &f, 78);
        let view = AlgebraView::full(&ga);
        let mut rng = Rng::new(22);
        let poset = enumerate(&view, DEFAULT_NODE_CAP, &mut rng).unwrap();
        // an element of A4 itself
        let inner = a4.to_parent(3);
        let map = conjugation_action(&poset, &a4, inner).unwrap();
        assert!(map.iter().enumerate().all(|(i, &t)| i == t));
    }

    #[test]
    fn invariant_subposet_of_ka4_has_the_ks4_shape() {
        let f = Field::new(2, 2).unwrap();
        let s4 = symmetric(4).unwrap();
        let a4 = parse_normal_spec(&s4, "builtin:alternating:4").unwrap();
        let ga = GroupAlgebra::new(&a4.sub, &f, 81);
        let view = AlgebraView::full(&ga);
        let mut rng = Rng::new(24);
        let poset = enumerate(&view, DEFAULT_NODE_CAP, &mut rng).unwrap();
        let flags = invariant_flags(&poset, &a4).unwrap();
        let sub = sub_poset(&poset, &flags);
        // the invariant subposet is order-isomorphic to stt kS4: 8 nodes,
        // 8 cover relations, two maximal chains
        assert_eq!(sub.members.len(), 8);
        assert_eq!(sub.edges.len(), 8);
    }

    #[test]
    fn invariant_part_maps_isomorphically_onto_ks4() {
        let f = Field::new(2, 2).unwrap();
        let s4 = symmetric(4).unwrap();
        let a4 = parse_normal_spec(&s4, "builtin:alternating:4").unwrap();
        let ga_sub = GroupAlgebra::new(&a4.sub, &f, 79);
        let ga_top = GroupAlgebra::new(&s4, &f, 80);
        let mut rng = Rng::new(23);
        let source = enumerate(&AlgebraView::full(&ga_sub), DEFAULT_NODE_CAP, &mut rng).unwrap();
        let target = enumerate(&AlgebraView::full(&ga_top), DEFAULT_NODE_CAP, &mut rng).unwrap();
        let q = QuotientGroup::new(&s4, a4.clone()).unwrap();
        let report = star_subset(&target, &a4, &q, &source, &mut rng).unwrap();
        // p-power index: the star subset is everything (8 nodes)
        assert!(report.flags.iter().all(|&b| b));
        verify_star_isomorphism(&source, &target, &report).unwrap();
    }
}
