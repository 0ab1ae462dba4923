//! Seeded property suites for the functor identities, run over a battery of
//! normal inclusions. Every assertion is an exact equality of dimensions or
//! an exact isomorphism test; instance generation is deterministic in the
//! seed.

use std::sync::Arc;

use crate::algebra::GroupAlgebra;
use crate::error::{Error, Result};
use crate::field::{splitting_degree, Field};
use crate::group::{parse_group_spec, parse_normal_spec, SubgroupEmbedding};
use crate::meataxe;
use crate::module::{conjugate, hom_space, induce, restrict};
use crate::rng::Rng;
use crate::verify::{modules_isomorphic, random_module};

/// One normal inclusion of the battery with its prepared algebras.
pub struct BatteryPair {
    pub label: String,
    pub p: u64,
    pub emb: SubgroupEmbedding,
    pub ga_sub: Arc<GroupAlgebra>,
    pub ga_amb: Arc<GroupAlgebra>,
}

/// The battery: desk-scale normal inclusions covering indices 2, 3 and 4 and
/// both characteristics.
pub fn battery(seed: u64) -> Result<Vec<BatteryPair>> {
    let specs: [(&str, &str, &str, u64); 6] = [
        ("c2-c4-p2", "builtin:cyclic:4", "order:2", 2),
        ("c3-s3-p2", "builtin:symmetric:3", "order:3", 2),
        ("v4-a4-p2", "builtin:alternating:4", "builtin:klein4", 2),
        ("a4-s4-p2", "builtin:symmetric:4", "builtin:alternating:4", 2),
        ("c4-d8-p2", "builtin:dihedral:4", "perm:4:(1 2 3 4)", 2),
        ("c3-s3-p3", "builtin:symmetric:3", "order:3", 3),
    ];
    let mut out = Vec::new();
    for (label, g, n, p) in specs {
        let ambient = parse_group_spec(g)?;
        let emb = parse_normal_spec(&ambient, n)?;
        let field = Field::new(p, splitting_degree(p, &[ambient.exponent()]))?;
        let ga_amb = GroupAlgebra::new(&ambient, &field, seed ^ fnv(label));
        let ga_sub = GroupAlgebra::new(&emb.sub, &field, seed ^ fnv(label) ^ 1);
        out.push(BatteryPair { label: label.into(), p, emb, ga_sub, ga_amb });
    }
    Ok(out)
}

fn fnv(name: &str) -> u64 {
    let mut h: u64 = 0xcbf29ce484222325;
    for b in name.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Identity {
    FrobeniusReciprocity,
    Mackey,
    EckmannShapiro,
    InductionSyzygy,
    RestrictionSyzygyRelProj,
    TensorIdentity,
}

pub const ALL_IDENTITIES: &[Identity] = &[
    Identity::FrobeniusReciprocity,
    Identity::Mackey,
    Identity::EckmannShapiro,
    Identity::InductionSyzygy,
    Identity::RestrictionSyzygyRelProj,
    Identity::TensorIdentity,
];

impl Identity {
    pub fn name(self) -> &'static str {
        match self {
            Identity::FrobeniusReciprocity => "frobenius-reciprocity",
            Identity::Mackey => "mackey-decomposition",
            Identity::EckmannShapiro => "eckmann-shapiro",
            Identity::InductionSyzygy => "induction-syzygy-commute",
            Identity::RestrictionSyzygyRelProj => "restriction-syzygy-rel-proj",
            Identity::TensorIdentity => "tensor-identity",
        }
    }
}

/// Run one identity over >= `instances` seeded instances spread across the
/// battery. Returns the number of instances verified.
pub fn run_identity(identity: Identity, instances: usize, seed: u64) -> Result<usize> {
    let pairs = battery(seed)?;
    let mut rng = Rng::new(seed ^ fnv(identity.name()));
    let mut done = 0;
    while done < instances {
        let pair = &pairs[done % pairs.len()];
        check_instance(identity, pair, &mut rng)
            .map_err(|e| Error::TheoremViolation(format!(
                "{} instance {done} on {}: {e}",
                identity.name(),
                pair.label
            )))?;
        done += 1;
    }
    Ok(done)
}

fn check_instance(identity: Identity, pair: &BatteryPair, rng: &mut Rng) -> Result<()> {
    let emb = &pair.emb;
    match identity {
        Identity::FrobeniusReciprocity => {
            let u = random_module(&pair.ga_amb, 8, rng)?;
            let v = random_module(&pair.ga_sub, 6, rng)?;
            let ind_v = induce(&v, emb)?;
            let res_u = restrict(&u, emb)?;
            if hom_space(&u, &ind_v)?.len() != hom_space(&res_u, &v)?.len() {
                return Err(Error::TheoremViolation("Hom(U, Ind V) dim mismatch".into()));
            }
            if hom_space(&ind_v, &u)?.len() != hom_space(&v, &res_u)?.len() {
                return Err(Error::TheoremViolation("Hom(Ind V, U) dim mismatch".into()));
            }
        }
        Identity::Mackey => {
            let m = random_module(&pair.ga_sub, 6, rng)?;
            let res_ind = restrict(&induce(&m, emb)?, emb)?;
            let mut twisted = pair.ga_sub.zero_module();
            for &x in &emb.parent.coset_reps(emb) {
                twisted = twisted.direct_sum(&conjugate(&m, emb, x)?)?;
            }
            if !modules_isomorphic(&res_ind, &twisted, rng)? {
                return Err(Error::TheoremViolation("Res Ind differs from conjugate sum".into()));
            }
        }
        Identity::EckmannShapiro => {
            let m = random_module(&pair.ga_sub, 5, rng)?;
            let n = random_module(&pair.ga_amb, 6, rng)?;
            let lhs = pair.ga_sub.ext1_dim(&m, &restrict(&n, emb)?)?;
            let rhs = pair.ga_amb.ext1_dim(&induce(&m, emb)?, &n)?;
            if lhs != rhs {
                return Err(Error::TheoremViolation(format!("Ext dims {lhs} vs {rhs}")));
            }
        }
        Identity::InductionSyzygy => {
            let m = random_module(&pair.ga_sub, 5, rng)?;
            let lhs = induce(&pair.ga_sub.syzygy(&m, rng)?, emb)?;
            let rhs = pair.ga_amb.syzygy(&induce(&m, emb)?, rng)?;
            if !modules_isomorphic(&lhs, &rhs, rng)? {
                return Err(Error::TheoremViolation("Ind Omega vs Omega Ind".into()));
            }
        }
        Identity::RestrictionSyzygyRelProj => {
            let v = random_module(&pair.ga_sub, 4, rng)?;
            let ind = induce(&v, emb)?;
            let dec = meataxe::decompose(&ind, rng)?;
            let m = dec.summands[rng.below(dec.summands.len())].clone();
            let lhs = restrict(&pair.ga_amb.syzygy(&m, rng)?, emb)?;
            let rhs = pair.ga_sub.syzygy(&restrict(&m, emb)?, rng)?;
            if !modules_isomorphic(&lhs, &rhs, rng)? {
                return Err(Error::TheoremViolation("Res Omega vs Omega Res".into()));
            }
        }
        Identity::TensorIdentity => {
            let u = random_module(&pair.ga_amb, 6, rng)?;
            let v = random_module(&pair.ga_sub, 4, rng)?;
            let lhs = induce(&v.tensor(&restrict(&u, emb)?)?, emb)?;
            let rhs = induce(&v, emb)?.tensor(&u)?;
            if !modules_isomorphic(&lhs, &rhs, rng)? {
                return Err(Error::TheoremViolation("tensor identity failed".into()));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn short_runs_of_every_identity() {
        for &identity in ALL_IDENTITIES {
            let n = run_identity(identity, 6, 0xFACE).unwrap();
            assert_eq!(n, 6, "{}", identity.name());
        }
    }
}
