//! Scenario files: a flat key-value text format naming the prime, the
//! ambient group, the normal subgroup, and optional block / seed / cap
//! settings. All defaults are made explicit in report headers so runs are
//! reproducible.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{splitting_degree, Field};
use crate::group::{parse_group_spec, parse_normal_spec, Group, QuotientGroup, SubgroupEmbedding};

#[derive(Clone, Debug)]
pub struct Scenario {
    pub name: String,
    pub p: u64,
    /// None: pick the minimal splitting degree for the session's groups.
    pub field_degree: Option<u32>,
    pub group_spec: String,
    pub normal_spec: String,
    /// Selector for a block of the normal subgroup's algebra:
    /// "principal", "defect-zero", or an index.
    pub block_selector: Option<String>,
    pub seed: u64,
    pub node_cap: usize,
}

impl Default for Scenario {
    fn default() -> Self {
        Scenario {
            name: "scenario".into(),
            p: 2,
            field_degree: None,
            group_spec: "builtin:symmetric:4".into(),
            normal_spec: "builtin:alternating:4".into(),
            block_selector: None,
            seed: 0xC0FFEE,
            node_cap: crate::stt::DEFAULT_NODE_CAP,
        }
    }
}

impl Scenario {
    /// Parse the flat `key = value` format; `#` starts a comment line.
    pub fn parse(text: &str) -> Result<Scenario> {
        let mut s = Scenario::default();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| Error::Scenario(format!(
                "line {}: expected key=value, got '{line}'",
                lineno + 1
            )))?;
            let (key, value) = (key.trim(), value.trim());
            match key {
                "name" => s.name = value.to_string(),
                "p" => {
                    s.p = value.parse().map_err(|_| {
                        Error::Scenario(format!("line {}: bad prime '{value}'", lineno + 1))
                    })?
                }
                "field_degree" | "m" => {
                    s.field_degree = Some(value.parse().map_err(|_| {
                        Error::Scenario(format!("line {}: bad degree '{value}'", lineno + 1))
                    })?)
                }
                "group" => s.group_spec = value.to_string(),
                "normal" => s.normal_spec = value.to_string(),
                "block" => s.block_selector = Some(value.to_string()),
                "seed" => {
                    s.seed = parse_u64(value).ok_or_else(|| {
                        Error::Scenario(format!("line {}: bad seed '{value}'", lineno + 1))
                    })?
                }
                "cap" | "node_cap" => {
                    s.node_cap = value.parse().map_err(|_| {
                        Error::Scenario(format!("line {}: bad cap '{value}'", lineno + 1))
                    })?
                }
                _ => {
                    return Err(Error::Scenario(format!(
                        "line {}: unknown key '{key}'",
                        lineno + 1
                    )))
                }
            }
        }
        Ok(s)
    }

    /// Resolve groups, check normality, and pick the splitting field.
    pub fn resolve(&self) -> Result<ResolvedScenario> {
        let ambient = parse_group_spec(&self.group_spec)?;
        let normal = parse_normal_spec(&ambient, &self.normal_spec)?;
        let degree = match self.field_degree {
            Some(m) => m,
            None => splitting_degree(self.p, &[ambient.exponent()]),
        };
        let field = Field::new(self.p, degree)?;
        let quotient = QuotientGroup::new(&ambient, normal.clone())?;
        Ok(ResolvedScenario {
            scenario: self.clone(),
            field,
            ambient,
            normal,
            quotient,
        })
    }

    /// The explicit-settings header stamped on every emitted report.
    pub fn header(&self, field: &Field) -> String {
        format!(
            "scenario {name}\np = {p}\nfield = {hdr}\ngroup = {g}\nnormal = {n}\nblock = {b}\nseed = {seed:#x}\nnode_cap = {cap}\n",
            name = self.name,
            p = self.p,
            hdr = field.header(),
            g = self.group_spec,
            n = self.normal_spec,
            b = self.block_selector.as_deref().unwrap_or("-"),
            seed = self.seed,
            cap = self.node_cap,
        )
    }
}

fn parse_u64(s: &str) -> Option<u64> {
    if let Some(hex) = s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        u64::from_str_radix(hex, 16).ok()
    } else {
        s.parse().ok()
    }
}

pub struct ResolvedScenario {
    pub scenario: Scenario,
    pub field: Arc<Field>,
    pub ambient: Arc<Group>,
    pub normal: SubgroupEmbedding,
    pub quotient: QuotientGroup,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_roundtrip() {
        let text = "# comment\nname = demo\np = 2\ngroup = builtin:symmetric:4\nnormal = builtin:alternating:4\nseed = 0xACE\n";
        let s = Scenario::parse(text).unwrap();
        assert_eq!(s.name, "demo");
        assert_eq!(s.p, 2);
        assert_eq!(s.seed, 0xACE);
        let r = s.resolve().unwrap();
        assert_eq!(r.ambient.order(), 24);
        assert_eq!(r.normal.sub.order(), 12);
        // splitting field for S4 at p=2 is GF(4)
        assert_eq!(r.field.order(), 4);
        assert_eq!(r.quotient.quotient.order(), 2);
    }

    #[test]
    fn default_degree_examples() {
        let s = Scenario {
            group_spec: "builtin:cyclic:4".into(),
            normal_spec: "order:2".into(),
            ..Scenario::default()
        };
        let r = s.resolve().unwrap();
        assert_eq!(r.field.order(), 2); // 2-group: prime field suffices

        let s3 = Scenario {
            p: 3,
            group_spec: "builtin:symmetric:3".into(),
            normal_spec: "order:3".into(),
            ..Scenario::default()
        };
        let r3 = s3.resolve().unwrap();
        assert_eq!(r3.field.order(), 3);
    }

    #[test]
    fn rejects_non_normal() {
        let s = Scenario {
            group_spec: "builtin:symmetric:3".into(),
            normal_spec: "perm:3:(1 2)".into(),
            ..Scenario::default()
        };
        assert!(s.resolve().is_err());
    }

    #[test]
    fn unknown_key_is_an_error() {
        assert!(Scenario::parse("frobnicate = 7\n").is_err());
    }
}
