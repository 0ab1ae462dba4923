use std::fmt;

use crate::error::{Error, Result};

/// A permutation of {0, .., degree-1}, stored as its image table.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<u16>,
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.cycle_string())
    }
}

impl Perm {
    pub fn identity(degree: usize) -> Perm {
        Perm { images: (0..degree as u16).collect() }
    }

    pub fn from_images(images: Vec<u16>) -> Result<Perm> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if (i as usize) >= images.len() || seen[i as usize] {
                return Err(Error::BadGroupSpec("not a permutation".into()));
            }
            seen[i as usize] = true;
        }
        Ok(Perm { images })
    }

    /// Parse disjoint cycles over 1-based points, e.g. `(1 2 3)(4 5)`.
    pub fn from_cycles(degree: usize, text: &str) -> Result<Perm> {
        let mut images: Vec<u16> = (0..degree as u16).collect();
        let trimmed = text.trim();
        if trimmed.is_empty() || trimmed == "()" {
            return Ok(Perm { images });
        }
        let mut chars = trimmed.chars().peekable();
        while let Some(&c) = chars.peek() {
            if c.is_whitespace() {
                chars.next();
                continue;
            }
            if c != '(' {
                return Err(Error::BadGroupSpec(format!("expected '(' in cycles: {text}")));
            }
            chars.next();
            let mut cycle: Vec<usize> = Vec::new();
            let mut num = String::new();
            loop {
                match chars.next() {
                    Some(d) if d.is_ascii_digit() => num.push(d),
                    Some(d) if d.is_whitespace() || d == ',' => {
                        if !num.is_empty() {
                            cycle.push(num.parse::<usize>().unwrap());
                            num.clear();
                        }
                    }
                    Some(')') => {
                        if !num.is_empty() {
                            cycle.push(num.parse::<usize>().unwrap());
                        }
                        break;
                    }
                    Some(d) => {
                        return Err(Error::BadGroupSpec(format!("bad character '{d}' in cycles")))
                    }
                    None => return Err(Error::BadGroupSpec("unterminated cycle".into())),
                }
            }
            for &pt in &cycle {
                if pt == 0 || pt > degree {
                    return Err(Error::BadGroupSpec(format!(
                        "point {pt} out of range 1..={degree}"
                    )));
                }
            }
            for w in 0..cycle.len() {
                let from = cycle[w] - 1;
                let to = cycle[(w + 1) % cycle.len()] - 1;
                images[from] = to as u16;
            }
        }
        // Re-validate: overlapping cycles could have clobbered injectivity.
        Perm::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    /// self * other: apply `other` first, then `self`.
    pub fn compose(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm {
            images: (0..self.degree())
                .map(|i| self.images[other.images[i] as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0u16; self.degree()];
        for (i, &img) in self.images.iter().enumerate() {
            images[img as usize] = i as u16;
        }
        Perm { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &img)| i == img as usize)
    }

    pub fn order(&self) -> u64 {
        let mut acc = self.clone();
        let mut n = 1;
        while !acc.is_identity() {
            acc = self.compose(&acc);
            n += 1;
        }
        n
    }

    pub fn cycle_string(&self) -> String {
        let mut seen = vec![false; self.degree()];
        let mut out = String::new();
        for start in 0..self.degree() {
            if seen[start] || self.apply(start) == start {
                seen[start] = true;
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut cur = self.apply(start);
            while cur != start {
                seen[cur] = true;
                cycle.push(cur);
                cur = self.apply(cur);
            }
            out.push('(');
            out.push_str(
                &cycle.iter().map(|p| (p + 1).to_string()).collect::<Vec<_>>().join(" "),
            );
            out.push(')');
        }
        if out.is_empty() {
            out.push_str("()");
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_compose() {
        let a = Perm::from_cycles(4, "(1 2 3)").unwrap();
        let b = Perm::from_cycles(4, "(1 2)(3 4)").unwrap();
        assert_eq!(a.apply(0), 1);
        assert_eq!(a.order(), 3);
        assert_eq!(b.order(), 2);
        let ab = a.compose(&b);
        // b: 0->1, then a: 1->2
        assert_eq!(ab.apply(0), 2);
        assert!(a.compose(&a.inverse()).is_identity());
    }

    #[test]
    fn cycle_string_roundtrip() {
        let a = Perm::from_cycles(6, "(1 2 3)(4 5 6)").unwrap();
        let s = a.cycle_string();
        let b = Perm::from_cycles(6, &s).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(Perm::from_cycles(3, "(1 4)").is_err());
    }
}
