use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{Elt, Field};
use crate::rng::Rng;

/// Univariate polynomial over GF(p^m), coefficients low to high.
/// The zero polynomial has an empty coefficient vector.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    pub field: Arc<Field>,
    pub coeffs: Vec<Elt>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| match i {
                0 => format!("{c}"),
                1 => format!("{c}*x"),
                _ => format!("{c}*x^{i}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

impl Poly {
    pub fn zero(field: &Arc<Field>) -> Poly {
        Poly { field: field.clone(), coeffs: Vec::new() }
    }

    pub fn constant(field: &Arc<Field>, c: Elt) -> Poly {
        let mut p = Poly { field: field.clone(), coeffs: vec![c] };
        p.normalize();
        p
    }

    pub fn one(field: &Arc<Field>) -> Poly {
        Poly::constant(field, 1)
    }

    pub fn x(field: &Arc<Field>) -> Poly {
        Poly { field: field.clone(), coeffs: vec![0, 1] }
    }

    pub fn from_coeffs(field: &Arc<Field>, coeffs: Vec<Elt>) -> Poly {
        let mut p = Poly { field: field.clone(), coeffs };
        p.normalize();
        p
    }

    fn normalize(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    /// Degree; None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn leading(&self) -> Elt {
        *self.coeffs.last().unwrap_or(&0)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![0; n];
        for (i, slot) in out.iter_mut().enumerate() {
            let a = self.coeffs.get(i).copied().unwrap_or(0);
            let b = other.coeffs.get(i).copied().unwrap_or(0);
            *slot = f.add(a, b);
        }
        Poly::from_coeffs(f, out)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Poly {
        let f = &self.field;
        Poly::from_coeffs(f, self.coeffs.iter().map(|&c| f.neg(c)).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(&self.field);
        }
        let f = &self.field;
        let mut out = vec![0; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Poly::from_coeffs(f, out)
    }

    pub fn scale(&self, c: Elt) -> Poly {
        let f = &self.field;
        Poly::from_coeffs(f, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(self.field.inv(self.leading()))
    }

    /// Euclidean division; divisor must be nonzero.
    pub fn divrem(&self, divisor: &Poly) -> (Poly, Poly) {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let f = &self.field;
        let db = divisor.degree().unwrap();
        let lead_inv = f.inv(divisor.leading());
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0; self.coeffs.len().saturating_sub(db)];
        while rem.len() > db {
            let c = f.mul(*rem.last().unwrap(), lead_inv);
            let shift = rem.len() - 1 - db;
            if c != 0 {
                quot[shift] = c;
                for i in 0..=db {
                    rem[shift + i] = f.sub(rem[shift + i], f.mul(c, divisor.coeffs[i]));
                }
            }
            while rem.last() == Some(&0) {
                rem.pop();
            }
            if rem.len() <= db {
                break;
            }
        }
        (Poly::from_coeffs(f, quot), Poly::from_coeffs(f, rem))
    }

    pub fn rem(&self, divisor: &Poly) -> Poly {
        self.divrem(divisor).1
    }

    pub fn divides(&self, other: &Poly) -> bool {
        other.rem(self).is_zero()
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Poly {
        let f = &self.field;
        if self.coeffs.len() <= 1 {
            return Poly::zero(f);
        }
        let mut out = Vec::with_capacity(self.coeffs.len() - 1);
        for (i, &c) in self.coeffs.iter().enumerate().skip(1) {
            let mut acc = 0;
            for _ in 0..(i as u64 % f.p) {
                acc = f.add(acc, c);
            }
            out.push(acc);
        }
        Poly::from_coeffs(f, out)
    }

    pub fn eval(&self, x: Elt) -> Elt {
        let f = &self.field;
        let mut acc = 0;
        for &c in self.coeffs.iter().rev() {
            acc = f.add(f.mul(acc, x), c);
        }
        acc
    }

    pub fn pow_mod(&self, mut e: u64, modulus: &Poly) -> Poly {
        let mut result = Poly::one(&self.field);
        let mut base = self.rem(modulus);
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base).rem(modulus);
            }
            base = base.mul(&base).rem(modulus);
            e >>= 1;
        }
        result
    }

    /// Plain-text serialization: the field header, then the coefficient
    /// vector (element codes, low to high) on one line.
    pub fn serialize(&self) -> String {
        let coeffs: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        format!("{}\npoly {}\n", self.field.header(), coeffs.join(" "))
    }

    /// Factor into monic irreducibles with multiplicities. The product of the
    /// factors times the leading coefficient reproduces the input.
    pub fn factor(&self) -> Result<Vec<(Poly, usize)>> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut out: Vec<(Poly, usize)> = Vec::new();
        factor_monic(&self.monic(), 1, &mut out);
        out.sort_by(|a, b| {
            (a.0.coeffs.len(), &a.0.coeffs).cmp(&(b.0.coeffs.len(), &b.0.coeffs))
        });
        Ok(out)
    }

    pub fn is_irreducible(&self) -> bool {
        match self.degree() {
            None | Some(0) => false,
            Some(1) => true,
            Some(_) => {
                let fs = self.factor().expect("nonzero");
                fs.len() == 1 && fs[0].1 == 1
            }
        }
    }
}

fn factor_monic(fpoly: &Poly, mult: usize, out: &mut Vec<(Poly, usize)>) {
    let field = fpoly.field.clone();
    if fpoly.degree() == Some(0) {
        return;
    }
    let deriv = fpoly.derivative();
    if deriv.is_zero() {
        // f = t(x)^p with t obtained by p-th roots of the x^(p*i) coefficients.
        let p = field.p as usize;
        let m = field.m;
        let mut tc = Vec::new();
        for (i, &c) in fpoly.coeffs.iter().enumerate() {
            if i % p == 0 {
                // p-th root via Frobenius inverse: c^(p^(m-1)).
                let root = field.pow(c, (field.p as u64).pow(m - 1));
                tc.push(root);
            } else {
                debug_assert_eq!(c, 0);
            }
        }
        let t = Poly::from_coeffs(&field, tc);
        factor_monic(&t, mult * p, out);
        return;
    }
    let g = fpoly.gcd(&deriv);
    let squarefree = fpoly.divrem(&g).0.monic();
    let mut remaining = fpoly.clone();
    if squarefree.degree() > Some(0) {
        for irr in factor_squarefree(&squarefree) {
            let mut e = 0;
            loop {
                let (q, r) = remaining.divrem(&irr);
                if r.is_zero() {
                    remaining = q;
                    e += 1;
                } else {
                    break;
                }
            }
            debug_assert!(e >= 1);
            out.push((irr, e * mult));
        }
    }
    // Whatever is left has all multiplicities divisible by p.
    if remaining.degree() > Some(0) {
        factor_monic(&remaining.monic(), mult, out);
    }
}

/// Distinct-degree then equal-degree factorization of a squarefree monic input.
fn factor_squarefree(f: &Poly) -> Vec<Poly> {
    let field = f.field.clone();
    let q = field.order() as u64;
    let mut out = Vec::new();
    let mut rem = f.clone();
    let x = Poly::x(&field);
    let mut d = 1usize;
    let mut xq = x.clone(); // x^(q^d) mod rem, maintained incrementally
    while rem.degree().map_or(false, |deg| deg >= 2 * d) {
        xq = xq.pow_mod(q, &rem);
        let g = xq.sub(&x).gcd(&rem);
        if g.degree() > Some(0) {
            equal_degree_split(&g, d, &mut out);
            rem = rem.divrem(&g).0.monic();
            xq = xq.rem(&rem);
        }
        d += 1;
    }
    if rem.degree() > Some(0) {
        out.push(rem.monic());
    }
    out
}

/// Cantor-Zassenhaus equal-degree splitting: g is a squarefree product of
/// irreducibles all of degree d. The RNG seed is fixed so factorization is
/// a pure function of its input.
fn equal_degree_split(g: &Poly, d: usize, out: &mut Vec<Poly>) {
    let field = g.field.clone();
    if g.degree() == Some(d) {
        out.push(g.monic());
        return;
    }
    let q = field.order() as u64;
    let n = g.degree().unwrap();
    let mut rng = Rng::new(0x00de_c0de ^ (n as u64) << 8 ^ d as u64);
    loop {
        let mut coeffs = Vec::with_capacity(n);
        for _ in 0..n {
            coeffs.push(rng.below(field.order()) as Elt);
        }
        let h = Poly::from_coeffs(&field, coeffs);
        if h.degree().is_none() {
            continue;
        }
        let candidate = if field.p == 2 {
            // Trace map over GF(2^k): sum of h^(2^i) for i < k*d.
            let reps = field.m as usize * d;
            let mut acc = Poly::zero(&field);
            let mut term = h.rem(g);
            for _ in 0..reps {
                acc = acc.add(&term).rem(g);
                term = term.mul(&term).rem(g);
            }
            acc
        } else {
            let e = (q.pow(d as u32) - 1) / 2;
            h.pow_mod(e, g).sub(&Poly::one(&field))
        };
        if candidate.is_zero() {
            continue;
        }
        let split = candidate.gcd(g);
        if split.degree() > Some(0) && split.degree() < g.degree() {
            let other = g.divrem(&split).0.monic();
            equal_degree_split(&split, d, out);
            equal_degree_split(&other, d, out);
            return;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf2() -> Arc<Field> {
        Field::new(2, 1).unwrap()
    }

    fn gf3() -> Arc<Field> {
        Field::new(3, 1).unwrap()
    }

    #[test]
    fn factor_x2_plus_x_over_gf2() {
        let f = gf2();
        // x^2 + x = x(x+1)
        let p = Poly::from_coeffs(&f, vec![0, 1, 1]);
        let fs = p.factor().unwrap();
        assert_eq!(fs.len(), 2);
        assert!(fs.iter().all(|(_, e)| *e == 1));
        let names: Vec<Vec<Elt>> = fs.iter().map(|(g, _)| g.coeffs.clone()).collect();
        assert!(names.contains(&vec![0, 1]));
        assert!(names.contains(&vec![1, 1]));
    }

    #[test]
    fn irreducible_quadratic_over_gf2() {
        let f = gf2();
        let p = Poly::from_coeffs(&f, vec![1, 1, 1]);
        let fs = p.factor().unwrap();
        assert_eq!(fs.len(), 1);
        assert_eq!(fs[0].1, 1);
        assert_eq!(fs[0].0.coeffs, vec![1, 1, 1]);
        assert!(p.is_irreducible());
    }

    #[test]
    fn x_fourth_over_gf3() {
        let f = gf3();
        let p = Poly::from_coeffs(&f, vec![0, 0, 0, 0, 1]);
        let fs = p.factor().unwrap();
        assert_eq!(fs.len(), 1);
        assert_eq!(fs[0].0.coeffs, vec![0, 1]);
        assert_eq!(fs[0].1, 4);
    }

    #[test]
    fn factor_multiplies_back() {
        // Exhaustive-ish battery over small fields and degrees.
        for (p, m) in [(2u64, 1u32), (2, 2), (3, 1), (3, 2)] {
            let field = Field::new(p, m).unwrap();
            let mut rng = Rng::new(99 + p + m as u64);
            for _ in 0..60 {
                let deg = 1 + rng.below(7);
                let mut coeffs: Vec<Elt> =
                    (0..deg).map(|_| rng.below(field.order()) as Elt).collect();
                coeffs.push(1 + rng.below(field.order() - 1) as Elt);
                let f = Poly::from_coeffs(&field, coeffs);
                let factors = f.factor().unwrap();
                let mut prod = Poly::constant(&field, f.leading());
                for (g, e) in &factors {
                    assert!(g.is_irreducible() || g.degree() == Some(1));
                    for _ in 0..*e {
                        prod = prod.mul(g);
                    }
                }
                assert_eq!(prod, f, "GF({p}^{m})");
            }
        }
    }

    #[test]
    fn zero_polynomial_cannot_be_factored() {
        let f = gf2();
        assert!(Poly::zero(&f).factor().is_err());
    }

    #[test]
    fn serialization_has_field_header() {
        let f = gf2();
        let p = Poly::from_coeffs(&f, vec![1, 0, 1]);
        let text = p.serialize();
        assert!(text.starts_with("GF(2^1) mod"));
        assert!(text.contains("poly 1 0 1"));
    }

    #[test]
    fn gcd_and_divrem_agree() {
        let field = Field::new(2, 2).unwrap();
        let mut rng = Rng::new(5);
        for _ in 0..50 {
            let a = Poly::from_coeffs(
                &field,
                (0..6).map(|_| rng.below(4) as Elt).collect(),
            );
            let b = Poly::from_coeffs(
                &field,
                (0..4).map(|_| rng.below(4) as Elt).collect(),
            );
            if b.is_zero() {
                continue;
            }
            let (q, r) = a.divrem(&b);
            assert_eq!(q.mul(&b).add(&r), a);
            let g = a.gcd(&b);
            if !a.is_zero() {
                assert!(g.divides(&a) && g.divides(&b));
            }
        }
    }
}
