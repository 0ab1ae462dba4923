use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// A field element, encoded as an integer in `0..p^m` whose base-`p` digits
/// (least significant first) are the coefficients of the reduced polynomial
/// representative.
pub type Elt = u32;

const ADD_TABLE_MAX: usize = 1024;

/// The finite field GF(p^m), realized as GF(p)[x] modulo a stored monic
/// irreducible polynomial. The modulus is chosen deterministically (smallest
/// primitive polynomial in lexicographic coefficient order) so that serialized
/// output is reproducible, and it is part of every serialization header.
///
/// Multiplication runs on discrete-log tables over the class of `x`, which the
/// primitive modulus makes a generator of the unit group.
pub struct Field {
    pub p: u64,
    pub m: u32,
    /// Monic irreducible modulus, coefficients low to high over GF(p), length m+1.
    pub modulus: Vec<u64>,
    q: usize,
    exp: Vec<Elt>,
    log: Vec<u32>,
    add_t: Vec<Elt>,
    neg_t: Vec<Elt>,
    inv_t: Vec<Elt>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.header())
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.m == other.m && self.modulus == other.modulus
    }
}
impl Eq for Field {}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

// --- digit-vector polynomial arithmetic over GF(p), used at construction time ---

fn poly_trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn poly_rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r: Vec<u64> = a.to_vec();
    poly_trim(&mut r);
    let db = b.len() - 1;
    let lead_inv = mod_inv(b[db], p);
    while r.len() > db {
        let c = (r[r.len() - 1] * lead_inv) % p;
        let shift = r.len() - 1 - db;
        for i in 0..=db {
            let idx = shift + i;
            r[idx] = (r[idx] + p - (c * b[i]) % p) % p;
        }
        poly_trim(&mut r);
        if r.is_empty() {
            break;
        }
    }
    r
}

fn mod_inv(a: u64, p: u64) -> u64 {
    // Fermat; p is a small prime.
    let mut result = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    result
}

fn poly_is_irreducible(f: &[u64], p: u64) -> bool {
    let m = f.len() - 1;
    if m == 1 {
        return true;
    }
    // Trial division by every monic polynomial of degree 1..=m/2.
    for d in 1..=m / 2 {
        let count = (p as usize).pow(d as u32);
        for code in 0..count {
            let mut g = vec![0u64; d + 1];
            let mut c = code;
            for gi in g.iter_mut().take(d) {
                *gi = (c % p as usize) as u64;
                c /= p as usize;
            }
            g[d] = 1;
            if poly_rem(f, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl Field {
    /// The prime field GF(p).
    pub fn prime(p: u64) -> Result<Arc<Field>> {
        Field::new(p, 1)
    }

    /// GF(p^m) with the deterministic default modulus.
    pub fn new(p: u64, m: u32) -> Result<Arc<Field>> {
        if !is_prime(p) {
            return Err(Error::Internal(format!("{p} is not prime")));
        }
        if m == 0 {
            return Err(Error::Internal("extension degree must be >= 1".into()));
        }
        let q = (p as usize)
            .checked_pow(m)
            .filter(|&q| q <= 1 << 20)
            .ok_or_else(|| Error::Internal(format!("field GF({p}^{m}) too large")))?;
        let modulus = Self::default_modulus(p, m, q)?;
        Self::with_modulus(p, m, modulus)
    }

    /// GF(p^m) with an explicit modulus (verified irreducible).
    pub fn with_modulus(p: u64, m: u32, modulus: Vec<u64>) -> Result<Arc<Field>> {
        let q = (p as usize).pow(m);
        if modulus.len() != m as usize + 1 || modulus[m as usize] != 1 {
            return Err(Error::Internal("modulus must be monic of degree m".into()));
        }
        if !poly_is_irreducible(&modulus, p) {
            return Err(Error::Internal("modulus is not irreducible".into()));
        }
        let mut fld = Field {
            p,
            m,
            modulus,
            q,
            exp: Vec::new(),
            log: Vec::new(),
            add_t: Vec::new(),
            neg_t: Vec::new(),
            inv_t: Vec::new(),
        };
        fld.build_tables()?;
        Ok(Arc::new(fld))
    }

    fn default_modulus(p: u64, m: u32, q: usize) -> Result<Vec<u64>> {
        if m == 1 {
            // x - g for the smallest primitive root g, so that x generates GF(p)^*.
            let g = (1..p)
                .find(|&g| {
                    prime_factors(p - 1)
                        .iter()
                        .all(|&r| mod_pow(g, (p - 1) / r, p) != 1)
                })
                .unwrap_or(1);
            return Ok(vec![(p - g) % p, 1]);
        }
        let order = q as u64 - 1;
        let factors = prime_factors(order);
        // Smallest (lex by coefficient code) monic irreducible with x primitive.
        for code in 0..q {
            let mut f = vec![0u64; m as usize + 1];
            let mut c = code;
            for fi in f.iter_mut().take(m as usize) {
                *fi = (c % p as usize) as u64;
                c /= p as usize;
            }
            f[m as usize] = 1;
            if f[0] == 0 || !poly_is_irreducible(&f, p) {
                continue;
            }
            if Self::x_is_primitive(&f, p, order, &factors) {
                return Ok(f);
            }
        }
        Err(Error::Internal(format!(
            "no primitive polynomial found for GF({p}^{m})"
        )))
    }

    fn x_is_primitive(f: &[u64], p: u64, order: u64, factors: &[u64]) -> bool {
        let x = vec![0, 1];
        for &r in factors {
            if poly_pow_mod(&x, order / r, f, p) == vec![1] {
                return false;
            }
        }
        poly_pow_mod(&x, order, f, p) == vec![1]
    }

    fn build_tables(&mut self) -> Result<()> {
        let q = self.q;
        let p = self.p as usize;
        let order = q - 1;
        // Find a generator: the class of x when the modulus is primitive,
        // otherwise search.
        let factors = prime_factors(order as u64);
        let gen = (1..q as Elt)
            .map(|code| code)
            .find(|&cand| {
                if cand == 0 {
                    return false;
                }
                factors.iter().all(|&r| {
                    self.raw_pow(cand, order as u64 / r) != 1
                }) && self.raw_pow(cand, order as u64) == 1
            })
            .filter(|_| order > 0);
        let gen = match gen {
            Some(g) => g,
            None if order == 0 => 1, // GF(2) has trivial unit group... q >= 2 so order >= 1
            None => return Err(Error::Internal("no field generator found".into())),
        };
        let mut exp = vec![0 as Elt; 2 * order.max(1)];
        let mut log = vec![0u32; q];
        let mut acc: Elt = 1;
        for (i, slot) in exp.iter_mut().take(order).enumerate() {
            *slot = acc;
            log[acc as usize] = i as u32;
            acc = self.raw_mul(acc, gen);
        }
        for i in order..2 * order.max(1) {
            exp[i] = exp[i - order];
        }
        self.exp = exp;
        self.log = log;
        self.neg_t = (0..q as Elt).map(|a| self.raw_neg(a)).collect();
        if q <= ADD_TABLE_MAX {
            let mut add_t = vec![0 as Elt; q * q];
            for a in 0..q {
                for b in 0..q {
                    add_t[a * q + b] = self.raw_add(a as Elt, b as Elt);
                }
            }
            self.add_t = add_t;
        }
        let mut inv_t = vec![0 as Elt; q];
        for a in 1..q {
            inv_t[a] = self.raw_pow(a as Elt, order as u64 - 1);
            debug_assert_eq!(self.raw_mul(a as Elt, inv_t[a]), 1);
        }
        self.inv_t = inv_t;
        let _ = p;
        Ok(())
    }

    // Digit arithmetic, used to bootstrap the tables and as the fallback path.
    fn raw_add(&self, a: Elt, b: Elt) -> Elt {
        let p = self.p as Elt;
        let mut out = 0;
        let mut mult = 1;
        let (mut a, mut b) = (a, b);
        for _ in 0..self.m {
            let d = (a % p + b % p) % p;
            out += d * mult;
            a /= p;
            b /= p;
            mult *= p;
        }
        out
    }

    fn raw_neg(&self, a: Elt) -> Elt {
        let p = self.p as Elt;
        let mut out = 0;
        let mut mult = 1;
        let mut a = a;
        for _ in 0..self.m {
            let d = (p - a % p) % p;
            out += d * mult;
            a /= p;
            mult *= p;
        }
        out
    }

    fn raw_mul(&self, a: Elt, b: Elt) -> Elt {
        let p = self.p;
        let av = self.decode(a);
        let bv = self.decode(b);
        let mut prod = vec![0u64; av.len() + bv.len()];
        for (i, &ai) in av.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in bv.iter().enumerate() {
                prod[i + j] = (prod[i + j] + ai * bj) % p;
            }
        }
        let r = poly_rem(&prod, &self.modulus, p);
        self.encode(&r)
    }

    fn raw_pow(&self, a: Elt, mut e: u64) -> Elt {
        let mut result: Elt = 1;
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                result = self.raw_mul(result, base);
            }
            base = self.raw_mul(base, base);
            e >>= 1;
        }
        result
    }

    fn decode(&self, a: Elt) -> Vec<u64> {
        let p = self.p;
        let mut v = Vec::with_capacity(self.m as usize);
        let mut a = a as u64;
        for _ in 0..self.m {
            v.push(a % p);
            a /= p;
        }
        v
    }

    fn encode(&self, v: &[u64]) -> Elt {
        let p = self.p;
        let mut out: u64 = 0;
        for &d in v.iter().rev() {
            out = out * p + d;
        }
        out as Elt
    }

    // --- public arithmetic ---

    #[inline]
    pub fn order(&self) -> usize {
        self.q
    }

    #[inline]
    pub fn zero(&self) -> Elt {
        0
    }

    #[inline]
    pub fn one(&self) -> Elt {
        1
    }

    /// The image of an integer under Z -> GF(p) -> GF(p^m).
    pub fn from_int(&self, n: u64) -> Elt {
        (n % self.p) as Elt
    }

    #[inline]
    pub fn add(&self, a: Elt, b: Elt) -> Elt {
        if self.p == 2 {
            a ^ b
        } else if !self.add_t.is_empty() {
            self.add_t[a as usize * self.q + b as usize]
        } else {
            self.raw_add(a, b)
        }
    }

    #[inline]
    pub fn neg(&self, a: Elt) -> Elt {
        if self.p == 2 {
            a
        } else {
            self.neg_t[a as usize]
        }
    }

    #[inline]
    pub fn sub(&self, a: Elt, b: Elt) -> Elt {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elt, b: Elt) -> Elt {
        if a == 0 || b == 0 {
            0
        } else {
            self.exp[(self.log[a as usize] + self.log[b as usize]) as usize]
        }
    }

    /// Multiplicative inverse; panics on zero.
    #[inline]
    pub fn inv(&self, a: Elt) -> Elt {
        assert_ne!(a, 0, "division by zero field element");
        self.inv_t[a as usize]
    }

    pub fn pow(&self, a: Elt, mut e: u64) -> Elt {
        let mut result: Elt = 1;
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(result, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        result
    }

    pub fn elements(&self) -> impl Iterator<Item = Elt> {
        0..self.q as Elt
    }

    /// Serialization header, e.g. `GF(2^2) mod 1 1 1`.
    pub fn header(&self) -> String {
        let coeffs: Vec<String> = self.modulus.iter().map(|c| c.to_string()).collect();
        format!("GF({}^{}) mod {}", self.p, self.m, coeffs.join(" "))
    }
}

fn mod_pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

fn poly_pow_mod(a: &[u64], mut e: u64, f: &[u64], p: u64) -> Vec<u64> {
    let mut result = vec![1u64];
    let mut base = poly_rem(a, f, p);
    while e > 0 {
        if e & 1 == 1 {
            result = poly_mul_rem(&result, &base, f, p);
        }
        base = poly_mul_rem(&base, &base, f, p);
        e >>= 1;
    }
    result
}

fn poly_mul_rem(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut prod = vec![0u64; a.len() + b.len()];
    for (i, &ai) in a.iter().enumerate() {
        for (j, &bj) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + ai * bj) % p;
        }
    }
    poly_rem(&prod, f, p)
}

/// Minimal m with p^m = 1 mod e', where e' is the p'-part of the least common
/// multiple of the given group exponents. GF(p^m) then contains the e'-th
/// roots of unity and splits every group in the session along with all of
/// their subgroups and quotients.
pub fn splitting_degree(p: u64, exponents: &[u64]) -> u32 {
    let mut lcm: u64 = 1;
    for &e in exponents {
        lcm = lcm / gcd(lcm, e) * e;
    }
    let mut eprime = lcm;
    while eprime % p == 0 {
        eprime /= p;
    }
    if eprime <= 1 {
        return 1;
    }
    let mut m = 1u32;
    let mut pw = p % eprime;
    while pw != 1 {
        pw = pw * (p % eprime) % eprime;
        m += 1;
        assert!(m <= 64, "splitting degree search ran away");
    }
    m
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf4_arithmetic() {
        let f = Field::new(2, 2).unwrap();
        assert_eq!(f.order(), 4);
        // x^2 = x + 1 under the modulus x^2 + x + 1
        let x = 2;
        assert_eq!(f.mul(x, x), 3);
        assert_eq!(f.add(x, 3), 1);
        for a in f.elements() {
            if a != 0 {
                assert_eq!(f.mul(a, f.inv(a)), 1);
            }
        }
    }

    #[test]
    fn frobenius_fixes_everything_small_fields() {
        // x^(p^m) = x for all elements, exhaustively for p^m <= 4096.
        for (p, m) in [(2, 1), (2, 2), (2, 3), (2, 4), (3, 1), (3, 2), (5, 1), (7, 1), (2, 8), (3, 4)] {
            let f = Field::new(p, m).unwrap();
            let q = f.order() as u64;
            assert!(q <= 6561);
            for a in f.elements() {
                assert_eq!(f.pow(a, q), a, "GF({p}^{m}) element {a}");
            }
        }
    }

    #[test]
    fn field_ops_associate_and_distribute() {
        let f = Field::new(3, 2).unwrap();
        for a in f.elements() {
            for b in f.elements() {
                assert_eq!(f.add(a, b), f.add(b, a));
                assert_eq!(f.mul(a, b), f.mul(b, a));
                for c in f.elements() {
                    assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                }
            }
        }
    }

    #[test]
    fn splitting_degrees_for_battery() {
        // p = 2 with a group of exponent 12 (p'-part 3) needs GF(4).
        assert_eq!(splitting_degree(2, &[12]), 2);
        // p = 3, exponent 6 (p'-part 2): 3 = 1 mod 2 already.
        assert_eq!(splitting_degree(3, &[6]), 1);
        // p = 3, exponent 12 (p'-part 4): 3^2 = 9 = 1 mod 4.
        assert_eq!(splitting_degree(3, &[12]), 2);
        // p-group: prime field suffices.
        assert_eq!(splitting_degree(2, &[4, 2]), 1);
    }

    #[test]
    fn header_is_reproducible() {
        let f = Field::new(2, 2).unwrap();
        assert_eq!(f.header(), "GF(2^2) mod 1 1 1");
        let g = Field::new(2, 2).unwrap();
        assert_eq!(f.header(), g.header());
    }
}
