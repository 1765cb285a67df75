//! Sparse multivariate polynomials over Q in the five indeterminates
//! g2, g3, c, p, q.
//!
//! This is a plain polynomial ring: the Weierstrass relation q² = 4p³ − g2·p − g3
//! is *not* built in here. The quotient-ring reduction is applied by
//! [`crate::coeffs::GenusOneScalar`], which keeps its numerators at q-degree ≤ 1
//! by rewriting q² through [`Poly::reduce_q`]. Keeping the ring relation out of
//! this type means `Poly` is a UFD, so GCD and exact division are well defined.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num::{BigInt, BigRational, One, Signed, Zero};

pub const NVARS: usize = 5;
pub const VAR_NAMES: [&str; NVARS] = ["g2", "g3", "c", "p", "q"];
pub const VAR_G2: usize = 0;
pub const VAR_G3: usize = 1;
pub const VAR_C: usize = 2;
pub const VAR_P: usize = 3;
pub const VAR_Q: usize = 4;

/// Exponent vector. Ordered by total degree, then lexicographically with
/// g2 > g3 > c > p > q; this fixes the term order used for leading terms
/// and for canonical rendering.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub struct Mono(pub [u16; NVARS]);

impl Mono {
    pub fn one() -> Self {
        Mono([0; NVARS])
    }

    pub fn var(i: usize) -> Self {
        let mut e = [0u16; NVARS];
        e[i] = 1;
        Mono(e)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        let mut e = [0u16; NVARS];
        for i in 0..NVARS {
            e[i] = self.0[i] + other.0[i];
        }
        Mono(e)
    }

    /// Componentwise division; `None` if not divisible.
    pub fn div(&self, other: &Mono) -> Option<Mono> {
        let mut e = [0u16; NVARS];
        for i in 0..NVARS {
            e[i] = self.0[i].checked_sub(other.0[i])?;
        }
        Some(Mono(e))
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial; invariant: no stored coefficient is zero.
/// The `Ord` impl is an arbitrary total order (term map comparison) used only
/// to key factored denominators.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct Poly {
    pub terms: BTreeMap<Mono, BigRational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Poly::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Mono::one(), c);
        }
        Poly { terms }
    }

    pub fn from_integer(n: i64) -> Self {
        Poly::constant(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn var(i: usize) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Mono::var(i), BigRational::one());
        Poly { terms }
    }

    pub fn monomial(m: Mono, c: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&Mono::one())
                .map(|c| c.is_one())
                .unwrap_or(false)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms.contains_key(&Mono::one()))
    }

    pub fn as_constant(&self) -> Option<BigRational> {
        if self.terms.is_empty() {
            return Some(BigRational::zero());
        }
        if self.is_constant() {
            return self.terms.get(&Mono::one()).cloned();
        }
        None
    }

    pub fn degree_in(&self, var: usize) -> u16 {
        self.terms.keys().map(|m| m.0[var]).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.total_degree()).max().unwrap_or(0)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Leading (monomial, coefficient) under the deglex order.
    pub fn leading(&self) -> Option<(&Mono, &BigRational)> {
        self.terms.iter().next_back()
    }

    fn insert_add(&mut self, m: Mono, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get() + c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut r = self.clone();
        for (m, c) in &other.terms {
            r.insert_add(*m, c.clone());
        }
        r
    }

    pub fn neg(&self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
        }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let mut r = self.clone();
        for (m, c) in &other.terms {
            r.insert_add(*m, -c.clone());
        }
        r
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let (small, big) = if self.terms.len() <= other.terms.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut r = Poly::zero();
        for (ma, ca) in &small.terms {
            for (mb, cb) in &big.terms {
                r.insert_add(ma.mul(mb), ca * cb);
            }
        }
        r
    }

    pub fn mul_term(&self, m: &Mono, c: &BigRational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(mm, cc)| (mm.mul(m), cc * c))
                .collect(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> Poly {
        self.mul_term(&Mono::one(), c)
    }

    pub fn pow(&self, n: u32) -> Poly {
        let mut r = Poly::one();
        for _ in 0..n {
            r = r.mul(self);
        }
        r
    }

    pub fn derivative(&self, var: usize) -> Poly {
        let mut r = Poly::zero();
        for (m, c) in &self.terms {
            let e = m.0[var];
            if e > 0 {
                let mut m2 = *m;
                m2.0[var] = e - 1;
                r.insert_add(m2, c * BigRational::from_integer(BigInt::from(e)));
            }
        }
        r
    }

    /// The Weierstrass cubic 4p³ − g2·p − g3 that rewrites q².
    pub fn q_relation() -> Poly {
        let p = Poly::var(VAR_P);
        let g2 = Poly::var(VAR_G2);
        let g3 = Poly::var(VAR_G3);
        p.pow(3)
            .scale(&BigRational::from_integer(BigInt::from(4)))
            .sub(&g2.mul(&p))
            .sub(&g3)
    }

    /// Eliminate all powers q^k with k ≥ 2 by substituting q² ↦ 4p³ − g2·p − g3.
    pub fn reduce_q(&self) -> Poly {
        if self.degree_in(VAR_Q) < 2 {
            return self.clone();
        }
        let rel = Poly::q_relation();
        let mut r = Poly::zero();
        for (m, c) in &self.terms {
            let qe = m.0[VAR_Q];
            if qe < 2 {
                r.insert_add(*m, c.clone());
            } else {
                let mut base = *m;
                base.0[VAR_Q] = qe % 2;
                let repl = rel.pow((qe / 2) as u32).mul_term(&base, c);
                r = r.add(&repl);
            }
        }
        r
    }

    /// Split into (q-free part, coefficient of q). Requires q-degree ≤ 1.
    pub fn q_split(&self) -> (Poly, Poly) {
        debug_assert!(self.degree_in(VAR_Q) <= 1);
        let mut p0 = Poly::zero();
        let mut p1 = Poly::zero();
        for (m, c) in &self.terms {
            if m.0[VAR_Q] == 0 {
                p0.insert_add(*m, c.clone());
            } else {
                let mut m2 = *m;
                m2.0[VAR_Q] = 0;
                p1.insert_add(m2, c.clone());
            }
        }
        (p0, p1)
    }

    /// Multiply by q^1 (no reduction).
    pub fn mul_q(&self) -> Poly {
        self.mul_term(&Mono::var(VAR_Q), &BigRational::one())
    }

    /// Rational c such that `self / c` has coprime integer coefficients with a
    /// positive leading one. Returns `None` for the zero polynomial.
    pub fn rational_content(&self) -> Option<BigRational> {
        if self.is_zero() {
            return None;
        }
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            num_gcd = num::integer::gcd(num_gcd, c.numer().abs());
            den_lcm = num::integer::lcm(den_lcm, c.denom().clone());
        }
        let mut content = BigRational::new(num_gcd, den_lcm);
        if self.leading().unwrap().1.is_negative() {
            content = -content;
        }
        Some(content)
    }

    /// Primitive part: integer coefficients, coprime, positive leading
    /// coefficient. Returns (primitive, content) with self = content·primitive.
    pub fn primitive(&self) -> (Poly, BigRational) {
        match self.rational_content() {
            None => (Poly::zero(), BigRational::one()),
            Some(content) => {
                let inv = content.recip();
                (self.scale(&inv), content)
            }
        }
    }

    /// Exact division; `None` if `self` is not a multiple of `d`.
    pub fn exact_div(&self, d: &Poly) -> Option<Poly> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Poly::zero());
        }
        if let Some(c) = d.as_constant() {
            return Some(self.scale(&c.recip()));
        }
        let (dlm, dlc) = d.leading().unwrap();
        let dlm = *dlm;
        let dlc = dlc.clone();
        let mut rem = self.clone();
        let mut quot = Poly::zero();
        while let Some((rm, rc)) = rem.leading() {
            let qm = rm.div(&dlm)?;
            let qc = rc / &dlc;
            quot.insert_add(qm, qc.clone());
            rem = rem.sub(&d.mul_term(&qm, &qc));
        }
        Some(quot)
    }

    pub fn divides(&self, other: &Poly) -> bool {
        other.exact_div(self).is_some()
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        // Descending deglex: biggest term first.
        for (m, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let is_unit_mono = m.total_degree() == 0;
            if !abs.is_one() || is_unit_mono {
                if abs.denom().is_one() {
                    write!(f, "{}", abs.numer())?;
                } else {
                    write!(f, "{}/{}", abs.numer(), abs.denom())?;
                }
                if !is_unit_mono {
                    write!(f, "*")?;
                }
            }
            let mut needs_star = false;
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if needs_star {
                    write!(f, "*")?;
                }
                needs_star = true;
                if e == 1 {
                    write!(f, "{}", VAR_NAMES[i])?;
                } else {
                    write!(f, "{}^{}", VAR_NAMES[i], e)?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn br(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn mul_and_display() {
        let p = Poly::var(VAR_P);
        let g2 = Poly::var(VAR_G2);
        let f = p.pow(2).scale(&br(3)).sub(&g2.scale(&br(1)).scale(
            &BigRational::new(BigInt::from(1), BigInt::from(4)),
        ));
        assert_eq!(f.to_string(), "3*p^2 - 1/4*g2");
    }

    #[test]
    fn q_reduction() {
        let q = Poly::var(VAR_Q);
        let r = q.mul(&q).reduce_q();
        assert_eq!(r, Poly::q_relation());
        // q^3 -> q * rel
        let r3 = q.pow(3).reduce_q();
        assert_eq!(r3, Poly::q_relation().mul_q());
    }

    #[test]
    fn exact_division() {
        let p = Poly::var(VAR_P);
        let a = p.pow(2).sub(&Poly::one()); // p^2 - 1
        let b = p.sub(&Poly::one()); // p - 1
        let q = a.exact_div(&b).unwrap();
        assert_eq!(q, p.add(&Poly::one()));
        assert!(b.exact_div(&a).is_none());
    }

    #[test]
    fn primitive_part() {
        let p = Poly::var(VAR_P);
        let f = p.scale(&BigRational::new(BigInt::from(-4), BigInt::from(6)))
            .add(&Poly::constant(BigRational::new(
                BigInt::from(2),
                BigInt::from(3),
            )));
        let (prim, content) = f.primitive();
        assert_eq!(prim.to_string(), "p - 1");
        assert_eq!(prim.scale(&content), f);
    }
}
