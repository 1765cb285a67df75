//! The genus-1 constant field K1 = Frac( Q(g2,g3,c,p)[q] / (q² − 4p³ + g2·p + g3) ).
//!
//! p, q, c stand for ℘(d), ℘′(d), ζ(d) at the point separation d between the
//! two marked points; g2, g3, c, p are algebraically independent and q is
//! quadratic over them. Every element is stored as
//!
//! ```text
//! (n₀ + n₁·q) / Π fᵢ^{eᵢ}
//! ```
//!
//! with n₀, n₁ and each fᵢ free of q. Numerators are kept at q-degree ≤ 1 by
//! rewriting q² ↦ 4p³ − g2·p − g3; inverses use the conjugate
//! (x + y·q)⁻¹ = (x − y·q)/(x² − y²·(4p³ − g2·p − g3)), so denominators never
//! acquire q. The denominator is kept factored so that reduction is a cheap
//! divisibility probe against each factor instead of a full GCD; the full GCD
//! runs only in [`GenusOneScalar::canonical_pair`], which backs rendering,
//! serialization and canonical equality of representations.

use std::collections::BTreeMap;
use std::fmt;

use num::{BigInt, BigRational};

use super::gcd::gcd;
use super::poly::{Poly, VAR_C, VAR_G2, VAR_G3, VAR_P, VAR_Q};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct GenusOneScalar {
    num: Poly,
    /// Factored denominator: primitive integer polynomials with positive
    /// leading coefficient, non-constant, q-free.
    den: BTreeMap<Poly, u32>,
}

impl GenusOneScalar {
    pub fn zero() -> Self {
        GenusOneScalar {
            num: Poly::zero(),
            den: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        GenusOneScalar {
            num: Poly::one(),
            den: BTreeMap::new(),
        }
    }

    pub fn from_poly(num: Poly) -> Self {
        GenusOneScalar {
            num: num.reduce_q(),
            den: BTreeMap::new(),
        }
    }

    pub fn from_rational(r: BigRational) -> Self {
        Self::from_poly(Poly::constant(r))
    }

    pub fn g2() -> Self {
        Self::from_poly(Poly::var(VAR_G2))
    }
    pub fn g3() -> Self {
        Self::from_poly(Poly::var(VAR_G3))
    }
    pub fn c() -> Self {
        Self::from_poly(Poly::var(VAR_C))
    }
    pub fn p() -> Self {
        Self::from_poly(Poly::var(VAR_P))
    }
    pub fn q() -> Self {
        Self::from_poly(Poly::var(VAR_Q))
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn den_expanded(&self) -> Poly {
        let mut d = Poly::one();
        for (f, &e) in &self.den {
            d = d.mul(&f.pow(e as u32));
        }
        d
    }

    /// Divide the numerator by denominator factors wherever possible.
    fn reduce(&mut self) {
        if self.num.is_zero() {
            self.den.clear();
            return;
        }
        let factors: Vec<Poly> = self.den.keys().cloned().collect();
        for f in factors {
            loop {
                let mult = match self.den.get(&f) {
                    Some(&m) if m > 0 => m,
                    _ => break,
                };
                let (n0, n1) = self.num.q_split();
                let d0 = match n0.exact_div(&f) {
                    Some(d) => d,
                    None => break,
                };
                let d1 = if n1.is_zero() {
                    Poly::zero()
                } else {
                    match n1.exact_div(&f) {
                        Some(d) => d,
                        None => break,
                    }
                };
                self.num = d0.add(&d1.mul_q());
                if mult == 1 {
                    self.den.remove(&f);
                } else {
                    self.den.insert(f.clone(), mult - 1);
                }
            }
        }
    }

    /// Insert a q-free polynomial factor into the denominator, absorbing its
    /// rational content into the numerator.
    fn push_den_factor(&mut self, f: &Poly, mult: u32) -> Result<()> {
        if f.is_zero() {
            return Err(Error::DivisionByZero);
        }
        debug_assert_eq!(f.degree_in(VAR_Q), 0, "denominator factor must be q-free");
        let (prim, content) = f.primitive();
        let inv_content = content.recip();
        for _ in 0..mult {
            self.num = self.num.scale(&inv_content);
        }
        if !prim.is_constant() {
            *self.den.entry(prim).or_insert(0) += mult;
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Self {
        // lcm of the factored denominators: max multiplicity per factor.
        let mut lcm: BTreeMap<Poly, u32> = self.den.clone();
        for (f, &e) in &other.den {
            let cur = lcm.entry(f.clone()).or_insert(0);
            *cur = (*cur).max(e);
        }
        let cofactor = |own: &BTreeMap<Poly, u32>| -> Poly {
            let mut cof = Poly::one();
            for (f, &e) in &lcm {
                let have = own.get(f).copied().unwrap_or(0);
                if e > have {
                    cof = cof.mul(&f.pow((e - have) as u32));
                }
            }
            cof
        };
        let num = self
            .num
            .mul(&cofactor(&self.den))
            .add(&other.num.mul(&cofactor(&other.den)));
        let mut r = GenusOneScalar { num, den: lcm };
        r.reduce();
        r
    }

    pub fn neg(&self) -> Self {
        GenusOneScalar {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let num = self.num.mul(&other.num).reduce_q();
        let mut den = self.den.clone();
        for (f, &e) in &other.den {
            *den.entry(f.clone()).or_insert(0) += e;
        }
        let mut r = GenusOneScalar { num, den };
        r.reduce();
        r
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (n0, n1) = self.num.q_split();
        let mut r = GenusOneScalar {
            num: self.den_expanded(),
            den: BTreeMap::new(),
        };
        if n1.is_zero() {
            r.push_den_factor(&n0, 1)?;
        } else {
            // conjugate: 1/(n0 + n1 q) = (n0 − n1 q)/(n0² − n1²·R)
            let conj = n0.sub(&n1.mul_q());
            let w = n0.mul(&n0).sub(&n1.mul(&n1).mul(&Poly::q_relation()));
            if w.is_zero() {
                // cannot happen for nonzero elements: q² − R is irreducible
                return Err(Error::DivisionByZero);
            }
            r.num = r.num.mul(&conj).reduce_q();
            r.push_den_factor(&w, 1)?;
        }
        r.reduce();
        Ok(r)
    }

    /// Fully reduced (numerator, denominator) pair: gcd-free, denominator a
    /// primitive integer polynomial with positive leading coefficient. This
    /// pair is unique per field element, so it backs canonical rendering.
    pub fn canonical_pair(&self) -> (Poly, Poly) {
        if self.num.is_zero() {
            return (Poly::zero(), Poly::one());
        }
        let den = self.den_expanded();
        let (n0, n1) = self.num.q_split();
        let g = gcd(&gcd(&n0, &n1), &den);
        let num = if g.is_one() {
            self.num.clone()
        } else {
            let r0 = n0.exact_div(&g).expect("gcd divides");
            let r1 = if n1.is_zero() {
                Poly::zero()
            } else {
                n1.exact_div(&g).expect("gcd divides")
            };
            r0.add(&r1.mul_q())
        };
        let den = den.exact_div(&g).expect("gcd divides");
        let (den_prim, content) = den.primitive();
        (num.scale(&content.recip()), den_prim)
    }

    pub fn render(&self) -> String {
        let (num, den) = self.canonical_pair();
        if den.is_one() {
            format!("{}", num)
        } else if num.num_terms() <= 1 && num.terms.values().all(|c| {
            use num::Signed;
            c.is_positive()
        }) {
            format!("{}/({})", num, den)
        } else {
            format!("({})/({})", num, den)
        }
    }
}

impl PartialEq for GenusOneScalar {
    fn eq(&self, other: &Self) -> bool {
        if self.num == other.num && self.den == other.den {
            return true;
        }
        // cross-multiply; denominators are q-free so no reduction is needed
        self.num
            .mul(&other.den_expanded())
            .sub(&other.num.mul(&self.den_expanded()))
            .is_zero()
    }
}

impl fmt::Display for GenusOneScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

impl GenusOneScalar {
    pub fn from_integer(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        assert!(d != 0);
        Self::from_rational(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> GenusOneScalar {
        GenusOneScalar::q()
    }

    fn relation() -> GenusOneScalar {
        GenusOneScalar::from_poly(Poly::q_relation())
    }

    #[test]
    fn q_squared_reduces() {
        assert_eq!(q().mul(&q()), relation());
    }

    #[test]
    fn inv_q_is_conjugate_form() {
        let inv = q().inv().unwrap();
        // q / (4p³ − g2 p − g3)
        let expected = q().mul(&relation().inv().unwrap());
        assert_eq!(inv, expected);
        assert_eq!(inv.mul(&q()), GenusOneScalar::one());
    }

    #[test]
    fn canonical_pair_cancels() {
        // (p² − 1)/(p − 1) and (p + 1) are the same element
        let p = GenusOneScalar::p();
        let one = GenusOneScalar::one();
        let a = p
            .mul(&p)
            .sub(&one)
            .mul(&p.sub(&one).inv().unwrap());
        assert_eq!(a, p.add(&one));
        assert_eq!(a.canonical_pair(), p.add(&one).canonical_pair());
        assert_eq!(a.render(), "p + 1");
    }

    #[test]
    fn division_by_zero_reported() {
        assert!(GenusOneScalar::zero().inv().is_err());
    }
}
