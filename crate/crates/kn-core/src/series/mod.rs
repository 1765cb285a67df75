//! Truncated exact Laurent series in one local coordinate, and local λ-forms.
//!
//! A series carries a trusted window [val, prec): coefficients below `val`
//! are exactly zero, coefficients in the window are stored exactly, and
//! coefficients at or above `prec` are unknown. Every operation propagates
//! the window; reading outside it is an error, never a silent zero. For a
//! product of windows (v₁,N₁)·(v₂,N₂) the result is trusted on
//! [v₁+v₂, min(v₁+N₂, v₂+N₁)).

pub mod bi;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::coeffs::{Coeff, Scalar, ScalarMul};
use crate::error::{Error, Result};

/// Stand-in for infinite precision (exact objects like z^n).
pub const PREC_INF: i64 = i64::MAX / 4;

/// Window-safe sum that saturates at ±PREC_INF.
pub fn wadd(a: i64, b: i64) -> i64 {
    let s = (a as i128) + (b as i128);
    s.clamp(-(PREC_INF as i128), PREC_INF as i128) as i64
}

/// Chart tag: which marked point the local coordinate belongs to.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize, Hash)]
pub enum Point {
    Plus,
    Minus,
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Plus => write!(f, "S+"),
            Point::Minus => write!(f, "S-"),
        }
    }
}

#[derive(Clone, PartialEq, Debug)]
pub struct LaurentSeries<C: Coeff> {
    terms: BTreeMap<i64, C>,
    val: i64,
    prec: i64,
}

impl<C: Coeff> LaurentSeries<C> {
    /// Zero series with the given trusted window.
    pub fn zero(val: i64, prec: i64) -> Self {
        assert!(val <= prec, "window [{}, {}) is inverted", val, prec);
        LaurentSeries {
            terms: BTreeMap::new(),
            val,
            prec,
        }
    }

    pub fn monomial(exp: i64, c: C, prec: i64) -> Self {
        let mut s = LaurentSeries::zero(exp.min(prec), prec);
        if !c.is_zero() && exp < prec {
            s.terms.insert(exp, c);
        }
        s
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, C)>>(terms: I, val: i64, prec: i64) -> Self {
        let mut s = LaurentSeries::zero(val, prec);
        for (k, c) in terms {
            assert!(k >= val && k < prec, "term {} outside window [{}, {})", k, val, prec);
            if !c.is_zero() {
                s.insert_add(k, c);
            }
        }
        s
    }

    pub fn val(&self) -> i64 {
        self.val
    }

    pub fn prec(&self) -> i64 {
        self.prec
    }

    /// Lowest exponent with a (stored) nonzero coefficient.
    pub fn actual_val(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&i64, &C)> {
        self.terms.iter()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn insert_add(&mut self, k: i64, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(k) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().add(&c);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    /// Exact coefficient of t^k; errors if k lies beyond the trusted window.
    pub fn coeff(&self, k: i64) -> Result<C> {
        if k >= self.prec {
            return Err(Error::insufficient(k, self.prec - 1));
        }
        Ok(self.terms.get(&k).cloned().unwrap_or_else(C::zero))
    }

    /// Restrict the trusted window (dropping coefficients outside it).
    pub fn truncated(&self, val: i64, prec: i64) -> Self {
        let nv = self.val.max(val);
        let np = self.prec.min(prec);
        let mut s = LaurentSeries::zero(nv.min(np), np);
        for (&k, c) in &self.terms {
            if k >= nv && k < np {
                s.terms.insert(k, c.clone());
            }
        }
        s
    }

    pub fn add(&self, other: &Self) -> Self {
        let val = self.val.min(other.val);
        let prec = self.prec.min(other.prec);
        let mut s = LaurentSeries::zero(val.min(prec), prec);
        for (&k, c) in self.terms.iter().chain(other.terms.iter()) {
            if k < prec {
                s.insert_add(k, c.clone());
            }
        }
        s
    }

    pub fn neg(&self) -> Self {
        LaurentSeries {
            terms: self.terms.iter().map(|(k, c)| (*k, c.neg())).collect(),
            val: self.val,
            prec: self.prec,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn int_mul(&self, n: i64) -> Self {
        if n == 0 {
            return LaurentSeries::zero(self.val, self.prec);
        }
        let mut terms = BTreeMap::new();
        for (&k, c) in &self.terms {
            let v = c.int_mul(n);
            if !v.is_zero() {
                terms.insert(k, v);
            }
        }
        LaurentSeries {
            terms,
            val: self.val,
            prec: self.prec,
        }
    }

    pub fn scale<F>(&self, f: &F) -> Self
    where
        C: ScalarMul<F>,
    {
        let mut terms = BTreeMap::new();
        for (&k, c) in &self.terms {
            let v = c.scalar_mul(f);
            if !v.is_zero() {
                terms.insert(k, v);
            }
        }
        LaurentSeries {
            terms,
            val: self.val,
            prec: self.prec,
        }
    }

    /// Multiply by t^k.
    pub fn shifted(&self, k: i64) -> Self {
        LaurentSeries {
            terms: self.terms.iter().map(|(&e, c)| (e + k, c.clone())).collect(),
            val: wadd(self.val, k),
            prec: wadd(self.prec, k),
        }
    }

    /// Coefficient-wise derivative d/dt: t^k ↦ k·t^{k−1}. The window loses one
    /// exponent at the top.
    pub fn derivative(&self) -> Self {
        let val = wadd(self.val, -1);
        let prec = wadd(self.prec, -1);
        let mut s = LaurentSeries::zero(val.min(prec), prec);
        for (&k, c) in &self.terms {
            if k != 0 {
                s.insert_add(k - 1, c.int_mul(k));
            }
        }
        s
    }

    /// Convolution product; defined when coefficients multiply.
    pub fn mul(&self, other: &Self) -> Self
    where
        C: Scalar,
    {
        let val = wadd(self.val, other.val);
        let prec = wadd(self.val, other.prec).min(wadd(other.val, self.prec));
        let mut s = LaurentSeries::zero(val.min(prec), prec);
        for (&ka, ca) in &self.terms {
            for (&kb, cb) in &other.terms {
                let k = ka + kb;
                if k < prec {
                    s.insert_add(k, Scalar::mul(ca, cb));
                }
            }
        }
        s
    }

    /// Product with a scalar series (operator coefficients stay on the left).
    pub fn mul_scalar_series<F: Scalar>(&self, other: &LaurentSeries<F>) -> Self
    where
        C: ScalarMul<F>,
    {
        let val = wadd(self.val, other.val);
        let prec = wadd(self.val, other.prec).min(wadd(other.val, self.prec));
        let mut s = LaurentSeries::zero(val.min(prec), prec);
        for (&ka, ca) in &self.terms {
            for (&kb, cb) in &other.terms {
                let k = ka + kb;
                if k < prec {
                    s.insert_add(k, ca.scalar_mul(cb));
                }
            }
        }
        s
    }

    pub fn map<D: Coeff>(&self, f: impl Fn(&C) -> D) -> LaurentSeries<D> {
        let mut terms = BTreeMap::new();
        for (&k, c) in &self.terms {
            let v = f(c);
            if !v.is_zero() {
                terms.insert(k, v);
            }
        }
        LaurentSeries {
            terms,
            val: self.val,
            prec: self.prec,
        }
    }

    /// First nonzero stored coefficient, as (exponent, coefficient).
    pub fn leading(&self) -> Option<(i64, &C)> {
        self.terms.iter().next().map(|(&k, c)| (k, c))
    }
}

impl<C: Coeff> Coeff for LaurentSeries<C> {
    fn zero() -> Self {
        LaurentSeries::zero(0, PREC_INF)
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty() && self.prec >= PREC_INF
    }
    fn add(&self, other: &Self) -> Self {
        LaurentSeries::add(self, other)
    }
    fn neg(&self) -> Self {
        LaurentSeries::neg(self)
    }
    fn int_mul(&self, n: i64) -> Self {
        LaurentSeries::int_mul(self, n)
    }
}

/// A local tensor of weight λ in one chart: f(z)·(dz)^λ, with λ = −1 read as
/// f(z)·∂/∂z. Linear operations preserve the tags, multiplication adds
/// weights, and the ⟨ω, e⟩ coupling is multiplication with weights 1 + (−1).
#[derive(Clone, PartialEq, Debug)]
pub struct LocalForm<F: Scalar> {
    pub series: LaurentSeries<F>,
    pub weight: i64,
    pub point: Point,
}

impl<F: Scalar> LocalForm<F> {
    pub fn new(series: LaurentSeries<F>, weight: i64, point: Point) -> Self {
        LocalForm {
            series,
            weight,
            point,
        }
    }

    fn check_point(&self, other: &Self) -> Result<()> {
        if self.point != other.point {
            return Err(Error::ChartMismatch(self.point, other.point));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_point(other)?;
        if self.weight != other.weight {
            return Err(Error::WeightMismatch {
                expected: self.weight,
                got: other.weight,
            });
        }
        Ok(LocalForm::new(
            self.series.add(&other.series),
            self.weight,
            self.point,
        ))
    }

    pub fn neg(&self) -> Self {
        LocalForm::new(self.series.neg(), self.weight, self.point)
    }

    pub fn scale(&self, f: &F) -> Self {
        LocalForm::new(self.series.scale(f), self.weight, self.point)
    }

    /// Tensor multiplication: weights add.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_point(other)?;
        Ok(LocalForm::new(
            self.series.mul(&other.series),
            self.weight + other.weight,
            self.point,
        ))
    }

    /// Exterior derivative on functions: f ↦ (df/dz)·dz.
    pub fn d(&self) -> Result<Self> {
        if self.weight != 0 {
            return Err(Error::WeightMismatch {
                expected: 0,
                got: self.weight,
            });
        }
        Ok(LocalForm::new(self.series.derivative(), 1, self.point))
    }

    /// Coefficient of z^{−1}; requires weight 1. Exponents at or above the
    /// trusted end are unknown, so a window ending at or below −1 is an error;
    /// a window starting above −1 pins the residue to 0.
    pub fn residue(&self) -> Result<F> {
        if self.weight != 1 {
            return Err(Error::WeightMismatch {
                expected: 1,
                got: self.weight,
            });
        }
        self.series.coeff(-1)
    }

    /// Lie derivative of `self` (weight λ) along the vector field `zeta`
    /// (weight −1): ζ·(dg/dz) + λ·g·(dζ/dz), same weight as `self`.
    pub fn lie_derivative(&self, zeta: &Self) -> Result<Self> {
        self.check_point(zeta)?;
        if zeta.weight != -1 {
            return Err(Error::WeightMismatch {
                expected: -1,
                got: zeta.weight,
            });
        }
        let t1 = zeta.series.mul(&self.series.derivative());
        let t2 = self
            .series
            .mul(&zeta.series.derivative())
            .int_mul(self.weight);
        Ok(LocalForm::new(t1.add(&t2), self.weight, self.point))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffs::Rational;

    fn r(n: i64) -> Rational {
        <Rational as Scalar>::from_integer(n)
    }

    fn zpow(e: i64) -> LaurentSeries<Rational> {
        LaurentSeries::monomial(e, r(1), PREC_INF)
    }

    #[test]
    fn mul_window_rule() {
        // (z⁻¹ + 1; window [−1,3)) · (z; window [1,5)) → 1 + z on [0,4)
        let a = LaurentSeries::from_terms(vec![(-1, r(1)), (0, r(1))], -1, 3);
        let b = LaurentSeries::from_terms(vec![(1, r(1))], 1, 5);
        let p = a.mul(&b);
        assert_eq!(p.val(), 0);
        assert_eq!(p.prec(), 4);
        assert_eq!(p.coeff(0).unwrap(), r(1));
        assert_eq!(p.coeff(1).unwrap(), r(1));
        assert_eq!(p.coeff(3).unwrap(), r(0));
        assert!(p.coeff(4).is_err());
    }

    #[test]
    fn mul_by_zero_propagates_window() {
        let a = LaurentSeries::from_terms(vec![(-1, r(1)), (0, r(1))], -1, 3);
        let z = LaurentSeries::zero(0, 5);
        let p = a.mul(&z);
        assert!(p.is_empty());
        assert_eq!(p.val(), -1);
        assert_eq!(p.prec(), 3.min(wadd(0, 3)).min(wadd(-1, 5)));
    }

    #[test]
    fn geometric_times_complement_telescopes() {
        // (1 + z + z² + …)·(1 − z) = 1 within the window
        let n = 12;
        let geo = LaurentSeries::from_terms((0..n).map(|k| (k, r(1))), 0, n);
        let lin = LaurentSeries::from_terms(vec![(0, r(1)), (1, r(-1))], 0, PREC_INF);
        let p = geo.mul(&lin);
        assert_eq!(p.coeff(0).unwrap(), r(1));
        for k in 1..p.prec() {
            assert_eq!(p.coeff(k).unwrap(), r(0), "tail must cancel at z^{}", k);
        }
    }

    #[test]
    fn derivative_examples() {
        let f = LocalForm::new(zpow(3), 0, Point::Plus);
        let df = f.d().unwrap();
        assert_eq!(df.weight, 1);
        assert_eq!(df.series.coeff(2).unwrap(), r(3));
        // d(constant) = 0
        let c = LocalForm::new(zpow(0), 0, Point::Plus);
        assert!(c.d().unwrap().series.is_empty());
        // d(z⁻¹) = −z⁻² dz
        let zi = LocalForm::new(zpow(-1), 0, Point::Plus);
        assert_eq!(zi.d().unwrap().series.coeff(-2).unwrap(), r(-1));
    }

    #[test]
    fn residue_examples() {
        let w = LocalForm::new(zpow(-1), 1, Point::Plus);
        assert_eq!(w.residue().unwrap(), r(1));
        let w2 = LocalForm::new(zpow(-2), 1, Point::Plus);
        assert_eq!(w2.residue().unwrap(), r(0));
        // window excluding −1 errors
        let bad: LocalForm<Rational> = LocalForm::new(LaurentSeries::zero(-5, -1), 1, Point::Plus);
        assert!(matches!(
            bad.residue(),
            Err(Error::InsufficientPrecision { .. })
        ));
    }

    #[test]
    fn lie_derivative_examples() {
        let e = LocalForm::new(zpow(0), -1, Point::Plus); // ∂/∂z
        for n in -3i64..4 {
            let f = LocalForm::new(zpow(n), 0, Point::Plus);
            let lf = f.lie_derivative(&e).unwrap();
            if n == 0 {
                assert!(lf.series.is_empty());
            } else {
                assert_eq!(lf.series.coeff(n - 1).unwrap(), r(n));
            }
        }
        // weight-1 form: ∇(z^{−n−1} dz) = (−n−1) z^{−n−2} dz
        let n = 2i64;
        let w = LocalForm::new(zpow(-n - 1), 1, Point::Plus);
        let lw = w.lie_derivative(&e).unwrap();
        assert_eq!(lw.series.coeff(-n - 2).unwrap(), r(-n - 1));
        // chart mismatch is an error
        let g = LocalForm::new(zpow(1), 0, Point::Minus);
        assert!(matches!(
            g.lie_derivative(&e),
            Err(Error::ChartMismatch(..))
        ));
    }

    #[test]
    fn residue_of_exact_differential_vanishes() {
        let k = 5;
        let f = LocalForm::new(
            LaurentSeries::from_terms((-k..=k).map(|e| (e, r(e * e + 1))), -k, k + 1),
            0,
            Point::Plus,
        );
        assert_eq!(f.d().unwrap().residue().unwrap(), r(0));
    }
}
