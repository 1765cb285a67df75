//! Exact coefficient arithmetic.
//!
//! Two coefficient fields are built in: arbitrary-precision rationals for
//! genus 0 and the symbolic Weierstrass constant field
//! K1 = Frac( Q(g2,g3,c,p)[q] / (q² − 4p³ + g2·p + g3) ) for genus 1. All
//! downstream identities are checked by exact equality in these fields; there
//! is no floating-point mode.

pub mod gcd;
pub mod k1;
pub mod parse;
pub mod poly;

use num::{BigInt, BigRational, One, Signed, Zero};

pub use k1::GenusOneScalar;
pub use poly::Poly;

use crate::error::Result;

/// Reduced arbitrary-precision rational; the genus-0 coefficient field.
pub type Rational = BigRational;

/// Ring element usable as a series coefficient. Mode operators implement this
/// too, which is what lets the same series engine carry operator-valued
/// expansions.
pub trait Coeff: Clone + PartialEq + std::fmt::Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }
    /// Multiplication by a plain integer (used by differentiation).
    fn int_mul(&self, n: i64) -> Self;
}

/// Multiplication by a scalar field element, for mixed scalar×operator series.
pub trait ScalarMul<F>: Coeff {
    fn scalar_mul(&self, f: &F) -> Self;
}

/// Coefficient field of a surface model.
pub trait Scalar: Coeff + ScalarMul<Self> + std::fmt::Display {
    fn one() -> Self;
    fn is_one(&self) -> bool {
        *self == Self::one()
    }
    fn mul(&self, other: &Self) -> Self;
    fn inv(&self) -> Result<Self>;
    fn div(&self, other: &Self) -> Result<Self> {
        Ok(Scalar::mul(self, &other.inv()?))
    }
    fn from_integer(n: i64) -> Self;
    fn from_bigint(n: BigInt) -> Self;
    fn from_ratio(n: i64, d: i64) -> Self;
    /// Named indeterminate, if the field has one by this name.
    fn from_var(_name: &str) -> Option<Self> {
        None
    }
    /// Field tag used in model files: "rational" or "k1".
    fn field_name() -> &'static str;
    /// Canonical text rendering; unique per field element.
    fn render(&self) -> String;
    fn parse(s: &str) -> Result<Self> {
        parse::parse_scalar(s)
    }
}

// ----- rationals (genus 0) -----

impl Coeff for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn int_mul(&self, n: i64) -> Self {
        self * BigRational::from_integer(BigInt::from(n))
    }
}

impl ScalarMul<BigRational> for BigRational {
    fn scalar_mul(&self, f: &BigRational) -> Self {
        self * f
    }
}

impl Scalar for BigRational {
    fn one() -> Self {
        One::one()
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn inv(&self) -> Result<Self> {
        if Zero::is_zero(self) {
            return Err(crate::error::Error::DivisionByZero);
        }
        Ok(self.recip())
    }
    fn from_integer(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
    fn from_bigint(n: BigInt) -> Self {
        BigRational::from_integer(n)
    }
    fn from_ratio(n: i64, d: i64) -> Self {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }
    fn field_name() -> &'static str {
        "rational"
    }
    fn render(&self) -> String {
        if self.denom().is_one() {
            format!("{}", self.numer())
        } else if self.is_negative() {
            format!("-{}/{}", self.numer().abs(), self.denom())
        } else {
            format!("{}/{}", self.numer(), self.denom())
        }
    }
    fn parse(s: &str) -> Result<Self> {
        // fast path for plain literals, full grammar otherwise
        parse::parse_rational_literal(s).or_else(|_| parse::parse_scalar(s))
    }
}

// ----- K1 (genus 1) -----

impl Coeff for GenusOneScalar {
    fn zero() -> Self {
        GenusOneScalar::zero()
    }
    fn is_zero(&self) -> bool {
        GenusOneScalar::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        GenusOneScalar::add(self, other)
    }
    fn neg(&self) -> Self {
        GenusOneScalar::neg(self)
    }
    fn int_mul(&self, n: i64) -> Self {
        GenusOneScalar::mul(self, &GenusOneScalar::from_integer(n))
    }
}

impl ScalarMul<GenusOneScalar> for GenusOneScalar {
    fn scalar_mul(&self, f: &GenusOneScalar) -> Self {
        GenusOneScalar::mul(self, f)
    }
}

impl Scalar for GenusOneScalar {
    fn one() -> Self {
        GenusOneScalar::one()
    }
    fn mul(&self, other: &Self) -> Self {
        GenusOneScalar::mul(self, other)
    }
    fn inv(&self) -> Result<Self> {
        GenusOneScalar::inv(self)
    }
    fn from_integer(n: i64) -> Self {
        GenusOneScalar::from_integer(n)
    }
    fn from_bigint(n: BigInt) -> Self {
        GenusOneScalar::from_rational(BigRational::from_integer(n))
    }
    fn from_ratio(n: i64, d: i64) -> Self {
        GenusOneScalar::from_ratio(n, d)
    }
    fn from_var(name: &str) -> Option<Self> {
        match name {
            "g2" => Some(GenusOneScalar::g2()),
            "g3" => Some(GenusOneScalar::g3()),
            "c" => Some(GenusOneScalar::c()),
            "p" => Some(GenusOneScalar::p()),
            "q" => Some(GenusOneScalar::q()),
            _ => None,
        }
    }
    fn field_name() -> &'static str {
        "k1"
    }
    fn render(&self) -> String {
        GenusOneScalar::render(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_examples() {
        let a = <Rational as Scalar>::from_ratio(1, 2);
        let b = <Rational as Scalar>::from_ratio(1, 3);
        assert_eq!(Coeff::add(&a, &b), <Rational as Scalar>::from_ratio(5, 6));
        assert_eq!(<Rational as Scalar>::parse("5/6").unwrap(), Coeff::add(&a, &b));
        assert_eq!(<Rational as Scalar>::parse("-7").unwrap().render(), "-7");
    }

    #[test]
    fn k1_round_trip() {
        let s = "(3*p^2 - 1/4*g2 + 2*q)/(p - 1)";
        let v = GenusOneScalar::parse(s).unwrap();
        let back = GenusOneScalar::parse(&v.render()).unwrap();
        assert_eq!(v, back);
    }

    #[test]
    fn k1_inv_example() {
        // inv(q) = q / (4p³ − g2·p − g3), checked by multiplying back
        let q = GenusOneScalar::q();
        let inv = q.inv().unwrap();
        assert_eq!(Scalar::mul(&inv, &q), GenusOneScalar::one());
        let expected = GenusOneScalar::parse("q/(4*p^3 - g2*p - g3)").unwrap();
        assert_eq!(inv, expected);
    }
}
