//! Genus 0: the sphere with S± at 0 and ∞, local coordinates z and w = 1/z.
//!
//! Here A_n = z^n and f_{λ,n} = z^{n−λ}(dz)^λ exactly; at S− this reads
//! (−1)^λ w^{−n−λ}(dw)^λ. Elements are exact monomials, so their series
//! carry infinite precision and every window cap downstream comes from index
//! truncation alone.

use std::marker::PhantomData;

use crate::coeffs::Scalar;
use crate::error::Result;
use crate::series::{LaurentSeries, LocalForm, Point, PREC_INF};
use crate::surface::{KNBasisElement, KNIndex, KNModel};

pub struct Genus0Model<F: Scalar> {
    _field: PhantomData<F>,
}

impl<F: Scalar> Genus0Model<F> {
    pub fn new() -> Self {
        Genus0Model {
            _field: PhantomData,
        }
    }
}

impl<F: Scalar> Default for Genus0Model<F> {
    fn default() -> Self {
        Self::new()
    }
}

impl<F: Scalar> KNModel<F> for Genus0Model<F> {
    fn genus(&self) -> i64 {
        0
    }

    fn element(&self, lambda: i64, n: KNIndex, _prec: i64) -> Result<KNBasisElement<F>> {
        self.check_parity(n)?;
        let ni = n.twice / 2;
        let sign = if lambda.rem_euclid(2) == 0 {
            F::one()
        } else {
            F::one().neg()
        };
        let at_plus = LocalForm::new(
            LaurentSeries::monomial(ni - lambda, F::one(), PREC_INF),
            lambda,
            Point::Plus,
        );
        let at_minus = LocalForm::new(
            LaurentSeries::monomial(-ni - lambda, sign, PREC_INF),
            lambda,
            Point::Minus,
        );
        Ok(KNBasisElement {
            index: n,
            weight: lambda,
            at_plus,
            at_minus,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffs::Rational;
    use crate::surface::pairing_residue;

    fn model() -> Genus0Model<Rational> {
        Genus0Model::new()
    }

    fn r(n: i64) -> Rational {
        <Rational as Scalar>::from_integer(n)
    }

    #[test]
    fn a_is_z_power() {
        let m = model();
        let a3 = m.a(KNIndex::from_int(3), 8).unwrap();
        assert_eq!(a3.at_plus.series.coeff(3).unwrap(), r(1));
        assert_eq!(a3.at_plus.series.leading().unwrap().0, 3);
        assert_eq!(a3.at_minus.series.leading().unwrap().0, -3);
    }

    #[test]
    fn omega_is_dual_monomial() {
        // ω^2 = z^{−3} dz
        let m = model();
        let w = m.omega(KNIndex::from_int(2), 8).unwrap();
        assert_eq!(w.weight, 1);
        assert_eq!(w.at_plus.series.leading().unwrap(), (-3, &r(1)));
    }

    #[test]
    fn e_is_unit_vector_field() {
        let m = model();
        let e = m.e(8).unwrap();
        assert_eq!(e.weight, -1);
        assert_eq!(e.at_plus.series.leading().unwrap(), (0, &r(1)));
    }

    #[test]
    fn duality_on_window() {
        let m = model();
        for n in -6..=6 {
            for k in -6..=6 {
                let a = m.a(KNIndex::from_int(n), 4).unwrap();
                let w = m.omega(KNIndex::from_int(k), 4).unwrap();
                let res = pairing_residue(&a.at_plus, &w.at_plus).unwrap();
                assert_eq!(res, if n == k { r(1) } else { r(0) });
            }
        }
    }

    #[test]
    fn f_general_weight() {
        let m = model();
        // f(λ, n) = z^{n−λ}(dz)^λ for λ ∈ {−1, 0, 1, 2}
        for lambda in [-1i64, 0, 1, 2] {
            let f = m.element(lambda, KNIndex::from_int(2), 4).unwrap();
            assert_eq!(f.at_plus.series.leading().unwrap().0, 2 - lambda);
            assert_eq!(f.weight, lambda);
        }
    }
}
