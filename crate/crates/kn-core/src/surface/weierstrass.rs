//! Weierstrass ℘ and ζ as exact truncated series over K1.
//!
//! ℘(t) = t⁻² + Σ_{k≥2} c_k t^{2k−2} with c₂ = g2/20, c₃ = g3/28 and the
//! classical recurrence c_k = 3/((2k+1)(k−3))·Σ_{m=2}^{k−2} c_m c_{k−m}
//! (k ≥ 4), which follows from ℘″ = 6℘² − g2/2. Shifted expansions through
//! the point separation d use the derivative values ℘^{(j)}(d): polynomials
//! in p = ℘(d), q = ℘′(d) generated by the derivation p ↦ q,
//! q ↦ 6p² − g2/2, with q² rewritten through the defining cubic. ζ enters
//! through ζ′ = −℘ and ζ(d) = c.

use std::sync::RwLock;

use num::{BigInt, BigRational, One};

use crate::coeffs::poly::{Poly, VAR_G2, VAR_P, VAR_Q};
use crate::coeffs::GenusOneScalar as K1;
use crate::series::LaurentSeries;

pub struct WeierstrassTables {
    /// ℘^{(j)}(d) as polynomials in g2, g3, p, q.
    derivs: RwLock<Vec<Poly>>,
    /// c_k for k ≥ 2, as polynomials in g2, g3 (index 0 ↔ k = 2).
    pe_coeffs: RwLock<Vec<Poly>>,
}

impl WeierstrassTables {
    pub fn new() -> Self {
        WeierstrassTables {
            derivs: RwLock::new(vec![Poly::var(VAR_P), Poly::var(VAR_Q)]),
            pe_coeffs: RwLock::new(Vec::new()),
        }
    }

    /// ℘^{(j)}(d).
    pub fn pe_deriv_poly(&self, j: usize) -> Poly {
        {
            let d = self.derivs.read().unwrap();
            if j < d.len() {
                return d[j].clone();
            }
        }
        let mut d = self.derivs.write().unwrap();
        while d.len() <= j {
            let last = d.last().unwrap();
            let next = last
                .derivative(VAR_P)
                .mul(&Poly::var(VAR_Q))
                .add(&last.derivative(VAR_Q).mul(&pe_second_derivative()))
                .reduce_q();
            d.push(next);
        }
        d[j].clone()
    }

    fn pe_coeff(&self, k: usize) -> Poly {
        debug_assert!(k >= 2);
        {
            let c = self.pe_coeffs.read().unwrap();
            if k - 2 < c.len() {
                return c[k - 2].clone();
            }
        }
        let mut c = self.pe_coeffs.write().unwrap();
        while c.len() < k - 1 {
            let kk = c.len() + 2;
            let next = match kk {
                2 => Poly::var(VAR_G2).scale(&br(1, 20)),
                3 => Poly::var(crate::coeffs::poly::VAR_G3).scale(&br(1, 28)),
                _ => {
                    let mut acc = Poly::zero();
                    for m in 2..=(kk - 2) {
                        acc = acc.add(&c[m - 2].mul(&c[kk - m - 2]));
                    }
                    acc.scale(&br(3, ((2 * kk + 1) * (kk - 3)) as i64))
                }
            };
            c.push(next);
        }
        c[k - 2].clone()
    }

    /// ℘(t) on the window [−2, upper).
    pub fn pe_series(&self, upper: i64) -> LaurentSeries<K1> {
        let mut terms = vec![(-2, K1::one())];
        let mut k = 2usize;
        loop {
            let e = 2 * k as i64 - 2;
            if e >= upper {
                break;
            }
            terms.push((e, K1::from_poly(self.pe_coeff(k))));
            k += 1;
        }
        LaurentSeries::from_terms(terms.into_iter().filter(|(e, _)| *e < upper), -2, upper)
    }

    /// ℘^{(k)}(t) on [−2−k, upper).
    pub fn pe_deriv_series(&self, k: u32, upper: i64) -> LaurentSeries<K1> {
        let mut s = self.pe_series(upper + k as i64);
        for _ in 0..k {
            s = s.derivative();
        }
        s
    }

    /// ζ(t) = 1/t − Σ_{k≥2} c_k t^{2k−1}/(2k−1) on [−1, upper).
    pub fn zeta_series(&self, upper: i64) -> LaurentSeries<K1> {
        let mut terms = vec![(-1, K1::one())];
        let mut k = 2usize;
        loop {
            let e = 2 * k as i64 - 1;
            if e >= upper {
                break;
            }
            terms.push((
                e,
                K1::from_poly(self.pe_coeff(k).scale(&br(-1, (2 * k - 1) as i64))),
            ));
            k += 1;
        }
        LaurentSeries::from_terms(terms.into_iter().filter(|(e, _)| *e < upper), -1, upper)
    }

    /// ℘^{(k)}(t + d) = Σ_j ℘^{(k+j)}(d)·t^j/j! on [0, upper).
    pub fn pe_shift_series(&self, k: u32, upper: i64) -> LaurentSeries<K1> {
        let mut terms = Vec::new();
        let mut fact = BigInt::one();
        for j in 0..upper.max(0) {
            if j > 0 {
                fact *= j;
            }
            let coeff = self
                .pe_deriv_poly(k as usize + j as usize)
                .scale(&BigRational::new(BigInt::one(), fact.clone()));
            terms.push((j, K1::from_poly(coeff)));
        }
        LaurentSeries::from_terms(terms, 0, upper)
    }

    /// ζ(t + d) = c − Σ_{j≥1} ℘^{(j−1)}(d)·t^j/j! on [0, upper).
    pub fn zeta_shift_series(&self, upper: i64) -> LaurentSeries<K1> {
        let mut terms = Vec::new();
        if upper > 0 {
            terms.push((0, K1::c()));
        }
        let mut fact = BigInt::one();
        for j in 1..upper.max(0) {
            fact *= j;
            let coeff = self
                .pe_deriv_poly(j as usize - 1)
                .scale(&BigRational::new(BigInt::from(-1), fact.clone()));
            terms.push((j, K1::from_poly(coeff)));
        }
        LaurentSeries::from_terms(terms, 0, upper)
    }

    /// E(t) = ζ(t) − ζ(t + d) on [−1, upper); the same series serves both
    /// charts because the S− coordinate is w = −(z − z₋).
    pub fn e_function_series(&self, upper: i64) -> LaurentSeries<K1> {
        self.zeta_series(upper).sub(&self.zeta_shift_series(upper))
    }
}

impl Default for WeierstrassTables {
    fn default() -> Self {
        Self::new()
    }
}

/// ℘″ = 6p² − g2/2 as a polynomial.
fn pe_second_derivative() -> Poly {
    Poly::var(VAR_P)
        .pow(2)
        .scale(&br(6, 1))
        .sub(&Poly::var(VAR_G2).scale(&br(1, 2)))
}

fn br(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffs::Scalar;

    #[test]
    fn derivative_polynomials() {
        let w = WeierstrassTables::new();
        assert_eq!(w.pe_deriv_poly(2).to_string(), "6*p^2 - 1/2*g2");
        assert_eq!(w.pe_deriv_poly(3).to_string(), "12*p*q");
        assert_eq!(w.pe_deriv_poly(4).to_string(), "120*p^3 - 18*g2*p - 12*g3");
    }

    #[test]
    fn pe_satisfies_its_differential_equation() {
        let w = WeierstrassTables::new();
        let upper = 9;
        let pe = w.pe_series(upper);
        let dpe = w.pe_deriv_series(1, upper + 1);
        // (℘′)² − 4℘³ + g2·℘ + g3 = 0
        let lhs = dpe
            .mul(&dpe)
            .sub(&pe.mul(&pe).mul(&pe).int_mul(4))
            .add(&pe.scale(&K1::g2()))
            .add(&LaurentSeries::monomial(0, K1::g3(), upper));
        for k in lhs.val()..lhs.prec() {
            assert!(lhs.coeff(k).unwrap().is_zero(), "ODE fails at t^{}", k);
        }
    }

    #[test]
    fn zeta_prime_is_minus_pe() {
        let w = WeierstrassTables::new();
        let z = w.zeta_series(10);
        let diff = z.derivative().add(&w.pe_series(9));
        assert!(diff.iter().next().is_none());
    }

    #[test]
    fn shift_series_match_taylor_of_derivative() {
        let w = WeierstrassTables::new();
        // d/dt ℘(t+d) = ℘′(t+d)
        let s0 = w.pe_shift_series(0, 8);
        let s1 = w.pe_shift_series(1, 7);
        let diff = s0.derivative().sub(&s1);
        assert!(diff.iter().next().is_none());
    }

    #[test]
    fn e_function_has_unit_residue_and_no_constant() {
        let w = WeierstrassTables::new();
        let e = w.e_function_series(6);
        assert_eq!(e.coeff(-1).unwrap(), K1::one());
        // [t⁰]E = −c, [t¹]E = p, [t²]E = q/2
        assert_eq!(e.coeff(0).unwrap(), K1::c().neg());
        assert_eq!(e.coeff(1).unwrap(), K1::p());
        assert_eq!(
            e.coeff(2).unwrap(),
            K1::q().mul(&K1::from_ratio(1, 2))
        );
    }
}
