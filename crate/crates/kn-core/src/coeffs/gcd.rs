//! Multivariate GCD by primitive pseudo-remainder sequences.
//!
//! Used to keep `GenusOneScalar` fractions reduced and to produce the unique
//! canonical form required for rendering. Polynomials here are small (they
//! come from desk-scale window computations), so the classical primitive PRS
//! is fast enough; no modular or sparse-interpolation machinery.

use super::poly::{Mono, Poly, NVARS};

/// GCD, returned as a primitive integer polynomial with positive leading
/// coefficient (the unit-normalized representative).
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.primitive().0;
    }
    if b.is_zero() {
        return a.primitive().0;
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one();
    }
    let a = a.primitive().0;
    let b = b.primitive().0;

    // Main variable: lowest index occurring in either operand.
    let var = (0..NVARS)
        .find(|&v| a.degree_in(v) > 0 || b.degree_in(v) > 0)
        .expect("non-constant polynomial has a variable");

    if a.degree_in(var) == 0 {
        // gcd divides a, which is free of `var`, hence divides b's content.
        return gcd(&a, &content_wrt(&b, var));
    }
    if b.degree_in(var) == 0 {
        return gcd(&content_wrt(&a, var), &b);
    }

    let ca = content_wrt(&a, var);
    let cb = content_wrt(&b, var);
    let g_cont = gcd(&ca, &cb);
    let mut f = a.exact_div(&ca).expect("content divides");
    let mut g = b.exact_div(&cb).expect("content divides");
    if degree(&f, var) < degree(&g, var) {
        std::mem::swap(&mut f, &mut g);
    }
    loop {
        let r = pseudo_rem(&f, &g, var);
        if r.is_zero() {
            let gp = primitive_wrt(&g, var);
            return g_cont.mul(&gp).primitive().0;
        }
        if degree(&r, var) == 0 {
            // f, g are primitive in `var`; a common divisor dividing a
            // var-free remainder must itself be var-free, hence a unit.
            return g_cont;
        }
        f = g;
        g = primitive_wrt(&r, var);
    }
}

pub fn gcd_many<'a, I: IntoIterator<Item = &'a Poly>>(polys: I) -> Poly {
    let mut acc = Poly::zero();
    for p in polys {
        acc = gcd(&acc, p);
        if acc.is_one() {
            return acc;
        }
    }
    acc
}

fn degree(f: &Poly, var: usize) -> u16 {
    f.degree_in(var)
}

/// Coefficients of f viewed as a univariate polynomial in `var`.
fn univar_coeffs(f: &Poly, var: usize) -> Vec<Poly> {
    let d = f.degree_in(var) as usize;
    let mut out = vec![Poly::zero(); d + 1];
    for (m, c) in &f.terms {
        let e = m.0[var] as usize;
        let mut m2 = *m;
        m2.0[var] = 0;
        out[e] = out[e].add(&Poly::monomial(m2, c.clone()));
    }
    out
}

fn content_wrt(f: &Poly, var: usize) -> Poly {
    gcd_many(univar_coeffs(f, var).iter().filter(|p| !p.is_zero()))
}

fn primitive_wrt(f: &Poly, var: usize) -> Poly {
    let c = content_wrt(f, var);
    f.exact_div(&c).expect("content divides")
}

/// Pseudo-remainder of f by g in `var`: lc(g)^(deg f − deg g + 1)·f mod g.
fn pseudo_rem(f: &Poly, g: &Poly, var: usize) -> Poly {
    let dg = degree(g, var);
    let gc = univar_coeffs(g, var);
    let glc = gc.last().unwrap().clone();
    let mut r = f.clone();
    let mut dr = degree(&r, var);
    let mut steps = (degree(f, var) as i64 - dg as i64 + 1).max(0);
    while !r.is_zero() && dr >= dg {
        let rc = univar_coeffs(&r, var);
        let rlc = rc.last().unwrap().clone();
        let shift = Poly::monomial(mono_pow(var, dr - dg), num::BigRational::from_integer(1.into()));
        // r := glc·r − rlc·x^(dr−dg)·g
        r = glc.mul(&r).sub(&rlc.mul(&shift).mul(g));
        steps -= 1;
        let ndr = degree(&r, var);
        debug_assert!(r.is_zero() || ndr < dr);
        dr = ndr;
    }
    // Pad with remaining powers of the leading coefficient so the PRS
    // divisibility invariants hold exactly.
    while steps > 0 {
        r = glc.mul(&r);
        steps -= 1;
    }
    r
}

fn mono_pow(var: usize, e: u16) -> Mono {
    let mut m = [0u16; NVARS];
    m[var] = e;
    Mono(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffs::poly::{VAR_C, VAR_G2, VAR_P};

    #[test]
    fn univariate_gcd() {
        let p = Poly::var(VAR_P);
        let a = p.pow(2).sub(&Poly::one());
        let b = p.pow(2).sub(&p.scale(&num::BigRational::from_integer(2.into()))).add(&Poly::one()); // (p-1)^2
        let g = gcd(&a, &b);
        assert_eq!(g, p.sub(&Poly::one()));
    }

    #[test]
    fn multivariate_gcd() {
        let p = Poly::var(VAR_P);
        let c = Poly::var(VAR_C);
        let g2 = Poly::var(VAR_G2);
        let common = p.mul(&c).add(&g2); // pc + g2
        let a = common.mul(&p.add(&Poly::one()));
        let b = common.mul(&c.sub(&g2));
        let g = gcd(&a, &b);
        assert_eq!(g, common);
    }

    #[test]
    fn coprime_gcd_is_one() {
        let p = Poly::var(VAR_P);
        let c = Poly::var(VAR_C);
        assert_eq!(gcd(&p, &c), Poly::one());
        assert_eq!(gcd(&p.add(&Poly::one()), &p.sub(&Poly::one())), Poly::one());
    }
}
