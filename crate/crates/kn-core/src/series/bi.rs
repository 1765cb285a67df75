//! Truncated series in two local coordinates, with a rectangular trusted
//! window. Coefficients are generic: scalars for the delta-kernel identities,
//! mode operators for the locality checks.

use std::collections::BTreeMap;

use crate::coeffs::{Coeff, Scalar, ScalarMul};
use crate::error::{Error, Result};
use crate::series::{wadd, LaurentSeries, PREC_INF};

/// Rectangular trusted window [xv, xp) × [yv, yp).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct BiWindow {
    pub xv: i64,
    pub xp: i64,
    pub yv: i64,
    pub yp: i64,
}

impl BiWindow {
    pub fn full() -> Self {
        BiWindow {
            xv: -PREC_INF,
            xp: PREC_INF,
            yv: -PREC_INF,
            yp: PREC_INF,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.xv >= self.xp || self.yv >= self.yp
    }

    pub fn contains(&self, i: i64, j: i64) -> bool {
        i >= self.xv && i < self.xp && j >= self.yv && j < self.yp
    }

    pub fn intersect(&self, o: &BiWindow) -> BiWindow {
        BiWindow {
            xv: self.xv.max(o.xv),
            xp: self.xp.min(o.xp),
            yv: self.yv.max(o.yv),
            yp: self.yp.min(o.yp),
        }
    }

    fn add_rule(&self, o: &BiWindow) -> BiWindow {
        BiWindow {
            xv: self.xv.min(o.xv),
            xp: self.xp.min(o.xp),
            yv: self.yv.min(o.yv),
            yp: self.yp.min(o.yp),
        }
    }

    fn mul_rule(&self, o: &BiWindow) -> BiWindow {
        BiWindow {
            xv: wadd(self.xv, o.xv),
            xp: wadd(self.xv, o.xp).min(wadd(o.xv, self.xp)),
            yv: wadd(self.yv, o.yv),
            yp: wadd(self.yv, o.yp).min(wadd(o.yv, self.yp)),
        }
    }

    pub fn describe(&self) -> String {
        format!(
            "x in [{}, {}), y in [{}, {})",
            self.xv, self.xp, self.yv, self.yp
        )
    }
}

#[derive(Clone, PartialEq, Debug)]
pub struct BiSeries<C: Coeff> {
    terms: BTreeMap<(i64, i64), C>,
    win: BiWindow,
}

impl<C: Coeff> BiSeries<C> {
    pub fn zero(win: BiWindow) -> Self {
        BiSeries {
            terms: BTreeMap::new(),
            win,
        }
    }

    pub fn window(&self) -> BiWindow {
        self.win
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(i64, i64), &C)> {
        self.terms.iter()
    }

    pub fn insert_add(&mut self, i: i64, j: i64, c: C) {
        if c.is_zero() || !self.win.contains(i, j) {
            return;
        }
        match self.terms.entry((i, j)) {
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

    pub fn coeff(&self, i: i64, j: i64) -> Result<C> {
        if i >= self.win.xp || j >= self.win.yp {
            return Err(Error::insufficient(
                i.max(j),
                self.win.xp.min(self.win.yp) - 1,
            ));
        }
        if i < self.win.xv || j < self.win.yv {
            return Ok(C::zero());
        }
        Ok(self.terms.get(&(i, j)).cloned().unwrap_or_else(C::zero))
    }

    pub fn add(&self, other: &Self) -> Self {
        let win = self.win.add_rule(&other.win);
        let mut s = BiSeries::zero(win);
        for (&(i, j), c) in self.terms.iter().chain(other.terms.iter()) {
            s.insert_add(i, j, c.clone());
        }
        s
    }

    pub fn neg(&self) -> Self {
        BiSeries {
            terms: self
                .terms
                .iter()
                .map(|(&k, c)| (k, c.neg()))
                .collect(),
            win: self.win,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn int_mul(&self, n: i64) -> Self {
        let mut s = BiSeries::zero(self.win);
        for (&(i, j), c) in &self.terms {
            s.insert_add(i, j, c.int_mul(n));
        }
        s
    }

    pub fn scale<F>(&self, f: &F) -> Self
    where
        C: ScalarMul<F>,
    {
        let mut s = BiSeries::zero(self.win);
        for (&(i, j), c) in &self.terms {
            s.insert_add(i, j, c.scalar_mul(f));
        }
        s
    }

    /// ∂/∂x; the x-window loses its top exponent.
    pub fn deriv_x(&self) -> Self {
        let win = BiWindow {
            xv: wadd(self.win.xv, -1),
            xp: wadd(self.win.xp, -1),
            ..self.win
        };
        let mut s = BiSeries::zero(win);
        for (&(i, j), c) in &self.terms {
            if i != 0 {
                s.insert_add(i - 1, j, c.int_mul(i));
            }
        }
        s
    }

    pub fn deriv_y(&self) -> Self {
        let win = BiWindow {
            yv: wadd(self.win.yv, -1),
            yp: wadd(self.win.yp, -1),
            ..self.win
        };
        let mut s = BiSeries::zero(win);
        for (&(i, j), c) in &self.terms {
            if j != 0 {
                s.insert_add(i, j - 1, c.int_mul(j));
            }
        }
        s
    }

    /// Restrict the trusted window (intersection) and drop outside terms.
    pub fn restricted(&self, win: &BiWindow) -> Self {
        let w = self.win.intersect(win);
        let mut s = BiSeries::zero(w);
        for (&(i, j), c) in &self.terms {
            if w.contains(i, j) {
                s.terms.insert((i, j), c.clone());
            }
        }
        s
    }

    /// Product with a scalar biseries: the per-variable convolution window
    /// rule applies independently in x and y.
    pub fn mul_scalar_series<F: Scalar>(&self, other: &BiSeries<F>) -> Self
    where
        C: ScalarMul<F>,
    {
        let win = self.win.mul_rule(&other.win);
        let mut s = BiSeries::zero(win);
        for (&(ia, ja), ca) in &self.terms {
            for (&(ib, jb), cb) in &other.terms {
                s.insert_add(ia + ib, ja + jb, ca.scalar_mul(cb));
            }
        }
        s
    }

    pub fn map<D: Coeff>(&self, f: impl Fn(&C) -> D) -> BiSeries<D> {
        let mut s = BiSeries::zero(self.win);
        for (&(i, j), c) in &self.terms {
            s.insert_add(i, j, f(c));
        }
        s
    }

    /// First stored nonzero coefficient inside the trusted window, if any.
    pub fn first_nonzero(&self) -> Option<((i64, i64), &C)> {
        self.terms.iter().map(|(&k, c)| (k, c)).next()
    }
}

impl<F: Scalar> BiSeries<F> {
    pub fn mul(&self, other: &Self) -> Self {
        let win = self.win.mul_rule(&other.win);
        let mut s = BiSeries::zero(win);
        for (&(ia, ja), ca) in &self.terms {
            for (&(ib, jb), cb) in &other.terms {
                s.insert_add(ia + ib, ja + jb, Scalar::mul(ca, cb));
            }
        }
        s
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = BiSeries::lift_x(&LaurentSeries::monomial(0, F::one(), PREC_INF));
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Outer product a(x)·b(y).
    pub fn outer(a: &LaurentSeries<F>, b: &LaurentSeries<F>) -> Self {
        let win = BiWindow {
            xv: a.val(),
            xp: a.prec(),
            yv: b.val(),
            yp: b.prec(),
        };
        let mut s = BiSeries::zero(win);
        for (&i, ca) in a.iter() {
            for (&j, cb) in b.iter() {
                s.insert_add(i, j, Scalar::mul(ca, cb));
            }
        }
        s
    }

    /// Embed a univariate series as a biseries constant in y.
    pub fn lift_x(a: &LaurentSeries<F>) -> Self {
        let win = BiWindow {
            xv: a.val(),
            xp: a.prec(),
            yv: 0,
            yp: PREC_INF,
        };
        let mut s = BiSeries::zero(win);
        for (&i, c) in a.iter() {
            s.insert_add(i, 0, c.clone());
        }
        s
    }

    pub fn lift_y(a: &LaurentSeries<F>) -> Self {
        let win = BiWindow {
            xv: 0,
            xp: PREC_INF,
            yv: a.val(),
            yp: a.prec(),
        };
        let mut s = BiSeries::zero(win);
        for (&j, c) in a.iter() {
            s.insert_add(0, j, c.clone());
        }
        s
    }
}

/// Lie derivative in the x variable of a biseries of x-weight `weight_x`,
/// along the vector field with local function `e` (a series in x):
/// e·∂_x + weight_x·(∂_x e)·(·).
pub fn lie_x<F: Scalar, C: ScalarMul<F>>(
    b: &BiSeries<C>,
    weight_x: i64,
    e: &LaurentSeries<F>,
) -> BiSeries<C> {
    let t1 = b.deriv_x().mul_scalar_series(&BiSeries::lift_x(e));
    let t2 = b
        .mul_scalar_series(&BiSeries::lift_x(&e.derivative()))
        .int_mul(weight_x);
    t1.add(&t2)
}

pub fn lie_y<F: Scalar, C: ScalarMul<F>>(
    b: &BiSeries<C>,
    weight_y: i64,
    e: &LaurentSeries<F>,
) -> BiSeries<C> {
    let t1 = b.deriv_y().mul_scalar_series(&BiSeries::lift_y(e));
    let t2 = b
        .mul_scalar_series(&BiSeries::lift_y(&e.derivative()))
        .int_mul(weight_y);
    t1.add(&t2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffs::Rational;

    fn r(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    #[test]
    fn outer_and_mul_windows() {
        let a = LaurentSeries::from_terms(vec![(-1, r(1)), (0, r(2))], -1, 4);
        let b = LaurentSeries::from_terms(vec![(0, r(1)), (2, r(3))], 0, 5);
        let ab = BiSeries::outer(&a, &b);
        assert_eq!(ab.coeff(-1, 2).unwrap(), r(3));
        assert_eq!(ab.coeff(0, 0).unwrap(), r(2));
        let sq = ab.mul(&ab);
        // x-window: val −2, prec min(−1+4, −1+4) = 3
        assert_eq!(sq.window().xv, -2);
        assert_eq!(sq.window().xp, 3);
    }

    #[test]
    fn brute_force_convolution_matches() {
        let a = BiSeries::outer(
            &LaurentSeries::from_terms(vec![(-2, r(1)), (1, r(-1))], -2, 3),
            &LaurentSeries::from_terms(vec![(0, r(2)), (1, r(5))], 0, 4),
        );
        let b = BiSeries::outer(
            &LaurentSeries::from_terms(vec![(0, r(3))], 0, 6),
            &LaurentSeries::from_terms(vec![(-1, r(1)), (0, r(7))], -1, 2),
        );
        let p = a.mul(&b);
        let w = p.window();
        for i in w.xv..w.xp {
            for j in w.yv..w.yp {
                let mut acc = r(0);
                for (&(ia, ja), ca) in a.iter() {
                    for (&(ib, jb), cb) in b.iter() {
                        if ia + ib == i && ja + jb == j {
                            acc += ca * cb;
                        }
                    }
                }
                assert_eq!(p.coeff(i, j).unwrap(), acc);
            }
        }
    }
}
