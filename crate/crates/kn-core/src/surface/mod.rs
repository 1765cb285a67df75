//! Krichever-Novikov bases served as local expansions at the two marked
//! points S±.
//!
//! A weight-λ basis tensor f_{λ,n} is prescribed by its leading behavior:
//! at S+ the valuation is n − s_λ with s_λ = g/2 − λ(g−1) and leading
//! coefficient 1. The index set is Z′ = Z + g/2, stored as `twice_n` so that
//! half-integers stay exact. Models: closed-form genus 0, the symbolic
//! Weierstrass construction at genus 1, and ingestion of external tables for
//! anything else.

pub mod genus0;
pub mod genus1;
pub mod schema;
pub mod tabulated;
pub mod validate;
pub mod weierstrass;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::coeffs::Scalar;
use crate::error::{Error, Result};
use crate::series::{LocalForm, Point};

pub use genus0::Genus0Model;
pub use genus1::Genus1Model;
pub use schema::{export_model, SurfaceModelFile};
pub use tabulated::TabulatedModel;
pub use validate::{validate_model, ModelValidationReport};

/// Index n ∈ Z′ = Z + g/2, stored as 2n.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash, Serialize, Deserialize)]
pub struct KNIndex {
    pub twice: i64,
}

impl KNIndex {
    pub fn from_twice(twice: i64) -> Self {
        KNIndex { twice }
    }

    pub fn from_int(n: i64) -> Self {
        KNIndex { twice: 2 * n }
    }

    pub fn neg(&self) -> Self {
        KNIndex { twice: -self.twice }
    }

    /// n + k for integer k.
    pub fn plus(&self, k: i64) -> Self {
        KNIndex {
            twice: self.twice + 2 * k,
        }
    }

    pub fn parity_ok(&self, genus: i64) -> bool {
        (self.twice - genus).rem_euclid(2) == 0
    }

    pub fn parse(s: &str) -> Result<Self> {
        let t = s.trim();
        if let Some((a, b)) = t.split_once('/') {
            let num: i64 = a
                .trim()
                .parse()
                .map_err(|e| Error::Parse(format!("bad index {:?}: {}", s, e)))?;
            let den: i64 = b
                .trim()
                .parse()
                .map_err(|e| Error::Parse(format!("bad index {:?}: {}", s, e)))?;
            if den != 2 {
                return Err(Error::Parse(format!(
                    "index denominator must be 2, got {:?}",
                    s
                )));
            }
            Ok(KNIndex { twice: num })
        } else {
            let n: i64 = t
                .parse()
                .map_err(|e| Error::Parse(format!("bad index {:?}: {}", s, e)))?;
            Ok(KNIndex::from_int(n))
        }
    }
}

impl fmt::Display for KNIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.twice % 2 == 0 {
            write!(f, "{}", self.twice / 2)
        } else {
            write!(f, "{}/2", self.twice)
        }
    }
}

/// Inclusive index window, iterated in twice-index steps of 2 with the
/// parity of the genus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexWindow {
    pub lo_twice: i64,
    pub hi_twice: i64,
}

impl IndexWindow {
    pub fn new(lo_twice: i64, hi_twice: i64) -> Self {
        IndexWindow { lo_twice, hi_twice }
    }

    /// Align the window bounds to the genus parity (shrinking inward).
    pub fn aligned(&self, genus: i64) -> IndexWindow {
        let mut lo = self.lo_twice;
        let mut hi = self.hi_twice;
        if (lo - genus).rem_euclid(2) != 0 {
            lo += 1;
        }
        if (hi - genus).rem_euclid(2) != 0 {
            hi -= 1;
        }
        IndexWindow {
            lo_twice: lo,
            hi_twice: hi,
        }
    }

    pub fn indices(&self, genus: i64) -> Vec<KNIndex> {
        let a = self.aligned(genus);
        let mut v = Vec::new();
        let mut t = a.lo_twice;
        while t <= a.hi_twice {
            v.push(KNIndex::from_twice(t));
            t += 2;
        }
        v
    }

    pub fn contains(&self, n: KNIndex) -> bool {
        n.twice >= self.lo_twice && n.twice <= self.hi_twice
    }

    pub fn parse(s: &str) -> Result<Self> {
        let (a, b) = s
            .split_once("..")
            .ok_or_else(|| Error::Parse(format!("window must look like a..b, got {:?}", s)))?;
        let lo: i64 = a
            .trim()
            .parse()
            .map_err(|e| Error::Parse(format!("bad window {:?}: {}", s, e)))?;
        let hi: i64 = b
            .trim()
            .parse()
            .map_err(|e| Error::Parse(format!("bad window {:?}: {}", s, e)))?;
        Ok(IndexWindow::new(lo, hi))
    }
}

impl fmt::Display for IndexWindow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.lo_twice, self.hi_twice)
    }
}

/// One basis tensor, given by its expansions in both charts.
#[derive(Clone, Debug)]
pub struct KNBasisElement<F: Scalar> {
    pub index: KNIndex,
    pub weight: i64,
    pub at_plus: LocalForm<F>,
    pub at_minus: LocalForm<F>,
}

/// Valuation of f_{λ,n} at S+ demanded by the leading-behavior
/// prescriptions: n − s_λ with s_λ = g/2 − λ(g−1). In twice-index
/// bookkeeping this is (twice_n − g)/2 + λ(g−1), which covers the middle
/// ranges and the distinguished elements uniformly.
pub fn expected_val_plus(genus: i64, lambda: i64, n: KNIndex) -> i64 {
    (n.twice - genus) / 2 + lambda * (genus - 1)
}

/// Expected valuation at S− for weight-0 elements: −n − g/2, lowered by one
/// in the middle range −g/2 ≤ n ≤ g/2 − 1, and 0 for the constant A_{g/2}.
pub fn expected_val_minus_weight0(genus: i64, n: KNIndex) -> i64 {
    if n.twice == genus {
        return 0;
    }
    let base = (-n.twice - genus) / 2;
    if n.twice >= -genus && n.twice <= genus - 2 {
        base - 1
    } else {
        base
    }
}

/// A surface model serving the KN basis {f_{λ,n}} as local expansions.
///
/// `prec` counts trusted coefficients from the valuation: the served series
/// has window [v, v + prec). Models memoize construction; immutable after
/// creation and safe for concurrent readers.
pub trait KNModel<F: Scalar>: Send + Sync {
    fn genus(&self) -> i64;

    /// The basis tensor f_{λ,n}.
    fn element(&self, lambda: i64, n: KNIndex, prec: i64) -> Result<KNBasisElement<F>>;

    /// Weight-0 basis function A_n = f_{0,n}.
    fn a(&self, n: KNIndex, prec: i64) -> Result<KNBasisElement<F>> {
        self.element(0, n, prec)
    }

    /// Weight-1 basis form ω^n = f_{1,−n}.
    fn omega(&self, n: KNIndex, prec: i64) -> Result<KNBasisElement<F>> {
        self.element(1, n.neg(), prec)
    }

    /// The distinguished vector field e = f_{−1, 3g/2−1}.
    fn e(&self, prec: i64) -> Result<KNBasisElement<F>> {
        self.element(-1, KNIndex::from_twice(3 * self.genus() - 2), prec)
    }

    fn check_parity(&self, n: KNIndex) -> Result<()> {
        if !n.parity_ok(self.genus()) {
            return Err(Error::IndexParity {
                twice_n: n.twice,
                genus: self.genus(),
            });
        }
        Ok(())
    }

    /// Valuation of f_{λ,n} at S+ (used by the window-margin calculus).
    fn val_plus(&self, lambda: i64, n: KNIndex) -> i64 {
        expected_val_plus(self.genus(), lambda, n)
    }
}

/// Residue pairing Res_{S+}(f·g). The factors must live in complementary
/// weights (λ and 1−λ) for the result to be a 1-form.
pub fn pairing_residue<F: Scalar>(f: &LocalForm<F>, g: &LocalForm<F>) -> Result<F> {
    f.mul(g)?.residue()
}

/// Per-factor absolute window ends so the product of series with valuations
/// `vals` is trusted through exponent `target`. Factor i needs
/// N_i ≥ target + 1 − Σ_{j≠i} v_j.
pub fn product_margin(vals: &[i64], target: i64) -> Vec<i64> {
    let total: i64 = vals.iter().sum();
    vals.iter()
        .map(|v| target + 1 - (total - v))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_display_and_parse() {
        assert_eq!(KNIndex::from_twice(-3).to_string(), "-3/2");
        assert_eq!(KNIndex::from_int(4).to_string(), "4");
        assert_eq!(KNIndex::parse("-3/2").unwrap(), KNIndex::from_twice(-3));
        assert_eq!(KNIndex::parse("7").unwrap(), KNIndex::from_twice(14));
        assert!(KNIndex::from_twice(-3).parity_ok(1));
        assert!(!KNIndex::from_twice(-3).parity_ok(0));
    }

    #[test]
    fn window_alignment() {
        let w = IndexWindow::new(-9, 9);
        assert_eq!(w.indices(0).len(), 9); // even twice-indices -8..8
        assert_eq!(w.indices(1).len(), 10); // odd twice-indices -9..9
    }

    #[test]
    fn expected_valuations() {
        // genus 0: val_plus(f_{λ,n}) = n − λ
        assert_eq!(expected_val_plus(0, 2, KNIndex::from_int(3)), 3 - 2);
        // genus 1: s_λ = 1/2 for every λ
        assert_eq!(expected_val_plus(1, 0, KNIndex::from_twice(-1)), -1);
        assert_eq!(expected_val_plus(1, 1, KNIndex::from_twice(-1)), -1);
        assert_eq!(expected_val_plus(1, -1, KNIndex::from_twice(1)), 0);
        // middle-range S− exponent at genus 1: A_{−1/2} has a simple pole
        assert_eq!(expected_val_minus_weight0(1, KNIndex::from_twice(-1)), -1);
        assert_eq!(expected_val_minus_weight0(1, KNIndex::from_twice(3)), -2);
        assert_eq!(expected_val_minus_weight0(1, KNIndex::from_twice(1)), 0);
    }

    #[test]
    fn product_margin_covers_target() {
        let vals = [-3i64, 2, -1];
        let ends = product_margin(&vals, 0);
        // min over i of (v_sum − v_i + N_i) must exceed the target
        let total: i64 = vals.iter().sum();
        for (v, n) in vals.iter().zip(ends.iter()) {
            assert!(total - v + n > 0);
        }
    }
}
