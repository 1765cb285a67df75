//! Exact computer algebra for Krichever-Novikov bases on compact Riemann
//! surfaces: basis construction at genus 0 and 1 (higher genus via ingested
//! tables), residue-defined structure constants of the generalized Heisenberg
//! algebra, its Fock representation, KN vertex operators, and mechanical
//! verification of the vacuum / translation / locality axioms at finite
//! truncation.
//!
//! All arithmetic is exact: rationals at genus 0, the symbolic Weierstrass
//! constant field K1 at genus 1. Every series carries a trusted window and
//! every check either verifies coefficients inside it or fails with an
//! insufficient-precision error; nothing is ever silently truncated to zero.

pub mod coeffs;
pub mod error;
pub mod series;

pub use error::{Error, Result};
