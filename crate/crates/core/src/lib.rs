//! Exact-arithmetic engine for graded spaces with operators.
//!
//! The engine constructs the simple objects `S(λ)` of a category of
//! weight-graded vector spaces carrying raising and lowering operators
//! `E_{α,n}`, `F_{α,n}` indexed by simple roots and divided-power degrees,
//! where the commutation coefficients are quantum binomial coefficients
//! attached to a field `K` with a distinguished invertible element `q`.
//! Their characters coincide with characters of simple modules for
//! algebraic groups in characteristic `p` (case `q = 1`) and for quantum
//! groups at roots of unity.
//!
//! Everything is exact: Laurent polynomials over arbitrary-precision
//! integers, rational / prime-field / cyclotomic coefficients, and
//! deterministic Gaussian elimination. No floating point anywhere.
//!
//! Module map:
//! - [`qarith`] — quantum integers and binomials in ℤ[v,v⁻¹], field
//!   backends, quantum characteristic, and the binomial identity suite.
//! - [`roots`] — simply-laced root-system combinatorics.
//! - [`gspace`] — graded objects, delta spaces, the `G_{δμ}` assembly,
//!   axiom verifiers, characters, direct sums and decomposition.
//! - [`construct`] — the level-by-level extension algorithm building
//!   `S(λ)`, plus independent character oracles.
//! - [`forms`] — contravariant forms and their verifiers.
//! - [`theorems`] — Frobenius pull-back, Steinberg tensor product, and
//!   operator-relation verifiers.

pub mod cache;
pub mod construct;
pub mod error;
pub mod forms;
pub mod gspace;
pub mod qarith;
pub mod report;
pub mod roots;
pub mod theorems;

pub use error::{Error, Result};
