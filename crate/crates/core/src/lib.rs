//! Numerical verification of Wilton-type product formulas for Dirichlet
//! series satisfying Hecke's functional equation.
//!
//! The crate is layered bottom-up:
//!
//! * [`numerics`]: gamma, Bessel J, Bernoulli numbers, oscillatory quadrature,
//!   compensated summation and sequence acceleration.
//! * [`arithmetic`]: exact coefficient families (τ, r_Q, v_K, characters) and
//!   divisor convolutions.
//! * [`lfun_ref`]: reference L-function evaluators, independent of the identity
//!   machinery so that identity checks are not circular.
//! * [`hecke`]: Hecke signatures, the instance registry, functional-equation and
//!   modular-relation checks.
//! * [`wilton`]: Bessel moments under several interpretations, the identity
//!   engine, the classical Wilton evaluator and the adjudication comparator.
//! * [`report`]: report envelopes, JSON/CSV rendering and the self-test suite.

// constants are pasted from 30-40 digit oracle output
#![allow(clippy::excessive_precision)]
// `!(x <= tol)` is deliberate: NaN must fail the comparison
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod arithmetic;
pub mod error;
pub mod hecke;
pub mod lfun_ref;
pub mod numerics;
pub mod report;
pub mod wilton;

pub use error::{Error, Result};
pub use num_complex::Complex64 as C64;
