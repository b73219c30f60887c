//! Scalar special functions, quadrature and deterministic summation.

pub mod accel;
pub mod bernoulli;
pub mod bessel;
pub mod gamma;
pub mod quadrature;
pub mod summation;

pub use bernoulli::{bernoulli, bernoulli_f64};
pub use bessel::{bessel_j, bessel_j_scaled};
pub use gamma::{gamma, gamma_real, ln_gamma, rgamma};
pub use quadrature::{osc_quadrature, QuadratureResult};
pub use summation::{compensated_sum, pow_neg, DoubleDouble, NeumaierSum};
