//! Numerical laboratory for the quinary inequality |p1^c + ... + p5^c - N| < eps
//! with p1 = x^2 + y^2 + 1 (a Linnik prime).
//!
//! The crate splits into an exact layer and a floating layer:
//!
//! * [`exponent`] does all exponent bookkeeping in arbitrary-precision
//!   rationals (van der Corput A/B processes, the Type I / final balances
//!   that pin the admissible exponent threshold c0 = 5363/3900).
//! * [`arith`] provides segmented prime sieving, the arithmetic functions
//!   chi_4, r, phi, mu, Lambda, sum-of-two-squares decomposition and
//!   Linnik-prime certificates — all in integer arithmetic.
//! * [`kernel`], [`quad`], [`expsum`], [`decomp`], [`count`] form the
//!   floating layer: the smooth bump theta and its Fourier transform,
//!   oscillatory quadrature, the exponential sums S, A, I, E, K with their
//!   moment integrals, a Vaughan-identity Type I/II decomposition with exact
//!   reconstruction, and the solution counters / searchers.
//!
//! Floating-point entry points are generic over the scalar type through the
//! [`Real`] trait (f32 or f64); the crate-root aliases [`R64`]/[`C64`] are
//! what the CLI and the test suites use. Residual acceptance checks run in
//! double-double precision (see [`dd`]) regardless of the scalar chosen.

pub mod arith;
pub mod count;
pub mod dd;
pub mod decomp;
pub mod error;
pub mod expsum;
pub mod exponent;
pub mod kernel;
pub mod quad;
pub mod report;
pub mod util;

mod real;

pub use error::CoreError;
pub use real::Real;

/// Default floating scalar for desk-scale runs.
pub type R64 = f64;
/// Reduced-precision scalar; kept to exercise the generic surface.
pub type R32 = f32;
/// Complex value over the default scalar.
pub type C64 = num_complex::Complex<f64>;

/// Result alias used across the crate.
pub type Result<T> = std::result::Result<T, CoreError>;
