//! Finite-section laboratory for dual truncated Toeplitz operators.
//!
//! Functions on the unit circle are carried as Fourier coefficient windows
//! ([`fourier::FourierVector`]), inner functions are finite Blaschke products
//! ([`inner_rational::BlaschkeProduct`]), and every operator is assembled
//! column by column into a basis-labelled dense matrix
//! ([`operators::OperatorMatrix`]). The [`analysis`] module computes kernels,
//! the explicit kernel isomorphisms between the operators, corona-type
//! invertibility predicates and spectrum scans.
//!
//! With the default `parallel` feature, column assembly, grid scans and
//! spectrum sweeps run on the rayon pool; without it everything is sequential
//! and produces identical output.

pub mod analysis;
pub mod error;
pub mod exec;
pub mod fourier;
pub mod inner_rational;
pub mod linalg;
pub mod operators;
pub mod spaces;

pub use error::{Error, Result};
pub use num_complex::Complex64;

/// Shorthand for a complex number literal.
#[inline]
pub fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}
