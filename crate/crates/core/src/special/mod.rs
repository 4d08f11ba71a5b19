//! Special functions and quadrature used by the kernels.

pub mod airy;
pub mod bessel;
mod dd;
pub mod quadrature;

pub use airy::{airy, airy_pair, airy_prime};
pub use bessel::{bessel_j, bessel_j_series, bessel_ln_envelope, BesselTable};
pub use quadrature::{integrate_adaptive, GaussLegendre, Integral};
