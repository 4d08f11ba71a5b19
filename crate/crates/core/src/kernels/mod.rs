//! Exact finite-θ correlation kernels.
//!
//! The equal-time kernel of M_θ is the discrete Bessel kernel
//! K(x, y) = Σ_{a∈Z′₊} J_{x+a}(2√θ) J_{y+a}(2√θ); the space-time kernel of a
//! curve-driven process depends on the curve only through θ(s), θ(t) and
//! s − t in interior time.

mod contour;
mod det;
mod discrete;
mod export;
mod extended;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::{Error, HalfInt, Result};

pub use contour::{extended_kernel_contour, ContourDiagnostics, ContourSpec};
pub use det::{rho_det, rho_det_with, ExtendedKernel};
pub use discrete::{discrete_bessel_ratio, discrete_bessel_series, DiscreteBesselKernel};
pub use export::{write_kernel_table, KernelRow};
pub use extended::{extended_kernel_series, BesselPair};

/// A point (t, x) of R × Z′.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpaceTimePoint {
    pub t: f64,
    pub x: HalfInt,
}

impl SpaceTimePoint {
    pub fn new(t: f64, x: HalfInt) -> Self {
        SpaceTimePoint { t, x }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum KernelMethod {
    Series,
    Contour,
    Ratio,
}

impl KernelMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            KernelMethod::Series => "series",
            KernelMethod::Contour => "contour",
            KernelMethod::Ratio => "ratio",
        }
    }
}

impl fmt::Display for KernelMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for KernelMethod {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "series" => Ok(KernelMethod::Series),
            "contour" => Ok(KernelMethod::Contour),
            "ratio" => Ok(KernelMethod::Ratio),
            _ => Err(Error::Parse(format!("unknown kernel method {s:?}"))),
        }
    }
}

/// A kernel value with the evaluating method and an error bound.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct KernelValue {
    pub value: f64,
    pub method: KernelMethod,
    pub error_estimate: f64,
}

pub(crate) fn check_theta(theta: f64) -> Result<()> {
    if theta > 0.0 && theta.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("θ must be positive, got {theta}")))
    }
}
