//! Markov dynamics on Young diagrams driven by the poissonized Plancherel
//! measure.
//!
//! The crate covers four layers:
//!
//! * [`partitions`]: exact combinatorics of Young diagrams (dimensions,
//!   up/down transition probabilities, Plancherel weights, the particle
//!   picture on the half-integer lattice).
//! * [`dynamics`] and [`rsk`]: two constructions of the same family of
//!   processes, one as a birth–death driven jump chain along an admissible
//!   curve, one as Robinson–Schensted shapes of a planar Poisson process
//!   inside a moving rectangle.
//! * [`kernels`] and [`asymptotics`]: the discrete Bessel kernel, its
//!   space-time extension, and the sine / Airy limit kernels.
//! * [`correlations`] and [`verify`]: Monte Carlo estimation of correlation
//!   functions and the statistical suites comparing them with the kernels.

pub mod asymptotics;
pub mod correlations;
pub mod dynamics;
mod error;
mod halfint;
pub mod io;
pub mod kernels;
pub mod partitions;
pub mod rng;
pub mod rsk;
pub mod special;
pub mod stats;
pub mod tolerances;
pub mod verify;

pub use error::{Error, Result};
pub use halfint::{parse_range, HalfInt};

pub use dynamics::{AdmissibleCurve, RatePair, Trajectory};
pub use kernels::{KernelMethod, KernelValue, SpaceTimePoint};
pub use partitions::{DimensionValue, PointConfiguration, YoungDiagram};
pub use rsk::{Permutation, PlanarConfiguration, PlanarPoint};

/// Version string embedded in every artifact the tools write.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
