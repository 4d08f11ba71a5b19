//! Sine and Airy limit kernels and the bulk / edge convergence harness.

mod airy;
mod sine;

pub use airy::{
    airy_kernel, airy_kernel_integral, airy_kernel_ratio, extended_airy_kernel,
    extended_airy_negative_direct, MIN_NEGATIVE_TAU,
};
pub use sine::{extended_sine_detailed, extended_sine_kernel, sine_kernel, ExtendedSineValue};
mod first_row;
mod scaling;

pub use first_row::{first_row_samples, CurveFamily, FirstRowSamples};
pub use scaling::{
    bulk_convergence_check, bulk_convergence_check_with, bulk_ladder, edge_convergence_check,
    edge_convergence_check_with, edge_ladder, BulkScalingSpec, Convergence, EdgeScalingSpec,
    ErrorRow, ErrorTable,
};

/// θ-ladder used by the convergence checks.
pub const THETA_LADDER: [f64; 3] = [25.0, 100.0, 400.0];
