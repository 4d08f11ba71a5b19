//! Thresholds shared by the verification suites and the tests.

/// Per-query |z| gate for Monte Carlo comparisons.
pub const Z_GATE: f64 = 4.0;
/// |ratio − series| for the static kernel.
pub const STATIC_KERNEL: f64 = 1e-10;
/// |contour − series| for the extended kernel, and the equal-time reduction.
pub const DYNAMIC_KERNEL: f64 = 1e-8;
/// Defect of Σ_a J_{x+a} J_{y+a} = δ_{xy}.
pub const DELTA_IDENTITY: f64 = 1e-10;
/// Kernel determinant against the brute-force sum over diagrams.
pub const MEASURE_ORACLE: f64 = 1e-8;
/// Bulk gate at the top of the θ-ladder, equal time.
pub const BULK_STATIC: f64 = 0.02;
/// Bulk gate at the top of the θ-ladder, |τ| ≤ 1.
pub const BULK_DYNAMIC: f64 = 0.05;
/// Edge gate at the top of the θ-ladder.
pub const EDGE: f64 = 0.05;
/// Required significance of the conditional probe statistic.
pub const PROBE_SIGMA: f64 = 5.0;
/// Allowed |z| of the unconditional control.
pub const CONTROL_SIGMA: f64 = 3.0;
