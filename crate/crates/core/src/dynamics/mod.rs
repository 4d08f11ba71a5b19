//! The stationary process Λ_θ and the curve-driven processes Λ_C.
//!
//! Along an admissible curve the size |Λ| is a birth–death chain with rates
//! R↓(n) = −n·v̇/v and R↑(n) = u̇·v; each jump moves one box, chosen by the
//! down/up transition probabilities of the Young graph.

mod curve;
mod kolmogorov;
mod simulate;
mod trajectory;

use serde::Serialize;

use crate::Result;

pub use curve::{AdmissibleCurve, ExplicitPiece, FnPiece, Parametrization, Piece, DEFAULT_GRID};
pub use kolmogorov::{transition_matrix_small, TransitionMatrix, MAX_CAP};
pub use simulate::{sample_m_theta, simulate, simulate_batch, InitialCondition};
pub use trajectory::{Trajectory, TrajectoryHeader};

/// Down and up jump intensities of the size process.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RatePair {
    pub down_rate: f64,
    pub up_rate: f64,
}

impl RatePair {
    pub fn total(&self) -> f64 {
        self.down_rate + self.up_rate
    }
}

/// (−n·v̇/v, u̇·v) at time t.
pub fn jump_rates(n: usize, curve: &AdmissibleCurve, t: f64) -> Result<RatePair> {
    let (_, v, du, dv) = curve.state(t)?;
    Ok(RatePair {
        down_rate: if n == 0 { 0.0 } else { -(n as f64) * dv / v },
        up_rate: du * v,
    })
}

/// θ(t) = u(t)v(t).
pub fn theta_at(curve: &AdmissibleCurve, t: f64) -> Result<f64> {
    curve.theta_at(t)
}

/// The curve reparametrized by interior time.
pub fn interior_time(curve: &AdmissibleCurve) -> Result<AdmissibleCurve> {
    curve.interior_time()
}

/// The transposed curve û(t) = v(−t), v̂(t) = u(−t).
pub fn reverse_curve(curve: &AdmissibleCurve) -> AdmissibleCurve {
    curve.reverse()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rate_examples() {
        let h = AdmissibleCurve::hyperbola(3.0).unwrap();
        let r = jump_rates(5, &h, 0.4).unwrap();
        assert!((r.down_rate - 5.0).abs() < 1e-12 && (r.up_rate - 3.0).abs() < 1e-12);
        assert_eq!(jump_rates(0, &h, 0.0).unwrap().down_rate, 0.0);
        let hl = AdmissibleCurve::horizontal(1.5, 0.5, 4.0).unwrap();
        let t = 0.1;
        let r = jump_rates(7, &hl, t).unwrap();
        let (u, v, du, _) = hl.state(t).unwrap();
        assert_eq!(r.down_rate, 0.0);
        assert!((r.up_rate - du * 1.5).abs() < 1e-12 && v == 1.5 && du == 2.0 * u);
        assert!(jump_rates(1, &hl, 10.0).is_err());
    }
}
