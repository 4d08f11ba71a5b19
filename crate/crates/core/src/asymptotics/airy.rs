use std::f64::consts::PI;

use crate::special::{airy_pair, integrate_adaptive};
use crate::{Error, Result};

/// Below this separation the ratio form loses digits and the integral is used.
const RATIO_MIN_GAP: f64 = 0.05;
/// Smallest |τ| accepted on the negative branch.
pub const MIN_NEGATIVE_TAU: f64 = 1e-6;
const TOL: f64 = 1e-13;

/// A(x, y) = (Ai(x)Ai′(y) − Ai′(x)Ai(y))/(x − y), and ∫₀^∞ Ai(x+a)Ai(y+a)da
/// near the diagonal.
pub fn airy_kernel(x: f64, y: f64) -> f64 {
    if (x - y).abs() >= RATIO_MIN_GAP {
        airy_kernel_ratio(x, y)
    } else {
        damped_integral(0.0, x, y).expect("Airy integral converges for any x, y")
    }
}

pub fn airy_kernel_ratio(x: f64, y: f64) -> f64 {
    let (ax, dx) = airy_pair(x);
    let (ay, dy) = airy_pair(y);
    (ax * dy - dx * ay) / (x - y)
}

/// ∫₀^∞ Ai(x+a)Ai(y+a)da by quadrature.
pub fn airy_kernel_integral(x: f64, y: f64) -> Result<f64> {
    damped_integral(0.0, x, y)
}

/// ∫₀^∞ e^{−τa}Ai(x+a)Ai(y+a)da for τ ≥ 0 and
/// −∫₀^∞ e^{−|τ|a}Ai(x−a)Ai(y−a)da for τ < 0.
pub fn extended_airy_kernel(tau: f64, x: f64, y: f64) -> Result<f64> {
    if !(tau.is_finite() && x.is_finite() && y.is_finite()) {
        return Err(Error::InvalidArgument(format!("non-finite argument ({tau}, {x}, {y})")));
    }
    if tau == 0.0 {
        Ok(airy_kernel(x, y))
    } else if tau > 0.0 {
        damped_integral(tau, x, y)
    } else {
        let sigma = -tau;
        if sigma < MIN_NEGATIVE_TAU {
            return Err(Error::OutOfRange(format!(
                "negative τ = {tau} closer to 0 than {MIN_NEGATIVE_TAU:e}"
            )));
        }
        // −∫_{−∞}^0 = ∫₀^∞ − ∫_{−∞}^{∞}, and the full line integral is Gaussian.
        let whole = (sigma.powi(3) / 12.0 - sigma * (x + y) / 2.0 - (x - y).powi(2) / (4.0 * sigma)).exp()
            / (4.0 * PI * sigma).sqrt();
        Ok(damped_integral(-sigma, x, y)? - whole)
    }
}

/// The negative branch by direct quadrature of the slowly decaying
/// oscillatory integrand; a cross-check for |τ| ≥ 0.5.
pub fn extended_airy_negative_direct(tau: f64, x: f64, y: f64) -> Result<f64> {
    if tau > -0.5 {
        return Err(Error::OutOfRange(format!("direct route needs τ ≤ −0.5, got {tau}")));
    }
    let sigma = -tau;
    // |Ai(z)| ≤ 1 for z ≤ 0, so the tail past `end` is below e^{−σ·end}/σ.
    let end = (36.0 + (1.0 / sigma).ln().max(0.0)) / sigma;
    let mut total = 0.0;
    let mut a = 0.0;
    while a < end {
        let b = (a + 4.0).min(end);
        total += integrate_adaptive(
            |s| (-sigma * s).exp() * airy_pair(x - s).0 * airy_pair(y - s).0,
            a,
            b,
            1e-12,
        )?
        .value;
        a = b;
    }
    Ok(-total)
}

/// ∫₀^∞ e^{−τa}Ai(x+a)Ai(y+a)da for any real τ (the integrand decays like
/// exp(−(4/3)a^{3/2})).
fn damped_integral(tau: f64, x: f64, y: f64) -> Result<f64> {
    let lo = x.min(y);
    // Move the cut until the log-envelope of the integrand is below −36.
    let mut end = (9.0 - lo).max(1.0);
    while 4.0 / 3.0 * (lo + end).powf(1.5) + tau * end < 36.0 {
        end += 1.0;
    }
    let mut total = 0.0;
    let mut a = 0.0;
    while a < end {
        let b = (a + 4.0).min(end);
        total += integrate_adaptive(
            |s| (-tau * s).exp() * airy_pair(x + s).0 * airy_pair(y + s).0,
            a,
            b,
            TOL,
        )?
        .value;
        a = b;
    }
    Ok(total)
}
