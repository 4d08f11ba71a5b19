use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::{Error, HalfInt, Result};

use super::{check_theta, KernelMethod, KernelValue};

/// Two origin-centred circles |ω₁| = radius1, |ω₂| = radius2 and the node
/// count per circle.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ContourSpec {
    pub radius1: f64,
    pub radius2: f64,
    pub nodes: usize,
}

const START_NODES: usize = 32;
const MAX_NODES: usize = 2048;
const AGREEMENT: f64 = 1e-11;
const MAX_IMAGINARY: f64 = 1e-10;

impl ContourSpec {
    /// Equal radii ρ with ρ² = 2e^{t−s} (s ≥ t) or e^{t−s}/2 (s < t).
    pub fn default_for(s: f64, t: f64) -> Self {
        let rho2 = if s >= t {
            2.0 * (t - s).exp()
        } else {
            0.5 * (t - s).exp()
        };
        ContourSpec {
            radius1: rho2.sqrt(),
            radius2: rho2.sqrt(),
            nodes: START_NODES,
        }
    }

    /// {ω₁} must enclose {e^{t−s}/ω₂} when s ≥ t and lie inside it when s < t.
    pub fn check(&self, s: f64, t: f64) -> Result<()> {
        if !(self.radius1 > 0.0 && self.radius2 > 0.0 && self.nodes > 0) {
            return Err(Error::InvalidArgument(format!("bad contour {self:?}")));
        }
        let product = self.radius1 * self.radius2;
        let bound = (t - s).exp();
        let ok = if s >= t { product > bound } else { product < bound };
        if ok {
            Ok(())
        } else {
            Err(Error::Containment(format!(
                "r₁r₂ = {product} vs e^(t−s) = {bound} with s − t = {}",
                s - t
            )))
        }
    }
}

/// What the contour quadrature did.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ContourDiagnostics {
    pub radius1: f64,
    pub radius2: f64,
    pub nodes: usize,
    pub imaginary_residue: f64,
    pub doubling_change: f64,
}

/// K_C(s, x; t, y) as the double contour integral
/// e^{(s−t)/2}/(2πi)² ∮∮ e^{√θ_s(ω₁−1/ω₁) + √θ_t(ω₂−1/ω₂)} / (e^{s−t}ω₁ω₂ − 1)
/// · ω₁^{−x−½} ω₂^{−y−½} dω₁ dω₂.
///
/// Trapezoid rule on both circles, starting at `spec.nodes` and doubling until
/// consecutive values agree to 1e-11.
pub fn extended_kernel_contour(
    theta_s: f64,
    theta_t: f64,
    s: f64,
    t: f64,
    x: HalfInt,
    y: HalfInt,
    spec: ContourSpec,
) -> Result<(KernelValue, ContourDiagnostics)> {
    check_theta(theta_s)?;
    check_theta(theta_t)?;
    spec.check(s, t)?;
    let mut n = spec.nodes;
    let mut prev = trapezoid(theta_s, theta_t, s, t, x, y, &spec, n);
    loop {
        if 2 * n > MAX_NODES {
            return Err(Error::Quadrature(format!(
                "contour rule not converged at {n} nodes per circle"
            )));
        }
        let next = trapezoid(theta_s, theta_t, s, t, x, y, &spec, 2 * n);
        n *= 2;
        let change = (next - prev).norm();
        if change < AGREEMENT {
            if next.im.abs() > MAX_IMAGINARY {
                return Err(Error::Quadrature(format!(
                    "imaginary residue {:e} exceeds {MAX_IMAGINARY:e}",
                    next.im
                )));
            }
            let diag = ContourDiagnostics {
                radius1: spec.radius1,
                radius2: spec.radius2,
                nodes: n,
                imaginary_residue: next.im.abs(),
                doubling_change: change,
            };
            let value = KernelValue {
                value: next.re,
                method: KernelMethod::Contour,
                error_estimate: change,
            };
            return Ok((value, diag));
        }
        prev = next;
    }
}

/// Nodes ω_k and weights g(ω_k)·ω_k for one circle, where
/// (1/2πi)∮ g dω ≈ (1/N) Σ g(ω_k) ω_k.
fn circle(radius: f64, sqrt_theta: f64, exponent: i64, n: usize) -> Vec<(Complex64, Complex64)> {
    (0..n)
        .map(|k| {
            let w = Complex64::from_polar(radius, 2.0 * PI * k as f64 / n as f64);
            let g = (sqrt_theta * (w - w.inv())).exp() * w.powi(exponent as i32 + 1);
            (w, g)
        })
        .collect()
}

#[allow(clippy::too_many_arguments)]
fn trapezoid(
    theta_s: f64,
    theta_t: f64,
    s: f64,
    t: f64,
    x: HalfInt,
    y: HalfInt,
    spec: &ContourSpec,
    n: usize,
) -> Complex64 {
    // ω^{−x−½} has integer exponent −(x + ½).
    let c1 = circle(spec.radius1, theta_s.sqrt(), -x.upper(), n);
    let c2 = circle(spec.radius2, theta_t.sqrt(), -y.upper(), n);
    let e = (s - t).exp();
    let mut sum = Complex64::new(0.0, 0.0);
    for &(w1, g1) in &c1 {
        let ew1 = e * w1;
        let mut inner = Complex64::new(0.0, 0.0);
        for &(w2, g2) in &c2 {
            inner += g2 / (ew1 * w2 - 1.0);
        }
        sum += g1 * inner;
    }
    sum * (0.5 * (s - t)).exp() / (n * n) as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernels::extended_kernel_series;

    fn h(k: i64) -> HalfInt {
        HalfInt::new(k)
    }

    #[test]
    fn matches_series_off_equal_time() {
        for ds in [-2.0, -0.5, 0.5, 2.0] {
            for (x, y) in [(0, 0), (-3, 2), (2, -1)] {
                let spec = ContourSpec::default_for(ds, 0.0);
                let (c, d) = extended_kernel_contour(1.0, 1.0, ds, 0.0, h(x), h(y), spec).unwrap();
                let s = extended_kernel_series(1.0, 1.0, ds, 0.0, h(x), h(y)).unwrap();
                assert!((c.value - s.value).abs() < 1e-8, "{ds} {x} {y}");
                assert!(d.imaginary_residue < 1e-10);
            }
        }
    }

    #[test]
    fn radius_independence() {
        let a = ContourSpec { radius1: 1.5, radius2: 1.0, nodes: 32 };
        let b = ContourSpec { radius1: 2.0, radius2: 1.2, nodes: 32 };
        let va = extended_kernel_contour(1.0, 1.0, 0.5, 0.0, h(0), h(1), a).unwrap().0;
        let vb = extended_kernel_contour(1.0, 1.0, 0.5, 0.0, h(0), h(1), b).unwrap().0;
        assert!((va.value - vb.value).abs() < 1e-10);
    }

    #[test]
    fn containment_enforced() {
        let bad = ContourSpec { radius1: 0.5, radius2: 0.5, nodes: 32 };
        let r = extended_kernel_contour(1.0, 1.0, 0.5, 0.0, h(0), h(0), bad);
        assert!(matches!(r, Err(Error::Containment(_))));
        let bad = ContourSpec { radius1: 2.0, radius2: 2.0, nodes: 32 };
        let r = extended_kernel_contour(1.0, 1.0, -0.5, 0.0, h(0), h(0), bad);
        assert!(matches!(r, Err(Error::Containment(_))));
    }
}
