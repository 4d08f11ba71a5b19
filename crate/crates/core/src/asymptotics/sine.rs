use std::f64::consts::PI;

use num_complex::Complex64;

use crate::special::GaussLegendre;
use crate::{Error, Result};

const NODES: usize = 200;
const MAX_IMAGINARY: f64 = 1e-10;

fn check_c(c: f64) -> Result<f64> {
    if c.is_finite() && c.abs() < 2.0 {
        Ok((c / 2.0).acos())
    } else {
        Err(Error::OutOfRange(format!("c must lie in (−2, 2), got {c}")))
    }
}

/// S_c(r) = sin(φ r)/(π r) with φ = arccos(c/2); S_c(0) = φ/π.
pub fn sine_kernel(c: f64, r: i64) -> Result<f64> {
    let phi = check_c(c)?;
    if r == 0 {
        Ok(phi / PI)
    } else {
        Ok((phi * r as f64).sin() / (PI * r as f64))
    }
}

/// Value of the extended sine kernel with the quadrature diagnostics.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExtendedSineValue {
    pub value: f64,
    /// Imaginary part left over by the quadrature.
    pub imaginary: f64,
    /// Change when the node count is doubled.
    pub error_estimate: f64,
}

/// (1/2πi) ∫ e^{−h(ω+ω⁻¹−c)} ω^{−r−1} dω from e^{−iφ} to e^{iφ}, passing
/// right of 0 for h ≥ 0 and left of 0 for h < 0.
pub fn extended_sine_kernel(c: f64, h: f64, r: i64) -> Result<f64> {
    Ok(extended_sine_detailed(c, h, r)?.value)
}

pub fn extended_sine_detailed(c: f64, h: f64, r: i64) -> Result<ExtendedSineValue> {
    let phi = check_c(c)?;
    if !h.is_finite() {
        return Err(Error::InvalidArgument(format!("h must be finite, got {h}")));
    }
    let via = if h >= 0.0 { 0.5 } else { -0.5 };
    let coarse = path_integral(c, h, r, phi, via, NODES);
    let fine = path_integral(c, h, r, phi, via, 2 * NODES);
    let error_estimate = (fine - coarse).norm();
    if !(error_estimate < 1e-9) || fine.im.abs() > MAX_IMAGINARY {
        return Err(Error::Quadrature(format!(
            "extended sine kernel at c = {c}, h = {h}, r = {r}: change {error_estimate:e}, imaginary part {:e}",
            fine.im
        )));
    }
    Ok(ExtendedSineValue {
        value: fine.re,
        imaginary: fine.im,
        error_estimate,
    })
}

/// Two straight segments e^{−iφ} → p → e^{iφ}, each with `nodes` points.
fn path_integral(c: f64, h: f64, r: i64, phi: f64, p: f64, nodes: usize) -> Complex64 {
    let gl = GaussLegendre::new(nodes);
    let ends = [
        (Complex64::from_polar(1.0, -phi), Complex64::new(p, 0.0)),
        (Complex64::new(p, 0.0), Complex64::from_polar(1.0, phi)),
    ];
    let mut total = Complex64::new(0.0, 0.0);
    for (a, b) in ends {
        let d = b - a;
        for (s, w) in gl.mapped(0.0, 1.0) {
            let z = a + d * s;
            let f = (-(z + z.inv() - c) * h).exp() * z.powi(-(r as i32) - 1);
            total += f * d * w;
        }
    }
    total / Complex64::new(0.0, 2.0 * PI)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sine_examples() {
        assert_eq!(sine_kernel(0.0, 0).unwrap(), 0.5);
        assert!(sine_kernel(0.0, 2).unwrap().abs() < 1e-16);
        assert!((sine_kernel(1.0, 1).unwrap() - 0.2756644477108961).abs() < 1e-15);
        assert!(sine_kernel(2.0, 0).is_err());
        assert!(sine_kernel(-2.5, 1).is_err());
    }

    #[test]
    fn zero_time_is_sine_kernel() {
        for c in [-1.0, 0.0, 1.0] {
            for r in -3..=3 {
                let e = extended_sine_kernel(c, 0.0, r).unwrap();
                assert!((e - sine_kernel(c, r).unwrap()).abs() < 1e-10, "c={c} r={r}");
            }
        }
    }

    #[test]
    fn deformation_invariance() {
        let phi = (0.3f64 / 2.0).acos();
        for (h, p1, p2) in [(0.7, 0.5, 1.5), (-0.7, -0.5, -1.5)] {
            for r in [-2, 0, 3] {
                let a = path_integral(0.3, h, r, phi, p1, 400);
                let b = path_integral(0.3, h, r, phi, p2, 400);
                assert!((a - b).norm() < 1e-10);
            }
        }
    }

    #[test]
    fn negative_time_jump() {
        // S(0⁺; r) − S(0⁻; r) = δ_{r0}: the two paths differ by a loop around 0.
        for r in -2..=2 {
            let up = extended_sine_kernel(0.4, 1e-9, r).unwrap();
            let down = extended_sine_kernel(0.4, -1e-9, r).unwrap();
            let delta = if r == 0 { 1.0 } else { 0.0 };
            assert!((up - down - delta).abs() < 1e-7);
        }
    }

    #[test]
    fn decays_in_time() {
        // The approach to 0 is algebraic: about 0.008 at h = 20.
        let v20 = extended_sine_kernel(0.0, 20.0, 0).unwrap();
        let v80 = extended_sine_kernel(0.0, 80.0, 0).unwrap();
        assert!(v20 > 0.0 && v20 < 0.01);
        assert!(v80 < v20 / 3.0);
    }
}
