use rand::Rng;
use serde::Serialize;

use super::{lis_length, sample_box, sorted_word, PlanarPoint};
use crate::stats::{covariance, CovarianceEstimate};
use crate::{Error, Result};

const MIN_CONDITIONING: usize = 100;

/// Dependence of λ_Π(a) and λ_Π(c) given λ_Π(b) = (1), for
/// a = (1, 1), b = (2, 1), c = (2, 2).
#[derive(Clone, Debug, Serialize)]
pub struct ProbeReport {
    pub samples: usize,
    pub conditioning_events: usize,
    /// Cov(1{λ(a) = (1)}, 1{λ₁(c) ≥ 2} | λ(b) = (1)).
    pub conditional: CovarianceEstimate,
    /// Cov(1{λ(a) = (1)}, 1{|λ(c)| ≥ 2} | λ(b) = (1)); zero exactly, since
    /// |λ(c)| − 1 only counts points of the disjoint strip above b.
    pub conditional_size: CovarianceEstimate,
    /// Unconditional Cov(1{Π ∩ [0,1]² ≠ ∅}, 1{Π ∩ [1,2]² ≠ ∅}).
    pub disjoint_control: CovarianceEstimate,
}

pub fn markov_violation_probe<R: Rng + ?Sized>(rng: &mut R, samples: usize) -> Result<ProbeReport> {
    let mut f = Vec::new();
    let mut g_row = Vec::new();
    let mut g_size = Vec::new();
    let mut lo = Vec::with_capacity(samples);
    let mut hi = Vec::with_capacity(samples);
    for _ in 0..samples {
        let pts: Vec<PlanarPoint> = sample_box(0.0, 2.0, 0.0, 2.0, rng);
        lo.push(pts.iter().any(|p| p.u <= 1.0 && p.v < 1.0));
        hi.push(pts.iter().any(|p| p.u > 1.0 && p.v >= 1.0));
        let in_b: Vec<&PlanarPoint> = pts.iter().filter(|p| p.v < 1.0).collect();
        if in_b.len() != 1 {
            continue;
        }
        f.push(in_b[0].u <= 1.0);
        g_row.push(lis_length(sorted_word(&pts)) >= 2);
        g_size.push(pts.len() >= 2);
    }
    if f.len() < MIN_CONDITIONING {
        return Err(Error::InsufficientData(format!(
            "only {} conditioning events in {samples} samples",
            f.len()
        )));
    }
    Ok(ProbeReport {
        samples,
        conditioning_events: f.len(),
        conditional: covariance(&f, &g_row),
        conditional_size: covariance(&f, &g_size),
        disjoint_control: covariance(&lo, &hi),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::stream_rng;

    #[test]
    fn standard_error_scales() {
        let a = markov_violation_probe(&mut stream_rng(1, 0), 20_000).unwrap();
        let b = markov_violation_probe(&mut stream_rng(1, 1), 80_000).unwrap();
        let ratio = a.conditional.std_error / b.conditional.std_error;
        assert!((ratio - 2.0).abs() < 0.2, "{ratio}");
        assert!(a.disjoint_control.z_score().abs() < 4.0);
    }

    #[test]
    fn too_few_samples() {
        assert!(matches!(
            markov_violation_probe(&mut stream_rng(1, 0), 10),
            Err(Error::InsufficientData(_))
        ));
    }
}
