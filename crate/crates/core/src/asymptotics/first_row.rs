use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::dynamics::AdmissibleCurve;
use crate::rng::StreamId;
use crate::rsk::{lis_length, sorted_word, PoissonRealization};
use crate::{Error, Result};

/// Curves through (√θ, √θ) at time 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CurveFamily {
    /// uv = θ.
    Hyperbola,
    /// u + v = 2√θ.
    Line,
}

impl CurveFamily {
    pub fn curve(self, theta: f64) -> Result<AdmissibleCurve> {
        match self {
            CurveFamily::Hyperbola => AdmissibleCurve::hyperbola(theta),
            CurveFamily::Line => AdmissibleCurve::line(2.0 * theta.sqrt()),
        }
    }
}

impl fmt::Display for CurveFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CurveFamily::Hyperbola => "hyperbola",
            CurveFamily::Line => "line",
        })
    }
}

impl FromStr for CurveFamily {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "hyperbola" => Ok(CurveFamily::Hyperbola),
            "line" => Ok(CurveFamily::Line),
            other => Err(Error::Parse(format!("unknown curve family {other:?}"))),
        }
    }
}

/// L(τ) = (λ₁(t(τ)) − 2√(u v))/θ^{1/6} with t(τ) = τθ^{−1/6}, one row per
/// trajectory.
#[derive(Clone, Debug, Serialize)]
pub struct FirstRowSamples {
    pub family: CurveFamily,
    pub theta: f64,
    pub taus: Vec<f64>,
    pub samples: Vec<Vec<f64>>,
    /// Points of Π in the rectangle at each τ, per trajectory.
    pub counts: Vec<Vec<usize>>,
}

impl FirstRowSamples {
    pub fn column(&self, k: usize) -> Vec<f64> {
        self.samples.iter().map(|row| row[k]).collect()
    }

    pub fn mean(&self, k: usize) -> f64 {
        let c = self.column(k);
        c.iter().sum::<f64>() / c.len() as f64
    }

    /// Unbiased sample variance of L(τ_k).
    pub fn variance(&self, k: usize) -> f64 {
        self.covariance(k, k)
    }

    pub fn covariance(&self, a: usize, b: usize) -> f64 {
        let n = self.samples.len() as f64;
        let (ma, mb) = (self.mean(a), self.mean(b));
        self.samples.iter().map(|r| (r[a] - ma) * (r[b] - mb)).sum::<f64>() / (n - 1.0)
    }

    /// Standard error of the sample variance, from the fourth central moment.
    pub fn variance_std_error(&self, k: usize) -> f64 {
        let n = self.samples.len() as f64;
        let m = self.mean(k);
        let m4 = self.samples.iter().map(|r| (r[k] - m).powi(4)).sum::<f64>() / n;
        let var = self.variance(k);
        ((m4 - var * var * (n - 3.0) / (n - 1.0)) / n).max(0.0).sqrt()
    }

    pub fn write_csv<W: std::io::Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "trajectory,tau,sample")?;
        for (i, row) in self.samples.iter().enumerate() {
            for (tau, s) in self.taus.iter().zip(row) {
                writeln!(out, "{i},{tau},{s}")?;
            }
        }
        Ok(())
    }
}

/// Trajectory i reads Π from stream `first_stream + i` of `seed`.
pub fn first_row_samples(
    family: CurveFamily,
    theta: f64,
    taus: &[f64],
    seed: u64,
    first_stream: u64,
    n_traj: usize,
) -> Result<FirstRowSamples> {
    if !(theta > 0.0 && theta.is_finite()) {
        return Err(Error::InvalidArgument(format!("θ must be positive, got {theta}")));
    }
    if taus.is_empty() || n_traj < 2 {
        return Err(Error::InvalidArgument("need at least one τ and two trajectories".into()));
    }
    let curve = family.curve(theta)?;
    let s6 = theta.powf(1.0 / 6.0);
    let rects: Vec<(f64, f64)> = taus
        .iter()
        .map(|&tau| curve.point(tau / s6))
        .collect::<Result<_>>()?;
    let (umax, vmax) = rects
        .iter()
        .fold((0.0f64, 0.0f64), |(a, b), &(u, v)| (a.max(u), b.max(v)));
    let rows: Vec<(Vec<f64>, Vec<usize>)> = (0..n_traj as u64)
        .into_par_iter()
        .map(|i| {
            let mut pi = PoissonRealization::new(StreamId::new(seed, first_stream + i));
            pi.ensure(umax, vmax);
            let config = pi.configuration();
            rects
                .iter()
                .map(|&(u, v)| {
                    let inside = config.restrict(u, v);
                    let l1 = lis_length(sorted_word(inside.points()));
                    ((l1 as f64 - 2.0 * (u * v).sqrt()) / s6, inside.len())
                })
                .unzip()
        })
        .collect();
    let (samples, counts) = rows.into_iter().unzip();
    Ok(FirstRowSamples {
        family,
        theta,
        taus: taus.to_vec(),
        samples,
        counts,
    })
}
