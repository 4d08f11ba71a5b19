//! Small statistical helpers for the Monte Carlo suites.

use serde::Serialize;
use statrs::distribution::{ChiSquared, ContinuousCDF, Normal};

use crate::{Error, Result};

/// A sample covariance with its standard error.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CovarianceEstimate {
    pub covariance: f64,
    pub std_error: f64,
    pub n: usize,
}

impl CovarianceEstimate {
    pub fn z_score(&self) -> f64 {
        if self.std_error > 0.0 {
            self.covariance / self.std_error
        } else {
            0.0
        }
    }
}

/// Covariance of two indicator samples; the standard error is that of the
/// mean of (fᵢ − f̄)(gᵢ − ḡ).
pub fn covariance(f: &[bool], g: &[bool]) -> CovarianceEstimate {
    assert_eq!(f.len(), g.len());
    let n = f.len();
    let nf = n as f64;
    let mf = f.iter().filter(|&&x| x).count() as f64 / nf;
    let mg = g.iter().filter(|&&x| x).count() as f64 / nf;
    let (mut s, mut s2) = (0.0, 0.0);
    for (&a, &b) in f.iter().zip(g) {
        let z = (a as u8 as f64 - mf) * (b as u8 as f64 - mg);
        s += z;
        s2 += z * z;
    }
    let mean = s / nf;
    let var = (s2 / nf - mean * mean).max(0.0);
    CovarianceEstimate {
        covariance: mean,
        std_error: (var / (nf - 1.0)).sqrt(),
        n,
    }
}

/// Binomial proportion with standard error √(p(1−p)/n).
pub fn proportion(hits: u64, n: u64) -> (f64, f64) {
    let p = hits as f64 / n as f64;
    (p, (p * (1.0 - p) / n as f64).sqrt())
}

/// (empirical − exact)/se. With se = 0 the difference must be within one
/// sample's resolution, otherwise the comparison is rejected.
pub fn z_score(empirical: f64, std_error: f64, exact: f64, n: u64) -> Result<f64> {
    let diff = empirical - exact;
    if std_error > 0.0 {
        Ok(diff / std_error)
    } else if diff.abs() <= 1.0 / n as f64 {
        Ok(0.0)
    } else {
        Err(Error::InsufficientData(format!(
            "zero empirical variance but |empirical − exact| = {:e} over {n} samples",
            diff.abs()
        )))
    }
}

/// z for the difference of two independent estimates.
pub fn two_sample_z(a: f64, se_a: f64, b: f64, se_b: f64) -> f64 {
    let se = (se_a * se_a + se_b * se_b).sqrt();
    if se > 0.0 {
        (a - b) / se
    } else if a == b {
        0.0
    } else {
        f64::INFINITY
    }
}

/// Expected number of |z| > threshold alarms among m true-null queries.
pub fn family_false_alarm(m: usize, threshold: f64) -> f64 {
    let normal = Normal::new(0.0, 1.0).expect("standard normal");
    m as f64 * 2.0 * (1.0 - normal.cdf(threshold))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ChiSquareTest {
    pub statistic: f64,
    pub dof: usize,
    pub p_value: f64,
}

/// Pearson goodness of fit. Cells expecting fewer than 5 counts are pooled;
/// a pool that is still too small joins the last regular cell.
pub fn chi_square(observed: &[u64], probabilities: &[f64]) -> Result<ChiSquareTest> {
    assert_eq!(observed.len(), probabilities.len());
    let n: u64 = observed.iter().sum();
    if n == 0 {
        return Err(Error::InsufficientData("no observations".into()));
    }
    let mut cells: Vec<(f64, f64)> = Vec::new();
    let mut pool = (0.0, 0.0);
    for (&o, &p) in observed.iter().zip(probabilities) {
        let e = p * n as f64;
        if e >= 5.0 {
            cells.push((o as f64, e));
        } else {
            pool.0 += o as f64;
            pool.1 += e;
        }
    }
    if pool.1 > 0.0 || pool.0 > 0.0 {
        if pool.1 >= 5.0 || cells.is_empty() {
            cells.push(pool);
        } else {
            let last = cells.last_mut().unwrap();
            last.0 += pool.0;
            last.1 += pool.1;
        }
    }
    if cells.len() < 2 {
        return Err(Error::InsufficientData("fewer than two usable cells".into()));
    }
    let statistic: f64 = cells.iter().map(|(o, e)| (o - e) * (o - e) / e).sum();
    let dof = cells.len() - 1;
    let dist = ChiSquared::new(dof as f64).expect("positive dof");
    Ok(ChiSquareTest {
        statistic,
        dof,
        p_value: 1.0 - dist.cdf(statistic),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct KsTest {
    pub statistic: f64,
    pub critical_001: f64,
    pub n: usize,
    pub m: usize,
}

impl KsTest {
    pub fn passes(&self) -> bool {
        self.statistic < self.critical_001
    }
}

/// Two-sample Kolmogorov–Smirnov statistic with the asymptotic 0.001
/// critical value c(α)·√((n+m)/(nm)), c(0.001) = 1.9495.
pub fn ks_two_sample(a: &[f64], b: &[f64]) -> KsTest {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    x.sort_by(f64::total_cmp);
    y.sort_by(f64::total_cmp);
    let (n, m) = (x.len(), y.len());
    let (mut i, mut j) = (0, 0);
    let mut d: f64 = 0.0;
    while i < n && j < m {
        let t = x[i].min(y[j]);
        while i < n && x[i] <= t {
            i += 1;
        }
        while j < m && y[j] <= t {
            j += 1;
        }
        d = d.max((i as f64 / n as f64 - j as f64 / m as f64).abs());
    }
    let (nf, mf) = (n as f64, m as f64);
    KsTest {
        statistic: d,
        critical_001: 1.9495 * ((nf + mf) / (nf * mf)).sqrt(),
        n,
        m,
    }
}
