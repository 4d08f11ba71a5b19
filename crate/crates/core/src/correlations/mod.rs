//! Monte Carlo estimates of static and space-time correlation functions and
//! their comparison with kernel determinants.

mod suite;

use std::fmt;

use serde::Serialize;

use crate::kernels::SpaceTimePoint;
use crate::stats::{proportion, z_score};
use crate::{Error, Result, Trajectory, YoungDiagram};

pub use suite::{
    dynamic_queries, estimate, estimate_static, static_queries, DynamicSource, QueryEstimate,
};

/// Largest n accepted for Monte Carlo queries.
pub const MAX_QUERY_POINTS: usize = 6;

/// ρ_n at pairwise distinct space-time points.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CorrelationQuery {
    pub points: Vec<SpaceTimePoint>,
}

impl CorrelationQuery {
    pub fn new(points: Vec<SpaceTimePoint>) -> Result<Self> {
        if points.is_empty() || points.len() > MAX_QUERY_POINTS {
            return Err(Error::InvalidArgument(format!(
                "a query needs 1 to {MAX_QUERY_POINTS} points, got {}",
                points.len()
            )));
        }
        for (i, p) in points.iter().enumerate() {
            if points[..i].contains(p) {
                return Err(Error::InvalidArgument(format!("repeated point ({}, {})", p.t, p.x)));
            }
        }
        Ok(CorrelationQuery { points })
    }

    pub fn at_time(t: f64, xs: &[crate::HalfInt]) -> Result<Self> {
        Self::new(xs.iter().map(|&x| SpaceTimePoint::new(t, x)).collect())
    }

    /// All points present in one state sequence.
    fn hit(&self, tr: &Trajectory) -> Result<(bool, bool)> {
        let mut all = true;
        let mut coincident = false;
        for p in &self.points {
            coincident |= tr.is_jump_time(p.t);
            if !tr.state_at(p.t)?.contains_point(p.x) {
                all = false;
            }
        }
        Ok((all, coincident))
    }
}

impl fmt::Display for CorrelationQuery {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.points.iter().map(|p| format!("({}, {})", p.t, p.x)).collect();
        f.write_str(&parts.join(" "))
    }
}

/// Hit counts of one query.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct EmpiricalRho {
    pub hits: u64,
    pub n: u64,
    /// Samples where a query time was also a jump time.
    pub coincidences: u64,
}

impl EmpiricalRho {
    pub fn merge(self, other: EmpiricalRho) -> EmpiricalRho {
        EmpiricalRho {
            hits: self.hits + other.hits,
            n: self.n + other.n,
            coincidences: self.coincidences + other.coincidences,
        }
    }

    /// Frequency and binomial standard error.
    pub fn estimate(&self) -> (f64, f64) {
        proportion(self.hits, self.n)
    }
}

/// Fraction of trajectories with xᵢ ∈ L(Λ(tᵢ)) for all i, Λ read
/// right-continuously.
pub fn empirical_rho(trajectories: &[Trajectory], query: &CorrelationQuery) -> Result<EmpiricalRho> {
    let mut acc = EmpiricalRho::default();
    for tr in trajectories {
        acc = acc.merge(observe(tr, query)?);
    }
    Ok(acc)
}

pub(crate) fn observe(tr: &Trajectory, query: &CorrelationQuery) -> Result<EmpiricalRho> {
    let (hit, coincident) = query.hit(tr)?;
    Ok(EmpiricalRho {
        hits: hit as u64,
        n: 1,
        coincidences: coincident as u64,
    })
}

/// Fraction of diagrams with every x ∈ L(λ).
pub fn empirical_rho_static(diagrams: &[YoungDiagram], xs: &[crate::HalfInt]) -> EmpiricalRho {
    let hits = diagrams
        .iter()
        .filter(|l| xs.iter().all(|&x| l.contains_point(x)))
        .count() as u64;
    EmpiricalRho {
        hits,
        n: diagrams.len() as u64,
        coincidences: 0,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ComparisonReport {
    pub query: String,
    pub empirical: f64,
    pub std_error: f64,
    pub exact: f64,
    pub z_score: f64,
    pub n_samples: u64,
    pub coincidences: u64,
}

/// z = (empirical − exact)/SE. Zero empirical variance is accepted only
/// when the exact value is within 1/n of the observed frequency.
pub fn compare(query: &CorrelationQuery, exact: f64, empirical: EmpiricalRho) -> Result<ComparisonReport> {
    let (p, se) = empirical.estimate();
    Ok(ComparisonReport {
        query: query.to_string(),
        empirical: p,
        std_error: se,
        exact,
        z_score: z_score(p, se, exact, empirical.n)?,
        n_samples: empirical.n,
        coincidences: empirical.coincidences,
    })
}

/// (Λ(t⁻), Λ(t⁺)); the trajectory's own value at t is Λ(t⁺).
pub fn right_continuity_audit(tr: &Trajectory, t: f64) -> Result<(YoungDiagram, YoungDiagram)> {
    Ok((tr.left_limit(t)?.clone(), tr.state_at(t)?.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::{sample_m_theta, simulate, InitialCondition};
    use crate::kernels::DiscreteBesselKernel;
    use crate::rng::stream_rng;
    use crate::{AdmissibleCurve, HalfInt};

    #[test]
    fn query_validation() {
        let p = SpaceTimePoint::new(0.0, HalfInt::new(0));
        assert!(CorrelationQuery::new(vec![p, p]).is_err());
        assert!(CorrelationQuery::new(vec![]).is_err());
        let many: Vec<_> = (0..7).map(|k| SpaceTimePoint::new(0.0, HalfInt::new(k))).collect();
        assert!(CorrelationQuery::new(many).is_err());
    }

    #[test]
    fn baseline_frequencies() {
        let mut rng = stream_rng(1, 0);
        let ds: Vec<YoungDiagram> = (0..2000).map(|_| sample_m_theta(0.01, &mut rng).unwrap()).collect();
        let far = empirical_rho_static(&ds, &[HalfInt::new(20)]);
        let deep = empirical_rho_static(&ds, &[HalfInt::new(-20)]);
        assert_eq!(far.hits, 0);
        assert_eq!(deep.hits, deep.n);
    }

    #[test]
    fn one_point_density_at_half() {
        let c = AdmissibleCurve::hyperbola(1.0).unwrap();
        let mut rng = stream_rng(2, 0);
        let trs: Vec<Trajectory> = (0..20_000)
            .map(|_| simulate(&c, 0.0, 0.5, &InitialCondition::DrawFromMTheta, &mut rng).unwrap())
            .collect();
        let q = CorrelationQuery::at_time(0.25, &[HalfInt::new(0)]).unwrap();
        let exact = DiscreteBesselKernel::new(1.0).unwrap().value(HalfInt::new(0), HalfInt::new(0));
        let r = compare(&q, exact, empirical_rho(&trs, &q).unwrap()).unwrap();
        assert!((exact - 0.4749364595077652).abs() < 1e-12);
        assert!(r.z_score.abs() < 4.0, "{r:?}");
    }

    #[test]
    fn audit_at_and_off_jumps() {
        let c = AdmissibleCurve::hyperbola(2.0).unwrap();
        let tr = simulate(&c, 0.0, 2.0, &InitialCondition::DrawFromMTheta, &mut stream_rng(3, 1)).unwrap();
        assert!(!tr.events.is_empty());
        let (t, _) = tr.events[0];
        let (before, after) = right_continuity_audit(&tr, t).unwrap();
        assert!(before.added_row(&after).is_some() || after.added_row(&before).is_some());
        assert_eq!(&after, tr.state_at(t).unwrap());
        let off = 0.5 * (tr.initial_time + t);
        let (a, b) = right_continuity_audit(&tr, off).unwrap();
        assert_eq!(a, b);
        let q = CorrelationQuery::at_time(t, &[HalfInt::new(0)]).unwrap();
        assert_eq!(observe(&tr, &q).unwrap().coincidences, 1);
    }

    #[test]
    fn outside_window_is_error() {
        let tr = Trajectory::constant(0.0, 1.0, YoungDiagram::empty());
        let q = CorrelationQuery::at_time(1.5, &[HalfInt::new(0)]).unwrap();
        assert!(empirical_rho(&[tr], &q).is_err());
    }

    #[test]
    fn zero_variance_rule() {
        let q = CorrelationQuery::at_time(0.0, &[HalfInt::new(30)]).unwrap();
        let e = EmpiricalRho { hits: 0, n: 1000, coincidences: 0 };
        assert!(compare(&q, 1e-5, e).is_ok());
        assert!(compare(&q, 0.3, e).is_err());
    }
}
