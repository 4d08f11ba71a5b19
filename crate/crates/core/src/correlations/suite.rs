use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use super::{observe, CorrelationQuery, EmpiricalRho};
use crate::dynamics::{sample_m_theta, simulate, InitialCondition};
use crate::kernels::SpaceTimePoint;
use crate::rng::StreamId;
use crate::rsk::{PoissonRealization, RskMode};
use crate::{AdmissibleCurve, Error, HalfInt, Result, Trajectory};

/// Which construction of Λ_C produces the trajectories.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DynamicSource {
    /// Jump chain with Plancherel up/down transitions.
    Dynamics,
    /// RS shapes of a Poisson process in the moving rectangle.
    Rsk,
}

impl fmt::Display for DynamicSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DynamicSource::Dynamics => "dynamics",
            DynamicSource::Rsk => "rsk",
        })
    }
}

impl FromStr for DynamicSource {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dynamics" => Ok(DynamicSource::Dynamics),
            "rsk" => Ok(DynamicSource::Rsk),
            other => Err(Error::Parse(format!("unknown trajectory source {other:?}"))),
        }
    }
}

impl DynamicSource {
    pub fn trajectory(self, curve: &AdmissibleCurve, t0: f64, t1: f64, id: StreamId) -> Result<Trajectory> {
        let mut tr = match self {
            DynamicSource::Dynamics => {
                simulate(curve, t0, t1, &InitialCondition::DrawFromMTheta, &mut id.rng())?
            }
            DynamicSource::Rsk => PoissonRealization::new(id).shape_process(curve, t0, t1, RskMode::Incremental)?,
        };
        tr.stream = Some(id);
        Ok(tr)
    }
}

/// A query with its hit counts.
#[derive(Clone, Debug, Serialize)]
pub struct QueryEstimate {
    pub query: CorrelationQuery,
    pub counts: EmpiricalRho,
}

/// Every 1-point and 2-point equal-time query on `xs` at time t.
pub fn static_queries(t: f64, xs: &[HalfInt]) -> Vec<CorrelationQuery> {
    let mut out = Vec::new();
    for (i, &x) in xs.iter().enumerate() {
        out.push(CorrelationQuery::at_time(t, &[x]).expect("one point"));
        for &y in &xs[i + 1..] {
            out.push(CorrelationQuery::at_time(t, &[x, y]).expect("distinct points"));
        }
    }
    out
}

/// 1-point queries at t0 and at t0 + lag, and 2-point queries
/// (t0, x; t0 + lag, y) for all x, y in `xs`.
pub fn dynamic_queries(t0: f64, lags: &[f64], xs: &[HalfInt]) -> Vec<CorrelationQuery> {
    let mut out = Vec::new();
    let mut times = vec![t0];
    times.extend(lags.iter().map(|l| t0 + l));
    for &t in &times {
        for &x in xs {
            out.push(CorrelationQuery::at_time(t, &[x]).expect("one point"));
        }
    }
    for &lag in lags {
        for &x in xs {
            for &y in xs {
                let q = vec![SpaceTimePoint::new(t0, x), SpaceTimePoint::new(t0 + lag, y)];
                out.push(CorrelationQuery::new(q).expect("distinct times"));
            }
        }
    }
    out
}

fn zeros(m: usize) -> Vec<EmpiricalRho> {
    vec![EmpiricalRho::default(); m]
}

fn add(mut a: Vec<EmpiricalRho>, b: Vec<EmpiricalRho>) -> Vec<EmpiricalRho> {
    for (x, y) in a.iter_mut().zip(b) {
        *x = x.merge(y);
    }
    a
}

/// Hit counts of all queries over `n` trajectories on [t0, t1]; trajectory i
/// uses stream `first_stream + i`. Counts are integer sums, so the result
/// does not depend on the thread count.
pub fn estimate(
    source: DynamicSource,
    curve: &AdmissibleCurve,
    t0: f64,
    t1: f64,
    queries: &[CorrelationQuery],
    seed: u64,
    first_stream: u64,
    n: usize,
) -> Result<Vec<QueryEstimate>> {
    let m = queries.len();
    let counts = (0..n as u64)
        .into_par_iter()
        .try_fold(
            || zeros(m),
            |mut acc, i| {
                let tr = source.trajectory(curve, t0, t1, StreamId::new(seed, first_stream + i))?;
                for (a, q) in acc.iter_mut().zip(queries) {
                    *a = a.merge(observe(&tr, q)?);
                }
                Ok::<_, Error>(acc)
            },
        )
        .try_reduce(|| zeros(m), |a, b| Ok(add(a, b)))?;
    Ok(queries
        .iter()
        .cloned()
        .zip(counts)
        .map(|(query, counts)| QueryEstimate { query, counts })
        .collect())
}

/// Hit counts of equal-time queries over `n` independent draws from M_θ.
pub fn estimate_static(
    theta: f64,
    queries: &[CorrelationQuery],
    seed: u64,
    first_stream: u64,
    n: usize,
) -> Result<Vec<QueryEstimate>> {
    let m = queries.len();
    let counts = (0..n as u64)
        .into_par_iter()
        .try_fold(
            || zeros(m),
            |mut acc, i| {
                let l = sample_m_theta(theta, &mut StreamId::new(seed, first_stream + i).rng())?;
                for (a, q) in acc.iter_mut().zip(queries) {
                    let hit = q.points.iter().all(|p| l.contains_point(p.x));
                    *a = a.merge(EmpiricalRho {
                        hits: hit as u64,
                        n: 1,
                        coincidences: 0,
                    });
                }
                Ok::<_, Error>(acc)
            },
        )
        .try_reduce(|| zeros(m), |a, b| Ok(add(a, b)))?;
    Ok(queries
        .iter()
        .cloned()
        .zip(counts)
        .map(|(query, counts)| QueryEstimate { query, counts })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn query_counts() {
        let xs: Vec<HalfInt> = (-2..2).map(HalfInt::new).collect();
        assert_eq!(static_queries(0.0, &xs).len(), 4 + 6);
        assert_eq!(dynamic_queries(0.0, &[0.5, 1.0], &xs).len(), 12 + 32);
    }

    #[test]
    fn thread_count_does_not_matter() {
        let c = AdmissibleCurve::hyperbola(1.0).unwrap();
        let qs = dynamic_queries(0.0, &[0.5], &[HalfInt::new(-1), HalfInt::new(0)]);
        let run = |threads| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap()
                .install(|| estimate(DynamicSource::Dynamics, &c, 0.0, 0.5, &qs, 9, 0, 3000).unwrap())
        };
        let a: Vec<EmpiricalRho> = run(1).into_iter().map(|e| e.counts).collect();
        let b: Vec<EmpiricalRho> = run(4).into_iter().map(|e| e.counts).collect();
        assert_eq!(a, b);
    }
}
