use nalgebra::DMatrix;
use rayon::prelude::*;
use serde::Serialize;

use super::{extended_airy_kernel, extended_sine_kernel};
use crate::kernels::{ExtendedKernel, SpaceTimePoint};
use crate::{Error, HalfInt, Result};

/// Points x₀(θ) + xᵢ at times T + τᵢ/√θ, x₀(θ) the half-integer nearest c√θ.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BulkScalingSpec {
    pub c: f64,
    pub theta: f64,
    pub t_ref: f64,
    pub offsets: Vec<i64>,
    pub taus: Vec<f64>,
}

/// Points nearest 2√θ(tᵢ) + xᵢθ^{1/6} at times T + τᵢθ^{−1/6}.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EdgeScalingSpec {
    pub theta: f64,
    pub t_ref: f64,
    pub taus: Vec<f64>,
    pub xs: Vec<f64>,
}

fn check_positive_theta(theta: f64) -> Result<()> {
    if theta > 0.0 && theta.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("θ must be positive, got {theta}")))
    }
}

fn check_distinct(points: &[SpaceTimePoint]) -> Result<()> {
    for (i, p) in points.iter().enumerate() {
        if points[..i].contains(p) {
            return Err(Error::InvalidArgument(format!("repeated point ({}, {})", p.t, p.x)));
        }
    }
    Ok(())
}

impl BulkScalingSpec {
    /// All pairs (τ, x) from the two lists.
    pub fn grid(c: f64, theta: f64, offsets: &[i64], taus: &[f64]) -> Self {
        let mut o = Vec::new();
        let mut t = Vec::new();
        for &tau in taus {
            for &x in offsets {
                o.push(x);
                t.push(tau);
            }
        }
        BulkScalingSpec {
            c,
            theta,
            t_ref: 0.0,
            offsets: o,
            taus: t,
        }
    }

    pub fn with_theta(&self, theta: f64) -> Self {
        BulkScalingSpec { theta, ..self.clone() }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.c.abs() < 2.0) {
            return Err(Error::OutOfRange(format!("c must lie in (−2, 2), got {}", self.c)));
        }
        check_positive_theta(self.theta)?;
        if self.offsets.len() != self.taus.len() || self.offsets.is_empty() {
            return Err(Error::InvalidArgument("offsets and taus must be non-empty and paired".into()));
        }
        check_distinct(&self.points())
    }

    pub fn center(&self) -> HalfInt {
        HalfInt::nearest(self.c * self.theta.sqrt())
    }

    pub fn points(&self) -> Vec<SpaceTimePoint> {
        let x0 = self.center();
        let st = self.theta.sqrt();
        self.offsets
            .iter()
            .zip(&self.taus)
            .map(|(&x, &tau)| SpaceTimePoint::new(self.t_ref + tau / st, x0 + x))
            .collect()
    }
}

impl EdgeScalingSpec {
    pub fn grid(theta: f64, xs: &[f64], taus: &[f64]) -> Self {
        let mut xv = Vec::new();
        let mut tv = Vec::new();
        for &tau in taus {
            for &x in xs {
                xv.push(x);
                tv.push(tau);
            }
        }
        EdgeScalingSpec {
            theta,
            t_ref: 0.0,
            taus: tv,
            xs: xv,
        }
    }

    pub fn with_theta(&self, theta: f64) -> Self {
        EdgeScalingSpec { theta, ..self.clone() }
    }

    pub fn validate(&self) -> Result<()> {
        check_positive_theta(self.theta)?;
        if self.xs.len() != self.taus.len() || self.xs.is_empty() {
            return Err(Error::InvalidArgument("xs and taus must be non-empty and paired".into()));
        }
        Ok(())
    }

    fn scale(&self) -> f64 {
        self.theta.powf(1.0 / 6.0)
    }

    /// Lattice points and their realized scaled coordinates
    /// ξᵢ = (xᵢ(θ) − 2√θ(tᵢ))/θ^{1/6}.
    pub fn points(&self, theta_at: &dyn Fn(f64) -> f64) -> (Vec<SpaceTimePoint>, Vec<f64>) {
        let s6 = self.scale();
        self.xs
            .iter()
            .zip(&self.taus)
            .map(|(&x, &tau)| {
                let t = self.t_ref + tau / s6;
                let edge = 2.0 * theta_at(t).sqrt();
                let lattice = HalfInt::nearest(edge + x * s6);
                (SpaceTimePoint::new(t, lattice), (lattice.to_f64() - edge) / s6)
            })
            .unzip()
    }
}

/// One kernel entry at one θ.
#[derive(Clone, Debug, Serialize)]
pub struct ErrorRow {
    pub theta: f64,
    pub i: usize,
    pub j: usize,
    pub finite: f64,
    pub limit: f64,
    pub abs_error: f64,
    /// Edge only: the limit at the nominal rather than realized coordinates.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nominal_limit: Option<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ErrorTable {
    pub theta: f64,
    pub rows: Vec<ErrorRow>,
    pub worst: f64,
    /// |det(finite) − det(limit)| over all points of the spec.
    pub det_error: f64,
}

impl ErrorTable {
    fn new(theta: f64, rows: Vec<ErrorRow>, finite: DMatrix<f64>, limit: DMatrix<f64>) -> Self {
        let worst = rows.iter().map(|r| r.abs_error).fold(0.0, f64::max);
        ErrorTable {
            theta,
            rows,
            worst,
            det_error: (finite.determinant() - limit.determinant()).abs(),
        }
    }

    pub fn worst_nominal(&self) -> Option<f64> {
        self.rows
            .iter()
            .map(|r| r.nominal_limit.map(|l| (r.finite - l).abs()))
            .collect::<Option<Vec<_>>>()
            .map(|v| v.into_iter().fold(0.0, f64::max))
    }

    pub fn entry(&self, i: usize, j: usize) -> Option<&ErrorRow> {
        self.rows.iter().find(|r| r.i == i && r.j == j)
    }
}

fn entries(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect()
}

/// Finite kernel at bulk-scaled points minus S_c(τᵢ − τⱼ; xᵢ − xⱼ).
pub fn bulk_convergence_check(spec: &BulkScalingSpec) -> Result<ErrorTable> {
    let kernel = ExtendedKernel::stationary(spec.theta)?;
    bulk_convergence_check_with(spec, &kernel)
}

/// As [`bulk_convergence_check`] with θ(t) taken from `kernel`.
pub fn bulk_convergence_check_with(spec: &BulkScalingSpec, kernel: &ExtendedKernel) -> Result<ErrorTable> {
    spec.validate()?;
    let pts = spec.points();
    let n = pts.len();
    let cells: Vec<(usize, usize, f64, f64)> = entries(n)
        .into_par_iter()
        .map(|(i, j)| {
            let finite = kernel.eval(pts[i], pts[j])?;
            let limit = extended_sine_kernel(
                spec.c,
                spec.taus[i] - spec.taus[j],
                spec.offsets[i] - spec.offsets[j],
            )?;
            Ok((i, j, finite, limit))
        })
        .collect::<Result<_>>()?;
    Ok(table(spec.theta, n, cells, None))
}

/// θ^{1/6}·(finite kernel) at edge-scaled points minus the extended Airy
/// kernel at the realized coordinates; the nominal-coordinate limit is kept
/// alongside.
pub fn edge_convergence_check(spec: &EdgeScalingSpec) -> Result<ErrorTable> {
    let kernel = ExtendedKernel::stationary(spec.theta)?;
    edge_convergence_check_with(spec, &kernel)
}

pub fn edge_convergence_check_with(spec: &EdgeScalingSpec, kernel: &ExtendedKernel) -> Result<ErrorTable> {
    spec.validate()?;
    let (pts, xi) = spec.points(&|t| kernel.theta_at(t));
    check_distinct(&pts)?;
    let s6 = spec.scale();
    let n = pts.len();
    let cells: Vec<(usize, usize, f64, f64, f64)> = entries(n)
        .into_par_iter()
        .map(|(i, j)| {
            let tau = spec.taus[i] - spec.taus[j];
            let finite = s6 * kernel.eval(pts[i], pts[j])?;
            let limit = extended_airy_kernel(tau, xi[i], xi[j])?;
            let nominal = extended_airy_kernel(tau, spec.xs[i], spec.xs[j])?;
            Ok((i, j, finite, limit, nominal))
        })
        .collect::<Result<_>>()?;
    let nominal: Vec<f64> = cells.iter().map(|c| c.4).collect();
    Ok(table(
        spec.theta,
        n,
        cells.into_iter().map(|(i, j, f, l, _)| (i, j, f, l)).collect(),
        Some(nominal),
    ))
}

fn table(theta: f64, n: usize, cells: Vec<(usize, usize, f64, f64)>, nominal: Option<Vec<f64>>) -> ErrorTable {
    let mut finite = DMatrix::zeros(n, n);
    let mut limit = DMatrix::zeros(n, n);
    let rows = cells
        .into_iter()
        .enumerate()
        .map(|(k, (i, j, f, l))| {
            finite[(i, j)] = f;
            limit[(i, j)] = l;
            ErrorRow {
                theta,
                i,
                j,
                finite: f,
                limit: l,
                abs_error: (f - l).abs(),
                nominal_limit: nominal.as_ref().map(|v| v[k]),
            }
        })
        .collect();
    ErrorTable::new(theta, rows, finite, limit)
}

/// Error tables over a θ-ladder.
#[derive(Clone, Debug, Serialize)]
pub struct Convergence {
    pub tables: Vec<ErrorTable>,
}

impl Convergence {
    pub fn worst(&self) -> Vec<f64> {
        self.tables.iter().map(|t| t.worst).collect()
    }

    /// Worst entry strictly decreasing along the ladder.
    pub fn monotone(&self) -> bool {
        self.worst().windows(2).all(|w| w[1] < w[0])
    }

    /// Entries whose own error fails to decrease somewhere on the ladder.
    pub fn non_monotone_entries(&self) -> Vec<(usize, usize)> {
        let Some(first) = self.tables.first() else {
            return Vec::new();
        };
        first
            .rows
            .iter()
            .filter(|r| {
                self.tables.windows(2).any(|w| {
                    let a = w[0].entry(r.i, r.j).map_or(f64::NAN, |e| e.abs_error);
                    let b = w[1].entry(r.i, r.j).map_or(f64::NAN, |e| e.abs_error);
                    !(b < a)
                })
            })
            .map(|r| (r.i, r.j))
            .collect()
    }

    pub fn last(&self) -> &ErrorTable {
        self.tables.last().expect("non-empty ladder")
    }

    pub fn write_csv<W: std::io::Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["theta", "i", "j", "finite", "limit", "abs_error", "nominal_limit"])
            .map_err(csv_err)?;
        for t in &self.tables {
            for r in &t.rows {
                w.write_record([
                    r.theta.to_string(),
                    r.i.to_string(),
                    r.j.to_string(),
                    r.finite.to_string(),
                    r.limit.to_string(),
                    r.abs_error.to_string(),
                    r.nominal_limit.map(|v| v.to_string()).unwrap_or_default(),
                ])
                .map_err(csv_err)?;
            }
        }
        w.flush()?;
        Ok(())
    }
}

fn csv_err(e: csv::Error) -> Error {
    Error::Io(std::io::Error::other(e))
}

pub fn bulk_ladder(spec: &BulkScalingSpec, thetas: &[f64]) -> Result<Convergence> {
    let tables = thetas
        .iter()
        .map(|&th| bulk_convergence_check(&spec.with_theta(th)))
        .collect::<Result<_>>()?;
    Ok(Convergence { tables })
}

pub fn edge_ladder(spec: &EdgeScalingSpec, thetas: &[f64]) -> Result<Convergence> {
    let tables = thetas
        .iter()
        .map(|&th| edge_convergence_check(&spec.with_theta(th)))
        .collect::<Result<_>>()?;
    Ok(Convergence { tables })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::asymptotics::sine_kernel;
    use crate::kernels::DiscreteBesselKernel;

    #[test]
    fn bulk_rejects_boundary() {
        for c in [2.0, -2.0] {
            let s = BulkScalingSpec::grid(c, 100.0, &[0, 1], &[0.0]);
            assert!(bulk_convergence_check(&s).is_err());
        }
    }

    #[test]
    fn static_bulk_at_400() {
        let s = BulkScalingSpec::grid(0.0, 400.0, &[-1, 0, 1, 2], &[0.0]);
        let t = bulk_convergence_check(&s).unwrap();
        assert!(t.worst < 0.02, "{}", t.worst);
        // Decorrelation at distance ⌊√θ⌋.
        let k = DiscreteBesselKernel::new(400.0).unwrap();
        let x0 = s.center();
        assert!(k.value(x0, x0 + 20).abs() < 0.05);
        assert!((t.entry(1, 1).unwrap().limit - sine_kernel(0.0, 0).unwrap()).abs() < 1e-10);
    }

    #[test]
    fn edge_improves_along_ladder() {
        let s = EdgeScalingSpec::grid(25.0, &[-2.0, -1.0, 0.0, 1.0], &[0.0]);
        let c = edge_ladder(&s, &[25.0, 100.0, 400.0]).unwrap();
        assert!(c.monotone());
        assert!(c.last().worst < 0.05);
        let e: Vec<f64> = c.tables.iter().map(|t| t.entry(2, 2).unwrap().abs_error).collect();
        assert!(e[0] > e[1] && e[1] > e[2]);
    }
}
