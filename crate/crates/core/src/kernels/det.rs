use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use nalgebra::DMatrix;
use rayon::prelude::*;

use crate::{Error, Result};

use super::extended::{series_with, BesselPair};
use super::{check_theta, SpaceTimePoint};

pub const MAX_DET_POINTS: usize = 12;

type ThetaFn = dyn Fn(f64) -> f64 + Send + Sync;
type TableCache = Mutex<HashMap<(u64, u64), Arc<BesselPair>>>;

/// The series kernel K_C for a curve given by its θ(t) in interior time.
#[derive(Clone)]
pub struct ExtendedKernel {
    theta: Arc<ThetaFn>,
    cache: Arc<TableCache>,
}

impl ExtendedKernel {
    pub fn new<F: Fn(f64) -> f64 + Send + Sync + 'static>(theta: F) -> Self {
        ExtendedKernel {
            theta: Arc::new(theta),
            cache: Arc::default(),
        }
    }

    /// Constant θ, the kernel of the stationary process.
    pub fn stationary(theta: f64) -> Result<Self> {
        check_theta(theta)?;
        Ok(Self::new(move |_| theta))
    }

    pub fn theta_at(&self, t: f64) -> f64 {
        (self.theta)(t)
    }

    fn tables(&self, ts: f64, tt: f64) -> Result<Arc<BesselPair>> {
        let key = (ts.to_bits(), tt.to_bits());
        if let Some(p) = self.cache.lock().expect("kernel cache poisoned").get(&key) {
            return Ok(p.clone());
        }
        check_theta(ts)?;
        check_theta(tt)?;
        let pair = Arc::new(BesselPair::new(ts, tt));
        self.cache
            .lock()
            .expect("kernel cache poisoned")
            .insert(key, pair.clone());
        Ok(pair)
    }

    /// K_C(p; q).
    pub fn eval(&self, p: SpaceTimePoint, q: SpaceTimePoint) -> Result<f64> {
        let tables = self.tables(self.theta_at(p.t), self.theta_at(q.t))?;
        Ok(series_with(&tables, p.t, q.t, p.x, q.x).value)
    }
}

impl std::fmt::Debug for ExtendedKernel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ExtendedKernel").finish_non_exhaustive()
    }
}

/// det[K_C(pᵢ; pⱼ)] for pairwise distinct points.
pub fn rho_det(kernel: &ExtendedKernel, points: &[SpaceTimePoint]) -> Result<f64> {
    rho_det_with(|p, q| kernel.eval(p, q), points)
}

/// As [`rho_det`] for an arbitrary kernel evaluator.
pub fn rho_det_with<F>(kernel: F, points: &[SpaceTimePoint]) -> Result<f64>
where
    F: Fn(SpaceTimePoint, SpaceTimePoint) -> Result<f64> + Sync,
{
    let n = points.len();
    if n > MAX_DET_POINTS {
        return Err(Error::InvalidArgument(format!(
            "{n} points exceed the limit of {MAX_DET_POINTS}"
        )));
    }
    for i in 0..n {
        for j in 0..i {
            if points[i] == points[j] {
                return Err(Error::InvalidArgument(format!(
                    "duplicate space-time point ({}, {})",
                    points[i].t, points[i].x
                )));
            }
        }
    }
    if n == 0 {
        return Ok(1.0);
    }
    let entries = (0..n * n)
        .into_par_iter()
        .map(|k| kernel(points[k / n], points[k % n]))
        .collect::<Result<Vec<f64>>>()?;
    Ok(DMatrix::from_row_slice(n, n, &entries).determinant())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernels::DiscreteBesselKernel;
    use crate::HalfInt;

    fn pt(t: f64, k: i64) -> SpaceTimePoint {
        SpaceTimePoint::new(t, HalfInt::new(k))
    }

    #[test]
    fn one_and_two_points() {
        let k = ExtendedKernel::stationary(1.0).unwrap();
        let d = DiscreteBesselKernel::new(1.0).unwrap();
        let r1 = rho_det(&k, &[pt(0.0, 0)]).unwrap();
        assert!((r1 - d.value(HalfInt::new(0), HalfInt::new(0))).abs() < 1e-14);
        let r2 = rho_det(&k, &[pt(0.0, 0), pt(0.0, 1)]).unwrap();
        let (a, b) = (HalfInt::new(0), HalfInt::new(1));
        let expect = d.value(a, a) * d.value(b, b) - d.value(a, b).powi(2);
        assert!((r2 - expect).abs() < 1e-14 && r2 >= 0.0);
    }

    #[test]
    fn duplicates_rejected() {
        let k = ExtendedKernel::stationary(1.0).unwrap();
        assert!(rho_det(&k, &[pt(0.0, 0), pt(0.0, 0)]).is_err());
        assert!(rho_det(&k, &vec![pt(0.0, 0); 13]).is_err());
        // Same site at different times is fine.
        assert!(rho_det(&k, &[pt(0.0, 0), pt(0.5, 0)]).is_ok());
    }
}
