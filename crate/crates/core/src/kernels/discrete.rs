use crate::{HalfInt, Result};

use super::extended::{bessel_product_series, BesselPair};
use super::{check_theta, KernelMethod, KernelValue};

/// The discrete Bessel kernel at one θ, sharing a Bessel table across
/// evaluations.
#[derive(Clone, Debug)]
pub struct DiscreteBesselKernel {
    theta: f64,
    tables: BesselPair,
}

impl DiscreteBesselKernel {
    pub fn new(theta: f64) -> Result<Self> {
        check_theta(theta)?;
        Ok(DiscreteBesselKernel {
            theta,
            tables: BesselPair::new(theta, theta),
        })
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// Σ_{a∈Z′₊} J_{x+a} J_{y+a}.
    pub fn series(&self, x: HalfInt, y: HalfInt) -> KernelValue {
        let (value, error_estimate) = bessel_product_series(&self.tables, x.upper(), y.upper(), 1, 0.0);
        KernelValue {
            value,
            method: KernelMethod::Series,
            error_estimate,
        }
    }

    /// √θ (J_{x−½}J_{y+½} − J_{x+½}J_{y−½})/(x − y); the diagonal falls back
    /// to the series.
    pub fn ratio(&self, x: HalfInt, y: HalfInt) -> KernelValue {
        if x == y {
            return self.series(x, y);
        }
        let j = |m: i64| self.tables.s.get(m);
        let a = j(x.lower()) * j(y.upper());
        let b = j(x.upper()) * j(y.lower());
        let r = self.theta.sqrt() / (x - y) as f64;
        KernelValue {
            value: r * (a - b),
            method: KernelMethod::Ratio,
            error_estimate: r.abs() * (4.0 * f64::EPSILON * (a.abs() + b.abs()) + 4e-15),
        }
    }

    /// The ratio form off the diagonal, series on it.
    pub fn value(&self, x: HalfInt, y: HalfInt) -> f64 {
        self.ratio(x, y).value
    }
}

pub fn discrete_bessel_ratio(theta: f64, x: HalfInt, y: HalfInt) -> Result<KernelValue> {
    Ok(DiscreteBesselKernel::new(theta)?.ratio(x, y))
}

pub fn discrete_bessel_series(theta: f64, x: HalfInt, y: HalfInt) -> Result<KernelValue> {
    Ok(DiscreteBesselKernel::new(theta)?.series(x, y))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(k: i64) -> HalfInt {
        HalfInt::new(k)
    }

    #[test]
    fn diagonal_at_theta_one() {
        // (1 − J₀(2)²)/2
        let v = discrete_bessel_ratio(1.0, h(0), h(0)).unwrap();
        assert_eq!(v.method, KernelMethod::Series);
        assert!((v.value - 0.474_936_459_507_765_2).abs() < 1e-13, "{}", v.value);
        assert!(v.error_estimate < 1e-12);
    }

    #[test]
    fn forms_agree_near_origin() {
        let k = DiscreteBesselKernel::new(1.0).unwrap();
        let r = k.ratio(h(0), h(1));
        let s = k.series(h(0), h(1));
        assert!((r.value - s.value).abs() < 1e-12);
        assert_eq!(k.ratio(h(0), h(1)).value, k.ratio(h(1), h(0)).value);
    }

    #[test]
    fn density_is_a_probability() {
        for theta in [0.1, 1.0, 9.0, 25.0] {
            let k = DiscreteBesselKernel::new(theta).unwrap();
            for x in -30..30 {
                let v = k.series(h(x), h(x)).value;
                assert!((-1e-15..=1.0 + 1e-15).contains(&v));
            }
        }
    }

    #[test]
    fn rejects_nonpositive_theta() {
        assert!(discrete_bessel_series(0.0, h(0), h(0)).is_err());
    }
}
