use crate::special::{bessel_ln_envelope, BesselTable};
use crate::{HalfInt, Result};

use super::{check_theta, KernelMethod, KernelValue};

const TAIL_CUTOFF: f64 = 1e-17;

/// Bessel tables at 2√θ_s and 2√θ_t.
#[derive(Clone, Debug)]
pub struct BesselPair {
    pub s: BesselTable,
    pub t: BesselTable,
}

impl BesselPair {
    pub fn new(theta_s: f64, theta_t: f64) -> Self {
        let s = BesselTable::covering(2.0 * theta_s.sqrt());
        let t = if theta_t == theta_s {
            s.clone()
        } else {
            BesselTable::covering(2.0 * theta_t.sqrt())
        };
        BesselPair { s, t }
    }
}

/// Σ_{k≥0} e^{−(k+½)·damping} J_{p+dir·k}(z_s) J_{q+dir·k}(z_t), with an
/// error bound from the envelope |J_m(z)| ≤ (z/2)^{|m|}/|m|!.
pub(crate) fn bessel_product_series(
    tables: &BesselPair,
    p: i64,
    q: i64,
    dir: i64,
    damping: f64,
) -> (f64, f64) {
    let zs = tables.s.argument();
    let zt = tables.t.argument();
    let mut sum = 0.0;
    let mut abs_sum = 0.0;
    let mut tail = 0.0;
    for k in 0i64.. {
        let o1 = p + dir * k;
        let o2 = q + dir * k;
        let w = (-(k as f64 + 0.5) * damping).exp();
        let term = w * tables.s.get(o1) * tables.t.get(o2);
        sum += term;
        abs_sum += term.abs();
        // Past the turning points each envelope at least halves per step.
        let (a1, a2) = (dir * o1, dir * o2);
        if a1 as f64 >= zs && a2 as f64 >= zt {
            let next = w
                * (bessel_ln_envelope(a1 as u64 + 1, zs) + bessel_ln_envelope(a2 as u64 + 1, zt))
                    .exp();
            if next < TAIL_CUTOFF || w < TAIL_CUTOFF {
                tail = 4.0 / 3.0 * next;
                break;
            }
        } else if w < 1e-18 {
            // |J| ≤ 1 everywhere; the geometric weight alone bounds the tail.
            tail = w / (1.0 - (-damping).exp());
            if tail < TAIL_CUTOFF {
                break;
            }
        }
    }
    let error = tail + 4.0 * f64::EPSILON * abs_sum + 2e-15;
    (sum, error)
}

/// K_C(s, x; t, y) by the series
/// +Σ_{a∈Z′₊} e^{−a(s−t)} J_{x+a}(2√θ_s) J_{y+a}(2√θ_t) for s ≥ t and
/// −Σ_{a∈Z′₊} e^{−a(t−s)} J_{x−a}(2√θ_s) J_{y−a}(2√θ_t) for s < t.
pub fn extended_kernel_series(
    theta_s: f64,
    theta_t: f64,
    s: f64,
    t: f64,
    x: HalfInt,
    y: HalfInt,
) -> Result<KernelValue> {
    check_theta(theta_s)?;
    check_theta(theta_t)?;
    let tables = BesselPair::new(theta_s, theta_t);
    Ok(series_with(&tables, s, t, x, y))
}

pub(crate) fn series_with(
    tables: &BesselPair,
    s: f64,
    t: f64,
    x: HalfInt,
    y: HalfInt,
) -> KernelValue {
    let d = (s - t).abs();
    let (value, error_estimate) = if s >= t {
        bessel_product_series(tables, x.upper(), y.upper(), 1, d)
    } else {
        let (v, e) = bessel_product_series(tables, x.lower(), y.lower(), -1, d);
        (-v, e)
    };
    KernelValue {
        value,
        method: KernelMethod::Series,
        error_estimate,
    }
}
