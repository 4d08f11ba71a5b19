//! Integer-order Bessel functions J_m(z) for real z ≥ 0.
//!
//! Small arguments use the power series; otherwise Miller's backward
//! recurrence normalized by J₀ + 2ΣJ₂ₖ = 1.

use statrs::function::gamma::ln_gamma;

use crate::{Error, Result};

pub const MAX_ORDER: i64 = 10_000;
pub const MAX_ARGUMENT: f64 = 1_000.0;

const SERIES_CUTOFF: f64 = 2.0;
const RESCALE_ABOVE: f64 = 1e250;
const LN_NEGLIGIBLE: f64 = -69.1; // ln 1e-30

/// ln of the bound |J_k(z)| ≤ (z/2)^k / k!, valid for k ≥ 0.
pub fn bessel_ln_envelope(k: u64, z: f64) -> f64 {
    if z == 0.0 {
        return if k == 0 { 0.0 } else { f64::NEG_INFINITY };
    }
    k as f64 * (z / 2.0).ln() - ln_gamma(k as f64 + 1.0)
}

/// J₀(z), …, J_M(z) at one argument.
#[derive(Clone, Debug)]
pub struct BesselTable {
    z: f64,
    values: Vec<f64>,
}

impl BesselTable {
    /// Table through order `max_order`.
    pub fn new(z: f64, max_order: usize) -> Self {
        assert!(z >= 0.0 && z.is_finite(), "Bessel argument must be finite and ≥ 0");
        let values = if z == 0.0 {
            let mut v = vec![0.0; max_order + 1];
            v[0] = 1.0;
            v
        } else if z < SERIES_CUTOFF {
            (0..=max_order as u64).map(|m| series(m, z)).collect()
        } else {
            miller(z, max_order)
        };
        BesselTable { z, values }
    }

    /// Table long enough that every order past the end is below 1e-30.
    pub fn covering(z: f64) -> Self {
        Self::new(z, negligible_order(z))
    }

    pub fn argument(&self) -> f64 {
        self.z
    }

    pub fn max_order(&self) -> usize {
        self.values.len() - 1
    }

    /// J_m(z); orders past the table are treated as zero.
    pub fn get(&self, m: i64) -> f64 {
        let k = m.unsigned_abs() as usize;
        let v = self.values.get(k).copied().unwrap_or(0.0);
        if m < 0 && k % 2 == 1 {
            -v
        } else {
            v
        }
    }
}

/// Smallest order k ≥ z/2 with (z/2)^k/k! < 1e-30.
pub fn negligible_order(z: f64) -> usize {
    let mut k = (z / 2.0).ceil() as u64;
    while bessel_ln_envelope(k, z) > LN_NEGLIGIBLE {
        k += 1;
    }
    k as usize
}

/// J_m(z) for |m| ≤ 10⁴ and 0 ≤ z ≤ 10³.
pub fn bessel_j(m: i64, z: f64) -> Result<f64> {
    if m.abs() > MAX_ORDER {
        return Err(Error::OutOfRange(format!("Bessel order {m} exceeds {MAX_ORDER}")));
    }
    if !(0.0..=MAX_ARGUMENT).contains(&z) {
        return Err(Error::OutOfRange(format!(
            "Bessel argument {z} outside [0, {MAX_ARGUMENT}]"
        )));
    }
    Ok(BesselTable::new(z, m.unsigned_abs() as usize).get(m))
}

/// Direct power series Σ (−1)^k (z/2)^{2k+m} / (k!(k+m)!).
///
/// Accurate to a few ulps for z < 2; loses roughly e^z/J_m(z) in relative
/// accuracy for larger z, so it serves as an oracle only at moderate z.
pub fn bessel_j_series(m: i64, z: f64) -> f64 {
    let k = m.unsigned_abs();
    let v = series(k, z);
    if m < 0 && k % 2 == 1 {
        -v
    } else {
        v
    }
}

fn series(m: u64, z: f64) -> f64 {
    if z == 0.0 {
        return if m == 0 { 1.0 } else { 0.0 };
    }
    let q = -(z * z) / 4.0;
    let mut term = bessel_ln_envelope(m, z).exp();
    if term == 0.0 {
        return 0.0;
    }
    let mut sum = term;
    for k in 1.. {
        term *= q / (k as f64 * (k as u64 + m) as f64);
        sum += term;
        if term.abs() <= 1e-17 * sum.abs() || term == 0.0 {
            break;
        }
    }
    sum
}

fn miller(z: f64, max_order: usize) -> Vec<f64> {
    let top = (max_order as f64).max(z);
    let mut start = top as usize + 20 + (40.0 * top).sqrt() as usize;
    start += start % 2;
    let mut values = vec![0.0; max_order + 1];
    let mut j_next = 0.0; // J_{k+1}
    let mut j = 1e-30; // J_k
    let mut norm = 0.0;
    let two_over_z = 2.0 / z;
    for k in (1..=start).rev() {
        let j_prev = k as f64 * two_over_z * j - j_next;
        j_next = j;
        j = j_prev;
        let order = k - 1;
        if order <= max_order {
            values[order] = j;
        }
        if order == 0 {
            norm += j;
        } else if order % 2 == 0 {
            norm += 2.0 * j;
        }
        if j.abs() > RESCALE_ABOVE {
            let s = 1.0 / RESCALE_ABOVE;
            j *= s;
            j_next *= s;
            norm *= s;
            for v in values[order..].iter_mut() {
                *v *= s;
            }
        }
    }
    for v in values.iter_mut() {
        *v /= norm;
    }
    values
}
