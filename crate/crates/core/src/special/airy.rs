//! Airy function Ai and its derivative.
//!
//! |x| ≤ 8: Maclaurin series Ai = c₁f − c₂g in double-double arithmetic, since
//! in plain f64 the cancellation near |x| = 8 costs six digits.
//! |x| > 8: the standard large-argument expansions, truncated at the
//! smallest term.

use std::f64::consts::PI;

use super::dd::Dd;
use crate::{Error, Result};

pub const MAX_ABS_ARGUMENT: f64 = 20.0;
const SERIES_RADIUS: f64 = 8.0;

/// Ai(0) = 3^{−2/3}/Γ(2/3).
const C1: Dd = Dd::new(0.3550280538878172, 2.05233632436212e-17);
/// −Ai′(0) = 3^{−1/3}/Γ(1/3).
const C2: Dd = Dd::new(0.2588194037928068, -2.522243111610832e-17);

/// Ai(x) for |x| ≤ 20.
pub fn airy(x: f64) -> Result<f64> {
    check(x)?;
    Ok(airy_pair(x).0)
}

/// Ai′(x) for |x| ≤ 20.
pub fn airy_prime(x: f64) -> Result<f64> {
    check(x)?;
    Ok(airy_pair(x).1)
}

fn check(x: f64) -> Result<()> {
    if x.abs() > MAX_ABS_ARGUMENT || x.is_nan() {
        return Err(Error::OutOfRange(format!(
            "Airy argument {x} outside [-{MAX_ABS_ARGUMENT}, {MAX_ABS_ARGUMENT}]"
        )));
    }
    Ok(())
}

/// (Ai(x), Ai′(x)) with no range restriction.
pub fn airy_pair(x: f64) -> (f64, f64) {
    if x.abs() <= SERIES_RADIUS {
        maclaurin(x)
    } else if x > 0.0 {
        asymptotic_positive(x)
    } else {
        asymptotic_negative(-x)
    }
}

pub(crate) fn maclaurin(x: f64) -> (f64, f64) {
    let xd = Dd::from_f64(x);
    let x3 = xd * xd * xd;
    let mut f_term = Dd::from_f64(1.0);
    let mut g_term = xd;
    let mut fp_term = (xd * xd).div_f64(2.0);
    let mut gp_term = Dd::from_f64(1.0);
    let (mut f, mut g, mut fp, mut gp) = (f_term, g_term, fp_term, gp_term);
    for k in 1..200u32 {
        let k3 = 3.0 * k as f64;
        f_term = (f_term * x3).div_f64(k3 * (k3 - 1.0));
        g_term = (g_term * x3).div_f64((k3 + 1.0) * k3);
        gp_term = (gp_term * x3).div_f64(k3 * (k3 - 2.0));
        f = f + f_term;
        g = g + g_term;
        gp = gp + gp_term;
        if k >= 2 {
            fp_term = (fp_term * x3).div_f64(3.0 * (k3 - 1.0) * (k as f64 - 1.0));
            fp = fp + fp_term;
        }
        let small = 1e-34;
        if f_term.abs().hi < small
            && g_term.abs().hi < small
            && fp_term.abs().hi < small
            && gp_term.abs().hi < small
            && k >= 2
        {
            break;
        }
    }
    let ai = C1 * f - C2 * g;
    let aip = C1 * fp - C2 * gp;
    (ai.to_f64(), aip.to_f64())
}

/// Coefficients u_k of the large-argument expansions, k = 0..n.
fn u_coeffs(n: usize) -> Vec<f64> {
    let mut u = vec![1.0; n + 1];
    for k in 1..=n {
        let kf = k as f64;
        u[k] = u[k - 1] * (6.0 * kf - 5.0) * (6.0 * kf - 3.0) * (6.0 * kf - 1.0)
            / (216.0 * kf * (2.0 * kf - 1.0));
    }
    u
}

fn v_coeff(u: &[f64], k: usize) -> f64 {
    if k == 0 {
        1.0
    } else {
        let kf = k as f64;
        -(6.0 * kf + 1.0) / (6.0 * kf - 1.0) * u[k]
    }
}

const N_COEFF: usize = 60;

/// Sums Σ sign(k) c_k / ζ^k over k in `ks`, stopping once terms grow.
fn truncated<F: Fn(usize) -> f64>(zeta: f64, ks: impl Iterator<Item = usize>, c: F) -> f64 {
    let mut sum = 0.0;
    let mut last = f64::INFINITY;
    for k in ks {
        let term = c(k) / zeta.powi(k as i32);
        if term.abs() > last {
            break;
        }
        sum += term;
        last = term.abs();
    }
    sum
}

fn asymptotic_positive(x: f64) -> (f64, f64) {
    let u = u_coeffs(N_COEFF);
    let zeta = 2.0 / 3.0 * x.powf(1.5);
    let sgn = |k: usize| if k % 2 == 0 { 1.0 } else { -1.0 };
    let su = truncated(zeta, 0..=N_COEFF, |k| sgn(k) * u[k]);
    let sv = truncated(zeta, 0..=N_COEFF, |k| sgn(k) * v_coeff(&u, k));
    let pref = (-zeta).exp() / (2.0 * PI.sqrt());
    let q = x.powf(0.25);
    (pref / q * su, -pref * q * sv)
}

fn asymptotic_negative(x: f64) -> (f64, f64) {
    let u = u_coeffs(N_COEFF);
    let zeta = 2.0 / 3.0 * x.powf(1.5);
    let sgn = |k: usize| if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
    let even = |c: &dyn Fn(usize) -> f64| truncated(zeta, (0..=N_COEFF).step_by(2), c);
    let odd = |c: &dyn Fn(usize) -> f64| truncated(zeta, (1..=N_COEFF).step_by(2), c);
    let pu = even(&|k| sgn(k) * u[k]);
    let qu = odd(&|k| sgn(k) * u[k]);
    let pv = even(&|k| sgn(k) * v_coeff(&u, k));
    let qv = odd(&|k| sgn(k) * v_coeff(&u, k));
    let phase = zeta - PI / 4.0;
    let (s, c) = phase.sin_cos();
    let q = x.powf(0.25);
    let ai = (c * pu + s * qu) / (PI.sqrt() * q);
    let aip = q / PI.sqrt() * (s * pv - c * qv);
    (ai, aip)
}

#[cfg(test)]
mod tests {
    use super::*;

    // 20-digit reference values of (Ai, Ai′).
    const REFERENCE: [(f64, f64, f64); 13] = [
        (-20.0, -0.176_406_127_077_984_689_59, 0.892_862_856_736_471_238_4),
        (-8.5, -0.330_290_237_630_208_879_02, -0.032_313_348_284_639_135_873),
        (-8.0, -0.052_705_050_356_386_202_622, 0.935_560_938_198_306_551_03),
        (-5.0, 0.350_761_009_024_114_319_79, 0.327_192_818_554_443_136_79),
        (-1.0, 0.535_560_883_292_352_118_8, -0.010_160_567_116_645_209_395),
        (0.0, 0.355_028_053_887_817_239_26, -0.258_819_403_792_806_798_41),
        (1.0, 0.135_292_416_312_881_415_52, -0.159_147_441_296_793_212_79),
        (2.5, 0.015_725_923_380_470_489_995, -0.026_250_881_035_903_230_365),
        (5.0, 1.083_444_281_360_744_173_5e-4, -2.474_138_908_684_624_76e-4),
        (8.0, 4.692_207_616_099_231_625_6e-8, -1.341_439_297_906_786_574_3e-7),
        (8.5, 1.099_700_975_519_550_650_9e-8, -3.237_725_440_447_602_255_9e-8),
        (12.0, 1.393_184_688_875_360_839e-13, -4.854_736_554_985_308_463e-13),
        (20.0, 1.691_672_868_670_540_313_6e-27, -7.586_391_625_748_354_960_5e-27),
    ];

    #[test]
    fn reference_values() {
        for (x, ai, aip) in REFERENCE {
            assert!((airy(x).unwrap() - ai).abs() < 1e-12, "Ai({x})");
            assert!((airy_prime(x).unwrap() - aip).abs() < 1e-12, "Ai'({x})");
        }
    }

    #[test]
    fn range_guard() {
        assert!(airy(20.5).is_err());
        assert!(airy_prime(-21.0).is_err());
    }

    #[test]
    fn series_and_asymptotics_overlap() {
        for x in [-8.0, -7.5, 7.5, 8.0, 8.5, -8.5, 9.0] {
            let (a, ap) = maclaurin(x);
            let (b, bp) = if x > 0.0 {
                asymptotic_positive(x)
            } else {
                asymptotic_negative(-x)
            };
            assert!((a - b).abs() < 1e-11, "x = {x}: {a} vs {b}");
            assert!((ap - bp).abs() < 1e-11, "x = {x}: {ap} vs {bp}");
        }
    }

    #[test]
    fn positive_and_decreasing_on_right() {
        let mut prev = f64::INFINITY;
        for i in 0..=200 {
            let v = airy(i as f64 * 0.1).unwrap();
            assert!(v > 0.0 && v < prev);
            prev = v;
        }
    }

    #[test]
    fn satisfies_airy_equation() {
        let h = 1e-3;
        for i in -50..=50 {
            let x = i as f64 * 0.1;
            let d2 = (airy(x + h).unwrap() - 2.0 * airy(x).unwrap() + airy(x - h).unwrap()) / (h * h);
            assert!((d2 - x * airy(x).unwrap()).abs() < 1e-6, "x = {x}");
        }
    }
}
