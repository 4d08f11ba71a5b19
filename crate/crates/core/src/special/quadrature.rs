//! Gauss–Legendre rules and an adaptive integrator built on them.

use std::f64::consts::PI;
use std::sync::OnceLock;

use crate::{Error, Result};

/// Nodes and weights of the n-point Gauss–Legendre rule on [−1, 1].
#[derive(Clone, Debug)]
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussLegendre {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1);
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        for i in 0..n.div_ceil(2) {
            // Tricomi's initial guess, then Newton on P_n.
            let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre(n, x);
            dp = if d != 0.0 { d } else { dp };
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        GaussLegendre { nodes, weights }
    }

    /// ∫_a^b f.
    pub fn integrate<F: FnMut(f64) -> f64>(&self, a: f64, b: f64, mut f: F) -> f64 {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(mid + half * x))
            .sum::<f64>()
            * half
    }

    /// Maps the rule to [a, b], returning (point, weight) pairs.
    pub fn mapped(&self, a: f64, b: f64) -> impl Iterator<Item = (f64, f64)> + '_ {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(move |(&x, &w)| (mid + half * x, w * half))
    }
}

/// (P_n(x), P_n′(x)) by the three-term recurrence.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

fn rule(n: usize) -> &'static GaussLegendre {
    static G15: OnceLock<GaussLegendre> = OnceLock::new();
    static G30: OnceLock<GaussLegendre> = OnceLock::new();
    match n {
        15 => G15.get_or_init(|| GaussLegendre::new(15)),
        30 => G30.get_or_init(|| GaussLegendre::new(30)),
        _ => unreachable!(),
    }
}

/// Value and estimated absolute error of a quadrature.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Integral {
    pub value: f64,
    pub error: f64,
}

/// Adaptive bisection with 15/30-point Gauss–Legendre pairs.
///
/// Each panel's error is the difference of the two rules; panels split until
/// the summed error estimate is below `tol`.
pub fn integrate_adaptive<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> Result<Integral> {
    const MAX_PANELS: usize = 4096;
    let eval = |lo: f64, hi: f64| {
        let coarse = rule(15).integrate(lo, hi, &f);
        let fine = rule(30).integrate(lo, hi, &f);
        (fine, (fine - coarse).abs())
    };
    let width = b - a;
    let mut stack = vec![(a, b)];
    let mut total = Integral {
        value: 0.0,
        error: 0.0,
    };
    let mut panels = 0;
    while let Some((lo, hi)) = stack.pop() {
        let (v, e) = eval(lo, hi);
        let share = tol * (hi - lo) / width;
        if e <= share || panels >= MAX_PANELS {
            total.value += v;
            total.error += e;
            panels += 1;
        } else {
            let mid = 0.5 * (lo + hi);
            stack.push((mid, hi));
            stack.push((lo, mid));
        }
    }
    if total.error > tol {
        return Err(Error::Quadrature(format!(
            "adaptive rule on [{a}, {b}] stopped with error {:e} > {tol:e}",
            total.error
        )));
    }
    Ok(total)
}
