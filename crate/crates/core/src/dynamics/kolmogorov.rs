//! Transition probabilities on {|λ| ≤ n_cap} from the forward equation.

use std::collections::HashMap;

use nalgebra::DMatrix;

use super::{jump_rates, AdmissibleCurve};
use crate::partitions::{diagrams_up_to, down_transitions, up_transitions};
use crate::{Error, Result, YoungDiagram};

pub const MAX_CAP: usize = 12;
/// Rows starting at |λ| ≤ n_cap/2 must lose less than this to the cap.
pub const DEFAULT_DEFECT_TOLERANCE: f64 = 1e-4;

/// P(t, λ; s, κ) for |λ|, |κ| ≤ n_cap, rows indexed by λ.
///
/// Up jumps out of the top layer go to an absorbing overflow state; the
/// mass it collects from each row is reported as that row's defect.
#[derive(Clone, Debug)]
pub struct TransitionMatrix {
    pub states: Vec<YoungDiagram>,
    pub matrix: DMatrix<f64>,
    pub defect: Vec<f64>,
}

impl TransitionMatrix {
    pub fn index_of(&self, l: &YoungDiagram) -> Option<usize> {
        self.states.iter().position(|s| s == l)
    }

    pub fn max_defect(&self) -> f64 {
        self.defect.iter().copied().fold(0.0, f64::max)
    }
}

pub fn transition_matrix_small(
    curve: &AdmissibleCurve,
    t: f64,
    s: f64,
    n_cap: usize,
) -> Result<TransitionMatrix> {
    transition_matrix_with_tolerance(curve, t, s, n_cap, DEFAULT_DEFECT_TOLERANCE)
}

pub fn transition_matrix_with_tolerance(
    curve: &AdmissibleCurve,
    t: f64,
    s: f64,
    n_cap: usize,
    tolerance: f64,
) -> Result<TransitionMatrix> {
    if !(s > t) {
        return Err(Error::InvalidArgument(format!("need s > t, got t = {t}, s = {s}")));
    }
    if n_cap > MAX_CAP {
        return Err(Error::OutOfRange(format!("n_cap {n_cap} exceeds {MAX_CAP}")));
    }
    curve.check_time(t)?;
    curve.check_time(s)?;
    let states = diagrams_up_to(n_cap, MAX_CAP)?;
    let m = states.len();
    let index: HashMap<&YoungDiagram, usize> = states.iter().enumerate().map(|(i, l)| (l, i)).collect();
    // Sparse structure: (from, to, p) for down and up moves; to = m is overflow.
    let mut down = Vec::new();
    let mut up = Vec::new();
    for (i, l) in states.iter().enumerate() {
        for c in down_transitions(l) {
            down.push((i, index[&l.with_box_removed(c.row)?], c.probability));
        }
        for c in up_transitions(l) {
            let j = if l.size() < n_cap { index[&l.with_box_added(c.row)?] } else { m };
            up.push((i, j, c.probability));
        }
    }
    let size: Vec<f64> = states.iter().map(|l| l.size() as f64).collect();

    // dP/dτ = P·Q(τ); rows of P are distributions over states plus overflow.
    let deriv = |tau: f64, p: &DMatrix<f64>| -> Result<DMatrix<f64>> {
        let r1 = jump_rates(1, curve, tau)?;
        let (d1, u) = (r1.down_rate, r1.up_rate);
        let mut out = DMatrix::zeros(m, m + 1);
        for &(i, j, prob) in &down {
            let rate = size[i] * d1 * prob;
            for r in 0..m {
                let f = p[(r, i)] * rate;
                out[(r, i)] -= f;
                out[(r, j)] += f;
            }
        }
        for &(i, j, prob) in &up {
            let rate = u * prob;
            for r in 0..m {
                let f = p[(r, i)] * rate;
                out[(r, i)] -= f;
                out[(r, j)] += f;
            }
        }
        Ok(out)
    };

    let (dmax, umax) = curve.rate_bounds(t, s)?;
    let lambda = n_cap as f64 * dmax + umax;
    let steps = ((s - t) * lambda / 0.05).ceil().max(1.0) as usize;
    let h = (s - t) / steps as f64;
    let mut p = DMatrix::zeros(m, m + 1);
    for i in 0..m {
        p[(i, i)] = 1.0;
    }
    let mut tau = t;
    for _ in 0..steps {
        let k1 = deriv(tau, &p)?;
        let k2 = deriv(tau + h / 2.0, &(&p + &k1 * (h / 2.0)))?;
        let k3 = deriv(tau + h / 2.0, &(&p + &k2 * (h / 2.0)))?;
        let k4 = deriv((tau + h).min(s), &(&p + &k3 * h))?;
        p += (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (h / 6.0);
        tau += h;
    }
    let defect: Vec<f64> = (0..m).map(|r| p[(r, m)].max(0.0)).collect();
    for (r, l) in states.iter().enumerate() {
        if 2 * l.size() <= n_cap && defect[r] > tolerance {
            return Err(Error::TruncationDefect {
                defect: defect[r],
                tolerance,
            });
        }
    }
    Ok(TransitionMatrix {
        states,
        matrix: p.columns(0, m).into_owned(),
        defect,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::poissonized_weight;

    #[test]
    fn short_time_is_identity() {
        let c = AdmissibleCurve::hyperbola(1.0).unwrap();
        let tm = transition_matrix_small(&c, 0.0, 1e-7, 6).unwrap();
        let m = tm.states.len();
        let id = DMatrix::<f64>::identity(m, m);
        assert!((&tm.matrix - id).abs().max() < 1e-5);
    }

    #[test]
    fn rows_are_stochastic_up_to_defect() {
        let c = AdmissibleCurve::line(2.0).unwrap();
        let tm = transition_matrix_small(&c, -0.5, 0.5, 10).unwrap();
        for r in 0..tm.states.len() {
            let sum: f64 = tm.matrix.row(r).sum();
            assert!((sum + tm.defect[r] - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn stationary_measure_is_fixed() {
        let c = AdmissibleCurve::hyperbola(1.0).unwrap();
        let tm = transition_matrix_small(&c, 0.0, 1.0, 12).unwrap();
        let w: Vec<f64> = tm.states.iter().map(|l| poissonized_weight(1.0, l).unwrap()).collect();
        for k in 0..tm.states.len() {
            let pushed: f64 = (0..tm.states.len()).map(|i| w[i] * tm.matrix[(i, k)]).sum();
            assert!((pushed - w[k]).abs() < 1e-6, "{}", tm.states[k]);
        }
    }

    #[test]
    fn guards() {
        let c = AdmissibleCurve::hyperbola(1.0).unwrap();
        assert!(transition_matrix_small(&c, 0.0, 1.0, 13).is_err());
        assert!(transition_matrix_small(&c, 1.0, 0.5, 4).is_err());
        let big = AdmissibleCurve::hyperbola(30.0).unwrap();
        assert!(matches!(
            transition_matrix_small(&big, 0.0, 2.0, 8),
            Err(Error::TruncationDefect { .. })
        ));
    }
}
