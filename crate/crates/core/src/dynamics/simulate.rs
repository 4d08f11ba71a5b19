use rand::Rng;
use rand_distr::{Distribution, Exp};
use rayon::prelude::*;

use super::{jump_rates, AdmissibleCurve, Trajectory};
use crate::partitions::{down_transitions, up_transitions, Corner};
use crate::rng::StreamId;
use crate::rsk::{poisson, rs_shape_of};
use crate::{Error, Result, YoungDiagram};

/// Longest stretch of time covered by one set of rate bounds.
const WINDOW: f64 = 0.5;

#[derive(Clone, Debug, PartialEq)]
pub enum InitialCondition {
    /// Λ(t0) ~ M_{θ(t0)}.
    DrawFromMTheta,
    Given(YoungDiagram),
}

/// A draw from M_θ: n ~ Poisson(θ), then the RS shape of n i.i.d. uniform
/// reals, which has the law of a uniform random permutation.
pub fn sample_m_theta<R: Rng + ?Sized>(theta: f64, rng: &mut R) -> Result<YoungDiagram> {
    if !(theta > 0.0 && theta.is_finite()) {
        return Err(Error::InvalidArgument(format!("θ must be positive, got {theta}")));
    }
    let n = poisson(theta, rng);
    let word: Vec<f64> = (0..n).map(|_| rng.random::<f64>()).collect();
    Ok(rs_shape_of(word))
}

fn pick(corners: &[Corner], x: f64) -> usize {
    let mut acc = 0.0;
    for c in corners {
        acc += c.probability;
        if x < acc {
            return c.row;
        }
    }
    corners.last().expect("a diagram always has a corner").row
}

/// One trajectory of Λ_C on [t0, t1] by thinning.
///
/// Between events the intensity n·(−v̇/v) + u̇·v is dominated by n·D + U,
/// where D and U bound the two curve factors on the current window; the
/// bound is refreshed after every event and at every window boundary.
pub fn simulate<R: Rng + ?Sized>(
    curve: &AdmissibleCurve,
    t0: f64,
    t1: f64,
    initial: &InitialCondition,
    rng: &mut R,
) -> Result<Trajectory> {
    if !(t0 < t1) {
        return Err(Error::InvalidArgument(format!("need t0 < t1, got [{t0}, {t1}]")));
    }
    curve.check_time(t0)?;
    curve.check_time(t1)?;
    let mut state = match initial {
        InitialCondition::DrawFromMTheta => sample_m_theta(curve.theta_at(t0)?, rng)?,
        InitialCondition::Given(l) => l.clone(),
    };
    let mut tr = Trajectory::constant(t0, t1, state.clone());
    let mut t = t0;
    while t < t1 {
        let w_end = (t + WINDOW).min(t1);
        let (d, u) = curve.rate_bounds(t, w_end)?;
        loop {
            let n = state.size();
            let bound = n as f64 * d + u;
            if bound <= 0.0 {
                t = w_end;
                break;
            }
            t += Exp::new(bound).expect("positive rate").sample(rng);
            if t >= w_end {
                t = w_end;
                break;
            }
            let rates = jump_rates(n, curve, t)?;
            let x = rng.random::<f64>() * bound;
            let next = if x < rates.down_rate {
                let row = pick(&down_transitions(&state), rng.random());
                state.with_box_removed(row)?
            } else if x < rates.total() {
                let row = pick(&up_transitions(&state), rng.random());
                state.with_box_added(row)?
            } else {
                continue;
            };
            state = next;
            tr.events.push((t, state.clone()));
        }
    }
    Ok(tr)
}

/// `count` independent trajectories; trajectory i uses stream
/// `first_stream + i` of `seed`, whatever the thread count.
pub fn simulate_batch(
    curve: &AdmissibleCurve,
    t0: f64,
    t1: f64,
    initial: &InitialCondition,
    seed: u64,
    first_stream: u64,
    count: usize,
) -> Result<Vec<Trajectory>> {
    (0..count as u64)
        .into_par_iter()
        .map(|i| {
            let id = StreamId::new(seed, first_stream + i);
            let mut tr = simulate(curve, t0, t1, initial, &mut id.rng())?;
            tr.stream = Some(id);
            Ok(tr)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::stream_rng;

    fn yd(rows: &[u32]) -> YoungDiagram {
        YoungDiagram::new(rows.to_vec()).unwrap()
    }

    #[test]
    fn pure_death_empties() {
        let c = AdmissibleCurve::vertical(1.0, 1.0, 1e-6).unwrap();
        let (a, b) = c.domain();
        let mut rng = stream_rng(3, 0);
        for _ in 0..50 {
            let tr = simulate(&c, a, b, &InitialCondition::Given(yd(&[3, 2, 1])), &mut rng).unwrap();
            tr.validate().unwrap();
            assert_eq!(tr.final_state(), &YoungDiagram::empty());
            assert!(tr.events.windows(2).all(|w| w[1].1.size() < w[0].1.size()));
        }
    }

    #[test]
    fn empty_state_rate() {
        let mut rng = stream_rng(4, 0);
        let n = 20_000;
        let mut empty = 0;
        for _ in 0..n {
            empty += sample_m_theta(1.0, &mut rng).unwrap().is_empty() as usize;
        }
        let e = (-1.0f64).exp();
        let p = empty as f64 / n as f64;
        assert!((p - e).abs() < 4.0 * (e * (1.0 - e) / n as f64).sqrt());
    }

    #[test]
    fn stationary_jump_count() {
        // E[#jumps on [0, T]] = T·E[n + θ] = 2θT.
        let c = AdmissibleCurve::hyperbola(2.0).unwrap();
        let n = 4000;
        let mut total = 0usize;
        let mut rng = stream_rng(5, 0);
        for _ in 0..n {
            total += simulate(&c, 0.0, 1.5, &InitialCondition::DrawFromMTheta, &mut rng)
                .unwrap()
                .events
                .len();
        }
        let mean = total as f64 / n as f64;
        // Var(#jumps) ≤ E[#jumps] + Var(∫ rate), generously 4·mean here.
        assert!((mean - 6.0).abs() < 4.0 * (4.0 * 6.0 / n as f64).sqrt(), "{mean}");
    }

    #[test]
    fn batches_do_not_depend_on_threads() {
        let c = AdmissibleCurve::line(2.0).unwrap();
        let a = simulate_batch(&c, -0.5, 0.5, &InitialCondition::DrawFromMTheta, 9, 0, 64).unwrap();
        let pool = rayon::ThreadPoolBuilder::new().num_threads(3).build().unwrap();
        let b = pool
            .install(|| simulate_batch(&c, -0.5, 0.5, &InitialCondition::DrawFromMTheta, 9, 0, 64))
            .unwrap();
        assert_eq!(a, b);
    }
}
