use rand::Rng;

use super::{sample_box, sorted_word, PlanarConfiguration, PlanarPoint, Tableau};
use crate::dynamics::{AdmissibleCurve, Trajectory};
use crate::rng::{StreamId, StreamRng};
use crate::{Error, Result};

/// One fixed realization of Π, sampled lazily on growing boxes □(U, V).
///
/// Extending from □(U, V) to □(U′, V′) samples only the new L-shaped region,
/// so every query sees the same points.
#[derive(Debug)]
pub struct PoissonRealization {
    rng: StreamRng,
    stream: Option<StreamId>,
    covered: (f64, f64),
    points: Vec<PlanarPoint>,
    boxes: Vec<[f64; 4]>,
}

impl PoissonRealization {
    pub fn new(stream: StreamId) -> Self {
        let mut r = Self::from_rng(stream.rng());
        r.stream = Some(stream);
        r
    }

    pub fn from_rng(rng: StreamRng) -> Self {
        PoissonRealization {
            rng,
            stream: None,
            covered: (0.0, 0.0),
            points: Vec::new(),
            boxes: Vec::new(),
        }
    }

    /// Makes sure Π is known on □(u, v).
    pub fn ensure(&mut self, u: f64, v: f64) {
        let (cu, cv) = self.covered;
        let (nu, nv) = (cu.max(u), cv.max(v));
        if nu > cu {
            self.add_box(cu, nu, 0.0, nv);
        }
        if nv > cv {
            self.add_box(0.0, cu, cv, nv);
        }
        self.covered = (nu, nv);
    }

    fn add_box(&mut self, u0: f64, u1: f64, v0: f64, v1: f64) {
        if u1 <= u0 || v1 <= v0 {
            return;
        }
        let pts = sample_box(u0, u1, v0, v1, &mut self.rng);
        self.points.extend(pts);
        self.boxes.push([u0, u1, v0, v1]);
    }

    pub fn covered(&self) -> (f64, f64) {
        self.covered
    }

    /// The sub-boxes sampled so far, as [u0, u1, v0, v1].
    pub fn sampled_boxes(&self) -> &[[f64; 4]] {
        &self.boxes
    }

    /// Points known so far.
    pub fn configuration(&self) -> PlanarConfiguration {
        PlanarConfiguration::from_points_unchecked(self.points.clone())
    }

    pub fn rng(&mut self) -> &mut impl Rng {
        &mut self.rng
    }

    /// Shape process along `curve` on [t0, t1], after covering the swept box.
    pub fn shape_process(
        &mut self,
        curve: &AdmissibleCurve,
        t0: f64,
        t1: f64,
        mode: RskMode,
    ) -> Result<Trajectory> {
        let (u1, _) = curve.point(t1)?;
        let (_, v0) = curve.point(t0)?;
        self.ensure(u1, v0);
        let pi = PlanarConfiguration::from_points_unchecked(self.points.clone());
        let mut tr = shape_process_along(&pi, curve, t0, t1, mode)?;
        tr.stream = self.stream;
        Ok(tr)
    }
}

/// How shapes are updated at crossings.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum RskMode {
    /// Insert entering points, delete the maximal entry for exiting points.
    #[default]
    Incremental,
    /// Re-run RS on all points inside the rectangle after every crossing.
    FromScratch,
}

#[derive(Clone, Copy, Debug)]
struct Crossing {
    t: f64,
    point: PlanarPoint,
    enter: bool,
}

/// t ↦ shape of Π ∩ □(u(t), v(t)) on [t0, t1].
///
/// A point (a, b) is inside at t when a ≤ u(t) and b < v(t), which makes the
/// result right-continuous. Entering points always carry the largest u and
/// leaving points the largest v among points inside, so both updates are
/// exact RS operations. Simultaneous crossings are ordered by u, then v, and
/// nudged apart; the trajectory is then flagged as degenerate.
pub fn shape_process_along(
    pi: &PlanarConfiguration,
    curve: &AdmissibleCurve,
    t0: f64,
    t1: f64,
    mode: RskMode,
) -> Result<Trajectory> {
    if t0 >= t1 {
        return Err(Error::InvalidArgument(format!("need t0 < t1, got [{t0}, {t1}]")));
    }
    let (u0, v0) = curve.point(t0)?;
    let (uend, _) = curve.point(t1)?;
    let mut inside = Vec::new();
    let mut crossings = Vec::new();
    for &p in pi.points() {
        if p.v >= v0 || p.u > uend {
            continue;
        }
        let exit = curve.time_at_v(p.v).unwrap_or(f64::INFINITY);
        let enter = if p.u <= u0 {
            inside.push(p);
            t0
        } else {
            curve.time_at_u(p.u).unwrap_or(f64::INFINITY).max(t0.next_up())
        };
        if enter >= exit {
            if enter == t0 {
                inside.pop();
            }
            continue;
        }
        if enter > t0 && enter <= t1 {
            crossings.push(Crossing { t: enter, point: p, enter: true });
        }
        if exit <= t1 {
            crossings.push(Crossing { t: exit, point: p, enter: false });
        }
    }
    crossings.sort_by(|a, b| {
        a.t.total_cmp(&b.t)
            .then(a.point.u.total_cmp(&b.point.u))
            .then(a.point.v.total_cmp(&b.point.v))
    });
    let mut degenerate = false;
    for i in 1..crossings.len() {
        if crossings[i].t <= crossings[i - 1].t {
            crossings[i].t = crossings[i - 1].t.next_up();
            degenerate = true;
        }
    }
    if crossings.last().is_some_and(|c| c.t > t1) {
        return Err(Error::Contract("degenerate crossings pushed past the window end".into()));
    }

    let mut tableau = Tableau::new();
    for v in sorted_word(&inside) {
        tableau.insert(v);
    }
    let initial_state = tableau.shape();
    let mut events = Vec::with_capacity(crossings.len());
    for c in crossings {
        match mode {
            RskMode::Incremental => {
                if c.enter {
                    tableau.insert(c.point.v);
                } else {
                    let removed = tableau.remove_max();
                    if removed != Some(c.point.v) {
                        return Err(Error::Contract(format!(
                            "exiting point v = {} was not the maximal entry ({removed:?})",
                            c.point.v
                        )));
                    }
                }
                events.push((c.t, tableau.shape()));
            }
            RskMode::FromScratch => {
                if c.enter {
                    inside.push(c.point);
                } else {
                    inside.retain(|p| *p != c.point);
                }
                events.push((c.t, super::rs_shape_of(sorted_word(&inside))));
            }
        }
    }
    Ok(Trajectory {
        initial_time: t0,
        end_time: t1,
        initial_state,
        events,
        stream: None,
        degenerate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rsk::lambda_at;
    use crate::YoungDiagram;

    fn pts(xs: &[(f64, f64)]) -> PlanarConfiguration {
        PlanarConfiguration::new(xs.iter().map(|&(u, v)| PlanarPoint { u, v }).collect()).unwrap()
    }

    #[test]
    fn empty_region_gives_constant_trajectory() {
        let pi = pts(&[(5.0, 5.0), (0.01, 9.0)]);
        let c = AdmissibleCurve::hyperbola(1.0).unwrap();
        let tr = shape_process_along(&pi, &c, -1.0, 1.0, RskMode::Incremental).unwrap();
        assert!(tr.events.is_empty());
        assert_eq!(tr.initial_state, YoungDiagram::empty());
    }

    #[test]
    fn horizontal_sweep_over_one_point() {
        let pi = pts(&[(1.5, 0.5)]);
        let c = AdmissibleCurve::horizontal(1.0, 1.0, 2.0).unwrap();
        let (a, b) = c.domain();
        let tr = shape_process_along(&pi, &c, a, b, RskMode::Incremental).unwrap();
        assert_eq!(tr.events.len(), 1);
        assert_eq!(tr.events[0].1.size(), 1);
    }

    #[test]
    fn matches_pointwise_shapes_and_modes_agree() {
        let mut real = PoissonRealization::new(StreamId::new(11, 0));
        let c = AdmissibleCurve::line(6.0).unwrap();
        let inc = real.shape_process(&c, -1.5, 1.5, RskMode::Incremental).unwrap();
        let scratch = real.shape_process(&c, -1.5, 1.5, RskMode::FromScratch).unwrap();
        assert_eq!(inc.events, scratch.events);
        assert!(!inc.events.is_empty());
        inc.validate().unwrap();
        let pi = real.configuration();
        for i in 0..=300 {
            let t = -1.5 + 3.0 * i as f64 / 300.0;
            if inc.is_jump_time(t) {
                continue;
            }
            let (u, v) = c.point(t).unwrap();
            assert_eq!(inc.state_at(t).unwrap(), &lambda_at(&pi, u, v), "t = {t}");
        }
    }

    #[test]
    fn monotone_pieces() {
        let mut real = PoissonRealization::new(StreamId::new(5, 1));
        let c: AdmissibleCurve = "piecewise:[hline:v=3,u=[0.5,3];vline:u=3,v=[3,0.5]]".parse().unwrap();
        let (a, b) = c.domain();
        let tr = real.shape_process(&c, a, b, RskMode::Incremental).unwrap();
        let mut prev = tr.initial_state.size();
        for (t, s) in &tr.events {
            let up = s.size() > prev;
            assert_eq!(up, *t < 0.0, "t = {t}");
            prev = s.size();
        }
    }

    #[test]
    fn lazy_extension_is_consistent() {
        let mut real = PoissonRealization::new(StreamId::new(3, 0));
        real.ensure(1.0, 1.0);
        let before = real.configuration();
        real.ensure(2.0, 1.5);
        let after = real.configuration();
        assert_eq!(&after.points()[..before.len()], before.points());
        assert_eq!(real.covered(), (2.0, 1.5));
        assert_eq!(real.sampled_boxes().len(), 3);
    }

    #[test]
    fn simultaneous_crossings_are_flagged() {
        // On u + v = 2 the right edge reaches u = 1.5 exactly when the top
        // edge drops to v = 0.5.
        let pi = pts(&[(1.5, 0.3), (0.2, 0.5)]);
        let c = AdmissibleCurve::line(2.0).unwrap();
        let tr = shape_process_along(&pi, &c, -2.0, 2.0, RskMode::Incremental).unwrap();
        tr.validate().unwrap();
        assert!(tr.degenerate);
    }
}
