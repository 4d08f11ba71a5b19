//! Admissible curves (u(t), v(t)) and their interior-time parametrization.
//!
//! Built-in pieces are stored against the unshifted interior time
//! τ = ½ ln(u/v); the curve's public time is t = τ + shift, so re-anchoring
//! only moves `shift`.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::{Error, Result};

pub const DEFAULT_GRID: usize = 10_000;
const JOINT_TOL: f64 = 1e-12;

/// A curve piece given by explicit functions of its own time.
pub trait ExplicitPiece: Send + Sync {
    fn u(&self, t: f64) -> f64;
    fn v(&self, t: f64) -> f64;
    fn du(&self, t: f64) -> f64;
    fn dv(&self, t: f64) -> f64;
    /// Suprema of −v̇/v and u̇·v over [t0, t1], if known in closed form.
    fn rate_bounds(&self, _t0: f64, _t1: f64) -> Option<(f64, f64)> {
        None
    }
    fn describe(&self) -> String {
        "explicit".to_string()
    }
}

type RealFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// An [`ExplicitPiece`] assembled from closures.
#[derive(Clone)]
pub struct FnPiece {
    pub u: RealFn,
    pub v: RealFn,
    pub du: RealFn,
    pub dv: RealFn,
}

impl FnPiece {
    pub fn new<U, V, DU, DV>(u: U, v: V, du: DU, dv: DV) -> Self
    where
        U: Fn(f64) -> f64 + Send + Sync + 'static,
        V: Fn(f64) -> f64 + Send + Sync + 'static,
        DU: Fn(f64) -> f64 + Send + Sync + 'static,
        DV: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        FnPiece {
            u: Arc::new(u),
            v: Arc::new(v),
            du: Arc::new(du),
            dv: Arc::new(dv),
        }
    }
}

impl ExplicitPiece for FnPiece {
    fn u(&self, t: f64) -> f64 {
        (self.u)(t)
    }
    fn v(&self, t: f64) -> f64 {
        (self.v)(t)
    }
    fn du(&self, t: f64) -> f64 {
        (self.du)(t)
    }
    fn dv(&self, t: f64) -> f64 {
        (self.dv)(t)
    }
}

#[derive(Clone)]
pub enum Piece {
    /// uv = θ.
    Hyperbola { theta: f64 },
    /// u = const, v decreasing.
    Vertical { u: f64 },
    /// v = const, u increasing.
    Horizontal { v: f64 },
    /// u + v = sum.
    Line { sum: f64 },
    Explicit(Arc<dyn ExplicitPiece>),
}

impl fmt::Debug for Piece {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Piece::Hyperbola { theta } => write!(f, "Hyperbola({theta})"),
            Piece::Vertical { u } => write!(f, "Vertical(u={u})"),
            Piece::Horizontal { v } => write!(f, "Horizontal(v={v})"),
            Piece::Line { sum } => write!(f, "Line(u+v={sum})"),
            Piece::Explicit(p) => write!(f, "Explicit({})", p.describe()),
        }
    }
}

fn logistic(z: f64) -> f64 {
    if z >= 0.0 {
        1.0 / (1.0 + (-z).exp())
    } else {
        let e = z.exp();
        e / (1.0 + e)
    }
}

impl Piece {
    /// (u, v, u̇, v̇) at unshifted time τ.
    fn eval(&self, tau: f64) -> (f64, f64, f64, f64) {
        match *self {
            Piece::Hyperbola { theta } => {
                let r = theta.sqrt();
                let (u, v) = (r * tau.exp(), r * (-tau).exp());
                (u, v, u, -v)
            }
            Piece::Vertical { u } => {
                let v = u * (-2.0 * tau).exp();
                (u, v, 0.0, -2.0 * v)
            }
            Piece::Horizontal { v } => {
                let u = v * (2.0 * tau).exp();
                (u, v, 2.0 * u, 0.0)
            }
            Piece::Line { sum } => {
                let s = logistic(2.0 * tau);
                let c = logistic(-2.0 * tau);
                let d = 2.0 * sum * s * c;
                (sum * s, sum * c, d, -d)
            }
            Piece::Explicit(ref p) => (p.u(tau), p.v(tau), p.du(tau), p.dv(tau)),
        }
    }

    /// Suprema of −v̇/v and u̇v over [τ0, τ1] for built-in pieces.
    fn rate_bounds(&self, t0: f64, t1: f64) -> Option<(f64, f64)> {
        match *self {
            Piece::Hyperbola { theta } => Some((1.0, theta)),
            Piece::Vertical { .. } => Some((2.0, 0.0)),
            Piece::Horizontal { v } => Some((0.0, 2.0 * v * self.eval(t1).0)),
            Piece::Line { sum } => {
                let s0 = logistic(2.0 * t0);
                let s1 = logistic(2.0 * t1);
                // u̇v = 2S²·s(1 − s)², maximal at s = 1/3.
                let g = |s: f64| s * (1.0 - s) * (1.0 - s);
                let gmax = if s0 <= 1.0 / 3.0 && 1.0 / 3.0 <= s1 {
                    g(1.0 / 3.0)
                } else {
                    g(s0).max(g(s1))
                };
                Some((2.0 * s1, 2.0 * sum * sum * gmax))
            }
            Piece::Explicit(ref p) => p.rate_bounds(t0, t1),
        }
    }

    /// Unshifted time at which u first reaches `a`, if inside the piece.
    fn time_at_u(&self, a: f64) -> Option<f64> {
        match *self {
            Piece::Hyperbola { theta } => Some((a / theta.sqrt()).ln()),
            Piece::Vertical { .. } => None,
            Piece::Horizontal { v } => Some(0.5 * (a / v).ln()),
            Piece::Line { sum } => (a < sum).then(|| 0.5 * (a / (sum - a)).ln()),
            Piece::Explicit(_) => None,
        }
    }

    /// Unshifted time at which v first drops to `b`.
    fn time_at_v(&self, b: f64) -> Option<f64> {
        match *self {
            Piece::Hyperbola { theta } => Some((theta.sqrt() / b).ln()),
            Piece::Vertical { u } => Some(0.5 * (u / b).ln()),
            Piece::Horizontal { .. } => None,
            Piece::Line { sum } => (b < sum).then(|| 0.5 * ((sum - b) / b).ln()),
            Piece::Explicit(_) => None,
        }
    }

    fn reversed(&self) -> Piece {
        match self {
            Piece::Hyperbola { theta } => Piece::Hyperbola { theta: *theta },
            Piece::Vertical { u } => Piece::Horizontal { v: *u },
            Piece::Horizontal { v } => Piece::Vertical { u: *v },
            Piece::Line { sum } => Piece::Line { sum: *sum },
            Piece::Explicit(p) => Piece::Explicit(Arc::new(Reversed(p.clone()))),
        }
    }
}

struct Reversed(Arc<dyn ExplicitPiece>);

impl ExplicitPiece for Reversed {
    fn u(&self, t: f64) -> f64 {
        self.0.v(-t)
    }
    fn v(&self, t: f64) -> f64 {
        self.0.u(-t)
    }
    fn du(&self, t: f64) -> f64 {
        -self.0.dv(-t)
    }
    fn dv(&self, t: f64) -> f64 {
        -self.0.du(-t)
    }
    fn describe(&self) -> String {
        format!("reversed({})", self.0.describe())
    }
}

/// A custom-time curve re-expressed in interior time by inverting
/// τ(s) = ½ ln(u(s)/v(s)) numerically.
struct Reparametrized {
    inner: Arc<dyn ExplicitPiece>,
    s0: f64,
    s1: f64,
}

impl Reparametrized {
    fn tau(&self, s: f64) -> f64 {
        0.5 * (self.inner.u(s) / self.inner.v(s)).ln()
    }

    fn custom_time(&self, tau: f64) -> f64 {
        let (mut lo, mut hi) = (self.s0, self.s1);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if self.tau(mid) < tau {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    fn speed(&self, s: f64) -> f64 {
        let p = &self.inner;
        0.5 * (p.du(s) / p.u(s) - p.dv(s) / p.v(s))
    }
}

impl ExplicitPiece for Reparametrized {
    fn u(&self, t: f64) -> f64 {
        self.inner.u(self.custom_time(t))
    }
    fn v(&self, t: f64) -> f64 {
        self.inner.v(self.custom_time(t))
    }
    fn du(&self, t: f64) -> f64 {
        let s = self.custom_time(t);
        self.inner.du(s) / self.speed(s)
    }
    fn dv(&self, t: f64) -> f64 {
        let s = self.custom_time(t);
        self.inner.dv(s) / self.speed(s)
    }
    fn describe(&self) -> String {
        format!("interior({})", self.inner.describe())
    }
}

#[derive(Clone, Debug)]
struct Segment {
    piece: Piece,
    start: f64,
    end: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parametrization {
    Interior,
    Custom,
}

/// A southeast path (u(t), v(t)) in the open quadrant.
#[derive(Clone, Debug)]
pub struct AdmissibleCurve {
    segments: Vec<Segment>,
    shift: f64,
    tag: Parametrization,
    descriptor: Option<String>,
}

impl AdmissibleCurve {
    pub fn hyperbola(theta: f64) -> Result<Self> {
        positive("theta", theta)?;
        Ok(Self::single(Piece::Hyperbola { theta }, f64::NEG_INFINITY, f64::INFINITY))
    }

    /// u + v = sum over its whole extent.
    pub fn line(sum: f64) -> Result<Self> {
        positive("u+v", sum)?;
        Ok(Self::single(Piece::Line { sum }, f64::NEG_INFINITY, f64::INFINITY))
    }

    /// u = `u`, v running from `v_from` down to `v_to`.
    pub fn vertical(u: f64, v_from: f64, v_to: f64) -> Result<Self> {
        positive("u", u)?;
        positive("v", v_to)?;
        if v_from <= v_to {
            return Err(Error::NotAdmissible(format!(
                "vertical piece must move down: v from {v_from} to {v_to}"
            )));
        }
        Ok(Self::single(
            Piece::Vertical { u },
            0.5 * (u / v_from).ln(),
            0.5 * (u / v_to).ln(),
        ))
    }

    /// v = `v`, u running from `u_from` up to `u_to`.
    pub fn horizontal(v: f64, u_from: f64, u_to: f64) -> Result<Self> {
        positive("v", v)?;
        positive("u", u_from)?;
        if u_from >= u_to {
            return Err(Error::NotAdmissible(format!(
                "horizontal piece must move right: u from {u_from} to {u_to}"
            )));
        }
        Ok(Self::single(
            Piece::Horizontal { v },
            0.5 * (u_from / v).ln(),
            0.5 * (u_to / v).ln(),
        ))
    }

    /// Curve given in interior time by explicit functions on [t0, t1].
    pub fn explicit(piece: Arc<dyn ExplicitPiece>, t0: f64, t1: f64) -> Result<Self> {
        check_range(t0, t1)?;
        let c = Self::single(Piece::Explicit(piece), t0, t1);
        c.validate(DEFAULT_GRID)?;
        Ok(c)
    }

    /// Curve in an arbitrary increasing time s ∈ [s0, s1]; see
    /// [`AdmissibleCurve::interior_time`].
    pub fn custom(piece: Arc<dyn ExplicitPiece>, s0: f64, s1: f64) -> Result<Self> {
        check_range(s0, s1)?;
        let mut c = Self::single(Piece::Explicit(piece), s0, s1);
        c.tag = Parametrization::Custom;
        c.validate(DEFAULT_GRID)?;
        Ok(c)
    }

    /// Joins curves end to end; joints must match within 1e-12 relative.
    pub fn piecewise(parts: Vec<AdmissibleCurve>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::NotAdmissible("empty piecewise curve".into()));
        }
        let mut segments: Vec<Segment> = Vec::new();
        for part in &parts {
            if part.tag != Parametrization::Interior || part.shift != 0.0 {
                return Err(Error::NotAdmissible(
                    "piecewise parts must be unshifted interior-time curves".into(),
                ));
            }
            for seg in &part.segments {
                if let Some(prev) = segments.last() {
                    let (u0, v0, _, _) = prev.piece.eval(prev.end);
                    let (u1, v1, _, _) = seg.piece.eval(seg.start);
                    let gap = ((u0 - u1) / u0).abs().max(((v0 - v1) / v0).abs());
                    if !prev.end.is_finite() || gap > JOINT_TOL {
                        return Err(Error::NotAdmissible(format!(
                            "pieces do not join: ({u0}, {v0}) vs ({u1}, {v1})"
                        )));
                    }
                }
                segments.push(seg.clone());
            }
        }
        // Interior time is ½ ln(u/v), so matching points means matching times.
        for i in 1..segments.len() {
            segments[i].start = segments[i - 1].end;
        }
        let descriptor = parts
            .iter()
            .map(|p| p.descriptor.clone())
            .collect::<Option<Vec<_>>>()
            .map(|d| format!("piecewise:[{}]", d.join(";")));
        Ok(AdmissibleCurve {
            segments,
            shift: 0.0,
            tag: Parametrization::Interior,
            descriptor,
        })
    }

    fn single(piece: Piece, start: f64, end: f64) -> Self {
        let descriptor = describe_segment(&piece, start, end);
        AdmissibleCurve {
            segments: vec![Segment { piece, start, end }],
            shift: 0.0,
            tag: Parametrization::Interior,
            descriptor,
        }
    }

    pub fn parametrization(&self) -> Parametrization {
        self.tag
    }

    /// Descriptor string, when the curve was built from one.
    pub fn descriptor(&self) -> Option<&str> {
        self.descriptor.as_deref()
    }

    /// [t_begin, t_end]; infinite ends for unbounded curves.
    pub fn domain(&self) -> (f64, f64) {
        (
            self.segments[0].start + self.shift,
            self.segments.last().unwrap().end + self.shift,
        )
    }

    /// Interior-time constant: t = ½ ln(u/v) + shift.
    pub fn shift(&self) -> f64 {
        self.shift
    }

    pub fn check_time(&self, t: f64) -> Result<()> {
        let (start, end) = self.domain();
        if t.is_nan() || t < start || t > end {
            return Err(Error::OutsideDomain { t, start, end });
        }
        Ok(())
    }

    fn locate(&self, tau: f64) -> &Segment {
        let idx = self.segments.partition_point(|s| s.end < tau);
        &self.segments[idx.min(self.segments.len() - 1)]
    }

    /// (u, v, u̇, v̇) at time t.
    pub fn state(&self, t: f64) -> Result<(f64, f64, f64, f64)> {
        self.check_time(t)?;
        let tau = t - self.shift;
        Ok(self.locate(tau).piece.eval(tau))
    }

    pub fn point(&self, t: f64) -> Result<(f64, f64)> {
        let (u, v, _, _) = self.state(t)?;
        Ok((u, v))
    }

    /// θ(t) = u(t)·v(t).
    pub fn theta_at(&self, t: f64) -> Result<f64> {
        let (u, v) = self.point(t)?;
        Ok(u * v)
    }

    /// Re-anchors so that the curve point (u, v) has t = 0.
    pub fn with_anchor(&self, u: f64, v: f64) -> Result<Self> {
        if self.tag != Parametrization::Interior {
            return self.interior_time()?.with_anchor(u, v);
        }
        let tau = 0.5 * (u / v).ln();
        let (pu, pv, _, _) = self.locate(tau).piece.eval(tau);
        if ((pu - u) / u).abs() > 1e-9 || ((pv - v) / v).abs() > 1e-9 {
            return Err(Error::InvalidArgument(format!("anchor ({u}, {v}) is not on the curve")));
        }
        let mut c = self.clone();
        c.shift = -tau;
        Ok(c)
    }

    /// Reparametrizes by interior time t = ½(ln u − ln v) + const, with the
    /// constant keeping the current anchor (zero shift: t = 0 where u = v).
    pub fn interior_time(&self) -> Result<Self> {
        match self.tag {
            Parametrization::Interior => Ok(self.clone()),
            Parametrization::Custom => {
                let seg = &self.segments[0];
                let Piece::Explicit(inner) = &seg.piece else {
                    unreachable!("custom curves hold one explicit piece")
                };
                let r = Reparametrized {
                    inner: inner.clone(),
                    s0: seg.start,
                    s1: seg.end,
                };
                let (t0, t1) = (r.tau(seg.start), r.tau(seg.end));
                Ok(Self::single(Piece::Explicit(Arc::new(r)), t0, t1))
            }
        }
    }

    /// The transposed curve: û(t) = v(−t), v̂(t) = u(−t).
    pub fn reverse(&self) -> Self {
        let segments = self
            .segments
            .iter()
            .rev()
            .map(|s| Segment {
                piece: s.piece.reversed(),
                start: -s.end,
                end: -s.start,
            })
            .collect();
        let descriptor = self.descriptor.as_ref().and_then(|_| {
            // Built-in descriptors stay expressible after reversal.
            let parts: Option<Vec<String>> = self
                .segments
                .iter()
                .rev()
                .map(|s| describe_segment(&s.piece.reversed(), -s.end, -s.start))
                .collect();
            parts.map(|p| {
                if p.len() == 1 {
                    p.into_iter().next().unwrap()
                } else {
                    format!("piecewise:[{}]", p.join(";"))
                }
            })
        });
        AdmissibleCurve {
            segments,
            shift: -self.shift,
            tag: self.tag,
            descriptor,
        }
    }

    /// Suprema of −v̇/v and u̇v over [t0, t1].
    pub fn rate_bounds(&self, t0: f64, t1: f64) -> Result<(f64, f64)> {
        self.check_time(t0)?;
        self.check_time(t1)?;
        if !(t0.is_finite() && t1.is_finite()) {
            return Err(Error::UnboundedRates { t0, t1 });
        }
        let (a, b) = (t0 - self.shift, t1 - self.shift);
        let mut down: f64 = 0.0;
        let mut up: f64 = 0.0;
        for seg in &self.segments {
            let lo = seg.start.max(a);
            let hi = seg.end.min(b);
            if lo > hi {
                continue;
            }
            let bounds = seg.piece.rate_bounds(lo, hi).or_else(|| {
                // In interior time −v̇/v ≤ 2 and u̇v ≤ 2uv ≤ 2u(hi)v(lo).
                (self.tag == Parametrization::Interior).then(|| {
                    let (uh, _, _, _) = seg.piece.eval(hi);
                    let (_, vl, _, _) = seg.piece.eval(lo);
                    (2.0, 2.0 * uh * vl)
                })
            });
            let Some((d, u)) = bounds else {
                return Err(Error::UnboundedRates { t0, t1 });
            };
            if !(d.is_finite() && u.is_finite()) {
                return Err(Error::UnboundedRates { t0, t1 });
            }
            down = down.max(d);
            up = up.max(u);
        }
        Ok((down, up))
    }

    /// First time t with u(t) ≥ a (curve start if already there), or None.
    pub fn time_at_u(&self, a: f64) -> Option<f64> {
        self.first_time(|seg, tau| seg.piece.eval(tau).0 >= a, |p| p.time_at_u(a))
    }

    /// First time t with v(t) ≤ b, or None.
    pub fn time_at_v(&self, b: f64) -> Option<f64> {
        self.first_time(|seg, tau| seg.piece.eval(tau).1 <= b, |p| p.time_at_v(b))
    }

    fn first_time<P, C>(&self, reached: P, closed: C) -> Option<f64>
    where
        P: Fn(&Segment, f64) -> bool,
        C: Fn(&Piece) -> Option<f64>,
    {
        for seg in &self.segments {
            if seg.start.is_finite() && reached(seg, seg.start) {
                return Some(seg.start + self.shift);
            }
            let end_reached = if seg.end.is_finite() {
                reached(seg, seg.end)
            } else {
                true
            };
            if !end_reached {
                continue;
            }
            let tau = match closed(&seg.piece) {
                Some(t) => t.clamp(seg.start, seg.end),
                None => {
                    if !(seg.start.is_finite() && seg.end.is_finite()) {
                        return None;
                    }
                    bisect(seg.start, seg.end, |t| reached(seg, t))
                }
            };
            if tau.is_finite() {
                return Some(tau + self.shift);
            }
        }
        None
    }

    /// Checks positivity, monotonicity and that u̇, v̇ never both vanish,
    /// on `grid` points (infinite ends are clipped to a window of width 40).
    pub fn validate(&self, grid: usize) -> Result<()> {
        let (start, end) = self.domain();
        let lo = if start.is_finite() { start } else if end.is_finite() { end - 40.0 } else { -20.0 };
        let hi = if end.is_finite() { end } else { lo + 40.0 };
        for i in 0..grid {
            let t = lo + (hi - lo) * i as f64 / (grid - 1).max(1) as f64;
            let (u, v, du, dv) = self.state(t)?;
            let bad = if !(u > 0.0 && v > 0.0) {
                Some("leaves the open quadrant")
            } else if du < 0.0 || dv > 0.0 {
                Some("is not southeast")
            } else if du == 0.0 && dv == 0.0 {
                Some("stalls")
            } else {
                None
            };
            if let Some(what) = bad {
                return Err(Error::NotAdmissible(format!("curve {what} at t = {t}")));
            }
        }
        Ok(())
    }
}

fn bisect<F: Fn(f64) -> bool>(mut lo: f64, mut hi: f64, reached: F) -> f64 {
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if reached(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

fn positive(name: &str, x: f64) -> Result<()> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(Error::NotAdmissible(format!("{name} must be positive, got {x}")))
    }
}

fn check_range(t0: f64, t1: f64) -> Result<()> {
    if t0 < t1 && t0.is_finite() && t1.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("bad time range [{t0}, {t1}]")))
    }
}

fn describe_segment(piece: &Piece, start: f64, end: f64) -> Option<String> {
    let (u0, v0, _, _) = if start.is_finite() { piece.eval(start) } else { (0.0, 0.0, 0.0, 0.0) };
    let (u1, v1, _, _) = if end.is_finite() { piece.eval(end) } else { (0.0, 0.0, 0.0, 0.0) };
    let full = !start.is_finite() && !end.is_finite();
    match *piece {
        Piece::Hyperbola { theta } if full => Some(format!("hyperbola:theta={theta}")),
        Piece::Line { sum } if full => Some(format!("line:u+v={sum}")),
        Piece::Hyperbola { theta } => Some(format!("hyperbola:theta={theta},u=[{u0},{u1}]")),
        Piece::Line { sum } => Some(format!("line:u+v={sum},u=[{u0},{u1}]")),
        Piece::Vertical { u } => Some(format!("vline:u={u},v=[{v0},{v1}]")),
        Piece::Horizontal { v } => Some(format!("hline:v={v},u=[{u0},{u1}]")),
        Piece::Explicit(_) => None,
    }
}

impl fmt::Display for AdmissibleCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.descriptor {
            Some(d) if self.shift == 0.0 => f.write_str(d),
            Some(d) => write!(f, "{d}|shift={}", self.shift),
            None => f.write_str("explicit"),
        }
    }
}

/// Parses `hyperbola:theta=4`, `line:u+v=2`, `vline:u=2,v=[3,0.1]`,
/// `hline:v=1,u=[0.1,3]` and `piecewise:[...;...]`. Hyperbolas and lines take
/// an optional `u=[a,b]` range; a trailing `|shift=c` sets the time shift.
impl FromStr for AdmissibleCurve {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some((body, shift)) = s.rsplit_once("|shift=") {
            let mut c: AdmissibleCurve = body.parse()?;
            c.shift = parse_num(shift)?;
            return Ok(c);
        }
        let (kind, args) = s
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("curve descriptor {s:?} has no kind")))?;
        let mut c = match kind.trim() {
            "piecewise" => {
                let inner = args
                    .trim()
                    .strip_prefix('[')
                    .and_then(|a| a.strip_suffix(']'))
                    .ok_or_else(|| Error::Parse(format!("piecewise needs [...]: {args:?}")))?;
                let parts = split_top(inner, ';')
                    .into_iter()
                    .map(|p| p.parse())
                    .collect::<Result<Vec<AdmissibleCurve>>>()?;
                return AdmissibleCurve::piecewise(parts);
            }
            "hyperbola" => {
                let kv = parse_kv(args)?;
                let theta = get_num(&kv, "theta")?;
                match kv.iter().find(|(k, _)| k == "u") {
                    Some((_, r)) => {
                        let (a, b) = parse_pair(r)?;
                        positive("theta", theta)?;
                        positive("u", a)?;
                        if a >= b {
                            return Err(Error::NotAdmissible("u range must increase".into()));
                        }
                        let r = theta.sqrt();
                        Self::single(Piece::Hyperbola { theta }, (a / r).ln(), (b / r).ln())
                    }
                    None => Self::hyperbola(theta)?,
                }
            }
            "line" => {
                let kv = parse_kv(args)?;
                let sum = get_num(&kv, "u+v")?;
                match kv.iter().find(|(k, _)| k == "u") {
                    Some((_, r)) => {
                        let (a, b) = parse_pair(r)?;
                        positive("u+v", sum)?;
                        if !(0.0 < a && a < b && b < sum) {
                            return Err(Error::NotAdmissible(format!(
                                "u range [{a}, {b}] must lie inside (0, {sum})"
                            )));
                        }
                        let tau = |u: f64| 0.5 * (u / (sum - u)).ln();
                        Self::single(Piece::Line { sum }, tau(a), tau(b))
                    }
                    None => Self::line(sum)?,
                }
            }
            "vline" => {
                let kv = parse_kv(args)?;
                let (a, b) = parse_pair(get(&kv, "v")?)?;
                Self::vertical(get_num(&kv, "u")?, a, b)?
            }
            "hline" => {
                let kv = parse_kv(args)?;
                let (a, b) = parse_pair(get(&kv, "u")?)?;
                Self::horizontal(get_num(&kv, "v")?, a, b)?
            }
            other => return Err(Error::Parse(format!("unknown curve kind {other:?}"))),
        };
        c.descriptor = Some(s.to_string());
        Ok(c)
    }
}

/// Splits on `sep` outside brackets.
fn split_top(s: &str, sep: char) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut last = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '[' => depth += 1,
            ']' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push(&s[last..i]);
                last = i + 1;
            }
            _ => {}
        }
    }
    out.push(&s[last..]);
    out
}

fn parse_kv(args: &str) -> Result<Vec<(String, String)>> {
    split_top(args, ',')
        .into_iter()
        .filter(|p| !p.trim().is_empty())
        .map(|p| {
            let (k, v) = p
                .split_once('=')
                .filter(|(k, _)| !k.is_empty())
                .ok_or_else(|| Error::Parse(format!("expected key=value, got {p:?}")))?;
            // "u+v=2" splits at the first '='.
            Ok((k.trim().to_string(), v.trim().to_string()))
        })
        .collect()
}

fn get<'a>(kv: &'a [(String, String)], key: &str) -> Result<&'a str> {
    kv.iter()
        .find(|(k, _)| k == key)
        .map(|(_, v)| v.as_str())
        .ok_or_else(|| Error::Parse(format!("missing {key}")))
}

fn get_num(kv: &[(String, String)], key: &str) -> Result<f64> {
    parse_num(get(kv, key)?)
}

fn parse_num(s: &str) -> Result<f64> {
    s.trim()
        .parse()
        .map_err(|_| Error::Parse(format!("not a number: {s:?}")))
}

fn parse_pair(s: &str) -> Result<(f64, f64)> {
    let inner = s
        .trim()
        .strip_prefix('[')
        .and_then(|a| a.strip_suffix(']'))
        .ok_or_else(|| Error::Parse(format!("expected [a,b], got {s:?}")))?;
    let (a, b) = inner
        .split_once(',')
        .ok_or_else(|| Error::Parse(format!("expected [a,b], got {s:?}")))?;
    Ok((parse_num(a)?, parse_num(b)?))
}
