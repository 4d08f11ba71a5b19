use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};

use crate::rng::StreamId;
use crate::{Error, Result, YoungDiagram};

/// A right-continuous Y-valued step function on [initial_time, end_time].
#[derive(Clone, Debug, PartialEq)]
pub struct Trajectory {
    pub initial_time: f64,
    pub end_time: f64,
    pub initial_state: YoungDiagram,
    pub events: Vec<(f64, YoungDiagram)>,
    pub stream: Option<StreamId>,
    /// Set when simultaneous crossings had to be ordered artificially.
    pub degenerate: bool,
}

/// First line of a JSONL trajectory file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrajectoryHeader {
    pub version: String,
    pub curve: String,
    pub seed: Option<u64>,
    pub stream: Option<u64>,
    pub t0: f64,
    pub t1: f64,
    pub initial: YoungDiagram,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub source: Option<String>,
    #[serde(skip_serializing_if = "std::ops::Not::not", default)]
    pub degenerate: bool,
}

#[derive(Serialize, Deserialize)]
struct EventLine {
    t: f64,
    state: YoungDiagram,
}

impl Trajectory {
    pub fn constant(t0: f64, t1: f64, state: YoungDiagram) -> Self {
        Trajectory {
            initial_time: t0,
            end_time: t1,
            initial_state: state,
            events: Vec::new(),
            stream: None,
            degenerate: false,
        }
    }

    /// Λ(t) = Λ(t⁺).
    pub fn state_at(&self, t: f64) -> Result<&YoungDiagram> {
        self.check(t)?;
        let k = self.events.partition_point(|(te, _)| *te <= t);
        Ok(if k == 0 {
            &self.initial_state
        } else {
            &self.events[k - 1].1
        })
    }

    /// Λ(t⁻).
    pub fn left_limit(&self, t: f64) -> Result<&YoungDiagram> {
        self.check(t)?;
        let k = self.events.partition_point(|(te, _)| *te < t);
        Ok(if k == 0 {
            &self.initial_state
        } else {
            &self.events[k - 1].1
        })
    }

    /// Whether t coincides with an event time.
    pub fn is_jump_time(&self, t: f64) -> bool {
        let k = self.events.partition_point(|(te, _)| *te < t);
        self.events.get(k).is_some_and(|(te, _)| *te == t)
    }

    pub fn final_state(&self) -> &YoungDiagram {
        self.events.last().map_or(&self.initial_state, |(_, s)| s)
    }

    fn check(&self, t: f64) -> Result<()> {
        if t.is_nan() || t < self.initial_time || t > self.end_time {
            return Err(Error::OutsideDomain {
                t,
                start: self.initial_time,
                end: self.end_time,
            });
        }
        Ok(())
    }

    /// Event times strictly increase and each event moves one box.
    pub fn validate(&self) -> Result<()> {
        let mut prev_t = f64::NEG_INFINITY;
        let mut prev = &self.initial_state;
        for (t, s) in &self.events {
            if *t <= prev_t || *t < self.initial_time || *t > self.end_time {
                return Err(Error::Contract(format!("event times not increasing at {t}")));
            }
            if prev.added_row(s).is_none() && s.added_row(prev).is_none() {
                return Err(Error::Contract(format!("jump {prev} → {s} at {t} is not one box")));
            }
            prev_t = *t;
            prev = s;
        }
        Ok(())
    }

    pub fn header(&self, curve: &str, source: Option<&str>) -> TrajectoryHeader {
        TrajectoryHeader {
            version: crate::VERSION.to_string(),
            curve: curve.to_string(),
            seed: self.stream.map(|s| s.seed),
            stream: self.stream.map(|s| s.stream),
            t0: self.initial_time,
            t1: self.end_time,
            initial: self.initial_state.clone(),
            source: source.map(str::to_string),
            degenerate: self.degenerate,
        }
    }

    /// Header line, then one `{"t":…,"state":[…]}` line per event.
    pub fn write_jsonl<W: Write>(&self, mut out: W, header: &TrajectoryHeader) -> Result<()> {
        serde_json::to_writer(&mut out, header)?;
        out.write_all(b"\n")?;
        for (t, state) in &self.events {
            serde_json::to_writer(
                &mut out,
                &EventLine {
                    t: *t,
                    state: state.clone(),
                },
            )?;
            out.write_all(b"\n")?;
        }
        Ok(())
    }

    pub fn read_jsonl<R: BufRead>(input: R) -> Result<(TrajectoryHeader, Trajectory)> {
        let mut lines = input.lines();
        let first = lines
            .next()
            .ok_or_else(|| Error::Parse("empty trajectory file".into()))??;
        let header: TrajectoryHeader = serde_json::from_str(&first)?;
        let mut events = Vec::new();
        for line in lines {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let e: EventLine = serde_json::from_str(&line)?;
            events.push((e.t, e.state));
        }
        let traj = Trajectory {
            initial_time: header.t0,
            end_time: header.t1,
            initial_state: header.initial.clone(),
            events,
            stream: header.seed.zip(header.stream).map(|(seed, stream)| StreamId { seed, stream }),
            degenerate: header.degenerate,
        };
        traj.validate()?;
        Ok((header, traj))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn yd(rows: &[u32]) -> YoungDiagram {
        YoungDiagram::new(rows.to_vec()).unwrap()
    }

    fn sample() -> Trajectory {
        Trajectory {
            initial_time: 0.0,
            end_time: 2.0,
            initial_state: yd(&[1]),
            events: vec![(0.5, yd(&[2])), (1.25, yd(&[2, 1]))],
            stream: Some(StreamId { seed: 7, stream: 3 }),
            degenerate: false,
        }
    }

    #[test]
    fn right_continuous() {
        let tr = sample();
        assert_eq!(tr.state_at(0.5).unwrap(), &yd(&[2]));
        assert_eq!(tr.left_limit(0.5).unwrap(), &yd(&[1]));
        assert_eq!(tr.state_at(0.4999).unwrap(), &yd(&[1]));
        assert_eq!(tr.state_at(2.0).unwrap(), &yd(&[2, 1]));
        assert!(tr.state_at(2.5).is_err());
        assert!(tr.is_jump_time(1.25) && !tr.is_jump_time(1.0));
        tr.validate().unwrap();
    }

    #[test]
    fn jsonl_round_trip() {
        let tr = sample();
        let mut buf = Vec::new();
        tr.write_jsonl(&mut buf, &tr.header("hyperbola:theta=1", None)).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.lines().nth(1).unwrap() == r#"{"t":0.5,"state":[2]}"#);
        let (h, back) = Trajectory::read_jsonl(&buf[..]).unwrap();
        assert_eq!(h.curve, "hyperbola:theta=1");
        assert_eq!(back, tr);
    }

    #[test]
    fn rejects_two_box_jump() {
        let mut tr = sample();
        tr.events[1].1 = yd(&[2, 2]);
        assert!(tr.validate().is_err());
    }
}
