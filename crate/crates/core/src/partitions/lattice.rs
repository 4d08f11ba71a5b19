//! The particle picture L(λ) = {λᵢ − i + 1/2 | i ≥ 1} ⊂ Z′.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::YoungDiagram;
use crate::{Error, HalfInt, Result};

/// L(λ) stored as its symmetric difference with Z′₋: the points of L above
/// zero and the points of Z′₋ missing from L.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointConfiguration {
    pub particles: BTreeSet<HalfInt>,
    pub holes: BTreeSet<HalfInt>,
}

impl PointConfiguration {
    /// Checks sign constraints and the particle/hole balance.
    pub fn validate(&self) -> Result<()> {
        if let Some(p) = self.particles.iter().find(|p| !p.is_positive()) {
            return Err(Error::MalformedConfiguration(format!(
                "particle {p} is not in Z′₊"
            )));
        }
        if let Some(h) = self.holes.iter().find(|h| h.is_positive()) {
            return Err(Error::MalformedConfiguration(format!("hole {h} is not in Z′₋")));
        }
        if self.particles.len() != self.holes.len() {
            return Err(Error::MalformedConfiguration(format!(
                "{} particles but {} holes",
                self.particles.len(),
                self.holes.len()
            )));
        }
        Ok(())
    }

    pub fn contains(&self, x: HalfInt) -> bool {
        if x.is_positive() {
            self.particles.contains(&x)
        } else {
            !self.holes.contains(&x)
        }
    }
}

pub fn point_config(lambda: &YoungDiagram) -> PointConfiguration {
    let ell = lambda.length() as i64;
    let points: BTreeSet<HalfInt> = lambda
        .rows()
        .iter()
        .enumerate()
        .map(|(i, &r)| HalfInt::new(r as i64 - i as i64 - 1))
        .collect();
    let particles = points.iter().copied().filter(|p| p.is_positive()).collect();
    // Rows past ℓ fill everything at or below −ℓ − 1/2.
    let holes = (-ell..0)
        .map(HalfInt::new)
        .filter(|h| !points.contains(h))
        .collect();
    PointConfiguration { particles, holes }
}

pub fn diagram_of(config: &PointConfiguration) -> Result<YoungDiagram> {
    config.validate()?;
    let Some(&floor) = config.holes.first() else {
        return Ok(YoungDiagram::empty());
    };
    // Every point of L at or above the deepest hole, in decreasing order.
    let mut xs: Vec<HalfInt> = config.particles.iter().rev().copied().collect();
    let mut x = HalfInt::new(-1);
    while x >= floor {
        if !config.holes.contains(&x) {
            xs.push(x);
        }
        x = x - 1;
    }
    let rows = xs
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let r = x.lower() + i as i64 + 1;
            u32::try_from(r).map_err(|_| {
                Error::MalformedConfiguration(format!("row {i} would have length {r}"))
            })
        })
        .collect::<Result<Vec<u32>>>()?;
    YoungDiagram::from_padded(rows)
}
