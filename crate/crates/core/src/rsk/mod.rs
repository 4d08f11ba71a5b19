//! The quadrant picture: a rate-one Poisson process Π in R²₊, the
//! Robinson–Schensted shape of Π ∩ □(u, v), and the shape process along an
//! admissible curve.

mod probe;
mod process;
mod tableau;

use std::fmt;
use std::io::{Read, Write};

use rand::Rng;
use rand_distr::{Distribution, Poisson};
use serde::{Deserialize, Serialize};

use crate::{Error, Result, YoungDiagram};

pub use probe::{markov_violation_probe, ProbeReport};
pub use process::{shape_process_along, PoissonRealization, RskMode};
pub use tableau::{lis_length, rs_shape_of, Tableau};

/// A point of the open quadrant.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PlanarPoint {
    pub u: f64,
    pub v: f64,
}

/// A finite point set with pairwise distinct u's and pairwise distinct v's.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct PlanarConfiguration {
    points: Vec<PlanarPoint>,
}

impl PlanarConfiguration {
    pub fn new(points: Vec<PlanarPoint>) -> Result<Self> {
        let c = PlanarConfiguration { points };
        c.validate()?;
        Ok(c)
    }

    pub(crate) fn from_points_unchecked(points: Vec<PlanarPoint>) -> Self {
        PlanarConfiguration { points }
    }

    pub fn points(&self) -> &[PlanarPoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn validate(&self) -> Result<()> {
        if let Some(p) = self.points.iter().find(|p| !(p.u > 0.0 && p.v > 0.0)) {
            return Err(Error::InvalidArgument(format!(
                "point ({}, {}) is not in the open quadrant",
                p.u, p.v
            )));
        }
        for (axis, get) in [("u", (|p: &PlanarPoint| p.u) as fn(&PlanarPoint) -> f64), ("v", |p| p.v)] {
            let mut xs: Vec<f64> = self.points.iter().map(get).collect();
            xs.sort_by(f64::total_cmp);
            if let Some(w) = xs.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::DuplicateCoordinate(format!("two points share {axis} = {}", w[0])));
            }
        }
        Ok(())
    }

    /// Points in □(u, v): a ≤ u and b < v.
    pub fn restrict(&self, u: f64, v: f64) -> PlanarConfiguration {
        PlanarConfiguration {
            points: self
                .points
                .iter()
                .copied()
                .filter(|p| p.u <= u && p.v < v)
                .collect(),
        }
    }

    /// CSV with header `u,v`, shortest round-trip decimal representation.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        for p in &self.points {
            w.serialize(p).map_err(|e| Error::Io(e.into()))?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn read_csv<R: Read>(input: R) -> Result<Self> {
        let mut r = csv::Reader::from_reader(input);
        let points = r
            .deserialize()
            .collect::<std::result::Result<Vec<PlanarPoint>, _>>()
            .map_err(|e| Error::Parse(format!("point CSV: {e}")))?;
        Self::new(points)
    }
}

/// A bijection of {1, …, n}, stored 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &i in &images {
            if i == 0 || i > n || seen[i] {
                return Err(Error::InvalidArgument(format!("{images:?} is not a permutation")));
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (1..=n).collect(),
        }
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    /// Uniformly random permutation of size n.
    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        use rand::seq::SliceRandom;
        let mut images: Vec<usize> = (1..=n).collect();
        images.shuffle(rng);
        Permutation { images }
    }

    /// All n! permutations in lexicographic order.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut cur: Vec<usize> = (1..=n).collect();
        loop {
            out.push(Permutation { images: cur.clone() });
            // Next lexicographic permutation.
            let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
                break;
            };
            let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
            cur.swap(i - 1, j);
            cur[i..].reverse();
        }
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.images.iter().map(|i| i.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// σ with σ(i) = rank of the v-coordinate of the point whose u has rank i.
pub fn permutation_of(pi: &PlanarConfiguration) -> Result<Permutation> {
    pi.validate()?;
    let mut by_u: Vec<PlanarPoint> = pi.points.clone();
    by_u.sort_by(|a, b| a.u.total_cmp(&b.u));
    let mut vs: Vec<f64> = by_u.iter().map(|p| p.v).collect();
    vs.sort_by(f64::total_cmp);
    let images = by_u
        .iter()
        .map(|p| vs.partition_point(|&v| v < p.v) + 1)
        .collect();
    Ok(Permutation { images })
}

/// Common shape of the RS tableau pair of σ.
pub fn rs_shape(sigma: &Permutation) -> YoungDiagram {
    rs_shape_of(sigma.images.iter().map(|&i| i as f64))
}

/// Shape of Π ∩ □(u, v), read off directly from the v's in u order.
pub fn lambda_at(pi: &PlanarConfiguration, u: f64, v: f64) -> YoungDiagram {
    rs_shape_of(sorted_word(&pi.restrict(u, v).points))
}

pub(crate) fn sorted_word(points: &[PlanarPoint]) -> Vec<f64> {
    let mut pts = points.to_vec();
    pts.sort_by(|a, b| a.u.total_cmp(&b.u));
    pts.into_iter().map(|p| p.v).collect()
}

/// Rate-one Poisson points in [0, u] × [0, v].
pub fn sample_poisson_rect<R: Rng + ?Sized>(u: f64, v: f64, rng: &mut R) -> Result<PlanarConfiguration> {
    if !(u > 0.0 && v > 0.0) {
        return Err(Error::InvalidArgument(format!("rectangle ({u}, {v}) must be positive")));
    }
    Ok(PlanarConfiguration {
        points: sample_box(0.0, u, 0.0, v, rng),
    })
}

pub(crate) fn sample_box<R: Rng + ?Sized>(u0: f64, u1: f64, v0: f64, v1: f64, rng: &mut R) -> Vec<PlanarPoint> {
    let area = (u1 - u0) * (v1 - v0);
    let n = poisson(area, rng);
    (0..n)
        .map(|_| PlanarPoint {
            u: u0 + (u1 - u0) * (1.0 - rng.random::<f64>()),
            v: v0 + (v1 - v0) * (1.0 - rng.random::<f64>()),
        })
        .collect()
}

pub(crate) fn poisson<R: Rng + ?Sized>(mean: f64, rng: &mut R) -> usize {
    if mean <= 0.0 {
        return 0;
    }
    Poisson::new(mean).expect("positive Poisson mean").sample(rng) as usize
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::{dim_exact, enumerate_yn};
    use crate::rng::stream_rng;
    use num_bigint::BigUint;
    use std::collections::HashMap;

    fn pts(xs: &[(f64, f64)]) -> PlanarConfiguration {
        PlanarConfiguration::new(xs.iter().map(|&(u, v)| PlanarPoint { u, v }).collect()).unwrap()
    }

    fn yd(rows: &[u32]) -> YoungDiagram {
        YoungDiagram::new(rows.to_vec()).unwrap()
    }

    #[test]
    fn permutation_examples() {
        assert_eq!(permutation_of(&pts(&[(0.3, 0.9)])).unwrap().images(), &[1]);
        assert_eq!(permutation_of(&pts(&[(1.0, 2.0), (2.0, 1.0)])).unwrap().images(), &[2, 1]);
        assert_eq!(
            permutation_of(&pts(&[(1.0, 1.0), (2.0, 3.0), (3.0, 2.0)])).unwrap().images(),
            &[1, 3, 2]
        );
        let dup = PlanarConfiguration::new(vec![PlanarPoint { u: 1.0, v: 1.0 }, PlanarPoint { u: 1.0, v: 2.0 }]);
        assert!(matches!(dup, Err(Error::DuplicateCoordinate(_))));
    }

    #[test]
    fn shape_examples() {
        assert_eq!(rs_shape(&Permutation::identity(5)), yd(&[5]));
        let rev = Permutation::new((1..=5).rev().collect()).unwrap();
        assert_eq!(rs_shape(&rev), YoungDiagram::column(5));
        assert_eq!(rs_shape(&Permutation::new(vec![2, 1, 3]).unwrap()), yd(&[2, 1]));
        assert!(Permutation::new(vec![1, 1]).is_err());
    }

    #[test]
    fn first_row_is_lis_exhaustive() {
        for n in 1..=8 {
            for p in Permutation::all(n) {
                let w: Vec<f64> = p.images().iter().map(|&i| i as f64).collect();
                assert_eq!(rs_shape(&p).first_row() as usize, lis_length(w));
            }
        }
    }

    #[test]
    fn pushforward_is_plancherel() {
        for n in 1..=6 {
            let mut counts: HashMap<YoungDiagram, u64> = HashMap::new();
            for p in Permutation::all(n) {
                *counts.entry(rs_shape(&p)).or_default() += 1;
            }
            for l in enumerate_yn(n).unwrap() {
                let d = dim_exact(&l);
                assert_eq!(BigUint::from(counts[&l]), &d * &d);
            }
        }
    }

    #[test]
    fn lambda_at_examples() {
        let pi = pts(&[(0.5, 0.5), (2.0, 0.1), (0.1, 3.0)]);
        assert_eq!(lambda_at(&pi, 0.05, 0.05), YoungDiagram::empty());
        assert_eq!(lambda_at(&pi, 1.0, 1.0), yd(&[1]));
        assert_eq!(lambda_at(&pi, 3.0, 1.0), yd(&[1, 1]));
    }

    #[test]
    fn csv_round_trip() {
        let mut rng = stream_rng(1, 0);
        let pi = sample_poisson_rect(2.0, 3.0, &mut rng).unwrap();
        let mut buf = Vec::new();
        pi.write_csv(&mut buf).unwrap();
        assert!(buf.starts_with(b"u,v\n"));
        assert_eq!(PlanarConfiguration::read_csv(&buf[..]).unwrap(), pi);
        assert!(PlanarConfiguration::read_csv(&b"u,v\n1,2\n1,3\n"[..]).is_err());
    }

    #[test]
    fn poisson_counts() {
        let mut rng = stream_rng(2, 0);
        let n = 20_000;
        let mut total = 0usize;
        let mut empty = 0usize;
        for _ in 0..n {
            total += sample_poisson_rect(2.0, 3.0, &mut rng).unwrap().len();
            empty += sample_poisson_rect(1.0, 1.0, &mut rng).unwrap().is_empty() as usize;
        }
        let mean = total as f64 / n as f64;
        assert!((mean - 6.0).abs() < 4.0 * (6.0 / n as f64).sqrt());
        let p = empty as f64 / n as f64;
        let e = (-1.0f64).exp();
        assert!((p - e).abs() < 4.0 * (e * (1.0 - e) / n as f64).sqrt());
    }
}
