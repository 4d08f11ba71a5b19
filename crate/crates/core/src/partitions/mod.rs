//! Exact combinatorics of Young diagrams.

mod dimension;
mod enumerate;
mod lattice;
mod measure;
mod transitions;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::{Error, HalfInt, Result};

pub use dimension::{dim, dim_exact, ln_factorial, log_dim, DimensionValue, EXACT_THRESHOLD};
pub use enumerate::{
    diagrams_up_to, enumerate_yn, enumerate_yn_capped, partition_count, DEFAULT_ENUMERATION_CAP,
};
pub use lattice::{diagram_of, point_config, PointConfiguration};
pub use measure::{
    plancherel_weight, plancherel_weight_exact, poissonized_truncation_size, poissonized_weight,
};
pub use transitions::{
    down_transitions, p_down, p_down_exact, p_up, p_up_exact, up_transitions, Corner,
};

/// A partition λ₁ ≥ λ₂ ≥ … ≥ λ_ℓ > 0, stored without trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct YoungDiagram {
    rows: Vec<u32>,
}

impl YoungDiagram {
    pub fn empty() -> Self {
        YoungDiagram { rows: Vec::new() }
    }

    /// Validates that `rows` is weakly decreasing and strictly positive.
    pub fn new(rows: Vec<u32>) -> Result<Self> {
        if rows.contains(&0) {
            return Err(Error::InvalidArgument(format!(
                "row lengths must be positive: {rows:?}"
            )));
        }
        if rows.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidArgument(format!(
                "row lengths must be weakly decreasing: {rows:?}"
            )));
        }
        Ok(YoungDiagram { rows })
    }

    /// Like [`YoungDiagram::new`] but drops trailing zero rows first.
    pub fn from_padded(mut rows: Vec<u32>) -> Result<Self> {
        while rows.last() == Some(&0) {
            rows.pop();
        }
        Self::new(rows)
    }

    /// A single row of `n` boxes.
    pub fn row(n: u32) -> Self {
        if n == 0 {
            Self::empty()
        } else {
            YoungDiagram { rows: vec![n] }
        }
    }

    /// A single column of `n` boxes.
    pub fn column(n: u32) -> Self {
        YoungDiagram {
            rows: vec![1; n as usize],
        }
    }

    pub(crate) fn from_rows_unchecked(rows: Vec<u32>) -> Self {
        debug_assert!(Self::new(rows.clone()).is_ok());
        YoungDiagram { rows }
    }

    pub fn rows(&self) -> &[u32] {
        &self.rows
    }

    /// Number of boxes |λ|.
    pub fn size(&self) -> usize {
        self.rows.iter().map(|&r| r as usize).sum()
    }

    /// Number of nonzero rows ℓ(λ).
    pub fn length(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// λ₁, zero for the empty diagram.
    pub fn first_row(&self) -> u32 {
        self.rows.first().copied().unwrap_or(0)
    }

    /// Row `i` (0-based), zero past the last row.
    pub fn row_len(&self, i: usize) -> u32 {
        self.rows.get(i).copied().unwrap_or(0)
    }

    /// Rows where a box can be added, top to bottom.
    pub fn addable_rows(&self) -> Vec<usize> {
        (0..=self.rows.len())
            .filter(|&i| i == 0 || self.rows[i - 1] > self.row_len(i))
            .collect()
    }

    /// Rows whose last box can be removed, top to bottom.
    pub fn removable_rows(&self) -> Vec<usize> {
        (0..self.rows.len())
            .filter(|&i| self.rows[i] > self.row_len(i + 1))
            .collect()
    }

    /// Adds a box at the end of row `i`.
    pub fn with_box_added(&self, i: usize) -> Result<Self> {
        if !(i == 0 || (i <= self.rows.len() && self.rows[i - 1] > self.row_len(i))) {
            return Err(Error::InvalidArgument(format!(
                "row {i} of {self} is not addable"
            )));
        }
        let mut rows = self.rows.clone();
        if i == rows.len() {
            rows.push(1);
        } else {
            rows[i] += 1;
        }
        Ok(YoungDiagram { rows })
    }

    /// Removes the last box of row `i`.
    pub fn with_box_removed(&self, i: usize) -> Result<Self> {
        if i >= self.rows.len() || self.rows[i] <= self.row_len(i + 1) {
            return Err(Error::InvalidArgument(format!(
                "row {i} of {self} is not removable"
            )));
        }
        let mut rows = self.rows.clone();
        rows[i] -= 1;
        if rows[i] == 0 {
            rows.pop();
        }
        Ok(YoungDiagram { rows })
    }

    /// If `other` is `self` with one box added, returns the row of that box.
    pub fn added_row(&self, other: &YoungDiagram) -> Option<usize> {
        if other.size() != self.size() + 1 || other.length() > self.length() + 1 {
            return None;
        }
        let mut diff = None;
        for i in 0..other.length() {
            match other.rows[i] as i64 - self.row_len(i) as i64 {
                0 => {}
                1 if diff.is_none() => diff = Some(i),
                _ => return None,
            }
        }
        diff
    }

    /// The transposed diagram λ′.
    pub fn conjugate(&self) -> Self {
        let cols = self.first_row() as usize;
        let rows = (0..cols)
            .map(|j| self.rows.iter().filter(|&&r| r as usize > j).count() as u32)
            .collect();
        YoungDiagram { rows }
    }

    /// Whether `x` belongs to L(λ) = {λᵢ − i + 1/2}.
    pub fn contains_point(&self, x: HalfInt) -> bool {
        let ell = self.rows.len() as i64;
        // Below −ℓ − 1/2 every point comes from the zero rows.
        if x.twice() <= -(2 * ell + 1) {
            return true;
        }
        // λᵢ − i is strictly decreasing; scan the first ℓ rows.
        let target = x.lower();
        for (i, &r) in self.rows.iter().enumerate() {
            let v = r as i64 - (i as i64 + 1);
            if v == target {
                return true;
            }
            if v < target {
                return false;
            }
        }
        false
    }
}

impl TryFrom<Vec<u32>> for YoungDiagram {
    type Error = Error;
    fn try_from(rows: Vec<u32>) -> Result<Self> {
        YoungDiagram::new(rows)
    }
}

impl From<YoungDiagram> for Vec<u32> {
    fn from(d: YoungDiagram) -> Vec<u32> {
        d.rows
    }
}

impl fmt::Display for YoungDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{r}")?;
        }
        write!(f, ")")
    }
}

/// Parses `(3,1)`, `3,1` or `3 1`; `()` and the empty string give ∅.
impl std::str::FromStr for YoungDiagram {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim().trim_start_matches('(').trim_end_matches(')');
        let rows = body
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|p| !p.is_empty())
            .map(|p| p.parse::<u32>().map_err(|_| Error::Parse(format!("bad row {p:?} in {s:?}"))))
            .collect::<Result<Vec<_>>>()?;
        YoungDiagram::new(rows)
    }
}

impl fmt::Debug for YoungDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn yd(rows: &[u32]) -> YoungDiagram {
        YoungDiagram::new(rows.to_vec()).unwrap()
    }

    #[test]
    fn validation() {
        assert!(YoungDiagram::new(vec![1, 2]).is_err());
        assert!(YoungDiagram::new(vec![2, 0]).is_err());
        assert_eq!(YoungDiagram::from_padded(vec![2, 1, 0, 0]).unwrap(), yd(&[2, 1]));
        assert_eq!(yd(&[4, 2, 1]).size(), 7);
        assert_eq!(yd(&[4, 2, 1]).length(), 3);
    }

    #[test]
    fn corners() {
        let l = yd(&[2, 1]);
        assert_eq!(l.addable_rows(), vec![0, 1, 2]);
        assert_eq!(l.removable_rows(), vec![0, 1]);
        assert_eq!(yd(&[2, 2]).addable_rows(), vec![0, 2]);
        assert_eq!(YoungDiagram::empty().addable_rows(), vec![0]);
        assert!(YoungDiagram::empty().removable_rows().is_empty());
        assert_eq!(l.with_box_added(1).unwrap(), yd(&[2, 2]));
        assert!(yd(&[2, 2]).with_box_added(1).is_err());
        assert_eq!(yd(&[1]).with_box_removed(0).unwrap(), YoungDiagram::empty());
    }

    #[test]
    fn added_row_detection() {
        assert_eq!(yd(&[2, 1]).added_row(&yd(&[2, 1, 1])), Some(2));
        assert_eq!(yd(&[2, 1]).added_row(&yd(&[3, 1])), Some(0));
        assert_eq!(yd(&[2, 1]).added_row(&yd(&[4])), None);
        assert_eq!(yd(&[2, 1]).added_row(&yd(&[1, 1, 1, 1])), None);
    }

    #[test]
    fn conjugate_and_points() {
        assert_eq!(yd(&[3, 1]).conjugate(), yd(&[2, 1, 1]));
        let l = yd(&[2, 1]);
        // L = {3/2, -1/2, -5/2, -7/2, ...}
        assert!(l.contains_point(HalfInt::new(1)));
        assert!(!l.contains_point(HalfInt::new(0)));
        assert!(l.contains_point(HalfInt::new(-1)));
        assert!(!l.contains_point(HalfInt::new(-2)));
        assert!(l.contains_point(HalfInt::new(-3)));
        assert!(l.contains_point(HalfInt::new(-40)));
        assert!(YoungDiagram::empty().contains_point(HalfInt::new(-1)));
        assert!(!YoungDiagram::empty().contains_point(HalfInt::new(0)));
    }

    #[test]
    fn json_shape() {
        assert_eq!(serde_json::to_string(&yd(&[4, 2, 1])).unwrap(), "[4,2,1]");
        assert_eq!(serde_json::to_string(&YoungDiagram::empty()).unwrap(), "[]");
        let back: YoungDiagram = serde_json::from_str("[3,3,1]").unwrap();
        assert_eq!(back, yd(&[3, 3, 1]));
        assert!(serde_json::from_str::<YoungDiagram>("[1,3]").is_err());
    }
}
