//! Robinson–Schensted row insertion on real keys.

use crate::YoungDiagram;

/// An insertion tableau P with real entries.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Tableau {
    rows: Vec<Vec<f64>>,
}

impl Tableau {
    pub fn new() -> Self {
        Tableau::default()
    }

    /// Row-inserts `x`, bumping the smallest larger entry of each row.
    pub fn insert(&mut self, mut x: f64) {
        for row in self.rows.iter_mut() {
            let k = row.partition_point(|&y| y < x);
            if k == row.len() {
                row.push(x);
                return;
            }
            std::mem::swap(&mut row[k], &mut x);
        }
        self.rows.push(vec![x]);
    }

    /// Removes the largest entry, which always sits at a corner.
    ///
    /// This is P of the word with its largest letter deleted.
    pub fn remove_max(&mut self) -> Option<f64> {
        let (i, _) = self
            .rows
            .iter()
            .enumerate()
            .filter_map(|(i, r)| r.last().map(|&y| (i, y)))
            .max_by(|a, b| a.1.total_cmp(&b.1))?;
        let x = self.rows[i].pop();
        if self.rows[i].is_empty() {
            self.rows.pop();
        }
        x
    }

    pub fn shape(&self) -> YoungDiagram {
        YoungDiagram::from_rows_unchecked(self.rows.iter().map(|r| r.len() as u32).collect())
    }

    pub fn len(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }
}

/// RS shape of a sequence of distinct reals.
pub fn rs_shape_of<I: IntoIterator<Item = f64>>(word: I) -> YoungDiagram {
    let mut t = Tableau::new();
    for x in word {
        t.insert(x);
    }
    t.shape()
}

/// First row only: patience sorting, O(n log n).
pub fn lis_length<I: IntoIterator<Item = f64>>(word: I) -> usize {
    let mut piles: Vec<f64> = Vec::new();
    for x in word {
        let k = piles.partition_point(|&y| y < x);
        if k == piles.len() {
            piles.push(x);
        } else {
            piles[k] = x;
        }
    }
    piles.len()
}
