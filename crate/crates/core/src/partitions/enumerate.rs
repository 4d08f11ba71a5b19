use super::YoungDiagram;
use crate::{Error, Result};

pub const DEFAULT_ENUMERATION_CAP: usize = 30;

/// All partitions of `n` in reverse lexicographic order, `(n)` first.
pub fn enumerate_yn(n: usize) -> Result<Vec<YoungDiagram>> {
    enumerate_yn_capped(n, DEFAULT_ENUMERATION_CAP)
}

pub fn enumerate_yn_capped(n: usize, cap: usize) -> Result<Vec<YoungDiagram>> {
    if n > cap {
        return Err(Error::CapExceeded { n, cap });
    }
    let mut out = Vec::new();
    let mut prefix = Vec::new();
    fill(n as u32, n as u32, &mut prefix, &mut out);
    Ok(out)
}

fn fill(remaining: u32, max_part: u32, prefix: &mut Vec<u32>, out: &mut Vec<YoungDiagram>) {
    if remaining == 0 {
        out.push(YoungDiagram::from_rows_unchecked(prefix.clone()));
        return;
    }
    for part in (1..=max_part.min(remaining)).rev() {
        prefix.push(part);
        fill(remaining - part, part, prefix, out);
        prefix.pop();
    }
}

/// Every diagram with at most `n_max` boxes, grouped by size.
pub fn diagrams_up_to(n_max: usize, cap: usize) -> Result<Vec<YoungDiagram>> {
    let mut all = Vec::new();
    for n in 0..=n_max {
        all.extend(enumerate_yn_capped(n, cap)?);
    }
    Ok(all)
}

/// p(n) by Euler's pentagonal recurrence.
pub fn partition_count(n: usize) -> u64 {
    let mut p = vec![0u64; n + 1];
    p[0] = 1;
    for m in 1..=n {
        let mut acc: i128 = 0;
        for k in 1.. {
            let g1 = k * (3 * k - 1) / 2;
            if g1 > m {
                break;
            }
            let sign = if k % 2 == 1 { 1 } else { -1 };
            acc += sign * p[m - g1] as i128;
            let g2 = k * (3 * k + 1) / 2;
            if g2 <= m {
                acc += sign * p[m - g2] as i128;
            }
        }
        p[m] = acc as u64;
    }
    p[n]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_lists() {
        assert_eq!(enumerate_yn(0).unwrap(), vec![YoungDiagram::empty()]);
        let three: Vec<Vec<u32>> = enumerate_yn(3)
            .unwrap()
            .into_iter()
            .map(|d| d.rows().to_vec())
            .collect();
        assert_eq!(three, vec![vec![3], vec![2, 1], vec![1, 1, 1]]);
        assert_eq!(enumerate_yn(5).unwrap().len(), 7);
    }

    #[test]
    fn counts_match_pentagonal_recurrence() {
        for n in 0..=30 {
            assert_eq!(enumerate_yn(n).unwrap().len() as u64, partition_count(n));
        }
        assert_eq!(partition_count(40), 37338);
    }

    #[test]
    fn cap() {
        assert!(matches!(enumerate_yn(31), Err(Error::CapExceeded { n: 31, cap: 30 })));
        assert_eq!(enumerate_yn_capped(35, 40).unwrap().len() as u64, partition_count(35));
    }
}
