//! Up and down transition probabilities of the Young graph.
//!
//! Both are dimension ratios. With N = ℓ(λ) + 1 and shifted coordinates
//! lᵢ = λᵢ + N − i, adding a box to row r gives
//! p↑ = 1/(l_r + 1) · ∏_{j≠r} (l_r + 1 − l_j)/(l_r − l_j),
//! and removing one gives p↓ = l_r/n · ∏_{j≠r} (l_r − 1 − l_j)/(l_r − l_j).
//! Neither needs the (possibly huge) dimensions themselves.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::YoungDiagram;
use crate::{Error, Result};

/// A corner of a diagram together with its transition probability.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Corner {
    pub row: usize,
    pub probability: f64,
}

fn shifted_padded(lambda: &YoungDiagram) -> Vec<i64> {
    let n = lambda.length() + 1;
    (0..n)
        .map(|i| lambda.row_len(i) as i64 + (n - 1 - i) as i64)
        .collect()
}

fn up_prob(l: &[i64], r: usize) -> f64 {
    let lr = l[r];
    let mut p = 1.0 / (lr + 1) as f64;
    for (j, &lj) in l.iter().enumerate() {
        if j != r {
            p *= (lr + 1 - lj) as f64 / (lr - lj) as f64;
        }
    }
    p
}

fn down_prob(l: &[i64], r: usize, n: usize) -> f64 {
    let lr = l[r];
    let mut p = lr as f64 / n as f64;
    for (j, &lj) in l.iter().enumerate() {
        if j != r {
            p *= (lr - 1 - lj) as f64 / (lr - lj) as f64;
        }
    }
    p
}

fn up_prob_exact(l: &[i64], r: usize) -> BigRational {
    let lr = l[r];
    let mut p = BigRational::new(BigInt::one(), BigInt::from(lr + 1));
    for (j, &lj) in l.iter().enumerate() {
        if j != r {
            p *= BigRational::new(BigInt::from(lr + 1 - lj), BigInt::from(lr - lj));
        }
    }
    p
}

fn down_prob_exact(l: &[i64], r: usize, n: usize) -> BigRational {
    let lr = l[r];
    let mut p = BigRational::new(BigInt::from(lr), BigInt::from(n));
    for (j, &lj) in l.iter().enumerate() {
        if j != r {
            p *= BigRational::new(BigInt::from(lr - 1 - lj), BigInt::from(lr - lj));
        }
    }
    p
}

/// Addable corners of λ, top row first, with their p↑.
pub fn up_transitions(lambda: &YoungDiagram) -> Vec<Corner> {
    let l = shifted_padded(lambda);
    lambda
        .addable_rows()
        .into_iter()
        .map(|row| Corner {
            row,
            probability: up_prob(&l, row),
        })
        .collect()
}

/// Removable corners of λ, top row first, with their p↓.
pub fn down_transitions(lambda: &YoungDiagram) -> Vec<Corner> {
    let l = shifted_padded(lambda);
    let n = lambda.size();
    lambda
        .removable_rows()
        .into_iter()
        .map(|row| Corner {
            row,
            probability: down_prob(&l, row, n),
        })
        .collect()
}

fn check_up(lambda: &YoungDiagram, nu: &YoungDiagram) -> Result<Option<usize>> {
    if nu.size() != lambda.size() + 1 {
        return Err(Error::Contract(format!(
            "p_up needs |ν| = |λ| + 1, got |λ| = {}, |ν| = {}",
            lambda.size(),
            nu.size()
        )));
    }
    Ok(lambda.added_row(nu))
}

fn check_down(lambda: &YoungDiagram, mu: &YoungDiagram) -> Result<Option<usize>> {
    if mu.size() + 1 != lambda.size() {
        return Err(Error::Contract(format!(
            "p_down needs |μ| = |λ| − 1, got |λ| = {}, |μ| = {}",
            lambda.size(),
            mu.size()
        )));
    }
    Ok(mu.added_row(lambda))
}

/// p↑(λ → ν) = dim ν / (dim λ · (n + 1)) when λ ↗ ν, else 0.
pub fn p_up(lambda: &YoungDiagram, nu: &YoungDiagram) -> Result<f64> {
    Ok(check_up(lambda, nu)?.map_or(0.0, |r| up_prob(&shifted_padded(lambda), r)))
}

/// p↓(λ → μ) = dim μ / dim λ when μ ↗ λ, else 0.
pub fn p_down(lambda: &YoungDiagram, mu: &YoungDiagram) -> Result<f64> {
    Ok(check_down(lambda, mu)?
        .map_or(0.0, |r| down_prob(&shifted_padded(lambda), r, lambda.size())))
}

pub fn p_up_exact(lambda: &YoungDiagram, nu: &YoungDiagram) -> Result<BigRational> {
    Ok(check_up(lambda, nu)?
        .map_or_else(BigRational::zero, |r| up_prob_exact(&shifted_padded(lambda), r)))
}

pub fn p_down_exact(lambda: &YoungDiagram, mu: &YoungDiagram) -> Result<BigRational> {
    Ok(check_down(lambda, mu)?.map_or_else(BigRational::zero, |r| {
        down_prob_exact(&shifted_padded(lambda), r, lambda.size())
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::{dim_exact, enumerate_yn};

    fn yd(rows: &[u32]) -> YoungDiagram {
        YoungDiagram::new(rows.to_vec()).unwrap()
    }

    fn ratio(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn worked_examples() {
        assert_eq!(p_down(&yd(&[2, 1]), &yd(&[2])).unwrap(), 0.5);
        assert_eq!(p_down(&yd(&[2, 1]), &yd(&[1, 1])).unwrap(), 0.5);
        assert_eq!(p_down(&yd(&[1]), &YoungDiagram::empty()).unwrap(), 1.0);
        assert_eq!(p_up(&YoungDiagram::empty(), &yd(&[1])).unwrap(), 1.0);
        assert_eq!(p_up(&yd(&[1]), &yd(&[2])).unwrap(), 0.5);
        assert_eq!(p_up_exact(&yd(&[2, 1]), &yd(&[2, 2])).unwrap(), ratio(1, 4));
        assert_eq!(p_up_exact(&yd(&[2, 1]), &yd(&[3, 1])).unwrap(), ratio(3, 8));
        assert_eq!(p_up_exact(&yd(&[2, 1]), &yd(&[2, 1, 1])).unwrap(), ratio(3, 8));
        assert_eq!(p_up(&yd(&[2, 1]), &yd(&[4])).unwrap(), 0.0);
    }

    #[test]
    fn size_mismatch_is_contract_error() {
        assert!(matches!(p_up(&yd(&[2]), &yd(&[2])), Err(Error::Contract(_))));
        assert!(matches!(p_down(&yd(&[2]), &yd(&[3])), Err(Error::Contract(_))));
    }

    #[test]
    fn agrees_with_dimension_ratios() {
        for n in 1..=7 {
            for lambda in enumerate_yn(n).unwrap() {
                let dl = BigRational::from_integer(dim_exact(&lambda).into());
                for nu in enumerate_yn(n + 1).unwrap() {
                    let dn = BigRational::from_integer(dim_exact(&nu).into());
                    let expect = if lambda.added_row(&nu).is_some() {
                        dn / (dl.clone() * BigRational::from_integer((n as i64 + 1).into()))
                    } else {
                        BigRational::zero()
                    };
                    assert_eq!(p_up_exact(&lambda, &nu).unwrap(), expect);
                }
            }
        }
    }

    #[test]
    fn float_matches_exact() {
        for lambda in enumerate_yn(9).unwrap() {
            for c in up_transitions(&lambda) {
                let nu = lambda.with_box_added(c.row).unwrap();
                let exact = p_up_exact(&lambda, &nu).unwrap();
                let approx = num_traits::ToPrimitive::to_f64(&exact).unwrap();
                assert!((approx - c.probability).abs() < 1e-15);
            }
        }
    }
}
