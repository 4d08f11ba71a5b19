use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use statrs::function::factorial;

use super::YoungDiagram;

/// Diagrams up to this many boxes get an exact integer dimension.
pub const EXACT_THRESHOLD: usize = 40;

/// dim λ, the number of standard tableaux of shape λ.
#[derive(Clone, Debug, PartialEq)]
pub struct DimensionValue {
    /// Natural log of dim λ.
    pub log_value: f64,
    /// Exact value, present when |λ| ≤ [`EXACT_THRESHOLD`].
    pub exact_value: Option<BigUint>,
}

impl DimensionValue {
    pub fn to_f64(&self) -> f64 {
        match &self.exact_value {
            Some(v) => v.to_f64().unwrap_or(f64::INFINITY),
            None => self.log_value.exp(),
        }
    }
}

pub fn ln_factorial(k: u64) -> f64 {
    factorial::ln_factorial(k)
}

/// Shifted coordinates lᵢ = λᵢ + N − i (i = 1..N) with N = ℓ(λ).
fn shifted(lambda: &YoungDiagram) -> Vec<u64> {
    let n = lambda.length();
    lambda
        .rows()
        .iter()
        .enumerate()
        .map(|(i, &r)| r as u64 + (n - 1 - i) as u64)
        .collect()
}

/// dim λ = n! ∏_{i<j}(lᵢ − lⱼ) / ∏ lᵢ!, evaluated exactly.
pub fn dim_exact(lambda: &YoungDiagram) -> BigUint {
    let l = shifted(lambda);
    let mut num = factorial_big(lambda.size() as u64);
    for i in 0..l.len() {
        for j in i + 1..l.len() {
            num *= l[i] - l[j];
        }
    }
    let mut den = BigUint::one();
    for &li in &l {
        den *= factorial_big(li);
    }
    debug_assert!((&num % &den).bits() == 0);
    num / den
}

/// ln dim λ from the same product formula in floating point.
pub fn log_dim(lambda: &YoungDiagram) -> f64 {
    let l = shifted(lambda);
    let mut acc = ln_factorial(lambda.size() as u64);
    for i in 0..l.len() {
        acc -= ln_factorial(l[i]);
        for j in i + 1..l.len() {
            acc += ((l[i] - l[j]) as f64).ln();
        }
    }
    acc
}

pub fn dim(lambda: &YoungDiagram) -> DimensionValue {
    let exact_value = (lambda.size() <= EXACT_THRESHOLD).then(|| dim_exact(lambda));
    DimensionValue {
        log_value: log_dim(lambda),
        exact_value,
    }
}

fn factorial_big(k: u64) -> BigUint {
    (2..=k).fold(BigUint::one(), |acc, j| acc * j)
}

#[cfg(test)]
pub(crate) fn ln_biguint(v: &BigUint) -> f64 {
    let bits = v.bits();
    if bits < 1000 {
        return v.to_f64().unwrap().ln();
    }
    let shift = bits - 64;
    let top = (v >> shift).to_f64().unwrap();
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::{enumerate_yn, enumerate_yn_capped};

    fn yd(rows: &[u32]) -> YoungDiagram {
        YoungDiagram::new(rows.to_vec()).unwrap()
    }

    /// Counts standard tableaux by removing corners recursively.
    fn brute_force_tableaux(lambda: &YoungDiagram) -> u64 {
        if lambda.is_empty() {
            return 1;
        }
        lambda
            .removable_rows()
            .into_iter()
            .map(|r| brute_force_tableaux(&lambda.with_box_removed(r).unwrap()))
            .sum()
    }

    #[test]
    fn small_values() {
        assert_eq!(dim_exact(&YoungDiagram::empty()), BigUint::one());
        assert_eq!(dim_exact(&yd(&[1])), BigUint::from(1u32));
        assert_eq!(dim_exact(&yd(&[2, 1])), BigUint::from(2u32));
        assert_eq!(dim_exact(&yd(&[2, 2])), BigUint::from(2u32));
        for n in 1..30 {
            assert_eq!(dim_exact(&YoungDiagram::row(n)), BigUint::one());
            assert_eq!(dim_exact(&YoungDiagram::column(n)), BigUint::one());
        }
    }

    #[test]
    fn matches_tableau_enumeration() {
        for n in 0..=8 {
            for lambda in enumerate_yn(n).unwrap() {
                let exact = dim_exact(&lambda);
                assert_eq!(exact, BigUint::from(brute_force_tableaux(&lambda)), "{lambda}");
            }
        }
    }

    #[test]
    fn log_agrees_with_exact() {
        for n in [10, 25, 40] {
            for lambda in enumerate_yn_capped(n, 40).unwrap().into_iter().step_by(97) {
                let d = dim(&lambda);
                let exact = d.exact_value.as_ref().unwrap();
                let err = (ln_biguint(exact) - d.log_value).abs();
                assert!(err <= 1e-12 * d.log_value.max(1.0), "{lambda}: {err}");
            }
        }
        let big = YoungDiagram::new(vec![30, 20, 10, 5]).unwrap();
        assert!(dim(&big).exact_value.is_none());
        let err = (ln_biguint(&dim_exact(&big)) - log_dim(&big)).abs();
        assert!(err < 1e-11 * log_dim(&big));
    }
}
