use num_bigint::BigInt;
use num_rational::BigRational;

use super::{dim_exact, ln_factorial, log_dim, YoungDiagram};
use crate::{Error, Result};

/// M⁽ⁿ⁾(λ) = (dim λ)²/n!.
pub fn plancherel_weight(n: usize, lambda: &YoungDiagram) -> Result<f64> {
    check_size(n, lambda)?;
    Ok((2.0 * log_dim(lambda) - ln_factorial(n as u64)).exp())
}

pub fn plancherel_weight_exact(n: usize, lambda: &YoungDiagram) -> Result<BigRational> {
    check_size(n, lambda)?;
    let d = BigInt::from(dim_exact(lambda));
    let fact: BigInt = (2..=n as u64).fold(BigInt::from(1), |acc, k| acc * k);
    Ok(BigRational::new(&d * &d, fact))
}

/// M_θ(λ) = e^{−θ} θⁿ (dim λ / n!)².
pub fn poissonized_weight(theta: f64, lambda: &YoungDiagram) -> Result<f64> {
    if !(theta > 0.0 && theta.is_finite()) {
        return Err(Error::InvalidArgument(format!("θ must be positive, got {theta}")));
    }
    let n = lambda.size();
    let log_w =
        -theta + n as f64 * theta.ln() + 2.0 * (log_dim(lambda) - ln_factorial(n as u64));
    Ok(log_w.exp())
}

/// Size cutoff ⌈θ + 10√θ + 20⌉ beyond which M_θ has negligible mass.
pub fn poissonized_truncation_size(theta: f64) -> usize {
    (theta + 10.0 * theta.sqrt() + 20.0).ceil() as usize
}

fn check_size(n: usize, lambda: &YoungDiagram) -> Result<()> {
    if lambda.size() != n {
        return Err(Error::Contract(format!(
            "diagram {lambda} has {} boxes, expected {n}",
            lambda.size()
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::enumerate_yn_capped;

    fn yd(rows: &[u32]) -> YoungDiagram {
        YoungDiagram::new(rows.to_vec()).unwrap()
    }

    #[test]
    fn worked_examples() {
        assert_eq!(plancherel_weight(0, &YoungDiagram::empty()).unwrap(), 1.0);
        assert!((plancherel_weight(3, &yd(&[2, 1])).unwrap() - 2.0 / 3.0).abs() < 1e-15);
        assert!((plancherel_weight(2, &yd(&[2])).unwrap() - 0.5).abs() < 1e-15);
        assert!(plancherel_weight(3, &yd(&[2])).is_err());

        let e1 = (-1.0f64).exp();
        assert!((poissonized_weight(1.0, &YoungDiagram::empty()).unwrap() - e1).abs() < 1e-16);
        assert!((poissonized_weight(1.0, &YoungDiagram::empty()).unwrap() - 0.3678794412).abs() < 1e-10);
        for theta in [0.3, 2.0, 7.5] {
            let w = poissonized_weight(theta, &yd(&[1])).unwrap();
            assert!((w - theta * (-theta).exp()).abs() < 1e-15);
        }
        let w = poissonized_weight(2.0, &yd(&[2, 1])).unwrap();
        assert!((w - 8.0 / 9.0 * (-2.0f64).exp()).abs() < 1e-15);
        assert!(poissonized_weight(0.0, &yd(&[1])).is_err());
        assert!(poissonized_weight(-1.0, &yd(&[1])).is_err());
    }

    #[test]
    fn truncated_mass_defect() {
        for theta in [0.5, 1.0, 4.0] {
            let cutoff = poissonized_truncation_size(theta);
            let total: f64 = (0..=cutoff)
                .flat_map(|n| enumerate_yn_capped(n, 60).unwrap())
                .map(|l| poissonized_weight(theta, &l).unwrap())
                .sum();
            assert!((1.0 - total).abs() < 1e-8, "θ = {theta}: {total}");
        }
    }
}
