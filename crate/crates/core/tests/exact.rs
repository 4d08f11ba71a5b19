use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};

use plancherel::partitions::{
    dim_exact, down_transitions, enumerate_yn, p_down_exact, p_up_exact, partition_count, plancherel_weight_exact,
    up_transitions,
};
use plancherel::rsk::{rs_shape, Permutation};
use plancherel::YoungDiagram;

fn factorial(n: usize) -> BigUint {
    (1..=n as u64).map(BigUint::from).product()
}

#[test]
fn squared_dimensions_sum_to_factorial() {
    for n in 0..=12 {
        let ys = enumerate_yn(n).unwrap();
        assert_eq!(ys.len() as u64, partition_count(n));
        let s: BigUint = ys.iter().map(|l| dim_exact(l).pow(2)).sum();
        assert_eq!(s, factorial(n), "n = {n}");
    }
}

#[test]
fn plancherel_measure_is_normalized_exactly() {
    for n in 0..=9 {
        let total: BigRational = enumerate_yn(n)
            .unwrap()
            .iter()
            .map(|l| plancherel_weight_exact(n, l).unwrap())
            .sum();
        assert!(total.is_one(), "n = {n}");
    }
}

/// Up then down (and down then up) transition kernels are stochastic and
/// carry M^(n) to M^(n±1).
#[test]
fn transitions_push_measures_forward() {
    for n in 1..=7 {
        let ys = enumerate_yn(n).unwrap();
        for l in &ys {
            let up: BigRational = up_transitions(l)
                .iter()
                .map(|c| p_up_exact(l, &l.with_box_added(c.row).unwrap()).unwrap())
                .sum();
            assert!(up.is_one());
            let down: BigRational = down_transitions(l)
                .iter()
                .map(|c| p_down_exact(l, &l.with_box_removed(c.row).unwrap()).unwrap())
                .sum();
            assert!(down.is_one());
        }
        for nu in enumerate_yn(n + 1).unwrap() {
            let mut mass = BigRational::zero();
            for l in &ys {
                if l.added_row(&nu).is_some() {
                    mass += plancherel_weight_exact(n, l).unwrap() * p_up_exact(l, &nu).unwrap();
                }
            }
            assert_eq!(mass, plancherel_weight_exact(n + 1, &nu).unwrap(), "{nu}");
        }
        for mu in enumerate_yn(n - 1).unwrap() {
            let mut mass = BigRational::zero();
            for l in &ys {
                if mu.added_row(l).is_some() {
                    mass += plancherel_weight_exact(n, l).unwrap() * p_down_exact(l, &mu).unwrap();
                }
            }
            assert_eq!(mass, plancherel_weight_exact(n - 1, &mu).unwrap(), "{mu}");
        }
    }
}

#[test]
fn rs_shapes_of_all_permutations() {
    for n in 1..=7 {
        let mut counts = std::collections::BTreeMap::<YoungDiagram, u64>::new();
        for p in Permutation::all(n) {
            *counts.entry(rs_shape(&p)).or_default() += 1;
        }
        for l in enumerate_yn(n).unwrap() {
            assert_eq!(BigUint::from(counts[&l]), dim_exact(&l).pow(2), "{l}");
        }
    }
}
