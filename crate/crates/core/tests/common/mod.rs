#![allow(dead_code)]

use std::collections::BTreeSet;

use lightsout_core::rowfinite::PeriodicSpec;
use lightsout_core::{Gf2Matrix, Gf2Vector};
use rand::Rng;

pub fn random_symmetric<R: Rng>(rng: &mut R, n: usize) -> Gf2Matrix {
    let mut a = Gf2Matrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let bit = rng.gen_bool(0.5);
            a.set(i, j, bit);
            a.set(j, i, bit);
        }
    }
    a
}

pub fn random_vector<R: Rng>(rng: &mut R, n: usize) -> Gf2Vector {
    Gf2Vector::from_bits((0..n).map(|_| rng.gen_bool(0.5)))
}

/// Random valid spec: cell size 1..=max_cell, preamble 0..=2 rows reaching into the first cell.
pub fn random_periodic_spec<R: Rng>(rng: &mut R, max_cell: usize) -> PeriodicSpec {
    let c = rng.gen_range(1..=max_cell);
    let p = rng.gen_range(0..=2);
    let diag = random_symmetric(rng, c);
    let coupling = Gf2Matrix::from_fn(c, c, |_, _| rng.gen_bool(0.5));
    let mut rows = vec![BTreeSet::new(); p];
    for i in 0..p {
        for j in i..p + c {
            if rng.gen_bool(0.5) {
                rows[i].insert(j + 1);
                if j < p {
                    rows[j].insert(i + 1);
                }
            }
        }
    }
    let preamble = rows.into_iter().map(|r| r.into_iter().collect()).collect();
    PeriodicSpec::new(preamble, diag, coupling).expect("valid by construction")
}

/// Rows of `a` as integer bitmasks (bit j = column j), read entry by entry.
pub fn row_masks(a: &Gf2Matrix) -> Vec<u64> {
    (0..a.rows())
        .map(|i| (0..a.cols()).fold(0u64, |m, j| m | (u64::from(a.get(i, j)) << j)))
        .collect()
}

/// Every `x` in `0..2^cols` with `A x = b`, by direct evaluation.
pub fn brute_force_solutions(a: &Gf2Matrix, b: &Gf2Vector) -> Vec<u64> {
    let rows = row_masks(a);
    let target: Vec<bool> = b.iter().collect();
    (0..1u64 << a.cols())
        .filter(|&x| rows.iter().zip(&target).all(|(&r, &t)| ((r & x).count_ones() % 2 == 1) == t))
        .collect()
}

pub fn mask_to_vector(x: u64, len: usize) -> Gf2Vector {
    Gf2Vector::from_bits((0..len).map(|i| (x >> i) & 1 == 1))
}
