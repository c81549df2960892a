//! Workloads shared by the criterion benches.

use nlie_core::oracle::FreeOracle;
use nlie_core::{count, structure, NLieAlgebra};

/// Oracle dimension of the weight-`w` component, built from scratch.
pub fn oracle_dimension(d: usize, n: usize, w: usize) -> usize {
    let mut oracle = FreeOracle::new(d, n, usize::MAX).expect("valid parameters");
    oracle.component(w).expect("no cap").dimension
}

/// Sum of basic commutator counts over a parameter square.
pub fn count_sweep(max: u64) -> num_bigint::BigInt {
    let mut total = num_bigint::BigInt::from(0);
    for d in 1..=max {
        for n in 2..=max {
            for w in 1..=max {
                total += count::count(d, n, w).expect("valid parameters");
            }
        }
    }
    total
}

/// Decomposes `H(n, m) ⊕ F(k)` after a fixed basis change.
pub fn decompose_conjugated(n: usize, m: usize, k: usize) -> (usize, usize) {
    let a = NLieAlgebra::heisenberg(n, m).unwrap().direct_sum(&NLieAlgebra::abelian(k, n).unwrap()).unwrap();
    let dim = a.dim();
    // upper unitriangular with ones above the diagonal
    let p: Vec<Vec<_>> = (0..dim)
        .map(|i| (0..dim).map(|j| nlie_core::rational::int(i64::from(j >= i))).collect())
        .collect();
    let conjugated = a.change_basis(&p).unwrap();
    let d = structure::decompose_dim1_derived(&conjugated).unwrap();
    (d.m, d.k)
}
