use num_bigint::BigInt;
use nlie_core::count::{count, witt_count};
use nlie_core::linalg::random_invertible;
use nlie_core::multiplier::*;
use nlie_core::oracle::{export_free_nilpotent, DEFAULT_TERM_CAP};
use nlie_core::structure::{check_gamma3_bound, decompose_dim1_derived};
use nlie_core::{NLieAlgebra, Subspace};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn normal_form(n: usize, m: usize, k: usize) -> NLieAlgebra {
    NLieAlgebra::heisenberg(n, m).unwrap().direct_sum(&NLieAlgebra::abelian(k, n).unwrap()).unwrap()
}

fn dims(series: &[Subspace]) -> Vec<usize> {
    series.iter().map(Subspace::dim).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn decomposition_round_trip(n in 2usize..=3, m in 1usize..=2, k in 0usize..=2, seed in any::<u64>()) {
        let a = normal_form(n, m, k);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = random_invertible(a.dim(), 2, &mut rng);
        let conjugated = a.change_basis(&p).unwrap();
        let d = decompose_dim1_derived(&conjugated).unwrap();
        prop_assert_eq!((d.m, d.k), (m, k));
        let back = conjugated.change_basis(&d.change_of_basis).unwrap();
        prop_assert_eq!(back.constants(), a.constants());
    }

    #[test]
    fn invariants_survive_basis_change(n in 2usize..=3, m in 1usize..=2, k in 0usize..=2, seed in any::<u64>()) {
        let a = normal_form(n, m, k);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let conjugated = a.change_basis(&random_invertible(a.dim(), 2, &mut rng)).unwrap();
        prop_assert_eq!(dims(&conjugated.lower_central_series()), dims(&a.lower_central_series()));
        prop_assert_eq!(dims(&conjugated.upper_central_series()), dims(&a.upper_central_series()));
        prop_assert_eq!(conjugated.center().dim(), k + 1);
    }

    #[test]
    fn multiplier_traces_resum(d in 0u64..12, n in 2u64..5, c in 1u64..4, m in 1u64..4, k in 1u64..4) {
        for r in [
            dim_multiplier_abelian(d, n, c),
            dim_multiplier_heisenberg(n, m),
            dim_2multiplier_heisenberg(n, m),
            dim_2multiplier_dim_l2_one(d + m * n + 1, n, m),
            bound_2multiplier_dim_l2_k(d + n + k, n, k),
        ] {
            match r {
                Ok(r) => {
                    prop_assert_eq!(r.resum(), r.value.clone());
                    prop_assert!(r.value >= BigInt::from(0));
                }
                Err(e) => prop_assert!(matches!(e, nlie_core::Error::NegativeValue { .. }), "{:?}", e),
            }
        }
    }

    #[test]
    fn count_closed_forms(d in 0u64..40, n in 2u64..8) {
        prop_assert_eq!(count(d, n, 1).unwrap(), BigInt::from(d));
        prop_assert_eq!(count(d, n, 2).unwrap(), nlie_core::count::binom(d as i64, n as i64));
        if d < n {
            for w in 2..6 {
                prop_assert_eq!(count(d, n, w).unwrap(), BigInt::from(0));
            }
        }
    }

    #[test]
    fn necklace_identity(d in 1u64..10, w in 1u64..10) {
        let total: BigInt = (1..=w).filter(|e| w % e == 0).map(|e| BigInt::from(e) * witt_count(d, e).unwrap()).sum();
        prop_assert_eq!(total, BigInt::from(d).pow(w as u32));
    }
}

#[test]
fn gamma3_bound_sweep() {
    let mut algebras = Vec::new();
    for n in 2..=4 {
        for m in 1..=2 {
            for k in 0..=2 {
                algebras.push(normal_form(n, m, k));
            }
        }
        algebras.push(NLieAlgebra::abelian(5, n).unwrap());
    }
    for (d, n, c) in [(2, 2, 3), (2, 2, 4), (3, 2, 3), (3, 3, 3), (4, 3, 2), (4, 4, 3)] {
        algebras.push(export_free_nilpotent(d, n, c, DEFAULT_TERM_CAP).unwrap());
    }
    for a in &algebras {
        let check = check_gamma3_bound(a).unwrap();
        assert!(check.holds, "{check:?}");
    }
    let free = check_gamma3_bound(&export_free_nilpotent(2, 2, 3, DEFAULT_TERM_CAP).unwrap()).unwrap();
    assert_eq!((free.lhs, free.rhs), (2, BigInt::from(2)));
}
