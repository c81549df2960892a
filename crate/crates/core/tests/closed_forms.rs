use num_bigint::BigInt;
use nlie_core::count::{self, binom, count, count_basic, CountQuery};
use nlie_core::multiplier::*;
use nlie_core::structure::*;
use nlie_core::NLieAlgebra;

fn b(x: i64) -> BigInt {
    BigInt::from(x)
}

#[test]
fn equal_generators_and_arity() {
    for n in 2..=6u64 {
        let got: Vec<BigInt> = (1..=4).map(|w| count(n, n, w).unwrap()).collect();
        assert_eq!(got, [b(n as i64), b(1), b(n as i64), binom(n as i64, 2) + b(n as i64)]);
    }
}

#[test]
fn count_spot_values() {
    assert_eq!(count(5, 5, 4).unwrap(), b(15));
    assert_eq!(count(4, 3, 1).unwrap(), b(4));
    assert_eq!(count(3, 2, 3).unwrap(), b(9));
    assert_eq!(count(4, 2, 3).unwrap(), b(24));
    assert_eq!(count(2, 2, 5).unwrap(), b(4));
    let (total, trace) = count_basic(CountQuery::new(6, 3, 4)).unwrap();
    assert_eq!(trace.resum(), total);
}

#[test]
fn multiplier_values() {
    assert_eq!(dim_2multiplier_heisenberg(2, 1).unwrap().value, b(5));
    assert_eq!(dim_2multiplier_heisenberg(3, 1).unwrap().value, b(9));
    assert_eq!(dim_multiplier_heisenberg(3, 2).unwrap().value, b(19));
    assert_eq!(dim_multiplier_heisenberg(2, 1).unwrap().value, b(2));
    assert_eq!(dim_multiplier_abelian(4, 4, 1).unwrap().value, b(1));
    assert_eq!(dim_2multiplier_direct_sum(&b(5), &b(2), 2, 2, 2).unwrap().value, b(23));
    assert_eq!(bound_2multiplier_dim_l2_k(5, 2, 2).unwrap().value, b(19));
}

#[test]
fn multiplier_of_concrete_algebras() {
    let h = NLieAlgebra::heisenberg(2, 1).unwrap();
    assert_eq!(dim_2multiplier_of_algebra(&h).unwrap().value, b(5));
    let sum = h.direct_sum(&NLieAlgebra::abelian(2, 2).unwrap()).unwrap();
    let p: Vec<Vec<_>> = (0..5)
        .map(|i| (0..5).map(|j| nlie_core::rational::int(if j >= i { 1 + (i as i64 + j as i64) % 2 } else { 0 })).collect())
        .collect();
    let conjugated = sum.change_basis(&p).unwrap();
    let r = dim_2multiplier_of_algebra(&conjugated).unwrap();
    assert_eq!((r.value, r.kind), (b(23), MultiplierKind::Exact));
    assert!(dim_2multiplier_of_algebra(&NLieAlgebra::abelian(4, 2).unwrap()).is_err());
}

#[test]
fn composition_grid() {
    for n in 2..=4u64 {
        for d in (n + 1)..=9 {
            let rest = d - n - 1;
            let h = dim_2multiplier_heisenberg(n, 1).unwrap().value;
            let f = count::count(rest, n, 3).unwrap();
            let composed = dim_2multiplier_direct_sum(&h, &f, n, rest, n).unwrap().value;
            let exact = dim_2multiplier_dim_l2_one(d, n, 1).unwrap();
            assert_eq!(composed, exact.value, "d={d} n={n}");
            let bound = bound_2multiplier_dim_l2_k(d, n, 1).unwrap();
            assert!(bound.value >= exact.value, "d={d} n={n}");
        }
    }
}

#[test]
fn capability_predicates() {
    assert!(is_capable_abelian(3, 2) && !is_capable_abelian(2, 3) && is_capable_abelian(5, 5));
    assert!(is_capable_heisenberg_sum(2, 1, 0) && !is_capable_heisenberg_sum(3, 2, 5));
    assert!(is_2capable_heisenberg(2, 1) && !is_2capable_heisenberg(3, 1) && !is_2capable_heisenberg(2, 4));
}
