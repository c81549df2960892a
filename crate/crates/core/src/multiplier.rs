//! Dimension formulas for c-nilpotent multipliers.
//!
//! Every calculator returns a [`MultiplierResult`] whose trace lists the
//! signed summands; they always re-sum to `value`. Formulas that evaluate
//! to a negative number are rejected rather than clamped.

use num_bigint::BigInt;
use num_traits::{Pow, Signed};
use serde::Serialize;

use crate::algebra::NLieAlgebra;
use crate::count::{self, binom, dim_modular_tensor_triple};
use crate::error::{Error, Result};
use crate::rational::serialize_int;
use crate::structure;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MultiplierKind {
    Exact,
    UpperBound,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Summand {
    pub label: String,
    #[serde(serialize_with = "serialize_int")]
    pub value: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MultiplierResult {
    pub kind: MultiplierKind,
    #[serde(serialize_with = "serialize_int")]
    pub value: BigInt,
    pub formula_trace: Vec<Summand>,
    pub source_theorem: &'static str,
}

impl MultiplierResult {
    fn build(kind: MultiplierKind, source: &'static str, terms: Vec<(String, BigInt)>) -> Result<Self> {
        let value: BigInt = terms.iter().map(|(_, v)| v).sum();
        if value.is_negative() {
            return Err(Error::NegativeValue { value: value.to_string(), context: source.to_string() });
        }
        let formula_trace = terms.into_iter().map(|(label, value)| Summand { label, value }).collect();
        Ok(MultiplierResult { kind, value, formula_trace, source_theorem: source })
    }

    pub fn resum(&self) -> BigInt {
        self.formula_trace.iter().map(|s| &s.value).sum()
    }
}

fn mixed_tensor_sum(a: u64, b: u64, n: u64) -> BigInt {
    dim_modular_tensor_triple(a, b, n) + dim_modular_tensor_triple(b, a, n)
}

fn check_arity(n: u64) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("arity must be at least 2, got {n}")));
    }
    Ok(())
}

/// `dim M^(c)(F(d)) = l(d, n, c+1)` for the abelian algebra of dimension `d`.
pub fn dim_multiplier_abelian(d: u64, n: u64, c: u64) -> Result<MultiplierResult> {
    check_arity(n)?;
    if c == 0 {
        return Err(Error::InvalidParameter("c must be at least 1".into()));
    }
    let value = count::count(d, n, c + 1)?;
    MultiplierResult::build(
        MultiplierKind::Exact,
        "abelian-c-multiplier",
        vec![(format!("l({d},{n},{})", c + 1), value)],
    )
}

/// Schur multiplier of H(n, m): `n` for `m = 1`, `C(mn, n) - 1` otherwise.
pub fn dim_multiplier_heisenberg(n: u64, m: u64) -> Result<MultiplierResult> {
    check_arity(n)?;
    let terms = match m {
        0 => return Err(Error::InvalidParameter("m must be at least 1".into())),
        1 => vec![("n".to_string(), BigInt::from(n))],
        _ => vec![
            (format!("C({},{n})", m * n), binom((m * n) as i64, n as i64)),
            ("-1".to_string(), BigInt::from(-1)),
        ],
    };
    MultiplierResult::build(MultiplierKind::Exact, "heisenberg-schur-multiplier", terms)
}

/// 2-nilpotent multiplier of H(n, m): `(n² + 3n)/2` for `m = 1`, otherwise
/// `l(mn, n, 3)`.
pub fn dim_2multiplier_heisenberg(n: u64, m: u64) -> Result<MultiplierResult> {
    check_arity(n)?;
    let terms = match m {
        0 => return Err(Error::InvalidParameter("m must be at least 1".into())),
        // (n² + 3n)/2 = l(n,n,3) + l(n,n,4) = n + (C(n,2) + n)
        1 => vec![
            ("weight 3: n".to_string(), BigInt::from(n)),
            ("weight 4: C(n,2)+n".to_string(), binom(n as i64, 2) + BigInt::from(n)),
        ],
        _ => vec![(format!("l({},{n},3)", m * n), count::count(m * n, n, 3)?)],
    };
    MultiplierResult::build(MultiplierKind::Exact, "heisenberg-2-multiplier", terms)
}

/// `M^(2)(L ⊕ M) ≅ M^(2)(L) ⊕ M^(2)(M) ⊕ (L^ab⊗L^ab)⊗M^ab ⊕ (M^ab⊗M^ab)⊗L^ab`.
pub fn dim_2multiplier_direct_sum(
    dim_m2_l: &BigInt,
    dim_m2_m: &BigInt,
    dim_l_ab: u64,
    dim_m_ab: u64,
    n: u64,
) -> Result<MultiplierResult> {
    check_arity(n)?;
    if dim_m2_l.is_negative() || dim_m2_m.is_negative() {
        return Err(Error::InvalidParameter("multiplier dimensions must be non-negative".into()));
    }
    MultiplierResult::build(
        MultiplierKind::Exact,
        "direct-sum-2-multiplier",
        vec![
            ("M2(L)".to_string(), dim_m2_l.clone()),
            ("M2(M)".to_string(), dim_m2_m.clone()),
            ("(Lab x Lab) x Mab".to_string(), dim_modular_tensor_triple(dim_l_ab, dim_m_ab, n)),
            ("(Mab x Mab) x Lab".to_string(), dim_modular_tensor_triple(dim_m_ab, dim_l_ab, n)),
        ],
    )
}

/// 2-nilpotent multiplier of a nilpotent algebra `L ≅ H(n, m) ⊕ F(d - mn - 1)`
/// with one-dimensional derived algebra.
pub fn dim_2multiplier_dim_l2_one(d: u64, n: u64, m: u64) -> Result<MultiplierResult> {
    check_arity(n)?;
    if m == 0 {
        return Err(Error::InvalidParameter("m must be at least 1".into()));
    }
    if d < m * n + 1 {
        return Err(Error::InvalidParameter(format!("dimension {d} is below mn+1 = {}", m * n + 1)));
    }
    let rest = d - m * n - 1;
    let mut terms = if m == 1 {
        vec![("(n^2+3n)/2".to_string(), BigInt::from((n * n + 3 * n) / 2))]
    } else {
        vec![(format!("l({},{n},3)", m * n), count::count(m * n, n, 3)?)]
    };
    terms.push((format!("l({rest},{n},3)"), count::count(rest, n, 3)?));
    terms.push(("mixed tensor terms".to_string(), mixed_tensor_sum(m * n, rest, n)));
    MultiplierResult::build(MultiplierKind::Exact, "one-dimensional-derived-2-multiplier", terms)
}

/// Upper bound for the 2-nilpotent multiplier of a nilpotent algebra of
/// dimension `d` with `dim L² = k`.
pub fn bound_2multiplier_dim_l2_k(d: u64, n: u64, k: u64) -> Result<MultiplierResult> {
    check_arity(n)?;
    if k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    if d < n + k {
        return Err(Error::InvalidParameter(format!("dimension {d} is below n+k = {}", n + k)));
    }
    let rest = d - n - k;
    let terms = vec![
        ("(n^2+3n)/2".to_string(), BigInt::from((n * n + 3 * n) / 2)),
        (format!("l({rest},{n},3)"), count::count(rest, n, 3)?),
        ("mixed tensor terms".to_string(), mixed_tensor_sum(n, rest, n)),
        ("(d-k)^(2n-2)".to_string(), Pow::pow(&BigInt::from(d - k), 2 * n - 2)),
        ("-k+1".to_string(), BigInt::from(1) - BigInt::from(k)),
    ];
    MultiplierResult::build(MultiplierKind::UpperBound, "derived-dim-k-2-multiplier-bound", terms)
}

/// 2-nilpotent multiplier of a concrete nilpotent algebra with
/// one-dimensional derived algebra, via its Heisenberg-plus-abelian form.
pub fn dim_2multiplier_of_algebra(algebra: &NLieAlgebra) -> Result<MultiplierResult> {
    let decomposition = structure::decompose_dim1_derived(algebra)?;
    dim_2multiplier_dim_l2_one(algebra.dim() as u64, algebra.arity() as u64, decomposition.m as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(r: Result<MultiplierResult>) -> BigInt {
        let r = r.unwrap();
        assert_eq!(r.resum(), r.value);
        r.value
    }

    fn b(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn abelian_values() {
        for d in 0..7 {
            for n in 2..5 {
                assert_eq!(v(dim_multiplier_abelian(d, n, 2)), count::count(d, n, 3).unwrap());
            }
        }
        assert_eq!(v(dim_multiplier_abelian(4, 4, 1)), b(1));
        assert_eq!(v(dim_multiplier_abelian(0, 3, 2)), b(0));
        assert!(dim_multiplier_abelian(3, 2, 0).is_err());
    }

    #[test]
    fn heisenberg_values() {
        assert_eq!(v(dim_multiplier_heisenberg(2, 1)), b(2));
        assert_eq!(v(dim_multiplier_heisenberg(3, 2)), b(19));
        assert_eq!(v(dim_multiplier_heisenberg(2, 2)), b(5));
        assert_eq!(v(dim_2multiplier_heisenberg(2, 1)), b(5));
        assert_eq!(v(dim_2multiplier_heisenberg(3, 1)), b(9));
        assert_eq!(v(dim_2multiplier_heisenberg(2, 2)), b(24));
        for n in 2..8u64 {
            let via_counts = count::count(n, n, 3).unwrap() + count::count(n, n, 4).unwrap();
            assert_eq!(v(dim_2multiplier_heisenberg(n, 1)), via_counts);
        }
    }

    #[test]
    fn direct_sum_values() {
        assert_eq!(v(dim_2multiplier_direct_sum(&b(7), &b(0), 3, 0, 3)), b(7));
        assert_eq!(v(dim_2multiplier_direct_sum(&b(0), &b(0), 1, 1, 2)), count::count(2, 2, 3).unwrap());
        assert_eq!(v(dim_2multiplier_direct_sum(&b(5), &b(2), 2, 2, 2)), b(23));
    }

    #[test]
    fn one_dimensional_derived_values() {
        for n in 2..6 {
            assert_eq!(v(dim_2multiplier_dim_l2_one(n + 1, n, 1)), b(((n * n + 3 * n) / 2) as i64));
        }
        assert_eq!(v(dim_2multiplier_dim_l2_one(5, 2, 1)), b(23));
        assert_eq!(v(dim_2multiplier_dim_l2_one(5, 2, 2)), b(24));
        assert!(dim_2multiplier_dim_l2_one(4, 2, 2).is_err());
    }

    #[test]
    fn bound_values() {
        assert_eq!(v(bound_2multiplier_dim_l2_k(5, 2, 2)), b(19));
        assert_eq!(v(bound_2multiplier_dim_l2_k(3, 2, 1)), b(9));
        assert!(v(bound_2multiplier_dim_l2_k(6, 2, 2)) >= v(bound_2multiplier_dim_l2_k(5, 2, 2)));
        assert!(bound_2multiplier_dim_l2_k(3, 2, 2).is_err());
        assert_eq!(bound_2multiplier_dim_l2_k(5, 2, 2).unwrap().kind, MultiplierKind::UpperBound);
        // (d-k)^(2n-2) no longer covers k once k is large
        assert!(matches!(bound_2multiplier_dim_l2_k(100, 2, 98), Err(Error::NegativeValue { .. })));
    }

    #[test]
    fn negative_counts_are_rejected() {
        assert!(matches!(dim_multiplier_abelian(10, 3, 2), Err(Error::NegativeValue { .. })));
    }

    #[test]
    fn composition_grid() {
        for n in 2..=4u64 {
            for d in (n + 1)..=9 {
                let rest = d - n - 1;
                let h = v(dim_2multiplier_heisenberg(n, 1));
                let f = v(dim_multiplier_abelian(rest, n, 2));
                let composed = v(dim_2multiplier_direct_sum(&h, &f, n, rest, n));
                let exact = v(dim_2multiplier_dim_l2_one(d, n, 1));
                assert_eq!(composed, exact, "d={d} n={n}");
                assert!(v(bound_2multiplier_dim_l2_k(d, n, 1)) >= exact);
            }
        }
    }
}
