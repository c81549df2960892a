//! Closed-form counts: basic commutators of n-Lie algebras, the Witt
//! formula, graded dimensions of free nilpotent quotients and modular tensor
//! dimensions.
//!
//! For weight `w ≥ 3` the number of basic commutators on `d` generators is
//!
//! ```text
//! l(d, n, w) = Σ_{j=1}^{α₀} β_{j*} · Σ_{i=2}^{w-1} α_i · C(C(d, n-1), w-i)
//! α₀ = C(d-1, n-1),  α_i = C(w-3, i-2)
//! j* = C(k-1, n-1) + 1 and β_{j*} = d - n - j* + 2
//!     for C(k-1, n-1) + 1 ≤ j ≤ C(k, n-1), k = n-1, …, d-1
//! ```
//!
//! Weights 1 and 2 use the closed values `d` and `C(d, n)`, and fewer than
//! `n` generators give no brackets at all. β can be zero or negative for
//! some blocks once `d` is large compared to `n`; the sum is evaluated as
//! written and the trace shows every block.

use num_bigint::BigInt;
use num_traits::{One, Pow, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::serialize_int;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct CountQuery {
    pub d: u64,
    pub n: u64,
    pub w: u64,
}

impl CountQuery {
    pub fn new(d: u64, n: u64, w: u64) -> Self {
        CountQuery { d, n, w }
    }
}

/// Which branch produced a count.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TraceRule {
    /// `w = 1`: the generators themselves.
    Generators,
    /// `w = 2`: one bracket of distinct generators.
    SingleBracket,
    /// `d < n`, `w ≥ 2`: no bracket can be formed.
    TooFewGenerators,
    /// `w ≥ 3`: the double sum.
    Series,
}

/// A run of consecutive `j` sharing the same `j*` and `β`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BetaBlock {
    pub k: u64,
    #[serde(serialize_with = "serialize_int")]
    pub j_first: BigInt,
    #[serde(serialize_with = "serialize_int")]
    pub j_last: BigInt,
    #[serde(serialize_with = "serialize_int")]
    pub j_star: BigInt,
    #[serde(serialize_with = "serialize_int")]
    pub beta: BigInt,
}

impl BetaBlock {
    pub fn len(&self) -> BigInt {
        &self.j_last - &self.j_first + 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InnerTerm {
    pub i: u64,
    #[serde(serialize_with = "serialize_int")]
    pub alpha: BigInt,
    #[serde(serialize_with = "serialize_int")]
    pub binomial: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FormulaTrace {
    pub rule: TraceRule,
    #[serde(serialize_with = "serialize_int")]
    pub alpha0: BigInt,
    pub beta_blocks: Vec<BetaBlock>,
    pub inner_terms: Vec<InnerTerm>,
    #[serde(serialize_with = "serialize_int")]
    pub beta_sum: BigInt,
    #[serde(serialize_with = "serialize_int")]
    pub inner_sum: BigInt,
    #[serde(serialize_with = "serialize_int")]
    pub total: BigInt,
}

impl FormulaTrace {
    fn closed(rule: TraceRule, total: BigInt) -> Self {
        FormulaTrace {
            rule,
            alpha0: BigInt::zero(),
            beta_blocks: Vec::new(),
            inner_terms: Vec::new(),
            beta_sum: BigInt::zero(),
            inner_sum: BigInt::zero(),
            total,
        }
    }

    /// Re-evaluates the total from the recorded summands.
    pub fn resum(&self) -> BigInt {
        match self.rule {
            TraceRule::Series => {
                let beta: BigInt = self.beta_blocks.iter().map(|b| b.len() * &b.beta).sum();
                let inner: BigInt = self.inner_terms.iter().map(|t| &t.alpha * &t.binomial).sum();
                beta * inner
            }
            _ => self.total.clone(),
        }
    }
}

/// `C(a, b)`, zero when `b < 0` or `a < b`.
pub fn binom(a: i64, b: i64) -> BigInt {
    if b < 0 || a < b {
        return BigInt::zero();
    }
    binom_big(&BigInt::from(a), b as u64)
}

/// `C(a, b)` for a big non-negative `a` and machine-sized `b`.
pub fn binom_big(a: &BigInt, b: u64) -> BigInt {
    if a.is_negative() || *a < BigInt::from(b) {
        return BigInt::zero();
    }
    // Use the smaller of b and a - b when a is small enough to tell.
    let b = match u64::try_from(a - BigInt::from(b)) {
        Ok(rest) if rest < b => rest,
        _ => b,
    };
    let mut acc = BigInt::one();
    for i in 0..b {
        acc = acc * (a - BigInt::from(i)) / BigInt::from(i + 1);
    }
    acc
}

/// Number of basic commutators of weight `w` on `d` generators in a free
/// n-Lie algebra, with the evaluation trace.
pub fn count_basic(q: CountQuery) -> Result<(BigInt, FormulaTrace)> {
    let CountQuery { d, n, w } = q;
    if n < 2 {
        return Err(Error::InvalidParameter(format!("arity must be at least 2, got {n}")));
    }
    if w == 0 {
        return Err(Error::InvalidParameter("weight must be at least 1".into()));
    }
    if w == 1 {
        let total = BigInt::from(d);
        return Ok((total.clone(), FormulaTrace::closed(TraceRule::Generators, total)));
    }
    if d < n {
        return Ok((BigInt::zero(), FormulaTrace::closed(TraceRule::TooFewGenerators, BigInt::zero())));
    }
    if w == 2 {
        let total = binom(d as i64, n as i64);
        return Ok((total.clone(), FormulaTrace::closed(TraceRule::SingleBracket, total)));
    }

    let (d_i, n_i) = (d as i64, n as i64);
    let alpha0 = binom(d_i - 1, n_i - 1);
    let mut beta_blocks = Vec::new();
    for k in (n - 1)..d {
        let k_i = k as i64;
        let j_first = binom(k_i - 1, n_i - 1) + 1;
        let j_last = binom(k_i, n_i - 1);
        if j_last < j_first {
            continue;
        }
        let beta = BigInt::from(d_i - n_i + 2) - &j_first;
        beta_blocks.push(BetaBlock { k, j_star: j_first.clone(), j_first, j_last, beta });
    }
    let beta_sum: BigInt = beta_blocks.iter().map(|b| b.len() * &b.beta).sum();

    let top = binom(d_i, n_i - 1);
    let inner_terms: Vec<InnerTerm> = (2..w)
        .map(|i| InnerTerm {
            i,
            alpha: binom(w as i64 - 3, i as i64 - 2),
            binomial: binom_big(&top, w - i),
        })
        .collect();
    let inner_sum: BigInt = inner_terms.iter().map(|t| &t.alpha * &t.binomial).sum();
    let total = &beta_sum * &inner_sum;
    let trace = FormulaTrace {
        rule: TraceRule::Series,
        alpha0,
        beta_blocks,
        inner_terms,
        beta_sum,
        inner_sum,
        total: total.clone(),
    };
    Ok((total, trace))
}

/// Shorthand for the count alone.
pub fn count(d: u64, n: u64, w: u64) -> Result<BigInt> {
    count_basic(CountQuery::new(d, n, w)).map(|(c, _)| c)
}

fn mobius(mut m: u64) -> i64 {
    let mut result = 1;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            m /= p;
            if m.is_multiple_of(p) {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if m > 1 {
        result = -result;
    }
    result
}

/// Dimension of the weight-`w` component of the free Lie algebra on `d`
/// generators: `(1/w) Σ_{m | w} μ(m) d^{w/m}`.
pub fn witt_count(d: u64, w: u64) -> Result<BigInt> {
    if w == 0 {
        return Err(Error::InvalidParameter("weight must be at least 1".into()));
    }
    let base = BigInt::from(d);
    let sum: BigInt = (1..=w)
        .filter(|m| w.is_multiple_of(*m))
        .map(|m| BigInt::from(mobius(m)) * Pow::pow(&base, w / m))
        .sum();
    Ok(sum / BigInt::from(w))
}

/// `Σ_{j=0}^{c-1} l(d, n, i + j)`: dimension of `Fⁱ/F^{i+c}` for the free
/// algebra `F` on `d` generators.
pub fn graded_dim_range(d: u64, n: u64, i: u64, c: u64) -> Result<BigInt> {
    if i == 0 || c == 0 {
        return Err(Error::InvalidParameter("start weight and count must be at least 1".into()));
    }
    (i..i + c).map(|w| count(d, n, w)).sum()
}

/// `Σ_{i=1}^{n-1} dV^i · dW^(n-i)`.
pub fn dim_modular_tensor(dv: u64, dw: u64, n: u64) -> BigInt {
    let (v, w) = (BigInt::from(dv), BigInt::from(dw));
    (1..n).map(|i| Pow::pow(&v, i) * Pow::pow(&w, n - i)).sum()
}

/// `Σ_{i=1}^{n-1} dV^(n·i) · dW^(n-i)`: dimension of `(V ⊗ V) ⊗ W` with
/// modular n-tensor products.
pub fn dim_modular_tensor_triple(dv: u64, dw: u64, n: u64) -> BigInt {
    let (v, w) = (BigInt::from(dv), BigInt::from(dw));
    (1..n).map(|i| Pow::pow(&v, n * i) * Pow::pow(&w, n - i)).sum()
}
