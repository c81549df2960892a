//! Finite-dimensional n-Lie algebras given by structure constants.
//!
//! Only strictly increasing index tuples are stored. Evaluating a bracket on
//! an arbitrary tuple of basis vectors sorts the indices and multiplies by
//! the sign of the sorting permutation; a repeated index gives zero.

mod invariants;
mod json;

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix, Vector};
use crate::rational::Rational;

pub use invariants::AnalysisReport;
pub use json::{AlgebraFile, BracketEntry, Coefficient};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NLieAlgebra {
    arity: usize,
    labels: Vec<String>,
    constants: BTreeMap<Vec<usize>, Vector>,
    trusted: bool,
}

/// One failure of the generalized Jacobi identity on basis vectors
/// (indices are 1-based, as in the file format).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JacobiViolation {
    pub x: Vec<usize>,
    pub y: Vec<usize>,
    #[serde(serialize_with = "json::serialize_vector")]
    pub residual: Vector,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub skew_ok: bool,
    pub jacobi_ok: bool,
    pub violations: Vec<JacobiViolation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.skew_ok && self.jacobi_ok
    }
}

/// Sorts `indices` in place and returns the sign of the permutation, or
/// `None` when an index repeats.
pub(crate) fn sort_with_sign(indices: &mut [usize]) -> Option<bool> {
    let mut negative = false;
    for i in 1..indices.len() {
        let mut j = i;
        while j > 0 && indices[j - 1] > indices[j] {
            indices.swap(j - 1, j);
            negative = !negative;
            j -= 1;
        }
    }
    if indices.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some(negative)
    }
}

/// All strictly increasing `k`-tuples drawn from `0..dim`.
pub(crate) fn increasing_tuples(dim: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, dim: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..dim {
            if dim - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, dim, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, dim, k, &mut Vec::with_capacity(k), &mut out);
    out
}

fn default_labels(prefix: &str, count: usize) -> Vec<String> {
    (1..=count).map(|i| format!("{prefix}{i}")).collect()
}

impl NLieAlgebra {
    /// Builds an algebra from 0-based strictly increasing index tuples.
    /// Zero values are dropped.
    pub fn new<I>(arity: usize, labels: Vec<String>, brackets: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<usize>, Vector)>,
    {
        if arity < 2 {
            return Err(Error::InvalidParameter(format!("arity must be at least 2, got {arity}")));
        }
        let dim = labels.len();
        let mut constants = BTreeMap::new();
        for (args, value) in brackets {
            if args.len() != arity {
                return Err(Error::Malformed(format!(
                    "bracket {args:?} has {} arguments, arity is {arity}",
                    args.len()
                )));
            }
            if args.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::Malformed(format!("bracket arguments {args:?} are not strictly increasing")));
            }
            if args.iter().any(|&i| i >= dim) {
                return Err(Error::Malformed(format!("bracket arguments {args:?} out of range for dimension {dim}")));
            }
            if value.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, got: value.len() });
            }
            if constants.contains_key(&args) {
                return Err(Error::Malformed(format!("bracket {args:?} given twice")));
            }
            if !linalg::is_zero(&value) {
                constants.insert(args, value);
            }
        }
        Ok(NLieAlgebra { arity, labels, constants, trusted: false })
    }

    /// The abelian algebra of dimension `dim`.
    pub fn abelian(dim: usize, arity: usize) -> Result<Self> {
        let mut a = Self::new(arity, default_labels("e", dim), std::iter::empty())?;
        a.trusted = true;
        Ok(a)
    }

    /// The Heisenberg algebra H(n, m) with basis `x, x1, …, x_{mn}` and
    /// `[x_{(i-1)n+1}, …, x_{in}] = x` for `i = 1..m`.
    pub fn heisenberg(arity: usize, m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidParameter("Heisenberg parameter m must be at least 1".into()));
        }
        let dim = m * arity + 1;
        let mut labels = vec!["x".to_string()];
        labels.extend(default_labels("x", m * arity));
        let brackets = (0..m).map(|i| {
            let args: Vec<usize> = (1 + i * arity..1 + (i + 1) * arity).collect();
            (args, linalg::unit_vector(dim, 0))
        });
        let mut a = Self::new(arity, labels, brackets)?;
        a.trusted = true;
        Ok(a)
    }

    /// Direct sum; the basis of `other` follows the basis of `self`.
    pub fn direct_sum(&self, other: &NLieAlgebra) -> Result<Self> {
        if self.arity != other.arity {
            return Err(Error::ArityMismatch { expected: self.arity, got: other.arity });
        }
        let (da, db) = (self.dim(), other.dim());
        let dim = da + db;
        let mut labels = self.labels.clone();
        labels.extend(other.labels.iter().cloned());
        let left = self.constants.iter().map(|(args, v)| {
            let mut value = v.clone();
            value.resize(dim, Rational::zero());
            (args.clone(), value)
        });
        let right = other.constants.iter().map(|(args, v)| {
            let mut value = linalg::zero_vector(da);
            value.extend(v.iter().cloned());
            (args.iter().map(|i| i + da).collect(), value)
        });
        let mut sum = Self::new(self.arity, labels, left.chain(right))?;
        sum.trusted = self.trusted && other.trusted;
        Ok(sum)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn set_labels(&mut self, labels: Vec<String>) -> Result<()> {
        if labels.len() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: labels.len() });
        }
        self.labels = labels;
        Ok(())
    }

    /// Whether a constructor that only produces valid algebras built this one.
    /// Never consulted by [`NLieAlgebra::validate`].
    pub fn is_trusted(&self) -> bool {
        self.trusted
    }

    pub(crate) fn mark_trusted(&mut self) {
        self.trusted = true;
    }

    /// Stored constants keyed by 0-based strictly increasing tuples.
    pub fn constants(&self) -> &BTreeMap<Vec<usize>, Vector> {
        &self.constants
    }

    /// Returns a copy with one structure constant replaced. `args` may be in
    /// any order; the value is adjusted by the sorting sign.
    pub fn with_constant(&self, args: &[usize], value: Vector) -> Result<Self> {
        let mut sorted = args.to_vec();
        let negative = sort_with_sign(&mut sorted)
            .ok_or_else(|| Error::Malformed(format!("bracket arguments {args:?} repeat an index")))?;
        let value = if negative { value.into_iter().map(|x| -x).collect() } else { value };
        let mut constants = self.constants.clone();
        constants.remove(&sorted);
        let mut entries: Vec<_> = constants.into_iter().collect();
        entries.push((sorted, value));
        Self::new(self.arity, self.labels.clone(), entries)
    }

    /// Bracket of basis vectors; `None` means zero.
    pub fn bracket_basis(&self, indices: &[usize]) -> Option<(bool, &Vector)> {
        let mut sorted = indices.to_vec();
        let negative = sort_with_sign(&mut sorted)?;
        self.constants.get(&sorted).map(|v| (negative, v))
    }

    /// Multilinear, alternating bracket of `arity` coefficient vectors.
    pub fn bracket(&self, vectors: &[Vector]) -> Result<Vector> {
        if vectors.len() != self.arity {
            return Err(Error::ArityMismatch { expected: self.arity, got: vectors.len() });
        }
        let dim = self.dim();
        if let Some(v) = vectors.iter().find(|v| v.len() != dim) {
            return Err(Error::DimensionMismatch { expected: dim, got: v.len() });
        }
        Ok(self.bracket_unchecked(vectors))
    }

    pub(crate) fn bracket_unchecked(&self, vectors: &[Vector]) -> Vector {
        let supports: Vec<Vec<usize>> = vectors
            .iter()
            .map(|v| (0..v.len()).filter(|&i| !v[i].is_zero()).collect())
            .collect();
        let expansion: usize = supports.iter().map(Vec::len).product();
        let minor_cost = self.constants.len() * self.arity * self.arity;
        if expansion <= minor_cost {
            self.bracket_by_expansion(vectors, &supports)
        } else {
            self.bracket_by_minors(vectors)
        }
    }

    fn bracket_by_expansion(&self, vectors: &[Vector], supports: &[Vec<usize>]) -> Vector {
        let mut out = linalg::zero_vector(self.dim());
        let mut chosen = Vec::with_capacity(self.arity);
        self.expand(vectors, supports, &mut chosen, Rational::one(), &mut out);
        out
    }

    fn expand(
        &self,
        vectors: &[Vector],
        supports: &[Vec<usize>],
        chosen: &mut Vec<usize>,
        coeff: Rational,
        out: &mut Vector,
    ) {
        let slot = chosen.len();
        if slot == self.arity {
            if let Some((negative, value)) = self.bracket_basis(chosen) {
                let c = if negative { -coeff } else { coeff };
                for (o, v) in out.iter_mut().zip(value) {
                    if !v.is_zero() {
                        *o += &c * v;
                    }
                }
            }
            return;
        }
        for &i in &supports[slot] {
            if chosen.contains(&i) {
                continue;
            }
            chosen.push(i);
            self.expand(vectors, supports, chosen, &coeff * &vectors[slot][i], out);
            chosen.pop();
        }
    }

    /// Σ over stored tuples of det(minor) · value.
    fn bracket_by_minors(&self, vectors: &[Vector]) -> Vector {
        let mut out = linalg::zero_vector(self.dim());
        for (args, value) in &self.constants {
            let minor: Matrix =
                vectors.iter().map(|v| args.iter().map(|&i| v[i].clone()).collect()).collect();
            let det = linalg::determinant(&minor);
            if det.is_zero() {
                continue;
            }
            for (o, v) in out.iter_mut().zip(value) {
                if !v.is_zero() {
                    *o += &det * v;
                }
            }
        }
        out
    }

    /// `[v, e_{j2}, …, e_{jn}]` for a vector `v` and basis indices `rest`.
    pub(crate) fn bracket_with_basis(&self, v: &[Rational], rest: &[usize]) -> Vector {
        let mut out = linalg::zero_vector(self.dim());
        let mut args = Vec::with_capacity(self.arity);
        for (i, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            args.clear();
            args.push(i);
            args.extend_from_slice(rest);
            if let Some((negative, value)) = self.bracket_basis(&args) {
                let c = if negative { -c.clone() } else { c.clone() };
                for (o, x) in out.iter_mut().zip(value) {
                    if !x.is_zero() {
                        *o += &c * x;
                    }
                }
            }
        }
        out
    }

    /// Checks the generalized Jacobi identity
    /// `[[x1..xn], y2..yn] = Σ_i [x1, .., [xi, y2..yn], .., xn]` on all basis
    /// tuples. Both sides are alternating in the x's and in the y's, so
    /// strictly increasing tuples suffice.
    pub fn validate(&self) -> ValidationReport {
        let skew_ok = self.constants.iter().all(|(args, value)| {
            args.len() == self.arity
                && args.windows(2).all(|w| w[0] < w[1])
                && args.iter().all(|&i| i < self.dim())
                && value.len() == self.dim()
        });
        let dim = self.dim();
        let n = self.arity;
        let ys = increasing_tuples(dim, n - 1);
        // [e_i, y] for every basis i and y tuple, computed once.
        let mut inner: BTreeMap<(usize, usize), Vector> = BTreeMap::new();
        for (yi, y) in ys.iter().enumerate() {
            for i in 0..dim {
                let mut args = vec![i];
                args.extend_from_slice(y);
                if let Some((negative, value)) = self.bracket_basis(&args) {
                    let v = if negative { value.iter().map(|x| -x.clone()).collect() } else { value.clone() };
                    inner.insert((i, yi), v);
                }
            }
        }
        let mut violations = Vec::new();
        for x in increasing_tuples(dim, n) {
            let outer = self.constants.get(&x);
            for (yi, y) in ys.iter().enumerate() {
                let mut residual = match outer {
                    Some(v) => self.bracket_with_basis(v, y),
                    None => linalg::zero_vector(dim),
                };
                for slot in 0..n {
                    let Some(replacement) = inner.get(&(x[slot], yi)) else { continue };
                    // [x1, .., r, .., xn] = Σ_k r_k [x1, .., e_k, .., xn]
                    let mut others: Vec<usize> = x.clone();
                    for (k, c) in replacement.iter().enumerate() {
                        if c.is_zero() {
                            continue;
                        }
                        others[slot] = k;
                        if let Some((negative, value)) = self.bracket_basis(&others) {
                            let c = if negative { -c.clone() } else { c.clone() };
                            for (r, val) in residual.iter_mut().zip(value) {
                                if !val.is_zero() {
                                    *r -= &c * val;
                                }
                            }
                        }
                    }
                }
                if !linalg::is_zero(&residual) {
                    violations.push(JacobiViolation {
                        x: x.iter().map(|i| i + 1).collect(),
                        y: y.iter().map(|i| i + 1).collect(),
                        residual,
                    });
                }
            }
        }
        ValidationReport { skew_ok, jacobi_ok: violations.is_empty(), violations }
    }

    /// Rewrites the algebra in a new basis whose vectors are the columns of
    /// `basis` (expressed in the current basis).
    pub fn change_basis(&self, basis: &Matrix) -> Result<Self> {
        let dim = self.dim();
        if basis.len() != dim || basis.iter().any(|r| r.len() != dim) {
            return Err(Error::DimensionMismatch { expected: dim, got: basis.len() });
        }
        let inverse = linalg::inverse(basis).ok_or(Error::Singular)?;
        let columns = linalg::transpose(basis, dim);
        let brackets = increasing_tuples(dim, self.arity).into_iter().map(|args| {
            let vectors: Vec<Vector> = args.iter().map(|&i| columns[i].clone()).collect();
            let image = self.bracket_unchecked(&vectors);
            (args, linalg::mat_vec(&inverse, &image))
        });
        let mut out = Self::new(self.arity, default_labels("b", dim), brackets)?;
        out.trusted = self.trusted;
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn e(dim: usize, i: usize) -> Vector {
        linalg::unit_vector(dim, i)
    }

    #[test]
    fn abelian_bracket_is_zero() {
        let a = NLieAlgebra::abelian(3, 2).unwrap();
        let v = vec![int(1), int(2), int(3)];
        let w = vec![int(0), int(-1), int(5)];
        assert!(linalg::is_zero(&a.bracket(&[v, w]).unwrap()));
    }

    #[test]
    fn heisenberg_bracket_signs() {
        let h = NLieAlgebra::heisenberg(2, 1).unwrap();
        assert_eq!(h.bracket(&[e(3, 1), e(3, 2)]).unwrap(), e(3, 0));
        let neg: Vector = e(3, 0).into_iter().map(|x| -x).collect();
        assert_eq!(h.bracket(&[e(3, 2), e(3, 1)]).unwrap(), neg);
        assert!(linalg::is_zero(&h.bracket(&[e(3, 1), e(3, 1)]).unwrap()));
    }

    #[test]
    fn bracket_errors() {
        let h = NLieAlgebra::heisenberg(3, 1).unwrap();
        assert_eq!(
            h.bracket(&[e(4, 1), e(4, 2)]),
            Err(Error::ArityMismatch { expected: 3, got: 2 })
        );
        assert_eq!(
            h.bracket(&[e(4, 1), e(4, 2), e(3, 0)]),
            Err(Error::DimensionMismatch { expected: 4, got: 3 })
        );
    }

    #[test]
    fn heisenberg_shape() {
        let h = NLieAlgebra::heisenberg(3, 2).unwrap();
        assert_eq!(h.dim(), 7);
        assert_eq!(h.constants().len(), 2);
        assert!(h.constants().contains_key(&vec![4, 5, 6]));
        for (n, m) in [(2, 1), (2, 2), (3, 1), (3, 2), (4, 3)] {
            assert!(NLieAlgebra::heisenberg(n, m).unwrap().validate().is_valid());
        }
    }

    #[test]
    fn zero_algebra_is_legal() {
        let z = NLieAlgebra::abelian(0, 2).unwrap();
        assert_eq!(z.dim(), 0);
        assert!(z.validate().is_valid());
        let h = NLieAlgebra::heisenberg(2, 1).unwrap();
        assert_eq!(h.direct_sum(&z).unwrap().constants(), h.constants());
    }

    #[test]
    fn direct_sum_shapes() {
        let h = NLieAlgebra::heisenberg(2, 1).unwrap();
        let f = NLieAlgebra::abelian(2, 2).unwrap();
        let s = h.direct_sum(&f).unwrap();
        assert_eq!(s.dim(), 5);
        let ab = NLieAlgebra::abelian(2, 3).unwrap().direct_sum(&NLieAlgebra::abelian(3, 3).unwrap()).unwrap();
        assert_eq!(ab.constants(), NLieAlgebra::abelian(5, 3).unwrap().constants());
        let h3 = NLieAlgebra::heisenberg(3, 1).unwrap();
        assert!(h3.direct_sum(&h3).unwrap().validate().is_valid());
        assert_eq!(h.direct_sum(&h3), Err(Error::ArityMismatch { expected: 2, got: 3 }));
    }

    #[test]
    fn perturbed_heisenberg_is_invalid() {
        // [x, x1] = x1 breaks Jacobi on (x, x1; x2).
        let h = NLieAlgebra::heisenberg(2, 1).unwrap();
        let p = h.with_constant(&[0, 1], e(3, 1)).unwrap();
        let report = p.validate();
        assert!(!report.jacobi_ok);
        assert!(report.violations.iter().any(|v| v.x == vec![1, 2] && v.y == vec![3]));
    }

    #[test]
    fn rejects_malformed_constants() {
        let labels = default_labels("e", 3);
        assert!(NLieAlgebra::new(2, labels.clone(), vec![(vec![1, 0], e(3, 2))]).is_err());
        assert!(NLieAlgebra::new(2, labels.clone(), vec![(vec![0, 3], e(3, 2))]).is_err());
        assert!(NLieAlgebra::new(2, labels.clone(), vec![(vec![0, 1, 2], e(3, 2))]).is_err());
        assert!(NLieAlgebra::new(1, labels, std::iter::empty()).is_err());
    }

    #[test]
    fn change_basis_identity_is_noop() {
        let h = NLieAlgebra::heisenberg(3, 2).unwrap();
        let same = h.change_basis(&linalg::identity(7)).unwrap();
        assert_eq!(same.constants(), h.constants());
    }

    #[test]
    fn minors_and_expansion_agree() {
        let h = NLieAlgebra::heisenberg(3, 2).unwrap();
        let vs: Vec<Vector> = (0..3)
            .map(|k| (0..7).map(|i| int(((i * 7 + k * 3) % 5) as i64 - 2)).collect())
            .collect();
        let supports: Vec<Vec<usize>> =
            vs.iter().map(|v| (0..7).filter(|&i| !v[i].is_zero()).collect()).collect();
        assert_eq!(h.bracket_by_expansion(&vs, &supports), h.bracket_by_minors(&vs));
    }
}
