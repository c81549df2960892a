//! Recognition of `H(n, m) ⊕ F(k)` and capability predicates.
//!
//! For a nilpotent algebra with one-dimensional derived algebra spanned by
//! `z`, the bracket defines an alternating form `φ` on `L / Z(L)` through
//! `[v1, …, vn] = φ(v1, …, vn) z`. For `n = 2` a symplectic basis of `φ` is
//! extracted greedily. For `n ≥ 3` the blocks are the eigenspaces of a
//! generic element of `{T : φ(Tx1, x2, …) = φ(x1, Tx2, …)}`, which acts as
//! a scalar on each block. Either way the result is certified by rewriting
//! the algebra in the new basis and comparing structure constants exactly.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::algebra::{increasing_tuples, NLieAlgebra};
use crate::count;
use crate::error::{Error, Result};
use crate::linalg::{self, Matrix, Subspace, Vector};
use crate::rational::{self, serialize_int, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    pub m: usize,
    pub k: usize,
    /// Columns are the new basis vectors in the coordinates of the input.
    #[serde(serialize_with = "serialize_matrix")]
    pub change_of_basis: Matrix,
}

fn serialize_matrix<S: Serializer>(m: &Matrix, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(m.iter().map(|row| row.iter().map(rational::format).collect::<Vec<_>>()))
}

/// Bracket-to-scalar map `φ` relative to the derived generator.
struct Form<'a> {
    algebra: &'a NLieAlgebra,
    pivot: usize,
}

impl Form<'_> {
    fn eval(&self, vectors: &[Vector]) -> Rational {
        self.algebra.bracket_unchecked(vectors)[self.pivot].clone()
    }

    fn eval_basis(&self, indices: &[usize]) -> Rational {
        match self.algebra.bracket_basis(indices) {
            Some((negative, v)) if negative => -v[self.pivot].clone(),
            Some((_, v)) => v[self.pivot].clone(),
            None => Rational::zero(),
        }
    }
}

/// The exact comparison with the normal form at the end also certifies the
/// Jacobi identity, so validation only runs to explain a failure.
pub fn decompose_dim1_derived(algebra: &NLieAlgebra) -> Result<Decomposition> {
    decompose_unchecked(algebra).map_err(|e| match e {
        Error::NotDecomposable(_) if !algebra.validate().is_valid() => {
            Error::Malformed("algebra fails the Jacobi identity".into())
        }
        e => e,
    })
}

fn decompose_unchecked(algebra: &NLieAlgebra) -> Result<Decomposition> {
    let derived = algebra.derived_subalgebra();
    if derived.dim() != 1 {
        return Err(Error::DerivedDimension(derived.dim()));
    }
    if algebra.nilpotency_class().is_none() {
        return Err(Error::NotNilpotent);
    }
    let n = algebra.arity();
    let dim = algebra.dim();
    let z = derived.basis()[0].clone();
    let form = Form { algebra, pivot: derived.pivots()[0] };
    let center = algebra.center();
    let reps = center.complement_indices();

    let blocks = if n == 2 { symplectic_blocks(&form, &reps, dim)? } else { centroid_blocks(&form, &reps, dim, n)? };
    let m = blocks.len();

    let mut columns = vec![z.clone()];
    for block in blocks {
        columns.extend(block);
    }
    let mut span = Subspace::span(dim, [z]);
    for b in center.basis() {
        if !span.contains(b) {
            columns.push(b.clone());
            span = Subspace::span(dim, span.basis().iter().cloned().chain([b.clone()]));
        }
    }
    let k = center.dim() - 1;
    if columns.len() != dim {
        return Err(Error::NotDecomposable(format!("assembled {} basis vectors for dimension {dim}", columns.len())));
    }
    let change_of_basis = linalg::transpose(&columns, dim);
    let rewritten = algebra.change_basis(&change_of_basis)?;
    let target = NLieAlgebra::heisenberg(n, m)?.direct_sum(&NLieAlgebra::abelian(k, n)?)?;
    if rewritten.constants() != target.constants() {
        return Err(Error::NotDecomposable("rewritten constants differ from the normal form".into()));
    }
    Ok(Decomposition { m, k, change_of_basis })
}

fn symplectic_blocks(form: &Form<'_>, reps: &[usize], dim: usize) -> Result<Vec<Vec<Vector>>> {
    let mut pool: Vec<Vector> = reps.iter().map(|&i| linalg::unit_vector(dim, i)).collect();
    let mut blocks = Vec::new();
    while !pool.is_empty() {
        let found = (0..pool.len())
            .flat_map(|i| (i + 1..pool.len()).map(move |j| (i, j)))
            .find_map(|(i, j)| {
                let value = form.eval(&[pool[i].clone(), pool[j].clone()]);
                (!value.is_zero()).then_some((i, j, value))
            });
        let Some((i, j, value)) = found else {
            return Err(Error::NotDecomposable("form degenerates on the complement of the center".into()));
        };
        let v = pool.remove(j);
        let u: Vector = pool.remove(i).iter().map(|x| x / &value).collect();
        for w in pool.iter_mut() {
            let wv = form.eval(&[w.clone(), v.clone()]);
            let wu = form.eval(&[w.clone(), u.clone()]);
            for ((x, a), b) in w.iter_mut().zip(&u).zip(&v) {
                *x += &wu * b - &wv * a;
            }
        }
        blocks.push(vec![u, v]);
    }
    Ok(blocks)
}

fn centroid_blocks(form: &Form<'_>, reps: &[usize], dim: usize, n: usize) -> Result<Vec<Vec<Vector>>> {
    let r = reps.len();
    if !r.is_multiple_of(n) {
        return Err(Error::NotDecomposable(format!("complement of the center has dimension {r}, not a multiple of {n}")));
    }
    let m = r / n;
    // T[j][a] = coefficient of w_j in T w_a, unknown index j * r + a
    let mut rows: Matrix = Vec::new();
    let tails = increasing_tuples(r, n - 2);
    let mut args = vec![0usize; n];
    // swapping a1 and a2 gives the same equation
    for a1 in 0..r {
        for a2 in a1..r {
            for tail in &tails {
                let mut row = linalg::zero_vector(r * r);
                for j in 0..r {
                    args[2..].iter_mut().zip(tail).for_each(|(s, &t)| *s = reps[t]);
                    args[0] = reps[j];
                    args[1] = reps[a2];
                    row[j * r + a1] += form.eval_basis(&args);
                    args[0] = reps[a1];
                    args[1] = reps[j];
                    row[j * r + a2] -= form.eval_basis(&args);
                }
                if !linalg::is_zero(&row) {
                    rows.push(row);
                }
            }
        }
    }
    let centroid = linalg::nullspace(rows, r * r);
    if centroid.len() != m {
        return Err(Error::NotDecomposable(format!("centroid has dimension {}, expected {m}", centroid.len())));
    }
    let as_matrix = |flat: &Vector| -> Matrix { flat.chunks(r).map(<[Rational]>::to_vec).collect() };

    let max_shift = m * m * m + 1;
    for s in 1..=max_shift {
        let base = rational::int(s as i64 + 1);
        let mut weight = Rational::one();
        let mut flat = linalg::zero_vector(r * r);
        for t in &centroid {
            for (x, y) in flat.iter_mut().zip(t) {
                *x += &weight * y;
            }
            weight *= &base;
        }
        let t = as_matrix(&flat);
        let poly = minimal_polynomial(&t, r);
        if poly.len() != m + 1 {
            continue;
        }
        let eigenvalues = rational_roots(&poly)?;
        let mut blocks = Vec::with_capacity(m);
        for lambda in eigenvalues {
            let shifted: Matrix = t
                .iter()
                .enumerate()
                .map(|(i, row)| row.iter().enumerate().map(|(j, x)| if i == j { x - &lambda } else { x.clone() }).collect())
                .collect();
            let space = Subspace::span(r, linalg::nullspace(shifted, r));
            if space.dim() != n {
                return Err(Error::NotDecomposable(format!("eigenspace of dimension {} instead of {n}", space.dim())));
            }
            let mut vectors: Vec<Vector> = space
                .basis()
                .iter()
                .map(|coords| {
                    let mut v = linalg::zero_vector(dim);
                    for (c, &i) in coords.iter().zip(reps) {
                        v[i] = c.clone();
                    }
                    v
                })
                .collect();
            let value = form.eval(&vectors);
            if value.is_zero() {
                return Err(Error::NotDecomposable("form vanishes on an eigenspace".into()));
            }
            vectors[0].iter_mut().for_each(|x| *x /= &value);
            blocks.push(vectors);
        }
        return Ok(blocks);
    }
    Err(Error::NotDecomposable("no element of the centroid separates the blocks".into()))
}

/// Monic minimal polynomial, coefficients from the constant term up.
fn minimal_polynomial(t: &Matrix, r: usize) -> Vec<Rational> {
    let mut powers: Vec<Vector> = Vec::new();
    let mut current = linalg::identity(r);
    loop {
        powers.push(current.iter().flatten().cloned().collect());
        let k = powers.len();
        let columns = linalg::transpose(&powers, r * r);
        if let Some(relation) = linalg::nullspace(columns, k).into_iter().next() {
            let lead = relation[k - 1].clone();
            return relation.iter().map(|c| c / &lead).collect();
        }
        current = linalg::mat_mul(t, &current);
    }
}

/// Roots of a monic rational polynomial that splits over the rationals with
/// simple roots, in decreasing order.
fn rational_roots(poly: &[Rational]) -> Result<Vec<Rational>> {
    let degree = poly.len() - 1;
    let scale = poly.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    // Q(y) = scale^deg P(y / scale) is monic with integer coefficients, so its
    // rational roots are integers.
    let mut q: Vec<BigInt> = poly
        .iter()
        .enumerate()
        .map(|(i, c)| (c * Rational::from(num_traits::pow(scale.clone(), degree - i))).to_integer())
        .collect();
    let mut roots = Vec::with_capacity(degree);
    while q.len() > 1 {
        let root = largest_integer_root(&q)?;
        roots.push(Rational::new(root.clone(), scale.clone()));
        q = deflate(&q, &root);
    }
    Ok(roots)
}

fn eval_poly(q: &[BigInt], y: &BigInt) -> BigInt {
    q.iter().rev().fold(BigInt::zero(), |acc, c| acc * y + c)
}

fn derivative(q: &[BigInt]) -> Vec<BigInt> {
    q.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect()
}

/// Newton iteration from above the Cauchy bound, rounding steps down so the
/// iterate never passes the largest root.
fn largest_integer_root(q: &[BigInt]) -> Result<BigInt> {
    let dq = derivative(q);
    let bound = q.iter().take(q.len() - 1).map(|c| c.abs()).max().unwrap_or_default() + 1;
    let mut y = bound;
    let guard = 64 * (q.iter().map(|c| c.bits()).max().unwrap_or(1) as usize + 8) * q.len();
    for _ in 0..guard {
        let value = eval_poly(q, &y);
        if value.is_zero() {
            return Ok(y);
        }
        let slope = eval_poly(&dq, &y);
        if !value.is_positive() || !slope.is_positive() {
            return Err(Error::NotDecomposable("eigenvalues are not rational".into()));
        }
        let step = value.div_floor(&slope).max(BigInt::one());
        y -= step;
    }
    Err(Error::NotDecomposable("eigenvalue search did not converge".into()))
}

fn deflate(q: &[BigInt], root: &BigInt) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); q.len() - 1];
    let mut carry = BigInt::zero();
    for i in (1..q.len()).rev() {
        carry = &q[i] + carry * root;
        out[i - 1] = carry.clone();
    }
    out
}

/// `F(d)` is capable exactly when `d ≥ n`.
pub fn is_capable_abelian(d: usize, n: usize) -> bool {
    d >= n
}

/// `H(n, m) ⊕ F(k)` is capable exactly when `m = 1`.
pub fn is_capable_heisenberg_sum(_n: usize, m: usize, _k: usize) -> bool {
    m == 1
}

/// Only `H(2, 1)` is 2-capable among Heisenberg algebras.
pub fn is_2capable_heisenberg(n: usize, m: usize) -> bool {
    n == 2 && m == 1
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Gamma3Check {
    pub lhs: usize,
    #[serde(serialize_with = "serialize_int")]
    pub rhs: BigInt,
    pub holds: bool,
}

/// `dim γ₃(L) ≤ l(dim L − dim Z₂(L), n, 3)`.
pub fn check_gamma3_bound(algebra: &NLieAlgebra) -> Result<Gamma3Check> {
    let lower = algebra.lower_central_series();
    let lhs = lower.get(2).or(lower.last()).map_or(0, Subspace::dim);
    let quotient = algebra.dim() - algebra.second_center().dim();
    let rhs = count::count(quotient as u64, algebra.arity() as u64, 3)?;
    let holds = BigInt::from(lhs) <= rhs;
    Ok(Gamma3Check { lhs, rhs, holds })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn conjugate(a: &NLieAlgebra, seed: u64) -> NLieAlgebra {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = linalg::random_invertible(a.dim(), 3, &mut rng);
        a.change_basis(&p).unwrap()
    }

    fn normal_form(n: usize, m: usize, k: usize) -> NLieAlgebra {
        NLieAlgebra::heisenberg(n, m).unwrap().direct_sum(&NLieAlgebra::abelian(k, n).unwrap()).unwrap()
    }

    #[test]
    fn heisenberg_is_its_own_normal_form() {
        let d = decompose_dim1_derived(&NLieAlgebra::heisenberg(2, 1).unwrap()).unwrap();
        assert_eq!((d.m, d.k), (1, 0));
        assert_eq!(d.change_of_basis, linalg::identity(3));
    }

    #[test]
    fn recovers_conjugated_sums() {
        for (n, m, k) in [(2, 2, 1), (3, 2, 1), (3, 1, 2), (4, 2, 0), (2, 3, 2)] {
            let a = conjugate(&normal_form(n, m, k), 7 + n as u64);
            let d = decompose_dim1_derived(&a).unwrap();
            assert_eq!((d.m, d.k), (m, k), "n={n}");
            let back = a.change_basis(&d.change_of_basis).unwrap();
            assert_eq!(back.constants(), normal_form(n, m, k).constants());
        }
    }

    #[test]
    fn rejects_wrong_shapes() {
        let abelian = NLieAlgebra::abelian(4, 2).unwrap();
        assert_eq!(decompose_dim1_derived(&abelian), Err(Error::DerivedDimension(0)));
        let e = |i| linalg::unit_vector(2, i);
        let solvable = NLieAlgebra::new(2, vec!["a".into(), "b".into()], [(vec![0, 1], e(1))]).unwrap();
        assert_eq!(decompose_dim1_derived(&solvable), Err(Error::NotNilpotent));
    }

    #[test]
    fn integer_roots() {
        // (x - 1/2)(x + 3)(x - 4) = x^3 - 3/2 x^2 - 21/2 x + 6
        let poly: Vec<Rational> = ["6", "-23/2", "-3/2", "1"].iter().map(|s| rational::parse(s).unwrap()).collect();
        let roots = rational_roots(&poly).unwrap();
        let shown: Vec<String> = roots.iter().map(rational::format).collect();
        assert_eq!(shown, ["4", "1/2", "-3"]);
        // x^2 + 1 has no real roots
        let bad = vec![rational::int(1), rational::int(0), rational::int(1)];
        assert!(rational_roots(&bad).is_err());
        // x^2 - 2 has irrational roots
        let bad = vec![rational::int(-2), rational::int(0), rational::int(1)];
        assert!(rational_roots(&bad).is_err());
    }

    #[test]
    fn predicates() {
        assert!(is_capable_abelian(3, 2));
        assert!(!is_capable_abelian(2, 3));
        assert!(is_capable_abelian(4, 4));
        assert!(is_capable_heisenberg_sum(2, 1, 0));
        assert!(!is_capable_heisenberg_sum(3, 2, 5));
        assert!(is_capable_heisenberg_sum(4, 1, 7));
        assert!(is_2capable_heisenberg(2, 1));
        assert!(!is_2capable_heisenberg(3, 1));
        assert!(!is_2capable_heisenberg(2, 4));
        for n in 2..6 {
            for m in 1..4 {
                if is_2capable_heisenberg(n, m) {
                    assert!(is_capable_heisenberg_sum(n, m, 0));
                }
            }
        }
    }

    #[test]
    fn gamma3_on_small_algebras() {
        let h = check_gamma3_bound(&NLieAlgebra::heisenberg(3, 2).unwrap()).unwrap();
        assert_eq!((h.lhs, h.rhs.clone(), h.holds), (0, BigInt::zero(), true));
        let a = check_gamma3_bound(&NLieAlgebra::abelian(4, 2).unwrap()).unwrap();
        assert!(a.holds);
        assert_eq!(a.lhs, 0);
    }
}
