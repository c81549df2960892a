//! Exact linear algebra over ℚ (dense) and ℤ (sparse, fraction-free).

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use crate::rational::{self, Rational};

pub type Vector = Vec<Rational>;
/// Row-major dense matrix.
pub type Matrix = Vec<Vec<Rational>>;

pub fn zero_vector(len: usize) -> Vector {
    vec![Rational::zero(); len]
}

pub fn unit_vector(len: usize, index: usize) -> Vector {
    let mut v = zero_vector(len);
    v[index] = Rational::one();
    v
}

pub fn is_zero(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn identity(dim: usize) -> Matrix {
    (0..dim).map(|i| unit_vector(dim, i)).collect()
}

pub fn transpose(m: &Matrix, cols: usize) -> Matrix {
    (0..cols).map(|c| m.iter().map(|row| row[c].clone()).collect()).collect()
}

pub fn mat_vec(m: &Matrix, v: &[Rational]) -> Vector {
    m.iter()
        .map(|row| row.iter().zip(v).fold(Rational::zero(), |acc, (a, b)| acc + a * b))
        .collect()
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|c| {
                    row.iter()
                        .zip(b)
                        .fold(Rational::zero(), |acc, (x, brow)| acc + x * &brow[c])
                })
                .collect()
        })
        .collect()
}

/// Reduced row echelon form. Returns the nonzero rows and their pivot columns.
pub fn rref(mut rows: Matrix, cols: usize) -> (Matrix, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..cols {
        let Some(found) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, found);
        let inv = rows[rank][col].recip();
        for x in rows[rank].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == rank || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x -= &factor * p;
                }
            }
        }
        pivots.push(col);
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rows.truncate(rank);
    (rows, pivots)
}

pub fn rank(rows: Matrix, cols: usize) -> usize {
    rref(rows, cols).1.len()
}

/// Basis of `{x : m·x = 0}` where `m` has `cols` columns.
pub fn nullspace(m: Matrix, cols: usize) -> Vec<Vector> {
    let (reduced, pivots) = rref(m, cols);
    let mut is_pivot = vec![false; cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    (0..cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut x = unit_vector(cols, free);
            for (row, &p) in reduced.iter().zip(&pivots) {
                x[p] = -row[free].clone();
            }
            x
        })
        .collect()
}

/// Basis of `{c : Σ cᵢ·rowsᵢ = 0}`.
pub fn left_kernel(rows: &Matrix, cols: usize) -> Vec<Vector> {
    nullspace(transpose(rows, cols), rows.len())
}

pub fn determinant(m: &Matrix) -> Rational {
    let n = m.len();
    let mut a = m.clone();
    let mut det = Rational::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Rational::zero();
        };
        if p != col {
            a.swap(p, col);
            det = -det;
        }
        let pivot = a[col][col].clone();
        det *= &pivot;
        let (top, bottom) = a.split_at_mut(col + 1);
        let pivot_row = &top[col];
        for row in bottom {
            if row[col].is_zero() {
                continue;
            }
            let factor = &row[col] / &pivot;
            for (x, p) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                *x -= &factor * p;
            }
        }
    }
    det
}

pub fn inverse(m: &Matrix) -> Option<Matrix> {
    let n = m.len();
    let augmented: Matrix = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend(unit_vector(n, i));
            r
        })
        .collect();
    let (reduced, pivots) = rref(augmented, 2 * n);
    if pivots.len() < n || pivots[n - 1] >= n {
        return None;
    }
    Some(reduced.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Random invertible integer matrix with entries in `-bound..=bound`.
pub fn random_invertible<R: Rng>(dim: usize, bound: i64, rng: &mut R) -> Matrix {
    loop {
        let m: Matrix = (0..dim)
            .map(|_| (0..dim).map(|_| rational::int(rng.gen_range(-bound..=bound))).collect())
            .collect();
        if !determinant(&m).is_zero() {
            return m;
        }
    }
}

/// A subspace of ℚ^ambient_dim stored in reduced row echelon form, so two
/// subspaces are equal exactly when their representations are equal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn span<I: IntoIterator<Item = Vector>>(ambient_dim: usize, vectors: I) -> Self {
        let rows: Matrix = vectors.into_iter().filter(|v| !is_zero(v)).collect();
        let (basis, pivots) = rref(rows, ambient_dim);
        Subspace { ambient_dim, basis, pivots }
    }

    pub fn zero(ambient_dim: usize) -> Self {
        Subspace { ambient_dim, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Subspace { ambient_dim, basis: identity(ambient_dim), pivots: (0..ambient_dim).collect() }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Canonical representative of `v` modulo this subspace: every pivot
    /// coordinate of the result is zero.
    pub fn reduce(&self, v: &[Rational]) -> Vector {
        let mut out = v.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            if out[p].is_zero() {
                continue;
            }
            let factor = out[p].clone();
            for (x, b) in out.iter_mut().zip(row) {
                if !b.is_zero() {
                    *x -= &factor * b;
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        is_zero(&self.reduce(v))
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.basis.iter().all(|b| other.contains(b))
    }

    /// Standard basis indices that complete a basis of this subspace.
    pub fn complement_indices(&self) -> Vec<usize> {
        (0..self.ambient_dim).filter(|c| !self.pivots.contains(c)).collect()
    }
}

/// Integer row echelon structure for sparse relation matrices. Rows are kept
/// primitive (content 1, positive leading coefficient) and each has a
/// distinct leading column.
#[derive(Clone, Debug, Default)]
pub struct SparseEchelon {
    rows: Vec<Vec<(usize, BigInt)>>,
    pivot_row: HashMap<usize, usize>,
}

pub type SparseRow = BTreeMap<usize, BigInt>;

impl SparseEchelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<(usize, BigInt)>] {
        &self.rows
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivot_row.contains_key(&col)
    }

    /// Reduces `row` against the stored rows and keeps it if it is independent.
    /// Returns whether the rank grew.
    pub fn insert(&mut self, row: SparseRow) -> bool {
        let mut row: SparseRow = row.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        loop {
            let Some((&lead, lead_val)) = row.iter().next() else {
                return false;
            };
            let Some(&idx) = self.pivot_row.get(&lead) else {
                break;
            };
            let lead_val = lead_val.clone();
            let pivot = &self.rows[idx];
            let p = pivot[0].1.clone();
            let g = p.gcd(&lead_val);
            let (scale_row, scale_pivot) = (&p / &g, &lead_val / &g);
            for v in row.values_mut() {
                *v *= &scale_row;
            }
            for (c, v) in pivot {
                let e = row.entry(*c).or_insert_with(BigInt::zero);
                *e -= &scale_pivot * v;
                if e.is_zero() {
                    row.remove(c);
                }
            }
            make_primitive(&mut row);
        }
        make_primitive(&mut row);
        let lead = *row.keys().next().expect("nonempty row");
        self.pivot_row.insert(lead, self.rows.len());
        self.rows.push(row.into_iter().collect());
        true
    }

    /// Canonical representative of `v` modulo the row space; pivot
    /// coordinates of the result are zero.
    pub fn reduce(&self, v: &BTreeMap<usize, Rational>) -> BTreeMap<usize, Rational> {
        let mut out: BTreeMap<usize, Rational> =
            v.iter().filter(|(_, x)| !x.is_zero()).map(|(c, x)| (*c, x.clone())).collect();
        let mut cursor = 0usize;
        loop {
            let next = out
                .range(cursor..)
                .find(|(c, _)| self.pivot_row.contains_key(c))
                .map(|(c, x)| (*c, x.clone()));
            let Some((col, coeff)) = next else { break };
            let pivot = &self.rows[self.pivot_row[&col]];
            let factor = coeff / Rational::from_integer(pivot[0].1.clone());
            for (c, p) in pivot {
                let e = out.entry(*c).or_insert_with(Rational::zero);
                *e -= &factor * Rational::from_integer(p.clone());
                if e.is_zero() {
                    out.remove(c);
                }
            }
            cursor = col + 1;
        }
        out
    }
}

fn make_primitive(row: &mut SparseRow) {
    let mut g = BigInt::zero();
    for v in row.values() {
        g = g.gcd(v);
        if g.is_one() {
            break;
        }
    }
    let negate = row.values().next().is_some_and(|v| v.is_negative());
    if g.is_zero() {
        return;
    }
    if negate {
        g = -g;
    }
    if !g.is_one() {
        for v in row.values_mut() {
            *v /= &g;
        }
    }
}
