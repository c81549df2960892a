//! Brute-force construction of free nilpotent n-Lie algebras.
//!
//! The weight-`w` component of the free n-Lie algebra on `d` generators is
//! the span of all bracket trees of weight `w` modulo skew-symmetry and the
//! ideal generated by the generalized Jacobi identity. Skew-symmetry is
//! handled by enumerating trees in normal form only. The Jacobi ideal at
//! weight `w` is spanned by
//!
//! * every instance `[[a1..an], b2..bn] - Σ_i [a1, .., [ai, b2..bn], .., an]`
//!   with canonical trees substituted for the arguments, and
//! * `[r, t2, .., tn]` for every relation `r` of lower weight.
//!
//! Both families are expanded into normal-form coordinates and ranked
//! exactly over ℤ.

mod tree;

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::algebra::NLieAlgebra;
use crate::count;
use crate::error::{Error, Result};
use crate::linalg::{self, SparseEchelon, SparseRow};
use crate::rational::{serialize_int, Rational};

pub use tree::BracketTree;

pub const DEFAULT_TERM_CAP: usize = 50_000;

/// Basis data for one weight of a free nilpotent n-Lie algebra.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradedComponent {
    pub d: usize,
    pub n: usize,
    pub w: usize,
    pub canonical_terms: Vec<BracketTree>,
    pub relation_rank: usize,
    pub dimension: usize,
    /// Indices into `canonical_terms` whose images form a basis.
    pub basis: Vec<usize>,
}

struct Level {
    terms: Vec<BracketTree>,
    index: HashMap<BracketTree, usize>,
    relations: SparseEchelon,
}

/// Incrementally built graded pieces of the free n-Lie algebra on `d`
/// generators.
pub struct FreeOracle {
    d: usize,
    n: usize,
    cap: usize,
    levels: Vec<Level>,
}

impl FreeOracle {
    pub fn new(d: usize, n: usize, cap: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidParameter(format!("arity must be at least 2, got {n}")));
        }
        Ok(FreeOracle { d, n, cap, levels: Vec::new() })
    }

    pub fn generators(&self) -> usize {
        self.d
    }

    pub fn arity(&self) -> usize {
        self.n
    }

    /// Builds every weight up to and including `w`.
    pub fn ensure_weight(&mut self, w: usize) -> Result<()> {
        if w == 0 {
            return Err(Error::InvalidParameter("weight must be at least 1".into()));
        }
        while self.levels.len() < w {
            let next = self.levels.len() + 1;
            let level = self.build_level(next)?;
            self.levels.push(level);
        }
        Ok(())
    }

    fn level(&self, w: usize) -> &Level {
        &self.levels[w - 1]
    }

    /// All normal-form trees of weight below `w`, ascending, with their
    /// weight minus one.
    fn pool(&self, max_weight: usize) -> Vec<(&BracketTree, usize)> {
        self.levels
            .iter()
            .take(max_weight)
            .enumerate()
            .flat_map(|(k, l)| l.terms.iter().map(move |t| (t, k)))
            .collect()
    }

    /// Number of normal-form trees of weight `w`, counted without building
    /// them: choose `n` distinct lower terms whose extra weights sum to `w-2`.
    #[allow(clippy::needless_range_loop)]
    fn term_count(&self, w: usize) -> BigInt {
        if w == 1 {
            return BigInt::from(self.d);
        }
        let target = w - 2;
        // ways[c][e]: ways to pick c terms with total extra weight e
        let mut ways = vec![vec![BigInt::zero(); target + 1]; self.n + 1];
        ways[0][0] = BigInt::from(1);
        for (extra, level) in self.levels.iter().take(w - 1).enumerate() {
            let size = level.terms.len() as i64;
            let mut next = ways.clone();
            for c in 0..=self.n {
                for e in 0..=target {
                    if ways[c][e].is_zero() {
                        continue;
                    }
                    for t in 1..=(self.n - c) {
                        let e2 = e + t * extra;
                        if e2 > target {
                            break;
                        }
                        let pick = count::binom(size, t as i64);
                        if pick.is_zero() {
                            break;
                        }
                        next[c + t][e2] += &ways[c][e] * pick;
                    }
                }
            }
            ways = next;
        }
        ways[self.n][target].clone()
    }

    fn build_level(&self, w: usize) -> Result<Level> {
        let count = self.term_count(w);
        if count > BigInt::from(self.cap) {
            return Err(Error::TermCap { weight: w, terms: count.to_usize().unwrap_or(usize::MAX), cap: self.cap });
        }
        let terms: Vec<BracketTree> = if w == 1 {
            (1..=self.d).map(BracketTree::leaf).collect()
        } else {
            let pool = self.pool(w - 1);
            let mut out = Vec::new();
            for_each_combination(&pool, self.n, w - 2, &mut |picked| {
                out.push(BracketTree::node(picked.iter().map(|&i| pool[i].0.clone()).collect()));
            });
            out.sort();
            out
        };
        let index = terms.iter().cloned().enumerate().map(|(i, t)| (t, i)).collect();
        let mut level = Level { terms, index, relations: SparseEchelon::new() };
        if w >= 3 {
            self.add_jacobi_instances(w, &mut level);
            self.add_lifted_relations(w, &mut level);
        }
        Ok(level)
    }

    fn add_jacobi_instances(&self, w: usize, level: &mut Level) {
        let n = self.n;
        let pool = self.pool(w - 2);
        for extra_a in 0..=(w - 3) {
            let extra_b = w - 3 - extra_a;
            let mut a_sets = Vec::new();
            for_each_combination(&pool, n, extra_a, &mut |p| a_sets.push(p.to_vec()));
            let mut b_sets = Vec::new();
            for_each_combination(&pool, n - 1, extra_b, &mut |p| b_sets.push(p.to_vec()));
            for a in &a_sets {
                let a_trees: Vec<BracketTree> = a.iter().map(|&i| pool[i].0.clone()).collect();
                for b in &b_sets {
                    let b_trees: Vec<BracketTree> = b.iter().map(|&i| pool[i].0.clone()).collect();
                    let row = jacobi_row(&a_trees, &b_trees, &level.index);
                    level.relations.insert(row);
                }
            }
        }
    }

    fn add_lifted_relations(&self, w: usize, level: &mut Level) {
        let n = self.n;
        for lower in 3..w {
            let source = self.level(lower);
            if source.relations.rank() == 0 {
                continue;
            }
            let pool = self.pool(w - lower);
            let mut others = Vec::new();
            for_each_combination(&pool, n - 1, w - lower - 1, &mut |p| others.push(p.to_vec()));
            for relation in source.relations.rows() {
                for rest in &others {
                    let rest: Vec<BracketTree> = rest.iter().map(|&i| pool[i].0.clone()).collect();
                    let mut row = SparseRow::new();
                    for (col, coeff) in relation {
                        let mut children = vec![source.terms[*col].clone()];
                        children.extend(rest.iter().cloned());
                        add_term(&mut row, &BracketTree::node(children), coeff, &level.index);
                    }
                    level.relations.insert(row);
                }
            }
        }
    }

    pub fn component(&mut self, w: usize) -> Result<GradedComponent> {
        self.ensure_weight(w)?;
        let level = self.level(w);
        let basis: Vec<usize> = (0..level.terms.len()).filter(|&c| !level.relations.is_pivot(c)).collect();
        Ok(GradedComponent {
            d: self.d,
            n: self.n,
            w,
            canonical_terms: level.terms.clone(),
            relation_rank: level.relations.rank(),
            dimension: basis.len(),
            basis,
        })
    }

    /// Rank of the Jacobi relations at weight `w`.
    pub fn relation_rank(&mut self, w: usize) -> Result<usize> {
        self.ensure_weight(w)?;
        Ok(self.level(w).relations.rank())
    }

    /// The free nilpotent algebra of class `c`: the direct sum of the graded
    /// pieces of weight `1..=c`, with brackets of total weight above `c` set to zero.
    pub fn export(&mut self, c: usize) -> Result<NLieAlgebra> {
        if c == 0 {
            return Err(Error::InvalidParameter("class must be at least 1".into()));
        }
        self.ensure_weight(c)?;
        // global basis: (weight, term index); position of each basis term
        let mut basis: Vec<(usize, usize)> = Vec::new();
        let mut position: Vec<HashMap<usize, usize>> = Vec::new();
        for w in 1..=c {
            let level = self.level(w);
            let mut map = HashMap::new();
            for col in (0..level.terms.len()).filter(|&col| !level.relations.is_pivot(col)) {
                map.insert(col, basis.len());
                basis.push((w, col));
            }
            position.push(map);
        }
        let dim = basis.len();
        let labels: Vec<String> = basis.iter().map(|&(w, col)| self.level(w).terms[col].to_string()).collect();
        let mut brackets = Vec::new();
        let mut tuple = Vec::with_capacity(self.n);
        for_each_increasing(dim, self.n, &mut tuple, &mut |args| {
            let weight = args.iter().map(|&i| basis[i].0 - 1).sum::<usize>() + 2;
            if weight > c {
                return;
            }
            let children: Vec<BracketTree> =
                args.iter().map(|&i| self.level(basis[i].0).terms[basis[i].1].clone()).collect();
            let Some((negative, normal)) = BracketTree::node(children).normalize() else { return };
            let level = self.level(weight);
            let col = level.index[&normal];
            let sign = if negative { -1 } else { 1 };
            let v: BTreeMap<usize, Rational> = [(col, crate::rational::int(sign))].into_iter().collect();
            let reduced = level.relations.reduce(&v);
            if reduced.is_empty() {
                return;
            }
            let mut value = linalg::zero_vector(dim);
            for (col, coeff) in reduced {
                value[position[weight - 1][&col]] = coeff;
            }
            brackets.push((args.to_vec(), value));
        });
        let mut algebra = NLieAlgebra::new(self.n, labels, brackets)?;
        algebra.mark_trusted();
        Ok(algebra)
    }
}

fn add_term(row: &mut SparseRow, tree: &BracketTree, coeff: &BigInt, index: &HashMap<BracketTree, usize>) {
    let Some((negative, normal)) = tree.normalize() else { return };
    let col = index[&normal];
    let entry = row.entry(col).or_insert_with(BigInt::zero);
    if negative {
        *entry -= coeff;
    } else {
        *entry += coeff;
    }
}

fn jacobi_row(a: &[BracketTree], b: &[BracketTree], index: &HashMap<BracketTree, usize>) -> SparseRow {
    let mut row = SparseRow::new();
    let one = BigInt::from(1);
    let minus_one = BigInt::from(-1);
    let mut outer = vec![BracketTree::node(a.to_vec())];
    outer.extend(b.iter().cloned());
    add_term(&mut row, &BracketTree::node(outer), &one, index);
    for i in 0..a.len() {
        let mut inner = vec![a[i].clone()];
        inner.extend(b.iter().cloned());
        let mut args = a.to_vec();
        args[i] = BracketTree::node(inner);
        add_term(&mut row, &BracketTree::node(args), &minus_one, index);
    }
    row
}

/// Calls `f` with every choice of `count` distinct pool indices, in
/// decreasing index order, whose extra weights sum to `target`.
fn for_each_combination(
    pool: &[(&BracketTree, usize)],
    count: usize,
    target: usize,
    f: &mut dyn FnMut(&[usize]),
) {
    fn rec(
        pool: &[(&BracketTree, usize)],
        upper: usize,
        left: usize,
        target: usize,
        picked: &mut Vec<usize>,
        f: &mut dyn FnMut(&[usize]),
    ) {
        if left == 0 {
            if target == 0 {
                f(picked);
            }
            return;
        }
        for i in (0..upper).rev() {
            if i + 1 < left {
                break;
            }
            let extra = pool[i].1;
            if extra > target {
                continue;
            }
            picked.push(i);
            rec(pool, i, left - 1, target - extra, picked, f);
            picked.pop();
        }
    }
    let mut picked = Vec::with_capacity(count);
    rec(pool, pool.len(), count, target, &mut picked, f);
}

fn for_each_increasing(dim: usize, k: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
    if cur.len() == k {
        f(cur);
        return;
    }
    let start = cur.last().map_or(0, |&l| l + 1);
    for i in start..dim {
        if dim - i < k - cur.len() {
            break;
        }
        cur.push(i);
        for_each_increasing(dim, k, cur, f);
        cur.pop();
    }
}

/// Canonical terms of weight `w` on `d` generators.
pub fn enumerate_terms(d: usize, n: usize, w: usize) -> Result<Vec<BracketTree>> {
    let mut oracle = FreeOracle::new(d, n, usize::MAX)?;
    Ok(oracle.component(w)?.canonical_terms)
}

pub fn graded_dimension(d: usize, n: usize, w: usize, cap: usize) -> Result<GradedComponent> {
    FreeOracle::new(d, n, cap)?.component(w)
}

pub fn export_free_nilpotent(d: usize, n: usize, c: usize, cap: usize) -> Result<NLieAlgebra> {
    FreeOracle::new(d, n, cap)?.export(c)
}

/// One weight of a formula-versus-oracle comparison.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompareRow {
    pub w: usize,
    pub formula: BigInt,
    /// `None` when the oracle hit its term cap.
    pub oracle: Option<usize>,
    /// Witt reference, only for ordinary Lie algebras (`n = 2`).
    pub witt: Option<BigInt>,
    pub agree: Option<bool>,
}

impl Serialize for CompareRow {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        struct Int<'a>(&'a BigInt);
        impl Serialize for Int<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                serialize_int(self.0, s)
            }
        }
        let mut st = s.serialize_struct("CompareRow", 5)?;
        st.serialize_field("w", &self.w)?;
        st.serialize_field("formula", &Int(&self.formula))?;
        match self.oracle {
            Some(v) => st.serialize_field("oracle", &v)?,
            None => st.serialize_field("oracle", "skipped")?,
        }
        st.serialize_field("witt", &self.witt.as_ref().map(Int))?;
        match self.agree {
            Some(v) => st.serialize_field("agree", &v)?,
            None => st.serialize_field("agree", "skipped")?,
        }
        st.end()
    }
}

/// Compares the closed-form count with the oracle dimension for weights
/// `1..=w_max`. Disagreements are reported, never raised; weights beyond
/// the oracle's cap are marked skipped.
pub fn compare_report(d: usize, n: usize, w_max: usize, cap: usize) -> Result<Vec<CompareRow>> {
    let mut oracle = FreeOracle::new(d, n, cap)?;
    let mut capped = false;
    let mut rows = Vec::with_capacity(w_max);
    for w in 1..=w_max {
        let formula = count::count(d as u64, n as u64, w as u64)?;
        let oracle_value = if capped {
            None
        } else {
            match oracle.component(w) {
                Ok(c) => Some(c.dimension),
                Err(Error::TermCap { .. }) => {
                    capped = true;
                    None
                }
                Err(e) => return Err(e),
            }
        };
        let witt = if n == 2 { Some(count::witt_count(d as u64, w as u64)?) } else { None };
        let agree = oracle_value.map(|o| BigInt::from(o) == formula);
        rows.push(CompareRow { w, formula, oracle: oracle_value, witt, agree });
    }
    Ok(rows)
}

/// CSV with header `w,formula,oracle,witt,agree`.
pub fn compare_csv(rows: &[CompareRow]) -> String {
    let mut out = String::from("w,formula,oracle,witt,agree\n");
    for r in rows {
        let oracle = r.oracle.map_or_else(|| "skipped".to_string(), |o| o.to_string());
        let witt = r.witt.as_ref().map_or_else(String::new, ToString::to_string);
        let agree = r.agree.map_or_else(|| "skipped".to_string(), |a| a.to_string());
        out.push_str(&format!("{},{},{},{},{}\n", r.w, r.formula, oracle, witt, agree));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dim(d: usize, n: usize, w: usize) -> usize {
        graded_dimension(d, n, w, DEFAULT_TERM_CAP).unwrap().dimension
    }

    #[test]
    fn enumerate_small_cases() {
        assert_eq!(enumerate_terms(3, 2, 1).unwrap().len(), 3);
        let t = enumerate_terms(3, 3, 2).unwrap();
        assert_eq!(t.iter().map(ToString::to_string).collect::<Vec<_>>(), vec!["[x3,x2,x1]"]);
        let t = enumerate_terms(2, 2, 3).unwrap();
        assert_eq!(t.iter().map(ToString::to_string).collect::<Vec<_>>(), vec!["[[x2,x1],x1]", "[[x2,x1],x2]"]);
        for term in enumerate_terms(3, 2, 4).unwrap() {
            assert!(term.is_normal());
            assert_eq!(term.weight(), 4);
        }
    }

    #[test]
    fn term_count_matches_enumeration() {
        for (d, n) in [(2, 2), (3, 2), (3, 3), (4, 3)] {
            let mut o = FreeOracle::new(d, n, DEFAULT_TERM_CAP).unwrap();
            o.ensure_weight(3).unwrap();
            for w in 1..=3 {
                assert_eq!(o.term_count(w), BigInt::from(o.level(w).terms.len()), "d={d} n={n} w={w}");
            }
        }
    }

    #[test]
    fn relation_ranks() {
        let rank = |d, n, w| FreeOracle::new(d, n, DEFAULT_TERM_CAP).unwrap().relation_rank(w).unwrap();
        assert_eq!(rank(2, 2, 3), 0);
        assert_eq!(rank(3, 2, 3), 1);
        assert_eq!(rank(3, 3, 3), 0);
    }

    #[test]
    fn witt_dimensions() {
        assert_eq!(dim(2, 2, 3), 2);
        assert_eq!(dim(3, 2, 4), 18);
        assert_eq!(dim(2, 2, 5), 6);
        for n in 2..=5 {
            assert_eq!(dim(n, n, 2), 1);
        }
    }

    #[test]
    fn cap_is_reported() {
        let err = graded_dimension(3, 2, 4, 10).unwrap_err();
        assert!(matches!(err, Error::TermCap { weight: 4, cap: 10, .. }), "{err:?}");
    }

    #[test]
    fn export_shapes() {
        let h = export_free_nilpotent(2, 2, 2, DEFAULT_TERM_CAP).unwrap();
        assert_eq!(h.dim(), 3);
        assert!(h.validate().is_valid());
        assert_eq!(h.analyze().decomposition, Some((1, 0)));

        let a = export_free_nilpotent(3, 3, 2, DEFAULT_TERM_CAP).unwrap();
        assert_eq!(a.dim(), 4);
        assert_eq!(a.derived_subalgebra().dim(), 1);

        let f = export_free_nilpotent(2, 2, 3, DEFAULT_TERM_CAP).unwrap();
        assert_eq!(f.dim(), 5);
        assert!(f.validate().is_valid());
        let dims: Vec<usize> = f.lower_central_series().iter().map(|s| s.dim()).collect();
        assert_eq!(dims, vec![5, 3, 2, 0]);
    }

    #[test]
    fn compare_rows() {
        let rows = compare_report(2, 2, 4, DEFAULT_TERM_CAP).unwrap();
        assert!(rows.iter().all(|r| r.agree == Some(true)));
        let rows = compare_report(3, 2, 3, DEFAULT_TERM_CAP).unwrap();
        assert_eq!(rows[2].formula, BigInt::from(9));
        assert_eq!(rows[2].witt, Some(BigInt::from(8)));
        assert_eq!(rows[2].oracle, Some(8));
        assert_eq!(rows[2].agree, Some(false));
        let rows = compare_report(3, 3, 3, DEFAULT_TERM_CAP).unwrap();
        assert_eq!(rows.iter().map(|r| r.oracle.unwrap()).collect::<Vec<_>>(), vec![3, 1, 3]);
        assert!(rows.iter().all(|r| r.agree == Some(true) && r.witt.is_none()));
        let rows = compare_report(3, 2, 4, 10).unwrap();
        assert_eq!(rows[3].oracle, None);
        assert_eq!(rows[3].agree, None);
        assert!(compare_csv(&rows).ends_with("4,18,skipped,18,skipped\n"));
    }
}
