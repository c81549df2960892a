use serde::{Serialize, Serializer};

use super::{increasing_tuples, NLieAlgebra};
use crate::linalg::{self, Matrix, Subspace, Vector};

/// Invariants of a concrete algebra, as printed by `nlie analyze`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AnalysisReport {
    pub dim: usize,
    pub arity: usize,
    pub is_valid: bool,
    pub derived_dim: usize,
    pub center_dim: usize,
    pub lower_series_dims: Vec<usize>,
    pub upper_series_dims: Vec<usize>,
    #[serde(serialize_with = "serialize_class")]
    pub nilpotency_class: Option<usize>,
    pub decomposition: Option<(usize, usize)>,
}

fn serialize_class<S: Serializer>(class: &Option<usize>, s: S) -> Result<S::Ok, S::Error> {
    match class {
        Some(c) => s.serialize_u64(*c as u64),
        None => s.serialize_str("not nilpotent"),
    }
}

impl NLieAlgebra {
    /// L² = span of all brackets of basis vectors.
    pub fn derived_subalgebra(&self) -> Subspace {
        Subspace::span(self.dim(), self.constants.values().cloned())
    }

    /// `{x : [x, L, …, L] ⊆ below}`.
    fn central_preimage(&self, below: &Subspace) -> Subspace {
        let dim = self.dim();
        let rest = increasing_tuples(dim, self.arity - 1);
        let rows: Matrix = (0..dim)
            .map(|i| {
                let e = linalg::unit_vector(dim, i);
                rest.iter().flat_map(|r| below.reduce(&self.bracket_with_basis(&e, r))).collect()
            })
            .collect();
        let width = rest.len() * dim;
        Subspace::span(dim, linalg::left_kernel(&rows, width))
    }

    pub fn center(&self) -> Subspace {
        self.central_preimage(&Subspace::zero(self.dim()))
    }

    /// γ₁ = L, γ_{i+1} = [γ_i, L, …, L], listed until the series stabilises
    /// (the stable term is included once).
    pub fn lower_central_series(&self) -> Vec<Subspace> {
        let dim = self.dim();
        let rest = increasing_tuples(dim, self.arity - 1);
        let mut series = vec![Subspace::full(dim)];
        loop {
            let current = series.last().expect("nonempty");
            if current.dim() == 0 {
                break;
            }
            let images: Vec<Vector> = current
                .basis()
                .iter()
                .flat_map(|g| rest.iter().map(move |r| (g, r)))
                .map(|(g, r)| self.bracket_with_basis(g, r))
                .collect();
            let next = Subspace::span(dim, images);
            if &next == current {
                break;
            }
            series.push(next);
        }
        series
    }

    /// Z₁ = Z(L), Z_{i+1}/Z_i = Z(L/Z_i), listed until the series stabilises.
    pub fn upper_central_series(&self) -> Vec<Subspace> {
        let mut series = vec![self.center()];
        loop {
            let current = series.last().expect("nonempty");
            let next = self.central_preimage(current);
            if &next == current {
                break;
            }
            series.push(next);
        }
        series
    }

    /// `c` with γ_{c+1} = 0 ≠ γ_c; the zero algebra has class 0.
    pub fn nilpotency_class(&self) -> Option<usize> {
        class_from_series(&self.lower_central_series())
    }

    /// Z₂(L), the second term of the upper central series.
    pub fn second_center(&self) -> Subspace {
        self.central_preimage(&self.center())
    }

    pub fn analyze(&self) -> AnalysisReport {
        let is_valid = self.validate().is_valid();
        let lower = self.lower_central_series();
        let upper = self.upper_central_series();
        let derived_dim = lower.get(1).map_or(0, Subspace::dim);
        let nilpotency_class = class_from_series(&lower);
        let decomposition = if is_valid && derived_dim == 1 && nilpotency_class.is_some() {
            crate::structure::decompose_dim1_derived(self).ok().map(|d| (d.m, d.k))
        } else {
            None
        };
        AnalysisReport {
            dim: self.dim(),
            arity: self.arity,
            is_valid,
            derived_dim,
            center_dim: upper[0].dim(),
            lower_series_dims: lower.iter().map(Subspace::dim).collect(),
            upper_series_dims: upper.iter().map(Subspace::dim).collect(),
            nilpotency_class,
            decomposition,
        }
    }
}

fn class_from_series(lower: &[Subspace]) -> Option<usize> {
    match lower.last() {
        Some(last) if last.dim() == 0 => Some(lower.len() - 1),
        _ => None,
    }
}
