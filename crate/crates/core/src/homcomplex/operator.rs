//! Sparse matrices on the section space `A ⊗ E`, used as an independent
//! realisation of Hom-valued forms.

use super::{FreeComplex, HomForm, SectionForm};
use crate::graded::{Degree, Sign};
use crate::lincomb::LinComb;
use crate::rational::Rational;

/// Column-sparse matrix on the basis `b_k·e_g` (indexed by
/// [`FreeComplex::section_index`]).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OperatorMatrix {
    dim: usize,
    cols: Vec<LinComb<usize>>,
}

impl OperatorMatrix {
    pub fn zero(dim: usize) -> Self {
        OperatorMatrix { dim, cols: vec![LinComb::zero(); dim] }
    }

    /// Tabulates a linear map given on basis sections.
    pub fn from_fn(cx: &FreeComplex, f: impl Fn(&SectionForm) -> SectionForm) -> Self {
        let dim = cx.section_dim();
        let cols = (0..dim)
            .map(|c| {
                let v = f(&LinComb::basis(cx.section_key(c)));
                LinComb::from_terms(v.into_terms().map(|(k, x)| (cx.section_index(&k), x)))
            })
            .collect();
        OperatorMatrix { dim, cols }
    }

    /// `h` as an endomorphism of sections, via `act` on every basis vector.
    pub fn of_hom_form(cx: &FreeComplex, h: &HomForm) -> Self {
        Self::from_fn(cx, |s| cx.act(h, s))
    }

    /// `∂̄` on sections.
    pub fn delbar(cx: &FreeComplex) -> Self {
        Self::from_fn(cx, |s| cx.delbar_section(s))
    }

    /// `δ` on sections.
    pub fn delta(cx: &FreeComplex) -> Self {
        Self::from_fn(cx, |s| cx.delta_section(s))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.is_zero())
    }

    pub fn column(&self, c: usize) -> &LinComb<usize> {
        &self.cols[c]
    }

    pub fn apply_index(&self, v: &LinComb<usize>) -> LinComb<usize> {
        let mut out = LinComb::zero();
        for (c, x) in v.iter() {
            out.add_scaled(&self.cols[*c], x);
        }
        out
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &OperatorMatrix) -> OperatorMatrix {
        assert_eq!(self.dim, other.dim);
        OperatorMatrix { dim: self.dim, cols: other.cols.iter().map(|col| self.apply_index(col)).collect() }
    }

    pub fn add(&self, other: &OperatorMatrix) -> OperatorMatrix {
        self.add_scaled(other, &Rational::one())
    }

    pub fn add_scaled(&self, other: &OperatorMatrix, c: &Rational) -> OperatorMatrix {
        assert_eq!(self.dim, other.dim);
        OperatorMatrix {
            dim: self.dim,
            cols: self
                .cols
                .iter()
                .zip(&other.cols)
                .map(|(a, b)| {
                    let mut s = a.clone();
                    s.add_scaled(b, c);
                    s
                })
                .collect(),
        }
    }

    pub fn sub(&self, other: &OperatorMatrix) -> OperatorMatrix {
        self.add_scaled(other, &Rational::from_int(-1))
    }

    /// `[P, Q] = PQ - (-1)^{|P||Q|} QP` for homogeneous operators.
    pub fn graded_commutator(p: &OperatorMatrix, dp: Degree, q: &OperatorMatrix, dq: Degree) -> OperatorMatrix {
        let s = Sign::koszul(dp, dq);
        p.compose(q).add_scaled(&q.compose(p), &(-s.to_rational()))
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(|c| c.len()).sum()
    }
}
