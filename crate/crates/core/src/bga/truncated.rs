//! Quotient complexes `A / A^{>level}` with the induced total differential.

use std::sync::Arc;

use super::{Bga, BgaElement};
use crate::graded::Degree;

/// `A / A^{≥ level+1}` shifted by `2·level`, so a basis element of bidegree
/// `(p, q)` has degree `p + q - 2·level`. The differential is `∂ + ∂̄` with the
/// components leaving the quotient discarded. Elements are [`BgaElement`]s
/// supported in `p ≤ level`.
#[derive(Debug, Clone)]
pub struct TruncatedComplex {
    algebra: Arc<Bga>,
    level: i32,
    basis: Vec<usize>,
    position: Vec<Option<usize>>,
}

impl TruncatedComplex {
    pub fn new(algebra: Arc<Bga>, level: i32) -> Self {
        let basis: Vec<usize> = (0..algebra.dim()).filter(|&i| algebra.bidegree(i).p <= level).collect();
        let mut position = vec![None; algebra.dim()];
        for (k, &i) in basis.iter().enumerate() {
            position[i] = Some(k);
        }
        TruncatedComplex { algebra, level, basis, position }
    }

    pub fn algebra(&self) -> &Arc<Bga> {
        &self.algebra
    }

    pub fn level(&self) -> i32 {
        self.level
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Algebra indices of the quotient basis.
    pub fn basis(&self) -> &[usize] {
        &self.basis
    }

    /// Position of an algebra basis index in the quotient basis.
    pub fn position(&self, algebra_index: usize) -> Option<usize> {
        self.position[algebra_index]
    }

    pub fn degree_of(&self, algebra_index: usize) -> Degree {
        self.algebra.degree(algebra_index) - 2 * self.level
    }

    /// Projection `A → A/A^{>level}`.
    pub fn project(&self, a: &BgaElement) -> BgaElement {
        self.algebra.truncate(a, self.level)
    }

    pub fn d(&self, a: &BgaElement) -> BgaElement {
        self.project(&self.algebra.d(a))
    }

    /// Quotient basis indices of the given shifted degree.
    pub fn basis_in_degree(&self, deg: Degree) -> Vec<usize> {
        self.basis.iter().copied().filter(|&i| self.degree_of(i) == deg).collect()
    }
}
