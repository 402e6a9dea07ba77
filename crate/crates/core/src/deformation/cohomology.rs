//! Exact cohomology of a finite graded complex given by [`DglaTables`].

use crate::graded::Degree;
use crate::linalg::{Cohomology, Matrix};
use crate::linfty::{DglaTables, SVec};
use crate::rational::Rational;

/// `H^k` of `(V, d)` together with coordinate maps for `V^{k-1}` and `V^k`.
#[derive(Debug, Clone)]
pub struct GradedCohomology {
    degree: Degree,
    below: Vec<usize>,
    here: Vec<usize>,
    h: Cohomology,
}

fn slice(t: &DglaTables, k: Degree) -> Vec<usize> {
    (0..t.dim()).filter(|&i| t.degrees[i] == k).collect()
}

/// Matrix of `d: V^k → V^{k+1}` in the given bases.
fn d_matrix(t: &DglaTables, from: &[usize], to: &[usize]) -> Matrix {
    let mut pos = vec![usize::MAX; t.dim()];
    for (r, &i) in to.iter().enumerate() {
        pos[i] = r;
    }
    let mut m = Matrix::zeros(to.len(), from.len());
    for (c, &j) in from.iter().enumerate() {
        for (i, v) in t.differential[j].iter() {
            assert!(pos[*i] != usize::MAX, "differential must raise degree by one");
            m.set(pos[*i], c, v.clone());
        }
    }
    m
}

impl GradedCohomology {
    pub fn new(t: &DglaTables, k: Degree) -> Self {
        let below = slice(t, k - 1);
        let here = slice(t, k);
        let above = slice(t, k + 1);
        let h = Cohomology::new(&d_matrix(t, &below, &here), &d_matrix(t, &here, &above));
        GradedCohomology { degree: k, below, here, h }
    }

    pub fn degree(&self) -> Degree {
        self.degree
    }

    pub fn dimension(&self) -> usize {
        self.h.dimension()
    }

    pub fn cochain_dimension(&self) -> usize {
        self.here.len()
    }

    fn coords(&self, v: &SVec) -> Option<Vec<Rational>> {
        let mut out = vec![Rational::zero(); self.here.len()];
        for (i, c) in v.iter() {
            let p = self.here.binary_search(i).ok()?;
            out[p] = c.clone();
        }
        Some(out)
    }

    fn element(basis: &[usize], coords: &[Rational]) -> SVec {
        SVec::from_terms(basis.iter().zip(coords).map(|(&i, c)| (i, c.clone())))
    }

    /// Class of a cycle of this degree; `None` if `v` is not such a cycle.
    pub fn class_of(&self, v: &SVec) -> Option<Vec<Rational>> {
        self.h.class_of(&self.coords(v)?)
    }

    /// `y` of degree `k-1` with `dy = v`, if `v` is a boundary.
    pub fn primitive(&self, v: &SVec) -> Option<SVec> {
        let y = self.h.primitive(&self.coords(v)?)?;
        Some(Self::element(&self.below, &y))
    }

    /// Cycles representing a basis of `H^k`.
    pub fn representatives(&self) -> Vec<SVec> {
        self.h.representatives().iter().map(|r| Self::element(&self.here, r)).collect()
    }

    /// A basis of the boundaries in degree `k`.
    pub fn boundaries(&self) -> Vec<SVec> {
        self.h.boundaries().iter().map(|r| Self::element(&self.here, r)).collect()
    }
}
