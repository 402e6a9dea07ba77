//! Finite-dimensional bidifferential graded-commutative algebras given by
//! structure constants.

mod builder;
pub mod canned;
mod truncated;
mod validate;

use std::fmt;

pub use builder::{FreeGcaBuilder, GenId};
pub use truncated::TruncatedComplex;
pub use validate::{Axiom, ValidationReport, Violation};

use crate::error::Error;
use crate::graded::{Bidegree, Degree};
use crate::lincomb::LinComb;
use crate::rational::Rational;

/// An element of a [`Bga`]: a combination of basis indices.
pub type BgaElement = LinComb<usize>;

/// Sparse image of one basis vector (or basis pair) under a structure map.
pub type SparseRow = Vec<(usize, Rational)>;

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct BasisElement {
    pub name: String,
    pub bidegree: Bidegree,
}

/// Structure constants: product `b_i·b_j`, `∂ b_i`, `∂̄ b_i`.
///
/// Construct with [`Bga::new`] (validated) or [`Bga::from_tables_unchecked`]
/// (for inspecting malformed input).
#[derive(Clone, PartialEq, Eq)]
pub struct Bga {
    basis: Vec<BasisElement>,
    unit: usize,
    product: Vec<SparseRow>,
    partial: Vec<SparseRow>,
    delbar: Vec<SparseRow>,
}

impl fmt::Debug for Bga {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Bga").field("dim", &self.dim()).field("unit", &self.unit).finish()
    }
}

fn normalise(row: &SparseRow) -> SparseRow {
    let lc = LinComb::from_terms(row.iter().cloned());
    lc.into_terms().collect()
}

impl Bga {
    /// Builds from sparse tables. `product` lists `(i, j, b_i·b_j)`, the
    /// differentials list `(i, image)`; omitted entries are zero.
    pub fn from_tables_unchecked(
        basis: Vec<BasisElement>,
        unit: usize,
        product: &[(usize, usize, SparseRow)],
        partial: &[(usize, SparseRow)],
        delbar: &[(usize, SparseRow)],
    ) -> Result<Self, Error> {
        let dim = basis.len();
        if unit >= dim {
            return Err(Error::Input(format!("unit index {unit} out of range for dimension {dim}")));
        }
        let check = |k: usize, what: &str| -> Result<(), Error> {
            if k >= dim {
                Err(Error::Input(format!("{what} index {k} out of range for dimension {dim}")))
            } else {
                Ok(())
            }
        };
        let mut prod = vec![SparseRow::new(); dim * dim];
        for (i, j, row) in product {
            check(*i, "product")?;
            check(*j, "product")?;
            for (k, _) in row {
                check(*k, "product target")?;
            }
            let mut merged = prod[i * dim + j].clone();
            merged.extend(row.iter().cloned());
            prod[i * dim + j] = normalise(&merged);
        }
        let fill = |entries: &[(usize, SparseRow)], what: &str| -> Result<Vec<SparseRow>, Error> {
            let mut out = vec![SparseRow::new(); dim];
            for (i, row) in entries {
                check(*i, what)?;
                for (k, _) in row {
                    check(*k, what)?;
                }
                let mut merged = out[*i].clone();
                merged.extend(row.iter().cloned());
                out[*i] = normalise(&merged);
            }
            Ok(out)
        };
        let partial = fill(partial, "partial")?;
        let delbar = fill(delbar, "delbar")?;
        Ok(Bga { basis, unit, product: prod, partial, delbar })
    }

    /// Builds and validates; fails with the first violations found.
    pub fn new(
        basis: Vec<BasisElement>,
        unit: usize,
        product: &[(usize, usize, SparseRow)],
        partial: &[(usize, SparseRow)],
        delbar: &[(usize, SparseRow)],
    ) -> Result<Self, Error> {
        let a = Self::from_tables_unchecked(basis, unit, product, partial, delbar)?;
        let report = a.validate();
        if report.is_valid() {
            Ok(a)
        } else {
            Err(Error::InvalidAlgebra(report.summary()))
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    pub fn name(&self, i: usize) -> &str {
        &self.basis[i].name
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.basis.iter().position(|b| b.name == name)
    }

    pub fn unit_index(&self) -> usize {
        self.unit
    }

    pub fn bidegree(&self, i: usize) -> Bidegree {
        self.basis[i].bidegree
    }

    pub fn degree(&self, i: usize) -> Degree {
        self.basis[i].bidegree.total()
    }

    pub fn max_p(&self) -> i32 {
        self.basis.iter().map(|b| b.bidegree.p).max().unwrap_or(0)
    }

    pub fn max_q(&self) -> i32 {
        self.basis.iter().map(|b| b.bidegree.q).max().unwrap_or(0)
    }

    /// Indices of basis elements of bidegree `(p, *)`.
    pub fn indices_with_p(&self, p: i32) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.bidegree(i).p == p).collect()
    }

    pub fn mul_basis(&self, i: usize, j: usize) -> &[(usize, Rational)] {
        &self.product[i * self.dim() + j]
    }

    pub fn partial_basis(&self, i: usize) -> &[(usize, Rational)] {
        &self.partial[i]
    }

    pub fn delbar_basis(&self, i: usize) -> &[(usize, Rational)] {
        &self.delbar[i]
    }

    pub fn unit(&self) -> BgaElement {
        LinComb::basis(self.unit)
    }

    pub fn element(&self, i: usize) -> BgaElement {
        LinComb::basis(i)
    }

    pub fn mul(&self, a: &BgaElement, b: &BgaElement) -> BgaElement {
        let mut out = BgaElement::zero();
        for (i, x) in a.iter() {
            for (j, y) in b.iter() {
                let c = x * y;
                for (k, z) in self.mul_basis(*i, *j) {
                    out.add_term(*k, &c * z);
                }
            }
        }
        out
    }

    fn apply_table(table: &[SparseRow], a: &BgaElement) -> BgaElement {
        let mut out = BgaElement::zero();
        for (i, x) in a.iter() {
            for (k, z) in &table[*i] {
                out.add_term(*k, x * z);
            }
        }
        out
    }

    pub fn partial(&self, a: &BgaElement) -> BgaElement {
        Self::apply_table(&self.partial, a)
    }

    pub fn delbar(&self, a: &BgaElement) -> BgaElement {
        Self::apply_table(&self.delbar, a)
    }

    /// Total differential `∂ + ∂̄`.
    pub fn d(&self, a: &BgaElement) -> BgaElement {
        self.partial(a).plus(&self.delbar(a))
    }

    /// Drops all components of bidegree `(p, *)` with `p > level`.
    pub fn truncate(&self, a: &BgaElement, level: i32) -> BgaElement {
        a.filter(|&i| self.bidegree(i).p <= level)
    }

    /// Component of the given bidegree.
    pub fn component(&self, a: &BgaElement, bd: Bidegree) -> BgaElement {
        a.filter(|&i| self.bidegree(i) == bd)
    }

    /// Set of bidegrees occurring in `a`.
    pub fn bidegrees_of(&self, a: &BgaElement) -> Vec<Bidegree> {
        let mut v: Vec<Bidegree> = a.keys().map(|&i| self.bidegree(i)).collect();
        v.sort();
        v.dedup();
        v
    }

    /// Human-readable rendering using basis names.
    pub fn render(&self, a: &BgaElement) -> String {
        if a.is_zero() {
            return "0".into();
        }
        a.iter()
            .map(|(i, c)| if c.is_one() { self.name(*i).to_string() } else { format!("({c})*{}", self.name(*i)) })
            .collect::<Vec<_>>()
            .join(" + ")
    }

    pub fn validate(&self) -> ValidationReport {
        validate::validate(self)
    }

    /// Sparse tables in the external format, for serialisation.
    pub fn product_entries(&self) -> Vec<(usize, usize, SparseRow)> {
        let d = self.dim();
        (0..d * d)
            .filter(|&ij| !self.product[ij].is_empty())
            .map(|ij| (ij / d, ij % d, self.product[ij].clone()))
            .collect()
    }

    pub fn partial_entries(&self) -> Vec<(usize, SparseRow)> {
        (0..self.dim()).filter(|&i| !self.partial[i].is_empty()).map(|i| (i, self.partial[i].clone())).collect()
    }

    pub fn delbar_entries(&self) -> Vec<(usize, SparseRow)> {
        (0..self.dim()).filter(|&i| !self.delbar[i].is_empty()).map(|i| (i, self.delbar[i].clone())).collect()
    }

    /// Copy with a single structure entry replaced, bypassing validation.
    pub fn with_entry(&self, entry: TableEntry, target: usize, value: Rational) -> Bga {
        let mut out = self.clone();
        let row = match entry {
            TableEntry::Product(i, j) => &mut out.product[i * self.dim() + j],
            TableEntry::Partial(i) => &mut out.partial[i],
            TableEntry::Delbar(i) => &mut out.delbar[i],
        };
        row.retain(|(k, _)| *k != target);
        if !value.is_zero() {
            row.push((target, value));
            row.sort_by_key(|(k, _)| *k);
        }
        out
    }

    /// Coefficient of `b_target` in one structure entry.
    pub fn entry(&self, entry: TableEntry, target: usize) -> Rational {
        let row = match entry {
            TableEntry::Product(i, j) => &self.product[i * self.dim() + j],
            TableEntry::Partial(i) => &self.partial[i],
            TableEntry::Delbar(i) => &self.delbar[i],
        };
        row.iter().find(|(k, _)| *k == target).map(|(_, c)| c.clone()).unwrap_or_default()
    }
}

/// Address of one row of the structure tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableEntry {
    Product(usize, usize),
    Partial(usize),
    Delbar(usize),
}

#[cfg(test)]
mod tests {
    use super::canned;
    use super::*;

    #[test]
    fn torus1_products() {
        let t = canned::torus1();
        let x = t.element(t.index_of("x").unwrap());
        let y = t.element(t.index_of("y").unwrap());
        let xy = t.element(t.index_of("xy").unwrap());
        assert_eq!(t.mul(&x, &y), xy);
        assert_eq!(t.mul(&y, &x), xy.neg());
        assert!(t.mul(&x, &x).is_zero());
    }

    #[test]
    fn out_of_range_rejected() {
        let basis = vec![BasisElement { name: "1".into(), bidegree: Bidegree::ZERO }];
        let r = Bga::from_tables_unchecked(basis, 0, &[(0, 0, vec![(3, Rational::one())])], &[], &[]);
        assert!(r.is_err());
    }

    #[test]
    fn entry_mutation_roundtrip() {
        let t = canned::torus1();
        let e = TableEntry::Product(1, 2);
        let m = t.with_entry(e, 3, Rational::from_int(5));
        assert_eq!(m.entry(e, 3), Rational::from_int(5));
        let back = m.with_entry(e, 3, t.entry(e, 3));
        assert_eq!(back, t);
    }
}
