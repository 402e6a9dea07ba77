//! Axiom checks on structure constants.

use std::fmt;

use super::{Bga, BgaElement};
use crate::graded::{Bidegree, Sign};
use crate::lincomb::LinComb;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Axiom {
    UnitBidegree,
    ProductBidegree,
    PartialBidegree,
    DelbarBidegree,
    Unit,
    GradedCommutativity,
    Associativity,
    PartialSquare,
    DelbarSquare,
    Anticommutation,
    LeibnizPartial,
    LeibnizDelbar,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Axiom::UnitBidegree => "unit has bidegree (0,0)",
            Axiom::ProductBidegree => "product is bihomogeneous",
            Axiom::PartialBidegree => "partial has bidegree (1,0)",
            Axiom::DelbarBidegree => "delbar has bidegree (0,1)",
            Axiom::Unit => "unit law",
            Axiom::GradedCommutativity => "graded commutativity",
            Axiom::Associativity => "associativity",
            Axiom::PartialSquare => "partial^2 = 0",
            Axiom::DelbarSquare => "delbar^2 = 0",
            Axiom::Anticommutation => "partial delbar + delbar partial = 0",
            Axiom::LeibnizPartial => "Leibniz rule for partial",
            Axiom::LeibnizDelbar => "Leibniz rule for delbar",
        };
        f.write_str(s)
    }
}

/// A failed axiom instance: basis indices witnessing it and the nonzero
/// residual, rendered with basis names.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct Violation {
    pub axiom: Axiom,
    pub witness: Vec<usize>,
    pub residual: String,
}

/// First violation per axiom plus how many instances failed.
#[derive(Debug, Clone, Default, PartialEq, Eq, serde::Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    pub counts: Vec<(Axiom, usize)>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violated_axioms(&self) -> Vec<Axiom> {
        self.counts.iter().map(|(a, _)| *a).collect()
    }

    pub fn summary(&self) -> String {
        self.violations
            .iter()
            .map(|v| format!("{} at {:?}: residual {}", v.axiom, v.witness, v.residual))
            .collect::<Vec<_>>()
            .join("; ")
    }

    fn record(&mut self, a: &Bga, axiom: Axiom, witness: Vec<usize>, residual: &BgaElement) {
        if let Some(entry) = self.counts.iter_mut().find(|(x, _)| *x == axiom) {
            entry.1 += 1;
            return;
        }
        self.counts.push((axiom, 1));
        self.violations.push(Violation { axiom, witness, residual: a.render(residual) });
    }
}

fn homogeneity(a: &Bga, r: &mut ValidationReport) {
    let dim = a.dim();
    if a.bidegree(a.unit_index()) != Bidegree::ZERO {
        r.record(a, Axiom::UnitBidegree, vec![a.unit_index()], &a.unit());
    }
    for i in 0..dim {
        for j in 0..dim {
            let want = a.bidegree(i) + a.bidegree(j);
            let bad: BgaElement =
                LinComb::from_terms(a.mul_basis(i, j).iter().filter(|(k, _)| a.bidegree(*k) != want).cloned());
            if !bad.is_zero() {
                r.record(a, Axiom::ProductBidegree, vec![i, j], &bad);
            }
        }
        let checks = [
            (Axiom::PartialBidegree, a.partial_basis(i), Bidegree::new(1, 0)),
            (Axiom::DelbarBidegree, a.delbar_basis(i), Bidegree::new(0, 1)),
        ];
        for (axiom, row, shift) in checks {
            let want = a.bidegree(i) + shift;
            let bad: BgaElement = LinComb::from_terms(row.iter().filter(|(k, _)| a.bidegree(*k) != want).cloned());
            if !bad.is_zero() {
                r.record(a, axiom, vec![i], &bad);
            }
        }
    }
}

fn algebra_laws(a: &Bga, r: &mut ValidationReport) {
    let dim = a.dim();
    let u = a.unit_index();
    for i in 0..dim {
        let bi = a.element(i);
        let left: BgaElement = LinComb::from_terms(a.mul_basis(u, i).iter().cloned());
        let right: BgaElement = LinComb::from_terms(a.mul_basis(i, u).iter().cloned());
        for side in [left, right] {
            let res = side.minus(&bi);
            if !res.is_zero() {
                r.record(a, Axiom::Unit, vec![i], &res);
            }
        }
    }
    for i in 0..dim {
        for j in i..dim {
            let ij: BgaElement = LinComb::from_terms(a.mul_basis(i, j).iter().cloned());
            let ji: BgaElement = LinComb::from_terms(a.mul_basis(j, i).iter().cloned());
            let s = Sign::koszul(a.degree(i), a.degree(j));
            let res = ij.minus(&ji.scaled(&s.to_rational()));
            if !res.is_zero() {
                r.record(a, Axiom::GradedCommutativity, vec![i, j], &res);
            }
        }
    }
    for i in 0..dim {
        for j in 0..dim {
            let ij = a.mul_basis(i, j);
            for k in 0..dim {
                let jk = a.mul_basis(j, k);
                if ij.is_empty() && jk.is_empty() {
                    continue;
                }
                let mut res = BgaElement::zero();
                for (m, c) in ij {
                    for (t, e) in a.mul_basis(*m, k) {
                        res.add_term(*t, c * e);
                    }
                }
                for (m, c) in jk {
                    for (t, e) in a.mul_basis(i, *m) {
                        res.add_term(*t, -(c * e));
                    }
                }
                if !res.is_zero() {
                    r.record(a, Axiom::Associativity, vec![i, j, k], &res);
                }
            }
        }
    }
}

fn differential_laws(a: &Bga, r: &mut ValidationReport) {
    let dim = a.dim();
    for i in 0..dim {
        let b = a.element(i);
        let p = a.partial(&b);
        let q = a.delbar(&b);
        let pp = a.partial(&p);
        if !pp.is_zero() {
            r.record(a, Axiom::PartialSquare, vec![i], &pp);
        }
        let qq = a.delbar(&q);
        if !qq.is_zero() {
            r.record(a, Axiom::DelbarSquare, vec![i], &qq);
        }
        let ac = a.delbar(&p).plus(&a.partial(&q));
        if !ac.is_zero() {
            r.record(a, Axiom::Anticommutation, vec![i], &ac);
        }
    }
    type Op = fn(&Bga, &BgaElement) -> BgaElement;
    let ops: [(Axiom, Op); 2] = [(Axiom::LeibnizPartial, Bga::partial), (Axiom::LeibnizDelbar, Bga::delbar)];
    for (axiom, op) in ops {
        let images: Vec<BgaElement> = (0..dim).map(|i| op(a, &a.element(i))).collect();
        for i in 0..dim {
            for j in 0..dim {
                let bi = a.element(i);
                let bj = a.element(j);
                let lhs = op(a, &a.mul(&bi, &bj));
                let sign = Sign::pow(a.degree(i) as i64).to_rational();
                let rhs = a.mul(&images[i], &bj).plus(&a.mul(&bi, &images[j]).scaled(&sign));
                let res = lhs.minus(&rhs);
                if !res.is_zero() {
                    r.record(a, axiom, vec![i, j], &res);
                }
            }
        }
    }
}

pub(super) fn validate(a: &Bga) -> ValidationReport {
    let mut r = ValidationReport::default();
    homogeneity(a, &mut r);
    algebra_laws(a, &mut r);
    differential_laws(a, &mut r);
    r
}

#[cfg(test)]
mod tests {
    use super::super::{canned, TableEntry};
    use super::*;
    use crate::rational::Rational;

    #[test]
    fn canned_models_validate() {
        for (name, a) in canned::all() {
            let r = a.validate();
            assert!(r.is_valid(), "{name}: {}", r.summary());
        }
    }

    #[test]
    fn sign_flip_breaks_commutativity() {
        let t = canned::torus1();
        let (x, y, xy) = (t.index_of("x").unwrap(), t.index_of("y").unwrap(), t.index_of("xy").unwrap());
        let bad = t.with_entry(TableEntry::Product(y, x), xy, Rational::one());
        let r = bad.validate();
        assert!(r.violated_axioms().contains(&Axiom::GradedCommutativity));
    }

    #[test]
    fn nonclosed_differential_detected() {
        let t = canned::torus1();
        let (x, y) = (t.index_of("x").unwrap(), t.index_of("y").unwrap());
        // delbar x = y has the wrong bidegree
        let bad = t.with_entry(TableEntry::Delbar(x), y, Rational::one());
        assert!(bad.validate().violated_axioms().contains(&Axiom::DelbarBidegree));
    }
}
