//! (1,0)-connections on a free complex, the induced derivation `∇` on Hom
//! forms, the Atiyah cocycle, and invariant pairings.

mod cyclic;
mod faithful;
mod lemmas;

use std::collections::BTreeMap;
use std::sync::Arc;

pub use cyclic::CyclicForm;
pub use faithful::{check_operator_faithfulness, ALL_PAIRS_LIMIT};
pub use lemmas::{verify_lemmas, LemmaOutcome, LemmaReport};

use crate::bga::BgaElement;
use crate::error::Error;
use crate::graded::{Bidegree, Degree, Sign};
use crate::homcomplex::{FormMatrix, FreeComplex, HomForm, OperatorMatrix, SectionForm, SectionKey};

/// `D = D^{1,0} + ∂̄` with `D^{1,0}(e_i) = Σ_j Γ[j][i]·e_j`, the entries of `Γ`
/// being (1,0)-forms. `Γ` is block diagonal in the module degree.
#[derive(Debug, Clone)]
pub struct Connection {
    complex: Arc<FreeComplex>,
    gamma: HomForm,
}

impl Connection {
    /// `blocks[l]` is the `rank(l) × rank(l)` matrix of `Γ` on `E^l`.
    pub fn new(complex: Arc<FreeComplex>, blocks: &BTreeMap<Degree, FormMatrix>) -> Result<Self, Error> {
        let a = complex.algebra().clone();
        let mut gamma = HomForm::zero();
        for (&l, m) in blocks {
            let r = complex.rank(l);
            if m.iter().flatten().all(|e| e.is_zero()) {
                continue;
            }
            if m.len() != r || m.iter().any(|row| row.len() != r) {
                return Err(Error::InvalidConnection(format!("gamma block in degree {l} must be {r}x{r}")));
            }
            for (i, row) in m.iter().enumerate() {
                for (j, e) in row.iter().enumerate() {
                    if e.keys().any(|&k| k >= a.dim()) {
                        return Err(Error::InvalidConnection(format!("gamma[{l}][{i}][{j}] has an out-of-range basis index")));
                    }
                    if a.bidegrees_of(e).iter().any(|b| *b != Bidegree::new(1, 0)) {
                        return Err(Error::InvalidConnection(format!("gamma[{l}][{i}][{j}] is not a (1,0)-form")));
                    }
                    let (gi, gj) = (complex.gen_index(l, i).unwrap(), complex.gen_index(l, j).unwrap());
                    gamma.add_assign(&complex.form_times(e, gi, gj));
                }
            }
        }
        Ok(Connection { complex, gamma })
    }

    /// `Γ = 0`, i.e. `D = ∂ + ∂̄` on the trivialisation.
    pub fn trivial(complex: Arc<FreeComplex>) -> Self {
        Connection { complex, gamma: HomForm::zero() }
    }

    /// Connection with a given `Γ` as a Hom form; checks type and degree.
    pub fn from_gamma(complex: Arc<FreeComplex>, gamma: HomForm) -> Result<Self, Error> {
        for k in gamma.keys() {
            if complex.key_bidegree(k) != Bidegree::new(1, 0) || complex.hom_degree(k) != 0 {
                return Err(Error::InvalidConnection(format!("gamma term {k:?} is not a degree-0 (1,0)-form")));
            }
        }
        Ok(Connection { complex, gamma })
    }

    pub fn complex(&self) -> &Arc<FreeComplex> {
        &self.complex
    }

    /// `Γ` as a Hom form of total degree 1.
    pub fn gamma(&self) -> &HomForm {
        &self.gamma
    }

    /// `Γ` as block matrices, for serialisation.
    pub fn gamma_blocks(&self) -> BTreeMap<Degree, FormMatrix> {
        let cx = &self.complex;
        let mut out = BTreeMap::new();
        for &(l, r) in cx.ranks() {
            let mut m = vec![vec![BgaElement::zero(); r]; r];
            let off = cx.gen_index(l, 0).unwrap();
            let mut any = false;
            for (k, c) in self.gamma.iter() {
                if cx.gen_degree(k.row) == l {
                    m[k.row - off][k.col - off].add_term(k.form, c.clone());
                    any = true;
                }
            }
            if any {
                out.insert(l, m);
            }
        }
        out
    }

    /// `D^{1,0}(η·e_i) = ∂η·e_i + (-1)^{|η|} Σ_j ηΓ_{ji}·e_j`.
    pub fn d10_section(&self, s: &SectionForm) -> SectionForm {
        let cx = &self.complex;
        let a = cx.algebra();
        let mut out = cx.partial_section(s);
        for (k, c) in s.iter() {
            let sign = Sign::pow(a.degree(k.form) as i64);
            for (g, gc) in self.gamma.iter() {
                if g.col != k.gen {
                    continue;
                }
                for (t, v) in a.mul_basis(k.form, g.form) {
                    out.add_term(SectionKey { form: *t, gen: g.row }, sign.apply(&(&(c * gc) * v)));
                }
            }
        }
        out
    }

    /// `D(s) = D^{1,0}(s) + ∂̄(s)`.
    pub fn d_section(&self, s: &SectionForm) -> SectionForm {
        self.d10_section(s).plus(&self.complex.delbar_section(s))
    }

    pub fn d10_operator(&self) -> OperatorMatrix {
        OperatorMatrix::from_fn(&self.complex, |s| self.d10_section(s))
    }

    pub fn d_operator(&self) -> OperatorMatrix {
        OperatorMatrix::from_fn(&self.complex, |s| self.d_section(s))
    }

    /// `∇h = [D^{1,0}, h]`, computed by evaluating the commutator on the
    /// generators `1·e_i` and reading off the coefficients.
    pub fn nabla(&self, h: &HomForm) -> HomForm {
        let cx = &self.complex;
        let mut out = HomForm::zero();
        for (deg, part) in cx.split_by_degree(h) {
            let sign = Sign::pow(deg as i64).to_rational();
            let values: Vec<SectionForm> = (0..cx.total_rank())
                .map(|i| {
                    let e = cx.generator(i);
                    let first = self.d10_section(&cx.act(&part, &e));
                    let second = cx.act(&part, &self.d10_section(&e));
                    first.minus(&second.scaled(&sign))
                })
                .collect();
            out.add_assign(&cx.from_generator_values(&values));
        }
        out
    }

    /// `∂h + [Γ, h]`, the coordinate expression of `∇`.
    pub fn nabla_closed_form(&self, h: &HomForm) -> HomForm {
        self.complex.partial(h).plus(&self.complex.bracket(&self.gamma, h))
    }

    /// `[D, h] = ∇h + ∂̄h`.
    pub fn full_bracket(&self, h: &HomForm) -> HomForm {
        self.nabla(h).plus(&self.complex.delbar(h))
    }

    /// The Atiyah cocycle `u = [D, ∂̄ + δ]`, evaluated on generators.
    pub fn atiyah(&self) -> HomForm {
        let cx = &self.complex;
        let q = |s: &SectionForm| cx.delbar_section(s).plus(&cx.delta_section(s));
        let values: Vec<SectionForm> = (0..cx.total_rank())
            .map(|i| {
                let e = cx.generator(i);
                // D and ∂̄+δ are both odd, so the graded commutator is DQ + QD.
                self.d_section(&q(&e)).plus(&q(&self.d_section(&e)))
            })
            .collect();
        cx.from_generator_values(&values)
    }

    /// `∂̄Γ + ∂δ + [Γ, δ]`.
    pub fn atiyah_closed_form(&self) -> HomForm {
        let cx = &self.complex;
        cx.delbar(&self.gamma).plus(&cx.partial(cx.delta())).plus(&cx.bracket(&self.gamma, cx.delta()))
    }

    /// `∇(∂̄) = [D^{1,0}, ∂̄]`, evaluated on generators.
    pub fn nabla_of_delbar(&self) -> HomForm {
        let cx = &self.complex;
        let values: Vec<SectionForm> = (0..cx.total_rank())
            .map(|i| {
                let e = cx.generator(i);
                self.d10_section(&cx.delbar_section(&e)).plus(&cx.delbar_section(&self.d10_section(&e)))
            })
            .collect();
        cx.from_generator_values(&values)
    }

    /// Operator-level residual of `∇h` against `[D^{1,0}, h]` on every basis
    /// section; zero iff `∇h` is the form-linear operator it should be.
    pub fn nabla_operator_residual(&self, h: &HomForm, d10: &OperatorMatrix) -> OperatorMatrix {
        let cx = &self.complex;
        let mut expected = OperatorMatrix::zero(cx.section_dim());
        for (deg, part) in cx.split_by_degree(h) {
            let op = OperatorMatrix::of_hom_form(cx, &part);
            expected = expected.add(&OperatorMatrix::graded_commutator(d10, 1, &op, deg));
        }
        OperatorMatrix::of_hom_form(cx, &self.nabla(h)).sub(&expected)
    }

    /// Operator-level residual of `u` against `[D, ∂̄ + δ]`.
    pub fn atiyah_operator_residual(&self) -> OperatorMatrix {
        let cx = &self.complex;
        let d = self.d_operator();
        let q = OperatorMatrix::delbar(cx).add(&OperatorMatrix::delta(cx));
        let expected = OperatorMatrix::graded_commutator(&d, 1, &q, 1);
        OperatorMatrix::of_hom_form(cx, &self.atiyah()).sub(&expected)
    }

    /// `Γ' - Γ`, a degree-1 Hom form of type (1,0).
    pub fn difference(&self, other: &Connection) -> HomForm {
        other.gamma.minus(&self.gamma)
    }
}

/// Split of `u` into its `A^{1,1}·Hom⁰` and `A^{1,0}·Hom¹` parts, plus
/// whatever lies elsewhere (which should be zero).
#[derive(Debug, Clone)]
pub struct AtiyahComponents {
    pub curvature_part: HomForm,
    pub delta_part: HomForm,
    pub other: HomForm,
}

pub fn decompose_atiyah(cx: &FreeComplex, u: &HomForm) -> AtiyahComponents {
    let mut out = AtiyahComponents { curvature_part: HomForm::zero(), delta_part: HomForm::zero(), other: HomForm::zero() };
    for (k, c) in u.iter() {
        let target = match (cx.key_bidegree(k), cx.hom_degree(k)) {
            (b, 0) if b == Bidegree::new(1, 1) => &mut out.curvature_part,
            (b, 1) if b == Bidegree::new(1, 0) => &mut out.delta_part,
            _ => &mut out.other,
        };
        target.add_term(*k, c.clone());
    }
    out
}

#[cfg(test)]
mod tests;
