//! Bounded complexes of free graded modules over a [`Bga`] and the graded Hom
//! complex with form coefficients.
//!
//! A Hom-valued form is a combination of pure tensors `ω·E_ji` where `ω` is an
//! algebra basis element and `E_ji` the elementary map sending generator `i`
//! to generator `j`; its Hom degree is `deg e_j - deg e_i`. The two sign rules
//! used everywhere are, for pure tensors,
//!
//! ```text
//! (ω·f)(η·e)      = (-1)^{|f||η|} (ωη)·f(e)
//! (ω·f) ∘ (η·g)   = (-1)^{|f||η|} (ωη)·(f∘g)
//! ```

mod operator;

use std::collections::BTreeMap;
use std::sync::Arc;

pub use operator::OperatorMatrix;

use crate::bga::{Bga, BgaElement};
use crate::error::Error;
use crate::graded::{Bidegree, Degree, Sign};
use crate::lincomb::LinComb;
use crate::rational::Rational;

/// Pure tensor `b_form · E_{row,col}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HomKey {
    pub form: usize,
    pub row: usize,
    pub col: usize,
}

/// Pure tensor `b_form · e_gen`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SectionKey {
    pub form: usize,
    pub gen: usize,
}

pub type HomForm = LinComb<HomKey>;
pub type SectionForm = LinComb<SectionKey>;

/// Matrix of algebra elements indexed `[row][col]`.
pub type FormMatrix = Vec<Vec<BgaElement>>;

/// `E = ⊕_l E^l` with `E^l = A^{rank_l}` and a differential `δ` whose block
/// `δ_l : E^l → E^{l+1}` is a `rank(l+1) × rank(l)` matrix of ∂̄-closed (0,0)
/// forms. Generators are numbered by increasing degree.
#[derive(Debug, Clone)]
pub struct FreeComplex {
    algebra: Arc<Bga>,
    ranks: Vec<(Degree, usize)>,
    gen_degree: Vec<Degree>,
    offsets: BTreeMap<Degree, usize>,
    blocks: BTreeMap<Degree, FormMatrix>,
    delta: HomForm,
}

impl FreeComplex {
    /// Validates ranks, block shapes, bidegree (0,0), ∂̄-closedness and δ² = 0.
    pub fn new(algebra: Arc<Bga>, ranks: &[(Degree, usize)], blocks: BTreeMap<Degree, FormMatrix>) -> Result<Self, Error> {
        let mut sorted: Vec<(Degree, usize)> = ranks.iter().copied().filter(|(_, r)| *r > 0).collect();
        sorted.sort();
        if sorted.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::InvalidComplex("duplicate degree in rank list".into()));
        }
        let rank_of: BTreeMap<Degree, usize> = sorted.iter().copied().collect();
        let mut offsets = BTreeMap::new();
        let mut gen_degree = Vec::new();
        for &(d, r) in &sorted {
            offsets.insert(d, gen_degree.len());
            gen_degree.extend(std::iter::repeat_n(d, r));
        }
        let mut delta = HomForm::zero();
        for (&l, m) in &blocks {
            let src = rank_of.get(&l).copied().unwrap_or(0);
            let dst = rank_of.get(&(l + 1)).copied().unwrap_or(0);
            let nonzero = m.iter().flatten().any(|e| !e.is_zero());
            if !nonzero {
                continue;
            }
            if m.len() != dst || m.iter().any(|row| row.len() != src) {
                return Err(Error::InvalidComplex(format!(
                    "delta block in degree {l} must be {dst}x{src}, got {}x{}",
                    m.len(),
                    m.first().map_or(0, |r| r.len())
                )));
            }
            for (r, row) in m.iter().enumerate() {
                for (c, e) in row.iter().enumerate() {
                    if e.keys().any(|&k| k >= algebra.dim()) {
                        return Err(Error::InvalidComplex(format!("delta[{l}][{r}][{c}] has an out-of-range basis index")));
                    }
                    if algebra.bidegrees_of(e).iter().any(|b| *b != Bidegree::ZERO) {
                        return Err(Error::InvalidComplex(format!("delta[{l}][{r}][{c}] is not of bidegree (0,0)")));
                    }
                    if !algebra.delbar(e).is_zero() {
                        return Err(Error::InvalidComplex(format!("delta[{l}][{r}][{c}] is not delbar-closed")));
                    }
                    let (row_g, col_g) = (offsets[&(l + 1)] + r, offsets[&l] + c);
                    for (k, v) in e.iter() {
                        delta.add_term(HomKey { form: *k, row: row_g, col: col_g }, v.clone());
                    }
                }
            }
        }
        let blocks: BTreeMap<Degree, FormMatrix> =
            blocks.into_iter().filter(|(_, m)| m.iter().flatten().any(|e| !e.is_zero())).collect();
        let cx = FreeComplex { algebra, ranks: sorted, gen_degree, offsets, blocks, delta };
        let sq = cx.compose(&cx.delta, &cx.delta);
        if !sq.is_zero() {
            return Err(Error::InvalidComplex(format!("delta^2 != 0: {}", cx.render(&sq))));
        }
        Ok(cx)
    }

    /// Complex with zero differential from a rank profile `(r_{-k}, …, r_0)`.
    pub fn from_profile(algebra: Arc<Bga>, profile: &[usize]) -> Self {
        let ranks = profile_degrees(profile);
        FreeComplex::new(algebra, &ranks, BTreeMap::new()).expect("zero differential is valid")
    }

    /// Same modules, new constant-coefficient differential.
    pub fn with_blocks(&self, blocks: BTreeMap<Degree, FormMatrix>) -> Result<Self, Error> {
        FreeComplex::new(self.algebra.clone(), &self.ranks, blocks)
    }

    pub fn algebra(&self) -> &Arc<Bga> {
        &self.algebra
    }

    pub fn ranks(&self) -> &[(Degree, usize)] {
        &self.ranks
    }

    pub fn rank(&self, l: Degree) -> usize {
        self.ranks.iter().find(|(d, _)| *d == l).map_or(0, |(_, r)| *r)
    }

    pub fn total_rank(&self) -> usize {
        self.gen_degree.len()
    }

    pub fn gen_degree(&self, g: usize) -> Degree {
        self.gen_degree[g]
    }

    /// Global index of the `k`-th generator in degree `l`.
    pub fn gen_index(&self, l: Degree, k: usize) -> Option<usize> {
        let off = *self.offsets.get(&l)?;
        (k < self.rank(l)).then_some(off + k)
    }

    pub fn blocks(&self) -> &BTreeMap<Degree, FormMatrix> {
        &self.blocks
    }

    /// `δ` as a Hom-valued form of degree 1.
    pub fn delta(&self) -> &HomForm {
        &self.delta
    }

    pub fn hom_degree(&self, k: &HomKey) -> Degree {
        self.gen_degree[k.row] - self.gen_degree[k.col]
    }

    pub fn key_degree(&self, k: &HomKey) -> Degree {
        self.algebra.degree(k.form) + self.hom_degree(k)
    }

    pub fn key_bidegree(&self, k: &HomKey) -> Bidegree {
        self.algebra.bidegree(k.form)
    }

    pub fn section_degree(&self, k: &SectionKey) -> Degree {
        self.algebra.degree(k.form) + self.gen_degree[k.gen]
    }

    /// Total degrees occurring in `h`.
    pub fn degrees_of(&self, h: &HomForm) -> Vec<Degree> {
        let mut v: Vec<Degree> = h.keys().map(|k| self.key_degree(k)).collect();
        v.sort();
        v.dedup();
        v
    }

    /// The unique degree of a nonzero homogeneous `h`.
    pub fn homogeneous_degree(&self, h: &HomForm) -> Option<Degree> {
        match self.degrees_of(h).as_slice() {
            [d] => Some(*d),
            _ => None,
        }
    }

    pub fn split_by_degree(&self, h: &HomForm) -> BTreeMap<Degree, HomForm> {
        let mut out: BTreeMap<Degree, HomForm> = BTreeMap::new();
        for (k, c) in h.iter() {
            out.entry(self.key_degree(k)).or_default().add_term(*k, c.clone());
        }
        out
    }

    pub fn identity(&self) -> HomForm {
        let u = self.algebra.unit_index();
        LinComb::from_terms((0..self.total_rank()).map(|g| (HomKey { form: u, row: g, col: g }, Rational::one())))
    }

    /// `a · E_{row,col}` for an algebra element `a`.
    pub fn form_times(&self, a: &BgaElement, row: usize, col: usize) -> HomForm {
        LinComb::from_terms(a.iter().map(|(k, c)| (HomKey { form: *k, row, col }, c.clone())))
    }

    /// Every pure tensor `b_k · E_{ji}`.
    pub fn basis(&self) -> Vec<HomKey> {
        self.basis_where(|_| true)
    }

    /// Pure tensors with form part in `A^{0,*}`.
    pub fn source_basis(&self) -> Vec<HomKey> {
        self.basis_where(|b| b.p == 0)
    }

    pub fn basis_where(&self, keep: impl Fn(Bidegree) -> bool) -> Vec<HomKey> {
        let r = self.total_rank();
        let mut out = Vec::new();
        for form in 0..self.algebra.dim() {
            if !keep(self.algebra.bidegree(form)) {
                continue;
            }
            for row in 0..r {
                for col in 0..r {
                    out.push(HomKey { form, row, col });
                }
            }
        }
        out
    }

    /// Composition with the sign rule for pure tensors.
    pub fn compose(&self, f: &HomForm, g: &HomForm) -> HomForm {
        let a = &*self.algebra;
        let mut out = HomForm::zero();
        for (kf, cf) in f.iter() {
            let nf = self.hom_degree(kf) as i64;
            for (kg, cg) in g.iter() {
                if kf.col != kg.row {
                    continue;
                }
                let prod = a.mul_basis(kf.form, kg.form);
                if prod.is_empty() {
                    continue;
                }
                let s = Sign::pow(nf * a.degree(kg.form) as i64);
                let c = s.apply(&(cf * cg));
                for (k, v) in prod {
                    out.add_term(HomKey { form: *k, row: kf.row, col: kg.col }, &c * v);
                }
            }
        }
        out
    }

    /// Graded commutator `[f, g] = f∘g - (-1)^{|f||g|} g∘f`, bilinear over
    /// homogeneous components.
    pub fn bracket(&self, f: &HomForm, g: &HomForm) -> HomForm {
        let fs = self.split_by_degree(f);
        let gs = self.split_by_degree(g);
        let mut out = HomForm::zero();
        for (df, fp) in &fs {
            for (dg, gp) in &gs {
                out.add_assign(&self.compose(fp, gp));
                let s = Sign::koszul(*df, *dg);
                out.add_scaled(&self.compose(gp, fp), &(-s.to_rational()));
            }
        }
        out
    }

    /// Action on a section form with the sign rule for pure tensors.
    pub fn act(&self, h: &HomForm, s: &SectionForm) -> SectionForm {
        let a = &*self.algebra;
        let mut out = SectionForm::zero();
        for (kh, ch) in h.iter() {
            let n = self.hom_degree(kh) as i64;
            for (ks, cs) in s.iter() {
                if kh.col != ks.gen {
                    continue;
                }
                let sign = Sign::pow(n * a.degree(ks.form) as i64);
                let c = sign.apply(&(ch * cs));
                for (k, v) in a.mul_basis(kh.form, ks.form) {
                    out.add_term(SectionKey { form: *k, gen: kh.row }, &c * v);
                }
            }
        }
        out
    }

    /// `∂̄` applied to the form coefficients.
    pub fn delbar(&self, h: &HomForm) -> HomForm {
        self.map_forms(h, |a, k| a.delbar_basis(k))
    }

    /// `∂` applied to the form coefficients.
    pub fn partial(&self, h: &HomForm) -> HomForm {
        self.map_forms(h, |a, k| a.partial_basis(k))
    }

    fn map_forms<'a>(&'a self, h: &HomForm, f: impl Fn(&'a Bga, usize) -> &'a [(usize, Rational)]) -> HomForm {
        let mut out = HomForm::zero();
        for (k, c) in h.iter() {
            for (t, v) in f(&self.algebra, k.form) {
                out.add_term(HomKey { form: *t, ..*k }, c * v);
            }
        }
        out
    }

    /// `[δ, h]`.
    pub fn delta_bracket(&self, h: &HomForm) -> HomForm {
        self.bracket(&self.delta, h)
    }

    /// The differential `D₀ = ∂̄ + [δ, -]` of the Hom complex.
    pub fn d0(&self, h: &HomForm) -> HomForm {
        self.delbar(h).plus(&self.delta_bracket(h))
    }

    /// Supertrace `Σ_l (-1)^l tr(h|E^l)`, an algebra element.
    pub fn supertrace(&self, h: &HomForm) -> BgaElement {
        let mut out = BgaElement::zero();
        for (k, c) in h.iter() {
            if k.row == k.col {
                out.add_term(k.form, Sign::pow(self.gen_degree[k.row] as i64).apply(c));
            }
        }
        out
    }

    /// Keep only the terms with form bidegree `(p, q)` satisfying `keep`.
    pub fn filter_bidegree(&self, h: &HomForm, keep: impl Fn(Bidegree) -> bool) -> HomForm {
        h.filter(|k| keep(self.algebra.bidegree(k.form)))
    }

    /// Bidegree components of the form parts, paired with Hom degree.
    pub fn type_decomposition(&self, h: &HomForm) -> BTreeMap<(Bidegree, Degree), HomForm> {
        let mut out: BTreeMap<(Bidegree, Degree), HomForm> = BTreeMap::new();
        for (k, c) in h.iter() {
            out.entry((self.algebra.bidegree(k.form), self.hom_degree(k))).or_default().add_term(*k, c.clone());
        }
        out
    }

    /// `(values[i] = h(1·e_i))` back to `h`, for a form-linear operator.
    pub fn from_generator_values(&self, values: &[SectionForm]) -> HomForm {
        let mut out = HomForm::zero();
        for (col, v) in values.iter().enumerate() {
            for (k, c) in v.iter() {
                out.add_term(HomKey { form: k.form, row: k.gen, col }, c.clone());
            }
        }
        out
    }

    /// `1·e_g`.
    pub fn generator(&self, g: usize) -> SectionForm {
        LinComb::basis(SectionKey { form: self.algebra.unit_index(), gen: g })
    }

    pub fn section_dim(&self) -> usize {
        self.algebra.dim() * self.total_rank()
    }

    pub fn section_index(&self, k: &SectionKey) -> usize {
        k.form * self.total_rank() + k.gen
    }

    pub fn section_key(&self, idx: usize) -> SectionKey {
        SectionKey { form: idx / self.total_rank(), gen: idx % self.total_rank() }
    }

    /// `∂̄(η·e) = ∂̄η·e`.
    pub fn delbar_section(&self, s: &SectionForm) -> SectionForm {
        let mut out = SectionForm::zero();
        for (k, c) in s.iter() {
            for (t, v) in self.algebra.delbar_basis(k.form) {
                out.add_term(SectionKey { form: *t, gen: k.gen }, c * v);
            }
        }
        out
    }

    /// `∂(η·e) = ∂η·e` (the flat part of a connection).
    pub fn partial_section(&self, s: &SectionForm) -> SectionForm {
        let mut out = SectionForm::zero();
        for (k, c) in s.iter() {
            for (t, v) in self.algebra.partial_basis(k.form) {
                out.add_term(SectionKey { form: *t, gen: k.gen }, c * v);
            }
        }
        out
    }

    /// `δ(η·e_i) = (-1)^{|η|} η·δ(e_i)`, from the block matrices directly.
    pub fn delta_section(&self, s: &SectionForm) -> SectionForm {
        let a = &*self.algebra;
        let mut out = SectionForm::zero();
        for (k, c) in s.iter() {
            let l = self.gen_degree[k.gen];
            let Some(block) = self.blocks.get(&l) else { continue };
            let local = k.gen - self.offsets[&l];
            let sign = Sign::pow(a.degree(k.form) as i64);
            for (r, row) in block.iter().enumerate() {
                let entry = &row[local];
                if entry.is_zero() {
                    continue;
                }
                let target = self.offsets[&(l + 1)] + r;
                let prod = a.mul(&a.element(k.form), entry);
                for (t, v) in prod.iter() {
                    out.add_term(SectionKey { form: *t, gen: target }, sign.apply(&(c * v)));
                }
            }
        }
        out
    }

    pub fn render(&self, h: &HomForm) -> String {
        if h.is_zero() {
            return "0".into();
        }
        h.iter()
            .map(|(k, c)| {
                let coeff = if c.is_one() { String::new() } else { format!("({c})*") };
                format!("{coeff}{}*E[{},{}]", self.algebra.name(k.form), k.row, k.col)
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// Degrees `-k..=0` for a profile `(r_{-k}, …, r_0)`.
pub fn profile_degrees(profile: &[usize]) -> Vec<(Degree, usize)> {
    let k = profile.len() as Degree - 1;
    profile.iter().enumerate().map(|(i, &r)| (i as Degree - k, r)).collect()
}

#[cfg(test)]
mod tests;
