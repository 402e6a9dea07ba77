//! The L∞ morphism `g` from `A^{0,*}(Hom(E, E))` to `A/A^{≥2}[2]` with
//!
//! ```text
//! g_1(f)       = ⟨u, f⟩
//! g_2(f, g)    = ½(⟨∇f, g⟩ - (-1)^{|f||g|}⟨∇g, f⟩)
//! g_3(f, g, h) = -½⟨f, [g, h]⟩
//! g_n          = 0 for n > 3
//! ```

use std::collections::HashMap;
use std::sync::Arc;

use super::{Components, DglaTables, SVec};
use crate::bga::{BgaElement, TruncatedComplex};
use crate::connection::{Connection, CyclicForm};
use crate::error::Error;
use crate::graded::Sign;
use crate::homcomplex::{FreeComplex, HomForm, HomKey};
use crate::rational::Rational;

/// `A^{0,*}(Hom(E, E))` with `D₀ = ∂̄ + [δ, -]` and the graded commutator,
/// tabulated on the pure-tensor basis.
#[derive(Debug, Clone)]
pub struct SourceDgla {
    complex: Arc<FreeComplex>,
    keys: Vec<HomKey>,
    index: HashMap<HomKey, usize>,
    tables: DglaTables,
}

impl SourceDgla {
    pub fn new(complex: Arc<FreeComplex>) -> Self {
        let keys = complex.source_basis();
        let index: HashMap<HomKey, usize> = keys.iter().enumerate().map(|(i, k)| (*k, i)).collect();
        let to_vec = |h: &HomForm| -> SVec {
            SVec::from_terms(h.iter().map(|(k, c)| (*index.get(k).expect("source is closed under D0 and bracket"), c.clone())))
        };
        let forms: Vec<HomForm> = keys.iter().map(|k| HomForm::basis(*k)).collect();
        let degrees = keys.iter().map(|k| complex.key_degree(k)).collect();
        let differential = forms.iter().map(|h| to_vec(&complex.d0(h))).collect();
        let n = keys.len();
        let mut bracket = Vec::with_capacity(n * n);
        for f in &forms {
            for g in &forms {
                bracket.push(to_vec(&complex.bracket(f, g)));
            }
        }
        let tables = DglaTables { degrees, differential, bracket: Some(bracket) };
        SourceDgla { complex, keys, index, tables }
    }

    pub fn complex(&self) -> &Arc<FreeComplex> {
        &self.complex
    }

    pub fn keys(&self) -> &[HomKey] {
        &self.keys
    }

    pub fn dim(&self) -> usize {
        self.keys.len()
    }

    pub fn tables(&self) -> &DglaTables {
        &self.tables
    }

    /// Coordinates of a form in `A^{0,*}(Hom)`.
    pub fn to_vec(&self, h: &HomForm) -> Result<SVec, Error> {
        let mut out = SVec::zero();
        for (k, c) in h.iter() {
            let i = self.index.get(k).ok_or_else(|| Error::Input(format!("{k:?} is not in A^(0,*)(Hom)")))?;
            out.add_term(*i, c.clone());
        }
        Ok(out)
    }

    pub fn to_form(&self, v: &SVec) -> HomForm {
        HomForm::from_terms(v.iter().map(|(i, c)| (self.keys[*i], c.clone())))
    }
}

/// The tabulated morphism for one connection and cyclic form.
#[derive(Debug, Clone)]
pub struct AtiyahLift {
    source: Arc<SourceDgla>,
    connection: Connection,
    form: CyclicForm,
    target_complex: TruncatedComplex,
    target: DglaTables,
    u: HomForm,
    g1: Vec<SVec>,
    g2: Vec<SVec>,
    pairing: Vec<SVec>,
    g3: Option<Vec<SVec>>,
}

/// Above this source dimension `g_3` is evaluated on demand.
const G3_TABLE_LIMIT: usize = 48;

impl AtiyahLift {
    /// Checks compatibility of the form with the connection on all pairs of
    /// source basis elements, then tabulates `g_1`, `g_2` (and `g_3` for
    /// small sources).
    pub fn build(connection: &Connection, form: &CyclicForm, source: Arc<SourceDgla>) -> Result<Self, Error> {
        if !Arc::ptr_eq(connection.complex(), source.complex()) {
            return Err(Error::Input("source and connection live on different complexes".into()));
        }
        if let Err((f, g, r)) = form.check_compatibility(connection, source.keys()) {
            let a = source.complex().algebra();
            return Err(Error::Incompatible(format!("on ({f:?}, {g:?}): residual {}", a.render(&r))));
        }
        let cx = source.complex().clone();
        let alg = cx.algebra().clone();
        let target_complex = TruncatedComplex::new(alg.clone(), 1);
        let target = {
            let tc = &target_complex;
            let degrees = tc.basis().iter().map(|&i| tc.degree_of(i)).collect();
            let differential = tc.basis().iter().map(|&i| to_target(tc, &tc.d(&alg.element(i)))).collect();
            DglaTables::abelian(degrees, differential)
        };
        let u = connection.atiyah();
        let forms: Vec<HomForm> = source.keys().iter().map(|k| HomForm::basis(*k)).collect();
        let n = forms.len();
        let g1 = forms.iter().map(|f| to_target(&target_complex, &form.pair(&cx, &u, f))).collect();
        let nablas: Vec<HomForm> = forms.iter().map(|f| connection.nabla(f)).collect();
        let degs = &source.tables().degrees;
        let mut nf = Vec::with_capacity(n * n);
        for i in 0..n {
            for f in &forms {
                nf.push(to_target(&target_complex, &form.pair(&cx, &nablas[i], f)));
            }
        }
        let half = Rational::new(1, 2);
        let mut g2 = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let s = Sign::koszul(degs[i], degs[j]).to_rational();
                let mut v = nf[i * n + j].clone();
                v.add_scaled(&nf[j * n + i], &(-s));
                g2.push(v.scaled(&half));
            }
        }
        let mut pairing = Vec::with_capacity(n * n);
        for f in &forms {
            for g in &forms {
                pairing.push(to_target(&target_complex, &form.pair(&cx, f, g)));
            }
        }
        let mut lift = AtiyahLift {
            source,
            connection: connection.clone(),
            form: form.clone(),
            target_complex,
            target,
            u,
            g1,
            g2,
            pairing,
            g3: None,
        };
        if n <= G3_TABLE_LIMIT {
            let mut t = Vec::with_capacity(n * n * n);
            for i in 0..n {
                for j in 0..n {
                    for k in 0..n {
                        t.push(lift.g3_direct(i, j, k));
                    }
                }
            }
            lift.g3 = Some(t);
        }
        Ok(lift)
    }

    fn g3_direct(&self, i: usize, j: usize, k: usize) -> SVec {
        let n = self.source.dim();
        let br = self.source.tables().bracket_basis(j, k);
        let mut out = SVec::zero();
        for (m, c) in br.iter() {
            out.add_scaled(&self.pairing[i * n + m], c);
        }
        out.scaled(&Rational::new(-1, 2))
    }

    pub fn source(&self) -> &Arc<SourceDgla> {
        &self.source
    }

    pub fn target(&self) -> &DglaTables {
        &self.target
    }

    pub fn target_complex(&self) -> &TruncatedComplex {
        &self.target_complex
    }

    pub fn atiyah(&self) -> &HomForm {
        &self.u
    }

    pub fn form(&self) -> &CyclicForm {
        &self.form
    }

    /// Target coordinates back to an algebra element.
    pub fn target_element(&self, v: &SVec) -> BgaElement {
        BgaElement::from_terms(v.iter().map(|(k, c)| (self.target_complex.basis()[*k], c.clone())))
    }

    /// `g_n` evaluated straight from the defining formulas on arbitrary
    /// forms, without the tables.
    pub fn eval_forms(&self, args: &[HomForm]) -> BgaElement {
        let cx = self.source.complex();
        let tc = &self.target_complex;
        let raw = match args {
            [f] => self.form.pair(cx, &self.u, f),
            [f, g] => {
                let mut out = BgaElement::zero();
                for (df, fp) in cx.split_by_degree(f) {
                    for (dg, gp) in cx.split_by_degree(g) {
                        let a = self.form.pair(cx, &self.connection.nabla(&fp), &gp);
                        let b = self.form.pair(cx, &self.connection.nabla(&gp), &fp);
                        out.add_assign(&a);
                        out.add_scaled(&b, &(-Sign::koszul(df, dg).to_rational()));
                    }
                }
                out.scaled(&Rational::new(1, 2))
            }
            [f, g, h] => self.form.pair(cx, f, &cx.bracket(g, h)).scaled(&Rational::new(-1, 2)),
            _ => BgaElement::zero(),
        };
        tc.project(&raw)
    }
}

fn to_target(tc: &TruncatedComplex, a: &BgaElement) -> SVec {
    SVec::from_terms(a.iter().filter_map(|(i, c)| tc.position(*i).map(|p| (p, c.clone()))))
}

impl Components for AtiyahLift {
    fn arity_bound(&self) -> usize {
        3
    }

    fn eval(&self, args: &[usize]) -> SVec {
        let n = self.source.dim();
        match *args {
            [i] => self.g1[i].clone(),
            [i, j] => self.g2[i * n + j].clone(),
            [i, j, k] => match &self.g3 {
                Some(t) => t[(i * n + j) * n + k].clone(),
                None => self.g3_direct(i, j, k),
            },
            _ => SVec::zero(),
        }
    }
}
