//! Invariant pairings `⟨f, g⟩ = a·Tr(fg) + b·Tr(f)Tr(g)` on the Hom complex.

use crate::bga::BgaElement;
use crate::graded::Sign;
use crate::homcomplex::{FreeComplex, HomForm, HomKey};
use crate::rational::Rational;

use super::Connection;

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct CyclicForm {
    pub a: Rational,
    pub b: Rational,
}

impl CyclicForm {
    pub fn new(a: Rational, b: Rational) -> Self {
        CyclicForm { a, b }
    }

    /// `⟨f, g⟩ = -Tr(fg)`.
    pub fn standard() -> Self {
        CyclicForm::new(Rational::from_int(-1), Rational::zero())
    }

    /// The pairing of two elementary maps `E_{ji}`, `E_{lk}` (a constant).
    fn on_elementary(&self, cx: &FreeComplex, f: &HomKey, g: &HomKey) -> Rational {
        let mut out = Rational::zero();
        // Tr(E_ji E_lk) = [i = l][j = k] (-1)^{deg j}
        if f.col == g.row && f.row == g.col {
            out += Sign::pow(cx.gen_degree(f.row) as i64).apply(&self.a);
        }
        if f.row == f.col && g.row == g.col && !self.b.is_zero() {
            let s = Sign::pow(cx.gen_degree(f.row) as i64) * Sign::pow(cx.gen_degree(g.row) as i64);
            out += s.apply(&self.b);
        }
        out
    }

    /// `⟨φf, ψg⟩ = (-1)^{|f||ψ|} φψ ⟨f, g⟩`, extended bilinearly.
    pub fn pair(&self, cx: &FreeComplex, f: &HomForm, g: &HomForm) -> BgaElement {
        let a = cx.algebra();
        let mut out = BgaElement::zero();
        for (kf, cf) in f.iter() {
            for (kg, cg) in g.iter() {
                let base = self.on_elementary(cx, kf, kg);
                if base.is_zero() {
                    continue;
                }
                let prod = a.mul_basis(kf.form, kg.form);
                if prod.is_empty() {
                    continue;
                }
                let s = Sign::pow(cx.hom_degree(kf) as i64 * a.degree(kg.form) as i64);
                let c = s.apply(&(&(cf * cg) * &base));
                for (t, v) in prod {
                    out.add_term(*t, &c * v);
                }
            }
        }
        out
    }

    /// The same pairing through composition and supertrace.
    pub fn pair_via_trace(&self, cx: &FreeComplex, f: &HomForm, g: &HomForm) -> BgaElement {
        let a = cx.algebra();
        let first = cx.supertrace(&cx.compose(f, g)).scaled(&self.a);
        let second = a.mul(&cx.supertrace(f), &cx.supertrace(g)).scaled(&self.b);
        first.plus(&second)
    }

    /// Residual of `⟨∇f, g⟩ + (-1)^{|f|}⟨f, ∇g⟩ - ∂⟨f, g⟩` for homogeneous `f`.
    pub fn compatibility_residual(&self, conn: &Connection, f: &HomForm, g: &HomForm, nabla_f: &HomForm, nabla_g: &HomForm) -> BgaElement {
        let cx = conn.complex();
        let a = cx.algebra();
        let mut out = self.pair(cx, nabla_f, g);
        let mut sign_part = BgaElement::zero();
        for (deg, part) in cx.split_by_degree(f) {
            let s = Sign::pow(deg as i64).to_rational();
            sign_part.add_scaled(&self.pair(cx, &part, nabla_g), &s);
        }
        out.add_assign(&sign_part);
        out.sub_assign(&a.partial(&self.pair(cx, f, g)));
        out
    }

    /// Checks compatibility on all pairs from `keys`. Returns the first failing
    /// pair with its residual.
    pub fn check_compatibility(&self, conn: &Connection, keys: &[HomKey]) -> Result<(), (HomKey, HomKey, BgaElement)> {
        let hs: Vec<HomForm> = keys.iter().map(|k| HomForm::basis(*k)).collect();
        let nablas: Vec<HomForm> = hs.iter().map(|h| conn.nabla(h)).collect();
        for i in 0..hs.len() {
            for j in 0..hs.len() {
                let r = self.compatibility_residual(conn, &hs[i], &hs[j], &nablas[i], &nablas[j]);
                if !r.is_zero() {
                    return Err((keys[i], keys[j], r));
                }
            }
        }
        Ok(())
    }
}
