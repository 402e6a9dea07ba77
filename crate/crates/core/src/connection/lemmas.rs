//! Identities relating `∇`, `D₀ = ∂̄ + [δ, -]`, the Atiyah cocycle and traces,
//! checked exactly on supplied basis elements.

use serde::Serialize;

use super::{decompose_atiyah, Connection};
use crate::homcomplex::{HomForm, HomKey};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LemmaOutcome {
    pub name: &'static str,
    pub checked: usize,
    pub failures: usize,
    /// Witness and nonzero residual of the first failure.
    pub first_failure: Option<String>,
}

impl LemmaOutcome {
    pub(crate) fn new(name: &'static str) -> Self {
        LemmaOutcome { name, checked: 0, failures: 0, first_failure: None }
    }

    pub(crate) fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(witness());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LemmaReport {
    pub outcomes: Vec<LemmaOutcome>,
}

impl LemmaReport {
    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(LemmaOutcome::passed)
    }
}

/// Runs every identity on each basis element in `keys`, plus the global
/// statements about `u`. When `other` is given, also checks
/// `u' - u = ∂̄a + [δ, a]` with `a = Γ' - Γ`.
pub fn verify_lemmas(conn: &Connection, keys: &[HomKey], other: Option<&Connection>) -> LemmaReport {
    let cx = conn.complex();
    let alg = cx.algebra();
    let u = conn.atiyah();
    let nabla_delbar = conn.nabla_of_delbar();

    let mut closed = LemmaOutcome::new("atiyah cocycle is D0-closed");
    let r = cx.d0(&u);
    closed.record(r.is_zero(), || cx.render(&r));

    let mut types = LemmaOutcome::new("atiyah cocycle has types (1,1)Hom^0 + (1,0)Hom^1");
    let comp = decompose_atiyah(cx, &u);
    types.record(comp.other.is_zero(), || cx.render(&comp.other));

    let mut coords = LemmaOutcome::new("atiyah cocycle equals delbar(Gamma) + partial(delta) + [Gamma, delta]");
    let r = u.minus(&conn.atiyah_closed_form());
    coords.record(r.is_zero(), || cx.render(&r));

    let mut nd = LemmaOutcome::new("nabla(delbar) equals delbar(Gamma)");
    let r = nabla_delbar.minus(&cx.delbar(conn.gamma()));
    nd.record(r.is_zero(), || cx.render(&r));

    let mut l1 = LemmaOutcome::new("D0(nabla a) + nabla(D0 a) = [u, a]");
    let mut l2 = LemmaOutcome::new("[nabla(delbar), a] = nabla(delbar a) + delbar(nabla a)");
    let mut l3 = LemmaOutcome::new("Tr([D, a]) = d Tr(a)");
    let mut l4 = LemmaOutcome::new("Tr(nabla a) = partial Tr(a)");
    let mut l5 = LemmaOutcome::new("nabla a = partial a + [Gamma, a]");
    for k in keys {
        let a = HomForm::basis(*k);
        let na = conn.nabla(&a);
        let witness = |r: &HomForm| format!("{k:?}: {}", cx.render(r));

        let r = cx.d0(&na).plus(&conn.nabla(&cx.d0(&a))).minus(&cx.bracket(&u, &a));
        l1.record(r.is_zero(), || witness(&r));

        let r = cx.bracket(&nabla_delbar, &a).minus(&conn.nabla(&cx.delbar(&a))).minus(&cx.delbar(&na));
        l2.record(r.is_zero(), || witness(&r));

        let t = cx.supertrace(&a);
        let r3 = cx.supertrace(&na.plus(&cx.delbar(&a))).minus(&alg.d(&t));
        l3.record(r3.is_zero(), || format!("{k:?}: {}", alg.render(&r3)));

        let r4 = cx.supertrace(&na).minus(&alg.partial(&t));
        l4.record(r4.is_zero(), || format!("{k:?}: {}", alg.render(&r4)));

        let r = na.minus(&conn.nabla_closed_form(&a));
        l5.record(r.is_zero(), || witness(&r));
    }

    let mut outcomes = vec![closed, types, coords, nd, l1, l2, l3, l4, l5];
    if let Some(other) = other {
        let mut diff = LemmaOutcome::new("u' - u = delbar(a) + [delta, a]");
        let a = conn.difference(other);
        let r = other.atiyah().minus(&u).minus(&cx.d0(&a));
        diff.record(r.is_zero(), || cx.render(&r));
        outcomes.push(diff);
    }
    LemmaReport { outcomes }
}
