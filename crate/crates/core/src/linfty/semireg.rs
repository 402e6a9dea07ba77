//! The chain maps `τ_p(f) = ((-1)^p / p!) Tr(u^p f)` into `A/A^{>p}` and the
//! Chern character cocycles `Tr(exp(-u))`.

use serde::Serialize;

use crate::bga::{BgaElement, TruncatedComplex};
use crate::graded::Sign;
use crate::homcomplex::{FreeComplex, HomForm, HomKey};
use crate::rational::{factorial, Rational};

/// `u^p ∘ f`.
fn power_times(cx: &FreeComplex, u: &HomForm, p: usize, f: &HomForm) -> HomForm {
    let mut m = f.clone();
    for _ in 0..p {
        if m.is_zero() {
            break;
        }
        m = cx.compose(u, &m);
    }
    m
}

/// `τ_p(f)`, truncated to holomorphic degree `≤ p`.
pub fn tau(cx: &FreeComplex, u: &HomForm, f: &HomForm, p: usize) -> BgaElement {
    let t = cx.supertrace(&power_times(cx, u, p, f)).scaled(&tau_constant(p));
    cx.algebra().truncate(&t, p as i32)
}

/// `(1/p!) Tr((-u)^p)`.
pub fn chern_cocycle(cx: &FreeComplex, u: &HomForm, p: usize) -> BgaElement {
    cx.supertrace(&power_times(cx, u, p, &cx.identity())).scaled(&tau_constant(p))
}

#[derive(Debug, Clone, Serialize)]
pub struct ChainMapOutcome {
    pub p: usize,
    pub checked: usize,
    pub failures: usize,
    /// First failing basis element and `τ_p(D₀f) - d τ_p(f)`.
    pub first_failure: Option<(String, String)>,
}

impl ChainMapOutcome {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

/// Checks `τ_p(D₀ f) = d τ_p(f)` in `A/A^{>p}` for every given `f`.
pub fn check_tau_chain_map(cx: &FreeComplex, u: &HomForm, p: usize, keys: &[HomKey]) -> ChainMapOutcome {
    let target = TruncatedComplex::new(cx.algebra().clone(), p as i32);
    let mut out = ChainMapOutcome { p, checked: 0, failures: 0, first_failure: None };
    for k in keys {
        let f = HomForm::basis(*k);
        let lhs = tau(cx, u, &cx.d0(&f), p);
        let rhs = target.d(&tau(cx, u, &f, p));
        out.checked += 1;
        let r = lhs.minus(&rhs);
        if !r.is_zero() {
            out.failures += 1;
            if out.first_failure.is_none() {
                out.first_failure = Some((cx.render(&f), cx.algebra().render(&r)));
            }
        }
    }
    out
}

/// `(∂̄ c, ∂ c)` for `c = chern_cocycle(u, p)`.
pub fn chern_residuals(cx: &FreeComplex, u: &HomForm, p: usize) -> (BgaElement, BgaElement) {
    let c = chern_cocycle(cx, u, p);
    let a = cx.algebra();
    (a.delbar(&c), a.partial(&c))
}

/// `(-1)^p / p!`.
pub fn tau_constant(p: usize) -> Rational {
    Sign::pow(p as i64).apply(&factorial(p as u32).recip())
}
