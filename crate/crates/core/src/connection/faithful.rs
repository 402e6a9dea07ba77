//! The operator realisation `h ↦ (s ↦ h(s))` intertwines every Hom-complex
//! operation with the corresponding operation on matrices of sections.

use rand::Rng;

use super::{Connection, LemmaOutcome};
use crate::homcomplex::{HomForm, HomKey, OperatorMatrix};
use crate::random::substream;
use crate::rational::Rational;

/// Binary operations run on every pair of basis forms while there are at most
/// this many pairs; beyond that each basis form meets seeded dense partners.
pub const ALL_PAIRS_LIMIT: usize = 4096;

pub fn check_operator_faithfulness(conn: &Connection, seed: u64) -> Vec<LemmaOutcome> {
    let cx = conn.complex();
    let keys = cx.basis();
    let op = |h: &HomForm| OperatorMatrix::of_hom_form(cx, h);
    let deg = |k: &HomKey| cx.key_degree(k);
    let forms: Vec<HomForm> = keys.iter().map(|k| HomForm::basis(*k)).collect();
    let ops: Vec<OperatorMatrix> = forms.iter().map(op).collect();
    let delbar = OperatorMatrix::delbar(cx);
    let delta = OperatorMatrix::delta(cx);
    let d10 = conn.d10_operator();

    let mut unary = [
        LemmaOutcome::new("operator of delbar(h) = [delbar, operator of h]"),
        LemmaOutcome::new("operator of [delta, h] = [delta, operator of h]"),
        LemmaOutcome::new("operator of nabla(h) = [D10, operator of h]"),
    ];
    for (i, k) in keys.iter().enumerate() {
        let d = deg(k);
        let r = op(&cx.delbar(&forms[i])).sub(&OperatorMatrix::graded_commutator(&delbar, 1, &ops[i], d));
        unary[0].record(r.is_zero(), || format!("{k:?}: {} nonzero entries", r.nnz()));
        let r = op(&cx.delta_bracket(&forms[i])).sub(&OperatorMatrix::graded_commutator(&delta, 1, &ops[i], d));
        unary[1].record(r.is_zero(), || format!("{k:?}: {} nonzero entries", r.nnz()));
        let r = conn.nabla_operator_residual(&forms[i], &d10);
        unary[2].record(r.is_zero(), || format!("{k:?}: {} nonzero entries", r.nnz()));
    }

    let mut compose = LemmaOutcome::new("operator of f∘g = (operator of f)(operator of g)");
    let mut bracket = LemmaOutcome::new("operator of [f, g] = graded commutator of operators");
    let mut pair = |i: usize, f: &HomForm, fo: &OperatorMatrix, g: &HomForm, go: &OperatorMatrix, dg: i32| {
        let r = op(&cx.compose(f, g)).sub(&fo.compose(go));
        compose.record(r.is_zero(), || format!("{:?} with partner {dg}: {} nonzero entries", keys[i], r.nnz()));
        let r = op(&cx.bracket(f, g)).sub(&OperatorMatrix::graded_commutator(fo, deg(&keys[i]), go, dg));
        bracket.record(r.is_zero(), || format!("{:?} with partner {dg}: {} nonzero entries", keys[i], r.nnz()));
    };
    if keys.len() * keys.len() <= ALL_PAIRS_LIMIT {
        for i in 0..keys.len() {
            for j in 0..keys.len() {
                pair(i, &forms[i], &ops[i], &forms[j], &ops[j], deg(&keys[j]));
            }
        }
    } else {
        // Homogeneous dense partners, one per Hom degree present.
        let mut rng = substream(seed, 0xfa17);
        let mut by_degree: std::collections::BTreeMap<i32, HomForm> = Default::default();
        for (k, f) in keys.iter().zip(&forms) {
            by_degree.entry(deg(k)).or_default().add_scaled(f, &Rational::from_int(rng.gen_range(1..=3)));
        }
        let partners: Vec<(i32, HomForm, OperatorMatrix)> = by_degree.into_iter().map(|(d, g)| (d, g.clone(), op(&g))).collect();
        for i in 0..keys.len() {
            for (d, g, go) in &partners {
                pair(i, &forms[i], &ops[i], g, go, *d);
            }
        }
    }
    let mut out = unary.to_vec();
    out.push(compose);
    out.push(bracket);
    out
}
