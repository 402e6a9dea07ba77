//! The verification suites behind the command-line tool.

use std::sync::Arc;

use crate::bga::{Axiom, Bga};
use crate::connection::{check_operator_faithfulness, decompose_atiyah, verify_lemmas, Connection, LemmaOutcome};
use crate::deformation::{pattern_label, random_first_order, run_trial, ArtinRing, GradedCohomology, SignPattern};
use crate::error::Error;
use crate::homcomplex::{FreeComplex, HomForm};
use crate::linfty::{chern_residuals, check_tau_chain_map, AtiyahLift, ConditionChecker, ConditionOutcome, Coverage, SourceDgla, SweepConfig};
use crate::model::{first_delta_square_failure, Model, ModelFile};
use crate::random::{random_gamma_for_ranks, substream};
use crate::report::{Check, ModelIdentity, Report};

const ALL_AXIOMS: [Axiom; 12] = [
    Axiom::UnitBidegree,
    Axiom::ProductBidegree,
    Axiom::PartialBidegree,
    Axiom::DelbarBidegree,
    Axiom::Unit,
    Axiom::GradedCommutativity,
    Axiom::Associativity,
    Axiom::PartialSquare,
    Axiom::DelbarSquare,
    Axiom::Anticommutation,
    Axiom::LeibnizPartial,
    Axiom::LeibnizDelbar,
];

fn identity(model: &Model) -> ModelIdentity {
    ModelIdentity { name: model.name.clone(), sha256: model.hash.clone() }
}

fn lemma_check(o: &LemmaOutcome) -> Check {
    Check::from_result(o.name, format!("{} checked, {} failed", o.checked, o.failures), o.first_failure.clone())
}

fn condition_check(o: &ConditionOutcome) -> Check {
    let cov = match o.coverage {
        Coverage::Exhaustive => "exhaustive",
        Coverage::Sampled => "sampled",
        Coverage::Trivial => "trivially satisfied",
    };
    let detail = format!("{cov}, {} tuples, {} failed", o.tuples, o.failures);
    Check::from_result(o.name.clone(), detail, o.first_failure.as_ref().map(|(t, r)| format!("at {t:?}: {r}")))
}

/// Checks a model file stage by stage: algebra axioms, the complex, the
/// connection and the cyclic form. Later stages are skipped once one fails.
pub fn validate(file: &ModelFile, seed: u64) -> Result<Report, Error> {
    let ident = ModelIdentity { name: file.name.clone().unwrap_or_else(|| "unnamed".into()), sha256: file.content_hash() };
    let mut report = Report::new("validate", ident, seed);
    let a = file.algebra_unchecked()?;
    report.param("algebra dimension", a.dim());
    let v = a.validate();
    for axiom in ALL_AXIOMS {
        match v.violations.iter().find(|x| x.axiom == axiom) {
            None => report.push(Check::pass(format!("algebra: {axiom}"), "holds on all basis elements")),
            Some(x) => {
                let count = v.counts.iter().find(|(ax, _)| *ax == axiom).map_or(0, |c| c.1);
                let names: Vec<&str> = x.witness.iter().map(|&i| a.name(i)).collect();
                report.push(Check::fail(format!("algebra: {axiom}"), format!("{count} violations, first at {names:?}"), Some(x.residual.clone())));
            }
        }
    }
    if !report.passed {
        return Ok(report);
    }
    let a = Arc::new(a);
    let delta = file.delta_blocks()?;
    match first_delta_square_failure(&a, &delta) {
        Some(msg) => report.push(Check::fail("complex: delta^2 = 0", "block products", Some(msg))),
        None => report.push(Check::pass("complex: delta^2 = 0", "all consecutive block products vanish")),
    }
    if !report.passed {
        return Ok(report);
    }
    let complex = match FreeComplex::new(a.clone(), &file.ranks(), delta) {
        Ok(c) => {
            report.push(Check::pass("complex: shapes, bidegree (0,0), delbar-closed entries", format!("total rank {}", c.total_rank())));
            Arc::new(c)
        }
        Err(e) => {
            report.push(Check::fail("complex: shapes, bidegree (0,0), delbar-closed entries", "rejected", Some(e.to_string())));
            return Ok(report);
        }
    };
    let conn = match Connection::new(complex.clone(), &file.gamma_blocks()?) {
        Ok(c) => {
            report.push(Check::pass("connection: gamma is a degree-0 matrix of (1,0)-forms", "ok"));
            c
        }
        Err(e) => {
            report.push(Check::fail("connection: gamma is a degree-0 matrix of (1,0)-forms", "rejected", Some(e.to_string())));
            return Ok(report);
        }
    };
    let form = file.form();
    let keys = complex.source_basis();
    let name = format!("form: <f,g> = ({})Tr(fg) + ({})Tr(f)Tr(g) is compatible with the connection", form.a, form.b);
    match form.check_compatibility(&conn, &keys) {
        Ok(()) => report.push(Check::pass(name, format!("{} pairs", keys.len() * keys.len()))),
        Err((f, g, r)) => report.push(Check::fail(
            name,
            format!("fails on {} and {}", complex.render(&HomForm::basis(f)), complex.render(&HomForm::basis(g))),
            Some(a.render(&r)),
        )),
    }
    Ok(report)
}

/// A second connection on the same complex, for the difference identity.
fn other_connection(model: &Model, seed: u64) -> Connection {
    let blocks = random_gamma_for_ranks(&model.algebra, model.complex.ranks(), &mut substream(seed, 0xa71a));
    Connection::new(model.complex.clone(), &blocks).expect("random (1,0) gamma")
}

/// The Atiyah cocycle, its two computations, and the identities around it.
pub fn atiyah(model: &Model, seed: u64) -> Report {
    let mut report = Report::new("atiyah", identity(model), seed);
    let cx = &model.complex;
    let conn = &model.connection;
    let u = conn.atiyah();
    report.param("u", cx.render(&u));
    let comp = decompose_atiyah(cx, &u);
    report.param("u (1,1)Hom^0 part", cx.render(&comp.curvature_part));
    report.param("u (1,0)Hom^1 part", cx.render(&comp.delta_part));
    let r = conn.atiyah_operator_residual();
    report.push(Check::from_result(
        "u equals [D, delbar + delta] on sections",
        format!("operator dimension {}", cx.section_dim()),
        (!r.is_zero()).then(|| format!("{} nonzero entries", r.nnz())),
    ));
    let other = other_connection(model, seed);
    let lemmas = verify_lemmas(conn, &cx.basis(), Some(&other));
    for o in &lemmas.outcomes {
        report.push(lemma_check(o));
    }
    for o in check_operator_faithfulness(conn, seed) {
        report.push(lemma_check(&o));
    }
    report
}

pub fn build_lift(model: &Model) -> Result<AtiyahLift, Error> {
    let source = Arc::new(SourceDgla::new(model.complex.clone()));
    AtiyahLift::build(&model.connection, &model.form, source)
}

/// Conditions `C_1 … C_max_n` for the lifted semiregularity morphism.
pub fn linfty_check(model: &Model, cfg: &SweepConfig) -> Result<Report, Error> {
    let mut report = Report::new("linfty-check", identity(model), cfg.seed);
    report.param("max n", cfg.max_n);
    report.param("exhaustive limit", cfg.exhaustive_limit);
    report.param("samples", cfg.samples);
    report.param("form", format!("a = {}, b = {}", model.form.a, model.form.b));
    let lift = build_lift(model)?;
    report.param("source dimension", lift.source().dim());
    report.param("target dimension", lift.target().dim());
    let checker = ConditionChecker::new(lift.source().tables(), lift.target(), &lift);
    report.push(condition_check(&checker.skew_symmetry(cfg)));
    for o in checker.sweep(cfg) {
        report.push(condition_check(&o));
    }
    Ok(report)
}

/// `τ_p` is a chain map and `Tr(exp(-u))` has closed degree-`2p` part.
pub fn semiregularity(model: &Model, p: usize, seed: u64) -> Report {
    let mut report = Report::new("semiregularity", identity(model), seed);
    report.param("p", p);
    let cx = &model.complex;
    let u = model.connection.atiyah();
    let keys = cx.source_basis();
    let o = check_tau_chain_map(cx, &u, p, &keys);
    report.push(Check::from_result(
        format!("tau_{p} commutes with the differentials"),
        format!("{} basis elements, {} failed", o.checked, o.failures),
        o.first_failure.map(|(f, r)| format!("at {f}: {r}")),
    ));
    let c = crate::linfty::chern_cocycle(cx, &u, p);
    report.param("chern cocycle", model.algebra.render(&c));
    let (db, d) = chern_residuals(cx, &u, p);
    let a = &model.algebra;
    report.push(Check::from_result(format!("chern cocycle of degree {} is delbar-closed", 2 * p), "exact", (!db.is_zero()).then(|| a.render(&db))));
    report.push(Check::from_result(format!("chern cocycle of degree {} is partial-closed", 2 * p), "exact", (!d.is_zero()).then(|| a.render(&d))));
    report
}

#[derive(Debug, Clone, Copy)]
pub struct McConfig {
    pub vars: usize,
    pub order: u32,
    pub trials: usize,
    pub seed: u64,
}

/// Seeded obstruction trials on the model.
pub fn mc(model: &Model, cfg: &McConfig) -> Result<Report, Error> {
    let mut report = Report::new("mc", identity(model), cfg.seed);
    report.param("variables", cfg.vars);
    report.param("order", cfg.order);
    report.param("trials", cfg.trials);
    let lift = build_lift(model)?;
    let ring = ArtinRing::new(cfg.vars, cfg.order)?;
    let h1 = GradedCohomology::new(lift.source().tables(), 1);
    report.param("dim H^1", h1.dimension());
    report.param("dim H^2", GradedCohomology::new(lift.source().tables(), 2).dimension());
    let derived = pattern_label(SignPattern::derived());
    for t in 0..cfg.trials {
        let first = random_first_order(&h1, &ring, &mut substream(cfg.seed, t as u64));
        let out = run_trial(&lift, &ring, &first, format!("trial {t}"))?;
        report.push(Check::from_result(
            format!("trial {t}: MC equation holds to order {}", out.reached_order),
            "exact",
            (!out.mc_verified).then(|| "residual nonzero".to_string()),
        ));
        for ob in &out.obstructions {
            let name = format!("trial {t}: order-{} obstruction at {} is killed by g_1", ob.order, ob.monomial);
            let detail = match &ob.primitive {
                Some(p) => format!("g_1 image {} = d({p})", ob.image),
                None => format!("g_1 image {} is not exact", ob.image),
            };
            let fail = (!ob.annihilated()).then(|| format!("cocycle {}; explicit primitive ok: {}", ob.cocycle, ob.explicit_primitive));
            report.push(Check::from_result(name, detail, fail));
        }
        let closed = out.pushforward_closed[&derived];
        report.push(Check::from_result(
            format!("trial {t}: pushforward is closed to order {}", out.reached_order),
            format!("constants 1, 1/2, 1/6; other sign patterns closed: {:?}", out.pushforward_closed.iter().filter(|(k, v)| **v && **k != derived).map(|(k, _)| k.as_str()).collect::<Vec<_>>()),
            (!closed).then(|| "d of the pushforward is nonzero".to_string()),
        ));
    }
    Ok(report)
}

/// Basis size of a model's algebra, used for quick summaries.
pub fn algebra_summary(a: &Bga) -> String {
    let mut by: std::collections::BTreeMap<(i32, i32), usize> = Default::default();
    for b in a.basis() {
        *by.entry((b.bidegree.p, b.bidegree.q)).or_default() += 1;
    }
    by.iter().map(|((p, q), n)| format!("({p},{q}):{n}")).collect::<Vec<_>>().join(" ")
}
