use std::sync::Arc;

use super::trials::{pattern_label, random_first_order};
use super::*;
use crate::bga::canned;
use crate::connection::{Connection, CyclicForm};
use crate::grid::draw_instance;
use crate::homcomplex::{FreeComplex, HomForm, HomKey};
use crate::linfty::{AtiyahLift, SourceDgla};
use crate::random::substream;

fn lift_of(conn: &Connection) -> AtiyahLift {
    let source = Arc::new(SourceDgla::new(conn.complex().clone()));
    AtiyahLift::build(conn, &CyclicForm::standard(), source).unwrap()
}

#[test]
fn monomials() {
    let r = ArtinRing::new(2, 3).unwrap();
    assert_eq!(r.monomials_of_degree(2), vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
    assert_eq!(r.mul(&vec![1, 1], &vec![0, 1]), Some(vec![1, 2]));
    assert_eq!(r.mul(&vec![2, 1], &vec![0, 1]), None);
    assert_eq!(r.render(&vec![2, 1]), "t1^2·t2");
}

#[test]
fn mc_residual_examples() {
    let a = Arc::new(canned::torus1());
    let cx = Arc::new(FreeComplex::from_profile(a.clone(), &[2]));
    let src = SourceDgla::new(cx);
    let ring = ArtinRing::new(1, 4).unwrap();
    let t = ring.variable(0);
    let y = a.index_of("y").unwrap();
    // x = y·N·t is Maurer–Cartan for any N since y∧y = 0.
    let mut x1 = SVec::zero();
    for (row, col, c) in [(0, 0, 1), (0, 1, -3), (1, 0, 2), (1, 1, 5)] {
        x1.add_scaled(&src.to_vec(&HomForm::basis(HomKey { form: y, row, col })).unwrap(), &Rational::from_int(c));
    }
    let x = MTensor::single(t.clone(), x1);
    assert!(mc_residual(src.tables(), &ring, &x).is_zero());
    assert!(mc_residual(src.tables(), &ring, &MTensor::zero()).is_zero());
}

#[test]
fn non_cocycle_has_linear_residual() {
    let a = Arc::new(canned::iwasawa());
    let inst = draw_instance("iwasawa", a, &[1, 1], 4, 0);
    let src = SourceDgla::new(inst.complex().clone());
    let l = src.tables();
    let ring = ArtinRing::new(1, 2).unwrap();
    let t = ring.variable(0);
    let v = (0..src.dim()).find(|&i| l.degrees[i] == 1 && !l.differential[i].is_zero()).expect("non-cocycle");
    let r = mc_residual(l, &ring, &MTensor::single(t.clone(), SVec::basis(v)));
    assert_eq!(r.component(&t), l.differential[v]);
    let h2 = GradedCohomology::new(l, 2);
    assert!(extend_order(l, &h2, &ring, &MTensor::single(t, SVec::basis(v)), 1).is_err());
}

#[test]
fn cohomology_of_delbar_toy_rank_one() {
    // A^{0,*} = span(1, y), ∂̄ = 0 there, so H⁰ = H¹ = 1 with δ = 0.
    let a = Arc::new(canned::delbar_toy());
    let cx = Arc::new(FreeComplex::from_profile(a, &[1]));
    let src = SourceDgla::new(cx);
    assert_eq!(GradedCohomology::new(src.tables(), 0).dimension(), 1);
    assert_eq!(GradedCohomology::new(src.tables(), 1).dimension(), 1);
    assert_eq!(GradedCohomology::new(src.tables(), 2).dimension(), 0);
}

#[test]
fn acyclic_complex_has_no_cohomology() {
    // Two-term complex with δ = identity.
    let a = Arc::new(canned::torus2());
    let one = a.element(a.unit_index());
    let blocks = std::collections::BTreeMap::from([(-1, vec![vec![one]])]);
    let cx = Arc::new(FreeComplex::new(a, &[(-1, 1), (0, 1)], blocks).unwrap());
    let src = SourceDgla::new(cx);
    for k in -2..=4 {
        assert_eq!(GradedCohomology::new(src.tables(), k).dimension(), 0, "H^{k}");
    }
}

#[test]
fn first_obstruction_is_half_bracket() {
    let a = Arc::new(canned::iwasawa());
    let mut seen = 0;
    for draw in 0..6 {
        let inst = draw_instance("iwasawa", a.clone(), &[1, 2, 1], 40, draw);
        let src = SourceDgla::new(inst.complex().clone());
        let l = src.tables();
        let ring = ArtinRing::new(1, 2).unwrap();
        let h1 = GradedCohomology::new(l, 1);
        let h2 = GradedCohomology::new(l, 2);
        let x = random_first_order(&h1, &ring, &mut substream(40, draw as u64));
        let x1 = x.component(&ring.variable(0));
        let omega = l.bracket(&x1, &x1).scaled(&Rational::new(1, 2));
        match extend_order(l, &h2, &ring, &x, 1).unwrap() {
            Extension::Obstructed(ob) => {
                assert_eq!(ob.components[0].cocycle, omega);
                seen += 1;
            }
            Extension::Extended(y) => {
                assert!(h2.class_of(&omega).unwrap().iter().all(Rational::is_zero));
                assert!(mc_residual(l, &ring, &y).is_zero());
            }
        }
    }
    assert!(seen > 0, "no obstructed draw");
}

#[test]
fn obstruction_class_independent_of_correction() {
    let a = Arc::new(canned::iwasawa());
    let inst = draw_instance("iwasawa", a, &[2, 1], 2, 0);
    let src = SourceDgla::new(inst.complex().clone());
    let l = src.tables();
    let ring = ArtinRing::new(1, 3).unwrap();
    let h1 = GradedCohomology::new(l, 1);
    let h2 = GradedCohomology::new(l, 2);
    let degree_one: Vec<usize> = (0..src.dim()).filter(|&i| l.degrees[i] == 1).collect();
    for draw in 0..4 {
        let x = random_first_order(&h1, &ring, &mut substream(2, draw));
        let base = mc_residual(l, &ring, &x).component(&vec![2]);
        let class = h2.class_of(&base).unwrap();
        // Any order-2 correction moves the order-2 residual by a boundary.
        for &i in degree_one.iter().step_by(3) {
            let mut y = x.clone();
            y.add(&vec![2], &SVec::basis(i));
            let r = mc_residual(l, &ring, &y).component(&vec![2]);
            assert_eq!(r.minus(&base), l.differential[i]);
            assert_eq!(h2.class_of(&r).unwrap(), class);
        }
    }
}

#[test]
fn trials_annihilate_obstructions() {
    let mut obstructed = 0;
    for model in ["delbar-toy", "iwasawa"] {
        let a = Arc::new(canned::by_name(model).unwrap());
        for draw in 0..4 {
            let inst = draw_instance(model, a.clone(), &[1, 2, 1], 77, draw);
            let lift = lift_of(&inst.connection);
            let ring = ArtinRing::new(1, 3).unwrap();
            let h1 = GradedCohomology::new(lift.source().tables(), 1);
            let first = random_first_order(&h1, &ring, &mut substream(77, draw as u64));
            let out = run_trial(&lift, &ring, &first, inst.label()).unwrap();
            assert!(out.passed(), "{out:?}");
            obstructed += out.obstructions.len();
        }
    }
    assert!(obstructed > 0);
}

#[test]
fn pushforward_of_zero_is_zero() {
    let (conn, _) = trials::jet_instance();
    let lift = lift_of(&conn);
    let ring = ArtinRing::new(1, 3).unwrap();
    assert!(pushforward(&lift, &ring, &MTensor::zero(), &SignPattern::derived().constants()).is_zero());
}

#[test]
fn jet_instance_needs_relative_sign() {
    let (conn, first) = trials::jet_instance();
    let lift = lift_of(&conn);
    assert!(lift.atiyah().is_zero());
    let ring = ArtinRing::new(1, 3).unwrap();
    let out = run_trial(&lift, &ring, &first, "jet".into()).unwrap();
    assert_eq!(out.reached_order, 3);
    assert!(out.passed());
    assert!(out.pushforward_closed[&pattern_label(SignPattern { c2: 1, c3: 1 })]);
    assert!(out.pushforward_closed[&pattern_label(SignPattern { c2: -1, c3: -1 })]);
    assert!(!out.pushforward_closed[&pattern_label(SignPattern { c2: 1, c3: -1 })]);
    assert!(!out.pushforward_closed[&pattern_label(SignPattern { c2: -1, c3: 1 })]);
}

#[test]
fn derived_pattern_is_all_plus() {
    assert_eq!(SignPattern::derived(), SignPattern { c2: 1, c3: 1 });
}

#[test]
fn gauge_trivial_elements_extend() {
    for model in ["delbar-toy", "iwasawa"] {
        let a = Arc::new(canned::by_name(model).unwrap());
        for draw in 0..3 {
            let inst = draw_instance(model, a.clone(), &[1, 2, 1], 5, draw);
            let lift = lift_of(&inst.connection);
            let ring = ArtinRing::new(2, 3).unwrap();
            let first = trials::gauge_first_order(lift.source().tables(), &ring, &mut substream(5, draw as u64));
            let out = run_trial(&lift, &ring, &first, inst.label()).unwrap();
            assert!(out.passed(), "{out:?}");
            assert_eq!(out.reached_order, 3);
            assert!(out.obstructions.is_empty());
        }
    }
}

#[test]
fn curved_jet_instance_needs_overall_sign() {
    let (conn, first) = trials::jet_curved_instance();
    let lift = lift_of(&conn);
    assert!(!lift.atiyah().is_zero());
    let ring = ArtinRing::new(1, 3).unwrap();
    let l = lift.source().tables();
    let x1 = first.component(&ring.variable(0));
    let omega = l.bracket(&x1, &x1).scaled(&Rational::new(1, 2));
    assert!(GradedCohomology::new(l, 2).class_of(&omega).unwrap().iter().all(Rational::is_zero));
    assert!(!lift.eval_multi(&[&omega]).is_zero());
    let out = run_trial(&lift, &ring, &first, "curved jet".into()).unwrap();
    assert!(out.passed(), "{out:?}");
    assert!(out.reached_order >= 2);
    assert!(!out.pushforward_closed[&pattern_label(SignPattern { c2: -1, c3: -1 })]);
    let checker = crate::linfty::ConditionChecker::new(l, lift.target(), &lift);
    let cfg = crate::linfty::SweepConfig { max_n: 4, exhaustive_limit: 0, samples: 150, seed: 3 };
    for o in checker.sweep(&cfg) {
        assert_eq!(o.failures, 0, "{o:?}");
    }
}
