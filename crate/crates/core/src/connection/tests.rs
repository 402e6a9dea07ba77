use std::collections::BTreeMap;
use std::sync::Arc;

use super::*;
use crate::bga::canned;
use crate::grid::{draw_instance, forms};
use crate::homcomplex::HomKey;

fn gamma_x_e11(model: &str) -> Connection {
    let a = Arc::new(canned::by_name(model).unwrap());
    let cx = Arc::new(FreeComplex::from_profile(a.clone(), &[2]));
    let x = a.element(a.index_of("x").unwrap());
    let z = BgaElement::zero();
    let mut blocks = BTreeMap::new();
    blocks.insert(0, vec![vec![x, z.clone()], vec![z.clone(), z]]);
    Connection::new(cx, &blocks).unwrap()
}

#[test]
fn nabla_is_x_commutator() {
    // Γ = x·C with C = E11 gives ∇A = x[C, A] on constant A.
    let conn = gamma_x_e11("torus1");
    let cx = conn.complex();
    let a = cx.algebra();
    let x = a.index_of("x").unwrap();
    let u = a.unit_index();
    let e12 = HomForm::basis(HomKey { form: u, row: 0, col: 1 });
    let expected = HomForm::basis(HomKey { form: x, row: 0, col: 1 });
    assert_eq!(conn.nabla(&e12), expected);
    let e21 = HomForm::basis(HomKey { form: u, row: 1, col: 0 });
    // [E11, E21] = -E21
    assert_eq!(conn.nabla(&e21), HomForm::basis(HomKey { form: x, row: 1, col: 0 }).neg());
}

#[test]
fn atiyah_examples() {
    let flat = gamma_x_e11("torus1");
    assert!(flat.atiyah().is_zero());
    let toy = gamma_x_e11("delbar-toy");
    let a = toy.complex().algebra();
    let xy = a.index_of("xy").unwrap();
    assert_eq!(toy.atiyah(), HomForm::basis(HomKey { form: xy, row: 0, col: 0 }));
}

#[test]
fn rejects_wrong_type_gamma() {
    let a = Arc::new(canned::torus1());
    let cx = Arc::new(FreeComplex::from_profile(a.clone(), &[1]));
    let mut blocks = BTreeMap::new();
    blocks.insert(0, vec![vec![a.element(a.index_of("y").unwrap())]]);
    assert!(Connection::new(cx.clone(), &blocks).is_err());
    blocks.insert(0, vec![vec![a.element(a.index_of("x").unwrap()); 2]]);
    assert!(Connection::new(cx, &blocks).is_err());
}

#[test]
fn operator_realisations_agree() {
    for model in ["torus1", "delbar-toy", "torus2"] {
        let a = Arc::new(canned::by_name(model).unwrap());
        for (draw, profile) in [[1usize, 1].as_slice(), &[2, 1], &[1, 2, 1]].iter().enumerate() {
            let inst = draw_instance(model, a.clone(), profile, 3, draw);
            let conn = &inst.connection;
            assert!(conn.atiyah_operator_residual().is_zero(), "{}", inst.label());
            let d10 = conn.d10_operator();
            for k in inst.complex().basis().into_iter().step_by(7) {
                assert!(conn.nabla_operator_residual(&HomForm::basis(k), &d10).is_zero(), "{} {k:?}", inst.label());
            }
        }
    }
}

#[test]
fn lemmas_hold_on_samples() {
    let a = Arc::new(canned::iwasawa());
    let inst = draw_instance("iwasawa", a.clone(), &[1, 2, 1], 11, 0);
    let other = draw_instance("iwasawa", a, &[1, 2, 1], 11, 1);
    let other = Connection::from_gamma(inst.complex().clone(), other.connection.gamma().clone()).unwrap();
    let keys: Vec<HomKey> = inst.complex().basis().into_iter().step_by(13).collect();
    let report = verify_lemmas(&inst.connection, &keys, Some(&other));
    assert!(report.passed(), "{report:?}");
    assert!(report.outcomes.iter().all(|o| o.checked > 0));
}

#[test]
fn pairing_routes_agree_and_forms_are_compatible() {
    let a = Arc::new(canned::delbar_toy());
    let inst = draw_instance("delbar-toy", a, &[2, 1], 5, 0);
    let cx = inst.complex();
    let keys = cx.basis();
    for form in forms() {
        for (i, ki) in keys.iter().enumerate().step_by(3) {
            for kj in keys.iter().skip(i % 5).step_by(5) {
                let (f, g) = (HomForm::basis(*ki), HomForm::basis(*kj));
                assert_eq!(form.pair(cx, &f, &g), form.pair_via_trace(cx, &f, &g));
            }
        }
        assert!(form.check_compatibility(&inst.connection, &keys).is_ok());
    }
}

#[test]
fn gamma_blocks_roundtrip() {
    let a = Arc::new(canned::torus2());
    let inst = draw_instance("torus2", a, &[1, 2, 1], 2, 0);
    let blocks = inst.connection.gamma_blocks();
    let again = Connection::new(inst.complex().clone(), &blocks).unwrap();
    assert_eq!(again.gamma(), inst.connection.gamma());
}
