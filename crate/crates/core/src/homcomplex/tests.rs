use std::collections::BTreeMap;
use std::sync::Arc;

use super::*;
use crate::bga::canned;
use proptest::prelude::*;

fn q(n: i64) -> Rational {
    Rational::from_int(n)
}

/// torus1 with profile (1,2,1) and a nonzero constant differential.
fn sample_complex() -> FreeComplex {
    let a = Arc::new(canned::torus1());
    let one = a.unit();
    let mut blocks = BTreeMap::new();
    blocks.insert(-2, vec![vec![one.clone()], vec![one.scaled(&q(2))]]);
    blocks.insert(-1, vec![vec![one.scaled(&q(2)), one.scaled(&q(-1))]]);
    FreeComplex::new(a, &profile_degrees(&[1, 2, 1]), blocks).unwrap()
}

#[test]
fn identity_supertrace_cancels() {
    let a = Arc::new(canned::torus1());
    let cx = FreeComplex::from_profile(a.clone(), &[1, 1]);
    assert!(cx.supertrace(&cx.identity()).is_zero());
    let cx = FreeComplex::from_profile(a, &[2, 1]);
    assert_eq!(cx.supertrace(&cx.identity()), cx.algebra().unit().scaled(&q(-1)));
}

#[test]
fn delta_squares_and_brackets_to_zero() {
    let cx = sample_complex();
    assert!(cx.bracket(cx.delta(), cx.delta()).is_zero());
    for k in cx.basis() {
        let h = HomForm::basis(k);
        assert!(cx.d0(&cx.d0(&h)).is_zero(), "D0^2 on {k:?}");
    }
}

#[test]
fn rejects_non_complex() {
    let a = Arc::new(canned::torus1());
    let one = a.unit();
    let mut blocks = BTreeMap::new();
    blocks.insert(-2, vec![vec![one.clone()]]);
    blocks.insert(-1, vec![vec![one.clone()]]);
    let err = FreeComplex::new(a.clone(), &profile_degrees(&[1, 1, 1]), blocks).unwrap_err();
    assert!(matches!(err, Error::InvalidComplex(_)));
    let mut bad = BTreeMap::new();
    bad.insert(-1, vec![vec![a.element(a.index_of("x").unwrap())]]);
    assert!(FreeComplex::new(a, &profile_degrees(&[1, 1]), bad).is_err());
}

#[test]
fn composition_matches_operators_on_all_pairs() {
    let cx = sample_complex();
    let basis = cx.basis();
    let ops: Vec<OperatorMatrix> = basis.iter().map(|k| OperatorMatrix::of_hom_form(&cx, &HomForm::basis(*k))).collect();
    for (i, ki) in basis.iter().enumerate() {
        for (j, kj) in basis.iter().enumerate() {
            let c = cx.compose(&HomForm::basis(*ki), &HomForm::basis(*kj));
            assert_eq!(OperatorMatrix::of_hom_form(&cx, &c), ops[i].compose(&ops[j]));
        }
    }
}

#[test]
fn delta_operator_is_delta_form() {
    let cx = sample_complex();
    assert_eq!(OperatorMatrix::delta(&cx), OperatorMatrix::of_hom_form(&cx, cx.delta()));
}

#[test]
fn sign_rule_examples() {
    let a = Arc::new(canned::torus1());
    let cx = FreeComplex::from_profile(a.clone(), &[1, 1]);
    let (x, y, xy) = (a.index_of("x").unwrap(), a.index_of("y").unwrap(), a.index_of("xy").unwrap());
    let down = HomForm::basis(HomKey { form: y, row: 0, col: 1 });
    let s = SectionForm::basis(SectionKey { form: x, gen: 1 });
    let out = cx.act(&down, &s);
    // (-1)^{(-1)(1)} · (y x) = -(-xy) = xy
    assert_eq!(out, SectionForm::basis(SectionKey { form: xy, gen: 0 }));
}

fn pair_strategy(n: usize) -> impl Strategy<Value = (usize, usize, usize)> {
    (0..n, 0..n, 0..n)
}

proptest! {
    #[test]
    fn supertrace_kills_commutators((i, j, k) in pair_strategy(4 * 16)) {
        let cx = sample_complex();
        let b = cx.basis();
        let f = HomForm::basis(b[i % b.len()]).plus(&HomForm::basis(b[k % b.len()]));
        let g = HomForm::basis(b[j % b.len()]);
        prop_assert!(cx.supertrace(&cx.bracket(&f, &g)).is_zero());
    }

    #[test]
    fn delbar_and_delta_are_derivations((i, j, _k) in pair_strategy(4 * 16)) {
        let a = Arc::new(canned::delbar_toy());
        let one = a.unit();
        let mut blocks = BTreeMap::new();
        blocks.insert(-1, vec![vec![one.clone()], vec![one.scaled(&q(-1))]]);
        let cx = FreeComplex::new(a, &profile_degrees(&[1, 2]), blocks).unwrap();
        let b = cx.basis();
        let f = HomForm::basis(b[i % b.len()]);
        let g = HomForm::basis(b[j % b.len()]);
        let df = cx.key_degree(&b[i % b.len()]);
        let sign = Sign::pow(df as i64).to_rational();
        for op in [FreeComplex::delbar, FreeComplex::delta_bracket] {
            let lhs = op(&cx, &cx.compose(&f, &g));
            let rhs = cx.compose(&op(&cx, &f), &g).plus(&cx.compose(&f, &op(&cx, &g)).scaled(&sign));
            prop_assert_eq!(lhs, rhs);
        }
    }
}
