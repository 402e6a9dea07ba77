//! Built-in models.

use super::{Bga, FreeGcaBuilder};
use crate::rational::Rational;

pub const NAMES: [&str; 5] = ["point", "torus1", "torus2", "delbar-toy", "iwasawa"];

/// Models outside the standard list, still reachable by name.
pub const EXTRA: [&str; 1] = ["jet"];

pub fn by_name(name: &str) -> Option<Bga> {
    Some(match name {
        "point" => point(),
        "torus1" => torus1(),
        "torus2" => torus2(),
        "delbar-toy" => delbar_toy(),
        "iwasawa" => iwasawa(),
        "jet" => jet(),
        _ => return None,
    })
}

pub fn all() -> Vec<(&'static str, Bga)> {
    NAMES.iter().map(|n| (*n, by_name(n).unwrap())).collect()
}

/// The ground field in bidegree (0,0).
pub fn point() -> Bga {
    FreeGcaBuilder::new().build().expect("point model")
}

/// `Λ(x, y)` with `x` of type (1,0), `y` of type (0,1), zero differentials.
pub fn torus1() -> Bga {
    let mut b = FreeGcaBuilder::new();
    b.generator("x", 1, 0);
    b.generator("y", 0, 1);
    b.build().expect("torus1 model")
}

pub fn torus2() -> Bga {
    let mut b = FreeGcaBuilder::new();
    b.generator("x1", 1, 0);
    b.generator("x2", 1, 0);
    b.generator("y1", 0, 1);
    b.generator("y2", 0, 1);
    b.build().expect("torus2 model")
}

/// `torus1` with `∂̄x = xy`.
pub fn delbar_toy() -> Bga {
    let mut b = FreeGcaBuilder::new();
    let x = b.generator("x", 1, 0);
    let y = b.generator("y", 0, 1);
    b.set_delbar(x, vec![(vec![x, y], Rational::one())]);
    b.build().expect("delbar-toy model")
}

/// Left-invariant forms on the Iwasawa manifold:
/// `∂φ3 = -φ1φ2`, `∂̄ψ3 = -ψ1ψ2`.
pub fn iwasawa() -> Bga {
    let mut b = FreeGcaBuilder::new();
    let p1 = b.generator("phi1", 1, 0);
    let p2 = b.generator("phi2", 1, 0);
    let p3 = b.generator("phi3", 1, 0);
    let s1 = b.generator("psi1", 0, 1);
    let s2 = b.generator("psi2", 0, 1);
    let s3 = b.generator("psi3", 0, 1);
    b.set_partial(p3, vec![(vec![p1, p2], Rational::from_int(-1))]);
    b.set_delbar(s3, vec![(vec![s1, s2], Rational::from_int(-1))]);
    b.build().expect("iwasawa model")
}

/// Truncated polynomial functions with nonzero `∂` and `∂̄` on `A^{0,0}`:
/// even `z` with `∂z = φ`, even `w1, w2` with `∂̄wᵢ = ψᵢ`, and a free `ψ3`.
/// Each of `{z, φ}`, `{w1, ψ1}`, `{w2, ψ2}` has total weight at most one, so
/// the weight filtration makes the quotient a differential ideal.
pub fn jet() -> Bga {
    let mut b = FreeGcaBuilder::new();
    let z = b.generator("z", 0, 0);
    let phi = b.generator("phi", 1, 0);
    let w1 = b.generator("w1", 0, 0);
    let w2 = b.generator("w2", 0, 0);
    let s1 = b.generator("psi1", 0, 1);
    let s2 = b.generator("psi2", 0, 1);
    b.generator("psi3", 0, 1);
    b.weight_bound(&[(z, 1), (phi, 1)], 1);
    b.weight_bound(&[(w1, 1), (s1, 1)], 1);
    b.weight_bound(&[(w2, 1), (s2, 1)], 1);
    b.set_partial(z, vec![(vec![phi], Rational::one())]);
    b.set_delbar(w1, vec![(vec![s1], Rational::one())]);
    b.set_delbar(w2, vec![(vec![s2], Rational::one())]);
    b.build().expect("jet model")
}
