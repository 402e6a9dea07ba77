//! Seeded obstruction trials: extend a first-order deformation as far as it
//! goes, send every nonzero obstruction through `g_1`, and check that the
//! pushforward of the Maurer–Cartan element is closed.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::Rng;
use serde::Serialize;

use super::{extend_order, mc_residual, pushforward, ArtinRing, Extension, GradedCohomology, MTensor};
use crate::bga::canned;
use crate::connection::Connection;
use crate::error::Error;
use crate::homcomplex::{FreeComplex, HomForm, HomKey};
use crate::linfty::{derive_pushforward_constants, AtiyahLift, Components, DglaTables, SVec, SourceDgla};
use crate::random::SeededRng;
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TrialConfig {
    pub vars: usize,
    pub order: u32,
}

impl Default for TrialConfig {
    fn default() -> Self {
        TrialConfig { vars: 1, order: 3 }
    }
}

/// Signs put in front of `|c_2| = 1/2` and `|c_3| = 1/6`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct SignPattern {
    pub c2: i8,
    pub c3: i8,
}

impl SignPattern {
    pub const ALL: [SignPattern; 4] =
        [SignPattern { c2: 1, c3: 1 }, SignPattern { c2: -1, c3: 1 }, SignPattern { c2: 1, c3: -1 }, SignPattern { c2: -1, c3: -1 }];

    /// The pattern matching the derived constants.
    pub fn derived() -> SignPattern {
        let c = derive_pushforward_constants(3);
        SignPattern { c2: c[1].signum() as i8, c3: c[2].signum() as i8 }
    }

    pub fn constants(&self) -> Vec<Rational> {
        vec![Rational::one(), Rational::new(self.c2 as i64, 2), Rational::new(self.c3 as i64, 6)]
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ObstructionRecord {
    pub order: u32,
    pub monomial: String,
    pub cocycle: String,
    /// `g_1` of the obstruction cocycle.
    pub image: String,
    /// Primitive of the image found by solving the linear system.
    pub primitive: Option<String>,
    /// The explicit primitive `Σ_{k≥2} c_k g_k(x, …, x)` at this monomial
    /// has differential equal to the image.
    pub explicit_primitive: bool,
}

impl ObstructionRecord {
    pub fn annihilated(&self) -> bool {
        self.primitive.is_some() && self.explicit_primitive
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TrialOutcome {
    pub label: String,
    /// `x` solves the equation modulo `m^{reached + 1}`.
    pub reached_order: u32,
    pub h1: usize,
    pub h2: usize,
    pub obstructions: Vec<ObstructionRecord>,
    /// Closedness of the pushforward up to the reached order, per sign pattern.
    pub pushforward_closed: BTreeMap<String, bool>,
    pub mc_verified: bool,
    #[serde(skip)]
    pub element: MTensor,
}

impl TrialOutcome {
    pub fn passed(&self) -> bool {
        self.mc_verified
            && self.obstructions.iter().all(ObstructionRecord::annihilated)
            && self.pushforward_closed.get(&pattern_label(SignPattern::derived())).copied().unwrap_or(false)
    }
}

pub fn pattern_label(p: SignPattern) -> String {
    let s = |x: i8| if x > 0 { "+" } else { "-" };
    format!("c2{}c3{}", s(p.c2), s(p.c3))
}

/// Random first-order part: for each variable, a combination of cocycle
/// representatives of `H¹` and boundaries with small integer coefficients.
pub fn random_first_order(h1: &GradedCohomology, ring: &ArtinRing, rng: &mut SeededRng) -> MTensor {
    let reps = h1.representatives();
    let bounds = h1.boundaries();
    let mut x = MTensor::zero();
    for i in 0..ring.vars() {
        let mut v = SVec::zero();
        for r in &reps {
            v.add_scaled(r, &Rational::from_int(rng.gen_range(-2..=2)));
        }
        if v.is_zero() {
            if let Some(r) = reps.first() {
                v.add_assign(r);
            }
        }
        for b in bounds.iter().take(4) {
            v.add_scaled(b, &Rational::from_int(rng.gen_range(-1..=1)));
        }
        x.add(&ring.variable(i), &v);
    }
    x
}

/// Gauge-trivial first-order part `x_i = d y_i` for random degree-0 `y_i`.
/// It extends to every order, and since `[x_1, x_1]` is exact but usually
/// nonzero, the `g_2` term of the pushforward matters from order 2 on.
pub fn gauge_first_order(l: &DglaTables, ring: &ArtinRing, rng: &mut SeededRng) -> MTensor {
    let degree_zero: Vec<usize> = (0..l.dim()).filter(|&i| l.degrees[i] == 0).collect();
    let mut x = MTensor::zero();
    for i in 0..ring.vars() {
        let mut y = SVec::zero();
        for &k in &degree_zero {
            if rng.gen_bool(0.5) {
                y.add_scaled(&SVec::basis(k), &Rational::from_int(rng.gen_range(-2..=2)));
            }
        }
        x.add(&ring.variable(i), &l.d(&y));
    }
    x
}

/// Runs one trial from the given first-order part.
pub fn run_trial(lift: &AtiyahLift, ring: &ArtinRing, first: &MTensor, label: String) -> Result<TrialOutcome, Error> {
    let source = lift.source().tables();
    let target = lift.target();
    let h1 = GradedCohomology::new(source, 1);
    let h2 = GradedCohomology::new(source, 2);
    let target_h2 = GradedCohomology::new(target, 2);
    let derived = derive_pushforward_constants(3);
    let higher = vec![Rational::zero(), derived[1].clone(), derived[2].clone()];
    let render_t = |v: &SVec| lift.source().complex().algebra().render(&lift.target_element(v));
    let render_s = |v: &SVec| lift.source().complex().render(&lift.source().to_form(v));

    let mut x = first.truncated(1);
    let mut reached = 1;
    let mut obstructions = Vec::new();
    while reached < ring.order() {
        match extend_order(source, &h2, ring, &x, reached)? {
            Extension::Extended(next) => {
                x = next;
                reached += 1;
            }
            Extension::Obstructed(ob) => {
                let explicit = pushforward(lift, ring, &x, &higher);
                for c in ob.components.iter().filter(|c| c.is_nonzero()) {
                    let image = lift.eval_multi(&[&c.cocycle]);
                    let primitive = target_h2.primitive(&image);
                    let pi = explicit.component(&c.monomial);
                    obstructions.push(ObstructionRecord {
                        order: ob.order,
                        monomial: ring.render(&c.monomial),
                        cocycle: render_s(&c.cocycle),
                        image: render_t(&image),
                        primitive: primitive.as_ref().map(render_t),
                        explicit_primitive: target.d(&pi) == image,
                    });
                }
                break;
            }
        }
    }
    let mc_verified = mc_residual(source, ring, &x).truncated(reached).is_zero();
    let mut pushforward_closed = BTreeMap::new();
    for p in SignPattern::ALL {
        let pf = pushforward(lift, ring, &x, &p.constants()).truncated(reached);
        pushforward_closed.insert(pattern_label(p), pf.map(|v| target.d(v)).is_zero());
    }
    Ok(TrialOutcome {
        label,
        reached_order: reached,
        h1: h1.dimension(),
        h2: h2.dimension(),
        obstructions,
        pushforward_closed,
        mc_verified,
        element: x,
    })
}

/// An instance on the `jet` model where the pushforward needs the relative
/// sign of `c_2` and `c_3`: rank 2 in degree 0, `δ = 0`, `Γ = 0`, and
/// `x_1 = zψ1·E12 + ψ2·E21 + ψ3·E11`. Here `u = 0`, so `g_1 = 0` and the
/// `t³` term of the pushforward is `c_2(g_2(x_1,x_2) + g_2(x_2,x_1)) + c_3 g_3(x_1,x_1,x_1)`.
pub fn jet_instance() -> (Connection, MTensor) {
    let a = Arc::new(canned::jet());
    let cx = Arc::new(FreeComplex::from_profile(a.clone(), &[2]));
    let conn = Connection::trivial(cx.clone());
    let src = SourceDgla::new(cx);
    let key = |name: &str, row: usize, col: usize| HomKey { form: a.index_of(name).expect("jet basis"), row, col };
    let mut x1 = SVec::zero();
    for k in [key("zpsi1", 0, 1), key("psi2", 1, 0), key("psi3", 0, 0)] {
        x1.add_assign(&src.to_vec(&HomForm::basis(k)).expect("constant-degree key"));
    }
    let ring = ArtinRing::new(1, 3).unwrap();
    (conn, MTensor::single(ring.variable(0), x1))
}

/// A jet instance where `g_1` does not kill an exact obstruction cocycle:
/// `Γ = w1·phi·E11`, so `u = ∂̄Γ` is `psi1·phi·E11` up to sign, and
/// `x_1 = psi2·E12 + psi3·E21`. Then `½[x_1, x_1] = psi2·psi3·(E11 - E22)` is
/// the boundary of `w2·psi3·(E11 - E22)`, while its `g_1`-image is a nonzero
/// top form. The pushforward therefore needs the sign of `c_2, c_3`
/// relative to `c_1`.
pub fn jet_curved_instance() -> (Connection, MTensor) {
    let a = Arc::new(canned::jet());
    let cx = Arc::new(FreeComplex::from_profile(a.clone(), &[2]));
    let e = |name: &str| a.element(a.index_of(name).expect("jet basis"));
    let zero = crate::bga::BgaElement::zero();
    let gamma = BTreeMap::from([(0, vec![vec![a.mul(&e("w1"), &e("phi")), zero.clone()], vec![zero.clone(), zero]])]);
    let conn = Connection::new(cx.clone(), &gamma).expect("(1,0) connection");
    let src = SourceDgla::new(cx);
    let key = |name: &str, row: usize, col: usize| HomKey { form: a.index_of(name).expect("jet basis"), row, col };
    let mut x1 = SVec::zero();
    for k in [key("psi2", 0, 1), key("psi3", 1, 0)] {
        x1.add_assign(&src.to_vec(&HomForm::basis(k)).expect("constant-degree key"));
    }
    let ring = ArtinRing::new(1, 3).unwrap();
    (conn, MTensor::single(ring.variable(0), x1))
}
