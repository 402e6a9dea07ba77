//! The standard sweep of models, rank profiles and seeded draws.

use std::sync::Arc;

use crate::bga::{canned, Bga};
use crate::connection::{Connection, CyclicForm};
use crate::homcomplex::{profile_degrees, FreeComplex};
use crate::random::{random_differential, random_gamma, substream};
use crate::rational::Rational;

pub const MODELS: [&str; 4] = ["torus1", "torus2", "delbar-toy", "iwasawa"];
pub const PROFILES: [&[usize]; 4] = [&[2], &[1, 1], &[2, 1], &[1, 2, 1]];

pub fn forms() -> Vec<CyclicForm> {
    vec![
        CyclicForm::new(Rational::from_int(-1), Rational::zero()),
        CyclicForm::new(Rational::zero(), Rational::one()),
        CyclicForm::new(Rational::from_int(-1), Rational::one()),
    ]
}

#[derive(Debug, Clone)]
pub struct Instance {
    pub model: String,
    pub profile: Vec<usize>,
    pub draw: usize,
    pub connection: Connection,
}

impl Instance {
    pub fn complex(&self) -> &Arc<FreeComplex> {
        self.connection.complex()
    }

    pub fn label(&self) -> String {
        format!("{} {:?} draw {}", self.model, self.profile, self.draw)
    }
}

/// Seeded `(δ, Γ)` on the given algebra and profile.
pub fn draw_instance(model: &str, algebra: Arc<Bga>, profile: &[usize], seed: u64, draw: usize) -> Instance {
    let label = profile.iter().fold(draw as u64 + 1, |acc, r| acc.wrapping_mul(31).wrapping_add(*r as u64 + 7));
    let label = model.bytes().fold(label, |acc, b| acc.wrapping_mul(131).wrapping_add(b as u64));
    let mut rng = substream(seed, label);
    let blocks = random_differential(&algebra, profile, &mut rng);
    let complex = Arc::new(FreeComplex::new(algebra.clone(), &profile_degrees(profile), blocks).expect("random differential squares to zero"));
    let gamma = random_gamma(&algebra, profile, &mut rng);
    let connection = Connection::new(complex, &gamma).expect("random gamma is a (1,0) connection");
    Instance { model: model.to_string(), profile: profile.to_vec(), draw, connection }
}

/// Every `model × profile × draw` combination, in a fixed order.
pub fn instances(seed: u64, draws: usize) -> Vec<Instance> {
    let mut out = Vec::new();
    for m in MODELS {
        let a = Arc::new(canned::by_name(m).unwrap());
        for p in PROFILES {
            for d in 0..draws {
                out.push(draw_instance(m, a.clone(), p, seed, d));
            }
        }
    }
    out
}
