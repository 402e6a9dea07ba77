//! The model files shipped with the command-line tool, rebuilt from code.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::bga::canned;
use crate::connection::{Connection, CyclicForm};
use crate::grid::draw_instance;
use crate::homcomplex::FreeComplex;
use crate::model::{BlockSpec, Entry, ModelFile};
use crate::rational::Rational;

pub const FIXTURE_SEED: u64 = 2024;

fn drawn(model: &str, profile: &[usize]) -> ModelFile {
    let a = Arc::new(canned::by_name(model).expect("canned model"));
    let inst = draw_instance(model, a, profile, FIXTURE_SEED, 0);
    ModelFile::from_objects(&format!("{model}-rank{}", profile.iter().sum::<usize>()), &inst.connection, &CyclicForm::standard())
}

/// Three copies of the structure sheaf on torus1 with `δ = 1` twice, so `δ² ≠ 0`.
fn broken() -> ModelFile {
    let a = Arc::new(canned::torus1());
    let cx = Arc::new(FreeComplex::new(a, &[(-2, 1), (-1, 1), (0, 1)], BTreeMap::new()).expect("zero differential"));
    let mut file = ModelFile::from_objects("broken", &Connection::trivial(cx), &CyclicForm::standard());
    let one = || vec![vec![Entry::Scalar(Rational::one())]];
    file.complex.delta = vec![BlockSpec { deg: -2, rows: one() }, BlockSpec { deg: -1, rows: one() }];
    file
}

/// `(file name, contents)` for every shipped model.
pub fn bundled() -> Vec<(&'static str, ModelFile)> {
    vec![
        ("torus1-rank2.model", drawn("torus1", &[2])),
        ("delbar-toy-rank2.model", drawn("delbar-toy", &[2])),
        ("iwasawa-rank4.model", drawn("iwasawa", &[1, 2, 1])),
        ("broken.model", broken()),
    ]
}
