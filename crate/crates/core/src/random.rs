//! Seeded random draws of differentials and connections.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bga::{Bga, BgaElement};
use crate::graded::{Bidegree, Degree};
use crate::homcomplex::{profile_degrees, FormMatrix};
use crate::linalg::{Matrix, Vector};
use crate::rational::Rational;

pub type SeededRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Derive an independent stream from a base seed and a label.
pub fn substream(seed: u64, label: u64) -> SeededRng {
    rng(seed ^ label.wrapping_mul(0x9e37_79b9_7f4a_7c15).rotate_left(17))
}

fn small(rng: &mut SeededRng) -> Rational {
    Rational::from_int(rng.gen_range(-1..=1))
}

/// A constant-coefficient differential for the profile `(r_{-k}, …, r_0)`
/// with `δ² = 0`: each block is a random sum of rank-one maps whose row
/// functionals kill the image of the previous block.
pub fn random_differential(algebra: &Bga, profile: &[usize], rng: &mut SeededRng) -> BTreeMap<Degree, FormMatrix> {
    let degrees = profile_degrees(profile);
    let mut blocks = BTreeMap::new();
    let mut prev: Option<Matrix> = None;
    for w in degrees.windows(2) {
        let ((l, src), (_, dst)) = (w[0], w[1]);
        let allowed: Vec<Vector> = match &prev {
            Some(p) if p.cols() > 0 => p.left_kernel(),
            _ => (0..src)
                .map(|i| {
                    let mut v = vec![Rational::zero(); src];
                    v[i] = Rational::one();
                    v
                })
                .collect(),
        };
        let max_rank = dst.min(allowed.len());
        let r = if max_rank == 0 { 0 } else { rng.gen_range(0..=max_rank) };
        let mut m = Matrix::zeros(dst, src);
        for _ in 0..r {
            let col: Vec<Rational> = (0..dst).map(|_| small(rng)).collect();
            let mut row = vec![Rational::zero(); src];
            for b in &allowed {
                let c = small(rng);
                for (x, y) in row.iter_mut().zip(b) {
                    *x += &c * y;
                }
            }
            for i in 0..dst {
                for j in 0..src {
                    let v = m.get(i, j) + &(&col[i] * &row[j]);
                    m.set(i, j, v);
                }
            }
        }
        let unit = algebra.unit();
        let fm: FormMatrix = (0..dst).map(|i| (0..src).map(|j| unit.scaled(m.get(i, j))).collect()).collect();
        blocks.insert(l, fm);
        prev = Some(m);
    }
    blocks
}

/// Random `Γ` with entries in the span of the (1,0) basis elements.
pub fn random_gamma(algebra: &Bga, profile: &[usize], rng: &mut SeededRng) -> BTreeMap<Degree, FormMatrix> {
    random_gamma_for_ranks(algebra, &profile_degrees(profile), rng)
}

pub fn random_gamma_for_ranks(algebra: &Bga, ranks: &[(Degree, usize)], rng: &mut SeededRng) -> BTreeMap<Degree, FormMatrix> {
    let ones: Vec<usize> = (0..algebra.dim()).filter(|&i| algebra.bidegree(i) == Bidegree::new(1, 0)).collect();
    let mut blocks = BTreeMap::new();
    for &(l, r) in ranks {
        let m: FormMatrix = (0..r)
            .map(|_| {
                (0..r)
                    .map(|_| {
                        let mut e = BgaElement::zero();
                        for &k in &ones {
                            e.add_term(k, small(rng));
                        }
                        e
                    })
                    .collect()
            })
            .collect();
        blocks.insert(l, m);
    }
    blocks
}
