//! Degrees, bidegrees, signs, permutations and shuffles.

use std::fmt;
use std::ops::{Add, Mul, Neg};

use crate::rational::Rational;

/// Total (cohomological) degree.
pub type Degree = i32;

/// Form bidegree `(p, q)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize, serde::Deserialize)]
pub struct Bidegree {
    pub p: i32,
    pub q: i32,
}

impl Bidegree {
    pub const ZERO: Bidegree = Bidegree { p: 0, q: 0 };

    pub const fn new(p: i32, q: i32) -> Self {
        Bidegree { p, q }
    }

    pub fn total(self) -> Degree {
        self.p + self.q
    }
}

impl Add for Bidegree {
    type Output = Bidegree;
    fn add(self, o: Bidegree) -> Bidegree {
        Bidegree::new(self.p + o.p, self.q + o.q)
    }
}

impl fmt::Display for Bidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.p, self.q)
    }
}

/// A sign `±1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    /// `(-1)^e`.
    pub fn pow(e: i64) -> Sign {
        if e.rem_euclid(2) == 0 {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    /// The Koszul sign `(-1)^{a b}` for exchanging elements of degrees `a`, `b`.
    pub fn koszul(a: Degree, b: Degree) -> Sign {
        Sign::pow(a as i64 * b as i64)
    }

    pub fn is_minus(self) -> bool {
        self == Sign::Minus
    }

    pub fn to_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn to_rational(self) -> Rational {
        Rational::from_int(self.to_i64())
    }

    /// Apply the sign to a coefficient.
    pub fn apply(self, c: &Rational) -> Rational {
        match self {
            Sign::Plus => c.clone(),
            Sign::Minus => -c,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, o: Sign) -> Sign {
        if self == o {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        self * Sign::Minus
    }
}

/// A permutation of `0..n` in one-line notation: position `i` holds `σ(i)`.
///
/// Permuting a list `v` by `σ` produces `v_σ = (v[σ(0)], …, v[σ(n-1)])`, and
/// composition is `(σ∘τ)(i) = σ(τ(i))`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    /// Validates that `images` is a bijection of `0..n`.
    pub fn from_images(images: Vec<usize>) -> Option<Self> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i >= images.len() || seen[i] {
                return None;
            }
            seen[i] = true;
        }
        Some(Permutation(images))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn compose(&self, tau: &Permutation) -> Permutation {
        assert_eq!(self.len(), tau.len());
        Permutation(tau.0.iter().map(|&t| self.0[t]).collect())
    }

    pub fn apply<T: Clone>(&self, v: &[T]) -> Vec<T> {
        self.0.iter().map(|&i| v[i].clone()).collect()
    }

    /// Plain sign of the permutation.
    pub fn parity(&self) -> Sign {
        let mut s = Sign::Plus;
        for i in 0..self.0.len() {
            for j in i + 1..self.0.len() {
                if self.0[i] > self.0[j] {
                    s = -s;
                }
            }
        }
        s
    }
}

/// Antisymmetric Koszul sign `χ(σ; v)` of a permutation acting on elements of
/// the given degrees: every inversion of a pair of degrees `a`, `b` contributes
/// `-(-1)^{ab}`.
pub fn koszul_sign(sigma: &Permutation, degrees: &[Degree]) -> Sign {
    assert_eq!(sigma.len(), degrees.len(), "permutation/degree length mismatch");
    let im = sigma.images();
    let mut s = Sign::Plus;
    for i in 0..im.len() {
        for j in i + 1..im.len() {
            if im[i] > im[j] {
                s = s * -Sign::koszul(degrees[im[i]], degrees[im[j]]);
            }
        }
    }
    s
}

/// All `(p, n-p)`-shuffles: permutations increasing on `0..p` and on `p..n`.
/// Enumerated in lexicographic order of the first block.
pub fn shuffles(p: usize, n: usize) -> Vec<Permutation> {
    assert!(p <= n);
    let mut out = Vec::new();
    let mut first: Vec<usize> = (0..p).collect();
    loop {
        let mut images = first.clone();
        images.extend((0..n).filter(|i| !first.contains(i)));
        out.push(Permutation(images));
        // advance the p-subset
        let mut k = p;
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            if first[k] < n - p + k {
                first[k] += 1;
                for m in k + 1..p {
                    first[m] = first[m - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Every permutation of `0..n` (small `n` only).
pub fn all_permutations(n: usize) -> Vec<Permutation> {
    fn rec(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Permutation>) {
        let n = used.len();
        if prefix.len() == n {
            out.push(Permutation(prefix.clone()));
            return;
        }
        for i in 0..n {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                rec(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::binomial;
    use proptest::prelude::*;

    #[test]
    fn transposition_signs() {
        let swap = Permutation::from_images(vec![1, 0]).unwrap();
        assert_eq!(koszul_sign(&swap, &[1, 1]), Sign::Plus);
        assert_eq!(koszul_sign(&swap, &[0, 1]), Sign::Minus);
        assert_eq!(koszul_sign(&swap, &[2, 2]), Sign::Minus);
    }

    #[test]
    fn shuffle_counts() {
        for n in 0..7 {
            for p in 0..=n {
                let sh = shuffles(p, n);
                assert_eq!(Rational::from_int(sh.len() as i64), binomial(n as u32, p as u32));
                for s in &sh {
                    let im = s.images();
                    assert!(im[..p].windows(2).all(|w| w[0] < w[1]));
                    assert!(im[p..].windows(2).all(|w| w[0] < w[1]));
                }
            }
        }
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::from_images(vec![0, 0]).is_none());
        assert!(Permutation::from_images(vec![2, 0]).is_none());
    }

    fn perm(n: usize) -> impl Strategy<Value = Permutation> {
        proptest::collection::vec(any::<u32>(), n).prop_map(|keys| {
            let mut idx: Vec<usize> = (0..keys.len()).collect();
            idx.sort_by_key(|&i| (keys[i], i));
            Permutation::from_images(idx).unwrap()
        })
    }

    fn perm_and_degrees() -> impl Strategy<Value = (Permutation, Permutation, Vec<Degree>)> {
        (1usize..6).prop_flat_map(|n| (perm(n), perm(n), proptest::collection::vec(-3i32..4, n)))
    }

    proptest! {
        #[test]
        fn cocycle_rule((s, t, v) in perm_and_degrees()) {
            let lhs = koszul_sign(&s.compose(&t), &v);
            let rhs = koszul_sign(&s, &v) * koszul_sign(&t, &s.apply(&v));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn even_degrees_give_parity((s, _t, v) in perm_and_degrees()) {
            let evens: Vec<Degree> = v.iter().map(|d| 2 * d).collect();
            prop_assert_eq!(koszul_sign(&s, &evens), s.parity());
            let odds: Vec<Degree> = v.iter().map(|d| 2 * d + 1).collect();
            prop_assert_eq!(koszul_sign(&s, &odds), Sign::Plus);
        }
    }
}
