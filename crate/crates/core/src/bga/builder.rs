//! Free graded-commutative algebras on bigraded generators, optionally cut
//! down to finite dimension by weight bounds, with differentials prescribed on
//! generators and extended by the Leibniz rule.

use std::collections::{BTreeMap, HashMap};

use super::{BasisElement, Bga, SparseRow};
use crate::error::Error;
use crate::graded::{Bidegree, Sign};
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GenId(usize);

#[derive(Debug, Clone)]
struct Generator {
    name: String,
    bidegree: Bidegree,
}

impl Generator {
    fn odd(&self) -> bool {
        self.bidegree.total().rem_euclid(2) == 1
    }
}

/// Monomials live in the quotient by every monomial whose weight exceeds the
/// bound of some weight function. Differentials must preserve each weight so
/// that this quotient is a differential ideal.
#[derive(Debug, Clone, Default)]
pub struct FreeGcaBuilder {
    gens: Vec<Generator>,
    bounds: Vec<(Vec<u32>, u32)>,
    partial: BTreeMap<usize, Vec<(Vec<GenId>, Rational)>>,
    delbar: BTreeMap<usize, Vec<(Vec<GenId>, Rational)>>,
}

type Exps = Vec<u32>;

impl FreeGcaBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn generator(&mut self, name: &str, p: i32, q: i32) -> GenId {
        self.gens.push(Generator { name: name.to_string(), bidegree: Bidegree::new(p, q) });
        GenId(self.gens.len() - 1)
    }

    /// Kill monomials with `Σ weight·exponent > bound`.
    pub fn weight_bound(&mut self, weights: &[(GenId, u32)], bound: u32) {
        let mut w = vec![0; self.gens.len()];
        for (g, x) in weights {
            w[g.0] = *x;
        }
        self.bounds.push((w, bound));
    }

    /// `∂ g = Σ c · (product of the listed generators, in order)`.
    pub fn set_partial(&mut self, g: GenId, terms: Vec<(Vec<GenId>, Rational)>) {
        self.partial.insert(g.0, terms);
    }

    pub fn set_delbar(&mut self, g: GenId, terms: Vec<(Vec<GenId>, Rational)>) {
        self.delbar.insert(g.0, terms);
    }

    fn weight_ok(&self, e: &Exps) -> bool {
        self.bounds.iter().all(|(w, b)| {
            let tot: u32 = w.iter().zip(e.iter()).map(|(a, b)| a * b).sum();
            tot <= *b
        })
    }

    /// Product of normal-form monomials, or `None` when it vanishes.
    fn mul_monomials(&self, a: &Exps, b: &Exps) -> Option<(Sign, Exps)> {
        let mut sign = Sign::Plus;
        for (i, g) in self.gens.iter().enumerate() {
            if !g.odd() || b[i] == 0 {
                continue;
            }
            if a[i] > 0 {
                return None;
            }
            // moving this odd factor of b left past the odd factors of a
            // with larger index
            let passed: u32 = (i + 1..self.gens.len()).filter(|&k| self.gens[k].odd()).map(|k| a[k]).sum();
            if passed % 2 == 1 {
                sign = -sign;
            }
        }
        let e: Exps = a.iter().zip(b).map(|(x, y)| x + y).collect();
        if self.weight_ok(&e) {
            Some((sign, e))
        } else {
            None
        }
    }

    fn word_to_element(&self, word: &[GenId]) -> Vec<(Sign, Exps)> {
        let mut acc = (Sign::Plus, vec![0u32; self.gens.len()]);
        for g in word {
            let mut e = vec![0u32; self.gens.len()];
            e[g.0] = 1;
            match self.mul_monomials(&acc.1, &e) {
                Some((s, m)) => acc = (acc.0 * s, m),
                None => return vec![],
            }
        }
        vec![acc]
    }

    fn enumerate(&self) -> Result<Vec<Exps>, Error> {
        let n = self.gens.len();
        for (i, g) in self.gens.iter().enumerate() {
            if !g.odd() && !self.bounds.iter().any(|(w, _)| w[i] > 0) {
                return Err(Error::Input(format!("even generator {} is not bounded by any weight", g.name)));
            }
        }
        let mut out = Vec::new();
        let mut cur = vec![0u32; n];
        fn rec(b: &FreeGcaBuilder, i: usize, cur: &mut Exps, out: &mut Vec<Exps>) {
            if i == cur.len() {
                out.push(cur.clone());
                return;
            }
            let mut e = 0;
            loop {
                cur[i] = e;
                if !b.weight_ok(cur) {
                    break;
                }
                rec(b, i + 1, cur, out);
                e += 1;
                if b.gens[i].odd() && e > 1 {
                    break;
                }
            }
            cur[i] = 0;
        }
        rec(self, 0, &mut cur, &mut out);
        // by total degree, then generators earlier in the list first
        out.sort_by(|a, b| {
            let da: i32 = self.degree_of(a);
            let db: i32 = self.degree_of(b);
            da.cmp(&db).then_with(|| b.cmp(a))
        });
        Ok(out)
    }

    fn degree_of(&self, e: &Exps) -> i32 {
        e.iter().zip(&self.gens).map(|(x, g)| *x as i32 * g.bidegree.total()).sum()
    }

    fn name_of(&self, e: &Exps) -> String {
        let mut s = String::new();
        for (x, g) in e.iter().zip(&self.gens) {
            match x {
                0 => {}
                1 => s.push_str(&g.name),
                k => s.push_str(&format!("{}^{k}", g.name)),
            }
        }
        if s.is_empty() {
            "1".into()
        } else {
            s
        }
    }

    pub fn build(&self) -> Result<Bga, Error> {
        let monos = self.enumerate()?;
        let index: HashMap<Exps, usize> = monos.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let basis: Vec<BasisElement> = monos
            .iter()
            .map(|e| BasisElement {
                name: self.name_of(e),
                bidegree: e.iter().zip(&self.gens).fold(Bidegree::ZERO, |acc, (x, g)| {
                    Bidegree::new(acc.p + *x as i32 * g.bidegree.p, acc.q + *x as i32 * g.bidegree.q)
                }),
            })
            .collect();
        let mut product = Vec::new();
        for (i, a) in monos.iter().enumerate() {
            for (j, b) in monos.iter().enumerate() {
                if let Some((s, m)) = self.mul_monomials(a, b) {
                    product.push((i, j, vec![(index[&m], s.to_rational())]));
                }
            }
        }
        let partial = self.extend_differential(&monos, &index, &self.partial)?;
        let delbar = self.extend_differential(&monos, &index, &self.delbar)?;
        let unit = index[&vec![0u32; self.gens.len()]];
        Bga::new(basis, unit, &product, &partial, &delbar)
    }

    fn extend_differential(
        &self,
        monos: &[Exps],
        index: &HashMap<Exps, usize>,
        on_gens: &BTreeMap<usize, Vec<(Vec<GenId>, Rational)>>,
    ) -> Result<Vec<(usize, SparseRow)>, Error> {
        let n = self.gens.len();
        // images of generators as (sign-adjusted) normal-form monomials
        let mut gen_images: Vec<Vec<(Exps, Rational)>> = vec![vec![]; n];
        for (&g, terms) in on_gens {
            for (word, c) in terms {
                for (s, m) in self.word_to_element(word) {
                    for (bw, bound) in &self.bounds {
                        let wg = bw[g];
                        let wm: u32 = bw.iter().zip(&m).map(|(a, b)| a * b).sum();
                        if wg != wm {
                            return Err(Error::Input(format!(
                                "differential of {} does not preserve a weight bounded by {bound}",
                                self.gens[g].name
                            )));
                        }
                    }
                    gen_images[g].push((m, s.apply(c)));
                }
            }
        }
        let mut out = Vec::new();
        for (idx, mono) in monos.iter().enumerate() {
            // mono = g_1 g_2 ... g_k in index order; Leibniz over the word
            let word: Vec<usize> = (0..n).flat_map(|i| std::iter::repeat_n(i, mono[i] as usize)).collect();
            let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
            for pos in 0..word.len() {
                let prefix_deg: i32 = word[..pos].iter().map(|&g| self.gens[g].bidegree.total()).sum();
                let sign = Sign::pow(prefix_deg as i64);
                let mut pre = vec![0u32; n];
                for &g in &word[..pos] {
                    pre[g] += 1;
                }
                let mut post = vec![0u32; n];
                for &g in &word[pos + 1..] {
                    post[g] += 1;
                }
                for (img, c) in &gen_images[word[pos]] {
                    let Some((s1, m1)) = self.mul_monomials(&pre, img) else { continue };
                    let Some((s2, m2)) = self.mul_monomials(&m1, &post) else { continue };
                    let coeff = (sign * s1 * s2).apply(c);
                    let e = acc.entry(index[&m2]).or_default();
                    *e += coeff;
                }
            }
            let row: SparseRow = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
            if !row.is_empty() {
                out.push((idx, row));
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_truncation() {
        let mut b = FreeGcaBuilder::new();
        let z = b.generator("z", 0, 0);
        let phi = b.generator("f", 1, 0);
        b.weight_bound(&[(z, 1), (phi, 1)], 2);
        b.set_partial(z, vec![(vec![phi], Rational::one())]);
        let a = b.build().unwrap();
        // 1, z, z^2, f, zf
        assert_eq!(a.dim(), 5);
        let z2 = a.index_of("z^2").unwrap();
        let zf = a.index_of("zf").unwrap();
        assert_eq!(a.partial_basis(z2), &[(zf, Rational::from_int(2))]);
    }

    #[test]
    fn weight_breaking_differential_rejected() {
        let mut b = FreeGcaBuilder::new();
        let z = b.generator("z", 0, 0);
        let phi = b.generator("f", 1, 0);
        b.weight_bound(&[(z, 1)], 1);
        b.set_partial(z, vec![(vec![phi], Rational::one())]);
        assert!(b.build().is_err());
    }

    #[test]
    fn unbounded_even_generator_rejected() {
        let mut b = FreeGcaBuilder::new();
        b.generator("z", 0, 0);
        assert!(b.build().is_err());
    }
}
