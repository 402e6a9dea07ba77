//! The L∞ morphism conditions, evaluated literally on basis tuples.

use rand::Rng;
use serde::Serialize;

use super::{Components, DglaTables, SVec};
use crate::graded::{all_permutations, koszul_sign, shuffles, Degree, Permutation, Sign};
use crate::random::{substream, SeededRng};
use crate::rational::{binomial, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Coverage {
    /// Every nondecreasing basis tuple; complete by graded skew-symmetry.
    Exhaustive,
    /// Uniformly sampled ordered tuples.
    Sampled,
    /// Every term of the condition involves a component known to vanish.
    Trivial,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConditionOutcome {
    pub name: String,
    pub coverage: Coverage,
    pub tuples: u64,
    pub failures: u64,
    /// First failing tuple and its residual.
    pub first_failure: Option<(Vec<usize>, String)>,
}

impl ConditionOutcome {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Debug, Clone, Copy)]
pub struct SweepConfig {
    pub max_n: usize,
    /// Sources of at most this dimension are swept exhaustively.
    pub exhaustive_limit: usize,
    pub samples: usize,
    pub seed: u64,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig { max_n: 5, exhaustive_limit: 40, samples: 500, seed: 0 }
    }
}

pub struct ConditionChecker<'a, G: Components + ?Sized> {
    pub source: &'a DglaTables,
    pub target: &'a DglaTables,
    pub g: &'a G,
    shuffle_cache: Vec<Vec<Vec<Permutation>>>,
}

const CACHED_ARITY: usize = 8;

fn render(v: &SVec) -> String {
    format!("{v:?}")
}

impl<'a, G: Components + ?Sized> ConditionChecker<'a, G> {
    pub fn new(source: &'a DglaTables, target: &'a DglaTables, g: &'a G) -> Self {
        let shuffle_cache = (0..=CACHED_ARITY).map(|n| (0..=n).map(|p| shuffles(p, n)).collect()).collect();
        ConditionChecker { source, target, g, shuffle_cache }
    }

    fn shuffles(&self, p: usize, n: usize) -> std::borrow::Cow<'_, [Permutation]> {
        if n <= CACHED_ARITY {
            std::borrow::Cow::Borrowed(&self.shuffle_cache[n][p])
        } else {
            std::borrow::Cow::Owned(shuffles(p, n))
        }
    }

    fn degrees(&self, v: &[usize]) -> Vec<Degree> {
        v.iter().map(|&i| self.source.degrees[i]).collect()
    }

    fn g(&self, args: &[usize]) -> SVec {
        if args.len() > self.g.arity_bound() {
            SVec::zero()
        } else {
            self.g.eval(args)
        }
    }

    /// Left side minus right side of the condition on `(v_1, …, v_n)`:
    ///
    /// ```text
    /// ½ Σ_p Σ_{S(p,n-p)} χ(σ) (-1)^{(1-n+p)(|v_σ(1)|+…+|v_σ(p)| - p)} {g_p(…), g_{n-p}(…)}
    ///   + d g_n(v)
    ///   - (-1)^{n-1} Σ_{S(1,n-1)} χ(σ) g_n(δv_σ(1), v_σ(2), …)
    ///   - (-1)^{n-2} Σ_{S(2,n-2)} χ(σ) g_{n-1}([v_σ(1), v_σ(2)], v_σ(3), …)
    /// ```
    pub fn residual(&self, v: &[usize]) -> SVec {
        let n = v.len();
        let bound = self.g.arity_bound();
        let degs = self.degrees(v);
        let mut res = SVec::zero();

        if !self.target.is_abelian() && n >= 2 {
            let half = Rational::new(1, 2);
            for p in 1..n {
                if p > bound || n - p > bound {
                    continue;
                }
                for sigma in self.shuffles(p, n).iter() {
                    let w = sigma.apply(v);
                    let head: i64 = w[..p].iter().map(|&i| self.source.degrees[i] as i64).sum();
                    let s = koszul_sign(sigma, &degs) * Sign::pow((1 - n as i64 + p as i64) * (head - p as i64));
                    let a = self.g(&w[..p]);
                    if a.is_zero() {
                        continue;
                    }
                    let b = self.g(&w[p..]);
                    res.add_scaled(&self.target.bracket(&a, &b), &s.apply(&half));
                }
            }
        }

        if n <= bound {
            res.add_assign(&self.target.d(&self.g(v)));
            let outer = Sign::pow(n as i64 - 1);
            for sigma in self.shuffles(1, n).iter() {
                let w = sigma.apply(v);
                let dv = &self.source.differential[w[0]];
                if dv.is_zero() {
                    continue;
                }
                let s = outer * koszul_sign(sigma, &degs);
                res.add_scaled(&self.g.eval_first(dv, &w[1..]), &(-s.to_rational()));
            }
        }

        if n >= 2 && n - 1 <= bound {
            let outer = Sign::pow(n as i64 - 2);
            for sigma in self.shuffles(2, n).iter() {
                let w = sigma.apply(v);
                let br = self.source.bracket_basis(w[0], w[1]);
                if br.is_zero() {
                    continue;
                }
                let s = outer * koszul_sign(sigma, &degs);
                res.add_scaled(&self.g.eval_first(&br, &w[2..]), &(-s.to_rational()));
            }
        }
        res
    }

    fn trivially_zero(&self, n: usize) -> bool {
        let bound = self.g.arity_bound();
        n > bound + 1 && (self.target.is_abelian() || n > 2 * bound)
    }

    fn tuples(&self, n: usize, cfg: &SweepConfig, label: u64) -> (Coverage, Box<dyn Iterator<Item = Vec<usize>>>) {
        let dim = self.source.dim();
        if dim <= cfg.exhaustive_limit {
            (Coverage::Exhaustive, Box::new(Multisets::new(dim, n)))
        } else {
            let mut rng: SeededRng = substream(cfg.seed, label);
            let samples: Vec<Vec<usize>> =
                (0..cfg.samples).map(|_| (0..n).map(|_| rng.gen_range(0..dim)).collect()).collect();
            (Coverage::Sampled, Box::new(samples.into_iter()))
        }
    }

    /// Checks `C_1 … C_max_n`.
    pub fn sweep(&self, cfg: &SweepConfig) -> Vec<ConditionOutcome> {
        let mut out = Vec::new();
        for n in 1..=cfg.max_n {
            let name = format!("C{n}");
            if self.trivially_zero(n) {
                let dim = self.source.dim() as u32;
                let count = if self.source.dim() <= cfg.exhaustive_limit {
                    binomial(dim + n as u32 - 1, n as u32).to_string().parse().unwrap_or(u64::MAX)
                } else {
                    cfg.samples as u64
                };
                out.push(ConditionOutcome { name, coverage: Coverage::Trivial, tuples: count, failures: 0, first_failure: None });
                continue;
            }
            let (coverage, tuples) = self.tuples(n, cfg, n as u64);
            let mut o = ConditionOutcome { name, coverage, tuples: 0, failures: 0, first_failure: None };
            for t in tuples {
                o.tuples += 1;
                let r = self.residual(&t);
                if !r.is_zero() {
                    o.failures += 1;
                    if o.first_failure.is_none() {
                        o.first_failure = Some((t, render(&r)));
                    }
                }
            }
            out.push(o);
        }
        out
    }

    /// Graded skew-symmetry `g_n(v_τ) = χ(τ; v) g_n(v)` for every permutation
    /// `τ`, together with `deg g_n(v) = Σ|v_i| + 1 - n`, for
    /// `n ≤ min(max_n, arity bound)`. This is what makes the nondecreasing
    /// tuples of [`ConditionChecker::sweep`] exhaustive.
    pub fn skew_symmetry(&self, cfg: &SweepConfig) -> ConditionOutcome {
        let mut o = ConditionOutcome { name: "graded skew-symmetry and degree of g_n".into(), coverage: Coverage::Exhaustive, tuples: 0, failures: 0, first_failure: None };
        let top = cfg.max_n.min(self.g.arity_bound());
        for n in 1..=top {
            let perms: Vec<Permutation> = all_permutations(n);
            let (coverage, tuples) = self.tuples(n, cfg, 100 + n as u64);
            if coverage == Coverage::Sampled {
                o.coverage = Coverage::Sampled;
            }
            for t in tuples {
                o.tuples += 1;
                let base = self.g.eval(&t);
                let degs = self.degrees(&t);
                let want = degs.iter().sum::<Degree>() + 1 - n as Degree;
                let mut bad: Option<SVec> = None;
                if base.keys().any(|&k| self.target.degrees[k] != want) {
                    bad = Some(base.clone());
                }
                for tau in &perms {
                    if bad.is_some() {
                        break;
                    }
                    let permuted = self.g.eval(&tau.apply(&t));
                    let expect = base.scaled(&koszul_sign(tau, &degs).to_rational());
                    if permuted != expect {
                        bad = Some(permuted.minus(&expect));
                    }
                }
                if let Some(r) = bad {
                    o.failures += 1;
                    if o.first_failure.is_none() {
                        o.first_failure = Some((t, render(&r)));
                    }
                }
            }
        }
        o
    }
}

/// Nondecreasing `n`-tuples from `0..dim`.
pub struct Multisets {
    dim: usize,
    cur: Option<Vec<usize>>,
}

impl Multisets {
    pub fn new(dim: usize, n: usize) -> Self {
        Multisets { dim, cur: if dim == 0 && n > 0 { None } else { Some(vec![0; n]) } }
    }
}

impl Iterator for Multisets {
    type Item = Vec<usize>;
    fn next(&mut self) -> Option<Vec<usize>> {
        let cur = self.cur.as_mut()?;
        let item = cur.clone();
        let n = cur.len();
        let mut k = n;
        loop {
            if k == 0 {
                self.cur = None;
                break;
            }
            k -= 1;
            if cur[k] + 1 < self.dim {
                let v = cur[k] + 1;
                for slot in cur[k..].iter_mut() {
                    *slot = v;
                }
                break;
            }
        }
        Some(item)
    }
}

/// Constants `c_n` for which `Σ c_n g_n(x, …, x)` is closed whenever `x` is a
/// Maurer–Cartan element of degree 1. Obtained by expanding the conditions
/// `C_n` at equal odd arguments: with `A_m = Σ_{S(1,m-1)} χ` and
/// `B_m = Σ_{S(2,m-2)} χ` (all arguments odd), the coefficient of
/// `g_m([x,x], x, …, x)` in `d Σ c_n g_n(x^n)` is
/// `(-1)^m (c_m A_m / 2 - c_{m+1} B_{m+1})`, and `c_1 = 1`.
pub fn derive_pushforward_constants(max_n: usize) -> Vec<Rational> {
    let chi_sum = |p: usize, n: usize| -> Rational {
        let odd = vec![1 as Degree; n];
        shuffles(p, n).iter().map(|s| koszul_sign(s, &odd).to_rational()).sum()
    };
    let mut c = vec![Rational::one()];
    for m in 1..max_n {
        let a = chi_sum(1, m);
        let b = chi_sum(2, m + 1);
        let next = &(&c[m - 1] * &a) / &(&b * &Rational::from_int(2));
        c.push(next);
    }
    c
}

/// Left minus right side of `C_n` for an abelian target, written as sums over
/// all of `S_n` instead of unshuffles:
///
/// ```text
/// d g_n(v) - (-1)^{n-1}/(n-1)! Σ_{σ∈S_n} χ(σ) g_n(δv_σ(1), …)
///          - (-1)^{n-2}/(2(n-2)!) Σ_{σ∈S_n} χ(σ) g_{n-1}([v_σ(1), v_σ(2)], …)
/// ```
///
/// Agrees with [`ConditionChecker::residual`] whenever `g` is graded
/// skew-symmetric, which makes it an independent cross-check.
pub fn abelian_residual<G: Components + ?Sized>(source: &DglaTables, target: &DglaTables, g: &G, v: &[usize]) -> SVec {
    let n = v.len();
    let bound = g.arity_bound();
    let degs: Vec<Degree> = v.iter().map(|&i| source.degrees[i]).collect();
    let perms = all_permutations(n);
    let mut res = SVec::zero();
    if n <= bound {
        res.add_assign(&target.d(&g.eval(v)));
        let c = Sign::pow(n as i64 - 1).apply(&crate::rational::factorial(n as u32 - 1).recip());
        let mut acc = SVec::zero();
        for sigma in &perms {
            let w = sigma.apply(v);
            let s = koszul_sign(sigma, &degs).to_rational();
            acc.add_scaled(&g.eval_first(&source.differential[w[0]], &w[1..]), &s);
        }
        res.add_scaled(&acc, &(-c));
    }
    if n >= 2 && n - 1 <= bound {
        let c = Sign::pow(n as i64).apply(&(&crate::rational::factorial(n as u32 - 2) * &Rational::from_int(2)).recip());
        let mut acc = SVec::zero();
        for sigma in &perms {
            let w = sigma.apply(v);
            let s = koszul_sign(sigma, &degs).to_rational();
            acc.add_scaled(&g.eval_first(&source.bracket_basis(w[0], w[1]), &w[2..]), &s);
        }
        res.add_scaled(&acc, &(-c));
    }
    res
}
