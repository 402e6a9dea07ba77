//! Maurer–Cartan elements with coefficients in `m ⊂ ℚ[t_1..t_k]/m^{N+1}`,
//! order-by-order extension and obstructions, and pushforward along an
//! L∞ morphism with abelian target.

mod cohomology;
mod trials;

pub use cohomology::GradedCohomology;
pub use trials::{gauge_first_order, jet_curved_instance, jet_instance, pattern_label, random_first_order, run_trial, ObstructionRecord, SignPattern, TrialConfig, TrialOutcome};

use std::collections::BTreeMap;
use std::fmt;

use crate::error::Error;
use crate::linfty::{Components, DglaTables, SVec};
use crate::rational::Rational;

/// Exponent vector of a monomial in the maximal ideal.
pub type Monomial = Vec<u32>;

/// `ℚ[t_1..t_k] / m^{N+1}`, presented by the monomials of `m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArtinRing {
    vars: usize,
    order: u32,
}

impl ArtinRing {
    pub fn new(vars: usize, order: u32) -> Result<Self, Error> {
        if vars == 0 || order == 0 {
            return Err(Error::Input("need at least one variable and order ≥ 1".into()));
        }
        Ok(ArtinRing { vars, order })
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn variable(&self, i: usize) -> Monomial {
        let mut m = vec![0; self.vars];
        m[i] = 1;
        m
    }

    /// `None` when the product lies in `m^{N+1}`.
    pub fn mul(&self, a: &Monomial, b: &Monomial) -> Option<Monomial> {
        let m: Monomial = a.iter().zip(b).map(|(x, y)| x + y).collect();
        (degree(&m) <= self.order).then_some(m)
    }

    /// Monomials of total degree `d`, in lexicographically decreasing order.
    pub fn monomials_of_degree(&self, d: u32) -> Vec<Monomial> {
        fn rec(vars: usize, d: u32, prefix: &mut Monomial, out: &mut Vec<Monomial>) {
            if prefix.len() + 1 == vars {
                prefix.push(d);
                out.push(prefix.clone());
                prefix.pop();
                return;
            }
            for e in (0..=d).rev() {
                prefix.push(e);
                rec(vars, d - e, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        rec(self.vars, d, &mut Vec::new(), &mut out);
        out
    }

    pub fn render(&self, m: &Monomial) -> String {
        let name = |i: usize| if self.vars == 1 { "t".to_string() } else { format!("t{}", i + 1) };
        let parts: Vec<String> = m
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| if e == 1 { name(i) } else { format!("{}^{e}", name(i)) })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("·")
        }
    }
}

pub fn degree(m: &Monomial) -> u32 {
    m.iter().sum()
}

/// An element of `V ⊗ m`, stored by monomial.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct MTensor {
    terms: BTreeMap<Monomial, SVec>,
}

impl MTensor {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn single(m: Monomial, v: SVec) -> Self {
        let mut out = Self::zero();
        out.add(&m, &v);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn component(&self, m: &Monomial) -> SVec {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Monomial, &SVec)> {
        self.terms.iter()
    }

    pub fn add(&mut self, m: &Monomial, v: &SVec) {
        self.add_scaled(m, v, &Rational::one());
    }

    pub fn add_scaled(&mut self, m: &Monomial, v: &SVec, c: &Rational) {
        let e = self.terms.entry(m.clone()).or_default();
        e.add_scaled(v, c);
        if e.is_zero() {
            self.terms.remove(m);
        }
    }

    /// Components of total degree `d`.
    pub fn at_order(&self, d: u32) -> impl Iterator<Item = (&Monomial, &SVec)> {
        self.terms.iter().filter(move |(m, _)| degree(m) == d)
    }

    /// Lowest order with a nonzero component.
    pub fn lowest_order(&self) -> Option<u32> {
        self.terms.keys().map(degree).min()
    }

    /// Drops the components of order above `d`.
    pub fn truncated(&self, d: u32) -> Self {
        MTensor { terms: self.terms.iter().filter(|(m, _)| degree(m) <= d).map(|(m, v)| (m.clone(), v.clone())).collect() }
    }

    pub fn map(&self, f: impl Fn(&SVec) -> SVec) -> Self {
        let mut out = Self::zero();
        for (m, v) in &self.terms {
            out.add(m, &f(v));
        }
        out
    }
}

impl fmt::Debug for MTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

/// `d x + ½[x, x]`.
pub fn mc_residual(l: &DglaTables, ring: &ArtinRing, x: &MTensor) -> MTensor {
    let mut r = x.map(|v| l.d(v));
    let half = Rational::new(1, 2);
    for (a, va) in x.iter() {
        for (b, vb) in x.iter() {
            if let Some(m) = ring.mul(a, b) {
                r.add_scaled(&m, &l.bracket(va, vb), &half);
            }
        }
    }
    r
}

/// Result of [`extend_order`].
#[derive(Debug, Clone)]
pub enum Extension {
    /// Solves the equation one order higher.
    Extended(MTensor),
    Obstructed(Obstruction),
}

/// The order-`n+1` residual, one component per monomial of that degree.
#[derive(Debug, Clone)]
pub struct Obstruction {
    pub order: u32,
    pub components: Vec<ObstructionComponent>,
}

#[derive(Debug, Clone)]
pub struct ObstructionComponent {
    pub monomial: Monomial,
    /// The cocycle, a degree-2 element of the source.
    pub cocycle: SVec,
    /// Coordinates in the chosen basis of `H²`; nonzero means obstructed.
    pub class: Vec<Rational>,
}

impl ObstructionComponent {
    pub fn is_nonzero(&self) -> bool {
        self.class.iter().any(|c| !c.is_zero())
    }
}

/// Takes `x` solving the equation modulo `m^{n+1}` to a solution modulo
/// `m^{n+2}`, or returns the obstruction in `H² ⊗ m^{n+1}/m^{n+2}`. `h2` must be
/// the cohomology of `l` in degree 2.
pub fn extend_order(l: &DglaTables, h2: &GradedCohomology, ring: &ArtinRing, x: &MTensor, n: u32) -> Result<Extension, Error> {
    if n + 1 > ring.order() {
        return Err(Error::Precondition(format!("order {} exceeds the ring order {}", n + 1, ring.order())));
    }
    let x = x.truncated(n);
    let r = mc_residual(l, ring, &x);
    if let Some(k) = r.lowest_order() {
        if k <= n {
            return Err(Error::Precondition(format!("residual is nonzero at order {k}")));
        }
    }
    let mut components = Vec::new();
    let mut next = x.clone();
    let mut obstructed = false;
    for m in ring.monomials_of_degree(n + 1) {
        let w = r.component(&m);
        if !l.d(&w).is_zero() {
            return Err(Error::Precondition(format!("order-{} residual at {} is not a cocycle", n + 1, ring.render(&m))));
        }
        let class = h2.class_of(&w).ok_or_else(|| Error::Precondition("residual outside the cycle space".into()))?;
        let comp = ObstructionComponent { monomial: m.clone(), cocycle: w.clone(), class };
        if comp.is_nonzero() {
            obstructed = true;
        } else if !w.is_zero() {
            let y = h2.primitive(&w).expect("boundary has a primitive");
            next.add_scaled(&m, &y, &Rational::from_int(-1));
        }
        components.push(comp);
    }
    Ok(if obstructed { Extension::Obstructed(Obstruction { order: n + 1, components }) } else { Extension::Extended(next) })
}

/// `Σ_n c_n g_n(x, …, x)` with `c_n = constants[n-1]`.
pub fn pushforward<G: Components + ?Sized>(g: &G, ring: &ArtinRing, x: &MTensor, constants: &[Rational]) -> MTensor {
    let mut out = MTensor::zero();
    let comps: Vec<(&Monomial, &SVec)> = x.iter().collect();
    if comps.is_empty() {
        return out;
    }
    let top = g.arity_bound().min(constants.len());
    for n in 1..=top {
        let c = &constants[n - 1];
        if c.is_zero() {
            continue;
        }
        let mut idx = vec![0usize; n];
        'tuples: loop {
            let mut mono = Some(comps[idx[0]].0.clone());
            for &i in &idx[1..] {
                mono = mono.and_then(|m| ring.mul(&m, comps[i].0));
            }
            if let Some(m) = mono {
                let args: Vec<&SVec> = idx.iter().map(|&i| comps[i].1).collect();
                out.add_scaled(&m, &g.eval_multi(&args), c);
            }
            let mut k = n;
            loop {
                if k == 0 {
                    break 'tuples;
                }
                k -= 1;
                idx[k] += 1;
                if idx[k] < comps.len() {
                    break;
                }
                idx[k] = 0;
            }
        }
    }
    out
}

#[cfg(test)]
mod tests;
