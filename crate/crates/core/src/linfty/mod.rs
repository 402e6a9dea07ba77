//! L∞ morphisms into DG-Lie algebras, presented on finite bases, and the
//! explicit lift of the semiregularity map.

mod conditions;
mod lift;
mod semireg;

pub use conditions::{abelian_residual, derive_pushforward_constants, ConditionChecker, ConditionOutcome, Coverage, SweepConfig};
pub use lift::{AtiyahLift, SourceDgla};
pub use semireg::{chern_cocycle, chern_residuals, check_tau_chain_map, tau, tau_constant, ChainMapOutcome};

use crate::graded::Degree;
use crate::lincomb::LinComb;

/// Sparse vector over a finite basis.
pub type SVec = LinComb<usize>;

/// A DG-Lie algebra on a finite basis: degrees, differential and bracket
/// tabulated on basis vectors. `bracket = None` means abelian.
#[derive(Debug, Clone)]
pub struct DglaTables {
    pub degrees: Vec<Degree>,
    pub differential: Vec<SVec>,
    pub bracket: Option<Vec<SVec>>,
}

impl DglaTables {
    pub fn abelian(degrees: Vec<Degree>, differential: Vec<SVec>) -> Self {
        DglaTables { degrees, differential, bracket: None }
    }

    pub fn dim(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_abelian(&self) -> bool {
        self.bracket.is_none()
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> SVec {
        match &self.bracket {
            Some(b) => b[i * self.dim() + j].clone(),
            None => SVec::zero(),
        }
    }

    pub fn d(&self, v: &SVec) -> SVec {
        v.map_linear(|&i| self.differential[i].clone())
    }

    pub fn bracket(&self, v: &SVec, w: &SVec) -> SVec {
        let mut out = SVec::zero();
        if self.bracket.is_none() {
            return out;
        }
        for (i, a) in v.iter() {
            for (j, b) in w.iter() {
                out.add_scaled(&self.bracket_basis(*i, *j), &(a * b));
            }
        }
        out
    }

    /// Degree of a homogeneous vector.
    pub fn degree_of(&self, v: &SVec) -> Option<Degree> {
        let mut ds = v.keys().map(|&i| self.degrees[i]);
        let first = ds.next()?;
        ds.all(|d| d == first).then_some(first)
    }
}

/// Components `g_n` of an L∞ morphism evaluated on basis tuples of the
/// source, with values in the target basis.
pub trait Components {
    /// `g_n = 0` for every `n` above this bound.
    fn arity_bound(&self) -> usize;

    fn eval(&self, args: &[usize]) -> SVec;

    /// `g_n(v, b_{rest…})` with a sparse first argument.
    fn eval_first(&self, first: &SVec, rest: &[usize]) -> SVec {
        let mut out = SVec::zero();
        let mut args = Vec::with_capacity(rest.len() + 1);
        for (k, c) in first.iter() {
            args.clear();
            args.push(*k);
            args.extend_from_slice(rest);
            out.add_scaled(&self.eval(&args), c);
        }
        out
    }

    /// Fully multilinear evaluation on sparse arguments.
    fn eval_multi(&self, args: &[&SVec]) -> SVec {
        fn rec<G: Components + ?Sized>(g: &G, args: &[&SVec], chosen: &mut Vec<usize>, coeff: crate::Rational, out: &mut SVec) {
            if chosen.len() == args.len() {
                out.add_scaled(&g.eval(chosen), &coeff);
                return;
            }
            for (k, c) in args[chosen.len()].iter() {
                chosen.push(*k);
                rec(g, args, chosen, &coeff * c, out);
                chosen.pop();
            }
        }
        let mut out = SVec::zero();
        if args.len() > self.arity_bound() {
            return out;
        }
        rec(self, args, &mut Vec::new(), crate::Rational::one(), &mut out);
        out
    }
}
