//! Finite formal linear combinations with rational coefficients.

use std::collections::BTreeMap;
use std::fmt;

use crate::rational::Rational;

/// `Σ c_k · k` with only nonzero coefficients stored.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinComb<K: Ord> {
    terms: BTreeMap<K, Rational>,
}

impl<K: Ord> Default for LinComb<K> {
    fn default() -> Self {
        LinComb { terms: BTreeMap::new() }
    }
}

impl<K: Ord + Clone> LinComb<K> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn term(k: K, c: Rational) -> Self {
        let mut out = Self::zero();
        out.add_term(k, c);
        out
    }

    pub fn basis(k: K) -> Self {
        Self::term(k, Rational::one())
    }

    pub fn from_terms<I: IntoIterator<Item = (K, Rational)>>(it: I) -> Self {
        let mut out = Self::zero();
        for (k, c) in it {
            out.add_term(k, c);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, k: &K) -> Rational {
        self.terms.get(k).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &Rational)> {
        self.terms.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.terms.keys()
    }

    pub fn add_term(&mut self, k: K, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(k) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let s = e.get() + &c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    /// `self += c · other`.
    pub fn add_scaled(&mut self, other: &LinComb<K>, c: &Rational) {
        if c.is_zero() {
            return;
        }
        for (k, v) in &other.terms {
            self.add_term(k.clone(), v * c);
        }
    }

    pub fn add_assign(&mut self, other: &LinComb<K>) {
        self.add_scaled(other, &Rational::one());
    }

    pub fn sub_assign(&mut self, other: &LinComb<K>) {
        self.add_scaled(other, &Rational::from_int(-1));
    }

    pub fn plus(&self, other: &LinComb<K>) -> Self {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn minus(&self, other: &LinComb<K>) -> Self {
        let mut out = self.clone();
        out.sub_assign(other);
        out
    }

    pub fn scaled(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LinComb { terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect() }
    }

    pub fn neg(&self) -> Self {
        self.scaled(&Rational::from_int(-1))
    }

    /// Keep only the terms whose key satisfies `keep`.
    pub fn filter(&self, mut keep: impl FnMut(&K) -> bool) -> Self {
        LinComb { terms: self.terms.iter().filter(|(k, _)| keep(k)).map(|(k, v)| (k.clone(), v.clone())).collect() }
    }

    /// Linear extension of a map on keys.
    pub fn map_linear<L: Ord + Clone>(&self, mut f: impl FnMut(&K) -> LinComb<L>) -> LinComb<L> {
        let mut out = LinComb::zero();
        for (k, c) in &self.terms {
            out.add_scaled(&f(k), c);
        }
        out
    }

    pub fn into_terms(self) -> impl Iterator<Item = (K, Rational)> {
        self.terms.into_iter()
    }
}

impl<K: Ord + fmt::Debug> fmt::Debug for LinComb<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})·{k:?}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cancellation_removes_terms() {
        let mut a = LinComb::term(3usize, Rational::new(1, 2));
        a.add_term(3, Rational::new(-1, 2));
        assert!(a.is_zero());
        a.add_term(1, Rational::zero());
        assert!(a.is_zero());
    }

    #[test]
    fn linear_ops() {
        let a = LinComb::from_terms([(0usize, Rational::one()), (1, Rational::from_int(2))]);
        let b = LinComb::from_terms([(1usize, Rational::from_int(-2)), (2, Rational::one())]);
        let s = a.plus(&b);
        assert_eq!(s.len(), 2);
        assert_eq!(s.coeff(&1), Rational::zero());
        assert_eq!(a.minus(&a), LinComb::zero());
        assert_eq!(a.scaled(&Rational::from_int(3)).coeff(&1), Rational::from_int(6));
        let m = a.map_linear(|_| LinComb::basis(0usize));
        assert_eq!(m.coeff(&0), Rational::from_int(3));
    }
}
