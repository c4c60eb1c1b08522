//! Exact integer linear algebra: sparse chains and Smith normal form.
//!
//! Everything here is generic over [`IntRing`], so the same code runs on
//! machine integers in tests and on `BigInt` in production.

mod snf;

pub use snf::{invariant_factors, smith_normal_form, Matrix, Snf};

use num_integer::Integer;
use num_traits::Signed;
use std::collections::BTreeMap;
use std::fmt::Debug;

/// A Euclidean ring of integers (`i64`, `BigInt`, ...).
pub trait IntRing: Clone + Eq + Ord + Debug + Integer + Signed {}

impl<T: Clone + Eq + Ord + Debug + Integer + Signed> IntRing for T {}

/// Sparse linear combination with no stored zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Chain<K: Ord, R> {
    terms: BTreeMap<K, R>,
}

impl<K: Ord, R> Default for Chain<K, R> {
    fn default() -> Self {
        Chain { terms: BTreeMap::new() }
    }
}

impl<K: Ord + Clone, R: IntRing> Chain<K, R> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_term(k: K, c: R) -> Self {
        let mut ch = Self::new();
        ch.add_term(k, c);
        ch
    }

    pub fn add_term(&mut self, k: K, c: R) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(k) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let v = e.get().clone() + c;
                if v.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
        }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, other: &Self, c: &R) {
        if c.is_zero() {
            return;
        }
        for (k, v) in &other.terms {
            self.add_term(k.clone(), v.clone() * c.clone());
        }
    }

    pub fn add_chain(&mut self, other: &Self) {
        for (k, v) in &other.terms {
            self.add_term(k.clone(), v.clone());
        }
    }

    pub fn scaled(&self, c: &R) -> Self {
        if c.is_zero() {
            return Self::new();
        }
        Chain { terms: self.terms.iter().map(|(k, v)| (k.clone(), v.clone() * c.clone())).collect() }
    }

    pub fn neg(&self) -> Self {
        Chain { terms: self.terms.iter().map(|(k, v)| (k.clone(), -v.clone())).collect() }
    }

    pub fn get(&self, k: &K) -> Option<&R> {
        self.terms.get(k)
    }

    pub fn coeff(&self, k: &K) -> R {
        self.terms.get(k).cloned().unwrap_or_else(R::zero)
    }

    pub fn remove(&mut self, k: &K) -> Option<R> {
        self.terms.remove(k)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &R)> {
        self.terms.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.terms.keys()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn map_keys<K2: Ord + Clone>(&self, mut f: impl FnMut(&K) -> K2) -> Chain<K2, R> {
        let mut out = Chain::new();
        for (k, v) in &self.terms {
            out.add_term(f(k), v.clone());
        }
        out
    }

    /// Keeps the terms whose key passes `keep`.
    pub fn filtered(&self, mut keep: impl FnMut(&K) -> bool) -> Self {
        Chain {
            terms: self.terms.iter().filter(|(k, _)| keep(k)).map(|(k, v)| (k.clone(), v.clone())).collect(),
        }
    }
}

impl<K: Ord + Clone, R: IntRing> FromIterator<(K, R)> for Chain<K, R> {
    fn from_iter<I: IntoIterator<Item = (K, R)>>(iter: I) -> Self {
        let mut ch = Chain::new();
        for (k, c) in iter {
            ch.add_term(k, c);
        }
        ch
    }
}

impl<K: Ord, R> IntoIterator for Chain<K, R> {
    type Item = (K, R);
    type IntoIter = std::collections::btree_map::IntoIter<K, R>;
    fn into_iter(self) -> Self::IntoIter {
        self.terms.into_iter()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cancelling_terms_leave_no_zeros() {
        let mut c: Chain<u32, i64> = Chain::from_term(3, 2);
        c.add_term(3, -2);
        assert!(c.is_zero());
        c.add_term(1, 5);
        let d = c.scaled(&-1);
        c.add_chain(&d);
        assert!(c.is_zero());
    }
}
