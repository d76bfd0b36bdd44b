//! Finitely supported linear combinations over `QLaurent`.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use crate::qcoeff::QLaurent;

/// Vector-space operations shared by scalars, Lie elements and module states.
pub trait Linear: Clone + PartialEq {
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn add_assign_scaled(&mut self, other: &Self, c: &QLaurent);

    fn scaled(&self, c: &QLaurent) -> Self {
        let mut out = Self::zero();
        out.add_assign_scaled(self, c);
        out
    }
}

impl Linear for QLaurent {
    fn zero() -> Self {
        QLaurent::zero()
    }
    fn is_zero(&self) -> bool {
        QLaurent::is_zero(self)
    }
    fn add_assign_scaled(&mut self, other: &Self, c: &QLaurent) {
        *self += &(other * c);
    }
}

/// `Σ c_k · k` with no zero coefficient stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LinComb<K: Ord> {
    terms: BTreeMap<K, QLaurent>,
}

impl<K: Ord> Default for LinComb<K> {
    fn default() -> Self {
        Self {
            terms: BTreeMap::new(),
        }
    }
}

impl<K: Ord + Clone> LinComb<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn basis(key: K) -> Self {
        Self::term(key, QLaurent::one())
    }

    pub fn term(key: K, c: QLaurent) -> Self {
        let mut out = Self::new();
        out.add_term(key, c);
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

    pub fn iter(&self) -> impl Iterator<Item = (&K, &QLaurent)> {
        self.terms.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.terms.keys()
    }

    pub fn coeff(&self, key: &K) -> QLaurent {
        self.terms.get(key).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, key: K, c: QLaurent) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Self, c: &QLaurent) {
        if c.is_zero() {
            return;
        }
        for (k, v) in &other.terms {
            self.add_term(k.clone(), v * c);
        }
    }

    pub fn scale(&self, c: &QLaurent) -> Self {
        let mut out = Self::new();
        out.add_scaled(self, c);
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&QLaurent::from_int(-1))
    }

    pub fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &QLaurent::one());
        out
    }

    pub fn minus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &QLaurent::from_int(-1));
        out
    }

    /// Linear extension of a key-level map.
    pub fn map_keys<L: Ord + Clone>(&self, mut f: impl FnMut(&K) -> LinComb<L>) -> LinComb<L> {
        let mut out = LinComb::new();
        for (k, c) in &self.terms {
            out.add_scaled(&f(k), c);
        }
        out
    }

    /// Linear extension of a key-level functional.
    pub fn eval_linear(&self, mut f: impl FnMut(&K) -> QLaurent) -> QLaurent {
        let mut acc = QLaurent::zero();
        for (k, c) in &self.terms {
            let v = f(k);
            if !v.is_zero() {
                acc += &(c * &v);
            }
        }
        acc
    }

    pub fn into_terms(self) -> BTreeMap<K, QLaurent> {
        self.terms
    }
}

impl<K: Ord + Clone> FromIterator<(K, QLaurent)> for LinComb<K> {
    fn from_iter<I: IntoIterator<Item = (K, QLaurent)>>(iter: I) -> Self {
        let mut out = Self::new();
        for (k, c) in iter {
            out.add_term(k, c);
        }
        out
    }
}

impl<K: Ord + Clone> Linear for LinComb<K> {
    fn zero() -> Self {
        Self::new()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add_assign_scaled(&mut self, other: &Self, c: &QLaurent) {
        self.add_scaled(other, c);
    }
}

/// Writes `coef * KEY` terms joined by ` + `, eliding unit coefficients; multi-term coefficients are
/// parenthesized so the output parses back to the same value.
pub(crate) fn write_terms<K: fmt::Display>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (K, QLaurent)>,
) -> fmt::Result {
    let mut any = false;
    for (k, c) in terms {
        if any {
            write!(f, " + ")?;
        }
        any = true;
        if c.is_one() {
            write!(f, "{k}")?;
        } else if c.terms().len() == 1 {
            write!(f, "{c} * {k}")?;
        } else {
            write!(f, "({c}) * {k}")?;
        }
    }
    if !any {
        write!(f, "0")?;
    }
    Ok(())
}

impl<K: Ord + Clone + fmt::Display> fmt::Display for LinComb<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.terms.iter().map(|(k, c)| (k, c.clone())))
    }
}

impl<K: Ord + Clone + fmt::Display> fmt::Debug for LinComb<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
