//! Interpretations as dense bitsets over atom ids.
//!
//! An `Interpretation` is the set of atoms considered true. Trailing zero
//! words are always trimmed so that equality, hashing and ordering depend
//! only on the member atoms, never on the id space a set was built in.

use std::fmt;

use crate::ast::Atom;

#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Interpretation {
    words: Vec<u64>,
}

impl Interpretation {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_atoms<I: IntoIterator<Item = Atom>>(atoms: I) -> Self {
        let mut s = Self::new();
        for a in atoms {
            s.insert(a);
        }
        s
    }

    pub fn contains(&self, a: Atom) -> bool {
        let (w, b) = (a.index() / 64, a.index() % 64);
        w < self.words.len() && self.words[w] & (1 << b) != 0
    }

    pub fn insert(&mut self, a: Atom) {
        let (w, b) = (a.index() / 64, a.index() % 64);
        if w >= self.words.len() {
            self.words.resize(w + 1, 0);
        }
        self.words[w] |= 1 << b;
    }

    pub fn remove(&mut self, a: Atom) {
        let (w, b) = (a.index() / 64, a.index() % 64);
        if w < self.words.len() {
            self.words[w] &= !(1 << b);
            self.trim();
        }
    }

    /// Number of atoms in the set.
    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn union(&self, other: &Self) -> Self {
        let (long, short) = if self.words.len() >= other.words.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut words = long.words.clone();
        for (i, w) in short.words.iter().enumerate() {
            words[i] |= w;
        }
        Self { words }
    }

    pub fn intersection(&self, other: &Self) -> Self {
        let n = self.words.len().min(other.words.len());
        let words = (0..n).map(|i| self.words[i] & other.words[i]).collect();
        let mut s = Self { words };
        s.trim();
        s
    }

    pub fn difference(&self, other: &Self) -> Self {
        let words = self
            .words
            .iter()
            .enumerate()
            .map(|(i, w)| w & !other.words.get(i).copied().unwrap_or(0))
            .collect();
        let mut s = Self { words };
        s.trim();
        s
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.words
            .iter()
            .enumerate()
            .all(|(i, w)| w & !other.words.get(i).copied().unwrap_or(0) == 0)
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.intersection(other).is_empty()
    }

    /// Atoms in ascending id order.
    pub fn iter(&self) -> impl Iterator<Item = Atom> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut bits = w;
            std::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let b = bits.trailing_zeros();
                bits &= bits - 1;
                Some(Atom::from_index(i * 64 + b as usize))
            })
        })
    }

    fn trim(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }
}

impl FromIterator<Atom> for Interpretation {
    fn from_iter<I: IntoIterator<Item = Atom>>(iter: I) -> Self {
        Self::from_atoms(iter)
    }
}

impl fmt::Debug for Interpretation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter().map(|a| a.index())).finish()
    }
}
