//! Binary relations over dense state ids, stored as one bitset row per state.

use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Relation {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl Relation {
    pub fn empty(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        Relation { n, words, bits: vec![0; n * words] }
    }

    pub fn identity(n: usize) -> Self {
        let mut r = Relation::empty(n);
        for s in 0..n {
            r.insert(s, s);
        }
        r
    }

    pub fn from_pairs(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut r = Relation::empty(n);
        for (a, b) in pairs {
            r.insert(a, b);
        }
        r
    }

    pub fn size(&self) -> usize {
        self.n
    }

    fn row(&self, s: usize) -> &[u64] {
        &self.bits[s * self.words..(s + 1) * self.words]
    }

    fn row_mut(&mut self, s: usize) -> &mut [u64] {
        &mut self.bits[s * self.words..(s + 1) * self.words]
    }

    /// Panics if either state is out of range.
    pub fn insert(&mut self, from: usize, to: usize) -> bool {
        assert!(from < self.n && to < self.n, "pair ({from},{to}) outside 0..{}", self.n);
        let w = &mut self.row_mut(from)[to / 64];
        let fresh = *w & (1 << (to % 64)) == 0;
        *w |= 1 << (to % 64);
        fresh
    }

    pub fn contains(&self, from: usize, to: usize) -> bool {
        from < self.n && to < self.n && self.row(from)[to / 64] & (1 << (to % 64)) != 0
    }

    pub fn successors(&self, from: usize) -> impl Iterator<Item = usize> + '_ {
        let row = self.row(from);
        (0..self.n).filter(move |&t| row[t / 64] & (1 << (t % 64)) != 0)
    }

    pub fn has_successor(&self, from: usize) -> bool {
        self.row(from).iter().any(|w| *w != 0)
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |s| self.successors(s).map(move |t| (s, t)))
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|w| *w == 0)
    }

    pub fn is_subset(&self, other: &Relation) -> bool {
        self.n == other.n && self.bits.iter().zip(&other.bits).all(|(a, b)| a & !b == 0)
    }

    pub fn union(&self, other: &Relation) -> Relation {
        self.zip_with(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &Relation) -> Relation {
        self.zip_with(other, |a, b| a & b)
    }

    fn zip_with(&self, other: &Relation, f: impl Fn(u64, u64) -> u64) -> Relation {
        assert_eq!(self.n, other.n, "relations over different state sets");
        Relation {
            n: self.n,
            words: self.words,
            bits: self.bits.iter().zip(&other.bits).map(|(a, b)| f(*a, *b)).collect(),
        }
    }

    /// `self ; other`: pairs (a, c) with (a, b) in self and (b, c) in other.
    pub fn compose(&self, other: &Relation) -> Relation {
        assert_eq!(self.n, other.n, "relations over different state sets");
        let mut out = Relation::empty(self.n);
        for a in 0..self.n {
            for b in self.successors(a) {
                let (src, dst) = (b * self.words, a * self.words);
                for w in 0..self.words {
                    out.bits[dst + w] |= other.bits[src + w];
                }
            }
        }
        out
    }

    /// Reflexive transitive closure, by a reachability worklist from every state.
    pub fn star(&self) -> Relation {
        let mut out = Relation::empty(self.n);
        let mut stack = Vec::new();
        for s in 0..self.n {
            out.insert(s, s);
            stack.push(s);
            while let Some(u) = stack.pop() {
                for v in self.successors(u) {
                    if out.insert(s, v) {
                        stack.push(v);
                    }
                }
            }
        }
        out
    }
}

impl fmt::Debug for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.pairs()).finish()
    }
}
