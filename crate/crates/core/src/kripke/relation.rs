//! Binary relations on `0..n` stored as bit matrices, one row per world.

use fixedbitset::FixedBitSet;

/// A set of worlds.
pub type WorldSet = FixedBitSet;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Relation {
    rows: Vec<FixedBitSet>,
}

impl Relation {
    pub fn empty(n: usize) -> Self {
        Relation {
            rows: vec![FixedBitSet::with_capacity(n); n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut r = Relation::empty(n);
        for w in 0..n {
            r.insert(w, w);
        }
        r
    }

    /// Builds a relation from `(from, to)` pairs.
    ///
    /// Returns the first out-of-range pair as the error.
    pub fn from_pairs(
        n: usize,
        pairs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, (usize, usize)> {
        let mut r = Relation::empty(n);
        for (a, b) in pairs {
            if a >= n || b >= n {
                return Err((a, b));
            }
            r.insert(a, b);
        }
        Ok(r)
    }

    /// Number of worlds the relation ranges over.
    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn contains(&self, from: usize, to: usize) -> bool {
        self.rows[from].contains(to)
    }

    pub fn insert(&mut self, from: usize, to: usize) {
        self.rows[from].insert(to);
    }

    pub fn successors(&self, from: usize) -> &FixedBitSet {
        &self.rows[from]
    }

    /// Pairs in lexicographic order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(a, row)| row.ones().map(move |b| (a, b)))
    }

    pub fn len(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones(..)).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.iter().all(|r| r.is_clear())
    }

    pub fn union_with(&mut self, other: &Relation) {
        debug_assert_eq!(self.size(), other.size());
        for (a, b) in self.rows.iter_mut().zip(&other.rows) {
            a.union_with(b);
        }
    }

    pub fn is_subset(&self, other: &Relation) -> bool {
        self.rows.iter().zip(&other.rows).all(|(a, b)| a.is_subset(b))
    }

    /// Pairs of `self` that are not in `other`.
    pub fn difference(&self, other: &Relation) -> Vec<(usize, usize)> {
        self.pairs().filter(|&(a, b)| !other.contains(a, b)).collect()
    }

    /// Smallest reflexive and transitive relation containing `self` (Warshall).
    pub fn rtc(&self) -> Relation {
        let n = self.size();
        let mut rows = self.rows.clone();
        for (w, row) in rows.iter_mut().enumerate() {
            row.insert(w);
        }
        for k in 0..n {
            let via = rows[k].clone();
            for row in rows.iter_mut() {
                if row.contains(k) {
                    row.union_with(&via);
                }
            }
        }
        Relation { rows }
    }

    /// The modal box of the relation: worlds all of whose successors lie in `set`.
    pub fn box_of(&self, set: &WorldSet) -> WorldSet {
        let mut out = FixedBitSet::with_capacity(self.size());
        for (w, row) in self.rows.iter().enumerate() {
            if row.is_subset(set) {
                out.insert(w);
            }
        }
        out
    }
}
