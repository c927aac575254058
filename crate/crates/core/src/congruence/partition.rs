use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A set partition of `{0..n-1}` in canonical first-occurrence form, so two
/// partitions are equal as sets exactly when their label arrays are equal.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition {
    block_id: Vec<usize>,
}

impl Partition {
    /// Canonicalizes an arbitrary labelling.
    pub fn from_labels<T: Eq + std::hash::Hash + Copy>(labels: &[T]) -> Self {
        let mut map = std::collections::HashMap::new();
        let block_id = labels
            .iter()
            .map(|l| {
                let next = map.len();
                *map.entry(*l).or_insert(next)
            })
            .collect();
        Partition { block_id }
    }

    pub fn from_blocks(n: usize, blocks: &[Vec<usize>]) -> Result<Self> {
        let mut label = vec![usize::MAX; n];
        for (i, b) in blocks.iter().enumerate() {
            for &x in b {
                if x >= n || label[x] != usize::MAX {
                    return Err(Error::BadShape(format!(
                        "blocks are not a partition of 0..{n}"
                    )));
                }
                label[x] = i;
            }
        }
        if label.contains(&usize::MAX) {
            return Err(Error::BadShape(format!("blocks do not cover 0..{n}")));
        }
        Ok(Self::from_labels(&label))
    }

    /// The identity (finest) partition `0_Q`.
    pub fn identity(n: usize) -> Self {
        Partition {
            block_id: (0..n).collect(),
        }
    }

    /// The full (coarsest) partition `1_Q`.
    pub fn full(n: usize) -> Self {
        Partition {
            block_id: vec![0; n],
        }
    }

    pub fn degree(&self) -> usize {
        self.block_id.len()
    }

    pub fn labels(&self) -> &[usize] {
        &self.block_id
    }

    #[inline]
    pub fn block_of(&self, x: usize) -> usize {
        self.block_id[x]
    }

    #[inline]
    pub fn related(&self, a: usize, b: usize) -> bool {
        self.block_id[a] == self.block_id[b]
    }

    pub fn num_blocks(&self) -> usize {
        self.block_id.iter().max().map_or(0, |m| m + 1)
    }

    /// Blocks in canonical order, each sorted.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut blocks = vec![Vec::new(); self.num_blocks()];
        for (x, &b) in self.block_id.iter().enumerate() {
            blocks[b].push(x);
        }
        blocks
    }

    pub fn block(&self, x: usize) -> Vec<usize> {
        let b = self.block_id[x];
        (0..self.degree())
            .filter(|&y| self.block_id[y] == b)
            .collect()
    }

    pub fn is_identity(&self) -> bool {
        self.num_blocks() == self.degree()
    }

    pub fn is_full(&self) -> bool {
        self.num_blocks() <= 1
    }

    /// Refinement order: `self ≤ other`.
    pub fn le(&self, other: &Partition) -> bool {
        let reps = self.representatives();
        self.block_id
            .iter()
            .enumerate()
            .all(|(x, &b)| other.related(x, reps[b]))
    }

    /// One element per block (the least).
    pub fn representatives(&self) -> Vec<usize> {
        let mut reps = vec![usize::MAX; self.num_blocks()];
        for (x, &b) in self.block_id.iter().enumerate() {
            if reps[b] == usize::MAX {
                reps[b] = x;
            }
        }
        reps
    }

    pub fn meet(&self, other: &Partition) -> Partition {
        let pairs: Vec<(usize, usize)> = self
            .block_id
            .iter()
            .zip(&other.block_id)
            .map(|(&a, &b)| (a, b))
            .collect();
        Partition::from_labels(&pairs)
    }

    /// Join as equivalence relations (not congruence join).
    pub fn join(&self, other: &Partition) -> Partition {
        let mut uf = UnionFind::new(self.degree());
        for p in [self, other] {
            let reps = p.representatives();
            for (x, &b) in p.block_id.iter().enumerate() {
                uf.union(x, reps[b]);
            }
        }
        uf.partition()
    }

    /// Whether all blocks have the same size.
    pub fn is_uniform(&self) -> bool {
        let blocks = self.blocks();
        blocks.windows(2).all(|w| w[0].len() == w[1].len())
    }

    /// `self / finer`, a partition of the block indices of `finer`.
    pub fn over(&self, finer: &Partition) -> Result<Partition> {
        if !finer.le(self) {
            return Err(Error::PreconditionFailed(
                "quotient partition needs a finer partition".into(),
            ));
        }
        let reps = finer.representatives();
        let labels: Vec<usize> = reps.iter().map(|&r| self.block_of(r)).collect();
        Ok(Partition::from_labels(&labels))
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;

    fn try_from(v: Vec<usize>) -> Result<Self> {
        Ok(Partition::from_labels(&v))
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Vec<usize> {
        p.block_id
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Partition {
    /// Block list, e.g. `{0}{1 2}`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.blocks() {
            write!(f, "{{")?;
            for (i, x) in b.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "}}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns `true` when two distinct classes were merged.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }

    pub fn partition(&mut self) -> Partition {
        let labels: Vec<usize> = (0..self.parent.len()).map(|x| self.find(x)).collect();
        Partition::from_labels(&labels)
    }
}
