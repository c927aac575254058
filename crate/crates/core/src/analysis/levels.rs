//! Multipermutation level, reductivity and strongly solvable length.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use serde::{Serialize, Serializer};

use crate::congruence::{self, lambda, quotient, Partition};
use crate::error::{Error, Result};
use crate::quasigroup::LeftQuasigroup;

/// Bound on the iterated levels.
pub const LEVEL_CAP: usize = 16;
/// Bound on the number of distinct translation compositions tracked per step.
pub const MAP_SET_CAP: usize = 200_000;
/// Largest size for which strongly solvable length is read off the congruence lattice.
pub const LATTICE_SEARCH_CAP: usize = congruence::CONGRUENCE_CAP;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Level {
    Finite(usize),
    /// No finite level up to the cap; connected nontrivial racks land here.
    Exceeded {
        cap: usize,
    },
}

impl Level {
    pub fn finite(self) -> Option<usize> {
        match self {
            Level::Finite(n) => Some(n),
            Level::Exceeded { .. } => None,
        }
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Level::Finite(n) => write!(f, "{n}"),
            Level::Exceeded { cap } => write!(f, "inf (cap {cap})"),
        }
    }
}

impl Serialize for Level {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Level::Finite(n) => s.serialize_some(n),
            Level::Exceeded { .. } => s.serialize_none(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Levels {
    pub multipermutation: Level,
    pub reductivity: Level,
    pub strongly_solvable: Level,
}

impl Levels {
    pub fn agree(&self) -> bool {
        self.multipermutation == self.reductivity && self.reductivity == self.strongly_solvable
    }
}

fn require_rack(q: &LeftQuasigroup) -> Result<()> {
    if q.is_rack() {
        Ok(())
    } else {
        Err(Error::PreconditionFailed("levels need a rack".into()))
    }
}

pub fn levels(q: &LeftQuasigroup) -> Result<Levels> {
    require_rack(q)?;
    Ok(Levels {
        multipermutation: multipermutation_level(q)?,
        reductivity: reductivity_level(q)?,
        strongly_solvable: strongly_solvable_length(q)?,
    })
}

/// Number of retractions `Q -> Q/λ` needed to reach one element.
pub fn multipermutation_level(q: &LeftQuasigroup) -> Result<Level> {
    require_rack(q)?;
    let mut current = q.clone();
    for k in 0..=LEVEL_CAP {
        if current.size() == 1 {
            return Ok(Level::Finite(k));
        }
        let l = lambda(&current);
        if l.is_identity() {
            break;
        }
        current = quotient(&current, &l)?.structure;
    }
    Ok(Level::Exceeded { cap: LEVEL_CAP })
}

/// Least `n` with every composition `R_{x_n} ... R_{x_1}` constant.
pub fn reductivity_level(q: &LeftQuasigroup) -> Result<Level> {
    require_rack(q)?;
    let n = q.size();
    let mut maps: Vec<Vec<usize>> = vec![(0..n).collect()];
    let mut seen: HashSet<Vec<Vec<usize>>> = HashSet::new();
    for k in 0..=LEVEL_CAP {
        if maps.iter().all(|f| f.iter().all(|&v| v == f[0])) {
            return Ok(Level::Finite(k));
        }
        // the step is a function of the set, so a repeat means it never becomes constant
        if !seen.insert(maps.clone()) {
            break;
        }
        let mut next: HashSet<Vec<usize>> = HashSet::new();
        for f in &maps {
            for x in 0..n {
                next.insert(f.iter().map(|&u| q.mul(u, x)).collect());
                if next.len() > MAP_SET_CAP {
                    return Err(Error::CapExceeded {
                        what: "right translation compositions",
                        cap: MAP_SET_CAP,
                    });
                }
            }
        }
        maps = next.into_iter().collect();
        maps.sort_unstable();
    }
    Ok(Level::Exceeded { cap: LEVEL_CAP })
}

/// `α* = {(x, y) : x*z α y*z for all z}`, the preimage of the Cayley kernel of `Q/α`.
pub fn cayley_lift(q: &LeftQuasigroup, alpha: &Partition) -> Partition {
    let keys: Vec<Vec<usize>> = (0..q.size())
        .map(|x| (0..q.size()).map(|z| alpha.block_of(q.mul(x, z))).collect())
        .collect();
    Partition::from_labels(&keys.iter().collect::<Vec<_>>())
}

/// Shortest chain `0 = α_0 ≤ ... ≤ α_n = 1` with each step strongly abelian.
///
/// A step `α ≤ β` is strongly abelian exactly when `β ≤ α*`. Up to
/// [`LATTICE_SEARCH_CAP`] elements this searches the whole congruence lattice;
/// beyond it the greedy chain `α -> α*` is used, which is shortest because
/// `α -> α*` is monotone.
pub fn strongly_solvable_length(q: &LeftQuasigroup) -> Result<Level> {
    require_rack(q)?;
    if q.size() <= LATTICE_SEARCH_CAP {
        lattice_search(q)
    } else {
        greedy_chain(q)
    }
}

fn lattice_search(q: &LeftQuasigroup) -> Result<Level> {
    let lattice = congruence::all_congruences(q)?;
    let start = lattice
        .iter()
        .position(Partition::is_identity)
        .expect("lattice has a bottom");
    let lifts: Vec<Partition> = lattice.iter().map(|a| cayley_lift(q, a)).collect();
    let mut dist = vec![usize::MAX; lattice.len()];
    dist[start] = 0;
    let mut queue = VecDeque::from([start]);
    while let Some(i) = queue.pop_front() {
        if lattice[i].is_full() {
            return Ok(finite_or_cap(dist[i]));
        }
        for (j, beta) in lattice.iter().enumerate() {
            if dist[j] == usize::MAX && lattice[i].le(beta) && beta.le(&lifts[i]) {
                dist[j] = dist[i] + 1;
                queue.push_back(j);
            }
        }
    }
    Ok(Level::Exceeded { cap: LEVEL_CAP })
}

fn greedy_chain(q: &LeftQuasigroup) -> Result<Level> {
    let mut alpha = Partition::identity(q.size());
    for k in 0..=LEVEL_CAP {
        if alpha.is_full() {
            return Ok(Level::Finite(k));
        }
        let next = cayley_lift(q, &alpha);
        if next == alpha {
            break;
        }
        alpha = next;
    }
    Ok(Level::Exceeded { cap: LEVEL_CAP })
}

fn finite_or_cap(n: usize) -> Level {
    if n <= LEVEL_CAP {
        Level::Finite(n)
    } else {
        Level::Exceeded { cap: LEVEL_CAP }
    }
}
