//! Congruences and the distinguished equivalences of a left quasigroup.

mod partition;

use std::collections::{BTreeSet, HashMap};

pub use partition::Partition;
pub(crate) use partition::UnionFind;

use crate::error::{Error, Result};
use crate::permgroup::{self, PermGroup};
use crate::quasigroup::LeftQuasigroup;

/// Default size bound for congruence lattice enumeration.
pub const CONGRUENCE_CAP: usize = 12;

/// Invariance under both translations and both divisions.
pub fn is_congruence(q: &LeftQuasigroup, p: &Partition) -> bool {
    if p.degree() != q.size() {
        return false;
    }
    let n = q.size();
    let reps = p.representatives();
    (0..n).all(|a| {
        let b = reps[p.block_of(a)];
        a == b
            || (0..n).all(|c| {
                p.related(q.mul(a, c), q.mul(b, c))
                    && p.related(q.mul(c, a), q.mul(c, b))
                    && p.related(q.ldiv(a, c), q.ldiv(b, c))
                    && p.related(q.ldiv(c, a), q.ldiv(c, b))
            })
    })
}

/// The least congruence containing `pairs`.
pub fn congruence_generated(q: &LeftQuasigroup, pairs: &[(usize, usize)]) -> Partition {
    let mut uf = UnionFind::new(q.size());
    close(q, &mut uf, pairs.to_vec())
}

fn close(q: &LeftQuasigroup, uf: &mut UnionFind, mut queue: Vec<(usize, usize)>) -> Partition {
    let n = q.size();
    while let Some((a, b)) = queue.pop() {
        if uf.union(a, b) {
            for c in 0..n {
                queue.push((q.mul(a, c), q.mul(b, c)));
                queue.push((q.mul(c, a), q.mul(c, b)));
                queue.push((q.ldiv(a, c), q.ldiv(b, c)));
                queue.push((q.ldiv(c, a), q.ldiv(c, b)));
            }
        }
    }
    uf.partition()
}

/// Congruence join of two congruences.
pub fn congruence_join(q: &LeftQuasigroup, a: &Partition, b: &Partition) -> Partition {
    let mut pairs = Vec::new();
    for p in [a, b] {
        let reps = p.representatives();
        pairs.extend((0..q.size()).map(|x| (x, reps[p.block_of(x)])));
    }
    congruence_generated(q, &pairs)
}

/// Partition by equal rows, with whether it happens to be a congruence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CayleyKernel {
    pub partition: Partition,
    pub is_congruence: bool,
}

pub fn cayley_kernel(q: &LeftQuasigroup) -> CayleyKernel {
    let rows: Vec<&[usize]> = (0..q.size()).map(|x| q.row(x)).collect();
    let partition = Partition::from_labels(&rows);
    let is_congruence = is_congruence(q, &partition);
    CayleyKernel {
        partition,
        is_congruence,
    }
}

/// `λ_Q` as a bare partition.
pub fn lambda(q: &LeftQuasigroup) -> Partition {
    cayley_kernel(q).partition
}

/// `a σ b` iff `Dis(Q)_a = Dis(Q)_b`.
pub fn sigma(q: &LeftQuasigroup) -> Result<Partition> {
    let d = permgroup::dis(q)?;
    Ok(sigma_from_dis(q.size(), &d))
}

pub(crate) fn sigma_from_dis(n: usize, d: &PermGroup) -> Partition {
    let keys: Vec<Vec<bool>> = (0..n)
        .map(|a| d.elements().iter().map(|h| h.apply(a) == a).collect())
        .collect();
    Partition::from_labels(&keys.iter().collect::<Vec<_>>())
}

/// Least congruence with idempotent quotient, generated by all `(a, a*a)`.
pub fn ip(q: &LeftQuasigroup) -> Partition {
    let pairs: Vec<(usize, usize)> = (0..q.size()).map(|a| (a, q.mul(a, a))).collect();
    congruence_generated(q, &pairs)
}

/// `Sg(a) = {L_a^k(a)}`, sorted.
pub fn sg(q: &LeftQuasigroup, a: usize) -> Vec<usize> {
    let mut out = BTreeSet::new();
    let mut x = a;
    while out.insert(x) {
        x = q.mul(a, x);
    }
    out.into_iter().collect()
}

/// Orbits of a normal subgroup `n` of `LMlt(Q)`.
pub fn orbit_congruence(q: &LeftQuasigroup, n: &PermGroup) -> Result<Partition> {
    check_normal(q, n)?;
    Ok(n.orbits())
}

/// `c_N = {(a, b) : L_a L_b⁻¹ ∈ N}`.
pub fn c_n(q: &LeftQuasigroup, n: &PermGroup) -> Result<Partition> {
    check_normal(q, n)?;
    let ls = q.translations();
    // L_a L_b⁻¹ ∈ N is an equivalence: label by the coset N L_a
    let mut label = vec![usize::MAX; q.size()];
    let mut next = 0;
    for a in 0..q.size() {
        if label[a] != usize::MAX {
            continue;
        }
        let la_inv = ls[a].inverse();
        for b in a..q.size() {
            if label[b] == usize::MAX && n.contains(&ls[b].compose(&la_inv)) {
                label[b] = next;
            }
        }
        next += 1;
    }
    Ok(Partition::from_labels(&label))
}

fn check_normal(q: &LeftQuasigroup, n: &PermGroup) -> Result<()> {
    let lm = permgroup::lmlt(q)?;
    if n.degree() != q.size() || !n.is_normal_in(&lm) {
        return Err(Error::NotNormal);
    }
    Ok(())
}

/// `Q/α` with the canonical projection `x -> [x]`.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub structure: LeftQuasigroup,
    pub projection: Vec<usize>,
}

pub fn quotient(q: &LeftQuasigroup, alpha: &Partition) -> Result<Quotient> {
    if !is_congruence(q, alpha) {
        return Err(Error::NotACongruence);
    }
    let reps = alpha.representatives();
    let structure =
        LeftQuasigroup::from_fn(reps.len(), |i, j| alpha.block_of(q.mul(reps[i], reps[j])))?;
    Ok(Quotient {
        structure,
        projection: alpha.labels().to_vec(),
    })
}

/// The whole congruence lattice, sorted from finest to coarsest.
pub fn all_congruences(q: &LeftQuasigroup) -> Result<Vec<Partition>> {
    all_congruences_capped(q, CONGRUENCE_CAP)
}

pub fn all_congruences_capped(q: &LeftQuasigroup, cap: usize) -> Result<Vec<Partition>> {
    let n = q.size();
    if n > cap {
        return Err(Error::CapExceeded {
            what: "size for congruence enumeration",
            cap,
        });
    }
    let mut found: HashMap<Partition, ()> = HashMap::new();
    found.insert(Partition::identity(n), ());
    let mut principal = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            let c = congruence_generated(q, &[(a, b)]);
            if !found.contains_key(&c) {
                found.insert(c.clone(), ());
                principal.push(c);
            }
        }
    }
    let mut all: Vec<Partition> = found.keys().cloned().collect();
    let mut i = 0;
    while i < all.len() {
        for p in &principal {
            if p.le(&all[i]) {
                continue;
            }
            let j = congruence_join(q, &all[i], p);
            if !found.contains_key(&j) {
                found.insert(j.clone(), ());
                all.push(j);
            }
        }
        i += 1;
    }
    all.sort_by(|a, b| {
        b.num_blocks()
            .cmp(&a.num_blocks())
            .then_with(|| a.labels().cmp(b.labels()))
    });
    Ok(all)
}
