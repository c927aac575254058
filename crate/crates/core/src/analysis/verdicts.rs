//! Strongly abelian, central and normal congruences.

use std::collections::HashSet;

use crate::congruence::{is_congruence, lambda, sigma_from_dis, Partition};
use crate::error::{Error, Result};
use crate::permgroup::{self, orbits_of, GroupKind, Permutation};
use crate::quasigroup::LeftQuasigroup;

/// Largest structure the brute-force oracles accept.
pub const ORACLE_SIZE_CAP: usize = 6;
/// Bound on distinct term functions the strongly abelian oracle builds.
pub const TERM_FUNCTION_CAP: usize = 100_000;

fn require_congruence(q: &LeftQuasigroup, alpha: &Partition) -> Result<()> {
    if alpha.degree() != q.size() {
        return Err(Error::BadShape(format!(
            "partition of {} points on a structure of size {}",
            alpha.degree(),
            q.size()
        )));
    }
    if !is_congruence(q, alpha) {
        return Err(Error::NotACongruence);
    }
    Ok(())
}

/// `α ≤ λ_Q`.
pub fn is_strongly_abelian(q: &LeftQuasigroup, alpha: &Partition) -> Result<bool> {
    require_congruence(q, alpha)?;
    Ok(alpha.le(&lambda(q)))
}

/// The term condition checked directly on binary term functions `t(x, y)` of depth at most `depth`:
/// `t(u, a) = t(v, b)` implies `t(u, c) = t(v, c)` whenever `u α v` and `a α b α c`.
pub fn strongly_abelian_oracle(
    q: &LeftQuasigroup,
    alpha: &Partition,
    depth: usize,
) -> Result<bool> {
    require_congruence(q, alpha)?;
    let n = q.size();
    if n > ORACLE_SIZE_CAP {
        return Err(Error::CapExceeded {
            what: "oracle structure size",
            cap: ORACLE_SIZE_CAP,
        });
    }
    // a term function is its table over (x, y), index x * n + y
    let x: Vec<usize> = (0..n * n).map(|i| i / n).collect();
    let y: Vec<usize> = (0..n * n).map(|i| i % n).collect();
    let mut seen: HashSet<Vec<usize>> = HashSet::from([x.clone(), y.clone()]);
    let mut functions = vec![x, y];
    for _ in 0..depth {
        let current = functions.clone();
        for s in &current {
            for t in &current {
                for op in [LeftQuasigroup::mul, LeftQuasigroup::ldiv] {
                    let f: Vec<usize> = (0..n * n).map(|i| op(q, s[i], t[i])).collect();
                    if seen.insert(f.clone()) {
                        if functions.len() >= TERM_FUNCTION_CAP {
                            return Err(Error::CapExceeded {
                                what: "term functions",
                                cap: TERM_FUNCTION_CAP,
                            });
                        }
                        functions.push(f);
                    }
                }
            }
        }
    }
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (0..n).map(move |v| (u, v)))
        .filter(|&(u, v)| alpha.related(u, v))
        .collect();
    for t in &functions {
        for &(u, v) in &pairs {
            for &(a, b) in &pairs {
                if t[u * n + a] != t[v * n + b] {
                    continue;
                }
                let fails = (0..n)
                    .filter(|&c| alpha.related(a, c))
                    .any(|c| t[u * n + c] != t[v * n + c]);
                if fails {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// `Dis_α ≤ Z(Dis(Q))` and `α ≤ σ_Q`.
pub fn is_central(q: &LeftQuasigroup, alpha: &Partition) -> Result<bool> {
    require_congruence(q, alpha)?;
    let dis = permgroup::dis(q)?;
    if !alpha.le(&sigma_from_dis(q.size(), &dis)) {
        return Ok(false);
    }
    let dis_alpha = permgroup::dis_rel(q, alpha)?;
    Ok(dis_alpha
        .generators()
        .iter()
        .all(|h| dis.generators().iter().all(|g| h.commutes_with(g))))
}

/// `Dis(Q)_a ⊴ Dis(Q)_{[a]}` for every `a`, for connected quandles and `α ≤ λ_Q`.
pub fn central_cover_criterion(q: &LeftQuasigroup, alpha: &Partition) -> Result<bool> {
    require_congruence(q, alpha)?;
    if !q.is_quandle() || !orbits_of(q.size(), &q.translations()).is_full() {
        return Err(Error::PreconditionFailed(
            "needs a connected quandle".into(),
        ));
    }
    if !alpha.le(&lambda(q)) {
        return Err(Error::PreconditionFailed(
            "congruence is not below λ".into(),
        ));
    }
    let dis = permgroup::dis(q)?;
    for a in 0..q.size() {
        let point = dis.stabilizer(a);
        let block = dis.filter(|h| alpha.related(a, h.apply(a)));
        let normal = block.generators().iter().all(|g| {
            let g_inv = g.inverse();
            point
                .generators()
                .iter()
                .all(|h| point.contains(&g.compose(h).compose(&g_inv)))
        });
        if !normal {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Strongly abelian and central, for quandles.
pub fn is_normal_extension(q: &LeftQuasigroup, alpha: &Partition) -> Result<bool> {
    if !q.is_quandle() {
        return Err(Error::PreconditionFailed("needs a quandle".into()));
    }
    Ok(is_strongly_abelian(q, alpha)? && is_central(q, alpha)?)
}

/// Checks `L_{a_1}^{±1}...L_{a_k}^{±1}(a) = a => L_{b_1}^{±1}...L_{b_k}^{±1}(b) = b`
/// over all words with `k ≤ word_len` and `a_i α b_i`, `a α b`.
pub fn normal_extension_oracle(
    q: &LeftQuasigroup,
    alpha: &Partition,
    word_len: usize,
) -> Result<bool> {
    require_congruence(q, alpha)?;
    if !q.is_quandle() {
        return Err(Error::PreconditionFailed("needs a quandle".into()));
    }
    let n = q.size();
    if n > 2 * ORACLE_SIZE_CAP {
        return Err(Error::CapExceeded {
            what: "oracle structure size",
            cap: 2 * ORACLE_SIZE_CAP,
        });
    }
    let ls = q.translations();
    let steps: Vec<(Permutation, Permutation)> = (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .filter(|&(a, b)| alpha.related(a, b))
        .flat_map(|(a, b)| {
            [
                (ls[a].clone(), ls[b].clone()),
                (ls[a].inverse(), ls[b].inverse()),
            ]
        })
        .collect();
    let id = Permutation::identity(n);
    let mut seen: HashSet<(Permutation, Permutation)> = HashSet::from([(id.clone(), id.clone())]);
    let mut frontier = vec![(id.clone(), id)];
    for _ in 0..word_len {
        let mut next = Vec::new();
        for (g, h) in &frontier {
            for (s, t) in &steps {
                let pair = (g.compose(s), h.compose(t));
                if seen.insert(pair.clone()) {
                    next.push(pair);
                }
            }
        }
        frontier = next;
    }
    for (g, h) in &seen {
        for a in 0..n {
            if g.apply(a) != a {
                continue;
            }
            if (0..n).any(|b| alpha.related(a, b) && h.apply(b) != b) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `LMlt^α` and the orbit congruence of it, as used by the covering corollary.
pub fn kernel_orbits(q: &LeftQuasigroup, alpha: &Partition) -> Result<Partition> {
    Ok(permgroup::kernel_subgroup(q, alpha, GroupKind::Lmlt)?.orbits())
}
