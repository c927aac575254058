//! The adjoint group of a rack and simple connectedness.

mod todd_coxeter;

use serde::Serialize;

pub use todd_coxeter::{todd_coxeter, Enumeration, Word, COSET_CAP};

use crate::error::{Error, Result};
use crate::group::CosetQuandleSpec;
use crate::permgroup::{self, orbits_of};
use crate::quasigroup::LeftQuasigroup;

/// Upper bound on subgroups listed by [`same_dis_covers`].
pub const SUBGROUP_CAP: usize = 10_000;

/// Generators `e_0..e_{n-1}`; words use column letters (`2x` and `2x + 1` for the inverse).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub generators: usize,
    pub relators: Vec<Word>,
}

impl Presentation {
    /// Sum of exponents of a word under `e_x -> 1`.
    pub fn exponent_sum(w: &[usize]) -> i64 {
        w.iter().map(|&c| if c % 2 == 0 { 1 } else { -1 }).sum()
    }
}

/// Relators `e_x e_y e_x⁻¹ e_{x*y}⁻¹` for all `x, y`.
pub fn adjoint_presentation(q: &LeftQuasigroup) -> Presentation {
    let n = q.size();
    let mut relators = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            let w = vec![2 * x, 2 * y, 2 * x + 1, 2 * q.mul(x, y) + 1];
            if !relators.contains(&w) {
                relators.push(w);
            }
        }
    }
    Presentation {
        generators: n,
        relators,
    }
}

/// `|Adj(Q)⁰|` as the index of `<e_0>` in `Adj(Q)`.
pub fn adj0_order(q: &LeftQuasigroup) -> Enumeration {
    adj0_order_capped(q, COSET_CAP)
}

pub fn adj0_order_capped(q: &LeftQuasigroup, cap: usize) -> Enumeration {
    todd_coxeter(&adjoint_presentation(q), &[vec![0]], cap)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Yes,
    No,
    Indeterminate,
}

impl Verdict {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Verdict::Yes
        } else {
            Verdict::No
        }
    }
}

/// Everything the simple-connectedness test looks at.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SimplyConnected {
    pub adj0_order: Option<usize>,
    pub dis_order: usize,
    pub size: usize,
    pub verdict: Verdict,
}

/// `|Adj(Q)⁰| = |Q|` for a connected `Q`.
pub fn is_simply_connected(q: &LeftQuasigroup) -> Result<Verdict> {
    Ok(simply_connected_report(q, COSET_CAP)?.verdict)
}

pub fn simply_connected_report(q: &LeftQuasigroup, cap: usize) -> Result<SimplyConnected> {
    if !orbits_of(q.size(), &q.translations()).is_full() {
        return Err(Error::NotConnected);
    }
    let dis_order = permgroup::dis(q)?.order();
    let (adj0, verdict) = match adj0_order_capped(q, cap) {
        Enumeration::Index(k) => (Some(k), Verdict::from_bool(k == q.size())),
        Enumeration::Indeterminate => (None, Verdict::Indeterminate),
    };
    Ok(SimplyConnected {
        adj0_order: adj0,
        dis_order,
        size: q.size(),
        verdict,
    })
}

/// `Q(Dis(Q), H, L̂_a)` for every subgroup `H ≤ Dis(Q)_a`, smallest first.
pub fn same_dis_covers(q: &LeftQuasigroup, a: usize) -> Result<Vec<CosetQuandleSpec>> {
    if !orbits_of(q.size(), &q.translations()).is_full() {
        return Err(Error::NotConnected);
    }
    let stab = permgroup::dis(q)?.stabilizer(a);
    stab.subgroups(SUBGROUP_CAP)?
        .iter()
        .map(|h| CosetQuandleSpec::from_displacement(q, a, h))
        .collect()
}
