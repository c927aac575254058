//! Isomorphism and automorphism search by backtracking with propagation.

use crate::error::{Error, Result};
use crate::permgroup::{PermGroup, Permutation};
use crate::quasigroup::LeftQuasigroup;

/// Default size bound for isomorphism searches.
pub const ISO_CAP: usize = 12;

/// Per-element data preserved by every isomorphism.
fn invariants(q: &LeftQuasigroup) -> Vec<(Vec<usize>, bool, usize)> {
    (0..q.size())
        .map(|x| {
            let right_fixed = (0..q.size()).filter(|&y| q.mul(y, x) == x).count();
            (q.translation(x).cycle_type(), q.mul(x, x) == x, right_fixed)
        })
        .collect()
}

struct Search<'a> {
    q: &'a LeftQuasigroup,
    r: &'a LeftQuasigroup,
    inv_q: Vec<(Vec<usize>, bool, usize)>,
    inv_r: Vec<(Vec<usize>, bool, usize)>,
    map: Vec<usize>,
    used: Vec<bool>,
    trail: Vec<usize>,
}

const NONE: usize = usize::MAX;

impl Search<'_> {
    fn assign(&mut self, x: usize, y: usize) -> bool {
        if self.map[x] != NONE {
            return self.map[x] == y;
        }
        if self.used[y] || self.inv_q[x] != self.inv_r[y] {
            return false;
        }
        self.map[x] = y;
        self.used[y] = true;
        self.trail.push(x);
        true
    }

    /// Assigns `x -> y` and closes under forced products and divisions.
    fn push(&mut self, x: usize, y: usize) -> bool {
        let mark = self.trail.len();
        if !self.assign(x, y) {
            return false;
        }
        let mut i = mark;
        while i < self.trail.len() {
            let a = self.trail[i];
            let fa = self.map[a];
            let mut j = 0;
            while j < self.trail.len() {
                let b = self.trail[j];
                let fb = self.map[b];
                let forced = [
                    (self.q.mul(a, b), self.r.mul(fa, fb)),
                    (self.q.mul(b, a), self.r.mul(fb, fa)),
                    (self.q.ldiv(a, b), self.r.ldiv(fa, fb)),
                    (self.q.ldiv(b, a), self.r.ldiv(fb, fa)),
                ];
                for (u, v) in forced {
                    if !self.assign(u, v) {
                        return false;
                    }
                }
                j += 1;
            }
            i += 1;
        }
        true
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let x = self.trail.pop().expect("non-empty");
            self.used[self.map[x]] = false;
            self.map[x] = NONE;
        }
    }

    fn run(&mut self, limit: usize, out: &mut Vec<Vec<usize>>) {
        if out.len() >= limit {
            return;
        }
        let Some(x) = self.map.iter().position(|&v| v == NONE) else {
            // propagation covers every pair of assigned points, so the map is a homomorphism
            out.push(self.map.clone());
            return;
        };
        for y in 0..self.r.size() {
            let mark = self.trail.len();
            if self.push(x, y) {
                self.run(limit, out);
            }
            self.undo(mark);
            if out.len() >= limit {
                return;
            }
        }
    }
}

fn search(
    q: &LeftQuasigroup,
    r: &LeftQuasigroup,
    cap: usize,
    limit: usize,
    pin: Option<(usize, usize)>,
) -> Result<Vec<Vec<usize>>> {
    if q.size() > cap {
        return Err(Error::CapExceeded {
            what: "isomorphism search size",
            cap,
        });
    }
    if q.size() != r.size() {
        return Ok(Vec::new());
    }
    let (inv_q, inv_r) = (invariants(q), invariants(r));
    let mut sorted_q = inv_q.clone();
    let mut sorted_r = inv_r.clone();
    sorted_q.sort();
    sorted_r.sort();
    if sorted_q != sorted_r {
        return Ok(Vec::new());
    }
    let n = q.size();
    let mut s = Search {
        q,
        r,
        inv_q,
        inv_r,
        map: vec![NONE; n],
        used: vec![false; n],
        trail: Vec::new(),
    };
    let mut out = Vec::new();
    if let Some((x, y)) = pin {
        if !s.push(x, y) {
            return Ok(out);
        }
    }
    s.run(limit, &mut out);
    Ok(out)
}

/// All isomorphisms `Q -> R` as image arrays, in lexicographic order.
pub fn isomorphisms(q: &LeftQuasigroup, r: &LeftQuasigroup) -> Result<Vec<Vec<usize>>> {
    isomorphisms_capped(q, r, ISO_CAP)
}

pub fn isomorphisms_capped(
    q: &LeftQuasigroup,
    r: &LeftQuasigroup,
    cap: usize,
) -> Result<Vec<Vec<usize>>> {
    search(q, r, cap, usize::MAX, None)
}

pub fn find_isomorphism(
    q: &LeftQuasigroup,
    r: &LeftQuasigroup,
    cap: usize,
) -> Result<Option<Vec<usize>>> {
    Ok(search(q, r, cap, 1, None)?.pop())
}

pub fn are_isomorphic(q: &LeftQuasigroup, r: &LeftQuasigroup) -> Result<bool> {
    Ok(find_isomorphism(q, r, ISO_CAP)?.is_some())
}

/// `Aut(Q)` as a permutation group.
pub fn automorphisms(q: &LeftQuasigroup) -> Result<PermGroup> {
    automorphisms_capped(q, ISO_CAP)
}

pub fn automorphisms_capped(q: &LeftQuasigroup, cap: usize) -> Result<PermGroup> {
    let maps = search(q, q, cap, usize::MAX, None)?;
    let elements = maps
        .into_iter()
        .map(Permutation::from_images_unchecked)
        .collect();
    Ok(PermGroup::from_closed_elements(q.size(), elements))
}

/// Some automorphism sending `a` to `b`.
pub fn automorphism_mapping(
    q: &LeftQuasigroup,
    a: usize,
    b: usize,
    cap: usize,
) -> Result<Option<Vec<usize>>> {
    Ok(search(q, q, cap, 1, Some((a, b)))?.pop())
}
