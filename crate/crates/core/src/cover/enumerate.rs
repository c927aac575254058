//! Enumeration of abelian cocycles as solutions of a linear system over `Z_m`.

use std::collections::BTreeMap;
use std::ops::ControlFlow;

use crate::error::Result;
use crate::quasigroup::{AbelianGroup, LeftQuasigroup};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CocycleKind {
    Rack,
    /// Rack cocycles with zero diagonal.
    Quandle,
}

struct System {
    modulus: i64,
    constraints: Vec<Vec<(usize, i64)>>,
    by_var: Vec<Vec<usize>>,
    value: Vec<Option<i64>>,
    trail: Vec<usize>,
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn inverse_mod(a: i64, m: i64) -> i64 {
    (1..m).find(|&b| (a * b).rem_euclid(m) == 1).unwrap_or(0)
}

impl System {
    /// `θ[x][y*z] + θ[y][z] - θ[x*y][x*z] - θ[x][z] = 0` for all triples.
    fn new(q: &LeftQuasigroup, modulus: i64) -> Self {
        let n = q.size();
        let var = |a: usize, b: usize| a * n + b;
        let mut seen = std::collections::HashSet::new();
        let mut constraints = Vec::new();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let mut coef: BTreeMap<usize, i64> = BTreeMap::new();
                    for (v, c) in [
                        (var(x, q.mul(y, z)), 1),
                        (var(y, z), 1),
                        (var(q.mul(x, y), q.mul(x, z)), -1),
                        (var(x, z), -1),
                    ] {
                        *coef.entry(v).or_default() += c;
                    }
                    let row: Vec<(usize, i64)> = coef
                        .into_iter()
                        .map(|(v, c)| (v, c.rem_euclid(modulus)))
                        .filter(|&(_, c)| c != 0)
                        .collect();
                    if !row.is_empty() && seen.insert(row.clone()) {
                        constraints.push(row);
                    }
                }
            }
        }
        let mut by_var = vec![Vec::new(); n * n];
        for (i, row) in constraints.iter().enumerate() {
            for &(v, _) in row {
                by_var[v].push(i);
            }
        }
        System {
            modulus,
            constraints,
            by_var,
            value: vec![None; n * n],
            trail: Vec::new(),
        }
    }

    /// Assigns and propagates forced values; `false` on contradiction.
    fn set(&mut self, v: usize, a: i64) -> bool {
        let mut queue = vec![(v, a)];
        while let Some((v, a)) = queue.pop() {
            match self.value[v] {
                Some(b) if b != a => return false,
                Some(_) => continue,
                None => {
                    self.value[v] = Some(a);
                    self.trail.push(v);
                }
            }
            for &ci in &self.by_var[v] {
                let mut sum = 0;
                let mut open = Vec::new();
                for &(w, c) in &self.constraints[ci] {
                    match self.value[w] {
                        Some(b) => sum += c * b,
                        None => open.push((w, c)),
                    }
                }
                match open.as_slice() {
                    [] if sum.rem_euclid(self.modulus) != 0 => return false,
                    [(w, c)] if gcd(*c, self.modulus) == 1 => {
                        let forced =
                            (-sum * inverse_mod(*c, self.modulus)).rem_euclid(self.modulus);
                        queue.push((*w, forced));
                    }
                    _ => {}
                }
            }
        }
        true
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let v = self.trail.pop().expect("non-empty");
            self.value[v] = None;
        }
    }

    fn search(&mut self, visit: &mut dyn FnMut(&[i64]) -> ControlFlow<()>) -> ControlFlow<()> {
        let Some(v) = self.value.iter().position(Option::is_none) else {
            let sol: Vec<i64> = self.value.iter().map(|x| x.expect("complete")).collect();
            return visit(&sol);
        };
        for a in 0..self.modulus {
            let mark = self.trail.len();
            if self.set(v, a) {
                self.search(visit)?;
            }
            self.undo(mark);
        }
        ControlFlow::Continue(())
    }
}

/// Visits the `Z_m`-valued cocycles in lexicographic order of their row-major values.
fn for_each_cyclic(
    q: &LeftQuasigroup,
    modulus: u64,
    kind: CocycleKind,
    visit: &mut dyn FnMut(&[i64]) -> ControlFlow<()>,
) -> ControlFlow<()> {
    let n = q.size();
    let mut sys = System::new(q, modulus as i64);
    if kind == CocycleKind::Quandle {
        for x in 0..n {
            if !sys.set(x * n + x, 0) {
                return ControlFlow::Continue(());
            }
        }
    }
    sys.search(visit)
}

/// Calls `visit` with each abelian cocycle over `Z_{m1} x ... x Z_{mk}` as element rows.
///
/// For a single modulus the order is lexicographic in the row-major values.
pub fn for_each_abelian_cocycle(
    q: &LeftQuasigroup,
    moduli: &[u64],
    kind: CocycleKind,
    mut visit: impl FnMut(Vec<Vec<usize>>) -> ControlFlow<()>,
) -> Result<()> {
    let group = AbelianGroup::new(moduli)?;
    let n = q.size();
    // the condition is componentwise: solve each factor, then take products
    let mut per_factor: Vec<Vec<Vec<i64>>> = Vec::new();
    if moduli.len() > 1 {
        for &m in moduli {
            let mut sols = Vec::new();
            let _ = for_each_cyclic(q, m, kind, &mut |s| {
                sols.push(s.to_vec());
                ControlFlow::Continue(())
            });
            per_factor.push(sols);
        }
    }
    let to_rows = |coords: &[&[i64]]| -> Vec<Vec<usize>> {
        (0..n)
            .map(|x| {
                (0..n)
                    .map(|y| {
                        let v: Vec<i64> = coords.iter().map(|c| c[x * n + y]).collect();
                        group.encode_signed(&v)
                    })
                    .collect()
            })
            .collect()
    };
    if moduli.len() == 1 {
        let _ = for_each_cyclic(q, moduli[0], kind, &mut |s| visit(to_rows(&[s])));
        return Ok(());
    }
    let mut idx = vec![0usize; moduli.len()];
    if per_factor.iter().any(Vec::is_empty) {
        return Ok(());
    }
    loop {
        let coords: Vec<&[i64]> = idx
            .iter()
            .zip(&per_factor)
            .map(|(&i, sols)| sols[i].as_slice())
            .collect();
        if visit(to_rows(&coords)).is_break() {
            return Ok(());
        }
        // odometer, last factor fastest
        let mut k = moduli.len();
        loop {
            if k == 0 {
                return Ok(());
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < per_factor[k].len() {
                break;
            }
            idx[k] = 0;
        }
    }
}

/// All `Z_m` cocycles as element rows, lexicographically ordered.
pub fn abelian_cocycles(
    q: &LeftQuasigroup,
    modulus: u64,
    kind: CocycleKind,
) -> Vec<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    for_each_abelian_cocycle(q, &[modulus], kind, |rows| {
        out.push(rows);
        ControlFlow::Continue(())
    })
    .expect("cyclic group within cap");
    out
}
