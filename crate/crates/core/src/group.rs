//! Explicit finite groups by multiplication table, and coset quandles.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::permgroup::{self, PermGroup};
use crate::quasigroup::LeftQuasigroup;

/// Largest group accepted as an explicit table.
pub const GROUP_TABLE_CAP: usize = 512;

/// A finite group on `{0..n-1}` given by its full table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    mul: Vec<usize>,
    inv: Vec<usize>,
    identity: usize,
}

impl FiniteGroup {
    pub fn from_table(rows: &[Vec<usize>]) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::BadShape("empty group".into()));
        }
        if n > GROUP_TABLE_CAP {
            return Err(Error::CapExceeded {
                what: "group table order",
                cap: GROUP_TABLE_CAP,
            });
        }
        if rows
            .iter()
            .any(|r| r.len() != n || r.iter().any(|&v| v >= n))
        {
            return Err(Error::BadShape(format!("group table must be {n}x{n}")));
        }
        let mul: Vec<usize> = rows.concat();
        let at = |a: usize, b: usize| mul[a * n + b];
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| at(e, x) == x && at(x, e) == x))
            .ok_or_else(|| Error::NotAGroup("no identity".into()))?;
        let inv = (0..n)
            .map(|a| {
                (0..n)
                    .find(|&b| at(a, b) == identity && at(b, a) == identity)
                    .ok_or_else(|| Error::NotAGroup(format!("{a} has no inverse")))
            })
            .collect::<Result<Vec<_>>>()?;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if at(at(a, b), c) != at(a, at(b, c)) {
                        return Err(Error::NotAGroup(format!("({a}{b}){c} != {a}({b}{c})")));
                    }
                }
            }
        }
        Ok(FiniteGroup {
            order: n,
            mul,
            inv,
            identity,
        })
    }

    /// The table of an enumerated permutation group, elements in its order.
    pub fn from_perm_group(g: &PermGroup) -> Result<Self> {
        let n = g.order();
        if n > GROUP_TABLE_CAP {
            return Err(Error::CapExceeded {
                what: "group table order",
                cap: GROUP_TABLE_CAP,
            });
        }
        let els = g.elements();
        let mut mul = Vec::with_capacity(n * n);
        for a in els {
            for b in els {
                mul.push(g.index_of(&a.compose(b)).expect("closed"));
            }
        }
        let inv = els
            .iter()
            .map(|a| g.index_of(&a.inverse()).expect("closed"))
            .collect();
        Ok(FiniteGroup {
            order: n,
            mul,
            inv,
            identity: 0,
        })
    }

    /// `Z_n` written additively.
    pub fn cyclic(n: usize) -> Self {
        let rows: Vec<Vec<usize>> = (0..n)
            .map(|a| (0..n).map(|b| (a + b) % n).collect())
            .collect();
        Self::from_table(&rows).expect("cyclic group")
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    /// Sorted element set of `<gens>`.
    pub fn subgroup_generated(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = BTreeSet::from([self.identity]);
        let mut frontier = vec![self.identity];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if seen.insert(y) {
                    frontier.push(y);
                }
            }
        }
        seen.into_iter().collect()
    }

    pub fn is_subgroup(&self, set: &[usize]) -> bool {
        let members: BTreeSet<usize> = set.iter().copied().collect();
        members.contains(&self.identity)
            && set.iter().all(|&a| {
                members.contains(&self.inv(a))
                    && set.iter().all(|&b| members.contains(&self.mul(a, b)))
            })
    }

    pub fn is_automorphism(&self, f: &[usize]) -> bool {
        let n = self.order;
        f.len() == n
            && f.iter().copied().collect::<BTreeSet<_>>().len() == n
            && f.iter().all(|&x| x < n)
            && (0..n).all(|a| (0..n).all(|b| f[self.mul(a, b)] == self.mul(f[a], f[b])))
    }

    /// `[G, f] = <x f(x)⁻¹>`.
    pub fn displacement_subgroup(&self, f: &[usize]) -> Vec<usize> {
        let gens: Vec<usize> = (0..self.order)
            .map(|x| self.mul(x, self.inv(f[x])))
            .collect();
        self.subgroup_generated(&gens)
    }
}

/// Data `(G, f, H)` for the coset quandle `aH * bH = a f(a⁻¹ b) H`.
#[derive(Clone, Debug)]
pub struct CosetQuandleSpec {
    pub group: FiniteGroup,
    /// `aut[x] = f(x)`.
    pub aut: Vec<usize>,
    pub subgroup: Vec<usize>,
}

impl CosetQuandleSpec {
    pub fn validate(&self) -> Result<()> {
        if !self.group.is_automorphism(&self.aut) {
            return Err(Error::NotAutomorphism(
                "map is not a group automorphism".into(),
            ));
        }
        if !self.group.is_subgroup(&self.subgroup) {
            return Err(Error::NotAGroup("subgroup is not closed".into()));
        }
        if self.subgroup.iter().any(|&h| self.aut[h] != h) {
            return Err(Error::SubgroupNotFixed);
        }
        Ok(())
    }

    /// `(Dis(Q), H, conjugation by L_a)` with `H` given as permutations in `Dis(Q)`.
    pub fn from_displacement(q: &LeftQuasigroup, a: usize, h: &PermGroup) -> Result<Self> {
        let d = permgroup::dis(q)?;
        let group = FiniteGroup::from_perm_group(&d)?;
        let la = q.translation(a);
        let aut = d
            .elements()
            .iter()
            .map(|g| d.index_of(&la.conjugate(g)).ok_or(Error::NotNormal))
            .collect::<Result<Vec<_>>>()?;
        let mut subgroup = h
            .elements()
            .iter()
            .map(|g| d.index_of(g).ok_or(Error::NotNormal))
            .collect::<Result<Vec<_>>>()?;
        subgroup.sort_unstable();
        let spec = CosetQuandleSpec {
            group,
            aut,
            subgroup,
        };
        spec.validate()?;
        Ok(spec)
    }

    /// `Q(Dis(Q), Dis(Q)_a, L̂_a)`.
    pub fn stabilizer_spec(q: &LeftQuasigroup, a: usize) -> Result<Self> {
        let stab = permgroup::dis(q)?.stabilizer(a);
        Self::from_displacement(q, a, &stab)
    }
}

/// A coset quandle with the coset index of each group element.
#[derive(Clone, Debug)]
pub struct CosetQuandle {
    pub quandle: LeftQuasigroup,
    /// `coset_of[g]` is the index of `gH`.
    pub coset_of: Vec<usize>,
}

pub fn coset_quandle(spec: &CosetQuandleSpec) -> Result<CosetQuandle> {
    spec.validate()?;
    let g = &spec.group;
    let n = g.order();
    let mut coset_of = vec![usize::MAX; n];
    let mut reps = Vec::new();
    for a in 0..n {
        if coset_of[a] != usize::MAX {
            continue;
        }
        for &h in &spec.subgroup {
            coset_of[g.mul(a, h)] = reps.len();
        }
        reps.push(a);
    }
    let quandle = LeftQuasigroup::from_fn(reps.len(), |i, j| {
        let (a, b) = (reps[i], reps[j]);
        coset_of[g.mul(a, spec.aut[g.mul(g.inv(a), b)])]
    })?;
    Ok(CosetQuandle { quandle, coset_of })
}

/// For `H1 ≤ H2 ≤ Fix(f)`, the covering `aH1 -> aH2` between the two coset quandles.
#[derive(Clone, Debug)]
pub struct NestedCosetCover {
    pub cover: CosetQuandle,
    pub base: CosetQuandle,
    pub projection: Vec<usize>,
}

pub fn nested_coset_cover(
    group: &FiniteGroup,
    aut: &[usize],
    inner: &[usize],
    outer: &[usize],
) -> Result<NestedCosetCover> {
    let outer_set: BTreeSet<usize> = outer.iter().copied().collect();
    if !inner.iter().all(|h| outer_set.contains(h)) {
        return Err(Error::PreconditionFailed(
            "inner subgroup is not contained in outer".into(),
        ));
    }
    let spec = |h: &[usize]| CosetQuandleSpec {
        group: group.clone(),
        aut: aut.to_vec(),
        subgroup: h.to_vec(),
    };
    let cover = coset_quandle(&spec(inner))?;
    let base = coset_quandle(&spec(outer))?;
    let mut projection = vec![0; cover.quandle.size()];
    for a in 0..group.order() {
        projection[cover.coset_of[a]] = base.coset_of[a];
    }
    Ok(NestedCosetCover {
        cover,
        base,
        projection,
    })
}
