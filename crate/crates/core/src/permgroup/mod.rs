//! Finitely generated permutation groups, stored fully enumerated.

mod perm;
mod quandle;

use std::collections::{HashMap, HashSet};

pub use perm::Permutation;
pub use quandle::{
    block_stabilizer, dis, dis_rel, induced_action, kernel_subgroup, lmlt, GroupKind, InducedAction,
};

use crate::congruence::Partition;
use crate::error::{Error, Result};

pub const DEFAULT_GROUP_CAP: usize = 1_000_000;

#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    /// `elements[0]` is always the identity.
    elements: Vec<Permutation>,
    index: HashMap<Permutation, usize>,
}

impl PermGroup {
    pub fn trivial(degree: usize) -> Self {
        let id = Permutation::identity(degree);
        let mut index = HashMap::new();
        index.insert(id.clone(), 0);
        PermGroup {
            degree,
            generators: Vec::new(),
            elements: vec![id],
            index,
        }
    }

    /// Breadth-first closure of `generators` under composition.
    pub fn closure(degree: usize, generators: &[Permutation], cap: usize) -> Result<Self> {
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return Err(Error::BadShape(format!(
                "generator of degree {} in a group of degree {degree}",
                g.degree()
            )));
        }
        let mut group = PermGroup::trivial(degree);
        let gens: Vec<Permutation> = generators
            .iter()
            .filter(|g| !g.is_identity())
            .cloned()
            .collect();
        group.grow(&gens, cap)?;
        group.generators = dedup(gens);
        Ok(group)
    }

    pub fn generate(degree: usize, generators: &[Permutation]) -> Result<Self> {
        Self::closure(degree, generators, DEFAULT_GROUP_CAP)
    }

    /// Extends the element list to the closure of itself together with `new_gens`.
    fn grow(&mut self, new_gens: &[Permutation], cap: usize) -> Result<()> {
        let mut all_gens = self.generators.clone();
        all_gens.extend(new_gens.iter().cloned());
        let mut i = 0;
        while i < self.elements.len() {
            for g in &all_gens {
                let p = g.compose(&self.elements[i]);
                self.insert(p, cap)?;
            }
            i += 1;
        }
        Ok(())
    }

    fn insert(&mut self, p: Permutation, cap: usize) -> Result<()> {
        if !self.index.contains_key(&p) {
            if self.elements.len() >= cap {
                return Err(Error::CapExceeded {
                    what: "group order",
                    cap,
                });
            }
            self.index.insert(p.clone(), self.elements.len());
            self.elements.push(p);
        }
        Ok(())
    }

    /// Builds a group from an element set already known to be closed,
    /// picking a small generating set greedily.
    pub(crate) fn from_closed_elements(degree: usize, elements: Vec<Permutation>) -> Self {
        let target: HashSet<&Permutation> = elements.iter().collect();
        let mut group = PermGroup::trivial(degree);
        for e in &elements {
            if group.contains(e) {
                continue;
            }
            group
                .grow(std::slice::from_ref(e), usize::MAX)
                .expect("uncapped");
            group.generators.push(e.clone());
            if group.order() == target.len() {
                break;
            }
        }
        debug_assert_eq!(group.order(), target.len());
        group
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn identity(&self) -> &Permutation {
        &self.elements[0]
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.index.contains_key(p)
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    /// Subgroup of elements satisfying `keep`; the caller guarantees closure.
    pub fn filter(&self, keep: impl Fn(&Permutation) -> bool) -> PermGroup {
        let els: Vec<Permutation> = self.elements.iter().filter(|p| keep(p)).cloned().collect();
        PermGroup::from_closed_elements(self.degree, els)
    }

    pub fn same_elements(&self, other: &PermGroup) -> bool {
        self.degree == other.degree
            && self.order() == other.order()
            && other.elements.iter().all(|p| self.contains(p))
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.degree == other.degree && self.generators.iter().all(|g| other.contains(g))
    }

    pub fn orbit(&self, a: usize) -> Vec<usize> {
        let mut seen = vec![false; self.degree];
        seen[a] = true;
        let mut orbit = vec![a];
        let mut i = 0;
        while i < orbit.len() {
            let x = orbit[i];
            for g in &self.generators {
                let y = g.apply(x);
                if !seen[y] {
                    seen[y] = true;
                    orbit.push(y);
                }
            }
            i += 1;
        }
        orbit.sort_unstable();
        orbit
    }

    pub fn orbits(&self) -> Partition {
        orbits_of(self.degree, &self.generators)
    }

    pub fn stabilizer(&self, a: usize) -> PermGroup {
        self.filter(|p| p.apply(a) == a)
    }

    /// Setwise stabilizer of `set`.
    pub fn set_stabilizer(&self, set: &[usize]) -> PermGroup {
        let mut member = vec![false; self.degree];
        for &x in set {
            member[x] = true;
        }
        self.filter(|p| set.iter().all(|&x| member[p.apply(x)]))
    }

    pub fn is_transitive(&self) -> bool {
        self.degree == 0 || self.orbit(0).len() == self.degree
    }

    pub fn is_semiregular(&self) -> bool {
        self.elements
            .iter()
            .skip(1)
            .all(|p| p.fixed_points().next().is_none())
    }

    pub fn is_regular(&self) -> bool {
        self.is_transitive() && self.is_semiregular()
    }

    pub fn is_abelian(&self) -> bool {
        let g = &self.generators;
        (0..g.len()).all(|i| (i + 1..g.len()).all(|j| g[i].commutes_with(&g[j])))
    }

    /// Elements commuting with every permutation in `with`.
    pub fn centralizer_of(&self, with: &[Permutation]) -> PermGroup {
        self.filter(|p| with.iter().all(|q| p.commutes_with(q)))
    }

    pub fn center(&self) -> PermGroup {
        self.centralizer_of(&self.generators)
    }

    pub fn is_normal_in(&self, g: &PermGroup) -> bool {
        self.is_subgroup_of(g)
            && g.generators.iter().all(|s| {
                self.generators
                    .iter()
                    .all(|h| self.contains(&s.conjugate(h)))
            })
    }

    /// Largest normal subgroup of `self` contained in `h`.
    pub fn core(&self, h: &PermGroup) -> PermGroup {
        let mut conj: Vec<Permutation> = self.generators.clone();
        conj.extend(self.generators.iter().map(|s| s.inverse()));
        let mut keep: Vec<Permutation> = h.elements.clone();
        loop {
            let set: HashSet<&Permutation> = keep.iter().collect();
            let next: Vec<Permutation> = keep
                .iter()
                .filter(|k| conj.iter().all(|s| set.contains(&s.conjugate(k))))
                .cloned()
                .collect();
            if next.len() == keep.len() {
                break;
            }
            keep = next;
        }
        PermGroup::from_closed_elements(self.degree, keep)
    }

    /// Normal closure of `gens` inside `self`.
    pub fn normal_closure(&self, gens: &[Permutation]) -> PermGroup {
        let mut n = PermGroup::closure(self.degree, gens, usize::MAX).expect("uncapped");
        loop {
            let extra: Vec<Permutation> = self
                .generators
                .iter()
                .flat_map(|s| n.generators.iter().map(move |h| s.conjugate(h)))
                .filter(|c| !n.contains(c))
                .collect();
            if extra.is_empty() {
                return n;
            }
            let mut all = n.generators.clone();
            all.extend(extra);
            n = PermGroup::closure(self.degree, &all, usize::MAX).expect("uncapped");
        }
    }

    /// `[a, self]` for a normal subgroup `a` of `self`.
    pub fn commutator_with(&self, a: &PermGroup) -> PermGroup {
        let comms: Vec<Permutation> = a
            .generators
            .iter()
            .flat_map(|x| {
                self.generators
                    .iter()
                    .map(move |g| x.inverse().compose(&g.inverse()).compose(x).compose(g))
            })
            .filter(|c| !c.is_identity())
            .collect();
        self.normal_closure(&comms)
    }

    pub fn lower_central_series(&self) -> Vec<PermGroup> {
        let mut series = vec![self.clone()];
        loop {
            let last = series.last().unwrap();
            let next = self.commutator_with(last);
            if next.order() == last.order() {
                break;
            }
            let done = next.is_trivial();
            series.push(next);
            if done {
                break;
            }
        }
        series
    }

    /// `(true, class)` when nilpotent, `(false, 0)` otherwise.
    pub fn is_nilpotent(&self) -> (bool, usize) {
        let series = self.lower_central_series();
        if series.last().unwrap().is_trivial() {
            (true, series.len() - 1)
        } else {
            (false, 0)
        }
    }

    /// Restriction of a group that preserves `points` setwise.
    pub fn restrict(&self, points: &[usize]) -> Option<PermGroup> {
        let gens: Option<Vec<Permutation>> =
            self.generators.iter().map(|g| g.restrict(points)).collect();
        gens.map(|g| PermGroup::closure(points.len(), &g, usize::MAX).expect("uncapped"))
    }

    /// All subgroups, found as joins of cyclic subgroups.
    pub fn subgroups(&self, cap: usize) -> Result<Vec<PermGroup>> {
        let key = |g: &PermGroup| -> Vec<usize> {
            let mut k: Vec<usize> = g.elements.iter().map(|p| self.index[p]).collect();
            k.sort_unstable();
            k
        };
        let mut seen: HashSet<Vec<usize>> = HashSet::new();
        let mut cyclic: Vec<PermGroup> = Vec::new();
        for p in &self.elements {
            let c = PermGroup::closure(self.degree, std::slice::from_ref(p), usize::MAX)?;
            if seen.insert(key(&c)) {
                cyclic.push(c);
            }
        }
        let mut all = cyclic.clone();
        let mut i = 0;
        while i < all.len() {
            for c in &cyclic {
                if c.generators.iter().all(|g| all[i].contains(g)) {
                    continue;
                }
                let mut gens = all[i].generators.clone();
                gens.extend(c.generators.iter().cloned());
                let j = PermGroup::closure(self.degree, &gens, usize::MAX)?;
                if seen.insert(key(&j)) {
                    if all.len() >= cap {
                        return Err(Error::CapExceeded {
                            what: "subgroup count",
                            cap,
                        });
                    }
                    all.push(j);
                }
            }
            i += 1;
        }
        all.sort_by_key(|g| g.order());
        Ok(all)
    }
}

fn dedup(gens: Vec<Permutation>) -> Vec<Permutation> {
    let mut seen = HashSet::new();
    gens.into_iter()
        .filter(|g| seen.insert(g.clone()))
        .collect()
}

/// Orbit partition of the group generated by `gens`, without enumerating it.
pub fn orbits_of(degree: usize, gens: &[Permutation]) -> Partition {
    let mut label = vec![usize::MAX; degree];
    let mut next = 0;
    for start in 0..degree {
        if label[start] != usize::MAX {
            continue;
        }
        label[start] = next;
        let mut stack = vec![start];
        while let Some(x) = stack.pop() {
            for g in gens {
                let y = g.apply(x);
                if label[y] == usize::MAX {
                    label[y] = next;
                    stack.push(y);
                }
            }
        }
        next += 1;
    }
    Partition::from_labels(&label)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym(n: usize) -> PermGroup {
        PermGroup::generate(
            n,
            &[Permutation::cycle(n), Permutation::transposition(n, 0, 1)],
        )
        .unwrap()
    }

    #[test]
    fn closure_of_identity_is_trivial() {
        let g = PermGroup::generate(4, &[Permutation::identity(4)]).unwrap();
        assert_eq!(g.order(), 1);
    }

    #[test]
    fn closure_cap() {
        let err = PermGroup::closure(5, &[Permutation::cycle(5)], 3).unwrap_err();
        assert!(matches!(err, Error::CapExceeded { .. }));
    }

    #[test]
    fn symmetric_groups() {
        assert_eq!(sym(3).order(), 6);
        assert_eq!(sym(4).order(), 24);
        assert!(!sym(3).is_abelian());
        assert_eq!(sym(3).center().order(), 1);
    }

    #[test]
    fn s3_not_nilpotent_series_stops_at_a3() {
        let s3 = sym(3);
        assert_eq!(s3.is_nilpotent(), (false, 0));
        let series = s3.lower_central_series();
        assert_eq!(series.last().unwrap().order(), 3);
    }

    #[test]
    fn dihedral_of_order_eight_has_class_two() {
        // symmetries of the square on vertices 0..3
        let r = Permutation::cycle(4);
        let s = Permutation::from_images(vec![0, 3, 2, 1]).unwrap();
        let d4 = PermGroup::generate(4, &[r, s]).unwrap();
        assert_eq!(d4.order(), 8);
        assert_eq!(d4.is_nilpotent(), (true, 2));
        assert_eq!(d4.center().order(), 2);
    }

    #[test]
    fn core_of_point_stabilizer_in_transitive_group() {
        let s4 = sym(4);
        let stab = s4.stabilizer(0);
        assert_eq!(stab.order(), 6);
        assert!(s4.core(&stab).is_trivial());
        let v4 = PermGroup::generate(
            4,
            &[
                Permutation::from_images(vec![1, 0, 3, 2]).unwrap(),
                Permutation::from_images(vec![2, 3, 0, 1]).unwrap(),
            ],
        )
        .unwrap();
        assert!(v4.is_normal_in(&s4));
        assert!(s4.core(&v4).same_elements(&v4));
        assert!(!stab.is_normal_in(&s4));
    }

    #[test]
    fn regularity() {
        let c = PermGroup::generate(5, &[Permutation::cycle(5)]).unwrap();
        assert!(c.is_regular());
        assert!(sym(3).is_transitive());
        assert!(!sym(3).is_semiregular());
    }

    #[test]
    fn subgroups_of_s3() {
        let subs = sym(3).subgroups(100).unwrap();
        // 1, three of order 2, A3, S3
        assert_eq!(subs.len(), 6);
        assert_eq!(
            subs.iter().map(|s| s.order()).collect::<Vec<_>>(),
            vec![1, 2, 2, 2, 3, 6]
        );
    }

    #[test]
    fn greedy_generators_regenerate_group() {
        let s4 = sym(4);
        let h = s4.filter(|p| p.apply(3) == 3);
        let again = PermGroup::generate(4, h.generators()).unwrap();
        assert!(again.same_elements(&h));
    }
}
