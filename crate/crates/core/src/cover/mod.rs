//! Covering extensions by constant cocycles.

mod cohomology;
mod enumerate;

use rand::Rng;

pub use cohomology::{
    are_cohomologous, are_cohomologous_capped, extract_cocycle, isomorphic_as_covers, CoverIsoMode,
    CoverIsomorphism, Extracted, FIBER_SEARCH_CAP,
};
pub use enumerate::{abelian_cocycles, for_each_abelian_cocycle, CocycleKind};

use crate::congruence::{self, Partition};
use crate::error::{Error, Result};
use crate::permgroup::Permutation;
use crate::quasigroup::{AbelianGroup, LeftQuasigroup};

/// The set acted on by cocycle values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Fiber {
    /// `{0..degree-1}` with arbitrary permutations.
    Perm { degree: usize },
    /// An abelian group whose elements act by translation.
    Abelian { moduli: Vec<u64> },
}

impl Fiber {
    pub fn size(&self) -> usize {
        match self {
            Fiber::Perm { degree } => *degree,
            Fiber::Abelian { moduli } => moduli.iter().product::<u64>() as usize,
        }
    }

    pub fn cyclic(m: u64) -> Self {
        Fiber::Abelian { moduli: vec![m] }
    }
}

/// A map `Q x Q -> Sym(A)`, stored row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstantCocycle {
    base_size: usize,
    fiber: Fiber,
    values: Vec<Permutation>,
    /// Group elements behind the values, for abelian cocycles.
    elements: Option<Vec<usize>>,
}

impl ConstantCocycle {
    pub fn from_perms(
        base_size: usize,
        degree: usize,
        values: Vec<Vec<Permutation>>,
    ) -> Result<Self> {
        if values.len() != base_size || values.iter().any(|r| r.len() != base_size) {
            return Err(Error::FiberMismatch(format!(
                "cocycle must be {base_size}x{base_size}"
            )));
        }
        if let Some(p) = values.iter().flatten().find(|p| p.degree() != degree) {
            return Err(Error::FiberMismatch(format!(
                "value of degree {} in a fiber of size {degree}",
                p.degree()
            )));
        }
        Ok(ConstantCocycle {
            base_size,
            fiber: Fiber::Perm { degree },
            values: values.into_iter().flatten().collect(),
            elements: None,
        })
    }

    pub fn from_fn(
        base_size: usize,
        degree: usize,
        mut f: impl FnMut(usize, usize) -> Permutation,
    ) -> Result<Self> {
        let mut values = Vec::with_capacity(base_size);
        for x in 0..base_size {
            values.push((0..base_size).map(|y| f(x, y)).collect());
        }
        Self::from_perms(base_size, degree, values)
    }

    /// Abelian cocycle; `values[x][y]` is an element index of the group.
    pub fn from_abelian(base_size: usize, moduli: &[u64], values: Vec<Vec<usize>>) -> Result<Self> {
        let group = AbelianGroup::new(moduli)?;
        if values.len() != base_size || values.iter().any(|r| r.len() != base_size) {
            return Err(Error::FiberMismatch(format!(
                "cocycle must be {base_size}x{base_size}"
            )));
        }
        let elements: Vec<usize> = values.into_iter().flatten().collect();
        if let Some(&t) = elements.iter().find(|&&t| t >= group.order()) {
            return Err(Error::FiberMismatch(format!(
                "element {t} outside a group of order {}",
                group.order()
            )));
        }
        let table: Vec<Permutation> = (0..group.order()).map(|t| group.translation(t)).collect();
        Ok(ConstantCocycle {
            base_size,
            fiber: Fiber::Abelian {
                moduli: moduli.to_vec(),
            },
            values: elements.iter().map(|&t| table[t].clone()).collect(),
            elements: Some(elements),
        })
    }

    /// The cocycle with every value the identity.
    pub fn trivial(base_size: usize, fiber: Fiber) -> Result<Self> {
        match &fiber {
            Fiber::Perm { degree } => {
                Self::from_fn(base_size, *degree, |_, _| Permutation::identity(*degree))
            }
            Fiber::Abelian { moduli } => {
                Self::from_abelian(base_size, moduli, vec![vec![0; base_size]; base_size])
            }
        }
    }

    pub fn base_size(&self) -> usize {
        self.base_size
    }

    pub fn fiber(&self) -> &Fiber {
        &self.fiber
    }

    pub fn fiber_size(&self) -> usize {
        self.fiber.size()
    }

    #[inline]
    pub fn value(&self, x: usize, y: usize) -> &Permutation {
        &self.values[x * self.base_size + y]
    }

    /// Group element at `(x, y)` for abelian cocycles.
    pub fn element(&self, x: usize, y: usize) -> Option<usize> {
        self.elements.as_ref().map(|e| e[x * self.base_size + y])
    }

    pub fn rows(&self) -> Vec<Vec<Permutation>> {
        self.values
            .chunks(self.base_size)
            .map(|r| r.to_vec())
            .collect()
    }

    /// Abelian element rows, if this is an abelian cocycle.
    pub fn element_rows(&self) -> Option<Vec<Vec<usize>>> {
        self.elements
            .as_ref()
            .map(|e| e.chunks(self.base_size).map(|r| r.to_vec()).collect())
    }

    /// `(x, y) -> θ_{g(x), g(y)}`.
    pub fn pullback(&self, g: &[usize]) -> ConstantCocycle {
        let n = self.base_size;
        let pick = |x: usize, y: usize| g[x] * n + g[y];
        ConstantCocycle {
            base_size: n,
            fiber: self.fiber.clone(),
            values: (0..n * n)
                .map(|i| self.values[pick(i / n, i % n)].clone())
                .collect(),
            elements: self
                .elements
                .as_ref()
                .map(|e| (0..n * n).map(|i| e[pick(i / n, i % n)]).collect()),
        }
    }

    /// `ν_{x,y} = γ_{x*y} θ_{x,y} γ_y⁻¹`, cohomologous to `self` by construction.
    pub fn twist(&self, q: &LeftQuasigroup, gamma: &[Permutation]) -> Result<ConstantCocycle> {
        self.check_base(q)?;
        let m = self.fiber_size();
        if gamma.len() != q.size() || gamma.iter().any(|g| g.degree() != m) {
            return Err(Error::FiberMismatch(
                "twist needs one fiber permutation per element".into(),
            ));
        }
        Self::from_fn(q.size(), m, |x, y| {
            gamma[q.mul(x, y)]
                .compose(self.value(x, y))
                .compose(&gamma[y].inverse())
        })
    }

    pub(crate) fn check_base(&self, q: &LeftQuasigroup) -> Result<()> {
        if self.base_size != q.size() {
            return Err(Error::FiberMismatch(format!(
                "cocycle over {} points used with a base of size {}",
                self.base_size,
                q.size()
            )));
        }
        Ok(())
    }

    /// Uniformly random values, usually not a cocycle.
    pub fn random<R: Rng>(base_size: usize, degree: usize, rng: &mut R) -> Self {
        Self::from_fn(base_size, degree, |_, _| random_perm(degree, rng)).expect("shapes agree")
    }

    /// The coboundary `γ_{x*y} γ_y⁻¹` of a random family, always a rack cocycle on a rack.
    pub fn random_coboundary<R: Rng>(q: &LeftQuasigroup, degree: usize, rng: &mut R) -> Self {
        let gamma: Vec<Permutation> = (0..q.size()).map(|_| random_perm(degree, rng)).collect();
        Self::trivial(q.size(), Fiber::Perm { degree })
            .and_then(|t| t.twist(q, &gamma))
            .expect("shapes agree")
    }
}

pub fn random_perm<R: Rng>(degree: usize, rng: &mut R) -> Permutation {
    use rand::seq::SliceRandom;
    let mut img: Vec<usize> = (0..degree).collect();
    img.shuffle(rng);
    Permutation::from_images_unchecked(img)
}

/// A base, a cocycle over it, and the extension `Q x_θ A`.
#[derive(Clone, Debug)]
pub struct CoverStructure {
    pub base: LeftQuasigroup,
    pub cocycle: ConstantCocycle,
    /// `(x, a)` is stored at `x * m + a`.
    pub total: LeftQuasigroup,
    /// Kernel of `(x, a) -> x`.
    pub projection: Partition,
}

impl CoverStructure {
    pub fn fiber_size(&self) -> usize {
        self.cocycle.fiber_size()
    }

    pub fn pair(&self, e: usize) -> (usize, usize) {
        let m = self.fiber_size();
        (e / m, e % m)
    }

    pub fn index(&self, x: usize, a: usize) -> usize {
        x * self.fiber_size() + a
    }
}

/// `(x,a) * (y,b) = (x*y, θ_{x,y}(b))`, `(x,a) \ (y,b) = (x\y, θ_{x,x\y}⁻¹(b))`.
pub fn extend(q: &LeftQuasigroup, theta: &ConstantCocycle) -> Result<CoverStructure> {
    theta.check_base(q)?;
    let m = theta.fiber_size();
    if m == 0 {
        return Err(Error::FiberMismatch("empty fiber".into()));
    }
    let total = LeftQuasigroup::from_fn(q.size() * m, |e, f| {
        let (x, y, b) = (e / m, f / m, f % m);
        q.mul(x, y) * m + theta.value(x, y).apply(b)
    })?;
    let labels: Vec<usize> = (0..q.size() * m).map(|e| e / m).collect();
    Ok(CoverStructure {
        base: q.clone(),
        cocycle: theta.clone(),
        total,
        projection: Partition::from_labels(&labels),
    })
}

/// `θ_{x,y*z} θ_{y,z} = θ_{x*y,x*z} θ_{x,z}` for all triples.
pub fn is_rack_cocycle(q: &LeftQuasigroup, theta: &ConstantCocycle) -> bool {
    if theta.base_size() != q.size() {
        return false;
    }
    let n = q.size();
    let m = theta.fiber_size();
    (0..n).all(|x| {
        (0..n).all(|y| {
            (0..n).all(|z| {
                let (l1, l2) = (theta.value(x, q.mul(y, z)), theta.value(y, z));
                let (r1, r2) = (theta.value(q.mul(x, y), q.mul(x, z)), theta.value(x, z));
                (0..m).all(|b| l1.apply(l2.apply(b)) == r1.apply(r2.apply(b)))
            })
        })
    })
}

/// Rack cocycle with `θ_{x,x} = 1`.
pub fn is_quandle_cocycle(q: &LeftQuasigroup, theta: &ConstantCocycle) -> bool {
    is_rack_cocycle(q, theta) && (0..q.size()).all(|x| theta.value(x, x).is_identity())
}

/// Whether a surjective homomorphism `f: E -> R` has kernel inside `λ_E`.
pub fn is_covering_hom(e: &LeftQuasigroup, r: &LeftQuasigroup, f: &[usize]) -> Result<bool> {
    if f.len() != e.size() || f.iter().any(|&y| y >= r.size()) {
        return Err(Error::BadShape("map does not go from E to R".into()));
    }
    let mut hit = vec![false; r.size()];
    for &y in f {
        hit[y] = true;
    }
    if hit.contains(&false) {
        return Err(Error::NotSurjective);
    }
    if !e.is_homomorphism_to(r, f) {
        return Err(Error::NotHomomorphism);
    }
    let kernel = Partition::from_labels(f);
    Ok(kernel.le(&congruence::lambda(e)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    pub(crate) fn q3_z4(a: usize) -> ConstantCocycle {
        let mut v = vec![vec![0; 3]; 3];
        v[0][2] = a;
        ConstantCocycle::from_abelian(3, &[4], v).unwrap()
    }

    #[test]
    fn trivial_cocycle_gives_direct_product() {
        let q = fixtures::q4();
        let t = ConstantCocycle::trivial(4, Fiber::Perm { degree: 2 }).unwrap();
        let c = extend(&q, &t).unwrap();
        assert_eq!(c.total, q.direct_product(&LeftQuasigroup::projection(2)));
        assert!(is_quandle_cocycle(&q, &t));
    }

    #[test]
    fn q3_z4_cover_has_translation_of_order_eight() {
        let q = fixtures::q3();
        let theta = q3_z4(1);
        assert!(is_quandle_cocycle(&q, &theta));
        let c = extend(&q, &theta).unwrap();
        assert_eq!(c.total.size(), 12);
        assert!(c.total.is_quandle());
        assert_eq!(c.total.translation(c.index(0, 0)).order(), 8);
    }

    #[test]
    fn trivial_base() {
        let g = Permutation::cycle(3);
        let theta = ConstantCocycle::from_fn(1, 3, |_, _| g.clone()).unwrap();
        let c = extend(&LeftQuasigroup::trivial(), &theta).unwrap();
        assert_eq!(c.total.size(), 3);
        assert_eq!(c.total.translation(0), g);
    }

    #[test]
    fn division_formula() {
        let q = fixtures::q3();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let theta = ConstantCocycle::random(3, 3, &mut rng);
        let c = extend(&q, &theta).unwrap();
        for e in 0..9 {
            for f in 0..9 {
                let ((x, _), (y, b)) = (c.pair(e), c.pair(f));
                let xy = q.ldiv(x, y);
                let expect = c.index(xy, theta.value(x, xy).inverse().apply(b));
                assert_eq!(c.total.ldiv(e, f), expect);
            }
        }
    }

    #[test]
    fn broken_z2_cocycle_on_q4() {
        let q = fixtures::q4();
        let mut v = vec![vec![0; 4]; 4];
        v[0][1] = 1;
        let theta = ConstantCocycle::from_abelian(4, &[2], v).unwrap();
        assert!(!is_rack_cocycle(&q, &theta));
        assert!(!extend(&q, &theta).unwrap().total.is_rack());
    }

    #[test]
    fn fiber_mismatch() {
        let theta = ConstantCocycle::trivial(3, Fiber::cyclic(2)).unwrap();
        assert!(matches!(
            extend(&fixtures::q4(), &theta),
            Err(Error::FiberMismatch(_))
        ));
        let bad = ConstantCocycle::from_perms(1, 2, vec![vec![Permutation::identity(3)]]);
        assert!(matches!(bad, Err(Error::FiberMismatch(_))));
    }

    #[test]
    fn covering_homomorphisms() {
        let q = fixtures::q3();
        let c = extend(&q, &q3_z4(1)).unwrap();
        assert!(is_covering_hom(&c.total, &q, c.projection.labels()).unwrap());
        // Cayley map Q -> Q/λ
        let l = congruence::lambda(&q);
        let qt = congruence::quotient(&q, &l).unwrap();
        assert!(is_covering_hom(&q, &qt.structure, &qt.projection).unwrap());
        // R3 -> trivial is a homomorphism but not a covering
        let r3 = fixtures::r3();
        assert!(!is_covering_hom(&r3, &LeftQuasigroup::trivial(), &[0, 0, 0]).unwrap());
    }

    #[test]
    fn covering_hom_errors() {
        let r3 = fixtures::r3();
        assert!(matches!(
            is_covering_hom(&r3, &r3, &[0, 0, 1]),
            Err(Error::NotSurjective)
        ));
        assert!(matches!(
            is_covering_hom(&r3, &r3, &[1, 0, 2]).map(|_| ()),
            Ok(())
        ));
        let p2 = LeftQuasigroup::projection(2);
        assert!(matches!(
            is_covering_hom(&r3, &p2, &[0, 1, 1]),
            Err(Error::NotHomomorphism)
        ));
    }

    #[test]
    fn coboundaries_are_rack_cocycles() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for q in [fixtures::q3(), fixtures::r3(), fixtures::cyclic(3)] {
            for m in 1..=3 {
                let theta = ConstantCocycle::random_coboundary(&q, m, &mut rng);
                assert!(is_rack_cocycle(&q, &theta));
            }
        }
    }

    #[test]
    fn pullback_by_identity() {
        let theta = q3_z4(3);
        assert_eq!(theta.pullback(&[0, 1, 2]), theta);
        assert_eq!(theta.element(0, 2), Some(3));
    }
}
