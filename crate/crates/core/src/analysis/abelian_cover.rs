//! Recognizing abelian covers `Q -> Q/α`.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::congruence::{is_congruence, lambda, Partition};
use crate::error::{Error, Result};
use crate::iso::automorphisms_capped;
use crate::permgroup::{self, orbits_of, PermGroup, Permutation};
use crate::quasigroup::LeftQuasigroup;

/// Size bound for the automorphism search behind [`AbelianCoverMethod::AutSubgroup`].
pub const AUT_SEARCH_CAP: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AbelianCoverMethod {
    /// An abelian `A ≤ Aut(Q)` acting regularly on every block.
    AutSubgroup,
    /// Every block stabilizer of `LMlt(Q)` restricts to an abelian group on its block;
    /// valid for connected `Q`.
    BlockStabilizer,
}

pub fn is_abelian_cover(
    q: &LeftQuasigroup,
    alpha: &Partition,
    method: AbelianCoverMethod,
) -> Result<bool> {
    if alpha.degree() != q.size() || !is_congruence(q, alpha) {
        return Err(Error::NotACongruence);
    }
    if !alpha.le(&lambda(q)) {
        return Err(Error::PreconditionFailed(
            "congruence is not below λ".into(),
        ));
    }
    match method {
        AbelianCoverMethod::AutSubgroup => by_aut_subgroup(q, alpha),
        AbelianCoverMethod::BlockStabilizer => by_block_stabilizer(q, alpha),
    }
}

fn by_block_stabilizer(q: &LeftQuasigroup, alpha: &Partition) -> Result<bool> {
    if !orbits_of(q.size(), &q.translations()).is_full() {
        return Err(Error::PreconditionFailed(
            "block stabilizer test needs a connected rack".into(),
        ));
    }
    let lmlt = permgroup::lmlt(q)?;
    for block in alpha.blocks() {
        let a = block[0];
        let mut restricted: HashSet<Permutation> = HashSet::new();
        for h in lmlt.elements() {
            if alpha.related(a, h.apply(a)) {
                restricted.insert(h.restrict(&block).expect("block is invariant"));
            }
        }
        let els: Vec<&Permutation> = restricted.iter().collect();
        let abelian = els
            .iter()
            .enumerate()
            .all(|(i, g)| els[i + 1..].iter().all(|h| g.commutes_with(h)));
        if !abelian {
            return Ok(false);
        }
    }
    Ok(true)
}

fn by_aut_subgroup(q: &LeftQuasigroup, alpha: &Partition) -> Result<bool> {
    if !alpha.is_uniform() {
        return Ok(false);
    }
    let m = q.size() / alpha.num_blocks();
    if m == 1 {
        return Ok(true);
    }
    let aut = automorphisms_capped(q, AUT_SEARCH_CAP)?;
    // only block-preserving, fixed-point-free automorphisms can lie in A
    let candidates: Vec<Permutation> = aut
        .elements()
        .iter()
        .filter(|g| !g.is_identity())
        .filter(|g| g.fixed_points().next().is_none())
        .filter(|g| (0..q.size()).all(|x| alpha.related(x, g.apply(x))))
        .cloned()
        .collect();
    let mut seen = HashSet::new();
    Ok(grow(
        &PermGroup::trivial(q.size()),
        0,
        &candidates,
        m,
        &mut seen,
    ))
}

/// Extends an abelian semiregular group towards order `m`.
fn grow(
    group: &PermGroup,
    start: usize,
    candidates: &[Permutation],
    m: usize,
    seen: &mut HashSet<Vec<Permutation>>,
) -> bool {
    if group.order() == m {
        return true;
    }
    for (i, g) in candidates.iter().enumerate().skip(start) {
        if group.contains(g) || !group.generators().iter().all(|h| h.commutes_with(g)) {
            continue;
        }
        let mut gens = group.generators().to_vec();
        gens.push(g.clone());
        let Ok(next) = PermGroup::closure(group.degree(), &gens, m) else {
            continue;
        };
        if !m.is_multiple_of(next.order()) || !next.is_semiregular() {
            continue;
        }
        let mut key: Vec<Permutation> = next.elements().to_vec();
        key.sort();
        if !seen.insert(key) {
            continue;
        }
        if grow(&next, i + 1, candidates, m, seen) {
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover::{abelian_cocycles, extend, CocycleKind, ConstantCocycle};
    use crate::fixtures;
    use crate::group::{nested_coset_cover, CosetQuandleSpec};

    use AbelianCoverMethod::*;

    #[test]
    fn abelian_extensions_are_abelian_covers() {
        for (q, m) in [
            (fixtures::r3(), 2u64),
            (fixtures::q4(), 2),
            (fixtures::r3(), 3),
        ] {
            for rows in abelian_cocycles(&q, m, CocycleKind::Quandle)
                .into_iter()
                .take(12)
            {
                let theta = ConstantCocycle::from_abelian(q.size(), &[m], rows).unwrap();
                let e = extend(&q, &theta).unwrap();
                let alpha = e.projection.clone();
                assert!(is_abelian_cover(&e.total, &alpha, AutSubgroup).unwrap());
                if orbits_of(e.total.size(), &e.total.translations()).is_full() {
                    assert!(is_abelian_cover(&e.total, &alpha, BlockStabilizer).unwrap());
                }
            }
        }
    }

    #[test]
    fn principal_cover_of_t6_is_abelian() {
        let t6 = fixtures::t6();
        let spec = CosetQuandleSpec::stabilizer_spec(&t6, 0).unwrap();
        let nested = nested_coset_cover(
            &spec.group,
            &spec.aut,
            &[spec.group.identity()],
            &spec.subgroup,
        )
        .unwrap();
        let alpha = Partition::from_labels(&nested.projection);
        let e = &nested.cover.quandle;
        assert!(is_abelian_cover(e, &alpha, BlockStabilizer).unwrap());
        assert!(is_abelian_cover(e, &alpha, AutSubgroup).unwrap());
    }

    #[test]
    fn central_cover_with_nonabelian_stabilizer_is_not_abelian() {
        let t10 = fixtures::t10();
        let spec = CosetQuandleSpec::stabilizer_spec(&t10, 0).unwrap();
        let nested = nested_coset_cover(
            &spec.group,
            &spec.aut,
            &[spec.group.identity()],
            &spec.subgroup,
        )
        .unwrap();
        let e = &nested.cover.quandle;
        assert_eq!(e.size(), 60);
        let alpha = Partition::from_labels(&nested.projection);
        assert!(crate::analysis::is_central(e, &alpha).unwrap());
        assert!(!is_abelian_cover(e, &alpha, BlockStabilizer).unwrap());
    }

    #[test]
    fn preconditions() {
        let r3 = fixtures::r3();
        assert!(matches!(
            is_abelian_cover(&r3, &Partition::full(3), AutSubgroup),
            Err(Error::PreconditionFailed(_))
        ));
        let q3 = fixtures::q3();
        assert!(matches!(
            is_abelian_cover(&q3, &lambda(&q3), BlockStabilizer),
            Err(Error::PreconditionFailed(_))
        ));
        // blocks of unequal size cannot be orbits of a semiregular group
        assert!(!is_abelian_cover(&q3, &lambda(&q3), AutSubgroup).unwrap());
        assert!(is_abelian_cover(&r3, &Partition::identity(3), BlockStabilizer).unwrap());
    }
}
