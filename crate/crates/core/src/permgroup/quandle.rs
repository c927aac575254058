//! Translation groups of a left quasigroup and their congruence-relative subgroups.

use crate::congruence::Partition;
use crate::error::{Error, Result};
use crate::quasigroup::LeftQuasigroup;

use super::{PermGroup, Permutation, DEFAULT_GROUP_CAP};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GroupKind {
    Lmlt,
    Dis,
}

/// `LMlt(Q) = <L_a>`.
pub fn lmlt(q: &LeftQuasigroup) -> Result<PermGroup> {
    PermGroup::closure(q.size(), &q.translations(), DEFAULT_GROUP_CAP)
}

/// `Dis(Q) = <L_a L_b⁻¹>`.
pub fn dis(q: &LeftQuasigroup) -> Result<PermGroup> {
    dis_rel(q, &Partition::full(q.size()))
}

/// `Dis_α = <L_a L_b⁻¹ : a α b>`.
pub fn dis_rel(q: &LeftQuasigroup, alpha: &Partition) -> Result<PermGroup> {
    let ls = q.translations();
    let mut gens = Vec::new();
    // L_b L_c⁻¹ = (L_b L_a⁻¹)(L_a L_c⁻¹): pairs through one representative suffice
    for block in alpha.blocks() {
        let la = &ls[block[0]];
        for &b in &block[1..] {
            gens.push(la.compose(&ls[b].inverse()));
        }
    }
    PermGroup::closure(q.size(), &gens, DEFAULT_GROUP_CAP)
}

/// `LMlt^α` (or `Dis^α`): elements moving every point inside its α-block.
pub fn kernel_subgroup(
    q: &LeftQuasigroup,
    alpha: &Partition,
    which: GroupKind,
) -> Result<PermGroup> {
    let g = group_of(q, which)?;
    Ok(g.filter(|h| (0..q.size()).all(|x| alpha.related(x, h.apply(x)))))
}

/// Block stabilizer `{h : h(a) α a}` inside `LMlt(Q)` or `Dis(Q)`.
pub fn block_stabilizer(
    q: &LeftQuasigroup,
    alpha: &Partition,
    a: usize,
    which: GroupKind,
) -> Result<PermGroup> {
    let g = group_of(q, which)?;
    Ok(g.filter(|h| alpha.related(a, h.apply(a))))
}

fn group_of(q: &LeftQuasigroup, which: GroupKind) -> Result<PermGroup> {
    match which {
        GroupKind::Lmlt => lmlt(q),
        GroupKind::Dis => dis(q),
    }
}

/// The action of a block-preserving group on the blocks of a partition.
#[derive(Clone, Debug)]
pub struct InducedAction {
    pub image: PermGroup,
    /// `map[i]` is the index in `image` of the block action of element `i`.
    pub map: Vec<usize>,
}

impl InducedAction {
    pub fn kernel(&self, source: &PermGroup) -> PermGroup {
        let els = source
            .elements()
            .iter()
            .zip(&self.map)
            .filter(|(_, &m)| m == 0)
            .map(|(p, _)| p.clone())
            .collect();
        PermGroup::from_closed_elements(source.degree(), els)
    }
}

/// `π_α(h)([x]) = [h(x)]`.
pub fn induced_action(g: &PermGroup, alpha: &Partition) -> Result<InducedAction> {
    let blocks = alpha.blocks();
    let on_blocks = |h: &Permutation| -> Result<Permutation> {
        let mut img = Vec::with_capacity(blocks.len());
        for block in &blocks {
            let target = alpha.block_of(h.apply(block[0]));
            if block.iter().any(|&x| alpha.block_of(h.apply(x)) != target) {
                return Err(Error::BlocksNotPreserved);
            }
            img.push(target);
        }
        Ok(Permutation::from_images_unchecked(img))
    };
    let gens: Vec<Permutation> = g
        .generators()
        .iter()
        .map(on_blocks)
        .collect::<Result<_>>()?;
    let image = PermGroup::closure(blocks.len(), &gens, DEFAULT_GROUP_CAP)?;
    let map = g
        .elements()
        .iter()
        .map(|h| on_blocks(h).map(|p| image.index_of(&p).expect("image closed")))
        .collect::<Result<_>>()?;
    Ok(InducedAction { image, map })
}
