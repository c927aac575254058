use super::{extend, ConstantCocycle, CoverStructure};
use crate::congruence::{self, Partition};
use crate::error::{Error, Result};
use crate::iso;
use crate::permgroup::{orbits_of, PermGroup, Permutation};
use crate::quasigroup::LeftQuasigroup;

/// Largest fiber for which `Sym(m)` is enumerated per root.
pub const FIBER_SEARCH_CAP: usize = 5;

fn symmetric_group(m: usize) -> PermGroup {
    let mut gens = Vec::new();
    if m >= 2 {
        gens.push(Permutation::cycle(m));
        gens.push(Permutation::transposition(m, 0, 1));
    }
    PermGroup::generate(m, &gens).expect("small symmetric group")
}

/// A family `γ` with `ε_{x,y} γ_y = γ_{x*y} θ_{x,y}`, if one exists.
pub fn are_cohomologous(
    q: &LeftQuasigroup,
    theta: &ConstantCocycle,
    eps: &ConstantCocycle,
) -> Result<Option<Vec<Permutation>>> {
    are_cohomologous_capped(q, theta, eps, FIBER_SEARCH_CAP)
}

pub fn are_cohomologous_capped(
    q: &LeftQuasigroup,
    theta: &ConstantCocycle,
    eps: &ConstantCocycle,
    cap: usize,
) -> Result<Option<Vec<Permutation>>> {
    theta.check_base(q)?;
    eps.check_base(q)?;
    let m = theta.fiber_size();
    if eps.fiber_size() != m {
        return Err(Error::FiberMismatch(format!(
            "fibers of size {m} and {}",
            eps.fiber_size()
        )));
    }
    if m > cap {
        return Err(Error::CapExceeded {
            what: "fiber size for cohomology search",
            cap,
        });
    }
    let n = q.size();
    let theta_inv: Vec<Permutation> = (0..n * n)
        .map(|i| theta.value(i / n, i % n).inverse())
        .collect();
    let candidates = symmetric_group(m);
    let mut gamma: Vec<Option<Permutation>> = vec![None; n];
    let orbits = orbits_of(n, &q.translations());
    for block in orbits.blocks() {
        let root = block[0];
        let found = candidates.elements().iter().any(|g| {
            for &y in &block {
                gamma[y] = None;
            }
            gamma[root] = Some(g.clone());
            propagate(q, eps, &theta_inv, root, &mut gamma)
        });
        if !found {
            return Ok(None);
        }
    }
    Ok(Some(
        gamma
            .into_iter()
            .map(|g| g.expect("all orbits rooted"))
            .collect(),
    ))
}

/// Spreads `γ_{x*y} = ε_{x,y} γ_y θ_{x,y}⁻¹` from `root`, checking every constraint met.
fn propagate(
    q: &LeftQuasigroup,
    eps: &ConstantCocycle,
    theta_inv: &[Permutation],
    root: usize,
    gamma: &mut [Option<Permutation>],
) -> bool {
    let n = q.size();
    let mut stack = vec![root];
    while let Some(y) = stack.pop() {
        let gy = gamma[y].clone().expect("assigned before push");
        for x in 0..n {
            let t = q.mul(x, y);
            let cand = eps.value(x, y).compose(&gy).compose(&theta_inv[x * n + y]);
            match &gamma[t] {
                Some(g) if *g != cand => return false,
                Some(_) => {}
                None => {
                    gamma[t] = Some(cand);
                    stack.push(t);
                }
            }
        }
    }
    true
}

/// A cocycle read off a cover, with the isomorphism onto its extension.
#[derive(Clone, Debug)]
pub struct Extracted {
    pub base: LeftQuasigroup,
    pub cocycle: ConstantCocycle,
    /// `iso[x]` is the index of `([x], h_[x](x))` in the extension.
    pub iso: Vec<usize>,
}

/// Standard cocycle of `E` over `E/α` with order-preserving block bijections.
pub fn extract_cocycle(e: &LeftQuasigroup, alpha: &Partition) -> Result<Extracted> {
    if alpha.degree() != e.size() {
        return Err(Error::BadShape(
            "partition degree differs from the structure".into(),
        ));
    }
    if !alpha.le(&congruence::lambda(e)) {
        return Err(Error::NotUnderCayley);
    }
    if !congruence::is_congruence(e, alpha) {
        return Err(Error::NotACongruence);
    }
    if !alpha.is_uniform() {
        return Err(Error::NotUniform);
    }
    let qt = congruence::quotient(e, alpha)?;
    let blocks = alpha.blocks();
    let m = blocks[0].len();
    let mut pos = vec![0; e.size()];
    for b in &blocks {
        for (i, &x) in b.iter().enumerate() {
            pos[x] = i;
        }
    }
    let cocycle = ConstantCocycle::from_fn(blocks.len(), m, |bx, by| {
        let x = blocks[bx][0];
        Permutation::from_images_unchecked(blocks[by].iter().map(|&y| pos[e.mul(x, y)]).collect())
    })?;
    let iso = (0..e.size())
        .map(|x| alpha.block_of(x) * m + pos[x])
        .collect();
    Ok(Extracted {
        base: qt.structure,
        cocycle,
        iso,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoverIsoMode {
    /// Requires `λ_E = λ_E' = ker π`.
    Cayley,
    /// Requires `ip_E = ip_E' = ker π`.
    Ip,
}

/// An isomorphism `(x, a) -> (g(x), γ_x(a))` between two extensions.
#[derive(Clone, Debug)]
pub struct CoverIsomorphism {
    pub automorphism: Vec<usize>,
    pub gamma: Vec<Permutation>,
    pub map: Vec<usize>,
}

/// Decides `Q x_θ A ≅ Q x_ε A` by looping over `Aut(Q)`.
pub fn isomorphic_as_covers(
    q: &LeftQuasigroup,
    theta: &ConstantCocycle,
    eps: &ConstantCocycle,
    mode: CoverIsoMode,
) -> Result<Option<CoverIsomorphism>> {
    let e1 = extend(q, theta)?;
    let e2 = extend(q, eps)?;
    for c in [&e1, &e2] {
        if distinguished(c, mode) != c.projection {
            return Err(Error::CriterionNotApplicable(format!(
                "{} of the extension differs from the projection kernel",
                match mode {
                    CoverIsoMode::Cayley => "Cayley kernel",
                    CoverIsoMode::Ip => "ip congruence",
                }
            )));
        }
    }
    let aut = iso::automorphisms(q)?;
    let m = theta.fiber_size();
    for g in aut.elements() {
        let g = g.images();
        if let Some(gamma) = are_cohomologous(q, theta, &eps.pullback(&g))? {
            let map = (0..q.size() * m)
                .map(|i| g[i / m] * m + gamma[i / m].apply(i % m))
                .collect();
            return Ok(Some(CoverIsomorphism {
                automorphism: g,
                gamma,
                map,
            }));
        }
    }
    Ok(None)
}

fn distinguished(c: &CoverStructure, mode: CoverIsoMode) -> Partition {
    match mode {
        CoverIsoMode::Cayley => congruence::lambda(&c.total),
        CoverIsoMode::Ip => congruence::ip(&c.total),
    }
}
