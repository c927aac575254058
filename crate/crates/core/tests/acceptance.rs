//! End-to-end acceptance checks, one line per criterion.

use std::collections::HashMap;
use std::ops::ControlFlow;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use rackcov::adjoint::{adj0_order, is_simply_connected, Enumeration, Verdict};
use rackcov::analysis::{
    self, is_abelian_cover, is_central, is_strongly_abelian, levels, nilpotency, AbelianCoverMethod,
};
use rackcov::catalog::racks_up_to;
use rackcov::congruence::{ip, lambda, quotient, sg};
use rackcov::cover::{
    abelian_cocycles, are_cohomologous, extend, for_each_abelian_cocycle, is_rack_cocycle,
    CocycleKind, CoverStructure,
};
use rackcov::permgroup::{kernel_subgroup, lmlt, GroupKind};
use rackcov::terms::{eval_theta, sat_in_cover, satisfies, symmetric, theta_expr, Identity, Term};
use rackcov::{fixtures, io, iso, ConstantCocycle, LeftQuasigroup, Partition, Permutation};

type Check = fn() -> Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ok<T>(r: rackcov::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn cover_of(
    q: &LeftQuasigroup,
    moduli: &[u64],
    rows: Vec<Vec<usize>>,
) -> Result<CoverStructure, String> {
    let theta = ok(ConstantCocycle::from_abelian(q.size(), moduli, rows))?;
    ok(extend(q, &theta))
}

fn q3_cover() -> Result<String, String> {
    let q = fixtures::q3();
    let mut rows = vec![vec![0; 3]; 3];
    rows[0][2] = 1;
    let e = cover_of(&q, &[4], rows)?;
    let l = e.total.translation(e.index(0, 0));
    ensure(l.order() == 8, || {
        format!("L_(0,0) has order {}", l.order())
    })?;
    for m in 1..8 {
        ensure(!ok(satisfies(&e.total, &symmetric(m)))?, || {
            format!("cover is {m}-symmetric")
        })?;
    }
    ensure(ok(satisfies(&e.total, &symmetric(8)))?, || {
        "cover is not 8-symmetric".into()
    })?;
    Ok("ord L_(0,0) = 8; fails symmetric(1..7); satisfies symmetric(8)".into())
}

fn q4_search() -> Result<String, String> {
    let q = fixtures::q4();
    let names = ["medial", "xyyxy", "ababab"];
    for name in names {
        let id = ok(Identity::from_spec(name))?;
        ensure(ok(satisfies(&q, &id))?, || format!("Q4 fails {name}"))?;
    }
    let failing: Vec<Identity> = ["medial", "xyyxy", "ababab", "xyxyxy"]
        .iter()
        .map(|n| ok(Identity::from_spec(n)))
        .collect::<Result<_, _>>()?;
    let mut candidates = 0;
    let mut found: Vec<LeftQuasigroup> = Vec::new();
    let mut problem = None;
    ok(for_each_abelian_cocycle(
        &q,
        &[2],
        CocycleKind::Quandle,
        |rows| {
            candidates += 1;
            let step = || -> Result<(), String> {
                let e = cover_of(&q, &[2], rows)?.total;
                if !analysis::is_connected(&e) {
                    return Ok(());
                }
                for id in &failing {
                    if ok(satisfies(&e, id))? {
                        return Ok(());
                    }
                }
                found.push(e);
                Ok(())
            };
            match step() {
                Ok(()) => ControlFlow::Continue(()),
                Err(e) => {
                    problem = Some(e);
                    ControlFlow::Break(())
                }
            }
        },
    ))?;
    if let Some(p) = problem {
        return Err(p);
    }
    ensure(candidates <= 4096, || format!("{candidates} candidates"))?;
    ensure(!found.is_empty(), || {
        "no connected cover fails all four identities".into()
    })?;
    let first = &found[0];
    ensure(first.size() == 8 && first.is_quandle(), || {
        "first match is not an 8-element quandle".into()
    })?;
    for e in &found[1..] {
        ensure(ok(iso::are_isomorphic(first, e))?, || {
            "matches are not all isomorphic".into()
        })?;
    }
    Ok(format!(
        "{candidates} candidates, {} matches, all isomorphic to one connected non-medial quandle of order 8",
        found.len()
    ))
}

/// Connected symmetric fixtures with their exponent.
fn symmetric_fixtures() -> Vec<(&'static str, LeftQuasigroup, usize)> {
    vec![
        ("R3", fixtures::r3(), 2),
        ("R5", fixtures::r5(), 2),
        ("Q4", fixtures::q4(), 3),
    ]
}

/// Every cover from the exhaustive quandle cocycle enumeration over Z2 and Z3.
fn symmetric_covers() -> Result<Vec<(String, usize, CoverStructure)>, String> {
    let mut out = Vec::new();
    for (name, q, n) in symmetric_fixtures() {
        for m in [2u64, 3] {
            for rows in abelian_cocycles(&q, m, CocycleKind::Quandle) {
                out.push((format!("{name} x Z{m}"), n, cover_of(&q, &[m], rows)?));
            }
        }
    }
    Ok(out)
}

fn symmetric_preserved() -> Result<String, String> {
    let covers = symmetric_covers()?;
    for (label, n, e) in &covers {
        ensure(e.total.is_quandle(), || {
            format!("{label}: cover is not a quandle")
        })?;
        ensure(ok(satisfies(&e.total, &symmetric(*n)))?, || {
            format!("{label}: cover fails symmetric({n})")
        })?;
    }
    Ok(format!("{} covers checked, all n-symmetric", covers.len()))
}

fn simply_connected() -> Result<String, String> {
    let cases = [
        ("R3", fixtures::r3(), 3),
        ("Aff(Z5,2)", ok(fixtures::affine_cyclic(5, 2))?, 5),
        ("Aff(Z7,3)", ok(fixtures::affine_cyclic(7, 3))?, 7),
    ];
    for (name, q, expected) in &cases {
        let got = adj0_order(q);
        ensure(got == Enumeration::Index(*expected), || {
            format!("{name}: {got:?}")
        })?;
        ensure(ok(is_simply_connected(q))? == Verdict::Yes, || {
            format!("{name}: not simply connected")
        })?;
    }
    let r3 = fixtures::r3();
    let mut count = 0;
    for m in [2u64, 3] {
        let trivial = ok(ConstantCocycle::trivial(3, rackcov::Fiber::cyclic(m)))?;
        for rows in abelian_cocycles(&r3, m, CocycleKind::Quandle) {
            let theta = ok(ConstantCocycle::from_abelian(3, &[m], rows))?;
            ensure(
                ok(are_cohomologous(&r3, &theta, &trivial))?.is_some(),
                || format!("a Z{m} cocycle on R3 is not cohomologous to trivial"),
            )?;
            count += 1;
        }
    }
    let mut note = String::from("table rows not supplied");
    if let Ok(path) = std::env::var("RACKCOV_SIMPLY_CONNECTED_TABLES") {
        let text = std::fs::read_to_string(&path).map_err(|e| e.to_string())?;
        let tables: Vec<io::TableFile> = serde_json::from_str(&text).map_err(|e| e.to_string())?;
        for (i, t) in tables.iter().enumerate() {
            let q = ok(t.to_structure())?;
            ensure(ok(is_simply_connected(&q))? == Verdict::Yes, || {
                format!("supplied table {i}")
            })?;
        }
        note = format!("{} supplied tables simply connected", tables.len());
    }
    Ok(format!(
        "|Adj0| = 3, 5, 7; {count} cocycles on R3 cohomologous to trivial; {note}"
    ))
}

fn catalog() -> Result<Vec<LeftQuasigroup>, String> {
    ok(racks_up_to(4))
}

fn levels_agree() -> Result<String, String> {
    let all = catalog()?;
    let mut infinite = 0;
    for q in &all {
        let l = ok(levels(q))?;
        ensure(l.agree(), || format!("levels disagree on {q:?}: {l:?}"))?;
        if l.multipermutation.finite().is_none() {
            infinite += 1;
        }
    }
    Ok(format!(
        "{} racks, {} with infinite level",
        all.len(),
        infinite
    ))
}

fn named_fixtures() -> Vec<LeftQuasigroup> {
    [
        "Q3", "R3", "R5", "Q4", "T6", "T10", "P_3", "C_4", "R_6", "Aff_5_2", "trivial",
    ]
    .iter()
    .map(|n| fixtures::by_name(n).expect("fixture"))
    .collect()
}

fn kernel_is_center() -> Result<String, String> {
    let mut all = catalog()?;
    all.extend(named_fixtures());
    for q in &all {
        let g = ok(lmlt(q))?;
        let k = ok(kernel_subgroup(q, &lambda(q), GroupKind::Lmlt))?;
        ensure(k.same_elements(&g.center()), || {
            format!("LMlt^λ differs from the center on {q:?}")
        })?;
    }
    Ok(format!("{} racks", all.len()))
}

fn small_fixtures() -> Vec<LeftQuasigroup> {
    vec![
        fixtures::q3(),
        fixtures::r3(),
        fixtures::q4(),
        fixtures::r5(),
        fixtures::t6(),
        fixtures::projection(2),
        fixtures::cyclic(3),
        LeftQuasigroup::trivial(),
    ]
}

fn cocycle_condition() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let bases = small_fixtures();
    let mut cocycles = 0;
    for _ in 0..1000 {
        let q = &bases[rng.gen_range(0..bases.len())];
        let m = rng.gen_range(1..=3);
        let theta = match rng.gen_range(0..3) {
            0 => ConstantCocycle::random(q.size(), m, &mut rng),
            1 => ConstantCocycle::random_coboundary(q, m, &mut rng),
            _ => {
                // perturb one value of a coboundary
                let base = ConstantCocycle::random_coboundary(q, m, &mut rng);
                let (x0, y0) = (rng.gen_range(0..q.size()), rng.gen_range(0..q.size()));
                let p = rackcov::cover::random_perm(m, &mut rng);
                ok(ConstantCocycle::from_fn(q.size(), m, |x, y| {
                    if (x, y) == (x0, y0) {
                        p.clone()
                    } else {
                        base.value(x, y).clone()
                    }
                }))?
            }
        };
        let is_cocycle = is_rack_cocycle(q, &theta);
        cocycles += usize::from(is_cocycle);
        let e = ok(extend(q, &theta))?;
        ensure(e.total.is_rack() == is_cocycle, || {
            format!("disagreement on {q:?}")
        })?;
    }
    Ok(format!("1000 instances, {cocycles} rack cocycles"))
}

fn random_term(rng: &mut ChaCha8Rng, vars: &[&str], rightmost: &str, depth: usize) -> Term {
    if depth == 0 || rng.gen_bool(0.3) {
        return Term::var(rightmost);
    }
    let left_var = vars[rng.gen_range(0..vars.len())];
    let left = random_term(rng, vars, left_var, depth - 1);
    let right = random_term(rng, vars, rightmost, depth - 1);
    if rng.gen_bool(0.7) {
        Term::mul(left, right)
    } else {
        Term::ldiv(left, right)
    }
}

fn theta_calculus() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let bases: Vec<LeftQuasigroup> = small_fixtures()
        .into_iter()
        .filter(|q| q.size() <= 5)
        .collect();
    let vars = ["x", "y", "z"];
    let mut satisfied = 0;
    for _ in 0..500 {
        let q = &bases[rng.gen_range(0..bases.len())];
        let m = rng.gen_range(1..=3);
        let theta = if rng.gen_bool(0.5) {
            ConstantCocycle::random_coboundary(q, m, &mut rng)
        } else {
            let list = abelian_cocycles(q, 2, CocycleKind::Rack);
            let rows = list[rng.gen_range(0..list.len())].clone();
            ok(ConstantCocycle::from_abelian(q.size(), &[2], rows))?
        };
        let e = ok(extend(q, &theta))?;
        let right = vars[rng.gen_range(0..vars.len())];
        let id = Identity {
            lhs: random_term(&mut rng, &vars, right, 3),
            rhs: random_term(&mut rng, &vars, right, 3),
        };
        let in_cover = ok(sat_in_cover(q, &theta, &id))?;
        ensure(in_cover == ok(satisfies(&e.total, &id))?, || {
            format!("sat_in_cover wrong for {id}")
        })?;
        satisfied += usize::from(in_cover);

        // one random assignment in the cover against (base value, Θ image)
        let mut base_assign = HashMap::new();
        let mut cover_assign = HashMap::new();
        let mut fiber = HashMap::new();
        for v in vars {
            let (x, a) = (rng.gen_range(0..q.size()), rng.gen_range(0..e.fiber_size()));
            base_assign.insert(v.to_string(), x);
            cover_assign.insert(v.to_string(), e.index(x, a));
            fiber.insert(v, a);
        }
        for t in [&id.lhs, &id.rhs] {
            let got = ok(t.eval(&e.total, &cover_assign))?;
            let base_value = ok(t.eval(q, &base_assign))?;
            let image: Permutation = ok(eval_theta(q, &theta, &theta_expr(t), &base_assign))?;
            let expected = e.index(base_value, image.apply(fiber[t.rightmost()]));
            ensure(got == expected, || {
                format!("term {t} evaluates wrongly in the cover")
            })?;
        }
    }
    Ok(format!(
        "500 instances, {satisfied} identities hold in the cover"
    ))
}

fn ip_properties() -> Result<String, String> {
    let all = catalog()?;
    for q in &all {
        let p = ip(q);
        for a in 0..q.size() {
            ensure(p.block(a) == sg(q, a), || {
                format!("ip block of {a} is not Sg({a}) in {q:?}")
            })?;
        }
        ensure(ok(is_strongly_abelian(q, &p))?, || {
            format!("ip not strongly abelian in {q:?}")
        })?;
        ensure(ok(is_central(q, &p))?, || {
            format!("ip not central in {q:?}")
        })?;
        let quo = ok(quotient(q, &p))?.structure;
        ensure(quo.is_quandle(), || {
            format!("Q/ip is not a quandle for {q:?}")
        })?;
        ensure(
            analysis::is_connected(q) == analysis::is_connected(&quo),
            || format!("connectedness does not transfer for {q:?}"),
        )?;
    }
    Ok(format!("{} racks", all.len()))
}

fn nilpotence() -> Result<String, String> {
    let all = catalog()?;
    let mut solvable = 0;
    for q in &all {
        let Some(n) = ok(levels(q))?.strongly_solvable.finite() else {
            continue;
        };
        solvable += 1;
        let nil = ok(nilpotency(q))?;
        ensure(nil.dis_nilpotent, || format!("Dis not nilpotent for {q:?}"))?;
        let bound = nil.rack_bound.expect("nilpotent");
        ensure(bound <= n, || {
            format!("bound {bound} exceeds length {n} for {q:?}")
        })?;
        if n >= 2 {
            let (lm_nil, lm_class) = ok(lmlt(q))?.is_nilpotent();
            ensure(lm_nil && lm_class < n, || {
                format!("LMlt class {lm_class} for length {n} on {q:?}")
            })?;
        }
    }
    Ok(format!("{solvable} strongly solvable racks"))
}

fn abelian_cover_methods() -> Result<String, String> {
    let mut connected = 0;
    let mut abelian = 0;
    for (label, _, e) in symmetric_covers()? {
        if !analysis::is_connected(&e.total) {
            continue;
        }
        connected += 1;
        let alpha: Partition = e.projection.clone();
        let by_aut = ok(is_abelian_cover(
            &e.total,
            &alpha,
            AbelianCoverMethod::AutSubgroup,
        ))?;
        let by_block = ok(is_abelian_cover(
            &e.total,
            &alpha,
            AbelianCoverMethod::BlockStabilizer,
        ))?;
        ensure(by_aut == by_block, || format!("{label}: methods disagree"))?;
        abelian += usize::from(by_aut);
    }
    ensure(connected > 0, || "no connected covers".into())?;
    Ok(format!(
        "{connected} connected covers, methods agree ({abelian} abelian)"
    ))
}

fn main() {
    let criteria: [(usize, &str, Duration, Check); 11] = [
        (
            1,
            "Q3 x Z4 translation order and symmetry",
            Duration::from_secs(1),
            q3_cover,
        ),
        (
            2,
            "Q4 identities and non-medial order-8 cover",
            Duration::from_secs(10),
            q4_search,
        ),
        (
            3,
            "covers of n-symmetric quandles are n-symmetric",
            Duration::from_secs(60),
            symmetric_preserved,
        ),
        (
            4,
            "simple connectedness and trivial cohomology",
            Duration::from_secs(30),
            simply_connected,
        ),
        (
            5,
            "level equality on all racks of size <= 4",
            Duration::from_secs(300),
            levels_agree,
        ),
        (
            6,
            "LMlt^lambda equals the center of LMlt",
            Duration::from_secs(60),
            kernel_is_center,
        ),
        (
            7,
            "extension is a rack iff cocycle condition",
            Duration::from_secs(60),
            cocycle_condition,
        ),
        (
            8,
            "identities and terms in covers via Theta",
            Duration::from_secs(60),
            theta_calculus,
        ),
        (
            9,
            "ip blocks, centrality and quotient",
            Duration::from_secs(60),
            ip_properties,
        ),
        (
            10,
            "strongly solvable racks are nilpotent",
            Duration::from_secs(60),
            nilpotence,
        ),
        (
            11,
            "abelian cover methods agree",
            Duration::from_secs(120),
            abelian_cover_methods,
        ),
    ];
    let only: Option<usize> = std::env::args().skip(1).find_map(|a| a.parse().ok());
    let mut failures = 0;
    for (id, title, budget, check) in criteria {
        if only.is_some_and(|o| o != id) {
            continue;
        }
        let start = Instant::now();
        let result =
            catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".to_string()));
        let elapsed = start.elapsed();
        let result = result.and_then(|detail| {
            if elapsed <= budget {
                Ok(detail)
            } else {
                Err(format!("took {elapsed:.2?}, budget {budget:?} ({detail})"))
            }
        });
        match result {
            Ok(detail) => println!("criterion {id:>2}: PASS  {title} [{elapsed:.2?}] {detail}"),
            Err(why) => {
                failures += 1;
                println!("criterion {id:>2}: FAIL  {title} [{elapsed:.2?}] {why}");
            }
        }
    }
    if failures > 0 {
        println!("{failures} acceptance criteria failed");
        std::process::exit(1);
    }
}
