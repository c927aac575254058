//! Structural verdicts: flags, levels, special congruences and abelian covers.

mod abelian_cover;
mod levels;
mod verdicts;

use std::fmt;

use serde::Serialize;

pub use abelian_cover::{is_abelian_cover, AbelianCoverMethod, AUT_SEARCH_CAP};
pub use levels::{
    cayley_lift, levels, multipermutation_level, reductivity_level, strongly_solvable_length,
    Level, Levels, LEVEL_CAP,
};
pub use verdicts::{
    central_cover_criterion, is_central, is_normal_extension, is_strongly_abelian, kernel_orbits,
    normal_extension_oracle, strongly_abelian_oracle,
};

use crate::adjoint::{self, Verdict};
use crate::congruence::{ip, lambda, sigma_from_dis, Partition};
use crate::error::{Error, Result};
use crate::iso::automorphism_mapping;
use crate::permgroup::{self, orbits_of};
use crate::quasigroup::LeftQuasigroup;
use crate::terms::{medial, satisfies};

/// Size bound for the automorphism searches behind homogeneity.
pub const HOMOGENEITY_CAP: usize = 64;

/// `LMlt(Q)` is transitive.
pub fn is_connected(q: &LeftQuasigroup) -> bool {
    orbits_of(q.size(), &q.translations()).is_full()
}

/// Distinct elements have distinct translations.
pub fn is_faithful(q: &LeftQuasigroup) -> bool {
    lambda(q).is_identity()
}

/// `Dis(Q)` is regular.
pub fn is_principal(q: &LeftQuasigroup) -> Result<bool> {
    Ok(permgroup::dis(q)?.is_regular())
}

/// `Aut(Q)` is transitive.
pub fn is_homogeneous(q: &LeftQuasigroup) -> Result<bool> {
    for b in 1..q.size() {
        if automorphism_mapping(q, 0, b, HOMOGENEITY_CAP)?.is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Nilpotency {
    pub dis_nilpotent: bool,
    /// Nilpotency class of `Dis(Q)` when nilpotent.
    pub dis_class: Option<usize>,
    /// Upper bound `class + 1` on the nilpotence length of `Q` (0 for one element).
    pub rack_bound: Option<usize>,
}

pub fn nilpotency(q: &LeftQuasigroup) -> Result<Nilpotency> {
    let (nilpotent, class) = permgroup::dis(q)?.is_nilpotent();
    let rack_bound = nilpotent.then(|| if q.size() == 1 { 0 } else { class + 1 });
    Ok(Nilpotency {
        dis_nilpotent: nilpotent,
        dis_class: nilpotent.then_some(class),
        rack_bound,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Flags {
    pub rack: bool,
    pub quandle: bool,
    pub connected: bool,
    pub faithful: bool,
    pub principal: bool,
    pub medial: bool,
    /// `None` when the automorphism search is over its cap.
    pub homogeneous: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Partitions {
    pub lambda: Partition,
    pub sigma: Partition,
    pub ip: Option<Partition>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructureReport {
    pub size: usize,
    pub flags: Flags,
    /// Present for racks.
    pub levels: Option<Levels>,
    pub levels_agree: Option<bool>,
    pub nilpotency: Nilpotency,
    pub partitions: Partitions,
    pub adj0_order: Option<usize>,
    pub dis_order: usize,
    /// `None` for non-racks and when enumeration does not close.
    pub simply_connected: Option<bool>,
}

pub fn report(q: &LeftQuasigroup) -> Result<StructureReport> {
    let rack = q.is_rack();
    let connected = is_connected(q);
    let dis = permgroup::dis(q)?;
    let homogeneous = match is_homogeneous(q) {
        Ok(h) => Some(h),
        Err(Error::CapExceeded { .. }) => None,
        Err(e) => return Err(e),
    };
    let flags = Flags {
        rack,
        quandle: q.is_quandle(),
        connected,
        faithful: is_faithful(q),
        principal: dis.is_regular(),
        medial: satisfies(q, &medial())?,
        homogeneous,
    };
    let levels = if rack { Some(levels(q)?) } else { None };
    let (adj0_order, simply_connected) = if connected && rack {
        let sc = adjoint::simply_connected_report(q, adjoint::COSET_CAP)?;
        let verdict = match sc.verdict {
            Verdict::Yes => Some(true),
            Verdict::No => Some(false),
            Verdict::Indeterminate => None,
        };
        (sc.adj0_order, verdict)
    } else if rack {
        // simple connectedness presupposes connectedness
        (None, Some(false))
    } else {
        (None, None)
    };
    Ok(StructureReport {
        size: q.size(),
        flags,
        levels_agree: levels.map(|l| l.agree()),
        levels,
        nilpotency: nilpotency(q)?,
        partitions: Partitions {
            lambda: lambda(q),
            sigma: sigma_from_dis(q.size(), &dis),
            ip: rack.then(|| ip(q)),
        },
        adj0_order,
        dis_order: dis.order(),
        simply_connected,
    })
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

impl fmt::Display for StructureReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fl = &self.flags;
        let opt = |o: Option<bool>| o.map_or("unknown", yes_no);
        let rows: Vec<(&str, String)> = vec![
            ("size", self.size.to_string()),
            ("rack", yes_no(fl.rack).into()),
            ("quandle", yes_no(fl.quandle).into()),
            ("connected", yes_no(fl.connected).into()),
            ("faithful", yes_no(fl.faithful).into()),
            ("principal", yes_no(fl.principal).into()),
            ("medial", yes_no(fl.medial).into()),
            ("homogeneous", opt(fl.homogeneous).into()),
            (
                "multipermutation level",
                self.levels
                    .map_or("-".into(), |l| l.multipermutation.to_string()),
            ),
            (
                "reductivity level",
                self.levels
                    .map_or("-".into(), |l| l.reductivity.to_string()),
            ),
            (
                "strongly solvable length",
                self.levels
                    .map_or("-".into(), |l| l.strongly_solvable.to_string()),
            ),
            ("|Dis|", self.dis_order.to_string()),
            (
                "Dis nilpotency class",
                self.nilpotency
                    .dis_class
                    .map_or("not nilpotent".into(), |c| c.to_string()),
            ),
            ("lambda", self.partitions.lambda.to_string()),
            ("sigma", self.partitions.sigma.to_string()),
            (
                "ip",
                self.partitions
                    .ip
                    .as_ref()
                    .map_or("-".into(), |p| p.to_string()),
            ),
            (
                "|Adj0|",
                self.adj0_order.map_or("-".into(), |k| k.to_string()),
            ),
            ("simply connected", opt(self.simply_connected).into()),
        ];
        let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        for (k, v) in rows {
            writeln!(f, "{k:<width$}  {v}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn flag_examples() {
        let r3 = fixtures::r3();
        assert!(is_connected(&r3) && is_faithful(&r3) && is_principal(&r3).unwrap());
        let q3 = fixtures::q3();
        assert!(!is_connected(&q3) && !is_faithful(&q3));
        let p2 = fixtures::projection(2);
        assert!(!is_connected(&p2) && !is_faithful(&p2));
        assert!(is_homogeneous(&p2).unwrap());
        assert!(!is_homogeneous(&q3).unwrap());
        assert!(is_homogeneous(&fixtures::t6()).unwrap());
    }

    #[test]
    fn nilpotency_examples() {
        let n = nilpotency(&fixtures::q3()).unwrap();
        assert_eq!(n.dis_class, Some(1));
        assert_eq!(n.rack_bound, Some(2));
        assert_eq!(nilpotency(&fixtures::r3()).unwrap().dis_class, Some(1));
        let t6 = nilpotency(&fixtures::t6()).unwrap();
        assert!(!t6.dis_nilpotent);
        assert_eq!(
            nilpotency(&LeftQuasigroup::trivial()).unwrap().rack_bound,
            Some(0)
        );
    }

    #[test]
    fn report_r3() {
        let r = report(&fixtures::r3()).unwrap();
        assert!(r.flags.connected && r.flags.faithful && r.flags.principal);
        assert_eq!(r.simply_connected, Some(true));
        assert_eq!(
            r.levels.unwrap().multipermutation,
            Level::Exceeded { cap: LEVEL_CAP }
        );
        assert_eq!(r.levels_agree, Some(true));
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["simply_connected"], serde_json::Value::Bool(true));
    }

    #[test]
    fn report_q3() {
        let r = report(&fixtures::q3()).unwrap();
        assert!(r.flags.quandle);
        assert_eq!(r.levels.unwrap().strongly_solvable, Level::Finite(2));
        assert_eq!(r.partitions.lambda.to_string(), "{0}{1 2}");
        assert_eq!(r.partitions.sigma, r.partitions.lambda);
        assert_eq!(r.simply_connected, Some(false));
        assert!(r.to_string().contains("lambda"));
    }

    #[test]
    fn report_trivial() {
        let r = report(&LeftQuasigroup::trivial()).unwrap();
        let f = &r.flags;
        assert!(f.rack && f.quandle && f.connected && f.faithful && f.principal && f.medial);
        assert_eq!(f.homogeneous, Some(true));
        assert_eq!(r.simply_connected, Some(true));
        assert_eq!(r.levels.unwrap().multipermutation, Level::Finite(0));
    }
}
