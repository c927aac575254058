//! The fiber part of a term evaluated in a covering extension.

use std::collections::HashMap;
use std::fmt;

use super::{for_each_assignment, holds, Compiled, Identity, Term};
use crate::cover::ConstantCocycle;
use crate::error::{Error, Result};
use crate::permgroup::Permutation;
use crate::quasigroup::LeftQuasigroup;

/// One factor `θ(left, right)` or its inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaFactor {
    pub left: Term,
    pub right: Term,
    pub inverse: bool,
}

/// A composition of factors; the last one is applied first.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ThetaExpr {
    pub factors: Vec<ThetaFactor>,
}

impl fmt::Display for ThetaExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        for (i, t) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, " o ")?;
            }
            write!(f, "θ({}, {})", t.left, t.right)?;
            if t.inverse {
                write!(f, "^-1")?;
            }
        }
        Ok(())
    }
}

/// `Θ_y = 1`, `Θ_{t*s} = θ(t,s) Θ_s`, `Θ_{t\s} = θ(t, t\s)⁻¹ Θ_s`.
pub fn theta_expr(t: &Term) -> ThetaExpr {
    let mut factors = Vec::new();
    let mut cur = t;
    loop {
        match cur {
            Term::Var(_) => break,
            Term::Mul(l, r) => {
                factors.push(ThetaFactor {
                    left: (**l).clone(),
                    right: (**r).clone(),
                    inverse: false,
                });
                cur = r;
            }
            Term::LDiv(l, r) => {
                factors.push(ThetaFactor {
                    left: (**l).clone(),
                    right: cur.clone(),
                    inverse: true,
                });
                cur = r;
            }
        }
    }
    ThetaExpr { factors }
}

/// Composes the factor values under a base assignment.
pub fn eval_theta(
    q: &LeftQuasigroup,
    theta: &ConstantCocycle,
    expr: &ThetaExpr,
    assignment: &HashMap<String, usize>,
) -> Result<Permutation> {
    theta.check_base(q)?;
    let mut acc = Permutation::identity(theta.fiber_size());
    for f in &expr.factors {
        let (a, b) = (f.left.eval(q, assignment)?, f.right.eval(q, assignment)?);
        let v = theta.value(a, b);
        let v = if f.inverse { v.inverse() } else { v.clone() };
        acc = acc.compose(&v);
    }
    Ok(acc)
}

struct CompiledTheta {
    factors: Vec<(Compiled, Compiled, bool)>,
}

impl CompiledTheta {
    fn new(expr: &ThetaExpr, vars: &[String]) -> Result<Self> {
        let factors = expr
            .factors
            .iter()
            .map(|f| Ok((f.left.compile(vars)?, f.right.compile(vars)?, f.inverse)))
            .collect::<Result<_>>()?;
        Ok(CompiledTheta { factors })
    }

    /// Image of `b` under the composition, innermost factor first.
    fn apply(
        &self,
        q: &LeftQuasigroup,
        theta: &ConstantCocycle,
        a: &[usize],
        mut b: usize,
    ) -> usize {
        for (l, r, inv) in self.factors.iter().rev() {
            let v = theta.value(l.eval(q, a), r.eval(q, a));
            b = if *inv {
                v.inverse().apply(b)
            } else {
                v.apply(b)
            };
        }
        b
    }
}

/// Whether `Q x_θ A` satisfies `id`, decided from `Q` and the Θ-expressions.
pub fn sat_in_cover(q: &LeftQuasigroup, theta: &ConstantCocycle, id: &Identity) -> Result<bool> {
    theta.check_base(q)?;
    let (rl, rr) = (id.lhs.rightmost(), id.rhs.rightmost());
    if rl != rr {
        return Err(Error::RightmostMismatch {
            lhs: rl.to_string(),
            rhs: rr.to_string(),
        });
    }
    if holds(q, id)?.is_some() {
        return Ok(false);
    }
    let vars = id.variables();
    let tl = CompiledTheta::new(&theta_expr(&id.lhs), &vars)?;
    let tr = CompiledTheta::new(&theta_expr(&id.rhs), &vars)?;
    let m = theta.fiber_size();
    let mut ok = true;
    for_each_assignment(q.size(), vars.len(), |a| {
        ok = (0..m).all(|b| tl.apply(q, theta, a, b) == tr.apply(q, theta, a, b));
        ok
    })?;
    Ok(ok)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover::{extend, Fiber};
    use crate::fixtures;
    use crate::terms::{satisfies, symmetric};

    fn q3_z4() -> ConstantCocycle {
        let mut v = vec![vec![0; 3]; 3];
        v[0][2] = 1;
        ConstantCocycle::from_abelian(3, &[4], v).unwrap()
    }

    #[test]
    fn examples_of_expressions() {
        let t = Term::parse("x*x*x*y").unwrap();
        assert_eq!(
            theta_expr(&t).to_string(),
            "θ(x, x*x*y) o θ(x, x*y) o θ(x, y)"
        );
        let t = Term::parse("(x*y)*(z*w)").unwrap();
        assert_eq!(theta_expr(&t).to_string(), "θ(x*y, z*w) o θ(z, w)");
        assert_eq!(theta_expr(&Term::var("y")).to_string(), "1");
        let t = Term::parse("x\\y").unwrap();
        assert_eq!(theta_expr(&t).to_string(), "θ(x, x\\y)^-1");
    }

    #[test]
    fn term_splits_on_a_fixed_instance() {
        let q = fixtures::q3();
        let theta = q3_z4();
        let c = extend(&q, &theta).unwrap();
        let t = Term::parse("x\\(y*z)*x").unwrap();
        let expr = theta_expr(&t);
        for code in 0..12usize.pow(3) {
            let e = [code % 12, (code / 12) % 12, code / 144];
            let total: HashMap<String, usize> = ["x", "y", "z"]
                .iter()
                .map(|s| s.to_string())
                .zip(e)
                .collect();
            let base: HashMap<String, usize> =
                total.iter().map(|(k, &v)| (k.clone(), v / 4)).collect();
            let got = t.eval(&c.total, &total).unwrap();
            let want_base = t.eval(&q, &base).unwrap();
            let fiber = eval_theta(&q, &theta, &expr, &base)
                .unwrap()
                .apply(total["x"] % 4);
            assert_eq!(got, c.index(want_base, fiber));
        }
    }

    #[test]
    fn q3_z4_symmetry() {
        let q = fixtures::q3();
        let theta = q3_z4();
        let c = extend(&q, &theta).unwrap();
        for n in 1..8 {
            assert!(!sat_in_cover(&q, &theta, &symmetric(n)).unwrap(), "{n}");
        }
        assert!(sat_in_cover(&q, &theta, &symmetric(8)).unwrap());
        assert!(satisfies(&c.total, &symmetric(8)).unwrap());
        assert!(!satisfies(&c.total, &symmetric(4)).unwrap());
    }

    #[test]
    fn trivial_cocycle_keeps_identities() {
        let q = fixtures::q4();
        let t = ConstantCocycle::trivial(4, Fiber::Perm { degree: 3 }).unwrap();
        for id in [
            symmetric(3),
            crate::terms::ababab(),
            crate::terms::medial_inner(),
        ] {
            assert!(sat_in_cover(&q, &t, &id).unwrap());
        }
    }

    #[test]
    fn rightmost_mismatch() {
        let q = fixtures::q4();
        let t = ConstantCocycle::trivial(4, Fiber::cyclic(2)).unwrap();
        let id = Identity::parse("x*y = y*x").unwrap();
        assert!(matches!(
            sat_in_cover(&q, &t, &id),
            Err(Error::RightmostMismatch { .. })
        ));
    }
}
