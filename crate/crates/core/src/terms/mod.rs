//! Terms over `*` and `\`, identities, and their satisfaction in finite structures.

mod parse;
mod theta;

use std::collections::HashMap;
use std::fmt;

pub use parse::{parse_identity, parse_term};
pub use theta::{eval_theta, sat_in_cover, theta_expr, ThetaExpr, ThetaFactor};

use crate::error::{Error, Result};
use crate::quasigroup::LeftQuasigroup;

/// Upper bound on `|Q|^k` assignments tried by [`holds`].
pub const ASSIGNMENT_CAP: u128 = 10_000_000;

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Var(String),
    Mul(Box<Term>, Box<Term>),
    LDiv(Box<Term>, Box<Term>),
}

impl Term {
    pub fn var(name: &str) -> Term {
        Term::Var(name.to_string())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn mul(l: Term, r: Term) -> Term {
        Term::Mul(Box::new(l), Box::new(r))
    }

    pub fn ldiv(l: Term, r: Term) -> Term {
        Term::LDiv(Box::new(l), Box::new(r))
    }

    pub fn parse(text: &str) -> Result<Term> {
        parse_term(text)
    }

    /// Variables in order of first occurrence.
    pub fn variables(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut Vec<String>) {
        match self {
            Term::Var(v) => {
                if !out.contains(v) {
                    out.push(v.clone());
                }
            }
            Term::Mul(l, r) | Term::LDiv(l, r) => {
                l.collect_vars(out);
                r.collect_vars(out);
            }
        }
    }

    pub fn contains_var(&self, name: &str) -> bool {
        match self {
            Term::Var(v) => v == name,
            Term::Mul(l, r) | Term::LDiv(l, r) => l.contains_var(name) || r.contains_var(name),
        }
    }

    pub fn rightmost(&self) -> &str {
        match self {
            Term::Var(v) => v,
            Term::Mul(_, r) | Term::LDiv(_, r) => r.rightmost(),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Term::Var(_) => 0,
            Term::Mul(l, r) | Term::LDiv(l, r) => 1 + l.depth().max(r.depth()),
        }
    }

    pub fn eval(&self, q: &LeftQuasigroup, assignment: &HashMap<String, usize>) -> Result<usize> {
        match self {
            Term::Var(v) => assignment
                .get(v)
                .copied()
                .ok_or_else(|| Error::UnboundVariable(v.clone())),
            Term::Mul(l, r) => Ok(q.mul(l.eval(q, assignment)?, r.eval(q, assignment)?)),
            Term::LDiv(l, r) => Ok(q.ldiv(l.eval(q, assignment)?, r.eval(q, assignment)?)),
        }
    }

    pub(crate) fn compile(&self, vars: &[String]) -> Result<Compiled> {
        Ok(match self {
            Term::Var(v) => Compiled::Var(
                vars.iter()
                    .position(|w| w == v)
                    .ok_or_else(|| Error::UnboundVariable(v.clone()))?,
            ),
            Term::Mul(l, r) => {
                Compiled::Mul(Box::new(l.compile(vars)?), Box::new(r.compile(vars)?))
            }
            Term::LDiv(l, r) => {
                Compiled::LDiv(Box::new(l.compile(vars)?), Box::new(r.compile(vars)?))
            }
        })
    }
}

impl fmt::Display for Term {
    /// Minimal parentheses under right association.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (l, op, r) = match self {
            Term::Var(v) => return write!(f, "{v}"),
            Term::Mul(l, r) => (l, '*', r),
            Term::LDiv(l, r) => (l, '\\', r),
        };
        match **l {
            Term::Var(_) => write!(f, "{l}{op}{r}"),
            _ => write!(f, "({l}){op}{r}"),
        }
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A term with variables replaced by positions.
#[derive(Clone, Debug)]
pub(crate) enum Compiled {
    Var(usize),
    Mul(Box<Compiled>, Box<Compiled>),
    LDiv(Box<Compiled>, Box<Compiled>),
}

impl Compiled {
    pub fn eval(&self, q: &LeftQuasigroup, a: &[usize]) -> usize {
        match self {
            Compiled::Var(i) => a[*i],
            Compiled::Mul(l, r) => q.mul(l.eval(q, a), r.eval(q, a)),
            Compiled::LDiv(l, r) => q.ldiv(l.eval(q, a), r.eval(q, a)),
        }
    }
}

/// An equation `lhs = rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Identity {
    pub lhs: Term,
    pub rhs: Term,
}

impl Identity {
    pub fn parse(text: &str) -> Result<Identity> {
        parse_identity(text)
    }

    /// A builtin name such as `medial` or `symmetric(3)`, or an explicit `lhs = rhs`.
    pub fn from_spec(text: &str) -> Result<Identity> {
        if text.contains('=') {
            parse_identity(text)
        } else {
            builtin_by_name(text.trim())
        }
    }

    pub fn variables(&self) -> Vec<String> {
        let mut vars = self.lhs.variables();
        for v in self.rhs.variables() {
            if !vars.contains(&v) {
                vars.push(v);
            }
        }
        vars
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}

/// An assignment under which the two sides differ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub assignment: Vec<(String, usize)>,
    pub lhs: usize,
    pub rhs: usize,
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .assignment
            .iter()
            .map(|(v, x)| format!("{v}={x}"))
            .collect();
        write!(f, "{} gives {} != {}", parts.join(", "), self.lhs, self.rhs)
    }
}

/// Runs `visit` on every assignment `vars -> Q` in lexicographic order until it returns `false`.
pub(crate) fn for_each_assignment(
    n: usize,
    k: usize,
    mut visit: impl FnMut(&[usize]) -> bool,
) -> Result<()> {
    let total = (n as u128).checked_pow(k as u32).unwrap_or(u128::MAX);
    if total > ASSIGNMENT_CAP {
        return Err(Error::CapExceeded {
            what: "identity assignments",
            cap: ASSIGNMENT_CAP as usize,
        });
    }
    let mut a = vec![0; k];
    loop {
        if !visit(&a) {
            return Ok(());
        }
        let mut i = k;
        loop {
            if i == 0 {
                return Ok(());
            }
            i -= 1;
            a[i] += 1;
            if a[i] < n {
                break;
            }
            a[i] = 0;
        }
    }
}

/// `Ok(None)` when the identity holds, else the first counterexample.
pub fn holds(q: &LeftQuasigroup, id: &Identity) -> Result<Option<Counterexample>> {
    let vars = id.variables();
    let (l, r) = (id.lhs.compile(&vars)?, id.rhs.compile(&vars)?);
    let mut found = None;
    for_each_assignment(q.size(), vars.len(), |a| {
        let (x, y) = (l.eval(q, a), r.eval(q, a));
        if x != y {
            found = Some(Counterexample {
                assignment: vars.iter().cloned().zip(a.iter().copied()).collect(),
                lhs: x,
                rhs: y,
            });
            return false;
        }
        true
    })?;
    Ok(found)
}

pub fn satisfies(q: &LeftQuasigroup, id: &Identity) -> Result<bool> {
    Ok(holds(q, id)?.is_none())
}

fn right_chain(vars: &[&str], ops: &[char], last: &str) -> Term {
    let mut t = Term::var(last);
    for (v, op) in vars.iter().zip(ops).rev() {
        t = if *op == '*' {
            Term::mul(Term::var(v), t)
        } else {
            Term::ldiv(Term::var(v), t)
        };
    }
    t
}

/// `x*x*...*x*y = y` with `n` copies of `x`.
pub fn symmetric(n: usize) -> Identity {
    let xs = vec!["x"; n];
    Identity {
        lhs: right_chain(&xs, &vec!['*'; n], "y"),
        rhs: Term::var("y"),
    }
}

/// `(...((u*x1)*x2)...)*xn = (...((v*x1)*x2)...)*xn`.
pub fn reductive(n: usize) -> Identity {
    let side = |start: &str| {
        (1..=n).fold(Term::var(start), |t, i| {
            Term::mul(t, Term::var(&format!("x{i}")))
        })
    };
    Identity {
        lhs: side("u"),
        rhs: side("v"),
    }
}

pub fn medial() -> Identity {
    parse_identity("(x*y)*(u*v) = (x*u)*(y*v)").expect("builtin")
}

pub fn medial_inner() -> Identity {
    parse_identity("x*y\\u*v\\y*x\\v*u\\z = z").expect("builtin")
}

pub fn ababab() -> Identity {
    parse_identity("x*y*x*y*x*y*z = z").expect("builtin")
}

/// Builtins by name: `symmetric(n)`, `reductive(n)`, `medial`, `medial_inner`,
/// `ababab`, and the two-variable laws `xyyxy` and `xyxyxy`.
pub fn builtin(name: &str, param: Option<usize>) -> Result<Identity> {
    let unknown = || Error::UnknownIdentity(name.to_string());
    match (name, param) {
        ("symmetric", Some(n)) if n > 0 => Ok(symmetric(n)),
        ("reductive", Some(n)) if n > 0 => Ok(reductive(n)),
        ("medial", None) => Ok(medial()),
        ("medial_inner", None) => Ok(medial_inner()),
        ("ababab", None) => Ok(ababab()),
        ("xyyxy", None) => parse_identity("x*y*y*x*y = y"),
        ("xyxyxy", None) => parse_identity("x*y*x*y*x*y = y"),
        _ => Err(unknown()),
    }
}

/// Parses `name` or `name(n)`.
pub fn builtin_by_name(spec: &str) -> Result<Identity> {
    let unknown = || Error::UnknownIdentity(spec.to_string());
    match spec.split_once('(') {
        Some((name, rest)) => {
            let n = rest
                .strip_suffix(')')
                .and_then(|s| s.trim().parse().ok())
                .ok_or_else(unknown)?;
            builtin(name.trim(), Some(n)).map_err(|_| unknown())
        }
        None => builtin(spec, None),
    }
}

/// `z1 • z2 • ... • zm • y = y` with each `zi` a variable other than `y`.
pub fn is_inner(id: &Identity) -> bool {
    fn chain_to(t: &Term, y: &str) -> bool {
        match t {
            Term::Var(v) => v == y,
            Term::Mul(l, r) | Term::LDiv(l, r) => {
                matches!(&**l, Term::Var(z) if z != y) && chain_to(r, y)
            }
        }
    }
    match (&id.lhs, &id.rhs) {
        (t, Term::Var(y)) if chain_to(t, y) => true,
        (Term::Var(y), t) => chain_to(t, y),
        _ => false,
    }
}

/// For an inner identity `t = y`: whether every choice of the other variables
/// leaves `t(.., b) = b` for some `b`.
pub fn inner_fixed_point_hypothesis(e: &LeftQuasigroup, id: &Identity) -> Result<bool> {
    if !is_inner(id) {
        return Err(Error::PreconditionFailed("identity is not inner".into()));
    }
    let (t, y) = match (&id.lhs, &id.rhs) {
        (t, Term::Var(y)) if !matches!(t, Term::Var(_)) => (t, y.clone()),
        (Term::Var(y), t) => (t, y.clone()),
        (t, Term::Var(y)) => (t, y.clone()),
        _ => unreachable!("inner identities have a variable side"),
    };
    let mut vars: Vec<String> = t.variables().into_iter().filter(|v| *v != y).collect();
    vars.push(y);
    let c = t.compile(&vars)?;
    let k = vars.len() - 1;
    let mut ok = true;
    let mut a = vec![0; k + 1];
    for_each_assignment(e.size(), k, |xs| {
        a[..k].copy_from_slice(xs);
        let fixed = (0..e.size()).any(|b| {
            a[k] = b;
            c.eval(e, &a) == b
        });
        ok = fixed;
        fixed
    })?;
    Ok(ok)
}
