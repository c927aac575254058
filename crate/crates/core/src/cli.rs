//! Command-line front end.
//!
//! Exit codes: 0 success or true, 1 false or a property fails, 2 input error,
//! 3 indeterminate (a search or enumeration hit its cap).

use std::io::Write;
use std::ops::ControlFlow;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use crate::adjoint::{self, Verdict};
use crate::analysis::{self, is_central, is_normal_extension, is_strongly_abelian};
use crate::congruence::{self, all_congruences, Partition};
use crate::cover::{self, extend, CocycleKind, ConstantCocycle};
use crate::error::{Error, Result};
use crate::fixtures;
use crate::io::{self, CocycleFile, TableFile};
use crate::quasigroup::LeftQuasigroup;
use crate::terms::{self, sat_in_cover, Identity};

pub const EXIT_TRUE: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_INDETERMINATE: i32 = 3;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "rackcov",
    version,
    about = "Finite racks, quandles and their covering extensions"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a table and print its rack and quandle flags.
    Validate { table: String },
    /// Full structural report.
    Report { table: String },
    /// Quotient by lambda, sigma, ip or a partition file (JSON block-id array).
    Quotient {
        table: String,
        #[arg(long, default_value = "lambda")]
        by: String,
    },
    /// Build the covering extension of a table by a cocycle file.
    Extend { table: String, cocycle: PathBuf },
    /// Check an identity (`lhs = rhs` or a builtin name) in a table or, with --cocycle, in its cover.
    CheckIdentity {
        table: String,
        identity: String,
        #[arg(long)]
        cocycle: Option<PathBuf>,
    },
    /// List every congruence with its strongly abelian and central verdicts.
    Congruences { table: String },
    /// Decide simple connectedness by coset enumeration.
    SimplyConnected {
        table: String,
        #[arg(long, default_value_t = adjoint::COSET_CAP)]
        cap: usize,
    },
    /// Decide whether two cocycle files on the same base are cohomologous.
    Cohomologous { first: PathBuf, second: PathBuf },
    /// Enumerate abelian cocycles in lexicographic order and report the first matching cover.
    SearchCover {
        table: String,
        /// Fiber such as `z2`, `z4` or `z2xz2`.
        #[arg(long)]
        fiber: String,
        /// Keep only connected covers.
        #[arg(long)]
        connected: bool,
        /// Keep covers that fail this identity (repeatable).
        #[arg(long)]
        fails: Vec<String>,
        /// Keep covers that satisfy this identity (repeatable).
        #[arg(long)]
        holds: Vec<String>,
        /// Enumerate rack cocycles instead of quandle cocycles.
        #[arg(long)]
        rack: bool,
    },
    /// Seeded random check that extensions are racks exactly for rack cocycles
    /// and that cover identities agree with brute force.
    Sweep {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        count: usize,
    },
}

/// Result of a subcommand before rendering: exit code plus JSON and text forms.
struct Output {
    code: i32,
    json: serde_json::Value,
    text: String,
}

impl Output {
    fn new(code: i32, json: serde_json::Value, text: impl Into<String>) -> Self {
        Output {
            code,
            json,
            text: text.into(),
        }
    }
}

fn code_of(b: bool) -> i32 {
    if b {
        EXIT_TRUE
    } else {
        EXIT_FALSE
    }
}

/// Parses `argv` (including the program name) and runs one subcommand.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let shown = matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            let sink: &mut dyn Write = if shown { out } else { err };
            let _ = write!(sink, "{}", e.render());
            return if shown { EXIT_TRUE } else { EXIT_INPUT };
        }
    };
    match execute(&cli.command) {
        Ok(o) => {
            let _ = match cli.format {
                Format::Json => writeln!(out, "{}", o.json),
                Format::Text => write!(out, "{}", o.text),
            };
            o.code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::CapExceeded { .. } => EXIT_INDETERMINATE,
                _ => EXIT_INPUT,
            }
        }
    }
}

fn execute(cmd: &Command) -> Result<Output> {
    match cmd {
        Command::Validate { table } => validate(table),
        Command::Report { table } => {
            let r = analysis::report(&io::load_structure(table)?)?;
            Ok(Output::new(
                EXIT_TRUE,
                serde_json::to_value(&r)?,
                r.to_string(),
            ))
        }
        Command::Quotient { table, by } => quotient(table, by),
        Command::Extend { table, cocycle } => extend_cmd(table, cocycle),
        Command::CheckIdentity {
            table,
            identity,
            cocycle,
        } => check_identity(table, identity, cocycle.as_ref()),
        Command::Congruences { table } => congruences(table),
        Command::SimplyConnected { table, cap } => simply_connected(table, *cap),
        Command::Cohomologous { first, second } => cohomologous(first, second),
        Command::SearchCover {
            table,
            fiber,
            connected,
            fails,
            holds,
            rack,
        } => search_cover(table, fiber, *connected, fails, holds, *rack),
        Command::Sweep { seed, count } => sweep(*seed, *count),
    }
}

fn validate(spec: &str) -> Result<Output> {
    let q = match io::load_structure(spec) {
        Ok(q) => q,
        Err(e @ (Error::NotLeftQuasigroup { .. } | Error::BadShape(_))) => {
            let msg = e.to_string();
            return Ok(Output::new(
                EXIT_FALSE,
                json!({"valid": false, "reason": msg}),
                format!("invalid: {msg}\n"),
            ));
        }
        Err(e) => return Err(e),
    };
    let (rack, quandle) = (q.is_rack(), q.is_quandle());
    Ok(Output::new(
        EXIT_TRUE,
        json!({"valid": true, "size": q.size(), "rack": rack, "quandle": quandle}),
        format!(
            "valid left quasigroup of size {}\nrack: {}\nquandle: {}\n",
            q.size(),
            rack,
            quandle
        ),
    ))
}

fn named_partition(q: &LeftQuasigroup, by: &str) -> Result<Partition> {
    match by {
        "lambda" => Ok(congruence::lambda(q)),
        "sigma" => congruence::sigma(q),
        "ip" => Ok(congruence::ip(q)),
        path => {
            let labels: Vec<usize> = serde_json::from_str(&std::fs::read_to_string(path)?)?;
            if labels.len() != q.size() {
                return Err(Error::BadShape(format!(
                    "partition of {} points for a structure of size {}",
                    labels.len(),
                    q.size()
                )));
            }
            Ok(Partition::from_labels(&labels))
        }
    }
}

fn quotient(spec: &str, by: &str) -> Result<Output> {
    let q = io::load_structure(spec)?;
    let alpha = named_partition(&q, by)?;
    match congruence::quotient(&q, &alpha) {
        Ok(quo) => Ok(Output::new(
            EXIT_TRUE,
            json!({
                "partition": alpha,
                "projection": quo.projection,
                "quotient": TableFile::of(&quo.structure),
            }),
            format!("partition {alpha}\n{}", io::table_text(&quo.structure)),
        )),
        Err(Error::NotACongruence) => Ok(Output::new(
            EXIT_FALSE,
            json!({"partition": alpha, "congruence": false}),
            format!("{alpha} is not a congruence\n"),
        )),
        Err(e) => Err(e),
    }
}

fn load_cocycle_on(spec: &str, path: &Path) -> Result<(LeftQuasigroup, ConstantCocycle)> {
    let q = io::load_structure(spec)?;
    let loaded = io::load_cocycle(path)?;
    if loaded.base != q {
        return Err(Error::FiberMismatch(
            "cocycle file is defined over a different base table".into(),
        ));
    }
    Ok((q, loaded.cocycle))
}

fn extend_cmd(spec: &str, path: &Path) -> Result<Output> {
    let (q, theta) = load_cocycle_on(spec, path)?;
    let e = extend(&q, &theta)?;
    let rack = e.total.is_rack();
    Ok(Output::new(
        EXIT_TRUE,
        json!({
            "cover": TableFile::of(&e.total),
            "rack": rack,
            "quandle": e.total.is_quandle(),
            "projection": e.projection,
        }),
        io::table_text(&e.total),
    ))
}

fn check_identity(spec: &str, identity: &str, cocycle: Option<&PathBuf>) -> Result<Output> {
    let id = Identity::from_spec(identity)?;
    match cocycle {
        None => {
            let q = io::load_structure(spec)?;
            let cex = terms::holds(&q, &id)?;
            let text = match &cex {
                None => format!("holds: {id}\n"),
                Some(c) => format!("fails: {id}\ncounterexample: {c}\n"),
            };
            let json = json!({
                "identity": id.to_string(),
                "holds": cex.is_none(),
                "counterexample": cex.as_ref().map(|c| json!({
                    "assignment": c.assignment.iter()
                        .map(|(v, x)| (v.clone(), json!(x)))
                        .collect::<serde_json::Map<_, _>>(),
                    "lhs": c.lhs,
                    "rhs": c.rhs,
                })),
            });
            Ok(Output::new(code_of(cex.is_none()), json, text))
        }
        Some(path) => {
            let (q, theta) = load_cocycle_on(spec, path)?;
            let ok = sat_in_cover(&q, &theta, &id)?;
            Ok(Output::new(
                code_of(ok),
                json!({"identity": id.to_string(), "holds_in_cover": ok}),
                format!("{} in cover: {id}\n", if ok { "holds" } else { "fails" }),
            ))
        }
    }
}

fn congruences(spec: &str) -> Result<Output> {
    let q = io::load_structure(spec)?;
    let mut rows = Vec::new();
    let mut text = String::new();
    for alpha in all_congruences(&q)? {
        let sa = is_strongly_abelian(&q, &alpha)?;
        let central = if q.is_rack() {
            Some(is_central(&q, &alpha)?)
        } else {
            None
        };
        let normal = if q.is_quandle() {
            Some(is_normal_extension(&q, &alpha)?)
        } else {
            None
        };
        let flag = |b: Option<bool>| b.map_or("-", |b| if b { "yes" } else { "no" });
        text.push_str(&format!(
            "{alpha}  strongly_abelian={} central={} normal={}\n",
            flag(Some(sa)),
            flag(central),
            flag(normal)
        ));
        rows.push(json!({
            "partition": alpha,
            "strongly_abelian": sa,
            "central": central,
            "normal": normal,
        }));
    }
    Ok(Output::new(EXIT_TRUE, json!({"congruences": rows}), text))
}

fn simply_connected(spec: &str, cap: usize) -> Result<Output> {
    let q = io::load_structure(spec)?;
    match adjoint::simply_connected_report(&q, cap) {
        Ok(r) => {
            let code = match r.verdict {
                Verdict::Yes => EXIT_TRUE,
                Verdict::No => EXIT_FALSE,
                Verdict::Indeterminate => EXIT_INDETERMINATE,
            };
            let adj0 = r
                .adj0_order
                .map_or("indeterminate".to_string(), |k| k.to_string());
            let text = format!(
                "|Adj0| = {adj0}\n|Dis| = {}\n|Q| = {}\nsimply connected: {}\n",
                r.dis_order,
                r.size,
                serde_json::to_value(r.verdict)?
                    .as_str()
                    .unwrap_or_default()
            );
            Ok(Output::new(code, serde_json::to_value(&r)?, text))
        }
        Err(Error::NotConnected) => Ok(Output::new(
            EXIT_FALSE,
            json!({"size": q.size(), "connected": false, "verdict": "no"}),
            "not connected, hence not simply connected\n",
        )),
        Err(e) => Err(e),
    }
}

fn cohomologous(first: &Path, second: &Path) -> Result<Output> {
    let a = io::load_cocycle(first)?;
    let b = io::load_cocycle(second)?;
    if a.base != b.base {
        return Err(Error::FiberMismatch(
            "cocycles live on different bases".into(),
        ));
    }
    let gamma = cover::are_cohomologous(&a.base, &a.cocycle, &b.cocycle)?;
    let images: Option<Vec<Vec<usize>>> = gamma
        .as_ref()
        .map(|g| g.iter().map(|p| p.images()).collect());
    let text = match &images {
        Some(g) => format!("cohomologous\ngamma: {g:?}\n"),
        None => "not cohomologous\n".to_string(),
    };
    Ok(Output::new(
        code_of(gamma.is_some()),
        json!({"cohomologous": gamma.is_some(), "gamma": images}),
        text,
    ))
}

/// `z4` -> `[4]`, `z2xz2` -> `[2, 2]`.
pub fn parse_fiber(spec: &str) -> Result<Vec<u64>> {
    let bad = || Error::Format(format!("fiber '{spec}' is not of the form zM or zMxzN"));
    spec.split('x')
        .map(|part| {
            part.trim()
                .strip_prefix(['z', 'Z'])
                .and_then(|m| m.parse::<u64>().ok())
                .filter(|&m| m > 0)
                .ok_or_else(bad)
        })
        .collect()
}

#[derive(Serialize)]
struct SearchSummary {
    candidates: usize,
    matches: usize,
    first: Option<serde_json::Value>,
}

fn search_cover(
    spec: &str,
    fiber: &str,
    connected: bool,
    fails: &[String],
    holds: &[String],
    rack: bool,
) -> Result<Output> {
    let q = io::load_structure(spec)?;
    let moduli = parse_fiber(fiber)?;
    let fails: Vec<Identity> = fails
        .iter()
        .map(|s| Identity::from_spec(s))
        .collect::<Result<_>>()?;
    let holds: Vec<Identity> = holds
        .iter()
        .map(|s| Identity::from_spec(s))
        .collect::<Result<_>>()?;
    let kind = if rack {
        CocycleKind::Rack
    } else {
        CocycleKind::Quandle
    };
    let mut candidates = 0;
    let mut matches = 0;
    let mut first: Option<(ConstantCocycle, LeftQuasigroup)> = None;
    let mut failure: Option<Error> = None;
    cover::for_each_abelian_cocycle(&q, &moduli, kind, |rows| {
        candidates += 1;
        let step = || -> Result<Option<(ConstantCocycle, LeftQuasigroup)>> {
            let theta = ConstantCocycle::from_abelian(q.size(), &moduli, rows)?;
            let e = extend(&q, &theta)?.total;
            if connected && !analysis::is_connected(&e) {
                return Ok(None);
            }
            for id in &fails {
                if terms::satisfies(&e, id)? {
                    return Ok(None);
                }
            }
            for id in &holds {
                if !terms::satisfies(&e, id)? {
                    return Ok(None);
                }
            }
            Ok(Some((theta, e)))
        };
        match step() {
            Ok(Some(found)) => {
                matches += 1;
                if first.is_none() {
                    first = Some(found);
                }
                ControlFlow::Continue(())
            }
            Ok(None) => ControlFlow::Continue(()),
            Err(e) => {
                failure = Some(e);
                ControlFlow::Break(())
            }
        }
    })?;
    if let Some(e) = failure {
        return Err(e);
    }
    let mut text = format!("candidates: {candidates}\nmatches: {matches}\n");
    if let Some((_, e)) = &first {
        text.push_str(&format!(
            "first cover ({} elements):\n{}",
            e.size(),
            io::table_text(e)
        ));
    }
    let summary = SearchSummary {
        candidates,
        matches,
        first: first.as_ref().map(|(theta, e)| {
            json!({
                "cocycle": CocycleFile::of(&q, theta),
                "cover": TableFile::of(e),
            })
        }),
    };
    Ok(Output::new(
        code_of(matches > 0),
        serde_json::to_value(summary)?,
        text,
    ))
}

fn sweep(seed: u64, count: usize) -> Result<Output> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let bases = [
        fixtures::q3(),
        fixtures::r3(),
        fixtures::q4(),
        fixtures::cyclic(3),
        fixtures::projection(2),
        fixtures::t6(),
    ];
    let identities = [
        terms::symmetric(2),
        terms::medial(),
        terms::reductive(2),
        Identity::from_spec("xyyxy")?,
    ];
    let mut disagreements = Vec::new();
    for i in 0..count {
        let q = &bases[rng.gen_range(0..bases.len())];
        let m = rng.gen_range(1..=3);
        let theta = if rng.gen_bool(0.5) {
            ConstantCocycle::random(q.size(), m, &mut rng)
        } else {
            ConstantCocycle::random_coboundary(q, m, &mut rng)
        };
        let e = extend(q, &theta)?.total;
        if e.is_rack() != cover::is_rack_cocycle(q, &theta) {
            disagreements.push(format!(
                "instance {i}: rack test disagrees with cocycle condition"
            ));
        }
        if cover::is_rack_cocycle(q, &theta) {
            let id = &identities[rng.gen_range(0..identities.len())];
            let direct = terms::satisfies(&e, id)?;
            if sat_in_cover(q, &theta, id)? != direct {
                disagreements.push(format!("instance {i}: {id} disagrees in cover"));
            }
        }
    }
    let mut text = format!(
        "seed {seed}: {count} instances, {} disagreements\n",
        disagreements.len()
    );
    for d in &disagreements {
        text.push_str(d);
        text.push('\n');
    }
    Ok(Output::new(
        code_of(disagreements.is_empty()),
        json!({"seed": seed, "instances": count, "disagreements": disagreements}),
        text,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("rackcov").chain(args.iter().copied());
        let code = run_with(argv, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn fiber_specs() {
        assert_eq!(parse_fiber("z4").unwrap(), vec![4]);
        assert_eq!(parse_fiber("z2xz3").unwrap(), vec![2, 3]);
        assert!(parse_fiber("q4").is_err());
        assert!(parse_fiber("z0").is_err());
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run_capture(&["validate", "R3"]).0, EXIT_TRUE);
        assert_eq!(
            run_capture(&["check-identity", "Q4", "x*y*y*x*y = y"]).0,
            EXIT_TRUE
        );
        assert_eq!(
            run_capture(&["check-identity", "Q4", "symmetric(2)"]).0,
            EXIT_FALSE
        );
        assert_eq!(
            run_capture(&["check-identity", "nope", "medial"]).0,
            EXIT_INPUT
        );
        assert_eq!(
            run_capture(&["check-identity", "Q4", "x*y = "]).0,
            EXIT_INPUT
        );
        assert_eq!(run_capture(&["simply-connected", "R3"]).0, EXIT_TRUE);
        assert_eq!(run_capture(&["simply-connected", "Q3"]).0, EXIT_FALSE);
        assert_eq!(run_capture(&["bogus"]).0, EXIT_INPUT);
        assert_eq!(run_capture(&["--help"]).0, EXIT_TRUE);
    }

    #[test]
    fn json_report() {
        let (code, out, _) = run_capture(&["report", "R3", "--format", "json"]);
        assert_eq!(code, EXIT_TRUE);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["simply_connected"], json!(true));
    }

    #[test]
    fn quotient_by_lambda() {
        let (code, out, _) = run_capture(&["quotient", "Q3", "--by", "lambda", "--format", "json"]);
        assert_eq!(code, EXIT_TRUE);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["quotient"]["size"], json!(2));
    }

    #[test]
    fn sweep_is_clean_and_deterministic() {
        let a = run_capture(&["sweep", "--seed", "7", "--count", "50"]);
        let b = run_capture(&["sweep", "--seed", "7", "--count", "50"]);
        assert_eq!(a.0, EXIT_TRUE);
        assert_eq!(a.1, b.1);
    }
}
