//! Table and cocycle file formats.
//!
//! Tables are JSON `{"size": n, "table": [[...]]}` with `table[x][y] = x*y`, or
//! plain text: `n` on the first line followed by `n` rows. Cocycles are JSON
//! `{"base": <table or path>, "fiber": {...}, "values": n x n}` where values are
//! image arrays for permutation fibers and coordinate tuples for abelian ones.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::cover::{ConstantCocycle, Fiber};
use crate::error::{Error, Result};
use crate::fixtures;
use crate::permgroup::Permutation;
use crate::quasigroup::{AbelianGroup, LeftQuasigroup};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableFile {
    pub size: usize,
    pub table: Vec<Vec<usize>>,
}

impl TableFile {
    pub fn of(q: &LeftQuasigroup) -> Self {
        TableFile {
            size: q.size(),
            table: q.rows(),
        }
    }

    pub fn to_structure(&self) -> Result<LeftQuasigroup> {
        LeftQuasigroup::from_table(self.size, &self.table)
    }
}

/// Parses either format, deciding by the first non-blank character.
pub fn parse_table(text: &str) -> Result<LeftQuasigroup> {
    if text.trim_start().starts_with('{') {
        let file: TableFile = serde_json::from_str(text)?;
        return file.to_structure();
    }
    let mut numbers = text.split_whitespace().map(|w| {
        w.parse::<usize>()
            .map_err(|_| Error::Format(format!("expected a non-negative integer, found '{w}'")))
    });
    let n = numbers
        .next()
        .ok_or_else(|| Error::Format("empty table".into()))??;
    let entries: Vec<usize> = numbers.collect::<Result<_>>()?;
    if entries.len() != n * n {
        return Err(Error::BadShape(format!(
            "expected {} entries for size {n}, found {}",
            n * n,
            entries.len()
        )));
    }
    let rows: Vec<Vec<usize>> = entries.chunks(n.max(1)).map(<[usize]>::to_vec).collect();
    LeftQuasigroup::from_table(n, &rows)
}

pub fn table_json(q: &LeftQuasigroup) -> String {
    serde_json::to_string(&TableFile::of(q)).expect("plain data")
}

pub fn table_text(q: &LeftQuasigroup) -> String {
    let mut out = format!("{}\n", q.size());
    for row in q.rows() {
        let cells: Vec<String> = row.iter().map(usize::to_string).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    out
}

/// A table file path, or a fixture name such as `R3` or `P_4`.
pub fn load_structure(spec: &str) -> Result<LeftQuasigroup> {
    let path = Path::new(spec);
    if path.is_file() {
        parse_table(&std::fs::read_to_string(path)?)
    } else {
        fixtures::by_name(spec).map_err(|_| {
            Error::Format(format!(
                "'{spec}' is neither a readable file nor a fixture name"
            ))
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum FiberSpec {
    Perm { degree: usize },
    Abelian { moduli: Vec<u64> },
}

impl From<&Fiber> for FiberSpec {
    fn from(f: &Fiber) -> Self {
        match f {
            Fiber::Perm { degree } => FiberSpec::Perm { degree: *degree },
            Fiber::Abelian { moduli } => FiberSpec::Abelian {
                moduli: moduli.clone(),
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum BaseRef {
    Inline(TableFile),
    /// Path (relative to the cocycle file) or fixture name.
    Named(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CocycleFile {
    pub base: BaseRef,
    pub fiber: FiberSpec,
    pub values: Vec<Vec<Vec<u64>>>,
}

/// A base structure together with a cocycle on it.
#[derive(Clone, Debug)]
pub struct LoadedCocycle {
    pub base: LeftQuasigroup,
    pub cocycle: ConstantCocycle,
}

impl CocycleFile {
    pub fn of(base: &LeftQuasigroup, theta: &ConstantCocycle) -> Self {
        let fiber = FiberSpec::from(theta.fiber());
        let n = theta.base_size();
        let values = match (theta.fiber(), theta.element_rows()) {
            (Fiber::Abelian { moduli }, Some(rows)) => {
                let group = AbelianGroup::new(moduli).expect("validated on construction");
                rows.iter()
                    .map(|r| r.iter().map(|&t| group.decode(t)).collect())
                    .collect()
            }
            _ => (0..n)
                .map(|x| {
                    (0..n)
                        .map(|y| {
                            theta
                                .value(x, y)
                                .images()
                                .iter()
                                .map(|&i| i as u64)
                                .collect()
                        })
                        .collect()
                })
                .collect(),
        };
        CocycleFile {
            base: BaseRef::Inline(TableFile::of(base)),
            fiber,
            values,
        }
    }

    /// Resolves the base relative to `dir` and builds the cocycle.
    pub fn resolve(&self, dir: Option<&Path>) -> Result<LoadedCocycle> {
        let base = match &self.base {
            BaseRef::Inline(t) => t.to_structure()?,
            BaseRef::Named(name) => {
                let joined: PathBuf = dir.map_or_else(|| PathBuf::from(name), |d| d.join(name));
                if joined.is_file() {
                    parse_table(&std::fs::read_to_string(&joined)?)?
                } else {
                    load_structure(name)?
                }
            }
        };
        let n = base.size();
        if self.values.len() != n || self.values.iter().any(|r| r.len() != n) {
            return Err(Error::FiberMismatch(format!("values must be {n}x{n}")));
        }
        let cocycle = match &self.fiber {
            FiberSpec::Perm { degree } => {
                let rows = self
                    .values
                    .iter()
                    .map(|r| {
                        r.iter()
                            .map(|img| {
                                Permutation::from_images(img.iter().map(|&i| i as usize).collect())
                            })
                            .collect::<Result<Vec<_>>>()
                    })
                    .collect::<Result<Vec<_>>>()?;
                ConstantCocycle::from_perms(n, *degree, rows)?
            }
            FiberSpec::Abelian { moduli } => {
                let group = AbelianGroup::new(moduli)?;
                let rows = self
                    .values
                    .iter()
                    .map(|r| {
                        r.iter()
                            .map(|t| {
                                if t.len() != moduli.len()
                                    || t.iter().zip(moduli).any(|(a, m)| a >= m)
                                {
                                    Err(Error::FiberMismatch(format!(
                                        "tuple {t:?} is not an element of Z{moduli:?}"
                                    )))
                                } else {
                                    Ok(group.encode(t))
                                }
                            })
                            .collect::<Result<Vec<_>>>()
                    })
                    .collect::<Result<Vec<_>>>()?;
                ConstantCocycle::from_abelian(n, moduli, rows)?
            }
        };
        Ok(LoadedCocycle { base, cocycle })
    }
}

pub fn parse_cocycle(text: &str, dir: Option<&Path>) -> Result<LoadedCocycle> {
    let file: CocycleFile = serde_json::from_str(text)?;
    file.resolve(dir)
}

pub fn load_cocycle(path: &Path) -> Result<LoadedCocycle> {
    let text = std::fs::read_to_string(path)?;
    parse_cocycle(&text, path.parent())
}

pub fn cocycle_json(base: &LeftQuasigroup, theta: &ConstantCocycle) -> String {
    serde_json::to_string(&CocycleFile::of(base, theta)).expect("plain data")
}
