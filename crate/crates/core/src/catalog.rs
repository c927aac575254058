//! Every labelled rack on a small set, found by choosing each row from `S_n`.

use crate::error::{Error, Result};
use crate::quasigroup::LeftQuasigroup;

/// Largest size the catalog enumerates (24⁴ candidate tables at size 4).
pub const CATALOG_CAP: usize = 4;

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..n {
            let mut v = p.clone();
            v.insert(i, n - 1);
            out.push(v);
        }
    }
    out.sort();
    out
}

/// All racks on `{0..n-1}` in lexicographic order of their tables.
pub fn racks(n: usize) -> Result<Vec<LeftQuasigroup>> {
    if n == 0 || n > CATALOG_CAP {
        return Err(Error::CapExceeded {
            what: "catalog size",
            cap: CATALOG_CAP,
        });
    }
    let perms = permutations(n);
    let mut choice = vec![0usize; n];
    let mut out = Vec::new();
    loop {
        let rows: Vec<&[usize]> = choice.iter().map(|&i| perms[i].as_slice()).collect();
        let distributive = (0..n).all(|x| {
            (0..n).all(|y| (0..n).all(|z| rows[x][rows[y][z]] == rows[rows[x][y]][rows[x][z]]))
        });
        if distributive {
            let table: Vec<Vec<usize>> = rows.iter().map(|r| r.to_vec()).collect();
            out.push(LeftQuasigroup::from_table(n, &table)?);
        }
        let mut k = n;
        loop {
            if k == 0 {
                return Ok(out);
            }
            k -= 1;
            choice[k] += 1;
            if choice[k] < perms.len() {
                break;
            }
            choice[k] = 0;
        }
    }
}

/// All racks of sizes `1..=n`.
pub fn racks_up_to(n: usize) -> Result<Vec<LeftQuasigroup>> {
    let mut out = Vec::new();
    for k in 1..=n {
        out.extend(racks(k)?);
    }
    Ok(out)
}
