//! Named small structures.

use crate::error::{Error, Result};
use crate::permgroup::Permutation;
use crate::quasigroup::LeftQuasigroup;

/// The 3-element 2-symmetric quandle with `L_1 = L_2 = id` and `L_0 = (1 2)`.
pub fn q3() -> LeftQuasigroup {
    LeftQuasigroup::from_table(3, &[vec![0, 2, 1], vec![0, 1, 2], vec![0, 1, 2]])
        .expect("valid table")
}

pub fn r3() -> LeftQuasigroup {
    LeftQuasigroup::dihedral(3)
}

pub fn r5() -> LeftQuasigroup {
    LeftQuasigroup::dihedral(5)
}

/// `Aff(Z_2^2, f)` with `f = [[0,1],[1,1]]`, the connected quandle of order 4.
pub fn q4() -> LeftQuasigroup {
    LeftQuasigroup::affine(&[2, 2], &[vec![0, 1], vec![1, 1]]).expect("invertible matrix")
}

/// `Aff(Z_n, k)`.
pub fn affine_cyclic(n: u64, k: i64) -> Result<LeftQuasigroup> {
    LeftQuasigroup::affine(&[n], &[vec![k]])
}

pub fn projection(n: usize) -> LeftQuasigroup {
    LeftQuasigroup::projection(n)
}

pub fn cyclic(n: usize) -> LeftQuasigroup {
    LeftQuasigroup::cyclic_rack(n)
}

/// Conjugation quandle on the transpositions of `S_n`, in lexicographic order.
pub fn transpositions(n: usize) -> LeftQuasigroup {
    let mut set = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            set.push(Permutation::transposition(n, a, b));
        }
    }
    LeftQuasigroup::conjugation(&set).expect("conjugacy class")
}

/// Transpositions of `S_4`: connected, `Dis = A_4`, stabilizers of order 2.
pub fn t6() -> LeftQuasigroup {
    transpositions(4)
}

/// Transpositions of `S_5`: connected, `Dis = A_5`, stabilizers isomorphic to `S_3`.
pub fn t10() -> LeftQuasigroup {
    transpositions(5)
}

/// Looks up `Q3`, `R3`, `R5`, `Q4`, `T6`, `T10`, `P_n`, `C_n`, `R_n`, `Aff_n_k`.
pub fn by_name(name: &str) -> Result<LeftQuasigroup> {
    let unknown = || Error::Format(format!("unknown fixture '{name}'"));
    let param = |s: &str| -> Result<usize> {
        s.parse::<usize>()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(unknown)
    };
    match name {
        "Q3" => Ok(q3()),
        "R3" => Ok(r3()),
        "R5" => Ok(r5()),
        "Q4" => Ok(q4()),
        "T6" => Ok(t6()),
        "T10" => Ok(t10()),
        "trivial" => Ok(LeftQuasigroup::trivial()),
        _ => {
            if let Some(n) = name.strip_prefix("P_") {
                Ok(projection(param(n)?))
            } else if let Some(n) = name.strip_prefix("C_") {
                Ok(cyclic(param(n)?))
            } else if let Some(n) = name.strip_prefix("R_") {
                Ok(LeftQuasigroup::dihedral(param(n)?))
            } else if let Some(rest) = name.strip_prefix("Aff_") {
                let (n, k) = rest.split_once('_').ok_or_else(unknown)?;
                let k: i64 = k.parse().map_err(|_| unknown())?;
                affine_cyclic(param(n)? as u64, k)
            } else {
                Err(unknown())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_fixtures_are_quandles() {
        for name in [
            "Q3", "R3", "R5", "Q4", "T6", "T10", "P_3", "R_7", "Aff_5_2", "trivial",
        ] {
            let q = by_name(name).unwrap();
            assert!(q.is_quandle(), "{name}");
        }
        assert!(by_name("C_4").unwrap().is_rack());
        assert!(!by_name("C_4").unwrap().is_quandle());
    }

    #[test]
    fn bad_names() {
        for name in ["X", "P_", "P_0", "Aff_5", "Aff_4_2"] {
            assert!(by_name(name).is_err(), "{name}");
        }
    }

    #[test]
    fn sizes() {
        assert_eq!(t6().size(), 6);
        assert_eq!(t10().size(), 10);
        assert_eq!(q4().size(), 4);
    }
}
