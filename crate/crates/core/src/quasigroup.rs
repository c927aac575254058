//! Finite left quasigroups given by multiplication tables.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::permgroup::Permutation;

/// A left quasigroup on `{0..n-1}`: every row of the table is a permutation.
///
/// `mul(x, y)` is `x * y`; `ldiv(x, y)` is the unique `z` with `x * z = y`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LeftQuasigroup {
    size: usize,
    mul: Vec<usize>,
    ldiv: Vec<usize>,
}

impl LeftQuasigroup {
    pub fn from_table(n: usize, rows: &[Vec<usize>]) -> Result<Self> {
        if n == 0 {
            return Err(Error::BadShape("size must be positive".into()));
        }
        if rows.len() != n {
            return Err(Error::BadShape(format!(
                "expected {n} rows, got {}",
                rows.len()
            )));
        }
        let mut mul = Vec::with_capacity(n * n);
        for (x, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::BadShape(format!(
                    "row {x} has {} entries, expected {n}",
                    row.len()
                )));
            }
            mul.extend_from_slice(row);
        }
        Self::from_flat(n, mul)
    }

    /// Table from a closure `(x, y) -> x * y`.
    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> usize) -> Result<Self> {
        let mut mul = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                mul.push(f(x, y));
            }
        }
        Self::from_flat(n, mul)
    }

    fn from_flat(n: usize, mul: Vec<usize>) -> Result<Self> {
        if n == 0 {
            return Err(Error::BadShape("size must be positive".into()));
        }
        let mut ldiv = vec![usize::MAX; n * n];
        for x in 0..n {
            for y in 0..n {
                let z = mul[x * n + y];
                if z >= n || ldiv[x * n + z] != usize::MAX {
                    return Err(Error::NotLeftQuasigroup { row: x, size: n });
                }
                ldiv[x * n + z] = y;
            }
        }
        Ok(LeftQuasigroup { size: n, mul, ldiv })
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.mul[x * self.size + y]
    }

    #[inline]
    pub fn ldiv(&self, x: usize, y: usize) -> usize {
        self.ldiv[x * self.size + y]
    }

    pub fn row(&self, x: usize) -> &[usize] {
        &self.mul[x * self.size..(x + 1) * self.size]
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..self.size).map(|x| self.row(x).to_vec()).collect()
    }

    /// The left translation `L_x`.
    pub fn translation(&self, x: usize) -> Permutation {
        Permutation::from_images_unchecked(self.row(x).to_vec())
    }

    pub fn translations(&self) -> Vec<Permutation> {
        (0..self.size).map(|x| self.translation(x)).collect()
    }

    pub fn is_rack(&self) -> bool {
        let n = self.size;
        (0..n).all(|x| {
            (0..n).all(|y| {
                let xy = self.mul(x, y);
                (0..n).all(|z| self.mul(x, self.mul(y, z)) == self.mul(xy, self.mul(x, z)))
            })
        })
    }

    pub fn is_idempotent(&self) -> bool {
        (0..self.size).all(|x| self.mul(x, x) == x)
    }

    pub fn is_quandle(&self) -> bool {
        self.is_idempotent() && self.is_rack()
    }

    /// `x * y` does not depend on `x` (such a structure is always a rack).
    pub fn is_permutation_rack(&self) -> bool {
        (1..self.size).all(|x| self.row(x) == self.row(0))
    }

    pub fn is_projection(&self) -> bool {
        (0..self.size).all(|x| self.row(x).iter().enumerate().all(|(y, &z)| y == z))
    }

    /// A homomorphism test for `*` (which forces `\` to be preserved too).
    pub fn is_homomorphism_to(&self, other: &LeftQuasigroup, f: &[usize]) -> bool {
        f.len() == self.size
            && f.iter().all(|&y| y < other.size)
            && (0..self.size)
                .all(|x| (0..self.size).all(|y| f[self.mul(x, y)] == other.mul(f[x], f[y])))
    }

    /// Relabels elements: `perm[x]` is the new name of `x`.
    pub fn relabel(&self, perm: &[usize]) -> Result<LeftQuasigroup> {
        let n = self.size;
        let p = Permutation::from_images(perm.to_vec())?;
        let inv = p.inverse();
        Self::from_fn(n, |x, y| p.apply(self.mul(inv.apply(x), inv.apply(y))))
    }

    // ---- constructors -------------------------------------------------------

    pub fn trivial() -> Self {
        Self::projection(1)
    }

    /// Projection quandle `P_n`: `x * y = y`.
    pub fn projection(n: usize) -> Self {
        Self::from_fn(n, |_, y| y).expect("identity rows")
    }

    /// Permutation rack `x * y = f(y)`.
    pub fn permutation_rack(f: &Permutation) -> Self {
        Self::from_fn(f.degree(), |_, y| f.apply(y)).expect("rows are f")
    }

    /// Cyclic rack `C_n`: `x * y = y + 1 mod n`.
    pub fn cyclic_rack(n: usize) -> Self {
        Self::permutation_rack(&Permutation::cycle(n))
    }

    /// Dihedral quandle `R_n = Aff(Z_n, -1)`.
    pub fn dihedral(n: usize) -> Self {
        Self::from_fn(n, |x, y| (2 * x + n - y % n) % n).expect("affine")
    }

    /// Componentwise product; `(x, y)` is stored at `x * |other| + y`.
    pub fn direct_product(&self, other: &LeftQuasigroup) -> Self {
        let m = other.size;
        Self::from_fn(self.size * m, |a, b| {
            self.mul(a / m, b / m) * m + other.mul(a % m, b % m)
        })
        .expect("product of left quasigroups")
    }

    /// Affine quandle `Aff(A, f)` over `A = Z_{m1} x ... x Z_{mk}`.
    ///
    /// `matrix[i][j]` is the coefficient of coordinate `j` in coordinate `i`
    /// of `f(v)`. Elements are numbered in mixed radix, first coordinate most
    /// significant. The operation is `x * y = f(y) + x - f(x)`.
    pub fn affine(moduli: &[u64], matrix: &[Vec<i64>]) -> Result<Self> {
        let group = AbelianGroup::new(moduli)?;
        let k = moduli.len();
        if matrix.len() != k || matrix.iter().any(|r| r.len() != k) {
            return Err(Error::BadShape(format!("matrix must be {k}x{k}")));
        }
        // well defined: column j killed by m_j in every coordinate
        for j in 0..k {
            for i in 0..k {
                let c = matrix[i][j].rem_euclid(moduli[i] as i64) as u128;
                if !(c * moduli[j] as u128).is_multiple_of(moduli[i] as u128) {
                    return Err(Error::NotAutomorphism(format!(
                        "entry ({i},{j}) is not compatible with the moduli"
                    )));
                }
            }
        }
        let n = group.order();
        let f: Vec<usize> = (0..n)
            .map(|x| {
                let v = group.decode(x);
                let img: Vec<i64> = (0..k)
                    .map(|i| (0..k).map(|j| matrix[i][j] * v[j] as i64).sum())
                    .collect();
                group.encode_signed(&img)
            })
            .collect();
        if Permutation::from_images(f.clone()).is_err() {
            return Err(Error::NotAutomorphism("matrix is not invertible".into()));
        }
        Self::from_fn(n, |x, y| group.add(f[y], group.sub(x, f[x])))
    }

    /// Conjugation quandle on a conjugation-closed set of permutations:
    /// `x * y = x y x⁻¹`.
    pub fn conjugation(set: &[Permutation]) -> Result<Self> {
        let pos: HashMap<&Permutation, usize> =
            set.iter().enumerate().map(|(i, p)| (p, i)).collect();
        if pos.len() != set.len() {
            return Err(Error::BadShape("duplicate permutations".into()));
        }
        let mut rows = Vec::with_capacity(set.len());
        for x in set {
            let mut row = Vec::with_capacity(set.len());
            for y in set {
                let c = x.conjugate(y);
                match pos.get(&c) {
                    Some(&i) => row.push(i),
                    None => {
                        return Err(Error::BadShape(
                            "set is not closed under conjugation".into(),
                        ))
                    }
                }
            }
            rows.push(row);
        }
        Self::from_table(set.len(), &rows)
    }
}

impl fmt::Debug for LeftQuasigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LeftQuasigroup({}) {:?}", self.size, self.rows())
    }
}

impl fmt::Display for LeftQuasigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w = (self.size.max(2) - 1).to_string().len();
        write!(f, "{:>w$} |", "*")?;
        for y in 0..self.size {
            write!(f, " {y:>w$}")?;
        }
        writeln!(f)?;
        writeln!(f, "{}", "-".repeat((w + 1) * (self.size + 1) + 1))?;
        for x in 0..self.size {
            write!(f, "{x:>w$} |")?;
            for z in self.row(x) {
                write!(f, " {z:>w$}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// `Z_{m1} x ... x Z_{mk}` with elements numbered in mixed radix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianGroup {
    moduli: Vec<u64>,
}

impl AbelianGroup {
    pub fn new(moduli: &[u64]) -> Result<Self> {
        if moduli.is_empty() || moduli.contains(&0) {
            return Err(Error::BadShape("moduli must be positive".into()));
        }
        let order = moduli.iter().try_fold(1u64, |acc, &m| acc.checked_mul(m));
        match order {
            Some(o) if o <= 1 << 20 => Ok(AbelianGroup {
                moduli: moduli.to_vec(),
            }),
            _ => Err(Error::CapExceeded {
                what: "abelian group order",
                cap: 1 << 20,
            }),
        }
    }

    pub fn cyclic(m: u64) -> Self {
        AbelianGroup { moduli: vec![m] }
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    pub fn order(&self) -> usize {
        self.moduli.iter().product::<u64>() as usize
    }

    pub fn decode(&self, mut x: usize) -> Vec<u64> {
        let mut v = vec![0; self.moduli.len()];
        for i in (0..self.moduli.len()).rev() {
            let m = self.moduli[i] as usize;
            v[i] = (x % m) as u64;
            x /= m;
        }
        v
    }

    pub fn encode(&self, v: &[u64]) -> usize {
        v.iter()
            .zip(&self.moduli)
            .fold(0, |acc, (&c, &m)| acc * m as usize + (c % m) as usize)
    }

    pub fn encode_signed(&self, v: &[i64]) -> usize {
        let reduced: Vec<u64> = v
            .iter()
            .zip(&self.moduli)
            .map(|(&c, &m)| c.rem_euclid(m as i64) as u64)
            .collect();
        self.encode(&reduced)
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        let (va, vb) = (self.decode(a), self.decode(b));
        let s: Vec<u64> = va.iter().zip(&vb).map(|(x, y)| x + y).collect();
        self.encode(&s)
    }

    pub fn neg(&self, a: usize) -> usize {
        let v: Vec<u64> = self
            .decode(a)
            .iter()
            .zip(&self.moduli)
            .map(|(&c, &m)| (m - c) % m)
            .collect();
        self.encode(&v)
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    /// The translation `x -> x + t` as a permutation of the elements.
    pub fn translation(&self, t: usize) -> Permutation {
        Permutation::from_images_unchecked((0..self.order()).map(|x| self.add(x, t)).collect())
    }
}
