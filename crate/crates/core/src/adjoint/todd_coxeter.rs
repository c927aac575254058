//! Coset enumeration, HLT strategy with coincidence handling.

use super::Presentation;

/// Default bound on live cosets.
pub const COSET_CAP: usize = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Enumeration {
    Index(usize),
    /// The cap was reached before the table closed.
    Indeterminate,
}

const NONE: u32 = u32::MAX;

/// Letters are table columns: `2g` for generator `g`, `2g + 1` for its inverse.
pub type Word = Vec<usize>;

fn reduce(w: &[usize]) -> Word {
    let mut out: Word = Vec::with_capacity(w.len());
    for &c in w {
        if out.last() == Some(&(c ^ 1)) {
            out.pop();
        } else {
            out.push(c);
        }
    }
    // cyclic reduction
    let mut start = 0;
    let mut end = out.len();
    while end - start >= 2 && out[start] == out[end - 1] ^ 1 {
        start += 1;
        end -= 1;
    }
    out[start..end].to_vec()
}

struct CosetTable {
    cols: usize,
    table: Vec<u32>,
    forward: Vec<u32>,
    live: usize,
    cap: usize,
    queue: Vec<usize>,
}

struct CapHit;

impl CosetTable {
    fn new(cols: usize, cap: usize) -> Self {
        CosetTable {
            cols,
            table: vec![NONE; cols],
            forward: vec![0],
            live: 1,
            cap,
            queue: Vec::new(),
        }
    }

    fn rows(&self) -> usize {
        self.forward.len()
    }

    #[inline]
    fn get(&self, c: usize, x: usize) -> u32 {
        self.table[c * self.cols + x]
    }

    #[inline]
    fn put(&mut self, c: usize, x: usize, d: u32) {
        self.table[c * self.cols + x] = d;
    }

    fn is_live(&self, c: usize) -> bool {
        self.forward[c] as usize == c
    }

    fn define(&mut self, c: usize, x: usize) -> Result<(), CapHit> {
        // dead rows are never reused, so bound the table too
        if self.live >= self.cap || self.rows() >= self.cap.saturating_mul(8) {
            return Err(CapHit);
        }
        let d = self.rows();
        self.forward.push(d as u32);
        self.table.extend(std::iter::repeat_n(NONE, self.cols));
        self.live += 1;
        self.put(c, x, d as u32);
        self.put(d, x ^ 1, c as u32);
        Ok(())
    }

    fn rep(&mut self, c: usize) -> usize {
        let mut r = c;
        while self.forward[r] as usize != r {
            r = self.forward[r] as usize;
        }
        let mut k = c;
        while self.forward[k] as usize != r {
            let next = self.forward[k] as usize;
            self.forward[k] = r as u32;
            k = next;
        }
        r
    }

    fn merge(&mut self, a: usize, b: usize) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a == b {
            return;
        }
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        self.forward[hi] = lo as u32;
        self.live -= 1;
        self.queue.push(hi);
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        self.queue.clear();
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let e = self.queue[i];
            i += 1;
            for x in 0..self.cols {
                let f = self.get(e, x);
                if f == NONE {
                    continue;
                }
                let f = f as usize;
                self.put(f, x ^ 1, NONE);
                let (e1, f1) = (self.rep(e), self.rep(f));
                let ex = self.get(e1, x);
                let fx = self.get(f1, x ^ 1);
                if ex != NONE {
                    self.merge(f1, ex as usize);
                } else if fx != NONE {
                    self.merge(e1, fx as usize);
                } else {
                    self.put(e1, x, f1 as u32);
                    self.put(f1, x ^ 1, e1 as u32);
                }
            }
        }
    }

    fn scan_and_fill(&mut self, c: usize, w: &[usize]) -> Result<(), CapHit> {
        if w.is_empty() {
            return Ok(());
        }
        let (mut f, mut b) = (c, c);
        let (mut i, mut j) = (0usize, w.len() as isize - 1);
        loop {
            while (i as isize) <= j && self.get(f, w[i]) != NONE {
                f = self.get(f, w[i]) as usize;
                i += 1;
            }
            if i as isize > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j >= i as isize && self.get(b, w[j as usize] ^ 1) != NONE {
                b = self.get(b, w[j as usize] ^ 1) as usize;
                j -= 1;
            }
            if j < i as isize {
                self.coincidence(f, b);
                return Ok(());
            }
            if j == i as isize {
                self.put(f, w[i], b as u32);
                self.put(b, w[i] ^ 1, f as u32);
                return Ok(());
            }
            self.define(f, w[i])?;
        }
    }
}

/// Index of `<subgroup_words>` in the presented group, if the enumeration closes.
pub fn todd_coxeter(pres: &Presentation, subgroup_words: &[Word], cap: usize) -> Enumeration {
    let cols = 2 * pres.generators;
    let relators: Vec<Word> = pres
        .relators
        .iter()
        .map(|r| reduce(r))
        .filter(|r| !r.is_empty())
        .collect();
    let mut t = CosetTable::new(cols, cap.max(1));
    let run = |t: &mut CosetTable| -> Result<usize, CapHit> {
        for w in subgroup_words {
            let w: Word = w.clone();
            t.scan_and_fill(0, &w)?;
        }
        let mut c = 0;
        while c < t.rows() {
            for r in &relators {
                if !t.is_live(c) {
                    break;
                }
                t.scan_and_fill(c, r)?;
            }
            if t.is_live(c) {
                for x in 0..cols {
                    if t.get(c, x) == NONE {
                        t.define(c, x)?;
                    }
                }
            }
            c += 1;
        }
        Ok(t.live)
    };
    match run(&mut t) {
        Ok(k) => Enumeration::Index(k),
        Err(CapHit) => Enumeration::Indeterminate,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pres(generators: usize, relators: Vec<Word>) -> Presentation {
        Presentation {
            generators,
            relators,
        }
    }

    #[test]
    fn free_cyclic_trivial_subgroup_index_one() {
        let p = pres(1, vec![]);
        assert_eq!(todd_coxeter(&p, &[vec![0]], 1000), Enumeration::Index(1));
    }

    #[test]
    fn free_cyclic_trivial_subgroup_is_infinite() {
        let p = pres(1, vec![]);
        assert_eq!(todd_coxeter(&p, &[], 1000), Enumeration::Indeterminate);
    }

    #[test]
    fn cyclic_group_order() {
        let p = pres(1, vec![vec![0; 7]]);
        assert_eq!(todd_coxeter(&p, &[], 1000), Enumeration::Index(7));
    }

    #[test]
    fn symmetric_group_s3() {
        // <a, b | a^2, b^3, (ab)^2>
        let p = pres(2, vec![vec![0, 0], vec![2, 2, 2], vec![0, 2, 0, 2]]);
        assert_eq!(todd_coxeter(&p, &[], 1000), Enumeration::Index(6));
        assert_eq!(todd_coxeter(&p, &[vec![0]], 1000), Enumeration::Index(3));
        assert_eq!(todd_coxeter(&p, &[vec![2]], 1000), Enumeration::Index(2));
    }

    #[test]
    fn larger_group_with_coincidences() {
        // (2,3,5) triangle group is A5 of order 60
        let p = pres(
            2,
            vec![
                vec![0, 0],
                vec![2, 2, 2],
                vec![0, 2, 0, 2, 0, 2, 0, 2, 0, 2],
            ],
        );
        assert_eq!(todd_coxeter(&p, &[], 10_000), Enumeration::Index(60));
        assert_eq!(todd_coxeter(&p, &[vec![0]], 10_000), Enumeration::Index(30));
    }

    #[test]
    fn reduction() {
        assert_eq!(reduce(&[0, 1, 2]), vec![2]);
        assert_eq!(reduce(&[1, 2, 0]), vec![2]);
        assert_eq!(reduce(&[0, 2, 1]), vec![2]);
        assert!(reduce(&[0, 2, 3, 1]).is_empty());
    }
}
