//! Abelianization via the Smith normal form of the relator exponent matrix.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::presentation::Presentation;

/// `Z_{d_1} × … × Z_{d_k} × Z^free_rank` with `1 < d_1 | d_2 | …`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Abelianization {
    pub torsion: Vec<u64>,
    pub free_rank: usize,
}

impl Abelianization {
    pub fn is_free(&self) -> bool {
        self.torsion.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.torsion.is_empty() && self.free_rank == 0
    }

    /// Order of the group, `None` when infinite.
    pub fn order(&self) -> Option<u64> {
        (self.free_rank == 0).then(|| self.torsion.iter().product())
    }
}

impl fmt::Display for Abelianization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.torsion.iter().map(|d| format!("Z{d}")).collect();
        if self.free_rank > 0 {
            parts.push(format!("Z^{}", self.free_rank));
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join(" x "))
        }
    }
}

fn add_mul(a: i64, k: i64, b: i64) -> Result<i64> {
    k.checked_mul(b)
        .and_then(|kb| a.checked_add(kb))
        .ok_or(Error::Overflow("abelianization"))
}

/// `(g, s, t)` with `g = gcd(a, b) = s·a + t·b`, `g ≥ 0`.
fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let (mut r0, mut r1, mut s0, mut s1, mut t0, mut t1) = (a, b, 1i64, 0i64, 0i64, 1i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 < 0 {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

/// Row-echelon basis of the row lattice, built one row at a time.
struct Echelon {
    ncols: usize,
    /// Rows keyed by pivot column, pivot positive.
    rows: Vec<Option<Vec<i64>>>,
}

impl Echelon {
    fn insert(&mut self, mut v: Vec<i64>) -> Result<()> {
        for c in 0..self.ncols {
            if v[c] == 0 {
                continue;
            }
            match self.rows[c].take() {
                None => {
                    if v[c] < 0 {
                        for x in v.iter_mut() {
                            *x = -*x;
                        }
                    }
                    self.rows[c] = Some(v);
                    return Ok(());
                }
                Some(mut row) => {
                    let (g, s, t) = ext_gcd(row[c], v[c]);
                    let (p, q) = (row[c] / g, v[c] / g);
                    // [s t; -q p] is unimodular.
                    let mut new_row = vec![0; self.ncols];
                    let mut rest = vec![0; self.ncols];
                    for k in c..self.ncols {
                        new_row[k] = add_mul(s.checked_mul(row[k]).ok_or(Error::Overflow("abelianization"))?, t, v[k])?;
                        rest[k] = add_mul(p.checked_mul(v[k]).ok_or(Error::Overflow("abelianization"))?, -q, row[k])?;
                    }
                    row = new_row;
                    self.rows[c] = Some(row);
                    v = rest;
                }
            }
        }
        Ok(())
    }
}

fn smith(mut a: Vec<Vec<i64>>, ncols: usize) -> Result<Vec<i64>> {
    let nrows = a.len();
    let mut diag = Vec::new();
    let mut t = 0;
    while t < nrows.min(ncols) {
        // Smallest nonzero entry in the remaining block.
        let mut best: Option<(usize, usize)> = None;
        for (i, row) in a.iter().enumerate().skip(t) {
            for (j, &x) in row.iter().enumerate().skip(t) {
                if x != 0 && best.is_none_or(|(bi, bj)| x.abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let p = a[t][t];
            let mut clean = true;
            for i in t + 1..nrows {
                let q = a[i][t] / p;
                if q != 0 {
                    for j in t..ncols {
                        a[i][j] = add_mul(a[i][j], -q, a[t][j])?;
                    }
                }
                if a[i][t] != 0 {
                    clean = false;
                }
            }
            for j in t + 1..ncols {
                let q = a[t][j] / p;
                if q != 0 {
                    for row in a.iter_mut().skip(t) {
                        row[j] = add_mul(row[j], -q, row[t])?;
                    }
                }
                if a[t][j] != 0 {
                    clean = false;
                }
            }
            if clean {
                // Enforce divisibility into the rest of the block.
                let bad = (t + 1..nrows).find(|&i| (t + 1..ncols).any(|j| a[i][j] % p != 0));
                match bad {
                    None => break,
                    Some(i) => {
                        for j in t..ncols {
                            a[t][j] = add_mul(a[t][j], 1, a[i][j])?;
                        }
                        continue;
                    }
                }
            }
            // Move the smallest remaining entry of row/column t to the pivot.
            let mut best = (t, t);
            for i in t..nrows {
                if a[i][t] != 0 && a[i][t].abs() < a[best.0][best.1].abs() {
                    best = (i, t);
                }
            }
            for j in t..ncols {
                if a[t][j] != 0 && a[t][j].abs() < a[best.0][best.1].abs() {
                    best = (t, j);
                }
            }
            a.swap(t, best.0);
            for row in a.iter_mut() {
                row.swap(t, best.1);
            }
        }
        diag.push(a[t][t].abs());
        t += 1;
    }
    Ok(diag)
}

pub fn abelianization(p: &Presentation) -> Result<Abelianization> {
    let n = p.num_generators();
    let mut ech = Echelon {
        ncols: n,
        rows: vec![None; n],
    };
    for w in &p.relators {
        let mut v = vec![0i64; n];
        for l in w {
            v[l.gen() as usize] += if l.is_inverse() { -1 } else { 1 };
        }
        ech.insert(v)?;
    }
    let basis: Vec<Vec<i64>> = ech.rows.into_iter().flatten().collect();
    let rank = basis.len();
    let mut torsion: Vec<u64> = smith(basis, n)?.into_iter().filter(|&d| d > 1).map(|d| d as u64).collect();
    torsion.sort_unstable();
    Ok(Abelianization {
        torsion,
        free_rank: n - rank,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::{gen, gen_inv, RelTag};

    fn pres(ngens: usize, rels: &[Vec<crate::presentation::Letter>]) -> Presentation {
        let mut p = Presentation::new((0..ngens).map(|k| format!("g{k}")).collect());
        for r in rels {
            p.push(r, RelTag::Derived);
        }
        p
    }

    #[test]
    fn small_groups() {
        let a = abelianization(&pres(1, &[vec![gen(0), gen(0)]])).unwrap();
        assert_eq!(a.torsion, vec![2]);
        assert_eq!(a.free_rank, 0);
        let f = abelianization(&pres(3, &[])).unwrap();
        assert_eq!((f.free_rank, f.is_free()), (3, true));
        // Z2 × Z4 given as a4 = b2 = [a,b] = 1 plus a redundant relator.
        let (x, y) = (gen(0), gen(1));
        let z = abelianization(&pres(2, &[vec![x; 4], vec![y, y], vec![x, y, gen_inv(0), gen_inv(1)], vec![x, x, y, y, x, x]]))
            .unwrap();
        assert_eq!(z.torsion, vec![2, 4]);
        assert_eq!(z.to_string(), "Z2 x Z4");
        // Z6 written as Z2 × Z3 must come out cyclic.
        let c = abelianization(&pres(2, &[vec![x, x], vec![y, y, y]])).unwrap();
        assert_eq!(c.torsion, vec![6]);
        // S3: abelianization Z2.
        let s = abelianization(&pres(2, &[vec![x, x], vec![y, y], vec![x, y, x, y, x, y]])).unwrap();
        assert_eq!(s.torsion, vec![2]);
        assert_eq!(s.order(), Some(2));
    }
}
