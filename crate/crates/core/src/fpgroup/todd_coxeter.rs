//! HLT coset enumeration with coincidence processing.

use crate::error::{Error, Result};
use crate::presentation::{cyclic_reduce, Letter, Presentation, Word};

pub const DEFAULT_MAX_COSETS: usize = 1_000_000;

const UNDEF: u32 = u32::MAX;

/// A complete coset table. Coset 0 is the subgroup; column `c` of a letter
/// with code `c` gives the action of that letter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetTable {
    ncols: usize,
    table: Vec<u32>,
    /// Cosets defined during the run, including ones later merged away.
    pub defined: usize,
}

impl CosetTable {
    /// The index of the subgroup; the group order for the trivial subgroup.
    pub fn order(&self) -> usize {
        self.table.len().checked_div(self.ncols).unwrap_or(1)
    }

    pub fn act(&self, coset: usize, l: Letter) -> usize {
        self.table[coset * self.ncols + l.0 as usize] as usize
    }

    pub fn trace(&self, coset: usize, w: &[Letter]) -> usize {
        w.iter().fold(coset, |c, &l| self.act(c, l))
    }
}

struct Enumerator {
    ncols: usize,
    table: Vec<u32>,
    parent: Vec<u32>,
    queue: Vec<u32>,
    max: usize,
}

impl Enumerator {
    fn count(&self) -> usize {
        self.parent.len()
    }

    fn get(&self, c: u32, x: usize) -> u32 {
        self.table[c as usize * self.ncols + x]
    }

    fn set(&mut self, c: u32, x: usize, d: u32) {
        self.table[c as usize * self.ncols + x] = d;
    }

    fn define(&mut self, c: u32, x: usize) -> Result<()> {
        if self.count() >= self.max {
            return Err(Error::Capped { max: self.max });
        }
        let d = self.count() as u32;
        self.parent.push(d);
        self.table.extend(std::iter::repeat_n(UNDEF, self.ncols));
        self.set(c, x, d);
        self.set(d, x ^ 1, c);
        Ok(())
    }

    fn rep(&mut self, c: u32) -> u32 {
        let mut root = c;
        while self.parent[root as usize] != root {
            root = self.parent[root as usize];
        }
        let mut c = c;
        while self.parent[c as usize] != root {
            let next = self.parent[c as usize];
            self.parent[c as usize] = root;
            c = next;
        }
        root
    }

    fn merge(&mut self, a: u32, b: u32) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a != b {
            let (lo, hi) = (a.min(b), a.max(b));
            self.parent[hi as usize] = lo;
            self.queue.push(hi);
        }
    }

    fn is_live(&self, c: u32) -> bool {
        self.parent[c as usize] == c
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        self.merge(a, b);
        let mut qi = 0;
        while qi < self.queue.len() {
            let g = self.queue[qi];
            qi += 1;
            for x in 0..self.ncols {
                let d = self.get(g, x);
                if d == UNDEF {
                    continue;
                }
                self.set(d, x ^ 1, UNDEF);
                let mu = self.rep(g);
                let nu = self.rep(d);
                let mx = self.get(mu, x);
                let nx = self.get(nu, x ^ 1);
                if mx != UNDEF {
                    self.merge(nu, mx);
                } else if nx != UNDEF {
                    self.merge(mu, nx);
                } else {
                    self.set(mu, x, nu);
                    self.set(nu, x ^ 1, mu);
                }
            }
        }
        self.queue.clear();
    }

    fn scan_and_fill(&mut self, a: u32, w: &[Letter]) -> Result<()> {
        if w.is_empty() {
            return Ok(());
        }
        let (mut f, mut b) = (a, a);
        let (mut i, mut j) = (0usize, w.len() as isize - 1);
        loop {
            while (i as isize) <= j && self.get(f, w[i].0 as usize) != UNDEF {
                f = self.get(f, w[i].0 as usize);
                i += 1;
            }
            if i as isize > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j >= i as isize && self.get(b, w[j as usize].0 as usize ^ 1) != UNDEF {
                b = self.get(b, w[j as usize].0 as usize ^ 1);
                j -= 1;
            }
            if j < i as isize {
                self.coincidence(f, b);
                return Ok(());
            }
            if j == i as isize {
                let x = w[i].0 as usize;
                self.set(f, x, b);
                self.set(b, x ^ 1, f);
                return Ok(());
            }
            self.define(f, w[i].0 as usize)?;
        }
    }
}

/// Enumerates the cosets of the subgroup generated by `subgroup` in the
/// group presented by `p`.
pub fn todd_coxeter(p: &Presentation, subgroup: &[Word], max_cosets: usize) -> Result<CosetTable> {
    let ncols = 2 * p.num_generators();
    if max_cosets == 0 {
        return Err(Error::Capped { max: 0 });
    }
    if ncols == 0 {
        return Ok(CosetTable {
            ncols: 0,
            table: Vec::new(),
            defined: 1,
        });
    }
    let mut rels: Vec<Word> = p.relators.iter().map(|w| cyclic_reduce(w)).filter(|w| !w.is_empty()).collect();
    rels.sort_by_key(Vec::len);
    let mut e = Enumerator {
        ncols,
        table: vec![UNDEF; ncols],
        parent: vec![0],
        queue: Vec::new(),
        max: max_cosets,
    };
    for w in subgroup {
        e.scan_and_fill(0, w)?;
    }
    let mut a = 0u32;
    while (a as usize) < e.count() {
        if e.is_live(a) {
            for w in &rels {
                e.scan_and_fill(a, w)?;
                if !e.is_live(a) {
                    break;
                }
            }
            if e.is_live(a) {
                for x in 0..ncols {
                    if e.get(a, x) == UNDEF {
                        e.define(a, x)?;
                    }
                }
            }
        }
        a += 1;
    }
    // Renumber live cosets in order.
    let mut new_id = vec![UNDEF; e.count()];
    let mut live = 0u32;
    for c in 0..e.count() {
        if e.is_live(c as u32) {
            new_id[c] = live;
            live += 1;
        }
    }
    let mut table = Vec::with_capacity(live as usize * ncols);
    for c in 0..e.count() as u32 {
        if !e.is_live(c) {
            continue;
        }
        for x in 0..ncols {
            let d = e.get(c, x);
            if d == UNDEF {
                return Err(Error::IncompleteTable);
            }
            let d = e.rep(d);
            table.push(new_id[d as usize]);
        }
    }
    Ok(CosetTable {
        ncols,
        table,
        defined: e.count(),
    })
}

/// Whether two words act identically on every coset. Over the trivial
/// subgroup this is equality in the group.
pub fn word_equal(t: &CosetTable, w1: &[Letter], w2: &[Letter]) -> Result<bool> {
    if t.ncols == 0 {
        return Ok(true);
    }
    if t.table.contains(&UNDEF) {
        return Err(Error::IncompleteTable);
    }
    Ok((0..t.order()).all(|c| t.trace(c, w1) == t.trace(c, w2)))
}
