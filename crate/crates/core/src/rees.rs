//! The rank-`r` D-class of `End F_n(G)` as a Rees matrix semigroup
//! `M⁰(H; I, Λ; P)` with `H = H_11 ≅ G ≀ S_r`.
//!
//! Columns `λ ∈ Λ` are the `r`-subsets of `[1,n]` (the L-classes, by image)
//! and rows `i ∈ I` are kernels (the R-classes). Row `i` is represented by
//! its transversal element `r_i ∈ Θ`, column `λ` by `q_λ`, and the sandwich
//! entry is `p_{λi} = q_λ r_i` when that has rank `r`.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::endo::Endo;
use crate::error::{Error, Result};
use crate::group::{Elem, Group, IDENTITY};
use crate::wreath::WreathElem;

/// Default cap on `|Λ|·|I|`.
pub const DEFAULT_MAX_ENTRIES: usize = 10_000_000;

/// An `r`-subset `(u_1 < … < u_r)` of `[1,n]`, stored 0-based.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct LambdaIndex(pub Vec<u32>);

impl LambdaIndex {
    pub fn rank(&self) -> usize {
        self.0.len()
    }
}

impl fmt::Display for LambdaIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, u) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", u + 1)?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for LambdaIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A kernel of rank `r`: a partition of `[1,n]` into `r` blocks together with
/// weights on the positions that are not block minima.
///
/// `block_of[k]` numbers blocks by increasing minimum, so it is also the
/// target array of `r_i`. `weights` has length `n` and is the identity at
/// every block minimum.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct KernelIndex {
    pub block_of: Vec<u32>,
    pub weights: Vec<Elem>,
}

impl KernelIndex {
    pub fn n(&self) -> usize {
        self.block_of.len()
    }

    pub fn rank(&self) -> usize {
        self.block_of.iter().max().map_or(0, |&b| b as usize + 1)
    }

    /// Block minima `l_1 < … < l_r` (0-based), i.e. the district.
    pub fn mins(&self) -> Vec<u32> {
        let mut mins = vec![u32::MAX; self.rank()];
        for (k, &b) in self.block_of.iter().enumerate() {
            let m = &mut mins[b as usize];
            if *m == u32::MAX {
                *m = k as u32;
            }
        }
        mins
    }

    pub fn blocks(&self) -> Vec<Vec<u32>> {
        let mut blocks = vec![Vec::new(); self.rank()];
        for (k, &b) in self.block_of.iter().enumerate() {
            blocks[b as usize].push(k as u32);
        }
        blocks
    }

    /// Reads the kernel index off a Θ-element (`x_{l_j} r = x_j`).
    pub fn from_theta(e: &Endo) -> Option<KernelIndex> {
        let mut next = 0u32;
        for (&t, &w) in e.targets.iter().zip(&e.weights) {
            if t == next {
                if w != IDENTITY {
                    return None;
                }
                next += 1;
            } else if t > next {
                return None;
            }
        }
        Some(KernelIndex {
            block_of: e.targets.clone(),
            weights: e.weights.clone(),
        })
    }
}

impl fmt::Display for KernelIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (j, b) in self.blocks().iter().enumerate() {
            if j > 0 {
                write!(f, "|")?;
            }
            for (s, k) in b.iter().enumerate() {
                if s > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", k + 1)?;
                let w = self.weights[*k as usize];
                if w != IDENTITY {
                    write!(f, "^{w}")?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for KernelIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "K[{self}]")
    }
}

fn check_rank(n: usize, r: usize) -> Result<()> {
    if r == 0 || r > n || n > 30 {
        return Err(Error::BadRank { n, r });
    }
    Ok(())
}

/// All `r`-subsets of `[1,n]` in lexicographic order.
pub fn lambda_list(n: usize, r: usize) -> Result<Vec<LambdaIndex>> {
    check_rank(n, r)?;
    let mut out = Vec::new();
    let mut cur: Vec<u32> = (0..r as u32).collect();
    loop {
        out.push(LambdaIndex(cur.clone()));
        // Rightmost slot that can still move.
        let Some(k) = (0..r).rev().find(|&k| (cur[k] as usize) < n - r + k) else {
            break;
        };
        cur[k] += 1;
        for s in k + 1..r {
            cur[s] = cur[s - 1] + 1;
        }
    }
    Ok(out)
}

pub fn binomial(n: usize, r: usize) -> usize {
    if r > n {
        return 0;
    }
    (0..r).fold(1usize, |acc, k| acc * (n - k) / (k + 1))
}

/// Stirling number of the second kind.
pub fn stirling2(n: usize, r: usize) -> usize {
    let mut row = vec![0usize; r + 1];
    row[0] = 1;
    for _ in 0..n {
        for k in (1..=r).rev() {
            row[k] = row[k].saturating_mul(k).saturating_add(row[k - 1]);
        }
        row[0] = 0;
    }
    row[r]
}

/// `|I| = |G|^{n−r} · S(n,r)`, or `None` on overflow.
pub fn kernel_count(m: usize, n: usize, r: usize) -> Option<usize> {
    m.checked_pow((n - r) as u32)?.checked_mul(stirling2(n, r))
}

fn partitions(n: usize, r: usize) -> Vec<Vec<u32>> {
    fn rec(n: usize, r: usize, cur: &mut Vec<u32>, used: u32, out: &mut Vec<Vec<u32>>) {
        let k = cur.len();
        if k == n {
            if used as usize == r {
                out.push(cur.clone());
            }
            return;
        }
        // Not enough positions left to open the remaining blocks.
        if (r - used as usize) > n - k {
            return;
        }
        for b in 0..=used.min(r as u32 - 1) {
            cur.push(b);
            rec(n, r, cur, used.max(b + 1), out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, r, &mut Vec::with_capacity(n), 0, &mut out);
    let key = |p: &Vec<u32>| {
        let k = KernelIndex {
            block_of: p.clone(),
            weights: Vec::new(),
        };
        (k.mins(), k.blocks())
    };
    out.sort_by_cached_key(key);
    out
}

/// All rank-`r` kernels: partitions ordered by (block minima, block
/// contents), then weight vectors in mixed radix with the last free
/// position varying fastest.
pub fn kernel_list(g: &Group, n: usize, r: usize) -> Result<Vec<KernelIndex>> {
    check_rank(n, r)?;
    let m = g.order();
    let mut out = Vec::new();
    for block_of in partitions(n, r) {
        let probe = KernelIndex {
            block_of: block_of.clone(),
            weights: Vec::new(),
        };
        let mins = probe.mins();
        let free: Vec<usize> = (0..n).filter(|k| !mins.contains(&(*k as u32))).collect();
        let total = m.pow(free.len() as u32);
        for mut code in 0..total {
            let mut weights = vec![IDENTITY; n];
            for &k in free.iter().rev() {
                weights[k] = (code % m) as Elem;
                code /= m;
            }
            out.push(KernelIndex {
                block_of: block_of.clone(),
                weights,
            });
        }
    }
    Ok(out)
}

/// `r_i`: `x_k ↦ w_k · x_j` for `k ∈ B_j`.
pub fn theta(i: &KernelIndex) -> Endo {
    Endo {
        weights: i.weights.clone(),
        targets: i.block_of.clone(),
    }
}

/// `q_λ`: `x_k ↦ x_{u_k}` for `k ≤ r` and `x_k ↦ x_{u_1}` beyond.
pub fn q_of(n: usize, lambda: &LambdaIndex) -> Endo {
    let u = &lambda.0;
    Endo {
        weights: vec![IDENTITY; n],
        targets: (0..n).map(|k| u.get(k).copied().unwrap_or(u[0])).collect(),
    }
}

/// The district of `r_i`: its block minima.
pub fn district(i: &KernelIndex) -> LambdaIndex {
    LambdaIndex(i.mins())
}

/// `q_λ r_i` restricted to `H`, or `None` when it drops rank.
pub fn entry_product(lambda: &LambdaIndex, i: &KernelIndex) -> Option<WreathElem> {
    let r = lambda.rank();
    let mut seen = vec![false; r];
    let mut perm = Vec::with_capacity(r);
    let mut weights = Vec::with_capacity(r);
    for &u in &lambda.0 {
        let b = i.block_of[u as usize];
        if std::mem::replace(&mut seen[b as usize], true) {
            return None;
        }
        perm.push(b);
        weights.push(i.weights[u as usize]);
    }
    Some(WreathElem { perm, weights })
}

/// A sandwich entry: the adjoined zero, or an interned value id.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Entry {
    Zero,
    Value(u32),
}

/// The sandwich matrix `P = (p_{λi})` with all the index data needed to
/// address it.
#[derive(Clone)]
pub struct SandwichMatrix {
    pub group: Group,
    pub n: usize,
    pub r: usize,
    pub lambdas: Vec<LambdaIndex>,
    pub kernels: Vec<KernelIndex>,
    /// Row-major by `λ`: `entries[λ·|I| + i]`.
    entries: Vec<Entry>,
    /// Distinct nonzero values, in order of first appearance.
    pub values: Vec<WreathElem>,
    value_ids: HashMap<WreathElem, u32>,
    /// `ω(i)` as a position in `lambdas`.
    pub omega: Vec<usize>,
    lambda_pos: HashMap<Vec<u32>, usize>,
    kernel_pos: HashMap<KernelIndex, usize>,
}

pub fn build_sandwich(g: &Group, n: usize, r: usize, max_entries: usize) -> Result<SandwichMatrix> {
    check_rank(n, r)?;
    let nl = binomial(n, r);
    let needed = kernel_count(g.order(), n, r)
        .and_then(|k| k.checked_mul(nl))
        .unwrap_or(usize::MAX);
    if needed > max_entries {
        return Err(Error::ResourceLimit {
            what: "sandwich matrix entries",
            needed,
            cap: max_entries,
        });
    }
    let lambdas = lambda_list(n, r)?;
    let kernels = kernel_list(g, n, r)?;
    let nk = kernels.len();
    let mut entries = Vec::with_capacity(nl * nk);
    let mut values = Vec::new();
    let mut value_ids = HashMap::new();
    let identity = WreathElem::identity(r);
    values.push(identity.clone());
    value_ids.insert(identity, 0);
    for lambda in &lambdas {
        for i in &kernels {
            entries.push(match entry_product(lambda, i) {
                None => Entry::Zero,
                Some(v) => {
                    let next = values.len() as u32;
                    let id = *value_ids.entry(v.clone()).or_insert_with(|| {
                        values.push(v);
                        next
                    });
                    Entry::Value(id)
                }
            });
        }
    }
    let lambda_pos: HashMap<Vec<u32>, usize> = lambdas.iter().enumerate().map(|(p, l)| (l.0.clone(), p)).collect();
    let kernel_pos: HashMap<KernelIndex, usize> = kernels.iter().enumerate().map(|(p, k)| (k.clone(), p)).collect();
    let omega = kernels.iter().map(|i| lambda_pos[&i.mins()]).collect();
    Ok(SandwichMatrix {
        group: g.clone(),
        n,
        r,
        lambdas,
        kernels,
        entries,
        values,
        value_ids,
        omega,
        lambda_pos,
        kernel_pos,
    })
}

impl SandwichMatrix {
    pub fn num_lambdas(&self) -> usize {
        self.lambdas.len()
    }

    pub fn num_kernels(&self) -> usize {
        self.kernels.len()
    }

    pub fn entry(&self, lambda: usize, i: usize) -> Entry {
        self.entries[lambda * self.kernels.len() + i]
    }

    pub fn value(&self, lambda: usize, i: usize) -> Option<&WreathElem> {
        match self.entry(lambda, i) {
            Entry::Zero => None,
            Entry::Value(id) => Some(&self.values[id as usize]),
        }
    }

    /// The id of the identity value `ε`.
    pub fn identity_id(&self) -> u32 {
        0
    }

    pub fn value_id(&self, phi: &WreathElem) -> Option<u32> {
        self.value_ids.get(phi).copied()
    }

    pub fn lambda_position(&self, u: &[u32]) -> Option<usize> {
        self.lambda_pos.get(u).copied()
    }

    pub fn kernel_position(&self, k: &KernelIndex) -> Option<usize> {
        self.kernel_pos.get(k).copied()
    }

    /// Row of a Θ-element, if it is one.
    pub fn theta_position(&self, e: &Endo) -> Option<usize> {
        KernelIndex::from_theta(e).and_then(|k| self.kernel_position(&k))
    }

    /// Nonzero positions `(i, λ)` in `(i, λ)` order.
    pub fn nonzero_positions(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.num_kernels() {
            for l in 0..self.num_lambdas() {
                if self.entry(l, i) != Entry::Zero {
                    out.push((i, l));
                }
            }
        }
        out
    }

    pub fn nonzero_count(&self) -> usize {
        self.entries.iter().filter(|e| **e != Entry::Zero).count()
    }

    /// Row of the kernel `({1,r+1..n},{2},…,{r})` with trivial weights, whose
    /// Θ-element is `ε`.
    pub fn epsilon_row(&self) -> usize {
        let block_of = (0..self.n as u32).map(|k| if (k as usize) < self.r { k } else { 0 }).collect();
        self.kernel_position(&KernelIndex {
            block_of,
            weights: vec![IDENTITY; self.n],
        })
        .expect("ε kernel is always listed")
    }

    /// All `(i, λ)` with `p_{λi} = φ`. The scan rejects a row as soon as the
    /// necessary condition `l_{jφ̄} ≤ u_j` (strict when `a_j ≠ 1`) fails.
    pub fn occurrences(&self, phi: &WreathElem) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        if phi.rank() != self.r {
            return out;
        }
        let mins: Vec<Vec<u32>> = self.kernels.iter().map(KernelIndex::mins).collect();
        for (l, lambda) in self.lambdas.iter().enumerate() {
            for (i, k) in self.kernels.iter().enumerate() {
                let fits = lambda.0.iter().enumerate().all(|(j, &u)| {
                    let lj = mins[i][phi.perm[j] as usize];
                    if phi.weights[j] == IDENTITY {
                        lj <= u
                    } else {
                        lj < u
                    }
                });
                if fits && entry_product(lambda, k).as_ref() == Some(phi) {
                    out.push((i, l));
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Positions grouped by value id, each list in `(i, λ)` order.
    pub fn positions_by_value(&self) -> Vec<Vec<(usize, usize)>> {
        let mut out = vec![Vec::new(); self.values.len()];
        for (i, l) in self.nonzero_positions() {
            if let Entry::Value(v) = self.entry(l, i) {
                out[v as usize].push((i, l));
            }
        }
        out
    }

    /// Text export: a header line and one line per nonzero entry.
    pub fn export(&self) -> String {
        let mut s = format!(
            "header n={} r={} group_order={} lambdas={} kernels={}\n",
            self.n,
            self.r,
            self.group.order(),
            self.num_lambdas(),
            self.num_kernels()
        );
        for (l, lambda) in self.lambdas.iter().enumerate() {
            for i in 0..self.num_kernels() {
                if let Some(v) = self.value(l, i) {
                    let join = |xs: &[u32], shift: u32| {
                        xs.iter().map(|x| (x + shift).to_string()).collect::<Vec<_>>().join(",")
                    };
                    s.push_str(&format!(
                        "lambda={} kernel={} perm={} weights={}\n",
                        lambda,
                        i + 1,
                        join(&v.perm, 1),
                        join(&v.weights, 0)
                    ));
                }
            }
        }
        s
    }
}
