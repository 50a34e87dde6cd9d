//! The Gray–Ruškuc presentation `⟨F : R1, R2, R3⟩`, its value-indexed
//! quotient `⟨S : P1, P2⟩`, and Lavers' presentation of `G ≀ S_r`.

use std::collections::{HashMap, HashSet};

use super::{canonical_relator, gen, gen_inv, Letter, Presentation, RelTag, SchreierSystem, Word};
use crate::error::{Error, Result};
use crate::group::{Elem, Group, IDENTITY};
use crate::rees::{Entry, SandwichMatrix};
use crate::wreath::WreathElem;

pub const DEFAULT_MAX_RELATORS: usize = 5_000_000;

/// Generator numbering for `f_{i,λ}`, `(i,λ) ∈ K`, in `(i,λ)` order.
#[derive(Clone, Debug)]
pub struct GrIndex {
    num_lambdas: usize,
    gen_of: Vec<u32>,
    pub positions: Vec<(usize, usize)>,
}

impl GrIndex {
    pub fn new(m: &SandwichMatrix) -> GrIndex {
        let positions = m.nonzero_positions();
        let mut gen_of = vec![u32::MAX; m.num_kernels() * m.num_lambdas()];
        for (g, &(i, l)) in positions.iter().enumerate() {
            gen_of[i * m.num_lambdas() + l] = g as u32;
        }
        GrIndex {
            num_lambdas: m.num_lambdas(),
            gen_of,
            positions,
        }
    }

    pub fn gen(&self, i: usize, lambda: usize) -> Option<u32> {
        match self.gen_of[i * self.num_lambdas + lambda] {
            u32::MAX => None,
            g => Some(g),
        }
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    /// `f_{i,λ} ↦ p_{λi}^{-1}`, the assignment under which every relator dies.
    pub fn images(&self, m: &SandwichMatrix) -> Vec<WreathElem> {
        self.positions
            .iter()
            .map(|&(i, l)| m.value(l, i).expect("position in K").inv(&m.group))
            .collect()
    }
}

/// Collects relators, dropping duplicates up to rotation and inversion.
struct Sink {
    pres: Presentation,
    seen: HashSet<Word>,
    cap: usize,
}

impl Sink {
    fn push(&mut self, w: &[Letter], tag: RelTag) -> Result<()> {
        let c = canonical_relator(w);
        if c.is_empty() || !self.seen.insert(c) {
            return Ok(());
        }
        if self.pres.relators.len() >= self.cap {
            return Err(Error::ResourceLimit {
                what: "relators",
                needed: self.pres.relators.len() + 1,
                cap: self.cap,
            });
        }
        self.pres.push(w, tag);
        Ok(())
    }
}

/// Calls `emit(i, k, λ_t, λ_{t+1})` for consecutive members of each class of
/// columns on which `p_{λi}^{-1} p_{λk}` agrees, for every row pair `i < k`.
fn for_each_r3_link(m: &SandwichMatrix, mut emit: impl FnMut(usize, usize, usize, usize) -> Result<()>) -> Result<()> {
    let g = &m.group;
    let inverses: Vec<WreathElem> = m.values.iter().map(|v| v.inv(g)).collect();
    let mut quot_ids: HashMap<WreathElem, u32> = HashMap::new();
    let mut quot_of_pair: HashMap<(u32, u32), u32> = HashMap::new();
    let nk = m.num_kernels();
    let nl = m.num_lambdas();
    let mut keyed: Vec<(u32, usize)> = Vec::with_capacity(nl);
    for i in 0..nk {
        for k in i + 1..nk {
            keyed.clear();
            for l in 0..nl {
                if let (Entry::Value(a), Entry::Value(b)) = (m.entry(l, i), m.entry(l, k)) {
                    let key = *quot_of_pair.entry((a, b)).or_insert_with(|| {
                        let q = inverses[a as usize].mul(g, &m.values[b as usize]);
                        let next = quot_ids.len() as u32;
                        *quot_ids.entry(q).or_insert(next)
                    });
                    keyed.push((key, l));
                }
            }
            keyed.sort_unstable();
            for pair in keyed.windows(2) {
                if pair[0].0 == pair[1].0 {
                    emit(i, k, pair[0].1, pair[1].1)?;
                }
            }
        }
    }
    Ok(())
}

fn check_shapes(m: &SandwichMatrix, s: &SchreierSystem) -> Result<()> {
    if (m.n, m.r) != (s.n, s.r) {
        return Err(Error::Precondition(format!(
            "matrix is for n={} r={} but the Schreier system for n={} r={}",
            m.n, m.r, s.n, s.r
        )));
    }
    Ok(())
}

/// Generators `f_<i>_<u1.u2...>` for `(i,λ) ∈ K`; relators R1 from the
/// Schreier tree, R2 at `ω`, R3 as chains over matching columns.
pub fn build_gr_presentation(m: &SandwichMatrix, s: &SchreierSystem, max_relators: usize) -> Result<(Presentation, GrIndex)> {
    check_shapes(m, s)?;
    let idx = GrIndex::new(m);
    let names = idx
        .positions
        .iter()
        .map(|&(i, l)| {
            let u: Vec<String> = m.lambdas[l].0.iter().map(|x| (x + 1).to_string()).collect();
            format!("f_{}_{}", i + 1, u.join("."))
        })
        .collect();
    let mut sink = Sink {
        pres: Presentation::new(names),
        seen: HashSet::new(),
        cap: max_relators,
    };
    for (l, parent) in s.parent.iter().enumerate() {
        let Some(p) = *parent else { continue };
        let row = m
            .kernel_position(s.attach[l].as_ref().expect("non-root columns have a letter"))
            .expect("attaching kernel is listed");
        if let (Some(a), Some(b)) = (idx.gen(row, p), idx.gen(row, l)) {
            sink.push(&[gen(a), gen_inv(b)], RelTag::R1)?;
        }
    }
    for (i, &w) in m.omega.iter().enumerate() {
        let g = idx.gen(i, w).expect("ω(i) is in K");
        sink.push(&[gen(g)], RelTag::R2)?;
    }
    for_each_r3_link(m, |i, k, l0, l1| {
        let f = |row, col| idx.gen(row, col).expect("both entries nonzero");
        sink.push(&[gen_inv(f(i, l0)), gen(f(i, l1)), gen_inv(f(k, l1)), gen(f(k, l0))], RelTag::R3)
    })?;
    Ok((sink.pres, idx))
}

/// Generators `f[φ]`, one per distinct nonzero value (in `m.values` order);
/// relators P1 from singular quadruples and P2 `f_ε`.
pub fn build_quotient_presentation(m: &SandwichMatrix, max_relators: usize) -> Result<Presentation> {
    let names = m.values.iter().map(|v| format!("f[{}]", v.canonical())).collect();
    let mut sink = Sink {
        pres: Presentation::new(names),
        seen: HashSet::new(),
        cap: max_relators,
    };
    let id = |l: usize, i: usize| match m.entry(l, i) {
        Entry::Value(v) => v,
        Entry::Zero => unreachable!("links only join nonzero entries"),
    };
    for_each_r3_link(m, |i, k, l0, l1| {
        let (phi, phi2, psi, sigma) = (id(l0, i), id(l1, i), id(l0, k), id(l1, k));
        sink.push(&[gen_inv(phi), gen(phi2), gen_inv(sigma), gen(psi)], RelTag::P1)
    })?;
    sink.push(&[gen(m.identity_id())], RelTag::P2)?;
    Ok(sink.pres)
}

/// Lavers' presentation of `G ≀ S_r` on `t<i>` (`τ_i`) and `i<a>_<j>`
/// (`ι_{a,j}`, `a ≠ 1`).
pub fn lavers_presentation(g: &Group, r: usize) -> Presentation {
    let m = g.order() as u32;
    let tau = |i: usize| i as u32;
    let iota_base = r.saturating_sub(1) as u32;
    // Identity insertions are the empty word.
    let iota = |a: Elem, j: usize| -> Vec<Letter> {
        if a == IDENTITY {
            Vec::new()
        } else {
            vec![gen(iota_base + (a - 1) * r as u32 + j as u32)]
        }
    };
    let inv = |w: Vec<Letter>| super::invert(&w);
    let mut names: Vec<String> = (1..r).map(|i| format!("t{i}")).collect();
    for a in 1..m {
        for j in 1..=r {
            names.push(format!("i{a}_{j}"));
        }
    }
    let mut p = Presentation::new(names);
    let cat = |parts: &[&[Letter]]| parts.concat();
    for i in 0..r.saturating_sub(1) {
        p.push(&[gen(tau(i)), gen(tau(i))], RelTag::W1);
    }
    for i in 0..r.saturating_sub(1) {
        for j in i + 2..r.saturating_sub(1) {
            p.push(&[gen(tau(i)), gen(tau(j)), gen_inv(tau(i)), gen_inv(tau(j))], RelTag::W2);
        }
    }
    for i in 0..r.saturating_sub(2) {
        let (s, t) = (tau(i), tau(i + 1));
        p.push(&[gen(s), gen(t), gen(s), gen_inv(t), gen_inv(s), gen_inv(t)], RelTag::W3);
    }
    let non_id: Vec<Elem> = (1..m).collect();
    for i in 0..r {
        for j in i + 1..r {
            for &a in &non_id {
                for &b in &non_id {
                    p.push(&cat(&[&iota(a, i), &iota(b, j), &inv(iota(a, i)), &inv(iota(b, j))]), RelTag::W4);
                }
            }
        }
    }
    for i in 0..r {
        for &a in &non_id {
            for &b in &non_id {
                p.push(&cat(&[&iota(a, i), &iota(b, i), &inv(iota(g.mul(a, b), i))]), RelTag::W5);
            }
        }
    }
    for i in 0..r {
        for j in 0..r.saturating_sub(1) {
            if i == j || i == j + 1 {
                continue;
            }
            for &a in &non_id {
                let t = [gen(tau(j))];
                p.push(&cat(&[&iota(a, i), &t, &inv(iota(a, i)), &[gen_inv(tau(j))]]), RelTag::W6);
            }
        }
    }
    for i in 0..r.saturating_sub(1) {
        for &a in &non_id {
            let t = [gen(tau(i))];
            p.push(&cat(&[&iota(a, i), &t, &inv(iota(a, i + 1)), &[gen_inv(tau(i))]]), RelTag::W7);
        }
    }
    p
}

/// The tautological assignment for [`lavers_presentation`].
pub fn lavers_images(g: &Group, r: usize) -> Vec<WreathElem> {
    let mut out: Vec<WreathElem> = (0..r.saturating_sub(1)).map(|i| WreathElem::transposition(r, i)).collect();
    for a in 1..g.order() as Elem {
        for j in 0..r {
            out.push(WreathElem::iota(r, a, j));
        }
    }
    out
}
