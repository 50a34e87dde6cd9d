//! Simplification of the Gray–Ruškuc presentation: trivial generators at
//! `ε`, merging along connectivity, then consistency merges certified by
//! singular quadruples found in the matrix.

use std::collections::HashSet;
use std::fmt;

use serde::Serialize;

use super::connectivity::PositionGraph;
use super::rising::{decompose, is_simple_form, rising_point, Case};
use crate::error::{Error, Result};
use crate::fpgroup::{eliminate_short_relators, Reduced};
use crate::presentation::{canonical_relator, Letter, Presentation, Word};
use crate::rees::{Entry, SandwichMatrix};
use crate::wreath::WreathElem;

/// Positions with `p_{λi} = φ`, `p_{μi} = φ′`, `p_{λk} = ψ`, `p_{μk} = σ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub i: usize,
    pub k: usize,
    pub lambda: usize,
    pub mu: usize,
}

impl Witness {
    pub fn describe(&self, m: &SandwichMatrix) -> String {
        format!(
            "i={} k={} λ={} μ={}",
            self.i + 1,
            self.k + 1,
            m.lambdas[self.lambda],
            m.lambdas[self.mu]
        )
    }
}

/// Brute-force search for a singular quadruple of positions.
pub fn find_singular_witness(
    m: &SandwichMatrix,
    phi: &WreathElem,
    phi2: &WreathElem,
    psi: &WreathElem,
    sigma: &WreathElem,
) -> Result<Option<Witness>> {
    let g = &m.group;
    if phi.inv(g).mul(g, psi) != phi2.inv(g).mul(g, sigma) {
        return Err(Error::Precondition(format!(
            "φ^-1 ψ ≠ φ′^-1 σ for φ={phi} φ′={phi2} ψ={psi} σ={sigma}"
        )));
    }
    let ids = [phi, phi2, psi, sigma].map(|v| m.value_id(v));
    let [Some(a), Some(b), Some(c), Some(d)] = ids else {
        return Ok(None);
    };
    let (nl, nk) = (m.num_lambdas(), m.num_kernels());
    for i in 0..nk {
        for lambda in 0..nl {
            if m.entry(lambda, i) != Entry::Value(a) {
                continue;
            }
            for mu in (0..nl).filter(|&mu| m.entry(mu, i) == Entry::Value(b)) {
                for k in (0..nk).filter(|&k| m.entry(lambda, k) == Entry::Value(c)) {
                    if m.entry(mu, k) == Entry::Value(d) {
                        return Ok(Some(Witness { i, k, lambda, mu }));
                    }
                }
            }
        }
    }
    Ok(None)
}

/// With `p_{λj} = α = β·γ` fixed, finds `t, μ` such that `[[β, α], [ε, γ]]`
/// sits at rows `t, j` and columns `λ, μ`. The R3 relator of that square
/// together with `f_{t,μ} = 1` gives `f_{j,λ} = f_{j,μ} f_{t,λ}`.
pub fn find_split_witness(m: &SandwichMatrix, j: usize, lambda: usize, beta: u32, gamma: u32) -> Option<Witness> {
    let eps = Entry::Value(m.identity_id());
    let rows: Vec<usize> = (0..m.num_kernels()).filter(|&t| m.entry(lambda, t) == Entry::Value(beta)).collect();
    for mu in (0..m.num_lambdas()).filter(|&mu| m.entry(mu, j) == Entry::Value(gamma)) {
        if let Some(&t) = rows.iter().find(|&&t| m.entry(mu, t) == eps) {
            return Some(Witness { i: t, k: j, lambda, mu });
        }
    }
    None
}

/// One consistency merge: the components of `value` were identified using
/// `value = beta · gamma`, one witness per component.
#[derive(Clone, Debug, Serialize)]
pub struct Merge {
    pub value: WreathElem,
    pub beta: WreathElem,
    pub gamma: WreathElem,
    pub case: Case,
    pub witnesses: Vec<Witness>,
}

impl Merge {
    pub fn describe(&self, m: &SandwichMatrix) -> String {
        let w: Vec<String> = self.witnesses.iter().map(|w| format!("[{}]", w.describe(m))).collect();
        format!(
            "merge value={} beta={} gamma={} case={:?} witnesses={}",
            self.value,
            self.beta,
            self.gamma,
            self.case,
            w.join(" ")
        )
    }
}

#[derive(Clone, Debug)]
pub struct Simplified {
    /// After the class identifications, before Tietze elimination.
    pub classes: Presentation,
    /// `class_of[g]` for each original generator; `None` for the trivial class.
    pub class_of: Vec<Option<u32>>,
    pub reduced: Reduced,
    pub merges: Vec<Merge>,
}

impl Simplified {
    pub fn presentation(&self) -> &Presentation {
        &self.reduced.pres
    }

    /// An original generator as a word over the final generators.
    pub fn image(&self, g: u32) -> Word {
        match self.class_of[g as usize] {
            None => Vec::new(),
            Some(c) => self.reduced.map_word(&[Letter::new(c, false)]),
        }
    }

    pub fn map_word(&self, w: &[Letter]) -> Word {
        let mut out = Vec::new();
        for l in w {
            let img = self.image(l.gen());
            if l.is_inverse() {
                out.extend(img.iter().rev().map(|x| x.inverse()));
            } else {
                out.extend(img);
            }
        }
        crate::presentation::free_reduce(&out)
    }
}

impl fmt::Display for Simplified {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "classes={} class_relators={} generators={} relators={} merges={}",
            self.classes.num_generators(),
            self.classes.relators.len(),
            self.reduced.pres.num_generators(),
            self.reduced.pres.relators.len(),
            self.merges.len()
        )
    }
}

/// `p` must be the Gray–Ruškuc presentation of `m` with generators numbered
/// like `pg.index`, and `pg` its connectivity graph.
pub fn simplify_presentation(p: &Presentation, m: &SandwichMatrix, pg: &PositionGraph) -> Result<Simplified> {
    if p.num_generators() != pg.index.len() {
        return Err(Error::Precondition(format!(
            "presentation has {} generators but the matrix has {} nonzero positions",
            p.num_generators(),
            pg.index.len()
        )));
    }
    let g = &m.group;
    let mut pg = pg.clone();
    let by_value = pg.nodes_by_value(m);
    let eps = m.identity_id() as usize;
    for w in by_value[eps].windows(2) {
        pg.union(w[0], w[1]);
    }
    let trivial = by_value[eps].first().copied();
    let root_or_trivial = |pg: &PositionGraph, x: u32| {
        let r = pg.root(x);
        if Some(r) == trivial.map(|t| pg.root(t)) {
            None
        } else {
            Some(r)
        }
    };

    // Simple forms first, then by rising point.
    let mut order: Vec<usize> = (0..m.values.len()).filter(|&v| v != eps).collect();
    order.sort_by_key(|&v| {
        let a = &m.values[v];
        (is_simple_form(a).is_none(), rising_point(a), v)
    });

    let mut merges = Vec::new();
    for v in order {
        let nodes = &by_value[v];
        if pg.components_among(nodes) <= 1 {
            continue;
        }
        let alpha = &m.values[v];
        let d = match decompose(g, alpha) {
            Ok(d) => d,
            Err(Error::NotDecomposable(rp)) => {
                return Err(Error::WitnessNotFound(format!(
                    "{alpha} has rising point {rp} and {} components",
                    pg.components_among(nodes)
                )))
            }
            Err(e) => return Err(e),
        };
        let (Some(beta), Some(gamma)) = (m.value_id(&d.beta), m.value_id(&d.gamma)) else {
            return Err(Error::WitnessNotFound(format!("{alpha} = {} · {} but a factor is not in P", d.beta, d.gamma)));
        };
        let mut roots: Vec<u32> = nodes.iter().map(|&x| pg.root(x)).collect();
        roots.sort_unstable();
        roots.dedup();
        let mut witnesses = Vec::new();
        let mut factors = None;
        for &root in &roots {
            let found = nodes.iter().filter(|&&x| pg.root(x) == root).find_map(|&x| {
                let (j, lambda) = pg.index.positions[x as usize];
                find_split_witness(m, j, lambda, beta, gamma)
            });
            let Some(w) = found else {
                return Err(Error::WitnessNotFound(format!(
                    "no [[β, α], [ε, γ]] square for α={alpha} at component of {}",
                    p.generators[root as usize]
                )));
            };
            let node = |i, l| pg.index.gen(i, l).expect("witness positions are nonzero");
            let these = (
                root_or_trivial(&pg, node(w.i, w.lambda)),
                root_or_trivial(&pg, node(w.k, w.mu)),
            );
            match factors {
                None => factors = Some(these),
                Some(f) if f == these => {}
                Some(_) => {
                    return Err(Error::WitnessNotFound(format!(
                        "witnesses for α={alpha} use different classes of β={} or γ={}",
                        d.beta, d.gamma
                    )))
                }
            }
            witnesses.push(w);
        }
        for w in roots.windows(2) {
            pg.union(w[0], w[1]);
        }
        merges.push(Merge {
            value: alpha.clone(),
            beta: d.beta,
            gamma: d.gamma,
            case: d.case,
            witnesses,
        });
    }

    // One generator per surviving class.
    let n = pg.index.len();
    let mut class_of = vec![None; n];
    let mut class_id = vec![u32::MAX; n];
    let mut names = Vec::new();
    let mut value_of_root = vec![usize::MAX; n];
    for (v, nodes) in by_value.iter().enumerate() {
        for &x in nodes {
            value_of_root[pg.root(x) as usize] = v;
        }
    }
    for x in 0..n as u32 {
        let Some(root) = root_or_trivial(&pg, x) else { continue };
        if class_id[root as usize] == u32::MAX {
            class_id[root as usize] = names.len() as u32;
            let v = value_of_root[root as usize];
            let whole = by_value[v].iter().all(|&y| pg.root(y) == root);
            names.push(if whole {
                format!("f[{}]", m.values[v].canonical())
            } else {
                p.generators[root as usize].clone()
            });
        }
        class_of[x as usize] = Some(class_id[root as usize]);
    }
    let mut classes = Presentation::new(names);
    let mut seen = HashSet::new();
    for (w, &tag) in p.relators.iter().zip(&p.tags) {
        let mapped: Word = w
            .iter()
            .filter_map(|l| class_of[l.gen() as usize].map(|c| Letter::new(c, l.is_inverse())))
            .collect();
        let c = canonical_relator(&mapped);
        if !c.is_empty() && seen.insert(c) {
            classes.push(&mapped, tag);
        }
    }
    let reduced = eliminate_short_relators(&classes);
    Ok(Simplified { classes, class_of, reduced, merges })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fpgroup::{todd_coxeter, word_equal, DEFAULT_MAX_COSETS};
    use crate::group::Group;
    use crate::presentation::{build_gr_presentation, evaluate, gen, schreier_build};
    use crate::reduction::connectivity;
    use crate::rees::{build_sandwich, DEFAULT_MAX_ENTRIES};

    fn setup(g: &Group, n: usize, r: usize) -> (SandwichMatrix, Presentation, PositionGraph) {
        let m = build_sandwich(g, n, r, DEFAULT_MAX_ENTRIES).unwrap();
        let s = schreier_build(n, r).unwrap();
        let (p, _) = build_gr_presentation(&m, &s, usize::MAX).unwrap();
        let pg = connectivity(&m);
        (m, p, pg)
    }

    #[test]
    fn witness_precondition_and_trivial_case() {
        let g = Group::cyclic(2).unwrap();
        let m = build_sandwich(&g, 4, 2, DEFAULT_MAX_ENTRIES).unwrap();
        let e = WreathElem::identity(2);
        let w = find_singular_witness(&m, &e, &e, &e, &e).unwrap().unwrap();
        assert_eq!(m.value(w.lambda, w.i), Some(&e));
        let a = WreathElem::iota(2, 1, 0);
        assert!(matches!(find_singular_witness(&m, &e, &e, &a, &e), Err(Error::Precondition(_))));
    }

    #[test]
    fn split_squares_exist() {
        let g = Group::cyclic(2).unwrap();
        let m = build_sandwich(&g, 5, 3, DEFAULT_MAX_ENTRIES).unwrap();
        let mut checked = 0;
        for alpha in &m.values {
            let Ok(d) = decompose(&g, alpha) else { continue };
            let w = find_singular_witness(&m, &d.beta, &WreathElem::identity(3), alpha, &d.gamma).unwrap();
            let w = w.expect("square exists");
            assert_eq!(m.value(w.lambda, w.k), Some(alpha));
            checked += 1;
        }
        assert!(checked > 0);
    }

    #[test]
    fn trivial_group_classes_are_values() {
        let (m, p, pg) = setup(&Group::trivial(), 5, 2);
        let s = simplify_presentation(&p, &m, &pg).unwrap();
        assert!(s.merges.is_empty());
        let mut names = s.classes.generators.clone();
        names.sort();
        let mut want: Vec<String> = m.values[1..].iter().map(|v| format!("f[{}]", v.canonical())).collect();
        want.sort();
        assert_eq!(names, want);
    }

    #[test]
    fn diagonal_merges_with_witness() {
        let g = Group::cyclic(2).unwrap();
        let (m, p, pg) = setup(&g, 4, 2);
        let s = simplify_presentation(&p, &m, &pg).unwrap();
        let diag = WreathElem::parse(&g, "1:1;2:1").unwrap();
        let merge = s.merges.iter().find(|x| x.value == diag).expect("diag(a,a) merged");
        assert_eq!(merge.witnesses.len(), 2);
        for w in &merge.witnesses {
            assert_eq!(m.value(w.lambda, w.k), Some(&diag));
            assert_eq!(m.value(w.lambda, w.i), Some(&merge.beta));
            assert_eq!(m.value(w.mu, w.k), Some(&merge.gamma));
            assert!(m.value(w.mu, w.i).unwrap().is_identity());
        }
        let nodes: Vec<u32> = m
            .occurrences(&diag)
            .iter()
            .map(|&(i, l)| pg.index.gen(i, l).unwrap())
            .collect();
        assert_eq!(nodes.len(), 2);
        assert_eq!(s.class_of[nodes[0] as usize], s.class_of[nodes[1] as usize]);
        let t = todd_coxeter(s.presentation(), &[], DEFAULT_MAX_COSETS).unwrap();
        assert_eq!(t.order(), 8);
        let (a, b) = (s.image(nodes[0]), s.image(nodes[1]));
        assert!(word_equal(&t, &a, &b).unwrap());
        // And in the unmerged presentation, after plain elimination.
        let plain = eliminate_short_relators(&p);
        let t = todd_coxeter(&plain.pres, &[], DEFAULT_MAX_COSETS).unwrap();
        assert_eq!(t.order(), 8);
        let (a, b) = (plain.map_word(&[gen(nodes[0])]), plain.map_word(&[gen(nodes[1])]));
        assert!(word_equal(&t, &a, &b).unwrap());
    }

    #[test]
    fn order_is_preserved() {
        for (g, n, r) in [
            (Group::trivial(), 4, 2),
            (Group::cyclic(2).unwrap(), 4, 1),
            (Group::cyclic(2).unwrap(), 4, 2),
            (Group::cyclic(3).unwrap(), 4, 2),
        ] {
            let (m, p, pg) = setup(&g, n, r);
            let s = simplify_presentation(&p, &m, &pg).unwrap();
            let before = todd_coxeter(&eliminate_short_relators(&p).pres, &[], DEFAULT_MAX_COSETS).unwrap();
            let after = todd_coxeter(s.presentation(), &[], DEFAULT_MAX_COSETS).unwrap();
            assert_eq!(before.order(), after.order(), "n={n} r={r} {}", g.label());
            // Relators of the simplified presentation still die in G ≀ S_r.
            let mut images = vec![WreathElem::identity(r); s.classes.num_generators()];
            for (x, c) in s.class_of.iter().enumerate() {
                if let Some(c) = c {
                    let (i, l) = pg.index.positions[x];
                    images[*c as usize] = m.value(l, i).unwrap().inv(&g);
                }
            }
            for w in &s.classes.relators {
                let v = evaluate(w, &images, WreathElem::identity(r), |a, b| a.mul(&g, b), |a| a.inv(&g));
                assert!(v.is_identity());
            }
        }
    }
}
