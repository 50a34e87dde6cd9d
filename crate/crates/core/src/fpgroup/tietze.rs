//! Tietze eliminations driven by relators of length one and two.

use std::collections::HashSet;

use crate::presentation::{canonical_relator, cyclic_reduce, free_reduce, Letter, Presentation, Word};

/// A presentation after elimination, with each original generator written
/// as a word (of length at most one) in the surviving generators.
#[derive(Clone, Debug)]
pub struct Reduced {
    pub pres: Presentation,
    pub images: Vec<Word>,
}

impl Reduced {
    pub fn map_word(&self, w: &[Letter]) -> Word {
        let mut out = Vec::new();
        for l in w {
            let img = &self.images[l.gen() as usize];
            if l.is_inverse() {
                out.extend(img.iter().rev().map(|x| x.inverse()));
            } else {
                out.extend_from_slice(img);
            }
        }
        free_reduce(&out)
    }
}

/// `value[g]`: `None` when `g = 1`, else `(root, inverted)`.
struct Subst {
    value: Vec<Option<(u32, bool)>>,
}

impl Subst {
    fn resolve(&mut self, g: u32) -> Option<(u32, bool)> {
        let (p, inv) = self.value[g as usize]?;
        if p == g {
            return Some((g, false));
        }
        let (root, inv2) = self.resolve(p)?;
        self.value[g as usize] = Some((root, inv ^ inv2));
        Some((root, inv ^ inv2))
    }

    fn letter(&mut self, l: Letter) -> Option<Letter> {
        self.resolve(l.gen()).map(|(root, inv)| Letter::new(root, inv ^ l.is_inverse()))
    }

    fn rewrite(&mut self, w: &[Letter]) -> Word {
        let mapped: Word = w.iter().filter_map(|&l| self.letter(l)).collect();
        cyclic_reduce(&mapped)
    }
}

/// Repeatedly uses relators `g^{±1}` to kill `g` and `g^{±1} h^{±1}` to
/// replace `g` by a power of `h`, until none remain.
pub fn eliminate_short_relators(p: &Presentation) -> Reduced {
    let n = p.num_generators();
    let mut s = Subst {
        value: (0..n as u32).map(|g| Some((g, false))).collect(),
    };
    let mut rels: Vec<Word> = p.relators.clone();
    loop {
        let mut changed = false;
        let mut next = Vec::with_capacity(rels.len());
        let mut seen = HashSet::new();
        for w in &rels {
            let w = s.rewrite(w);
            match w.len() {
                0 => {}
                1 => {
                    let (root, _) = s.resolve(w[0].gen()).expect("rewritten letters are live");
                    s.value[root as usize] = None;
                    changed = true;
                }
                2 if w[0].gen() != w[1].gen() => {
                    // a b = 1 gives a = b^{-1}; eliminate the larger root.
                    let (a, b) = (w[0], w[1]);
                    let (kill, keep) = if a.gen() > b.gen() { (a, b.inverse()) } else { (b, a.inverse()) };
                    // kill = keep, so kill.gen() = keep^{±1}.
                    s.value[kill.gen() as usize] = Some((keep.gen(), keep.is_inverse() ^ kill.is_inverse()));
                    changed = true;
                }
                _ => {
                    if seen.insert(canonical_relator(&w)) {
                        next.push(w);
                    }
                }
            }
        }
        rels = next;
        if !changed {
            break;
        }
    }
    let mut new_id = vec![u32::MAX; n];
    let mut names = Vec::new();
    for g in 0..n as u32 {
        if s.resolve(g) == Some((g, false)) {
            new_id[g as usize] = names.len() as u32;
            names.push(p.generators[g as usize].clone());
        }
    }
    let images: Vec<Word> = (0..n as u32)
        .map(|g| match s.resolve(g) {
            None => Vec::new(),
            Some((root, inv)) => vec![Letter::new(new_id[root as usize], inv)],
        })
        .collect();
    let mut pres = Presentation::new(names);
    let mut tags = Vec::new();
    for w in &rels {
        let w: Word = w.iter().map(|l| Letter::new(new_id[l.gen() as usize], l.is_inverse())).collect();
        pres.relators.push(w);
        tags.push(crate::presentation::RelTag::Derived);
    }
    pres.tags = tags;
    pres.dedup();
    Reduced { pres, images }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fpgroup::{todd_coxeter, DEFAULT_MAX_COSETS};
    use crate::presentation::{gen, gen_inv, RelTag};

    #[test]
    fn eliminates_and_preserves_order() {
        // s, t, u with u = t^{-1}, v = 1; s^2, t^2, (s u)^3.
        let mut p = Presentation::new(vec!["s".into(), "t".into(), "u".into(), "v".into()]);
        p.push(&[gen(2), gen(1)], RelTag::Derived);
        p.push(&[gen(3)], RelTag::Derived);
        p.push(&[gen(0), gen(0)], RelTag::Derived);
        p.push(&[gen(1), gen(1)], RelTag::Derived);
        p.push(&[gen(0), gen(2), gen(0), gen(2), gen(0), gen(2), gen(3)], RelTag::Derived);
        let r = eliminate_short_relators(&p);
        assert_eq!(r.pres.generators, vec!["s", "t"]);
        assert_eq!(r.images[3], vec![]);
        assert_eq!(r.images[2], vec![gen_inv(1)]);
        let before = todd_coxeter(&p, &[], DEFAULT_MAX_COSETS).unwrap().order();
        let after = todd_coxeter(&r.pres, &[], DEFAULT_MAX_COSETS).unwrap().order();
        assert_eq!((before, after), (6, 6));
    }

    #[test]
    fn chains_of_substitutions() {
        let mut p = Presentation::new((0..5).map(|k| format!("g{k}")).collect());
        for k in 0..4 {
            p.push(&[gen(k), gen_inv(k + 1)], RelTag::Derived);
        }
        p.push(&[gen(4), gen(4), gen(4)], RelTag::Derived);
        let r = eliminate_short_relators(&p);
        assert_eq!(r.pres.num_generators(), 1);
        assert_eq!(todd_coxeter(&r.pres, &[], 100).unwrap().order(), 3);
        assert_eq!(r.map_word(&[gen(4), gen_inv(0)]), vec![]);
    }
}
