//! Group presentations: words, relators, the text file format, and the
//! constructions of presentations for the maximal subgroup and for the
//! wreath product.

mod build;
mod schreier;

use std::collections::{HashMap, HashSet};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

pub use build::{
    build_gr_presentation, build_quotient_presentation, lavers_images, lavers_presentation, GrIndex, DEFAULT_MAX_RELATORS,
};
pub use schreier::{alpha_letter, attach_kernel, schreier_build, SchreierSystem};

/// A generator or its inverse, packed as `2·gen + inv`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Letter(pub u32);

impl Letter {
    pub fn new(gen: u32, inverse: bool) -> Letter {
        Letter(2 * gen + inverse as u32)
    }

    pub fn gen(self) -> u32 {
        self.0 >> 1
    }

    pub fn is_inverse(self) -> bool {
        self.0 & 1 == 1
    }

    pub fn inverse(self) -> Letter {
        Letter(self.0 ^ 1)
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "g{}{}", self.gen(), if self.is_inverse() { "'" } else { "" })
    }
}

pub type Word = Vec<Letter>;

pub fn gen(g: u32) -> Letter {
    Letter::new(g, false)
}

pub fn gen_inv(g: u32) -> Letter {
    Letter::new(g, true)
}

pub fn invert(w: &[Letter]) -> Word {
    w.iter().rev().map(|l| l.inverse()).collect()
}

pub fn free_reduce(w: &[Letter]) -> Word {
    let mut out: Word = Vec::with_capacity(w.len());
    for &l in w {
        if out.last() == Some(&l.inverse()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

/// Free and cyclic reduction.
pub fn cyclic_reduce(w: &[Letter]) -> Word {
    let w = free_reduce(w);
    let mut a = 0;
    let mut b = w.len();
    while b - a >= 2 && w[a] == w[b - 1].inverse() {
        a += 1;
        b -= 1;
    }
    w[a..b].to_vec()
}

/// The least word among all cyclic rotations of `w` and of its inverse.
pub fn canonical_relator(w: &[Letter]) -> Word {
    let w = cyclic_reduce(w);
    if w.is_empty() {
        return w;
    }
    let inv = invert(&w);
    let mut best: Option<Word> = None;
    for base in [&w, &inv] {
        for s in 0..base.len() {
            let rot: Word = base[s..].iter().chain(&base[..s]).copied().collect();
            if best.as_ref().is_none_or(|b| rot < *b) {
                best = Some(rot);
            }
        }
    }
    best.unwrap()
}

/// Evaluates a word under an assignment of generators.
pub fn evaluate<T: Clone>(w: &[Letter], images: &[T], identity: T, mul: impl Fn(&T, &T) -> T, inv: impl Fn(&T) -> T) -> T {
    w.iter().fold(identity, |acc, l| {
        let x = &images[l.gen() as usize];
        if l.is_inverse() {
            mul(&acc, &inv(x))
        } else {
            mul(&acc, x)
        }
    })
}

/// Where a relator came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum RelTag {
    R1,
    R2,
    R3,
    P1,
    P2,
    W1,
    W2,
    W3,
    W4,
    W5,
    W6,
    W7,
    /// Introduced by simplification.
    Derived,
}

impl RelTag {
    pub const ALL: [RelTag; 13] = [
        RelTag::R1,
        RelTag::R2,
        RelTag::R3,
        RelTag::P1,
        RelTag::P2,
        RelTag::W1,
        RelTag::W2,
        RelTag::W3,
        RelTag::W4,
        RelTag::W5,
        RelTag::W6,
        RelTag::W7,
        RelTag::Derived,
    ];
}

impl fmt::Display for RelTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl std::str::FromStr for RelTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<RelTag> {
        use RelTag::*;
        Ok(match s {
            "R1" => R1,
            "R2" => R2,
            "R3" => R3,
            "P1" => P1,
            "P2" => P2,
            "W1" => W1,
            "W2" => W2,
            "W3" => W3,
            "W4" => W4,
            "W5" => W5,
            "W6" => W6,
            "W7" => W7,
            "Derived" => Derived,
            _ => return Err(Error::Parse(format!("unknown relator tag {s:?}"))),
        })
    }
}

/// A finite presentation `⟨generators : relators⟩`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Presentation {
    pub generators: Vec<String>,
    pub relators: Vec<Word>,
    pub tags: Vec<RelTag>,
}

impl Presentation {
    pub fn new(generators: Vec<String>) -> Presentation {
        Presentation {
            generators,
            ..Default::default()
        }
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    /// Adds a freely reduced relator; empty words are dropped.
    pub fn push(&mut self, w: &[Letter], tag: RelTag) {
        let w = free_reduce(w);
        if !w.is_empty() {
            self.relators.push(w);
            self.tags.push(tag);
        }
    }

    pub fn count_tag(&self, tag: RelTag) -> usize {
        self.tags.iter().filter(|&&t| t == tag).count()
    }

    /// Drops relators that coincide up to rotation and inversion, keeping
    /// the first occurrence.
    pub fn dedup(&mut self) {
        let mut seen = HashSet::new();
        let mut keep = Vec::new();
        for (w, t) in self.relators.drain(..).zip(self.tags.drain(..)) {
            if seen.insert(canonical_relator(&w)) {
                keep.push((w, t));
            }
        }
        (self.relators, self.tags) = keep.into_iter().unzip();
    }

    pub fn word_to_string(&self, w: &[Letter]) -> String {
        w.iter()
            .map(|l| format!("{}{}", self.generators[l.gen() as usize], if l.is_inverse() { "'" } else { "" }))
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let index: HashMap<&str, u32> = self.generators.iter().enumerate().map(|(k, g)| (g.as_str(), k as u32)).collect();
        parse_word_with(&index, text)
    }

    /// The text format: `generators k`, then `gen <name>` lines, then
    /// `rel <letters>` lines with a trailing `# <tag>`.
    pub fn to_text(&self) -> String {
        let mut s = format!("generators {}\n", self.generators.len());
        for g in &self.generators {
            s.push_str(&format!("gen {g}\n"));
        }
        for (w, t) in self.relators.iter().zip(&self.tags) {
            s.push_str(&format!("rel {} # {t}\n", self.word_to_string(w)));
        }
        s
    }

    pub fn parse(text: &str) -> Result<Presentation> {
        let mut declared = None;
        let mut p = Presentation::default();
        let mut index: HashMap<String, u32> = HashMap::new();
        for (ln, raw) in text.lines().enumerate() {
            let (body, comment) = match raw.split_once('#') {
                Some((b, c)) => (b.trim(), Some(c.trim())),
                None => (raw.trim(), None),
            };
            if body.is_empty() {
                continue;
            }
            let err = |msg: &str| Error::Parse(format!("line {}: {msg}", ln + 1));
            let (kw, rest) = body.split_once(char::is_whitespace).unwrap_or((body, ""));
            match kw {
                "generators" => declared = Some(rest.trim().parse::<usize>().map_err(|_| err("bad generator count"))?),
                "gen" => {
                    let name = rest.trim();
                    if name.is_empty() || name.contains(char::is_whitespace) || name.ends_with('\'') {
                        return Err(err("bad generator name"));
                    }
                    if index.insert(name.to_string(), p.generators.len() as u32).is_some() {
                        return Err(err("duplicate generator"));
                    }
                    p.generators.push(name.to_string());
                }
                "rel" => {
                    let idx: HashMap<&str, u32> = index.iter().map(|(k, v)| (k.as_str(), *v)).collect();
                    let w = parse_word_with(&idx, rest).map_err(|e| err(&e.to_string()))?;
                    let tag = match comment {
                        Some(c) if !c.is_empty() => c.parse().unwrap_or(RelTag::Derived),
                        _ => RelTag::Derived,
                    };
                    p.push(&w, tag);
                }
                _ => return Err(err(&format!("unknown keyword {kw:?}"))),
            }
        }
        match declared {
            Some(k) if k == p.generators.len() => Ok(p),
            Some(k) => Err(Error::Parse(format!("declared {k} generators, found {}", p.generators.len()))),
            None => Err(Error::Parse("missing `generators` header".into())),
        }
    }
}

fn parse_word_with(index: &HashMap<&str, u32>, text: &str) -> Result<Word> {
    text.split_whitespace()
        .map(|tok| {
            let (name, inv) = match tok.strip_suffix('\'') {
                Some(n) => (n, true),
                None => (tok, false),
            };
            index
                .get(name)
                .map(|&g| Letter::new(g, inv))
                .ok_or_else(|| Error::Parse(format!("unknown generator {name:?}")))
        })
        .collect()
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}
