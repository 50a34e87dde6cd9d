//! Elements of `H ≅ G ≀ S_r`, written as `x_j ↦ a_j · x_{jφ̄}` for `j ≤ r`.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{Elem, Group, IDENTITY};

/// An element of the wreath product `G ≀ S_r`.
///
/// `perm[j]` is the 0-based image of `x_j` and `weights[j]` its `G`-weight.
/// Products compose left to right, matching composition in `End F_n(G)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct WreathElem {
    pub perm: Vec<u32>,
    pub weights: Vec<Elem>,
}

impl WreathElem {
    pub fn identity(r: usize) -> WreathElem {
        WreathElem {
            perm: (0..r as u32).collect(),
            weights: vec![IDENTITY; r],
        }
    }

    /// Checks that `perm` is a bijection and weights are in range.
    pub fn new(g: &Group, perm: Vec<u32>, weights: Vec<Elem>) -> Result<WreathElem> {
        let r = perm.len();
        if weights.len() != r {
            return Err(Error::Parse(format!("{} targets but {} weights", r, weights.len())));
        }
        let mut seen = vec![false; r];
        for &t in &perm {
            let t = t as usize;
            if t >= r || std::mem::replace(&mut seen[t], true) {
                return Err(Error::Parse(format!(
                    "targets {:?} are not a permutation of 1..{r}",
                    perm.iter().map(|t| t + 1).collect::<Vec<_>>()
                )));
            }
        }
        for &w in &weights {
            g.check(w)?;
        }
        Ok(WreathElem { perm, weights })
    }

    /// Parses `t:g;t:g;...` with 1-based targets.
    pub fn parse(g: &Group, text: &str) -> Result<WreathElem> {
        let (targets, weights) = parse_entries(text)?;
        WreathElem::new(g, targets, weights)
    }

    pub fn rank(&self) -> usize {
        self.perm.len()
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(j, &t)| t as usize == j)
            && self.weights.iter().all(|&w| w == IDENTITY)
    }

    /// `self` then `other`: `x_j ↦ a_j b_{jφ̄} x_{jφ̄ψ̄}`.
    pub fn mul(&self, g: &Group, other: &WreathElem) -> WreathElem {
        debug_assert_eq!(self.rank(), other.rank());
        let mut perm = Vec::with_capacity(self.rank());
        let mut weights = Vec::with_capacity(self.rank());
        for (&t, &w) in self.perm.iter().zip(&self.weights) {
            perm.push(other.perm[t as usize]);
            weights.push(g.mul(w, other.weights[t as usize]));
        }
        WreathElem { perm, weights }
    }

    pub fn inv(&self, g: &Group) -> WreathElem {
        let r = self.rank();
        let mut perm = vec![0; r];
        let mut weights = vec![IDENTITY; r];
        for (j, (&t, &w)) in self.perm.iter().zip(&self.weights).enumerate() {
            perm[t as usize] = j as u32;
            weights[t as usize] = g.inv(w);
        }
        WreathElem { perm, weights }
    }

    /// Position `j` with `x_j ↦ a x_target`, together with `a`.
    pub fn preimage(&self, target: usize) -> (usize, Elem) {
        let j = self
            .perm
            .iter()
            .position(|&t| t as usize == target)
            .expect("perm is a bijection");
        (j, self.weights[j])
    }

    /// `ι_{a,i}`: weight `a` at slot `i` (0-based), identity permutation.
    pub fn iota(r: usize, a: Elem, i: usize) -> WreathElem {
        let mut e = WreathElem::identity(r);
        e.weights[i] = a;
        e
    }

    /// The simple form fixing all but slots `k..=k+m` (0-based), cycling
    /// `x_k → x_{k+1} → … → x_{k+m} → a·x_k`.
    pub fn simple_form(r: usize, k: usize, m: usize, a: Elem) -> WreathElem {
        let mut e = WreathElem::identity(r);
        for s in k..k + m {
            e.perm[s] = s as u32 + 1;
        }
        e.perm[k + m] = k as u32;
        e.weights[k + m] = a;
        e
    }

    /// `τ_k = (k k+1)` with 0-based `k`.
    pub fn transposition(r: usize, k: usize) -> WreathElem {
        WreathElem::simple_form(r, k, 1, IDENTITY)
    }

    /// Canonical text form, 1-based targets: `2:0;1:1`.
    pub fn canonical(&self) -> String {
        self.to_string()
    }

    /// Every element of `G ≀ S_r`, in lexicographic order of (perm, weights).
    pub fn enumerate_all(g: &Group, r: usize) -> Vec<WreathElem> {
        let mut perms = Vec::new();
        permutations(r, &mut Vec::new(), &mut vec![false; r], &mut perms);
        let m = g.order() as u32;
        let total = (m as usize).pow(r as u32);
        let mut out = Vec::with_capacity(perms.len() * total);
        for perm in perms {
            for code in 0..total {
                let mut weights = vec![0; r];
                let mut c = code;
                for w in weights.iter_mut().rev() {
                    *w = (c % m as usize) as Elem;
                    c /= m as usize;
                }
                out.push(WreathElem { perm: perm.clone(), weights });
            }
        }
        out
    }
}

fn permutations(r: usize, prefix: &mut Vec<u32>, used: &mut [bool], out: &mut Vec<Vec<u32>>) {
    if prefix.len() == r {
        out.push(prefix.clone());
        return;
    }
    for i in 0..r {
        if !used[i] {
            used[i] = true;
            prefix.push(i as u32);
            permutations(r, prefix, used, out);
            prefix.pop();
            used[i] = false;
        }
    }
}

/// Parses `t:g;...` entries into 0-based targets and weights.
pub(crate) fn parse_entries(text: &str) -> Result<(Vec<u32>, Vec<Elem>)> {
    let mut targets = Vec::new();
    let mut weights = Vec::new();
    for entry in text.trim().split(';').map(str::trim).filter(|e| !e.is_empty()) {
        let (t, w) = entry
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("entry {entry:?} is not t:g")))?;
        let t: u32 = t.trim().parse().map_err(|_| Error::Parse(format!("bad target {t:?}")))?;
        if t == 0 {
            return Err(Error::Parse("targets are 1-based".into()));
        }
        let w: Elem = w.trim().parse().map_err(|_| Error::Parse(format!("bad weight {w:?}")))?;
        targets.push(t - 1);
        weights.push(w);
    }
    if targets.is_empty() {
        return Err(Error::Parse("no entries".into()));
    }
    Ok((targets, weights))
}

pub(crate) fn write_entries(f: &mut fmt::Formatter<'_>, targets: &[u32], weights: &[Elem]) -> fmt::Result {
    for (j, (t, w)) in targets.iter().zip(weights).enumerate() {
        if j > 0 {
            write!(f, ";")?;
        }
        write!(f, "{}:{}", t + 1, w)?;
    }
    Ok(())
}

impl fmt::Display for WreathElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_entries(f, &self.perm, &self.weights)
    }
}

impl fmt::Debug for WreathElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "W[{self}]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        let z2 = Group::cyclic(2).unwrap();
        let e = WreathElem::parse(&z2, "3:0;2:1;4:0;1:0").unwrap();
        assert_eq!(e.perm, vec![2, 1, 3, 0]);
        assert_eq!(e.weights, vec![0, 1, 0, 0]);
        assert_eq!(e.to_string(), "3:0;2:1;4:0;1:0");
        assert!(WreathElem::parse(&z2, "1:0;1:0").is_err());
        assert!(WreathElem::parse(&z2, "1:2;2:0").is_err());
        assert!(WreathElem::parse(&z2, "0:0").is_err());
    }

    #[test]
    fn group_laws_small() {
        for g in [Group::trivial(), Group::cyclic(2).unwrap(), Group::symmetric(3).unwrap()] {
            let all = WreathElem::enumerate_all(&g, 2);
            assert_eq!(all.len(), g.order().pow(2) * 2);
            let id = WreathElem::identity(2);
            for x in &all {
                assert_eq!(x.mul(&g, &x.inv(&g)), id);
                assert_eq!(x.inv(&g).mul(&g, x), id);
                for y in &all {
                    for z in all.iter().step_by(3) {
                        assert_eq!(x.mul(&g, y).mul(&g, z), x.mul(&g, &y.mul(&g, z)));
                    }
                }
            }
        }
    }

    #[test]
    fn simple_forms() {
        let z2 = Group::cyclic(2).unwrap();
        let c = WreathElem::simple_form(4, 1, 2, 1);
        assert_eq!(c.to_string(), "1:0;3:0;4:0;2:1");
        assert_eq!(WreathElem::transposition(3, 0).to_string(), "2:0;1:0;3:0");
        assert_eq!(WreathElem::iota(3, 1, 2).to_string(), "1:0;2:0;3:1");
        assert!(WreathElem::simple_form(3, 0, 0, 0).is_identity());
        let t = WreathElem::transposition(3, 1);
        assert!(t.mul(&z2, &t).is_identity());
    }
}
