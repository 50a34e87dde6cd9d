//! Endomorphisms of the free `G`-act `F_n(G)`.
//!
//! An endomorphism `α` is fixed by its action on the free generators,
//! `x_j α = w_j · x_{jᾱ}`, so it is stored as the pair of arrays
//! `(weights, targets)`. Maps act on the right and compose left to right.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{Elem, Group, IDENTITY};
use crate::wreath::{parse_entries, write_entries, WreathElem};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Endo {
    /// `w_j`, the weight of `x_j α`.
    pub weights: Vec<Elem>,
    /// `jᾱ`, 0-based.
    pub targets: Vec<u32>,
}

/// The kernel of an endomorphism as a congruence on `F_n(G)`: the partition
/// `ker ᾱ` with blocks sorted by minimum, and weights normalized to be the
/// identity at each block minimum.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct KernelData {
    pub blocks: Vec<Vec<u32>>,
    pub mins: Vec<u32>,
    pub normweights: Vec<Elem>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GreenRel {
    L,
    R,
    H,
    D,
}

impl Endo {
    pub fn identity(n: usize) -> Endo {
        Endo {
            weights: vec![IDENTITY; n],
            targets: (0..n as u32).collect(),
        }
    }

    pub fn new(g: &Group, weights: Vec<Elem>, targets: Vec<u32>) -> Result<Endo> {
        let n = targets.len();
        if weights.len() != n {
            return Err(Error::RankMismatch(weights.len(), n));
        }
        if let Some(&t) = targets.iter().find(|&&t| t as usize >= n) {
            return Err(Error::IndexOutOfRange {
                index: t as usize + 1,
                bound: n,
            });
        }
        for &w in &weights {
            g.check(w)?;
        }
        Ok(Endo { weights, targets })
    }

    /// Parses the text form `t:g;t:g;...` (1-based targets), one entry per
    /// coordinate: entry `j` means `x_j ↦ g · x_t`.
    pub fn parse(g: &Group, text: &str) -> Result<Endo> {
        let (targets, weights) = parse_entries(text)?;
        Endo::new(g, weights, targets)
    }

    pub fn n(&self) -> usize {
        self.targets.len()
    }

    /// `self` then `other`.
    pub fn compose(&self, g: &Group, other: &Endo) -> Result<Endo> {
        if self.n() != other.n() {
            return Err(Error::RankMismatch(self.n(), other.n()));
        }
        Ok(self.then(g, other))
    }

    /// Unchecked [`Endo::compose`].
    pub fn then(&self, g: &Group, other: &Endo) -> Endo {
        let mut weights = Vec::with_capacity(self.n());
        let mut targets = Vec::with_capacity(self.n());
        for (&t, &w) in self.targets.iter().zip(&self.weights) {
            targets.push(other.targets[t as usize]);
            weights.push(g.mul(w, other.weights[t as usize]));
        }
        Endo { weights, targets }
    }

    /// Applies the map to the act element `h · x_j`.
    pub fn apply(&self, g: &Group, h: Elem, j: usize) -> (Elem, usize) {
        (g.mul(h, self.weights[j]), self.targets[j] as usize)
    }

    /// Sorted distinct targets.
    pub fn image(&self) -> Vec<u32> {
        let mut seen = vec![false; self.n()];
        for &t in &self.targets {
            seen[t as usize] = true;
        }
        (0..self.n() as u32).filter(|&t| seen[t as usize]).collect()
    }

    pub fn rank(&self) -> usize {
        let mut seen = vec![false; self.n()];
        self.targets
            .iter()
            .filter(|&&t| !std::mem::replace(&mut seen[t as usize], true))
            .count()
    }

    pub fn kernel(&self, g: &Group) -> KernelData {
        let n = self.n();
        // Block ids in order of first occurrence are already min-sorted.
        let mut block_of_target = vec![u32::MAX; n];
        let mut blocks: Vec<Vec<u32>> = Vec::new();
        let mut mins = Vec::new();
        let mut normweights = vec![IDENTITY; n];
        for k in 0..n {
            let t = self.targets[k] as usize;
            if block_of_target[t] == u32::MAX {
                block_of_target[t] = blocks.len() as u32;
                blocks.push(Vec::new());
                mins.push(k as u32);
            }
            let b = block_of_target[t] as usize;
            blocks[b].push(k as u32);
            let min_weight = self.weights[mins[b] as usize];
            normweights[k] = g.mul(self.weights[k], g.inv(min_weight));
        }
        KernelData {
            blocks,
            mins,
            normweights,
        }
    }

    pub fn is_idempotent(&self, g: &Group) -> bool {
        self.then(g, self) == *self
    }

    /// Drops the coordinates `r+1..n`, which in `H_11` duplicate coordinate 1.
    pub fn to_wreath(&self, r: usize) -> Result<WreathElem> {
        let n = self.n();
        if r == 0 || r > n {
            return Err(Error::BadRank { n, r });
        }
        let not_in_h = || Error::NotInH(self.to_string());
        if self.image() != (0..r as u32).collect::<Vec<_>>() {
            return Err(not_in_h());
        }
        let dup = (r..n).all(|k| self.targets[k] == self.targets[0] && self.weights[k] == self.weights[0]);
        if !dup {
            return Err(not_in_h());
        }
        Ok(WreathElem {
            perm: self.targets[..r].to_vec(),
            weights: self.weights[..r].to_vec(),
        })
    }

    /// Inverse of [`Endo::to_wreath`]: coordinates `r+1..n` copy coordinate 1.
    pub fn from_wreath(phi: &WreathElem, n: usize) -> Result<Endo> {
        let r = phi.rank();
        if r == 0 || r > n {
            return Err(Error::BadRank { n, r });
        }
        let mut weights = phi.weights.clone();
        let mut targets = phi.perm.clone();
        weights.resize(n, phi.weights[0]);
        targets.resize(n, phi.perm[0]);
        Ok(Endo { weights, targets })
    }

    /// Every element of `End F_n(G)`, weights varying fastest.
    pub fn enumerate_all(g: &Group, n: usize) -> Vec<Endo> {
        let m = g.order();
        let per_coord = m * n;
        let total = per_coord.pow(n as u32);
        (0..total)
            .map(|mut code| {
                let mut weights = vec![0; n];
                let mut targets = vec![0; n];
                for j in (0..n).rev() {
                    let c = code % per_coord;
                    code /= per_coord;
                    targets[j] = (c / m) as u32;
                    weights[j] = (c % m) as Elem;
                }
                Endo { weights, targets }
            })
            .collect()
    }
}

pub fn green_test(g: &Group, a: &Endo, b: &Endo, rel: GreenRel) -> Result<bool> {
    if a.n() != b.n() {
        return Err(Error::RankMismatch(a.n(), b.n()));
    }
    Ok(match rel {
        GreenRel::L => a.image() == b.image(),
        GreenRel::R => a.kernel(g) == b.kernel(g),
        GreenRel::H => a.image() == b.image() && a.kernel(g) == b.kernel(g),
        GreenRel::D => a.rank() == b.rank(),
    })
}

impl fmt::Display for Endo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_entries(f, &self.targets, &self.weights)
    }
}

impl fmt::Debug for Endo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Endo[{self}]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn z2() -> Group {
        Group::cyclic(2).unwrap()
    }

    #[test]
    fn parse_round_trip() {
        let g = z2();
        let a = Endo::parse(&g, "2:1;1:0;3:0").unwrap();
        assert_eq!(a.targets, vec![1, 0, 2]);
        assert_eq!(a.weights, vec![1, 0, 0]);
        assert_eq!(a.to_string(), "2:1;1:0;3:0");
        assert!(Endo::parse(&g, "4:0;1:0;1:0").is_err());
        assert!(Endo::parse(&g, "1:5;1:0;1:0").is_err());
    }

    #[test]
    fn compose_hand_example() {
        let g = z2();
        // α = (a x_2, x_1, x_3), β = (x_3, a x_3, x_1)
        let a = Endo::parse(&g, "2:1;1:0;3:0").unwrap();
        let b = Endo::parse(&g, "3:0;3:1;1:0").unwrap();
        let ab = a.compose(&g, &b).unwrap();
        assert_eq!(ab, Endo::parse(&g, "3:0;3:0;1:0").unwrap());
        assert_eq!(ab.rank(), 2);
        assert_eq!(ab.image(), vec![0, 2]);
        let id = Endo::identity(3);
        assert_eq!(id.compose(&g, &a).unwrap(), a);
        assert!(matches!(id.compose(&g, &Endo::identity(4)), Err(Error::RankMismatch(3, 4))));
    }

    #[test]
    fn rank_and_image() {
        let id = Endo::identity(4);
        assert_eq!(id.rank(), 4);
        assert_eq!(id.image(), vec![0, 1, 2, 3]);
        let c = Endo {
            weights: vec![0; 4],
            targets: vec![0; 4],
        };
        assert_eq!(c.rank(), 1);
    }

    #[test]
    fn kernel_examples() {
        let g = z2();
        let id = Endo::identity(3).kernel(&g);
        assert_eq!(id.blocks, vec![vec![0], vec![1], vec![2]]);
        assert_eq!(id.normweights, vec![0, 0, 0]);
        // α = (x_1, a x_1, x_2)
        let a = Endo::parse(&g, "1:0;1:1;2:0").unwrap();
        let k = a.kernel(&g);
        assert_eq!(k.blocks, vec![vec![0, 1], vec![2]]);
        assert_eq!(k.mins, vec![0, 2]);
        assert_eq!(k.normweights, vec![0, 1, 0]);
    }

    #[test]
    fn composing_with_units_keeps_kernel() {
        let g = Group::cyclic(3).unwrap();
        let units: Vec<Endo> = Endo::enumerate_all(&g, 3).into_iter().filter(|e| e.rank() == 3).collect();
        for a in Endo::enumerate_all(&g, 3).iter().step_by(17) {
            for u in &units {
                assert_eq!(a.kernel(&g), a.then(&g, u).kernel(&g));
            }
        }
    }

    #[test]
    fn compose_agrees_with_action_on_the_act() {
        let g = Group::symmetric(3).unwrap();
        let all = Endo::enumerate_all(&g, 2);
        for a in all.iter().step_by(5) {
            for b in all.iter().step_by(7) {
                let ab = a.then(&g, b);
                for h in g.elements() {
                    for j in 0..2 {
                        let (h1, j1) = a.apply(&g, h, j);
                        assert_eq!(ab.apply(&g, h, j), b.apply(&g, h1, j1));
                    }
                }
            }
        }
    }

    /// Principal one-sided ideals computed by brute force, compared with the
    /// image/kernel/rank characterization.
    fn green_oracle(g: &Group, n: usize) {
        let all = Endo::enumerate_all(g, n);
        let index: std::collections::HashMap<&Endo, usize> = all.iter().enumerate().map(|(i, e)| (e, i)).collect();
        let size = all.len();
        let left: Vec<Vec<bool>> = all
            .iter()
            .map(|a| {
                let mut s = vec![false; size];
                for x in &all {
                    s[index[&x.then(g, a)]] = true;
                }
                s
            })
            .collect();
        let right: Vec<Vec<bool>> = all
            .iter()
            .map(|a| {
                let mut s = vec![false; size];
                for x in &all {
                    s[index[&a.then(g, x)]] = true;
                }
                s
            })
            .collect();
        for (i, a) in all.iter().enumerate() {
            for (j, b) in all.iter().enumerate() {
                let l = left[i] == left[j];
                let r = right[i] == right[j];
                assert_eq!(green_test(g, a, b, GreenRel::L).unwrap(), l, "{a} L {b}");
                assert_eq!(green_test(g, a, b, GreenRel::R).unwrap(), r, "{a} R {b}");
                assert_eq!(green_test(g, a, b, GreenRel::H).unwrap(), l && r);
            }
        }
        // D = L∘R, checked on the trivial group where it is cheap.
        if g.is_trivial() {
            for (i, a) in all.iter().enumerate() {
                for (j, b) in all.iter().enumerate() {
                    let d = (0..size).any(|c| left[i] == left[c] && right[c] == right[j]);
                    assert_eq!(green_test(g, a, b, GreenRel::D).unwrap(), d);
                }
            }
        }
    }

    #[test]
    fn green_relations_match_ideal_oracle_trivial() {
        green_oracle(&Group::trivial(), 3);
    }

    #[test]
    fn green_relations_match_ideal_oracle_z2() {
        green_oracle(&z2(), 3);
    }

    #[test]
    fn kernel_separates_r_classes_exhaustively() {
        let g = z2();
        let all = Endo::enumerate_all(&g, 3);
        let mut classes: std::collections::HashMap<KernelData, Vec<&Endo>> = Default::default();
        for a in &all {
            classes.entry(a.kernel(&g)).or_default().push(a);
        }
        for members in classes.values() {
            let a = members[0];
            for b in members {
                // a R b iff each lies in the other's right ideal.
                assert!(all.iter().any(|x| a.then(&g, x) == **b));
            }
        }
        let keys: Vec<&KernelData> = classes.keys().collect();
        for (i, k1) in keys.iter().enumerate() {
            for k2 in &keys[i + 1..] {
                let a = classes[*k1][0];
                let b = classes[*k2][0];
                let a_in_b = all.iter().any(|x| b.then(&g, x) == *a);
                let b_in_a = all.iter().any(|x| a.then(&g, x) == *b);
                assert!(!(a_in_b && b_in_a));
            }
        }
    }

    #[test]
    fn idempotents() {
        let g = z2();
        assert!(Endo::identity(4).is_idempotent(&g));
        assert!(!Endo::parse(&g, "2:0;1:0;3:0").unwrap().is_idempotent(&g));
    }

    #[test]
    fn wreath_round_trip() {
        let g = z2();
        let eps = Endo::parse(&g, "1:0;2:0;1:0;1:0").unwrap();
        assert!(eps.to_wreath(2).unwrap().is_identity());
        let phi = WreathElem::parse(&g, "2:1;1:0").unwrap();
        let a = Endo::from_wreath(&phi, 4).unwrap();
        assert_eq!(a.rank(), 2);
        assert_eq!(a.to_string(), "2:1;1:0;2:1;2:1");
        assert_eq!(a.to_wreath(2).unwrap(), phi);
        assert!(matches!(Endo::identity(4).to_wreath(2), Err(Error::NotInH(_))));
        assert!(matches!(
            Endo::parse(&g, "1:0;2:0;1:1;1:0").unwrap().to_wreath(2),
            Err(Error::NotInH(_))
        ));
    }

    fn arb_endo(n: usize, m: u32) -> impl Strategy<Value = Endo> {
        (proptest::collection::vec(0..m, n), proptest::collection::vec(0..n as u32, n))
            .prop_map(|(weights, targets)| Endo { weights, targets })
    }

    fn arb_h(r: usize, m: u32) -> impl Strategy<Value = WreathElem> {
        (Just((0..r as u32).collect::<Vec<_>>()).prop_shuffle(), proptest::collection::vec(0..m, r))
            .prop_map(|(perm, weights)| WreathElem { perm, weights })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn compose_is_associative(a in arb_endo(5, 6), b in arb_endo(5, 6), c in arb_endo(5, 6)) {
            let g = Group::symmetric(3).unwrap();
            prop_assert_eq!(a.then(&g, &b.then(&g, &c)), a.then(&g, &b).then(&g, &c));
        }

        #[test]
        fn to_wreath_is_a_homomorphism(x in arb_h(3, 6), y in arb_h(3, 6), n in 3usize..7) {
            let g = Group::symmetric(3).unwrap();
            let a = Endo::from_wreath(&x, n).unwrap();
            let b = Endo::from_wreath(&y, n).unwrap();
            prop_assert_eq!(a.then(&g, &b).to_wreath(3).unwrap(), x.mul(&g, &y));
            prop_assert_eq!(a.to_wreath(3).unwrap(), x);
        }
    }
}
