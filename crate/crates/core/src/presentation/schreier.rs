//! The Schreier system `{h_λ}` of words over idempotents, built along the
//! lexicographic order of `Λ`.

use std::collections::HashMap;

use crate::endo::Endo;
use crate::error::Result;
use crate::group::IDENTITY;
use crate::rees::{lambda_list, KernelIndex, LambdaIndex};

#[derive(Clone, Debug)]
pub struct SchreierSystem {
    pub n: usize,
    pub r: usize,
    pub lambdas: Vec<LambdaIndex>,
    /// `None` for `(1,…,r)`.
    pub parent: Vec<Option<usize>>,
    /// The kernel `l(λ)` of the final letter `α_λ`.
    pub attach: Vec<Option<KernelIndex>>,
    /// `h_λ` as the list of columns whose letters `α_μ` it spells.
    pub words: Vec<Vec<usize>>,
}

/// The block `j` with `u_{j-1} < k ≤ u_j`, or the last block past `u_r`.
fn slot(u: &[u32], k: u32) -> usize {
    u.iter().position(|&x| k <= x).unwrap_or(u.len() - 1)
}

/// `α_λ`: `x_k ↦ x_{u_j}` for `u_{j−1} < k ≤ u_j`, and `x_k ↦ x_{u_r}` past `u_r`.
pub fn alpha_letter(n: usize, lambda: &LambdaIndex) -> Endo {
    let u = &lambda.0;
    Endo {
        weights: vec![IDENTITY; n],
        targets: (0..n as u32).map(|k| u[slot(u, k)]).collect(),
    }
}

/// `l(λ)`: blocks `{1..u_1}, {u_1+1..u_2}, …` with the tail joined to the
/// last block, trivial weights.
pub fn attach_kernel(n: usize, lambda: &LambdaIndex) -> KernelIndex {
    let u = &lambda.0;
    KernelIndex {
        block_of: (0..n as u32).map(|k| slot(u, k) as u32).collect(),
        weights: vec![IDENTITY; n],
    }
}

fn parent_of(u: &[u32]) -> Option<Vec<u32>> {
    let i = (0..u.len()).rev().find(|&i| {
        let prev = if i == 0 { -1 } else { u[i - 1] as i64 };
        u[i] as i64 - prev > 1
    })?;
    let mut p = u.to_vec();
    p[i] -= 1;
    Some(p)
}

pub fn schreier_build(n: usize, r: usize) -> Result<SchreierSystem> {
    let lambdas = lambda_list(n, r)?;
    let pos: HashMap<&[u32], usize> = lambdas.iter().enumerate().map(|(k, l)| (l.0.as_slice(), k)).collect();
    let mut parent = Vec::with_capacity(lambdas.len());
    let mut attach = Vec::with_capacity(lambdas.len());
    let mut words: Vec<Vec<usize>> = Vec::with_capacity(lambdas.len());
    for (k, lambda) in lambdas.iter().enumerate() {
        match parent_of(&lambda.0) {
            None => {
                parent.push(None);
                attach.push(None);
                words.push(Vec::new());
            }
            Some(p) => {
                let p = pos[p.as_slice()];
                debug_assert!(p < k);
                let mut w = words[p].clone();
                w.push(k);
                parent.push(Some(p));
                attach.push(Some(attach_kernel(n, lambda)));
                words.push(w);
            }
        }
    }
    Ok(SchreierSystem {
        n,
        r,
        lambdas,
        parent,
        attach,
        words,
    })
}

impl SchreierSystem {
    /// `h_λ` as a list of idempotents.
    pub fn word(&self, lambda: usize) -> Vec<Endo> {
        self.words[lambda]
            .iter()
            .map(|&m| alpha_letter(self.n, &self.lambdas[m]))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Group;
    use crate::rees::q_of;
    use crate::wreath::WreathElem;

    #[test]
    fn small_example() {
        let s = schreier_build(4, 2).unwrap();
        assert!(s.words[0].is_empty());
        let k = s.lambdas.iter().position(|l| l.to_string() == "(1,3)").unwrap();
        assert_eq!(s.parent[k], Some(0));
        let w = s.word(k);
        assert_eq!(w.len(), 1);
        assert_eq!(w[0].to_string(), "1:0;3:0;3:0;3:0");
        assert_eq!(s.attach[k].as_ref().unwrap().block_of, vec![0, 1, 1, 1]);
    }

    #[test]
    fn prefix_closed_and_spells_q() {
        let g = Group::trivial();
        for n in 1..=6 {
            for r in 1..=n.min(4) {
                let s = schreier_build(n, r).unwrap();
                let eps = Endo::from_wreath(&WreathElem::identity(r), n).unwrap();
                let mut seen = std::collections::HashSet::new();
                for (k, lambda) in s.lambdas.iter().enumerate() {
                    let w = &s.words[k];
                    for cut in 0..=w.len() {
                        assert!(s.words.iter().any(|v| v.as_slice() == &w[..cut]));
                    }
                    assert!(seen.insert(w.clone()), "two columns share a word");
                    let expected: u32 = lambda.0.iter().enumerate().map(|(j, &u)| u - j as u32).sum();
                    assert_eq!(w.len() as u32, expected);
                    let acted = s.word(k).iter().fold(eps.clone(), |acc, a| acc.then(&g, a));
                    assert_eq!(acted, q_of(n, lambda));
                    if let Some(p) = s.parent[k] {
                        let a = alpha_letter(n, lambda);
                        assert!(a.is_idempotent(&g));
                        assert_eq!(a.image(), lambda.0);
                        assert_eq!(a.kernel(&g), crate::rees::theta(s.attach[k].as_ref().unwrap()).kernel(&g));
                        assert_eq!(q_of(n, &s.lambdas[p]).then(&g, &a), q_of(n, lambda));
                    }
                }
            }
        }
    }
}
