//! Connected positions: chains of equal nonzero values along rows
//! and columns.

use serde::Serialize;

use crate::presentation::GrIndex;
use crate::rees::{Entry, SandwichMatrix};

/// Union-find over `K`, with nodes numbered as the generators of the
/// Gray–Ruškuc presentation. The representative of a component is its
/// least `(i, λ)`.
#[derive(Clone, Debug)]
pub struct PositionGraph {
    pub index: GrIndex,
    parent: Vec<u32>,
}

impl PositionGraph {
    pub fn new(m: &SandwichMatrix) -> PositionGraph {
        let index = GrIndex::new(m);
        let parent = (0..index.len() as u32).collect();
        PositionGraph { index, parent }
    }

    pub fn find(&mut self, x: u32) -> u32 {
        let mut root = x;
        while self.parent[root as usize] != root {
            root = self.parent[root as usize];
        }
        let mut x = x;
        while self.parent[x as usize] != root {
            let next = self.parent[x as usize];
            self.parent[x as usize] = root;
            x = next;
        }
        root
    }

    /// Read-only root lookup.
    pub fn root(&self, x: u32) -> u32 {
        let mut x = x;
        while self.parent[x as usize] != x {
            x = self.parent[x as usize];
        }
        x
    }

    pub fn union(&mut self, a: u32, b: u32) -> bool {
        let (a, b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        let (lo, hi) = (a.min(b), a.max(b));
        self.parent[hi as usize] = lo;
        true
    }

    pub fn same(&self, a: u32, b: u32) -> bool {
        self.root(a) == self.root(b)
    }

    /// Number of components among the given nodes.
    pub fn components_among(&self, nodes: &[u32]) -> usize {
        let mut roots: Vec<u32> = nodes.iter().map(|&x| self.root(x)).collect();
        roots.sort_unstable();
        roots.dedup();
        roots.len()
    }

    /// Nodes grouped by value id.
    pub fn nodes_by_value(&self, m: &SandwichMatrix) -> Vec<Vec<u32>> {
        let mut out = vec![Vec::new(); m.values.len()];
        for (node, &(i, l)) in self.index.positions.iter().enumerate() {
            if let Entry::Value(v) = m.entry(l, i) {
                out[v as usize].push(node as u32);
            }
        }
        out
    }

    /// One report line per value, in value order.
    pub fn report(&self, m: &SandwichMatrix) -> Vec<ConnectivityLine> {
        self.nodes_by_value(m)
            .iter()
            .enumerate()
            .map(|(v, nodes)| ConnectivityLine {
                value: m.values[v].canonical(),
                positions: nodes.len(),
                components: self.components_among(nodes),
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConnectivityLine {
    pub value: String,
    pub positions: usize,
    pub components: usize,
}

impl std::fmt::Display for ConnectivityLine {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "value={} positions={} components={}", self.value, self.positions, self.components)
    }
}

/// Links equal nonzero entries sharing a row or a column.
pub fn connectivity(m: &SandwichMatrix) -> PositionGraph {
    let mut pg = PositionGraph::new(m);
    let nl = m.num_lambdas();
    let nk = m.num_kernels();
    // Last node seen per value, reset for each line.
    let mut last: Vec<u32> = vec![u32::MAX; m.values.len()];
    let mut touched = Vec::new();
    let mut link = |pg: &mut PositionGraph, cells: &mut dyn Iterator<Item = (usize, usize)>| {
        for (i, l) in cells {
            if let Entry::Value(v) = m.entry(l, i) {
                let node = pg.index.gen(i, l).expect("nonzero");
                let prev = last[v as usize];
                if prev == u32::MAX {
                    touched.push(v);
                } else {
                    pg.union(prev, node);
                }
                last[v as usize] = node;
            }
        }
        for v in touched.drain(..) {
            last[v as usize] = u32::MAX;
        }
    };
    for i in 0..nk {
        link(&mut pg, &mut (0..nl).map(|l| (i, l)));
    }
    for l in 0..nl {
        link(&mut pg, &mut (0..nk).map(|i| (i, l)));
    }
    pg
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Group;
    use crate::rees::{build_sandwich, DEFAULT_MAX_ENTRIES};
    use crate::wreath::WreathElem;

    #[test]
    fn components_hold_one_value() {
        let g = Group::cyclic(2).unwrap();
        let m = build_sandwich(&g, 4, 2, DEFAULT_MAX_ENTRIES).unwrap();
        let pg = connectivity(&m);
        for (a, &(i, l)) in pg.index.positions.iter().enumerate() {
            let root = pg.root(a as u32) as usize;
            let (ri, rl) = pg.index.positions[root];
            assert_eq!(m.value(l, i), m.value(rl, ri));
            assert!(root <= a);
        }
    }

    #[test]
    fn counterexample_has_two_components() {
        let g = Group::cyclic(2).unwrap();
        let m = build_sandwich(&g, 4, 2, DEFAULT_MAX_ENTRIES).unwrap();
        let pg = connectivity(&m);
        let v = m.value_id(&WreathElem::parse(&g, "1:1;2:1").unwrap()).unwrap();
        let line = &pg.report(&m)[v as usize];
        assert_eq!((line.positions, line.components), (2, 2));
        assert_eq!(line.to_string(), "value=1:1;2:1 positions=2 components=2");
    }

    #[test]
    fn single_components_when_n_is_large() {
        for g in [Group::trivial(), Group::cyclic(2).unwrap()] {
            for (n, r) in [(3, 1), (5, 2), (6, 2)] {
                let m = build_sandwich(&g, n, r, DEFAULT_MAX_ENTRIES).unwrap();
                let pg = connectivity(&m);
                assert!(pg.report(&m).iter().all(|l| l.components == 1), "n={n} r={r}");
            }
        }
    }
}
