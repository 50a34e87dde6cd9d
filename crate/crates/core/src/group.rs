//! Finite groups given by multiplication tables.
//!
//! Elements are indices `0..order`, with the identity always at index 0.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::error::{Error, Result};

/// A group element, as an index into the multiplication table.
pub type Elem = u32;

/// The identity element of every [`Group`].
pub const IDENTITY: Elem = 0;

/// Orders up to which associativity is checked on every triple.
const EXHAUSTIVE_ASSOC_LIMIT: usize = 256;
const SAMPLED_ASSOC_TRIPLES: usize = 200_000;

/// A finite group given by its multiplication table.
#[derive(Clone, PartialEq, Eq)]
pub struct Group {
    order: usize,
    table: Vec<Elem>,
    inverse: Vec<Elem>,
    label: String,
}

/// How to build a group: `trivial | Z<m> | S<k> | table:<path>`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    Trivial,
    Cyclic(usize),
    Symmetric(usize),
    Table(String),
}

impl FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("trivial") {
            return Ok(GroupSpec::Trivial);
        }
        if let Some(path) = s.strip_prefix("table:") {
            return Ok(GroupSpec::Table(path.to_string()));
        }
        let bad = || Error::Parse(format!("bad group spec {s:?}; expected trivial, Z<m>, S<k> or table:<path>"));
        let (head, tail) = s.split_at(s.char_indices().nth(1).map_or(s.len(), |(i, _)| i));
        let k: usize = tail.parse().map_err(|_| bad())?;
        match head {
            "Z" | "z" | "C" | "c" => Ok(GroupSpec::Cyclic(k)),
            "S" | "s" => Ok(GroupSpec::Symmetric(k)),
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Trivial => write!(f, "trivial"),
            GroupSpec::Cyclic(m) => write!(f, "Z{m}"),
            GroupSpec::Symmetric(k) => write!(f, "S{k}"),
            GroupSpec::Table(p) => write!(f, "table:{p}"),
        }
    }
}

/// Builds and validates a group from its spec.
pub fn make_group(spec: &GroupSpec) -> Result<Group> {
    match spec {
        GroupSpec::Trivial => Group::cyclic(1),
        GroupSpec::Cyclic(m) => Group::cyclic(*m),
        GroupSpec::Symmetric(k) => Group::symmetric(*k),
        GroupSpec::Table(path) => Group::from_table_file(path),
    }
}

impl Group {
    /// Validates a row-major table. Row `x` is left multiplication by `x`.
    pub fn from_table(order: usize, table: Vec<Elem>, label: impl Into<String>) -> Result<Group> {
        if order == 0 {
            return Err(Error::TableNotGroup("order must be positive".into()));
        }
        if table.len() != order * order {
            return Err(Error::TableNotGroup(format!(
                "expected {} entries, found {}",
                order * order,
                table.len()
            )));
        }
        if let Some(&bad) = table.iter().find(|&&x| x as usize >= order) {
            return Err(Error::TableNotGroup(format!("entry {bad} out of range")));
        }
        for x in 0..order {
            if table[x] as usize != x || table[x * order] as usize != x {
                return Err(Error::TableNotGroup("identity must be element 0".into()));
            }
        }
        // Latin square: every row and column is a permutation.
        let mut seen = vec![false; order];
        for x in 0..order {
            seen.iter_mut().for_each(|s| *s = false);
            for y in 0..order {
                let z = table[x * order + y] as usize;
                if std::mem::replace(&mut seen[z], true) {
                    return Err(Error::TableNotGroup(format!("row {x} repeats element {z}")));
                }
            }
            seen.iter_mut().for_each(|s| *s = false);
            for y in 0..order {
                let z = table[y * order + x] as usize;
                if std::mem::replace(&mut seen[z], true) {
                    return Err(Error::TableNotGroup(format!("column {x} repeats element {z}")));
                }
            }
        }
        let mut inverse = vec![0; order];
        for x in 0..order {
            let y = (0..order)
                .find(|&y| table[x * order + y] == IDENTITY)
                .expect("latin square row contains the identity");
            inverse[x] = y as Elem;
        }
        let group = Group {
            order,
            table,
            inverse,
            label: label.into(),
        };
        group.check_associative()?;
        Ok(group)
    }

    fn check_associative(&self) -> Result<()> {
        let m = self.order;
        let assoc = |x: usize, y: usize, z: usize| {
            let (x, y, z) = (x as Elem, y as Elem, z as Elem);
            self.mul(self.mul(x, y), z) == self.mul(x, self.mul(y, z))
        };
        let fail = |x, y, z| Error::TableNotGroup(format!("not associative at ({x},{y},{z})"));
        if m <= EXHAUSTIVE_ASSOC_LIMIT {
            for x in 0..m {
                for y in 0..m {
                    for z in 0..m {
                        if !assoc(x, y, z) {
                            return Err(fail(x, y, z));
                        }
                    }
                }
            }
        } else {
            let mut rng = StdRng::seed_from_u64(m as u64);
            for _ in 0..SAMPLED_ASSOC_TRIPLES {
                let (x, y, z) = (rng.gen_range(0..m), rng.gen_range(0..m), rng.gen_range(0..m));
                if !assoc(x, y, z) {
                    return Err(fail(x, y, z));
                }
            }
        }
        Ok(())
    }

    pub fn trivial() -> Group {
        Group::cyclic(1).expect("trivial group")
    }

    /// The cyclic group of order `m`, element `i` standing for `i mod m`.
    pub fn cyclic(m: usize) -> Result<Group> {
        if m == 0 {
            return Err(Error::TableNotGroup("cyclic group needs m >= 1".into()));
        }
        let table = (0..m * m).map(|p| ((p / m + p % m) % m) as Elem).collect();
        let label = if m == 1 { "trivial".to_string() } else { format!("Z{m}") };
        Group::from_table(m, table, label)
    }

    /// The symmetric group on `k` points. Elements are the permutations in
    /// lexicographic one-line order; `x * y` applies `x` first, then `y`.
    pub fn symmetric(k: usize) -> Result<Group> {
        if k == 0 {
            return Err(Error::TableNotGroup("symmetric group needs k >= 1".into()));
        }
        let perms = permutations(k);
        let index = |p: &[usize]| perms.binary_search_by(|q| q.as_slice().cmp(p)).unwrap();
        let m = perms.len();
        let mut table = Vec::with_capacity(m * m);
        for x in &perms {
            for y in &perms {
                let xy: Vec<usize> = (0..k).map(|i| y[x[i]]).collect();
                table.push(index(&xy) as Elem);
            }
        }
        Group::from_table(m, table, format!("S{k}"))
    }

    /// Reads a table file: `order m` followed by `m` rows of `m` indices.
    /// `#` starts a comment.
    pub fn from_table_file(path: impl AsRef<Path>) -> Result<Group> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        Group::parse_table(&text, format!("table:{}", path.display()))
    }

    pub fn parse_table(text: &str, label: impl Into<String>) -> Result<Group> {
        let mut lines = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .filter(|l| !l.is_empty());
        let header = lines.next().ok_or_else(|| Error::Parse("empty table file".into()))?;
        let order: usize = match header.split_whitespace().collect::<Vec<_>>().as_slice() {
            ["order", m] => m.parse().map_err(|_| Error::Parse(format!("bad order {m:?}")))?,
            _ => return Err(Error::Parse(format!("expected `order m`, found {header:?}"))),
        };
        let mut table = Vec::with_capacity(order * order);
        for (row, line) in lines.enumerate() {
            let entries: Vec<&str> = line.split_whitespace().collect();
            if entries.len() != order {
                return Err(Error::Parse(format!(
                    "row {row} has {} entries, expected {order}",
                    entries.len()
                )));
            }
            for e in entries {
                table.push(e.parse().map_err(|_| Error::Parse(format!("bad entry {e:?}")))?);
            }
        }
        if table.len() != order * order {
            return Err(Error::Parse(format!("expected {order} rows")));
        }
        Group::from_table(order, table, label)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.order as Elem
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    /// Unchecked product; callers hold valid elements.
    #[inline]
    pub fn mul(&self, x: Elem, y: Elem) -> Elem {
        self.table[x as usize * self.order + y as usize]
    }

    #[inline]
    pub fn inv(&self, x: Elem) -> Elem {
        self.inverse[x as usize]
    }

    pub fn gmul(&self, x: Elem, y: Elem) -> Result<Elem> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.mul(x, y))
    }

    pub fn ginv(&self, x: Elem) -> Result<Elem> {
        self.check(x)?;
        Ok(self.inv(x))
    }

    pub fn check(&self, x: Elem) -> Result<()> {
        if (x as usize) < self.order {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                index: x as usize,
                bound: self.order,
            })
        }
    }

    /// Multiplicative order of an element.
    pub fn element_order(&self, x: Elem) -> usize {
        let mut y = x;
        let mut k = 1;
        while y != IDENTITY {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }
}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Group({}, order {})", self.label, self.order)
    }
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    fn extend(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                extend(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    extend(&mut Vec::new(), &mut vec![false; k], &mut out);
    out
}
