//! Idempotents of `End F_n(G)`, E-squares and singular squares.

use crate::endo::{green_test, Endo, GreenRel};
use crate::error::{Error, Result};
use crate::group::Group;
use crate::rees::SandwichMatrix;
use crate::wreath::WreathElem;

/// Default cap on the size of the monoid scanned for idempotents.
pub const DEFAULT_MAX_MONOID: usize = 50_000_000;

/// All idempotents of `End F_n(G)`, optionally of one rank, in the order of
/// [`Endo::enumerate_all`].
pub fn enumerate_idempotents(g: &Group, n: usize, rank: Option<usize>, cap: usize) -> Result<Vec<Endo>> {
    let needed = (g.order() * n).checked_pow(n as u32).unwrap_or(usize::MAX);
    if needed > cap {
        return Err(Error::ResourceLimit {
            what: "monoid elements",
            needed,
            cap,
        });
    }
    Ok(Endo::enumerate_all(g, n)
        .into_iter()
        .filter(|e| rank.is_none_or(|r| e.rank() == r) && e.is_idempotent(g))
        .collect())
}

/// An E-square `(e, f, g, h)` with `e R f L g R h L e`, drawn as
/// `[[e, f], [h, g]]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ESquare {
    pub e: Endo,
    pub f: Endo,
    pub g: Endo,
    pub h: Endo,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WitnessKind {
    UpDown,
    LeftRight,
}

impl ESquare {
    pub fn new(grp: &Group, e: Endo, f: Endo, g: Endo, h: Endo) -> Result<ESquare> {
        for x in [&e, &f, &g, &h] {
            if !x.is_idempotent(grp) {
                return Err(Error::Precondition(format!("{x} is not idempotent")));
            }
        }
        let ok = green_test(grp, &e, &f, GreenRel::R)?
            && green_test(grp, &f, &g, GreenRel::L)?
            && green_test(grp, &g, &h, GreenRel::R)?
            && green_test(grp, &h, &e, GreenRel::L)?;
        if !ok {
            return Err(Error::Precondition("not an E-square".into()));
        }
        Ok(ESquare { e, f, g, h })
    }
}

/// `eg = f`, which for an E-square is equivalent to each of
/// `ge = h`, `fh = e`, `hf = g`.
pub fn is_rectangular_band(grp: &Group, sq: &ESquare) -> bool {
    sq.e.then(grp, &sq.g) == sq.f
}

/// Every square in this `E` is singular exactly when it is a rectangular band.
pub fn is_singular(grp: &Group, sq: &ESquare) -> bool {
    is_rectangular_band(grp, sq)
}

pub fn is_up_down_witness(grp: &Group, sq: &ESquare, k: &Endo) -> bool {
    sq.e.then(grp, k) == sq.e && sq.f.then(grp, k) == sq.f && k.then(grp, &sq.e) == sq.h && k.then(grp, &sq.f) == sq.g
}

pub fn is_left_right_witness(grp: &Group, sq: &ESquare, k: &Endo) -> bool {
    k.then(grp, &sq.e) == sq.e && k.then(grp, &sq.h) == sq.h && sq.e.then(grp, k) == sq.f && sq.h.then(grp, k) == sq.g
}

/// Brute-force search for a singularizing idempotent, preferring up-down.
pub fn singular_witness(grp: &Group, sq: &ESquare, idempotents: &[Endo]) -> Option<(Endo, WitnessKind)> {
    if let Some(k) = idempotents.iter().find(|k| is_up_down_witness(grp, sq, k)) {
        return Some((k.clone(), WitnessKind::UpDown));
    }
    idempotents
        .iter()
        .find(|k| is_left_right_witness(grp, sq, k))
        .map(|k| (k.clone(), WitnessKind::LeftRight))
}

/// The idempotent built in the proof that rectangular bands are singular:
/// fixes every `x_l` with `l ∈ im e ∪ im f`, and acts as `g` elsewhere.
pub fn band_idempotent(sq: &ESquare) -> Endo {
    let mut fixed = vec![false; sq.e.n()];
    for t in sq.e.image().into_iter().chain(sq.f.image()) {
        fixed[t as usize] = true;
    }
    let mut k = sq.g.clone();
    for (j, &fx) in fixed.iter().enumerate() {
        if fx {
            k.targets[j] = j as u32;
            k.weights[j] = crate::group::IDENTITY;
        }
    }
    k
}

/// All E-squares on a list of idempotents.
pub fn all_squares(grp: &Group, idempotents: &[Endo]) -> Vec<ESquare> {
    let kernels: Vec<_> = idempotents.iter().map(|e| e.kernel(grp)).collect();
    let images: Vec<_> = idempotents.iter().map(Endo::image).collect();
    let idx = 0..idempotents.len();
    let mut out = Vec::new();
    for e in idx.clone() {
        for f in idx.clone().filter(|&f| kernels[f] == kernels[e]) {
            for g in idx.clone().filter(|&g| images[g] == images[f]) {
                for h in idx.clone().filter(|&h| kernels[h] == kernels[g] && images[h] == images[e]) {
                    out.push(ESquare {
                        e: idempotents[e].clone(),
                        f: idempotents[f].clone(),
                        g: idempotents[g].clone(),
                        h: idempotents[h].clone(),
                    });
                }
            }
        }
    }
    out
}

/// `p_{λi}^{-1} p_{λk} = p_{μi}^{-1} p_{μk}`.
pub fn square_condition(m: &SandwichMatrix, i: usize, k: usize, lambda: usize, mu: usize) -> Result<bool> {
    let get = |l: usize, row: usize| {
        m.value(l, row)
            .ok_or_else(|| Error::ZeroEntry(format!("{}, {}", m.kernels[row], m.lambdas[l])))
    };
    let (a, b, c, d) = (get(lambda, i)?, get(lambda, k)?, get(mu, i)?, get(mu, k)?);
    let g = &m.group;
    Ok(a.inv(g).mul(g, b) == c.inv(g).mul(g, d))
}

/// The element `(i, h, λ)` of the Rees matrix semigroup as a map: `r_i h q_λ`.
pub fn rees_element(m: &SandwichMatrix, i: usize, h: &WreathElem, lambda: usize) -> Endo {
    let g = &m.group;
    let h = Endo::from_wreath(h, m.n).expect("rank checked by the matrix");
    crate::rees::theta(&m.kernels[i])
        .then(g, &h)
        .then(g, &crate::rees::q_of(m.n, &m.lambdas[lambda]))
}

/// The idempotent `e_{iλ} = (i, p_{λi}^{-1}, λ)`.
pub fn idempotent_at(m: &SandwichMatrix, i: usize, lambda: usize) -> Result<Endo> {
    let p = m
        .value(lambda, i)
        .ok_or_else(|| Error::ZeroEntry(format!("{}, {}", m.kernels[i], m.lambdas[lambda])))?;
    Ok(rees_element(m, i, &p.inv(&m.group), lambda))
}

/// Counts for the `squares` report.
#[derive(Clone, Debug, Default, PartialEq, Eq, serde::Serialize)]
pub struct SquareReport {
    pub idempotents_by_rank: Vec<usize>,
    pub squares_by_rank: Vec<usize>,
    pub singular_by_rank: Vec<usize>,
}

pub fn square_report(grp: &Group, n: usize, cap: usize) -> Result<SquareReport> {
    let all = enumerate_idempotents(grp, n, None, cap)?;
    let mut rep = SquareReport {
        idempotents_by_rank: vec![0; n],
        squares_by_rank: vec![0; n],
        singular_by_rank: vec![0; n],
    };
    for r in 1..=n {
        let es: Vec<Endo> = all.iter().filter(|e| e.rank() == r).cloned().collect();
        rep.idempotents_by_rank[r - 1] = es.len();
        for sq in all_squares(grp, &es) {
            rep.squares_by_rank[r - 1] += 1;
            if is_singular(grp, &sq) {
                rep.singular_by_rank[r - 1] += 1;
            }
        }
    }
    Ok(rep)
}
