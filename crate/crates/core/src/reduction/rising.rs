//! Simple forms, the rising point, and the splitting `α = β·γ` with `γ`
//! simple and `β` of smaller rising point.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{Elem, Group, IDENTITY};
use crate::wreath::WreathElem;

/// Parameters of `x_k → x_{k+1} → … → x_{k+m} → a·x_k`. `k` is a 0-based
/// slot; display is 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SimpleForm {
    pub k: usize,
    pub m: usize,
    pub a: Elem,
}

impl SimpleForm {
    pub fn element(&self, r: usize) -> WreathElem {
        WreathElem::simple_form(r, self.k, self.m, self.a)
    }
}

impl fmt::Display for SimpleForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "k={} m={} a={}", self.k + 1, self.m, self.a)
    }
}

/// `ε` is reported as `k=1, m=0, a=1`.
pub fn is_simple_form(phi: &WreathElem) -> Option<SimpleForm> {
    let r = phi.rank();
    let k = match (0..r).find(|&s| phi.perm[s] as usize != s || phi.weights[s] != IDENTITY) {
        None => return Some(SimpleForm { k: 0, m: 0, a: IDENTITY }),
        Some(k) => k,
    };
    let (p, a) = phi.preimage(k);
    let sf = SimpleForm { k, m: p - k, a };
    (sf.element(r) == *phi).then_some(sf)
}

/// The rising point, in `1..=r+1`.
pub fn rising_point(phi: &WreathElem) -> usize {
    let r = phi.rank();
    let (mut anchor, a) = phi.preimage(r - 1);
    if a != IDENTITY {
        return r + 1;
    }
    let mut k = r;
    while k > 1 {
        let (l, a) = phi.preimage(k - 2);
        if l < anchor && a == IDENTITY {
            anchor = l;
            k -= 1;
        } else {
            break;
        }
    }
    k
}

/// Which branch of the case analysis produced the split.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Case {
    /// `x_r` is hit with a non-identity weight.
    Zero,
    /// `a·x_{k−1}` sits left of `x_k`.
    I,
    /// between `x_k` and `x_{k+1}`.
    II,
    /// right of `x_r`.
    III,
    /// strictly inside the run `x_{k+1} … x_r`.
    IV,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    pub rising_point: usize,
    pub case: Case,
    pub beta: WreathElem,
    pub gamma: WreathElem,
    pub gamma_form: SimpleForm,
}

/// Splits `φ = β·γ` (left to right). Needs rising point at least 3.
pub fn decompose(g: &Group, phi: &WreathElem) -> Result<Decomposition> {
    let r = phi.rank();
    let rp = rising_point(phi);
    if rp <= 2 {
        return Err(Error::NotDecomposable(rp));
    }
    let (case, form) = if rp == r + 1 {
        let (_, a) = phi.preimage(r - 1);
        (Case::Zero, SimpleForm { k: r - 1, m: 0, a })
    } else {
        let k = rp - 1; // slot of x_k
        let (i, _) = phi.preimage(k);
        let (l, a) = phi.preimage(k - 1);
        if l < i {
            (Case::I, SimpleForm { k: k - 1, m: 0, a })
        } else {
            let js: Vec<usize> = (k + 1..r).map(|s| phi.preimage(s).0).collect();
            let u = js.iter().filter(|&&j| j < l).count();
            let case = if u == js.len() {
                Case::III
            } else if u == 0 {
                Case::II
            } else {
                Case::IV
            };
            (case, SimpleForm { k: k - 1, m: u + 1, a })
        }
    };
    let gamma = form.element(r);
    let beta = if case == Case::Zero {
        let (m, _) = phi.preimage(r - 1);
        let mut b = phi.clone();
        b.weights[m] = IDENTITY;
        b
    } else {
        phi.mul(g, &gamma.inv(g))
    };
    Ok(Decomposition { rising_point: rp, case, beta, gamma, gamma_form: form })
}
