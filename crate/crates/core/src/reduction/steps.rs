//! The three local moves between connected positions. Every move keeps
//! the matrix value, which is checked before returning.

use crate::error::{Error, Result};
use crate::group::IDENTITY;
use crate::rees::{KernelIndex, SandwichMatrix};

/// `S(λ, i)`: points of `[0, n)` that are neither block minima of `r_i`
/// nor entries of `λ`.
pub fn support(m: &SandwichMatrix, i: usize, l: usize) -> Vec<bool> {
    let mut free = vec![true; m.n];
    for x in m.kernels[i].mins() {
        free[x as usize] = false;
    }
    for &u in &m.lambdas[l].0 {
        free[u as usize] = false;
    }
    free
}

fn check_free(m: &SandwichMatrix, i: usize, l: usize, t: usize) -> Result<Vec<bool>> {
    if m.value(l, i).is_none() {
        return Err(Error::ZeroEntry(format!("({}, {})", i + 1, m.lambdas[l])));
    }
    let free = support(m, i, l);
    if t >= m.n || !free[t] {
        return Err(Error::StepNotApplicable(format!("{} is not in S(λ,i)", t + 1)));
    }
    Ok(free)
}

fn landed(m: &SandwichMatrix, from: (usize, usize), k: KernelIndex, u: Vec<u32>) -> (usize, usize) {
    let i = m.kernel_position(&k).expect("moved kernel is normalized");
    let l = m.lambda_position(&u).expect("moved λ is increasing");
    assert_eq!(m.entry(l, i), m.entry(from.1, from.0), "step changed the matrix value");
    (i, l)
}

/// Step D: `l_b < t < l_{b+1}` makes `t` the new minimum of block `b+1`.
pub fn step_d(m: &SandwichMatrix, i: usize, l: usize, t: usize) -> Result<(usize, usize)> {
    check_free(m, i, l, t)?;
    let mins = m.kernels[i].mins();
    let b = mins
        .windows(2)
        .position(|w| (w[0] as usize) < t && t < w[1] as usize)
        .ok_or_else(|| Error::StepNotApplicable(format!("{} lies between no two block minima", t + 1)))?;
    let mut k = m.kernels[i].clone();
    k.block_of[t] = b as u32 + 1;
    k.weights[t] = IDENTITY;
    Ok(landed(m, (i, l), k, m.lambdas[l].0.clone()))
}

/// Step U: with `u_j < t < u_{j+1}` (or `u_r < t`), `t` joins the block of
/// `u_j` and replaces it in `λ`.
pub fn step_u(m: &SandwichMatrix, i: usize, l: usize, t: usize) -> Result<(usize, usize)> {
    check_free(m, i, l, t)?;
    let u = &m.lambdas[l].0;
    let j = u
        .iter()
        .rposition(|&x| (x as usize) < t)
        .ok_or_else(|| Error::StepNotApplicable(format!("{} lies below u_1", t + 1)))?;
    let src = u[j] as usize;
    let mut k = m.kernels[i].clone();
    k.block_of[t] = k.block_of[src];
    k.weights[t] = k.weights[src];
    let mut mu = u.clone();
    mu[j] = t as u32;
    Ok(landed(m, (i, l), k, mu))
}

/// Step U′: with `[t, u_h) ⊆ S(λ,i)`, `t` joins the block of `u_h` and
/// replaces it in `λ`.
pub fn step_u_prime(m: &SandwichMatrix, i: usize, l: usize, t: usize) -> Result<(usize, usize)> {
    let free = check_free(m, i, l, t)?;
    let u = &m.lambdas[l].0;
    let h = u
        .iter()
        .position(|&x| x as usize > t)
        .ok_or_else(|| Error::StepNotApplicable(format!("no u_j above {}", t + 1)))?;
    let src = u[h] as usize;
    if !free[t..src].iter().all(|&f| f) {
        return Err(Error::StepNotApplicable(format!("[{}, {}) is not inside S(λ,i)", t + 1, src + 1)));
    }
    let mut k = m.kernels[i].clone();
    k.block_of[t] = k.block_of[src];
    k.weights[t] = k.weights[src];
    let mut mu = u.clone();
    mu[h] = t as u32;
    Ok(landed(m, (i, l), k, mu))
}
