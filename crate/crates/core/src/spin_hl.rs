//! Spin Hall-Littlewood functions F, G, G* and their stable variants, by
//! dynamic programming over intermediate partition states, plus the
//! symmetrized-sum route for the stable functions as an independent check.
//!
//! All functions here work on partition states with explicit zero parts
//! (column 0 is genuine boundary data); the stable variants work on positive
//! partitions with a saturated 0th column whose contribution enters through
//! the row coefficients `u^j`.

use std::collections::HashMap;

use crate::error::{CoreError, CoreResult};
use crate::partition::Partition;
use crate::scalar::{q_pochhammer, Field};
use crate::vertex::{apply_row_down, Family};

fn check_su_regular<S: Field>(s: &S, us: &[S], what: &str) -> CoreResult<()> {
    for u in us {
        if (S::one() - s.clone() * u.clone()).is_zero() {
            return Err(CoreError::DivisionByZero(format!("{what} requires s u != 1")));
        }
    }
    Ok(())
}

/// Skew spin Hall-Littlewood function `F_{lambda/mu}(u_1..u_l)`.
///
/// Zero parts count: requires `len(lambda) = len(mu) + #u`. Computed as a
/// lattice partition function with one left-entering path per row.
pub fn hl_f<S: Field>(
    q: &S,
    s: &S,
    us: &[S],
    lambda: &Partition,
    mu: &Partition,
) -> CoreResult<S> {
    if lambda.len() != mu.len() + us.len() {
        return Err(CoreError::Precondition(format!(
            "spin HL function F needs len(lambda) = len(mu) + #variables (zero parts count): \
             got len({lambda}) = {}, len({mu}) = {}, {} variables",
            lambda.len(),
            mu.len(),
            us.len()
        )));
    }
    check_su_regular(s, us, "spin HL function F")?;
    let cols = lambda.first() as usize + 1;
    let mut states: HashMap<Vec<u32>, S> = HashMap::new();
    states.insert(lambda.multiplicities(cols - 1), S::one());
    for u in us {
        let fam = Family::Unfused { q: q.clone(), s: s.clone(), u: u.clone() };
        states = apply_row_down(&fam, 1, 0, &states, cols)?;
    }
    Ok(states
        .remove(&mu.multiplicities(cols - 1))
        .unwrap_or_else(S::zero))
}

/// Non-skew `F_lambda(u_1..u_l)`, the `mu = empty` case.
pub fn hl_f_nonskew<S: Field>(q: &S, s: &S, us: &[S], lambda: &Partition) -> CoreResult<S> {
    hl_f(q, s, us, lambda, &Partition::empty())
}

/// Skew dual spin Hall-Littlewood function `G_{lambda/mu}(v_1..v_n)`;
/// lambda and mu must have equal length (zero parts count).
pub fn hl_g<S: Field>(
    q: &S,
    s: &S,
    vs: &[S],
    lambda: &Partition,
    mu: &Partition,
) -> CoreResult<S> {
    if lambda.len() != mu.len() {
        return Err(CoreError::Precondition(format!(
            "spin HL function G needs lambda and mu of equal length (zero parts count): \
             got len({lambda}) = {}, len({mu}) = {}",
            lambda.len(),
            mu.len()
        )));
    }
    check_su_regular(s, vs, "spin HL function G")?;
    let cols = lambda.first().max(mu.first()) as usize + 1;
    let mut states: HashMap<Vec<u32>, S> = HashMap::new();
    states.insert(lambda.multiplicities(cols - 1), S::one());
    for v in vs {
        let fam = Family::Unfused { q: q.clone(), s: s.clone(), u: v.clone() };
        states = apply_row_down(&fam, 0, 0, &states, cols)?;
    }
    Ok(states
        .remove(&mu.multiplicities(cols - 1))
        .unwrap_or_else(S::zero))
}

/// Non-skew `G_lambda(v_1..v_n)`, the `mu = 0^l` case.
pub fn hl_g_nonskew<S: Field>(q: &S, s: &S, vs: &[S], lambda: &Partition) -> CoreResult<S> {
    hl_g(q, s, vs, lambda, &Partition::zeros(lambda.len()))
}

/// Which of the two independent computation routes to use.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GStarRoute {
    /// `(c_lambda / c_mu) G_{lambda/mu}`.
    Normalized,
    /// Lattice of dual-family rows with unoccupied horizontal boundaries.
    DualLattice,
}

/// Normalization constant `c_lambda(q, s)`; equals 1 on `0^l`.
pub fn norm_c<S: Field>(q: &S, s: &S, lambda: &Partition) -> CoreResult<S> {
    let l = lambda.len() as i64;
    let s2 = s.clone() * s.clone();
    let mut value = q_pochhammer(q, q, l)?.div_checked(&q_pochhammer(&s2, q, l)?)?;
    for &m in lambda.multiplicities(lambda.first() as usize).iter() {
        value = value
            * q_pochhammer(&s2, q, m as i64)?.div_checked(&q_pochhammer(q, q, m as i64)?)?;
    }
    Ok(value)
}

/// Stable normalization constant over positive columns only; equals 1 on
/// the empty partition.
pub fn norm_c_tilde<S: Field>(q: &S, s: &S, lambda: &Partition) -> CoreResult<S> {
    let s2 = s.clone() * s.clone();
    let mut value = S::one();
    for &m in lambda
        .positive_multiplicities(lambda.first() as usize)
        .iter()
    {
        value = value
            * q_pochhammer(&s2, q, m as i64)?.div_checked(&q_pochhammer(q, q, m as i64)?)?;
    }
    Ok(value)
}

/// `G*_{lambda/mu}(v_1..v_n)` by either route; the routes agree exactly.
pub fn hl_g_star<S: Field>(
    q: &S,
    s: &S,
    vs: &[S],
    lambda: &Partition,
    mu: &Partition,
    route: GStarRoute,
) -> CoreResult<S> {
    if lambda.len() != mu.len() {
        return Err(CoreError::Precondition(format!(
            "spin HL function G* needs lambda and mu of equal length: \
             got len({lambda}) = {}, len({mu}) = {}",
            lambda.len(),
            mu.len()
        )));
    }
    match route {
        GStarRoute::Normalized => {
            let g = hl_g(q, s, vs, lambda, mu)?;
            let ratio = norm_c(q, s, lambda)?.div_checked(&norm_c(q, s, mu)?)?;
            Ok(ratio * g)
        }
        GStarRoute::DualLattice => {
            check_su_regular(s, vs, "spin HL function G*")?;
            let cols = lambda.first().max(mu.first()) as usize + 1;
            let mut states: HashMap<Vec<u32>, S> = HashMap::new();
            states.insert(mu.multiplicities(cols - 1), S::one());
            for v in vs {
                let fam = Family::Dual { q: q.clone(), s: s.clone(), u: v.clone() };
                states = apply_row_down(&fam, 0, 0, &states, cols)?;
            }
            Ok(states
                .remove(&lambda.multiplicities(cols - 1))
                .unwrap_or_else(S::zero))
        }
    }
}

/// Non-skew `G*_lambda = c_lambda G_lambda`.
pub fn hl_g_star_nonskew<S: Field>(
    q: &S,
    s: &S,
    vs: &[S],
    lambda: &Partition,
    route: GStarRoute,
) -> CoreResult<S> {
    hl_g_star(q, s, vs, lambda, &Partition::zeros(lambda.len()), route)
}

/// Stable skew spin Hall-Littlewood function over positive partitions:
/// rows run over positive columns, the saturated 0th column contributing
/// `u^j` per row with `j` the number of paths it releases.
pub fn stable_f_skew<S: Field>(
    q: &S,
    s: &S,
    us: &[S],
    lambda: &Partition,
    mu: &Partition,
) -> CoreResult<S> {
    check_su_regular(s, us, "stable spin HL function")?;
    let lam = lambda.positive();
    let mu = mu.positive();
    if lam.positive_len() > mu.positive_len() + us.len() {
        return Ok(S::zero());
    }
    let cols = lam.first().max(mu.first()) as usize;
    // State index c stands for column c+1; the scan starts at column 1.
    let mut states: HashMap<Vec<u32>, S> = HashMap::new();
    states.insert(lam.positive_multiplicities(cols), S::one());
    for u in us {
        let fam = Family::Unfused { q: q.clone(), s: s.clone(), u: u.clone() };
        let from_zero = apply_row_down(&fam, 0, 0, &states, cols)?;
        let from_one = apply_row_down(&fam, 1, 0, &states, cols)?;
        let mut next = from_zero;
        for (state, val) in from_one {
            let add = u.clone() * val;
            next.entry(state)
                .and_modify(|v| *v = v.clone() + add.clone())
                .or_insert(add);
        }
        states = next;
    }
    Ok(states
        .remove(&mu.positive_multiplicities(cols))
        .unwrap_or_else(S::zero))
}

/// Stable `F~_lambda(u_1..u_n)`.
pub fn stable_f<S: Field>(q: &S, s: &S, us: &[S], lambda: &Partition) -> CoreResult<S> {
    stable_f_skew(q, s, us, lambda, &Partition::empty())
}

/// Stable function by the symmetric-group sum. Requires pairwise distinct
/// spectral parameters; coincident points are rejected rather than
/// regularized (the lattice route covers them).
pub fn stable_f_symmetrization<S: Field>(
    q: &S,
    s: &S,
    us: &[S],
    lambda: &Partition,
) -> CoreResult<S> {
    let lam = lambda.positive();
    let n = us.len();
    if lam.len() > n {
        return Ok(S::zero());
    }
    check_su_regular(s, us, "stable symmetrized sum")?;
    for i in 0..n {
        for j in (i + 1)..n {
            if us[i] == us[j] {
                return Err(CoreError::Precondition(
                    "symmetrized-sum route requires pairwise distinct spectral parameters".into(),
                ));
            }
        }
    }
    for u in us {
        if (u.clone() - s.clone()).is_zero() {
            return Err(CoreError::DivisionByZero(
                "symmetrized-sum route requires u != s".into(),
            ));
        }
    }

    let mut total = S::zero();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut counters = vec![0usize; n];
    loop {
        total = total + symmetrization_term(q, s, us, &lam, &perm)?;
        // Heap's algorithm, iterative step.
        let mut advanced = false;
        let mut i = 1;
        while i < n {
            if counters[i] < i {
                if i % 2 == 0 {
                    perm.swap(0, i);
                } else {
                    perm.swap(counters[i], i);
                }
                counters[i] += 1;
                advanced = true;
                break;
            } else {
                counters[i] = 0;
                i += 1;
            }
        }
        if !advanced {
            break;
        }
    }

    let prefactor = (S::one() - q.clone()).pow_i(n as i64)?;
    let tail = q_pochhammer(q, q, (n - lam.len()) as i64)?;
    Ok(total * prefactor.div_checked(&tail)?)
}

fn symmetrization_term<S: Field>(
    q: &S,
    s: &S,
    us: &[S],
    lam: &Partition,
    perm: &[usize],
) -> CoreResult<S> {
    let n = us.len();
    let u = |i: usize| us[perm[i]].clone();
    let mut term = S::one();
    for i in 0..n {
        for j in (i + 1)..n {
            let num = u(i) - q.clone() * u(j);
            let den = u(i) - u(j);
            term = term * num.div_checked(&den)?;
        }
    }
    for i in 0..lam.len() {
        term = term * u(i).div_checked(&(u(i) - s.clone()))?;
    }
    for i in 0..n {
        let ratio = (u(i) - s.clone()).div_checked(&(S::one() - s.clone() * u(i)))?;
        term = term * ratio.pow_i(lam.part(i + 1) as i64)?;
    }
    Ok(term)
}

/// Route selector for the stable dual function.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum StableDualRoute {
    /// `(c~_lambda / c~_mu) F~_{lambda/mu}`.
    Normalized,
    /// Dual-family lattice rows with `v^j` left coefficients.
    DualLattice,
}

/// Stable dual function `F~*_{lambda/mu}(v_1..v_n)` by either route.
pub fn stable_f_star_skew<S: Field>(
    q: &S,
    s: &S,
    vs: &[S],
    lambda: &Partition,
    mu: &Partition,
    route: StableDualRoute,
) -> CoreResult<S> {
    match route {
        StableDualRoute::Normalized => {
            let f = stable_f_skew(q, s, vs, lambda, mu)?;
            let ratio = norm_c_tilde(q, s, &lambda.positive())?
                .div_checked(&norm_c_tilde(q, s, &mu.positive())?)?;
            Ok(ratio * f)
        }
        StableDualRoute::DualLattice => {
            check_su_regular(s, vs, "stable dual spin HL function")?;
            let lam = lambda.positive();
            let mu = mu.positive();
            if lam.positive_len() > mu.positive_len() + vs.len() {
                return Ok(S::zero());
            }
            let cols = lam.first().max(mu.first()) as usize;
            let mut states: HashMap<Vec<u32>, S> = HashMap::new();
            states.insert(mu.positive_multiplicities(cols), S::one());
            for v in vs {
                let fam = Family::Dual { q: q.clone(), s: s.clone(), u: v.clone() };
                let from_zero = apply_row_down(&fam, 0, 0, &states, cols)?;
                let from_one = apply_row_down(&fam, 1, 0, &states, cols)?;
                let mut next = from_zero;
                for (state, val) in from_one {
                    let add = v.clone() * val;
                    next.entry(state)
                        .and_modify(|w| *w = w.clone() + add.clone())
                        .or_insert(add);
                }
                states = next;
            }
            Ok(states
                .remove(&lam.positive_multiplicities(cols))
                .unwrap_or_else(S::zero))
        }
    }
}

/// Non-skew stable dual function.
pub fn stable_f_star<S: Field>(
    q: &S,
    s: &S,
    vs: &[S],
    lambda: &Partition,
    route: StableDualRoute,
) -> CoreResult<S> {
    stable_f_star_skew(q, s, vs, lambda, &Partition::empty(), route)
}
