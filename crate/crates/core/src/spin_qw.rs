//! Spin q-Whittaker polynomials and their duals, by two independent routes:
//! interlacing branching sums built from the one-variable closed forms, and
//! fused-lattice dynamic programming over conjugate-multiplicity states.
//! Includes the reduction to ordinary q-Whittaker polynomials at `s = 0`
//! against an independently coded branching product.

use std::collections::HashMap;

use crate::error::{CoreError, CoreResult};
use crate::fusion::x_pochhammer_product;
use crate::partition::{partitions_between, Partition};
use crate::scalar::{q_pochhammer, Field};
use crate::vertex::{row_value, Family};

/// One-variable skew spin q-Whittaker polynomial. Vanishes unless `mu`
/// interlaces `nu`; the `x^{|mu|-|nu|} (-s/x;q)` factors are expanded in
/// product form, so `x = 0` is a regular point.
pub fn qw_onevar<S: Field>(
    q: &S,
    s: &S,
    x: &S,
    mu: &Partition,
    nu: &Partition,
) -> CoreResult<S> {
    let mu = mu.positive();
    let nu = nu.positive();
    if !mu.interlaces(&nu) {
        return Ok(S::zero());
    }
    let s2 = s.clone() * s.clone();
    let neg_sx = -(s.clone() * x.clone());
    let rows = mu.len().max(nu.len());
    let mut value = S::one();
    for i in 1..=rows {
        let a = mu.part(i) - nu.part(i);
        let b = nu.part(i) - mu.part(i + 1);
        let c = mu.part(i) - mu.part(i + 1);
        value = value * x_pochhammer_product(q, s, x, a)?;
        value = value * q_pochhammer(&neg_sx, q, b as i64)?;
        value = value * q_pochhammer(q, q, c as i64)?;
        let mut den = q_pochhammer(q, q, a as i64)?;
        den = den * q_pochhammer(q, q, b as i64)?;
        let ds = q_pochhammer(&s2, q, c as i64)?;
        if ds.is_zero() {
            return Err(CoreError::DivisionByZero(
                "one-variable weight needs (s^2;q) nonvanishing at the part gaps".into(),
            ));
        }
        value = value.div_checked(&(den * ds))?;
    }
    Ok(value)
}

/// One-variable dual skew polynomial: the same shape with the `(q;q)/(s^2;q)`
/// gap factors attached to the lower partition.
pub fn qw_onevar_dual<S: Field>(
    q: &S,
    s: &S,
    x: &S,
    mu: &Partition,
    nu: &Partition,
) -> CoreResult<S> {
    let mu = mu.positive();
    let nu = nu.positive();
    if !mu.interlaces(&nu) {
        return Ok(S::zero());
    }
    let s2 = s.clone() * s.clone();
    let neg_sx = -(s.clone() * x.clone());
    let rows = mu.len().max(nu.len());
    let mut value = S::one();
    for i in 1..=rows {
        let a = mu.part(i) - nu.part(i);
        let b = nu.part(i) - mu.part(i + 1);
        let c = nu.part(i) - nu.part(i + 1);
        value = value * x_pochhammer_product(q, s, x, a)?;
        value = value * q_pochhammer(&neg_sx, q, b as i64)?;
        value = value * q_pochhammer(q, q, c as i64)?;
        let mut den = q_pochhammer(q, q, a as i64)?;
        den = den * q_pochhammer(q, q, b as i64)?;
        let ds = q_pochhammer(&s2, q, c as i64)?;
        if ds.is_zero() {
            return Err(CoreError::DivisionByZero(
                "one-variable dual weight needs (s^2;q) nonvanishing at the part gaps".into(),
            ));
        }
        value = value.div_checked(&(den * ds))?;
    }
    Ok(value)
}

/// Computation route for the multivariate polynomials.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum QwRoute {
    /// Sum of one-variable closed-form products over interlacing chains.
    Branching,
    /// Fused-lattice rows acting on conjugate-multiplicity states.
    Lattice,
}

/// Row coefficient `x^j (-s/x;q)_j / (q;q)_j` attached to the left edge of
/// a fused lattice row, in `x`-regular product form.
fn fused_row_coefficient<S: Field>(q: &S, s: &S, x: &S, j: u32) -> CoreResult<S> {
    x_pochhammer_product(q, s, x, j)?.div_checked(&q_pochhammer(q, q, j as i64)?)
}

/// Skew spin q-Whittaker polynomial `F_{lambda/mu}(x_1..x_m)`.
///
/// Zero unless `lambda` contains `mu` (positive parts). The two routes are
/// independent implementations and agree exactly.
pub fn qw_f<S: Field>(
    q: &S,
    s: &S,
    xs: &[S],
    lambda: &Partition,
    mu: &Partition,
    route: QwRoute,
) -> CoreResult<S> {
    let lam = lambda.positive();
    let mu = mu.positive();
    if !lam.contains(&mu) {
        return Ok(S::zero());
    }
    if lam.positive_len() > mu.positive_len() + xs.len() {
        return Ok(S::zero());
    }
    if xs.is_empty() {
        return Ok(if lam == mu { S::one() } else { S::zero() });
    }
    let hull = partitions_between(&mu, &lam);
    let mut states: HashMap<Partition, S> = HashMap::new();
    states.insert(lam.clone(), S::one());
    for x in xs.iter().rev() {
        let mut next: HashMap<Partition, S> = HashMap::new();
        for (upper, coeff) in &states {
            for lower in &hull {
                if !upper.contains(lower) {
                    continue;
                }
                let w = match route {
                    QwRoute::Branching => qw_onevar(q, s, x, upper, lower)?,
                    QwRoute::Lattice => fused_row_transition(q, s, x, upper, lower)?,
                };
                if w.is_zero() {
                    continue;
                }
                let add = coeff.clone() * w;
                next.entry(lower.clone())
                    .and_modify(|v| *v = v.clone() + add.clone())
                    .or_insert(add);
            }
        }
        states = next;
    }
    Ok(states.remove(&mu).unwrap_or_else(S::zero))
}

/// One fused-lattice row between conjugate-multiplicity states: the left
/// edge is forced by conservation to the first-part difference.
fn fused_row_transition<S: Field>(
    q: &S,
    s: &S,
    x: &S,
    upper: &Partition,
    lower: &Partition,
) -> CoreResult<S> {
    let j = upper.part(1) - lower.part(1);
    let cols = upper.positive_len().max(lower.positive_len());
    let fam = Family::FusedW { q: q.clone(), s: s.clone(), x: x.clone() };
    let top: Vec<u32> = (1..=cols).map(|i| upper.conjugate_gap(i)).collect();
    let bottom: Vec<u32> = (1..=cols).map(|i| lower.conjugate_gap(i)).collect();
    let row = row_value(&fam, &bottom, &top, j, 0)?;
    Ok(fused_row_coefficient(q, s, x, j)? * row)
}

/// Dual route selector mirroring [`QwRoute`].
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum QwDualRoute {
    /// `(c~_{lambda'} / c~_{mu'}) F_{lambda/mu}` over the branching route.
    Normalized,
    /// Dual fused-lattice rows.
    Lattice,
}

/// Dual skew spin q-Whittaker polynomial `F*_{lambda/mu}(y_1..y_n)`.
pub fn qw_f_star<S: Field>(
    q: &S,
    s: &S,
    ys: &[S],
    lambda: &Partition,
    mu: &Partition,
    route: QwDualRoute,
) -> CoreResult<S> {
    let lam = lambda.positive();
    let mu = mu.positive();
    if !lam.contains(&mu) {
        return Ok(S::zero());
    }
    match route {
        QwDualRoute::Normalized => {
            let f = qw_f(q, s, ys, &lam, &mu, QwRoute::Branching)?;
            let ratio = conj_norm_tilde(q, s, &lam)?.div_checked(&conj_norm_tilde(q, s, &mu)?)?;
            Ok(ratio * f)
        }
        QwDualRoute::Lattice => {
            if lam.positive_len() > mu.positive_len() + ys.len() {
                return Ok(S::zero());
            }
            if ys.is_empty() {
                return Ok(if lam == mu { S::one() } else { S::zero() });
            }
            let hull = partitions_between(&mu, &lam);
            let mut states: HashMap<Partition, S> = HashMap::new();
            states.insert(mu.clone(), S::one());
            for y in ys {
                let mut next: HashMap<Partition, S> = HashMap::new();
                for (upper_small, coeff) in &states {
                    for bigger in &hull {
                        if !bigger.contains(upper_small) {
                            continue;
                        }
                        let w = dual_fused_row_transition(q, s, y, upper_small, bigger)?;
                        if w.is_zero() {
                            continue;
                        }
                        let add = coeff.clone() * w;
                        next.entry(bigger.clone())
                            .and_modify(|v| *v = v.clone() + add.clone())
                            .or_insert(add);
                    }
                }
                states = next;
            }
            Ok(states.remove(&lam).unwrap_or_else(S::zero))
        }
    }
}

/// One dual fused-lattice row: top state `upper_small`, bottom `bigger`,
/// left edge forced to the first-part difference.
fn dual_fused_row_transition<S: Field>(
    q: &S,
    s: &S,
    y: &S,
    upper_small: &Partition,
    bigger: &Partition,
) -> CoreResult<S> {
    let j = bigger.part(1) - upper_small.part(1);
    let cols = bigger.positive_len().max(upper_small.positive_len());
    let fam = Family::FusedWDual { q: q.clone(), s: s.clone(), x: y.clone() };
    let top: Vec<u32> = (1..=cols).map(|i| upper_small.conjugate_gap(i)).collect();
    let bottom: Vec<u32> = (1..=cols).map(|i| bigger.conjugate_gap(i)).collect();
    let row = row_value(&fam, &bottom, &top, j, 0)?;
    Ok(fused_row_coefficient(q, s, y, j)? * row)
}

/// `c~` evaluated on the conjugate partition: product over the part gaps
/// `lambda_i - lambda_{i+1}`.
pub fn conj_norm_tilde<S: Field>(q: &S, s: &S, lambda: &Partition) -> CoreResult<S> {
    let lam = lambda.positive();
    let s2 = s.clone() * s.clone();
    let mut value = S::one();
    for i in 1..=lam.len() {
        let gap = (lam.part(i) - lam.part(i + 1)) as i64;
        value = value * q_pochhammer(&s2, q, gap)?.div_checked(&q_pochhammer(q, q, gap)?)?;
    }
    Ok(value)
}

/// Independently coded ordinary q-Whittaker one-variable branching factor
/// (Macdonald with the second parameter set to zero).
pub fn q_whittaker_onevar<S: Field>(
    q: &S,
    x: &S,
    mu: &Partition,
    nu: &Partition,
) -> CoreResult<S> {
    let mu = mu.positive();
    let nu = nu.positive();
    if !mu.interlaces(&nu) {
        return Ok(S::zero());
    }
    let rows = mu.len().max(nu.len());
    let mut value = x.pow_i((mu.weight() - nu.weight()) as i64)?;
    for i in 1..=rows {
        let a = (mu.part(i) - nu.part(i)) as i64;
        let b = (nu.part(i) - mu.part(i + 1)) as i64;
        let c = (mu.part(i) - mu.part(i + 1)) as i64;
        value = value * q_pochhammer(q, q, c)?;
        value = value.div_checked(&(q_pochhammer(q, q, a)? * q_pochhammer(q, q, b)?))?;
    }
    Ok(value)
}

/// Ordinary skew q-Whittaker polynomial by branching.
pub fn q_whittaker<S: Field>(
    q: &S,
    xs: &[S],
    lambda: &Partition,
    mu: &Partition,
) -> CoreResult<S> {
    let lam = lambda.positive();
    let mu = mu.positive();
    if !lam.contains(&mu) {
        return Ok(S::zero());
    }
    if xs.is_empty() {
        return Ok(if lam == mu { S::one() } else { S::zero() });
    }
    let hull = partitions_between(&mu, &lam);
    let mut states: HashMap<Partition, S> = HashMap::new();
    states.insert(lam.clone(), S::one());
    for x in xs.iter().rev() {
        let mut next: HashMap<Partition, S> = HashMap::new();
        for (upper, coeff) in &states {
            for lower in &hull {
                if !upper.contains(lower) {
                    continue;
                }
                let w = q_whittaker_onevar(q, x, upper, lower)?;
                if w.is_zero() {
                    continue;
                }
                let add = coeff.clone() * w;
                next.entry(lower.clone())
                    .and_modify(|v| *v = v.clone() + add.clone())
                    .or_insert(add);
            }
        }
        states = next;
    }
    Ok(states.remove(&mu).unwrap_or_else(S::zero))
}

/// True when the spin polynomial at `s = 0` equals the independently coded
/// ordinary q-Whittaker value.
pub fn qw_s0_reduction_check<S: Field>(
    q: &S,
    xs: &[S],
    lambda: &Partition,
    mu: &Partition,
) -> CoreResult<bool> {
    let spin = qw_f(q, &S::zero(), xs, lambda, mu, QwRoute::Branching)?;
    let plain = q_whittaker(q, xs, lambda, mu)?;
    Ok(spin == plain)
}
