//! Verification engines for the summation identities tying the function
//! families together: exact finite checks where the sums terminate,
//! truncated-sum numeric checks with explicit tolerances where they do not.
//!
//! Infinite sums over the top partition are evaluated by a column-transfer
//! sweep over the joint lattice (exactly the truncated sum, by linearity),
//! while the finite side is assembled from the per-partition functions.

use num::{One, Zero};
use serde::Serialize;

use crate::error::{CoreError, CoreResult};
use crate::partition::{enumerate_partitions, partitions_between, Partition};
use crate::scalar::{
    q_pochhammer_inf_real, rat_to_f64, rat_to_string, Field, Rat,
};
use crate::spin_hl::{
    hl_f, hl_g_star, stable_f_skew, stable_f_star_skew, GStarRoute, StableDualRoute,
};
use crate::spin_qw::{qw_f, qw_f_star, qw_onevar_dual, QwDualRoute, QwRoute};
use crate::vertex::{weight_dual, weight_unfused};

/// Default relative tolerance for numeric-mode checks.
pub const DEFAULT_TOL: f64 = 1e-10;
/// Default weight/part cutoff for truncated sums.
pub const DEFAULT_CUTOFF: u32 = 30;
/// Tolerance used when evaluating infinite products inside kernels.
pub const KERNEL_PRODUCT_TOL: f64 = 1e-14;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Numeric,
}

/// One side of an identity as reported: an exact rational string or a double.
#[derive(Clone, PartialEq, Debug, Serialize)]
#[serde(untagged)]
pub enum Value {
    Exact(String),
    Numeric(f64),
}

/// Structured result of one identity check.
#[derive(Clone, Debug, Serialize)]
pub struct IdentityReport {
    pub name: String,
    pub params: serde_json::Value,
    pub mode: Mode,
    pub lhs: Value,
    pub rhs: Value,
    pub abs_dev: f64,
    pub rel_dev: f64,
    pub cutoff: Option<u32>,
    pub seed: Option<u64>,
    pub pass: bool,
}

impl IdentityReport {
    pub fn exact(name: &str, params: serde_json::Value, lhs: &Rat, rhs: &Rat) -> Self {
        let pass = lhs == rhs;
        let dev = if pass {
            0.0
        } else {
            (rat_to_f64(lhs) - rat_to_f64(rhs)).abs()
        };
        IdentityReport {
            name: name.to_string(),
            params,
            mode: Mode::Exact,
            lhs: Value::Exact(rat_to_string(lhs)),
            rhs: Value::Exact(rat_to_string(rhs)),
            abs_dev: dev,
            rel_dev: dev,
            cutoff: None,
            seed: None,
            pass,
        }
    }

    pub fn numeric(
        name: &str,
        params: serde_json::Value,
        lhs: f64,
        rhs: f64,
        tol: f64,
        cutoff: u32,
    ) -> Self {
        let abs_dev = (lhs - rhs).abs();
        let scale = lhs.abs().max(rhs.abs()).max(f64::MIN_POSITIVE);
        let rel_dev = abs_dev / scale;
        IdentityReport {
            name: name.to_string(),
            params,
            mode: Mode::Numeric,
            lhs: Value::Numeric(lhs),
            rhs: Value::Numeric(rhs),
            abs_dev,
            rel_dev,
            cutoff: Some(cutoff),
            seed: None,
            pass: rel_dev <= tol,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }
}

fn f64s(xs: &[f64]) -> serde_json::Value {
    serde_json::json!(xs)
}

fn rats(xs: &[Rat]) -> serde_json::Value {
    serde_json::json!(xs.iter().map(rat_to_string).collect::<Vec<_>>())
}

/// Componentwise minimum: the largest partition contained in both.
fn intersect(a: &Partition, b: &Partition) -> Partition {
    let a = a.positive();
    let b = b.positive();
    let mut parts = Vec::new();
    for i in 1..=a.len().min(b.len()) {
        parts.push(a.part(i).min(b.part(i)));
    }
    while parts.last() == Some(&0) {
        parts.pop();
    }
    Partition::new(parts)
}

fn check_unit_disc(vals: &[f64], what: &str) -> CoreResult<()> {
    for v in vals {
        if v.abs() >= 1.0 {
            return Err(CoreError::Precondition(format!(
                "{what} requires all parameters inside the unit disc; got {v}"
            )));
        }
    }
    Ok(())
}

fn check_hl_convergence(s: f64, us: &[f64], vs: &[f64]) -> CoreResult<()> {
    for &u in us {
        for &v in vs {
            if ((u - s) * (v - s)).abs() >= ((1.0 - s * u) * (1.0 - s * v)).abs() {
                return Err(CoreError::Precondition(format!(
                    "pairing sum requires |(u-s)(v-s)| < |(1-su)(1-sv)| for all spectral pairs; \
                     violated at u={u}, v={v}"
                )));
            }
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Column-transfer engines for the truncated infinite sums
// ---------------------------------------------------------------------------

/// Truncated pairing sum over top partitions with largest part at most
/// `cutoff`, for the unfused families: rows entering on the left below
/// (one path each), dual rows above (empty horizontal boundaries),
/// bottom boundary `mu`, top boundary `nu`.
pub fn hl_pairing_sum<S: Field>(
    q: &S,
    s: &S,
    us: &[S],
    vs: &[S],
    mu: &Partition,
    nu: &Partition,
    cutoff: u32,
) -> CoreResult<S> {
    let l = us.len();
    let m = vs.len();
    if mu.first() > cutoff || nu.first() > cutoff {
        return Err(CoreError::Precondition(
            "cutoff must cover the boundary partitions".into(),
        ));
    }
    let nbits = l + m;
    let nstates = 1usize << nbits;
    let mut cur = vec![S::zero(); nstates];
    // Left boundary: every lower row occupied, every dual row empty.
    cur[(1usize << l) - 1] = S::one();
    let mu_mults = mu.multiplicities(cutoff as usize);
    let nu_mults = nu.multiplicities(cutoff as usize);
    for c in 0..=cutoff as usize {
        let mut next = vec![S::zero(); nstates];
        for (st, coeff) in cur.iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            for out in 0..nstates {
                let w = pairing_column_weight(
                    q, s, us, vs, mu_mults[c], nu_mults[c], st, out,
                )?;
                if let Some(w) = w {
                    next[out] = next[out].clone() + coeff.clone() * w;
                }
            }
        }
        cur = next;
    }
    Ok(cur[0].clone())
}

/// Weight of one column of the joint lattice: the lower block is chained
/// bottom-up from the `mu` boundary, the dual block continues up to the
/// `nu` boundary, with the middle vertical edge summed implicitly.
#[allow(clippy::too_many_arguments)]
fn pairing_column_weight<S: Field>(
    q: &S,
    s: &S,
    us: &[S],
    vs: &[S],
    mu_count: u32,
    nu_count: u32,
    st: usize,
    out: usize,
) -> CoreResult<Option<S>> {
    let l = us.len();
    let m = vs.len();
    let mut w = S::one();
    let mut t = mu_count as i64;
    for (a, u) in us.iter().enumerate() {
        let h_in = ((st >> a) & 1) as i64;
        let h_out = ((out >> a) & 1) as i64;
        let t_next = t + h_in - h_out;
        if t_next < 0 {
            return Ok(None);
        }
        w = w * weight_unfused(q, s, u, t as u32, h_in as u32, t_next as u32, h_out as u32)?;
        if w.is_zero() {
            return Ok(None);
        }
        t = t_next;
    }
    // Dual block: rows conserve j + k = i + l, so the state above is
    // k = i + l - j with i the state below.
    for b in 0..m {
        let r_in = ((st >> (l + b)) & 1) as i64;
        let r_out = ((out >> (l + b)) & 1) as i64;
        let t_next = t + r_out - r_in;
        if t_next < 0 {
            return Ok(None);
        }
        // Row order within the dual block does not affect the sum.
        let v = &vs[m - 1 - b];
        w = w * weight_dual(q, s, v, t as u32, r_in as u32, t_next as u32, r_out as u32)?;
        if w.is_zero() {
            return Ok(None);
        }
        t = t_next;
    }
    if t != nu_count as i64 {
        return Ok(None);
    }
    Ok(Some(w))
}

/// Truncated pairing sum for the stable families: positive columns only,
/// with the saturated 0th column entering through per-row spectral
/// coefficients on the initial column state.
pub fn stable_pairing_sum<S: Field>(
    q: &S,
    s: &S,
    us: &[S],
    vs: &[S],
    mu: &Partition,
    nu: &Partition,
    cutoff: u32,
) -> CoreResult<S> {
    let l = us.len();
    let m = vs.len();
    let mu = mu.positive();
    let nu = nu.positive();
    if mu.first() > cutoff || nu.first() > cutoff {
        return Err(CoreError::Precondition(
            "cutoff must cover the boundary partitions".into(),
        ));
    }
    let nbits = l + m;
    let nstates = 1usize << nbits;
    let mut cur = vec![S::zero(); nstates];
    for st in 0..nstates {
        let mut coeff = S::one();
        for (a, u) in us.iter().enumerate() {
            if (st >> a) & 1 == 1 {
                coeff = coeff * u.clone();
            }
        }
        for (b, v) in vs.iter().enumerate() {
            if (st >> (l + b)) & 1 == 1 {
                coeff = coeff * v.clone();
            }
        }
        cur[st] = coeff;
    }
    let mu_mults = mu.positive_multiplicities(cutoff as usize);
    let nu_mults = nu.positive_multiplicities(cutoff as usize);
    for c in 0..cutoff as usize {
        let mut next = vec![S::zero(); nstates];
        for (st, coeff) in cur.iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            for out in 0..nstates {
                let w = pairing_column_weight(
                    q, s, us, vs, mu_mults[c], nu_mults[c], st, out,
                )?;
                if let Some(w) = w {
                    next[out] = next[out].clone() + coeff.clone() * w;
                }
            }
        }
        cur = next;
    }
    Ok(cur[0].clone())
}

// ---------------------------------------------------------------------------
// Numeric-mode identity checks
// ---------------------------------------------------------------------------

/// All values `F_{lambda/mu}(x_1..x_m)` with `|lambda| <= cutoff` in one
/// upward branching sweep, keyed by `lambda`.
pub fn qw_f_all_from<S: Field>(
    q: &S,
    s: &S,
    xs: &[S],
    mu: &Partition,
    cutoff: u32,
) -> CoreResult<std::collections::HashMap<Partition, S>> {
    use std::collections::HashMap;
    let mu = mu.positive();
    if mu.weight() > cutoff {
        return Ok(HashMap::new());
    }
    let mut states: HashMap<Partition, S> = HashMap::new();
    states.insert(mu, S::one());
    for x in xs {
        let mut next: HashMap<Partition, S> = HashMap::new();
        for (nu, coeff) in &states {
            let budget = cutoff - nu.weight();
            for lam in horizontal_strip_extensions(nu, budget) {
                let w = crate::spin_qw::qw_onevar(q, s, x, &lam, nu)?;
                if w.is_zero() {
                    continue;
                }
                let add = coeff.clone() * w;
                next.entry(lam)
                    .and_modify(|v| *v = v.clone() + add.clone())
                    .or_insert(add);
            }
        }
        states = next;
    }
    Ok(states)
}

/// Skew Cauchy identity for the spin q-Whittaker family, truncated at
/// weight `cutoff`. All parameters must lie inside the unit disc.
pub fn verify_qw_cauchy_skew(
    q: f64,
    s: f64,
    xs: &[f64],
    ys: &[f64],
    mu: &Partition,
    nu: &Partition,
    cutoff: u32,
    tol: f64,
) -> CoreResult<IdentityReport> {
    check_unit_disc(&[q, s], "spin q-Whittaker Cauchy identity")?;
    check_unit_disc(xs, "spin q-Whittaker Cauchy identity")?;
    check_unit_disc(ys, "spin q-Whittaker Cauchy identity")?;
    for &x in xs {
        for &y in ys {
            if (x * y).abs() >= 1.0 {
                return Err(CoreError::Precondition(
                    "spin q-Whittaker Cauchy identity requires |x y| < 1 for all pairs".into(),
                ));
            }
        }
    }
    let mu = mu.positive();
    let nu = nu.positive();

    let f_map = qw_f_all_from(&q, &s, xs, &mu, cutoff)?;
    let g_map = qw_f_all_from(&q, &s, ys, &nu, cutoff)?;
    let nu_norm = crate::spin_qw::conj_norm_tilde(&q, &s, &nu)?;
    let mut lhs = 0.0;
    for (lam, f) in &f_map {
        if let Some(g) = g_map.get(lam) {
            let dual = crate::spin_qw::conj_norm_tilde(&q, &s, lam)? / nu_norm * g;
            lhs += f * dual;
        }
    }

    let mut kernel = 1.0;
    for &x in xs {
        for &y in ys {
            kernel *= q_pochhammer_inf_real(-s * x, q, KERNEL_PRODUCT_TOL)?
                * q_pochhammer_inf_real(-s * y, q, KERNEL_PRODUCT_TOL)?
                / (q_pochhammer_inf_real(s * s, q, KERNEL_PRODUCT_TOL)?
                    * q_pochhammer_inf_real(x * y, q, KERNEL_PRODUCT_TOL)?);
        }
    }
    let mut rhs = 0.0;
    for kappa in partitions_between(&Partition::empty(), &intersect(&mu, &nu)) {
        let f = qw_f(&q, &s, xs, &nu, &kappa, QwRoute::Branching)?;
        if f == 0.0 {
            continue;
        }
        let fs = qw_f_star(&q, &s, ys, &mu, &kappa, QwDualRoute::Normalized)?;
        rhs += f * fs;
    }
    rhs *= kernel;

    let params = serde_json::json!({
        "q": q, "s": s, "x": f64s(xs), "y": f64s(ys),
        "mu": mu.to_string(), "nu": nu.to_string(), "tol": tol,
    });
    Ok(IdentityReport::numeric("qw-cauchy", params, lhs, rhs, tol, cutoff))
}

/// Non-skew Cauchy identity for the spin q-Whittaker family.
pub fn verify_qw_cauchy(
    q: f64,
    s: f64,
    xs: &[f64],
    ys: &[f64],
    cutoff: u32,
    tol: f64,
) -> CoreResult<IdentityReport> {
    verify_qw_cauchy_skew(q, s, xs, ys, &Partition::empty(), &Partition::empty(), cutoff, tol)
}

/// The one-variable Cauchy case: the classical q-Gauss summation.
pub fn verify_q_gauss(q: f64, s: f64, x: f64, y: f64, cutoff: u32, tol: f64) -> CoreResult<IdentityReport> {
    check_unit_disc(&[q, s, x, y, x * y], "q-Gauss summation")?;
    if x == 0.0 || y == 0.0 {
        return Err(CoreError::Precondition(
            "q-Gauss summation requires x, y nonzero in this parameterization".into(),
        ));
    }
    let mut lhs = 0.0;
    let mut num_x = 1.0; // (-s/x; q)_i
    let mut num_y = 1.0;
    let mut den_s = 1.0; // (s^2; q)_i
    let mut den_q = 1.0; // (q; q)_i
    let mut xy_pow = 1.0;
    let mut qi = 1.0; // q^i
    for _ in 0..=cutoff {
        lhs += num_x * num_y / (den_s * den_q) * xy_pow;
        num_x *= 1.0 + s / x * qi;
        num_y *= 1.0 + s / y * qi;
        den_s *= 1.0 - s * s * qi;
        den_q *= 1.0 - q * qi;
        xy_pow *= x * y;
        qi *= q;
    }
    let rhs = q_pochhammer_inf_real(-s * x, q, KERNEL_PRODUCT_TOL)?
        * q_pochhammer_inf_real(-s * y, q, KERNEL_PRODUCT_TOL)?
        / (q_pochhammer_inf_real(s * s, q, KERNEL_PRODUCT_TOL)?
            * q_pochhammer_inf_real(x * y, q, KERNEL_PRODUCT_TOL)?);
    let params = serde_json::json!({ "q": q, "s": s, "x": x, "y": y, "tol": tol });
    Ok(IdentityReport::numeric("q-gauss", params, lhs, rhs, tol, cutoff))
}

/// Skew Cauchy identity for the unfused spin Hall-Littlewood family,
/// truncated at largest part `cutoff`.
pub fn verify_hl_cauchy_skew(
    q: f64,
    s: f64,
    us: &[f64],
    vs: &[f64],
    mu: &Partition,
    nu: &Partition,
    cutoff: u32,
    tol: f64,
) -> CoreResult<IdentityReport> {
    if nu.len() != mu.len() + us.len() {
        return Err(CoreError::Precondition(format!(
            "skew pairing needs len(nu) = len(mu) + #u (zero parts count): \
             len({nu}) = {}, len({mu}) = {}, {} variables",
            nu.len(),
            mu.len(),
            us.len()
        )));
    }
    check_hl_convergence(s, us, vs)?;
    let lhs = hl_pairing_sum(&q, &s, us, vs, mu, nu, cutoff)?;

    let mut kernel = 1.0;
    for &u in us {
        for &v in vs {
            kernel *= (1.0 - q * u * v) / (1.0 - u * v);
        }
    }
    let mut rhs = 0.0;
    let cap = intersect(mu, nu);
    for kappa_pos in partitions_between(&Partition::empty(), &cap) {
        let kappa = kappa_pos.padded(mu.len())?;
        let f = hl_f(&q, &s, us, nu, &kappa)?;
        if f == 0.0 {
            continue;
        }
        let gs = hl_g_star(&q, &s, vs, mu, &kappa, GStarRoute::Normalized)?;
        rhs += f * gs;
    }
    rhs *= kernel;

    let params = serde_json::json!({
        "q": q, "s": s, "u": f64s(us), "v": f64s(vs),
        "mu": mu.to_string(), "nu": nu.to_string(), "tol": tol,
    });
    Ok(IdentityReport::numeric("hl-cauchy", params, lhs, rhs, tol, cutoff))
}

/// Cauchy identity for the stable spin Hall-Littlewood family.
pub fn verify_stable_hl_cauchy(
    q: f64,
    s: f64,
    us: &[f64],
    vs: &[f64],
    mu: &Partition,
    nu: &Partition,
    cutoff: u32,
    tol: f64,
) -> CoreResult<IdentityReport> {
    check_hl_convergence(s, us, vs)?;
    let lhs = stable_pairing_sum(&q, &s, us, vs, mu, nu, cutoff)?;

    let mut kernel = 1.0;
    for &u in us {
        for &v in vs {
            kernel *= (1.0 - q * u * v) / (1.0 - u * v);
        }
    }
    let mut rhs = 0.0;
    for kappa in partitions_between(&Partition::empty(), &intersect(mu, nu)) {
        let f = stable_f_skew(&q, &s, us, nu, &kappa)?;
        if f == 0.0 {
            continue;
        }
        let fs = stable_f_star_skew(&q, &s, vs, mu, &kappa, StableDualRoute::Normalized)?;
        rhs += f * fs;
    }
    rhs *= kernel;

    let params = serde_json::json!({
        "q": q, "s": s, "u": f64s(us), "v": f64s(vs),
        "mu": mu.to_string(), "nu": nu.to_string(), "tol": tol,
    });
    Ok(IdentityReport::numeric("stable-hl-cauchy", params, lhs, rhs, tol, cutoff))
}

// ---------------------------------------------------------------------------
// Exact-mode identity checks
// ---------------------------------------------------------------------------

/// Which form of the dual Cauchy identity to verify: the standard one or
/// the variant carrying the normalization constants on the other side.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum DualCauchyVariant {
    Standard,
    Alternative,
}

/// Skew dual Cauchy identity pairing stable spin Hall-Littlewood functions
/// with dual spin q-Whittaker polynomials. The sum is finite, so the check
/// is exact over rationals.
pub fn verify_dual_cauchy(
    q: &Rat,
    s: &Rat,
    us: &[Rat],
    xs: &[Rat],
    mu: &Partition,
    nu: &Partition,
    variant: DualCauchyVariant,
) -> CoreResult<IdentityReport> {
    for u in us {
        if (Rat::one() - s.clone() * u.clone()) == Rat::zero() {
            return Err(CoreError::DivisionByZero("dual Cauchy identity requires s u != 1".into()));
        }
    }
    let m = us.len();
    let n = xs.len();
    let mu = mu.positive();
    let nu = nu.positive();

    let max_part = nu.first() + n as u32;
    let max_len = mu.positive_len() + m;
    let mut lhs = Rat::zero();
    for lam in enumerate_partitions(max_part, max_len, None) {
        if !lam.contains(&mu) || !lam.contains(&nu) {
            continue;
        }
        let term = match variant {
            DualCauchyVariant::Standard => {
                let f = stable_f_skew(q, s, us, &lam, &mu)?;
                let fs = qw_f_star(q, s, xs, &lam.conjugate(), &nu.conjugate(), QwDualRoute::Normalized)?;
                f * fs
            }
            DualCauchyVariant::Alternative => {
                let fs = stable_f_star_skew(q, s, us, &lam, &mu, StableDualRoute::Normalized)?;
                let f = qw_f(q, s, xs, &lam.conjugate(), &nu.conjugate(), QwRoute::Branching)?;
                fs * f
            }
        };
        lhs += term;
    }

    let mut kernel = Rat::one();
    for u in us {
        for x in xs {
            kernel *= (Rat::one() + u.clone() * x.clone())
                / (Rat::one() - s.clone() * u.clone());
        }
    }
    let mut rhs = Rat::zero();
    for kappa in partitions_between(&Partition::empty(), &intersect(&mu, &nu)) {
        let term = match variant {
            DualCauchyVariant::Standard => {
                let f = stable_f_skew(q, s, us, &nu, &kappa)?;
                let fs = qw_f_star(q, s, xs, &mu.conjugate(), &kappa.conjugate(), QwDualRoute::Normalized)?;
                f * fs
            }
            DualCauchyVariant::Alternative => {
                let fs = stable_f_star_skew(q, s, us, &nu, &kappa, StableDualRoute::Normalized)?;
                let f = qw_f(q, s, xs, &mu.conjugate(), &kappa.conjugate(), QwRoute::Branching)?;
                fs * f
            }
        };
        rhs += term;
    }
    rhs *= kernel;

    let name = match variant {
        DualCauchyVariant::Standard => "dual-cauchy",
        DualCauchyVariant::Alternative => "dual-cauchy-alt",
    };
    let params = serde_json::json!({
        "q": rat_to_string(q), "s": rat_to_string(s),
        "u": rats(us), "x": rats(xs),
        "mu": mu.to_string(), "nu": nu.to_string(),
    });
    Ok(IdentityReport::exact(name, params, &lhs, &rhs))
}

/// Vertical Pieri rule: multiplying by the one-row stable dual function
/// expands over vertical-strip extensions. Finite and exact.
pub fn verify_pieri_vertical(
    q: &Rat,
    s: &Rat,
    u: &Rat,
    xs: &[Rat],
    mu: &Partition,
) -> CoreResult<IdentityReport> {
    if (Rat::one() - s.clone() * u.clone()) == Rat::zero() {
        return Err(CoreError::DivisionByZero("vertical strip rule requires s u != 1".into()));
    }
    let mu = mu.positive();
    let mut lhs = Rat::zero();
    for lam in vertical_strip_extensions(&mu, xs.len()) {
        let f = qw_f(q, s, xs, &lam, &Partition::empty(), QwRoute::Branching)?;
        if f == Rat::zero() {
            continue;
        }
        let coeff = stable_f_star_skew(
            q,
            s,
            &[u.clone()],
            &lam.conjugate(),
            &mu.conjugate(),
            StableDualRoute::Normalized,
        )?;
        lhs += f * coeff;
    }
    let mut rhs = qw_f(q, s, xs, &mu, &Partition::empty(), QwRoute::Branching)?;
    for x in xs {
        rhs *= (Rat::one() + u.clone() * x.clone())
            / (Rat::one() - s.clone() * u.clone());
    }
    let params = serde_json::json!({
        "q": rat_to_string(q), "s": rat_to_string(s), "u": rat_to_string(u),
        "x": rats(xs), "mu": mu.to_string(),
    });
    Ok(IdentityReport::exact("pieri-vertical", params, &lhs, &rhs))
}

/// All partitions obtained from `mu` by adding a vertical strip (at most
/// one box per row), including `mu` itself. Up to `appended_rows` new unit
/// rows may appear below the original shape.
pub fn vertical_strip_extensions(mu: &Partition, appended_rows: usize) -> Vec<Partition> {
    let mu = mu.positive();
    let rows = mu.len() + appended_rows;
    let mut out = Vec::new();
    let mut parts = vec![0u32; rows];
    fn rec(mu: &Partition, row: usize, rows: usize, parts: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if row > rows {
            let mut p = parts.clone();
            while p.last() == Some(&0) {
                p.pop();
            }
            out.push(Partition::new(p));
            return;
        }
        for add in 0..=1u32 {
            let val = mu.part(row) + add;
            if row > 1 && val > parts[row - 2] {
                continue;
            }
            parts[row - 1] = val;
            rec(mu, row + 1, rows, parts, out);
        }
    }
    rec(&mu, 1, rows, &mut parts, &mut out);
    out.sort();
    out.dedup();
    out
}

/// Horizontal Pieri rule: multiplying by the one-variable dual polynomial
/// expands over horizontal strips; the strip sum is truncated at weight
/// `cutoff` and checked numerically.
pub fn verify_pieri_horizontal(
    q: f64,
    s: f64,
    xs: &[f64],
    y: f64,
    nu: &Partition,
    cutoff: u32,
    tol: f64,
) -> CoreResult<IdentityReport> {
    check_unit_disc(&[q, s, y], "horizontal strip rule")?;
    check_unit_disc(xs, "horizontal strip rule")?;
    let nu = nu.positive();
    let mut lhs = 0.0;
    for lam in horizontal_strip_extensions(&nu, cutoff) {
        let f = qw_f(&q, &s, xs, &lam, &Partition::empty(), QwRoute::Branching)?;
        if f == 0.0 {
            continue;
        }
        lhs += f * qw_onevar_dual(&q, &s, &y, &lam, &nu)?;
    }
    let mut rhs = qw_f(&q, &s, xs, &nu, &Partition::empty(), QwRoute::Branching)?;
    for &x in xs {
        rhs *= q_pochhammer_inf_real(-s * x, q, KERNEL_PRODUCT_TOL)?
            * q_pochhammer_inf_real(-s * y, q, KERNEL_PRODUCT_TOL)?
            / (q_pochhammer_inf_real(s * s, q, KERNEL_PRODUCT_TOL)?
                * q_pochhammer_inf_real(x * y, q, KERNEL_PRODUCT_TOL)?);
    }
    let params = serde_json::json!({
        "q": q, "s": s, "x": f64s(xs), "y": y, "nu": nu.to_string(), "tol": tol,
    });
    Ok(IdentityReport::numeric("pieri-horizontal", params, lhs, rhs, tol, cutoff))
}

/// All partitions interlacing above `nu` with strip weight at most `budget`.
pub fn horizontal_strip_extensions(nu: &Partition, budget: u32) -> Vec<Partition> {
    let nu = nu.positive();
    let rows = nu.len() + 1;
    let mut out = Vec::new();
    let mut parts = vec![0u32; rows];
    fn rec(
        nu: &Partition,
        row: usize,
        rows: usize,
        budget_left: u32,
        parts: &mut Vec<u32>,
        out: &mut Vec<Partition>,
    ) {
        if row > rows {
            let mut p = parts.clone();
            while p.last() == Some(&0) {
                p.pop();
            }
            out.push(Partition::new(p));
            return;
        }
        // Interlacing: nu_{row-1} >= lam_row >= nu_row.
        let lo = nu.part(row);
        let hi = if row == 1 {
            nu.part(1) + budget_left
        } else {
            nu.part(row - 1).min(lo + budget_left)
        };
        for val in lo..=hi {
            parts[row - 1] = val;
            rec(nu, row + 1, rows, budget_left - (val - lo), parts, out);
        }
    }
    rec(&nu, 1, rows, budget, &mut parts, &mut out);
    out.sort();
    out.dedup();
    out
}

// ---------------------------------------------------------------------------
// Structural checks (weight-level identities), reported in the same format
// ---------------------------------------------------------------------------

/// Result of a bulk entrywise comparison: sums of both sides plus the
/// largest entrywise deviation.
fn bulk_exact_report(
    name: &str,
    params: serde_json::Value,
    entries: Vec<(Rat, Rat)>,
) -> IdentityReport {
    let mut lhs_sum = Rat::zero();
    let mut rhs_sum = Rat::zero();
    let mut max_dev = 0.0f64;
    let mut all_equal = true;
    for (l, r) in &entries {
        if l != r {
            all_equal = false;
            max_dev = max_dev.max((rat_to_f64(l) - rat_to_f64(r)).abs());
        }
        lhs_sum += l.clone();
        rhs_sum += r.clone();
    }
    IdentityReport {
        name: name.to_string(),
        params,
        mode: Mode::Exact,
        lhs: Value::Exact(rat_to_string(&lhs_sum)),
        rhs: Value::Exact(rat_to_string(&rhs_sum)),
        abs_dev: max_dev,
        rel_dev: max_dev,
        cutoff: None,
        seed: None,
        pass: all_equal,
    }
}

/// Exact Yang-Baxter check across all vertical states up to `max_ik`.
pub fn verify_ybe(q: &Rat, s: &Rat, u1: &Rat, u2: &Rat, max_ik: u32) -> CoreResult<IdentityReport> {
    let mut entries = Vec::new();
    for i in 0..=max_ik {
        for k in 0..=max_ik {
            let (l, r) = crate::vertex::ybe_sides(q, s, u1, u2, i, k, None)?;
            for row in 0..4 {
                for col in 0..4 {
                    entries.push((l[row][col].clone(), r[row][col].clone()));
                }
            }
        }
    }
    let params = serde_json::json!({
        "q": rat_to_string(q), "s": rat_to_string(s),
        "u1": rat_to_string(u1), "u2": rat_to_string(u2), "max_ik": max_ik,
    });
    Ok(bulk_exact_report("ybe", params, entries))
}

/// Exact fused Yang-Baxter check across boundary triples with entries up
/// to `max_entry`.
pub fn verify_fused_ybe(
    q: &Rat,
    s: &Rat,
    x: &Rat,
    y: &Rat,
    max_entry: u32,
) -> CoreResult<IdentityReport> {
    let mut entries = Vec::new();
    let r = 0..=max_entry;
    for i1 in r.clone() {
        for i2 in r.clone() {
            for i3 in r.clone() {
                for j1 in r.clone() {
                    for j2 in r.clone() {
                        for j3 in r.clone() {
                            let (l, rr) = crate::fusion::fused_ybe_sides(
                                q,
                                s,
                                x,
                                y,
                                (i1, i2, i3),
                                (j1, j2, j3),
                                None,
                                None,
                            )?;
                            entries.push((l, rr));
                        }
                    }
                }
            }
        }
    }
    let params = serde_json::json!({
        "q": rat_to_string(q), "s": rat_to_string(s),
        "x": rat_to_string(x), "y": rat_to_string(y), "max_entry": max_entry,
    });
    Ok(bulk_exact_report("fused-ybe", params, entries))
}

/// Exact gauge relations between each weight family and its dual, for all
/// indices up to `max_idx`.
pub fn verify_gauge(q: &Rat, s: &Rat, u: &Rat, x: &Rat, max_idx: u32) -> CoreResult<IdentityReport> {
    use crate::fusion::{weight_w, weight_w_dual};
    use crate::scalar::q_pochhammer;
    let s2 = s.clone() * s.clone();
    let mut entries = Vec::new();
    let gauge = |i: u32, k: u32| -> CoreResult<Rat> {
        Ok(q_pochhammer(q, q, k as i64)?
            .div_checked(&q_pochhammer(&s2, q, k as i64)?)?
            * q_pochhammer(&s2, q, i as i64)?.div_checked(&q_pochhammer(q, q, i as i64)?)?)
    };
    for i in 0..=max_idx {
        for k in 0..=max_idx {
            let g = gauge(i, k)?;
            for j in 0..=1u32 {
                for l in 0..=1u32 {
                    let lhs = weight_unfused(q, s, u, i, j, k, l)?;
                    let rhs = g.clone() * weight_dual(q, s, u, k, j, i, l)?;
                    entries.push((lhs, rhs));
                }
            }
            for j in 0..=max_idx {
                for l in 0..=max_idx {
                    let lhs = weight_w(q, s, x, i, j, k, l)?;
                    let rhs = g.clone() * weight_w_dual(q, s, x, k, j, i, l)?;
                    entries.push((lhs, rhs));
                }
            }
        }
    }
    let params = serde_json::json!({
        "q": rat_to_string(q), "s": rat_to_string(s),
        "u": rat_to_string(u), "x": rat_to_string(x), "max_idx": max_idx,
    });
    Ok(bulk_exact_report("gauge", params, entries))
}

/// Exact three-route agreement of the fused weights for spins up to
/// `max_spin` and vertical states up to `max_ik`.
pub fn verify_fusion_routes(
    q: &Rat,
    s: &Rat,
    u: &Rat,
    max_spin: u32,
    max_ik: u32,
) -> CoreResult<IdentityReport> {
    use crate::fusion::{fused_weight_bruteforce, fused_weight_formula, fused_weight_recursion};
    let mut entries = Vec::new();
    for big_j in 1..=max_spin {
        for i in 0..=max_ik {
            for k in 0..=max_ik {
                for j in 0..=big_j {
                    for l in 0..=big_j {
                        let brute = fused_weight_bruteforce(q, s, u, big_j, i, j, k, l)?;
                        let rec = fused_weight_recursion(q, s, u, big_j, i, j, k, l)?;
                        let formula = fused_weight_formula(q, s, u, big_j, i, j, k, l)?;
                        entries.push((brute.clone(), rec));
                        entries.push((brute, formula));
                    }
                }
            }
        }
    }
    let params = serde_json::json!({
        "q": rat_to_string(q), "s": rat_to_string(s), "u": rat_to_string(u),
        "max_spin": max_spin, "max_ik": max_ik,
    });
    Ok(bulk_exact_report("fusion-routes", params, entries))
}

/// Exact route agreement for the polynomial families over a small box:
/// branching vs lattice for the fused family, normalized vs dual-lattice
/// for the duals, lattice vs symmetrized sum for the stable functions.
pub fn verify_route_agreement(
    q: &Rat,
    s: &Rat,
    xs: &[Rat],
    box_side: u32,
) -> CoreResult<IdentityReport> {
    use crate::spin_hl::{stable_f, stable_f_star, stable_f_symmetrization};
    let side = box_side;
    let all: Vec<Partition> = enumerate_partitions(side, side as usize, None).collect();
    let mut entries = Vec::new();
    for lam in &all {
        for mu in &all {
            if !lam.contains(mu) {
                continue;
            }
            entries.push((
                qw_f(q, s, xs, lam, mu, QwRoute::Branching)?,
                qw_f(q, s, xs, lam, mu, QwRoute::Lattice)?,
            ));
            entries.push((
                qw_f_star(q, s, xs, lam, mu, QwDualRoute::Normalized)?,
                qw_f_star(q, s, xs, lam, mu, QwDualRoute::Lattice)?,
            ));
        }
        if lam.positive_len() <= xs.len() {
            entries.push((
                stable_f(q, s, xs, lam)?,
                stable_f_symmetrization(q, s, xs, lam)?,
            ));
            entries.push((
                stable_f_star(q, s, xs, lam, StableDualRoute::Normalized)?,
                stable_f_star(q, s, xs, lam, StableDualRoute::DualLattice)?,
            ));
        }
        let padded = lam.padded(side as usize)?;
        for mu in &all {
            let mu_p = mu.padded(side as usize)?;
            entries.push((
                hl_g_star(q, s, xs, &padded, &mu_p, GStarRoute::Normalized)?,
                hl_g_star(q, s, xs, &padded, &mu_p, GStarRoute::DualLattice)?,
            ));
        }
    }
    let params = serde_json::json!({
        "q": rat_to_string(q), "s": rat_to_string(s), "x": rats(xs), "box": box_side,
    });
    Ok(bulk_exact_report("route-agreement", params, entries))
}

/// Exact reduction check at `s = 0` against the independently coded
/// ordinary q-Whittaker branching product, over a small box.
pub fn verify_s0_reduction(q: &Rat, xs: &[Rat], box_side: u32) -> CoreResult<IdentityReport> {
    use crate::spin_qw::q_whittaker;
    let zero = Rat::zero();
    let all: Vec<Partition> = enumerate_partitions(box_side, box_side as usize, None).collect();
    let mut entries = Vec::new();
    for lam in &all {
        for mu in &all {
            if !lam.contains(mu) {
                continue;
            }
            entries.push((
                qw_f(q, &zero, xs, lam, mu, QwRoute::Branching)?,
                q_whittaker(q, xs, lam, mu)?,
            ));
        }
    }
    let params = serde_json::json!({
        "q": rat_to_string(q), "x": rats(xs), "box": box_side,
    });
    Ok(bulk_exact_report("s0-reduction", params, entries))
}

// ---------------------------------------------------------------------------
// Seeded rational point sampling
// ---------------------------------------------------------------------------

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Draws exact rational parameter points with numerators and denominators
/// bounded by 17, rejecting precondition violations; fully determined by
/// the seed.
pub struct PointSampler {
    rng: ChaCha8Rng,
    pub seed: u64,
}

impl PointSampler {
    pub fn new(seed: u64) -> Self {
        PointSampler { rng: ChaCha8Rng::seed_from_u64(seed), seed }
    }

    /// A rational strictly between 0 and 1.
    pub fn rat_open01(&mut self) -> Rat {
        let den = self.rng.gen_range(2..=17i64);
        let num = self.rng.gen_range(1..den);
        crate::scalar::rat(num, den)
    }

    /// A list of pairwise distinct rationals in (0,1), none equal to `avoid`.
    pub fn distinct_rats(&mut self, n: usize, avoid: Option<&Rat>) -> Vec<Rat> {
        let mut out: Vec<Rat> = Vec::new();
        while out.len() < n {
            let v = self.rat_open01();
            if Some(&v) == avoid || out.contains(&v) {
                continue;
            }
            out.push(v);
        }
        out
    }

    /// A double drawn uniformly from (lo, hi).
    pub fn f64_in(&mut self, lo: f64, hi: f64) -> f64 {
        self.rng.gen_range(lo..hi)
    }
}
