//! Numeric evaluation of the multiple-integral representation of the spin
//! q-Whittaker polynomials, and of the integral formula for the dual spin
//! Hall-Littlewood function, compared against the exact lattice values.
//!
//! All integration variables share one positively-oriented circle centered
//! at the origin; its image under multiplication by `q` then automatically
//! nests inside it, and `u_i - q u_j` never vanishes on the discretized
//! torus. Quadrature is the plain trapezoid rule, spectrally accurate for
//! analytic periodic integrands.

use num::complex::Complex64;

use crate::error::{CoreError, CoreResult};
use crate::identities::{IdentityReport, Mode, Value};
use crate::partition::Partition;
use crate::spin_hl::hl_g_nonskew;

/// A circular contour: radius and node count.
#[derive(Clone, Copy, Debug)]
pub struct ContourSpec {
    pub radius: f64,
    pub nodes: u32,
}

impl ContourSpec {
    pub fn new(radius: f64, nodes: u32) -> Self {
        ContourSpec { radius, nodes }
    }

    /// The circle must separate the geometric pole string from `1/s`, and
    /// carry at least 16 nodes.
    pub fn validate(&self, s: f64) -> CoreResult<()> {
        if self.nodes < 16 {
            return Err(CoreError::Precondition(format!(
                "contour needs at least 16 nodes, got {}",
                self.nodes
            )));
        }
        let sa = s.abs();
        if sa > 0.0 && !(sa < self.radius && self.radius < 1.0 / sa) {
            return Err(CoreError::Precondition(format!(
                "contour radius must satisfy |s| < r < 1/|s|: |s| = {sa}, r = {}",
                self.radius
            )));
        }
        Ok(())
    }

    fn points(&self) -> Vec<Complex64> {
        (0..self.nodes)
            .map(|k| {
                let theta = 2.0 * std::f64::consts::PI * k as f64 / self.nodes as f64;
                Complex64::from_polar(self.radius, theta)
            })
            .collect()
    }
}

/// Hard cap on the number of nested integrals (tensor-product quadrature).
const MAX_NESTED: u32 = 4;

/// Multiple-integral value of the spin q-Whittaker polynomial: one circle
/// integral per column of the indexing partition. Requires the partition
/// length to be at most the number of variables.
pub fn qw_integral(
    q: f64,
    s: f64,
    xs: &[f64],
    lambda: &Partition,
    spec: &ContourSpec,
) -> CoreResult<Complex64> {
    let lam = lambda.positive();
    if lam.positive_len() > xs.len() {
        return Err(CoreError::Precondition(format!(
            "integral representation requires len(lambda) <= #variables: \
             len({lam}) = {} > {}",
            lam.positive_len(),
            xs.len()
        )));
    }
    if q.abs() >= 1.0 || s.abs() >= 1.0 {
        return Err(CoreError::Precondition(
            "integral representation requires |q| < 1 and |s| < 1".into(),
        ));
    }
    spec.validate(s)?;
    let depth = lam.first();
    if depth > MAX_NESTED {
        return Err(CoreError::Unsupported(format!(
            "nested quadrature capped at {MAX_NESTED} integrals, partition needs {depth}"
        )));
    }
    if depth == 0 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    let conj = lam.conjugate();
    let nodes = spec.points();
    let n = nodes.len();
    let m = xs.len() as i32;
    let depth = depth as usize;

    let mut total = Complex64::new(0.0, 0.0);
    let mut idx = vec![0usize; depth];
    loop {
        let us: Vec<Complex64> = idx.iter().map(|&k| nodes[k]).collect();
        let mut f = Complex64::new(1.0, 0.0);
        let mut skip = false;
        for i in 0..depth {
            for j in (i + 1)..depth {
                let num = us[i] - us[j];
                if num.norm() == 0.0 {
                    // Coincident nodes: the antisymmetric factor vanishes.
                    skip = true;
                    break;
                }
                f *= num / (us[i] - q * us[j]);
            }
            if skip {
                break;
            }
        }
        if !skip {
            for (i, u) in us.iter().enumerate() {
                let ratio = (1.0 - s * u) / (u - s);
                f *= ratio.powi(conj.part(i + 1) as i32);
                let mut row = Complex64::new(1.0, 0.0);
                for &x in xs {
                    row *= 1.0 + u * x;
                }
                f *= row / (1.0 - s * u).powi(m + 1);
            }
            total += f;
        }
        // advance the multi-index
        let mut d = 0;
        loop {
            idx[d] += 1;
            if idx[d] < n {
                break;
            }
            idx[d] = 0;
            d += 1;
            if d == depth {
                return Ok(total / (n as f64).powi(depth as i32));
            }
        }
    }
}

/// Integral formula for the dual spin Hall-Littlewood function, evaluated
/// on a circular contour and compared against the exact lattice value.
/// The partition carries its trailing zeros explicitly.
pub fn hl_g_integral_check(
    q: f64,
    s: f64,
    vs: &[f64],
    lambda: &Partition,
    spec: &ContourSpec,
    tol: f64,
) -> CoreResult<IdentityReport> {
    let integral = hl_g_integral(q, s, vs, lambda, spec)?;
    let exact = hl_g_nonskew(&q, &s, vs, lambda)?;
    let lhs = integral.re;
    let abs_dev = (lhs - exact).abs();
    let scale = lhs.abs().max(exact.abs()).max(f64::MIN_POSITIVE);
    let params = serde_json::json!({
        "q": q, "s": s, "v": vs, "lambda": lambda.to_string(),
        "radius": spec.radius, "nodes": spec.nodes, "tol": tol,
        "imag": integral.im,
    });
    Ok(IdentityReport {
        name: "hl-g-integral".into(),
        params,
        mode: Mode::Numeric,
        lhs: Value::Numeric(lhs),
        rhs: Value::Numeric(exact),
        abs_dev,
        rel_dev: abs_dev / scale,
        cutoff: Some(spec.nodes),
        seed: None,
        pass: abs_dev / scale <= tol && integral.im.abs() <= tol.max(1e-10),
    })
}

/// Raw integral value with one integration variable per part of `lambda`
/// (zero parts included).
pub fn hl_g_integral(
    q: f64,
    s: f64,
    vs: &[f64],
    lambda: &Partition,
    spec: &ContourSpec,
) -> CoreResult<Complex64> {
    let n = lambda.len();
    validate_g_contour(s, vs, spec)?;
    if n as u32 > MAX_NESTED {
        return Err(CoreError::Unsupported(format!(
            "nested quadrature capped at {MAX_NESTED} integrals, partition has {n} parts"
        )));
    }
    let s2 = s * s;
    let mut prefactor = 1.0;
    for i in 0..n {
        prefactor *= 1.0 - s2 * q.powi(i as i32);
    }
    if n == 0 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    let value = g_integral_core(q, s, vs, lambda.parts(), 0.0, spec)?;
    Ok(prefactor * value)
}

/// Partially integrated variant: the trailing `k` zero parts are resolved
/// into residues, leaving `n - k` integrals with a shifted pole.
pub fn hl_g_integral_partial(
    q: f64,
    s: f64,
    vs: &[f64],
    lambda: &Partition,
    spec: &ContourSpec,
) -> CoreResult<Complex64> {
    let n = lambda.len();
    let k = n - lambda.positive_len();
    validate_g_contour(s, vs, spec)?;
    if (n - k) as u32 > MAX_NESTED {
        return Err(CoreError::Unsupported(format!(
            "nested quadrature capped at {MAX_NESTED} integrals, partition has {} positive parts",
            n - k
        )));
    }
    let s2 = s * s;
    let mut prefactor = 1.0;
    for i in 0..n {
        prefactor *= 1.0 - s2 * q.powi(i as i32);
    }
    for i in 0..k {
        prefactor /= 1.0 - s2 * q.powi(i as i32);
    }
    let sqk = s * q.powi(k as i32);
    for &v in vs {
        prefactor *= (1.0 - sqk * v) / (1.0 - s * v);
    }
    if n == k {
        return Ok(Complex64::new(prefactor, 0.0));
    }
    let positive = lambda.positive();
    let value = g_integral_core(q, s, vs, positive.parts(), sqk - s, spec)?;
    Ok(prefactor * value)
}

fn validate_g_contour(s: f64, vs: &[f64], spec: &ContourSpec) -> CoreResult<()> {
    spec.validate(s)?;
    for &v in vs {
        if v.abs() * spec.radius >= 1.0 {
            return Err(CoreError::Precondition(format!(
                "contour must leave 1/v outside: |v| = {} with radius {}",
                v.abs(),
                spec.radius
            )));
        }
    }
    Ok(())
}

/// Shared quadrature core: `pole_shift` moves the per-variable simple pole
/// from `s` to `s + pole_shift`.
fn g_integral_core(
    q: f64,
    s: f64,
    vs: &[f64],
    parts: &[u32],
    pole_shift: f64,
    spec: &ContourSpec,
) -> CoreResult<Complex64> {
    let depth = parts.len();
    let nodes = spec.points();
    let n = nodes.len();
    let mut total = Complex64::new(0.0, 0.0);
    let mut idx = vec![0usize; depth];
    loop {
        let us: Vec<Complex64> = idx.iter().map(|&k| nodes[k]).collect();
        let mut f = Complex64::new(1.0, 0.0);
        let mut skip = false;
        for i in 0..depth {
            for j in (i + 1)..depth {
                let num = us[i] - us[j];
                if num.norm() == 0.0 {
                    skip = true;
                    break;
                }
                f *= num / (us[i] - q * us[j]);
            }
            if skip {
                break;
            }
        }
        if !skip {
            for (i, u) in us.iter().enumerate() {
                let ratio = (1.0 - s * u) / (u - s);
                f *= ratio.powi(parts[i] as i32) / ((1.0 - s * u) * (u - s - pole_shift));
                for &v in vs {
                    f *= (1.0 - q * u * v) / (1.0 - u * v);
                }
                // measure du/(2 pi i) on the circle contributes u/N per node
                f *= u;
            }
            total += f;
        }
        let mut d = 0;
        loop {
            idx[d] += 1;
            if idx[d] < n {
                break;
            }
            idx[d] = 0;
            d += 1;
            if d == depth {
                return Ok(total / (n as f64).powi(depth as i32));
            }
        }
    }
}

/// Exact reference for the q-Whittaker integral via the branching route.
pub fn qw_exact_reference(q: f64, s: f64, xs: &[f64], lambda: &Partition) -> CoreResult<f64> {
    crate::spin_qw::qw_f(&q, &s, xs, lambda, &Partition::empty(), crate::spin_qw::QwRoute::Branching)
}

/// Convenience: check the q-Whittaker integral against the exact value.
pub fn qw_integral_check(
    q: f64,
    s: f64,
    xs: &[f64],
    lambda: &Partition,
    spec: &ContourSpec,
    tol: f64,
) -> CoreResult<IdentityReport> {
    let integral = qw_integral(q, s, xs, lambda, spec)?;
    let exact = qw_exact_reference(q, s, xs, lambda)?;
    let lhs = integral.re;
    let abs_dev = (lhs - exact).abs();
    let scale = lhs.abs().max(exact.abs()).max(f64::MIN_POSITIVE);
    let params = serde_json::json!({
        "q": q, "s": s, "x": xs, "lambda": lambda.to_string(),
        "radius": spec.radius, "nodes": spec.nodes, "tol": tol,
        "imag": integral.im,
    });
    Ok(IdentityReport {
        name: "qw-integral".into(),
        params,
        mode: Mode::Numeric,
        lhs: Value::Numeric(lhs),
        rhs: Value::Numeric(exact),
        abs_dev,
        rel_dev: abs_dev / scale,
        cutoff: Some(spec.nodes),
        seed: None,
        pass: abs_dev / scale <= tol && integral.im.abs() <= tol.max(1e-10),
    })
}
