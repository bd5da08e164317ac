//! Scalar arithmetic: exact rationals, the field abstraction shared by the
//! exact and floating-point evaluation paths, q-Pochhammer symbols in all
//! index regimes, and the regularized q-hypergeometric sum used by the
//! fused vertex weights.

use num::complex::Complex64;
use num::{BigInt, BigRational, One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::error::CoreError;

/// Arbitrary-precision rational scalar. Always held in lowest terms with a
/// positive denominator; every arithmetic operation renormalizes.
pub type Rat = BigRational;

/// Build `p/q` as an exact rational.
pub fn rat(p: i64, q: i64) -> Rat {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// Build an integer as an exact rational.
pub fn rat_i(p: i64) -> Rat {
    BigRational::from_integer(BigInt::from(p))
}

/// Parse a rational from a `p/q` or plain integer string.
pub fn parse_rat(text: &str) -> Result<Rat, CoreError> {
    let t = text.trim();
    let parsed: Result<BigRational, _> = t.parse();
    parsed.map_err(|_| CoreError::Parse(format!("invalid rational literal: {t:?}")))
}

/// Common interface of the coefficient fields used by the engine: exact
/// rationals on the verification path and `f64` on the numeric path.
pub trait Field:
    Clone
    + fmt::Debug
    + PartialEq
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + 'static
{
    fn from_i64(n: i64) -> Self;

    /// Division with an explicit zero-divisor check.
    fn div_checked(&self, rhs: &Self) -> Result<Self, CoreError> {
        if rhs.is_zero() {
            return Err(CoreError::DivisionByZero("scalar division".into()));
        }
        Ok(self.clone() / rhs.clone())
    }

    /// Integer power; negative exponents require a nonzero base.
    fn pow_i(&self, e: i64) -> Result<Self, CoreError> {
        if e < 0 {
            return Self::one().div_checked(self)?.pow_i(-e);
        }
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = e as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            base = base.clone() * base;
            e >>= 1;
        }
        Ok(acc)
    }
}

impl Field for Rat {
    fn from_i64(n: i64) -> Self {
        rat_i(n)
    }
}

impl Field for f64 {
    fn from_i64(n: i64) -> Self {
        n as f64
    }
}

/// q-Pochhammer symbol `(a;q)_m` for any integer index.
///
/// Positive index multiplies `(1 - a q^{i-1})` for `i = 1..m`; index zero is
/// the empty product; negative index inverts `(1 - a q^{-i})` for
/// `i = 1..-m`, which fails when one of those factors vanishes.
pub fn q_pochhammer<S: Field>(a: &S, q: &S, m: i64) -> Result<S, CoreError> {
    let one = S::one();
    if m >= 0 {
        let mut prod = S::one();
        let mut aq = a.clone();
        for _ in 0..m {
            prod = prod * (one.clone() - aq.clone());
            aq = aq * q.clone();
        }
        Ok(prod)
    } else {
        let q_inv = S::one().div_checked(q)?;
        let mut prod = S::one();
        let mut aq = a.clone();
        for i in 1..=(-m) {
            aq = aq * q_inv.clone();
            let factor = one.clone() - aq.clone();
            if factor.is_zero() {
                return Err(CoreError::DivisionByZero(format!(
                    "q-Pochhammer factor (1 - a q^-{i}) vanishes at negative index"
                )));
            }
            prod = prod.div_checked(&factor)?;
        }
        Ok(prod)
    }
}

/// Gaussian binomial coefficient `[n; k]_q = (q;q)_n / ((q;q)_k (q;q)_{n-k})`.
pub fn q_binomial<S: Field>(n: u32, k: u32, q: &S) -> Result<S, CoreError> {
    if k > n {
        return Ok(S::zero());
    }
    let num = q_pochhammer(q, q, n as i64)?;
    let d1 = q_pochhammer(q, q, k as i64)?;
    let d2 = q_pochhammer(q, q, (n - k) as i64)?;
    num.div_checked(&(d1 * d2))
}

/// Infinite q-Pochhammer `(a;q)_inf` on the numeric path.
///
/// Truncates once the incremental factor differs from 1 by less than `tol`,
/// with a hard cap of 10,000 factors. Requires `|q| < 1`.
pub fn q_pochhammer_inf(a: Complex64, q: Complex64, tol: f64) -> Result<Complex64, CoreError> {
    if q.norm() >= 1.0 {
        return Err(CoreError::Domain(format!(
            "infinite q-Pochhammer requires |q| < 1, got |q| = {}",
            q.norm()
        )));
    }
    let mut prod = Complex64::new(1.0, 0.0);
    let mut aq = a;
    for _ in 0..10_000 {
        if aq.norm() < tol {
            break;
        }
        prod *= Complex64::new(1.0, 0.0) - aq;
        aq *= q;
    }
    Ok(prod)
}

/// Real-argument convenience wrapper around [`q_pochhammer_inf`].
pub fn q_pochhammer_inf_real(a: f64, q: f64, tol: f64) -> Result<f64, CoreError> {
    Ok(q_pochhammer_inf(Complex64::new(a, 0.0), Complex64::new(q, 0.0), tol)?.re)
}

/// Regularized terminating q-hypergeometric sum
///
/// ```text
/// sum_{k=0}^{n} z^k (q^{-n};q)_k / (q;q)_k  prod_i (a_i;q)_k (b_i q^k;q)_{n-k}
/// ```
///
/// Exact over rational inputs. Requires `a` and `b` of equal nonzero length.
pub fn q_hypergeometric_reg<S: Field>(
    n: u32,
    a: &[S],
    b: &[S],
    q: &S,
    z: &S,
) -> Result<S, CoreError> {
    if a.len() != b.len() || a.is_empty() {
        return Err(CoreError::Precondition(
            "regularized q-hypergeometric sum needs upper and lower parameter lists of equal nonzero length".into(),
        ));
    }
    let q_neg_n = q.pow_i(-(n as i64))?;
    let mut total = S::zero();
    for k in 0..=n {
        let mut term = z.pow_i(k as i64)?;
        let num = q_pochhammer(&q_neg_n, q, k as i64)?;
        let den = q_pochhammer(q, q, k as i64)?;
        term = term * num.div_checked(&den)?;
        let qk = q.pow_i(k as i64)?;
        for (ai, bi) in a.iter().zip(b.iter()) {
            term = term * q_pochhammer(ai, q, k as i64)?;
            term = term * q_pochhammer(&(bi.clone() * qk.clone()), q, (n - k) as i64)?;
        }
        total = total + term;
    }
    Ok(total)
}

/// Format a rational for JSON output (`p/q` or a plain integer string).
pub fn rat_to_string(r: &Rat) -> String {
    r.to_string()
}

/// Approximate a rational by a double, for report deviations only.
pub fn rat_to_f64(r: &Rat) -> f64 {
    let num = r.numer();
    let den = r.denom();
    // Falls back to a digit-string route when the integers overflow i128.
    if let (Some(n), Some(d)) = (to_i128(num), to_i128(den)) {
        return n as f64 / d as f64;
    }
    let n: f64 = num.to_string().parse().unwrap_or(f64::NAN);
    let d: f64 = den.to_string().parse().unwrap_or(f64::NAN);
    n / d
}

fn to_i128(b: &BigInt) -> Option<i128> {
    let s = b.to_string();
    s.parse().ok()
}

/// True when the rational is non-negative.
pub fn rat_is_nonneg(r: &Rat) -> bool {
    !r.is_negative()
}

/// Magnitude comparison `|a| < |b|` over exact rationals.
pub fn rat_abs_lt(a: &Rat, b: &Rat) -> bool {
    a.abs() < b.abs()
}
