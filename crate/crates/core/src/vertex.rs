//! Higher-spin vertex weights, their duals, the rank-one R-matrix, a
//! single-row transfer engine, and brute-force Yang-Baxter checkers.
//!
//! Path bookkeeping around a vertex `(i, j; k, l)`: `i` sits on the bottom
//! edge, `j` on the left, `k` on the top, `l` on the right. Weights come in
//! two orientations distinguished by their conservation law: `i + j = k + l`
//! (paths travel south/west to north/east) or `j + k = i + l` (north/west
//! to south/east, the dual family).

use crate::error::{CoreError, CoreResult};
use crate::partition::MultiplicityVector;
use crate::scalar::Field;
use std::collections::HashMap;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Conservation {
    /// `i + j = k + l`
    SwNe,
    /// `j + k = i + l`
    NwSe,
}

/// A parameterized vertex-weight family together with its conservation law
/// and horizontal capacity.
#[derive(Clone, Debug)]
pub enum Family<S: Field> {
    /// Unfused weights `w_u` with horizontal capacity 1.
    Unfused { q: S, s: S, u: S },
    /// Dual weights (the complemented-and-reversed family), capacity 1.
    Dual { q: S, s: S, u: S },
    /// Fused weights `W_x` with unbounded horizontal occupation.
    FusedW { q: S, s: S, x: S },
    /// Dual fused weights, unbounded horizontal occupation.
    FusedWDual { q: S, s: S, x: S },
    /// Wrapper that rescales one entry of a base family; used by the
    /// negative-control mutation tests.
    Perturbed {
        base: Box<Family<S>>,
        at: (u32, u32, u32, u32),
        factor: S,
    },
}

impl<S: Field> Family<S> {
    pub fn conservation(&self) -> Conservation {
        match self {
            Family::Unfused { .. } | Family::FusedW { .. } => Conservation::SwNe,
            Family::Dual { .. } | Family::FusedWDual { .. } => Conservation::NwSe,
            Family::Perturbed { base, .. } => base.conservation(),
        }
    }

    /// Maximum number of paths on a horizontal edge, if bounded.
    pub fn horizontal_capacity(&self) -> Option<u32> {
        match self {
            Family::Unfused { .. } | Family::Dual { .. } => Some(1),
            Family::FusedW { .. } | Family::FusedWDual { .. } => None,
            Family::Perturbed { base, .. } => base.horizontal_capacity(),
        }
    }

    pub fn eval(&self, i: u32, j: u32, k: u32, l: u32) -> CoreResult<S> {
        match self {
            Family::Unfused { q, s, u } => weight_unfused(q, s, u, i, j, k, l),
            Family::Dual { q, s, u } => weight_dual(q, s, u, i, j, k, l),
            Family::FusedW { q, s, x } => crate::fusion::weight_w(q, s, x, i, j, k, l),
            Family::FusedWDual { q, s, x } => crate::fusion::weight_w_dual(q, s, x, i, j, k, l),
            Family::Perturbed { base, at, factor } => {
                let v = base.eval(i, j, k, l)?;
                if (i, j, k, l) == *at {
                    Ok(v * factor.clone())
                } else {
                    Ok(v)
                }
            }
        }
    }
}

/// Unfused vertex weight `w_u(i, j; k, l)`, zero off conservation; the empty
/// vertex has weight 1.
pub fn weight_unfused<S: Field>(q: &S, s: &S, u: &S, i: u32, j: u32, k: u32, l: u32) -> CoreResult<S> {
    if j > 1 || l > 1 {
        return Ok(S::zero());
    }
    if i + j != k + l {
        return Ok(S::zero());
    }
    let denom = S::one() - s.clone() * u.clone();
    if denom.is_zero() {
        return Err(CoreError::DivisionByZero("unfused weight requires s u != 1".into()));
    }
    let g;
    let num = match (j, l) {
        (0, 0) => {
            g = i;
            S::one() - s.clone() * q.pow_i(g as i64)? * u.clone()
        }
        (0, 1) => {
            g = k;
            (S::one() - s.clone() * s.clone() * q.pow_i(g as i64)?) * u.clone()
        }
        (1, 0) => {
            g = i;
            S::one() - q.pow_i(g as i64 + 1)?
        }
        (1, 1) => {
            g = i;
            u.clone() - s.clone() * q.pow_i(g as i64)?
        }
        _ => unreachable!(),
    };
    let _ = g;
    num.div_checked(&denom)
}

/// Dual vertex weight, conserving `j + k = i + l`.
pub fn weight_dual<S: Field>(q: &S, s: &S, u: &S, i: u32, j: u32, k: u32, l: u32) -> CoreResult<S> {
    if j > 1 || l > 1 {
        return Ok(S::zero());
    }
    if j + k != i + l {
        return Ok(S::zero());
    }
    let denom = S::one() - s.clone() * u.clone();
    if denom.is_zero() {
        return Err(CoreError::DivisionByZero("dual weight requires s u != 1".into()));
    }
    let num = match (j, l) {
        (1, 1) => u.clone() - s.clone() * q.pow_i(i as i64)?,
        (1, 0) => S::one() - s.clone() * s.clone() * q.pow_i(k as i64)?,
        (0, 1) => (S::one() - q.pow_i(i as i64 + 1)?) * u.clone(),
        (0, 0) => S::one() - s.clone() * q.pow_i(i as i64)? * u.clone(),
        _ => unreachable!(),
    };
    num.div_checked(&denom)
}

/// Weight of an `n`-vertex: a vertical stack of unfused vertices with the
/// internal vertical edges forced by conservation. Entry `m` of the edge
/// lists belongs to the `m`-th vertex from the bottom.
pub fn n_vertex<S: Field>(
    q: &S,
    s: &S,
    spectral: &[S],
    i: u32,
    j_list: &[u32],
    k: u32,
    l_list: &[u32],
) -> CoreResult<S> {
    assert_eq!(spectral.len(), j_list.len());
    assert_eq!(spectral.len(), l_list.len());
    let mut g = i as i64;
    let mut prod = S::one();
    for (m, u) in spectral.iter().enumerate() {
        let j = j_list[m];
        let l = l_list[m];
        let g_next = g + j as i64 - l as i64;
        if g_next < 0 {
            return Ok(S::zero());
        }
        prod = prod * weight_unfused(q, s, u, g as u32, j, g_next as u32, l)?;
        if prod.is_zero() {
            return Ok(S::zero());
        }
        g = g_next;
    }
    if g != k as i64 {
        return Ok(S::zero());
    }
    Ok(prod)
}

/// Value of a single lattice row with fixed boundary occupation data.
///
/// Scans columns `0..max(len)`; the horizontal edge after each column is
/// forced by the family's conservation law. Returns 0 for any infeasible
/// configuration (negative or over-capacity edge, mismatched right edge).
pub fn row_value<S: Field>(
    fam: &Family<S>,
    bottom: &[u32],
    top: &[u32],
    left: u32,
    right: u32,
) -> CoreResult<S> {
    let cols = bottom.len().max(top.len());
    let cap = fam.horizontal_capacity();
    if let Some(c) = cap {
        if left > c || right > c {
            return Ok(S::zero());
        }
    }
    let mut h = left as i64;
    let mut prod = S::one();
    for c in 0..cols {
        let b = bottom.get(c).copied().unwrap_or(0);
        let t = top.get(c).copied().unwrap_or(0);
        let h_next = match fam.conservation() {
            Conservation::SwNe => b as i64 + h - t as i64,
            Conservation::NwSe => t as i64 + h - b as i64,
        };
        if h_next < 0 {
            return Ok(S::zero());
        }
        if let Some(cmax) = cap {
            if h_next > cmax as i64 {
                return Ok(S::zero());
            }
        }
        prod = prod * fam.eval(b, h as u32, t, h_next as u32)?;
        if prod.is_zero() {
            return Ok(S::zero());
        }
        h = h_next;
    }
    if h != right as i64 {
        return Ok(S::zero());
    }
    Ok(prod)
}

/// [`row_value`] on explicit multiplicity states. Saturated states are the
/// operators' business, not the row engine's.
pub fn row_value_states<S: Field>(
    fam: &Family<S>,
    bottom: &MultiplicityVector,
    top: &MultiplicityVector,
    left: u32,
    right: u32,
) -> CoreResult<S> {
    if bottom.saturated_col0 || top.saturated_col0 {
        return Err(CoreError::Unsupported(
            "saturated 0th column is handled by operator coefficients, not row values".into(),
        ));
    }
    row_value(fam, &bottom.counts, &top.counts, left, right)
}

/// Enumerate every bottom state reachable from `top` through one row with
/// the given left/right edges, together with the row value. Only available
/// for capacity-bounded families.
pub fn row_targets<S: Field>(
    fam: &Family<S>,
    top: &[u32],
    left: u32,
    right: u32,
    cols: usize,
) -> CoreResult<Vec<(Vec<u32>, S)>> {
    let cap = fam
        .horizontal_capacity()
        .ok_or_else(|| CoreError::Unsupported("target enumeration needs bounded horizontal capacity".into()))?;
    if left > cap || right > cap {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut bottom = vec![0u32; cols];
    walk(fam, top, right, cap, 0, cols, left, S::one(), &mut bottom, &mut out)?;
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn walk<S: Field>(
    fam: &Family<S>,
    top: &[u32],
    right: u32,
    cap: u32,
    col: usize,
    cols: usize,
    h: u32,
    acc: S,
    bottom: &mut Vec<u32>,
    out: &mut Vec<(Vec<u32>, S)>,
) -> CoreResult<()> {
    if col == cols {
        if h == right {
            out.push((bottom.clone(), acc));
        }
        return Ok(());
    }
    let t = top.get(col).copied().unwrap_or(0);
    for h_next in 0..=cap {
        let b = match fam.conservation() {
            Conservation::SwNe => t as i64 + h_next as i64 - h as i64,
            Conservation::NwSe => t as i64 + h as i64 - h_next as i64,
        };
        if b < 0 {
            continue;
        }
        let w = fam.eval(b as u32, h, t, h_next)?;
        if w.is_zero() {
            continue;
        }
        bottom[col] = b as u32;
        walk(fam, top, right, cap, col + 1, cols, h_next, acc.clone() * w, bottom, out)?;
        bottom[col] = 0;
    }
    Ok(())
}

/// Apply one row operator downward to a weighted set of top states,
/// producing the weighted set of bottom states.
pub fn apply_row_down<S: Field>(
    fam: &Family<S>,
    left: u32,
    right: u32,
    states: &HashMap<Vec<u32>, S>,
    cols: usize,
) -> CoreResult<HashMap<Vec<u32>, S>> {
    let mut next: HashMap<Vec<u32>, S> = HashMap::new();
    for (top, coeff) in states {
        for (bottom, w) in row_targets(fam, top, left, right, cols)? {
            let add = coeff.clone() * w;
            next.entry(bottom)
                .and_modify(|v| *v = v.clone() + add.clone())
                .or_insert(add);
        }
    }
    Ok(next)
}

/// Entries of the rank-one R-matrix in the ordered basis
/// `(00, 01, 10, 11)` of a two-site horizontal space.
pub fn r_matrix<S: Field>(q: &S, u: &S) -> [[S; 4]; 4] {
    let zero = S::zero;
    let one_minus_qu = || S::one() - q.clone() * u.clone();
    [
        [one_minus_qu(), zero(), zero(), zero()],
        [
            zero(),
            q.clone() * (S::one() - u.clone()),
            S::one() - q.clone(),
            zero(),
        ],
        [
            zero(),
            (S::one() - q.clone()) * u.clone(),
            S::one() - u.clone(),
            zero(),
        ],
        [zero(), zero(), zero(), one_minus_qu()],
    ]
}

fn mat_mul<S: Field>(a: &[[S; 4]; 4], b: &[[S; 4]; 4]) -> [[S; 4]; 4] {
    std::array::from_fn(|r| {
        std::array::from_fn(|c| {
            let mut acc = S::zero();
            for m in 0..4 {
                acc = acc + a[r][m].clone() * b[m][c].clone();
            }
            acc
        })
    })
}

fn permutation_matrix<S: Field>() -> [[S; 4]; 4] {
    let mut p: [[S; 4]; 4] = std::array::from_fn(|_| std::array::from_fn(|_| S::zero()));
    // |ab> -> |ba> with basis order 00, 01, 10, 11.
    p[0][0] = S::one();
    p[2][1] = S::one();
    p[1][2] = S::one();
    p[3][3] = S::one();
    p
}

/// Two-vertex operator as a 4x4 matrix: column index encodes the right
/// edges `(l1, l2)`, row index the left edges `(j1, j2)`, with the first
/// slot on the bottom vertex.
fn two_vertex_matrix<S: Field>(q: &S, s: &S, u1: &S, u2: &S, i: u32, k: u32) -> CoreResult<[[S; 4]; 4]> {
    let spectral = [u1.clone(), u2.clone()];
    let mut m: [[S; 4]; 4] = std::array::from_fn(|_| std::array::from_fn(|_| S::zero()));
    for (row, (j1, j2)) in [(0, 0), (0, 1), (1, 0), (1, 1)].into_iter().enumerate() {
        for (col, (l1, l2)) in [(0, 0), (0, 1), (1, 0), (1, 1)].into_iter().enumerate() {
            m[row][col] = n_vertex(q, s, &spectral, i, &[j1, j2], k, &[l1, l2])?;
        }
    }
    Ok(m)
}

/// Exact check of the Yang-Baxter equation at one pair of vertical states.
pub fn ybe_check<S: Field>(q: &S, s: &S, u1: &S, u2: &S, i: u32, k: u32) -> CoreResult<bool> {
    ybe_sides(q, s, u1, u2, i, k, None).map(|(l, r)| l == r)
}

/// Both sides of the Yang-Baxter equation; an optional perturbation rescales
/// one entry of the `u1` vertex family (negative-control hook).
pub fn ybe_sides<S: Field>(
    q: &S,
    s: &S,
    u1: &S,
    u2: &S,
    i: u32,
    k: u32,
    perturb: Option<((u32, u32, u32, u32), S)>,
) -> CoreResult<([[S; 4]; 4], [[S; 4]; 4])> {
    let (w12, w21) = match &perturb {
        None => (
            two_vertex_matrix(q, s, u1, u2, i, k)?,
            two_vertex_matrix(q, s, u2, u1, i, k)?,
        ),
        Some((at, factor)) => (
            two_vertex_matrix_perturbed(q, s, u1, u2, i, k, u1, *at, factor)?,
            two_vertex_matrix_perturbed(q, s, u2, u1, i, k, u1, *at, factor)?,
        ),
    };
    let ratio = u2.div_checked(u1)?;
    let r = r_matrix(q, &ratio);
    let p = permutation_matrix::<S>();
    let lhs = mat_mul(&p, &mat_mul(&r, &w12));
    let rhs = mat_mul(&w21, &mat_mul(&p, &r));
    Ok((lhs, rhs))
}

#[allow(clippy::too_many_arguments)]
fn two_vertex_matrix_perturbed<S: Field>(
    q: &S,
    s: &S,
    u1: &S,
    u2: &S,
    i: u32,
    k: u32,
    perturbed_u: &S,
    at: (u32, u32, u32, u32),
    factor: &S,
) -> CoreResult<[[S; 4]; 4]> {
    let fams: Vec<Family<S>> = [u1, u2]
        .into_iter()
        .map(|u| {
            let base = Family::Unfused {
                q: q.clone(),
                s: s.clone(),
                u: u.clone(),
            };
            if u == perturbed_u {
                Family::Perturbed {
                    base: Box::new(base),
                    at,
                    factor: factor.clone(),
                }
            } else {
                base
            }
        })
        .collect();
    let mut m: [[S; 4]; 4] = std::array::from_fn(|_| std::array::from_fn(|_| S::zero()));
    for (row, (j1, j2)) in [(0, 0), (0, 1), (1, 0), (1, 1)].into_iter().enumerate() {
        for (col, (l1, l2)) in [(0, 0), (0, 1), (1, 0), (1, 1)].into_iter().enumerate() {
            let g = i as i64 + j1 as i64 - l1 as i64;
            if g < 0 {
                continue;
            }
            let w1 = fams[0].eval(i, j1, g as u32, l1)?;
            let w2 = fams[1].eval(g as u32, j2, k, l2)?;
            m[row][col] = w1 * w2;
        }
    }
    Ok(m)
}
