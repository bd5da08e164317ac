//! Integer partitions with explicit zero parts, conjugation, part
//! multiplicities, interlacing, and bounded enumeration.
//!
//! Zero parts are significant: `(2,1,0)` and `(2,1)` are different objects.
//! Functions indexed by partitions of fixed length (including zero parts)
//! rely on this; contexts that only care about positive parts use
//! [`Partition::positive`].

use std::fmt;

use crate::error::CoreError;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Creates a partition from a non-increasing list of non-negative parts.
    /// Panics if the parts increase anywhere.
    pub fn new(parts: Vec<u32>) -> Self {
        assert!(
            parts.windows(2).all(|w| w[0] >= w[1]),
            "partition parts must be non-increasing: {parts:?}"
        );
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// `0^len`, the zero partition of the given length.
    pub fn zeros(len: usize) -> Self {
        Partition {
            parts: vec![0; len],
        }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// Number of parts, zero parts included.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Number of strictly positive parts.
    pub fn positive_len(&self) -> usize {
        self.parts.iter().filter(|&&p| p > 0).count()
    }

    /// Sum of the parts.
    pub fn weight(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// Largest part, or 0 for the empty partition.
    pub fn first(&self) -> u32 {
        self.parts.first().copied().unwrap_or(0)
    }

    /// The i-th part (1-indexed), 0 beyond the stored length.
    pub fn part(&self, i: usize) -> u32 {
        if i == 0 {
            return 0;
        }
        self.parts.get(i - 1).copied().unwrap_or(0)
    }

    /// Copy with zero parts removed.
    pub fn positive(&self) -> Partition {
        Partition {
            parts: self.parts.iter().copied().filter(|&p| p > 0).collect(),
        }
    }

    /// Copy padded with zero parts up to `len`. Errors if already longer.
    pub fn padded(&self, len: usize) -> Result<Partition, CoreError> {
        if self.parts.len() > len {
            return Err(CoreError::Precondition(format!(
                "cannot pad partition of length {} to shorter length {len}",
                self.parts.len()
            )));
        }
        let mut parts = self.parts.clone();
        parts.resize(len, 0);
        Ok(Partition { parts })
    }

    /// Conjugate partition: column lengths of the Young diagram. Zero parts
    /// of the input do not affect the output.
    pub fn conjugate(&self) -> Partition {
        let first = self.first() as usize;
        let mut parts = Vec::with_capacity(first);
        for i in 1..=first {
            parts.push(self.parts.iter().filter(|&&p| p as usize >= i).count() as u32);
        }
        Partition { parts }
    }

    /// Part multiplicities `m_i` for `i = 0..=max_col`; `m_0` counts the
    /// explicit zero parts.
    pub fn multiplicities(&self, max_col: usize) -> Vec<u32> {
        let mut m = vec![0u32; max_col + 1];
        for &p in &self.parts {
            let p = p as usize;
            if p <= max_col {
                m[p] += 1;
            }
        }
        m
    }

    /// Part-multiplicity of the conjugate at column `i >= 1`: the gap
    /// `part(i) - part(i+1)`.
    pub fn conjugate_gap(&self, i: usize) -> u32 {
        self.part(i) - self.part(i + 1)
    }

    /// Multiplicities of positive columns only, `m_i` for `i = 1..=max_col`.
    pub fn positive_multiplicities(&self, max_col: usize) -> Vec<u32> {
        let mut m = vec![0u32; max_col];
        for &p in &self.parts {
            let p = p as usize;
            if p >= 1 && p <= max_col {
                m[p - 1] += 1;
            }
        }
        m
    }

    /// Containment of Young diagrams (positive parts).
    pub fn contains(&self, other: &Partition) -> bool {
        let a = self.positive();
        let b = other.positive();
        if b.len() > a.len() {
            return false;
        }
        (0..b.len()).all(|i| a.parts[i] >= b.parts[i])
    }

    /// Interlacing `self > other`: positive-part comparison with
    /// `self_i >= other_i >= self_{i+1}` and a length gap of at most one.
    pub fn interlaces(&self, other: &Partition) -> bool {
        let lam = self.positive();
        let mu = other.positive();
        if mu.len() > lam.len() || lam.len() > mu.len() + 1 {
            return false;
        }
        for i in 1..=mu.len() {
            if !(lam.part(i) >= mu.part(i) && mu.part(i) >= lam.part(i + 1)) {
                return false;
            }
        }
        true
    }

    /// Parse a comma-separated part list. Both `""` and `"0"` denote the
    /// empty partition.
    pub fn parse(text: &str) -> Result<Partition, CoreError> {
        let t = text.trim();
        if t.is_empty() || t == "0" {
            return Ok(Partition::empty());
        }
        let mut parts = Vec::new();
        for tok in t.split(',') {
            let p: u32 = tok
                .trim()
                .parse()
                .map_err(|_| CoreError::Parse(format!("invalid partition part {tok:?} in {t:?}")))?;
            parts.push(p);
        }
        if !parts.windows(2).all(|w| w[0] >= w[1]) {
            return Err(CoreError::Parse(format!(
                "partition parts must be non-increasing: {t:?}"
            )));
        }
        Ok(Partition { parts })
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let strs: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", strs.join(","))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self)
    }
}

/// Streams every positive partition with parts `<= max_part`, length
/// `<= max_length` and (optionally) weight `<= max_weight`, in
/// weight-then-reverse-lex order, each exactly once.
pub fn enumerate_partitions(
    max_part: u32,
    max_length: usize,
    max_weight: Option<u32>,
) -> PartitionIter {
    let cap = max_part.saturating_mul(max_length as u32);
    let top = max_weight.map_or(cap, |w| w.min(cap));
    PartitionIter {
        max_part,
        max_length,
        max_weight: top,
        weight: 0,
        batch: vec![Partition::empty()],
        idx: 0,
    }
}

pub struct PartitionIter {
    max_part: u32,
    max_length: usize,
    max_weight: u32,
    weight: u32,
    batch: Vec<Partition>,
    idx: usize,
}

impl Iterator for PartitionIter {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        loop {
            if self.idx < self.batch.len() {
                let out = self.batch[self.idx].clone();
                self.idx += 1;
                return Some(out);
            }
            if self.weight >= self.max_weight {
                return None;
            }
            self.weight += 1;
            self.batch = partitions_of_weight(self.weight, self.max_part, self.max_length);
            self.idx = 0;
        }
    }
}

/// All partitions of exactly `weight` in the `(max_part, max_length)` box,
/// in reverse-lex order (largest first part first).
pub fn partitions_of_weight(weight: u32, max_part: u32, max_length: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut stack = Vec::new();
    gen_rec(weight, max_part, max_length, &mut stack, &mut out);
    out
}

fn gen_rec(
    remaining: u32,
    max_next: u32,
    slots: usize,
    stack: &mut Vec<u32>,
    out: &mut Vec<Partition>,
) {
    if remaining == 0 {
        out.push(Partition::new(stack.clone()));
        return;
    }
    if slots == 0 || max_next == 0 {
        return;
    }
    let hi = max_next.min(remaining);
    for p in (1..=hi).rev() {
        // Feasibility: the rest must fit in the remaining slots.
        if (remaining - p) > p * (slots as u32 - 1) {
            continue;
        }
        stack.push(p);
        gen_rec(remaining - p, p, slots - 1, stack, out);
        stack.pop();
    }
}

/// All partitions of exact length `len` (zero parts included) with parts
/// `<= max_part`, i.e. positive partitions in the box padded with zeros.
pub fn partitions_exact_length(len: usize, max_part: u32) -> Vec<Partition> {
    enumerate_partitions(max_part, len, None)
        .map(|p| p.padded(len).expect("length bounded by construction"))
        .collect()
}

/// All partitions contained in `upper` and containing `lower`.
pub fn partitions_between(lower: &Partition, upper: &Partition) -> Vec<Partition> {
    let up = upper.positive();
    let lo = lower.positive();
    if !up.contains(&lo) {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut cur = Vec::new();
    hull_rec(&lo, &up, 1, &mut cur, &mut out);
    out
}

fn hull_rec(lo: &Partition, up: &Partition, row: usize, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if row > up.len() {
        out.push(Partition::new(cur.clone()));
        return;
    }
    let hi = up.part(row).min(cur.last().copied().unwrap_or(u32::MAX));
    let lo_bound = lo.part(row);
    for p in (lo_bound..=hi).rev() {
        if p == 0 {
            // trailing zeros are not stored for positive partitions
            out.push(Partition::new(cur.clone()));
            return;
        }
        cur.push(p);
        hull_rec(lo, up, row + 1, cur, out);
        cur.pop();
    }
}

/// Occupation-number view of a partition boundary: per-column path counts
/// with an optional saturated 0th column standing in for an unbounded pile.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MultiplicityVector {
    pub counts: Vec<u32>,
    pub saturated_col0: bool,
}

impl MultiplicityVector {
    /// Multiplicity state of a partition on columns `0..=max_col`,
    /// column 0 counting the explicit zero parts.
    pub fn of_partition(p: &Partition, max_col: usize) -> Self {
        MultiplicityVector {
            counts: p.multiplicities(max_col),
            saturated_col0: false,
        }
    }

    /// Positive-column state (columns `1..=max_col`) with the 0th column
    /// marked saturated.
    pub fn of_positive_partition(p: &Partition, max_col: usize) -> Self {
        MultiplicityVector {
            counts: p.positive_multiplicities(max_col),
            saturated_col0: true,
        }
    }
}
