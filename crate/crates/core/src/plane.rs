//! The Singer model of PG(2, q).
//!
//! Points are the cosets g^j · GF(q)^× in GF(q³)^×, labelled by j ∈ ℤ_N with
//! N = q² + q + 1. The trace-zero exponents form a perfect difference set D
//! and the lines are its translates, line k = D + k, so the Singer cycle
//! j ↦ j + 1 acts the same way on points and lines.

use std::collections::BTreeMap;

use crate::error::Result;
use crate::gf::{FieldContext, PrimePower};

#[derive(Debug, Clone)]
pub struct SingerPlane {
    q: u32,
    n: u32,
    field: FieldContext,
    block: Vec<u32>,
}

impl SingerPlane {
    pub fn build(q: u64) -> Result<SingerPlane> {
        let pp = PrimePower::new(q)?;
        let field = FieldContext::build(pp);
        let q = pp.q();
        let n = q * q + q + 1;
        // Tr(λa) = λTr(a) for λ ∈ GF(q), so the trace-zero test only depends
        // on j mod N.
        let block: Vec<u32> = (0..n)
            .filter(|&j| field.trace(field.gen_pow(j as u64)).is_zero())
            .collect();
        Ok(SingerPlane { q, n, field, block })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// Number of points (and of lines), q² + q + 1.
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn field(&self) -> &FieldContext {
        &self.field
    }

    /// The trace-zero difference set D, sorted ascending.
    pub fn block(&self) -> &[u32] {
        &self.block
    }

    pub fn contains(&self, j: u32) -> bool {
        self.block.binary_search(&(j % self.n)).is_ok()
    }

    /// Whether point j lies on line k = D + k.
    pub fn incident(&self, point: u32, line: u32) -> bool {
        self.contains((point % self.n + self.n - line % self.n) % self.n)
    }

    /// Points on line k, ascending.
    pub fn line(&self, k: u32) -> Vec<u32> {
        let mut pts: Vec<u32> = self.block.iter().map(|&d| (d + k) % self.n).collect();
        pts.sort_unstable();
        pts
    }

    pub fn check(&self) -> DifferenceReport {
        check_difference_set(self.n, self.q, &self.block)
    }
}

/// Diagnostic for a candidate (N, q+1, 1) difference set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DifferenceReport {
    pub size_ok: bool,
    /// Representation counts of every nonzero residue that is not hit
    /// exactly once.
    pub bad_residues: BTreeMap<u32, usize>,
    pub multiplier_closed: bool,
}

impl DifferenceReport {
    pub fn is_ok(&self) -> bool {
        self.size_ok && self.bad_residues.is_empty() && self.multiplier_closed
    }
}

/// Checks |D| = q + 1, the perfect difference property mod N and qD = D.
pub fn check_difference_set(n: u32, q: u32, block: &[u32]) -> DifferenceReport {
    let mut counts = vec![0usize; n as usize];
    for &a in block {
        for &b in block {
            if a != b {
                counts[((a + n - b) % n) as usize] += 1;
            }
        }
    }
    let bad_residues = (1..n as usize)
        .filter(|&r| counts[r] != 1)
        .map(|r| (r as u32, counts[r]))
        .collect();
    let mut scaled: Vec<u32> = block
        .iter()
        .map(|&d| ((d as u64 * q as u64) % n as u64) as u32)
        .collect();
    scaled.sort_unstable();
    let mut sorted = block.to_vec();
    sorted.sort_unstable();
    DifferenceReport {
        size_ok: block.len() == q as usize + 1,
        bad_residues,
        multiplier_closed: scaled == sorted,
    }
}
