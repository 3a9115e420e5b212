//! The order-3 twists and the central-form classification.

use std::collections::BTreeSet;
use std::fmt;

use super::{Correspondence, TrianglePresentation};
use crate::error::{Error, Result};

/// Multiplier twist: power 1 gives T′ = {(j, qk, q²l)}, power 2 gives
/// T″ = {(j, q²k, ql)}. Requires T to be fixed by j ↦ qj.
pub fn twist_multiplier(p: &TrianglePresentation, power: u32) -> Result<TrianglePresentation> {
    assert!(power == 1 || power == 2, "twist power must be 1 or 2");
    if !p.is_q_fixed() {
        return Err(Error::NotMultiplierFixed { multiplier: p.q() });
    }
    let n = p.n() as u64;
    let q = p.q() as u64;
    let m1 = q.pow(power) % n;
    let m2 = m1 * m1 % n;
    let corr = p.correspondence();
    let a = corr.multiplier() as u64 * m1 % n;
    let b = corr.shift() as u64 * m1 % n;
    let correspondence = corr.rescaled(p.n(), a as u32, b as u32, m1 as u32);
    let triples = p.triples().iter().map(|t| {
        [
            t[0],
            (t[1] as u64 * m1 % n) as u32,
            (t[2] as u64 * m2 % n) as u32,
        ]
    });
    Ok(TrianglePresentation::new(p.q(), correspondence, triples))
}

/// Translation twists by N/3 for q ≡ 1 (mod 3): returns
/// (B, C) = ({(j, k + N/3, l + 2N/3)}, {(j, k + 2N/3, l + N/3)}).
pub fn twist_translation(
    p: &TrianglePresentation,
) -> Result<(TrianglePresentation, TrianglePresentation)> {
    if p.q() % 3 != 1 {
        return Err(Error::NotOneModThree { q: p.q() });
    }
    if !p.is_singer_invariant() {
        return Err(Error::NotSingerInvariant);
    }
    let n = p.n();
    let third = n / 3;
    let shifted = |step: u32| {
        let corr = p.correspondence();
        let correspondence =
            Correspondence::new(n, corr.multiplier(), corr.shift() + step, corr.block());
        let triples = p
            .triples()
            .iter()
            .map(|t| [t[0], (t[1] + step) % n, (t[2] + 2 * step) % n]);
        TrianglePresentation::new(p.q(), correspondence, triples)
    };
    Ok((shifted(third), shifted(2 * third)))
}

/// The three kinds of triples that are fixed by translation by N/3.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CentralForm {
    /// (j, j, j)
    A,
    /// (j, j + N/3, j + 2N/3)
    B,
    /// (j, j + 2N/3, j + N/3)
    C,
}

impl CentralForm {
    pub const ALL: [CentralForm; 3] = [CentralForm::A, CentralForm::B, CentralForm::C];

    /// Image under the translation twist B: (a) → (b) → (c) → (a).
    pub fn next(self) -> CentralForm {
        match self {
            CentralForm::A => CentralForm::B,
            CentralForm::B => CentralForm::C,
            CentralForm::C => CentralForm::A,
        }
    }

    fn offsets(self, n: u32) -> (u32, u32) {
        let t = n / 3;
        match self {
            CentralForm::A => (0, 0),
            CentralForm::B => (t, 2 * t),
            CentralForm::C => (2 * t, t),
        }
    }
}

impl fmt::Display for CentralForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            CentralForm::A => 'a',
            CentralForm::B => 'b',
            CentralForm::C => 'c',
        };
        write!(f, "{c}")
    }
}

/// Which of the forms (a), (b), (c) occur in full, i.e. for every j.
pub fn classify_central_forms(p: &TrianglePresentation) -> Result<BTreeSet<CentralForm>> {
    if p.q() % 3 != 1 {
        return Err(Error::NotOneModThree { q: p.q() });
    }
    if !p.is_singer_invariant() {
        return Err(Error::NotSingerInvariant);
    }
    let n = p.n();
    Ok(CentralForm::ALL
        .into_iter()
        .filter(|form| {
            let (k, l) = form.offsets(n);
            (0..n).all(|j| p.contains(&[j, (j + k) % n, (j + l) % n]))
        })
        .collect())
}
