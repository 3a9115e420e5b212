//! Triangle presentations over the Singer plane.
//!
//! A triangle presentation is a set T of ordered point triples together with
//! a point-line correspondence λ such that
//!
//! * (A) T is closed under rotation (x, y, z) ↦ (y, z, x);
//! * (B) a pair (x, y) starts some triple of T iff y lies on λ(x);
//! * (C) a pair (x, y) starts at most one triple of T.
//!
//! The associated group has one generator x_j per point and one relation
//! x_j x_k x_l = 1 per triple.

mod canonical;
mod group;
mod io;
mod ops;
mod sigma;

use std::fmt;

use crate::arith::{gcd, mod_inverse};

pub use canonical::{affine_canonical_form, canonical_form, CanonicalKey};
pub use group::{GroupPresentation, Letter};
pub use io::{parse_presentation, write_presentation};
pub use ops::{classify_central_forms, twist_multiplier, twist_translation, CentralForm};
pub use sigma::{
    enumerate_all_invariant, enumerate_invariant, enumerate_sigmas, Enumeration, InvariantClass,
    InvariantPresentation, SigmaCycle,
};

pub type Triple = [u32; 3];

/// λ(x) = line (a·x + b), where lines are the translates of `block`:
/// y lies on λ(x) iff y − a·x − b ∈ block (mod N).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Correspondence {
    multiplier: u32,
    shift: u32,
    block: Vec<u32>,
}

impl Correspondence {
    pub fn new(n: u32, multiplier: u32, shift: u32, block: &[u32]) -> Correspondence {
        let mut block: Vec<u32> = block.iter().map(|&d| d % n).collect();
        block.sort_unstable();
        block.dedup();
        Correspondence {
            multiplier: multiplier % n,
            shift: shift % n,
            block,
        }
    }

    pub fn multiplier(&self) -> u32 {
        self.multiplier
    }

    pub fn shift(&self) -> u32 {
        self.shift
    }

    pub fn block(&self) -> &[u32] {
        &self.block
    }

    pub fn incident(&self, n: u32, x: u32, y: u32) -> bool {
        let n64 = n as u64;
        let ax = self.multiplier as u64 * x as u64 % n64;
        let d = (y as u64 + 2 * n64 - ax - self.shift as u64) % n64;
        self.block.binary_search(&(d as u32)).is_ok()
    }

    /// The correspondence with block `scale·block`, rewritten as a translate
    /// of the current block when possible.
    fn rescaled(&self, n: u32, multiplier: u32, shift: u32, scale: u32) -> Correspondence {
        let scaled: Vec<u32> = self
            .block
            .iter()
            .map(|&d| (d as u64 * scale as u64 % n as u64) as u32)
            .collect();
        let mut sorted = scaled.clone();
        sorted.sort_unstable();
        for t in 0..n {
            let mut moved: Vec<u32> = self.block.iter().map(|&d| (d + t) % n).collect();
            moved.sort_unstable();
            if moved == sorted {
                return Correspondence::new(n, multiplier, shift + t, &self.block);
            }
        }
        Correspondence::new(n, multiplier, shift, &scaled)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TrianglePresentation {
    q: u32,
    n: u32,
    correspondence: Correspondence,
    triples: Vec<Triple>,
}

impl TrianglePresentation {
    /// Triples are reduced mod N, sorted and deduplicated. No axioms are
    /// checked here; see [`TrianglePresentation::check_axioms`].
    pub fn new(
        q: u32,
        correspondence: Correspondence,
        triples: impl IntoIterator<Item = Triple>,
    ) -> TrianglePresentation {
        let n = q * q + q + 1;
        let mut triples: Vec<Triple> = triples
            .into_iter()
            .map(|t| [t[0] % n, t[1] % n, t[2] % n])
            .collect();
        triples.sort_unstable();
        triples.dedup();
        TrianglePresentation {
            q,
            n,
            correspondence,
            triples,
        }
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn correspondence(&self) -> &Correspondence {
        &self.correspondence
    }

    pub fn triples(&self) -> &[Triple] {
        &self.triples
    }

    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    pub fn contains(&self, t: &Triple) -> bool {
        self.triples.binary_search(t).is_ok()
    }

    /// Triples whose first two entries are (x, y).
    fn starting_with(&self, x: u32, y: u32) -> &[Triple] {
        let lo = self.triples.partition_point(|t| (t[0], t[1]) < (x, y));
        let hi = self.triples.partition_point(|t| (t[0], t[1]) <= (x, y));
        &self.triples[lo..hi]
    }

    pub fn check_axioms(&self) -> Result<(), AxiomViolation> {
        let n = self.n;
        for w in self.triples.windows(2) {
            if w[0][..2] == w[1][..2] {
                return Err(AxiomViolation::Uniqueness {
                    pair: (w[0][0], w[0][1]),
                    thirds: (w[0][2], w[1][2]),
                });
            }
        }
        for t in &self.triples {
            let rotated = [t[1], t[2], t[0]];
            if !self.contains(&rotated) {
                return Err(AxiomViolation::Rotation { triple: *t });
            }
        }
        let corr = &self.correspondence;
        for x in 0..n {
            for &d in corr.block() {
                let y = ((corr.multiplier as u64 * x as u64 + corr.shift as u64 + d as u64)
                    % n as u64) as u32;
                if self.starting_with(x, y).is_empty() {
                    return Err(AxiomViolation::MissingPair { pair: (x, y) });
                }
            }
        }
        for t in &self.triples {
            if !corr.incident(n, t[0], t[1]) {
                return Err(AxiomViolation::ExtraPair { pair: (t[0], t[1]) });
            }
        }
        let expected = n as usize * (self.q as usize + 1);
        if self.triples.len() != expected {
            return Err(AxiomViolation::Cardinality {
                expected,
                found: self.triples.len(),
            });
        }
        Ok(())
    }

    pub fn is_valid(&self) -> bool {
        self.check_axioms().is_ok()
    }

    /// Invariance under the Singer cycle j ↦ j + 1.
    pub fn is_singer_invariant(&self) -> bool {
        let n = self.n;
        self.triples
            .iter()
            .all(|t| self.contains(&[(t[0] + 1) % n, (t[1] + 1) % n, (t[2] + 1) % n]))
    }

    /// Whether T is mapped to itself by j ↦ m·j.
    pub fn is_fixed_by_multiplier(&self, m: u32) -> bool {
        let n = self.n as u64;
        let f = |j: u32| (j as u64 * m as u64 % n) as u32;
        self.triples
            .iter()
            .all(|t| self.contains(&[f(t[0]), f(t[1]), f(t[2])]))
    }

    pub fn is_q_fixed(&self) -> bool {
        self.is_fixed_by_multiplier(self.q)
    }

    /// Whether T is mapped to itself by the index permutation `phi`.
    pub fn is_fixed_by(&self, phi: &[u32]) -> bool {
        phi.len() == self.n as usize
            && self.triples.iter().all(|t| {
                self.contains(&[phi[t[0] as usize], phi[t[1] as usize], phi[t[2] as usize]])
            })
    }

    /// Units r modulo N in ascending order.
    pub fn units(&self) -> impl Iterator<Item = u32> + '_ {
        (1..self.n).filter(|&r| gcd(r as u64, self.n as u64) == 1)
    }

    /// Coordinatewise j ↦ r·j + s, for r a unit mod N.
    pub fn relabel(&self, r: u32, s: u32) -> crate::Result<TrianglePresentation> {
        let n = self.n;
        if mod_inverse(r as u64, n as u64).is_none() || r.is_multiple_of(n) {
            return Err(crate::Error::NotAUnit { r: r as u64, n });
        }
        let (r64, s64, n64) = (r as u64 % n as u64, s as u64 % n as u64, n as u64);
        let f = |j: u32| ((r64 * j as u64 + s64) % n64) as u32;
        let corr = &self.correspondence;
        let a = corr.multiplier as u64;
        // y' − a·x' = r(y − a·x) + s(1 − a)
        let shift = (r64 * corr.shift as u64 + s64 * ((1 + n64 - a % n64) % n64)) % n64;
        let correspondence = corr.rescaled(n, corr.multiplier, shift as u32, r64 as u32);
        Ok(TrianglePresentation::new(
            self.q,
            correspondence,
            self.triples.iter().map(|t| [f(t[0]), f(t[1]), f(t[2])]),
        ))
    }

    /// Replaces every generator by its inverse: (x, y, z) ↦ (z, y, x).
    pub fn invert_generators(&self) -> TrianglePresentation {
        let n = self.n as u64;
        let corr = &self.correspondence;
        let a_inv = mod_inverse(corr.multiplier as u64, n).expect("multiplier is a unit");
        let neg_a_inv = (n - a_inv) % n;
        // z on λ(y) becomes y − a⁻¹z + a⁻¹b ∈ −a⁻¹·block
        let shift = neg_a_inv * corr.shift as u64 % n;
        let correspondence = corr.rescaled(self.n, a_inv as u32, shift as u32, neg_a_inv as u32);
        TrianglePresentation::new(
            self.q,
            correspondence,
            self.triples.iter().map(|t| [t[2], t[1], t[0]]),
        )
    }

    /// Rotation-class representatives: triples that are the least of their
    /// three rotations.
    pub fn rotation_representatives(&self) -> impl Iterator<Item = &Triple> + '_ {
        self.triples.iter().filter(|t| {
            let t = **t;
            t <= [t[1], t[2], t[0]] && t <= [t[2], t[0], t[1]]
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AxiomViolation {
    /// (C): two triples start with the same pair.
    Uniqueness {
        pair: (u32, u32),
        thirds: (u32, u32),
    },
    /// (A): a rotation of this triple is missing.
    Rotation {
        triple: Triple,
    },
    /// (B): an incident pair starts no triple.
    MissingPair {
        pair: (u32, u32),
    },
    /// (B): a triple starts with a non-incident pair.
    ExtraPair {
        pair: (u32, u32),
    },
    Cardinality {
        expected: usize,
        found: usize,
    },
}

impl AxiomViolation {
    /// The axiom label: 'A', 'B', 'C', or '#' for the cardinality check.
    pub fn axiom(&self) -> char {
        match self {
            AxiomViolation::Uniqueness { .. } => 'C',
            AxiomViolation::Rotation { .. } => 'A',
            AxiomViolation::MissingPair { .. } | AxiomViolation::ExtraPair { .. } => 'B',
            AxiomViolation::Cardinality { .. } => '#',
        }
    }
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AxiomViolation::Uniqueness { pair, thirds } => write!(
                f,
                "(C) pair ({}, {}) extends to both {} and {}",
                pair.0, pair.1, thirds.0, thirds.1
            ),
            AxiomViolation::Rotation { triple } => write!(
                f,
                "(A) rotation of ({}, {}, {}) missing",
                triple[0], triple[1], triple[2]
            ),
            AxiomViolation::MissingPair { pair } => {
                write!(
                    f,
                    "(B) incident pair ({}, {}) starts no triple",
                    pair.0, pair.1
                )
            }
            AxiomViolation::ExtraPair { pair } => {
                write!(
                    f,
                    "(B) non-incident pair ({}, {}) starts a triple",
                    pair.0, pair.1
                )
            }
            AxiomViolation::Cardinality { expected, found } => {
                write!(f, "expected {expected} triples, found {found}")
            }
        }
    }
}
