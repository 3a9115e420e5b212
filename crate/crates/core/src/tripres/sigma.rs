//! Singer-invariant presentations through their difference data.
//!
//! With correspondence (1, b), invariance reduces T to the pairs of
//! consecutive differences (y − x, z − y). Axioms (B) and (C) make the second
//! difference a function σ of the first on D̃ = D + b, and rotation closure
//! forces σ³ = id and u + σ(u) + σ²(u) ≡ 0 (mod N). Conversely each such σ
//! gives T = {(i, i+u, i+u+σ(u))}.

use std::collections::HashMap;

use rayon::prelude::*;

use super::canonical::{affine_canonical_form, CanonicalKey};
use super::{Correspondence, TrianglePresentation};
use crate::plane::SingerPlane;

/// A permutation σ of the admissible differences, stored as parallel
/// `support`/`images` vectors with `support` ascending.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SigmaCycle {
    support: Vec<u32>,
    images: Vec<u32>,
}

impl SigmaCycle {
    /// Builds σ from its table; `None` unless σ is a permutation of
    /// `support` with σ³ = id and u + σ(u) + σ²(u) ≡ 0 mod n.
    pub fn new(n: u32, support: &[u32], images: &[u32]) -> Option<SigmaCycle> {
        if support.len() != images.len() {
            return None;
        }
        let mut pairs: Vec<(u32, u32)> = support
            .iter()
            .zip(images)
            .map(|(&u, &v)| (u % n, v % n))
            .collect();
        pairs.sort_unstable();
        let sigma = SigmaCycle {
            support: pairs.iter().map(|p| p.0).collect(),
            images: pairs.iter().map(|p| p.1).collect(),
        };
        if sigma.support.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        let valid = sigma.support.iter().all(|&u| {
            let Some(v) = sigma.apply(u) else {
                return false;
            };
            let Some(w) = sigma.apply(v) else {
                return false;
            };
            sigma.apply(w) == Some(u) && (u as u64 + v as u64 + w as u64).is_multiple_of(n as u64)
        });
        valid.then_some(sigma)
    }

    pub fn support(&self) -> &[u32] {
        &self.support
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn apply(&self, u: u32) -> Option<u32> {
        self.support.binary_search(&u).ok().map(|i| self.images[i])
    }

    /// The presentation {(i, i+u, i+u+σ(u))} with correspondence (1, shift).
    pub fn presentation(&self, q: u32, block: &[u32], shift: u32) -> TrianglePresentation {
        let n = q * q + q + 1;
        let corr = Correspondence::new(n, 1, shift, block);
        let triples = (0..n).flat_map(|i| {
            self.support
                .iter()
                .zip(&self.images)
                .map(move |(&u, &v)| [i, (i + u) % n, (i + u + v) % n])
        });
        TrianglePresentation::new(q, corr, triples)
    }

    /// Cycle notation such as `(1 2 4)(0)`.
    pub fn cycle_string(&self) -> String {
        let mut seen = vec![false; self.support.len()];
        let mut out = String::new();
        for (i, &u) in self.support.iter().enumerate() {
            if seen[i] {
                continue;
            }
            let mut cycle = vec![u];
            seen[i] = true;
            let mut v = self.images[i];
            while v != u {
                let j = self.support.binary_search(&v).expect("closed support");
                seen[j] = true;
                cycle.push(v);
                v = self.images[j];
            }
            let parts: Vec<String> = cycle.iter().map(|c| c.to_string()).collect();
            out.push('(');
            out.push_str(&parts.join(" "));
            out.push(')');
        }
        out
    }
}

/// Every σ on `support` (taken mod n), in lexicographic order of the image
/// table.
pub fn enumerate_sigmas(n: u32, support: &[u32]) -> Vec<SigmaCycle> {
    let mut support: Vec<u32> = support.iter().map(|&u| u % n).collect();
    support.sort_unstable();
    support.dedup();
    let index: HashMap<u32, usize> = support.iter().enumerate().map(|(i, &u)| (u, i)).collect();
    let mut images: Vec<Option<u32>> = vec![None; support.len()];
    let mut out = Vec::new();
    search(n, &support, &index, &mut images, &mut out);
    out.sort();
    out
}

fn search(
    n: u32,
    support: &[u32],
    index: &HashMap<u32, usize>,
    images: &mut [Option<u32>],
    out: &mut Vec<SigmaCycle>,
) {
    let Some(i) = images.iter().position(|s| s.is_none()) else {
        out.push(SigmaCycle {
            support: support.to_vec(),
            images: images.iter().map(|s| s.expect("complete")).collect(),
        });
        return;
    };
    let u = support[i];
    if (3 * u as u64).is_multiple_of(n as u64) {
        images[i] = Some(u);
        search(n, support, index, images, out);
        images[i] = None;
    }
    for j in 0..support.len() {
        if j == i || images[j].is_some() {
            continue;
        }
        let v = support[j];
        let w = ((2 * n as u64 - u as u64 - v as u64) % n as u64) as u32;
        let Some(&k) = index.get(&w) else { continue };
        if k == i || k == j || images[k].is_some() {
            continue;
        }
        images[i] = Some(v);
        images[j] = Some(w);
        images[k] = Some(u);
        search(n, support, index, images, out);
        images[i] = None;
        images[j] = None;
        images[k] = None;
    }
}

#[derive(Debug, Clone)]
pub struct InvariantPresentation {
    pub shift: u32,
    pub sigma: SigmaCycle,
    pub presentation: TrianglePresentation,
}

/// All Singer-invariant presentations with correspondence (1, shift),
/// ordered by σ table.
pub fn enumerate_invariant(plane: &SingerPlane, shift: u32) -> Vec<InvariantPresentation> {
    let n = plane.n();
    let support: Vec<u32> = plane.block().iter().map(|&d| (d + shift) % n).collect();
    enumerate_sigmas(n, &support)
        .into_iter()
        .map(|sigma| InvariantPresentation {
            shift: shift % n,
            presentation: sigma.presentation(plane.q(), plane.block(), shift),
            sigma,
        })
        .collect()
}

/// One equivalence class of invariant presentations under the affine
/// relabelings j ↦ rj + s.
#[derive(Debug, Clone)]
pub struct InvariantClass {
    pub index: usize,
    pub key: CanonicalKey,
    /// First member in (shift, σ) order.
    pub representative: InvariantPresentation,
    pub members: usize,
    pub shifts: Vec<u32>,
    /// Index of the class containing the inverse-generator presentation.
    pub inverse_class: usize,
}

#[derive(Debug, Clone)]
pub struct Enumeration {
    pub q: u32,
    pub presentations: usize,
    pub classes: Vec<InvariantClass>,
}

impl Enumeration {
    /// Number of classes once generator inversion is also divided out.
    pub fn inversion_orbits(&self) -> usize {
        self.classes
            .iter()
            .filter(|c| c.inverse_class >= c.index)
            .count()
    }

    pub fn name(&self, class: &InvariantClass) -> String {
        format!("q{}-c{}", self.q, class.index + 1)
    }
}

/// Invariant presentations over every shift, grouped into affine classes.
pub fn enumerate_all_invariant(plane: &SingerPlane) -> Enumeration {
    let all: Vec<InvariantPresentation> = (0..plane.n())
        .into_par_iter()
        .flat_map_iter(|b| enumerate_invariant(plane, b))
        .collect();
    let keys: Vec<CanonicalKey> = all
        .par_iter()
        .map(|ip| affine_canonical_form(&ip.presentation))
        .collect();

    let mut by_key: HashMap<&CanonicalKey, usize> = HashMap::new();
    let mut classes: Vec<InvariantClass> = Vec::new();
    for (ip, key) in all.iter().zip(&keys) {
        match by_key.get(key) {
            Some(&c) => {
                let class = &mut classes[c];
                class.members += 1;
                if !class.shifts.contains(&ip.shift) {
                    class.shifts.push(ip.shift);
                }
            }
            None => {
                by_key.insert(key, classes.len());
                classes.push(InvariantClass {
                    index: classes.len(),
                    key: key.clone(),
                    representative: ip.clone(),
                    members: 1,
                    shifts: vec![ip.shift],
                    inverse_class: usize::MAX,
                });
            }
        }
    }

    let inverse_keys: Vec<CanonicalKey> = classes
        .par_iter()
        .map(|c| affine_canonical_form(&c.representative.presentation.invert_generators()))
        .collect();
    for (class, inv_key) in classes.iter_mut().zip(&inverse_keys) {
        class.inverse_class = *by_key
            .get(inv_key)
            .expect("the inverse of an invariant presentation is invariant after relabeling");
    }

    Enumeration {
        q: plane.q(),
        presentations: all.len(),
        classes,
    }
}
