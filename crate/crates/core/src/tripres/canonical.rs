//! Canonical keys for presentation equivalence: the lexicographically least
//! sorted triple list over a group of relabelings.

use std::fmt;

use sha2::{Digest, Sha256};

use super::{TrianglePresentation, Triple};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey(Vec<Triple>);

impl CanonicalKey {
    pub fn triples(&self) -> &[Triple] {
        &self.0
    }

    /// First 16 hex digits of the SHA-256 of the key written one triple per
    /// line as `x y z`.
    pub fn fingerprint(&self) -> String {
        let mut hasher = Sha256::new();
        for t in &self.0 {
            hasher.update(format!("{} {} {}\n", t[0], t[1], t[2]).as_bytes());
        }
        let digest = hasher.finalize();
        digest[..8].iter().map(|b| format!("{b:02x}")).collect()
    }
}

impl fmt::Debug for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalKey({})", self.fingerprint())
    }
}

/// Key over all affine maps j ↦ rj + s (r a unit mod N) combined with
/// generator inversion.
pub fn canonical_form(p: &TrianglePresentation) -> CanonicalKey {
    least_image(p, true)
}

/// Key over the affine maps alone.
pub fn affine_canonical_form(p: &TrianglePresentation) -> CanonicalKey {
    least_image(p, false)
}

fn least_image(p: &TrianglePresentation, with_inversion: bool) -> CanonicalKey {
    let n = p.n() as u64;
    // translations act trivially on a Singer-invariant set
    let shifts: Vec<u32> = if p.is_singer_invariant() {
        vec![0]
    } else {
        (0..p.n()).collect()
    };
    let mut sources: Vec<Vec<Triple>> = vec![p.triples().to_vec()];
    if with_inversion {
        let mut rev: Vec<Triple> = p.triples().iter().map(|t| [t[2], t[1], t[0]]).collect();
        rev.sort_unstable();
        sources.push(rev);
    }
    let units: Vec<u32> = p.units().collect();

    let mut best: Option<Vec<Triple>> = None;
    let mut image: Vec<Triple> = Vec::with_capacity(p.len());
    for source in &sources {
        if source.is_empty() {
            best.get_or_insert_with(Vec::new);
            continue;
        }
        for &r in &units {
            let r = r as u64;
            for &s in &shifts {
                let s = s as u64;
                let f = |j: u32| ((r * j as u64 + s) % n) as u32;
                // cheap lower bound: the least mapped triple
                let least = source
                    .iter()
                    .map(|t| [f(t[0]), f(t[1]), f(t[2])])
                    .min()
                    .expect("nonempty");
                if let Some(b) = &best {
                    if least > b[0] {
                        continue;
                    }
                }
                image.clear();
                image.extend(source.iter().map(|t| [f(t[0]), f(t[1]), f(t[2])]));
                image.sort_unstable();
                if best.as_ref().is_none_or(|b| image < *b) {
                    best = Some(image.clone());
                }
            }
        }
    }
    CanonicalKey(best.unwrap_or_default())
}
