//! Group presentations ⟨x_0, …, x_{N−1} | x_j x_k x_l⟩ and the extension
//! by an order-3 index permutation φ.

use std::fmt;

use super::TrianglePresentation;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn gen(generator: usize) -> Letter {
        Letter {
            generator,
            inverse: false,
        }
    }

    pub fn inv(generator: usize) -> Letter {
        Letter {
            generator,
            inverse: true,
        }
    }

    pub fn exponent(&self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupPresentation {
    names: Vec<String>,
    relators: Vec<Vec<Letter>>,
}

impl GroupPresentation {
    pub fn new(names: Vec<String>, relators: Vec<Vec<Letter>>) -> GroupPresentation {
        debug_assert!(relators.iter().flatten().all(|l| l.generator < names.len()));
        GroupPresentation { names, relators }
    }

    /// One generator per point and one relator per rotation class of T.
    pub fn from_triangles(p: &TrianglePresentation) -> GroupPresentation {
        let names = (0..p.n()).map(|j| format!("x{j}")).collect();
        let relators = p
            .rotation_representatives()
            .map(|t| t.iter().map(|&j| Letter::gen(j as usize)).collect())
            .collect();
        GroupPresentation { names, relators }
    }

    /// Presentation of Γ⁺ = ℤ/3 ⋉_φ Γ: the triangle relators, t³, and
    /// t x_j t⁻¹ x_{φ(j)}⁻¹ for every j, with t as the last generator.
    pub fn extended(p: &TrianglePresentation, phi: &[u32]) -> Result<GroupPresentation> {
        let n = p.n() as usize;
        if phi.len() != n {
            return Err(Error::BadPermutation(format!(
                "expected {n} images, got {}",
                phi.len()
            )));
        }
        let mut seen = vec![false; n];
        for &v in phi {
            let v = v as usize;
            if v >= n || std::mem::replace(&mut seen[v], true) {
                return Err(Error::BadPermutation("not a bijection".into()));
            }
        }
        let identity = phi.iter().enumerate().all(|(j, &v)| j == v as usize);
        let cube_is_identity = (0..n).all(|j| {
            let j2 = phi[phi[phi[j] as usize] as usize] as usize;
            j2 == j
        });
        if identity || !cube_is_identity {
            return Err(Error::BadPermutation("φ does not have order 3".into()));
        }
        if !p.is_fixed_by(phi) {
            return Err(Error::BadPermutation(
                "φ does not map the triangle set to itself".into(),
            ));
        }

        let mut gp = GroupPresentation::from_triangles(p);
        let t = n;
        gp.names.push("t".into());
        gp.relators.push(vec![Letter::gen(t); 3]);
        for (j, &image) in phi.iter().enumerate() {
            gp.relators.push(vec![
                Letter::gen(t),
                Letter::gen(j),
                Letter::inv(t),
                Letter::inv(image as usize),
            ]);
        }
        Ok(gp)
    }

    pub fn generator_count(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn relators(&self) -> &[Vec<Letter>] {
        &self.relators
    }
}

impl fmt::Display for GroupPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "generators {}", self.names.join(" "))?;
        writeln!(f, "relators {}", self.relators.len())?;
        for r in &self.relators {
            let word: Vec<String> = r
                .iter()
                .map(|l| {
                    let name = &self.names[l.generator];
                    if l.inverse {
                        format!("{name}^-1")
                    } else {
                        name.clone()
                    }
                })
                .collect();
            writeln!(f, "{}", word.join(" "))?;
        }
        Ok(())
    }
}
