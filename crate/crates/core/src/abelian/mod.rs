//! Exact integer linear algebra and abelianization of group presentations.

mod group;
mod matrix;
mod snf;

pub use group::AbelianGroup;
pub use matrix::IntMatrix;
pub use snf::{smith_diagonal, snf, SnfResult};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::tripres::GroupPresentation;

/// Generators × relators matrix of exponent sums.
pub fn relation_matrix(gp: &GroupPresentation) -> IntMatrix {
    let mut m = IntMatrix::zeros(gp.generator_count(), gp.relators().len());
    for (r, word) in gp.relators().iter().enumerate() {
        for letter in word {
            m[(letter.generator, r)] += letter.exponent();
        }
    }
    m
}

/// Γ/[Γ,Γ] from the Smith form of the relation matrix.
pub fn abelianization(gp: &GroupPresentation) -> Result<AbelianGroup> {
    let diag = smith_diagonal(&relation_matrix(gp));
    let nonzero = diag.iter().filter(|d| !d.is_zero()).count();
    let rank = gp.generator_count() - nonzero;
    let orders = diag
        .iter()
        .filter(|d| !d.is_zero() && !d.abs().is_one())
        .map(|d: &BigInt| d.to_u64().ok_or_else(|| Error::Overflow(d.to_string())))
        .collect::<Result<Vec<u64>>>()?;
    Ok(AbelianGroup::from_cyclic_orders(rank, &orders))
}
