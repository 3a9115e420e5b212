use std::fmt;

use crate::arith::factorize;

/// Finitely generated abelian group ℤ^rank ⊕ ℤ_{d₁} ⊕ … ⊕ ℤ_{d_k} with
/// d₁ | d₂ | … | d_k and every dᵢ ≥ 2.
///
/// Values are always normalized, so derived equality is isomorphism.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct AbelianGroup {
    rank: usize,
    divisors: Vec<u64>,
}

impl AbelianGroup {
    pub fn trivial() -> AbelianGroup {
        AbelianGroup::default()
    }

    pub fn free(rank: usize) -> AbelianGroup {
        AbelianGroup {
            rank,
            divisors: Vec::new(),
        }
    }

    /// ℤ^rank ⊕ ⊕ ℤ_m over `orders`; an order of 0 adds a free summand and
    /// an order of 1 is dropped.
    pub fn from_cyclic_orders(rank: usize, orders: &[u64]) -> AbelianGroup {
        let mut rank = rank;
        let mut primary = Vec::new();
        for &m in orders {
            match m {
                0 => rank += 1,
                1 => {}
                _ => primary.extend(factorize(m).into_iter().map(|(p, k)| (p, p.pow(k)))),
            }
        }
        AbelianGroup::from_primary(rank, primary)
    }

    /// Builds the divisor chain from (prime, prime power) pairs.
    fn from_primary(rank: usize, mut primary: Vec<(u64, u64)>) -> AbelianGroup {
        primary.sort_unstable();
        let mut by_prime: Vec<Vec<u64>> = Vec::new();
        let mut last = 0;
        for (p, pk) in primary {
            if p != last {
                by_prime.push(Vec::new());
                last = p;
            }
            by_prime.last_mut().unwrap().push(pk);
        }
        let len = by_prime.iter().map(Vec::len).max().unwrap_or(0);
        // the largest powers of each prime multiply into the last divisor
        let mut divisors = vec![1u64; len];
        for powers in &by_prime {
            let offset = len - powers.len();
            for (i, &pk) in powers.iter().enumerate() {
                divisors[offset + i] *= pk;
            }
        }
        AbelianGroup { rank, divisors }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn divisors(&self) -> &[u64] {
        &self.divisors
    }

    pub fn is_finite(&self) -> bool {
        self.rank == 0
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.divisors.is_empty()
    }

    /// Order of the torsion subgroup.
    pub fn torsion_order(&self) -> u64 {
        self.divisors.iter().product()
    }

    pub fn torsion(&self) -> AbelianGroup {
        AbelianGroup {
            rank: 0,
            divisors: self.divisors.clone(),
        }
    }

    /// (p, pᵏ) for every cyclic factor of the primary decomposition, sorted
    /// by prime and then by power.
    pub fn primary_factors(&self) -> Vec<(u64, u64)> {
        let mut out: Vec<(u64, u64)> = self
            .divisors
            .iter()
            .flat_map(|&d| factorize(d).into_iter().map(|(p, k)| (p, p.pow(k))))
            .collect();
        out.sort_unstable();
        out
    }

    /// The p-primary torsion.
    pub fn primary_part(&self, p: u64) -> AbelianGroup {
        let kept = self
            .primary_factors()
            .into_iter()
            .filter(|f| f.0 == p)
            .collect();
        AbelianGroup::from_primary(0, kept)
    }

    /// Drops the p-primary torsion; the free part is kept.
    pub fn away_from(&self, p: u64) -> AbelianGroup {
        let kept = self
            .primary_factors()
            .into_iter()
            .filter(|f| f.0 != p)
            .collect();
        AbelianGroup::from_primary(self.rank, kept)
    }

    pub fn direct_sum(&self, other: &AbelianGroup) -> AbelianGroup {
        let mut primary = self.primary_factors();
        primary.extend(other.primary_factors());
        AbelianGroup::from_primary(self.rank + other.rank, primary)
    }

    pub fn direct_double(&self) -> AbelianGroup {
        self.direct_sum(self)
    }

    pub fn iso_equal(&self, other: &AbelianGroup) -> bool {
        self == other
    }
}

/// Bracket notation: `r [f₁,f₂,…]` with primary factors ascending and runs
/// written `(j)a`; the rank prefix is omitted when zero.
impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rank > 0 {
            write!(f, "{} ", self.rank)?;
        }
        f.write_str(&bracket(&self.primary_factors()))
    }
}

pub(crate) fn bracket(primary: &[(u64, u64)]) -> String {
    let mut items = Vec::new();
    let mut i = 0;
    while i < primary.len() {
        let value = primary[i].1;
        let run = primary[i..].iter().take_while(|f| f.1 == value).count();
        items.push(if run == 1 {
            value.to_string()
        } else {
            format!("({run}){value}")
        });
        i += run;
    }
    format!("[{}]", items.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(orders: &[u64]) -> AbelianGroup {
        AbelianGroup::from_cyclic_orders(0, orders)
    }

    #[test]
    fn normalizes_to_chain() {
        assert_eq!(g(&[2, 3]).divisors(), &[6]);
        assert_eq!(g(&[2, 8, 3]), g(&[2, 24]));
        assert_eq!(g(&[2, 2, 2, 3]).divisors(), &[2, 2, 6]);
        assert_eq!(g(&[1, 1]), AbelianGroup::trivial());
        assert_eq!(AbelianGroup::from_cyclic_orders(1, &[0, 4]).rank(), 2);
    }

    #[test]
    fn bracket_display() {
        assert_eq!(g(&[2, 2, 2, 3]).to_string(), "[(3)2,3]");
        assert_eq!(g(&[6, 14, 3]).to_string(), "[(2)2,(2)3,7]");
        assert_eq!(g(&[8, 3, 3]).to_string(), "[8,(2)3]");
        assert_eq!(
            AbelianGroup::from_cyclic_orders(26, &[2]).to_string(),
            "26 [2]"
        );
        assert_eq!(AbelianGroup::free(4).to_string(), "4 []");
        assert_eq!(AbelianGroup::trivial().to_string(), "[]");
    }

    #[test]
    fn primary_operations() {
        let a = g(&[2, 2, 2, 3]);
        assert_eq!(a.away_from(3), g(&[2, 2, 2]));
        assert_eq!(a.primary_part(3), g(&[3]));
        assert_eq!(a.primary_part(5), AbelianGroup::trivial());
        let b = g(&[2, 7]).direct_double();
        assert_eq!(b.divisors(), &[14, 14]);
        assert!(!g(&[2, 8]).iso_equal(&g(&[4, 4])));
        assert_eq!(a.torsion_order(), 24);
    }
}
