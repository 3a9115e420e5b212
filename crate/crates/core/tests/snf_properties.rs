mod common;

use atwo::abelian::{abelianization, smith_diagonal, snf, IntMatrix};
use atwo::tripres::{GroupPresentation, Letter};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn matrix(max_dim: usize, bound: i64) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=max_dim, 1..=max_dim).prop_flat_map(move |(r, c)| {
        prop::collection::vec(prop::collection::vec(-bound..=bound, c), r)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1200))]

    #[test]
    fn snf_certificate(rows in matrix(6, 20)) {
        let m = IntMatrix::from_rows(&rows);
        let r = snf(&m);
        prop_assert_eq!(r.u.mul(&m).mul(&r.v), r.d.clone());
        prop_assert!(r.d.is_diagonal());
        prop_assert!(r.u.determinant().abs().is_one());
        prop_assert!(r.v.determinant().abs().is_one());
        let diag = r.diagonal();
        for w in diag.windows(2) {
            prop_assert!(!w[0].is_negative());
            if w[0].is_zero() {
                prop_assert!(w[1].is_zero());
            } else {
                prop_assert!((&w[1] % &w[0]).is_zero());
            }
        }
        prop_assert_eq!(&diag, &smith_diagonal(&m));
    }

    #[test]
    fn snf_matches_minors(rows in matrix(4, 20)) {
        let expected: Vec<BigInt> = common::invariants_from_minors(&rows)
            .into_iter()
            .map(BigInt::from)
            .collect();
        prop_assert_eq!(smith_diagonal(&IntMatrix::from_rows(&rows)), expected);
    }
}

fn presentation() -> impl Strategy<Value = (usize, Vec<Vec<(usize, bool)>>)> {
    (2usize..6).prop_flat_map(|n| {
        let word = prop::collection::vec((0..n, any::<bool>()), 1..6);
        (Just(n), prop::collection::vec(word, 1..7))
    })
}

fn group(n: usize, relators: &[Vec<(usize, bool)>]) -> GroupPresentation {
    let names = (0..n).map(|i| format!("x{i}")).collect();
    let words = relators
        .iter()
        .map(|w| {
            w.iter()
                .map(|&(g, inv)| if inv { Letter::inv(g) } else { Letter::gen(g) })
                .collect()
        })
        .collect();
    GroupPresentation::new(names, words)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn abelianization_ignores_presentation_moves(
        (n, rels) in presentation(),
        perm_seed in any::<u64>(),
        rotate in 0usize..6,
    ) {
        let base = abelianization(&group(n, &rels)).unwrap();

        let mut reordered = rels.clone();
        reordered.reverse();
        prop_assert_eq!(&abelianization(&group(n, &reordered)).unwrap(), &base);

        // generator permutation: i ↦ (i·k + s) mod n with k coprime to n
        let k = (1..=n).find(|&k| num_integer::gcd(k, n) == 1 && k as u64 >= perm_seed % n as u64).unwrap_or(1);
        let s = (perm_seed / 7) as usize % n;
        let permuted: Vec<_> = rels
            .iter()
            .map(|w| w.iter().map(|&(g, inv)| ((g * k + s) % n, inv)).collect())
            .collect();
        prop_assert_eq!(&abelianization(&group(n, &permuted)).unwrap(), &base);

        let mut rotated = rels.clone();
        let w = &mut rotated[0];
        let len = w.len();
        w.rotate_left(rotate % len);
        let inverse: Vec<_> = rotated[rotated.len() - 1].iter().rev().map(|&(g, inv)| (g, !inv)).collect();
        let last = rotated.len() - 1;
        rotated[last] = inverse;
        prop_assert_eq!(&abelianization(&group(n, &rotated)).unwrap(), &base);
    }
}

#[test]
fn spec_examples() {
    let m = IntMatrix::from_rows(&[vec![2, 4], vec![6, 8]]);
    assert_eq!(smith_diagonal(&m), vec![BigInt::from(2), BigInt::from(4)]);
    assert_eq!(
        common::invariants_from_minors(&[vec![2, 4], vec![6, 8]]),
        vec![2, 4]
    );
    let r = snf(&IntMatrix::zeros(3, 2));
    assert_eq!(r.u, IntMatrix::identity(3));
    assert_eq!(r.v, IntMatrix::identity(2));
}
