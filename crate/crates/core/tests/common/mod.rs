//! Independent oracles shared by the integration tests.

#![allow(dead_code)]

use std::collections::BTreeSet;

pub type Triple = [u32; 3];

/// Trace-zero exponents of GF(8)* for x³ + x + 1: g = x, and Tr(x^j) = 0
/// exactly for j ∈ {1, 2, 4} (checked by hand from x³ = x + 1).
pub const Q2_BLOCK: [u32; 3] = [1, 2, 4];
pub const Q2_N: u32 = 7;

/// Raw check of a triple set against a correspondence y ∈ λ(x) iff
/// y − a·x − b ∈ block, written without any library helper.
pub fn satisfies_axioms(triples: &BTreeSet<Triple>, n: u32, a: u32, b: u32, block: &[u32]) -> bool {
    let on_line = |x: u32, y: u32| block.contains(&((y + 2 * n * n - a * x - b) % n));
    // (A) rotation
    if !triples
        .iter()
        .all(|t| triples.contains(&[t[1], t[2], t[0]]))
    {
        return false;
    }
    for x in 0..n {
        for y in 0..n {
            let count = triples.iter().filter(|t| t[0] == x && t[1] == y).count();
            // (C) at most one; (B) exactly the incident pairs
            if count > 1 || (count == 1) != on_line(x, y) {
                return false;
            }
        }
    }
    true
}

/// Every Singer-invariant triple set at q = 2 for every correspondence
/// (a, b), a ∈ {1, 2, 4}: the triples through 0 are (0, y, f(y)) for y on
/// λ(0) and an arbitrary f, and invariance generates the rest.
pub fn brute_force_q2() -> Vec<(u32, u32, BTreeSet<Triple>)> {
    let n = Q2_N;
    let mut found = Vec::new();
    for a in [1, 2, 4] {
        for b in 0..n {
            let ys: Vec<u32> = Q2_BLOCK.iter().map(|d| (d + b) % n).collect();
            for code in 0..n.pow(ys.len() as u32) {
                let mut c = code;
                let mut base = Vec::new();
                for &y in &ys {
                    base.push([0, y, c % n]);
                    c /= n;
                }
                let triples: BTreeSet<Triple> = (0..n)
                    .flat_map(|i| base.iter().map(move |t| t.map(|v| (v + i) % n)))
                    .collect();
                if satisfies_axioms(&triples, n, a, b, &Q2_BLOCK) {
                    found.push((a, b, triples));
                }
            }
        }
    }
    found
}

fn det(m: &[Vec<i128>]) -> i128 {
    match m.len() {
        0 => 1,
        1 => m[0][0],
        n => (0..n)
            .map(|j| {
                let minor: Vec<Vec<i128>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|&(c, _)| c != j)
                            .map(|(_, &v)| v)
                            .collect()
                    })
                    .collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * m[0][j] * det(&minor)
            })
            .sum(),
    }
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Smith invariants from determinantal divisors: d_k = Δ_k / Δ_{k−1},
/// Δ_k the gcd of all k×k minors (0 once every minor vanishes).
pub fn invariants_from_minors(m: &[Vec<i64>]) -> Vec<i128> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut out = Vec::new();
    let mut prev = 1i128;
    for k in 1..=rows.min(cols) {
        let mut g = 0i128;
        for rs in subsets(rows, k) {
            for cs in subsets(cols, k) {
                let sub: Vec<Vec<i128>> = rs
                    .iter()
                    .map(|&r| cs.iter().map(|&c| m[r][c] as i128).collect())
                    .collect();
                g = gcd(g, det(&sub));
            }
        }
        if g == 0 {
            out.extend(std::iter::repeat_n(0, rows.min(cols) - out.len()));
            break;
        }
        out.push(g / prev);
        prev = g;
    }
    out
}
