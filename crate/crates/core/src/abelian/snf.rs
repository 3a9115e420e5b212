//! Smith normal form by pivoted elimination.
//!
//! Each round moves a nonzero entry of least absolute value (ties: lowest
//! row, then lowest column) to the pivot position, clears its row and column
//! by Euclidean division, and repeats until the pivot divides every entry of
//! the remaining block. The elimination runs on `i64` with checked arithmetic
//! and restarts on `BigInt` if anything overflows, so the result is always
//! exact.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::matrix::IntMatrix;

/// U·M·V = D with U, V unimodular and D diagonal, d₁ | d₂ | … (all ≥ 0).
#[derive(Debug, Clone)]
pub struct SnfResult {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SnfResult {
    pub fn diagonal(&self) -> Vec<BigInt> {
        self.d.diagonal()
    }
}

pub fn snf(m: &IntMatrix) -> SnfResult {
    let (a, u, v) = match run::<i64>(m, true) {
        Some(out) => out,
        None => run::<BigInt>(m, true).expect("big integer elimination cannot overflow"),
    };
    SnfResult {
        u: u.expect("tracked"),
        d: a,
        v: v.expect("tracked"),
    }
}

/// Diagonal of the Smith form only, without transforms.
pub fn smith_diagonal(m: &IntMatrix) -> Vec<BigInt> {
    let (a, _, _) = match run::<i64>(m, false) {
        Some(out) => out,
        None => run::<BigInt>(m, false).expect("big integer elimination cannot overflow"),
    };
    a.diagonal()
}

type Output = (IntMatrix, Option<IntMatrix>, Option<IntMatrix>);

fn run<T: Entry>(m: &IntMatrix, track: bool) -> Option<Output> {
    let mut e = Elimination::<T>::new(m, track)?;
    e.reduce()?;
    Some((
        to_matrix(&e.a),
        e.u.as_ref().map(|u| to_matrix(u)),
        e.v.as_ref().map(|v| to_matrix(v)),
    ))
}

fn to_matrix<T: Entry>(rows: &[Vec<T>]) -> IntMatrix {
    let big: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| r.iter().map(Entry::to_big).collect())
        .collect();
    if big.is_empty() {
        return IntMatrix::zeros(0, 0);
    }
    IntMatrix::from_rows(&big)
}

/// Integer arithmetic for the elimination; `None` means overflow.
trait Entry: Clone + PartialEq + Sized {
    fn from_big(x: &BigInt) -> Option<Self>;
    fn to_big(&self) -> BigInt;
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn is_negative(&self) -> bool;
    fn abs_lt(&self, other: &Self) -> bool;
    fn is_unit(&self) -> bool;
    fn neg(&self) -> Option<Self>;
    /// Euclidean quotient by a positive divisor.
    fn quot(&self, d: &Self) -> Self;
    fn divisible_by(&self, d: &Self) -> bool;
    /// self − c·b
    fn sub_mul(&self, c: &Self, b: &Self) -> Option<Self>;
}

impl Entry for i64 {
    fn from_big(x: &BigInt) -> Option<Self> {
        x.to_i64()
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn is_negative(&self) -> bool {
        *self < 0
    }
    fn abs_lt(&self, other: &Self) -> bool {
        self.unsigned_abs() < other.unsigned_abs()
    }
    fn is_unit(&self) -> bool {
        *self == 1 || *self == -1
    }
    fn neg(&self) -> Option<Self> {
        self.checked_neg()
    }
    fn quot(&self, d: &Self) -> Self {
        self.div_euclid(*d)
    }
    fn divisible_by(&self, d: &Self) -> bool {
        self.rem_euclid(*d) == 0
    }
    fn sub_mul(&self, c: &Self, b: &Self) -> Option<Self> {
        self.checked_sub(c.checked_mul(*b)?)
    }
}

impl Entry for BigInt {
    fn from_big(x: &BigInt) -> Option<Self> {
        Some(x.clone())
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn abs_lt(&self, other: &Self) -> bool {
        self.magnitude() < other.magnitude()
    }
    fn is_unit(&self) -> bool {
        self.magnitude().is_one()
    }
    fn neg(&self) -> Option<Self> {
        Some(-self)
    }
    fn quot(&self, d: &Self) -> Self {
        num_integer::Integer::div_floor(self, d)
    }
    fn divisible_by(&self, d: &Self) -> bool {
        Zero::is_zero(&(self % d))
    }
    fn sub_mul(&self, c: &Self, b: &Self) -> Option<Self> {
        Some(self - c * b)
    }
}

struct Elimination<T> {
    a: Vec<Vec<T>>,
    u: Option<Vec<Vec<T>>>,
    v: Option<Vec<Vec<T>>>,
    rows: usize,
    cols: usize,
}

fn identity<T: Entry>(n: usize) -> Vec<Vec<T>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { T::one() } else { T::zero() })
                .collect()
        })
        .collect()
}

impl<T: Entry> Elimination<T> {
    fn new(m: &IntMatrix, track: bool) -> Option<Self> {
        let a = (0..m.rows())
            .map(|i| m.row(i).iter().map(T::from_big).collect::<Option<Vec<T>>>())
            .collect::<Option<Vec<_>>>()?;
        Some(Elimination {
            a,
            u: track.then(|| identity(m.rows())),
            v: track.then(|| identity(m.cols())),
            rows: m.rows(),
            cols: m.cols(),
        })
    }

    fn swap_rows(&mut self, i: usize, k: usize) {
        if i != k {
            self.a.swap(i, k);
            if let Some(u) = &mut self.u {
                u.swap(i, k);
            }
        }
    }

    fn swap_cols(&mut self, j: usize, k: usize) {
        if j != k {
            for row in &mut self.a {
                row.swap(j, k);
            }
            if let Some(v) = &mut self.v {
                for row in v.iter_mut() {
                    row.swap(j, k);
                }
            }
        }
    }

    fn negate_row(&mut self, k: usize) -> Option<()> {
        for x in &mut self.a[k] {
            *x = x.neg()?;
        }
        if let Some(u) = &mut self.u {
            for x in &mut u[k] {
                *x = x.neg()?;
            }
        }
        Some(())
    }

    /// row_i ← row_i − c·row_k
    fn row_sub(&mut self, i: usize, k: usize, c: &T) -> Option<()> {
        fn apply<T: Entry>(m: &mut [Vec<T>], i: usize, k: usize, c: &T) -> Option<()> {
            let (src, dst) = if i < k {
                let (lo, hi) = m.split_at_mut(k);
                (&hi[0], &mut lo[i])
            } else {
                let (lo, hi) = m.split_at_mut(i);
                (&lo[k], &mut hi[0])
            };
            for (d, s) in dst.iter_mut().zip(src.iter()) {
                if !s.is_zero() {
                    *d = d.sub_mul(c, s)?;
                }
            }
            Some(())
        }
        apply(&mut self.a, i, k, c)?;
        if let Some(u) = &mut self.u {
            apply(u, i, k, c)?;
        }
        Some(())
    }

    /// row_k ← row_k + row_i
    fn row_add(&mut self, k: usize, i: usize) -> Option<()> {
        let minus_one = T::one().neg()?;
        self.row_sub(k, i, &minus_one)
    }

    /// col_j ← col_j − c·col_k
    fn col_sub(&mut self, j: usize, k: usize, c: &T) -> Option<()> {
        fn apply<T: Entry>(m: &mut [Vec<T>], j: usize, k: usize, c: &T) -> Option<()> {
            for row in m.iter_mut() {
                if !row[k].is_zero() {
                    row[j] = row[j].sub_mul(c, &row[k])?;
                }
            }
            Some(())
        }
        apply(&mut self.a, j, k, c)?;
        if let Some(v) = &mut self.v {
            apply(v, j, k, c)?;
        }
        Some(())
    }

    /// Least |entry| in the block rows k.., cols k.. (ties: row, then col).
    fn find_pivot(&self, k: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in k..self.rows {
            for j in k..self.cols {
                let x = &self.a[i][j];
                if x.is_zero() {
                    continue;
                }
                if x.is_unit() {
                    return Some((i, j));
                }
                if best.is_none_or(|(bi, bj)| x.abs_lt(&self.a[bi][bj])) {
                    best = Some((i, j));
                }
            }
        }
        best
    }

    fn reduce(&mut self) -> Option<()> {
        let steps = self.rows.min(self.cols);
        for k in 0..steps {
            loop {
                let Some((pi, pj)) = self.find_pivot(k) else {
                    return Some(());
                };
                self.swap_rows(k, pi);
                self.swap_cols(k, pj);
                if self.a[k][k].is_negative() {
                    self.negate_row(k)?;
                }
                let pivot = self.a[k][k].clone();

                let mut clean = true;
                for i in k + 1..self.rows {
                    if self.a[i][k].is_zero() {
                        continue;
                    }
                    let c = self.a[i][k].quot(&pivot);
                    if !c.is_zero() {
                        self.row_sub(i, k, &c)?;
                    }
                    clean &= self.a[i][k].is_zero();
                }
                for j in k + 1..self.cols {
                    if self.a[k][j].is_zero() {
                        continue;
                    }
                    let c = self.a[k][j].quot(&pivot);
                    if !c.is_zero() {
                        self.col_sub(j, k, &c)?;
                    }
                    clean &= self.a[k][j].is_zero();
                }
                if !clean {
                    continue;
                }

                // the pivot must divide the rest of the block
                let offender = (k + 1..self.rows)
                    .find(|&i| self.a[i][k + 1..].iter().any(|x| !x.divisible_by(&pivot)));
                match offender {
                    Some(i) => self.row_add(k, i)?,
                    None => break,
                }
            }
        }
        Some(())
    }
}
