//! Exact arithmetic in GF(q³) for q = p^e, with GF(q) sitting inside as the
//! subfield fixed by `a ↦ a^q`.
//!
//! Elements are residue polynomials over ℤ/p of degree below d = 3e. The
//! multiplicative group is cyclic of order p^d − 1 and every nonzero element
//! is stored through full exponent/log tables (the largest field, q = 13, has
//! 2197 elements), so multiplication, powers and discrete logarithms are
//! table lookups.
//!
//! The defining modulus is chosen deterministically: among the monic
//! polynomials of degree d, ordered by their value as base-p integers with
//! the constant term as the least significant digit, take the first one that
//! is irreducible and for which the residue of the indeterminate is
//! primitive. A fallback path (smallest irreducible modulus plus the smallest
//! primitive element) exists for completeness and is reported through
//! [`GeneratorRule`].

use std::fmt;

use crate::arith::{factorize, is_prime};
use crate::error::{Error, Result};

/// Largest extension degree needed: q = 8 gives d = 9.
pub const MAX_DEGREE: usize = 9;

const SUPPORTED_Q: [u32; 9] = [2, 3, 4, 5, 7, 8, 9, 11, 13];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimePower {
    p: u32,
    e: u32,
    q: u32,
}

impl PrimePower {
    pub fn new(q: u64) -> Result<Self> {
        if !SUPPORTED_Q.iter().any(|&s| s as u64 == q) {
            return Err(Error::UnsupportedQ(q));
        }
        let factors = factorize(q);
        debug_assert_eq!(factors.len(), 1);
        let (p, e) = factors[0];
        debug_assert!(is_prime(p));
        Ok(PrimePower {
            p: p as u32,
            e,
            q: q as u32,
        })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn supported() -> &'static [u32] {
        &SUPPORTED_Q
    }
}

/// An element of GF(p^d), as its coefficient sequence (constant term first).
/// Coefficients past the field degree are always zero.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FieldElement {
    coeffs: [u8; MAX_DEGREE],
}

impl FieldElement {
    pub fn coeffs(&self) -> &[u8; MAX_DEGREE] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    fn code(&self, p: u32) -> usize {
        self.coeffs
            .iter()
            .rev()
            .fold(0usize, |acc, &c| acc * p as usize + c as usize)
    }

    fn from_code(mut code: usize, p: u32) -> Self {
        let mut coeffs = [0u8; MAX_DEGREE];
        for c in coeffs.iter_mut() {
            *c = (code % p as usize) as u8;
            code /= p as usize;
        }
        FieldElement { coeffs }
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", trim(&self.coeffs))
    }
}

fn trim(coeffs: &[u8]) -> &[u8] {
    let len = coeffs.iter().rposition(|&c| c != 0).map_or(0, |i| i + 1);
    &coeffs[..len]
}

/// How the primitive generator was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeneratorRule {
    /// The residue of the indeterminate is primitive for the chosen modulus.
    Indeterminate,
    /// No modulus made the indeterminate primitive; the generator is the
    /// smallest primitive element for the smallest irreducible modulus.
    Searched,
}

#[derive(Debug, Clone)]
pub struct FieldContext {
    prime_power: PrimePower,
    degree: usize,
    modulus: Vec<u32>,
    rule: GeneratorRule,
    generator: FieldElement,
    exp: Vec<FieldElement>,
    log: Vec<u32>,
}

impl FieldContext {
    /// Builds GF(q³) together with its primitive generator.
    pub fn build(q: PrimePower) -> FieldContext {
        let p = q.p();
        let degree = 3 * q.e() as usize;
        let group_order = (p as u64).pow(degree as u32) - 1;
        let order_factors: Vec<u64> = factorize(group_order).into_iter().map(|(l, _)| l).collect();

        let mut indeterminate = vec![0u32; degree];
        indeterminate[1] = 1;

        let candidates = || {
            (0..(p as usize).pow(degree as u32)).map(move |code| {
                let mut m: Vec<u32> = (0..degree)
                    .scan(code, |c, _| {
                        let digit = (*c % p as usize) as u32;
                        *c /= p as usize;
                        Some(digit)
                    })
                    .collect();
                m.push(1);
                m
            })
        };

        let primitive = |modulus: &[u32], element: &[u32]| {
            order_factors.iter().all(|&l| {
                let r = poly_pow_mod(element, group_order / l, modulus, p);
                !is_one(&r)
            })
        };

        let found = candidates()
            .filter(|m| m[0] != 0)
            .find(|m| is_irreducible(m, p) && primitive(m, &indeterminate));

        let (modulus, rule, generator) = match found {
            Some(m) => (m, GeneratorRule::Indeterminate, indeterminate),
            None => {
                let m = candidates()
                    .filter(|m| m[0] != 0)
                    .find(|m| is_irreducible(m, p))
                    .expect("an irreducible polynomial exists in every degree");
                let g = (2..(p as usize).pow(degree as u32))
                    .map(|code| to_poly(FieldElement::from_code(code, p), degree))
                    .find(|g| primitive(&m, g))
                    .expect("the multiplicative group of a finite field is cyclic");
                (m, GeneratorRule::Searched, g)
            }
        };

        let size = (p as usize).pow(degree as u32);
        let mut exp = Vec::with_capacity(size - 1);
        let mut log = vec![u32::MAX; size];
        let mut cur = vec![0u32; degree];
        cur[0] = 1;
        for k in 0..size - 1 {
            let elem = from_poly(&cur);
            log[elem.code(p)] = k as u32;
            exp.push(elem);
            cur = poly_mul_mod(&cur, &generator, &modulus, p);
        }
        debug_assert!(is_one(&cur));

        FieldContext {
            prime_power: q,
            degree,
            modulus,
            rule,
            generator: from_poly(&generator),
            exp,
            log,
        }
    }

    pub fn prime_power(&self) -> PrimePower {
        self.prime_power
    }

    pub fn characteristic(&self) -> u32 {
        self.prime_power.p()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Monic modulus, constant term first, length `degree + 1`.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn generator_rule(&self) -> GeneratorRule {
        self.rule
    }

    pub fn generator(&self) -> FieldElement {
        self.generator
    }

    /// Number of field elements, p^d.
    pub fn size(&self) -> usize {
        self.log.len()
    }

    /// Order of the multiplicative group, p^d − 1.
    pub fn group_order(&self) -> u64 {
        self.exp.len() as u64
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement::default()
    }

    pub fn one(&self) -> FieldElement {
        self.exp[0]
    }

    /// Element from a coefficient slice (constant term first), reduced mod p.
    /// Panics if more than `degree` coefficients are given.
    pub fn element(&self, coeffs: &[u32]) -> FieldElement {
        assert!(coeffs.len() <= self.degree, "too many coefficients");
        let mut out = [0u8; MAX_DEGREE];
        for (o, &c) in out.iter_mut().zip(coeffs) {
            *o = (c % self.characteristic()) as u8;
        }
        FieldElement { coeffs: out }
    }

    /// All p^d elements in coefficient order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        let p = self.characteristic();
        (0..self.size()).map(move |c| FieldElement::from_code(c, p))
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let p = self.characteristic() as u8;
        let mut out = a;
        for (o, &c) in out.coeffs.iter_mut().zip(&b.coeffs) {
            *o = (*o + c) % p;
        }
        out
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        let p = self.characteristic() as u8;
        let mut out = a;
        for o in out.coeffs.iter_mut() {
            *o = (p - *o) % p;
        }
        out
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.is_zero() || b.is_zero() {
            return self.zero();
        }
        let la = self.raw_log(a) as u64;
        let lb = self.raw_log(b) as u64;
        self.gen_pow(la + lb)
    }

    pub fn pow(&self, a: FieldElement, k: u64) -> FieldElement {
        if a.is_zero() {
            return if k == 0 { self.one() } else { self.zero() };
        }
        let l = self.raw_log(a) as u128 * k as u128 % self.group_order() as u128;
        self.gen_pow(l as u64)
    }

    pub fn inv(&self, a: FieldElement) -> Option<FieldElement> {
        if a.is_zero() {
            return None;
        }
        let n = self.group_order();
        Some(self.gen_pow(n - self.raw_log(a) as u64))
    }

    /// g^k for the fixed primitive generator g.
    pub fn gen_pow(&self, k: u64) -> FieldElement {
        self.exp[(k % self.group_order()) as usize]
    }

    /// The relative Frobenius a ↦ a^q.
    pub fn frobenius(&self, a: FieldElement) -> FieldElement {
        self.pow(a, self.prime_power.q() as u64)
    }

    pub fn in_subfield(&self, a: FieldElement) -> bool {
        self.frobenius(a) == a
    }

    /// Tr(a) = a + a^q + a^(q²), landing in GF(q).
    pub fn trace(&self, a: FieldElement) -> FieldElement {
        let aq = self.frobenius(a);
        let aqq = self.frobenius(aq);
        self.add(self.add(a, aq), aqq)
    }

    /// Exponent k in [0, p^d − 2] with g^k = a.
    pub fn discrete_log(&self, a: FieldElement) -> Result<u32> {
        if a.is_zero() {
            return Err(Error::ZeroLog);
        }
        Ok(self.raw_log(a))
    }

    fn raw_log(&self, a: FieldElement) -> u32 {
        self.log[a.code(self.characteristic())]
    }

    /// Human-readable modulus such as `x^3 + x + 1`.
    pub fn modulus_string(&self) -> String {
        poly_string(&self.modulus)
    }

    pub fn element_string(&self, a: FieldElement) -> String {
        let coeffs: Vec<u32> = a.coeffs[..self.degree].iter().map(|&c| c as u32).collect();
        poly_string(&coeffs)
    }
}

fn poly_string(coeffs: &[u32]) -> String {
    let terms: Vec<String> = coeffs
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, &c)| c != 0)
        .map(|(i, &c)| {
            let var = match i {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            };
            match (c, i) {
                (_, 0) => c.to_string(),
                (1, _) => var,
                _ => format!("{c}{var}"),
            }
        })
        .collect();
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join(" + ")
    }
}

fn to_poly(a: FieldElement, degree: usize) -> Vec<u32> {
    a.coeffs[..degree].iter().map(|&c| c as u32).collect()
}

fn from_poly(a: &[u32]) -> FieldElement {
    let mut coeffs = [0u8; MAX_DEGREE];
    for (o, &c) in coeffs.iter_mut().zip(a) {
        *o = c as u8;
    }
    FieldElement { coeffs }
}

fn is_one(a: &[u32]) -> bool {
    a[0] == 1 && a[1..].iter().all(|&c| c == 0)
}

/// Remainder of `a` modulo the monic polynomial `m` (both constant first).
fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let d = m.len() - 1;
    let mut r = a.to_vec();
    for k in (d..r.len()).rev() {
        let c = r[k];
        if c != 0 {
            for (i, &mi) in m.iter().enumerate() {
                let idx = k - d + i;
                r[idx] = (r[idx] + (p - c) * mi) % p;
            }
        }
    }
    r.truncate(d);
    r.resize(d, 0);
    r
}

fn poly_mul_mod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut prod = vec![0u32; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    poly_rem(&prod, m, p)
}

fn poly_pow_mod(a: &[u32], mut k: u64, m: &[u32], p: u32) -> Vec<u32> {
    let d = m.len() - 1;
    let mut result = vec![0u32; d];
    result[0] = 1;
    let mut base = poly_rem(a, m, p);
    while k > 0 {
        if k & 1 == 1 {
            result = poly_mul_mod(&result, &base, m, p);
        }
        base = poly_mul_mod(&base, &base, m, p);
        k >>= 1;
    }
    result
}

/// Irreducibility by trial division with every monic polynomial of degree
/// at most half the degree of `f`.
fn is_irreducible(f: &[u32], p: u32) -> bool {
    let d = f.len() - 1;
    for k in 1..=d / 2 {
        for code in 0..(p as usize).pow(k as u32) {
            let mut g: Vec<u32> = (0..k)
                .scan(code, |c, _| {
                    let digit = (*c % p as usize) as u32;
                    *c /= p as usize;
                    Some(digit)
                })
                .collect();
            g.push(1);
            if poly_rem(f, &g, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}
