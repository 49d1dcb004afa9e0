//! Exact coefficient rings: the rationals, prime fields, and one layer of
//! polynomials `R[t]` over either.
//!
//! A ring value is a small context object (it knows `p` for a prime field);
//! elements are plain data interpreted through it.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

/// Runtime description of a coefficient ring.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum CoefficientRing {
    Rationals,
    PrimeField(u64),
    PolynomialsOver(Box<CoefficientRing>),
}

impl fmt::Display for CoefficientRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoefficientRing::Rationals => write!(f, "Q"),
            CoefficientRing::PrimeField(p) => write!(f, "F_{p}"),
            CoefficientRing::PolynomialsOver(inner) => write!(f, "{inner}[t]"),
        }
    }
}

#[allow(clippy::wrong_self_convention)]
pub trait Ring: Clone + PartialEq + fmt::Debug {
    type Elem: Clone + PartialEq + fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn from_int(&self, n: i64) -> Self::Elem;
    /// `num / den`, or `None` when `den` is not invertible.
    fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Option<Self::Elem>;
    fn descriptor(&self) -> CoefficientRing;
    fn format(&self, a: &Self::Elem) -> String;

    /// The central indeterminate, when the ring has one.
    fn indeterminate(&self) -> Option<Self::Elem> {
        None
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn pow(&self, a: &Self::Elem, mut k: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            k >>= 1;
        }
        acc
    }

    /// True when `format` output must be parenthesized before a monomial.
    fn needs_parens(&self, a: &Self::Elem) -> bool {
        let s = self.format(a);
        s.trim_start_matches('-').contains([' ', '+'])
    }
}

pub trait Field: Ring {
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn characteristic(&self) -> u64;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|ib| self.mul(a, &ib))
    }
}

/// The field of rational numbers with arbitrary-precision parts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Rationals;

impl Ring for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn from_int(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }
    fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Option<BigRational> {
        (!den.is_zero()).then(|| BigRational::new(num.clone(), den.clone()))
    }
    fn descriptor(&self) -> CoefficientRing {
        CoefficientRing::Rationals
    }
    fn format(&self, a: &BigRational) -> String {
        a.to_string()
    }
}

impl Field for Rationals {
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        (!a.is_zero()).then(|| a.recip())
    }
    fn characteristic(&self) -> u64 {
        0
    }
}

/// The prime field `F_p`. Elements are canonical residues in `0..p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl PrimeField {
    /// `None` unless `p` is prime and small enough for `u64` products.
    pub fn new(p: u64) -> Option<PrimeField> {
        (is_prime(p) && p < (1 << 31)).then_some(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn reduce_big(&self, n: &BigInt) -> u64 {
        let r = n.mod_floor(&BigInt::from(self.p));
        r.to_u64().expect("residue fits")
    }
}

impl Ring for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.p - a) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        (a * b) % self.p
    }
    fn from_int(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }
    fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Option<u64> {
        let d = self.reduce_big(den);
        let inv = self.inv(&d)?;
        Some(self.mul(&self.reduce_big(num), &inv))
    }
    fn descriptor(&self) -> CoefficientRing {
        CoefficientRing::PrimeField(self.p)
    }
    fn format(&self, a: &u64) -> String {
        a.to_string()
    }
}

impl Field for PrimeField {
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            return None;
        }
        Some(self.pow(a, self.p - 2))
    }
    fn characteristic(&self) -> u64 {
        self.p
    }
}

/// Polynomials in one central indeterminate `t` over a field. Elements are
/// coefficient vectors, lowest degree first, with no trailing zeros.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomials<F: Field> {
    base: F,
}

impl<F: Field> Polynomials<F> {
    pub fn new(base: F) -> Self {
        Polynomials { base }
    }

    pub fn base(&self) -> &F {
        &self.base
    }

    fn trim(&self, mut v: Vec<F::Elem>) -> Vec<F::Elem> {
        while v.last().is_some_and(|c| self.base.is_zero(c)) {
            v.pop();
        }
        v
    }

    pub fn constant(&self, c: F::Elem) -> Vec<F::Elem> {
        self.trim(vec![c])
    }

    /// `a + b t`.
    pub fn linear(&self, a: F::Elem, b: F::Elem) -> Vec<F::Elem> {
        self.trim(vec![a, b])
    }

    pub fn evaluate(&self, a: &[F::Elem], x: &F::Elem) -> F::Elem {
        a.iter()
            .rev()
            .fold(self.base.zero(), |acc, c| self.base.add(&self.base.mul(&acc, x), c))
    }

    pub fn degree(&self, a: &[F::Elem]) -> Option<usize> {
        a.len().checked_sub(1)
    }
}

impl<F: Field> Ring for Polynomials<F> {
    type Elem = Vec<F::Elem>;

    fn zero(&self) -> Self::Elem {
        Vec::new()
    }
    fn one(&self) -> Self::Elem {
        self.constant(self.base.one())
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.is_empty()
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let n = a.len().max(b.len());
        let out = (0..n)
            .map(|i| match (a.get(i), b.get(i)) {
                (Some(x), Some(y)) => self.base.add(x, y),
                (Some(x), None) | (None, Some(x)) => x.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        self.trim(out)
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        a.iter().map(|c| self.base.neg(c)).collect()
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![self.base.zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] = self.base.add(&out[i + j], &self.base.mul(x, y));
            }
        }
        self.trim(out)
    }
    fn from_int(&self, n: i64) -> Self::Elem {
        self.constant(self.base.from_int(n))
    }
    fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Option<Self::Elem> {
        self.base.from_ratio(num, den).map(|c| self.constant(c))
    }
    fn descriptor(&self) -> CoefficientRing {
        CoefficientRing::PolynomialsOver(Box::new(self.base.descriptor()))
    }
    fn indeterminate(&self) -> Option<Self::Elem> {
        Some(self.linear(self.base.zero(), self.base.one()))
    }
    fn format(&self, a: &Self::Elem) -> String {
        if a.is_empty() {
            return "0".into();
        }
        let mut parts: Vec<String> = Vec::new();
        for (i, c) in a.iter().enumerate() {
            if self.base.is_zero(c) {
                continue;
            }
            let var = match i {
                0 => String::new(),
                1 => "t".into(),
                _ => format!("t^{i}"),
            };
            let coef = self.base.format(c);
            let (neg, mag) = match coef.strip_prefix('-') {
                Some(m) => (true, m.to_string()),
                None => (false, coef),
            };
            let body = if var.is_empty() {
                mag
            } else if mag == "1" {
                var
            } else if mag.contains('/') {
                format!("({mag}) {var}")
            } else {
                format!("{mag} {var}")
            };
            if parts.is_empty() {
                parts.push(if neg { format!("-{body}") } else { body });
            } else {
                parts.push(format!("{} {body}", if neg { "-" } else { "+" }));
            }
        }
        parts.join(" ")
    }
}

/// Formats a rational without a denominator when it is an integer.
pub fn rational_to_string(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}
