//! Exact base fields.
//!
//! Every structure in this crate is generic over a [`Field`] context. The
//! context owns whatever the arithmetic needs (the modulus for a prime
//! field); elements are plain values. This keeps a prime chosen at runtime
//! (e.g. read from an instance file) on equal footing with the rationals.

use std::fmt;
use std::hash::Hash;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;

use crate::error::{Error, Result};

/// Serializable description of a base field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldKind {
    Rationals,
    Prime(u32),
}

impl fmt::Display for FieldKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldKind::Rationals => write!(f, "QQ"),
            FieldKind::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

/// An exact field, passed by value as an arithmetic context.
pub trait Field: Clone + fmt::Debug + PartialEq + Eq + Send + Sync + 'static {
    type Elem: Clone + fmt::Debug + PartialEq + Eq + Hash + Send + Sync + 'static;

    fn kind(&self) -> FieldKind;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    #[allow(clippy::wrong_self_convention)]
    fn from_i64(&self, n: i64) -> Self::Elem;
    /// Parses `"n"` or `"n/d"`.
    fn parse(&self, s: &str) -> Result<Self::Elem>;
    fn render(&self, a: &Self::Elem) -> String;

    /// `acc += a * b`.
    fn mul_add_assign(&self, acc: &mut Self::Elem, a: &Self::Elem, b: &Self::Elem) {
        let t = self.mul(a, b);
        *acc = self.add(acc, &t);
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    /// A small pseudo-random element, integers in `[-bound, bound]`.
    fn random_small<R: Rng + ?Sized>(&self, rng: &mut R, bound: i64) -> Self::Elem {
        self.from_i64(rng.gen_range(-bound..=bound))
    }
}

/// The field of rational numbers, arbitrary precision.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn kind(&self) -> FieldKind {
        FieldKind::Rationals
    }
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
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }
    fn parse(&self, s: &str) -> Result<BigRational> {
        let bad = || Error::BadFieldElement {
            value: s.to_string(),
            field: FieldKind::Rationals,
        };
        let s = s.trim();
        match s.split_once('/') {
            None => s
                .parse::<BigInt>()
                .map(BigRational::from_integer)
                .map_err(|_| bad()),
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(bad());
                }
                Ok(BigRational::new(n, d))
            }
        }
    }
    fn render(&self, a: &BigRational) -> String {
        if a.is_integer() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }
    fn mul_add_assign(&self, acc: &mut BigRational, a: &BigRational, b: &BigRational) {
        if a.is_integer() && b.is_integer() && acc.is_integer() {
            *acc = BigRational::from_integer(acc.numer() + a.numer() * b.numer());
        } else {
            *acc += a * b;
        }
    }
    fn is_one(&self, a: &BigRational) -> bool {
        a.is_one()
    }
}

/// Residue of a prime field, always in `[0, p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fp(pub u32);

/// The prime field of order `p`, `p < 2^31`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self> {
        if p >= (1 << 31) || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    fn reduce_i128(&self, n: i128) -> Fp {
        Fp(n.rem_euclid(self.p as i128) as u32)
    }
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n as u64 {
        if (n as u64).is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Field for PrimeField {
    type Elem = Fp;

    fn kind(&self) -> FieldKind {
        FieldKind::Prime(self.p)
    }
    fn zero(&self) -> Fp {
        Fp(0)
    }
    fn one(&self) -> Fp {
        Fp(1 % self.p)
    }
    fn is_zero(&self, a: &Fp) -> bool {
        a.0 == 0
    }
    fn add(&self, a: &Fp, b: &Fp) -> Fp {
        Fp(((a.0 as u64 + b.0 as u64) % self.p as u64) as u32)
    }
    fn sub(&self, a: &Fp, b: &Fp) -> Fp {
        Fp(((a.0 as u64 + self.p as u64 - b.0 as u64) % self.p as u64) as u32)
    }
    fn mul(&self, a: &Fp, b: &Fp) -> Fp {
        Fp(((a.0 as u64 * b.0 as u64) % self.p as u64) as u32)
    }
    fn neg(&self, a: &Fp) -> Fp {
        if a.0 == 0 {
            *a
        } else {
            Fp(self.p - a.0)
        }
    }
    fn inv(&self, a: &Fp) -> Option<Fp> {
        if a.0 == 0 {
            return None;
        }
        // Fermat: a^(p-2).
        let p = self.p as u64;
        let (mut base, mut exp, mut acc) = (a.0 as u64, p - 2, 1u64);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            exp >>= 1;
        }
        Some(Fp(acc as u32))
    }
    fn from_i64(&self, n: i64) -> Fp {
        self.reduce_i128(n as i128)
    }
    fn parse(&self, s: &str) -> Result<Fp> {
        let bad = || Error::BadFieldElement {
            value: s.to_string(),
            field: self.kind(),
        };
        let parse_int = |t: &str| -> Result<Fp> {
            let n: BigInt = t.trim().parse().map_err(|_| bad())?;
            let r = ((n % BigInt::from(self.p)) + BigInt::from(self.p)) % BigInt::from(self.p);
            Ok(Fp(r.to_string().parse().map_err(|_| bad())?))
        };
        match s.trim().split_once('/') {
            None => parse_int(s),
            Some((n, d)) => {
                let n = parse_int(n)?;
                let d = parse_int(d)?;
                let d_inv = self.inv(&d).ok_or_else(bad)?;
                Ok(self.mul(&n, &d_inv))
            }
        }
    }
    fn render(&self, a: &Fp) -> String {
        a.0.to_string()
    }
    fn mul_add_assign(&self, acc: &mut Fp, a: &Fp, b: &Fp) {
        let p = self.p as u64;
        acc.0 = ((acc.0 as u64 + a.0 as u64 * b.0 as u64) % p) as u32;
    }
}
