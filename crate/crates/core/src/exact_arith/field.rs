use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::numtheory::{is_prime, legendre_symbol, mod_inv, mod_pow};
use super::rat::{big_mod_u64, Rat};
use crate::error::{Error, Result};

/// Coefficient ring for series and polynomials.
///
/// Finite-field elements carry their modulus, so the neutral elements are
/// produced from an existing value rather than out of thin air.
pub trait Scalar:
    Clone
    + PartialEq
    + fmt::Debug
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn inv(&self) -> Option<Self>;
    /// Image of a rational number, if its denominator is invertible here.
    fn from_rat_like(&self, r: &Rat) -> Option<Self>;
    fn from_int_like(&self, n: i64) -> Self;
}

impl Scalar for Rat {
    fn zero_like(&self) -> Self {
        Rat::zero()
    }
    fn one_like(&self) -> Self {
        Rat::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn from_rat_like(&self, r: &Rat) -> Option<Self> {
        Some(r.clone())
    }
    fn from_int_like(&self, n: i64) -> Self {
        super::rat::int(n)
    }
}

/// A finite field together with an enumeration of its elements.
pub trait FieldCtx: Clone + Send + Sync + fmt::Debug {
    type Elem: Scalar + Copy + Eq + Hash + Ord + fmt::Display;

    fn order(&self) -> u64;
    fn characteristic(&self) -> u64;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_int(&self, n: i64) -> Self::Elem;
    /// Bijection `[0, order) -> field`.
    fn elem_at(&self, index: u64) -> Self::Elem;
    fn index_of(&self, x: &Self::Elem) -> u64;

    fn elements(&self) -> impl Iterator<Item = Self::Elem> + '_ {
        (0..self.order()).map(move |i| self.elem_at(i))
    }
}

/// The prime field `F_p`, `p >= 5`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p < 5 || !is_prime(p) {
            return Err(Error::InvalidPrime(p));
        }
        Ok(Self { p })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn elem(&self, v: u64) -> FpElem {
        FpElem {
            value: v % self.p,
            p: self.p,
        }
    }

    /// Reduction of a p-integral rational.
    pub fn from_rat(&self, r: &Rat) -> Result<FpElem> {
        Ok(self.elem(super::rat::rat_mod_p(r, self.p)?))
    }
}

impl FieldCtx for PrimeField {
    type Elem = FpElem;

    fn order(&self) -> u64 {
        self.p
    }
    fn characteristic(&self) -> u64 {
        self.p
    }
    fn zero(&self) -> FpElem {
        self.elem(0)
    }
    fn one(&self) -> FpElem {
        self.elem(1)
    }
    fn from_int(&self, n: i64) -> FpElem {
        self.elem(n.rem_euclid(self.p as i64) as u64)
    }
    fn elem_at(&self, index: u64) -> FpElem {
        self.elem(index)
    }
    fn index_of(&self, x: &FpElem) -> u64 {
        x.value
    }
}

/// Residue class in `[0, p)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FpElem {
    value: u64,
    p: u64,
}

impl FpElem {
    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn pow(&self, e: u64) -> Self {
        Self {
            value: mod_pow(self.value, e, self.p),
            p: self.p,
        }
    }

    /// Nonzero square.
    pub fn is_square(&self) -> bool {
        legendre_symbol(self.value as i64, self.p) == 1
    }

    /// Representative in `(-p/2, p/2]`.
    pub fn signed(&self) -> i64 {
        if self.value > self.p / 2 {
            self.value as i64 - self.p as i64
        } else {
            self.value as i64
        }
    }
}

impl fmt::Debug for FpElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.p)
    }
}

impl fmt::Display for FpElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for FpElem {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        debug_assert_eq!(self.p, rhs.p, "modulus mismatch");
        let s = self.value + rhs.value;
        Self {
            value: if s >= self.p { s - self.p } else { s },
            p: self.p,
        }
    }
}

impl Sub for FpElem {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        debug_assert_eq!(self.p, rhs.p, "modulus mismatch");
        Self {
            value: if self.value >= rhs.value {
                self.value - rhs.value
            } else {
                self.value + self.p - rhs.value
            },
            p: self.p,
        }
    }
}

impl Mul for FpElem {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        debug_assert_eq!(self.p, rhs.p, "modulus mismatch");
        Self {
            value: ((self.value as u128 * rhs.value as u128) % self.p as u128) as u64,
            p: self.p,
        }
    }
}

impl Neg for FpElem {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            value: if self.value == 0 { 0 } else { self.p - self.value },
            p: self.p,
        }
    }
}

impl Scalar for FpElem {
    fn zero_like(&self) -> Self {
        Self { value: 0, p: self.p }
    }
    fn one_like(&self) -> Self {
        Self { value: 1, p: self.p }
    }
    fn is_zero(&self) -> bool {
        self.value == 0
    }
    fn inv(&self) -> Option<Self> {
        mod_inv(self.value, self.p).map(|value| Self { value, p: self.p })
    }
    fn from_rat_like(&self, r: &Rat) -> Option<Self> {
        super::rat::rat_mod_p(r, self.p)
            .ok()
            .map(|value| Self { value, p: self.p })
    }
    fn from_int_like(&self, n: i64) -> Self {
        Self {
            value: n.rem_euclid(self.p as i64) as u64,
            p: self.p,
        }
    }
}

/// `F_{p^2} = F_p[w]/(w^2 - d)` with `d` the least quadratic non-residue.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp2Field {
    p: u64,
    d: u64,
}

impl Fp2Field {
    pub fn new(p: u64) -> Result<Self> {
        let base = PrimeField::new(p)?;
        let d = (2..p)
            .find(|&d| legendre_symbol(d as i64, p) == -1)
            .expect("odd primes have non-residues");
        Ok(Self { p: base.p, d })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// The non-residue `w^2`.
    pub fn nonresidue(&self) -> u64 {
        self.d
    }

    pub fn base(&self) -> PrimeField {
        PrimeField { p: self.p }
    }

    pub fn elem(&self, c0: u64, c1: u64) -> Fp2Elem {
        Fp2Elem {
            c0: c0 % self.p,
            c1: c1 % self.p,
            p: self.p,
            d: self.d,
        }
    }

    pub fn embed(&self, x: FpElem) -> Fp2Elem {
        debug_assert_eq!(x.p, self.p);
        self.elem(x.value, 0)
    }
}

impl FieldCtx for Fp2Field {
    type Elem = Fp2Elem;

    fn order(&self) -> u64 {
        self.p * self.p
    }
    fn characteristic(&self) -> u64 {
        self.p
    }
    fn zero(&self) -> Fp2Elem {
        self.elem(0, 0)
    }
    fn one(&self) -> Fp2Elem {
        self.elem(1, 0)
    }
    fn from_int(&self, n: i64) -> Fp2Elem {
        self.elem(n.rem_euclid(self.p as i64) as u64, 0)
    }
    fn elem_at(&self, index: u64) -> Fp2Elem {
        self.elem(index % self.p, index / self.p)
    }
    fn index_of(&self, x: &Fp2Elem) -> u64 {
        x.c0 + self.p * x.c1
    }
}

/// `c0 + c1 * w`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fp2Elem {
    c0: u64,
    c1: u64,
    p: u64,
    d: u64,
}

impl Fp2Elem {
    pub fn c0(&self) -> u64 {
        self.c0
    }

    pub fn c1(&self) -> u64 {
        self.c1
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn is_in_base_field(&self) -> bool {
        self.c1 == 0
    }

    /// The base-field value, if this element lies in `F_p`.
    pub fn to_base(&self) -> Option<FpElem> {
        (self.c1 == 0).then_some(FpElem {
            value: self.c0,
            p: self.p,
        })
    }

    /// `x^p`; the nontrivial automorphism sends `w` to `-w`.
    pub fn frobenius(&self) -> Self {
        Self {
            c1: if self.c1 == 0 { 0 } else { self.p - self.c1 },
            ..*self
        }
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = *self;
        let mut acc = self.one_like();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    /// `x * x^p`, an element of `F_p`.
    pub fn norm(&self) -> FpElem {
        let n = *self * self.frobenius();
        debug_assert_eq!(n.c1, 0);
        FpElem {
            value: n.c0,
            p: self.p,
        }
    }
}

impl fmt::Debug for Fp2Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {}, w^2 = {})", self, self.p, self.d)
    }
}

impl fmt::Display for Fp2Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.c0, self.c1) {
            (c0, 0) => write!(f, "{c0}"),
            (0, 1) => write!(f, "w"),
            (0, c1) => write!(f, "{c1}w"),
            (c0, 1) => write!(f, "{c0} + w"),
            (c0, c1) => write!(f, "{c0} + {c1}w"),
        }
    }
}

impl Add for Fp2Elem {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        debug_assert_eq!(self.p, rhs.p, "modulus mismatch");
        let p = self.p;
        Self {
            c0: (self.c0 + rhs.c0) % p,
            c1: (self.c1 + rhs.c1) % p,
            ..self
        }
    }
}

impl Sub for Fp2Elem {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        debug_assert_eq!(self.p, rhs.p, "modulus mismatch");
        let p = self.p;
        Self {
            c0: (self.c0 + p - rhs.c0) % p,
            c1: (self.c1 + p - rhs.c1) % p,
            ..self
        }
    }
}

impl Mul for Fp2Elem {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        debug_assert_eq!(self.p, rhs.p, "modulus mismatch");
        let p = self.p as u128;
        let (a0, a1, b0, b1) = (
            self.c0 as u128,
            self.c1 as u128,
            rhs.c0 as u128,
            rhs.c1 as u128,
        );
        let c0 = (a0 * b0 + (a1 * b1 % p) * self.d as u128) % p;
        let c1 = (a0 * b1 + a1 * b0) % p;
        Self {
            c0: c0 as u64,
            c1: c1 as u64,
            ..self
        }
    }
}

impl Neg for Fp2Elem {
    type Output = Self;
    fn neg(self) -> Self {
        self.zero_like() - self
    }
}

impl Scalar for Fp2Elem {
    fn zero_like(&self) -> Self {
        Self {
            c0: 0,
            c1: 0,
            ..*self
        }
    }
    fn one_like(&self) -> Self {
        Self {
            c0: 1,
            c1: 0,
            ..*self
        }
    }
    fn is_zero(&self) -> bool {
        self.c0 == 0 && self.c1 == 0
    }
    fn inv(&self) -> Option<Self> {
        let n = self.norm();
        let n_inv = Scalar::inv(&n)?;
        let conj = self.frobenius();
        Some(Self {
            c0: (conj.c0 as u128 * n_inv.value as u128 % self.p as u128) as u64,
            c1: (conj.c1 as u128 * n_inv.value as u128 % self.p as u128) as u64,
            ..*self
        })
    }
    fn from_rat_like(&self, r: &Rat) -> Option<Self> {
        let num = big_mod_u64(r.numer(), self.p);
        let den = big_mod_u64(r.denom(), self.p);
        let inv = mod_inv(den, self.p)?;
        Some(Self {
            c0: (num as u128 * inv as u128 % self.p as u128) as u64,
            c1: 0,
            ..*self
        })
    }
    fn from_int_like(&self, n: i64) -> Self {
        Self {
            c0: n.rem_euclid(self.p as i64) as u64,
            c1: 0,
            ..*self
        }
    }
}
