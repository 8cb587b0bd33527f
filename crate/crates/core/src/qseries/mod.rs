//! Truncated formal power series with exact coefficients.
//!
//! A [`QSeries`] stores `q^shift * (c_0 + c_1 q + ... + c_{N-1} q^{N-1}) + O(q^{shift+N})`.
//! The shift is zero for everything except the j-invariant (shift `-1`) and
//! intermediate quotients. The same type doubles as a power series in any
//! formal variable (`x = 1728/j`, `lambda`, `y`) when checking
//! hypergeometric transformations.

mod generators;
mod hauptmodul;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

pub use generators::{
    delta, delta_from_eisenstein, e4, e6, eisenstein, eta, euler_product, inverse_j, j_invariant,
    theta_h, theta_z, EtaQuotient, EtaSeries,
};
pub use hauptmodul::{lambda_eta_quotient, t3, verify_hauptmodul_relation, Hauptmodul};

use crate::error::{Error, Result};
use crate::exact_arith::{Rat, Scalar};

#[derive(Clone, PartialEq)]
pub struct QSeries<R> {
    coeffs: Vec<R>,
    shift: i64,
}

/// First exponent at which two series disagree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SeriesMismatch {
    pub exponent: i64,
}

impl fmt::Display for SeriesMismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "first mismatch at exponent {}", self.exponent)
    }
}

impl<R: Scalar> QSeries<R> {
    /// Series with coefficients for `q^0 .. q^{N-1}`. Panics on an empty
    /// coefficient list since there would be no ring element to work from.
    pub fn from_coeffs(coeffs: Vec<R>) -> Self {
        Self::with_shift(coeffs, 0)
    }

    pub fn with_shift(coeffs: Vec<R>, shift: i64) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least one coefficient");
        Self { coeffs, shift }
    }

    /// `c + O(q^n)`.
    pub fn constant(c: R, n: usize) -> Self {
        let mut coeffs = vec![c.zero_like(); n.max(1)];
        coeffs[0] = c;
        Self::from_coeffs(coeffs)
    }

    /// `q + O(q^n)`.
    pub fn variable(template: &R, n: usize) -> Self {
        let mut coeffs = vec![template.zero_like(); n.max(2)];
        coeffs[1] = template.one_like();
        coeffs.truncate(n.max(1));
        Self::from_coeffs(coeffs)
    }

    /// Number of stored coefficients (relative precision).
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    /// Exclusive bound on the exponents that are known.
    pub fn precision(&self) -> i64 {
        self.shift + self.coeffs.len() as i64
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<R> {
        self.coeffs
    }

    fn zero_elem(&self) -> R {
        self.coeffs[0].zero_like()
    }

    /// Coefficient of `q^e`, or `None` past the truncation.
    pub fn coeff(&self, e: i64) -> Option<R> {
        if e >= self.precision() {
            None
        } else if e < self.shift {
            Some(self.zero_elem())
        } else {
            Some(self.coeffs[(e - self.shift) as usize].clone())
        }
    }

    /// Smallest exponent with a nonzero known coefficient.
    pub fn valuation(&self) -> Option<i64> {
        self.coeffs
            .iter()
            .position(|c| !c.is_zero())
            .map(|i| self.shift + i as i64)
    }

    /// Keeps only exponents below `end`.
    pub fn truncate(&self, end: i64) -> Self {
        let keep = (end - self.shift).clamp(1, self.coeffs.len() as i64) as usize;
        Self::with_shift(self.coeffs[..keep].to_vec(), self.shift)
    }

    /// Rewrites the series with the given (smaller or equal) shift, padding
    /// with zeros. Absolute precision is unchanged.
    pub fn reshift(&self, shift: i64) -> Self {
        assert!(shift <= self.shift);
        let pad = (self.shift - shift) as usize;
        let mut coeffs = vec![self.zero_elem(); pad];
        coeffs.extend(self.coeffs.iter().cloned());
        Self::with_shift(coeffs, shift)
    }

    /// Drops leading zeros so that the stored list starts at the valuation.
    pub fn normalize_leading(&self) -> Self {
        match self.coeffs.iter().position(|c| !c.is_zero()) {
            Some(0) | None => self.clone(),
            Some(i) => Self::with_shift(self.coeffs[i..].to_vec(), self.shift + i as i64),
        }
    }

    /// A shift-zero view of a series without pole terms.
    pub fn to_power_series(&self) -> Result<Self> {
        if self.shift >= 0 {
            return Ok(self.reshift(0));
        }
        match self.valuation() {
            Some(v) if v < 0 => Err(Error::NonZeroConstantTerm),
            Some(_) => Ok(self.normalize_leading().reshift(0)),
            None => Ok(Self::with_shift(
                vec![self.zero_elem(); self.precision().max(1) as usize],
                0,
            )),
        }
    }

    pub fn map<S: Scalar>(&self, f: impl Fn(&R) -> S) -> QSeries<S> {
        QSeries::with_shift(self.coeffs.iter().map(f).collect(), self.shift)
    }

    pub fn try_map<S: Scalar>(&self, f: impl Fn(usize, &R) -> Result<S>) -> Result<QSeries<S>> {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| f(i, c))
            .collect::<Result<Vec<_>>>()?;
        Ok(QSeries::with_shift(coeffs, self.shift))
    }

    pub fn scale(&self, c: &R) -> Self {
        self.map(|x| x.clone() * c.clone())
    }

    /// `f(q^m)`.
    pub fn substitute_power(&self, m: u32) -> Self {
        assert!(m >= 1);
        let m = m as usize;
        let zero = self.zero_elem();
        let mut coeffs = vec![zero; (self.coeffs.len() - 1) * m + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * m] = c.clone();
        }
        // everything below precision * m is known, pad up to it
        coeffs.resize(self.coeffs.len() * m, self.zero_elem());
        Self::with_shift(coeffs, self.shift * m as i64)
    }

    pub fn add_series(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a + b)
    }

    pub fn sub_series(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a - b)
    }

    fn combine(&self, other: &Self, op: impl Fn(R, R) -> R) -> Self {
        let shift = self.shift.min(other.shift);
        let end = self.precision().min(other.precision());
        assert!(end > shift, "series precisions do not overlap");
        let zero = self.zero_elem();
        let coeffs = (shift..end)
            .map(|e| {
                let a = self.coeff(e).unwrap_or_else(|| zero.clone());
                let b = other.coeff(e).unwrap_or_else(|| zero.clone());
                op(a, b)
            })
            .collect();
        Self::with_shift(coeffs, shift)
    }

    /// Product, truncated to the smaller relative precision.
    pub fn mul_series(&self, other: &Self) -> Self {
        let n = self.coeffs.len().min(other.coeffs.len());
        let zero = self.zero_elem();
        let mut out = vec![zero; n];
        for (i, a) in self.coeffs[..n].iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..n - i].iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self::with_shift(out, self.shift + other.shift)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut acc = Self::with_shift(
            {
                let mut c = vec![self.zero_elem(); self.coeffs.len()];
                c[0] = self.coeffs[0].one_like();
                c
            },
            0,
        );
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_series(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_series(&base);
            }
        }
        acc
    }

    /// Inverse of a series whose first stored coefficient is a unit.
    pub fn invert_unit(&self) -> Result<Self> {
        let c0_inv = self.coeffs[0].inv().ok_or(Error::NonUnitConstantTerm)?;
        let n = self.coeffs.len();
        let mut out: Vec<R> = Vec::with_capacity(n);
        out.push(c0_inv.clone());
        for k in 1..n {
            let mut acc = self.zero_elem();
            for i in 1..=k {
                if !self.coeffs[i].is_zero() {
                    acc = acc + self.coeffs[i].clone() * out[k - i].clone();
                }
            }
            out.push(-(acc * c0_inv.clone()));
        }
        Ok(Self::with_shift(out, -self.shift))
    }

    /// `self / other`, allowing `other` to start with a power of `q`.
    pub fn div_series(&self, other: &Self) -> Result<Self> {
        let d = other.normalize_leading();
        if d.coeffs[0].is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.mul_series(&d.invert_unit()?))
    }

    /// `f^r` for `f = 1 + O(q)`, via `f g' = r f' g`.
    pub fn pow_rational(&self, r: &Rat) -> Result<Self> {
        if self.shift != 0 || self.coeffs[0] != self.coeffs[0].one_like() {
            return Err(Error::ConstantTermNotOne);
        }
        let one = self.coeffs[0].one_like();
        let r_elem = one.from_rat_like(r).ok_or(Error::DivisionByZero)?;
        let n = self.coeffs.len();
        let mut g: Vec<R> = Vec::with_capacity(n);
        g.push(one.clone());
        for m in 1..n {
            let mut acc = self.zero_elem();
            for k in 1..=m {
                if self.coeffs[k].is_zero() {
                    continue;
                }
                // (r k + k - m) f_k g_{m-k}
                let w = r_elem.clone() * one.from_int_like(k as i64)
                    + one.from_int_like(k as i64 - m as i64);
                acc = acc + w * self.coeffs[k].clone() * g[m - k].clone();
            }
            let m_inv = one
                .from_int_like(m as i64)
                .inv()
                .ok_or(Error::DivisionByZero)?;
            g.push(acc * m_inv);
        }
        Ok(Self::from_coeffs(g))
    }

    /// `outer(self)` for a formal series `outer` given by its coefficient list.
    /// The inner series must have no constant term; the result has the inner
    /// series' absolute precision.
    pub fn compose_into(&self, outer: &[R]) -> Result<Self> {
        let inner = self.to_power_series()?;
        if !inner.coeffs[0].is_zero() {
            return Err(Error::NonZeroConstantTerm);
        }
        let n = inner.coeffs.len();
        let zero = self.zero_elem();
        // Horner; terms of degree >= n are invisible at this precision
        let top = outer.len().min(n);
        let mut acc = Self::constant(zero.clone(), n);
        for a in outer[..top].iter().rev() {
            acc = acc.mul_series(&inner);
            acc.coeffs[0] = acc.coeffs[0].clone() + a.clone();
        }
        Ok(acc)
    }

    /// Compares two series on the exponents `[from, to)`, both of which must
    /// be within precision.
    pub fn first_mismatch(&self, other: &Self, from: i64, to: i64) -> Result<Option<i64>> {
        let have = self.precision().min(other.precision());
        if to > have {
            return Err(Error::InsufficientPrecision {
                needed: (to - from).max(0) as usize,
                have: (have - from).max(0) as usize,
            });
        }
        Ok((from..to).find(|&e| self.coeff(e) != other.coeff(e)))
    }

    /// Checks agreement on `[from, to)`.
    pub fn agrees_with(&self, other: &Self, from: i64, to: i64) -> std::result::Result<(), SeriesMismatch> {
        match self.first_mismatch(other, from, to) {
            Ok(None) => Ok(()),
            Ok(Some(exponent)) => Err(SeriesMismatch { exponent }),
            Err(_) => Err(SeriesMismatch {
                exponent: self.precision().min(other.precision()),
            }),
        }
    }
}

/// Free-function form of [`QSeries::compose_into`].
pub fn compose<R: Scalar>(outer: &[R], inner: &QSeries<R>) -> Result<QSeries<R>> {
    inner.compose_into(outer)
}

impl<R: Scalar> Add for &QSeries<R> {
    type Output = QSeries<R>;
    fn add(self, rhs: Self) -> QSeries<R> {
        self.add_series(rhs)
    }
}

impl<R: Scalar> Sub for &QSeries<R> {
    type Output = QSeries<R>;
    fn sub(self, rhs: Self) -> QSeries<R> {
        self.sub_series(rhs)
    }
}

impl<R: Scalar> Mul for &QSeries<R> {
    type Output = QSeries<R>;
    fn mul(self, rhs: Self) -> QSeries<R> {
        self.mul_series(rhs)
    }
}

impl<R: Scalar> Neg for &QSeries<R> {
    type Output = QSeries<R>;
    fn neg(self) -> QSeries<R> {
        self.map(|c| -c.clone())
    }
}

impl<R: Scalar + fmt::Display> fmt::Display for QSeries<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = self.shift + i as i64;
            let s = c.to_string();
            let (neg, mag) = match s.strip_prefix('-') {
                Some(m) => (true, m.to_string()),
                None => (false, s),
            };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            match e {
                0 => write!(f, "{mag}")?,
                _ => {
                    if mag != "1" {
                        write!(f, "{mag}")?;
                    }
                    if e == 1 {
                        write!(f, "q")?;
                    } else {
                        write!(f, "q^{e}")?;
                    }
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(q^{})", self.precision())
    }
}

impl<R: Scalar> fmt::Debug for QSeries<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("QSeries")
            .field("shift", &self.shift)
            .field("coeffs", &self.coeffs)
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::{int, rat, PrimeField};

    fn s(v: &[i64]) -> QSeries<Rat> {
        QSeries::from_coeffs(v.iter().map(|&x| int(x)).collect())
    }

    #[test]
    fn small_products() {
        assert_eq!(&s(&[1, 1, 0, 0]) * &s(&[1, -1, 0, 0]), s(&[1, 0, -1, 0]));
        assert_eq!(s(&[1, -1, 0, 0, 0]).invert_unit().unwrap(), s(&[1, 1, 1, 1, 1]));
        let f = s(&[2, 3, -1, 5]);
        let g = f.invert_unit().unwrap();
        assert_eq!(&f * &g, s(&[1, 0, 0, 0]));
    }

    #[test]
    fn non_unit_inversion_fails() {
        assert_eq!(
            s(&[0, 1, 2]).invert_unit(),
            Err(Error::NonUnitConstantTerm)
        );
        let fp = PrimeField::new(5).unwrap();
        let f = QSeries::from_coeffs(vec![fp.elem(0), fp.elem(1)]);
        assert!(f.invert_unit().is_err());
    }

    #[test]
    fn mul_truncates_to_min_precision() {
        let f = s(&[1, 1, 1, 1, 1, 1]);
        let g = s(&[1, 1]);
        assert_eq!((&f * &g).len(), 2);
    }

    #[test]
    fn composition() {
        let geometric: Vec<Rat> = (0..6).map(|_| int(1)).collect();
        let q = QSeries::variable(&int(0), 6);
        assert_eq!(compose(&geometric, &q).unwrap(), s(&[1, 1, 1, 1, 1, 1]));
        let square = vec![int(0), int(0), int(1)];
        let inner = s(&[0, 1, 1, 0, 0, 0]);
        assert_eq!(compose(&square, &inner).unwrap(), s(&[0, 0, 1, 2, 1, 0]));
        assert_eq!(
            compose(&square, &s(&[1, 1])),
            Err(Error::NonZeroConstantTerm)
        );
    }

    #[test]
    fn rational_powers() {
        let one = s(&[1, 0, 0, 0]);
        assert_eq!(one.pow_rational(&rat(3, 7)).unwrap(), one);
        let f = s(&[1, 4, -2, 7, 1, 0, 3]);
        let g = f.pow_rational(&rat(3, 2)).unwrap();
        assert_eq!(g.pow_rational(&rat(2, 3)).unwrap(), f);
        assert_eq!(f.pow_rational(&int(3)).unwrap(), f.pow(3));
        assert_eq!(
            s(&[2, 1]).pow_rational(&rat(1, 2)),
            Err(Error::ConstantTermNotOne)
        );
    }

    #[test]
    fn rational_power_over_fp() {
        // (1+q)^{1/2} squared is 1+q over F_7 to order 5
        let fp = PrimeField::new(7).unwrap();
        let f = QSeries::from_coeffs(vec![fp.elem(1), fp.elem(1), fp.elem(0), fp.elem(0), fp.elem(0)]);
        let h = f.pow_rational(&rat(1, 2)).unwrap();
        assert_eq!(&h * &h, f);
    }

    #[test]
    fn shifted_arithmetic() {
        // (q^-1 + 1) * (q - q^2) = 1 + 0q - q^2 ...
        let a = QSeries::with_shift(vec![int(1), int(1), int(0), int(0)], -1);
        let b = QSeries::with_shift(vec![int(1), int(-1), int(0), int(0)], 1);
        let c = &a * &b;
        assert_eq!(c.shift(), 0);
        assert_eq!(c.coeffs(), &[int(1), int(0), int(-1), int(0)]);
        let d = c.div_series(&b).unwrap();
        assert_eq!(d.shift(), -1);
        assert_eq!(d.coeff(-1), Some(int(1)));
        assert_eq!(d.coeff(0), Some(int(1)));
    }

    #[test]
    fn substitution() {
        let f = s(&[1, 2, 3]);
        let g = f.substitute_power(2);
        assert_eq!(g.coeffs(), &[int(1), int(0), int(2), int(0), int(3), int(0)]);
    }

    #[test]
    fn display() {
        assert_eq!(s(&[1, -24, 0, 252]).to_string(), "1 - 24q + 252q^3 + O(q^4)");
    }
}
