//! Dense univariate polynomials over `F_p` and `F_{p^2}`: reduction of
//! rational polynomials, gcd, splitting tests, brute-force roots,
//! factor-degree patterns and Newton power sums.

mod pattern;

use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

pub use pattern::{
    distinct_degree_parts, factor_parts, factor_pattern, squarefree_decomposition, FactorPattern,
};

use crate::error::{Error, Result};
use crate::exact_arith::{FieldCtx, Fp2Field, PrimeField, Scalar};
use crate::modforms::RatPoly;

/// Polynomial over a finite field, lowest degree first, no trailing zeros.
#[derive(Clone)]
pub struct Poly<F: FieldCtx> {
    field: F,
    coeffs: Vec<F::Elem>,
}

pub type FpPoly = Poly<PrimeField>;
pub type Fp2Poly = Poly<Fp2Field>;

pub(crate) fn elem_pow<E: Scalar + Copy>(x: E, mut e: u128) -> E {
    let mut base = x;
    let mut acc = x.one_like();
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base;
        }
        base = base * base;
        e >>= 1;
    }
    acc
}

impl<F: FieldCtx> Poly<F> {
    pub fn new(field: F, mut coeffs: Vec<F::Elem>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { field, coeffs }
    }

    pub fn from_ints(field: F, coeffs: &[i64]) -> Self {
        let c = coeffs.iter().map(|&v| field.from_int(v)).collect();
        Self::new(field, c)
    }

    pub fn zero(field: F) -> Self {
        Self {
            field,
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: F) -> Self {
        let one = field.one();
        Self::new(field, vec![one])
    }

    /// `c x^d`.
    pub fn monomial(field: F, c: F::Elem, d: usize) -> Self {
        let mut coeffs = vec![field.zero(); d + 1];
        coeffs[d] = c;
        Self::new(field, coeffs)
    }

    pub fn x(field: F) -> Self {
        let one = field.one();
        Self::monomial(field, one, 1)
    }

    /// `prod (x - r)` over the given roots.
    pub fn from_roots(field: F, roots: &[F::Elem]) -> Self {
        let mut acc = Self::one(field.clone());
        for &r in roots {
            let lin = Self::new(field.clone(), vec![-r, field.one()]);
            acc = &acc * &lin;
        }
        acc
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn coeffs(&self) -> &[F::Elem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> F::Elem {
        self.coeffs.get(i).copied().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<F::Elem> {
        self.coeffs.last().copied()
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == Some(self.field.one())
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some(l) => self.scale(l.inv().expect("nonzero leading coefficient")),
        }
    }

    pub fn scale(&self, c: F::Elem) -> Self {
        Self::new(
            self.field.clone(),
            self.coeffs.iter().map(|&a| a * c).collect(),
        )
    }

    pub fn eval(&self, x: F::Elem) -> F::Elem {
        self.coeffs
            .iter()
            .rev()
            .fold(self.field.zero(), |acc, &c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &a)| a * self.field.from_int(i as i64))
            .collect();
        Self::new(self.field.clone(), c)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by the zero polynomial");
        let inv_lead = d.leading().unwrap().inv().expect("field element");
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(self.field.clone()), self.clone());
        }
        let mut quot = vec![self.field.zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = rem[i] * inv_lead;
            if c.is_zero() {
                continue;
            }
            quot[i - dd] = c;
            for (j, &b) in d.coeffs.iter().enumerate() {
                rem[i - dd + j] = rem[i - dd + j] - c * b;
            }
        }
        rem.truncate(dd);
        (
            Self::new(self.field.clone(), quot),
            Self::new(self.field.clone(), rem),
        )
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn mul_mod(&self, other: &Self, m: &Self) -> Self {
        (self * other).rem(m)
    }

    /// `self^e mod m` by square-and-multiply.
    pub fn pow_mod(&self, mut e: u128, m: &Self) -> Self {
        let mut base = self.rem(m);
        let mut acc = Self::one(self.field.clone()).rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_mod(&base, m);
            }
            base = base.mul_mod(&base, m);
            e >>= 1;
        }
        acc
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.field.clone());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Whether `f` and `f'` are coprime.
    pub fn is_squarefree(&self) -> bool {
        match self.degree() {
            None => false,
            Some(0) => true,
            Some(_) => self.gcd(&self.derivative()).degree() == Some(0),
        }
    }

    fn require_squarefree(&self) -> Result<()> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if !self.is_squarefree() {
            return Err(Error::NotSquarefree);
        }
        Ok(())
    }

    /// `x^{|F|} - x`, reduced modulo `self`.
    fn frobenius_x_minus_x(&self) -> Self {
        let q = self.field.order() as u128;
        let xp = powmod_x(q, self);
        &xp - &Self::x(self.field.clone()).rem(self)
    }

    /// Number of distinct roots in the coefficient field:
    /// `deg gcd(f, x^q - x)`.
    pub fn count_roots(&self) -> Result<usize> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if self.degree() == Some(0) {
            return Ok(0);
        }
        Ok(self.gcd(&self.frobenius_x_minus_x()).degree().unwrap_or(0))
    }

    /// Squarefree `f` is a product of distinct linear factors over the
    /// coefficient field.
    pub fn splits_into_linears(&self) -> Result<bool> {
        self.require_squarefree()?;
        Ok(self.count_roots()? == self.degree().unwrap())
    }

    /// Every root lies in the coefficient field, by exhaustive evaluation.
    pub fn roots_brute(&self) -> BTreeSet<F::Elem> {
        if self.is_zero() {
            return self.field.elements().collect();
        }
        self.field
            .elements()
            .filter(|&x| self.eval(x).is_zero())
            .collect()
    }

    /// Newton power sums `S_0 .. S_V` of the roots of a monic polynomial,
    /// computed from the coefficients only.
    pub fn power_sums(&self, v_max: usize) -> Result<Vec<F::Elem>> {
        let d = self.degree().ok_or(Error::ZeroPolynomial)?;
        let f = self.monic();
        // c_j = coefficient of x^{d-j}
        let c = |j: usize| -> F::Elem {
            if j <= d {
                f.coeffs[d - j]
            } else {
                self.field.zero()
            }
        };
        let mut s = Vec::with_capacity(v_max + 1);
        s.push(self.field.from_int(d as i64));
        for v in 1..=v_max {
            let mut acc = -(c(v) * self.field.from_int(v as i64));
            for j in 1..v {
                acc = acc - c(j) * s[v - j];
            }
            s.push(acc);
        }
        Ok(s)
    }

    /// `x^d f(1/x) = f` coefficientwise.
    pub fn is_reciprocal(&self) -> Result<bool> {
        match self.coeffs.first() {
            None => Err(Error::ZeroPolynomial),
            Some(c) if c.is_zero() => Err(Error::ZeroConstantTerm),
            Some(_) => Ok(self.coeffs.iter().eq(self.coeffs.iter().rev())),
        }
    }

    /// Formats with the given variable name, highest degree first, using
    /// the field's display for coefficients.
    pub fn display_in(&self, var: &str) -> String {
        if self.coeffs.is_empty() {
            return "0".into();
        }
        let one = self.field.one();
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, &c)| {
                let coeff = c.to_string();
                let needs_parens = coeff.contains(' ');
                let coeff = if needs_parens {
                    format!("({coeff})")
                } else {
                    coeff
                };
                match i {
                    0 => coeff,
                    _ => {
                        let pow = if i == 1 {
                            var.to_string()
                        } else {
                            format!("{var}^{i}")
                        };
                        if c == one {
                            pow
                        } else {
                            format!("{coeff}{pow}")
                        }
                    }
                }
            })
            .collect();
        terms.join(" + ")
    }
}

impl FpPoly {
    /// Roots in `F_{p^2}` of a polynomial with `F_p` coefficients.
    pub fn roots_in_fp2(&self) -> Result<BTreeSet<crate::exact_arith::Fp2Elem>> {
        Ok(self.lift_to_fp2()?.roots_brute())
    }

    pub fn lift_to_fp2(&self) -> Result<Fp2Poly> {
        let ext = Fp2Field::new(self.field.p())?;
        Ok(Poly::new(
            ext,
            self.coeffs.iter().map(|&c| ext.embed(c)).collect(),
        ))
    }

    /// Squarefree `f` divides `x^{p^2} - x`.
    pub fn splits_over_fp2(&self) -> Result<bool> {
        self.require_squarefree()?;
        if self.degree() == Some(0) {
            return Ok(true);
        }
        let p = self.field.p() as u128;
        let xq = powmod_x(p * p, self);
        Ok((&xq - &Self::x(self.field).rem(self)).is_zero())
    }

    /// `count_roots` under the name used for `F_p`.
    pub fn count_fp_roots(&self) -> Result<usize> {
        self.count_roots()
    }

    /// Monic factors of degree one and two, read off from the roots in
    /// `F_{p^2}` (conjugate roots paired into quadratics); `None` unless `f` is
    /// squarefree and splits over `F_{p^2}`. Linear factors come first, each
    /// group ordered by coefficients.
    pub fn factors_over_fp2(&self) -> Result<Option<Vec<FpPoly>>> {
        if !self.is_squarefree() || !self.splits_over_fp2()? {
            return Ok(None);
        }
        let field = self.field;
        let mut linear = Vec::new();
        let mut quadratic = Vec::new();
        for r in self.roots_in_fp2()? {
            if let Some(x) = r.to_base() {
                linear.push(Poly::new(field, vec![-x, field.one()]));
            } else if r < r.frobenius() {
                let c = r * r.frobenius();
                let s = r + r.frobenius();
                let (c, s) = (c.to_base().expect("norm"), s.to_base().expect("trace"));
                quadratic.push(Poly::new(field, vec![c, -s, field.one()]));
            }
        }
        let key = |f: &FpPoly| f.values().into_iter().rev().collect::<Vec<_>>();
        linear.sort_by_key(key);
        quadratic.sort_by_key(key);
        linear.extend(quadratic);
        Ok(Some(linear))
    }

    /// Coefficients as integers in `[0, p)`.
    pub fn values(&self) -> Vec<u64> {
        self.coeffs.iter().map(|c| c.value()).collect()
    }
}

/// `x^e mod f`.
pub fn powmod_x<F: FieldCtx>(e: u128, f: &Poly<F>) -> Poly<F> {
    assert!(!f.is_zero(), "modulus must be nonzero");
    Poly::x(f.field.clone()).pow_mod(e, f)
}

/// Coefficientwise reduction of a p-integral rational polynomial.
pub fn reduce_poly(poly: &RatPoly, p: u64) -> Result<FpPoly> {
    let field = PrimeField::new(p)?;
    let coeffs = poly
        .coeffs()
        .iter()
        .enumerate()
        .map(|(index, c)| {
            field
                .from_rat(c)
                .map_err(|_| Error::NotPIntegral { index, p })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Poly::new(field, coeffs))
}

/// Cross-check of [`Poly::power_sums`] against root powers summed over
/// `F_{p^2}`; `None` when `f` does not split there.
pub fn newton_consistency(f: &FpPoly, v_max: usize) -> Result<Option<bool>> {
    if !f.is_squarefree() || !f.splits_over_fp2()? {
        return Ok(None);
    }
    let ext = Fp2Field::new(f.field.p())?;
    let roots: Vec<_> = f.roots_in_fp2()?.into_iter().collect();
    let newton = f.power_sums(v_max)?;
    for (v, s) in newton.iter().enumerate() {
        let brute = roots
            .iter()
            .fold(ext.zero(), |acc, &r| acc + elem_pow(r, v as u128));
        if brute != ext.embed(*s) {
            return Ok(Some(false));
        }
    }
    Ok(Some(true))
}

fn zip_with<F: FieldCtx>(
    a: &Poly<F>,
    b: &Poly<F>,
    op: impl Fn(F::Elem, F::Elem) -> F::Elem,
) -> Poly<F> {
    let n = a.coeffs.len().max(b.coeffs.len());
    let c = (0..n).map(|i| op(a.coeff(i), b.coeff(i))).collect();
    Poly::new(a.field.clone(), c)
}

impl<F: FieldCtx> Add for &Poly<F> {
    type Output = Poly<F>;
    fn add(self, rhs: Self) -> Poly<F> {
        zip_with(self, rhs, |x, y| x + y)
    }
}

impl<F: FieldCtx> Sub for &Poly<F> {
    type Output = Poly<F>;
    fn sub(self, rhs: Self) -> Poly<F> {
        zip_with(self, rhs, |x, y| x - y)
    }
}

impl<F: FieldCtx> Mul for &Poly<F> {
    type Output = Poly<F>;
    fn mul(self, rhs: Self) -> Poly<F> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(self.field.clone());
        }
        let mut out = vec![self.field.zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j] + a * b;
            }
        }
        Poly::new(self.field.clone(), out)
    }
}

impl<F: FieldCtx> Neg for &Poly<F> {
    type Output = Poly<F>;
    fn neg(self) -> Poly<F> {
        Poly::new(self.field.clone(), self.coeffs.iter().map(|&c| -c).collect())
    }
}

impl<F: FieldCtx> PartialEq for Poly<F> {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

impl<F: FieldCtx> Eq for Poly<F> {}

impl<F: FieldCtx> fmt::Display for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in("x"))
    }
}

impl<F: FieldCtx> fmt::Debug for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} over {:?}", self.display_in("x"), self.field)
    }
}
