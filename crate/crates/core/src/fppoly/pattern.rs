use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use super::{elem_pow, Poly};
use crate::error::{Error, Result};
use crate::exact_arith::FieldCtx;

/// `f = prod_i a_i^i` with squarefree, pairwise coprime monic `a_i`.
pub fn squarefree_decomposition<F: FieldCtx>(f: &Poly<F>) -> Result<Vec<(Poly<F>, u32)>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut out = Vec::new();
    sqf_into(&f.monic(), 1, &mut out);
    out.sort_by_key(|(_, m)| *m);
    Ok(out)
}

fn sqf_into<F: FieldCtx>(f: &Poly<F>, scale: u32, out: &mut Vec<(Poly<F>, u32)>) {
    if f.degree().unwrap_or(0) == 0 {
        return;
    }
    let one = Poly::one(f.field().clone());
    let mut c = f.gcd(&f.derivative());
    let mut w = f.div_rem(&c).0;
    let mut i = 1;
    while w != one {
        let y = w.gcd(&c);
        let fac = w.div_rem(&y).0;
        if fac.degree().unwrap_or(0) > 0 {
            out.push((fac.monic(), i * scale));
        }
        w = y;
        c = c.div_rem(&w).0;
        i += 1;
    }
    if c.degree().unwrap_or(0) > 0 {
        // c is a polynomial in x^p
        let field = c.field().clone();
        let p = field.characteristic() as usize;
        let e = (field.order() / field.characteristic()) as u128;
        let root: Vec<F::Elem> = c
            .coeffs()
            .iter()
            .step_by(p)
            .map(|&a| elem_pow(a, e))
            .collect();
        sqf_into(&Poly::new(field, root), scale * p as u32, out);
    }
}

/// Splits a squarefree monic polynomial into `(d, g_d)` with `g_d` the
/// product of its irreducible factors of degree `d`.
pub fn distinct_degree_parts<F: FieldCtx>(f: &Poly<F>) -> Result<Vec<(usize, Poly<F>)>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !f.is_squarefree() {
        return Err(Error::NotSquarefree);
    }
    let field = f.field().clone();
    let q = field.order() as u128;
    let x = Poly::x(field);
    let mut rest = f.monic();
    let mut h = x.rem(&rest);
    let mut out = Vec::new();
    let mut d = 1;
    while rest.degree().unwrap() >= 2 * d {
        h = h.pow_mod(q, &rest);
        let g = rest.gcd(&(&h - &x));
        if g.degree().unwrap() > 0 {
            rest = rest.div_rem(&g).0;
            h = h.rem(&rest);
            out.push((d, g));
        }
        d += 1;
    }
    if let Some(deg) = rest.degree().filter(|&deg| deg > 0) {
        out.push((deg, rest));
    }
    Ok(out)
}

/// Multiset of `(degree, multiplicity)` over the monic irreducible factors.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct FactorPattern {
    /// `(degree, multiplicity) -> number of such factors`
    counts: BTreeMap<(usize, u32), usize>,
}

impl FactorPattern {
    pub fn counts(&self) -> &BTreeMap<(usize, u32), usize> {
        &self.counts
    }

    /// Number of irreducible factors of degree `d`, any multiplicity.
    pub fn count_of_degree(&self, d: usize) -> usize {
        self.counts
            .iter()
            .filter(|((deg, _), _)| *deg == d)
            .map(|(_, c)| c)
            .sum()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.counts.keys().map(|(deg, _)| *deg).collect();
        d.dedup();
        d
    }

    pub fn total_degree(&self) -> usize {
        self.counts
            .iter()
            .map(|((d, m), c)| d * *m as usize * c)
            .sum()
    }

    pub fn is_squarefree(&self) -> bool {
        self.counts.keys().all(|(_, m)| *m == 1)
    }
}

impl fmt::Display for FactorPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .counts
            .iter()
            .map(|((d, m), c)| {
                if *m == 1 {
                    format!("{d}:×{c}")
                } else {
                    format!("{d}^{m}:×{c}")
                }
            })
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// `(degree, multiplicity, product of those factors)` for every class of
/// irreducible factors.
pub fn factor_parts<F: FieldCtx>(f: &Poly<F>) -> Result<Vec<(usize, u32, Poly<F>)>> {
    let mut out = Vec::new();
    for (a, m) in squarefree_decomposition(f)? {
        for (d, g) in distinct_degree_parts(&a)? {
            out.push((d, m, g));
        }
    }
    Ok(out)
}

pub fn factor_pattern<F: FieldCtx>(f: &Poly<F>) -> Result<FactorPattern> {
    let mut counts = BTreeMap::new();
    for (d, m, g) in factor_parts(f)? {
        *counts.entry((d, m)).or_insert(0) += g.degree().unwrap() / d;
    }
    Ok(FactorPattern { counts })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::{Fp2Field, PrimeField};

    fn poly(p: u64, c: &[i64]) -> Poly<PrimeField> {
        Poly::from_ints(PrimeField::new(p).unwrap(), c)
    }

    #[test]
    fn patterns() {
        assert_eq!(factor_pattern(&poly(7, &[-3, 0, 1])).unwrap().to_string(), "{2:×1}");
        let lin = poly(7, &[1, 1]);
        let quad = poly(7, &[-3, 0, 1]);
        let f = &(&lin * &lin) * &(&quad * &poly(7, &[-2, 1]));
        let pat = factor_pattern(&f).unwrap();
        assert_eq!(pat.to_string(), "{1:×1, 1^2:×1, 2:×1}");
        assert_eq!(pat.total_degree(), 5);
        assert_eq!(pat.count_of_degree(1), 2);
        assert!(!pat.is_squarefree());
    }

    #[test]
    fn pth_powers() {
        // (x + 1)^7 (x - 2) over F_7
        let f = &poly(7, &[1, 1]).pow(7) * &poly(7, &[-2, 1]);
        let pat = factor_pattern(&f).unwrap();
        assert_eq!(pat.to_string(), "{1:×1, 1^7:×1}");
        let f = poly(5, &[1, 1]).pow(11);
        assert_eq!(factor_pattern(&f).unwrap().to_string(), "{1^11:×1}");
    }

    #[test]
    fn reconstruction_and_extension_fields() {
        let f = &poly(11, &[1, 0, 1]) * &poly(11, &[3, 2, 0, 5, 1]);
        let parts = factor_parts(&f).unwrap();
        let mut acc = Poly::one(*f.field());
        for (_, m, g) in &parts {
            acc = &acc * &g.pow(*m);
        }
        assert_eq!(acc, f.monic());
        // over F_{p^2} every quadratic factor splits
        let ext = Fp2Field::new(11).unwrap();
        let lifted = Poly::new(ext, vec![ext.one(), ext.zero(), ext.one()]);
        assert_eq!(factor_pattern(&lifted).unwrap().to_string(), "{1:×2}");
    }
}
