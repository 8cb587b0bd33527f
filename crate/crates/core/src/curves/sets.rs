use std::collections::BTreeSet;

use serde::Serialize;

use super::{Curve, SquareTable, TorsionStructure};
use crate::error::{Error, Result};
use crate::exact_arith::{cube_root_of_2, FieldCtx, Fp2Elem, Fp2Field, PrimeField, Scalar};
use crate::hyperpoly::require_class;
use crate::parallel::par_map;

/// A model with the given j-invariant: `y^2 = x^3 + 1` for 0,
/// `y^2 = x^3 + x` for 1728, otherwise `a = 3j(1728 - j)`, `b = 2j(1728 - j)^2`.
fn model_with_j<F: FieldCtx>(field: &F, j: F::Elem) -> Curve<F> {
    let (a, b) = if j.is_zero() {
        (field.zero(), field.one())
    } else if j == field.from_int(1728) {
        (field.one(), field.zero())
    } else {
        let k = field.from_int(1728) - j;
        (field.from_int(3) * j * k, field.from_int(2) * j * k * k)
    };
    Curve::short(field.clone(), a, b).expect("model is nonsingular")
}

/// Supersingular j-invariants in characteristic `p`, all of which lie in
/// `F_{p^2}`: `j in F_p` with `#E(F_p) = p + 1`, and `j in F_{p^2} \ F_p` with
/// `#E(F_{p^2}) = 1 mod p`, both by exhaustive character sums.
pub fn supersingular_j_set(p: u64) -> Result<BTreeSet<Fp2Elem>> {
    let base = PrimeField::new(p)?;
    let ext = Fp2Field::new(p)?;
    let mut out = BTreeSet::new();

    let base_table = SquareTable::new(base);
    for j in base.elements() {
        if model_with_j(&base, j).point_count(&base_table) == p + 1 {
            out.insert(ext.embed(j));
        }
    }

    let table = SquareTable::new(ext);
    let xs: Vec<Fp2Elem> = ext.elements().collect();
    let cubes: Vec<Fp2Elem> = xs.iter().map(|&x| x * x * x).collect();
    // one representative per Frobenius orbit
    let candidates: Vec<Fp2Elem> = xs
        .iter()
        .copied()
        .filter(|j| j.c1() != 0 && ext.index_of(j) < ext.index_of(&j.frobenius()))
        .collect();
    let hits = par_map(&candidates, |&j| {
        let e = model_with_j(&ext, j);
        let chi_sum: i64 = xs
            .iter()
            .zip(&cubes)
            .map(|(&x, &x3)| table.chi(x3 + e.a4 * x + e.a6) as i64)
            .sum();
        // #E(F_{p^2}) = p^2 + 1 + chi_sum
        (chi_sum.rem_euclid(p as i64) == 0).then_some(j)
    });
    for j in hits.into_iter().flatten() {
        out.insert(j);
        out.insert(j.frobenius());
    }
    Ok(out)
}

fn remove_special(mut s: BTreeSet<Fp2Elem>, ext: &Fp2Field) -> BTreeSet<Fp2Elem> {
    s.remove(&ext.zero());
    s.remove(&ext.from_int(1728));
    s
}

/// `{ 6912 (2a - 1)^3 / (a (a + 4)^3) : a in F_{p^2}, a^{(p+1)/3} = -2^{1/3} }`
/// without 0 and 1728, for `p = 5, 11 mod 12`.
pub fn hex_zero_set(p: u64) -> Result<BTreeSet<Fp2Elem>> {
    require_class(p, 12, &[5, 11], "p = 5 or 11 mod 12")?;
    let ext = Fp2Field::new(p)?;
    let target = -ext.embed(cube_root_of_2(p)?);
    let e = (p + 1) / 3;
    let four = ext.from_int(4);
    let xs: Vec<Fp2Elem> = ext.elements().collect();
    let vals = par_map(&xs, |&a| {
        if a.pow(e) != target {
            return None;
        }
        let den = a * (a + four) * (a + four) * (a + four);
        let inv = den.inv()?;
        let t = ext.from_int(2) * a - ext.one();
        Some(ext.from_int(6912) * t * t * t * inv)
    });
    Ok(remove_special(vals.into_iter().flatten().collect(), &ext))
}

/// j-invariant of `x^3 + y^3 + 1 = 3 b x y`:
/// `27 b^3 (b^3 + 8)^3 / (b^3 - 1)^3`, singular exactly when `b^3 = 1`.
pub fn hessian_j<E: Scalar>(b: E) -> Result<E> {
    let b3 = b.clone() * b.clone() * b.clone();
    let d = b3.clone() - b.one_like();
    let inv = (d.clone() * d.clone() * d).inv().ok_or(Error::SingularCurve)?;
    let s = b3.clone() + b.from_int_like(8);
    Ok(b.from_int_like(27) * b3 * s.clone() * s.clone() * s * inv)
}

/// Weierstrass model of the Hessian cubic from the flex `(1 : -1 : 0)`:
/// with `s = x + y`, `t = x - y`, `s = -b + 1/u`, `w = 3 (s + b) t` the curve
/// becomes `w^2 = c3 u^3 + c2 u^2 + c1 u + c0` with
/// `(c0, c1, c2, c3) = (-3, 18b, -27b^2, 12(b^3 - 1))`, and `X = c3 u`,
/// `Y = c3 w` make it monic.
pub fn hessian_weierstrass<F: FieldCtx>(field: &F, b: F::Elem) -> Result<Curve<F>> {
    let c0 = field.from_int(-3);
    let c1 = field.from_int(18) * b;
    let c2 = field.from_int(-27) * b * b;
    let c3 = field.from_int(12) * (b * b * b - field.one());
    if c3.is_zero() {
        return Err(Error::SingularCurve);
    }
    Curve::new(field.clone(), c2, c1 * c3, c0 * c3 * c3)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HessianReport {
    pub p: u64,
    pub hessian_set_size: usize,
    pub hex_set_size: usize,
    pub sets_equal: bool,
    /// 3-torsion of `E_b(F_{p^2})` for a few `b` with `b^{p+1} = -2`.
    pub sampled_torsion: Vec<TorsionStructure>,
}

impl HessianReport {
    pub fn passed(&self) -> bool {
        self.sets_equal
            && self
                .sampled_torsion
                .iter()
                .all(|t| *t == TorsionStructure(3, 3))
    }
}

/// Compares `{ j(E_b) : b^{p+1} = -2 }` with [`hex_zero_set`] (both without
/// 0 and 1728) and computes the 3-torsion of `samples` of the curves.
pub fn hessian_proposition_check(p: u64, samples: usize) -> Result<HessianReport> {
    require_class(p, 12, &[5, 11], "p = 5 or 11 mod 12")?;
    let ext = Fp2Field::new(p)?;
    let minus_two = ext.base().from_int(-2);
    let bs: Vec<Fp2Elem> = ext
        .elements()
        .filter(|b| b.norm() == minus_two)
        .collect();
    let hess: BTreeSet<Fp2Elem> = bs.iter().filter_map(|&b| hessian_j(b).ok()).collect();
    let hess = remove_special(hess, &ext);
    let hex = hex_zero_set(p)?;

    let table = SquareTable::new(ext);
    let picked: Vec<Fp2Elem> = bs
        .iter()
        .copied()
        .filter(|&b| hessian_weierstrass(&ext, b).is_ok())
        .take(samples)
        .collect();
    let sampled_torsion = par_map(&picked, |&b| {
        hessian_weierstrass(&ext, b)
            .expect("filtered")
            .n_torsion_structure(3, &table)
    });
    Ok(HessianReport {
        p,
        hessian_set_size: hess.len(),
        hex_set_size: hex.len(),
        sets_equal: hess == hex,
        sampled_torsion,
    })
}
