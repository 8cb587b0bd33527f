use std::collections::BTreeSet;

use super::{Curve, SquareTable, TorsionStructure};
use crate::error::{Error, Result};
use crate::exact_arith::{FieldCtx, FpElem, PrimeField, Scalar};
use crate::hyperpoly::require_class;
use crate::parallel::par_map;

/// `y^2 = x (x - 1) (x - lambda)`.
pub fn legendre_curve<F: FieldCtx>(field: &F, lambda: F::Elem) -> Result<Curve<F>> {
    if lambda.is_zero() || lambda == field.one() {
        return Err(Error::SingularCurve);
    }
    Curve::new(field.clone(), -(field.one() + lambda), lambda, field.zero())
}

/// `256 (1 - l + l^2)^3 / (l^2 (l - 1)^2)`.
pub fn j_of_legendre<E: Scalar>(lambda: E) -> Result<E> {
    let l = lambda;
    let one = l.one_like();
    let lm1 = l.clone() - one.clone();
    let den = l.clone() * l.clone() * lm1.clone() * lm1;
    let inv = den.inv().ok_or(Error::SingularCurve)?;
    let s = one - l.clone() + l.clone() * l.clone();
    Ok(l.from_int_like(256) * s.clone() * s.clone() * s * inv)
}

/// `E_lambda(F_p)[4]` as predicted by the square classes of `-lambda` and
/// `lambda - 1`, for `p = 3 mod 4`.
pub fn legendre_4torsion_predicted(lambda: FpElem) -> Result<TorsionStructure> {
    let p = lambda.modulus();
    require_class(p, 4, &[3], "p = 3 mod 4")?;
    let one = PrimeField::new(p)?.one();
    if lambda.value() == 0 || lambda == one {
        return Err(Error::SingularCurve);
    }
    if (-lambda).is_square() && (lambda - one).is_square() {
        Ok(TorsionStructure(2, 2))
    } else {
        Ok(TorsionStructure(2, 4))
    }
}

/// The three quadratic factors of the 4-division polynomial of `E_lambda`
/// (up to the factor `4y`): `x^2 - l`, `x^2 - 2x + l`, `x^2 - 2 l x + l`,
/// each as `(c0, c1)` for `x^2 + c1 x + c0`.
pub fn psi4_quadratics<E: Scalar + Copy>(lambda: E) -> [(E, E); 3] {
    let two = lambda.from_int_like(2);
    let z = lambda.zero_like();
    [(-lambda, z), (lambda, -two), (lambda, -(two * lambda))]
}

/// Roots in `field` of the three quadratics.
pub fn psi4_roots<F: FieldCtx>(field: &F, lambda: F::Elem) -> BTreeSet<F::Elem> {
    let quads = psi4_quadratics(lambda);
    field
        .elements()
        .filter(|&x| quads.iter().any(|&(c0, c1)| (x * x + c1 * x + c0).is_zero()))
        .collect()
}

fn without_special(mut s: BTreeSet<FpElem>, field: &PrimeField) -> BTreeSet<FpElem> {
    s.remove(&field.zero());
    s.remove(&field.from_int(1728));
    s
}

/// `{ lambda : E_lambda(F_p)[4] = E_lambda(F_p)[2] }` by brute force.
pub fn lambdas_with_small_4_torsion(p: u64) -> Result<BTreeSet<FpElem>> {
    let field = PrimeField::new(p)?;
    let table = SquareTable::new(field);
    let lambdas: Vec<FpElem> = field.elements().skip(2).collect();
    let hits = par_map(&lambdas, |&l| {
        let e = legendre_curve(&field, l).expect("lambda not 0, 1");
        (e.n_torsion_structure(4, &table) == TorsionStructure(2, 2)).then_some(l)
    });
    Ok(hits.into_iter().flatten().collect())
}

/// j-invariants (other than 0, 1728) of curves over `F_p` with full rational
/// 2-torsion and no rational point of order 4, by sweeping Legendre models.
pub fn thmc_curve_set(p: u64) -> Result<BTreeSet<FpElem>> {
    let field = PrimeField::new(p)?;
    let js = lambdas_with_small_4_torsion(p)?
        .into_iter()
        .map(j_of_legendre)
        .collect::<Result<BTreeSet<_>>>()?;
    Ok(without_special(js, &field))
}

/// The same set by sweeping every short Weierstrass model `y^2 = x^3 + ax + b`
/// over `F_p`, reading off full 2-torsion from the points and the 4-torsion
/// by scalar multiplication.
pub fn weierstrass_full2_no4_set(p: u64) -> Result<BTreeSet<FpElem>> {
    let field = PrimeField::new(p)?;
    let table = SquareTable::new(field);
    let avals: Vec<FpElem> = field.elements().collect();
    let per_a = par_map(&avals, |&a| {
        let mut out = Vec::new();
        for b in field.elements() {
            let Ok(e) = Curve::short(field, a, b) else {
                continue;
            };
            let two_torsion = field.elements().filter(|&x| e.rhs(x).is_zero()).count();
            if two_torsion != 3 {
                continue;
            }
            if e.n_torsion_structure(4, &table) == TorsionStructure(2, 2) {
                out.push(e.j_invariant());
            }
        }
        out
    });
    Ok(without_special(per_a.into_iter().flatten().collect(), &field))
}

/// `{ j(lambda) : -lambda, lambda - 1 nonzero squares } \ {0, 1728}`.
pub fn eq12_set(p: u64) -> Result<BTreeSet<FpElem>> {
    let field = PrimeField::new(p)?;
    let js = field
        .elements()
        .filter(|&l| (-l).is_square() && (l - field.one()).is_square())
        .map(j_of_legendre)
        .collect::<Result<BTreeSet<_>>>()?;
    Ok(without_special(js, &field))
}
