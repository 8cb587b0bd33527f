use std::collections::BTreeSet;
use std::fmt::Display;

use super::{timed, Outcome, SweepConfig, VerificationReport};
use crate::curves::{
    eq12_set, hessian_proposition_check, hex_zero_set, lambdas_with_small_4_torsion,
    legendre_4torsion_predicted, legendre_curve, supersingular_j_set, thmc_curve_set,
    weierstrass_full2_no4_set, SquareTable,
};
use crate::error::Result;
use crate::exact_arith::{
    cube_root_of_2, int, mod_pow, FieldCtx, Fp2Field, PrimeField, Scalar,
};
use crate::fppoly::{factor_pattern, reduce_poly, FpPoly, Poly};
use crate::hyperpoly::identities::all_identities;
use crate::hyperpoly::{
    cube_root_residue_holds, degenerate_constant, gp_poly, gp_power_sum_prediction, gp_root_set,
    truncated_poly, vanishing_window, TruncFamily,
};
use crate::modforms::{check_lemma_almostzero, pf_polynomial, weight_indices, RatPoly, WeightIndices};
use crate::qseries::{eisenstein, theta_h, theta_z, QSeries};

fn show_set<T: Display>(s: &BTreeSet<T>) -> String {
    let items: Vec<String> = s.iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", items.join(", "))
}

fn set_outcome<T: Ord + Display + Clone>(got: &BTreeSet<T>, expected: &BTreeSet<T>) -> Outcome {
    if got == expected {
        return Outcome::Pass(Some(show_set(got)));
    }
    let missing: BTreeSet<T> = expected.difference(got).cloned().collect();
    let extra: BTreeSet<T> = got.difference(expected).cloned().collect();
    Outcome::Fail(format!(
        "roots {} vs expected {}; missing {}, extra {}",
        show_set(got),
        show_set(expected),
        show_set(&missing),
        show_set(&extra)
    ))
}

/// `P[C_k theta_Z]` with `k = (p+1)/2`.
pub fn theta_z_polynomial(p: u64) -> Result<(WeightIndices, RatPoly)> {
    let k = (p as i64 + 1) / 2;
    let w = weight_indices(k)?;
    Ok((w, pf_polynomial(&theta_z(w.dim()), k)?))
}

/// `P[C_k theta_H]` with `k = p + 1`.
pub fn theta_hex_polynomial(p: u64) -> Result<(WeightIndices, RatPoly)> {
    let k = p as i64 + 1;
    let w = weight_indices(k)?;
    Ok((w, pf_polynomial(&theta_h(w.dim()), k)?))
}

/// Compares the reductions of `poly` and `expected` coefficient by
/// coefficient.
fn congruence(poly: &RatPoly, expected: &RatPoly, p: u64) -> Result<Outcome> {
    let a = reduce_poly(poly, p)?;
    let b = reduce_poly(expected, p)?;
    let n = a.coeffs().len().max(b.coeffs().len());
    for i in (0..n).rev() {
        if a.coeff(i) != b.coeff(i) {
            return Ok(Outcome::Fail(format!(
                "coefficient of j^{i}: {} vs {} mod {p}",
                a.coeff(i),
                b.coeff(i)
            )));
        }
    }
    Ok(Outcome::Pass(None))
}

fn poly_from(field: PrimeField, c: &[i64]) -> FpPoly {
    Poly::from_ints(field, c)
}

fn poly_pow(f: &FpPoly, e: usize) -> FpPoly {
    f.pow(e as u32)
}

/// How a transformed polynomial compares with its predicted closed form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TransformOutcome {
    Exact,
    /// Equal after multiplying the prediction by the given constant.
    Scaled(u64),
    Mismatch,
}

fn compare(lhs: &FpPoly, rhs: &FpPoly) -> TransformOutcome {
    if lhs == rhs {
        return TransformOutcome::Exact;
    }
    match (lhs.leading(), rhs.leading(), lhs.degree() == rhs.degree()) {
        (Some(a), Some(b), true) => {
            let c = a * b.inv().expect("nonzero");
            if *lhs == rhs.scale(c) {
                TransformOutcome::Scaled(c.value())
            } else {
                TransformOutcome::Mismatch
            }
        }
        _ => TransformOutcome::Mismatch,
    }
}

/// Substituting `j = 256 (1 - l + l^2)^3 / (l^2 (l - 1)^2)` into `P` and
/// clearing denominators:
/// `sum c_i 256^i f^{3i} g^{n-i} * f^a * h^b = 256^n G_p(l)` with
/// `f = 1 - l + l^2`, `g = l^2 (l - 1)^2`, `h = 1 - 3l/2 - 3l^2/2 + l^3`.
pub fn lambda_transform(p: u64, poly: &FpPoly, w: &WeightIndices) -> Result<TransformOutcome> {
    let field = PrimeField::new(p)?;
    let f = poly_from(field, &[1, -1, 1]);
    let g = poly_from(field, &[0, 0, 1, -2, 1]);
    let half = field.from_int(2).inv().expect("p odd");
    let three_halves = field.from_int(3) * half;
    let h = Poly::new(field, vec![field.one(), -three_halves, -three_halves, field.one()]);
    let f3 = poly_pow(&f, 3);
    let c256 = field.from_int(256);
    let mut lhs = Poly::zero(field);
    for i in 0..=w.n {
        let c = poly.coeff(i) * crate::fppoly::elem_pow(c256, i as u128);
        if c.value() == 0 {
            continue;
        }
        let term = (&poly_pow(&f3, i) * &poly_pow(&g, w.n - i)).scale(c);
        lhs = &lhs + &term;
    }
    let lhs = &(&lhs * &poly_pow(&f, w.a as usize)) * &poly_pow(&h, w.b as usize);
    let rhs = gp_poly(p)?.scale(crate::fppoly::elem_pow(c256, w.n as u128));
    Ok(compare(&lhs, &rhs))
}

/// Substituting `j = 6912 (2y - 1)^3 / (y (y + 4)^3)` into `P` and clearing
/// denominators: `sum c_i 6912^i (2y-1)^{3i} (y (y+4)^3)^{n-i}` equals
/// `12^{(p+1)/4} (y^{(p+1)/3} + 2^{1/3})` for `p = 11 mod 12`, and
/// `12^{(p-5)/4} (y^{(p+1)/3} + 2^{1/3}) / (y^2 - 10y - 2)` for `p = 5 mod 12`.
pub fn hex_transform(p: u64, poly: &FpPoly, w: &WeightIndices) -> Result<TransformOutcome> {
    let field = PrimeField::new(p)?;
    let u = &poly_from(field, &[0, 1]) * &poly_pow(&poly_from(field, &[4, 1]), 3);
    let v = poly_pow(&poly_from(field, &[-1, 2]), 3);
    let c6912 = field.from_int(6912);
    let mut lhs = Poly::zero(field);
    for i in 0..=w.n {
        let c = poly.coeff(i) * crate::fppoly::elem_pow(c6912, i as u128);
        if c.value() == 0 {
            continue;
        }
        lhs = &lhs + &(&poly_pow(&v, i) * &poly_pow(&u, w.n - i)).scale(c);
    }
    let r = cube_root_of_2(p)?;
    let e = ((p + 1) / 3) as usize;
    let target = &Poly::monomial(field, field.one(), e) + &Poly::new(field, vec![r]);
    let (lhs, constant) = if p % 12 == 11 {
        (lhs, mod_pow(12, (p + 1) / 4, p))
    } else {
        (&lhs * &poly_from(field, &[-2, -10, 1]), mod_pow(12, (p - 5) / 4, p))
    };
    Ok(compare(&lhs, &target.scale(field.elem(constant))))
}

fn transform_outcome(t: TransformOutcome) -> Outcome {
    match t {
        TransformOutcome::Exact => Outcome::Pass(None),
        TransformOutcome::Scaled(c) => {
            Outcome::Fail(format!("agrees only up to the constant factor {c}"))
        }
        TransformOutcome::Mismatch => Outcome::Fail("polynomials differ".into()),
    }
}

pub fn theta_z_reports(p: u64, cfg: &SweepConfig) -> Vec<VerificationReport> {
    let k = (p + 1) / 2;
    if p % 4 == 1 {
        return vec![timed("theta_z", Some(p), Some(k), || {
            Ok(Outcome::Skipped(format!(
                "p = 1 mod 4: weight (p+1)/2 = {k} is odd, no theta form in this regime"
            )))
        })];
    }
    let computed = theta_z_polynomial(p);
    let (w, poly) = match computed {
        Ok(x) => x,
        Err(e) => {
            return vec![timed("theta_z.congruence", Some(p), Some(k), || Err(e))];
        }
    };
    let reduced = reduce_poly(&poly, p);
    let mut out = Vec::new();
    out.push(timed("theta_z.congruence", Some(p), Some(k), || {
        congruence(&poly, &truncated_poly(TruncFamily::select('W', w.b), w.n), p)
    }));
    out.push(timed("theta_z.linear_split", Some(p), Some(k), || {
        let f = reduced.clone()?;
        Ok(Outcome::from_bool(f.splits_into_linears()?, || {
            format!("factor pattern {}", factor_pattern(&f).map(|x| x.to_string()).unwrap_or_default())
        }))
    }));
    out.push(timed("theta_z.curve_set", Some(p), Some(k), || {
        let roots = reduced.clone()?.roots_brute();
        let curves = thmc_curve_set(p)?;
        if p <= cfg.curve_oracle_max {
            let sweep = weierstrass_full2_no4_set(p)?;
            if sweep != curves {
                return Ok(Outcome::Fail(format!(
                    "Legendre sweep {} disagrees with Weierstrass sweep {}",
                    show_set(&curves),
                    show_set(&sweep)
                )));
            }
        }
        Ok(set_outcome(&roots, &curves))
    }));
    out.push(timed("theta_z.legendre_j_set", Some(p), Some(k), || {
        let roots = reduced.clone()?.roots_brute();
        Ok(set_outcome(&roots, &eq12_set(p)?))
    }));
    out.push(timed("theta_z.lambda_transform", Some(p), Some(k), || {
        Ok(transform_outcome(lambda_transform(p, &reduced.clone()?, &w)?))
    }));
    out
}

pub fn theta_hex_reports(p: u64, cfg: &SweepConfig) -> Vec<VerificationReport> {
    let k = p + 1;
    if p % 12 != 5 && p % 12 != 11 {
        return vec![timed("theta_hex", Some(p), Some(k), || {
            Ok(Outcome::Skipped(format!(
                "p = {} mod 12: outside the classes 5, 11 mod 12",
                p % 12
            )))
        })];
    }
    let (w, poly) = match theta_hex_polynomial(p) {
        Ok(x) => x,
        Err(e) => return vec![timed("theta_hex.congruence", Some(p), Some(k), || Err(e))],
    };
    let reduced = reduce_poly(&poly, p);
    let mut out = Vec::new();
    out.push(timed("theta_hex.congruence", Some(p), Some(k), || {
        congruence(&poly, &truncated_poly(TruncFamily::select('V', w.b), w.n), p)
    }));
    out.push(timed("theta_hex.fp2_split", Some(p), Some(k), || {
        let f = reduced.clone()?;
        Ok(Outcome::from_bool(f.splits_over_fp2()?, || {
            format!("factor pattern {}", factor_pattern(&f).map(|x| x.to_string()).unwrap_or_default())
        }))
    }));
    out.push(timed("theta_hex.factor_pattern", Some(p), Some(k), || {
        let f = reduced.clone()?;
        let pattern = factor_pattern(&f)?;
        let linear = pattern.count_of_degree(1);
        let want_linear = w.n % 2;
        let degrees_ok = pattern.degrees().iter().all(|&d| d <= 2) && pattern.is_squarefree();
        let roots = f.roots_brute();
        let minus_1728 = PrimeField::new(p)?.from_int(-1728);
        let root_ok = roots.iter().all(|&r| r == minus_1728);
        if degrees_ok && linear == want_linear && root_ok {
            Ok(Outcome::Pass(Some(pattern.to_string())))
        } else {
            Ok(Outcome::Fail(format!(
                "pattern {pattern}, n = {}, F_p roots {}",
                w.n,
                show_set(&roots)
            )))
        }
    }));
    out.push(timed("theta_hex.zero_set", Some(p), Some(k), || {
        let roots = reduced.clone()?.roots_in_fp2()?;
        let ext = Fp2Field::new(p)?;
        let target = ext.from_int(1728 * 1728);
        if let Some(b) = roots.iter().find(|b| b.frobenius() * **b != target) {
            return Ok(Outcome::Fail(format!("root {b} has b^(p+1) != 1728^2")));
        }
        Ok(set_outcome(&roots, &hex_zero_set(p)?))
    }));
    out.push(timed("theta_hex.hessian", Some(p), Some(k), || {
        let r = hessian_proposition_check(p, cfg.hessian_samples)?;
        let torsion: Vec<String> = r.sampled_torsion.iter().map(|t| t.to_string()).collect();
        let summary = format!(
            "{} j-values, 3-torsion {}",
            r.hessian_set_size,
            torsion.join(" ")
        );
        Ok(if r.passed() {
            Outcome::Pass(Some(summary))
        } else {
            Outcome::Fail(format!(
                "Hessian set size {} vs zero set size {}; equal = {}; {summary}",
                r.hessian_set_size, r.hex_set_size, r.sets_equal
            ))
        })
    }));
    out.push(timed("theta_hex.y_transform", Some(p), Some(k), || {
        Ok(transform_outcome(hex_transform(p, &reduced.clone()?, &w)?))
    }));
    out
}

pub fn background_reports(p: u64, cfg: &SweepConfig) -> Vec<VerificationReport> {
    let k = p - 1;
    let setup = (|| -> Result<(WeightIndices, RatPoly)> {
        let w = weight_indices(k as i64)?;
        let e = eisenstein(k, w.dim())?;
        Ok((w, pf_polynomial(&e, k as i64)?))
    })();
    let (w, poly) = match setup {
        Ok(x) => x,
        Err(e) => return vec![timed("background.congruence", Some(p), Some(k), || Err(e))],
    };
    let reduced = reduce_poly(&poly, p);
    let mut out = Vec::new();
    out.push(timed("background.congruence", Some(p), Some(k), || {
        congruence(&poly, &truncated_poly(TruncFamily::select('U', w.b), w.n), p)
    }));
    out.push(timed("background.factor_degrees", Some(p), Some(k), || {
        let pattern = factor_pattern(&reduced.clone()?)?;
        let ok = pattern.degrees().iter().all(|&d| d <= 2) && pattern.is_squarefree();
        Ok(if ok {
            Outcome::Pass(Some(pattern.to_string()))
        } else {
            Outcome::Fail(format!("factor pattern {pattern}"))
        })
    }));
    out.push(timed("background.supersingular", Some(p), Some(k), || {
        if p > cfg.supersingular_oracle_max {
            return Ok(Outcome::Skipped(format!(
                "exhaustive supersingular sweep limited to p <= {}",
                cfg.supersingular_oracle_max
            )));
        }
        let ext = Fp2Field::new(p)?;
        let roots = reduced.clone()?.roots_in_fp2()?;
        let mut ss = supersingular_j_set(p)?;
        ss.remove(&ext.zero());
        ss.remove(&ext.from_int(1728));
        Ok(set_outcome(&roots, &ss))
    }));
    out.push(timed("background.extremal", Some(p), Some(k), || {
        let one = QSeries::constant(int(1), w.dim());
        congruence(&pf_polynomial(&one, k as i64)?, &poly, p)
    }));
    out
}

/// Every series identity at the given order, one report each.
pub fn identity_reports(order: usize) -> Vec<VerificationReport> {
    match all_identities(order) {
        Ok(checks) => checks
            .into_iter()
            .map(|c| {
                timed(&format!("identity.{}", c.name), None, None, || {
                    Ok(match c.mismatch {
                        None => Outcome::Pass(Some(format!("order {order}"))),
                        Some(e) => Outcome::Fail(format!("first mismatch at exponent {e}")),
                    })
                })
            })
            .collect(),
        Err(e) => vec![timed("identity", None, None, || Err(e))],
    }
}

fn gp_reports(p: u64, out: &mut Vec<VerificationReport>) {
    let gp = gp_poly(p);
    out.push(timed("gp.reciprocal", Some(p), None, || {
        Ok(Outcome::from_bool(gp.clone()?.is_reciprocal()?, || {
            format!("G_p = {} is not palindromic", gp.clone().unwrap())
        }))
    }));
    out.push(timed("gp.root_formula", Some(p), None, || {
        let g = gp.clone()?;
        let roots = gp_root_set(p)?;
        let product = Poly::from_roots(*g.field(), &roots);
        Ok(Outcome::from_bool(product == g, || {
            format!("G_p = {g}, product over predicted roots = {product}")
        }))
    }));
    out.push(timed("gp.power_sums", Some(p), None, || {
        let g = gp.clone()?;
        let v = ((p + 1) / 4) as usize;
        let got = g.power_sums(v)?;
        let want = gp_power_sum_prediction(p, v)?;
        Ok(match (0..=v).find(|&i| got[i] != want[i]) {
            None => Outcome::Pass(None),
            Some(i) => Outcome::Fail(format!("S_{i} = {} vs {}", got[i], want[i])),
        })
    }));
    out.push(timed("gp.small_4_torsion", Some(p), None, || {
        let g = gp.clone()?;
        let lambdas = lambdas_with_small_4_torsion(p)?;
        let roots = g.roots_brute();
        if g.degree() != Some(lambdas.len()) {
            return Ok(Outcome::Fail(format!(
                "deg G_p = {:?} but {} curves",
                g.degree(),
                lambdas.len()
            )));
        }
        Ok(set_outcome(&roots, &lambdas))
    }));
    out.push(timed("legendre.four_torsion", Some(p), None, || {
        let field = PrimeField::new(p)?;
        let table = SquareTable::new(field);
        for l in field.elements().skip(2) {
            let brute = legendre_curve(&field, l)?.n_torsion_structure(4, &table);
            let predicted = legendre_4torsion_predicted(l)?;
            if brute != predicted {
                return Ok(Outcome::Fail(format!(
                    "lambda = {l}: brute force {brute}, predicted {predicted}"
                )));
            }
        }
        Ok(Outcome::Pass(None))
    }));
}

/// The `F_p` lemmas at one prime: `G_p` properties and the Legendre
/// 4-torsion criterion (`p = 3 mod 4`), vanishing windows (admissible
/// families), degenerate-evaluation constants (`p = 5, 11 mod 12`) and the
/// mod-p rigidity of forms with vanishing leading coefficients.
pub fn prime_lemma_reports(p: u64, _cfg: &SweepConfig) -> Vec<VerificationReport> {
    let mut out = Vec::new();
    if p % 4 == 3 {
        gp_reports(p, &mut out);
    }
    for fam in [TruncFamily::W0, TruncFamily::W1, TruncFamily::V0, TruncFamily::V1] {
        if let Ok(win) = vanishing_window(fam, p) {
            out.push(timed(&format!("window.{fam}"), Some(p), None, || {
                Ok(match win.first_failure {
                    None => Outcome::Pass(Some(format!("({}, {})", win.lo, win.hi))),
                    Some(m) => Outcome::Fail(format!(
                        "window ({}, {}): c_{m} is a p-adic unit",
                        win.lo, win.hi
                    )),
                })
            }));
        }
    }
    if p % 12 == 5 || p % 12 == 11 {
        out.push(timed("degenerate.constant", Some(p), None, || {
            let c = degenerate_constant(p)?;
            Ok(Outcome::from_bool(c == (p - 18 % p) % p, || {
                format!("scaled coefficient is {c}, expected -18 mod {p}")
            }))
        }));
        out.push(timed("degenerate.cube_root", Some(p), None, || {
            Ok(Outcome::from_bool(cube_root_residue_holds(p)?, || {
                "power of -4 is not the cube root of 2".into()
            }))
        }));
    }
    out.push(timed("modforms.almost_zero", Some(p), Some(p - 1), || {
        Ok(Outcome::from_bool(
            check_lemma_almostzero(p as i64 - 1, p, 3, p)?,
            || "a form with p-divisible leading coefficients is nonzero mod p".into(),
        ))
    }));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn transforms_hold_at_small_primes() {
        for p in [7u64, 11, 19, 23, 31, 43, 47] {
            let (w, poly) = theta_z_polynomial(p).unwrap();
            let f = reduce_poly(&poly, p).unwrap();
            assert_eq!(lambda_transform(p, &f, &w).unwrap(), TransformOutcome::Exact, "p = {p}");
        }
        for p in [5u64, 11, 17, 23, 29, 41, 47, 53] {
            let (w, poly) = theta_hex_polynomial(p).unwrap();
            let f = reduce_poly(&poly, p).unwrap();
            assert_eq!(hex_transform(p, &f, &w).unwrap(), TransformOutcome::Exact, "p = {p}");
        }
    }

    #[test]
    fn lemma_reports_pass() {
        let cfg = SweepConfig::default();
        for p in [5u64, 7, 11, 17, 23, 47] {
            for r in prime_lemma_reports(p, &cfg) {
                assert!(r.passed(), "{r:?}");
            }
        }
    }

    #[test]
    fn skipped_classes_carry_reasons() {
        let cfg = SweepConfig::default();
        let r = theta_z_reports(13, &cfg);
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].status, super::super::Status::Skipped);
        assert!(r[0].witness.as_ref().unwrap().contains("odd"));
        assert_eq!(theta_hex_reports(13, &cfg)[0].status, super::super::Status::Skipped);
    }
}
