//! End-to-end acceptance gate. Each check prints one `pass`/`fail` line with
//! its wall time against the allowed bound; the process exits non-zero if
//! any check fails.

use std::collections::BTreeSet;
use std::panic;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use theta_forms::curves::{
    hessian_proposition_check, legendre_4torsion_predicted, legendre_curve, SquareTable,
};
use theta_forms::exact_arith::{is_prime, FieldCtx, PrimeField};
use theta_forms::fppoly::{factor_pattern, reduce_poly, FpPoly};
use theta_forms::harness::{
    cmd_verify_background, cmd_verify_theta_hex, cmd_verify_theta_z, identity_reports,
    prime_lemma_reports, theta_hex_polynomial, theta_z_polynomial, SweepConfig,
    VerificationReport,
};
use theta_forms::hyperpoly::{truncated_poly, vanishing_window, TruncFamily};
use theta_forms::modforms::{basis_coordinates, constructor, RatPoly};
use theta_forms::parallel::Execution;
use theta_forms::qseries::{theta_h, theta_z};
use theta_forms::Rat;

type Check = std::result::Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn ints(v: &[i128]) -> Vec<Rat> {
    v.iter().map(|&x| Rat::from_integer(BigInt::from(x))).collect()
}

fn single_threaded(p_min: u64, p_max: u64) -> SweepConfig {
    SweepConfig {
        jobs: Some(1),
        execution: Execution::Sequential,
        canonical: true,
        ..SweepConfig::range(p_min, p_max)
    }
}

fn all_pass(reports: &[VerificationReport]) -> Check {
    let failed: Vec<String> = reports
        .iter()
        .filter(|r| !r.passed())
        .map(|r| format!("{} p={:?}: {}", r.check_id, r.p, r.witness.clone().unwrap_or_default()))
        .collect();
    ensure!(failed.is_empty(), "{} failures, first: {}", failed.len(), failed[0]);
    let passed = reports
        .iter()
        .filter(|r| r.status == theta_forms::harness::Status::Pass)
        .count();
    Ok(format!("{passed} sub-checks passed"))
}

/// `W0_4` from the Pochhammer products written out by hand.
fn w0_4_by_hand() -> RatPoly {
    let q = |a: i64, b: i64| BigRational::new(a.into(), b.into());
    let (alpha, beta, gamma) = (q(-1, 24), q(7, 24), q(3, 4));
    let mut c = vec![q(1, 1)];
    for m in 0..4i64 {
        let next = c[m as usize].clone() * (alpha.clone() + q(m, 1)) * (beta.clone() + q(m, 1))
            / ((gamma.clone() + q(m, 1)) * q(m + 1, 1))
            * q(1728, 1);
        c.push(next);
    }
    c.reverse();
    RatPoly::new(c)
}

fn k52_example() -> Check {
    let p = 103;
    let f = theta_z(11);
    let coords = basis_coordinates(&f, 52).map_err(|e| e.to_string())?;
    let expected = ints(&[27800506386, -776608440, 2887488, -3118, 1]);
    ensure!(coords.coords == expected, "coordinates {:?}", coords.coords);
    let c = constructor(&f, 52, 7).map_err(|e| e.to_string())?;
    // theta_Z = 1 + 2q + 2q^4 + ..., so q^2 and q^3 vanish
    let head = ints(&[1, 2, 0, 0, 2, 95037348924, 1017845969208768]);
    ensure!(c.coeffs()[..7] == head[..], "expansion {:?}", &c.coeffs()[..7]);
    let (_, poly) = theta_z_polynomial(p).map_err(|e| e.to_string())?;
    // the quotient by Delta^4 E4 sends E4^{1+3l} Delta^{4-l} to j^l
    ensure!(poly == RatPoly::new(expected), "P = {poly}");
    let red = reduce_poly(&poly, p).map_err(|e| e.to_string())?;
    let roots: Vec<u64> = red.roots_brute().iter().map(|r| r.value()).collect();
    ensure!(roots == [58, 89, 93, 97], "roots {roots:?}");
    let w = w0_4_by_hand();
    ensure!(
        w == RatPoly::from_ints(&[-18044467104, -16085280, -17112, -28, 1]),
        "W0_4 = {w}"
    );
    ensure!(w == truncated_poly(TruncFamily::W0, 4), "library W0_4 differs");
    ensure!(reduce_poly(&w, p).unwrap() == red, "P is not W0_4 mod {p}");
    Ok(format!("P = {poly}"))
}

fn p107_example() -> Check {
    let p = 107;
    let c = constructor(&theta_h(21), 108, 11).map_err(|e| e.to_string())?;
    let head = ints(&[1, 6, 0, 6, 6, 0, 0, 12, 0, 6, 1496265431568669020160]);
    ensure!(c.coeffs()[..11] == head[..], "expansion {:?}", &c.coeffs()[..11]);
    let (w, poly) = theta_hex_polynomial(p).map_err(|e| e.to_string())?;
    let expected = RatPoly::from_ints(&[
        -2139590870258478384000,
        1958195577341989938240,
        -97749420668058422880,
        1257337803035458656,
        -6514224685621164,
        16561497291750,
        -22595806434,
        16858944,
        -6474,
        1,
    ]);
    ensure!(poly == expected, "P = {poly}");
    ensure!((w.n, w.b) == (9, 0), "indices {w:?}");
    let red = reduce_poly(&poly, p).unwrap();
    let v = reduce_poly(&truncated_poly(TruncFamily::V0, 9), p).unwrap();
    ensure!(red == v, "P is not V0_9 mod {p}");
    let field = PrimeField::new(p).unwrap();
    let top: Vec<i64> = [-54i64, -32076].iter().map(|x| x.rem_euclid(p as i64)).collect();
    ensure!(
        red.coeff(8).value() as i64 == top[0] && red.coeff(7).value() as i64 == top[1],
        "leading coefficients mod {p}"
    );
    let factors = [
        FpPoly::from_ints(field, &[16, 1]),
        FpPoly::from_ints(field, &[42, 0, 1]),
        FpPoly::from_ints(field, &[42, 6, 1]),
        FpPoly::from_ints(field, &[42, 33, 1]),
        FpPoly::from_ints(field, &[42, 105, 1]),
    ];
    let product = factors.iter().fold(FpPoly::one(field), |acc, f| &acc * f);
    ensure!(product == red, "product of displayed factors differs");
    let found = red.factors_over_fp2().unwrap().ok_or("not split over F_p^2")?;
    let found: BTreeSet<Vec<u64>> = found
        .iter()
        .map(|f| f.coeffs().iter().map(|c| c.value()).collect())
        .collect();
    let displayed: BTreeSet<Vec<u64>> = factors
        .iter()
        .map(|f| f.coeffs().iter().map(|c| c.value()).collect())
        .collect();
    ensure!(found == displayed, "factors {found:?}");
    for f in &factors[1..] {
        ensure!(f.count_roots().unwrap() == 0, "{f} is reducible");
    }
    let pattern = factor_pattern(&red).unwrap();
    ensure!(pattern.to_string() == "{1:×1, 2:×4}", "pattern {pattern}");
    Ok(format!("pattern {pattern}"))
}

fn theta_z_sweep() -> Check {
    let reports = cmd_verify_theta_z(&single_threaded(7, 199)).map_err(|e| e.to_string())?;
    let primes: BTreeSet<u64> = reports
        .iter()
        .filter(|r| r.check_id == "theta_z.curve_set" && r.passed())
        .filter_map(|r| r.p)
        .collect();
    let want: BTreeSet<u64> = (7..=199).filter(|&p| is_prime(p) && p % 4 == 3).collect();
    ensure!(primes == want, "curve set checked at {primes:?}");
    all_pass(&reports)
}

fn theta_hex_sweep() -> Check {
    let reports = cmd_verify_theta_hex(&single_threaded(5, 197)).map_err(|e| e.to_string())?;
    let n = reports.iter().filter(|r| r.check_id == "theta_hex.zero_set").count();
    let want = (5..=197).filter(|&p| is_prime(p) && matches!(p % 12, 5 | 11)).count();
    ensure!(n == want, "zero set checked at {n} primes, expected {want}");
    all_pass(&reports)
}

fn background_sweep() -> Check {
    let reports = cmd_verify_background(&single_threaded(5, 199)).map_err(|e| e.to_string())?;
    let oracle = reports
        .iter()
        .filter(|r| r.check_id == "background.supersingular")
        .filter(|r| r.status == theta_forms::harness::Status::Pass)
        .count();
    let want = (5..=103).filter(|&p| is_prime(p)).count();
    ensure!(oracle == want, "supersingular oracle ran at {oracle} primes, expected {want}");
    all_pass(&reports)
}

fn series_identities() -> Check {
    let reports = identity_reports(40);
    ensure!(reports.len() == 10, "{} identities", reports.len());
    all_pass(&reports)
}

fn gp_suite() -> Check {
    let cfg = SweepConfig::default();
    let mut reports = Vec::new();
    for p in (7..=199).filter(|&p| is_prime(p) && p % 4 == 3) {
        let r: Vec<_> = prime_lemma_reports(p, &cfg)
            .into_iter()
            .filter(|r| r.check_id.starts_with("gp."))
            .collect();
        ensure!(r.len() == 4, "p = {p}: {} G_p checks", r.len());
        reports.extend(r);
    }
    all_pass(&reports)
}

fn four_torsion_criterion() -> Check {
    let mut curves = 0;
    for p in [7u64, 11, 19, 23, 31] {
        let field = PrimeField::new(p).unwrap();
        let table = SquareTable::new(field);
        for l in field.elements().skip(2) {
            let brute = legendre_curve(&field, l).unwrap().n_torsion_structure(4, &table);
            let predicted = legendre_4torsion_predicted(l).unwrap();
            ensure!(brute == predicted, "p = {p}, lambda = {l}: {brute} vs {predicted}");
            curves += 1;
        }
    }
    Ok(format!("{curves} curves"))
}

fn hessian() -> Check {
    for p in [5u64, 11, 17, 23, 29, 41, 53, 59, 107] {
        let r = hessian_proposition_check(p, 2).map_err(|e| e.to_string())?;
        ensure!(r.passed(), "p = {p}: {r:?}");
        ensure!(r.sampled_torsion.len() == 2, "p = {p}: no sampled curves");
    }
    Ok("9 primes".into())
}

/// `v_p(prod_{i<m} (x + i step))`; a zero factor counts as infinite.
fn v_rising(x: i64, step: i64, m: usize, p: u64) -> i64 {
    let p = p as i128;
    (0..m as i128)
        .map(|i| {
            let mut t = x as i128 + i * step as i128;
            if t == 0 {
                return 1000;
            }
            let mut e = 0;
            while t % p == 0 {
                t /= p;
                e += 1;
            }
            e
        })
        .sum()
}

fn vanishing_windows() -> Check {
    // (family, numerators over a common denominator d for alpha, beta, gamma)
    let families = [
        (TruncFamily::W0, 24, [-1, 7, 18]),
        (TruncFamily::W1, 24, [11, 19, 18]),
        (TruncFamily::V0, 12, [-1, 3, 8]),
        (TruncFamily::V1, 12, [5, 9, 8]),
    ];
    let mut checked = 0;
    for (fam, d, [a, b, g]) in families {
        let primes: Vec<u64> = (5..)
            .filter(|&p| is_prime(p) && vanishing_window(fam, p).is_ok())
            .take(8)
            .collect();
        for p in primes {
            let win = vanishing_window(fam, p).unwrap();
            ensure!(win.ok, "{fam} at p = {p}: {win:?}");
            // (x/d)_m = prod (x + i d) / d^m with p not dividing d
            for m in win.lo + 1..win.hi {
                let val = v_rising(a, d, m, p) + v_rising(b, d, m, p)
                    - v_rising(g, d, m, p)
                    - v_rising(1, 1, m, p);
                ensure!(val >= 1, "{fam} at p = {p}: v_p(c_{m}) = {val}");
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} family/prime pairs"))
}

fn main() -> ExitCode {
    let checks: [(&str, u64, fn() -> Check); 10] = [
        ("k = 52 theta_Z example", 1, k52_example),
        ("p = 107 theta_H example", 5, p107_example),
        ("theta_Z sweep, p = 3 mod 4, 7..199", 300, theta_z_sweep),
        ("theta_H sweep, p = 5, 11 mod 12, 5..197", 300, theta_hex_sweep),
        ("Eisenstein background sweep, 5..199", 600, background_sweep),
        ("series identities to order 40", 60, series_identities),
        ("G_p properties, p = 3 mod 4 up to 199", 120, gp_suite),
        ("Legendre 4-torsion criterion", 60, four_torsion_criterion),
        ("Hessian curves and 3-torsion", 120, hessian),
        ("vanishing windows, 8 primes per family", 60, vanishing_windows),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failures = 0;
    for (name, bound, check) in checks {
        let start = Instant::now();
        let result = panic::catch_unwind(check).unwrap_or_else(|e| {
            Err(e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into()))
        });
        let elapsed = start.elapsed();
        let result = match result {
            Ok(_) if elapsed > Duration::from_secs(bound) => {
                Err(format!("took {:.2} s, bound {bound} s", elapsed.as_secs_f64()))
            }
            r => r,
        };
        let secs = elapsed.as_secs_f64();
        match result {
            Ok(summary) => println!("pass  {name}  ({secs:.2} s < {bound} s)  {summary}"),
            Err(why) => {
                failures += 1;
                println!("FAIL  {name}  ({secs:.2} s)  {why}");
            }
        }
    }
    println!("acceptance: {} of 10 passed", 10 - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
