use num_bigint::BigInt;
use proptest::prelude::*;
use theta_forms::exact_arith::{FieldCtx, Fp2Field, PrimeField, Scalar};
use theta_forms::fppoly::{factor_parts, factor_pattern, FpPoly, Poly};
use theta_forms::modforms::{constructor, weight_indices};
use theta_forms::qseries::QSeries;
use theta_forms::Rat;

const PRIMES: [u64; 6] = [5, 7, 11, 13, 31, 103];

fn rat() -> impl Strategy<Value = Rat> {
    (-1000i64..1000, 1i64..50).prop_map(|(n, d)| Rat::new(BigInt::from(n), BigInt::from(d)))
}

fn fp_poly() -> impl Strategy<Value = FpPoly> {
    (prop::sample::select(&PRIMES[..]), prop::collection::vec(0i64..1000, 1..10)).prop_map(
        |(p, mut c)| {
            let field = PrimeField::new(p).unwrap();
            // force a nonzero leading coefficient
            let last = c.len() - 1;
            c[last] = c[last].rem_euclid(p as i64 - 1) + 1;
            Poly::from_ints(field, &c)
        },
    )
}

proptest! {
    #[test]
    fn fp_ring_axioms(p in prop::sample::select(&PRIMES[..]), a in 0u64..1000, b in 0u64..1000, c in 0u64..1000) {
        let f = PrimeField::new(p).unwrap();
        let (a, b, c) = (f.elem(a), f.elem(b), f.elem(c));
        prop_assert_eq!(a * (b + c), a * b + a * c);
        prop_assert_eq!((a * b) * c, a * (b * c));
        prop_assert_eq!(a + (-a), f.zero());
        if !a.is_zero() {
            prop_assert_eq!(a * a.inv().unwrap(), f.one());
        }
    }

    #[test]
    fn fp2_field_axioms(p in prop::sample::select(&PRIMES[..]), i in 0u64..10_000, j in 0u64..10_000) {
        let f = Fp2Field::new(p).unwrap();
        let q = f.order();
        let (a, b) = (f.elem_at(i % q), f.elem_at(j % q));
        prop_assert_eq!(f.elem_at(f.index_of(&a)), a);
        prop_assert_eq!((a * b).frobenius(), a.frobenius() * b.frobenius());
        prop_assert_eq!(a.pow(q), a);
        if !a.is_zero() {
            prop_assert_eq!(a * a.inv().unwrap(), f.one());
        }
    }

    #[test]
    fn rational_powers_add(c in prop::collection::vec(rat(), 6), r in rat(), s in rat()) {
        let mut coeffs = vec![Rat::from_integer(1.into())];
        coeffs.extend(c);
        let f = QSeries::from_coeffs(coeffs);
        let lhs = f.pow_rational(&r).unwrap().mul_series(&f.pow_rational(&s).unwrap());
        prop_assert_eq!(lhs, f.pow_rational(&(r + s)).unwrap());
    }

    #[test]
    fn constructor_projects(k in (2i64..20).prop_map(|h| 2 * h), c in prop::collection::vec(-50i64..50, 6)) {
        let w = weight_indices(k).unwrap();
        let f = QSeries::from_coeffs(
            (0..w.dim()).map(|i| Rat::from_integer(BigInt::from(c[i % c.len()]))).collect(),
        );
        let g = constructor(&f, k, w.dim() + 4).unwrap();
        prop_assert_eq!(&g.coeffs()[..w.dim()], f.coeffs());
        prop_assert_eq!(constructor(&g, k, w.dim() + 4).unwrap(), g);
    }

    #[test]
    fn factorization_rebuilds_the_polynomial(f in fp_poly()) {
        let mut product = FpPoly::one(*f.field());
        for (_, m, g) in factor_parts(&f).unwrap() {
            product = &product * &g.pow(m);
        }
        prop_assert_eq!(product, f.monic());
        prop_assert_eq!(factor_pattern(&f).unwrap().total_degree(), f.degree().unwrap());
    }

    #[test]
    fn root_count_matches_enumeration(f in fp_poly()) {
        prop_assert_eq!(f.count_roots().unwrap(), f.roots_brute().len());
        prop_assert_eq!(f.lift_to_fp2().unwrap().count_roots().unwrap(), f.roots_in_fp2().unwrap().len());
    }

    #[test]
    fn fp2_splitting_matches_pattern(f in fp_poly()) {
        let pattern = factor_pattern(&f).unwrap();
        match f.splits_over_fp2() {
            Ok(split) => {
                prop_assert!(pattern.is_squarefree());
                prop_assert_eq!(split, pattern.degrees().iter().all(|&d| d <= 2));
                prop_assert_eq!(split, f.factors_over_fp2().unwrap().is_some());
            }
            Err(_) => prop_assert!(!pattern.is_squarefree()),
        }
    }
}
