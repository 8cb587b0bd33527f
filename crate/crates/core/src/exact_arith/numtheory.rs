use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::field::{FpElem, PrimeField};
use super::rat::{int, Rat};
use crate::error::{Error, Result};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n % 2 == 0 {
        return false;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Primes in the closed range `[lo, hi]`.
pub fn primes_in(lo: u64, hi: u64) -> Vec<u64> {
    (lo..=hi).filter(|&n| is_prime(n)).collect()
}

pub fn mod_pow(base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let m128 = m as u128;
    let mut b = (base % m) as u128;
    let mut acc: u128 = 1;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m128;
        }
        b = b * b % m128;
        exp >>= 1;
    }
    acc as u64
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn mod_inv(a: u64, m: u64) -> Option<u64> {
    let e = ((a % m) as i128).extended_gcd(&(m as i128));
    if e.gcd != 1 {
        return None;
    }
    Some(e.x.rem_euclid(m as i128) as u64)
}

/// Legendre symbol via Euler's criterion.
pub fn legendre_symbol(a: i64, p: u64) -> i8 {
    let r = a.rem_euclid(p as i64) as u64;
    if r == 0 {
        return 0;
    }
    if mod_pow(r, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    }
}

/// `nu_p(x)`; fails for zero.
pub fn padic_valuation(x: &Rat, p: u64) -> Result<i64> {
    if x.is_zero() {
        return Err(Error::ZeroValuation);
    }
    let pb = BigInt::from(p);
    let count = |n: &BigInt| {
        let mut n = n.clone();
        let mut v = 0i64;
        loop {
            let (q, r) = n.div_rem(&pb);
            if !r.is_zero() {
                return v;
            }
            n = q;
            v += 1;
        }
    };
    Ok(count(x.numer()) - count(x.denom()))
}

/// The unique cube root of 2 in `F_p` when `p = 2 mod 3`.
pub fn cube_root_of_2(p: u64) -> Result<FpElem> {
    let field = PrimeField::new(p)?;
    if p % 3 != 2 {
        return Err(Error::ResidueClass {
            p,
            expected: "p = 5, 11 mod 12",
        });
    }
    let e = mod_inv(3, p - 1).expect("gcd(3, p-1) = 1");
    Ok(field.elem(mod_pow(2, e, p)))
}

fn bernoulli_table() -> &'static Mutex<Vec<Rat>> {
    static TABLE: OnceLock<Mutex<Vec<Rat>>> = OnceLock::new();
    TABLE.get_or_init(|| Mutex::new(vec![Rat::one()]))
}

/// `B_k` with `B_1 = -1/2`, from `sum_{j<=n} C(n+1, j) B_j = 0`. Odd indices
/// above one are rejected rather than answered with zero.
pub fn bernoulli(k: u64) -> Result<Rat> {
    if k > 1 && k % 2 == 1 {
        return Err(Error::OddBernoulliIndex(k));
    }
    let mut table = bernoulli_table().lock().unwrap();
    while table.len() <= k as usize {
        let n = table.len();
        // binomials C(n+1, j) for j = 0..n
        let mut binom = BigInt::one();
        let mut sum = Rat::zero();
        for (j, b) in table.iter().enumerate() {
            sum += b * Rat::from_integer(binom.clone());
            binom = binom * BigInt::from(n + 1 - j) / BigInt::from(j + 1);
        }
        table.push(-sum / int(n as i64 + 1));
    }
    Ok(table[k as usize].clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::rat;

    #[test]
    fn bernoulli_values() {
        assert_eq!(bernoulli(0).unwrap(), int(1));
        assert_eq!(bernoulli(1).unwrap(), rat(-1, 2));
        assert_eq!(bernoulli(4).unwrap(), rat(-1, 30));
        assert_eq!(bernoulli(6).unwrap(), rat(1, 42));
        assert_eq!(bernoulli(12).unwrap(), rat(-691, 2730));
        assert_eq!(bernoulli(7), Err(Error::OddBernoulliIndex(7)));
    }

    #[test]
    fn bernoulli_von_staudt_denominators() {
        // p | den(B_{p-1}) for every prime p >= 5
        for p in primes_in(5, 60) {
            let b = bernoulli(p - 1).unwrap();
            assert_eq!(padic_valuation(&b, p).unwrap(), -1, "p = {p}");
        }
    }

    #[test]
    fn legendre_matches_square_table() {
        for p in primes_in(3, 60) {
            let squares: std::collections::HashSet<u64> = (1..p).map(|x| x * x % p).collect();
            for a in 0..p as i64 {
                let expected = if a == 0 {
                    0
                } else if squares.contains(&(a as u64)) {
                    1
                } else {
                    -1
                };
                assert_eq!(legendre_symbol(a, p), expected);
            }
        }
        assert_eq!(legendre_symbol(0, 7), 0);
        assert_eq!(legendre_symbol(1, 7), 1);
        assert_eq!(legendre_symbol(2, 7), 1);
        assert_eq!(legendre_symbol(-1, 7), -1);
    }

    #[test]
    fn valuations() {
        assert_eq!(padic_valuation(&rat(1, 5), 5).unwrap(), -1);
        assert_eq!(padic_valuation(&int(103 * 103 * 3), 103).unwrap(), 2);
        assert_eq!(padic_valuation(&int(0), 5), Err(Error::ZeroValuation));
    }

    #[test]
    fn cube_roots() {
        assert_eq!(cube_root_of_2(5).unwrap().value(), 3);
        assert_eq!(cube_root_of_2(11).unwrap().value(), 7);
        for p in primes_in(5, 500).into_iter().filter(|p| p % 3 == 2) {
            let c = cube_root_of_2(p).unwrap().value();
            let brute: Vec<u64> = (0..p).filter(|x| x * x % p * x % p == 2).collect();
            assert_eq!(brute, vec![c], "p = {p}");
        }
        assert!(cube_root_of_2(7).is_err());
        assert!(cube_root_of_2(13).is_err());
    }

    #[test]
    fn inverses() {
        assert_eq!(mod_inv(3, 7), Some(5));
        assert_eq!(mod_inv(4, 8), None);
        assert_eq!(mod_pow(3, 6, 7), 1);
    }
}
