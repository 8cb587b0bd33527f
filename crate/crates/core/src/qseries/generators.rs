use num_bigint::BigInt;
use num_traits::{One, Pow, Zero};

use super::QSeries;
use crate::error::{Error, Result};
use crate::exact_arith::{bernoulli, int, Rat};

/// `E_k = 1 - (2k/B_k) sum sigma_{k-1}(n) q^n` with `N` coefficients.
pub fn eisenstein(k: u64, n: usize) -> Result<QSeries<Rat>> {
    if k < 4 || k % 2 == 1 {
        return Err(Error::InvalidWeight(k as i64));
    }
    let factor = -int(2 * k as i64) / bernoulli(k)?;
    let mut coeffs = vec![Rat::zero(); n.max(1)];
    coeffs[0] = Rat::one();
    for (m, c) in coeffs.iter_mut().enumerate().skip(1) {
        *c = &factor * Rat::from_integer(divisor_power_sum(m as u64, k as u32 - 1));
    }
    Ok(QSeries::from_coeffs(coeffs))
}

fn divisor_power_sum(n: u64, e: u32) -> BigInt {
    let mut total = BigInt::zero();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            total += BigInt::from(d).pow(e);
            let other = n / d;
            if other != d {
                total += BigInt::from(other).pow(e);
            }
        }
        d += 1;
    }
    total
}

pub fn e4(n: usize) -> QSeries<Rat> {
    eisenstein(4, n).expect("weight 4 is valid")
}

pub fn e6(n: usize) -> QSeries<Rat> {
    eisenstein(6, n).expect("weight 6 is valid")
}

/// `prod_{n >= 1} (1 - q^{m n})` with `N` coefficients.
pub fn euler_product(m: usize, n: usize) -> QSeries<Rat> {
    assert!(m >= 1);
    let n = n.max(1);
    let mut c: Vec<i64> = vec![0; n];
    c[0] = 1;
    let mut step = m;
    while step < n {
        for i in (step..n).rev() {
            c[i] -= c[i - step];
        }
        step += m;
    }
    QSeries::from_coeffs(c.into_iter().map(int).collect())
}

/// `Delta = q prod (1 - q^n)^24`, coefficients of `q^0 .. q^{N-1}`.
pub fn delta(n: usize) -> QSeries<Rat> {
    let n = n.max(1);
    let body = euler_product(1, n).pow(24);
    let mut coeffs = vec![Rat::zero()];
    coeffs.extend(body.into_coeffs().into_iter().take(n - 1));
    QSeries::from_coeffs(coeffs)
}

/// `(E_4^3 - E_6^2) / 1728`.
pub fn delta_from_eisenstein(n: usize) -> QSeries<Rat> {
    let a = e4(n).pow(3);
    let b = e6(n).pow(2);
    (&a - &b).scale(&(Rat::one() / int(1728)))
}

/// `j = E_4^3 / Delta` with `N` coefficients starting at `q^{-1}`.
pub fn j_invariant(n: usize) -> QSeries<Rat> {
    let n = n.max(1);
    let num = e4(n + 1).pow(3);
    let den = delta(n + 1);
    num.div_series(&den)
        .expect("Delta has leading coefficient 1")
        .truncate(n as i64 - 1)
}

/// `1/j = Delta / E_4^3`, an ordinary series with zero constant term.
pub fn inverse_j(n: usize) -> QSeries<Rat> {
    let num = delta(n);
    let den = e4(n).pow(3);
    num.div_series(&den).expect("E_4 is a unit")
}

/// `sum_{n in Z} q^{n^2}`.
pub fn theta_z(n: usize) -> QSeries<Rat> {
    let n = n.max(1);
    let mut c = vec![0i64; n];
    c[0] = 1;
    let mut m = 1usize;
    while m * m < n {
        c[m * m] += 2;
        m += 1;
    }
    QSeries::from_coeffs(c.into_iter().map(int).collect())
}

/// `sum_{m, n} q^{m^2 + mn + n^2}` by enumerating the lattice over a box that
/// covers every vector of norm below `N`.
pub fn theta_h(n: usize) -> QSeries<Rat> {
    let n = n.max(1);
    // m^2 + mn + n^2 >= (3/4) max(|m|,|n|)^2
    let bound = ((4.0 * n as f64 / 3.0).sqrt().ceil() as i64) + 1;
    let mut c = vec![0i64; n];
    for a in -bound..=bound {
        for b in -bound..=bound {
            let norm = a * a + a * b + b * b;
            if (norm as usize) < n {
                c[norm as usize] += 1;
            }
        }
    }
    QSeries::from_coeffs(c.into_iter().map(int).collect())
}

/// `eta(tau) = q^{1/24} prod (1 - q^n)`; the fractional prefactor is kept as
/// an exponent tag in 24ths.
#[derive(Debug, Clone, PartialEq)]
pub struct EtaSeries {
    pub shift_24ths: i64,
    pub series: QSeries<Rat>,
}

pub fn eta(n: usize) -> EtaSeries {
    EtaSeries {
        shift_24ths: 1,
        series: euler_product(1, n),
    }
}

/// `prod_m eta(m tau)^{e_m}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EtaQuotient {
    pub factors: Vec<(usize, i64)>,
}

impl EtaQuotient {
    pub fn new(factors: &[(usize, i64)]) -> Self {
        Self {
            factors: factors.to_vec(),
        }
    }

    pub fn shift_24ths(&self) -> i64 {
        self.factors.iter().map(|&(m, e)| m as i64 * e).sum()
    }

    /// Expansion with `N` coefficients; only quotients with an integral
    /// total exponent are accepted.
    pub fn series(&self, n: usize) -> Result<QSeries<Rat>> {
        let s = self.shift_24ths();
        if s % 24 != 0 {
            return Err(Error::FractionalShift(s));
        }
        let mut acc = QSeries::constant(Rat::one(), n);
        for &(m, e) in &self.factors {
            let base = euler_product(m, n).pow(e.unsigned_abs() as u32);
            let base = if e < 0 { base.invert_unit()? } else { base };
            acc = &acc * &base;
        }
        Ok(QSeries::with_shift(acc.into_coeffs(), s / 24))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(s: &QSeries<Rat>) -> Vec<i64> {
        s.coeffs()
            .iter()
            .map(|c| {
                assert!(c.is_integer());
                i64::try_from(c.to_integer()).unwrap()
            })
            .collect()
    }

    #[test]
    fn eisenstein_low_terms() {
        assert_eq!(ints(&eisenstein(4, 3).unwrap()), vec![1, 240, 2160]);
        assert_eq!(ints(&eisenstein(6, 3).unwrap()), vec![1, -504, -16632]);
        for k in (4..40).step_by(2) {
            assert_eq!(eisenstein(k, 2).unwrap().coeffs()[0], int(1));
        }
        assert!(eisenstein(5, 3).is_err());
        assert!(eisenstein(2, 3).is_err());
    }

    #[test]
    fn delta_and_j() {
        assert_eq!(ints(&delta(4)), vec![0, 1, -24, 252]);
        let j = j_invariant(3);
        assert_eq!(j.shift(), -1);
        assert_eq!(ints(&j), vec![1, 744, 196884]);
        assert_eq!(delta(50), delta_from_eisenstein(50));
    }

    #[test]
    fn delta_times_j_is_e4_cubed() {
        let n = 30;
        let prod = &delta(n + 1) * &j_invariant(n + 1);
        let e = e4(n).pow(3);
        assert_eq!(prod.first_mismatch(&e, 0, n as i64 - 1).unwrap(), None);
    }

    #[test]
    fn theta_series() {
        assert_eq!(ints(&theta_z(5)), vec![1, 2, 0, 0, 2]);
        assert_eq!(ints(&theta_h(5)), vec![1, 6, 0, 6, 6]);
        assert_eq!(ints(&theta_h(11))[7], 12);
        assert_eq!(ints(&theta_h(11))[9], 6);
    }

    #[test]
    fn theta_h_box_is_large_enough() {
        // compare against a deliberately oversized box
        let n = 60;
        let mut c = vec![0i64; n];
        for a in -40i64..=40 {
            for b in -40i64..=40 {
                let norm = (a * a + a * b + b * b) as usize;
                if norm < n {
                    c[norm] += 1;
                }
            }
        }
        assert_eq!(ints(&theta_h(n)), c);
    }

    #[test]
    fn eta_product() {
        let e = eta(4);
        assert_eq!(e.shift_24ths, 1);
        assert_eq!(ints(&e.series), vec![1, -1, -1, 0]);
        // pentagonal numbers
        assert_eq!(
            ints(&euler_product(1, 16)),
            vec![1, -1, -1, 0, 0, 1, 0, 1, 0, 0, 0, 0, -1, 0, 0, -1]
        );
    }

    #[test]
    fn fractional_eta_quotient_rejected() {
        let q = EtaQuotient::new(&[(1, 1)]);
        assert_eq!(q.series(5), Err(Error::FractionalShift(1)));
        // eta(tau)^24 = Delta
        let d = EtaQuotient::new(&[(1, 24)]).series(10).unwrap();
        assert_eq!(d.reshift(0).truncate(10), delta(10));
    }
}
