use num_traits::One;

use super::generators::{j_invariant, EtaQuotient};
use super::{QSeries, SeriesMismatch};
use crate::exact_arith::{int, Rat};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Hauptmodul {
    /// `t_3` for `Gamma_1(3)`.
    T3,
    /// The eta quotient `16 (eta(t) eta(4t)^2 / eta(2t)^3)^8`, which expands
    /// in integral powers of `q` and equals `lambda(2 tau)`.
    Lambda,
}

/// `t_3 = -108 h / (1 + 27 h)` with `h = (eta(3 tau) / eta(tau))^12`.
pub fn t3(n: usize) -> QSeries<Rat> {
    let h = EtaQuotient::new(&[(3, 12), (1, -12)])
        .series(n)
        .expect("integral shift")
        .reshift(0)
        .truncate(n as i64);
    let num = h.scale(&int(-108));
    let den = &QSeries::constant(Rat::one(), n) + &h.scale(&int(27));
    num.div_series(&den).expect("1 + 27h is a unit")
}

pub fn lambda_eta_quotient(n: usize) -> QSeries<Rat> {
    EtaQuotient::new(&[(1, 8), (4, 16), (2, -24)])
        .series(n)
        .expect("integral shift")
        .reshift(0)
        .truncate(n as i64)
        .scale(&int(16))
}

/// Checks the rational expression of `j` in the given Hauptmodul on the
/// exponents `0 .. N`:
///
/// * `j * t (t + 4)^3 = 3^3 4^4 (2t - 1)^3`
/// * `j(q^2) * L^2 (L - 1)^2 = 256 (1 - L + L^2)^3` for the eta quotient `L`.
pub fn verify_hauptmodul_relation(which: Hauptmodul, n: usize) -> std::result::Result<(), SeriesMismatch> {
    let len = n + 4;
    let one = QSeries::constant(Rat::one(), len);
    let (lhs, rhs) = match which {
        Hauptmodul::T3 => {
            let t = t3(len);
            let j = j_invariant(len);
            let t4 = &t + &one.scale(&int(4));
            let lhs = &(&j * &t) * &t4.pow(3);
            let inner = &t.scale(&int(2)) - &one;
            (lhs, inner.pow(3).scale(&int(27 * 256)))
        }
        Hauptmodul::Lambda => {
            let l = lambda_eta_quotient(len);
            let j2 = j_invariant(n / 2 + 4).substitute_power(2);
            let lm1 = &l - &one;
            let den = &l.pow(2) * &lm1.pow(2);
            let lhs = &j2 * &den;
            let inner = &(&one - &l) + &l.pow(2);
            (lhs, inner.pow(3).scale(&int(256)))
        }
    };
    lhs.agrees_with(&rhs, 0, n as i64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn t3_expansion() {
        let t = t3(6);
        let expected = [0, -108, 1620, -18468, 181332, -1625832];
        assert_eq!(t.coeffs(), expected.map(int).as_slice());
    }

    #[test]
    fn lambda_quotient_is_lambda_of_2tau() {
        // lambda(tau) = 16 q^{1/2} - 128 q + 704 q^{3/2} - 3072 q^2 + 11488 q^{5/2}
        let l = lambda_eta_quotient(6);
        assert_eq!(l.coeffs(), [0, 16, -128, 704, -3072, 11488].map(int).as_slice());
    }

    #[test]
    fn relations_hold() {
        assert_eq!(verify_hauptmodul_relation(Hauptmodul::T3, 5), Ok(()));
        assert_eq!(verify_hauptmodul_relation(Hauptmodul::T3, 30), Ok(()));
        assert_eq!(verify_hauptmodul_relation(Hauptmodul::Lambda, 30), Ok(()));
    }

    #[test]
    fn lambda_relation_fails_without_q_squared() {
        // sanity: the quotient does not satisfy the relation with j(q) itself
        let n = 12;
        let l = lambda_eta_quotient(n + 4);
        let one = QSeries::constant(Rat::one(), n + 4);
        let j = j_invariant(n + 4);
        let lhs = &j * &(&l.pow(2) * &(&l - &one).pow(2));
        let rhs = (&(&one - &l) + &l.pow(2)).pow(3).scale(&int(256));
        assert!(lhs.agrees_with(&rhs, 0, n as i64).is_err());
    }
}
