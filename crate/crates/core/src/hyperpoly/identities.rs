//! Exact series identities linking the lattice theta series, Eisenstein
//! series and Hauptmoduln to `2F1` with the argument `1728/j`, plus the
//! Euler, cubic and degenerate transformations used for the zero sets.

use num_traits::One;
use serde::Serialize;

use super::{f21_coefficients, HGParams, TruncFamily};
use crate::error::Result;
use crate::exact_arith::{int, rat, Rat};
use crate::qseries::{
    delta, delta_from_eisenstein, e4, inverse_j, theta_h, theta_z, verify_hauptmodul_relation,
    Hauptmodul, QSeries, SeriesMismatch,
};

/// Outcome of one identity check to a given order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub order: usize,
    /// First exponent where the two sides differ.
    pub mismatch: Option<i64>,
}

impl IdentityCheck {
    fn from_outcome(name: &'static str, order: usize, r: std::result::Result<(), SeriesMismatch>) -> Self {
        Self {
            name,
            order,
            mismatch: r.err().map(|m| m.exponent),
        }
    }

    pub fn passed(&self) -> bool {
        self.mismatch.is_none()
    }
}

/// `2F1(params; z)` evaluated at a series `z` without constant term.
pub fn f21_of(params: &HGParams, z: &QSeries<Rat>) -> Result<QSeries<Rat>> {
    z.compose_into(&f21_coefficients(params, z.len()))
}

/// `1728/j` as a q-series with `N` coefficients.
pub fn x_of_q(n: usize) -> QSeries<Rat> {
    inverse_j(n).scale(&int(1728))
}

fn one(n: usize) -> QSeries<Rat> {
    QSeries::constant(Rat::one(), n)
}

/// `theta_Z = E_4^{1/8} 2F1(-1/24, 7/24; 3/4; 1728/j)`.
pub fn theta_z_identity(order: usize) -> Result<IdentityCheck> {
    let n = order + 1;
    let rhs = &e4(n).pow_rational(&rat(1, 8))? * &f21_of(&TruncFamily::W0.params(), &x_of_q(n))?;
    Ok(IdentityCheck::from_outcome(
        "theta_z_hypergeometric",
        order,
        theta_z(n).agrees_with(&rhs, 0, order as i64),
    ))
}

/// `theta_H = E_4^{1/4} 2F1(-1/12, 1/4; 2/3; 1728/j)`.
pub fn theta_h_identity(order: usize) -> Result<IdentityCheck> {
    let n = order + 1;
    let rhs = &e4(n).pow_rational(&rat(1, 4))? * &f21_of(&TruncFamily::V0.params(), &x_of_q(n))?;
    Ok(IdentityCheck::from_outcome(
        "theta_h_hypergeometric",
        order,
        theta_h(n).agrees_with(&rhs, 0, order as i64),
    ))
}

/// `E_4^{1/4} = 2F1(1/12, 5/12; 1; 1728/j)`.
pub fn e4_identity(order: usize) -> Result<IdentityCheck> {
    let n = order + 1;
    let lhs = e4(n).pow_rational(&rat(1, 4))?;
    let rhs = f21_of(&TruncFamily::U0.params(), &x_of_q(n))?;
    Ok(IdentityCheck::from_outcome(
        "e4_quarter_hypergeometric",
        order,
        lhs.agrees_with(&rhs, 0, order as i64),
    ))
}

/// The product expansion of `Delta` equals `(E_4^3 - E_6^2)/1728`.
pub fn delta_identity(order: usize) -> IdentityCheck {
    let n = order + 1;
    IdentityCheck::from_outcome(
        "delta_eisenstein",
        order,
        delta(n).agrees_with(&delta_from_eisenstein(n), 0, order as i64),
    )
}

pub fn hauptmodul_identity(which: Hauptmodul, order: usize) -> IdentityCheck {
    let name = match which {
        Hauptmodul::T3 => "hauptmodul_t3",
        Hauptmodul::Lambda => "hauptmodul_lambda",
    };
    IdentityCheck::from_outcome(name, order, verify_hauptmodul_relation(which, order))
}

/// `(1 - x)^{-1/2} 2F1(from; x) = 2F1(to; x)` as power series in `x`.
pub fn euler_identity(from: TruncFamily, to: TruncFamily, order: usize) -> Result<IdentityCheck> {
    let n = order + 1;
    let x = QSeries::variable(&Rat::one(), n);
    let factor = (&one(n) - &x).pow_rational(&rat(-1, 2))?;
    let lhs = &factor * &f21_of(&from.params(), &x)?;
    let rhs = f21_of(&to.params(), &x)?;
    let name = match from {
        TruncFamily::W0 => "euler_w0_w1",
        TruncFamily::V0 => "euler_v0_v1",
        _ => "euler",
    };
    Ok(IdentityCheck::from_outcome(
        name,
        order,
        lhs.agrees_with(&rhs, 0, order as i64),
    ))
}

/// `2F1(W0; 27 l^2 (l-1)^2 / (4 (1-l+l^2)^3)) = (1-l+l^2)^{-1/8} 2F1(-1/4, 1/4; 1/2; l)`
/// as power series in `l`.
pub fn cubic_identity(order: usize) -> Result<IdentityCheck> {
    let n = order + 1;
    let l = QSeries::variable(&Rat::one(), n);
    let q = &(&one(n) - &l) + &l.pow(2);
    let num = (&l.pow(2) * &(&l - &one(n)).pow(2)).scale(&int(27));
    let z = num.div_series(&q.pow(3).scale(&int(4)))?;
    let lhs = f21_of(&TruncFamily::W0.params(), &z)?;
    let g = HGParams::new(rat(-1, 4), rat(1, 4), rat(1, 2))?;
    let rhs = &q.pow_rational(&rat(-1, 8))? * &f21_of(&g, &l)?;
    Ok(IdentityCheck::from_outcome(
        "cubic_transformation",
        order,
        lhs.agrees_with(&rhs, 0, order as i64),
    ))
}

/// `2F1(V0; y (y+4)^3 / (4 (2y-1)^3)) = (1 - 2y)^{-1/4}` as power series in `y`.
pub fn degenerate_identity(order: usize) -> Result<IdentityCheck> {
    let n = order + 1;
    let y = QSeries::variable(&Rat::one(), n);
    let num = &y * &(&y + &one(n).scale(&int(4))).pow(3);
    let den = (&y.scale(&int(2)) - &one(n)).pow(3).scale(&int(4));
    let z = num.div_series(&den)?;
    let lhs = f21_of(&TruncFamily::V0.params(), &z)?;
    let rhs = (&one(n) - &y.scale(&int(2))).pow_rational(&rat(-1, 4))?;
    Ok(IdentityCheck::from_outcome(
        "degenerate_evaluation",
        order,
        lhs.agrees_with(&rhs, 0, order as i64),
    ))
}

/// Every identity above at the given order.
pub fn all_identities(order: usize) -> Result<Vec<IdentityCheck>> {
    Ok(vec![
        theta_z_identity(order)?,
        theta_h_identity(order)?,
        e4_identity(order)?,
        delta_identity(order),
        hauptmodul_identity(Hauptmodul::T3, order),
        hauptmodul_identity(Hauptmodul::Lambda, order),
        euler_identity(TruncFamily::W0, TruncFamily::W1, order)?,
        euler_identity(TruncFamily::V0, TruncFamily::V1, order)?,
        cubic_identity(order)?,
        degenerate_identity(order)?,
    ])
}
