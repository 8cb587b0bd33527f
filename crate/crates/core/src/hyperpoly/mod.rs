//! Pochhammer symbols, truncated `2F1` coefficient streams, the six
//! polynomial families `U^b_n`, `W^b_n`, `V^b_n`, the `F_p` polynomial `G_p`
//! and the coefficient-vanishing windows.

pub mod identities;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Pow, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact_arith::{
    cube_root_of_2, int, mod_pow, padic_valuation, rat, rat_mod_p, FieldCtx, FpElem, PrimeField,
    Rat,
};
use crate::fppoly::{FpPoly, Poly};
use crate::modforms::RatPoly;

/// `(x)_n = x (x+1) ... (x+n-1)`.
pub fn pochhammer(x: &Rat, n: u64) -> Rat {
    let mut acc = Rat::one();
    let mut t = x.clone();
    for _ in 0..n {
        acc *= &t;
        t += Rat::one();
    }
    acc
}

/// Parameters `(alpha, beta; gamma)` of `2F1`, `gamma` not a non-positive
/// integer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HGParams {
    pub alpha: Rat,
    pub beta: Rat,
    pub gamma: Rat,
}

impl HGParams {
    pub fn new(alpha: Rat, beta: Rat, gamma: Rat) -> Result<Self> {
        if gamma.is_integer() && gamma <= Rat::zero() {
            return Err(Error::InvalidHypergeometric(format!(
                "gamma = {gamma} is a non-positive integer"
            )));
        }
        Ok(Self { alpha, beta, gamma })
    }
}

/// `c_m = (alpha)_m (beta)_m / ((gamma)_m m!)` for `m = 0 .. M`, by the ratio
/// recurrence.
pub fn f21_coefficients(params: &HGParams, m_max: usize) -> Vec<Rat> {
    let mut out = Vec::with_capacity(m_max + 1);
    let mut c = Rat::one();
    out.push(c.clone());
    for m in 0..m_max {
        let mr = int(m as i64);
        c = c * (&params.alpha + &mr) * (&params.beta + &mr)
            / ((&params.gamma + &mr) * (&mr + Rat::one()));
        out.push(c.clone());
    }
    out
}

/// The six hypergeometric families, each hard-bound to its parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum TruncFamily {
    U0,
    U1,
    W0,
    W1,
    V0,
    V1,
}

impl TruncFamily {
    pub const ALL: [TruncFamily; 6] = [
        TruncFamily::U0,
        TruncFamily::U1,
        TruncFamily::W0,
        TruncFamily::W1,
        TruncFamily::V0,
        TruncFamily::V1,
    ];

    pub fn params(self) -> HGParams {
        let (a, b, c) = match self {
            TruncFamily::U0 => ((1, 12), (5, 12), (1, 1)),
            TruncFamily::U1 => ((7, 12), (11, 12), (1, 1)),
            TruncFamily::W0 => ((-1, 24), (7, 24), (3, 4)),
            TruncFamily::W1 => ((11, 24), (19, 24), (3, 4)),
            TruncFamily::V0 => ((-1, 12), (1, 4), (2, 3)),
            TruncFamily::V1 => ((5, 12), (3, 4), (2, 3)),
        };
        HGParams::new(rat(a.0, a.1), rat(b.0, b.1), rat(c.0, c.1)).expect("fixed parameters")
    }

    /// The family with superscript `b` in the U, W or V series.
    pub fn select(letter: char, b: u32) -> Self {
        match (letter, b) {
            ('U', 0) => TruncFamily::U0,
            ('U', _) => TruncFamily::U1,
            ('W', 0) => TruncFamily::W0,
            ('W', _) => TruncFamily::W1,
            ('V', 0) => TruncFamily::V0,
            ('V', _) => TruncFamily::V1,
            _ => panic!("unknown family letter {letter}"),
        }
    }
}

impl fmt::Display for TruncFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl FromStr for TruncFamily {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        TruncFamily::ALL
            .into_iter()
            .find(|f| f.to_string().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidHypergeometric(format!("unknown family {s}")))
    }
}

/// `c_m 1728^m`, the coefficients of `2F1(...; 1728/j)` in powers of `1/j`.
pub fn scaled_coefficients(family: TruncFamily, m_max: usize) -> Vec<Rat> {
    let mut scale = Rat::one();
    f21_coefficients(&family.params(), m_max)
        .into_iter()
        .map(|c| {
            let out = c * &scale;
            scale *= int(1728);
            out
        })
        .collect()
}

/// The polynomial part of `j^n 2F1(...; 1728/j)`:
/// `sum_{m <= n} c_m 1728^m j^{n-m}`.
pub fn truncated_poly(family: TruncFamily, n: usize) -> RatPoly {
    let mut c = scaled_coefficients(family, n);
    c.reverse();
    RatPoly::new(c)
}

/// `G_p(lambda) = sum_{m <= (p+1)/4} (-1/4)_m (1/4)_m / ((1/2)_m m!) lambda^m`
/// reduced mod `p`.
pub fn gp_poly(p: u64) -> Result<FpPoly> {
    require_class(p, 4, &[3], "p = 3 mod 4")?;
    let field = PrimeField::new(p)?;
    let params = HGParams::new(rat(-1, 4), rat(1, 4), rat(1, 2))?;
    let coeffs = f21_coefficients(&params, ((p + 1) / 4) as usize)
        .iter()
        .map(|c| field.from_rat(c))
        .collect::<Result<Vec<_>>>()
        .expect("denominators are prime to p in the truncated range");
    Ok(Poly::new(field, coeffs))
}

/// `{ t : t - 1 a nonzero square, t a non-square }`, the predicted roots
/// of `G_p`.
pub fn gp_root_set(p: u64) -> Result<Vec<FpElem>> {
    require_class(p, 4, &[3], "p = 3 mod 4")?;
    let field = PrimeField::new(p)?;
    Ok(field
        .elements()
        .filter(|t| {
            let s = *t - field.one();
            s.value() != 0 && s.is_square() && t.value() != 0 && !t.is_square()
        })
        .collect())
}

/// `S_v = (1/4) (1/2)_v / v!` mod `p`, the predicted power sums of the
/// roots of `G_p`.
pub fn gp_power_sum_prediction(p: u64, v_max: usize) -> Result<Vec<FpElem>> {
    let field = PrimeField::new(p)?;
    let half = rat(1, 2);
    let mut fact = Rat::one();
    (0..=v_max)
        .map(|v| {
            if v > 0 {
                fact *= int(v as i64);
            }
            let x = pochhammer(&half, v as u64) / &fact * rat(1, 4);
            field.from_rat(&x)
        })
        .collect()
}

pub(crate) fn require_class(p: u64, m: u64, residues: &[u64], expected: &'static str) -> Result<()> {
    if residues.contains(&(p % m)) {
        Ok(())
    } else {
        Err(Error::ResidueClass { p, expected })
    }
}

/// Open window `(lo, hi)` on which `c_m` must vanish mod `p`, and whether it
/// does.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct VanishingWindow {
    pub lo: usize,
    pub hi: usize,
    pub ok: bool,
    /// First `m` in the window with `v_p(c_m) < 1`.
    pub first_failure: Option<usize>,
}

/// The window for `family` at `p`:
///
/// * `W0`, `p = 24n - 1` or `24n + 7`: `(n, 6n)`
/// * `W1`, `p = 24n + 11` or `24n + 19`: `(n, 6n)`
/// * `V0`, `p = 12n - 1`: `(n, 4n)`
/// * `V1`, `p = 12n + 5`: `(n, 4n + 2)`
pub fn window_bounds(family: TruncFamily, p: u64) -> Result<(usize, usize)> {
    let (n, hi) = match family {
        TruncFamily::W0 => match p % 24 {
            23 => ((p + 1) / 24, 6 * ((p + 1) / 24)),
            7 => ((p - 7) / 24, 6 * ((p - 7) / 24)),
            _ => {
                return Err(Error::ResidueClass {
                    p,
                    expected: "p = 23 or 7 mod 24",
                })
            }
        },
        TruncFamily::W1 => match p % 24 {
            11 => ((p - 11) / 24, 6 * ((p - 11) / 24)),
            19 => ((p - 19) / 24, 6 * ((p - 19) / 24)),
            _ => {
                return Err(Error::ResidueClass {
                    p,
                    expected: "p = 11 or 19 mod 24",
                })
            }
        },
        TruncFamily::V0 => {
            require_class(p, 12, &[11], "p = 11 mod 12")?;
            let n = (p + 1) / 12;
            (n, 4 * n)
        }
        TruncFamily::V1 => {
            require_class(p, 12, &[5], "p = 5 mod 12")?;
            let n = (p - 5) / 12;
            (n, 4 * n + 2)
        }
        TruncFamily::U0 | TruncFamily::U1 => {
            return Err(Error::ResidueClass {
                p,
                expected: "a W or V family",
            })
        }
    };
    Ok((n as usize, hi as usize))
}

/// Checks `v_p(c_m) >= 1` for `lo < m < hi` with exact valuations.
pub fn vanishing_window(family: TruncFamily, p: u64) -> Result<VanishingWindow> {
    if p < 5 || !crate::exact_arith::is_prime(p) {
        return Err(Error::InvalidPrime(p));
    }
    let (lo, hi) = window_bounds(family, p)?;
    let c = f21_coefficients(&family.params(), hi);
    let mut first_failure = None;
    for (m, cm) in c.iter().enumerate().take(hi).skip(lo + 1) {
        if cm.is_zero() {
            continue;
        }
        if padic_valuation(cm, p)? < 1 {
            first_failure = Some(m);
            break;
        }
    }
    Ok(VanishingWindow {
        lo,
        hi,
        ok: first_failure.is_none(),
        first_failure,
    })
}

/// The scaled coefficient `c_m 1728^m` of `V0` (for `p = 11 mod 12`) or
/// `V1` (for `p = 5 mod 12`) at `m = (p+1)/3`, reduced mod `p`.
pub fn degenerate_constant(p: u64) -> Result<u64> {
    require_class(p, 12, &[5, 11], "p = 5 or 11 mod 12")?;
    let family = if p % 12 == 11 {
        TruncFamily::V0
    } else {
        TruncFamily::V1
    };
    let m = ((p + 1) / 3) as usize;
    let c = &f21_coefficients(&family.params(), m)[m] * Rat::from_integer(BigInt::from(1728).pow(m as u32));
    rat_mod_p(&c, p)
}

/// The cube-root identities behind the constants of the degenerate
/// evaluation: `(-4)^{(p+1)/12} = 2^{1/3}` for `p = 11 mod 12` and
/// `-2 (-4)^{(p-5)/12} = 2^{1/3}` for `p = 5 mod 12`.
pub fn cube_root_residue_holds(p: u64) -> Result<bool> {
    require_class(p, 12, &[5, 11], "p = 5 or 11 mod 12")?;
    let r = cube_root_of_2(p)?.value();
    let m4 = p - 4;
    let lhs = if p % 12 == 11 {
        mod_pow(m4, (p + 1) / 12, p)
    } else {
        (p - 2) * mod_pow(m4, (p - 5) / 12, p) % p
    };
    Ok(lhs == r)
}
