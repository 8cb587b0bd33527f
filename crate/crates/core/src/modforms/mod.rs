//! The space `M_k` of level one modular forms through its basis
//! `Delta^{n-l} E_4^{a+3l} E_6^b`, the projection `f -> C_k f` onto the unique
//! form sharing the first `n_k + 1` coefficients with `f`, and the polynomial
//! `P[f](j)` with `f / (Delta^n E_4^a E_6^b) = P[f](j)`.

mod ratpoly;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub use ratpoly::RatPoly;

use crate::error::{Error, Result};
use crate::exact_arith::{padic_valuation, rat_mod_p, Rat};
use crate::qseries::{delta, e4, e6, QSeries};

/// `k = 12 n + 4 a + 6 b` with `a in {0,1,2}`, `b in {0,1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct WeightIndices {
    pub k: u64,
    pub n: usize,
    pub a: u32,
    pub b: u32,
}

impl WeightIndices {
    pub fn dim(&self) -> usize {
        self.n + 1
    }
}

pub fn weight_indices(k: i64) -> Result<WeightIndices> {
    if k < 4 || k % 2 != 0 {
        return Err(Error::InvalidWeight(k));
    }
    let (a, b) = match k % 12 {
        0 => (0, 0),
        4 => (1, 0),
        8 => (2, 0),
        6 => (0, 1),
        10 => (1, 1),
        2 => (2, 1),
        _ => unreachable!(),
    };
    let n = ((k - 4 * a as i64 - 6 * b as i64) / 12) as usize;
    Ok(WeightIndices {
        k: k as u64,
        n,
        a,
        b,
    })
}

/// Verification order used when nothing else is requested.
pub fn default_order(w: &WeightIndices) -> usize {
    2 * (w.n + 1) + 10
}

/// The basis of `M_k` to `N` coefficients; element `l` starts at `q^{n-l}`
/// with coefficient one.
pub fn basis(k: i64, n_coeffs: usize) -> Result<Vec<QSeries<Rat>>> {
    let w = weight_indices(k)?;
    let n_coeffs = n_coeffs.max(1);
    let d = delta(n_coeffs);
    let e4s = e4(n_coeffs);
    let e4_cubed = e4s.pow(3);
    let base = &e4s.pow(w.a) * &e6(n_coeffs).pow(w.b);

    let mut delta_pows = vec![QSeries::constant(Rat::one(), n_coeffs)];
    let mut e4_pows = vec![base];
    for i in 1..=w.n {
        delta_pows.push(&delta_pows[i - 1] * &d);
        e4_pows.push(&e4_pows[i - 1] * &e4_cubed);
    }
    Ok((0..=w.n)
        .map(|l| &delta_pows[w.n - l] * &e4_pows[l])
        .collect())
}

/// Coordinates of a form in the basis; `coords[l]` multiplies
/// `Delta^{n-l} E_4^{a+3l} E_6^b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisCoordinates {
    pub k: u64,
    pub coords: Vec<Rat>,
}

/// Solves the unit-triangular system matching `f` on `q^0 .. q^{n_k}`.
pub fn basis_coordinates(f: &QSeries<Rat>, k: i64) -> Result<BasisCoordinates> {
    let w = weight_indices(k)?;
    let f = f.to_power_series()?;
    if f.len() < w.dim() {
        return Err(Error::InsufficientPrecision {
            needed: w.dim(),
            have: f.len(),
        });
    }
    let b = basis(k, w.dim())?;
    let mut residual: Vec<Rat> = f.coeffs()[..w.dim()].to_vec();
    let mut coords = vec![Rat::zero(); w.dim()];
    for e in 0..=w.n {
        let l = w.n - e;
        debug_assert!(b[l].coeffs()[e].is_one());
        let c = residual[e].clone();
        if !c.is_zero() {
            for (r, x) in residual.iter_mut().zip(b[l].coeffs()).skip(e) {
                *r -= &c * x;
            }
        }
        coords[l] = c;
    }
    Ok(BasisCoordinates {
        k: w.k,
        coords,
    })
}

/// `sum_l coords[l] * basis[l]` to `N` coefficients.
pub fn form_from_coordinates(coords: &BasisCoordinates, n_coeffs: usize) -> Result<QSeries<Rat>> {
    let b = basis(coords.k as i64, n_coeffs)?;
    let mut acc = QSeries::constant(Rat::zero(), n_coeffs.max(1));
    for (c, g) in coords.coords.iter().zip(&b) {
        if !c.is_zero() {
            acc = &acc + &g.scale(c);
        }
    }
    Ok(acc)
}

/// `C_k f`: the unique element of `M_k` agreeing with `f` on the first
/// `n_k + 1` coefficients, returned to `N` coefficients.
pub fn constructor(f: &QSeries<Rat>, k: i64, n_coeffs: usize) -> Result<QSeries<Rat>> {
    form_from_coordinates(&basis_coordinates(f, k)?, n_coeffs)
}

/// `P[C_k f](j) = sum_l coords[l] j^l`.
pub fn pf_polynomial(f: &QSeries<Rat>, k: i64) -> Result<RatPoly> {
    Ok(RatPoly::new(basis_coordinates(f, k)?.coords))
}

/// Whether the first `m` coefficients of `f` and `g` agree modulo `p`.
/// Every compared coefficient must be p-integral.
pub fn congruent_mod_p(f: &QSeries<Rat>, g: &QSeries<Rat>, p: u64, m: usize) -> Result<bool> {
    let f = f.to_power_series()?;
    let g = g.to_power_series()?;
    let have = f.len().min(g.len());
    if m > have {
        return Err(Error::InsufficientPrecision { needed: m, have });
    }
    for i in 0..m {
        let a = reduce_at(&f.coeffs()[i], p, i)?;
        let b = reduce_at(&g.coeffs()[i], p, i)?;
        if a != b {
            return Ok(false);
        }
    }
    Ok(true)
}

fn reduce_at(x: &Rat, p: u64, index: usize) -> Result<u64> {
    if !x.is_zero() && padic_valuation(x, p)? < 0 {
        return Err(Error::NotPIntegral { index, p });
    }
    rat_mod_p(x, p).map_err(|_| Error::NotPIntegral { index, p })
}

/// Randomized check that a p-integral form in `M_k` whose first `n_k + 1`
/// coefficients vanish mod `p` vanishes mod `p` entirely. Test forms are
/// built from prescribed leading coefficients, never from coordinates.
pub fn check_lemma_almostzero(k: i64, p: u64, trials: usize, seed: u64) -> Result<bool> {
    let w = weight_indices(k)?;
    let order = default_order(&w);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pb = BigInt::from(p);

    // the basis monomial times p
    let mut forms = vec![basis(k, order)?[0].scale(&Rat::from_integer(pb.clone()))];
    for _ in 0..trials {
        let leading: Vec<Rat> = (0..w.dim())
            .map(|_| Rat::from_integer(&pb * BigInt::from(rng.gen_range(-1000i64..=1000))))
            .collect();
        forms.push(constructor(&QSeries::from_coeffs(leading), k, order)?);
    }
    for f in &forms {
        for (i, c) in f.coeffs().iter().enumerate() {
            if reduce_at(c, p, i)? != 0 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
