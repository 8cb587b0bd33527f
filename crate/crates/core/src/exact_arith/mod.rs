//! Exact scalars: big rationals, prime fields `F_p` and their quadratic
//! extensions `F_{p^2}`, plus the handful of number-theoretic helpers the
//! rest of the crate leans on.

mod field;
mod numtheory;
mod rat;

pub use field::{FieldCtx, Fp2Elem, Fp2Field, FpElem, PrimeField, Scalar};
pub use numtheory::{
    bernoulli, cube_root_of_2, is_prime, legendre_symbol, mod_inv, mod_pow, padic_valuation,
    primes_in,
};
pub use rat::{int, rat, rat_mod_p, Rat};
