//! Exact q-expansions of level one modular forms, the "theta modular forms"
//! obtained by matching the first `dim M_k` coefficients of a lattice theta
//! series, and the arithmetic of their zero polynomials `P[f](j)` modulo
//! primes: congruences with truncated hypergeometric polynomials, splitting
//! behaviour over `F_p` and `F_{p^2}`, and the elliptic curves whose
//! j-invariants are the roots.
//!
//! Everything is exact. Rational coefficients are arbitrary precision and
//! finite-field work is done over small primes with brute-force oracles.

pub mod curves;
pub mod error;
pub mod exact_arith;
pub mod fppoly;
pub mod harness;
pub mod hyperpoly;
pub mod modforms;
pub mod parallel;
pub mod qseries;

pub use error::{Error, Result};
pub use exact_arith::{Fp2Elem, Fp2Field, FpElem, PrimeField, Rat, Scalar};
