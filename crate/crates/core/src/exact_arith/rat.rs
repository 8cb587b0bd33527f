use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always stored reduced with a positive
/// denominator.
pub type Rat = BigRational;

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Reduction of a p-integral rational into `[0, p)`.
pub fn rat_mod_p(x: &Rat, p: u64) -> Result<u64> {
    let pb = BigInt::from(p);
    let den = x.denom().mod_floor(&pb);
    if den == BigInt::from(0) {
        return Err(Error::NotPIntegral { index: 0, p });
    }
    let num = x.numer().mod_floor(&pb).to_u64().unwrap();
    let den = den.to_u64().unwrap();
    let inv = super::mod_inv(den, p).ok_or(Error::NotPIntegral { index: 0, p })?;
    Ok(((num as u128 * inv as u128) % p as u128) as u64)
}

pub(crate) fn big_mod_u64(x: &BigInt, p: u64) -> u64 {
    let pb = BigInt::from(p);
    let r = x.mod_floor(&pb);
    debug_assert!(!r.is_negative());
    r.to_u64().unwrap()
}
