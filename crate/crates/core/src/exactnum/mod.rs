//! Exact coefficient arithmetic.

mod cyclotomic;
mod matrix;
mod scalar;
mod sign;

pub use cyclotomic::{cyclotomic_polynomial, euler_phi, Cyclotomic};
pub use matrix::Matrix;
pub use scalar::{parse_rational, rat, BigRational, Scalar};
pub use sign::real_sign;

use num_bigint::BigInt;

/// `gcd(a, n)` for a possibly negative `a`.
pub fn gcd_i64(a: i64, n: i64) -> i64 {
    num_integer::Integer::gcd(&a, &n)
}

/// Inverse of `a` modulo `n`, if it exists.
pub fn mod_inverse(a: i64, n: i64) -> Option<i64> {
    if n == 1 {
        return Some(0);
    }
    let (mut r0, mut r1) = (n, a.rem_euclid(n));
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return None;
    }
    Some(t0.rem_euclid(n))
}

/// Floor of a rational as a big integer.
pub fn floor(r: &BigRational) -> BigInt {
    r.floor().to_integer()
}
