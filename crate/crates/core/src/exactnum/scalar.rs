use alloc::string::String;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigInt;
pub use num_rational::BigRational;

/// A coefficient field with exact arithmetic.
///
/// Implemented by [`BigRational`] and [`Cyclotomic`](super::Cyclotomic). All
/// series and matrix code is generic over this trait.
pub trait Scalar: Clone + PartialEq + fmt::Debug + fmt::Display {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_rational(r: &BigRational) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self) -> Option<Self>;
    /// The value as a rational, when it is one.
    fn to_rational(&self) -> Option<BigRational>;

    fn from_int(n: i64) -> Self {
        Self::from_rational(&BigRational::from_integer(BigInt::from(n)))
    }

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn scale(&self, r: &BigRational) -> Self {
        self.mul(&Self::from_rational(r))
    }

    fn div(&self, rhs: &Self) -> Option<Self> {
        rhs.inv().map(|r| self.mul(&r))
    }
}

impl Scalar for BigRational {
    fn zero() -> Self {
        <BigRational as num_traits::Zero>::zero()
    }

    fn one() -> Self {
        <BigRational as num_traits::One>::one()
    }

    fn from_rational(r: &BigRational) -> Self {
        r.clone()
    }

    fn is_zero(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }

    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }

    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }

    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn neg(&self) -> Self {
        -self
    }

    fn inv(&self) -> Option<Self> {
        if num_traits::Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }

    fn to_rational(&self) -> Option<BigRational> {
        Some(self.clone())
    }

    fn scale(&self, r: &BigRational) -> Self {
        self * r
    }
}

/// `n / d` as a [`BigRational`].
pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p/q"` or `"p"`.
pub fn parse_rational(s: &str) -> Result<BigRational, String> {
    let t = s.trim();
    match t.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| alloc::format!("bad numerator in {s:?}"))?;
            let d = BigInt::from_str(d.trim()).map_err(|_| alloc::format!("bad denominator in {s:?}"))?;
            if num_traits::Zero::is_zero(&d) {
                return Err(alloc::format!("zero denominator in {s:?}"));
            }
            Ok(BigRational::new(n, d))
        }
        None => BigInt::from_str(t)
            .map(BigRational::from_integer)
            .map_err(|_| alloc::format!("not a rational: {s:?}")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn parse_and_print() {
        assert_eq!(parse_rational("17/24").unwrap(), rat(17, 24));
        assert_eq!(parse_rational("-377").unwrap(), rat(-377, 1));
        assert_eq!(parse_rational(" 4/-8 ").unwrap(), rat(-1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert_eq!(rat(6, -4).to_string(), "-3/2");
    }

    #[test]
    fn lowest_terms_positive_denominator() {
        let r = parse_rational("10/-4").unwrap();
        assert_eq!(r.numer(), &BigInt::from(-5));
        assert_eq!(r.denom(), &BigInt::from(2));
    }
}
