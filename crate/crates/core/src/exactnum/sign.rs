//! Sign of a real cyclotomic number under the embedding `ζ_N ↦ exp(2πi/N)`.
//!
//! The value `Σ c_e cos(2πe/N)` is enclosed in an interval with rational
//! endpoints; the enclosure is refined until it excludes zero. Since zero is
//! detected exactly beforehand, the refinement terminates.

use core::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{BigRational, Cyclotomic, Scalar};

const MAX_BITS: u32 = 1 << 13;

#[derive(Clone, Debug)]
struct Interval {
    lo: BigRational,
    hi: BigRational,
}

fn pow2(bits: u32) -> BigInt {
    BigInt::one() << bits
}

fn round_down(x: &BigRational, bits: u32) -> BigRational {
    let s = pow2(bits);
    BigRational::new((x * BigRational::from_integer(s.clone())).floor().to_integer(), s)
}

fn round_up(x: &BigRational, bits: u32) -> BigRational {
    let s = pow2(bits);
    BigRational::new((x * BigRational::from_integer(s.clone())).ceil().to_integer(), s)
}

/// Enclosure of `arctan(1/k)` from consecutive partial sums of its
/// alternating series.
fn arctan_inv(k: i64, bits: u32) -> Interval {
    let k = BigRational::from_integer(k.into());
    let k2 = &k * &k;
    let eps = BigRational::new(BigInt::one(), pow2(bits + 4));
    let mut power = k.recip();
    let mut sum = <BigRational as Zero>::zero();
    let mut n = 0i64;
    loop {
        let term = &power / BigRational::from_integer((2 * n + 1).into());
        let next = if n % 2 == 0 { &sum + &term } else { &sum - &term };
        if term < eps && n > 0 {
            let (lo, hi) = if sum < next { (sum, next) } else { (next, sum) };
            return Interval {
                lo: round_down(&lo, bits + 4),
                hi: round_up(&hi, bits + 4),
            };
        }
        sum = next;
        power /= &k2;
        n += 1;
    }
}

fn pi(bits: u32) -> Interval {
    let a = arctan_inv(5, bits + 6);
    let b = arctan_inv(239, bits + 6);
    let sixteen = BigRational::from_integer(16.into());
    let four = BigRational::from_integer(4.into());
    Interval {
        lo: &sixteen * &a.lo - &four * &b.hi,
        hi: &sixteen * &a.hi - &four * &b.lo,
    }
}

/// Lower and upper bounds of `cos θ` for a single `0 ≤ θ ≤ 2`.
fn cos_bounds(theta: &BigRational, bits: u32) -> Interval {
    let eps = BigRational::new(BigInt::one(), pow2(bits + 4));
    let t2 = theta * theta;
    let mut term = <BigRational as One>::one();
    let mut sum = <BigRational as One>::one();
    let mut k = 0i64;
    loop {
        k += 1;
        term = -(&term * &t2) / BigRational::from_integer(((2 * k - 1) * (2 * k)).into());
        let next = &sum + &term;
        // terms decrease in magnitude from k = 1 on when θ ≤ 2
        if k >= 2 && term.abs() < eps {
            let (lo, hi) = if sum < next { (sum, next) } else { (next, sum) };
            return Interval {
                lo: round_down(&lo, bits + 4),
                hi: round_up(&hi, bits + 4),
            };
        }
        sum = next;
    }
}

/// Encloses `cos(2π·r)`.
fn cos_2pi(r: &BigRational, pi: &Interval, bits: u32) -> Interval {
    let one = <BigRational as One>::one();
    let half = BigRational::new(1.into(), 2.into());
    let quarter = BigRational::new(1.into(), 4.into());
    let mut t = r - r.floor();
    if t > half {
        t = &one - &t;
    }
    let mut negate = false;
    if t > quarter {
        t = &half - &t;
        negate = true;
    }
    let two_t = &t + &t;
    let theta_lo = round_down(&(&two_t * &pi.lo), bits + 4);
    let theta_hi = round_up(&(&two_t * &pi.hi), bits + 4);
    // cos is decreasing on [0, π/2]
    let lo = cos_bounds(&theta_hi, bits).lo;
    let hi = cos_bounds(&theta_lo, bits).hi;
    if negate {
        Interval { lo: -hi, hi: -lo }
    } else {
        Interval { lo, hi }
    }
}

fn enclose(x: &Cyclotomic, bits: u32) -> Interval {
    let n = x.conductor() as i64;
    let pi = pi(bits);
    let mut acc = Interval {
        lo: <BigRational as Zero>::zero(),
        hi: <BigRational as Zero>::zero(),
    };
    for (e, c) in x.terms() {
        let r = BigRational::new((e as i64).into(), n.into());
        let iv = cos_2pi(&r, &pi, bits);
        let (a, b) = if c.is_negative() {
            (c * &iv.hi, c * &iv.lo)
        } else {
            (c * &iv.lo, c * &iv.hi)
        };
        acc.lo += a;
        acc.hi += b;
    }
    acc
}

/// Sign of a real cyclotomic number; `None` when the element is not real.
pub fn real_sign(x: &Cyclotomic) -> Option<Ordering> {
    if !x.is_real() {
        return None;
    }
    if let Some(r) = x.to_rational() {
        return Some(r.cmp(&<BigRational as Zero>::zero()));
    }
    let mut bits = 32;
    while bits <= MAX_BITS {
        let iv = enclose(x, bits);
        if iv.lo.is_positive() {
            return Some(Ordering::Greater);
        }
        if iv.hi.is_negative() {
            return Some(Ordering::Less);
        }
        bits *= 2;
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    #[test]
    fn pi_enclosure_is_tight() {
        let p = pi(64);
        assert!(p.lo < rat(314159266, 100000000));
        assert!(p.hi > rat(314159265, 100000000));
        assert!(&p.hi - &p.lo < BigRational::new(1.into(), pow2(60)));
    }

    #[test]
    fn signs_of_surds() {
        let s2 = Cyclotomic::sqrt2();
        assert_eq!(real_sign(&s2), Some(Ordering::Greater));
        assert_eq!(real_sign(&s2.neg()), Some(Ordering::Less));
        // √2 - 7/5 > 0 and √2 - 17/12 < 0
        let a = s2.sub(&Cyclotomic::from_rational(rat(7, 5)));
        let b = s2.sub(&Cyclotomic::from_rational(rat(17, 12)));
        assert_eq!(real_sign(&a), Some(Ordering::Greater));
        assert_eq!(real_sign(&b), Some(Ordering::Less));
        // cos(2π/5) = (√5 - 1)/4 ≈ 0.309 > 0, cos(4π/5) < 0
        let c1 = Cyclotomic::zeta_pow(5, 1).real_part();
        let c2 = Cyclotomic::zeta_pow(5, 2).real_part();
        assert_eq!(real_sign(&c1), Some(Ordering::Greater));
        assert_eq!(real_sign(&c2), Some(Ordering::Less));
    }

    #[test]
    fn non_real_is_indeterminate() {
        assert_eq!(real_sign(&Cyclotomic::i()), None);
    }
}
