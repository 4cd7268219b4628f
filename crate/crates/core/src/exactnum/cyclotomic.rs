use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{gcd_i64, BigRational, Matrix, Scalar};
use crate::error::{Error, Result};

/// Euler's totient.
pub fn euler_phi(n: u64) -> u64 {
    let mut n = n;
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

fn mobius(n: u64) -> i32 {
    let mut n = n;
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// Coefficients (lowest degree first) of the `n`-th cyclotomic polynomial,
/// from `Φ_n = ∏_{d | n} (x^d - 1)^{μ(n/d)}`.
pub fn cyclotomic_polynomial(n: u64) -> Vec<BigInt> {
    assert!(n > 0, "conductor must be positive");
    let divisors: Vec<u64> = (1..=n).filter(|d| n.is_multiple_of(*d)).collect();
    let mut poly = vec![BigInt::one()];
    // multiply by (x^d - 1) for μ = +1 first so every division below is exact
    for &d in &divisors {
        if mobius(n / d) == 1 {
            let mut next = vec![BigInt::zero(); poly.len() + d as usize];
            for (i, c) in poly.iter().enumerate() {
                next[i + d as usize] += c;
                next[i] -= c;
            }
            poly = next;
        }
    }
    for &d in &divisors {
        if mobius(n / d) == -1 {
            // divide by x^d - 1: q_i = q_{i-d} - p_i, solved from the top
            let d = d as usize;
            let deg = poly.len() - 1;
            let mut quot = vec![BigInt::zero(); deg - d + 1];
            let mut rem = poly.clone();
            for i in (0..quot.len()).rev() {
                let c = rem[i + d].clone();
                rem[i + d] -= &c;
                rem[i] += &c;
                quot[i] = c;
            }
            debug_assert!(rem.iter().all(Zero::is_zero));
            poly = quot;
        }
    }
    poly
}

/// An element of `ℚ(ζ_N)` in the power basis `1, ζ_N, …, ζ_N^{φ(N)-1}`.
///
/// The coefficient vector is always reduced modulo `Φ_N`, so two elements with
/// the same conductor are equal iff their coefficients agree. Mixed
/// conductors are promoted to the least common multiple.
#[derive(Clone, Debug)]
pub struct Cyclotomic {
    conductor: u64,
    coeffs: Vec<BigRational>,
}

impl Cyclotomic {
    /// Builds `Σ c_e ζ_N^e` from arbitrary integer exponents.
    pub fn from_terms(conductor: u64, terms: &[(i64, BigRational)]) -> Self {
        assert!(conductor > 0, "conductor must be positive");
        let n = conductor as i64;
        let mut folded = vec![<BigRational as Zero>::zero(); conductor as usize];
        for (e, c) in terms {
            folded[e.rem_euclid(n) as usize] += c;
        }
        Self::reduce(conductor, folded)
    }

    pub fn from_rational(r: BigRational) -> Self {
        Cyclotomic {
            conductor: 1,
            coeffs: vec![r],
        }
    }

    /// `ζ_N^e`.
    pub fn zeta_pow(conductor: u64, e: i64) -> Self {
        Self::from_terms(conductor, &[(e, <BigRational as One>::one())])
    }

    /// `exp(2πi·r)` for rational `r`, in the conductor given by `r`'s denominator.
    pub fn root_of_unity(r: &BigRational) -> Self {
        let den = r.denom().clone();
        let num = r.numer().mod_floor(&den);
        let n: u64 = (&den).try_into().expect("root of unity order too large");
        let e: i64 = (&num).try_into().expect("exponent too large");
        Self::zeta_pow(n, e)
    }

    /// `√2 = ζ_8 + ζ_8^{-1}`.
    pub fn sqrt2() -> Self {
        Self::from_terms(8, &[(1, <BigRational as One>::one()), (7, <BigRational as One>::one())])
    }

    /// `√3 = ζ_12 + ζ_12^{-1}`.
    pub fn sqrt3() -> Self {
        Self::from_terms(12, &[(1, <BigRational as One>::one()), (11, <BigRational as One>::one())])
    }

    /// `i = ζ_4`.
    pub fn i() -> Self {
        Self::zeta_pow(4, 1)
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    /// Power-basis coefficients, length `φ(N)`.
    pub fn coefficients(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Nonzero `(exponent, coefficient)` pairs.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &BigRational)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !Zero::is_zero(*c))
    }

    fn reduce(conductor: u64, mut poly: Vec<BigRational>) -> Self {
        let phi = cyclotomic_polynomial(conductor);
        let deg = phi.len() - 1;
        if poly.len() > deg {
            for k in (deg..poly.len()).rev() {
                let c = core::mem::take(&mut poly[k]);
                if Zero::is_zero(&c) {
                    continue;
                }
                for (i, p) in phi.iter().enumerate().take(deg) {
                    if !p.is_zero() {
                        poly[k - deg + i] -= &c * BigRational::from_integer(p.clone());
                    }
                }
            }
            poly.truncate(deg);
        }
        poly.resize(deg, <BigRational as Zero>::zero());
        Cyclotomic {
            conductor,
            coeffs: poly,
        }
    }

    /// Embeds into `ℚ(ζ_M)` for a multiple `M` of the conductor.
    pub fn raise(&self, target: u64) -> Self {
        assert!(
            target.is_multiple_of(self.conductor),
            "{target} is not a multiple of {}",
            self.conductor
        );
        if target == self.conductor {
            return self.clone();
        }
        let step = (target / self.conductor) as usize;
        let mut folded = vec![<BigRational as Zero>::zero(); target as usize];
        for (e, c) in self.terms() {
            folded[e * step] += c;
        }
        Self::reduce(target, folded)
    }

    /// Expresses the element in `ℚ(ζ_m)` for a divisor `m` of the conductor,
    /// if it lies in that subfield.
    pub fn restrict(&self, m: u64) -> Option<Self> {
        if m == 0 || !self.conductor.is_multiple_of(m) {
            return None;
        }
        let phi_m = euler_phi(m) as usize;
        let phi_n = self.coeffs.len();
        let mut a = Matrix::zeros(phi_n, phi_m);
        for j in 0..phi_m {
            let col = Self::zeta_pow(m, j as i64).raise(self.conductor);
            for (i, c) in col.coeffs.iter().enumerate() {
                a.set(i, j, c.clone());
            }
        }
        let y = a.solve(&self.coeffs)?;
        Some(Cyclotomic {
            conductor: m,
            coeffs: y,
        })
    }

    /// The same element written over the smallest conductor that contains it.
    pub fn minimal(&self) -> Self {
        let n = self.conductor;
        for m in (1..=n).filter(|m| n.is_multiple_of(*m)) {
            if let Some(r) = self.restrict(m) {
                return r;
            }
        }
        self.clone()
    }

    fn lift_pair(&self, other: &Self) -> (Self, Self) {
        let l = self.conductor.lcm(&other.conductor);
        (self.raise(l), other.raise(l))
    }

    /// The Galois automorphism `σ_ℓ: ζ_N ↦ ζ_N^ℓ`.
    pub fn galois(&self, ell: i64) -> Result<Self> {
        let n = self.conductor as i64;
        if gcd_i64(ell, n) != 1 {
            return Err(Error::NotCoprime {
                ell,
                modulus: self.conductor,
            });
        }
        let l = ell.rem_euclid(n) as usize;
        let mut folded = vec![<BigRational as Zero>::zero(); n as usize];
        for (e, c) in self.terms() {
            folded[(e * l) % n as usize] += c;
        }
        Ok(Self::reduce(self.conductor, folded))
    }

    /// Complex conjugate, `σ_{-1}`.
    pub fn conj(&self) -> Self {
        self.galois(-1).expect("-1 is a unit")
    }

    pub fn is_real(&self) -> bool {
        *self == self.conj()
    }

    pub fn real_part(&self) -> Self {
        self.add(&self.conj()).scale(&BigRational::new(1.into(), 2.into()))
    }

    /// If the element is a root of unity `exp(2πi·r)`, returns `r ∈ [0, 1)`.
    pub fn as_root_of_unity(&self) -> Option<BigRational> {
        let m = self.conductor.lcm(&2);
        let target = self.raise(m);
        (0..m as i64)
            .find(|&e| Self::zeta_pow(m, e) == target)
            .map(|e| BigRational::new(e.into(), (m as i64).into()))
    }

    pub fn pow(&self, e: i64) -> Option<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = Self::one();
        let mut sq = base;
        let mut k = e.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&sq);
            }
            sq = sq.mul(&sq);
            k >>= 1;
        }
        Some(acc)
    }

    fn poly_mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.conductor, other.conductor);
        let n = self.conductor as usize;
        let mut prod = vec![<BigRational as Zero>::zero(); n.max(self.coeffs.len() + other.coeffs.len())];
        for (i, a) in self.terms() {
            for (j, b) in other.terms() {
                prod[(i + j) % n] += a * b;
            }
        }
        Self::reduce(self.conductor, prod)
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.conductor == other.conductor {
            return self.coeffs == other.coeffs;
        }
        let (a, b) = self.lift_pair(other);
        a.coeffs == b.coeffs
    }
}

impl Scalar for Cyclotomic {
    fn zero() -> Self {
        Self::from_rational(<BigRational as Zero>::zero())
    }

    fn one() -> Self {
        Self::from_rational(<BigRational as One>::one())
    }

    fn from_rational(r: &BigRational) -> Self {
        Cyclotomic::from_rational(r.clone())
    }

    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn add(&self, rhs: &Self) -> Self {
        let (mut a, b) = self.lift_pair(rhs);
        for (x, y) in a.coeffs.iter_mut().zip(&b.coeffs) {
            *x += y;
        }
        a
    }

    fn sub(&self, rhs: &Self) -> Self {
        let (mut a, b) = self.lift_pair(rhs);
        for (x, y) in a.coeffs.iter_mut().zip(&b.coeffs) {
            *x -= y;
        }
        a
    }

    fn mul(&self, rhs: &Self) -> Self {
        if let Some(r) = rhs.to_rational() {
            return self.scale(&r);
        }
        if let Some(r) = self.to_rational() {
            return rhs.scale(&r);
        }
        let (a, b) = self.lift_pair(rhs);
        a.poly_mul(&b)
    }

    fn neg(&self) -> Self {
        Cyclotomic {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    /// Inverse via the norm: `x^{-1} = (∏_{ℓ≠1} σ_ℓ x) / N(x)`.
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if let Some(r) = self.to_rational() {
            return Some(Self::from_rational(r.recip()));
        }
        let n = self.conductor as i64;
        let mut others = Self::one();
        for ell in 2..n {
            if gcd_i64(ell, n) == 1 {
                others = others.mul(&self.galois(ell).expect("unit"));
            }
        }
        let norm = self.mul(&others);
        let norm = norm
            .to_rational()
            .expect("the norm of a cyclotomic element is rational");
        Some(others.scale(&norm.recip()))
    }

    fn to_rational(&self) -> Option<BigRational> {
        if self.coeffs.iter().skip(1).all(Zero::is_zero) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    fn scale(&self, r: &BigRational) -> Self {
        Cyclotomic {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.to_rational() {
            return write!(f, "{r}");
        }
        let mut first = true;
        for (e, c) in self.terms() {
            let (sign, abs) = if c.is_negative() {
                ("-", -c)
            } else {
                ("+", c.clone())
            };
            if first {
                if sign == "-" {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            if e == 0 {
                write!(f, "{abs}")?;
            } else if One::is_one(&abs) {
                write!(f, "z{}^{e}", self.conductor)?;
            } else {
                write!(f, "{abs}*z{}^{e}", self.conductor)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    fn int(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![int(-1), int(1)]);
        assert_eq!(cyclotomic_polynomial(2), vec![int(1), int(1)]);
        assert_eq!(cyclotomic_polynomial(4), vec![int(1), int(0), int(1)]);
        assert_eq!(cyclotomic_polynomial(6), vec![int(1), int(-1), int(1)]);
        assert_eq!(
            cyclotomic_polynomial(12),
            vec![int(1), int(0), int(-1), int(0), int(1)]
        );
        for n in [5u64, 8, 24, 48, 105] {
            assert_eq!(cyclotomic_polynomial(n).len() as u64 - 1, euler_phi(n));
        }
    }

    #[test]
    fn rationals_are_galois_fixed() {
        let r = Cyclotomic::from_rational(rat(-7, 3)).raise(48);
        for ell in [1, 5, 7, 11, 13, 47] {
            assert_eq!(r.galois(ell).unwrap(), r);
        }
    }

    #[test]
    fn sigma5_conjugates_zeta6() {
        let z = Cyclotomic::zeta_pow(6, 1);
        assert_eq!(z.galois(5).unwrap(), Cyclotomic::zeta_pow(6, 5));
        assert_eq!(z.galois(5).unwrap(), z.conj());
    }

    #[test]
    fn sigma7_negates_sqrt2() {
        let s = Cyclotomic::sqrt2();
        assert_eq!(s.mul(&s), Cyclotomic::from_rational(rat(2, 1)));
        assert_eq!(s.galois(7).unwrap(), s);
        assert_eq!(s.galois(3).unwrap(), s.neg());
        assert_eq!(s.galois(5).unwrap(), s.neg());
    }

    #[test]
    fn sqrt3_and_i() {
        let s = Cyclotomic::sqrt3();
        assert_eq!(s.mul(&s), Cyclotomic::from_rational(rat(3, 1)));
        let i = Cyclotomic::i();
        assert_eq!(i.mul(&i), Cyclotomic::from_rational(rat(-1, 1)));
        assert!(s.is_real());
        assert!(!i.is_real());
    }

    #[test]
    fn rejects_non_coprime_index() {
        let z = Cyclotomic::zeta_pow(12, 1);
        assert_eq!(
            z.galois(4),
            Err(Error::NotCoprime { ell: 4, modulus: 12 })
        );
    }

    #[test]
    fn inverse_and_mixed_conductors() {
        let x = Cyclotomic::from_terms(7, &[(0, rat(2, 1)), (1, rat(-3, 5)), (4, rat(1, 2))]);
        let y = x.inv().unwrap();
        assert!(x.mul(&y).is_one());
        let mixed = Cyclotomic::zeta_pow(3, 1).mul(&Cyclotomic::zeta_pow(4, 1));
        assert_eq!(mixed.conductor(), 12);
        assert_eq!(mixed, Cyclotomic::zeta_pow(12, 7));
    }

    #[test]
    fn raise_then_restrict_round_trips() {
        let x = Cyclotomic::from_terms(8, &[(1, rat(1, 2)), (3, rat(-2, 1))]);
        let up = x.raise(48);
        assert_eq!(up.restrict(8).unwrap().coefficients(), x.coefficients());
        assert_eq!(Cyclotomic::sqrt2().raise(24).minimal().conductor(), 8);
        assert!(Cyclotomic::zeta_pow(48, 1).restrict(24).is_none());
    }

    #[test]
    fn root_of_unity_exponents() {
        let w = Cyclotomic::root_of_unity(&rat(17, 24));
        assert_eq!(w.as_root_of_unity(), Some(rat(17, 24)));
        // -ζ_3 lives in ℚ(ζ_3) but has order 6
        let m = Cyclotomic::zeta_pow(3, 1).neg();
        assert_eq!(m.as_root_of_unity(), Some(rat(5, 6)));
        assert_eq!(
            Cyclotomic::from_rational(rat(2, 1)).as_root_of_unity(),
            None
        );
    }
}
