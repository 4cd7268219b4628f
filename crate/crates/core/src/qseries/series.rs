use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive};

use crate::error::{Error, Result};
use crate::exactnum::{BigRational, Cyclotomic, Scalar};

/// A truncated q-series `Σ_{i < len} c_i q^{offset + i} + O(q^{offset + len})`.
///
/// The offset is an arbitrary rational, so η-type series like `q^{1/24}(…)`
/// are represented directly. The series is kept normalized: either the first
/// stored coefficient is nonzero, or there are no coefficients at all and the
/// offset equals the absolute precision.
#[derive(Clone, Debug, PartialEq)]
pub struct QSeries<F> {
    offset: BigRational,
    coeffs: Vec<F>,
}

/// Outcome of comparing two series up to their common precision.
#[derive(Clone, Debug, PartialEq)]
pub struct Agreement<F> {
    /// Exponents strictly below this were compared.
    pub precision: BigRational,
    /// First exponent where the two sides differ, with both coefficients.
    pub first_mismatch: Option<(BigRational, F, F)>,
}

impl<F> Agreement<F> {
    pub fn holds(&self) -> bool {
        self.first_mismatch.is_none()
    }
}

fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn is_integral(r: &BigRational) -> bool {
    r.is_integer()
}

impl<F: Scalar> QSeries<F> {
    pub fn new(offset: BigRational, coeffs: Vec<F>) -> Self {
        let mut s = QSeries { offset, coeffs };
        s.normalize();
        s
    }

    /// `Σ c_i q^{offset+i}` from integer offset and coefficients.
    pub fn from_ints(offset: i64, coeffs: &[i64]) -> Self {
        Self::new(int(offset), coeffs.iter().map(|&c| F::from_int(c)).collect())
    }

    /// The zero series known below `q^precision`.
    pub fn zero(precision: BigRational) -> Self {
        QSeries {
            offset: precision,
            coeffs: Vec::new(),
        }
    }

    /// `c q^exponent + O(q^precision)`.
    pub fn monomial(c: F, exponent: BigRational, precision: &BigRational) -> Self {
        let gap = precision - &exponent;
        if !gap.is_positive() {
            return Self::zero(precision.clone());
        }
        let len = gap.ceil().to_integer().to_usize().unwrap_or(0);
        let mut coeffs = vec![F::zero(); len];
        coeffs[0] = c;
        Self::new(exponent, coeffs)
    }

    /// The constant `c + O(q^precision)`.
    pub fn constant(c: F, precision: i64) -> Self {
        Self::monomial(c, int(0), &int(precision))
    }

    fn normalize(&mut self) {
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.offset += int(lead as i64);
        }
    }

    pub fn offset(&self) -> &BigRational {
        &self.offset
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Whether every known coefficient vanishes.
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Absolute precision: coefficients of exponents below this are known.
    pub fn precision(&self) -> BigRational {
        &self.offset + int(self.coeffs.len() as i64)
    }

    /// Exponent of the leading term, `None` for the zero series.
    pub fn valuation(&self) -> Option<&BigRational> {
        if self.is_zero() {
            None
        } else {
            Some(&self.offset)
        }
    }

    pub fn leading_coefficient(&self) -> Option<&F> {
        self.coeffs.first()
    }

    /// Coefficient of `q^exponent`, or `None` beyond the precision.
    pub fn coeff(&self, exponent: &BigRational) -> Option<F> {
        if *exponent >= self.precision() {
            return None;
        }
        let d = exponent - &self.offset;
        if !is_integral(&d) || d.is_negative() {
            return Some(F::zero());
        }
        Some(self.coeffs[d.to_integer().to_usize().unwrap()].clone())
    }

    pub fn coeff_at(&self, exponent: i64) -> Option<F> {
        self.coeff(&int(exponent))
    }

    /// Coefficient of `q^exponent`, failing with [`Error::Truncated`].
    pub fn try_coeff(&self, exponent: &BigRational) -> Result<F> {
        self.coeff(exponent).ok_or_else(|| Error::Truncated {
            needed: format!("{exponent}"),
            available: format!("{}", self.precision()),
        })
    }

    /// Drops every term at or above `q^precision`.
    pub fn truncate(&self, precision: &BigRational) -> Self {
        if *precision >= self.precision() {
            return self.clone();
        }
        let keep = precision - &self.offset;
        if !keep.is_positive() {
            return Self::zero(precision.clone());
        }
        let keep = keep.ceil().to_integer().to_usize().unwrap();
        // keep exponents offset + i < precision
        let keep = (0..keep)
            .take_while(|&i| &self.offset + int(i as i64) < *precision)
            .count();
        if keep == 0 {
            return Self::zero(precision.clone());
        }
        Self::new(self.offset.clone(), self.coeffs[..keep].to_vec())
    }

    /// Keeps the terms through `q^order` (integer exponents' sector aside).
    pub fn to_order(&self, order: i64) -> Self {
        let p = int(order + 1);
        let p = if self.is_zero() || is_integral(&self.offset) {
            p
        } else {
            // smallest precision in the sector of `offset` beyond `order`
            let frac = &self.offset - self.offset.floor();
            int(order) + frac + int(1)
        };
        self.truncate(&p.min(self.precision()))
    }

    fn sector_check(&self, other: &Self) -> Result<()> {
        if self.is_zero() || other.is_zero() {
            return Ok(());
        }
        if !is_integral(&(&self.offset - &other.offset)) {
            return Err(Error::SectorMismatch {
                left: format!("{}", self.offset),
                right: format!("{}", other.offset),
            });
        }
        Ok(())
    }

    fn combine(&self, other: &Self, f: impl Fn(&F, &F) -> F) -> Result<Self> {
        self.sector_check(other)?;
        let prec = self.precision().min(other.precision());
        let base = match (self.is_zero(), other.is_zero()) {
            (true, true) => return Ok(Self::zero(prec)),
            (true, false) => other.offset.clone(),
            (false, true) => self.offset.clone(),
            (false, false) => self.offset.clone().min(other.offset.clone()),
        };
        if base >= prec {
            return Ok(Self::zero(prec));
        }
        let len = (&prec - &base).ceil().to_integer().to_usize().unwrap();
        let mut coeffs = Vec::with_capacity(len);
        for i in 0..len {
            let e = &base + int(i as i64);
            let a = self.coeff(&e).unwrap_or_else(F::zero);
            let b = other.coeff(&e).unwrap_or_else(F::zero);
            coeffs.push(f(&a, &b));
        }
        let mut out = Self::new(base, coeffs);
        if out.is_zero() {
            out.offset = prec;
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.combine(other, |a, b| a.add(b))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.combine(other, |a, b| a.sub(b))
    }

    pub fn neg(&self) -> Self {
        self.map(|c| c.neg())
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(self.precision());
        }
        self.map(|a| a.mul(c))
    }

    pub fn scale_rational(&self, r: &BigRational) -> Self {
        self.scale(&F::from_rational(r))
    }

    /// Adds the constant `c`; the series must live in the integral sector.
    pub fn add_constant(&self, c: &F) -> Result<Self> {
        let p = self.precision();
        self.add(&Self::monomial(c.clone(), int(0), &p))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let len = self.len().min(other.len());
        let offset = &self.offset + &other.offset;
        let mut coeffs = vec![F::zero(); len];
        for (i, a) in self.coeffs.iter().take(len).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(len - i).enumerate() {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] = coeffs[i + j].add(&a.mul(b));
            }
        }
        Self::new(offset, coeffs)
    }

    /// Multiplicative inverse; fails on the zero series.
    pub fn inverse(&self) -> Result<Self> {
        let a = &self.coeffs;
        let a0_inv = a.first().and_then(|c| c.inv()).ok_or(Error::DivisionByZeroSeries)?;
        let n = a.len();
        let mut b: Vec<F> = Vec::with_capacity(n);
        b.push(a0_inv.clone());
        for k in 1..n {
            let mut s = F::zero();
            for j in 1..=k {
                if a[j].is_zero() {
                    continue;
                }
                s = s.add(&a[j].mul(&b[k - j]));
            }
            b.push(s.mul(&a0_inv).neg());
        }
        Ok(Self::new(-self.offset.clone(), b))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inverse()?))
    }

    /// `self^r` for rational `r`, using the recurrence
    /// `n a_0 g_n = Σ_{k=1}^n ((r+1)k - n) a_k g_{n-k}`.
    ///
    /// The leading coefficient must have an exact `r`-th power in `F`.
    pub fn pow(&self, r: &BigRational) -> Result<Self> {
        if num_traits::Zero::is_zero(r) {
            return Ok(Self::constant(F::one(), self.len() as i64));
        }
        let a = &self.coeffs;
        let Some(a0) = a.first() else {
            if r.is_positive() {
                return Ok(Self::zero(&self.offset * r));
            }
            return Err(Error::DivisionByZeroSeries);
        };
        let g0 = leading_power(a0, r)?;
        let a0_inv = a0.inv().unwrap();
        let r1 = r + int(1);
        let mut g: Vec<F> = Vec::with_capacity(a.len());
        g.push(g0);
        for n in 1..a.len() {
            let mut s = F::zero();
            for k in 1..=n {
                if a[k].is_zero() {
                    continue;
                }
                let w = &r1 * int(k as i64) - int(n as i64);
                if num_traits::Zero::is_zero(&w) {
                    continue;
                }
                s = s.add(&a[k].mul(&g[n - k]).scale(&w));
            }
            let n_inv = BigRational::new(BigInt::one(), BigInt::from(n));
            g.push(s.mul(&a0_inv).scale(&n_inv));
        }
        Ok(Self::new(&self.offset * r, g))
    }

    pub fn pow_int(&self, e: i64) -> Result<Self> {
        self.pow(&int(e))
    }

    /// `θ f = q d/dq f`.
    pub fn q_deriv(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c.scale(&(&self.offset + int(i as i64))))
            .collect();
        let mut out = Self::new(self.offset.clone(), coeffs);
        if out.is_zero() {
            out.offset = self.precision();
        }
        out
    }

    /// `d/dq f`.
    pub fn d_dq(&self) -> Self {
        self.q_deriv().shift(&int(-1))
    }

    /// Multiplication by `q^s`.
    pub fn shift(&self, s: &BigRational) -> Self {
        QSeries {
            offset: &self.offset + s,
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn map<G: Scalar>(&self, f: impl Fn(&F) -> G) -> QSeries<G> {
        let mut out = QSeries {
            offset: self.offset.clone(),
            coeffs: self.coeffs.iter().map(f).collect(),
        };
        let p = out.precision();
        out.normalize();
        if out.coeffs.is_empty() {
            out.offset = p;
        }
        out
    }

    /// Compares coefficients below the smaller of the two precisions.
    pub fn agreement(&self, other: &Self) -> Agreement<F> {
        let precision = self.precision().min(other.precision());
        let lo = match (self.valuation(), other.valuation()) {
            (Some(a), Some(b)) => a.clone().min(b.clone()),
            (Some(a), None) | (None, Some(a)) => a.clone(),
            (None, None) => precision.clone(),
        };
        let mut exps: Vec<BigRational> = Vec::new();
        for s in [self, other] {
            for i in 0..s.len() {
                let e = &s.offset + int(i as i64);
                if e >= lo && e < precision {
                    exps.push(e);
                }
            }
        }
        exps.sort();
        exps.dedup();
        for e in exps {
            let a = self.coeff(&e).unwrap();
            let b = other.coeff(&e).unwrap();
            if a != b {
                return Agreement {
                    precision,
                    first_mismatch: Some((e, a, b)),
                };
            }
        }
        Agreement {
            precision,
            first_mismatch: None,
        }
    }

    /// Whether the two series agree through `q^order` and both are known
    /// that far.
    pub fn agrees_through(&self, other: &Self, order: i64) -> bool {
        let ag = self.agreement(other);
        ag.holds() && ag.precision > int(order)
    }
}

/// `c^r` for a rational `r`, when it exists exactly.
fn leading_power<F: Scalar>(c: &F, r: &BigRational) -> Result<F> {
    if c.is_one() {
        return Ok(F::one());
    }
    let fail = || Error::NoExactRoot {
        coefficient: format!("{c}"),
        exponent: format!("{r}"),
    };
    let num = r.numer().to_i64().ok_or_else(fail)?;
    let den = r.denom().to_u32().ok_or_else(fail)?;
    let base = if den == 1 {
        c.clone()
    } else {
        let q = c.to_rational().ok_or_else(fail)?;
        if q.is_negative() && den % 2 == 0 {
            return Err(fail());
        }
        let n = exact_root(q.numer(), den).ok_or_else(fail)?;
        let d = exact_root(q.denom(), den).ok_or_else(fail)?;
        F::from_rational(&BigRational::new(n, d))
    };
    let mut acc = F::one();
    for _ in 0..num.unsigned_abs() {
        acc = acc.mul(&base);
    }
    if num < 0 {
        acc = acc.inv().ok_or_else(fail)?;
    }
    Ok(acc)
}

fn exact_root(n: &BigInt, k: u32) -> Option<BigInt> {
    let neg = n.is_negative();
    let root = n.abs().nth_root(k);
    if num_traits::Pow::pow(&root, k) != n.abs() {
        return None;
    }
    Some(if neg { -root } else { root })
}

impl QSeries<Cyclotomic> {
    pub fn galois(&self, ell: i64) -> Result<Self> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.galois(ell))
            .collect::<Result<Vec<_>>>()?;
        Ok(QSeries {
            offset: self.offset.clone(),
            coeffs,
        })
    }
}

impl QSeries<BigRational> {
    /// The same series over a larger field.
    pub fn lift<G: Scalar>(&self) -> QSeries<G> {
        self.map(G::from_rational)
    }
}

impl<F: Scalar> fmt::Display for QSeries<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = &self.offset + int(i as i64);
            write!(f, "({c})*q^{e} + ")?;
        }
        write!(f, "O(q^{})", self.precision())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;
    use proptest::prelude::*;

    type Q = QSeries<BigRational>;

    #[test]
    fn normalization_and_precision() {
        let s = Q::from_ints(-1, &[0, 0, 3, 4]);
        assert_eq!(*s.offset(), rat(1, 1));
        assert_eq!(s.precision(), rat(3, 1));
        assert_eq!(s.coeff_at(0), Some(rat(0, 1)));
        assert_eq!(s.coeff_at(2), Some(rat(4, 1)));
        assert_eq!(s.coeff_at(3), None);
        let z = Q::from_ints(0, &[0, 0]);
        assert!(z.is_zero());
        assert_eq!(z.precision(), rat(2, 1));
    }

    #[test]
    fn sector_mismatch_is_rejected() {
        let a = Q::new(rat(1, 24), vec![rat(1, 1)]);
        let b = Q::from_ints(0, &[1]);
        assert!(matches!(a.add(&b), Err(Error::SectorMismatch { .. })));
        // zero is sector agnostic
        assert!(a.add(&Q::zero(rat(5, 1))).is_ok());
    }

    #[test]
    fn geometric_inverse() {
        let s = Q::from_ints(0, &[1, -1, 0, 0, 0]);
        let inv = s.inverse().unwrap();
        assert_eq!(inv, Q::from_ints(0, &[1, 1, 1, 1, 1]));
    }

    #[test]
    fn square_root_of_four_times_square() {
        // (2 + 2q)^2 = 4 + 8q + 4q^2
        let s = Q::from_ints(0, &[4, 8, 4, 0, 0]);
        let r = s.pow(&rat(1, 2)).unwrap();
        assert_eq!(r, Q::from_ints(0, &[2, 2, 0, 0, 0]));
        assert!(matches!(
            Q::from_ints(0, &[2, 1]).pow(&rat(1, 2)),
            Err(Error::NoExactRoot { .. })
        ));
    }

    #[test]
    fn truncation_respects_fractional_sector() {
        let s = Q::new(rat(1, 3), vec![rat(1, 1), rat(2, 1), rat(3, 1)]);
        let t = s.to_order(1);
        assert_eq!(t.precision(), rat(7, 3));
        assert_eq!(t.len(), 2);
    }

    #[test]
    fn agreement_reports_first_mismatch() {
        let a = Q::from_ints(0, &[1, 2, 3, 4]);
        let b = Q::from_ints(0, &[1, 2, 5]);
        let ag = a.agreement(&b);
        assert_eq!(ag.precision, rat(3, 1));
        assert_eq!(ag.first_mismatch, Some((rat(2, 1), rat(3, 1), rat(5, 1))));
        assert!(a.agrees_through(&Q::from_ints(0, &[1, 2, 3]), 2));
    }

    fn series(len: usize) -> impl Strategy<Value = Q> {
        (proptest::collection::vec(-20i64..20, len), -3i64..3)
            .prop_map(|(v, o)| Q::from_ints(o, &v))
    }

    fn unit_series(len: usize) -> impl Strategy<Value = Q> {
        (proptest::collection::vec(-20i64..20, len - 1), 1i64..4, -3i64..3).prop_map(|(v, c, o)| {
            let mut all = vec![c];
            all.extend(v);
            Q::from_ints(o, &all)
        })
    }

    proptest! {
        #[test]
        fn leibniz(a in series(12), b in series(12)) {
            let lhs = a.mul(&b).q_deriv();
            let rhs = a.q_deriv().mul(&b).add(&a.mul(&b.q_deriv())).unwrap();
            prop_assert!(lhs.agreement(&rhs).holds());
        }

        #[test]
        fn inverse_round_trip(a in unit_series(12)) {
            let one = a.mul(&a.inverse().unwrap());
            prop_assert!(one.agreement(&Q::constant(rat(1, 1), 12)).holds());
            prop_assert_eq!(one.precision(), rat(12, 1));
        }

        #[test]
        fn power_laws(a in unit_series(10)) {
            let a = a.scale(&a.leading_coefficient().unwrap().inv().unwrap());
            let cube_root = a.pow(&rat(1, 3)).unwrap();
            prop_assert!(cube_root.pow_int(3).unwrap().agreement(&a).holds());
            let p = a.pow(&rat(5, 2)).unwrap().mul(&a.pow(&rat(-3, 2)).unwrap());
            prop_assert!(p.agreement(&a).holds());
        }

        #[test]
        fn integer_power_matches_products(a in unit_series(8)) {
            let p = a.pow_int(3).unwrap();
            prop_assert!(p.agreement(&a.mul(&a).mul(&a)).holds());
        }

        #[test]
        fn add_sub_round_trip(a in series(10), b in series(10)) {
            let c = a.add(&b).unwrap().sub(&b).unwrap();
            prop_assert!(c.agreement(&a).holds());
        }
    }
}
