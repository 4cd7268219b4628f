use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::QSeries;
use crate::error::{Error, Result};
use crate::exactnum::{BigRational, Scalar};

/// A series in two variables, stored as q-series coefficients of
/// `z^{z_offset}, z^{z_offset+1}, …`; powers of `z` past the last row are
/// unknown.
#[derive(Clone, Debug, PartialEq)]
pub struct BivariateSeries<F> {
    z_offset: i64,
    rows: Vec<QSeries<F>>,
}

/// A coefficient where two bivariate series differ.
#[derive(Clone, Debug, PartialEq)]
pub struct BiMismatch<F> {
    pub q_exponent: BigRational,
    pub z_exponent: i64,
    pub lhs: F,
    pub rhs: F,
}

fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl<F: Scalar> BivariateSeries<F> {
    pub fn new(z_offset: i64, rows: Vec<QSeries<F>>) -> Self {
        BivariateSeries { z_offset, rows }
    }

    pub fn z_offset(&self) -> i64 {
        self.z_offset
    }

    /// Powers of `z` below this are known.
    pub fn z_precision(&self) -> i64 {
        self.z_offset + self.rows.len() as i64
    }

    pub fn rows(&self) -> &[QSeries<F>] {
        &self.rows
    }

    /// The q-series coefficient of `z^k`; `None` when `k` is not known.
    pub fn z_coeff(&self, k: i64) -> Option<&QSeries<F>> {
        if k < self.z_offset {
            return None;
        }
        self.rows.get((k - self.z_offset) as usize)
    }

    /// Coefficient of `q^a z^b`. Powers of `z` below the offset are zero.
    pub fn coeff(&self, a: &BigRational, b: i64) -> Option<F> {
        if b >= self.z_precision() {
            return None;
        }
        if b < self.z_offset {
            return Some(F::zero());
        }
        self.rows[(b - self.z_offset) as usize].coeff(a)
    }

    fn aligned(&self, other: &Self, f: impl Fn(&QSeries<F>, &QSeries<F>) -> Result<QSeries<F>>) -> Result<Self> {
        let lo = self.z_offset.min(other.z_offset);
        let hi = self.z_precision().min(other.z_precision());
        let mut rows = Vec::new();
        for k in lo..hi {
            let a = self.row_or_zero(k, other);
            let b = other.row_or_zero(k, self);
            rows.push(f(&a, &b)?);
        }
        Ok(BivariateSeries { z_offset: lo, rows })
    }

    fn row_or_zero(&self, k: i64, like: &Self) -> QSeries<F> {
        match self.z_coeff(k) {
            Some(r) => r.clone(),
            None => {
                let p = like
                    .z_coeff(k)
                    .map(|r| r.precision())
                    .unwrap_or_else(|| int(i64::MAX / 4));
                QSeries::zero(p)
            }
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.aligned(other, |a, b| a.add(b))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.aligned(other, |a, b| a.sub(b))
    }

    /// Multiplication by a series in `q` alone.
    pub fn mul_q(&self, f: &QSeries<F>) -> Self {
        BivariateSeries {
            z_offset: self.z_offset,
            rows: self.rows.iter().map(|r| r.mul(f)).collect(),
        }
    }

    /// Multiplication by a series in `z` alone, given as a [`QSeries`] in the
    /// variable `z` with an integral offset.
    pub fn mul_z(&self, g: &QSeries<F>) -> Result<Self> {
        let g_off = g
            .offset()
            .is_integer()
            .then(|| g.offset().to_integer().to_i64())
            .flatten()
            .ok_or_else(|| Error::Invalid(format!("z-series offset {} is not integral", g.offset())))?;
        let len = self.rows.len().min(g.len());
        let mut rows = Vec::with_capacity(len);
        for k in 0..len {
            let mut acc: Option<QSeries<F>> = None;
            for j in 0..=k {
                let c = &g.coeffs()[j];
                let term = if c.is_zero() {
                    QSeries::zero(self.rows[k - j].precision())
                } else {
                    self.rows[k - j].scale(c)
                };
                acc = Some(match acc {
                    None => term,
                    Some(a) => a.add(&term)?,
                });
            }
            rows.push(acc.unwrap());
        }
        Ok(BivariateSeries {
            z_offset: self.z_offset + g_off,
            rows,
        })
    }

    /// Multiplication by `z^s`.
    pub fn shift_z(&self, s: i64) -> Self {
        BivariateSeries {
            z_offset: self.z_offset + s,
            rows: self.rows.clone(),
        }
    }

    /// `f(q) g(z)`.
    pub fn outer(f: &QSeries<F>, g: &QSeries<F>) -> Result<Self> {
        let one = BivariateSeries {
            z_offset: 0,
            rows: alloc::vec![f.clone()],
        };
        // a single row of f at z^0, extended with zero rows by mul_z
        let g_len = g.len();
        let mut rows = one.rows;
        for _ in 1..g_len {
            rows.push(QSeries::zero(f.precision()));
        }
        BivariateSeries { z_offset: 0, rows }.mul_z(g)
    }

    /// First coefficient `q^a z^b` with `a ≤ mq`, `b ≤ mz` where the two
    /// series differ; fails if either side is not known that far.
    pub fn first_mismatch(&self, other: &Self, mq: i64, mz: i64) -> Result<Option<BiMismatch<F>>> {
        let lo = self.z_offset.min(other.z_offset);
        for b in lo..=mz {
            for s in [self, other] {
                if b >= s.z_precision() {
                    return Err(Error::Truncated {
                        needed: format!("z^{b}"),
                        available: format!("z^{}", s.z_precision()),
                    });
                }
            }
            let ra = self.row_or_zero(b, other);
            let rb = other.row_or_zero(b, self);
            let ag = ra.agreement(&rb);
            if let Some((e, x, y)) = ag.first_mismatch {
                if e <= int(mq) {
                    return Ok(Some(BiMismatch {
                        q_exponent: e,
                        z_exponent: b,
                        lhs: x,
                        rhs: y,
                    }));
                }
            }
            if ag.precision <= int(mq) {
                return Err(Error::Truncated {
                    needed: format!("q^{mq} at z^{b}"),
                    available: format!("q^{}", ag.precision),
                });
            }
        }
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    type Q = QSeries<BigRational>;

    #[test]
    fn outer_product_coefficients() {
        let f = Q::from_ints(-1, &[1, 2, 3]);
        let g = Q::from_ints(1, &[5, 7]);
        let b = BivariateSeries::outer(&f, &g).unwrap();
        assert_eq!(b.z_offset(), 1);
        assert_eq!(b.coeff(&rat(0, 1), 2), Some(rat(14, 1)));
        assert_eq!(b.coeff(&rat(-1, 1), 1), Some(rat(5, 1)));
        assert_eq!(b.coeff(&rat(0, 1), 0), Some(rat(0, 1)));
        assert_eq!(b.coeff(&rat(0, 1), 3), None);
    }

    #[test]
    fn z_multiplication_is_commutative_with_outer() {
        // (f(q) g(z)) h(z) = f(q) (g h)(z)
        let f = Q::from_ints(0, &[1, -1, 4, 0]);
        let g = Q::from_ints(0, &[2, 3, 0, 1]);
        let h = Q::from_ints(-1, &[1, 1, 1, 1]);
        let lhs = BivariateSeries::outer(&f, &g).unwrap().mul_z(&h).unwrap();
        let rhs = BivariateSeries::outer(&f, &g.mul(&h)).unwrap();
        assert_eq!(lhs.first_mismatch(&rhs, 3, 2).unwrap(), None);
    }

    #[test]
    fn mismatch_and_truncation() {
        let f = Q::from_ints(0, &[1, 2]);
        let a = BivariateSeries::outer(&f, &Q::from_ints(0, &[1, 1])).unwrap();
        let b = BivariateSeries::outer(&f, &Q::from_ints(0, &[1, 2])).unwrap();
        let m = a.first_mismatch(&b, 1, 1).unwrap().unwrap();
        assert_eq!((m.q_exponent, m.z_exponent), (rat(0, 1), 1));
        assert!(a.first_mismatch(&a, 1, 2).is_err());
        let d = a.sub(&a.shift_z(0)).unwrap();
        assert!(d.rows().iter().all(|r| r.is_zero()));
    }
}
