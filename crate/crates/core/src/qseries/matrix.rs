use alloc::vec::Vec;

use super::QSeries;
use crate::error::{Error, Result};
use crate::exactnum::{BigRational, Scalar};

/// A square matrix whose entries are q-series, stored as rows.
pub type SeriesMatrix<F> = Vec<Vec<QSeries<F>>>;

/// Product of two series matrices.
pub fn series_mat_mul<F: Scalar>(a: &SeriesMatrix<F>, b: &SeriesMatrix<F>) -> Result<SeriesMatrix<F>> {
    let inner = b.len();
    if a.iter().any(|row| row.len() != inner) {
        return Err(Error::DimensionMismatch {
            op: "series_mat_mul",
            left: (a.len(), a.first().map_or(0, |r| r.len())),
            right: (inner, b.first().map_or(0, |r| r.len())),
        });
    }
    let cols = b.first().map_or(0, |r| r.len());
    let mut out = Vec::with_capacity(a.len());
    for row in a {
        let mut new_row = Vec::with_capacity(cols);
        for j in 0..cols {
            let mut acc: Option<QSeries<F>> = None;
            for (k, x) in row.iter().enumerate() {
                let t = x.mul(&b[k][j]);
                acc = Some(match acc {
                    None => t,
                    Some(s) => s.add(&t)?,
                });
            }
            new_row.push(acc.unwrap_or_else(|| QSeries::zero(BigRational::from_integer(0.into()))));
        }
        out.push(new_row);
    }
    Ok(out)
}

/// Determinant of a square series matrix by elimination, pivoting on the
/// entry of least valuation in each column.
pub fn series_det<F: Scalar>(m: &SeriesMatrix<F>) -> Result<QSeries<F>> {
    let n = m.len();
    if m.iter().any(|r| r.len() != n) {
        return Err(Error::DimensionMismatch {
            op: "series_det",
            left: (n, n),
            right: (n, m.first().map_or(0, |r| r.len())),
        });
    }
    let mut a = m.clone();
    let mut det: Option<QSeries<F>> = None;
    let mut negate = false;
    for k in 0..n {
        let pivot = (k..n)
            .filter(|&i| !a[i][k].is_zero())
            .min_by(|&x, &y| a[x][k].offset().cmp(a[y][k].offset()));
        let Some(p) = pivot else {
            let prec = (k..n).map(|i| a[i][k].precision()).min().unwrap();
            let scale = det.map(|d| d.offset().clone()).unwrap_or_default();
            return Ok(QSeries::zero(prec + scale));
        };
        if p != k {
            a.swap(p, k);
            negate = !negate;
        }
        let inv = a[k][k].inverse()?;
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let factor = a[i][k].mul(&inv);
            for j in k + 1..n {
                let t = factor.mul(&a[k][j]);
                a[i][j] = a[i][j].sub(&t)?;
            }
        }
        det = Some(match det {
            None => a[k][k].clone(),
            Some(d) => d.mul(&a[k][k]),
        });
    }
    let d = det.unwrap_or_else(|| QSeries::constant(F::one(), i64::MAX / 4));
    Ok(if negate { d.neg() } else { d })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;
    use alloc::vec;

    type Q = QSeries<BigRational>;

    #[test]
    fn det_of_triangular_and_permuted() {
        let one = Q::constant(rat(1, 1), 6);
        let z = Q::zero(rat(6, 1));
        let f = Q::from_ints(-1, &[1, 0, 3, 0, 0, 0, 0]);
        let g = Q::from_ints(1, &[2, 1, 0, 0, 0]);
        // [[0, f], [g, 1]] has det -f g
        let m = vec![vec![z.clone(), f.clone()], vec![g.clone(), one.clone()]];
        let d = series_det(&m).unwrap();
        assert!(d.agreement(&f.mul(&g).neg()).holds());
        assert_eq!(d.valuation(), Some(&rat(0, 1)));
    }

    #[test]
    fn det_is_multiplicative_on_unimodular_example() {
        let j = crate::qseries::classical::j_function(8);
        let one = Q::constant(rat(1, 1), 9);
        let z = Q::zero(rat(9, 1));
        let m = vec![vec![z.clone(), Q::constant(rat(-3, 1), 9)], vec![Q::constant(rat(1, 3), 9), j.clone()]];
        let d = series_det(&m).unwrap();
        assert!(d.agreement(&one).holds());
        let sq = series_mat_mul(&m, &m).unwrap();
        assert!(series_det(&sq).unwrap().agreement(&one).holds());
    }
}
