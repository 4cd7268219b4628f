//! The fundamental matrix `Ξ = q^{Λ-1} Ψ(q)` as an exact series, and the
//! identities it satisfies.
//!
//! `Ψ` is stored as its coefficient matrices `Ψ[0] = 1, Ψ[1] = X, Ψ[2], …`,
//! so every stored exponent is an integer.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::exactnum::{rat, BigRational, Matrix, Scalar};
use crate::qseries::classical::{e_series, eisenstein, delta, j_function, nabla, z_series};
use crate::qseries::{series_det, series_mat_mul, QSeries, SeriesMatrix};
use crate::repdata::{CheckReport, RepData, Signature};

fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Coefficient matrices of `Ψ` through `q^order`.
#[derive(Clone, Debug, PartialEq)]
pub struct FundamentalMatrix<F> {
    lambda: Vec<BigRational>,
    psi: Vec<Matrix<F>>,
    resonances: Vec<Resonance>,
}

/// A resonant coefficient `n + Λ_ξ - Λ_η = 0` whose right-hand side vanished;
/// the coefficient was fixed by convention rather than by the recursion.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Resonance {
    pub n: usize,
    pub row: usize,
    pub col: usize,
}

/// The rational series `f = (J - 240)/E` and `g = 1/E` through `q^order`.
fn ode_coefficients(order: usize) -> (QSeries<BigRational>, QSeries<BigRational>) {
    let m = order as i64;
    let e = e_series(m + 1);
    let g = e.inverse().expect("E is nonzero");
    let f = j_function(m + 1).add_constant(&int(-240)).unwrap().mul(&g);
    (f.to_order(m), g.to_order(m))
}

/// A rational series compared against an expected result, as a report.
pub(crate) fn series_report<F: Scalar>(
    name: impl Into<String>,
    lhs: &QSeries<F>,
    rhs: &QSeries<F>,
    need: &BigRational,
) -> CheckReport {
    let ag = lhs.agreement(rhs);
    match ag.first_mismatch {
        Some((e, a, b)) => CheckReport::new(name, false, format!("{a} at q^{e}"), format!("{b}")),
        None if ag.precision < *need => CheckReport::new(
            name,
            false,
            format!("known below q^{}", ag.precision),
            format!("needed below q^{need}"),
        ),
        None => CheckReport::new(
            name,
            true,
            format!("agree below q^{}", ag.precision),
            format!("needed below q^{need}"),
        ),
    }
}

/// Solves `θΞ = Ξ D(q)` for `Ψ[0..=order]` with `Ψ[0] = 1`.
pub fn expand_fundamental<F: Scalar>(rep: &RepData<F>, order: usize) -> Result<FundamentalMatrix<F>> {
    let d = rep.dim();
    let lambda = rep.lambda().to_vec();
    let (f, g) = ode_coefficients(order);
    let fc: Vec<F> = (0..=order as i64)
        .map(|m| F::from_rational(&f.coeff_at(m).unwrap()))
        .collect();
    let gc: Vec<F> = (0..=order as i64)
        .map(|m| F::from_rational(&g.coeff_at(m).unwrap()))
        .collect();
    assert!(fc[0].is_one() && gc[0].is_zero(), "D[0] = Λ - 1");
    let ex = rep.e_x();
    let lm1: Vec<F> = lambda.iter().map(|l| F::from_rational(&(l - int(1)))).collect();

    let mut psi: Vec<Matrix<F>> = vec![Matrix::identity(d)];
    let mut resonances = Vec::new();
    for n in 1..=order {
        let mut pf = Matrix::zeros(d, d);
        let mut pg = Matrix::zeros(d, d);
        for m in 1..=n {
            if !fc[m].is_zero() {
                pf = pf.add(&psi[n - m].scale(&fc[m]))?;
            }
            if !gc[m].is_zero() {
                pg = pg.add(&psi[n - m].scale(&gc[m]))?;
            }
        }
        let pge = pg.mul(&ex)?;
        let mut next = Matrix::zeros(d, d);
        for r in 0..d {
            for c in 0..d {
                let rhs = pf.get(r, c).mul(&lm1[c]).add(pge.get(r, c));
                let div = int(n as i64) + &lambda[r] - &lambda[c];
                if num_traits::Zero::is_zero(&div) {
                    if !rhs.is_zero() {
                        return Err(Error::Resonance {
                            n,
                            row: r,
                            col: c,
                            rhs: format!("{rhs}"),
                        });
                    }
                    resonances.push(Resonance { n, row: r, col: c });
                    let v = if n == 1 { rep.x().get(r, c).clone() } else { F::zero() };
                    next.set(r, c, v);
                } else {
                    next.set(r, c, rhs.scale(&div.recip()));
                }
            }
        }
        if n == 1 {
            for r in 0..d {
                for c in 0..d {
                    if next.get(r, c) != rep.x().get(r, c) {
                        return Err(Error::Inconsistent {
                            row: r,
                            col: c,
                            expected: format!("{}", rep.x().get(r, c)),
                            found: format!("{}", next.get(r, c)),
                        });
                    }
                }
            }
        }
        psi.push(next);
    }
    Ok(FundamentalMatrix {
        lambda,
        psi,
        resonances,
    })
}

/// Solves the boundary-value problem on a rational representation and lifts
/// the result; a convenience for cyclotomic callers with rational data.
pub fn expand_rational<F: Scalar>(rep: &RepData<BigRational>, order: usize) -> Result<FundamentalMatrix<F>> {
    Ok(expand_fundamental(rep, order)?.map(F::from_rational))
}

impl<F: Scalar> FundamentalMatrix<F> {
    /// Assembles a fundamental matrix from known coefficients.
    pub fn from_parts(lambda: Vec<BigRational>, psi: Vec<Matrix<F>>) -> Result<Self> {
        let d = lambda.len();
        if psi.is_empty() || psi.iter().any(|m| m.shape() != (d, d)) {
            return Err(Error::Invalid(format!(
                "psi must be a nonempty list of {d}x{d} matrices"
            )));
        }
        Ok(FundamentalMatrix {
            lambda,
            psi,
            resonances: Vec::new(),
        })
    }

    pub fn dim(&self) -> usize {
        self.lambda.len()
    }

    pub fn lambda(&self) -> &[BigRational] {
        &self.lambda
    }

    /// `Ψ[n]` for `n ≤ order`.
    pub fn psi(&self) -> &[Matrix<F>] {
        &self.psi
    }

    /// Coefficients are known through `q^order`.
    pub fn order(&self) -> usize {
        self.psi.len() - 1
    }

    pub fn resonances(&self) -> &[Resonance] {
        &self.resonances
    }

    /// The characteristic matrix `Ψ[1]`.
    pub fn x(&self) -> Option<&Matrix<F>> {
        self.psi.get(1)
    }

    pub fn map<G: Scalar>(&self, f: impl Fn(&F) -> G) -> FundamentalMatrix<G> {
        FundamentalMatrix {
            lambda: self.lambda.clone(),
            psi: self.psi.iter().map(|m| m.map(&f)).collect(),
            resonances: self.resonances.clone(),
        }
    }

    /// The same data cut down to `q^order`.
    pub fn truncate(&self, order: usize) -> Self {
        let mut out = self.clone();
        out.psi.truncate(order + 1);
        out
    }

    /// `Σ_n Ψ[n]_ij q^n`.
    pub fn psi_entry(&self, i: usize, j: usize) -> QSeries<F> {
        QSeries::new(int(0), self.psi.iter().map(|m| m.get(i, j).clone()).collect())
            .truncate(&int(self.psi.len() as i64))
    }

    /// `Ξ_ij = q^{Λ_i - 1} Ψ_ij`.
    pub fn xi_entry(&self, i: usize, j: usize) -> QSeries<F> {
        self.psi_entry(i, j).shift(&(&self.lambda[i] - int(1)))
    }

    pub fn psi_matrix(&self) -> SeriesMatrix<F> {
        let d = self.dim();
        (0..d).map(|i| (0..d).map(|j| self.psi_entry(i, j)).collect()).collect()
    }

    pub fn xi_matrix(&self) -> SeriesMatrix<F> {
        let d = self.dim();
        (0..d).map(|i| (0..d).map(|j| self.xi_entry(i, j)).collect()).collect()
    }

    /// Column `col` of `Ξ`, Λ-normalized: component `ν` is `q^{-1} Ψ_ν,col`.
    pub fn normalized_column(&self, col: usize) -> Vec<QSeries<F>> {
        (0..self.dim())
            .map(|i| self.psi_entry(i, col).shift(&int(-1)))
            .collect()
    }

    fn lifted(s: &QSeries<BigRational>) -> QSeries<F> {
        s.map(F::from_rational)
    }

    /// The first-order form of the compatibility equation, column by column:
    /// `∇Ξ_νξ = (J-240)(Λ_ξ-1)Ξ_νξ + Σ_η (1+Λ_η-Λ_ξ) X_ηξ Ξ_νη`.
    pub fn compat1_check(&self, x: &Matrix<F>) -> Result<Vec<CheckReport>> {
        let m = self.order() as i64;
        let d = self.dim();
        let e = Self::lifted(&e_series(m + 1));
        let jm = Self::lifted(&j_function(m + 1).add_constant(&int(-240))?);
        let xi = self.xi_matrix();
        let mut out = Vec::new();
        for col in 0..d {
            for nu in 0..d {
                let lhs = nabla(&xi[nu][col], &e);
                let mut rhs = jm
                    .mul(&xi[nu][col])
                    .scale_rational(&(&self.lambda[col] - int(1)));
                for eta in 0..d {
                    let w = int(1) + &self.lambda[eta] - &self.lambda[col];
                    let c = x.get(eta, col).scale(&w);
                    rhs = rhs.add(&xi[nu][eta].scale(&c))?;
                }
                let need = &self.lambda[nu] - int(1) + int(m - 2) + int(1);
                out.push(series_report(
                    format!("compatibility equation, entry ({nu},{col})"),
                    &lhs,
                    &rhs,
                    &need,
                ));
            }
        }
        Ok(out)
    }

    /// Coefficient matrices of `Ψ⁻¹` through `q^order`.
    pub fn psi_inverse(&self) -> Result<Vec<Matrix<F>>> {
        let d = self.dim();
        let mut inv: Vec<Matrix<F>> = vec![Matrix::identity(d)];
        for n in 1..=self.order() {
            let mut s = Matrix::zeros(d, d);
            for k in 1..=n {
                s = s.add(&self.psi[k].mul(&inv[n - k])?)?;
            }
            inv.push(s.neg());
        }
        Ok(inv)
    }

    /// `(Ψ⁻¹)_ij` as a series through `q^order`.
    pub fn psi_inverse_matrix(&self) -> Result<SeriesMatrix<F>> {
        let inv = self.psi_inverse()?;
        let d = self.dim();
        let prec = int(inv.len() as i64);
        Ok((0..d)
            .map(|i| {
                (0..d)
                    .map(|j| QSeries::new(int(0), inv.iter().map(|m| m.get(i, j).clone()).collect()).truncate(&prec))
                    .collect()
            })
            .collect())
    }

    /// `det Ξ` as a series.
    pub fn det_xi(&self) -> Result<QSeries<F>> {
        let tr: BigRational = self.lambda.iter().fold(int(0), |a, l| a + l - int(1));
        Ok(series_det(&self.psi_matrix())?.shift(&tr))
    }

    /// `det Ξ = (E₄/Δ^{1/3})^{β₁+2β₂} (E₆/Δ^{1/2})^α` and the leading exponent
    /// `Tr(Λ-1)`.
    pub fn det_check(&self, sig: &Signature) -> Result<Vec<CheckReport>> {
        let m = self.order() as i64;
        let det = self.det_xi()?;
        let tr: BigRational = self.lambda.iter().fold(int(0), |a, l| a + l - int(1));
        let a = (sig.beta1 + 2 * sig.beta2) as i64;
        let b = sig.alpha as i64;
        let e4 = eisenstein(4, m)?.pow_int(a)?;
        let e6 = eisenstein(6, m)?.pow_int(b)?;
        let s = rat(a, 3) + rat(b, 2);
        let dq = delta(m + 1).shift(&int(-1)).pow(&-s.clone())?;
        let rhs = Self::lifted(&e4.mul(&e6).mul(&dq).shift(&-s));
        let need = &tr + int(m - self.dim() as i64 + 1);
        let lead = det.valuation().cloned();
        Ok(vec![
            series_report("det Ξ = (E4/Δ^(1/3))^(β1+2β2) (E6/Δ^(1/2))^α", &det, &rhs, &need),
            CheckReport::new(
                "leading exponent of det Ξ is Tr(Λ-1)",
                lead.as_ref() == Some(&tr),
                lead.map_or_else(|| String::from("zero series"), |l| format!("{l}")),
                &tr,
            ),
        ])
    }

    /// `θ det Ξ = det Ξ · Tr D(q)` with `Tr D = f Tr(Λ-1) + g Tr X`.
    pub fn detdif_check(&self) -> Result<CheckReport> {
        let m = self.order();
        let det = self.det_xi()?;
        let (f, g) = ode_coefficients(m);
        let tr: BigRational = self.lambda.iter().fold(int(0), |a, l| a + l - int(1));
        let x = self.x().ok_or_else(|| Error::Truncated {
            needed: String::from("q^1"),
            available: String::from("q^0"),
        })?;
        let trd = Self::lifted(&f)
            .scale_rational(&tr)
            .add(&Self::lifted(&g).scale(&x.trace()))?;
        let lhs = det.q_deriv();
        let rhs = det.mul(&trd);
        let need = &tr + int(m as i64 - 2 + 1);
        Ok(series_report("θ det Ξ = det Ξ · Tr D", &lhs, &rhs, &need))
    }

    /// `∇Ξ = Ξ (864(z-1)A + 576 z B)`.
    pub fn hypergeometric_check(&self, a: &Matrix<F>, b: &Matrix<F>) -> Result<Vec<CheckReport>> {
        let m = self.order() as i64;
        let d = self.dim();
        let e = Self::lifted(&e_series(m + 1));
        let z = Self::lifted(&z_series(m + 1));
        let zm1 = z.add_constant(&F::from_int(-1))?.scale_rational(&int(864));
        let z576 = z.scale_rational(&int(576));
        let xi = self.xi_matrix();
        let mut out = Vec::new();
        for nu in 0..d {
            for col in 0..d {
                let lhs = nabla(&xi[nu][col], &e);
                let mut rhs: Option<QSeries<F>> = None;
                for eta in 0..d {
                    let k = zm1
                        .scale(a.get(eta, col))
                        .add(&z576.scale(b.get(eta, col)))?;
                    let t = xi[nu][eta].mul(&k);
                    rhs = Some(match rhs {
                        None => t,
                        Some(r) => r.add(&t)?,
                    });
                }
                let need = &self.lambda[nu] - int(1) + int(m - 2) + int(1);
                out.push(series_report(
                    format!("hypergeometric equation, entry ({nu},{col})"),
                    &lhs,
                    &rhs.unwrap(),
                    &need,
                ));
            }
        }
        Ok(out)
    }

    /// `Ξ^∨ = (E₁₄/Δ^{7/6}) (Ξᵗ)⁻¹`, i.e. `Ψ^∨ = h (Ψᵗ)⁻¹` with
    /// `h = q^{7/6} E₁₄/Δ^{7/6}`.
    pub fn dual(&self) -> Result<Self> {
        let m = self.order();
        let d = self.dim();
        let h = eisenstein(14, m as i64)?
            .mul(&delta(m as i64 + 1).shift(&int(-1)).pow(&rat(-7, 6))?);
        let hc: Vec<F> = (0..=m as i64)
            .map(|k| F::from_rational(&h.coeff_at(k).unwrap()))
            .collect();
        let w: Vec<Matrix<F>> = self.psi.iter().map(|p| p.transpose()).collect();
        let w0_inv = w[0].inverse()?;
        let mut winv: Vec<Matrix<F>> = vec![w0_inv.clone()];
        for n in 1..=m {
            let mut s = Matrix::zeros(d, d);
            for k in 1..=n {
                s = s.add(&w[k].mul(&winv[n - k])?)?;
            }
            winv.push(w0_inv.mul(&s)?.neg());
        }
        let mut psi = Vec::with_capacity(m + 1);
        for n in 0..=m {
            let mut s = Matrix::zeros(d, d);
            for k in 0..=n {
                if !hc[k].is_zero() {
                    s = s.add(&winv[n - k].scale(&hc[k]))?;
                }
            }
            psi.push(s);
        }
        Ok(FundamentalMatrix {
            lambda: self.lambda.iter().map(|l| rat(5, 6) - l).collect(),
            psi,
            resonances: Vec::new(),
        })
    }

    /// The unimodular matrix `M` moving one unit of `Λ` from `j` to `i`, with
    /// the constant `c` in its `(j, j)` entry `J - c`.
    pub fn shift_matrix(&self, x: &Matrix<F>, i: usize, j: usize, c: &F) -> Result<SeriesMatrix<F>> {
        let d = self.dim();
        let xij = x.get(i, j).clone();
        let xij_inv = xij.inv().ok_or(Error::ZeroPivotEntry { row: i, col: j })?;
        let m = self.order() as i64;
        let prec = m + 1;
        let konst = |v: F| QSeries::constant(v, prec);
        let jm = Self::lifted(&j_function(m)).add_constant(&c.neg())?;
        let mut out: SeriesMatrix<F> = (0..d)
            .map(|r| {
                (0..d)
                    .map(|s| konst(if r == s && r != i && r != j { F::one() } else { F::zero() }))
                    .collect()
            })
            .collect();
        out[j][i] = konst(xij_inv.clone());
        out[i][j] = konst(xij.neg());
        out[j][j] = jm;
        for k in (0..d).filter(|&k| k != i && k != j) {
            out[k][j] = konst(x.get(k, j).neg());
            out[j][k] = konst(x.get(i, k).mul(&xij_inv).neg());
        }
        Ok(out)
    }

    /// Moves one unit of `Λ` from component `j` to component `i` at fixed
    /// trace. Returns the new data and its fundamental matrix, known through
    /// `q^{order-2}`.
    pub fn lambda_shift(&self, i: usize, j: usize) -> Result<(RepData<F>, Self)> {
        let d = self.dim();
        if i == j || i >= d || j >= d {
            return Err(Error::Invalid(format!("shift needs two distinct indices below {d}")));
        }
        if self.order() < 3 {
            return Err(Error::Truncated {
                needed: String::from("q^3"),
                available: format!("q^{}", self.order()),
            });
        }
        let x = self.x().unwrap().clone();
        let psi = self.psi_matrix();
        let row_shift = |r: usize| -> BigRational {
            if r == i {
                int(-1)
            } else if r == j {
                int(1)
            } else {
                int(0)
            }
        };
        let apply = |c: &F| -> Result<SeriesMatrix<F>> {
            let m = self.shift_matrix(&x, i, j, c)?;
            let p = series_mat_mul(&psi, &m)?;
            Ok(p.into_iter()
                .enumerate()
                .map(|(r, row)| row.into_iter().map(|s| s.shift(&row_shift(r))).collect())
                .collect())
        };
        let trial = apply(&F::zero())?;
        let r0 = trial[i][j].try_coeff(&int(0))?;
        let c = r0.mul(&x.get(i, j).inv().ok_or(Error::ZeroPivotEntry { row: i, col: j })?);
        let shifted = apply(&c)?;
        let new_order = self.order() - 2;
        let mut new_psi: Vec<Matrix<F>> = (0..=new_order).map(|_| Matrix::zeros(d, d)).collect();
        for (r, row) in shifted.iter().enumerate() {
            for (s, series) in row.iter().enumerate() {
                if let Some(v) = series.valuation() {
                    if *v < int(0) {
                        let e = v.to_integer();
                        return Err(Error::BoundaryObstruction {
                            row: r,
                            col: s,
                            exponent: num_traits::ToPrimitive::to_i64(&e).unwrap_or(i64::MIN),
                            value: format!("{}", series.leading_coefficient().unwrap()),
                        });
                    }
                }
                for n in 0..=new_order {
                    new_psi[n].set(r, s, series.try_coeff(&int(n as i64))?);
                }
            }
        }
        if !new_psi[0].is_identity() {
            for r in 0..d {
                for s in 0..d {
                    let want = if r == s { F::one() } else { F::zero() };
                    if *new_psi[0].get(r, s) != want {
                        return Err(Error::BoundaryObstruction {
                            row: r,
                            col: s,
                            exponent: 0,
                            value: format!("{}", new_psi[0].get(r, s)),
                        });
                    }
                }
            }
        }
        let mut lambda = self.lambda.clone();
        lambda[i] += int(1);
        lambda[j] -= int(1);
        let rep = RepData::new(lambda.clone(), new_psi[1].clone())?;
        Ok((
            rep,
            FundamentalMatrix {
                lambda,
                psi: new_psi,
                resonances: Vec::new(),
            },
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;
    use crate::qseries::classical::eisenstein_quotient;
    use crate::repdata::all_pass;

    type Q = BigRational;

    fn rep(lambda: &[(i64, i64)], x: &[&[i64]]) -> RepData<Q> {
        RepData::new(
            lambda.iter().map(|&(n, d)| rat(n, d)).collect(),
            Matrix::from_rows(x.iter().map(|r| r.iter().map(|&v| rat(v, 1)).collect()).collect()).unwrap(),
        )
        .unwrap()
    }

    fn e7() -> RepData<Q> {
        rep(&[(17, 24), (11, 24)], &[&[133, 1248], &[56, -377]])
    }

    fn ints(m: &Matrix<Q>) -> Vec<Vec<i64>> {
        m.to_rows()
            .iter()
            .map(|r| r.iter().map(|v| num_traits::ToPrimitive::to_i64(&v.to_integer()).unwrap()).collect())
            .collect()
    }

    #[test]
    fn e7_printed_coefficients() {
        let f = expand_fundamental(&e7(), 3).unwrap();
        assert_eq!(ints(&f.psi()[1]), vec![vec![133, 1248], vec![56, -377]]);
        assert_eq!(ints(&f.psi()[2]), vec![vec![1673, 49504], vec![968, -22126]]);
        assert_eq!(ints(&f.psi()[3]), vec![vec![11914, 806752], vec![7504, -422123]]);
        assert!(f.resonances().is_empty());
    }

    #[test]
    fn kappa_squared_is_cube_root() {
        let f = expand_fundamental(&rep(&[(2, 3)], &[&[248]]), 20).unwrap();
        let want = eisenstein_quotient(4, &rat(1, 3), 20).unwrap();
        assert!(f.xi_entry(0, 0).agrees_through(&want, -1 + 20 - 1));
    }

    #[test]
    fn inconsistent_and_resonant_inputs() {
        // the first coefficient reproduces X for any data without resonances
        let any = rep(&[(1, 3), (3, 4)], &[&[5, -7], &[11, 2]]);
        assert_eq!(expand_fundamental(&any, 2).unwrap().x(), Some(any.x()));
        // a resonance at n = 1 with vanishing right-hand side is flagged
        let flagged = rep(&[(1, 1), (0, 1)], &[&[0, 0], &[1, 0]]);
        let f = expand_fundamental(&flagged, 3).unwrap();
        assert_eq!(f.resonances(), &[Resonance { n: 1, row: 1, col: 0 }]);
        // exponents two apart force a nonzero right-hand side at n = 2
        let res = rep(&[(2, 1), (0, 1)], &[&[0, 0], &[1, 0]]);
        assert!(matches!(
            expand_fundamental(&res, 3),
            Err(Error::Resonance { n: 2, row: 1, col: 0, .. })
        ));
    }

    #[test]
    fn e7_identities() {
        let r = e7();
        let f = expand_fundamental(&r, 12).unwrap();
        assert!(all_pass(&f.compat1_check(r.x()).unwrap()));
        let (_, sig) = r.spectral_check();
        assert!(all_pass(&f.det_check(&sig.unwrap()).unwrap()));
        assert!(f.detdif_check().unwrap().pass);
        let (a, b) = r.derive_ab();
        assert!(all_pass(&f.hypergeometric_check(&a, &b).unwrap()));
        // a wrong A is detected
        let wrong = a.add(&Matrix::identity(2)).unwrap();
        assert!(!all_pass(&f.hypergeometric_check(&wrong, &b).unwrap()));
    }

    #[test]
    fn dual_of_trivial_is_kappa() {
        let triv = expand_fundamental(&rep(&[(1, 1)], &[&[0]]), 15).unwrap();
        let d = triv.dual().unwrap();
        let kappa = expand_fundamental(&rep(&[(-1, 6)], &[&[4]]), 15).unwrap();
        assert_eq!(d, kappa);
    }

    #[test]
    fn e7_dual_and_double_dual() {
        let r = e7();
        let f = expand_fundamental(&r, 20).unwrap();
        let d = f.dual().unwrap();
        assert_eq!(d.psi()[1], *r.dual().x());
        assert_eq!(d, expand_fundamental(&r.dual(), 20).unwrap());
        assert_eq!(d.dual().unwrap(), f);
    }

    #[test]
    fn shift_matrix_is_unimodular() {
        let f = expand_fundamental(&e7(), 8).unwrap();
        let x = f.x().unwrap().clone();
        for c in [rat(0, 1), rat(17, 3), rat(-1000, 1)] {
            let m = f.shift_matrix(&x, 0, 1, &c).unwrap();
            let det = series_det(&m).unwrap();
            assert!(det.agreement(&QSeries::constant(rat(1, 1), 9)).holds());
        }
    }

    #[test]
    fn lambda_shift_round_trip() {
        let r = e7();
        let f = expand_fundamental(&r, 24).unwrap();
        let (r1, f1) = f.lambda_shift(0, 1).unwrap();
        assert_eq!(r1.lambda(), &[rat(41, 24), rat(-13, 24)]);
        assert_eq!(r1.trace_lambda(), r.trace_lambda());
        let direct = expand_fundamental(&r1, f1.order()).unwrap();
        assert_eq!(direct, f1);
        let (r2, f2) = f1.lambda_shift(1, 0).unwrap();
        assert_eq!(r2, r);
        assert_eq!(f2, f.truncate(f2.order()));
        assert!(f2.order() >= 20);
        let zero_x = rep(&[(1, 1), (1, 1)], &[&[0, 0], &[0, 0]]);
        let fz = expand_fundamental(&zero_x, 4).unwrap();
        assert!(matches!(fz.lambda_shift(0, 1), Err(Error::ZeroPivotEntry { .. })));
    }
}
