//! Canonical basis vectors `X^{(ξ;n)}`, principal parts and the inversion
//! map, all in the Λ-normalized frame.
//!
//! A vector is stored through its normalized components `y_ν = q^{-Λ_ν} X_ν`,
//! which are integer-power series. `X^{(ξ;1)}` is column `ξ` of `Ξ`, so
//! `y^{(ξ;1)} = q^{-1} Ψ_{·ξ}`; built from a fundamental matrix known through
//! `q^M`, `y^{(ξ;m)}` is known through `q^{M-m}`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::exactnum::{BigRational, Matrix, Scalar};
use crate::fundamental::{series_report, FundamentalMatrix};
use crate::qseries::classical::{e_series, j_function, j_prime};
use crate::qseries::{BivariateSeries, QSeries};
use crate::repdata::CheckReport;

fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// A finitely supported principal part: `(component, pole order) ↦` the
/// coefficient of `q^{-n}` in the normalized component.
#[derive(Clone, Debug, PartialEq)]
pub struct PrincipalPart<F> {
    terms: BTreeMap<(usize, usize), F>,
}

impl<F: Scalar> Default for PrincipalPart<F> {
    fn default() -> Self {
        Self::new()
    }
}

impl<F: Scalar> PrincipalPart<F> {
    pub fn new() -> Self {
        PrincipalPart {
            terms: BTreeMap::new(),
        }
    }

    /// Adds `c q^{-order}` to component `component`. Pole orders start at 1.
    pub fn insert(&mut self, component: usize, order: usize, c: F) -> Result<()> {
        if order == 0 {
            return Err(Error::Invalid(String::from("pole orders start at 1")));
        }
        let slot = self.terms.entry((component, order)).or_insert_with(F::zero);
        *slot = slot.add(&c);
        if slot.is_zero() {
            self.terms.remove(&(component, order));
        }
        Ok(())
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (usize, usize, F)>) -> Result<Self> {
        let mut p = Self::new();
        for (c, n, v) in terms {
            p.insert(c, n, v)?;
        }
        Ok(p)
    }

    /// Nonzero terms as `(component, order, coefficient)`, sorted.
    pub fn terms(&self) -> impl Iterator<Item = (usize, usize, &F)> {
        self.terms.iter().map(|(&(c, n), v)| (c, n, v))
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn max_pole(&self) -> usize {
        self.terms.keys().map(|&(_, n)| n).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &F) -> Self {
        let mut out = Self::new();
        for (k, v) in &self.terms {
            let w = v.mul(c);
            if !w.is_zero() {
                out.terms.insert(*k, w);
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&(c, n), v) in &other.terms {
            out.insert(c, n, v.clone()).expect("orders are positive");
        }
        out
    }
}

/// The principal part of a normalized vector.
pub fn principal_part<F: Scalar>(vector: &[QSeries<F>]) -> PrincipalPart<F> {
    let mut p = PrincipalPart::new();
    for (c, s) in vector.iter().enumerate() {
        let Some(v) = s.valuation() else { continue };
        let mut e = v.to_integer();
        while e < BigInt::from(0) {
            let n: i64 = (-&e).try_into().expect("pole order fits in i64");
            if let Some(x) = s.coeff(&BigRational::from_integer(e.clone())) {
                if !x.is_zero() {
                    p.insert(c, n as usize, x).unwrap();
                }
            }
            e += 1;
        }
    }
    p
}

/// `X^{(ξ;n)}` in the normalized frame.
#[derive(Clone, Debug, PartialEq)]
pub struct CanonicalVector<F> {
    pub component: usize,
    pub pole: usize,
    pub series: Vec<QSeries<F>>,
}

impl<F: Scalar> CanonicalVector<F> {
    /// The constant parts `𝒳_η^{(ξ;n)}`: the `q^0` coefficients.
    pub fn constant_part(&self) -> Result<Vec<F>> {
        self.series.iter().map(|s| s.try_coeff(&int(0))).collect()
    }

    /// Components `q^{Λ_ν} y_ν`.
    pub fn unnormalized(&self, lambda: &[BigRational]) -> Vec<QSeries<F>> {
        self.series.iter().zip(lambda).map(|(s, l)| s.shift(l)).collect()
    }

    /// Normalized components are known below `q^precision`.
    pub fn precision(&self) -> BigRational {
        self.series.iter().map(|s| s.precision()).min().unwrap_or_else(|| int(0))
    }
}

/// The canonical basis up to a maximal pole order, with the fundamental
/// matrix it came from.
#[derive(Clone, Debug)]
pub struct CanonicalBasis<F> {
    fm: FundamentalMatrix<F>,
    max_pole: usize,
    // vectors[n - 1][ξ]
    vectors: Vec<Vec<CanonicalVector<F>>>,
}

fn check_principal<F: Scalar>(v: &CanonicalVector<F>) -> Result<()> {
    let p = principal_part(&v.series);
    let mut terms = p.terms();
    let ok = match (terms.next(), terms.next()) {
        (Some((c, n, x)), None) => c == v.component && n == v.pole && x.is_one(),
        _ => false,
    };
    if ok {
        Ok(())
    } else {
        let detail = p
            .terms()
            .map(|(c, n, x)| format!("{x} q^-{n} in component {c}"))
            .collect::<Vec<_>>()
            .join(", ");
        Err(Error::PrincipalPart {
            component: v.component,
            pole: v.pole,
            detail: if detail.is_empty() { String::from("empty") } else { detail },
        })
    }
}

/// Builds `X^{(ξ;n)}` for `n ≤ max_pole` by the recursion
/// `X^{(ξ;m+1)} = J X^{(ξ;m)} - Σ_{n<m} c(n) X^{(ξ;m-n)} - Σ_η 𝒳_η^{(ξ;m)} X^{(η;1)}`
/// and verifies every principal part. Needs `Ξ` through `q^{max_pole}` at
/// least, so that every constant part is known.
pub fn canonical_basis<F: Scalar>(fm: &FundamentalMatrix<F>, max_pole: usize) -> Result<CanonicalBasis<F>> {
    let m_ord = fm.order();
    if max_pole == 0 {
        return Err(Error::Invalid(String::from("max pole order must be positive")));
    }
    if m_ord < max_pole {
        return Err(Error::Truncated {
            needed: format!("q^{max_pole}"),
            available: format!("q^{m_ord}"),
        });
    }
    let d = fm.dim();
    let jr = j_function(m_ord as i64);
    let j: QSeries<F> = jr.map(F::from_rational);
    let c: Vec<F> = (0..=m_ord as i64)
        .map(|n| F::from_rational(&jr.coeff_at(n).unwrap()))
        .collect();
    let first: Vec<CanonicalVector<F>> = (0..d)
        .map(|xi| CanonicalVector {
            component: xi,
            pole: 1,
            series: fm.normalized_column(xi),
        })
        .collect();
    let mut vectors = vec![first];
    for m in 1..max_pole {
        let mut next = Vec::with_capacity(d);
        for xi in 0..d {
            let cur = &vectors[m - 1][xi];
            let consts = cur.constant_part()?;
            let mut series = Vec::with_capacity(d);
            for nu in 0..d {
                let mut s = j.mul(&cur.series[nu]);
                for n in 1..m {
                    if !c[n].is_zero() {
                        s = s.sub(&vectors[m - n - 1][xi].series[nu].scale(&c[n]))?;
                    }
                }
                for (eta, k) in consts.iter().enumerate() {
                    if !k.is_zero() {
                        s = s.sub(&vectors[0][eta].series[nu].scale(k))?;
                    }
                }
                series.push(s);
            }
            let v = CanonicalVector {
                component: xi,
                pole: m + 1,
                series,
            };
            check_principal(&v)?;
            next.push(v);
        }
        vectors.push(next);
    }
    for v in &vectors[0] {
        check_principal(v)?;
    }
    Ok(CanonicalBasis {
        fm: fm.clone(),
        max_pole,
        vectors,
    })
}

/// A vector of polynomials in `J`, `p_η(J) = Σ_k coeffs[η][k] J^k`.
pub type JPolynomials<F> = Vec<Vec<F>>;

fn poly_eval<F: Scalar>(p: &[F], powers: &[QSeries<F>]) -> Result<QSeries<F>> {
    let mut acc = QSeries::zero(powers.last().map(|s| s.precision()).unwrap_or_else(|| int(0)));
    for (k, a) in p.iter().enumerate() {
        if !a.is_zero() {
            acc = acc.add(&powers[k].scale(a))?;
        }
    }
    Ok(acc)
}

fn poly_add<F: Scalar>(a: &[F], b: &[F]) -> Vec<F> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(F::zero);
            let y = b.get(i).cloned().unwrap_or_else(F::zero);
            x.add(&y)
        })
        .collect()
}

fn poly_mul<F: Scalar>(a: &[F], b: &[F]) -> Vec<F> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![F::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].add(&x.mul(y));
        }
    }
    out
}

impl<F: Scalar> CanonicalBasis<F> {
    pub fn fundamental(&self) -> &FundamentalMatrix<F> {
        &self.fm
    }

    pub fn dim(&self) -> usize {
        self.fm.dim()
    }

    pub fn max_pole(&self) -> usize {
        self.max_pole
    }

    pub fn lambda(&self) -> &[BigRational] {
        self.fm.lambda()
    }

    /// `X^{(ξ;n)}`.
    pub fn vector(&self, xi: usize, n: usize) -> Result<&CanonicalVector<F>> {
        if n == 0 || n > self.max_pole {
            return Err(Error::PoleOrderTooLarge {
                requested: n,
                prepared: self.max_pole,
            });
        }
        self.vectors[n - 1]
            .get(xi)
            .ok_or_else(|| Error::Invalid(format!("component {xi} out of range")))
    }

    /// `𝒳_η^{(ξ;n)}` for all `η`.
    pub fn constant_part(&self, xi: usize, n: usize) -> Result<Vec<F>> {
        self.vector(xi, n)?.constant_part()
    }

    /// The element of `M(ρ)` with the given principal part, normalized.
    pub fn invert(&self, p: &PrincipalPart<F>) -> Result<Vec<QSeries<F>>> {
        let d = self.dim();
        if p.max_pole() > self.max_pole {
            return Err(Error::PoleOrderTooLarge {
                requested: p.max_pole(),
                prepared: self.max_pole,
            });
        }
        let prec = int(self.fm.order() as i64 + 1 - p.max_pole().max(1) as i64);
        let mut out = vec![QSeries::zero(prec); d];
        for (xi, n, c) in p.terms() {
            if xi >= d {
                return Err(Error::Invalid(format!("component {xi} out of range")));
            }
            let v = self.vector(xi, n)?;
            for nu in 0..d {
                out[nu] = out[nu].add(&v.series[nu].scale(c))?;
            }
        }
        Ok(out)
    }

    /// Writes a normalized element as `Σ_η X^{(η;1)} p_η(J)`, i.e. solves
    /// `p = Ψ⁻¹ (q y)` and peels powers of `J` off each entry. Fails unless
    /// every remainder is a constant through its known order.
    pub fn j_polynomials(&self, vector: &[QSeries<F>]) -> Result<(JPolynomials<F>, Vec<CheckReport>)> {
        let d = self.dim();
        let inv = self.fm.psi_inverse_matrix()?;
        let pole = principal_part(vector).max_pole() as i64;
        let jr = j_function(self.fm.order() as i64 + pole + 2);
        let j: QSeries<F> = jr.map(F::from_rational);
        let mut powers = vec![QSeries::constant(F::one(), self.fm.order() as i64 + pole + 4)];
        for _ in 0..pole {
            let next = powers.last().unwrap().mul(&j);
            powers.push(next);
        }
        let mut polys = Vec::with_capacity(d);
        let mut reports = Vec::with_capacity(d);
        for eta in 0..d {
            let mut p: Option<QSeries<F>> = None;
            for nu in 0..d {
                let t = inv[eta][nu].mul(&vector[nu].shift(&int(1)));
                p = Some(match p {
                    None => t,
                    Some(a) => a.add(&t)?,
                });
            }
            let mut rem = p.expect("dimension is positive");
            let mut coeffs = vec![F::zero(); pole.max(0) as usize + 1];
            let mut k = pole;
            while k > 0 {
                let a = rem.try_coeff(&int(-k))?;
                if !a.is_zero() {
                    rem = rem.sub(&powers[k as usize].scale(&a))?;
                    coeffs[k as usize] = a;
                }
                k -= 1;
            }
            let c0 = rem.try_coeff(&int(0))?;
            let prec = rem.precision().ceil().to_integer();
            let prec: i64 = prec.try_into().unwrap_or(0).max(1);
            let tail = rem.sub(&QSeries::constant(c0.clone(), prec))?;
            coeffs[0] = c0;
            while coeffs.len() > 1 && coeffs.last().unwrap().is_zero() {
                coeffs.pop();
            }
            let name = format!("entry {eta} of Ψ⁻¹ q y is a polynomial in J");
            reports.push(match tail.valuation() {
                None => CheckReport::new(name, true, format!("remainder vanishes below q^{}", tail.precision()), "constant"),
                Some(v) => CheckReport::new(name, false, format!("remainder has q^{v}"), "constant"),
            });
            polys.push(coeffs);
        }
        Ok((polys, reports))
    }

    /// For `X = Ξ p(J)`, checks `∇X = Ξ (K p - (J+744)(J-984) p')` with
    /// `K = (J-240)(Λ-1) + E_X` through normalized `q^order`.
    pub fn ode_check(&self, vector: &[QSeries<F>], order: i64) -> Result<Vec<CheckReport>> {
        let d = self.dim();
        let lambda = self.lambda();
        let (p, mut reports) = self.j_polynomials(vector)?;
        let x = self.fm.x().ok_or_else(|| Error::Truncated {
            needed: String::from("q^1"),
            available: String::from("q^0"),
        })?;
        let deg = p.iter().map(|c| c.len()).max().unwrap_or(1) as i64;
        let m = self.fm.order() as i64;
        let jr = j_function(m + deg + 2);
        let j: QSeries<F> = jr.map(F::from_rational);
        let mut powers = vec![QSeries::constant(F::one(), m + deg + 4)];
        for _ in 0..=deg {
            let next = powers.last().unwrap().mul(&j);
            powers.push(next);
        }
        // ∇J = -(J+744)(J-984)
        let nabla_j: Vec<F> = [744 * 984, 240, -1].iter().map(|&v| F::from_int(v)).collect();
        let mut w: JPolynomials<F> = Vec::with_capacity(d);
        for eta in 0..d {
            let l1 = F::from_rational(&(&lambda[eta] - int(1)));
            let mut acc = poly_mul(&[F::from_int(-240).mul(&l1), l1.clone()], &p[eta]);
            for rho in 0..d {
                let k = x.get(eta, rho).scale(&(int(1) + &lambda[eta] - &lambda[rho]));
                acc = poly_add(&acc, &p[rho].iter().map(|a| a.mul(&k)).collect::<Vec<_>>());
            }
            let dp: Vec<F> = p[eta]
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, a)| a.mul(&F::from_int(i as i64)))
                .collect();
            acc = poly_add(&acc, &poly_mul(&nabla_j, &dp));
            w.push(acc);
        }
        let we: Vec<QSeries<F>> = w.iter().map(|c| poly_eval(c, &powers)).collect::<Result<_>>()?;
        let e: QSeries<F> = e_series(m + 1).map(F::from_rational);
        for nu in 0..d {
            let y = &vector[nu];
            let lhs = e.mul(&y.scale_rational(&lambda[nu]).add(&y.q_deriv())?);
            let mut rhs: Option<QSeries<F>> = None;
            for (eta, s) in we.iter().enumerate() {
                let t = self.fm.psi_entry(nu, eta).shift(&int(-1)).mul(s);
                rhs = Some(match rhs {
                    None => t,
                    Some(a) => a.add(&t)?,
                });
            }
            reports.push(series_report(
                format!("compatibility equation for the element, component {nu}"),
                &lhs,
                &rhs.unwrap(),
                &int(order + 1),
            ));
        }
        Ok(reports)
    }

    /// `∇X^{(ξ;m)} = (Λ_ξ - m) Σ_{n=-1}^{m-1} ℰ_n X^{(ξ;m-n)} + Σ_η Λ_η 𝒳_η^{(ξ;m)} X^{(η;1)}`
    /// for `m < max_pole`, each through normalized `q^{M-m-1}`.
    pub fn differential_relations_check(&self, max_m: usize) -> Result<Vec<CheckReport>> {
        if max_m >= self.max_pole {
            return Err(Error::PoleOrderTooLarge {
                requested: max_m + 1,
                prepared: self.max_pole,
            });
        }
        let d = self.dim();
        let lambda = self.lambda();
        let m_ord = self.fm.order() as i64;
        let er = e_series(m_ord + 1);
        let e: QSeries<F> = er.map(F::from_rational);
        let mut out = Vec::new();
        for m in 1..=max_m {
            for xi in 0..d {
                let v = self.vector(xi, m)?;
                let consts = v.constant_part()?;
                let w = F::from_rational(&(&lambda[xi] - int(m as i64)));
                for nu in 0..d {
                    let y = &v.series[nu];
                    let lhs = e.mul(&y.scale_rational(&lambda[nu]).add(&y.q_deriv())?);
                    let mut rhs = QSeries::zero(int(i64::MAX / 4));
                    for n in -1..m as i64 {
                        let en = F::from_rational(&er.coeff_at(n).unwrap());
                        if !en.is_zero() {
                            let t = self.vector(xi, (m as i64 - n) as usize)?.series[nu].scale(&en.mul(&w));
                            rhs = rhs.add(&t)?;
                        }
                    }
                    for (eta, k) in consts.iter().enumerate() {
                        let c = k.scale(&lambda[eta]);
                        if !c.is_zero() {
                            rhs = rhs.add(&self.vector(eta, 1)?.series[nu].scale(&c))?;
                        }
                    }
                    out.push(series_report(
                        format!("differential relation, xi={xi} m={m} component {nu}"),
                        &lhs,
                        &rhs,
                        &int(m_ord - m as i64),
                    ));
                }
            }
        }
        Ok(out)
    }

    /// The generating function `𝔛_ξη(q, z) = Σ_{n≥1} y^{(η;n)}_ξ(q) z^{n-1}`
    /// with every pole order prepared.
    pub fn generating_function(&self, xi: usize, eta: usize) -> BivariateSeries<F> {
        let rows = self.vectors.iter().map(|vs| vs[eta].series[xi].clone()).collect();
        BivariateSeries::new(0, rows)
    }

    /// `𝒳(z)` as a matrix of z-series: entry `(ρ, η)` is
    /// `Σ_{m≥1} 𝒳_ρ^{(η;m)} z^m`, known through `z^{max_pole}`.
    pub fn constant_part_series(&self) -> Result<Vec<Vec<QSeries<F>>>> {
        let d = self.dim();
        let mut consts = Vec::with_capacity(self.max_pole);
        for n in 1..=self.max_pole {
            let row: Vec<Vec<F>> = (0..d).map(|eta| self.constant_part(eta, n)).collect::<Result<_>>()?;
            consts.push(row);
        }
        Ok((0..d)
            .map(|rho| {
                (0..d)
                    .map(|eta| {
                        let mut c = vec![F::zero()];
                        c.extend(consts.iter().map(|row| row[eta][rho].clone()));
                        QSeries::new(int(0), c)
                    })
                    .collect()
            })
            .collect())
    }

    /// Checks, through `q^{mq}` and `z^{mz}`,
    /// `z (J(q) - J(z)) 𝔛(q, z) = q^{-1} Ψ(q) (𝒳(z) - 1)` and
    /// `𝒳(z) - 1 = z² J'(z) Ψ(z)⁻¹`.
    ///
    /// Needs the basis through pole `mz + 1` and `Ξ` through `q^{mq+mz+1}`.
    pub fn generating_function_check(&self, mq: i64, mz: i64) -> Result<Vec<CheckReport>> {
        let d = self.dim();
        if mz < 0 || mq < -1 {
            return Err(Error::Invalid(String::from("bi-order must be nonnegative")));
        }
        if (mz + 1) as usize > self.max_pole {
            return Err(Error::PoleOrderTooLarge {
                requested: (mz + 1) as usize,
                prepared: self.max_pole,
            });
        }
        let m_ord = self.fm.order() as i64;
        let jq: QSeries<F> = j_function(m_ord).map(F::from_rational);
        let zj: QSeries<F> = j_function(mz + 1).shift(&int(1)).map(F::from_rational);
        let xz = self.constant_part_series()?;
        let mut out = Vec::new();
        for xi in 0..d {
            for eta in 0..d {
                let g = self.generating_function(xi, eta);
                let lhs = g.mul_q(&jq).shift_z(1).sub(&g.mul_z(&zj)?)?;
                let mut rows = Vec::with_capacity(mz as usize + 1);
                for k in 0..=mz {
                    let mut acc = QSeries::zero(int(i64::MAX / 4));
                    for rho in 0..d {
                        let mut c = xz[rho][eta].coeff_at(k).unwrap_or_else(F::zero);
                        if k == 0 && rho == eta {
                            c = c.sub(&F::one());
                        }
                        if !c.is_zero() {
                            acc = acc.add(&self.fm.psi_entry(xi, rho).shift(&int(-1)).scale(&c))?;
                        }
                    }
                    if acc.is_zero() {
                        acc = QSeries::zero(int(m_ord));
                    }
                    rows.push(acc);
                }
                let rhs = BivariateSeries::new(0, rows);
                let name = format!("z(J(q)-J(z)) X(q,z) = Ξ(q)(𝒳(z)-1), entry ({xi},{eta})");
                out.push(match lhs.first_mismatch(&rhs, mq, mz)? {
                    None => CheckReport::new(name, true, format!("agree through q^{mq} z^{mz}"), "exact"),
                    Some(bm) => CheckReport::new(
                        name,
                        false,
                        format!("{} at q^{} z^{}", bm.lhs, bm.q_exponent, bm.z_exponent),
                        format!("{}", bm.rhs),
                    ),
                });
            }
        }
        let jp: QSeries<F> = j_prime(mz).shift(&int(2)).map(F::from_rational);
        let inv = self.fm.psi_inverse_matrix()?;
        for rho in 0..d {
            for eta in 0..d {
                let mut lhs = xz[rho][eta].clone();
                if rho == eta {
                    lhs = lhs.add_constant(&F::from_int(-1))?;
                }
                let rhs = jp.mul(&inv[rho][eta]);
                out.push(series_report(
                    format!("𝒳(z) - 1 = z² J'(z) Ψ(z)⁻¹, entry ({rho},{eta})"),
                    &lhs,
                    &rhs,
                    &int(mz + 1),
                ));
            }
        }
        Ok(out)
    }
}

/// Every normalized component of every vector is an integer-power series;
/// the characteristic matrix is `𝒳_η^{(ξ;1)} = X_ηξ`.
pub fn characteristic_matrix<F: Scalar>(basis: &CanonicalBasis<F>) -> Result<Matrix<F>> {
    let d = basis.dim();
    let cols: Vec<Vec<F>> = (0..d).map(|xi| basis.constant_part(xi, 1)).collect::<Result<_>>()?;
    Ok(Matrix::from_fn(d, d, |r, c| cols[c][r].clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;
    use crate::fundamental::expand_fundamental;
    use crate::repdata::{all_pass, RepData};
    use proptest::prelude::*;

    type Q = QSeries<BigRational>;

    fn trivial() -> RepData<BigRational> {
        RepData::new(vec![int(1)], Matrix::zeros(1, 1)).unwrap()
    }

    fn e7() -> RepData<BigRational> {
        let x = Matrix::from_rows(vec![vec![int(133), int(1248)], vec![int(56), int(-377)]]).unwrap();
        RepData::new(vec![rat(17, 24), rat(11, 24)], x).unwrap()
    }

    fn a1() -> RepData<BigRational> {
        let x = Matrix::from_rows(vec![vec![int(3), int(26752)], vec![int(2), int(-247)]]).unwrap();
        RepData::new(vec![rat(23, 24), rat(5, 24)], x).unwrap()
    }

    #[test]
    fn trivial_rep_gives_j() {
        let fm = expand_fundamental(&trivial(), 12).unwrap();
        let b = canonical_basis(&fm, 4).unwrap();
        let lambda = b.lambda().to_vec();
        let x1 = &b.vector(0, 1).unwrap().unnormalized(&lambda)[0];
        assert!(x1.agreement(&Q::constant(int(1), 100)).holds());
        let j2 = &b.vector(0, 2).unwrap().unnormalized(&lambda)[0];
        assert!(j2.agrees_through(&j_function(10), 10));
        assert_eq!(b.constant_part(0, 2).unwrap(), vec![int(196884)]);
        assert!(matches!(b.vector(0, 5), Err(Error::PoleOrderTooLarge { .. })));
    }

    #[test]
    fn characteristic_matrix_is_recovered() {
        let fm = expand_fundamental(&e7(), 6).unwrap();
        let b = canonical_basis(&fm, 3).unwrap();
        assert_eq!(&characteristic_matrix(&b).unwrap(), e7().x());
    }

    #[test]
    fn basis_needs_enough_order() {
        let fm = expand_fundamental(&e7(), 3).unwrap();
        assert!(matches!(canonical_basis(&fm, 5), Err(Error::Truncated { .. })));
    }

    #[test]
    fn inversion_of_a_single_pole_is_a_column() {
        let fm = expand_fundamental(&e7(), 8).unwrap();
        let b = canonical_basis(&fm, 3).unwrap();
        let p = PrincipalPart::from_terms([(1, 1, int(1))]).unwrap();
        let v = b.invert(&p).unwrap();
        assert_eq!(v, fm.normalized_column(1));
        let empty = b.invert(&PrincipalPart::new()).unwrap();
        assert!(empty.iter().all(|s| s.is_zero()));
    }

    #[test]
    fn trivial_inversion_of_double_pole_is_j() {
        let fm = expand_fundamental(&trivial(), 15).unwrap();
        let b = canonical_basis(&fm, 3).unwrap();
        let p = PrincipalPart::from_terms([(0, 2, int(1))]).unwrap();
        let v = b.invert(&p).unwrap();
        assert!(v[0].shift(&int(1)).agrees_through(&j_function(12), 12));
    }

    #[test]
    fn too_large_pole_is_rejected() {
        let fm = expand_fundamental(&trivial(), 5).unwrap();
        let b = canonical_basis(&fm, 2).unwrap();
        let p = PrincipalPart::from_terms([(0, 3, int(1))]).unwrap();
        assert!(matches!(b.invert(&p), Err(Error::PoleOrderTooLarge { requested: 3, prepared: 2 })));
    }

    #[test]
    fn differential_relations_hold() {
        for (rep, ord) in [(trivial(), 14), (e7(), 14), (a1(), 15)] {
            let fm = expand_fundamental(&rep, ord).unwrap();
            let b = canonical_basis(&fm, 5).unwrap();
            let r = b.differential_relations_check(4).unwrap();
            assert!(all_pass(&r), "{:?}", r.iter().find(|c| !c.pass));
        }
    }

    #[test]
    fn difrel_at_m1_matches_compatibility() {
        let fm = expand_fundamental(&e7(), 10).unwrap();
        let b = canonical_basis(&fm, 2).unwrap();
        assert!(all_pass(&b.differential_relations_check(1).unwrap()));
        assert!(all_pass(&fm.compat1_check(e7().x()).unwrap()));
    }

    #[test]
    fn generating_function_identities() {
        for rep in [trivial(), e7(), a1()] {
            let fm = expand_fundamental(&rep, 12).unwrap();
            let b = canonical_basis(&fm, 5).unwrap();
            let r = b.generating_function_check(6, 4).unwrap();
            assert!(all_pass(&r), "{:?}", r.iter().find(|c| !c.pass));
        }
    }

    #[test]
    fn trivial_constant_part_series() {
        // 𝒳(z) - 1 = z² J'(z) = -1 + Σ n c(n) z^{n+1}
        let fm = expand_fundamental(&trivial(), 8).unwrap();
        let b = canonical_basis(&fm, 6).unwrap();
        let xz = &b.constant_part_series().unwrap()[0][0];
        let c = j_coefficients_rational(5);
        for n in 1..=5i64 {
            assert_eq!(xz.coeff_at(n + 1).unwrap(), &c[n as usize] * int(n));
        }
        assert_eq!(xz.coeff_at(1).unwrap(), int(0));
    }

    fn j_coefficients_rational(order: i64) -> Vec<BigRational> {
        let j = j_function(order);
        (0..=order).map(|n| j.coeff_at(n).unwrap()).collect()
    }

    #[test]
    fn ode_check_on_reconstructed_element() {
        let fm = expand_fundamental(&e7(), 14).unwrap();
        let b = canonical_basis(&fm, 4).unwrap();
        let p = PrincipalPart::from_terms([(0, 3, int(2)), (1, 1, int(-5)), (1, 4, int(1))]).unwrap();
        let v = b.invert(&p).unwrap();
        let r = b.ode_check(&v, 6).unwrap();
        assert!(all_pass(&r), "{:?}", r.iter().find(|c| !c.pass));
        // a vector outside M(ρ) fails
        let mut bad = v.clone();
        bad[0] = bad[0].add(&Q::from_ints(0, &[0, 1]).to_order(3)).unwrap();
        let bad: Vec<Q> = bad.into_iter().collect();
        let r = b.ode_check(&bad, 6);
        assert!(r.map(|r| !all_pass(&r)).unwrap_or(true));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn inversion_round_trip_and_linearity(
            a in proptest::collection::vec((0usize..2, 1usize..5, -9i64..10), 0..6),
            b in proptest::collection::vec((0usize..2, 1usize..5, -9i64..10), 0..6),
            s in -4i64..5,
        ) {
            let fm = expand_fundamental(&e7(), 6).unwrap();
            let basis = canonical_basis(&fm, 4).unwrap();
            let pa = PrincipalPart::from_terms(a.into_iter().map(|(c, n, v)| (c, n, int(v)))).unwrap();
            let pb = PrincipalPart::from_terms(b.into_iter().map(|(c, n, v)| (c, n, int(v)))).unwrap();
            let va = basis.invert(&pa).unwrap();
            prop_assert_eq!(principal_part(&va), pa.clone());
            let vb = basis.invert(&pb).unwrap();
            let combo = basis.invert(&pa.scale(&int(s)).add(&pb)).unwrap();
            for nu in 0..2 {
                let direct = va[nu].scale_rational(&int(s)).add(&vb[nu]).unwrap();
                prop_assert!(combo[nu].agreement(&direct).holds());
            }
        }
    }
}
