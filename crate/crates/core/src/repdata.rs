//! The fundamental data `(Λ, X)` of a representation, the derived matrices
//! `A`, `B`, the signature, and the algebraic validators.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use crate::error::{Error, Result};
use crate::exactnum::{rat, BigRational, Cyclotomic, Matrix, Scalar};

/// `(Λ, X)`: the diagonal of the exponent matrix and the characteristic
/// matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct RepData<F> {
    lambda: Vec<BigRational>,
    x: Matrix<F>,
}

/// `(d, α, β₁, β₂)`: dimension and the eigenvalue multiplicities of `A`
/// (eigenvalue 1) and `B` (eigenvalues 1 and 2).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Signature {
    pub d: usize,
    pub alpha: u64,
    pub beta1: u64,
    pub beta2: u64,
}

/// One checked identity with both of its sides rendered as text.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub check: String,
    pub pass: bool,
    pub lhs: String,
    pub rhs: String,
}

impl CheckReport {
    pub fn new(check: impl Into<String>, pass: bool, lhs: impl ToString, rhs: impl ToString) -> Self {
        CheckReport {
            check: check.into(),
            pass,
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
        }
    }

    /// A check that passes when `lhs == rhs`.
    pub fn equal<T: PartialEq + fmt::Display>(check: impl Into<String>, lhs: &T, rhs: &T) -> Self {
        Self::new(check, lhs == rhs, lhs, rhs)
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.pass { "pass" } else { "FAIL" };
        write!(f, "{verdict} {}: {} = {}", self.check, self.lhs, self.rhs)
    }
}

/// Whether every report in the list passed.
pub fn all_pass(reports: &[CheckReport]) -> bool {
    reports.iter().all(|r| r.pass)
}

fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl<F: Scalar> RepData<F> {
    pub fn new(lambda: Vec<BigRational>, x: Matrix<F>) -> Result<Self> {
        let d = lambda.len();
        if x.shape() != (d, d) {
            return Err(Error::DimensionMismatch {
                op: "RepData::new",
                left: (d, d),
                right: x.shape(),
            });
        }
        Ok(RepData { lambda, x })
    }

    pub fn dim(&self) -> usize {
        self.lambda.len()
    }

    pub fn lambda(&self) -> &[BigRational] {
        &self.lambda
    }

    pub fn x(&self) -> &Matrix<F> {
        &self.x
    }

    pub fn lambda_matrix(&self) -> Matrix<F> {
        Matrix::diag(&self.lambda.iter().map(F::from_rational).collect::<Vec<_>>())
    }

    pub fn trace_lambda(&self) -> BigRational {
        self.lambda.iter().fold(int(0), |a, b| a + b)
    }

    /// `X + [Λ, X]`, entrywise `(1 + Λ_ξ - Λ_η) X_ξη`.
    pub fn e_x(&self) -> Matrix<F> {
        Matrix::from_fn(self.dim(), self.dim(), |i, j| {
            self.x
                .get(i, j)
                .scale(&(int(1) + &self.lambda[i] - &self.lambda[j]))
        })
    }

    fn one_minus_lambda(&self) -> Matrix<F> {
        Matrix::diag(
            &self
                .lambda
                .iter()
                .map(|l| F::from_rational(&(int(1) - l)))
                .collect::<Vec<_>>(),
        )
    }

    /// `A = (31/36)(1 - Λ) - (X + [Λ,X])/864`.
    pub fn a_matrix(&self) -> Matrix<F> {
        self.one_minus_lambda()
            .scale_rational(&rat(31, 36))
            .sub(&self.e_x().scale_rational(&rat(1, 864)))
            .unwrap()
    }

    /// `B = (41/24)(1 - Λ) + (X + [Λ,X])/576`.
    pub fn b_matrix(&self) -> Matrix<F> {
        self.one_minus_lambda()
            .scale_rational(&rat(41, 24))
            .add(&self.e_x().scale_rational(&rat(1, 576)))
            .unwrap()
    }

    pub fn derive_ab(&self) -> (Matrix<F>, Matrix<F>) {
        (self.a_matrix(), self.b_matrix())
    }

    /// Recovers `X` from `Λ` and `A` by inverting `X ↦ X + [Λ,X]` entrywise.
    pub fn from_a(lambda: Vec<BigRational>, a: &Matrix<F>) -> Result<Self> {
        let d = lambda.len();
        if a.shape() != (d, d) {
            return Err(Error::DimensionMismatch {
                op: "from_a",
                left: (d, d),
                right: a.shape(),
            });
        }
        let mut x = Matrix::zeros(d, d);
        for i in 0..d {
            for j in 0..d {
                let c = int(1) + &lambda[i] - &lambda[j];
                let diag = if i == j {
                    F::from_rational(&((int(1) - &lambda[i]) * rat(31, 36)))
                } else {
                    F::zero()
                };
                let e = diag.sub(a.get(i, j)).scale(&int(864));
                if num_traits::Zero::is_zero(&c) {
                    return Err(Error::ExponentGap { row: i, col: j });
                }
                x.set(i, j, e.scale(&c.recip()));
            }
        }
        Ok(RepData { lambda, x })
    }

    /// `(5/6 - Λ, 4 - Xᵗ)`.
    pub fn dual(&self) -> Self {
        let d = self.dim();
        RepData {
            lambda: self.lambda.iter().map(|l| rat(5, 6) - l).collect(),
            x: Matrix::identity(d)
                .scale(&F::from_int(4))
                .sub(&self.x.transpose())
                .unwrap(),
        }
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut lambda = self.lambda.clone();
        lambda.extend(other.lambda.iter().cloned());
        RepData {
            lambda,
            x: Matrix::block_diag(&[self.x.clone(), other.x.clone()]),
        }
    }

    /// The summand on a contiguous range of indices.
    pub fn block(&self, start: usize, len: usize) -> Self {
        let idx: Vec<usize> = (start..start + len).collect();
        RepData {
            lambda: self.lambda[start..start + len].to_vec(),
            x: self.x.submatrix(&idx, &idx),
        }
    }

    pub fn map<G: Scalar>(&self, f: impl Fn(&F) -> G) -> RepData<G> {
        RepData {
            lambda: self.lambda.clone(),
            x: self.x.map(f),
        }
    }

    /// The spectral condition on the derived `A`, `B`.
    pub fn spectral_check(&self) -> (Vec<CheckReport>, Option<Signature>) {
        let (a, b) = self.derive_ab();
        spectral_check(&a, &b)
    }

    /// `A² = A` together with the cubic identity linking `A` and `Λ`.
    pub fn monodromy_check(&self) -> Vec<CheckReport> {
        monodromy_equation_check(&self.lambda_matrix(), &self.a_matrix())
    }

    /// `B = 3(1 - Λ - A/2)`.
    pub fn linear_relation_check(&self) -> CheckReport {
        let (a, b) = self.derive_ab();
        let rhs = self
            .one_minus_lambda()
            .sub(&a.scale_rational(&rat(1, 2)))
            .unwrap()
            .scale_rational(&int(3));
        CheckReport::equal("B = 3(1 - Λ - A/2)", &b, &rhs)
    }
}

/// `A(A-1) = 0` and `B(B-1)(B-2) = 0`; on success also the signature read off
/// from traces.
pub fn spectral_check<F: Scalar>(a: &Matrix<F>, b: &Matrix<F>) -> (Vec<CheckReport>, Option<Signature>) {
    let d = a.rows();
    let id = Matrix::<F>::identity(d);
    let zero = Matrix::<F>::zeros(d, d);
    let ra = a.mul(&a.sub(&id).unwrap()).unwrap();
    let two = id.scale(&F::from_int(2));
    let rb = b
        .mul(&b.sub(&id).unwrap())
        .unwrap()
        .mul(&b.sub(&two).unwrap())
        .unwrap();
    let mut reports = alloc::vec![
        CheckReport::equal("A(A-1) = 0", &ra, &zero),
        CheckReport::equal("B(B-1)(B-2) = 0", &rb, &zero),
    ];
    if !all_pass(&reports) {
        return (reports, None);
    }
    let tr_a = a.trace().to_rational();
    let tr_b = b.trace().to_rational();
    let tr_b2 = b.mul(b).unwrap().trace().to_rational();
    let sig = match (tr_a, tr_b, tr_b2) {
        (Some(ta), Some(tb), Some(tb2)) => {
            let beta1 = &tb * int(2) - &tb2;
            let beta2 = (&tb2 - &tb) * rat(1, 2);
            let nat = |r: &BigRational| {
                if r.is_integer() && !r.is_negative() {
                    r.to_integer().to_u64()
                } else {
                    None
                }
            };
            match (nat(&ta), nat(&beta1), nat(&beta2)) {
                (Some(alpha), Some(beta1), Some(beta2)) => Some(Signature {
                    d,
                    alpha,
                    beta1,
                    beta2,
                }),
                _ => None,
            }
        }
        _ => None,
    };
    reports.push(CheckReport::new(
        "signature multiplicities are nonnegative integers",
        sig.is_some(),
        sig.map_or_else(|| "none".to_string(), |s| s.to_string()),
        "(d, α, β1, β2)",
    ));
    (reports, sig)
}

/// `A² = A` and `AΛA = -(17/18)A - 2(AΛ² + ΛAΛ + Λ²A) + 3(AΛ + ΛA) - 4Λ³ +
/// 8Λ² - (44/9)Λ + 8/9`.
pub fn monodromy_equation_check<F: Scalar>(lambda: &Matrix<F>, a: &Matrix<F>) -> Vec<CheckReport> {
    let d = a.rows();
    let id = Matrix::<F>::identity(d);
    let m = |x: &Matrix<F>, y: &Matrix<F>| x.mul(y).unwrap();
    let l2 = m(lambda, lambda);
    let l3 = m(&l2, lambda);
    let lhs = m(&m(a, lambda), a);
    let quad = m(a, &l2)
        .add(&m(&m(lambda, a), lambda))
        .unwrap()
        .add(&m(&l2, a))
        .unwrap();
    let lin = m(a, lambda).add(&m(lambda, a)).unwrap();
    let rhs = a
        .scale_rational(&rat(-17, 18))
        .sub(&quad.scale_rational(&int(2)))
        .unwrap()
        .add(&lin.scale_rational(&int(3)))
        .unwrap()
        .sub(&l3.scale_rational(&int(4)))
        .unwrap()
        .add(&l2.scale_rational(&int(8)))
        .unwrap()
        .sub(&lambda.scale_rational(&rat(44, 9)))
        .unwrap()
        .add(&id.scale_rational(&rat(8, 9)))
        .unwrap();
    alloc::vec![
        CheckReport::equal("A^2 = A", &m(a, a), a),
        CheckReport::equal("AΛA = cubic in Λ", &lhs, &rhs),
    ]
}

impl Signature {
    /// `4(62β₁ + 124β₂ - 123α)`.
    pub fn trace_x(&self) -> BigRational {
        int(4 * (62 * self.beta1 as i64 + 124 * self.beta2 as i64 - 123 * self.alpha as i64))
    }

    /// `d - α/2 - (β₁ + 2β₂)/3`.
    pub fn trace_lambda(&self) -> BigRational {
        int(self.d as i64) - rat(self.alpha as i64, 2) - rat(self.beta1 as i64 + 2 * self.beta2 as i64, 3)
    }

    /// `d - 2α`.
    pub fn trace_s(&self) -> BigRational {
        int(self.d as i64 - 2 * self.alpha as i64)
    }

    /// `d - (3/2)(β₁+β₂) + i(√3/2)(β₁-β₂)` in `ℚ(ζ₁₂)`.
    pub fn trace_u(&self) -> Cyclotomic {
        let re = int(self.d as i64) - rat(3 * (self.beta1 + self.beta2) as i64, 2);
        let im = Cyclotomic::i()
            .mul(&Cyclotomic::sqrt3())
            .scale(&rat(self.beta1 as i64 - self.beta2 as i64, 2));
        Cyclotomic::from_rational(re).add(&im)
    }

    /// Signature of a direct sum.
    pub fn add(&self, other: &Self) -> Self {
        Signature {
            d: self.d + other.d,
            alpha: self.alpha + other.alpha,
            beta1: self.beta1 + other.beta1,
            beta2: self.beta2 + other.beta2,
        }
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {}, {})", self.d, self.alpha, self.beta1, self.beta2)
    }
}

/// `5d/12 + TrS/4 + (2√3/9)·Re(ζ₁₂⁻¹ TrU)`, evaluated in `ℚ(ζ₁₂)`.
pub fn riemann_roch(d: usize, tr_s: &Cyclotomic, tr_u: &Cyclotomic) -> Cyclotomic {
    let w = Cyclotomic::zeta_pow(12, -1).mul(tr_u);
    let re = w.real_part();
    let coeff = Cyclotomic::sqrt3().scale(&rat(2, 9));
    Cyclotomic::from_rational(rat(5 * d as i64, 12))
        .add(&tr_s.scale(&rat(1, 4)))
        .add(&coeff.mul(&re))
}

/// Traces of the representation matrices `S` and `U = S T⁻¹`.
#[derive(Clone, Debug, PartialEq)]
pub struct RepTraces {
    pub s: Cyclotomic,
    pub u: Cyclotomic,
}

fn audit_one<F: Scalar>(
    label: &str,
    rep: &RepData<F>,
    sig: &Signature,
    traces: Option<&RepTraces>,
) -> Vec<CheckReport> {
    let mut out = Vec::new();
    let tr_l = rep.trace_lambda();
    out.push(CheckReport::equal(
        format!("{label}Tr Λ = d - α/2 - (β1+2β2)/3"),
        &tr_l,
        &sig.trace_lambda(),
    ));
    match rep.x.trace().to_rational() {
        Some(tx) => {
            out.push(CheckReport::equal(
                format!("{label}Tr X = 4(62β1 + 124β2 - 123α)"),
                &tx,
                &sig.trace_x(),
            ));
            let four_alpha = int(4 * sig.alpha as i64);
            let diff = &tx - &four_alpha;
            let pass = diff.is_integer() && (diff.to_integer() % BigInt::from(248)) == BigInt::from(0);
            out.push(CheckReport::new(
                format!("{label}Tr X ≡ 4α (mod 248)"),
                pass,
                &tx,
                format!("{four_alpha} mod 248"),
            ));
        }
        None => out.push(CheckReport::new(
            format!("{label}Tr X is rational"),
            false,
            rep.x.trace(),
            "a rational number",
        )),
    }
    let sig_s = Cyclotomic::from_rational(sig.trace_s());
    let sig_u = sig.trace_u();
    let (ts, tu) = match traces {
        Some(t) => {
            out.push(CheckReport::equal(format!("{label}Tr S = d - 2α"), &t.s, &sig_s));
            out.push(CheckReport::equal(
                format!("{label}Tr U = d - 3(β1+β2)/2 + i√3(β1-β2)/2"),
                &t.u,
                &sig_u,
            ));
            (t.s.clone(), t.u.clone())
        }
        None => (sig_s, sig_u),
    };
    let rr = riemann_roch(rep.dim(), &ts, &tu);
    out.push(CheckReport::equal(
        format!("{label}Riemann-Roch trace of Λ"),
        &Cyclotomic::from_rational(tr_l),
        &rr,
    ));
    out
}

/// Trace identities implied by the signature. With `blocks` (sizes of
/// indecomposable summands along the diagonal) the identities are applied to
/// each block separately, with block traces taken from `block_traces` when
/// supplied.
pub fn trace_audit<F: Scalar>(
    rep: &RepData<F>,
    traces: Option<&RepTraces>,
    blocks: Option<&[usize]>,
    block_traces: Option<&[RepTraces]>,
) -> Vec<CheckReport> {
    let mut out = Vec::new();
    let parts: Vec<(usize, usize)> = match blocks {
        Some(b) if b.iter().sum::<usize>() == rep.dim() => {
            let mut start = 0;
            b.iter()
                .map(|&len| {
                    let s = start;
                    start += len;
                    (s, len)
                })
                .collect()
        }
        Some(b) => {
            out.push(CheckReport::new(
                "block sizes sum to d",
                false,
                b.iter().sum::<usize>(),
                rep.dim(),
            ));
            return out;
        }
        None => alloc::vec![(0, rep.dim())],
    };
    let single = parts.len() == 1;
    for (k, &(start, len)) in parts.iter().enumerate() {
        let sub = if single { rep.clone() } else { rep.block(start, len) };
        let label = if single {
            String::new()
        } else {
            format!("block {k}: ")
        };
        let (spec, sig) = sub.spectral_check();
        let Some(sig) = sig else {
            out.extend(spec.into_iter().map(|mut r| {
                r.check = format!("{label}{}", r.check);
                r
            }));
            continue;
        };
        let t = if single {
            traces
        } else {
            block_traces.and_then(|bt| bt.get(k))
        };
        out.extend(audit_one(&label, &sub, &sig, t));
    }
    out
}

impl<F: Scalar> fmt::Display for RepData<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("Λ = diag(")?;
        for (i, l) in self.lambda.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, "), X = {}", self.x)
    }
}
