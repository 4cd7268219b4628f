use alloc::string::String;
use core::fmt;

/// Errors raised by the exact machinery.
///
/// Check *failures* (an identity that does not hold) are reported through the
/// report types of each module; this enum covers malformed input and
/// mathematical preconditions that make an operation undefined.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    DimensionMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },
    Singular {
        dim: usize,
        det: String,
    },
    /// Galois index not coprime to the conductor.
    NotCoprime {
        ell: i64,
        modulus: u64,
    },
    /// Offsets of two summands differ by a non-integer.
    SectorMismatch {
        left: String,
        right: String,
    },
    DivisionByZeroSeries,
    /// The leading coefficient has no exact root of the requested order.
    NoExactRoot {
        coefficient: String,
        exponent: String,
    },
    UnsupportedWeight(i64),
    /// A coefficient was requested beyond the known truncation order.
    Truncated {
        needed: String,
        available: String,
    },
    /// `n + Λ_ξ - Λ_η = 0` with a nonzero right-hand side.
    Resonance {
        n: usize,
        row: usize,
        col: usize,
        rhs: String,
    },
    /// The solved first coefficient disagrees with the characteristic matrix.
    Inconsistent {
        row: usize,
        col: usize,
        expected: String,
        found: String,
    },
    /// Recovering `X` from `A` divides by `1 + Λ_ξ - Λ_η = 0`.
    ExponentGap {
        row: usize,
        col: usize,
    },
    ZeroPivotEntry {
        row: usize,
        col: usize,
    },
    /// The shifted fundamental matrix violates the boundary condition.
    BoundaryObstruction {
        row: usize,
        col: usize,
        exponent: i64,
        value: String,
    },
    PoleOrderTooLarge {
        requested: usize,
        prepared: usize,
    },
    /// A computed canonical vector has the wrong principal part.
    PrincipalPart {
        component: usize,
        pole: usize,
        detail: String,
    },
    NotHalfInteger(String),
    NotRational(String),
    NotRootOfUnity(String),
    NotAPermutation(String),
    IllDefinedReduction(String),
    Invalid(String),
}

pub type Result<T> = core::result::Result<T, Error>;

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimensionMismatch { op, left, right } => write!(
                f,
                "dimension mismatch in {op}: {}x{} vs {}x{}",
                left.0, left.1, right.0, right.1
            ),
            Error::Singular { dim, det } => {
                write!(f, "singular {dim}x{dim} matrix (determinant {det})")
            }
            Error::NotCoprime { ell, modulus } => {
                write!(f, "{ell} is not coprime to {modulus}")
            }
            Error::SectorMismatch { left, right } => write!(
                f,
                "offsets {left} and {right} do not differ by an integer"
            ),
            Error::DivisionByZeroSeries => f.write_str("division by the zero series"),
            Error::NoExactRoot {
                coefficient,
                exponent,
            } => write!(
                f,
                "leading coefficient {coefficient} has no exact power {exponent}"
            ),
            Error::UnsupportedWeight(k) => write!(f, "unsupported Eisenstein weight {k}"),
            Error::Truncated { needed, available } => write!(
                f,
                "series truncated: need exponent {needed}, known below {available}"
            ),
            Error::Resonance { n, row, col, rhs } => write!(
                f,
                "resonance at order {n}, entry ({row},{col}) with nonzero right-hand side {rhs}"
            ),
            Error::Inconsistent {
                row,
                col,
                expected,
                found,
            } => write!(
                f,
                "first coefficient ({row},{col}) is {found}, characteristic matrix says {expected}"
            ),
            Error::ExponentGap { row, col } => write!(
                f,
                "exponents {row} and {col} differ by exactly -1; shift the exponent matrix first"
            ),
            Error::ZeroPivotEntry { row, col } => {
                write!(f, "characteristic matrix entry ({row},{col}) vanishes")
            }
            Error::BoundaryObstruction {
                row,
                col,
                exponent,
                value,
            } => write!(
                f,
                "boundary condition fails at entry ({row},{col}), q^{exponent} coefficient {value}"
            ),
            Error::PrincipalPart {
                component,
                pole,
                detail,
            } => write!(f, "canonical vector ({component};{pole}) has a wrong principal part: {detail}"),
            Error::PoleOrderTooLarge {
                requested,
                prepared,
            } => write!(
                f,
                "pole order {requested} exceeds the prepared basis (max {prepared})"
            ),
            Error::NotHalfInteger(k) => write!(f, "weight {k} is not a half-integer"),
            Error::NotRational(v) => write!(f, "value {v} is not rational"),
            Error::NotRootOfUnity(v) => write!(f, "{v} is not a root of unity"),
            Error::NotAPermutation(m) => write!(f, "S^2 is not an involutive permutation: {m}"),
            Error::IllDefinedReduction(m) => write!(f, "reduction is not well defined: {m}"),
            Error::Invalid(m) => f.write_str(m),
        }
    }
}

impl core::error::Error for Error {}
