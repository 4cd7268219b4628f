//! Reference data: the six one-dimensional characters, the level one `E7`
//! and `A1` models, and the three-dimensional family containing the Ising
//! model.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::error::Result;
use crate::exactnum::{rat, BigRational, Cyclotomic, Matrix, Scalar};
use crate::qseries::classical::eisenstein_quotient;
use crate::qseries::QSeries;
use crate::repdata::RepData;
use crate::reptools::ModularRep;

type C = Cyclotomic;

fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Fundamental data together with the representation matrices.
#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: String,
    pub rep: RepData<BigRational>,
    pub modular: ModularRep,
}

/// A one-dimensional character: `Ξ = E_k / Δ^s` with `Λ = 1 - s`.
#[derive(Clone, Debug)]
pub struct CharacterRow {
    pub name: &'static str,
    pub a: i64,
    pub b: i64,
    pub lambda: BigRational,
    pub x: i64,
    /// Weight of the Eisenstein numerator (0 for the constant 1).
    pub weight: i64,
    pub s: i64,
    /// `T` and `U = S T⁻¹` as powers of `ω = exp(2πi/6)`.
    pub t_pow: i64,
    pub u_pow: i64,
}

impl CharacterRow {
    pub fn rep(&self) -> RepData<BigRational> {
        RepData::new(vec![self.lambda.clone()], Matrix::from_rows(vec![vec![int(self.x)]]).unwrap()).unwrap()
    }

    pub fn modular(&self) -> ModularRep {
        ModularRep::new(6, Matrix::diag(&[C::from_int(self.s)]), vec![C::zeta_pow(6, self.t_pow)]).unwrap()
    }

    pub fn fixture(&self) -> Fixture {
        Fixture {
            name: String::from(self.name),
            rep: self.rep(),
            modular: self.modular(),
        }
    }

    /// `E_k Δ^{-s}` with `s = 1 - Λ`, through `q^order` relative to its
    /// leading power.
    pub fn closed_form(&self, order: i64) -> Result<QSeries<BigRational>> {
        let s = int(1) - &self.lambda;
        if self.weight == 0 {
            return Ok(QSeries::constant(int(1), order + 1));
        }
        eisenstein_quotient(self.weight, &s, order)
    }
}

/// The one-dimensional rows: trivial, `κ²`, `κ⁴`, `κ³`, `κ̄`, `κ`.
pub fn characters() -> Vec<CharacterRow> {
    let row = |name, a, b, lambda, x, weight, s, t_pow, u_pow| CharacterRow {
        name,
        a,
        b,
        lambda,
        x,
        weight,
        s,
        t_pow,
        u_pow,
    };
    vec![
        row("trivial", 0, 0, int(1), 0, 0, 1, 0, 0),
        row("kappa^2", 0, 1, rat(2, 3), 248, 4, 1, 4, 2),
        row("kappa^4", 0, 2, rat(1, 3), 496, 8, 1, 2, 4),
        row("kappa^3", 1, 0, rat(1, 2), -492, 6, -1, 3, 0),
        row("kappa-bar", 1, 1, rat(1, 6), -244, 10, -1, 1, 2),
        row("kappa", 1, 2, rat(-1, 6), 4, 14, -1, 5, 4),
    ]
}

fn two_dim_s() -> Matrix<C> {
    let r = C::sqrt2().inv().unwrap();
    Matrix::from_rows(vec![vec![r.clone(), r.clone()], vec![r.clone(), r.neg()]]).unwrap()
}

fn int_matrix(rows: &[&[i64]]) -> Matrix<BigRational> {
    Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect()).unwrap()
}

fn fixture(name: String, lambda: Vec<BigRational>, x: Matrix<BigRational>, s: Matrix<C>) -> Fixture {
    let modular = ModularRep::from_exponents(&lambda, s).unwrap();
    Fixture {
        name,
        rep: RepData::new(lambda, x).unwrap(),
        modular,
    }
}

/// The level one `E7` model.
pub fn e7() -> Fixture {
    fixture(
        String::from("E7"),
        vec![rat(17, 24), rat(11, 24)],
        int_matrix(&[&[133, 1248], &[56, -377]]),
        two_dim_s(),
    )
}

/// The level one `A1` model.
pub fn a1() -> Fixture {
    fixture(
        String::from("A1"),
        vec![rat(23, 24), rat(5, 24)],
        int_matrix(&[&[3, 26752], &[2, -247]]),
        two_dim_s(),
    )
}

/// The `S` matrix shared by the three-dimensional family.
pub fn ising_s() -> Matrix<C> {
    let h = C::from_rational(rat(1, 2));
    let r = C::sqrt2().scale(&rat(1, 2));
    Matrix::from_rows(vec![
        vec![h.clone(), h.clone(), r.clone()],
        vec![h.clone(), h, r.neg()],
        vec![r.clone(), r.neg(), C::zero()],
    ])
    .unwrap()
}

/// Member `k` (`0 ≤ k < 12`) of the three-dimensional family; `k = 0` is the
/// Ising model.
pub fn ising(k: i64) -> Fixture {
    assert!((0..12).contains(&k), "the family has k = 0..11");
    let lambda = vec![rat(47 - 2 * k, 48), rat(23 - 2 * k, 48), rat(2 + 4 * k, 48)];
    let p = |e: i64| int(2).pow(e as i32);
    let x = Matrix::from_rows(vec![
        vec![
            int(k * (2 * k + 1)),
            rat((31 - 2 * k) * (9 + 2 * k) * (25 + 2 * k), 3),
            p(12 - k) * int(23 - 2 * k),
        ],
        vec![int(2 * k + 1), int((11 - k) * (25 + 2 * k)), -p(12 - k)],
        vec![p(k), -(p(k) * int(25 + 2 * k)), int(2 * k - 23)],
    ])
    .unwrap();
    fixture(format!("Ising family k={k}"), lambda, x, ising_s())
}

/// Every fixture: the characters, `E7`, `A1` and the twelve family members.
pub fn all_fixtures() -> Vec<Fixture> {
    let mut out: Vec<Fixture> = characters().iter().map(|r| r.fixture()).collect();
    out.push(e7());
    out.push(a1());
    out.extend((0..12).map(ising));
    out
}

/// Looks a fixture up by name (`trivial`, `kappa^2`, …, `E7`, `A1`,
/// `ising0` … `ising11`).
pub fn by_name(name: &str) -> Option<Fixture> {
    if let Some(k) = name.strip_prefix("ising") {
        return k.parse::<i64>().ok().filter(|k| (0..12).contains(k)).map(ising);
    }
    match name {
        "E7" | "e7" => Some(e7()),
        "A1" | "a1" => Some(a1()),
        _ => characters().into_iter().find(|r| r.name == name).map(|r| r.fixture()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::repdata::{all_pass, trace_audit};

    #[test]
    fn every_fixture_is_a_representation() {
        for f in all_fixtures() {
            let rel = f.modular.relation_checks();
            assert!(all_pass(&rel), "{}: {rel:?}", f.name);
            assert!(f.modular.is_psl(), "{}", f.name);
        }
    }

    #[test]
    fn every_fixture_passes_the_algebraic_audits() {
        for f in all_fixtures() {
            let (spec, sig) = f.rep.spectral_check();
            assert!(all_pass(&spec), "{}: {spec:?}", f.name);
            assert!(sig.is_some());
            assert!(all_pass(&f.rep.monodromy_check()), "{}", f.name);
            let tr = f.modular.traces();
            let audit = trace_audit(&f.rep, Some(&tr), None, None);
            assert!(all_pass(&audit), "{}: {:?}", f.name, audit.iter().find(|c| !c.pass));
        }
    }

    #[test]
    fn character_traces_match_the_table() {
        for r in characters() {
            let t = r.modular().traces();
            assert_eq!(t.u, C::zeta_pow(6, r.u_pow), "{}", r.name);
        }
    }

    #[test]
    fn ising_zero_data() {
        let f = ising(0);
        assert_eq!(*f.rep.x().get(0, 1), int(2325));
        assert_eq!(*f.rep.x().get(0, 2), int(94208));
        assert_eq!(f.modular.conductor(), 48);
        assert!(by_name("ising0").is_some() && by_name("ising12").is_none());
        assert_eq!(by_name("kappa").unwrap().rep.lambda(), &[rat(-1, 6)]);
    }
}
