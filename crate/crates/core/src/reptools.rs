//! Diagnostics on the representation matrices `S`, `T`: the Galois
//! rationality test, the congruence heuristic, the nonnegativity test, and
//! the reduction of an `SL₂(ℤ)` representation to a `PSL₂(ℤ)` one.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;

use crate::error::{Error, Result};
use crate::exactnum::{gcd_i64, mod_inverse, real_sign, BigRational, Cyclotomic, Matrix, Scalar};
use crate::repdata::{CheckReport, RepTraces};

type C = Cyclotomic;

/// `(S, T)` over `ℚ(ζ_N)` with `T` diagonal of order dividing `N`.
#[derive(Clone, Debug, PartialEq)]
pub struct ModularRep {
    conductor: u64,
    s: Matrix<C>,
    t: Vec<C>,
    // T_ii = exp(2πi t_exp[i]), t_exp[i] ∈ [0, 1)
    t_exp: Vec<BigRational>,
}

fn lcm_u64(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

impl ModularRep {
    /// Validates that every `T` entry is a root of unity of order dividing
    /// `conductor` and that every entry of `S` lives in `ℚ(ζ_N)`.
    pub fn new(conductor: u64, s: Matrix<C>, t: Vec<C>) -> Result<Self> {
        let d = t.len();
        if s.shape() != (d, d) {
            return Err(Error::DimensionMismatch {
                op: "modular representation",
                left: s.shape(),
                right: (d, d),
            });
        }
        if conductor == 0 {
            return Err(Error::Invalid(String::from("conductor must be positive")));
        }
        for x in s.to_rows().iter().flatten() {
            if !conductor.is_multiple_of(x.conductor()) && !conductor.is_multiple_of(x.minimal().conductor()) {
                return Err(Error::Invalid(format!("entry {x} of S is not in Q(zeta_{conductor})")));
            }
        }
        let mut t_exp = Vec::with_capacity(d);
        for x in &t {
            let r = x.as_root_of_unity().ok_or_else(|| Error::NotRootOfUnity(format!("{x}")))?;
            let den: u64 = r.denom().try_into().map_err(|_| Error::NotRootOfUnity(format!("{x}")))?;
            if !conductor.is_multiple_of(den) {
                return Err(Error::Invalid(format!(
                    "T entry {x} has order {den}, which does not divide {conductor}"
                )));
            }
            t_exp.push(r);
        }
        Ok(ModularRep { conductor, s, t, t_exp })
    }

    /// `T = exp(2πiΛ)`; the conductor is the least common multiple of the
    /// orders of `T` and of the conductors of the entries of `S`.
    pub fn from_exponents(lambda: &[BigRational], s: Matrix<C>) -> Result<Self> {
        let mut n = 1u64;
        let t: Vec<C> = lambda.iter().map(C::root_of_unity).collect();
        for x in &t {
            n = lcm_u64(n, x.conductor());
        }
        for x in s.to_rows().iter().flatten() {
            n = lcm_u64(n, x.minimal().conductor());
        }
        Self::new(n, s, t)
    }

    pub fn dim(&self) -> usize {
        self.t.len()
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn s(&self) -> &Matrix<C> {
        &self.s
    }

    pub fn t_diag(&self) -> &[C] {
        &self.t
    }

    /// Exponents `r_i ∈ [0, 1)` with `T_ii = exp(2πi r_i)`.
    pub fn t_exponents(&self) -> &[BigRational] {
        &self.t_exp
    }

    pub fn t_matrix(&self) -> Matrix<C> {
        Matrix::diag(&self.t)
    }

    /// `T^e` as a diagonal matrix, for any integer `e`.
    pub fn t_power(&self, e: i64) -> Matrix<C> {
        let n = self.conductor as i64;
        let e = e.rem_euclid(n);
        Matrix::diag(
            &self
                .t_exp
                .iter()
                .map(|r| C::root_of_unity(&(r * BigRational::from_integer(BigInt::from(e)))))
                .collect::<Vec<_>>(),
        )
    }

    /// `Tr S` and `Tr(S T⁻¹)`.
    pub fn traces(&self) -> RepTraces {
        let s = self.s.trace();
        let u = self.s.mul(&self.t_power(-1)).expect("square").trace();
        RepTraces { s, u }
    }

    /// `S⁴ = 1`, `(ST)³ = S²`, and whether `S² = 1`.
    pub fn relation_checks(&self) -> Vec<CheckReport> {
        let s2 = self.s.mul(&self.s).expect("square");
        let s4 = s2.mul(&s2).expect("square");
        let st = self.s.mul(&self.t_matrix()).expect("square");
        let st3 = st.pow(3).expect("square");
        vec![
            CheckReport::new("S^4 = 1", s4.is_identity(), &s4, "1"),
            CheckReport::new("(ST)^3 = S^2", st3 == s2, &st3, &s2),
        ]
    }

    /// Whether `S² = 1`, i.e. the data define a `PSL₂(ℤ)` representation.
    pub fn is_psl(&self) -> bool {
        self.s.mul(&self.s).expect("square").is_identity()
    }

    /// `σ_ℓ` applied entrywise.
    pub fn galois(&self, ell: i64) -> Result<Self> {
        self.check_unit(ell)?;
        let s = self.s.try_map(|x| x.galois(ell))?;
        let t = self.t.iter().map(|x| x.galois(ell)).collect::<Result<Vec<_>>>()?;
        Self::new(self.conductor, s, t)
    }

    /// The complex conjugate representation, `(S̄, T̄)`.
    pub fn conjugate(&self) -> Self {
        self.galois(-1).expect("-1 is a unit")
    }

    fn check_unit(&self, ell: i64) -> Result<()> {
        if gcd_i64(ell, self.conductor as i64) != 1 {
            return Err(Error::NotCoprime {
                ell,
                modulus: self.conductor,
            });
        }
        Ok(())
    }
}

/// The units `1 ≤ ℓ < N` (just `1` for `N = 1`): a transversal of `(ℤ/N)ˣ`.
pub fn unit_transversal(n: u64) -> Vec<i64> {
    if n <= 1 {
        return vec![1];
    }
    (1..n as i64).filter(|&l| gcd_i64(l, n as i64) == 1).collect()
}

/// `G_ℓ = S T^{1/ℓ} S T^ℓ S T^{1/ℓ}` with `1/ℓ` the inverse mod `N`.
pub fn g_ell(rep: &ModularRep, ell: i64) -> Result<Matrix<C>> {
    rep.check_unit(ell)?;
    let n = rep.conductor as i64;
    let inv = mod_inverse(ell, n).expect("unit");
    let ti = rep.t_power(inv);
    let tl = rep.t_power(ell);
    let s = &rep.s;
    s.mul(&ti)?.mul(s)?.mul(&tl)?.mul(s)?.mul(&ti)
}

/// `G_ℓ T G_ℓ⁻¹ = T^{ℓ²}`.
pub fn g_ell_conjugation_check(rep: &ModularRep, ell: i64) -> Result<CheckReport> {
    let g = g_ell(rep, ell)?;
    let lhs = g.mul(&rep.t_matrix())?.mul(&g.inverse()?)?;
    let rhs = rep.t_power(ell * ell);
    Ok(CheckReport::new(
        format!("G_{ell} T G_{ell}^-1 = T^{}", ell * ell),
        lhs == rhs,
        &lhs,
        &rhs,
    ))
}

/// Outcome of the rationality test.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalityReport {
    pub pass: bool,
    /// The first `ℓ` with `σ_ℓ(S) ≠ G_ℓ S`, and `σ_ℓ(S) - G_ℓ S`.
    pub witness: Option<(i64, Matrix<C>)>,
    pub checks: Vec<CheckReport>,
}

/// Checks `σ_ℓ(S) = G_ℓ S` for every unit `ℓ` mod `N`; on success also that
/// `S` is real and every `G_ℓ` is a rational matrix.
pub fn rationality_test(rep: &ModularRep) -> Result<RationalityReport> {
    let mut checks = Vec::new();
    let mut witness = None;
    let mut gs = Vec::new();
    for ell in unit_transversal(rep.conductor) {
        let g = g_ell(rep, ell)?;
        let lhs = rep.s.try_map(|x| x.galois(ell))?;
        let rhs = g.mul(&rep.s)?;
        let ok = lhs == rhs;
        if !ok && witness.is_none() {
            witness = Some((ell, lhs.sub(&rhs)?));
        }
        checks.push(CheckReport::new(format!("sigma_{ell}(S) = G_{ell} S"), ok, &lhs, &rhs));
        gs.push((ell, g));
    }
    let pass = witness.is_none();
    if pass {
        let real = rep.s.to_rows().iter().flatten().all(|x| x.is_real());
        checks.push(CheckReport::new("S is real", real, &rep.s, "its conjugate"));
        for (ell, g) in &gs {
            let rational = g.to_rows().iter().flatten().all(|x| x.to_rational().is_some());
            checks.push(CheckReport::new(format!("G_{ell} is rational"), rational, g, "a rational matrix"));
        }
    }
    let pass = pass && checks.iter().all(|c| c.pass);
    Ok(RationalityReport { pass, witness, checks })
}

/// Outcome of the congruence heuristic; a failure proves the kernel is not a
/// congruence subgroup, a pass proves nothing.
#[derive(Clone, Debug, PartialEq)]
pub struct CongruenceReport {
    pub pass: bool,
    pub witness: Option<i64>,
    pub checks: Vec<CheckReport>,
}

/// Compares the multisets of diagonal entries of `T^{ℓ²}` and `T` for every
/// unit `ℓ`.
pub fn congruence_heuristic(rep: &ModularRep) -> CongruenceReport {
    let mut base = rep.t_exp.clone();
    base.sort();
    let mut checks = Vec::new();
    let mut witness = None;
    for ell in unit_transversal(rep.conductor) {
        let l2 = BigRational::from_integer(BigInt::from(ell * ell));
        let mut powered: Vec<BigRational> = rep
            .t_exp
            .iter()
            .map(|r| {
                let x = r * &l2;
                &x - x.floor()
            })
            .collect();
        powered.sort();
        let ok = powered == base;
        if !ok && witness.is_none() {
            witness = Some(ell);
        }
        checks.push(CheckReport::new(
            format!("spectrum of T^{} equals spectrum of T", ell * ell),
            ok,
            render_list(&powered),
            render_list(&base),
        ));
    }
    CongruenceReport {
        pass: witness.is_none(),
        witness,
        checks,
    }
}

fn render_list<T: core::fmt::Display>(v: &[T]) -> String {
    let parts: Vec<String> = v.iter().map(|x| format!("{x}")).collect();
    format!("[{}]", parts.join(", "))
}

/// Outcome of the nonnegativity test. `None` means undecided.
#[derive(Clone, Debug, PartialEq)]
pub struct NonnegativityReport {
    pub kernel_dim: usize,
    /// Whether `ker(S - 1)` contains a strictly positive vector.
    pub positive_eigenvector: Option<bool>,
    /// A strictly positive eigenvector when the kernel is a line.
    pub eigenvector: Option<Vec<C>>,
    /// Whether the distinguished column of `S` is entrywise nonnegative.
    pub column_nonnegative: Option<Option<bool>>,
    pub checks: Vec<CheckReport>,
}

impl NonnegativityReport {
    pub fn pass(&self) -> bool {
        self.positive_eigenvector == Some(true) && !matches!(self.column_nonnegative, Some(Some(false)) | Some(None))
    }
}

fn sign(x: &C) -> Option<Ordering> {
    real_sign(x)
}

/// Decides whether the homogeneous strict system `rows · c > 0` has a real
/// solution, by Fourier–Motzkin elimination. Every coefficient must be real.
fn strictly_feasible(mut rows: Vec<Vec<C>>, vars: usize) -> Option<bool> {
    for k in (0..vars).rev() {
        let mut pos = Vec::new();
        let mut neg = Vec::new();
        let mut rest = Vec::new();
        for r in rows {
            match sign(&r[k])? {
                Ordering::Greater => pos.push(r),
                Ordering::Less => neg.push(r),
                Ordering::Equal => rest.push(r),
            }
        }
        if pos.is_empty() || neg.is_empty() {
            // c_k can be pushed far enough to satisfy every row involving it
            rows = rest;
            continue;
        }
        for p in &pos {
            for n in &neg {
                let a = n[k].neg();
                let b = p[k].clone();
                let row: Vec<C> = (0..vars).map(|j| p[j].mul(&a).add(&n[j].mul(&b))).collect();
                rest.push(row);
            }
        }
        rows = rest;
    }
    // what is left reads 0 > 0
    Some(rows.is_empty())
}

/// `S` must have a strictly positive eigenvector with eigenvalue 1; with a
/// distinguished component, that column of `S` must be nonnegative.
pub fn nonnegativity_test(rep: &ModularRep, component: Option<usize>) -> Result<NonnegativityReport> {
    let d = rep.dim();
    let m = rep.s.sub(&Matrix::identity(d))?;
    let kernel = m.nullspace();
    let mut checks = Vec::new();
    let mut eigenvector = None;
    let positive = match kernel.len() {
        0 => Some(false),
        1 => {
            let v = &kernel[0];
            let lead = v.iter().find(|x| !x.is_zero()).expect("nonzero kernel vector");
            let scaled: Vec<C> = v.iter().map(|x| x.div(lead).expect("nonzero")).collect();
            let mut verdict = Some(true);
            for x in &scaled {
                if !x.is_real() {
                    verdict = Some(false);
                    break;
                }
                match sign(x) {
                    Some(Ordering::Greater) => {}
                    Some(_) => {
                        verdict = Some(false);
                        break;
                    }
                    None => verdict = None,
                }
            }
            if verdict == Some(true) {
                eigenvector = Some(scaled);
            }
            verdict
        }
        k => {
            if kernel.iter().flatten().all(|x| x.is_real()) {
                let rows: Vec<Vec<C>> = (0..d).map(|i| kernel.iter().map(|v| v[i].clone()).collect()).collect();
                strictly_feasible(rows, k)
            } else {
                None
            }
        }
    };
    checks.push(CheckReport::new(
        "ker(S - 1) contains a strictly positive vector",
        positive == Some(true),
        match positive {
            Some(true) => String::from("yes"),
            Some(false) => String::from("no"),
            None => String::from("undecided"),
        },
        format!("kernel dimension {}", kernel.len()),
    ));
    let column = match component {
        None => None,
        Some(c) if c >= d => return Err(Error::Invalid(format!("component {c} out of range"))),
        Some(c) => {
            let col = rep.s.column(c);
            let mut verdict = Some(true);
            for x in &col {
                match sign(x) {
                    Some(Ordering::Less) => {
                        verdict = Some(false);
                        break;
                    }
                    Some(_) => {}
                    None => verdict = None,
                }
            }
            checks.push(CheckReport::new(
                format!("column {c} of S is nonnegative"),
                verdict == Some(true),
                render_list(&col),
                ">= 0",
            ));
            Some(verdict)
        }
    };
    Ok(NonnegativityReport {
        kernel_dim: kernel.len(),
        positive_eigenvector: positive,
        eigenvector,
        column_nonnegative: column,
        checks,
    })
}

/// Orbits of the charge conjugation `S²`, each sorted, listed by smallest
/// member.
pub fn charge_conjugation_orbits(rep: &ModularRep) -> Result<Vec<Vec<usize>>> {
    let d = rep.dim();
    let s2 = rep.s.mul(&rep.s)?;
    let mut perm = vec![usize::MAX; d];
    for i in 0..d {
        for j in 0..d {
            let x = s2.get(i, j);
            if x.is_one() {
                if perm[i] != usize::MAX {
                    return Err(Error::NotAPermutation(format!("row {i} of S^2 has two ones")));
                }
                perm[i] = j;
            } else if !x.is_zero() {
                return Err(Error::NotAPermutation(format!("S^2 has entry {x} at ({i},{j})")));
            }
        }
        if perm[i] == usize::MAX {
            return Err(Error::NotAPermutation(format!("row {i} of S^2 is zero")));
        }
    }
    for i in 0..d {
        if perm[perm[i]] != i {
            return Err(Error::NotAPermutation(String::from("S^2 does not have order 2")));
        }
    }
    let mut orbits = Vec::new();
    for i in 0..d {
        let j = perm[i];
        if j >= i {
            orbits.push(if j == i { vec![i] } else { vec![i, j] });
        }
    }
    Ok(orbits)
}

/// Folds the orbits of the charge conjugation: `𝒯_ξη = δ_ξη T_{η*η*}`,
/// `𝒮_ξη = Σ_{p ∈ η} S_{ξ* p}`. The result is checked to be a `PSL₂(ℤ)`
/// representation.
pub fn reduce_representation(rep: &ModularRep) -> Result<ModularRep> {
    let orbits = charge_conjugation_orbits(rep)?;
    let k = orbits.len();
    let s = &rep.s;
    let mut reduced = Matrix::zeros(k, k);
    for (a, xi) in orbits.iter().enumerate() {
        for (b, eta) in orbits.iter().enumerate() {
            let entry_for = |row: usize| eta.iter().fold(C::zero(), |acc, &p| acc.add(s.get(row, p)));
            let v = entry_for(xi[0]);
            for &other in &xi[1..] {
                if entry_for(other) != v {
                    return Err(Error::IllDefinedReduction(format!(
                        "orbit sums differ between rows {} and {other}",
                        xi[0]
                    )));
                }
            }
            reduced.set(a, b, v);
        }
        for &other in &xi[1..] {
            if rep.t[other] != rep.t[xi[0]] {
                return Err(Error::IllDefinedReduction(format!(
                    "T differs on the orbit of {}",
                    xi[0]
                )));
            }
        }
    }
    let t: Vec<C> = orbits.iter().map(|o| rep.t[o[0]].clone()).collect();
    let out = ModularRep::new(rep.conductor, reduced, t)?;
    if !out.is_psl() || !out.relation_checks().iter().all(|c| c.pass) {
        return Err(Error::IllDefinedReduction(String::from(
            "the folded matrices violate (ST)^3 = S^2 = 1",
        )));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    fn q(n: i64, d: i64) -> C {
        C::from_rational(rat(n, d))
    }

    fn trivial() -> ModularRep {
        ModularRep::new(1, Matrix::identity(1), vec![C::one()]).unwrap()
    }

    fn ising_s() -> Matrix<C> {
        let h = q(1, 2);
        let r = C::sqrt2().scale(&rat(1, 2));
        Matrix::from_rows(vec![
            vec![h.clone(), h.clone(), r.clone()],
            vec![h.clone(), h.clone(), r.neg()],
            vec![r.clone(), r.neg(), C::zero()],
        ])
        .unwrap()
    }

    fn ising() -> ModularRep {
        ModularRep::from_exponents(&[rat(47, 48), rat(23, 48), rat(2, 48)], ising_s()).unwrap()
    }

    fn e7() -> ModularRep {
        let r = C::sqrt2().inv().unwrap();
        let s = Matrix::from_rows(vec![vec![r.clone(), r.clone()], vec![r.clone(), r.neg()]]).unwrap();
        ModularRep::from_exponents(&[rat(17, 24), rat(11, 24)], s).unwrap()
    }

    #[test]
    fn fixtures_are_representations() {
        for rep in [trivial(), ising(), e7()] {
            assert!(rep.relation_checks().iter().all(|c| c.pass), "{:?}", rep.relation_checks());
            assert!(rep.is_psl());
        }
        assert_eq!(ising().conductor(), 48);
        assert_eq!(e7().conductor(), 24);
    }

    #[test]
    fn g_ell_of_trivial_is_one() {
        for ell in [1, 5, 7] {
            let rep = ModularRep::new(24, Matrix::identity(1), vec![C::one()]).unwrap();
            assert!(g_ell(&rep, ell).unwrap().is_identity());
        }
        assert!(matches!(g_ell(&e7(), 3), Err(Error::NotCoprime { ell: 3, modulus: 24 })));
    }

    #[test]
    fn g_ell_conjugates_t() {
        for rep in [ising(), e7()] {
            for ell in unit_transversal(rep.conductor()) {
                assert!(g_ell_conjugation_check(&rep, ell).unwrap().pass);
            }
        }
    }

    #[test]
    fn rationality_on_fixtures() {
        for rep in [trivial(), ising(), e7()] {
            let r = rationality_test(&rep).unwrap();
            assert!(r.pass, "{:?}", r.checks.iter().find(|c| !c.pass));
        }
    }

    #[test]
    fn corrupted_ising_fails_rationality() {
        let mut s = ising_s();
        s.set(2, 0, s.get(2, 0).neg());
        let rep = ModularRep::new(48, s, ising().t_diag().to_vec()).unwrap();
        let r = rationality_test(&rep).unwrap();
        assert!(!r.pass);
        let (ell, diff) = r.witness.unwrap();
        assert!(gcd_i64(ell, 48) == 1);
        assert!(!diff.is_zero());
    }

    #[test]
    fn congruence_heuristic_examples() {
        assert!(congruence_heuristic(&trivial()).pass);
        assert!(congruence_heuristic(&e7()).pass);
        assert!(congruence_heuristic(&ising()).pass);
        let t = vec![C::zeta_pow(5, 1), C::zeta_pow(5, 3)];
        let rep = ModularRep::new(5, Matrix::identity(2), t).unwrap();
        let r = congruence_heuristic(&rep);
        assert!(!r.pass);
        assert_eq!(r.witness, Some(2));
    }

    #[test]
    fn congruence_heuristic_ignores_order_of_t() {
        let rep = ising();
        let mut t = rep.t_diag().to_vec();
        t.reverse();
        let swapped = ModularRep::new(48, Matrix::identity(3), t).unwrap();
        let plain = ModularRep::new(48, Matrix::identity(3), rep.t_diag().to_vec()).unwrap();
        assert_eq!(congruence_heuristic(&swapped).pass, congruence_heuristic(&plain).pass);
    }

    #[test]
    fn nonnegativity_examples() {
        let r = nonnegativity_test(&trivial(), Some(0)).unwrap();
        assert!(r.pass());
        let kappa3 = ModularRep::new(2, Matrix::diag(&[q(-1, 1)]), vec![q(-1, 1)]).unwrap();
        let r = nonnegativity_test(&kappa3, None).unwrap();
        assert_eq!(r.kernel_dim, 0);
        assert!(!r.pass());
        // S has eigenvalues 1, 1, -1, so the kernel is a plane
        let r = nonnegativity_test(&ising(), Some(0)).unwrap();
        assert_eq!(r.kernel_dim, 2);
        assert!(r.pass(), "{:?}", r.checks);
        // column 2 of the Ising S has a negative entry
        let r = nonnegativity_test(&ising(), Some(2)).unwrap();
        assert_eq!(r.column_nonnegative, Some(Some(false)));
    }

    #[test]
    fn fourier_motzkin_on_a_plane() {
        // S = 1 in dimension 2: the whole plane, which has positive vectors
        let rep = ModularRep::new(1, Matrix::identity(2), vec![C::one(), C::one()]).unwrap();
        let r = nonnegativity_test(&rep, None).unwrap();
        assert_eq!(r.kernel_dim, 2);
        assert_eq!(r.positive_eigenvector, Some(true));
        // {c1 > 0, c2 > 0, -c1 - c2 > 0} is infeasible
        let rows = vec![
            vec![q(1, 1), q(0, 1)],
            vec![q(0, 1), q(1, 1)],
            vec![q(-1, 1), q(-1, 1)],
        ];
        assert_eq!(strictly_feasible(rows, 2), Some(false));
        let rows = vec![vec![C::sqrt2(), q(-1, 1)], vec![q(-1, 1), q(1, 1)]];
        assert_eq!(strictly_feasible(rows, 2), Some(true));
    }

    fn su3() -> ModularRep {
        // S_ab = ω^{-ab}/√3, T = exp(2πi(1/12 - h)) with h = 0, 1/3, 1/3
        let w = |e: i64| C::zeta_pow(3, -e);
        let r3 = C::sqrt3().inv().unwrap();
        let s = Matrix::from_fn(3, 3, |a, b| w((a * b) as i64).mul(&r3));
        ModularRep::from_exponents(&[rat(1, 12), rat(3, 4), rat(3, 4)], s).unwrap()
    }

    #[test]
    fn su3_is_an_sl2_representation() {
        let rep = su3();
        assert!(rep.relation_checks().iter().all(|c| c.pass), "{:?}", rep.relation_checks());
        assert!(!rep.is_psl());
    }

    #[test]
    fn reduction_of_psl_data_is_identity() {
        let rep = ising();
        assert_eq!(reduce_representation(&rep).unwrap(), rep);
    }

    #[test]
    fn reduction_of_su3_plus_trivial() {
        let a = su3();
        let s = Matrix::block_diag(&[a.s().clone(), Matrix::identity(1)]);
        let mut t = a.t_diag().to_vec();
        t.push(C::one());
        let rep = ModularRep::new(a.conductor(), s, t).unwrap();
        assert_eq!(charge_conjugation_orbits(&rep).unwrap(), vec![vec![0], vec![1, 2], vec![3]]);
        let red = reduce_representation(&rep).unwrap();
        assert_eq!(red.dim(), 3);
        assert!(red.is_psl());
        assert!(red.s().to_rows().iter().flatten().all(|x| x.is_real()));
        // 𝒮_{0,1} = S_01 + S_02 = 2/√3
        assert_eq!(*red.s().get(0, 1), C::sqrt3().scale(&rat(2, 3)));
    }

    #[test]
    fn two_dimensional_swap_folds_to_one() {
        // S = x [[1, i], [i, 1]] with x = ζ8⁻¹/√2 squares to the swap
        let x = C::zeta_pow(8, -1).mul(&C::sqrt2().inv().unwrap());
        let s = Matrix::from_rows(vec![vec![x.clone(), x.mul(&C::i())], vec![x.mul(&C::i()), x.clone()]]).unwrap();
        let swap = Matrix::from_rows(vec![vec![C::zero(), C::one()], vec![C::one(), C::zero()]]).unwrap();
        assert_eq!(s.mul(&s).unwrap(), swap);
        let rep = ModularRep::new(8, s.clone(), vec![C::one(), C::one()]).unwrap();
        let red = reduce_representation(&rep).unwrap();
        assert_eq!(red.dim(), 1);
        assert_eq!(*red.s().get(0, 0), s.get(0, 0).add(s.get(0, 1)));
        assert!(red.s().get(0, 0).is_one());
        assert_eq!(red.t_diag(), &[C::one()]);
    }

    #[test]
    fn non_permutation_square_is_rejected() {
        let s = Matrix::from_rows(vec![vec![q(1, 1), q(1, 1)], vec![q(0, 1), q(1, 1)]]).unwrap();
        let rep = ModularRep::new(1, s, vec![C::one(), C::one()]).unwrap();
        assert!(matches!(reduce_representation(&rep), Err(Error::NotAPermutation(_))));
    }
}
