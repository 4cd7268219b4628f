//! Vector-valued modular forms of half-integral weight, embedded into modular
//! functions through the η-multiplier: `F ↦ η^{-2k} F` sends `M_k(ϱ)` into
//! `M(ϱ ⊗ μ^{-2k})`.
//!
//! Branch convention for the multiplier: `μ(T) = e^{πi/12}`,
//! `μ(S) = e^{-πi/4}`, so `μ^{-2k}(T) = e^{-πik/6}` and
//! `μ^{-2k}(S) = e^{πik/2}`.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use crate::basis::CanonicalBasis;
use crate::error::{Error, Result};
use crate::exactnum::{floor, BigRational, Cyclotomic, Scalar};
use crate::qseries::classical::euler_product;
use crate::qseries::QSeries;
use crate::repdata::{riemann_roch, CheckReport};
use crate::reptools::ModularRep;

fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn check_weight(k: &BigRational) -> Result<()> {
    if !(k * int(2)).is_integer() {
        return Err(Error::NotHalfInteger(format!("{k}")));
    }
    Ok(())
}

/// `ϱ ⊗ μ^{-2k}` together with whether it is a genuine representation of
/// `PSL₂(ℤ)`; when it is not, `M_k(ϱ)` is trivial.
#[derive(Clone, Debug, PartialEq)]
pub struct InducedRep {
    pub weight: BigRational,
    pub rep: ModularRep,
    pub genuine: bool,
    pub checks: Vec<CheckReport>,
}

/// Twists `(S, T)` by the character `μ^{-2k}`.
pub fn induce_rep(rho: &ModularRep, k: &BigRational) -> Result<InducedRep> {
    check_weight(k)?;
    let ct = Cyclotomic::root_of_unity(&(-k / int(12)));
    let cs = Cyclotomic::root_of_unity(&(k / int(4)));
    let n = [ct.conductor(), cs.conductor()]
        .iter()
        .fold(rho.conductor(), |a, b| num_integer::Integer::lcm(&a, b));
    let s = rho.s().scale(&cs);
    let t: Vec<Cyclotomic> = rho.t_diag().iter().map(|x| x.mul(&ct)).collect();
    let rep = ModularRep::new(n, s, t)?;
    let mut checks = rep.relation_checks();
    let s2 = rep.s().mul(rep.s())?;
    checks.push(CheckReport::new("S^2 = 1", s2.is_identity(), &s2, "1"));
    let genuine = checks.iter().all(|c| c.pass);
    Ok(InducedRep {
        weight: k.clone(),
        rep,
        genuine,
        checks,
    })
}

/// `Tr Λ` prescribed by the trace formula for `(S, T)`, if rational.
pub fn riemann_roch_trace(rep: &ModularRep) -> Option<BigRational> {
    let t = rep.traces();
    riemann_roch(rep.dim(), &t.s, &t.u).to_rational()
}

/// Exponents with `exp(2πiΛ) = T` and `Tr Λ` given by the trace formula:
/// start from fractional parts in `[0, 1)`, then move integer units one at a
/// time, visiting components by decreasing fractional part.
pub fn exponents_from_t(rep: &ModularRep) -> Result<Vec<BigRational>> {
    let mut lambda: Vec<BigRational> = rep.t_exponents().to_vec();
    let target = riemann_roch_trace(rep)
        .ok_or_else(|| Error::NotRational(String::from("trace formula value is irrational")))?;
    let sum: BigRational = lambda.iter().fold(int(0), |a, b| a + b);
    let gap = &target - &sum;
    if !gap.is_integer() {
        return Err(Error::Invalid(format!(
            "trace formula gives {target}, not congruent to the fractional parts' sum {sum}"
        )));
    }
    let gap = gap.to_integer().to_i64().ok_or_else(|| Error::Invalid(String::from("trace gap too large")))?;
    let mut order: Vec<usize> = (0..lambda.len()).collect();
    order.sort_by(|&a, &b| lambda[b].cmp(&lambda[a]).then(a.cmp(&b)));
    let step = if gap > 0 { int(1) } else { int(-1) };
    for i in 0..gap.unsigned_abs() as usize {
        let c = order[i % order.len()];
        lambda[c] += &step;
    }
    Ok(lambda)
}

/// `(dim M_k, dim S_k) = (max(0, Tr⌊Λ + k/12⌋), max(0, -Tr⌊1 - k/12 - Λ⌋))`.
pub fn dim_forms(lambda: &[BigRational], k: &BigRational) -> (u64, u64) {
    let s = k / int(12);
    let m: BigInt = lambda.iter().map(|l| floor(&(l + &s))).sum();
    let c: BigInt = lambda.iter().map(|l| floor(&(int(1) - &s - l))).sum();
    let clamp = |x: BigInt| if x.is_positive() { x.to_u64().unwrap_or(u64::MAX) } else { 0 };
    (clamp(m), clamp(-c))
}

/// `Σ_ξ max(0, ⌊Λ_ξ + k/12⌋)`, the number of vectors the explicit basis
/// construction produces.
pub fn basis_count(lambda: &[BigRational], k: &BigRational) -> u64 {
    let s = k / int(12);
    lambda
        .iter()
        .map(|l| floor(&(l + &s)))
        .filter(|x| x.is_positive())
        .map(|x| x.to_u64().unwrap_or(u64::MAX))
        .sum()
}

/// Dimensions of the space of weight `k` forms for `ϱ`, with the exponents
/// chosen for the induced representation.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightedFormSpace {
    pub weight: BigRational,
    pub induced: InducedRep,
    pub lambda: Option<Vec<BigRational>>,
    pub dim_forms: u64,
    pub dim_cusp_forms: u64,
}

pub fn form_space(rho: &ModularRep, k: &BigRational) -> Result<WeightedFormSpace> {
    let induced = induce_rep(rho, k)?;
    if !induced.genuine {
        return Ok(WeightedFormSpace {
            weight: k.clone(),
            induced,
            lambda: None,
            dim_forms: 0,
            dim_cusp_forms: 0,
        });
    }
    let lambda = exponents_from_t(&induced.rep)?;
    let (m, s) = dim_forms(&lambda, k);
    Ok(WeightedFormSpace {
        weight: k.clone(),
        induced,
        lambda: Some(lambda),
        dim_forms: m,
        dim_cusp_forms: s,
    })
}

/// `Tr⌊1 - Λ⌋ = dim M₂(ϱ̄)` and `Tr⌊Λ⌋ = dim M₀(ϱ) - dim S₂(ϱ̄)`, with `Λ`
/// the exponents of `ϱ` and the weight 2 spaces computed for the complex
/// conjugate representation.
pub fn trace_integer_part_checks(rho: &ModularRep, lambda: &[BigRational]) -> Result<Vec<CheckReport>> {
    let conj = rho.conjugate();
    let two = int(2);
    let m2 = form_space(&conj, &two)?;
    let (m0, _) = dim_forms(lambda, &int(0));
    let tr_1l: BigInt = lambda.iter().map(|l| floor(&(int(1) - l))).sum();
    let tr_l: BigInt = lambda.iter().map(floor).sum();
    let rhs2 = BigInt::from(m0) - BigInt::from(m2.dim_cusp_forms);
    Ok(alloc::vec![
        CheckReport::new(
            "Tr⌊1-Λ⌋ = dim M_2(conjugate)",
            tr_1l == BigInt::from(m2.dim_forms),
            &tr_1l,
            m2.dim_forms,
        ),
        CheckReport::new(
            "Tr⌊Λ⌋ = dim M_0 - dim S_2(conjugate)",
            tr_l == rhs2,
            &tr_l,
            &rhs2,
        ),
    ])
}

/// An explicit basis of `M_k(ϱ)`.
#[derive(Clone, Debug, PartialEq)]
pub struct FormBasis<F> {
    pub weight: BigRational,
    /// `(ξ, n)` of the canonical vector behind each form.
    pub labels: Vec<(usize, usize)>,
    /// Each form as `d` q-series.
    pub forms: Vec<Vec<QSeries<F>>>,
    /// `dim M_k` from the trace formula.
    pub dim_formula: u64,
    pub checks: Vec<CheckReport>,
}

/// `{η^{2k} X^{(ξ;n)} : 1 ≤ n ≤ ⌊Λ_ξ + k/12⌋}` from the canonical basis of the
/// induced representation, each checked to have no negative exponents.
pub fn form_basis<F: Scalar>(basis: &CanonicalBasis<F>, k: &BigRational) -> Result<FormBasis<F>> {
    check_weight(k)?;
    let lambda = basis.lambda().to_vec();
    let d = lambda.len();
    let s = k / int(12);
    let mut labels = Vec::new();
    for (xi, l) in lambda.iter().enumerate() {
        let top = floor(&(l + &s));
        let top = if top.is_positive() { top.to_usize().unwrap_or(usize::MAX) } else { 0 };
        for n in 1..=top {
            labels.push((xi, n));
        }
    }
    let need = labels.iter().map(|&(_, n)| n).max().unwrap_or(0);
    if need > basis.max_pole() {
        return Err(Error::PoleOrderTooLarge {
            requested: need,
            prepared: basis.max_pole(),
        });
    }
    let order = basis.fundamental().order() as i64;
    let two_k = (k * int(2)).to_integer().to_i64().unwrap();
    let eta_part: QSeries<F> = euler_product(order + 1).pow_int(two_k)?.map(F::from_rational);
    let mut forms = Vec::with_capacity(labels.len());
    let mut checks = Vec::new();
    for &(xi, n) in &labels {
        let v = basis.vector(xi, n)?;
        let f: Vec<QSeries<F>> = (0..d)
            .map(|nu| v.series[nu].mul(&eta_part).shift(&(&lambda[nu] + &s)))
            .collect();
        let low = f.iter().filter_map(|c| c.valuation().cloned()).min();
        let holo = low.as_ref().is_none_or(|v| !v.is_negative());
        checks.push(CheckReport::new(
            format!("η^{two_k} X^({xi};{n}) is holomorphic at the cusp"),
            holo,
            low.map_or_else(|| String::from("zero"), |v| format!("lowest exponent {v}")),
            ">= 0",
        ));
        forms.push(f);
    }
    let (dim_formula, _) = dim_forms(&lambda, k);
    let count = labels.len() as u64;
    checks.push(CheckReport::new(
        "basis size equals the dimension formula",
        count == dim_formula,
        count,
        dim_formula,
    ));
    Ok(FormBasis {
        weight: k.clone(),
        labels,
        forms,
        dim_formula,
        checks,
    })
}

/// The induced exponents must agree with the source exponents shifted by
/// `-k/12`, modulo 1.
pub fn induced_exponent_check(source: &[BigRational], induced: &[BigRational], k: &BigRational) -> CheckReport {
    let s = k / int(12);
    let ok = source.len() == induced.len()
        && source.iter().zip(induced).all(|(a, b)| (a - &s - b).is_integer());
    CheckReport::new("induced Λ ≡ Λ - k/12 (mod 1)", ok, format!("{induced:?}"), format!("{source:?} - {s}"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::canonical_basis;
    use crate::exactnum::{rat, Matrix};
    use crate::fundamental::expand_fundamental;
    use crate::qseries::classical::{delta, eisenstein, j_function};
    use crate::repdata::{all_pass, RepData};

    type C = Cyclotomic;

    fn trivial() -> ModularRep {
        ModularRep::new(1, Matrix::identity(1), alloc::vec![C::one()]).unwrap()
    }

    #[test]
    fn induced_characters() {
        let r = induce_rep(&trivial(), &int(14)).unwrap();
        assert!(r.genuine);
        assert_eq!(*r.rep.s().get(0, 0), C::from_int(-1));
        assert_eq!(r.rep.t_diag()[0], C::zeta_pow(6, 5));
        let r = induce_rep(&trivial(), &int(12)).unwrap();
        assert!(r.rep.s().get(0, 0).is_one() && r.rep.t_diag()[0].is_one());
        let r = induce_rep(&trivial(), &int(2)).unwrap();
        assert_eq!(*r.rep.s().get(0, 0), C::from_int(-1));
        assert_eq!(r.rep.t_diag()[0], C::zeta_pow(6, 5));
        let r = induce_rep(&trivial(), &rat(1, 2)).unwrap();
        assert!(!r.genuine);
        assert!(matches!(induce_rep(&trivial(), &rat(1, 3)), Err(Error::NotHalfInteger(_))));
    }

    #[test]
    fn greedy_exponents_match_table() {
        let cases = [(0, rat(1, 1)), (2, rat(-1, 6)), (4, rat(2, 3)), (6, rat(1, 2)), (8, rat(1, 3)), (10, rat(1, 6)), (14, rat(-1, 6))];
        for (k, l) in cases {
            let r = induce_rep(&trivial(), &int(k)).unwrap();
            assert_eq!(exponents_from_t(&r.rep).unwrap(), alloc::vec![l], "k = {k}");
        }
    }

    #[test]
    fn small_dimensions() {
        assert_eq!(dim_forms(&[int(1)], &int(0)), (1, 0));
        assert_eq!(dim_forms(&[int(1)], &int(12)), (2, 1));
        assert_eq!(dim_forms(&[rat(-1, 6)], &int(2)), (0, 0));
        assert_eq!(basis_count(&[rat(-7, 6), int(2)], &int(0)), 2);
        assert_eq!(dim_forms(&[rat(-7, 6), int(2)], &int(0)).0, 0);
    }

    fn classical_dim(k: i64) -> u64 {
        if k < 0 || k % 2 == 1 {
            0
        } else if k % 12 == 2 {
            (k / 12) as u64
        } else {
            (k / 12 + 1) as u64
        }
    }

    #[test]
    fn dimension_formula_matches_classical() {
        for k in (0..=48).step_by(2) {
            let sp = form_space(&trivial(), &int(k)).unwrap();
            assert_eq!(sp.dim_forms, classical_dim(k), "k = {k}");
            assert!(sp.dim_cusp_forms <= sp.dim_forms);
        }
        for k in [1, 3, 5] {
            assert_eq!(form_space(&trivial(), &int(k)).unwrap().dim_forms, 0);
        }
    }

    #[test]
    fn trivial_trace_integer_parts() {
        let r = trace_integer_part_checks(&trivial(), &[int(1)]).unwrap();
        assert!(all_pass(&r), "{r:?}");
    }

    fn basis_for(lambda: BigRational, x: i64, order: usize, pole: usize) -> CanonicalBasis<BigRational> {
        let rep = RepData::new(alloc::vec![lambda], Matrix::from_rows(alloc::vec![alloc::vec![int(x)]]).unwrap()).unwrap();
        let fm = expand_fundamental(&rep, order).unwrap();
        canonical_basis(&fm, pole).unwrap()
    }

    #[test]
    fn weight_zero_is_constants() {
        let b = basis_for(int(1), 0, 8, 2);
        let fb = form_basis(&b, &int(0)).unwrap();
        assert_eq!(fb.forms.len(), 1);
        assert!(fb.forms[0][0].agrees_through(&QSeries::constant(int(1), 10), 7));
        assert!(all_pass(&fb.checks));
    }

    #[test]
    fn weight_twelve_spans_delta() {
        let m = 10;
        let b = basis_for(int(1), 0, m, 3);
        let fb = form_basis(&b, &int(12)).unwrap();
        assert_eq!(fb.forms.len(), 2);
        assert!(all_pass(&fb.checks), "{:?}", fb.checks);
        assert!(fb.forms[0][0].agrees_through(&delta(m as i64), m as i64 - 1));
        let e4 = eisenstein(4, m as i64).unwrap();
        let dj = delta(m as i64 + 1).mul(&j_function(m as i64));
        assert!(fb.forms[1][0].agrees_through(&dj, m as i64 - 2));
        assert!(fb.forms[1][0].agrees_through(&e4.mul(&e4).mul(&e4).sub(&delta(m as i64).scale_rational(&int(744))).unwrap(), m as i64 - 2));
    }

    #[test]
    fn weight_four_is_e4() {
        let m = 12;
        let b = basis_for(rat(2, 3), 248, m, 2);
        let fb = form_basis(&b, &int(4)).unwrap();
        assert_eq!(fb.forms.len(), 1);
        assert!(fb.forms[0][0].agrees_through(&eisenstein(4, m as i64).unwrap(), m as i64 - 2));
    }

    #[test]
    fn exponent_congruence() {
        assert!(induced_exponent_check(&[int(0)], &[rat(-1, 6)], &int(2)).pass);
        assert!(!induced_exponent_check(&[int(0)], &[rat(1, 6)], &int(2)).pass);
    }
}
