//! The classical level one series, all as exact rational q-series.
//!
//! Every constructor takes an `order` and returns a series known through
//! `q^order` (for η, through `q^{1/24 + order}`).

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::Zero;

use super::QSeries;
use crate::error::{Error, Result};
use crate::exactnum::{rat, BigRational};

type Q = QSeries<BigRational>;

fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// `σ_k(n) = Σ_{d | n} d^k`.
pub fn sigma(k: u32, n: u64) -> BigInt {
    let mut s = BigInt::zero();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            s += BigInt::from(d).pow(k);
            let e = n / d;
            if e != d {
                s += BigInt::from(e).pow(k);
            }
        }
        d += 1;
    }
    s
}

/// `Π_{n≥1} (1 - q^n)` through `q^order`, from the pentagonal number theorem.
pub fn euler_product(order: i64) -> Q {
    let len = (order + 1).max(0) as usize;
    let mut c = vec![BigRational::zero(); len];
    let mut k = 0i64;
    loop {
        let mut any = false;
        for kk in if k == 0 { vec![0] } else { vec![k, -k] } {
            let e = kk * (3 * kk - 1) / 2;
            if (e as usize) < len {
                any = true;
                c[e as usize] = if kk % 2 == 0 { int(1) } else { int(-1) };
            }
        }
        if !any {
            break;
        }
        k += 1;
    }
    Q::new(BigRational::zero(), c)
}

/// `η = q^{1/24} Π (1 - q^n)`.
pub fn eta(order: i64) -> Q {
    euler_product(order).shift(&rat(1, 24))
}

/// `Δ = q Π (1 - q^n)^{24}`.
pub fn delta(order: i64) -> Q {
    euler_product(order - 1)
        .pow_int(24)
        .expect("leading coefficient is one")
        .shift(&int(1))
}

fn eisenstein_raw(k: u32, factor: i64, order: i64) -> Q {
    let mut c = Vec::with_capacity((order + 1).max(0) as usize);
    for n in 0..=order {
        if n == 0 {
            c.push(int(1));
        } else {
            c.push(BigRational::from_integer(sigma(k - 1, n as u64) * factor));
        }
    }
    Q::new(BigRational::zero(), c)
}

/// The normalized Eisenstein series `E_k` for `k ∈ {2, 4, 6, 8, 10, 14}`.
///
/// `E_4`, `E_6` come from divisor sums; the higher weights are the products
/// `E_4²`, `E_4 E_6`, `E_4² E_6`.
pub fn eisenstein(k: i64, order: i64) -> Result<Q> {
    match k {
        2 => Ok(eisenstein_raw(2, -24, order)),
        4 => Ok(eisenstein_raw(4, 240, order)),
        6 => Ok(eisenstein_raw(6, -504, order)),
        8 => {
            let e4 = eisenstein_raw(4, 240, order);
            Ok(e4.mul(&e4))
        }
        10 => Ok(eisenstein_raw(4, 240, order).mul(&eisenstein_raw(6, -504, order))),
        14 => {
            let e4 = eisenstein_raw(4, 240, order);
            Ok(e4.mul(&e4).mul(&eisenstein_raw(6, -504, order)))
        }
        _ => Err(Error::UnsupportedWeight(k)),
    }
}

/// The Hauptmodul `J = E_4³/Δ - 744 = q^{-1} + 196884 q + …`.
pub fn j_function(order: i64) -> Q {
    let e4 = eisenstein_raw(4, 240, order + 1);
    let d = delta(order + 2);
    let j = e4
        .mul(&e4)
        .mul(&e4)
        .div(&d)
        .expect("Δ is nonzero")
        .add_constant(&int(-744))
        .expect("integral sector");
    j.to_order(order)
}

/// `E = E_10/Δ = q^{-1} - 240 - 141444 q - …`.
pub fn e_series(order: i64) -> Q {
    let e10 = eisenstein(10, order + 1).unwrap();
    e10.div(&delta(order + 2)).unwrap().to_order(order)
}

/// `z = (984 - J)/1728`.
pub fn z_series(order: i64) -> Q {
    j_function(order)
        .neg()
        .add_constant(&int(984))
        .unwrap()
        .scale_rational(&rat(1, 1728))
}

/// `dJ/dq`.
pub fn j_prime(order: i64) -> Q {
    j_function(order + 1).d_dq().to_order(order)
}

/// The Hecke-type operator `∇f = E · θf`.
///
/// The result is known as far as both factors allow; pass an `e` known at
/// least through the order wanted.
pub fn nabla<F: crate::exactnum::Scalar>(f: &QSeries<F>, e: &QSeries<F>) -> QSeries<F> {
    e.mul(&f.q_deriv())
}

/// Coefficients `c(n)` of `J`, `n = -1..=order`, as integers.
pub fn j_coefficients(order: i64) -> Vec<BigInt> {
    let j = j_function(order);
    (-1..=order)
        .map(|n| j.coeff_at(n).unwrap().to_integer())
        .collect()
}

/// `Δ^{-1/3} E_4`-style quotient: `E_k · Δ^{-s}`, with `q^{s}` peeled off so
/// that the leading coefficient is one.
pub fn eisenstein_quotient(k: i64, s: &BigRational, order: i64) -> Result<Q> {
    let e = eisenstein(k, order)?;
    let d = delta(order + 1).shift(&int(-1));
    let ds = d.pow(&-s.clone())?;
    Ok(e.mul(&ds).shift(&-s.clone()))
}
