//! JSON encodings. Every scalar is an exact string: rationals as `"p/q"` or
//! `"p"`, cyclotomic numbers as `{"conductor": N, "terms": [[e, "p/q"], ...]}`.

use serde_json::{json, Map, Value};
use vvmf_core::basis::PrincipalPart;
use vvmf_core::exactnum::parse_rational;
use vvmf_core::fundamental::FundamentalMatrix;
use vvmf_core::repdata::RepData;
use vvmf_core::reptools::ModularRep;
use vvmf_core::{BigRational, Cyclotomic, Matrix, QSeries, Scalar};

/// A malformed input document.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError(pub String);

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ParseError {}

pub type ParseResult<T> = Result<T, ParseError>;

fn err<T>(msg: impl Into<String>) -> ParseResult<T> {
    Err(ParseError(msg.into()))
}

/// Types with an exact JSON encoding.
pub trait Codec: Scalar {
    fn encode(&self) -> Value;
    fn decode(v: &Value) -> ParseResult<Self>;
}

impl Codec for BigRational {
    fn encode(&self) -> Value {
        Value::String(self.to_string())
    }

    fn decode(v: &Value) -> ParseResult<Self> {
        match v {
            Value::String(s) => parse_rational(s).map_err(ParseError),
            Value::Number(n) if n.is_i64() => Ok(BigRational::from_integer(n.as_i64().unwrap().into())),
            other => err(format!("expected a rational string, found {other}")),
        }
    }
}

impl Codec for Cyclotomic {
    fn encode(&self) -> Value {
        let m = self.minimal();
        let terms: Vec<Value> = m.terms().map(|(e, c)| json!([e, c.to_string()])).collect();
        json!({ "conductor": m.conductor(), "terms": terms })
    }

    fn decode(v: &Value) -> ParseResult<Self> {
        match v {
            Value::Object(o) => {
                let n = o
                    .get("conductor")
                    .and_then(Value::as_u64)
                    .filter(|&n| n > 0)
                    .ok_or_else(|| ParseError(String::from("cyclotomic needs a positive integer conductor")))?;
                let terms = array(o.get("terms").unwrap_or(&Value::Null), "terms")?;
                let mut out = Vec::with_capacity(terms.len());
                for t in terms {
                    match t.as_array().map(Vec::as_slice) {
                        Some([e, c]) => {
                            let e = e.as_i64().ok_or_else(|| ParseError(format!("bad exponent {e}")))?;
                            out.push((e, BigRational::decode(c)?));
                        }
                        _ => return err(format!("cyclotomic term must be [e, \"p/q\"], found {t}")),
                    }
                }
                Ok(Cyclotomic::from_terms(n, &out))
            }
            other => Ok(Cyclotomic::from_rational(BigRational::decode(other)?)),
        }
    }
}

pub fn array<'a>(v: &'a Value, what: &str) -> ParseResult<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| ParseError(format!("`{what}` must be an array")))
}

pub fn encode_vec<F: Codec>(v: &[F]) -> Value {
    Value::Array(v.iter().map(Codec::encode).collect())
}

pub fn decode_vec<F: Codec>(v: &Value, what: &str) -> ParseResult<Vec<F>> {
    array(v, what)?.iter().map(F::decode).collect()
}

pub fn encode_matrix<F: Codec>(m: &Matrix<F>) -> Value {
    Value::Array(m.to_rows().iter().map(|r| encode_vec(r)).collect())
}

pub fn decode_matrix<F: Codec>(v: &Value, what: &str) -> ParseResult<Matrix<F>> {
    let rows = array(v, what)?
        .iter()
        .map(|r| decode_vec(r, what))
        .collect::<ParseResult<Vec<_>>>()?;
    if rows.is_empty() {
        return err(format!("`{what}` is empty"));
    }
    Matrix::from_rows(rows).map_err(|e| ParseError(format!("`{what}`: {e}")))
}

/// `{"offset": "p/q", "coeffs": [...], "order": "p/q"}`; `order` is the last
/// known exponent.
pub fn encode_series<F: Codec>(s: &QSeries<F>) -> Value {
    let order = s.precision() - BigRational::from_integer(1.into());
    json!({
        "offset": s.offset().to_string(),
        "coeffs": encode_vec(s.coeffs()),
        "order": order.to_string(),
    })
}

pub fn decode_series<F: Codec>(v: &Value) -> ParseResult<QSeries<F>> {
    let o = v.as_object().ok_or_else(|| ParseError(String::from("series must be an object")))?;
    let field = |k: &str| o.get(k).ok_or_else(|| ParseError(format!("series lacks `{k}`")));
    let offset = BigRational::decode(field("offset")?)?;
    let coeffs: Vec<F> = decode_vec(field("coeffs")?, "coeffs")?;
    let order = BigRational::decode(field("order")?)?;
    let precision = order + BigRational::from_integer(1.into());
    let len = BigRational::from_integer((coeffs.len() as i64).into());
    if &offset + &len != precision {
        return err(format!("series offset {offset} with {len} coefficients does not end at order {}", &precision - BigRational::from_integer(1.into())));
    }
    if coeffs.is_empty() {
        return Ok(QSeries::zero(precision));
    }
    Ok(QSeries::new(offset, coeffs))
}

pub fn encode_vector<F: Codec>(v: &[QSeries<F>]) -> Value {
    Value::Array(v.iter().map(encode_series).collect())
}

/// `{"lambda": [...], "psi": [[series, ...], ...], "order": M}`.
pub fn encode_fundamental<F: Codec>(fm: &FundamentalMatrix<F>) -> Value {
    let d = fm.dim();
    let psi: Vec<Value> = (0..d)
        .map(|i| Value::Array((0..d).map(|j| encode_series(&fm.psi_entry(i, j))).collect()))
        .collect();
    json!({
        "lambda": encode_vec(fm.lambda()),
        "psi": psi,
        "order": fm.order(),
    })
}

pub fn decode_fundamental<F: Codec>(v: &Value) -> ParseResult<FundamentalMatrix<F>> {
    let lambda: Vec<BigRational> = decode_vec(v.get("lambda").unwrap_or(&Value::Null), "lambda")?;
    let order = v
        .get("order")
        .and_then(Value::as_u64)
        .ok_or_else(|| ParseError(String::from("fundamental matrix needs an integer `order`")))? as usize;
    let d = lambda.len();
    let rows = array(v.get("psi").unwrap_or(&Value::Null), "psi")?;
    if rows.len() != d {
        return err("`psi` must have one row per exponent");
    }
    let mut psi = vec![Matrix::<F>::zeros(d, d); order + 1];
    for (i, row) in rows.iter().enumerate() {
        let row = array(row, "psi row")?;
        if row.len() != d {
            return err("`psi` must be square");
        }
        for (j, s) in row.iter().enumerate() {
            let s: QSeries<F> = decode_series(s)?;
            for (n, m) in psi.iter_mut().enumerate() {
                let c = s
                    .coeff_at(n as i64)
                    .ok_or_else(|| ParseError(format!("psi[{i}][{j}] is not known through q^{order}")))?;
                m.set(i, j, c);
            }
        }
    }
    FundamentalMatrix::from_parts(lambda, psi).map_err(|e| ParseError(e.to_string()))
}

pub fn encode_repdata<F: Codec>(r: &RepData<F>) -> Value {
    json!({ "lambda": encode_vec(r.lambda()), "x": encode_matrix(r.x()) })
}

pub fn decode_repdata<F: Codec>(v: &Value) -> ParseResult<RepData<F>> {
    let lambda = decode_vec(v.get("lambda").unwrap_or(&Value::Null), "lambda")?;
    let x = decode_matrix(v.get("x").unwrap_or(&Value::Null), "x")?;
    RepData::new(lambda, x).map_err(|e| ParseError(e.to_string()))
}

/// `{"conductor": N, "s": [[...]], "t": [...], "t_exponents": [...]}`.
pub fn encode_modular(m: &ModularRep) -> Value {
    json!({
        "conductor": m.conductor(),
        "s": encode_matrix(m.s()),
        "t": encode_vec(m.t_diag()),
        "t_exponents": encode_vec(m.t_exponents()),
    })
}

/// `S` from `s`; `T` from `t` (roots of unity) or else from `lambda`.
pub fn decode_modular(v: &Value) -> ParseResult<ModularRep> {
    let s = decode_matrix(v.get("s").ok_or_else(|| ParseError(String::from("input lacks `s`")))?, "s")?;
    let exps: Vec<BigRational> = match (v.get("t"), v.get("lambda")) {
        (Some(t), _) => decode_vec::<Cyclotomic>(t, "t")?
            .iter()
            .map(|x| {
                x.as_root_of_unity()
                    .ok_or_else(|| ParseError(format!("T entry {x} is not a root of unity")))
            })
            .collect::<ParseResult<_>>()?,
        (None, Some(l)) => decode_vec(l, "lambda")?,
        (None, None) => return err("input needs `t` or `lambda` to fix T"),
    };
    ModularRep::from_exponents(&exps, s).map_err(|e| ParseError(e.to_string()))
}

/// `[[component, pole, "c"], ...]`.
pub fn decode_principal_part<F: Codec>(v: &Value) -> ParseResult<PrincipalPart<F>> {
    let mut p = PrincipalPart::new();
    for t in array(v, "principal_part")? {
        match t.as_array().map(Vec::as_slice) {
            Some([c, n, x]) => {
                let c = c.as_u64().ok_or_else(|| ParseError(format!("bad component {c}")))? as usize;
                let n = n.as_u64().ok_or_else(|| ParseError(format!("bad pole order {n}")))? as usize;
                p.insert(c, n, F::decode(x)?).map_err(|e| ParseError(e.to_string()))?;
            }
            _ => return err(format!("principal part term must be [component, pole, \"c\"], found {t}")),
        }
    }
    Ok(p)
}

pub fn encode_principal_part<F: Codec>(p: &PrincipalPart<F>) -> Value {
    Value::Array(p.terms().map(|(c, n, x)| json!([c, n, x.encode()])).collect())
}

/// Sorted-key object, for reports that must be byte-stable.
pub fn object(pairs: Vec<(&str, Value)>) -> Value {
    let mut m = Map::new();
    for (k, v) in pairs {
        m.insert(k.to_string(), v);
    }
    Value::Object(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use vvmf_core::exactnum::rat;

    #[test]
    fn rationals_accept_strings_and_integers() {
        assert_eq!(BigRational::decode(&json!("-3/6")).unwrap(), rat(-1, 2));
        assert_eq!(BigRational::decode(&json!(7)).unwrap(), rat(7, 1));
        assert!(BigRational::decode(&json!(0.5)).is_err());
        assert!(BigRational::decode(&json!("1/0")).is_err());
    }

    #[test]
    fn cyclotomic_round_trip() {
        let x = Cyclotomic::sqrt2().add(&Cyclotomic::zeta_pow(12, 5));
        assert_eq!(Cyclotomic::decode(&x.encode()).unwrap(), x);
        assert_eq!(Cyclotomic::decode(&json!("2/3")).unwrap(), Cyclotomic::from_rational(rat(2, 3)));
        assert!(Cyclotomic::decode(&json!({"conductor": 0, "terms": []})).is_err());
    }

    #[test]
    fn zero_series_keeps_its_order() {
        let z: QSeries<BigRational> = QSeries::zero(rat(5, 1));
        let v = encode_series(&z);
        assert_eq!(v, json!({"offset": "5", "coeffs": [], "order": "4"}));
        assert_eq!(decode_series::<BigRational>(&v).unwrap(), z);
    }

    #[test]
    fn inconsistent_series_is_rejected() {
        let v = json!({"offset": "0", "coeffs": ["1"], "order": "3"});
        assert!(decode_series::<BigRational>(&v).is_err());
    }

    proptest! {
        #[test]
        fn series_round_trip(off in -3i64..3, c in proptest::collection::vec(-50i64..50, 0..8)) {
            let s: QSeries<BigRational> = QSeries::from_ints(off, &c);
            prop_assert_eq!(decode_series::<BigRational>(&encode_series(&s)).unwrap(), s);
        }
    }
}
