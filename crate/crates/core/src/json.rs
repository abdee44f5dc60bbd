//! JSON encodings for scalars, states and conifold points.
//!
//! A scalar is `{"re": x, "im": y}` where each part is either a JSON number
//! or a string. Strings hold exact rationals (`"3"`, `"-7/4"`, `"0.125"`).
//! On output the exact backend always writes strings (`"p/q"` or `"p"`) and
//! the floating-point backends write numbers. On input the exact backend
//! rejects non-integer JSON numbers such as `0.1`; write them as strings
//! instead.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::scalar::{Real, Scalar};
use crate::state::MultiQubitState;

/// Parses `p`, `p/q` or a plain decimal `d.ddd` into an exact rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("'{s}' is not a rational number"));
    if let Some((n, d)) = s.split_once('/') {
        let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
        let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
        if d.is_zero() {
            return Err(Error::Parse(format!("'{s}' has a zero denominator")));
        }
        return Ok(BigRational::new(n, d));
    }
    if let Some((int_part, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = int_part.starts_with('-');
        let digits = format!("{}{frac}", int_part.trim_start_matches(['-', '+']));
        let n = BigInt::from_str(&digits).map_err(|_| bad())?;
        let d = num_traits::pow(BigInt::from(10), frac.len());
        let r = BigRational::new(n, d);
        return Ok(if negative { -r } else { r });
    }
    BigInt::from_str(s)
        .map(BigRational::from_integer)
        .map_err(|_| bad())
}

pub fn real_from_json<R: Real>(v: &Value) -> Result<R> {
    match v {
        Value::String(s) => parse_rational(s).map(|r| R::from_rational(&r)),
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(R::from_int(i))
            } else if R::BACKEND.is_exact() {
                Err(Error::Parse(format!(
                    "{n} is not an integer; the exact backend needs rationals as strings like \"1/3\""
                )))
            } else {
                let x = n
                    .as_f64()
                    .ok_or_else(|| Error::Parse(format!("{n} is not representable")))?;
                BigRational::from_float(x)
                    .map(|r| R::from_rational(&r))
                    .ok_or_else(|| Error::Parse(format!("{n} is not finite")))
            }
        }
        other => Err(Error::Parse(format!(
            "expected a number or string, got {other}"
        ))),
    }
}

pub fn real_to_json<R: Real>(x: &R) -> Value {
    if R::BACKEND.is_exact() {
        Value::String(x.to_string())
    } else {
        json!(x.to_f64())
    }
}

/// Accepts `{"re": .., "im": ..}` (missing parts are zero) or a bare real.
pub fn scalar_from_json<R: Real>(v: &Value) -> Result<Scalar<R>> {
    match v {
        Value::Object(map) => {
            if let Some(k) = map.keys().find(|k| *k != "re" && *k != "im") {
                return Err(Error::Parse(format!("unknown scalar field '{k}'")));
            }
            let part = |key| {
                map.get(key)
                    .map_or_else(|| Ok(R::zero()), real_from_json::<R>)
            };
            Ok(Scalar::new(part("re")?, part("im")?))
        }
        other => real_from_json(other).map(|re| Scalar::new(re, R::zero())),
    }
}

pub fn scalar_to_json<R: Real>(c: &Scalar<R>) -> Value {
    let mut map = Map::new();
    map.insert("re".into(), real_to_json(&c.re));
    map.insert("im".into(), real_to_json(&c.im));
    Value::Object(map)
}

/// The on-disk state format `{"m": int, "amps": [scalar, …], "label": str?}`,
/// amplitudes in flat-index order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateDocument {
    pub m: usize,
    pub amps: Vec<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

impl StateDocument {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_state<R: Real>(&self) -> Result<MultiQubitState<R>> {
        let amps = self
            .amps
            .iter()
            .enumerate()
            .map(|(k, v)| {
                scalar_from_json(v).map_err(|e| Error::Parse(format!("amplitude {k}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        MultiQubitState::from_amplitudes(self.m, amps)
    }

    pub fn from_state<R: Real>(state: &MultiQubitState<R>, label: Option<String>) -> Self {
        Self {
            m: state.num_qubits(),
            amps: state.amplitudes().iter().map(scalar_to_json).collect(),
            label,
        }
    }
}

/// Reads a conifold point: a 4-element array or `{"z": [..4]}`.
pub fn point_from_json<R: Real>(v: &Value) -> Result<[Scalar<R>; 4]> {
    let arr = match v {
        Value::Array(a) => a,
        Value::Object(o) => match o.get("z") {
            Some(Value::Array(a)) => a,
            _ => return Err(Error::Parse("expected {\"z\": [4 scalars]}".into())),
        },
        _ => return Err(Error::Parse("expected an array of 4 scalars".into())),
    };
    if arr.len() != 4 {
        return Err(Error::Parse(format!(
            "expected 4 coordinates, got {}",
            arr.len()
        )));
    }
    let z: Vec<Scalar<R>> = arr.iter().map(scalar_from_json).collect::<Result<_>>()?;
    Ok([z[0].clone(), z[1].clone(), z[2].clone(), z[3].clone()])
}
