//! Exact coefficient arithmetic over `Q(q)`.

mod laurent;
pub mod linalg;
mod qnum;
mod ratfunc;

pub use laurent::LaurentPoly;
pub use linalg::{solve_linear, Field, LinearSolution};
pub use qnum::{qbinom, qfact, qnum};
pub use ratfunc::RatFunc;

pub(crate) use laurent::fmt_rational;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Value;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QarithError {
    #[error("inexact division: {0}")]
    InexactDivision(String),
    #[error("argument out of range: {0}")]
    Domain(String),
}

fn int_value(n: &BigInt) -> Value {
    match i64::try_from(n) {
        Ok(v) => Value::from(v),
        Err(_) => Value::from(n.to_string()),
    }
}

fn value_int(v: &Value) -> Option<BigInt> {
    match v {
        Value::Number(n) => n.as_i64().map(BigInt::from),
        Value::String(s) => s.parse().ok(),
        _ => None,
    }
}

impl LaurentPoly {
    /// `[[exponent, numerator, denominator], ...]` in increasing exponent order.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms()
                .map(|(e, c)| Value::Array(vec![Value::from(e), int_value(c.numer()), int_value(c.denom())]))
                .collect(),
        )
    }

    pub fn from_json(v: &Value) -> Option<Self> {
        let mut terms = Vec::new();
        for t in v.as_array()? {
            let t = t.as_array()?;
            if t.len() != 3 {
                return None;
            }
            let e = t[0].as_i64()?;
            let (n, d) = (value_int(&t[1])?, value_int(&t[2])?);
            if d == BigInt::from(0) {
                return None;
            }
            terms.push((e, BigRational::new(n, d)));
        }
        Some(LaurentPoly::from_terms(terms))
    }
}

impl RatFunc {
    /// `{"num": [...], "den": [...]}` with both parts in triple form.
    pub fn to_json(&self) -> Value {
        serde_json::json!({ "num": self.numer().to_json(), "den": self.denom().to_json() })
    }

    pub fn from_json(v: &Value) -> Option<Self> {
        let num = LaurentPoly::from_json(v.get("num")?)?;
        let den = LaurentPoly::from_json(v.get("den")?)?;
        if den.is_zero() {
            return None;
        }
        Some(RatFunc::new(num, den))
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = Value::deserialize(d)?;
        LaurentPoly::from_json(&v).ok_or_else(|| D::Error::custom("malformed Laurent polynomial"))
    }
}

impl Serialize for RatFunc {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for RatFunc {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = Value::deserialize(d)?;
        RatFunc::from_json(&v).ok_or_else(|| D::Error::custom("malformed rational function"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn arb_laurent() -> impl Strategy<Value = LaurentPoly> {
        prop::collection::vec((-4i64..5, -5i64..6, 1i64..4), 0..5).prop_map(|ts| {
            LaurentPoly::from_terms(
                ts.into_iter()
                    .map(|(e, n, d)| (e, BigRational::new(n.into(), d.into()))),
            )
        })
    }

    fn arb_ratfunc() -> impl Strategy<Value = RatFunc> {
        (arb_laurent(), arb_laurent()).prop_filter_map("nonzero denominator", |(n, d)| {
            (!d.is_zero()).then(|| RatFunc::new(n, d))
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn laurent_ring_axioms(a in arb_laurent(), b in arb_laurent(), c in arb_laurent()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!((&a * &b).bar(), &a.bar() * &b.bar());
        }

        #[test]
        fn ratfunc_field_axioms(a in arb_ratfunc(), b in arb_ratfunc(), c in arb_ratfunc()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            if !b.is_zero() {
                prop_assert_eq!(&(&a / &b) * &b, a.clone());
            }
        }

        #[test]
        fn ratfunc_json_round_trip(a in arb_ratfunc()) {
            let back = RatFunc::from_json(&a.to_json()).unwrap();
            prop_assert_eq!(back, a);
        }
    }

    #[test]
    fn json_triples() {
        let p = LaurentPoly::from_terms([
            (-1, BigRational::new(3.into(), 2.into())),
            (2, BigRational::from_integer((-1).into())),
        ]);
        assert_eq!(p.to_json().to_string(), "[[-1,3,2],[2,-1,1]]");
    }
}
