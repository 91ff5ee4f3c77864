//! Serde adapters mapping `BigInt` values onto plain JSON integers.
//!
//! serde_json is built with the `arbitrary_precision` feature, so going
//! through `serde_json::Number` preserves integers of any size in both
//! directions. Floats and exponent forms are rejected.

use num_bigint::BigInt;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Number;
use std::str::FromStr;

pub fn bigint_to_number(x: &BigInt) -> Number {
    // an integer literal is always a valid JSON number
    serde_json::from_str(&x.to_string()).expect("integer literal parses as a JSON number")
}

pub fn number_to_bigint(n: &Number) -> Result<BigInt, String> {
    let s = n.to_string();
    BigInt::from_str(&s).map_err(|_| format!("expected an integer, got {s}"))
}

/// `#[serde(with = "jsonint::big")]` for a single `BigInt` field.
pub mod big {
    use super::*;

    pub fn serialize<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        bigint_to_number(x).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        let n = Number::deserialize(d)?;
        number_to_bigint(&n).map_err(D::Error::custom)
    }
}

/// `#[serde(with = "jsonint::biglist")]` for a `Vec<BigInt>` field.
pub mod biglist {
    use super::*;

    pub fn serialize<S: Serializer>(xs: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        let ns: Vec<Number> = xs.iter().map(bigint_to_number).collect();
        ns.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        let ns = Vec::<Number>::deserialize(d)?;
        ns.iter()
            .map(|n| number_to_bigint(n).map_err(D::Error::custom))
            .collect()
    }
}

/// `#[serde(with = "jsonint::optbiglist")]` for an `Option<Vec<BigInt>>` field.
pub mod optbiglist {
    use super::*;

    pub fn serialize<S: Serializer>(xs: &Option<Vec<BigInt>>, s: S) -> Result<S::Ok, S::Error> {
        match xs {
            Some(v) => {
                let ns: Vec<Number> = v.iter().map(bigint_to_number).collect();
                s.serialize_some(&ns)
            }
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Vec<BigInt>>, D::Error> {
        let ns = Option::<Vec<Number>>::deserialize(d)?;
        ns.map(|v| {
            v.iter()
                .map(|n| number_to_bigint(n).map_err(D::Error::custom))
                .collect()
        })
        .transpose()
    }
}

/// `#[serde(with = "jsonint::biglistlist")]` for a `Vec<Vec<BigInt>>` field.
pub mod biglistlist {
    use super::*;

    pub fn serialize<S: Serializer>(xs: &[Vec<BigInt>], s: S) -> Result<S::Ok, S::Error> {
        let ns: Vec<Vec<Number>> = xs
            .iter()
            .map(|row| row.iter().map(bigint_to_number).collect())
            .collect();
        ns.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<BigInt>>, D::Error> {
        let ns = Vec::<Vec<Number>>::deserialize(d)?;
        ns.iter()
            .map(|row| {
                row.iter()
                    .map(|n| number_to_bigint(n).map_err(D::Error::custom))
                    .collect()
            })
            .collect()
    }
}

/// `#[serde(with = "jsonint::bigmap")]` for a `BTreeMap<String, BigInt>` field.
pub mod bigmap {
    use super::*;
    use std::collections::BTreeMap;

    pub fn serialize<S: Serializer>(m: &BTreeMap<String, BigInt>, s: S) -> Result<S::Ok, S::Error> {
        let ns: BTreeMap<&String, Number> =
            m.iter().map(|(k, v)| (k, bigint_to_number(v))).collect();
        ns.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> Result<BTreeMap<String, BigInt>, D::Error> {
        let ns = BTreeMap::<String, Number>::deserialize(d)?;
        ns.into_iter()
            .map(|(k, n)| {
                number_to_bigint(&n)
                    .map_err(D::Error::custom)
                    .map(|v| (k, v))
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn huge_integer_round_trips() {
        let x = BigInt::from_str("-123456789012345678901234567890123456789").unwrap();
        let n = bigint_to_number(&x);
        assert_eq!(number_to_bigint(&n).unwrap(), x);
        assert_eq!(serde_json::to_string(&n).unwrap(), x.to_string());
    }

    #[test]
    fn float_rejected() {
        let n: Number = serde_json::from_str("1.5").unwrap();
        assert!(number_to_bigint(&n).is_err());
    }
}
