//! Text and JSON encodings shared by the library and the command line.

use num_bigint::BigUint;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serializer};

use crate::error::{Error, Result};

/// A big integer as a JSON number, digits verbatim.
pub fn big_to_json(v: &BigUint) -> serde_json::Value {
    let num: serde_json::Number = v.to_string().parse().expect("decimal digits form a JSON number");
    serde_json::Value::Number(num)
}

pub fn bigs_to_json(v: &[BigUint]) -> serde_json::Value {
    serde_json::Value::Array(v.iter().map(big_to_json).collect())
}

/// Space-separated decimal integers, lowest index first.
pub fn join_decimal(v: &[BigUint]) -> String {
    v.iter().map(BigUint::to_string).collect::<Vec<_>>().join(" ")
}

/// Parses whitespace- or comma-separated decimal integers.
pub fn parse_decimal(text: &str) -> Result<Vec<BigUint>> {
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<BigUint>().map_err(|e| Error::Parse(format!("integer {t:?}: {e}"))))
        .collect()
}

/// Parses a comma-separated list of small integers.
pub fn parse_usize_list(text: &str) -> Result<Vec<usize>> {
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<usize>().map_err(|e| Error::Parse(format!("integer {t:?}: {e}"))))
        .collect()
}

/// Serde adapter writing `Vec<BigUint>` as a JSON array of plain numbers.
pub mod decimal_vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[BigUint], s: S) -> std::result::Result<S::Ok, S::Error> {
        serde::Serialize::serialize(&bigs_to_json(v), s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<BigUint>, D::Error> {
        let nums = Vec::<serde_json::Number>::deserialize(d)?;
        nums.iter()
            .map(|n| n.to_string().parse::<BigUint>().map_err(D::Error::custom))
            .collect()
    }
}

/// Serde adapter for a single `BigUint` as a JSON number.
pub mod decimal {
    use super::*;

    pub fn serialize<S: Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
        serde::Serialize::serialize(&big_to_json(v), s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<BigUint, D::Error> {
        let n = serde_json::Number::deserialize(d)?;
        n.to_string().parse::<BigUint>().map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn big_numbers_survive_json() {
        let big: BigUint = "123456789012345678901234567890".parse().unwrap();
        let text = serde_json::to_string(&big_to_json(&big)).unwrap();
        assert_eq!(text, "123456789012345678901234567890");
        #[derive(serde::Serialize, serde::Deserialize)]
        struct W {
            #[serde(with = "decimal_vec")]
            v: Vec<BigUint>,
        }
        let w = W { v: vec![big.clone(), BigUint::from(7u32)] };
        let s = serde_json::to_string(&w).unwrap();
        assert_eq!(s, r#"{"v":[123456789012345678901234567890,7]}"#);
        let back: W = serde_json::from_str(&s).unwrap();
        assert_eq!(back.v, w.v);
    }

    #[test]
    fn decimal_lists() {
        let v = parse_decimal("2 6,6").unwrap();
        assert_eq!(join_decimal(&v), "2 6 6");
        assert!(parse_decimal("2 x").is_err());
        assert_eq!(parse_usize_list("1,2, 3").unwrap(), vec![1, 2, 3]);
    }
}
