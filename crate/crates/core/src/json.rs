//! JSON helpers: integers are written as JSON numbers when they fit in `i64`
//! and as decimal strings otherwise; both forms are accepted on input.

use num_bigint::BigInt;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::scalar::Coeff;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub(crate) enum IntRepr {
    Small(i64),
    Big(String),
}

impl IntRepr {
    pub(crate) fn from_coeff<C: Coeff>(c: &C) -> Self {
        match c.to_i64() {
            Some(v) => IntRepr::Small(v),
            None => IntRepr::Big(c.to_string()),
        }
    }

    pub(crate) fn to_bigint(&self) -> Result<BigInt, String> {
        match self {
            IntRepr::Small(v) => Ok(BigInt::from(*v)),
            IntRepr::Big(s) => s.trim().parse().map_err(|_| format!("invalid integer {s:?}")),
        }
    }

    pub(crate) fn to_coeff<C: Coeff>(&self) -> Result<C, String> {
        let b = self.to_bigint()?;
        C::from_bigint(&b).ok_or_else(|| format!("integer {b} out of range"))
    }
}

/// `#[serde(with = "crate::json::bigint")]`
pub(crate) mod bigint {
    use super::*;

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        IntRepr::from_coeff(v).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        IntRepr::deserialize(d)?.to_bigint().map_err(serde::de::Error::custom)
    }
}
