use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// The coefficient field shared by every scalar, matrix and polynomial in a
/// computation.
///
/// `GaussianRationals` is the exact stand-in for the complex numbers: it
/// contains the isotropic vectors such as `(1, i)` that the nilpotency
/// constructions need.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rationals,
    GaussianRationals,
    PrimeField(u32),
}

impl Field {
    /// Builds `F_p`, checking that `p` is a prime below `2^31`.
    pub fn prime(p: u32) -> Result<Field> {
        if p >= 1 << 31 {
            return Err(Error::InvalidField(format!("p = {p} is not below 2^31")));
        }
        if !is_prime(p as u64) {
            return Err(Error::InvalidField(format!("p = {p} is not prime")));
        }
        Ok(Field::PrimeField(p))
    }

    pub fn characteristic(&self) -> u32 {
        match self {
            Field::PrimeField(p) => *p,
            _ => 0,
        }
    }

    pub fn is_char_zero(&self) -> bool {
        self.characteristic() == 0
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "Q"),
            Field::GaussianRationals => write!(f, "Qi"),
            Field::PrimeField(p) => write!(f, "Fp:{p}"),
        }
    }
}

impl FromStr for Field {
    type Err = Error;

    fn from_str(s: &str) -> Result<Field> {
        match s.trim() {
            "Q" => Ok(Field::Rationals),
            "Qi" => Ok(Field::GaussianRationals),
            other => {
                let p = other
                    .strip_prefix("Fp:")
                    .and_then(|p| p.parse::<u32>().ok())
                    .ok_or_else(|| Error::InvalidField(other.to_string()))?;
                Field::prime(p)
            }
        }
    }
}

impl Serialize for Field {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Field {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Field, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
