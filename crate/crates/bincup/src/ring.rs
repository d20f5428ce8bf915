//! Coefficient rings: the integers and prime fields.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde_json::Value;
use thiserror::Error;

/// Coefficient ring tag shared by all exact-arithmetic types in the crate.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Ring {
    Z,
    Zp(u64),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RingError {
    #[error("{0} is not a prime modulus")]
    NotPrime(u64),
    #[error("malformed ring tag: {0}")]
    Parse(String),
}

impl Ring {
    /// Prime-checked constructor for `Z_p`.
    pub fn zp(p: u64) -> Result<Ring, RingError> {
        if is_prime(p) {
            Ok(Ring::Zp(p))
        } else {
            Err(RingError::NotPrime(p))
        }
    }

    pub fn modulus(&self) -> Option<u64> {
        match self {
            Ring::Z => None,
            Ring::Zp(p) => Some(*p),
        }
    }

    /// Canonical representative of `v` in this ring (`0..p-1` over `Z_p`).
    pub fn reduce_i128(&self, v: i128) -> i128 {
        match self {
            Ring::Z => v,
            Ring::Zp(p) => {
                let p = *p as i128;
                v.rem_euclid(p)
            }
        }
    }

    pub fn reduce_big(&self, v: &BigInt) -> BigInt {
        match self {
            Ring::Z => v.clone(),
            Ring::Zp(p) => {
                let p = BigInt::from(*p);
                let mut r = v % &p;
                if r.is_negative() {
                    r += &p;
                }
                r
            }
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            Ring::Z => Value::String("Z".into()),
            Ring::Zp(p) => serde_json::json!({ "Zp": p }),
        }
    }

    pub fn from_json(v: &Value) -> Result<Ring, RingError> {
        match v {
            Value::String(s) if s == "Z" => Ok(Ring::Z),
            Value::Object(m) => match m.get("Zp") {
                Some(Value::Number(n)) => {
                    let p = n.as_u64().ok_or_else(|| RingError::Parse(v.to_string()))?;
                    Ring::zp(p)
                }
                _ => Err(RingError::Parse(v.to_string())),
            },
            _ => Err(RingError::Parse(v.to_string())),
        }
    }

    /// Parses the CLI spelling `Z` or `Zp:P`.
    pub fn parse(s: &str) -> Result<Ring, RingError> {
        if s == "Z" {
            return Ok(Ring::Z);
        }
        if let Some(rest) = s.strip_prefix("Zp:") {
            let p: u64 = rest.parse().map_err(|_| RingError::Parse(s.into()))?;
            return Ring::zp(p);
        }
        Err(RingError::Parse(s.into()))
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Z => write!(f, "Z"),
            Ring::Zp(p) => write!(f, "Z_{p}"),
        }
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Modular inverse in `Z_p` for prime `p`.
pub fn inv_mod(a: u64, p: u64) -> u64 {
    // extended Euclid on i128 to dodge overflow
    let (mut t, mut new_t): (i128, i128) = (0, 1);
    let (mut r, mut new_r): (i128, i128) = (p as i128, (a % p) as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    assert!(r == 1, "{a} has no inverse mod {p}");
    t.rem_euclid(p as i128) as u64
}

/// Exact conversion to `i128`; panics on overflow, which desk-scale inputs
/// never reach.
pub fn big_to_i128(v: &BigInt) -> i128 {
    v.to_i128().expect("value exceeds i128 range")
}

pub fn big_is_zero(v: &BigInt) -> bool {
    v.is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes() {
        assert!(is_prime(2));
        assert!(is_prime(3));
        assert!(is_prime(7919));
        assert!(!is_prime(1));
        assert!(!is_prime(9));
        assert!(Ring::zp(6).is_err());
    }

    #[test]
    fn inverses() {
        for p in [3u64, 5, 7, 11] {
            for a in 1..p {
                assert_eq!((inv_mod(a, p) * a) % p, 1);
            }
        }
    }

    #[test]
    fn reduction() {
        assert_eq!(Ring::Zp(5).reduce_i128(-3), 2);
        assert_eq!(Ring::Z.reduce_i128(-3), -3);
        assert_eq!(Ring::Zp(3).reduce_big(&BigInt::from(-1)), BigInt::from(2));
    }

    #[test]
    fn ring_parse_roundtrip() {
        assert_eq!(Ring::parse("Z").unwrap(), Ring::Z);
        assert_eq!(Ring::parse("Zp:5").unwrap(), Ring::Zp(5));
        assert!(Ring::parse("Zp:4").is_err());
        for r in [Ring::Z, Ring::Zp(7)] {
            assert_eq!(Ring::from_json(&r.to_json()).unwrap(), r);
        }
    }
}
