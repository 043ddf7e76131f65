use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::Integer;

/// Coefficient ring of a (co)chain complex: the integers or a prime field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Coefficient {
    Integers,
    Mod(u64),
}

impl Coefficient {
    pub const Z: Coefficient = Coefficient::Integers;
    pub const Z2: Coefficient = Coefficient::Mod(2);

    /// `Mod(p)` after checking that `p` is prime.
    pub fn modulo(p: u64) -> Result<Coefficient> {
        if super::is_prime(p) {
            Ok(Coefficient::Mod(p))
        } else {
            Err(Error::Parameter(format!("{p} is not prime")))
        }
    }

    pub fn parse(s: &str) -> Result<Coefficient> {
        match s.trim().to_ascii_lowercase().as_str() {
            "z" | "integers" => Ok(Coefficient::Integers),
            other => {
                let digits = other.trim_start_matches('z');
                let p: u64 = digits
                    .parse()
                    .map_err(|_| Error::Parameter(format!("unknown coefficient `{s}`")))?;
                Coefficient::modulo(p)
            }
        }
    }

    pub fn modulus(self) -> Option<u64> {
        match self {
            Coefficient::Integers => None,
            Coefficient::Mod(p) => Some(p),
        }
    }

    pub fn normalize(self, x: Integer) -> Integer {
        match self {
            Coefficient::Integers => x,
            Coefficient::Mod(p) => x.mod_floor(&BigInt::from(p)),
        }
    }

    pub fn normalize_ref(self, x: &Integer) -> Integer {
        self.normalize(x.clone())
    }

    pub fn is_zero(self, x: &Integer) -> bool {
        match self {
            Coefficient::Integers => x.is_zero(),
            Coefficient::Mod(p) => (x % BigInt::from(p)).is_zero(),
        }
    }

    /// Pivot magnitude used by the elimination: `|x|` over Z, 1 over a field.
    pub(crate) fn magnitude(self, x: &Integer) -> Integer {
        match self {
            Coefficient::Integers => x.abs(),
            Coefficient::Mod(_) => BigInt::one(),
        }
    }

    /// Whether the nonzero `a` divides `b`.
    pub(crate) fn divides(self, a: &Integer, b: &Integer) -> bool {
        match self {
            Coefficient::Integers => (b % a).is_zero(),
            Coefficient::Mod(_) => true,
        }
    }

    /// `b / a` for `a | b`.
    pub(crate) fn exact_div(self, b: &Integer, a: &Integer) -> Integer {
        match self {
            Coefficient::Integers => b / a,
            Coefficient::Mod(p) => self.normalize(b * mod_inverse(a, p)),
        }
    }

    /// Inverse of a unit of the ring.
    pub(crate) fn unit_inverse(self, u: &Integer) -> Integer {
        match self {
            Coefficient::Integers => u.clone(),
            Coefficient::Mod(p) => mod_inverse(u, p),
        }
    }

    /// Scalar that makes `x` a canonical associate (positive over Z, 1 over a field).
    pub(crate) fn normalizing_unit(self, x: &Integer) -> Integer {
        match self {
            Coefficient::Integers => {
                if x.is_negative() {
                    -BigInt::one()
                } else {
                    BigInt::one()
                }
            }
            Coefficient::Mod(p) => mod_inverse(x, p),
        }
    }
}

impl fmt::Display for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coefficient::Integers => write!(f, "Z"),
            Coefficient::Mod(p) => write!(f, "Z{p}"),
        }
    }
}

/// Extended gcd: `(g, s, t)` with `g = s*a + t*b`, `g >= 0`.
pub(crate) fn xgcd(a: &Integer, b: &Integer) -> (Integer, Integer, Integer) {
    let e = a.extended_gcd(b);
    if e.gcd.is_negative() {
        (-e.gcd, -e.x, -e.y)
    } else {
        (e.gcd, e.x, e.y)
    }
}

fn mod_inverse(a: &Integer, p: u64) -> Integer {
    let m = BigInt::from(p);
    let a = a.mod_floor(&m);
    let (g, s, _) = xgcd(&a, &m);
    debug_assert!(g.is_one(), "non-unit inverted mod {p}");
    s.mod_floor(&m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        assert_eq!(Coefficient::parse("z").unwrap(), Coefficient::Z);
        assert_eq!(Coefficient::parse("Z2").unwrap(), Coefficient::Z2);
        assert_eq!(Coefficient::parse("z3").unwrap(), Coefficient::Mod(3));
        assert!(Coefficient::parse("z4").is_err());
        assert_eq!(Coefficient::Z2.to_string(), "Z2");
    }

    #[test]
    fn field_inverse() {
        let c = Coefficient::Mod(7);
        for a in 1..7 {
            let inv = c.unit_inverse(&BigInt::from(a));
            assert_eq!(c.normalize(inv * a), BigInt::one());
        }
    }

    #[test]
    fn xgcd_identity() {
        for (a, b) in [(12, 18), (-4, 6), (7, 0), (0, -5)] {
            let (a, b) = (BigInt::from(a), BigInt::from(b));
            let (g, s, t) = xgcd(&a, &b);
            assert!(!g.is_negative());
            assert_eq!(&s * &a + &t * &b, g);
        }
    }
}
