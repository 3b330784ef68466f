use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact commutative ground ring `k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CoeffRing {
    Integers,
    Rationals,
    /// `ℤ/m`, `m ≥ 2`; not necessarily prime.
    Modular(BigInt),
}

impl CoeffRing {
    pub fn modular(m: impl Into<BigInt>) -> Result<Self> {
        let m = m.into();
        if m < BigInt::from(2) {
            return Err(Error::Semantic(format!("modulus {} must be at least 2", m)));
        }
        Ok(CoeffRing::Modular(m))
    }

    /// `F_p`; rejects composite `p`.
    pub fn prime_field(p: impl Into<BigInt>) -> Result<Self> {
        let p = p.into();
        if !is_prime(&p) {
            return Err(Error::Semantic(format!("{} is not prime", p)));
        }
        Ok(CoeffRing::Modular(p))
    }

    pub fn is_field(&self) -> bool {
        match self {
            CoeffRing::Integers => false,
            CoeffRing::Rationals => true,
            CoeffRing::Modular(m) => is_prime(m),
        }
    }

    pub fn zero(&self) -> Coefficient {
        self.from_int(0)
    }

    pub fn one(&self) -> Coefficient {
        self.from_int(1)
    }

    pub fn from_int(&self, v: impl Into<BigInt>) -> Coefficient {
        let v = v.into();
        match self {
            CoeffRing::Integers => Coefficient::Int(v),
            CoeffRing::Rationals => Coefficient::Rat(BigRational::from_integer(v)),
            CoeffRing::Modular(m) => Coefficient::Mod {
                value: v.mod_floor(m),
                modulus: m.clone(),
            },
        }
    }

    /// Embeds a rational; fails if it has no image (non-integral over ℤ,
    /// non-invertible denominator mod m).
    pub fn from_rational(&self, q: &BigRational) -> Result<Coefficient> {
        match self {
            CoeffRing::Rationals => Ok(Coefficient::Rat(q.clone())),
            CoeffRing::Integers if q.is_integer() => Ok(Coefficient::Int(q.to_integer())),
            CoeffRing::Integers => Err(Error::Unsupported(format!("{} is not an integer", q))),
            CoeffRing::Modular(_) => {
                let num = self.from_int(q.numer().clone());
                let den = self.from_int(q.denom().clone());
                let inv = den
                    .inverse()
                    .ok_or_else(|| Error::Unsupported(format!("{} has no image in {}", q, self)))?;
                Ok(&num * &inv)
            }
        }
    }

    pub fn contains(&self, c: &Coefficient) -> bool {
        matches!(
            (self, c),
            (CoeffRing::Integers, Coefficient::Int(_))
                | (CoeffRing::Rationals, Coefficient::Rat(_))
        ) || matches!((self, c), (CoeffRing::Modular(m), Coefficient::Mod { modulus, .. }) if m == modulus)
    }
}

impl fmt::Display for CoeffRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoeffRing::Integers => write!(f, "Z"),
            CoeffRing::Rationals => write!(f, "Q"),
            CoeffRing::Modular(m) if is_prime(m) => write!(f, "F_{}", m),
            CoeffRing::Modular(m) => write!(f, "Z/{}", m),
        }
    }
}

/// Parses `z`, `q`, `zmod:m`, `fp:p`.
impl FromStr for CoeffRing {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |msg: String| Error::Parse {
            kind: "coefficient ring",
            line: 1,
            column: 1,
            message: msg,
        };
        match s.trim() {
            "z" | "Z" => Ok(CoeffRing::Integers),
            "q" | "Q" => Ok(CoeffRing::Rationals),
            other => {
                let (tag, num) = other
                    .split_once(':')
                    .ok_or_else(|| bad(format!("unknown ring `{}`", other)))?;
                let n: BigInt = num
                    .parse()
                    .map_err(|_| bad(format!("`{}` is not an integer", num)))?;
                match tag {
                    "zmod" => CoeffRing::modular(n),
                    "fp" => CoeffRing::prime_field(n),
                    _ => Err(bad(format!("unknown ring `{}`", other))),
                }
            }
        }
    }
}

pub fn is_prime(n: &BigInt) -> bool {
    if *n < BigInt::from(2) {
        return false;
    }
    let mut d = BigInt::from(2);
    while &d * &d <= *n {
        if n.is_multiple_of(&d) {
            return false;
        }
        d += 1;
    }
    true
}

/// A value of a [`CoeffRing`]. Rationals are kept in lowest terms with a
/// positive denominator and residues in `[0, m)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Coefficient {
    Int(BigInt),
    Rat(BigRational),
    Mod { value: BigInt, modulus: BigInt },
}

impl Coefficient {
    pub fn ring(&self) -> CoeffRing {
        match self {
            Coefficient::Int(_) => CoeffRing::Integers,
            Coefficient::Rat(_) => CoeffRing::Rationals,
            Coefficient::Mod { modulus, .. } => CoeffRing::Modular(modulus.clone()),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Coefficient::Int(v) => v.is_zero(),
            Coefficient::Rat(v) => v.is_zero(),
            Coefficient::Mod { value, .. } => value.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Coefficient::Int(v) => v.is_one(),
            Coefficient::Rat(v) => v.is_one(),
            Coefficient::Mod { value, .. } => value.is_one(),
        }
    }

    /// Representative as a rational (residues map to their value in `[0, m)`).
    pub fn to_rational(&self) -> BigRational {
        match self {
            Coefficient::Int(v) => BigRational::from_integer(v.clone()),
            Coefficient::Rat(v) => v.clone(),
            Coefficient::Mod { value, .. } => BigRational::from_integer(value.clone()),
        }
    }

    pub fn to_integer(&self) -> Option<BigInt> {
        match self {
            Coefficient::Int(v) => Some(v.clone()),
            Coefficient::Rat(v) if v.is_integer() => Some(v.to_integer()),
            Coefficient::Rat(_) => None,
            Coefficient::Mod { value, .. } => Some(value.clone()),
        }
    }

    pub fn inverse(&self) -> Option<Coefficient> {
        match self {
            Coefficient::Int(v) if v.abs().is_one() => Some(Coefficient::Int(v.clone())),
            Coefficient::Int(_) => None,
            Coefficient::Rat(v) if v.is_zero() => None,
            Coefficient::Rat(v) => Some(Coefficient::Rat(v.recip())),
            Coefficient::Mod { value, modulus } => {
                let e = value.extended_gcd(modulus);
                e.gcd.is_one().then(|| Coefficient::Mod {
                    value: e.x.mod_floor(modulus),
                    modulus: modulus.clone(),
                })
            }
        }
    }

    fn zip(&self, rhs: &Coefficient, op: &str) -> ! {
        panic!("coefficient ring mismatch in {}: {} vs {}", op, self.ring(), rhs.ring())
    }
}

impl Add for &Coefficient {
    type Output = Coefficient;

    fn add(self, rhs: &Coefficient) -> Coefficient {
        match (self, rhs) {
            (Coefficient::Int(a), Coefficient::Int(b)) => Coefficient::Int(a + b),
            (Coefficient::Rat(a), Coefficient::Rat(b)) => Coefficient::Rat(a + b),
            (
                Coefficient::Mod { value: a, modulus },
                Coefficient::Mod { value: b, modulus: m2 },
            ) if modulus == m2 => Coefficient::Mod {
                value: (a + b).mod_floor(modulus),
                modulus: modulus.clone(),
            },
            _ => self.zip(rhs, "add"),
        }
    }
}

impl Sub for &Coefficient {
    type Output = Coefficient;

    fn sub(self, rhs: &Coefficient) -> Coefficient {
        self + &(-rhs)
    }
}

impl Mul for &Coefficient {
    type Output = Coefficient;

    fn mul(self, rhs: &Coefficient) -> Coefficient {
        match (self, rhs) {
            (Coefficient::Int(a), Coefficient::Int(b)) => Coefficient::Int(a * b),
            (Coefficient::Rat(a), Coefficient::Rat(b)) => Coefficient::Rat(a * b),
            (
                Coefficient::Mod { value: a, modulus },
                Coefficient::Mod { value: b, modulus: m2 },
            ) if modulus == m2 => Coefficient::Mod {
                value: (a * b).mod_floor(modulus),
                modulus: modulus.clone(),
            },
            _ => self.zip(rhs, "mul"),
        }
    }
}

impl Neg for &Coefficient {
    type Output = Coefficient;

    fn neg(self) -> Coefficient {
        match self {
            Coefficient::Int(a) => Coefficient::Int(-a),
            Coefficient::Rat(a) => Coefficient::Rat(-a),
            Coefficient::Mod { value, modulus } => Coefficient::Mod {
                value: (-value).mod_floor(modulus),
                modulus: modulus.clone(),
            },
        }
    }
}

impl fmt::Display for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coefficient::Int(v) => write!(f, "{}", v),
            Coefficient::Rat(v) => write!(f, "{}", v),
            Coefficient::Mod { value, .. } => write!(f, "{}", value),
        }
    }
}
