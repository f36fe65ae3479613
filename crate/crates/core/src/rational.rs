//! Exact rational arithmetic and memoized big-integer factorials.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::RwLock;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// An always-reduced rational with positive denominator.
///
/// Serialized as the string `"num/den"`, including `"n/1"` for integers.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ExactRational(BigRational);

impl ExactRational {
    pub fn zero() -> Self {
        ExactRational(BigRational::zero())
    }

    pub fn one() -> Self {
        ExactRational(BigRational::one())
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        ExactRational(BigRational::from_integer(n.into()))
    }

    /// `num/den`, reduced. Panics if `den` is zero.
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Self {
        ExactRational(BigRational::new(num.into(), den.into()))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn recip(&self) -> Self {
        ExactRational(self.0.recip())
    }

    pub fn pow(&self, exp: i32) -> Self {
        ExactRational(num_traits::Pow::pow(&self.0, exp))
    }

    pub fn as_ratio(&self) -> &BigRational {
        &self.0
    }

    /// Nearest `f64`; for display and float cross-checks only.
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or_else(|| {
            // numerator/denominator beyond f64 range: scale down first
            let n = self.numer().bits() as i64;
            let d = self.denom().bits() as i64;
            let shift = (n.max(d) - 1000).max(0) as usize;
            let num = (self.numer() >> shift).to_f64().unwrap_or(f64::NAN);
            let den = (self.denom() >> shift).to_f64().unwrap_or(f64::NAN);
            num / den
        })
    }

    /// Decimal expansion with `digits` fractional digits, rounded toward
    /// negative infinity (`round_up == false`) or positive infinity.
    pub fn to_decimal(&self, digits: usize, round_up: bool) -> String {
        let scale = BigInt::from(10u32).pow(digits as u32);
        let scaled = self.numer() * &scale;
        let den = self.denom();
        let (mut q, r) = num_integer::Integer::div_mod_floor(&scaled, den);
        if round_up && !r.is_zero() {
            q += 1;
        }
        let negative = q.is_negative();
        let digits_str = q.abs().to_string();
        let padded = if digits_str.len() <= digits {
            format!("{}{}", "0".repeat(digits + 1 - digits_str.len()), digits_str)
        } else {
            digits_str
        };
        let (int_part, frac_part) = padded.split_at(padded.len() - digits);
        let sign = if negative { "-" } else { "" };
        if digits == 0 {
            format!("{sign}{int_part}")
        } else {
            format!("{sign}{int_part}.{frac_part}")
        }
    }
}

impl fmt::Display for ExactRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl fmt::Debug for ExactRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for ExactRational {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n, d),
            None => (s, "1"),
        };
        let num: BigInt = n.trim().parse().map_err(|e| format!("bad numerator {n:?}: {e}"))?;
        let den: BigInt = d.trim().parse().map_err(|e| format!("bad denominator {d:?}: {e}"))?;
        if den.is_zero() {
            return Err("zero denominator".into());
        }
        Ok(ExactRational::new(num, den))
    }
}

impl Serialize for ExactRational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ExactRational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl From<BigRational> for ExactRational {
    fn from(r: BigRational) -> Self {
        ExactRational(r)
    }
}

impl From<BigInt> for ExactRational {
    fn from(n: BigInt) -> Self {
        ExactRational::from_integer(n)
    }
}

impl From<BigUint> for ExactRational {
    fn from(n: BigUint) -> Self {
        ExactRational::from_integer(BigInt::from(n))
    }
}

impl From<i64> for ExactRational {
    fn from(n: i64) -> Self {
        ExactRational::from_integer(n)
    }
}

impl From<u64> for ExactRational {
    fn from(n: u64) -> Self {
        ExactRational::from_integer(n)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident) => {
        impl $tr for ExactRational {
            type Output = ExactRational;
            fn $method(self, rhs: ExactRational) -> ExactRational {
                ExactRational($tr::$method(self.0, rhs.0))
            }
        }
        impl<'a> $tr<&'a ExactRational> for ExactRational {
            type Output = ExactRational;
            fn $method(self, rhs: &'a ExactRational) -> ExactRational {
                ExactRational($tr::$method(self.0, &rhs.0))
            }
        }
        impl<'a, 'b> $tr<&'b ExactRational> for &'a ExactRational {
            type Output = ExactRational;
            fn $method(self, rhs: &'b ExactRational) -> ExactRational {
                ExactRational($tr::$method(&self.0, &rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl Neg for ExactRational {
    type Output = ExactRational;
    fn neg(self) -> ExactRational {
        ExactRational(-self.0)
    }
}

impl AddAssign for ExactRational {
    fn add_assign(&mut self, rhs: ExactRational) {
        self.0 += rhs.0;
    }
}

impl<'a> AddAssign<&'a ExactRational> for ExactRational {
    fn add_assign(&mut self, rhs: &'a ExactRational) {
        self.0 += &rhs.0;
    }
}

impl Sum for ExactRational {
    fn sum<I: Iterator<Item = ExactRational>>(iter: I) -> Self {
        iter.fold(ExactRational::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a ExactRational> for ExactRational {
    fn sum<I: Iterator<Item = &'a ExactRational>>(iter: I) -> Self {
        iter.fold(ExactRational::zero(), |acc, x| acc + x)
    }
}

static FACTORIALS: RwLock<Vec<BigUint>> = RwLock::new(Vec::new());

/// `n!` as a big integer, memoized process-wide.
pub fn factorial(n: usize) -> BigUint {
    {
        let table = FACTORIALS.read().expect("factorial cache poisoned");
        if let Some(f) = table.get(n) {
            return f.clone();
        }
    }
    let mut table = FACTORIALS.write().expect("factorial cache poisoned");
    if table.is_empty() {
        table.push(BigUint::one());
    }
    while table.len() <= n {
        let k = table.len();
        let next = &table[k - 1] * BigUint::from(k);
        table.push(next);
    }
    table[n].clone()
}

/// Binomial coefficient as a big integer.
pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    factorial(n) / (factorial(k) * factorial(n - k))
}
