//! Arbitrary-precision rationals kept in lowest terms.
//!
//! Every constructor and operator returns a canonical value: the denominator
//! is positive, numerator and denominator are coprime, and zero is `0/1`.
//! Equality and hashing are therefore structural.

use std::cmp::Ordering;
use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Rational {
    num: BigInt,
    den: BigInt,
}

/// gcd(n, d) for d > 0, with one Euclidean step first so that a small
/// denominator against a huge numerator stays cheap.
fn gcd_with_den(n: &BigInt, d: &BigInt) -> BigInt {
    if d.is_one() {
        return BigInt::one();
    }
    let r = n.mod_floor(d);
    if r.is_zero() {
        d.clone()
    } else {
        d.gcd(&r)
    }
}

impl Rational {
    /// Builds `num/den` and reduces it. Panics if `den` is zero.
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Self {
        let num = num.into();
        let den = den.into();
        assert!(!den.is_zero(), "rational with zero denominator");
        Self::reduced(num, den)
    }

    pub fn checked_new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Option<Self> {
        let den = den.into();
        if den.is_zero() {
            None
        } else {
            Some(Self::reduced(num.into(), den))
        }
    }

    fn reduced(mut num: BigInt, mut den: BigInt) -> Self {
        if den.is_negative() {
            num = -num;
            den = -den;
        }
        if num.is_zero() {
            return Self::zero();
        }
        let g = gcd_with_den(&num, &den);
        if !g.is_one() {
            num /= &g;
            den /= &g;
        }
        Rational { num, den }
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Rational {
            num: n.into(),
            den: BigInt::one(),
        }
    }

    pub fn zero() -> Self {
        Self::from_integer(0)
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    pub fn numer(&self) -> &BigInt {
        &self.num
    }

    pub fn denom(&self) -> &BigInt {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_integer(&self) -> bool {
        self.den.is_one()
    }

    pub fn is_negative(&self) -> bool {
        self.num.is_negative()
    }

    pub fn abs(&self) -> Self {
        Rational {
            num: self.num.abs(),
            den: self.den.clone(),
        }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn recip(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let (num, den) = if self.num.is_negative() {
            (-self.den.clone(), -self.num.clone())
        } else {
            (self.den.clone(), self.num.clone())
        };
        Some(Rational { num, den })
    }

    pub fn checked_div(&self, rhs: &Rational) -> Option<Self> {
        rhs.recip().map(|r| self * &r)
    }

    /// Non-negative integer power.
    pub fn pow(&self, exp: u64) -> Self {
        // num and den stay coprime under powers, no reduction needed.
        let e = u32::try_from(exp).expect("exponent fits in u32");
        Rational {
            num: num_traits::pow::Pow::pow(&self.num, e),
            den: num_traits::pow::Pow::pow(&self.den, e),
        }
    }

    /// Power with a signed exponent; `None` when inverting zero.
    pub fn powi(&self, exp: i64) -> Option<Self> {
        if exp >= 0 {
            Some(self.pow(exp as u64))
        } else {
            self.recip().map(|r| r.pow(exp.unsigned_abs()))
        }
    }

    /// Bit length of the larger of numerator and denominator.
    pub fn bits(&self) -> u64 {
        self.num.bits().max(self.den.bits())
    }

    pub fn to_i64(&self) -> Option<i64> {
        if self.is_integer() {
            i64::try_from(&self.num).ok()
        } else {
            None
        }
    }
}

impl Default for Rational {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Self::from_integer(n)
    }
}

impl From<i32> for Rational {
    fn from(n: i32) -> Self {
        Self::from_integer(n)
    }
}

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Self {
        Self::from_integer(n)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = Error;

    /// Accepts `p` or `p/q` with optional sign on `p`; surrounding whitespace is ignored.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || Error::ParseRational(s.to_string());
        let t = s.trim();
        let parse_int = |x: &str| -> Result<BigInt, Error> {
            let x = x.trim();
            let digits = x.strip_prefix(['+', '-']).unwrap_or(x);
            if digits.is_empty() || !digits.bytes().all(|c| c.is_ascii_digit()) {
                return Err(bad());
            }
            x.parse::<BigInt>().map_err(|_| bad())
        };
        match t.split_once('/') {
            None => Ok(Self::from_integer(parse_int(t)?)),
            Some((p, q)) => {
                let num = parse_int(p)?;
                let den = parse_int(q)?;
                if q.trim().starts_with(['+', '-']) {
                    return Err(bad());
                }
                Self::checked_new(num, den).ok_or_else(bad)
            }
        }
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        if self.den == other.den {
            return self.num.cmp(&other.num);
        }
        (&self.num * &other.den).cmp(&(&other.num * &self.den))
    }
}

impl<'a> Add<&'a Rational> for &'a Rational {
    type Output = Rational;
    fn add(self, rhs: &'a Rational) -> Rational {
        if self.den.is_one() && rhs.den.is_one() {
            return Rational::from_integer(&self.num + &rhs.num);
        }
        if self.den == rhs.den {
            return Rational::reduced(&self.num + &rhs.num, self.den.clone());
        }
        Rational::reduced(
            &self.num * &rhs.den + &rhs.num * &self.den,
            &self.den * &rhs.den,
        )
    }
}

impl<'a> Sub<&'a Rational> for &'a Rational {
    type Output = Rational;
    fn sub(self, rhs: &'a Rational) -> Rational {
        if self.den.is_one() && rhs.den.is_one() {
            return Rational::from_integer(&self.num - &rhs.num);
        }
        if self.den == rhs.den {
            return Rational::reduced(&self.num - &rhs.num, self.den.clone());
        }
        Rational::reduced(
            &self.num * &rhs.den - &rhs.num * &self.den,
            &self.den * &rhs.den,
        )
    }
}

impl<'a> Mul<&'a Rational> for &'a Rational {
    type Output = Rational;
    fn mul(self, rhs: &'a Rational) -> Rational {
        if self.is_zero() || rhs.is_zero() {
            return Rational::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return Rational::from_integer(&self.num * &rhs.num);
        }
        // Cross-cancel before multiplying: both inputs are already coprime.
        let g1 = gcd_with_den(&self.num, &rhs.den);
        let g2 = gcd_with_den(&rhs.num, &self.den);
        let num = (&self.num / &g1) * (&rhs.num / &g2);
        let den = (&self.den / &g2) * (&rhs.den / &g1);
        Rational { num, den }
    }
}

impl<'a> Div<&'a Rational> for &'a Rational {
    type Output = Rational;
    /// Panics on division by zero; use [`Rational::checked_div`] otherwise.
    fn div(self, rhs: &'a Rational) -> Rational {
        self.checked_div(rhs).expect("division by zero rational")
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational {
            num: -self.num,
            den: self.den,
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $method:ident),*) => {$(
        impl $tr<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                (&self).$method(rhs)
            }
        }
        impl<'a> $tr<Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                self.$method(&rhs)
            }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        *self = &*self + rhs;
    }
}

impl AddAssign for Rational {
    fn add_assign(&mut self, rhs: Rational) {
        *self = &*self + &rhs;
    }
}

impl SubAssign<&Rational> for Rational {
    fn sub_assign(&mut self, rhs: &Rational) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&Rational> for Rational {
    fn mul_assign(&mut self, rhs: &Rational) {
        *self = &*self * rhs;
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Rational> for Rational {
    fn sum<I: Iterator<Item = &'a Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |acc, x| &acc + x)
    }
}

impl Product for Rational {
    fn product<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::one(), |acc, x| acc * x)
    }
}

impl Rational {
    pub fn signum(&self) -> i32 {
        match self.num.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn canonical(x: &Rational) -> bool {
        x.denom().is_positive() && x.numer().gcd(x.denom()).is_one()
    }

    #[test]
    fn add_halves_and_thirds() {
        assert_eq!(r(1, 2) + r(1, 3), r(5, 6));
    }

    #[test]
    fn zero_is_zero_over_one() {
        let z = r(0, -7);
        assert!(z.denom().is_one());
        assert_eq!(z, Rational::zero());
        assert_eq!(r(3, 4) - r(3, 4), Rational::zero());
        assert!((r(3, 4) - r(3, 4)).denom().is_one());
    }

    #[test]
    fn negative_denominator_moves_sign() {
        let x = r(3, -6);
        assert_eq!(x.numer(), &BigInt::from(-1));
        assert_eq!(x.denom(), &BigInt::from(2));
    }

    #[test]
    fn parse_and_display() {
        assert_eq!("1/2".parse::<Rational>().unwrap(), r(1, 2));
        assert_eq!("-4/6".parse::<Rational>().unwrap(), r(-2, 3));
        assert_eq!(" 17 ".parse::<Rational>().unwrap(), r(17, 1));
        assert_eq!(r(-2, 3).to_string(), "-2/3");
        assert_eq!(r(6, 3).to_string(), "2");
        for bad in ["", "1/0", "a", "1/", "/2", "1.5", "1/-2", "--1", "1/2/3"] {
            assert!(bad.parse::<Rational>().is_err(), "{bad:?} parsed");
        }
    }

    #[test]
    fn ordering_and_pow() {
        assert!(r(1, 3) < r(1, 2));
        assert!(r(-1, 2) < r(1, 3));
        assert_eq!(r(-2, 3).pow(3), r(-8, 27));
        assert_eq!(r(2, 1).powi(-2), Some(r(1, 4)));
        assert_eq!(Rational::zero().powi(-1), None);
        assert_eq!(r(5, 7).pow(0), Rational::one());
    }

    #[test]
    fn recip_keeps_denominator_positive() {
        assert_eq!(r(-3, 5).recip().unwrap(), r(-5, 3));
        assert!(r(-3, 5).recip().unwrap().denom().is_positive());
        assert!(Rational::zero().recip().is_none());
    }

    fn small() -> impl Strategy<Value = Rational> {
        (-50i64..50, 1i64..30).prop_map(|(n, d)| Rational::new(n, d))
    }

    proptest! {
        #[test]
        fn operations_stay_canonical(x in small(), y in small()) {
            prop_assert!(canonical(&(&x + &y)));
            prop_assert!(canonical(&(&x - &y)));
            prop_assert!(canonical(&(&x * &y)));
            if !y.is_zero() {
                prop_assert!(canonical(&(&x / &y)));
                prop_assert_eq!(&(&x / &y) * &y, x.clone());
            }
        }

        #[test]
        fn display_round_trips(x in small()) {
            prop_assert_eq!(x.to_string().parse::<Rational>().unwrap(), x);
        }

        #[test]
        fn field_laws(x in small(), y in small(), z in small()) {
            prop_assert_eq!(&(&x + &y) * &z, &(&x * &z) + &(&y * &z));
            prop_assert_eq!(&x - &x, Rational::zero());
        }
    }
}
