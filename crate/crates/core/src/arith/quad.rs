use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::Rational;

/// `rat + coeff·√disc` in the formal ring Q[t]/(t² − disc).
///
/// `√disc` is never evaluated numerically; `disc` may be negative, zero, or a
/// perfect square. Binary operations require both operands to carry the same
/// `disc` and panic otherwise.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuadNum {
    pub rat: Rational,
    pub coeff: Rational,
    pub disc: Rational,
}

impl QuadNum {
    pub fn new(rat: Rational, coeff: Rational, disc: Rational) -> Self {
        QuadNum { rat, coeff, disc }
    }

    pub fn from_rational(rat: Rational, disc: &Rational) -> Self {
        QuadNum::new(rat, Rational::zero(), disc.clone())
    }

    pub fn one(disc: &Rational) -> Self {
        QuadNum::from_rational(Rational::one(), disc)
    }

    /// The formal generator `√disc`.
    pub fn sqrt_disc(disc: &Rational) -> Self {
        QuadNum::new(Rational::zero(), Rational::one(), disc.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.rat.is_zero() && self.coeff.is_zero()
    }

    /// `Some(rat)` when the `√disc` component vanishes.
    pub fn as_rational(&self) -> Option<&Rational> {
        self.coeff.is_zero().then_some(&self.rat)
    }

    pub fn conj(&self) -> QuadNum {
        QuadNum::new(self.rat.clone(), -&self.coeff, self.disc.clone())
    }

    /// `u·conj(u) = rat² − coeff²·disc`.
    pub fn norm(&self) -> Rational {
        &self.rat * &self.rat - &(&self.coeff * &self.coeff) * &self.disc
    }

    pub fn scale(&self, s: &Rational) -> QuadNum {
        QuadNum::new(s * &self.rat, s * &self.coeff, self.disc.clone())
    }

    /// Division via the conjugate; `None` when the divisor has zero norm
    /// (zero, or a zero divisor when `disc` is a perfect square).
    pub fn checked_div(&self, rhs: &QuadNum) -> Option<QuadNum> {
        let n = rhs.norm().recip()?;
        Some((self * &rhs.conj()).scale(&n))
    }

    /// `self^k` by binary exponentiation.
    pub fn pow(&self, mut k: u64) -> QuadNum {
        let mut acc = QuadNum::one(&self.disc);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    fn check_disc(&self, rhs: &QuadNum) {
        assert!(
            self.disc == rhs.disc,
            "QuadNum operands have different discriminants ({} vs {})",
            self.disc,
            rhs.disc
        );
    }
}

impl<'a> Add<&'a QuadNum> for &'a QuadNum {
    type Output = QuadNum;
    fn add(self, rhs: &'a QuadNum) -> QuadNum {
        self.check_disc(rhs);
        QuadNum::new(&self.rat + &rhs.rat, &self.coeff + &rhs.coeff, self.disc.clone())
    }
}

impl<'a> Sub<&'a QuadNum> for &'a QuadNum {
    type Output = QuadNum;
    fn sub(self, rhs: &'a QuadNum) -> QuadNum {
        self.check_disc(rhs);
        QuadNum::new(&self.rat - &rhs.rat, &self.coeff - &rhs.coeff, self.disc.clone())
    }
}

impl<'a> Mul<&'a QuadNum> for &'a QuadNum {
    type Output = QuadNum;
    fn mul(self, rhs: &'a QuadNum) -> QuadNum {
        self.check_disc(rhs);
        let rat = &self.rat * &rhs.rat + &(&self.coeff * &rhs.coeff) * &self.disc;
        let coeff = &self.rat * &rhs.coeff + &self.coeff * &rhs.rat;
        QuadNum::new(rat, coeff, self.disc.clone())
    }
}

impl Neg for &QuadNum {
    type Output = QuadNum;
    fn neg(self) -> QuadNum {
        QuadNum::new(-&self.rat, -&self.coeff, self.disc.clone())
    }
}

impl fmt::Display for QuadNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}·√{}", self.rat, self.coeff, self.disc)
    }
}

impl fmt::Debug for QuadNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
