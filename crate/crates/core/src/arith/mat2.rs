use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::Rational;

/// Row-major 2×2 matrix over the rationals.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Mat2 {
    pub e11: Rational,
    pub e12: Rational,
    pub e21: Rational,
    pub e22: Rational,
}

impl Mat2 {
    pub fn new(e11: Rational, e12: Rational, e21: Rational, e22: Rational) -> Self {
        Mat2 { e11, e12, e21, e22 }
    }

    pub fn from_ints(e11: i64, e12: i64, e21: i64, e22: i64) -> Self {
        Mat2::new(e11.into(), e12.into(), e21.into(), e22.into())
    }

    pub fn identity() -> Self {
        Mat2::from_ints(1, 0, 0, 1)
    }

    pub fn zero() -> Self {
        Mat2::from_ints(0, 0, 0, 0)
    }

    /// `s·I`.
    pub fn scalar(s: Rational) -> Self {
        Mat2::new(s.clone(), Rational::zero(), Rational::zero(), s)
    }

    pub fn entries(&self) -> [&Rational; 4] {
        [&self.e11, &self.e12, &self.e21, &self.e22]
    }

    pub fn is_zero(&self) -> bool {
        self.entries().iter().all(|e| e.is_zero())
    }

    pub fn det(&self) -> Rational {
        &self.e11 * &self.e22 - &self.e12 * &self.e21
    }

    pub fn trace(&self) -> Rational {
        &self.e11 + &self.e22
    }

    pub fn scale(&self, s: &Rational) -> Mat2 {
        Mat2::new(s * &self.e11, s * &self.e12, s * &self.e21, s * &self.e22)
    }

    fn map2(&self, rhs: &Mat2, f: impl Fn(&Rational, &Rational) -> Rational) -> Mat2 {
        Mat2::new(
            f(&self.e11, &rhs.e11),
            f(&self.e12, &rhs.e12),
            f(&self.e21, &rhs.e21),
            f(&self.e22, &rhs.e22),
        )
    }

    /// Σ cᵢ·Mᵢ.
    pub fn linear_combination<'a>(terms: impl IntoIterator<Item = (&'a Rational, &'a Mat2)>) -> Mat2 {
        terms
            .into_iter()
            .fold(Mat2::zero(), |acc, (c, m)| &acc + &m.scale(c))
    }

    /// `self^k` by repeated squaring.
    pub fn pow(&self, mut k: u64) -> Mat2 {
        let mut acc = Mat2::identity();
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

    /// Largest bit length among the entries' numerators and denominators.
    pub fn max_bits(&self) -> u64 {
        self.entries().iter().map(|e| e.bits()).max().unwrap_or(0)
    }
}

impl<'a> Add<&'a Mat2> for &'a Mat2 {
    type Output = Mat2;
    fn add(self, rhs: &'a Mat2) -> Mat2 {
        self.map2(rhs, |x, y| x + y)
    }
}

impl<'a> Sub<&'a Mat2> for &'a Mat2 {
    type Output = Mat2;
    fn sub(self, rhs: &'a Mat2) -> Mat2 {
        self.map2(rhs, |x, y| x - y)
    }
}

impl<'a> Mul<&'a Mat2> for &'a Mat2 {
    type Output = Mat2;
    fn mul(self, rhs: &'a Mat2) -> Mat2 {
        Mat2::new(
            &self.e11 * &rhs.e11 + &self.e12 * &rhs.e21,
            &self.e11 * &rhs.e12 + &self.e12 * &rhs.e22,
            &self.e21 * &rhs.e11 + &self.e22 * &rhs.e21,
            &self.e21 * &rhs.e12 + &self.e22 * &rhs.e22,
        )
    }
}

impl Neg for &Mat2 {
    type Output = Mat2;
    fn neg(self) -> Mat2 {
        Mat2::new(-&self.e11, -&self.e12, -&self.e21, -&self.e22)
    }
}

impl Add for Mat2 {
    type Output = Mat2;
    fn add(self, rhs: Mat2) -> Mat2 {
        &self + &rhs
    }
}

impl Sub for Mat2 {
    type Output = Mat2;
    fn sub(self, rhs: Mat2) -> Mat2 {
        &self - &rhs
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, rhs: Mat2) -> Mat2 {
        &self * &rhs
    }
}

/// `[[e11,e12],[e21,e22]]`
impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[[{},{}],[{},{}]]",
            self.e11, self.e12, self.e21, self.e22
        )
    }
}

impl fmt::Debug for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
