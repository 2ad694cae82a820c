//! The ordinary generating function `Σ Jₘ xᵐ = Φ(x) / (1 − (ab+4)x² + 4x⁴)`
//! with `Φ(x) = J₀ + J₁x + [aJ₁ − (ab+2)J₀]x² + [2bJ₀ − 2J₁]x³`.
//!
//! [`series_coeffs`] expands it by formal long division only; it never
//! touches the matrix recurrence, so it can witness against [`crate::matrix`].

use std::fmt;

use crate::arith::{Mat2, Rational};
use crate::matrix::j1;
use crate::scalar::BiParams;

/// Polynomial with rational coefficients, lowest degree first, trailing zeros trimmed.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly(Vec<Rational>);

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Rational::is_zero) {
            coeffs.pop();
        }
        Poly(coeffs)
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| Rational::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.0
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.0.get(i).cloned().unwrap_or_default()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.0.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})x")?,
                _ => write!(f, "({c})x^{i}")?,
            }
        }
        Ok(())
    }
}

/// Polynomial with 2×2 matrix coefficients, trailing zero matrices trimmed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat2Poly(Vec<Mat2>);

impl Mat2Poly {
    pub fn new(mut coeffs: Vec<Mat2>) -> Self {
        while coeffs.last().is_some_and(Mat2::is_zero) {
            coeffs.pop();
        }
        Mat2Poly(coeffs)
    }

    pub fn coeffs(&self) -> &[Mat2] {
        &self.0
    }

    pub fn coeff(&self, i: usize) -> Mat2 {
        self.0.get(i).cloned().unwrap_or_else(Mat2::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    /// The four entry polynomials `[[p11, p12], [p21, p22]]`.
    pub fn entry_polys(&self) -> [[Poly; 2]; 2] {
        let pick = |f: fn(&Mat2) -> &Rational| Poly::new(self.0.iter().map(|m| f(m).clone()).collect());
        [
            [pick(|m| &m.e11), pick(|m| &m.e12)],
            [pick(|m| &m.e21), pick(|m| &m.e22)],
        ]
    }

    /// Product with a scalar polynomial, truncated below degree `len`.
    pub fn mul_scalar_truncated(&self, p: &Poly, len: usize) -> Mat2Poly {
        let mut out = vec![Mat2::zero(); len];
        for (i, m) in self.0.iter().enumerate() {
            for (j, c) in p.coeffs().iter().enumerate() {
                if i + j < len && !c.is_zero() {
                    out[i + j] = &out[i + j] + &m.scale(c);
                }
            }
        }
        Mat2Poly::new(out)
    }
}

/// Matrix numerator over scalar denominator with constant term one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalOgf {
    pub numerator: Mat2Poly,
    pub denominator: Poly,
}

pub fn build_ogf(params: &BiParams) -> RationalOgf {
    let j0 = Mat2::identity();
    let j1 = j1(params);
    let two = Rational::from(2);
    let x2 = &j1.scale(params.a()) - &j0.scale(&(params.ab() + &two));
    let x3 = &j0.scale(&(&two * params.b())) - &j1.scale(&two);
    let numerator = Mat2Poly::new(vec![j0, j1, x2, x3]);
    let denominator = Poly::new(vec![
        Rational::one(),
        Rational::zero(),
        -(params.ab() + &Rational::from(4)),
        Rational::zero(),
        Rational::from(4),
    ]);
    RationalOgf {
        numerator,
        denominator,
    }
}

/// Entrywise numerator polynomials written out directly:
///
/// ```text
/// [[1 + bx − 2x²,        2(b/a)x + 2bx² − 4(b/a)x³],
///  [x + ax² − 2x³,       1 − (ab+2)x² + 2bx³      ]]
/// ```
pub fn component_form(params: &BiParams) -> [[Poly; 2]; 2] {
    let (a, b, ab) = (params.a(), params.b(), params.ab());
    let r = params.b_over_a();
    let z = Rational::zero;
    let int = Rational::from;
    [
        [
            Poly::new(vec![int(1), b.clone(), int(-2)]),
            Poly::new(vec![z(), &int(2) * &r, &int(2) * b, &int(-4) * &r]),
        ],
        [
            Poly::new(vec![z(), int(1), a.clone(), int(-2)]),
            Poly::new(vec![int(1), z(), -(ab + &int(2)), &int(2) * b]),
        ],
    ]
}

/// First `count` power-series coefficients of `numerator / denominator`.
pub fn series_coeffs(ogf: &RationalOgf, count: usize) -> Vec<Mat2> {
    let den = ogf.denominator.coeffs();
    let lead = den
        .first()
        .and_then(Rational::recip)
        .expect("denominator constant term must be nonzero");
    let mut out: Vec<Mat2> = Vec::with_capacity(count);
    for m in 0..count {
        let mut c = ogf.numerator.coeff(m);
        for (i, d) in den.iter().enumerate().skip(1).take(m) {
            if !d.is_zero() {
                c = &c - &out[m - i].scale(d);
            }
        }
        if !lead.is_one() {
            c = c.scale(&lead);
        }
        out.push(c);
    }
    out
}
