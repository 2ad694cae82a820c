//! The matrix sequence `Jₙ` and four independent ways to evaluate it.

use std::fmt;
use std::str::FromStr;

use crate::arith::{parity, pow_parity, Mat2, Parity, QuadNum, Rational};
use crate::error::{Error, Result};
use crate::scalar::{scalar_term, scalar_term_fast, BiParams, SeqKind};

/// `J₁ = [[b, 2b/a], [1, 0]]`.
pub fn j1(params: &BiParams) -> Mat2 {
    Mat2::new(
        params.b().clone(),
        &Rational::from(2) * &params.b_over_a(),
        Rational::one(),
        Rational::zero(),
    )
}

/// Multiplier of `Jₙ₋₁`: `a` for even `n`, `b` for odd `n`.
fn multiplier(params: &BiParams, n: u64) -> &Rational {
    match parity(n) {
        Parity::Even => params.a(),
        Parity::Odd => params.b(),
    }
}

/// `J₀ … J_{len−1}` by the defining recurrence.
pub fn recurrence_terms(params: &BiParams, len: usize) -> Vec<Mat2> {
    let mut out = Vec::with_capacity(len);
    out.extend([Mat2::identity(), j1(params)].into_iter().take(len));
    let two = Rational::from(2);
    while out.len() < len {
        let n = out.len();
        let next = &out[n - 1].scale(multiplier(params, n as u64)) + &out[n - 2].scale(&two);
        out.push(next);
    }
    out
}

/// `Jₙ` by the defining recurrence, O(n) matrix steps.
pub fn term_recurrence(params: &BiParams, n: u64) -> Mat2 {
    let two = Rational::from(2);
    let mut prev = Mat2::identity();
    if n == 0 {
        return prev;
    }
    let mut cur = j1(params);
    for m in 2..=n {
        let next = &cur.scale(multiplier(params, m)) + &prev.scale(&two);
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// Places `ĵₙ₋₁, ĵₙ, ĵₙ₊₁` into
/// `[[(b/a)^ε ĵₙ₊₁, 2(b/a) ĵₙ], [ĵₙ, 2(b/a)^ε ĵₙ₋₁]]`.
fn assemble(params: &BiParams, n: u64, prev: Rational, cur: Rational, next: Rational) -> Mat2 {
    let ratio = params.b_over_a();
    let r_eps = pow_parity(&ratio, parity(n));
    let two = Rational::from(2);
    Mat2::new(
        &r_eps * &next,
        &(&two * &ratio) * &cur,
        cur,
        &(&two * &r_eps) * &prev,
    )
}

/// `Jₙ` assembled from the scalar Jacobsthal terms.
pub fn term_closed(params: &BiParams, n: u64) -> Mat2 {
    let j = |i: i64| scalar_term(SeqKind::BpJacobsthal, params, i).expect("index >= -1");
    let n_i = n as i64;
    assemble(params, n, j(n_i - 1), j(n_i), j(n_i + 1))
}

/// `Jₙ` from logarithmic-time scalar terms and the closed-form assembly.
pub fn term_fast(params: &BiParams, n: u64) -> Mat2 {
    let j = |i: u64| scalar_term_fast(SeqKind::BpJacobsthal, params, i);
    let prev = if n == 0 { Rational::new(1, 2) } else { j(n - 1) };
    assemble(params, n, prev, j(n), j(n + 1))
}

/// `det Jₙ = 2ⁿ·(−b/a)^ε(n)`.
pub fn det_closed(params: &BiParams, n: u64) -> Rational {
    let neg_ratio = -params.b_over_a();
    Rational::from(2).pow(n) * pow_parity(&neg_ratio, parity(n))
}

/// The characteristic roots `α, β = (ab ± √D)/2` of `x² − ab·x − 2ab`.
pub fn roots(params: &BiParams) -> (QuadNum, QuadNum) {
    let half = Rational::new(1, 2);
    let alpha = QuadNum::new(params.ab() * &half, half.clone(), params.disc().clone());
    let beta = alpha.conj();
    (alpha, beta)
}

/// `(α^m − β^m)/(α − β)` as a rational. Since `α − β = √D`, this is the
/// `√D`-coefficient of `α^m − β^m`.
pub fn root_power_quotient(alpha: &QuadNum, beta: &QuadNum, m: u64) -> Rational {
    let diff = &alpha.pow(m) - &beta.pow(m);
    debug_assert!(diff.rat.is_zero(), "α^m − β^m has a rational part");
    diff.coeff
}

/// Coefficient matrices of the Binet form
/// `Jₙ = A(αⁿ − βⁿ) + B(α^{2⌊n/2⌋+2} − β^{2⌊n/2⌋+2})`.
///
/// `A` and `B` both carry the factor `1/(α − β)`. It is kept out of the
/// stored matrices so they stay rational: `a_rational = A·(α − β)` and
/// `b_rational = B·(α − β)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinetCoeffs {
    pub n: u64,
    /// `J₁ − bJ₀` for odd `n`, `aJ₁ − 2J₀ − abJ₀` for even `n`.
    pub a_numerator: Mat2,
    /// `b^ε(n)·J₀`.
    pub b_numerator: Mat2,
    /// `a_numerator / (ab)^⌊n/2⌋`
    pub a_rational: Mat2,
    /// `b_numerator / (ab)^{⌊n/2⌋+1}`
    pub b_rational: Mat2,
    pub alpha: QuadNum,
    pub beta: QuadNum,
}

pub fn binet_coeffs(params: &BiParams, n: u64) -> Result<BinetCoeffs> {
    if params.is_degenerate() {
        return Err(Error::DegenerateDiscriminant);
    }
    let (alpha, beta) = roots(params);
    let j0 = Mat2::identity();
    let j1 = j1(params);
    let eps = parity(n);
    let a_numerator = match eps {
        Parity::Odd => &j1 - &j0.scale(params.b()),
        Parity::Even => {
            let two_plus_ab = &Rational::from(2) + params.ab();
            &j1.scale(params.a()) - &j0.scale(&two_plus_ab)
        }
    };
    let b_numerator = j0.scale(&pow_parity(params.b(), eps));
    let half = n / 2;
    let inv_ab = params.ab().recip().expect("ab != 0");
    let a_rational = a_numerator.scale(&inv_ab.pow(half));
    let b_rational = b_numerator.scale(&inv_ab.pow(half + 1));
    Ok(BinetCoeffs {
        n,
        a_numerator,
        b_numerator,
        a_rational,
        b_rational,
        alpha,
        beta,
    })
}

/// `Jₙ` by the Binet form, evaluated exactly in Q(√D).
pub fn term_binet(params: &BiParams, n: u64) -> Result<Mat2> {
    let c = binet_coeffs(params, n)?;
    let u_n = root_power_quotient(&c.alpha, &c.beta, n);
    let u_even = root_power_quotient(&c.alpha, &c.beta, 2 * (n / 2) + 2);
    Ok(&c.a_rational.scale(&u_n) + &c.b_rational.scale(&u_even))
}

/// Evaluation routes for `Jₙ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    Recurrence,
    Closed,
    Binet,
    Fast,
}

impl Method {
    pub const ALL: [Method; 4] = [Method::Recurrence, Method::Closed, Method::Binet, Method::Fast];

    pub fn term(self, params: &BiParams, n: u64) -> Result<Mat2> {
        match self {
            Method::Recurrence => Ok(term_recurrence(params, n)),
            Method::Closed => Ok(term_closed(params, n)),
            Method::Binet => term_binet(params, n),
            Method::Fast => Ok(term_fast(params, n)),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Method::Recurrence => "recurrence",
            Method::Closed => "closed",
            Method::Binet => "binet",
            Method::Fast => "fast",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Method::ALL
            .into_iter()
            .find(|m| m.as_str().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| format!("unknown method `{s}`"))
    }
}

/// Evaluates `Jₙ` by every method and returns the common value.
/// The Binet route is skipped when the discriminant is degenerate.
pub fn term_all(params: &BiParams, n: u64) -> Result<Mat2> {
    let reference = term_recurrence(params, n);
    for m in [Method::Closed, Method::Binet, Method::Fast] {
        if m == Method::Binet && params.is_degenerate() {
            continue;
        }
        if m.term(params, n)? != reference {
            return Err(Error::MethodMismatch { n });
        }
    }
    Ok(reference)
}
