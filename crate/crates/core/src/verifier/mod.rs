//! Pointwise-exact checks of the identities satisfied by `Jₙ` and `ĵₙ`.
//!
//! Every check compares a closed form against an independently computed
//! value (direct recurrence, brute-force summation, or a different method)
//! and reports the first index where they differ together with the exact
//! residual `lhs − rhs`.

mod grid;
mod report;

pub use grid::{run_grid, GridSpec};
pub use report::{check_range, IdentityId, IdentityReport, Residual, Status, SubCheck};

use crate::arith::{parity, pow_parity, Mat2, Parity, QuadNum, Rational};
use crate::genfunc::{build_ogf, component_form, series_coeffs, Mat2Poly};
use crate::matrix::{det_closed, recurrence_terms, roots, term_binet, term_closed, term_fast};
use crate::scalar::{scalar_prefix, BiParams, SeqKind};

pub use crate::scalar::verify_lucas_relations;

/// `(b/a)^ε ĵₙ₋₁ĵₙ₊₁ − (b/a)^{1−ε} ĵₙ² = (−1)^ε 2^{n−1}` for `1 ≤ n ≤ n_max`.
pub fn verify_cassini(params: &BiParams, n_max: u64) -> IdentityReport {
    let j = scalar_prefix(SeqKind::BpJacobsthal, params, n_max as usize + 2);
    let ratio = params.b_over_a();
    check_range(IdentityId::Cassini, params, None, 1, n_max as i64, |n| {
        let i = n as usize;
        let eps = parity(n as u64);
        let lhs = &pow_parity(&ratio, eps) * &(&j[i - 1] * &j[i + 1])
            - &pow_parity(&ratio, eps.flip()) * &(&j[i] * &j[i]);
        let mut rhs = Rational::from(2).pow(n as u64 - 1);
        if eps.is_odd() {
            rhs = -rhs;
        }
        Residual::Scalar(lhs - rhs)
    })
}

/// `det Jₙ` from the recurrence against `2ⁿ(−b/a)^ε(n)` for `0 ≤ n ≤ n_max`.
pub fn verify_det(params: &BiParams, n_max: u64) -> IdentityReport {
    let js = recurrence_terms(params, n_max as usize + 1);
    check_range(IdentityId::Det, params, None, 0, n_max as i64, |n| {
        Residual::Scalar(js[n as usize].det() - det_closed(params, n as u64))
    })
}

/// `J₂ₘ = (ab+4)J₂ₘ₋₂ − 4J₂ₘ₋₄` and `J₂ₘ₊₁ = (ab+4)J₂ₘ₋₁ − 4J₂ₘ₋₃` for
/// `2 ≤ m ≤ m_max`.
pub fn verify_doubling(params: &BiParams, m_max: u64) -> IdentityReport {
    let m_max = m_max.max(2);
    let js = recurrence_terms(params, 2 * m_max as usize + 2);
    let p = params.ab() + &Rational::from(4);
    let four = Rational::from(4);
    let rhs = |k: usize| &js[k - 2].scale(&p) - &js[k - 4].scale(&four);
    check_range(IdentityId::Doubling, params, None, 2, m_max as i64, |m| {
        let k = 2 * m as usize;
        let even = &js[k] - &rhs(k);
        if !even.is_zero() {
            return Residual::Matrix(even);
        }
        Residual::Matrix(&js[k + 1] - &rhs(k + 1))
    })
}

/// `Σ_{k<n} Jₖ x⁻ᵏ` term by term. `x = None` means the unweighted sum.
pub fn direct_sum(params: &BiParams, x: Option<&Rational>, n: u64) -> Mat2 {
    weighted_prefix_sums(&recurrence_terms(params, n as usize), x)
        .pop()
        .unwrap_or_else(Mat2::zero)
}

/// Partial sums `S₁ … S_len` with `Sₙ = Σ_{k<n} Jₖ x⁻ᵏ`.
fn weighted_prefix_sums(js: &[Mat2], x: Option<&Rational>) -> Vec<Mat2> {
    let inv = x.map(|x| x.recip().expect("x != 0"));
    let mut weight = Rational::one();
    let mut acc = Mat2::zero();
    let mut out = Vec::with_capacity(js.len());
    for j in js {
        acc = &acc + &j.scale(&weight);
        if let Some(inv) = &inv {
            weight = &weight * inv;
        }
        out.push(acc.clone());
    }
    out
}

/// `[Jₙ(1 − a^ε b^{1−ε}) + 2Jₙ₋₁(1 − a^{1−ε} b^ε) + J₁(a−1) + J₀(2b−ab−1)] / (1 − ab)`,
/// given `Jₙ` and `Jₙ₋₁`. `None` when `ab = 1`.
pub fn sum_t5_closed(params: &BiParams, n: u64, j_n: &Mat2, j_prev: &Mat2) -> Option<Mat2> {
    let one = Rational::one();
    let denom = (&one - params.ab()).recip()?;
    let (a, b) = (params.a(), params.b());
    let eps = parity(n);
    let mixed = |e: Parity| &pow_parity(a, e) * &pow_parity(b, e.flip());
    let c_n = &one - &mixed(eps);
    let c_prev = &Rational::from(2) * &(&one - &mixed(eps.flip()));
    let c1 = a - &one;
    let c0 = &(&Rational::from(2) * b) - &(params.ab() + &one);
    let j1 = crate::matrix::j1(params);
    let num = Mat2::linear_combination([
        (&c_n, j_n),
        (&c_prev, j_prev),
        (&c1, &j1),
        (&c0, &Mat2::identity()),
    ]);
    Some(num.scale(&denom))
}

/// Direct summation against the unweighted closed form for `1 ≤ n ≤ n_max`.
pub fn verify_sum_t5(params: &BiParams, n_max: u64) -> IdentityReport {
    if params.ab().is_one() {
        return IdentityReport::skipped(
            IdentityId::SumT5,
            params,
            None,
            "denominator 1-ab vanishes",
        );
    }
    let js = recurrence_terms(params, n_max as usize + 1);
    let sums = weighted_prefix_sums(&js, None);
    check_range(IdentityId::SumT5, params, None, 1, n_max as i64, |n| {
        let n = n as usize;
        let closed = sum_t5_closed(params, n as u64, &js[n], &js[n - 1]).expect("ab != 1");
        Residual::Matrix(&closed - &sums[n - 1])
    })
}

/// `x² − (ab+4)x + 4`, the denominator of the printed weighted-sum formula.
pub fn t6_printed_denominator(params: &BiParams, x: &Rational) -> Rational {
    x * x - &(params.ab() + &Rational::from(4)) * x + Rational::from(4)
}

/// The weighted-sum formula exactly as printed, given `Jₙ` and `Jₙ₋₁`:
///
/// ```text
/// [Jₙ(2 − x − a^ε b^{1−ε} x) + 2Jₙ₋₁(2 − a^{1−ε} b^ε − x)
///   + x²(J₁ − bJ₀) + x(−2J₁ + 3bJ₀ + aJ₁ − J₀ − abJ₀)] / (x² − (ab+4)x + 4)
/// ```
///
/// Only correct at `x = 1`. `None` when `x = 0` or the denominator vanishes.
pub fn sum_t6_printed(
    params: &BiParams,
    x: &Rational,
    n: u64,
    j_n: &Mat2,
    j_prev: &Mat2,
) -> Option<Mat2> {
    if x.is_zero() {
        return None;
    }
    let denom = t6_printed_denominator(params, x).recip()?;
    let (a, b) = (params.a(), params.b());
    let int = Rational::from;
    let eps = parity(n);
    let mixed = |e: Parity| &pow_parity(a, e) * &pow_parity(b, e.flip());
    let c_n = &(&int(2) - x) - &(&mixed(eps) * x);
    let c_prev = &int(2) * &(&(&int(2) - &mixed(eps.flip())) - x);
    let j0 = Mat2::identity();
    let j1 = crate::matrix::j1(params);
    let quad = &j1 - &j0.scale(b);
    // −2J₁ + 3bJ₀ + aJ₁ − J₀ − abJ₀
    let lin = &j1.scale(&(a - &int(2))) + &j0.scale(&(&(&int(3) * b) - &(params.ab() + &int(1))));
    let x2 = x * x;
    let num = Mat2::linear_combination([(&c_n, j_n), (&c_prev, j_prev), (&x2, &quad), (x, &lin)]);
    Some(num.scale(&denom))
}

/// A closed form for `Σ_{k<n} Jₖ yᵏ` (`y = 1/x`) read off the generating
/// function: with `Q(y) = 1 − (ab+4)y² + 4y⁴` and numerator `Φ`,
///
/// ```text
/// Q(y)·S = Φ(y) − yⁿ[Jₙ + Jₙ₊₁y + (Jₙ₊₂ − (ab+4)Jₙ)y² + (Jₙ₊₃ − (ab+4)Jₙ₊₁)y³]
/// ```
///
/// `following` holds `Jₙ … Jₙ₊₃`. `None` when `x = 0` or `Q(1/x) = 0`.
/// Validated against [`direct_sum`] in the tests; at `x = 1` it agrees with
/// the unweighted closed form.
pub fn sum_weighted_corrected(
    params: &BiParams,
    x: &Rational,
    n: u64,
    following: &[Mat2; 4],
) -> Option<Mat2> {
    let y = x.recip()?;
    let ogf = build_ogf(params);
    let q: Rational = ogf
        .denominator
        .coeffs()
        .iter()
        .enumerate()
        .map(|(i, c)| c * &y.pow(i as u64))
        .sum();
    let q_inv = q.recip()?;
    let phi = ogf
        .numerator
        .coeffs()
        .iter()
        .enumerate()
        .fold(Mat2::zero(), |acc, (i, m)| &acc + &m.scale(&y.pow(i as u64)));
    let p = params.ab() + &Rational::from(4);
    let [j0, j1, j2, j3] = following;
    let tail = [
        j0.clone(),
        j1.clone(),
        j2 - &j0.scale(&p),
        j3 - &j1.scale(&p),
    ];
    let tail = tail
        .iter()
        .enumerate()
        .fold(Mat2::zero(), |acc, (i, m)| &acc + &m.scale(&y.pow(i as u64)));
    Some((&phi - &tail.scale(&y.pow(n))).scale(&q_inv))
}

/// The printed weighted-sum formula against direct summation for `1 ≤ n ≤ n_max`.
///
/// The direct sum is normative. At `x = 1` the printed formula reduces to the
/// unweighted one and holds; elsewhere it fails, and the report says where.
pub fn verify_weighted_sum_t6(params: &BiParams, x: &Rational, n_max: u64) -> IdentityReport {
    let id = IdentityId::WeightedSumT6;
    if x.is_zero() {
        return IdentityReport::skipped(id, params, Some(x.clone()), "x = 0");
    }
    if t6_printed_denominator(params, x).is_zero() {
        return IdentityReport::skipped(
            id,
            params,
            Some(x.clone()),
            "denominator x^2-(ab+4)x+4 vanishes",
        );
    }
    let js = recurrence_terms(params, n_max as usize + 1);
    let sums = weighted_prefix_sums(&js, Some(x));
    check_range(id, params, Some(x.clone()), 1, n_max as i64, |n| {
        let n = n as usize;
        let printed = sum_t6_printed(params, x, n as u64, &js[n], &js[n - 1]).expect("checked");
        Residual::Matrix(&printed - &sums[n - 1])
    })
}

/// Identities between the characteristic roots, evaluated in Q(√D):
/// `α+β = ab`, `αβ = −2ab`, `(α+2)(β+2) = 4`, `α+2 = α²/ab`, `β+2 = β²/ab`.
///
/// Also evaluates the misprinted companion `β+2 = −β/α` and records it as an
/// erratum sub-check; its outcome does not affect the report status.
pub fn verify_root_identities(params: &BiParams) -> IdentityReport {
    let (alpha, beta) = roots(params);
    let d = params.disc();
    let k = |r: Rational| QuadNum::from_rational(r, d);
    let ab = params.ab();
    let inv_ab = ab.recip().expect("ab != 0");
    let two = k(Rational::from(2));
    let alpha2 = &alpha + &two;
    let beta2 = &beta + &two;

    let genuine: [(&str, QuadNum); 5] = [
        ("alpha+beta = ab", &(&alpha + &beta) - &k(ab.clone())),
        (
            "alpha*beta = -2ab",
            &(&alpha * &beta) - &k(&Rational::from(-2) * ab),
        ),
        ("(alpha+2)(beta+2) = 4", &(&alpha2 * &beta2) - &k(Rational::from(4))),
        ("alpha+2 = alpha^2/ab", &alpha2 - &(&alpha * &alpha).scale(&inv_ab)),
        ("beta+2 = beta^2/ab", &beta2 - &(&beta * &beta).scale(&inv_ab)),
    ];
    let neg_beta_over_alpha = (-&beta).checked_div(&alpha).expect("N(alpha) = -2ab != 0");
    let printed = &beta2 - &neg_beta_over_alpha;

    let mut report = IdentityReport {
        identity: IdentityId::RootIdentities,
        params: params.clone(),
        x: None,
        range: None,
        status: Status::Pass,
        first_failure: None,
        residual: None,
        checks: Vec::new(),
        notes: Vec::new(),
    };
    for (i, (name, diff)) in genuine.into_iter().enumerate() {
        let holds = diff.is_zero();
        if !holds && report.status == Status::Pass {
            report.status = Status::Fail;
            report.first_failure = Some(i as i64 + 1);
            report.residual = Some(Residual::Quad(diff.clone()));
        }
        report.checks.push(SubCheck {
            name: name.to_string(),
            holds,
            erratum: false,
            residual: (!holds).then_some(Residual::Quad(diff)),
        });
    }
    let holds = printed.is_zero();
    report.checks.push(SubCheck {
        name: "beta+2 = -beta/alpha".to_string(),
        holds,
        erratum: true,
        residual: (!holds).then_some(Residual::Quad(printed)),
    });
    report
}

/// Series coefficients of the generating function against `Jₘ` for
/// `0 ≤ m < count`, together with the component-form numerator and the
/// truncated product series × denominator = numerator.
pub fn verify_series_match(params: &BiParams, count: usize) -> IdentityReport {
    let count = count.max(1);
    let ogf = build_ogf(params);
    let series = series_coeffs(&ogf, count);
    let js = recurrence_terms(params, count);
    let deg_q = ogf.denominator.degree().unwrap_or(0);
    let conv_len = count.saturating_sub(deg_q);
    let product = Mat2Poly::new(series.clone()).mul_scalar_truncated(&ogf.denominator, conv_len);
    let components = component_form(params);
    let entry_polys = ogf.numerator.entry_polys();

    let mut report = check_range(IdentityId::SeriesMatch, params, None, 0, count as i64 - 1, |m| {
        let m = m as usize;
        let coeff = &series[m] - &js[m];
        if !coeff.is_zero() {
            return Residual::Matrix(coeff);
        }
        if m < conv_len {
            let conv = &product.coeff(m) - &ogf.numerator.coeff(m);
            if !conv.is_zero() {
                return Residual::Matrix(conv);
            }
        }
        let pick = |p: &[[crate::genfunc::Poly; 2]; 2]| {
            Mat2::new(p[0][0].coeff(m), p[0][1].coeff(m), p[1][0].coeff(m), p[1][1].coeff(m))
        };
        Residual::Matrix(&pick(&entry_polys) - &pick(&components))
    });
    report.checks.push(SubCheck {
        name: "component form equals numerator entries".to_string(),
        holds: entry_polys == components,
        erratum: false,
        residual: None,
    });
    report
}

/// Recurrence, closed form, Binet form and fast doubling agree for
/// `0 ≤ n ≤ n_max`. The Binet route is left out when `ab(ab+8) = 0`.
pub fn verify_cross_method(params: &BiParams, n_max: u64) -> IdentityReport {
    let js = recurrence_terms(params, n_max as usize + 1);
    let binet = !params.is_degenerate();
    let mut report = check_range(IdentityId::CrossMethod, params, None, 0, n_max as i64, |n| {
        let n = n as u64;
        let reference = &js[n as usize];
        let closed = &term_closed(params, n) - reference;
        if !closed.is_zero() {
            return Residual::Matrix(closed);
        }
        if binet {
            let b = &term_binet(params, n).expect("non-degenerate") - reference;
            if !b.is_zero() {
                return Residual::Matrix(b);
            }
        }
        Residual::Matrix(&term_fast(params, n) - reference)
    });
    if !binet {
        report
            .notes
            .push("binet route skipped: degenerate discriminant ab(ab+8) = 0".to_string());
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(a: i64, b: i64) -> BiParams {
        BiParams::from_ints(a, b).unwrap()
    }

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn cassini_examples() {
        // n = 1: (b/a)·ĵ₀·ĵ₂ − ĵ₁² = −1
        let q = p(3, 5);
        let j = scalar_prefix(SeqKind::BpJacobsthal, &q, 3);
        assert_eq!(&q.b_over_a() * &(&j[0] * &j[2]) - &j[1] * &j[1], r(-1, 1));
        // (2,1), n = 2: ĵ₁ĵ₃ − (1/2)ĵ₂² = 4 − 2 = 2
        let q = p(2, 1);
        let j = scalar_prefix(SeqKind::BpJacobsthal, &q, 4);
        assert_eq!(&j[1] * &j[3] - &r(1, 2) * &(&j[2] * &j[2]), r(2, 1));
        assert!(verify_cassini(&p(3, 5), 256).is_pass());
    }

    #[test]
    fn det_examples() {
        let q = p(2, 1);
        let j3 = crate::matrix::term_recurrence(&q, 3);
        assert_eq!(j3.det(), r(-4, 1));
        assert_eq!(det_closed(&q, 3), r(-4, 1));
        assert!(verify_det(&p(-2, 3), 128).is_pass());
    }

    #[test]
    fn doubling_examples() {
        let q = p(2, 1);
        let js = recurrence_terms(&q, 6);
        assert_eq!(js[4], &js[2].scale(&r(6, 1)) - &js[0].scale(&r(4, 1)));
        let q = p(1, 1);
        let js = recurrence_terms(&q, 6);
        assert_eq!(js[5], &js[3].scale(&r(5, 1)) - &js[1].scale(&r(4, 1)));
        assert!(verify_doubling(&p(-3, 2), 64).is_pass());
    }

    #[test]
    fn unweighted_sum_examples() {
        let q = p(2, 1);
        let want = Mat2::from_ints(12, 7, 7, 5);
        assert_eq!(direct_sum(&q, None, 4), want);
        let js = recurrence_terms(&q, 5);
        assert_eq!(sum_t5_closed(&q, 4, &js[4], &js[3]).unwrap(), want);
        assert_eq!(sum_t5_closed(&q, 2, &js[2], &js[1]).unwrap(), &js[0] + &js[1]);
        assert!(verify_sum_t5(&q, 64).is_pass());
        assert!(verify_sum_t5(&p(1, 1), 10).is_skipped());
    }

    #[test]
    fn weighted_sum_at_x_one_reduces_to_unweighted() {
        assert!(verify_weighted_sum_t6(&p(2, 1), &r(1, 1), 16).is_pass());
        let q = p(-3, 2);
        let js = recurrence_terms(&q, 20);
        for n in 1..20 {
            assert_eq!(
                sum_t6_printed(&q, &r(1, 1), n as u64, &js[n], &js[n - 1]),
                sum_t5_closed(&q, n as u64, &js[n], &js[n - 1])
            );
        }
    }

    #[test]
    fn printed_weighted_sum_fails_at_x_two() {
        let q = p(2, 1);
        let x = r(2, 1);
        let oracle = direct_sum(&q, Some(&x), 2);
        assert_eq!(oracle, Mat2::new(r(3, 2), r(1, 2), r(1, 2), r(1, 1)));
        let js = recurrence_terms(&q, 3);
        let printed = sum_t6_printed(&q, &x, 2, &js[2], &js[1]).unwrap();
        assert_eq!(printed, Mat2::from_ints(3, 1, 1, 2));
        // n = 1 already fails: printed (3/2)·I against J₀ = I
        let at_one = sum_t6_printed(&q, &x, 1, &js[1], &js[0]).unwrap();
        assert_eq!(at_one, Mat2::scalar(r(3, 2)));
        let rep = verify_weighted_sum_t6(&q, &x, 2);
        assert!(rep.is_fail());
        assert!(rep.is_known_erratum());
        assert_eq!(rep.first_failure, Some(1));
        assert_eq!(rep.residual, Some(Residual::Matrix(Mat2::scalar(r(1, 2)))));
    }

    #[test]
    fn printed_weighted_sum_fails_at_x_three_nonproportionally() {
        let q = p(2, 1);
        let x = r(3, 1);
        let oracle = direct_sum(&q, Some(&x), 2);
        assert_eq!(oracle, Mat2::new(r(4, 3), r(1, 3), r(1, 3), r(1, 1)));
        let js = recurrence_terms(&q, 3);
        let printed = sum_t6_printed(&q, &x, 2, &js[2], &js[1]).unwrap();
        assert_eq!(printed, Mat2::new(r(22, 5), r(1, 1), r(1, 1), r(17, 5)));
        // ratios e11 and e22 differ, so no scalar multiple fixes it
        assert_ne!(&printed.e11 / &oracle.e11, &printed.e22 / &oracle.e22);
        assert!(verify_weighted_sum_t6(&q, &x, 2).is_fail());
    }

    #[test]
    fn weighted_sum_degenerate_points_skip() {
        let q = p(2, 1);
        assert!(verify_weighted_sum_t6(&q, &Rational::zero(), 5).is_skipped());
        // ab = 1: x² − 5x + 4 = (x − 1)(x − 4)
        let q = p(1, 1);
        let rep = verify_weighted_sum_t6(&q, &r(1, 1), 5);
        assert!(rep.is_skipped());
        let rep = verify_weighted_sum_t6(&q, &r(4, 1), 5);
        assert!(rep.is_skipped());
    }

    #[test]
    fn corrected_weighted_sum_matches_direct_sum() {
        for (a, b) in [(2, 1), (1, 1), (-3, 2), (3, -1)] {
            let q = p(a, b);
            let js = recurrence_terms(&q, 24);
            for x in [r(1, 1), r(2, 1), r(1, 2), r(3, 1), r(-5, 3)] {
                let sums = weighted_prefix_sums(&js, Some(&x));
                for n in 0..20usize {
                    let following = [js[n].clone(), js[n + 1].clone(), js[n + 2].clone(), js[n + 3].clone()];
                    let Some(got) = sum_weighted_corrected(&q, &x, n as u64, &following) else {
                        continue;
                    };
                    let want = if n == 0 { Mat2::zero() } else { sums[n - 1].clone() };
                    assert_eq!(got, want, "a={a} b={b} x={x} n={n}");
                }
            }
        }
    }

    #[test]
    fn root_identities_and_printed_erratum() {
        let rep = verify_root_identities(&p(1, 1));
        assert!(rep.is_pass());
        let erratum = rep.checks.iter().find(|c| c.erratum).unwrap();
        assert!(!erratum.holds);
        // α = 2, β = −1 at a = b = 1 (√9 = 3): β+2 = 1, −β/α = 1/2.
        let (alpha, beta) = roots(&p(1, 1));
        let eval = |u: &QuadNum| &u.rat + &(&u.coeff * &r(3, 1));
        assert_eq!(eval(&alpha), r(2, 1));
        assert_eq!(eval(&beta), r(-1, 1));
        let lhs = &beta + &QuadNum::from_rational(r(2, 1), &alpha.disc);
        let rhs = (-&beta).checked_div(&alpha).unwrap();
        assert_eq!(eval(&lhs), r(1, 1));
        assert_eq!(eval(&rhs), r(1, 2));
        // (2,1): (α+2)(β+2) = αβ + 2(α+β) + 4 = −4 + 4 + 4
        assert!(verify_root_identities(&p(2, 1)).is_pass());
        // degenerate discriminant is fine here
        assert!(verify_root_identities(&p(-2, 4)).is_pass());
    }

    #[test]
    fn series_and_cross_method() {
        assert!(verify_series_match(&p(2, 1), 64).is_pass());
        assert!(verify_cross_method(&p(1, 1), 128).is_pass());
        let degenerate = verify_cross_method(&p(-2, 4), 40);
        assert!(degenerate.is_pass());
        assert_eq!(degenerate.notes.len(), 1);
    }

    #[test]
    fn determinism_of_reports() {
        let q = p(2, 1);
        let x = r(1, 2);
        assert_eq!(
            verify_weighted_sum_t6(&q, &x, 30),
            verify_weighted_sum_t6(&q, &x, 30)
        );
    }
}
