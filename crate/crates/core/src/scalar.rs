//! Scalar bi-periodic sequences.
//!
//! All four kinds satisfy `xₙ = c(n)·xₙ₋₁ + k·xₙ₋₂` where the multiplier
//! `c(n)` alternates between `a` and `b` with the parity of `n`:
//!
//! | kind                 | x₀ | x₁ | c(even) | c(odd) | k |
//! |----------------------|----|----|---------|--------|---|
//! | Jacobsthal `ĵ`       | 0  | 1  | a       | b      | 2 |
//! | Jacobsthal–Lucas `C` | 2  | a  | b       | a      | 2 |
//! | Fibonacci `q`        | 0  | 1  | a       | b      | 1 |
//! | Lucas `l`            | 2  | a  | b       | a      | 1 |
//!
//! Eliminating the odd-index (resp. even-index) neighbour gives the
//! parity-preserving recurrence `xₙ = (ab + 2k)·xₙ₋₂ − k²·xₙ₋₄`, which
//! [`scalar_term_fast`] evaluates by powering its 2×2 companion matrix.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::arith::{parity, Mat2, Parity, Rational};
use crate::error::{Error, Result};
use crate::verifier::{check_range, IdentityId, IdentityReport, Residual};

/// Validated parameter pair with its derived quantities.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawParams", into = "RawParams")]
pub struct BiParams {
    a: Rational,
    b: Rational,
    ab: Rational,
    disc: Rational,
}

#[derive(Serialize, Deserialize)]
struct RawParams {
    a: Rational,
    b: Rational,
}

impl TryFrom<RawParams> for BiParams {
    type Error = Error;
    fn try_from(raw: RawParams) -> Result<Self> {
        BiParams::new(raw.a, raw.b)
    }
}

impl From<BiParams> for RawParams {
    fn from(p: BiParams) -> Self {
        RawParams { a: p.a, b: p.b }
    }
}

impl BiParams {
    pub fn new(a: Rational, b: Rational) -> Result<Self> {
        if a.is_zero() {
            return Err(Error::ZeroParameter("a"));
        }
        if b.is_zero() {
            return Err(Error::ZeroParameter("b"));
        }
        let ab = &a * &b;
        let disc = &ab * &(&ab + &Rational::from(8));
        Ok(BiParams { a, b, ab, disc })
    }

    pub fn from_ints(a: i64, b: i64) -> Result<Self> {
        BiParams::new(a.into(), b.into())
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn ab(&self) -> &Rational {
        &self.ab
    }

    /// `D = ab(ab + 8)`, the discriminant of `x² − ab·x − 2ab`.
    pub fn disc(&self) -> &Rational {
        &self.disc
    }

    pub fn b_over_a(&self) -> Rational {
        &self.b / &self.a
    }

    /// True when the characteristic roots coincide (`ab = −8`).
    pub fn is_degenerate(&self) -> bool {
        self.disc.is_zero()
    }
}

impl fmt::Debug for BiParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(a={}, b={})", self.a, self.b)
    }
}

impl fmt::Display for BiParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum SeqKind {
    BpJacobsthal,
    BpJacobsthalLucas,
    BpFibonacci,
    BpLucas,
}

impl SeqKind {
    pub const ALL: [SeqKind; 4] = [
        SeqKind::BpJacobsthal,
        SeqKind::BpJacobsthalLucas,
        SeqKind::BpFibonacci,
        SeqKind::BpLucas,
    ];

    pub fn initial(self, params: &BiParams) -> (Rational, Rational) {
        match self {
            SeqKind::BpJacobsthal | SeqKind::BpFibonacci => (Rational::zero(), Rational::one()),
            SeqKind::BpJacobsthalLucas | SeqKind::BpLucas => {
                (Rational::from(2), params.a().clone())
            }
        }
    }

    /// Multiplier of `xₙ₋₁` in the step producing `xₙ`.
    pub fn multiplier(self, params: &BiParams, n: u64) -> &Rational {
        let a_on_even = matches!(self, SeqKind::BpJacobsthal | SeqKind::BpFibonacci);
        match (parity(n), a_on_even) {
            (Parity::Even, true) | (Parity::Odd, false) => params.a(),
            _ => params.b(),
        }
    }

    /// Coefficient of `xₙ₋₂`.
    pub fn weight(self) -> i64 {
        match self {
            SeqKind::BpJacobsthal | SeqKind::BpJacobsthalLucas => 2,
            SeqKind::BpFibonacci | SeqKind::BpLucas => 1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            SeqKind::BpJacobsthal => "bi-periodic Jacobsthal",
            SeqKind::BpJacobsthalLucas => "bi-periodic Jacobsthal-Lucas",
            SeqKind::BpFibonacci => "bi-periodic Fibonacci",
            SeqKind::BpLucas => "bi-periodic Lucas",
        }
    }
}

impl fmt::Display for SeqKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Longest prefix kept per (kind, a, b).
const MEMO_MAX_LEN: usize = 1 << 13;
/// Number of (kind, a, b) keys before the table is flushed.
const MEMO_MAX_KEYS: usize = 512;

type MemoKey = (SeqKind, Rational, Rational);

fn memo() -> &'static Mutex<HashMap<MemoKey, Vec<Rational>>> {
    static MEMO: OnceLock<Mutex<HashMap<MemoKey, Vec<Rational>>>> = OnceLock::new();
    MEMO.get_or_init(|| Mutex::new(HashMap::new()))
}

fn step(kind: SeqKind, params: &BiParams, n: u64, prev2: &Rational, prev1: &Rational) -> Rational {
    kind.multiplier(params, n) * prev1 + prev2 * &Rational::from(kind.weight())
}

/// Terms `x₀ … x_{len−1}` by forward recurrence, bypassing the memo table.
pub fn scalar_prefix(kind: SeqKind, params: &BiParams, len: usize) -> Vec<Rational> {
    let (x0, x1) = kind.initial(params);
    let mut out = Vec::with_capacity(len);
    out.extend([x0, x1].into_iter().take(len));
    while out.len() < len {
        let n = out.len();
        let next = step(kind, params, n as u64, &out[n - 2], &out[n - 1]);
        out.push(next);
    }
    out
}

/// The `n`-th term by memoized forward recurrence.
///
/// `n = −1` is accepted for the Jacobsthal kind only, where the backward
/// extension gives `ĵ₋₁ = 1/2`.
pub fn scalar_term(kind: SeqKind, params: &BiParams, n: i64) -> Result<Rational> {
    if n < 0 {
        return match (kind, n) {
            (SeqKind::BpJacobsthal, -1) => Ok(Rational::new(1, 2)),
            _ => Err(Error::IndexOutOfDomain { kind, n }),
        };
    }
    let n = n as usize;
    let key: MemoKey = (kind, params.a().clone(), params.b().clone());

    // Seed from the longest cached prefix, then compute outside the lock.
    let mut seed: Option<(usize, Rational, Rational)> = None;
    {
        let table = memo().lock().unwrap_or_else(|e| e.into_inner());
        if let Some(v) = table.get(&key) {
            if n < v.len() {
                return Ok(v[n].clone());
            }
            if v.len() >= 2 {
                let l = v.len();
                seed = Some((l, v[l - 2].clone(), v[l - 1].clone()));
            }
        }
    }

    let (start, mut prev2, mut prev1) = match seed {
        Some(s) => s,
        None => {
            let (x0, x1) = kind.initial(params);
            if n == 0 {
                return Ok(x0);
            }
            (2, x0, x1)
        }
    };
    if n < start {
        // only reachable for n = 1 with an empty table
        return Ok(prev1);
    }

    let mut fresh = Vec::new();
    let mut m = start;
    loop {
        let next = step(kind, params, m as u64, &prev2, &prev1);
        if m < MEMO_MAX_LEN {
            fresh.push(next.clone());
        }
        if m == n {
            prev1 = next;
            break;
        }
        prev2 = std::mem::replace(&mut prev1, next);
        m += 1;
    }

    if !fresh.is_empty() {
        let mut table = memo().lock().unwrap_or_else(|e| e.into_inner());
        if !table.contains_key(&key) && table.len() >= MEMO_MAX_KEYS {
            table.clear();
        }
        let entry = table
            .entry(key)
            .or_insert_with(|| scalar_prefix(kind, params, 2));
        // Another thread may have extended the prefix meanwhile; values agree.
        if entry.len() == start {
            entry.extend(fresh);
        }
    }
    Ok(prev1)
}

/// Classical Jacobsthal number `jₙ = jₙ₋₁ + 2jₙ₋₂`, `j₀ = 0`, `j₁ = 1`.
pub fn classical_jacobsthal(n: u64) -> Rational {
    let unit = BiParams::from_ints(1, 1).expect("nonzero");
    scalar_term(SeqKind::BpJacobsthal, &unit, n as i64).expect("n >= 0")
}

/// Classical Jacobsthal–Lucas number, `c₀ = 2`, `c₁ = 1`.
pub fn classical_jacobsthal_lucas(n: u64) -> Rational {
    let unit = BiParams::from_ints(1, 1).expect("nonzero");
    scalar_term(SeqKind::BpJacobsthalLucas, &unit, n as i64).expect("n >= 0")
}

/// The `n`-th term in O(log n) ring operations.
///
/// Splits by parity into `y_m = x_{2m+s}` and evaluates
/// `[y_m, y_{m−1}]ᵀ = C^{m−1}·[y₁, y₀]ᵀ` with `C = [[ab+2k, −k²], [1, 0]]`.
pub fn scalar_term_fast(kind: SeqKind, params: &BiParams, n: u64) -> Rational {
    let head = scalar_prefix(kind, params, 4);
    if n < 4 {
        return head[n as usize].clone();
    }
    let s = (n % 2) as usize;
    let m = n / 2;
    let k = kind.weight();
    let companion = Mat2::new(
        params.ab() + &Rational::from(2 * k),
        Rational::from(-k * k),
        Rational::one(),
        Rational::zero(),
    );
    let p = companion.pow(m - 1);
    &p.e11 * &head[2 + s] + &p.e12 * &head[s]
}

/// Checks `Cₙ = 2ĵₙ₋₁ + ĵₙ₊₁` and `(ab+8)ĵₙ = 2Cₙ₋₁ + Cₙ₊₁` for `1 ≤ n ≤ n_max`.
pub fn verify_lucas_relations(params: &BiParams, n_max: u64) -> IdentityReport {
    let len = n_max as usize + 2;
    let j = scalar_prefix(SeqKind::BpJacobsthal, params, len);
    let c = scalar_prefix(SeqKind::BpJacobsthalLucas, params, len);
    let two = Rational::from(2);
    let ab8 = params.ab() + &Rational::from(8);
    check_range(IdentityId::LucasRelations, params, None, 1, n_max as i64, |n| {
        let n = n as usize;
        let first = &c[n] - &(&two * &j[n - 1] + &j[n + 1]);
        if !first.is_zero() {
            return Residual::Scalar(first);
        }
        Residual::Scalar(&ab8 * &j[n] - (&two * &c[n - 1] + &c[n + 1]))
    })
}
