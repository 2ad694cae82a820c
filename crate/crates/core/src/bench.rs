//! Wall-clock timing of the term methods over a ladder of indices.

use std::time::{Duration, Instant};

use crate::arith::Mat2;
use crate::error::{Error, Result};
use crate::matrix::Method;
use crate::scalar::BiParams;

/// n ∈ {2¹⁰, 2¹², 2¹⁴, 2¹⁶, 2¹⁷}
pub const DEFAULT_LADDER: [u64; 5] = [1 << 10, 1 << 12, 1 << 14, 1 << 16, 1 << 17];

#[derive(Clone, Debug)]
pub struct BenchRow {
    pub method: Method,
    pub n: u64,
    /// Fastest of the repetitions.
    pub wall: Duration,
    /// Largest bit length among the entries of `Jₙ`.
    pub term_bits: u64,
}

impl BenchRow {
    pub fn wall_ms(&self) -> f64 {
        self.wall.as_secs_f64() * 1e3
    }
}

fn time_best(reps: usize, mut f: impl FnMut() -> Result<Mat2>) -> Result<(Duration, Mat2)> {
    let mut best: Option<(Duration, Mat2)> = None;
    for _ in 0..reps.max(1) {
        let t = Instant::now();
        let value = f()?;
        let elapsed = t.elapsed();
        best = match best {
            Some((d, v)) if d <= elapsed => Some((d, v)),
            _ => Some((elapsed, value)),
        };
    }
    Ok(best.expect("at least one repetition"))
}

/// Times every method at every `n`, keeping the best of `reps` runs, and
/// checks that all methods return the same matrix at each `n`.
pub fn run_ladder(params: &BiParams, ladder: &[u64], methods: &[Method], reps: usize) -> Result<Vec<BenchRow>> {
    let mut rows = Vec::with_capacity(ladder.len() * methods.len());
    for &n in ladder {
        let mut reference: Option<Mat2> = None;
        for &method in methods {
            let (wall, value) = time_best(reps, || method.term(params, n))?;
            match &reference {
                None => reference = Some(value.clone()),
                Some(r) if *r != value => return Err(Error::MethodMismatch { n }),
                Some(_) => {}
            }
            rows.push(BenchRow {
                method,
                n,
                wall,
                term_bits: value.max_bits(),
            });
        }
    }
    Ok(rows)
}

/// `fast / naive` wall-time ratios along the ladder, in ladder order.
pub fn speed_ratios(rows: &[BenchRow], fast: Method, naive: Method) -> Vec<(u64, f64)> {
    let mut ns: Vec<u64> = rows.iter().map(|r| r.n).collect();
    ns.dedup();
    ns.into_iter()
        .filter_map(|n| {
            let get = |m| rows.iter().find(|r| r.n == n && r.method == m);
            let (f, s) = (get(fast)?, get(naive)?);
            Some((n, f.wall.as_secs_f64() / s.wall.as_secs_f64().max(f64::MIN_POSITIVE)))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_ladder_agrees() {
        let p = BiParams::from_ints(2, 3).unwrap();
        let rows = run_ladder(&p, &[16, 64], &Method::ALL, 1).unwrap();
        assert_eq!(rows.len(), 8);
        assert!(rows.iter().all(|r| r.term_bits > 0));
        assert_eq!(speed_ratios(&rows, Method::Fast, Method::Recurrence).len(), 2);
    }

    #[test]
    fn degenerate_binet_propagates_error() {
        let p = BiParams::from_ints(-2, 4).unwrap();
        assert_eq!(
            run_ladder(&p, &[8], &[Method::Recurrence, Method::Binet], 1).unwrap_err(),
            Error::DegenerateDiscriminant
        );
    }
}
