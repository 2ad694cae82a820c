use std::collections::BTreeSet;

use rayon::prelude::*;

use super::*;
use crate::error::{Error, Result};

/// A sweep over parameter points and identity suites.
#[derive(Clone, Debug)]
pub struct GridSpec {
    pub a_values: Vec<Rational>,
    pub b_values: Vec<Rational>,
    pub n_max: u64,
    pub suites: BTreeSet<IdentityId>,
    /// Weights for the weighted-sum suite.
    pub x_values: Vec<Rational>,
}

impl GridSpec {
    pub fn new(
        a_values: Vec<Rational>,
        b_values: Vec<Rational>,
        n_max: u64,
        suites: impl IntoIterator<Item = IdentityId>,
        x_values: Vec<Rational>,
    ) -> Result<Self> {
        if a_values.iter().any(Rational::is_zero) {
            return Err(Error::ZeroParameter("a"));
        }
        if b_values.iter().any(Rational::is_zero) {
            return Err(Error::ZeroParameter("b"));
        }
        Ok(GridSpec {
            a_values,
            b_values,
            n_max,
            suites: suites.into_iter().collect(),
            x_values,
        })
    }

    /// a, b ∈ {−3, −2, −1, 1, 2, 3}, n ≤ 128, x ∈ {1, 2, 1/2, 3}, every suite.
    pub fn default_grid() -> Self {
        let ab: Vec<Rational> = [-3, -2, -1, 1, 2, 3].into_iter().map(Rational::from).collect();
        GridSpec {
            a_values: ab.clone(),
            b_values: ab,
            n_max: 128,
            suites: IdentityId::ALL.into_iter().collect(),
            x_values: vec![1.into(), 2.into(), Rational::new(1, 2), 3.into()],
        }
    }
}

/// Runs one suite at one point. The weighted-sum suite yields one report per x.
pub fn run_suite(id: IdentityId, params: &BiParams, n_max: u64, xs: &[Rational]) -> Vec<IdentityReport> {
    let one = |r| vec![r];
    match id {
        IdentityId::Cassini => one(verify_cassini(params, n_max.max(1))),
        IdentityId::Det => one(verify_det(params, n_max)),
        IdentityId::Doubling => one(verify_doubling(params, (n_max / 2).max(2))),
        IdentityId::LucasRelations => one(verify_lucas_relations(params, n_max.max(1))),
        IdentityId::SumT5 => one(verify_sum_t5(params, n_max.max(1))),
        IdentityId::WeightedSumT6 => xs
            .iter()
            .map(|x| verify_weighted_sum_t6(params, x, n_max.max(1)))
            .collect(),
        IdentityId::RootIdentities => one(verify_root_identities(params)),
        IdentityId::SeriesMatch => one(verify_series_match(params, n_max as usize + 1)),
        IdentityId::CrossMethod => one(verify_cross_method(params, n_max)),
    }
}

/// Runs every requested suite at every grid point, in parallel.
///
/// Degenerate points come back as `Skipped` reports. The output is sorted by
/// `(a, b, identity, x)` and does not depend on scheduling.
pub fn run_grid(spec: &GridSpec) -> Vec<IdentityReport> {
    let jobs: Vec<(BiParams, IdentityId)> = spec
        .a_values
        .iter()
        .flat_map(|a| spec.b_values.iter().map(move |b| (a, b)))
        .filter_map(|(a, b)| BiParams::new(a.clone(), b.clone()).ok())
        .flat_map(|p| spec.suites.iter().map(move |&id| (p.clone(), id)))
        .collect();
    let mut reports: Vec<IdentityReport> = jobs
        .par_iter()
        .flat_map_iter(|(p, id)| run_suite(*id, p, spec.n_max, &spec.x_values))
        .collect();
    reports.sort_by(|l, r| {
        (l.params.a(), l.params.b(), l.identity, &l.x).cmp(&(r.params.a(), r.params.b(), r.identity, &r.x))
    });
    reports
}
