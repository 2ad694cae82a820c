use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::arith::{Mat2, QuadNum, Rational};
use crate::scalar::BiParams;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum IdentityId {
    Cassini,
    Det,
    Doubling,
    LucasRelations,
    SumT5,
    WeightedSumT6,
    RootIdentities,
    SeriesMatch,
    CrossMethod,
}

impl IdentityId {
    pub const ALL: [IdentityId; 9] = [
        IdentityId::Cassini,
        IdentityId::Det,
        IdentityId::Doubling,
        IdentityId::LucasRelations,
        IdentityId::SumT5,
        IdentityId::WeightedSumT6,
        IdentityId::RootIdentities,
        IdentityId::SeriesMatch,
        IdentityId::CrossMethod,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            IdentityId::Cassini => "CASSINI",
            IdentityId::Det => "DET",
            IdentityId::Doubling => "DOUBLING",
            IdentityId::LucasRelations => "LUCAS_RELATIONS",
            IdentityId::SumT5 => "SUM_T5",
            IdentityId::WeightedSumT6 => "WEIGHTED_SUM_T6",
            IdentityId::RootIdentities => "ROOT_IDENTITIES",
            IdentityId::SeriesMatch => "SERIES_MATCH",
            IdentityId::CrossMethod => "CROSS_METHOD",
        }
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for IdentityId {
    type Err = String;

    /// Case-insensitive; `-` and `_` are interchangeable.
    fn from_str(s: &str) -> Result<Self, String> {
        let norm = s.trim().to_ascii_uppercase().replace('-', "_");
        IdentityId::ALL
            .into_iter()
            .find(|id| id.as_str() == norm)
            .ok_or_else(|| format!("unknown identity suite `{s}`"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skipped(String),
}

impl Status {
    pub fn label(&self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped(_) => "SKIPPED",
        }
    }
}

/// `lhs − rhs` of a checked identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Residual {
    Scalar(Rational),
    Matrix(Mat2),
    Quad(QuadNum),
}

impl Residual {
    pub fn is_zero(&self) -> bool {
        match self {
            Residual::Scalar(r) => r.is_zero(),
            Residual::Matrix(m) => m.is_zero(),
            Residual::Quad(q) => q.is_zero(),
        }
    }
}

impl fmt::Display for Residual {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Residual::Scalar(r) => write!(f, "{r}"),
            Residual::Matrix(m) => write!(f, "{m}"),
            Residual::Quad(q) => write!(f, "{q}"),
        }
    }
}

/// A named sub-identity evaluated alongside a suite.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubCheck {
    pub name: String,
    pub holds: bool,
    /// The claim is a known misprint; `holds == false` is the expected outcome.
    pub erratum: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<Residual>,
}

/// Outcome of one identity at one parameter point over one index range.
///
/// A `Fail` always carries `first_failure` and a nonzero `residual`. For
/// [`IdentityId::RootIdentities`], which has no index, `first_failure` is the
/// 1-based position of the failing sub-identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityReport {
    pub identity: IdentityId,
    pub params: BiParams,
    pub x: Option<Rational>,
    /// Inclusive index interval that was checked.
    pub range: Option<(i64, i64)>,
    pub status: Status,
    pub first_failure: Option<i64>,
    pub residual: Option<Residual>,
    pub checks: Vec<SubCheck>,
    pub notes: Vec<String>,
}

impl IdentityReport {
    pub fn skipped(
        identity: IdentityId,
        params: &BiParams,
        x: Option<Rational>,
        reason: impl Into<String>,
    ) -> Self {
        IdentityReport {
            identity,
            params: params.clone(),
            x,
            range: None,
            status: Status::Skipped(reason.into()),
            first_failure: None,
            residual: None,
            checks: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn is_pass(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn is_fail(&self) -> bool {
        self.status == Status::Fail
    }

    pub fn is_skipped(&self) -> bool {
        matches!(self.status, Status::Skipped(_))
    }

    /// A failure of a printed formula that is known to be misprinted: the
    /// weighted sum evaluated at `x ≠ 1`.
    pub fn is_known_erratum(&self) -> bool {
        self.is_fail()
            && self.identity == IdentityId::WeightedSumT6
            && self.x.as_ref().is_some_and(|x| !x.is_one())
    }

    pub fn to_json(&self) -> serde_json::Value {
        let wire = ReportWire {
            identity: self.identity,
            a: self.params.a(),
            b: self.params.b(),
            x: self.x.as_ref(),
            n_min: self.range.map(|r| r.0),
            n_max: self.range.map(|r| r.1),
            status: self.status.label(),
            reason: match &self.status {
                Status::Skipped(r) => Some(r.as_str()),
                _ => None,
            },
            first_failure: self.first_failure,
            residual: self.residual.as_ref(),
            known_erratum: self.is_known_erratum(),
            checks: &self.checks,
            notes: &self.notes,
        };
        serde_json::to_value(wire).expect("report serializes")
    }

    pub const CSV_HEADER: [&'static str; 11] = [
        "identity",
        "a",
        "b",
        "x",
        "n_max",
        "status",
        "first_failure",
        "residual_e11",
        "residual_e12",
        "residual_e21",
        "residual_e22",
    ];

    /// One CSV row. A scalar residual goes in `residual_e11`; a quadratic
    /// residual puts `rat`, `coeff`, `disc` in the first three residual columns.
    pub fn csv_record(&self) -> [String; 11] {
        let opt = |v: Option<String>| v.unwrap_or_default();
        let mut res: [String; 4] = Default::default();
        match &self.residual {
            None => {}
            Some(Residual::Scalar(r)) => res[0] = r.to_string(),
            Some(Residual::Matrix(m)) => {
                for (slot, e) in res.iter_mut().zip(m.entries()) {
                    *slot = e.to_string();
                }
            }
            Some(Residual::Quad(q)) => {
                res[0] = q.rat.to_string();
                res[1] = q.coeff.to_string();
                res[2] = q.disc.to_string();
            }
        }
        let [r11, r12, r21, r22] = res;
        [
            self.identity.to_string(),
            self.params.a().to_string(),
            self.params.b().to_string(),
            opt(self.x.as_ref().map(Rational::to_string)),
            opt(self.range.map(|r| r.1.to_string())),
            self.status.label().to_string(),
            opt(self.first_failure.map(|n| n.to_string())),
            r11,
            r12,
            r21,
            r22,
        ]
    }
}

impl fmt::Display for IdentityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:<16} a={} b={}", self.identity, self.params.a(), self.params.b())?;
        if let Some(x) = &self.x {
            write!(f, " x={x}")?;
        }
        if let Some((lo, hi)) = self.range {
            write!(f, " n={lo}..={hi}")?;
        }
        write!(f, " {}", self.status.label())?;
        match &self.status {
            Status::Skipped(reason) => write!(f, " ({reason})")?,
            Status::Fail => {
                if let Some(n) = self.first_failure {
                    write!(f, " at {n}")?;
                }
                if let Some(r) = &self.residual {
                    write!(f, " residual {r}")?;
                }
                if self.is_known_erratum() {
                    f.write_str(" [known erratum]")?;
                }
            }
            Status::Pass => {}
        }
        for c in self.checks.iter().filter(|c| c.erratum) {
            let verdict = if c.holds { "holds" } else { "false" };
            write!(f, "; printed `{}` {verdict}", c.name)?;
        }
        Ok(())
    }
}

#[derive(Serialize)]
struct ReportWire<'a> {
    identity: IdentityId,
    a: &'a Rational,
    b: &'a Rational,
    #[serde(skip_serializing_if = "Option::is_none")]
    x: Option<&'a Rational>,
    #[serde(skip_serializing_if = "Option::is_none")]
    n_min: Option<i64>,
    /// Always present; null when no index range applies.
    n_max: Option<i64>,
    status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    reason: Option<&'a str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    first_failure: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    residual: Option<&'a Residual>,
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    known_erratum: bool,
    #[serde(skip_serializing_if = "<[SubCheck]>::is_empty")]
    checks: &'a [SubCheck],
    #[serde(skip_serializing_if = "<[String]>::is_empty")]
    notes: &'a [String],
}

/// Evaluates `residual(n)` for `lo ≤ n ≤ hi` and stops at the first nonzero one.
pub fn check_range(
    identity: IdentityId,
    params: &BiParams,
    x: Option<Rational>,
    lo: i64,
    hi: i64,
    mut residual: impl FnMut(i64) -> Residual,
) -> IdentityReport {
    let mut report = IdentityReport {
        identity,
        params: params.clone(),
        x,
        range: Some((lo, hi)),
        status: Status::Pass,
        first_failure: None,
        residual: None,
        checks: Vec::new(),
        notes: Vec::new(),
    };
    for n in lo..=hi {
        let r = residual(n);
        if !r.is_zero() {
            report.status = Status::Fail;
            report.first_failure = Some(n);
            report.residual = Some(r);
            break;
        }
    }
    report
}
