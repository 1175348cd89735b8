//! Executable checks of the identities and inequalities on concrete graphs.
//!
//! Every check returns a [`CheckResult`] recording both sides, the expected
//! relation and the tolerance used, so the verdict can be re-derived from
//! the record alone.

mod checks;
mod pclass;
mod suite;

pub use checks::*;
pub use pclass::{check_pclass_closure, membership, PClassCertificate, PClassOptions, Verdict};
pub use suite::{
    random_pairs, run_suite, run_suite_with, stock_graphs, PClassCase, SuiteConfig, Summary, VerificationReport, STOCK,
};

use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = "=")]
    Eq,
    #[serde(rename = ">=")]
    Ge,
    #[serde(rename = "<=")]
    Le,
    /// Premise certified implies conclusion not refuted.
    #[serde(rename = "=>")]
    Implies,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Eq => "=",
            Relation::Ge => ">=",
            Relation::Le => "<=",
            Relation::Implies => "=>",
        })
    }
}

/// One side of a check: an exact integer, a real, or a verdict label.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Quantity {
    Int(u64),
    Real(f64),
    Text(String),
}

impl Quantity {
    fn as_f64(&self) -> Option<f64> {
        match *self {
            Quantity::Int(v) => Some(v as f64),
            Quantity::Real(v) => Some(v),
            Quantity::Text(_) => None,
        }
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Quantity::Int(v) => write!(f, "{v}"),
            Quantity::Real(v) => write!(f, "{v:.9}"),
            Quantity::Text(s) => f.write_str(s),
        }
    }
}

impl From<usize> for Quantity {
    fn from(v: usize) -> Self {
        Quantity::Int(v as u64)
    }
}

impl From<f64> for Quantity {
    fn from(v: f64) -> Self {
        Quantity::Real(v)
    }
}

impl From<&str> for Quantity {
    fn from(v: &str) -> Self {
        Quantity::Text(v.to_string())
    }
}

/// Whether `lhs rel rhs` holds within `tol`. Integers compare exactly when
/// `tol` is zero. For `Implies`, the sides are verdict labels and the
/// relation fails only when an `in` premise meets a `not-in` conclusion.
pub fn relation_holds(lhs: &Quantity, rel: Relation, rhs: &Quantity, tol: f64) -> bool {
    if rel == Relation::Implies {
        return !(lhs == &Quantity::from("in") && rhs == &Quantity::from("not-in"));
    }
    if let (Quantity::Text(a), Quantity::Text(b)) = (lhs, rhs) {
        return rel == Relation::Eq && a == b;
    }
    if let (Quantity::Int(a), Quantity::Int(b)) = (lhs, rhs) {
        if tol == 0.0 {
            return match rel {
                Relation::Eq => a == b,
                Relation::Ge => a >= b,
                Relation::Le => a <= b,
                Relation::Implies => unreachable!(),
            };
        }
    }
    let (Some(a), Some(b)) = (lhs.as_f64(), rhs.as_f64()) else {
        return false;
    };
    match rel {
        Relation::Eq => (a - b).abs() <= tol,
        Relation::Ge => a >= b - tol,
        Relation::Le => a <= b + tol,
        Relation::Implies => unreachable!(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    /// The check ran but could not decide at the available precision.
    Inconclusive,
    /// A size or search budget stopped the check.
    Budget,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub check_id: String,
    pub inputs: Vec<String>,
    pub lhs: Quantity,
    pub rhs: Quantity,
    pub relation: Relation,
    pub pass: bool,
    pub tol: f64,
    pub status: Status,
    /// The inequality held with room to spare.
    #[serde(skip_serializing_if = "std::ops::Not::not", default)]
    pub strict: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub detail: Option<String>,
}

impl CheckResult {
    pub fn new(
        check_id: String,
        inputs: Vec<String>,
        lhs: impl Into<Quantity>,
        relation: Relation,
        rhs: impl Into<Quantity>,
        tol: f64,
    ) -> Self {
        let (lhs, rhs) = (lhs.into(), rhs.into());
        let pass = relation_holds(&lhs, relation, &rhs, tol);
        let strict = match (relation, lhs.as_f64(), rhs.as_f64()) {
            (Relation::Ge, Some(a), Some(b)) => a > b + tol,
            (Relation::Le, Some(a), Some(b)) => a + tol < b,
            _ => false,
        };
        CheckResult {
            check_id,
            inputs,
            lhs,
            rhs,
            relation,
            pass,
            tol,
            status: if pass { Status::Pass } else { Status::Fail },
            strict,
            detail: None,
        }
    }

    /// A check stopped by a budget; neither side is known.
    pub fn budget(check_id: String, inputs: Vec<String>, relation: Relation, reason: String) -> Self {
        CheckResult {
            check_id,
            inputs,
            lhs: Quantity::from("?"),
            rhs: Quantity::from("?"),
            relation,
            pass: false,
            tol: 0.0,
            status: Status::Budget,
            strict: false,
            detail: Some(reason),
        }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }

    pub fn inconclusive(mut self) -> Self {
        if self.pass {
            self.status = Status::Inconclusive;
        }
        self
    }

    /// True when the recorded verdict matches the recorded values.
    pub fn is_consistent(&self) -> bool {
        self.status == Status::Budget || self.pass == relation_holds(&self.lhs, self.relation, &self.rhs, self.tol)
    }

    pub fn is_hard_failure(&self) -> bool {
        self.status == Status::Fail
    }
}

/// `name[a,b,...]`; the suite keeps these unique so results sort stably.
pub fn check_id<S: AsRef<str>>(name: &str, parts: &[S]) -> String {
    let parts: Vec<&str> = parts.iter().map(AsRef::as_ref).collect();
    format!("{name}[{}]", parts.join(","))
}
