//! Pass/fail records shared by the verification routines.

use serde::Serialize;

use crate::rational::{format_rational, Rational};
use crate::series::TruncatedSeries;

/// First index at which two coefficient sequences disagree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub index: usize,
    pub left: String,
    pub right: String,
}

impl Mismatch {
    pub fn new(index: usize, left: &Rational, right: &Rational) -> Self {
        Mismatch { index, left: format_rational(left), right: format_rational(right) }
    }
}

/// Compares two series up to their common order.
pub fn first_mismatch(left: &TruncatedSeries, right: &TruncatedSeries) -> Option<Mismatch> {
    let order = left.order().min(right.order());
    (0..=order)
        .find(|&i| left.coeff(i) != right.coeff(i))
        .map(|i| Mismatch::new(i, left.coeff(i), right.coeff(i)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn passed(self) -> bool {
        self == Status::Pass
    }
}

/// Outcome of a named coefficient-wise comparison.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub order: usize,
    pub status: Status,
    pub first_mismatch: Option<Mismatch>,
}

impl CheckReport {
    pub fn compare(name: impl Into<String>, left: &TruncatedSeries, right: &TruncatedSeries) -> Self {
        let mismatch = first_mismatch(left, right);
        CheckReport {
            name: name.into(),
            order: left.order().min(right.order()),
            status: Status::from_bool(mismatch.is_none()),
            first_mismatch: mismatch,
        }
    }

    pub fn passed(&self) -> bool {
        self.status.passed()
    }
}
