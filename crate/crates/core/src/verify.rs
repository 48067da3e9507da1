//! Exact verification of the eta-product identities
//! `I_s(1/H_c) = eta_{N+} * H_c^{sigma_1/24}` and the two level-one
//! identities for `E4` and `Delta`.

use std::ops::RangeInclusive;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::eta::{discriminant, eisenstein_e4, eta_product, klein_j};
use crate::families::{iseries, FamilyKey, Shift};
use crate::hauptmodul::{hauptmodul, inverse_hauptmodul, HauptmodulId};
use crate::qexp::QExpansion;
use crate::rational::rat;
use crate::report::{first_mismatch, Mismatch, Status};
use crate::series::TruncatedSeries;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum IdentityKind {
    EtaProduct,
    KachruVafa,
    Delta,
}

impl IdentityKind {
    pub fn as_str(self) -> &'static str {
        match self {
            IdentityKind::EtaProduct => "eta-product",
            IdentityKind::KachruVafa => "kachru-vafa",
            IdentityKind::Delta => "delta",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub family: FamilyKey,
    pub identity: IdentityKind,
    pub hauptmodul: Option<&'static str>,
    pub s: Option<i64>,
    pub c: Option<i64>,
    /// Highest q-order compared.
    pub order: usize,
    pub status: Status,
    pub first_mismatch: Option<Mismatch>,
    /// Index-1 family the check was reduced to, for index-2 families.
    pub reduced_to: Option<FamilyKey>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.status.passed()
    }

    fn sort_key(&self) -> (IdentityKind, FamilyKey, Option<i64>, Option<i64>) {
        (self.identity, self.family, self.s, self.c)
    }
}

/// `(s, c)` used when the caller does not supply them. Index-2 families use
/// the values of the index-1 family they reduce to.
pub fn default_parameters(key: FamilyKey) -> (i64, i64) {
    let d = key.descriptor();
    match d.reduction {
        Some(partner) => default_parameters(partner),
        None => (d.default_shift(), d.default_constant()),
    }
}

/// Checks the identity for `key` with an explicitly supplied I-series, which
/// is regular-shifted to linear coefficient `s`. `series` must be known to
/// `t^(order+1)`.
pub fn verify_identity_with_series(
    key: FamilyKey,
    series: &TruncatedSeries,
    s: i64,
    c: i64,
    order: usize,
) -> Result<IdentityReport> {
    let d = key.descriptor();
    if d.reduction.is_some() {
        return Err(Error::InvalidArgument(format!("{key} is checked through its index-1 reduction")));
    }
    if series.order() < order + 1 {
        return Err(Error::InvalidArgument(format!(
            "series known to t^{}, need t^{}",
            series.order(),
            order + 1
        )));
    }
    let h = hauptmodul(&HauptmodulId::new(d.hauptmodul, rat(c)), order)?;
    let t = inverse_hauptmodul(&h)?;
    let shifted = series.truncate(order + 1).with_linear_coefficient(&rat(s));
    let lhs = shifted.compose(&t)?.truncate(order);
    let rhs = eta_product(&d.eta.exponents(), order).mul(&h.pow_rational(&d.exponent())?);
    if rhs.offset() != &rat(0) {
        return Err(Error::WrongOffset { expected: "0".into(), found: rhs.offset_over_24() });
    }
    let mismatch = first_mismatch(&lhs, rhs.body());
    Ok(IdentityReport {
        family: key,
        identity: IdentityKind::EtaProduct,
        hauptmodul: Some(d.hauptmodul.as_str()),
        s: Some(s),
        c: Some(c),
        order: order.min(rhs.order()),
        status: Status::from_bool(mismatch.is_none()),
        first_mismatch: mismatch,
        reduced_to: None,
    })
}

/// Checks the identity for `key` to q-order `order`. Index-2 families are
/// reduced by `t -> t^2` to their index-1 partner; the reduction itself is
/// checked first and a broken reduction is reported as the mismatch.
pub fn verify_identity(key: FamilyKey, s: i64, c: i64, order: usize) -> Result<IdentityReport> {
    let d = key.descriptor();
    match d.reduction {
        None => verify_identity_with_series(key, &iseries(key, order + 1), s, c, order),
        Some(partner) => {
            let even = iseries(key, 2 * (order + 1));
            let contracted = even.contract(2)?;
            let direct = iseries(partner, order + 1);
            let mut report = verify_identity_with_series(partner, &contracted, s, c, order)?;
            report.family = key;
            report.reduced_to = Some(partner);
            if let Some(m) = first_mismatch(&contracted, &direct) {
                report.status = Status::Fail;
                report.first_mismatch = Some(m);
            }
            Ok(report)
        }
    }
}

pub fn verify_default(key: FamilyKey, order: usize) -> Result<IdentityReport> {
    let (s, c) = default_parameters(key);
    verify_identity(key, s, c, order)
}

/// One report per integer `s` in `range`, each with `c = s + 1`.
pub fn sweep_free_shift(key: FamilyKey, range: RangeInclusive<i64>, order: usize) -> Result<Vec<IdentityReport>> {
    let d = key.descriptor();
    let rule = match d.shift {
        Shift::Free { .. } => d.constant,
        Shift::Fixed(_) => return Err(Error::InvalidArgument(format!("{key} has a fixed shift"))),
    };
    let series = iseries(key, order + 1);
    range
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|s| verify_identity_with_series(key, &series, s, rule.apply(s), order))
        .collect()
}

/// `(sum (6n)!/((3n)! n!^3) j^{-n})^2 = E4` through `q^order`.
pub fn verify_kachru_vafa(order: usize) -> Result<IdentityReport> {
    let root = kv_series(order)?;
    let lhs = root.mul(&root);
    let rhs = eisenstein_e4(order);
    Ok(level_one_report(IdentityKind::KachruVafa, &lhs, rhs.body(), order))
}

/// `j^{-1} (sum (6n)!/((3n)! n!^3) j^{-n})^6 = Delta` through `q^(order+1)`,
/// i.e. `order + 1` body coefficients.
pub fn verify_delta(order: usize) -> Result<IdentityReport> {
    let j = klein_j(order);
    let t = inverse_hauptmodul(&j)?;
    let root = iseries(FamilyKey::X6, order + 1).compose(&t)?;
    let lhs = QExpansion::from_series(rat(0), t.mul(&root.powi(6)?))?;
    let rhs = discriminant(order);
    if lhs.offset() != rhs.offset() {
        return Err(Error::IncompatibleOffsets(lhs.offset_over_24(), rhs.offset_over_24()));
    }
    Ok(level_one_report(IdentityKind::Delta, lhs.body(), rhs.body(), order))
}

/// `sum (6n)!/((3n)! n!^3) j^{-n}` as a series in `q`.
fn kv_series(order: usize) -> Result<TruncatedSeries> {
    let t = inverse_hauptmodul(&klein_j(order))?;
    Ok(iseries(FamilyKey::X6, order).compose(&t)?.truncate(order))
}

fn level_one_report(kind: IdentityKind, lhs: &TruncatedSeries, rhs: &TruncatedSeries, order: usize) -> IdentityReport {
    let mismatch = first_mismatch(lhs, rhs);
    IdentityReport {
        family: FamilyKey::X6,
        identity: kind,
        hauptmodul: Some("1A"),
        s: None,
        c: None,
        order: order.min(lhs.order()).min(rhs.order()),
        status: Status::from_bool(mismatch.is_none()),
        first_mismatch: mismatch,
        reduced_to: None,
    }
}

/// Families covered by the batch run, in canonical order.
pub const BATCH_FAMILIES: [FamilyKey; 8] = [
    FamilyKey::Y48_2,
    FamilyKey::Y48_3,
    FamilyKey::Y30,
    FamilyKey::Y28,
    FamilyKey::Y24,
    FamilyKey::Y20,
    FamilyKey::Y12_2,
    FamilyKey::Y12_3,
];

#[derive(Clone, Copy, Debug)]
enum Job {
    Family(FamilyKey),
    KachruVafa,
    Delta,
}

/// Every in-scope identity with default parameters, sorted canonically.
pub fn verify_all(order: usize) -> Result<Vec<IdentityReport>> {
    let mut jobs: Vec<Job> = BATCH_FAMILIES.iter().map(|&k| Job::Family(k)).collect();
    jobs.extend([Job::KachruVafa, Job::Delta]);
    let mut reports = jobs
        .into_par_iter()
        .map(|job| match job {
            Job::Family(key) => verify_default(key, order),
            Job::KachruVafa => verify_kachru_vafa(order),
            Job::Delta => verify_delta(order),
        })
        .collect::<Result<Vec<_>>>()?;
    reports.sort_by_key(IdentityReport::sort_key);
    Ok(reports)
}

#[cfg(test)]
mod tests {
    use super::*;

    const ORDER: usize = 30;

    #[test]
    fn table_rows_pass() {
        for key in BATCH_FAMILIES {
            let report = verify_default(key, ORDER).unwrap();
            assert!(report.passed(), "{report:?}");
        }
        let y30 = verify_default(FamilyKey::Y30, 10).unwrap();
        assert_eq!((y30.s, y30.c), (Some(3), Some(4)));
        let y48 = verify_default(FamilyKey::Y48_3, 10).unwrap();
        assert_eq!((y48.s, y48.c, y48.reduced_to), (Some(6), Some(14), Some(FamilyKey::Y12_3)));
    }

    #[test]
    fn x6_identity_passes() {
        let report = verify_identity(FamilyKey::X6, 120, 744, 20).unwrap();
        assert!(report.passed(), "{report:?}");
    }

    #[test]
    fn perturbed_parameters_fail() {
        for key in [FamilyKey::Y24, FamilyKey::Y20, FamilyKey::Y12_2, FamilyKey::Y30] {
            let (s, c) = default_parameters(key);
            for (ds, dc) in [(1, 0), (-1, 0), (0, 1), (0, -1)] {
                let report = verify_identity(key, s + ds, c + dc, ORDER).unwrap();
                assert!(!report.passed(), "{key} s={} c={}", s + ds, c + dc);
                assert_eq!(report.first_mismatch.as_ref().unwrap().index, 1);
            }
        }
        let report = verify_identity(FamilyKey::Y24, 4, 7, ORDER).unwrap();
        let m = report.first_mismatch.unwrap();
        assert_eq!((m.index, m.left.as_str(), m.right.as_str()), (1, "4", "9/2"));
    }

    #[test]
    fn perturbed_series_fails() {
        let key = FamilyKey::Y12_3;
        let base = iseries(key, ORDER + 1);
        for k in [2, 5, 17] {
            let mut bad = base.clone();
            bad.set_coeff(k, base.coeff(k) + rat(1));
            let report = verify_identity_with_series(key, &bad, 6, 14, ORDER).unwrap();
            assert_eq!(report.first_mismatch.map(|m| m.index), Some(k), "k={k}");
        }
    }

    #[test]
    fn free_shift_sweeps() {
        for report in sweep_free_shift(FamilyKey::Y28, 0..=3, ORDER).unwrap() {
            assert!(report.passed(), "{report:?}");
        }
        for report in sweep_free_shift(FamilyKey::Y30, -2..=5, 15).unwrap() {
            assert!(report.passed(), "{report:?}");
        }
        assert!(!verify_identity(FamilyKey::Y28, 1, 3, ORDER).unwrap().passed());
        assert!(sweep_free_shift(FamilyKey::Y24, 0..=1, 5).is_err());
    }

    #[test]
    fn level_one_identities() {
        let kv = verify_kachru_vafa(40).unwrap();
        assert!(kv.passed(), "{kv:?}");
        assert_eq!(kv.order, 40);
        let root = kv_series(3).unwrap();
        assert_eq!(root.mul(&root).coeff(1), &rat(240));
        let delta = verify_delta(40).unwrap();
        assert!(delta.passed(), "{delta:?}");
    }

    #[test]
    fn batch_is_sorted_and_complete() {
        let reports = verify_all(12).unwrap();
        assert_eq!(reports.len(), 10);
        assert!(reports.iter().all(IdentityReport::passed));
        assert_eq!(reports[0].family, FamilyKey::Y48_2);
        assert_eq!(reports[8].identity, IdentityKind::KachruVafa);
        assert_eq!(reports[9].identity, IdentityKind::Delta);
    }
}
