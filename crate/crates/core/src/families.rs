//! The G-Fano families: descriptors, closed-form I-series, G-series and the
//! relations between the two index-2 families and their index-1 partners.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::d3::catalog_operator;
use crate::error::{Error, Result};
use crate::eta::{sigma1, EtaProductId};
use crate::hauptmodul::HauptmodulLabel;
use crate::rational::{format_rational, frac, rat, Binomials, Factorials, Rational};
use crate::report::CheckReport;
use crate::series::{exp_series, ShiftConstant, TruncatedSeries};

#[allow(non_camel_case_types)]
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FamilyKey {
    Y48_2,
    Y48_3,
    Y30,
    Y28,
    Y24,
    Y20,
    Y12_2,
    Y12_3,
    X6,
}

impl FamilyKey {
    pub const ALL: [FamilyKey; 9] = [
        FamilyKey::Y48_2,
        FamilyKey::Y48_3,
        FamilyKey::Y30,
        FamilyKey::Y28,
        FamilyKey::Y24,
        FamilyKey::Y20,
        FamilyKey::Y12_2,
        FamilyKey::Y12_3,
        FamilyKey::X6,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            FamilyKey::Y48_2 => "Y48_2",
            FamilyKey::Y48_3 => "Y48_3",
            FamilyKey::Y30 => "Y30",
            FamilyKey::Y28 => "Y28",
            FamilyKey::Y24 => "Y24",
            FamilyKey::Y20 => "Y20",
            FamilyKey::Y12_2 => "Y12_2",
            FamilyKey::Y12_3 => "Y12_3",
            FamilyKey::X6 => "X6",
        }
    }

    pub fn descriptor(self) -> FamilyDescriptor {
        descriptor(self)
    }
}

impl fmt::Display for FamilyKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FamilyKey {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FamilyKey::ALL
            .into_iter()
            .find(|k| k.as_str().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::UnknownFamily(s.to_string()))
    }
}

impl Serialize for FamilyKey {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.as_str())
    }
}

/// The shift `s` in `I = L_s G`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Shift {
    Fixed(i64),
    /// Any `s` gives a modular relation. `canonical` is the shift of the
    /// printed I-series, when there is one.
    Free { canonical: Option<i64> },
}

/// How the Hauptmodul constant `c` depends on `s`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConstantRule {
    Fixed(i64),
    ShiftPlus(i64),
}

impl ConstantRule {
    pub fn apply(self, s: i64) -> i64 {
        match self {
            ConstantRule::Fixed(c) => c,
            ConstantRule::ShiftPlus(d) => s + d,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyDescriptor {
    pub key: FamilyKey,
    /// Half the degree for index one; the section pattern 6 for index two.
    pub n: u32,
    pub degree: u32,
    pub rho: u32,
    pub index: u32,
    pub shift: Shift,
    pub constant: ConstantRule,
    pub hauptmodul: HauptmodulLabel,
    pub eta: EtaProductId,
    /// Catalog key of the operator annihilating the normalized I-series.
    pub operator: Option<&'static str>,
    /// Index-1 family whose I-series becomes this one under `t -> t^2`.
    pub reduction: Option<FamilyKey>,
}

impl FamilyDescriptor {
    /// `sigma_1 / 24`, the exponent of `H` in the identity.
    pub fn exponent(&self) -> Rational {
        frac(sigma1(&self.eta.exponents()), 24)
    }

    /// Shift used when none is supplied: the fixed value, the printed one,
    /// or 0 (the normalized series) when the family has neither.
    pub fn default_shift(&self) -> i64 {
        match self.shift {
            Shift::Fixed(s) => s,
            Shift::Free { canonical } => canonical.unwrap_or(0),
        }
    }

    pub fn default_constant(&self) -> i64 {
        self.constant.apply(self.default_shift())
    }

    pub fn summary(&self) -> DescriptorSummary {
        DescriptorSummary {
            key: self.key,
            n: self.n,
            degree: self.degree,
            rho: self.rho,
            index: self.index,
            shift: match self.shift {
                Shift::Fixed(s) => s.to_string(),
                Shift::Free { .. } => "FREE".into(),
            },
            // Index-2 identities are stated through the reduction.
            constant: match (self.reduction, self.constant) {
                (Some(_), _) => "-".into(),
                (None, ConstantRule::Fixed(c)) => c.to_string(),
                (None, ConstantRule::ShiftPlus(d)) => format!("s+{d}"),
            },
            hauptmodul: self.hauptmodul.as_str(),
            eta: self.eta.label(),
            exponent: format_rational(&self.exponent()),
            operator: self.operator,
            reduction: self.reduction,
        }
    }
}

/// Flat, printable view of a descriptor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DescriptorSummary {
    pub key: FamilyKey,
    #[serde(rename = "N")]
    pub n: u32,
    pub degree: u32,
    pub rho: u32,
    pub index: u32,
    pub shift: String,
    pub constant: String,
    pub hauptmodul: &'static str,
    pub eta: &'static str,
    pub exponent: String,
    pub operator: Option<&'static str>,
    pub reduction: Option<FamilyKey>,
}

#[allow(clippy::too_many_arguments)]
fn row(
    key: FamilyKey,
    n: u32,
    degree: u32,
    rho: u32,
    shift: Shift,
    constant: ConstantRule,
    hauptmodul: HauptmodulLabel,
    eta: EtaProductId,
    operator: Option<&'static str>,
) -> FamilyDescriptor {
    FamilyDescriptor { key, n, degree, rho, index: 1, shift, constant, hauptmodul, eta, operator, reduction: None }
}

fn descriptor(key: FamilyKey) -> FamilyDescriptor {
    use ConstantRule::{Fixed as C, ShiftPlus};
    use EtaProductId::*;
    use FamilyKey::*;
    use HauptmodulLabel::*;
    use Shift::{Fixed as S, Free};
    match key {
        X6 => row(X6, 1, 2, 1, S(120), C(744), A1, Level1, None),
        Y12_3 => row(Y12_3, 6, 12, 3, S(6), C(14), A6, Eta6Plus, Some("L6,3")),
        Y12_2 => row(Y12_2, 6, 12, 2, S(4), C(10), A6, Eta6Plus, Some("L6,2")),
        Y20 => row(Y20, 10, 20, 2, S(2), C(4), A10, Eta10Plus, Some("L10")),
        Y24 => row(Y24, 12, 24, 4, S(4), C(6), A12, Eta12Plus, Some("L12")),
        Y28 => row(Y28, 14, 28, 2, Free { canonical: None }, ShiftPlus(1), A14, Eta14Plus, Some("L14")),
        Y30 => row(Y30, 15, 30, 3, Free { canonical: Some(3) }, ShiftPlus(1), A15, Eta15Plus, Some("L15")),
        Y48_2 | Y48_3 => {
            let partner = if key == Y48_2 { Y12_2 } else { Y12_3 };
            let base = descriptor(partner);
            FamilyDescriptor {
                key,
                degree: 48,
                index: 2,
                shift: S(0),
                operator: None,
                reduction: Some(partner),
                ..base
            }
        }
    }
}

pub fn descriptors() -> Vec<FamilyDescriptor> {
    FamilyKey::ALL.into_iter().map(descriptor).collect()
}

fn generate<F>(order: usize, coeff: F) -> TruncatedSeries
where
    F: Fn(usize) -> BigUint + Sync + Send,
{
    let coeffs: Vec<BigUint> = (0..=order).into_par_iter().map(coeff).collect();
    TruncatedSeries::from_integers(coeffs.into_iter().map(Into::into))
}

/// Coefficients `sum_a C(k,a)^4`.
fn i10(order: usize) -> TruncatedSeries {
    let b = Binomials::up_to(order);
    generate(order, |k| (0..=k).map(|a| b.get_ref(k, a).pow(4)).sum())
}

/// `sum_{a+b+c+d=k} multinomial^2`, grouped as `(a+b) + (c+d)`.
fn i12(order: usize) -> TruncatedSeries {
    let b = Binomials::up_to(2 * order);
    generate(order, |k| {
        (0..=k)
            .map(|m| {
                let outer = b.get_ref(k, m);
                outer * outer * b.get_ref(2 * m, m) * b.get_ref(2 * (k - m), k - m)
            })
            .sum()
    })
}

/// `C(2k,k) sum_a C(k,a)^3`.
fn i6_2(order: usize) -> TruncatedSeries {
    let b = Binomials::up_to(2 * order);
    generate(order, |k| b.get_ref(2 * k, k) * (0..=k).map(|a| b.get_ref(k, a).pow(3)).sum::<BigUint>())
}

/// `C(2k,k) sum_{a+b+c=k} multinomial^2`, grouped as `a + (b+c)`.
fn i6_3(order: usize) -> TruncatedSeries {
    let b = Binomials::up_to(2 * order);
    generate(order, |k| {
        let inner: BigUint = (0..=k)
            .map(|a| {
                let outer = b.get_ref(k, a);
                outer * outer * b.get_ref(2 * (k - a), k - a)
            })
            .sum();
        b.get_ref(2 * k, k) * inner
    })
}

/// `sum_{a+b+c=k} C(a+b,a) C(a+c,a) C(b+c,b) k!/(a! b! c!)`.
fn i15(order: usize) -> TruncatedSeries {
    let b = Binomials::up_to(order);
    generate(order, |k| {
        let mut total = BigUint::zero();
        for a in 0..=k {
            for bb in 0..=k - a {
                let c = k - a - bb;
                total += b.get_ref(a + bb, a)
                    * b.get_ref(a + c, a)
                    * b.get_ref(bb + c, bb)
                    * b.get_ref(k, a)
                    * b.get_ref(k - a, bb);
            }
        }
        total
    })
}

/// `(6n)! / ((3n)! n!^3)`.
fn x6(order: usize) -> TruncatedSeries {
    let f = Factorials::up_to(6 * order);
    generate(order, |n| f.get(6 * n) / (f.get(3 * n) * f.get(n).pow(3)))
}

/// `sum_{a+b=k} (a+b)! (2a+2b)! / (a!^3 b!^3)` placed at `t^{2k}`.
fn i6_2_even(order: usize) -> TruncatedSeries {
    let f = Factorials::up_to(order);
    generate(order, |n| {
        if n % 2 == 1 {
            return BigUint::zero();
        }
        let k = n / 2;
        let num = f.get(k) * f.get(2 * k);
        (0..=k).map(|a| &num / (f.get(a).pow(3) * f.get(k - a).pow(3))).sum()
    })
}

/// `sum_{a+b+c=k} (2a+2b+2c)! / (a! b! c!)^2` placed at `t^{2k}`.
fn i6_3_even(order: usize) -> TruncatedSeries {
    let f = Factorials::up_to(order);
    generate(order, |n| {
        if n % 2 == 1 {
            return BigUint::zero();
        }
        let k = n / 2;
        let mut total = BigUint::zero();
        for a in 0..=k {
            for b in 0..=k - a {
                let denom = f.get(a) * f.get(b) * f.get(k - a - b);
                total += f.get(2 * k) / (&denom * &denom);
            }
        }
        total
    })
}

/// The I-series of a family through `t^order`.
pub fn iseries(key: FamilyKey, order: usize) -> TruncatedSeries {
    match key {
        FamilyKey::Y20 => i10(order),
        FamilyKey::Y24 => i12(order),
        FamilyKey::Y12_2 => i6_2(order),
        FamilyKey::Y12_3 => i6_3(order),
        FamilyKey::Y30 => i15(order),
        FamilyKey::Y28 => catalog_operator("L14").expect("L14 is in the catalog").holomorphic_solution(order),
        FamilyKey::X6 => x6(order),
        FamilyKey::Y48_2 => i6_2_even(order),
        FamilyKey::Y48_3 => i6_3_even(order),
    }
}

/// Same as [`iseries`], addressed by string key.
pub fn iseries_by_name(key: &str, order: usize) -> Result<TruncatedSeries> {
    Ok(iseries(key.parse()?, order))
}

/// `G = e^{-s t} L^{-1}(I)` for the family's canonical shift.
pub fn gseries(key: FamilyKey, order: usize) -> Result<TruncatedSeries> {
    let s = match descriptor(key).shift {
        Shift::Fixed(s) | Shift::Free { canonical: Some(s) } => s,
        Shift::Free { canonical: None } => return Err(Error::FreeShift(key.to_string())),
    };
    let g = exp_series(&rat(-s), order).mul(&iseries(key, order).inverse_laplace());
    debug_assert!(order < 1 || g.coeff(1).is_zero(), "{key}: G has a linear term");
    Ok(g)
}

/// The `t^2` coefficient of the G-series.
pub fn givental_constant(key: FamilyKey) -> Result<Rational> {
    Ok(gseries(key, 2)?.coeff(2).clone())
}

/// `I_{6,r;2}(t) = I_{6,r}(t^2)` for r = 2, 3.
pub fn check_even_substitution(order: usize) -> Vec<CheckReport> {
    [(FamilyKey::Y48_2, FamilyKey::Y12_2), (FamilyKey::Y48_3, FamilyKey::Y12_3)]
        .into_iter()
        .map(|(even, base)| {
            let lhs = iseries(even, order);
            let rhs = iseries(base, order / 2).dilate(2).truncate(order);
            CheckReport::compare(format!("{even}(t) = {base}(t^2)"), &lhs, &rhs)
        })
        .collect()
}

fn even_gseries(key: FamilyKey, order: usize) -> TruncatedSeries {
    gseries(key, 2 * order)
        .and_then(|g| g.contract(2))
        .expect("index-2 G-series are even with a fixed shift")
}

/// `G_{Y48_3}(sqrt x) = G_{Y48_2}(sqrt x) e^x`, compared in `x` through
/// `x^order`. With `G = L^{-1} I` in `t` this agrees at `x^0` and `x^1` only;
/// see [`check_exp_relation_regularized`].
pub fn check_exp_relation(order: usize) -> CheckReport {
    let g2 = even_gseries(FamilyKey::Y48_2, order);
    let g3 = even_gseries(FamilyKey::Y48_3, order);
    let rhs = g2.mul(&exp_series(&Rational::one(), order));
    CheckReport::compare("G_Y48_3(sqrt x) = G_Y48_2(sqrt x) e^x", &g3, &rhs)
}

/// The form of the relation that holds exactly: after Laplace transform in
/// `x = t^2`, `L_x G_{Y48_3}(sqrt x) = e^x L_x G_{Y48_2}(sqrt x)`.
pub fn check_exp_relation_regularized(order: usize) -> CheckReport {
    let g2 = even_gseries(FamilyKey::Y48_2, order).laplace();
    let g3 = even_gseries(FamilyKey::Y48_3, order).laplace();
    let rhs = g2.mul(&exp_series(&Rational::one(), order));
    CheckReport::compare("L_x G_Y48_3(sqrt x) = e^x L_x G_Y48_2(sqrt x)", &g3, &rhs)
}

/// `L_s` applied to a G-series, i.e. the I-series with shift `s`.
pub fn shifted_iseries(g: &TruncatedSeries, s: i64) -> TruncatedSeries {
    g.shifted_laplace(&ShiftConstant::integer(s))
}

/// Integer view of a coefficient, for display and the integrality checks.
pub fn as_integer(c: &Rational) -> Option<BigUint> {
    (c.is_integer() && c >= &Rational::zero()).then(|| c.to_integer().to_biguint().expect("non-negative"))
}
