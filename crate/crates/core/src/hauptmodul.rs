//! Moonshine Hauptmoduln `T_{g,c} = 1/q + c + O(q)`, their inverses
//! `t = 1/H(q)` and the mirror maps `q(t)`.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::d3::catalog_operator;
use crate::error::{Error, Result};
use crate::eta::{eta_product, klein_j, EtaExponentMap};
use crate::qexp::QExpansion;
use crate::rational::{format_rational, rat, Rational};
use crate::series::TruncatedSeries;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum HauptmodulLabel {
    A1,
    A6,
    A10,
    A12,
    A14,
    A15,
}

impl HauptmodulLabel {
    pub const ALL: [HauptmodulLabel; 6] = [
        HauptmodulLabel::A1,
        HauptmodulLabel::A6,
        HauptmodulLabel::A10,
        HauptmodulLabel::A12,
        HauptmodulLabel::A14,
        HauptmodulLabel::A15,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            HauptmodulLabel::A1 => "1A",
            HauptmodulLabel::A6 => "6A",
            HauptmodulLabel::A10 => "10A",
            HauptmodulLabel::A12 => "12A",
            HauptmodulLabel::A14 => "14A",
            HauptmodulLabel::A15 => "15A",
        }
    }

    /// Constant term of the closed formula before renormalization.
    pub fn natural_constant(self) -> Rational {
        rat(match self {
            HauptmodulLabel::A1 => 744,
            HauptmodulLabel::A6 => 0,
            HauptmodulLabel::A10 => 4,
            HauptmodulLabel::A12 => 6,
            HauptmodulLabel::A14 => 1,
            HauptmodulLabel::A15 => 1,
        })
    }
}

impl fmt::Display for HauptmodulLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for HauptmodulLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        HauptmodulLabel::ALL
            .into_iter()
            .find(|l| l.as_str().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::UnknownLabel(s.to_string()))
    }
}

/// A Hauptmodul together with the normalization of its constant term.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HauptmodulId {
    pub label: HauptmodulLabel,
    pub constant: Rational,
}

impl HauptmodulId {
    pub fn new(label: HauptmodulLabel, constant: Rational) -> Self {
        HauptmodulId { label, constant }
    }

    pub fn natural(label: HauptmodulLabel) -> Self {
        HauptmodulId { label, constant: label.natural_constant() }
    }
}

/// `A + f + B/f` for an eta-quotient `f` with offset -1.
fn quotient_with_involution(
    exponents: &[(u32, i64)],
    shift: i64,
    partner: i64,
    order: usize,
) -> Result<QExpansion> {
    let m = EtaExponentMap::new(exponents.iter().copied())?;
    let f = eta_product(&m, order);
    let partner_term = f.inverse().scale(&rat(partner))?;
    QExpansion::constant(rat(shift), order + 1)?.add(&f)?.add(&partner_term)
}

fn eta_quotient_route(label: HauptmodulLabel, order: usize) -> Result<QExpansion> {
    match label {
        HauptmodulLabel::A10 => quotient_with_involution(
            &[(1, 4), (5, 4), (2, -4), (10, -4)],
            8,
            16,
            order,
        ),
        HauptmodulLabel::A12 => {
            let base = EtaExponentMap::new([(2, 2), (6, 2), (1, -1), (3, -1), (4, -1), (12, -1)])?;
            Ok(eta_product(&base, order).powi(6))
        }
        HauptmodulLabel::A14 => quotient_with_involution(
            &[(1, 3), (7, 3), (2, -3), (14, -3)],
            4,
            8,
            order,
        ),
        HauptmodulLabel::A15 => quotient_with_involution(
            &[(1, 2), (5, 2), (3, -2), (15, -2)],
            3,
            9,
            order,
        ),
        HauptmodulLabel::A1 | HauptmodulLabel::A6 => Err(Error::UnknownLabel(format!(
            "{label} has no eta-quotient formula"
        ))),
    }
}

/// Closed eta-quotient expansion for 10A, 12A, 14A and 15A, with the
/// printed constant term.
pub fn eta_quotient_hauptmodul(label: HauptmodulLabel, order: usize) -> Result<QExpansion> {
    eta_quotient_route(label, order)
}

/// `T_{6A}` solved from the functional equation of the `L6,2` solution with
/// shift 4 and eta-product `eta(q) eta(q^2) eta(q^3) eta(q^6)`.
pub fn identity_route_6a(order: usize) -> Result<QExpansion> {
    let f = catalog_operator("L6,2")?.holomorphic_solution(order + 1);
    let eta = EtaExponentMap::new([(1, 1), (2, 1), (3, 1), (6, 1)])?;
    let eta = eta_product(&eta, order + 1);
    let exponent = eta.offset().clone();
    solve_hauptmodul_from_identity(&f, &rat(4), None, &eta, &exponent, order)
}

/// `H_{g,c}` with body order `order` (i.e. known through `q^(order-1)`).
pub fn hauptmodul(id: &HauptmodulId, order: usize) -> Result<QExpansion> {
    let natural = match id.label {
        HauptmodulLabel::A1 => klein_j(order),
        HauptmodulLabel::A6 => identity_route_6a(order)?,
        other => eta_quotient_route(other, order)?,
    };
    renormalize_constant(&natural, &id.constant)
}

fn expect_offset_minus_one(h: &QExpansion) -> Result<()> {
    if h.offset() != &rat(-1) {
        return Err(Error::WrongOffset { expected: "-1".into(), found: format_rational(h.offset()) });
    }
    Ok(())
}

/// Replaces the `q^0` coefficient of a `1/q + ...` expansion.
pub fn renormalize_constant(h: &QExpansion, c: &Rational) -> Result<QExpansion> {
    expect_offset_minus_one(h)?;
    if h.order() < 1 {
        return Err(Error::InvalidArgument("expansion does not reach q^0".into()));
    }
    let mut body = h.body().clone();
    body.set_coeff(1, c.clone());
    QExpansion::new(h.offset().clone(), body)
}

/// `t = 1/H` as a power series in `q` with zero constant term.
pub fn inverse_hauptmodul(h: &QExpansion) -> Result<TruncatedSeries> {
    expect_offset_minus_one(h)?;
    Ok(h.body().inverse()?.mul_by_power(1))
}

/// `q(t)`: the compositional inverse of `t = 1/H(q)`.
pub fn mirror_map(h: &QExpansion, order: usize) -> Result<TruncatedSeries> {
    Ok(inverse_hauptmodul(h)?.reverse()?.truncate(order))
}

/// Solves `I(1/H) = eta * H^exponent` for `H = 1/q + c + sum h_k q^k`.
///
/// `series` is regular-shifted so that its linear coefficient is `shift`.
/// The equation is rewritten through the mirror map `Q(t) = t V(t)`:
/// `V^{-exponent} I(t) = B(t V(t))`, where `B` is the unit body of `eta`.
/// At `t^k` the unknown `V_k` enters only through `V^{-exponent}`, with pivot
/// `-exponent`; everything else depends on `V_0 .. V_{k-1}`. `H` is then
/// `1 / Q^{-1}(q)`.
///
/// If `constant` is given, the solved constant term must match it; otherwise
/// the identity fails at `q^1` and `InconsistentIdentity` is returned.
pub fn solve_hauptmodul_from_identity(
    series: &TruncatedSeries,
    shift: &Rational,
    constant: Option<&Rational>,
    eta: &QExpansion,
    exponent: &Rational,
    order: usize,
) -> Result<QExpansion> {
    if eta.offset() != exponent {
        return Err(Error::InvalidArgument(format!(
            "exponent {exponent} differs from the eta-product offset {}",
            eta.offset()
        )));
    }
    if exponent.is_zero() {
        return Err(Error::ZeroPivot(1));
    }
    let n = order + 1;
    if series.order() < n || eta.order() < n {
        return Err(Error::InvalidArgument(format!(
            "inputs must be known to order {n} (series {}, eta {})",
            series.order(),
            eta.order()
        )));
    }
    let unit = eta.body();
    if !series.coeff(0).is_one() || !unit.coeff(0).is_one() {
        return Err(Error::InconsistentIdentity {
            order: 0,
            detail: "both sides must start with 1".into(),
        });
    }
    let i_series = series.truncate(n).with_linear_coefficient(shift);
    let e = exponent;

    let mut v: Vec<Rational> = vec![Rational::one()];
    // p = V^{-e}
    let mut p: Vec<Rational> = vec![Rational::one()];
    // powers[j][m] = [t^m] V^j for j >= 2; powers[0], powers[1] unused.
    let mut powers: Vec<Vec<Rational>> = vec![Vec::new(), Vec::new()];

    for k in 1..=n {
        for j in 2..=k {
            let m = k - j;
            if powers.len() <= j {
                powers.push(Vec::new());
            }
            let value = {
                let prev: &[Rational] = if j == 2 { &v } else { &powers[j - 1] };
                (0..=m).fold(Rational::zero(), |acc, i| acc + &v[i] * &prev[m - i])
            };
            powers[j].push(value);
        }
        // [t^k] B(t V) = sum_j B_j [t^(k-j)] V^j
        let mut rhs = Rational::zero();
        for j in 1..=k {
            let b = unit.coeff(j);
            if b.is_zero() {
                continue;
            }
            let vj = if j == 1 { &v[k - 1] } else { &powers[j][k - j] };
            rhs += b * vj;
        }
        let kr = rat(k as i64);
        let mut rest = Rational::zero();
        for j in 1..k {
            let w = -(e * rat(j as i64)) - rat((k - j) as i64);
            rest += w * &v[j] * &p[k - j];
        }
        rest /= &kr;
        let mut known = rest.clone();
        for i in 1..=k {
            known += &p[k - i] * i_series.coeff(i);
        }
        let vk = (known - &rhs) / e;
        p.push(-(e * &vk) + rest);
        v.push(vk);
    }

    let mirror = TruncatedSeries::new(v).mul_by_power(1).truncate(n);
    let t_of_q = mirror.reverse()?;
    let body = t_of_q.div_by_power(1)?.inverse()?;
    let h = QExpansion::new(rat(-1), body)?;
    if let Some(c) = constant {
        if h.coeff(1) != c {
            return Err(Error::InconsistentIdentity {
                order: 1,
                detail: format!(
                    "shift {shift} forces constant term {}, requested {c}",
                    h.coeff(1)
                ),
            });
        }
    }
    Ok(h)
}

/// JSON form of a labelled Hauptmodul expansion.
#[derive(Serialize)]
pub struct LabelledExpansion<'a> {
    pub label: String,
    #[serde(flatten)]
    pub expansion: &'a QExpansion,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eta::EtaProductId;

    fn printed(label: HauptmodulLabel, c: i64, tail: &[i64]) {
        let h = hauptmodul(&HauptmodulId::new(label, rat(c)), tail.len() + 1).unwrap();
        assert_eq!(h.offset(), &rat(-1));
        let mut expected = vec![1, c];
        expected.extend_from_slice(tail);
        assert_eq!(h.body(), &TruncatedSeries::from_i64s(&expected, expected.len() - 1), "{label}");
    }

    #[test]
    fn printed_expansions() {
        printed(HauptmodulLabel::A10, 4, &[22, 56, 177, 352]);
        printed(HauptmodulLabel::A12, 6, &[15, 32, 87, 192]);
        printed(HauptmodulLabel::A14, 1, &[11, 20, 57, 92]);
        printed(HauptmodulLabel::A15, 1, &[8, 22, 42, 70]);
        printed(HauptmodulLabel::A6, 0, &[79, 352, 1431, 4160, 13015, 31968]);
        printed(HauptmodulLabel::A1, 744, &[196884, 21493760]);
    }

    #[test]
    fn renormalization() {
        let t0 = hauptmodul(&HauptmodulId::new(HauptmodulLabel::A6, rat(0)), 4).unwrap();
        let t10 = renormalize_constant(&t0, &rat(10)).unwrap();
        assert_eq!(t10.coeff(1), &rat(10));
        assert_eq!(t10.coeff(2), &rat(79));
        let twice = renormalize_constant(&renormalize_constant(&t0, &rat(3)).unwrap(), &rat(5)).unwrap();
        assert_eq!(twice.coeff(1), &rat(5));
        let j = klein_j(5);
        assert_eq!(renormalize_constant(&j, &rat(744)).unwrap(), j);
        let eta = crate::eta::eta(4);
        assert!(matches!(renormalize_constant(&eta, &rat(0)), Err(Error::WrongOffset { .. })));
    }

    #[test]
    fn inverse_examples() {
        let t = inverse_hauptmodul(&klein_j(4)).unwrap();
        assert_eq!(t.coeff(0), &rat(0));
        assert_eq!(t.coeff(1), &rat(1));
        assert_eq!(t.coeff(2), &rat(-744));
        let bare = QExpansion::new(rat(-1), TruncatedSeries::one(5)).unwrap();
        assert_eq!(inverse_hauptmodul(&bare).unwrap(), TruncatedSeries::variable(6));
        assert_eq!(mirror_map(&bare, 6).unwrap(), TruncatedSeries::variable(6));
        let h15 = hauptmodul(&HauptmodulId::new(HauptmodulLabel::A15, rat(1)), 5).unwrap();
        let t15 = inverse_hauptmodul(&h15).unwrap();
        assert_eq!(t15.coeff(1), &rat(1));
        assert_eq!(t15.coeff(2), &rat(-1));
    }

    #[test]
    fn mirror_map_inverts_inverse_hauptmodul() {
        let h = hauptmodul(&HauptmodulId::natural(HauptmodulLabel::A12), 20).unwrap();
        let t = inverse_hauptmodul(&h).unwrap();
        let q = mirror_map(&h, 20).unwrap();
        assert_eq!(t.compose(&q).unwrap(), TruncatedSeries::variable(20));
        assert!(q.is_integral());
    }

    #[test]
    fn solver_reproduces_6a_from_both_threefolds() {
        let eta = eta_product(&EtaProductId::Eta6Plus.exponents(), 10);
        let e = eta.offset().clone();
        let f62 = catalog_operator("L6,2").unwrap().holomorphic_solution(10);
        let f63 = catalog_operator("L6,3").unwrap().holomorphic_solution(10);
        let h2 = solve_hauptmodul_from_identity(&f62, &rat(4), Some(&rat(10)), &eta, &e, 9).unwrap();
        let h3 = solve_hauptmodul_from_identity(&f63, &rat(6), Some(&rat(14)), &eta, &e, 9).unwrap();
        assert_eq!(h2.coeff(1), &rat(10));
        assert_eq!(h3.coeff(1), &rat(14));
        for (k, v) in [79, 352, 1431].into_iter().enumerate() {
            assert_eq!(h2.coeff(k + 2), &rat(v));
            assert_eq!(h3.coeff(k + 2), &rat(v));
        }
    }

    #[test]
    fn solver_15a_with_shifted_constant() {
        let eta = eta_product(&EtaProductId::Eta15Plus.exponents(), 8);
        let f15 = catalog_operator("L15").unwrap().holomorphic_solution(8);
        let h = solve_hauptmodul_from_identity(&f15, &rat(1), Some(&rat(2)), &eta, &rat(1), 7).unwrap();
        let tail: Vec<Rational> = h.coeffs()[2..6].to_vec();
        assert_eq!(tail, vec![rat(8), rat(22), rat(42), rat(70)]);
    }

    #[test]
    fn solver_rejects_wrong_constant() {
        let eta = eta_product(&EtaProductId::Eta12Plus.exponents(), 8);
        let f12 = catalog_operator("L12").unwrap().holomorphic_solution(8);
        let e = eta.offset().clone();
        let err = solve_hauptmodul_from_identity(&f12, &rat(4), Some(&rat(7)), &eta, &e, 7).unwrap_err();
        assert!(matches!(err, Error::InconsistentIdentity { order: 1, .. }));
        let err = solve_hauptmodul_from_identity(&f12, &rat(4), None, &eta, &rat(1), 7).unwrap_err();
        assert!(matches!(err, Error::InvalidArgument(_)));
    }

    #[test]
    fn labels_parse() {
        assert_eq!("12a".parse::<HauptmodulLabel>().unwrap(), HauptmodulLabel::A12);
        assert!(matches!("7B".parse::<HauptmodulLabel>(), Err(Error::UnknownLabel(_))));
    }
}
