//! Dedekind eta, eta-products and the level-one forms `E4`, `Delta`, `j`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::qexp::QExpansion;
use crate::rational::{frac, rat, Rational};
use crate::series::TruncatedSeries;

/// Exponents `a_i` of `prod_i eta(q^i)^{a_i}`. Negative entries give
/// eta-quotients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct EtaExponentMap(BTreeMap<u32, i64>);

impl EtaExponentMap {
    pub fn new<I: IntoIterator<Item = (u32, i64)>>(pairs: I) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (i, a) in pairs {
            if i == 0 {
                return Err(Error::InvalidArgument("eta(q^0) is undefined".into()));
            }
            *map.entry(i).or_insert(0) += a;
        }
        map.retain(|_, a| *a != 0);
        Ok(EtaExponentMap(map))
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, i64)> + '_ {
        self.0.iter().map(|(&i, &a)| (i, a))
    }

    pub fn exponent(&self, i: u32) -> i64 {
        self.0.get(&i).copied().unwrap_or(0)
    }

    /// `sum_i i * a_i`, i.e. 24 times the leading exponent.
    pub fn weighted_degree(&self) -> i64 {
        self.iter().map(|(i, a)| i as i64 * a).sum()
    }

    /// Leading exponent of the product in q.
    pub fn valuation(&self) -> Rational {
        frac(self.weighted_degree(), 24)
    }

    /// Half the total exponent, the modular weight of the product.
    pub fn weight(&self) -> Rational {
        frac(self.iter().map(|(_, a)| a).sum(), 2)
    }
}

impl fmt::Display for EtaExponentMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.iter().map(|(i, a)| format!("{i}^{a}")).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// The eta-products attached to the G-Fano identities.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EtaProductId {
    /// `eta(q)^4 = eta(q)^2 eta(q^N)^2` at N = 1.
    Level1,
    Eta6Plus,
    Eta10Plus,
    Eta12Plus,
    Eta14Plus,
    Eta15Plus,
}

impl EtaProductId {
    pub const ALL: [EtaProductId; 6] = [
        EtaProductId::Level1,
        EtaProductId::Eta6Plus,
        EtaProductId::Eta10Plus,
        EtaProductId::Eta12Plus,
        EtaProductId::Eta14Plus,
        EtaProductId::Eta15Plus,
    ];

    pub fn exponents(self) -> EtaExponentMap {
        let pairs: &[(u32, i64)] = match self {
            EtaProductId::Level1 => &[(1, 4)],
            EtaProductId::Eta6Plus => &[(1, 1), (2, 1), (3, 1), (6, 1)],
            EtaProductId::Eta10Plus => &[(1, 1), (2, 1), (5, 1), (10, 1)],
            EtaProductId::Eta12Plus => &[(1, -1), (2, 4), (3, -1), (4, -1), (6, 4), (12, -1)],
            EtaProductId::Eta14Plus => &[(1, 1), (2, 1), (7, 1), (14, 1)],
            EtaProductId::Eta15Plus => &[(1, 1), (3, 1), (5, 1), (15, 1)],
        };
        EtaExponentMap::new(pairs.iter().copied()).expect("static eta exponents are valid")
    }

    pub fn label(self) -> &'static str {
        match self {
            EtaProductId::Level1 => "1+",
            EtaProductId::Eta6Plus => "6+",
            EtaProductId::Eta10Plus => "10+",
            EtaProductId::Eta12Plus => "12+",
            EtaProductId::Eta14Plus => "14+",
            EtaProductId::Eta15Plus => "15+",
        }
    }

    pub fn from_label(label: &str) -> Result<Self> {
        EtaProductId::ALL
            .into_iter()
            .find(|id| id.label() == label.trim_start_matches("eta"))
            .ok_or_else(|| Error::Parse(format!("unknown eta-product `{label}`")))
    }
}

/// 24 times the leading exponent of the eta-product. This is the exponent
/// `sigma_1` for which `eta_{n+} * H^{sigma_1/24}` has offset zero.
pub fn sigma1(m: &EtaExponentMap) -> i64 {
    m.weighted_degree()
}

/// Signed generalized pentagonal numbers `(k(3k-1)/2, (-1)^k)` for
/// `k = 0, 1, -1, 2, -2, ...`, up to `order`.
fn pentagonal_terms(order: usize) -> Vec<(usize, i64)> {
    let mut terms = vec![(0, 1)];
    for k in 1usize.. {
        let sign = if k % 2 == 0 { 1 } else { -1 };
        let low = k * (3 * k - 1) / 2;
        if low > order {
            break;
        }
        terms.push((low, sign));
        let high = k * (3 * k + 1) / 2;
        if high <= order {
            terms.push((high, sign));
        }
    }
    terms
}

/// `prod_{n >= 1} (1 - q^{factor * n})` to the given order, by Euler's
/// pentagonal number theorem.
pub fn euler_product_dilated(factor: usize, order: usize) -> TruncatedSeries {
    assert!(factor >= 1);
    let mut coeffs = vec![Rational::zero(); order + 1];
    for (n, sign) in pentagonal_terms(order / factor) {
        coeffs[n * factor] = rat(sign);
    }
    TruncatedSeries::new(coeffs)
}

/// `prod_{n >= 1} (1 - q^n)`.
pub fn euler_product(order: usize) -> TruncatedSeries {
    euler_product_dilated(1, order)
}

/// `eta(q) = q^{1/24} prod (1 - q^n)`.
pub fn eta(order: usize) -> QExpansion {
    QExpansion::new(frac(1, 24), euler_product(order)).expect("unit body")
}

/// `prod_i eta(q^i)^{a_i}` with relative precision `order`.
pub fn eta_product(m: &EtaExponentMap, order: usize) -> QExpansion {
    let mut body = TruncatedSeries::one(order);
    for (i, a) in m.iter() {
        let factor = euler_product_dilated(i as usize, order)
            .powi(a)
            .expect("eta body is a unit");
        body = body.mul(&factor);
    }
    QExpansion::new(m.valuation(), body).expect("unit body")
}

/// Divisor power sum `sum_{d | n} d^k`.
pub fn divisor_sigma(n: u64, k: u32) -> BigInt {
    let mut total = BigInt::zero();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            total += BigInt::from(d).pow(k);
            let other = n / d;
            if other != d {
                total += BigInt::from(other).pow(k);
            }
        }
        d += 1;
    }
    total
}

/// `E4 = 1 + 240 sum sigma_3(n) q^n`.
pub fn eisenstein_e4(order: usize) -> QExpansion {
    let mut coeffs = vec![rat(1)];
    coeffs.extend((1..=order as u64).map(|n| Rational::from_integer(divisor_sigma(n, 3) * 240)));
    QExpansion::new(Rational::zero(), TruncatedSeries::new(coeffs)).expect("unit body")
}

/// `Delta = eta^24`, offset 1.
pub fn discriminant(order: usize) -> QExpansion {
    QExpansion::new(rat(1), euler_product(order).powi(24).expect("unit body")).expect("unit body")
}

/// Klein's `j = E4^3 / Delta`, offset -1.
pub fn klein_j(order: usize) -> QExpansion {
    eisenstein_e4(order).powi(3).div(&discriminant(order))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Direct truncated product of the factors `(1 - q^n)`.
    fn naive_euler_product(order: usize) -> TruncatedSeries {
        let mut acc = TruncatedSeries::one(order);
        for n in 1..=order {
            let mut factor = TruncatedSeries::one(order);
            factor.set_coeff(n, rat(-1));
            acc = acc.mul(&factor);
        }
        acc
    }

    #[test]
    fn eta_body_prefix() {
        let e = eta(10);
        assert_eq!(e.offset(), &frac(1, 24));
        assert_eq!(
            e.body(),
            &TruncatedSeries::from_i64s(&[1, -1, -1, 0, 0, 1, 0, 1, 0, 0, 0], 10)
        );
    }

    #[test]
    fn pentagonal_matches_naive_product() {
        assert_eq!(euler_product(120).coeffs(), naive_euler_product(120).coeffs());
    }

    #[test]
    fn dilation_matches_series_dilation() {
        let direct = euler_product_dilated(3, 40);
        let dilated = euler_product(13).dilate(3);
        assert_eq!(direct, dilated);
    }

    #[test]
    fn discriminant_prefix() {
        let delta = discriminant(4);
        assert_eq!(delta.offset(), &rat(1));
        let naive = naive_euler_product(4).powi(24).unwrap();
        assert_eq!(delta.body(), &naive);
        assert_eq!(delta.body(), &TruncatedSeries::from_i64s(&[1, -24, 252, -1472, 4830], 4));
        assert_eq!(eta(8).powi(24), discriminant(8));
    }

    #[test]
    fn e4_and_j_prefixes() {
        assert_eq!(eisenstein_e4(2).body(), &TruncatedSeries::from_i64s(&[1, 240, 2160], 2));
        let j = klein_j(3);
        assert_eq!(j.offset(), &rat(-1));
        assert_eq!(j.body(), &TruncatedSeries::from_i64s(&[1, 744, 196884, 21493760], 3));
    }

    #[test]
    fn e4_cubed_equals_j_delta() {
        let lhs = eisenstein_e4(40).powi(3);
        let rhs = klein_j(40).mul(&discriminant(40));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn named_offsets_and_sigma1() {
        let expected = [
            (EtaProductId::Eta6Plus, 12, frac(1, 2)),
            (EtaProductId::Eta10Plus, 18, frac(3, 4)),
            (EtaProductId::Eta12Plus, 12, frac(1, 2)),
            (EtaProductId::Eta14Plus, 24, rat(1)),
            (EtaProductId::Eta15Plus, 24, rat(1)),
            (EtaProductId::Level1, 4, frac(1, 6)),
        ];
        for (id, s1, offset) in expected {
            let m = id.exponents();
            assert_eq!(sigma1(&m), s1, "{id:?}");
            assert_eq!(eta_product(&m, 5).offset(), &offset, "{id:?}");
            assert_eq!(EtaProductId::from_label(id.label()).unwrap(), id);
        }
    }

    #[test]
    fn integer_weight_products_are_integral() {
        for id in EtaProductId::ALL {
            let m = id.exponents();
            assert!(eta_product(&m, 60).is_integral(), "{id:?}");
        }
    }

    #[test]
    fn exponent_map_merges_and_drops_zeros() {
        let m = EtaExponentMap::new([(2, 3), (2, -3), (1, 1)]).unwrap();
        assert_eq!(m.to_string(), "1^1");
        assert!(EtaExponentMap::new([(0, 1)]).is_err());
        assert_eq!(EtaProductId::Eta12Plus.exponents().weight(), rat(2));
    }
}
