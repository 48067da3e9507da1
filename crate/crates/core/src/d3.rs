//! Normalized third-order operators
//!
//! `L = D^3 - t b1 D(D+1)(2D+1) - t^2 (D+1)(b2 D(D+2) + 4 b3)
//!        - t^3 b4 (D+1)(D+2)(2D+3) - t^4 b5 (D+1)(D+2)(D+3)`
//!
//! with `D = t d/dt`, and their analytic solutions at `t = 0`.

use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::{format_rational, parse_rational, rat, Rational};
use crate::series::TruncatedSeries;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct D3Operator {
    pub b: [Rational; 5],
}

/// The same operator in the original `(a01, a02, a03, a11, a12)` coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ABasis {
    pub a01: Rational,
    pub a02: Rational,
    pub a03: Rational,
    pub a11: Rational,
    pub a12: Rational,
}

impl D3Operator {
    pub fn new(b: [Rational; 5]) -> Self {
        D3Operator { b }
    }

    pub fn from_i64s(b: [i64; 5]) -> Self {
        D3Operator { b: b.map(rat) }
    }

    pub fn from_a_basis(a: &ABasis) -> Self {
        let b1 = a.a11.clone();
        let b2 = &a.a12 + rat(2) * &a.a01 - &a.a11 * &a.a11;
        let b3 = a.a01.clone();
        let b4 = &a.a02 - &a.a01 * &a.a11;
        let b5 = &a.a03 - &a.a01 * &a.a01;
        D3Operator { b: [b1, b2, b3, b4, b5] }
    }

    pub fn to_a_basis(&self) -> ABasis {
        let [b1, b2, b3, b4, b5] = &self.b;
        ABasis {
            a01: b3.clone(),
            a02: b4 + b1 * b3,
            a03: b5 + b3 * b3,
            a11: b1.clone(),
            a12: b2 - rat(2) * b3 + b1 * b1,
        }
    }

    /// Coefficient of `t^m` in `L f`, from `c_{m-4} .. c_m`.
    fn image_coeff(&self, f: &TruncatedSeries, m: usize) -> Rational {
        let [b1, b2, b3, b4, b5] = &self.b;
        let mi = m as i64;
        let c = |k: usize| f.coeff(k);
        let mut out = rat(mi * mi * mi) * c(m);
        if m >= 1 {
            // t * b1 D(D+1)(2D+1) at D = m-1
            out -= b1 * rat((mi - 1) * mi * (2 * mi - 1)) * c(m - 1);
        }
        if m >= 2 {
            // t^2 (D+1)(b2 D(D+2) + 4 b3) at D = m-2
            let d = mi - 2;
            out -= rat(d + 1) * (b2 * rat(d * (d + 2)) + rat(4) * b3) * c(m - 2);
        }
        if m >= 3 {
            let d = mi - 3;
            out -= b4 * rat((d + 1) * (d + 2) * (2 * d + 3)) * c(m - 3);
        }
        if m >= 4 {
            let d = mi - 4;
            out -= b5 * rat((d + 1) * (d + 2) * (d + 3)) * c(m - 4);
        }
        out
    }

    /// `L f`. Each output coefficient only looks at lower-or-equal input
    /// indices, so the result has the same order as `f`.
    pub fn apply(&self, f: &TruncatedSeries) -> TruncatedSeries {
        TruncatedSeries::new((0..=f.order()).map(|m| self.image_coeff(f, m)).collect())
    }

    /// The analytic solution with constant term 1:
    ///
    /// `n^3 c_n = b1 n(n-1)(2n-1) c_{n-1} + (n-1)(b2 n(n-2) + 4 b3) c_{n-2}
    ///          + b4 (n-1)(n-2)(2n-3) c_{n-3} + b5 (n-1)(n-2)(n-3) c_{n-4}`.
    pub fn holomorphic_solution(&self, order: usize) -> TruncatedSeries {
        let [b1, b2, b3, b4, b5] = &self.b;
        let mut c: Vec<Rational> = Vec::with_capacity(order + 1);
        c.push(rat(1));
        for n in 1..=order {
            let ni = n as i64;
            let mut acc = b1 * rat(ni * (ni - 1) * (2 * ni - 1)) * &c[n - 1];
            if n >= 2 {
                acc += rat(ni - 1) * (b2 * rat(ni * (ni - 2)) + rat(4) * b3) * &c[n - 2];
            }
            if n >= 3 {
                acc += b4 * rat((ni - 1) * (ni - 2) * (2 * ni - 3)) * &c[n - 3];
            }
            if n >= 4 {
                acc += b5 * rat((ni - 1) * (ni - 2) * (ni - 3)) * &c[n - 4];
            }
            c.push(acc / rat(ni * ni * ni));
        }
        TruncatedSeries::new(c)
    }

    pub fn annihilates(&self, f: &TruncatedSeries) -> bool {
        self.apply(f).coeffs().iter().all(Zero::is_zero)
    }
}

impl fmt::Display for D3Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.b.iter().map(format_rational).collect();
        write!(f, "L({})", parts.join(", "))
    }
}

#[derive(Serialize, Deserialize)]
struct OperatorJson {
    b: Vec<String>,
}

impl Serialize for D3Operator {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        OperatorJson { b: self.b.iter().map(format_rational).collect() }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for D3Operator {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = OperatorJson::deserialize(deserializer)?;
        let values = raw
            .b
            .iter()
            .map(|v| parse_rational(v))
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        let b: [Rational; 5] = values
            .try_into()
            .map_err(|v: Vec<Rational>| D::Error::custom(format!("expected 5 parameters, got {}", v.len())))?;
        Ok(D3Operator { b })
    }
}

/// Named operators matched to the G-Fano families.
pub const CATALOG: [(&str, [i64; 5]); 6] = [
    ("L6,2", [6, 368, 88, 1056, 3584]),
    ("L6,3", [8, 360, 108, 864, 2160]),
    ("L10", [2, 112, 28, 184, 336]),
    ("L12", [2, 80, 24, 96, 0]),
    ("L14", [1, 59, 16, 68, 80]),
    ("L15", [1, 43, 12, 78, 216]),
];

pub fn catalog_operator(key: &str) -> Result<D3Operator> {
    CATALOG
        .iter()
        .find(|(name, _)| *name == key)
        .map(|(_, b)| D3Operator::from_i64s(*b))
        .ok_or_else(|| Error::UnknownOperator(key.to_string()))
}

pub fn catalog() -> impl Iterator<Item = (&'static str, D3Operator)> {
    CATALOG.iter().map(|(name, b)| (*name, D3Operator::from_i64s(*b)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ints(values: &[i64]) -> TruncatedSeries {
        TruncatedSeries::from_i64s(values, values.len() - 1)
    }

    #[test]
    fn basis_change_examples() {
        let zero = ABasis { a01: rat(0), a02: rat(0), a03: rat(0), a11: rat(0), a12: rat(0) };
        assert_eq!(D3Operator::from_a_basis(&zero), D3Operator::from_i64s([0; 5]));
        let a = catalog_operator("L12").unwrap().to_a_basis();
        assert_eq!(
            [a.a01.clone(), a.a02.clone(), a.a03.clone(), a.a11.clone(), a.a12.clone()],
            [rat(24), rat(144), rat(576), rat(2), rat(36)]
        );
        assert_eq!(D3Operator::from_a_basis(&a), catalog_operator("L12").unwrap());
    }

    #[test]
    fn apply_to_constant() {
        // Only the t^2, t^3, t^4 terms survive on a constant: D kills it.
        let op = D3Operator::from_i64s([3, 5, 7, 11, 13]);
        let image = op.apply(&TruncatedSeries::one(5));
        assert_eq!(image, ints(&[0, 0, -28, -66, -78, 0]));
    }

    #[test]
    fn apply_to_t() {
        // D^3 t = t; t*b1 D(D+1)(2D+1) t = 6 b1 t^2; t^2 (D+1)(b2*3 + 4 b3) t = 2(3 b2 + 4 b3) t^3.
        let op = D3Operator::from_i64s([3, 5, 7, 11, 13]);
        let image = op.apply(&TruncatedSeries::variable(5));
        assert_eq!(image, ints(&[0, 1, -18, -86, -11 * 2 * 3 * 5, -13 * 24]));
    }

    #[test]
    fn printed_solutions() {
        let cases: [(&str, &[i64]); 6] = [
            ("L6,2", &[1, 0, 44, 528, 11292, 228000, 4999040, 112654080]),
            ("L6,3", &[1, 0, 54, 672, 15642, 336960, 7919460, 191177280]),
            ("L10", &[1, 0, 14, 72, 882, 8400, 95180, 1060080]),
            ("L12", &[1, 0, 12, 48, 540, 4320, 42240, 403200]),
            ("L14", &[1, 0, 8, 24, 240, 1440, 11960, 89040]),
            ("L15", &[1, 0, 6, 24, 162, 1080, 7620, 55440]),
        ];
        for (key, printed) in cases {
            let f = catalog_operator(key).unwrap().holomorphic_solution(7);
            assert_eq!(f, ints(printed), "{key}");
        }
    }

    #[test]
    fn catalog_solutions_are_annihilated_and_integral() {
        for (key, op) in catalog() {
            let f = op.holomorphic_solution(60);
            assert!(op.annihilates(&f), "{key}");
            assert!(f.is_integral(), "{key}");
            assert!(f.coeff(1).is_zero(), "{key}");
        }
    }

    #[test]
    fn operator_json() {
        let op = catalog_operator("L6,2").unwrap();
        let text = serde_json::to_string(&op).unwrap();
        assert_eq!(text, r#"{"b":["6","368","88","1056","3584"]}"#);
        assert_eq!(serde_json::from_str::<D3Operator>(&text).unwrap(), op);
        assert!(serde_json::from_str::<D3Operator>(r#"{"b":["1"]}"#).is_err());
        assert!(matches!(catalog_operator("L7"), Err(Error::UnknownOperator(_))));
    }

    proptest! {
        #[test]
        fn basis_roundtrip(v in proptest::array::uniform5(-500i64..500)) {
            let op = D3Operator::from_i64s(v);
            prop_assert_eq!(D3Operator::from_a_basis(&op.to_a_basis()), op);
            let a = ABasis { a01: rat(v[0]), a02: rat(v[1]), a03: rat(v[2]), a11: rat(v[3]), a12: rat(v[4]) };
            prop_assert_eq!(D3Operator::from_a_basis(&a).to_a_basis(), a);
        }

        #[test]
        fn solution_is_annihilated(v in proptest::array::uniform5(-50i64..50)) {
            let op = D3Operator::from_i64s(v);
            prop_assert!(op.annihilates(&op.holomorphic_solution(15)));
        }
    }
}
