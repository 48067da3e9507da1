//! Laurent-type q-expansions `q^offset * (c_0 + c_1 q + ...)` with a
//! leading exponent in `(1/24) Z`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::{format_rational, is_integer, parse_rational, rat, Rational};
use crate::series::TruncatedSeries;

/// `q^offset * body(q)` where `body` has a nonzero constant term. The body's
/// truncation order is the relative precision of the expansion.
#[derive(Clone, Debug, PartialEq)]
pub struct QExpansion {
    offset: Rational,
    body: TruncatedSeries,
}

fn check_offset(offset: &Rational) -> Result<()> {
    if (BigInt::from(24) % offset.denom()).is_zero() {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("offset {offset} is not a multiple of 1/24")))
    }
}

impl QExpansion {
    pub fn new(offset: Rational, body: TruncatedSeries) -> Result<Self> {
        check_offset(&offset)?;
        if body.coeff(0).is_zero() {
            return Err(Error::InvalidArgument(
                "q-expansion body must have a nonzero constant term".into(),
            ));
        }
        Ok(QExpansion { offset, body })
    }

    /// Moves any leading zeros of `series` into the offset.
    pub fn from_series(offset: Rational, series: TruncatedSeries) -> Result<Self> {
        let v = series.valuation().ok_or(Error::VanishingExpansion)?;
        let body = series.div_by_power(v)?;
        QExpansion::new(offset + rat(v as i64), body)
    }

    pub fn constant(value: Rational, order: usize) -> Result<Self> {
        QExpansion::new(Rational::zero(), TruncatedSeries::constant(value, order))
    }

    pub fn offset(&self) -> &Rational {
        &self.offset
    }

    pub fn body(&self) -> &TruncatedSeries {
        &self.body
    }

    pub fn into_body(self) -> TruncatedSeries {
        self.body
    }

    pub fn order(&self) -> usize {
        self.body.order()
    }

    /// Coefficient of `q^(offset + k)`.
    pub fn coeff(&self, k: usize) -> &Rational {
        self.body.coeff(k)
    }

    /// Coefficient of `q^exponent`, if it lies inside the known window.
    pub fn coeff_at(&self, exponent: &Rational) -> Option<Rational> {
        let rel = exponent - &self.offset;
        if !is_integer(&rel) {
            return Some(Rational::zero());
        }
        if rel.is_negative() {
            return Some(Rational::zero());
        }
        let k: usize = rel.to_integer().try_into().ok()?;
        self.body.get(k).cloned()
    }

    pub fn truncate(&self, order: usize) -> Self {
        QExpansion { offset: self.offset.clone(), body: self.body.truncate(order) }
    }

    pub fn scale(&self, factor: &Rational) -> Result<Self> {
        if factor.is_zero() {
            return Err(Error::VanishingExpansion);
        }
        Ok(QExpansion { offset: self.offset.clone(), body: self.body.scale(factor) })
    }

    pub fn mul(&self, other: &Self) -> Self {
        QExpansion { offset: &self.offset + &other.offset, body: self.body.mul(&other.body) }
    }

    pub fn inverse(&self) -> Self {
        let body = self.body.inverse().expect("q-expansion body has a nonzero constant term");
        QExpansion { offset: -&self.offset, body }
    }

    pub fn div(&self, other: &Self) -> Self {
        let body = self.body.div(&other.body).expect("q-expansion body has a nonzero constant term");
        QExpansion { offset: &self.offset - &other.offset, body }
    }

    pub fn powi(&self, exponent: i64) -> Self {
        let body = self.body.powi(exponent).expect("q-expansion body has a nonzero constant term");
        QExpansion { offset: &self.offset * rat(exponent), body }
    }

    /// Fractional power taken on the unit body, offset scaled by the exponent.
    /// Non-integer exponents need a body with constant term 1.
    pub fn pow_rational(&self, exponent: &Rational) -> Result<Self> {
        let offset = &self.offset * exponent;
        check_offset(&offset)?;
        let body = if is_integer(exponent) && !self.body.coeff(0).is_one() {
            let e: i64 = exponent
                .to_integer()
                .try_into()
                .map_err(|_| Error::InvalidArgument(format!("exponent {exponent} too large")))?;
            self.body.powi(e)?
        } else {
            self.body.pow_rational(exponent)?
        };
        Ok(QExpansion { offset, body })
    }

    /// Substitutes `q -> q^factor`.
    pub fn dilate(&self, factor: usize) -> Self {
        QExpansion { offset: &self.offset * rat(factor as i64), body: self.body.dilate(factor) }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let (low, high) = if self.offset <= other.offset { (self, other) } else { (other, self) };
        let gap = &high.offset - &low.offset;
        if !is_integer(&gap) {
            return Err(Error::IncompatibleOffsets(
                format_rational(&self.offset),
                format_rational(&other.offset),
            ));
        }
        let gap: usize = gap.to_integer().try_into().map_err(|_| {
            Error::IncompatibleOffsets(format_rational(&self.offset), format_rational(&other.offset))
        })?;
        let order = low.order().min(high.order() + gap);
        let mut coeffs = low.body.truncate(order).into_coeffs();
        for (i, c) in high.body.coeffs().iter().enumerate() {
            if i + gap > order {
                break;
            }
            coeffs[i + gap] += c;
        }
        QExpansion::from_series(low.offset.clone(), TruncatedSeries::new(coeffs))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-Rational::one())?)
    }

    /// Body coefficients, shifted so that index 0 is `q^offset`.
    pub fn coeffs(&self) -> &[Rational] {
        self.body.coeffs()
    }

    /// The offset written over 24, e.g. `"-24/24"` for `q^-1`.
    pub fn offset_over_24(&self) -> String {
        format!("{}/24", (&self.offset * rat(24)).to_integer())
    }

    pub fn is_integral(&self) -> bool {
        self.body.is_integral()
    }
}

impl fmt::Display for QExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.body.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let exp = &self.offset + rat(k as i64);
            let (sign, mag) = if c.is_negative() { ("-", -c) } else { ("+", c.clone()) };
            if !first {
                write!(f, " {sign} ")?;
            } else if sign == "-" {
                write!(f, "-")?;
            }
            first = false;
            if exp.is_zero() {
                write!(f, "{mag}")?;
                continue;
            }
            if !mag.is_one() {
                write!(f, "{mag}*")?;
            }
            if exp.is_one() {
                write!(f, "q")?;
            } else if is_integer(&exp) && !exp.is_negative() {
                write!(f, "q^{exp}")?;
            } else {
                write!(f, "q^({exp})")?;
            }
        }
        let tail = &self.offset + rat(self.order() as i64 + 1);
        if is_integer(&tail) {
            write!(f, " + O(q^{tail})")
        } else {
            write!(f, " + O(q^({tail}))")
        }
    }
}

#[derive(Serialize, Deserialize)]
struct QExpansionJson {
    offset: String,
    order: usize,
    coeffs: Vec<String>,
}

impl Serialize for QExpansion {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        QExpansionJson {
            offset: self.offset_over_24(),
            order: self.order(),
            coeffs: self.body.coeffs().iter().map(format_rational).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for QExpansion {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = QExpansionJson::deserialize(deserializer)?;
        let offset = parse_rational(&raw.offset).map_err(D::Error::custom)?;
        let coeffs: Vec<Rational> = raw
            .coeffs
            .iter()
            .map(|c| parse_rational(c))
            .collect::<Result<_>>()
            .map_err(D::Error::custom)?;
        if coeffs.len() != raw.order + 1 {
            return Err(D::Error::custom("coefficient count does not match order"));
        }
        QExpansion::new(offset, TruncatedSeries::new(coeffs)).map_err(D::Error::custom)
    }
}
