//! Dense truncated power series over exact rationals.
//!
//! A [`TruncatedSeries`] of order `K` stores the coefficients of `t^0..=t^K`;
//! everything from `t^(K+1)` on is unknown. Binary operations return a result
//! whose order is the minimum of the operand orders.

mod compose;
mod transform;

pub use transform::{exp_series, ShiftConstant};

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::{format_rational, is_integer, parse_rational, rat, Rational};

#[derive(Clone, Debug)]
pub struct TruncatedSeries {
    coeffs: Vec<Rational>,
}

impl TruncatedSeries {
    /// Builds a series from its coefficients; the order is `coeffs.len() - 1`.
    ///
    /// Panics if `coeffs` is empty.
    pub fn new(coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty(), "a truncated series needs at least one coefficient");
        TruncatedSeries { coeffs }
    }

    /// Pads with zeros or truncates so the result has exactly `order + 1`
    /// coefficients.
    pub fn with_order(mut coeffs: Vec<Rational>, order: usize) -> Self {
        coeffs.resize(order + 1, Rational::zero());
        TruncatedSeries { coeffs }
    }

    pub fn from_i64s(values: &[i64], order: usize) -> Self {
        Self::with_order(values.iter().map(|&v| rat(v)).collect(), order)
    }

    pub fn from_integers<I: IntoIterator<Item = BigInt>>(values: I) -> Self {
        Self::new(values.into_iter().map(Rational::from_integer).collect())
    }

    pub fn zero(order: usize) -> Self {
        Self::with_order(Vec::new(), order)
    }

    pub fn one(order: usize) -> Self {
        Self::constant(Rational::one(), order)
    }

    pub fn constant(value: Rational, order: usize) -> Self {
        Self::with_order(vec![value], order)
    }

    /// The series `t`. Requires `order >= 1`.
    pub fn variable(order: usize) -> Self {
        assert!(order >= 1, "the series t needs order at least 1");
        Self::with_order(vec![Rational::zero(), Rational::one()], order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    /// Coefficient of `t^n`. Panics past the truncation order.
    pub fn coeff(&self, n: usize) -> &Rational {
        &self.coeffs[n]
    }

    pub fn get(&self, n: usize) -> Option<&Rational> {
        self.coeffs.get(n)
    }

    pub fn set_coeff(&mut self, n: usize, value: Rational) {
        self.coeffs[n] = value;
    }

    /// Drops coefficients above `order`. Requesting a larger order than
    /// available is a no-op, since the missing data is unknown.
    pub fn truncate(&self, order: usize) -> Self {
        let keep = order.min(self.order());
        TruncatedSeries { coeffs: self.coeffs[..=keep].to_vec() }
    }

    /// Index of the first nonzero coefficient, or `None` if the series
    /// vanishes to its order.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(is_integer)
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        TruncatedSeries { coeffs: self.coeffs.iter().map(|c| c * factor).collect() }
    }

    /// Multiplies by `t^shift`; the order grows by the same amount.
    pub fn mul_by_power(&self, shift: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); shift];
        coeffs.extend(self.coeffs.iter().cloned());
        TruncatedSeries { coeffs }
    }

    /// Divides by `t^shift`. Requires the first `shift` coefficients to
    /// vanish and `shift <= order`.
    pub fn div_by_power(&self, shift: usize) -> Result<Self> {
        if shift > self.order() {
            return Err(Error::InvalidArgument(format!(
                "cannot divide an order-{} series by t^{shift}",
                self.order()
            )));
        }
        if self.coeffs[..shift].iter().any(|c| !c.is_zero()) {
            return Err(Error::InvalidArgument(format!("series is not divisible by t^{shift}")));
        }
        Ok(TruncatedSeries { coeffs: self.coeffs[shift..].to_vec() })
    }

    /// Substitutes `t -> t^factor`. The result is exact up to
    /// `factor * (order + 1) - 1`.
    pub fn dilate(&self, factor: usize) -> Self {
        assert!(factor >= 1, "dilation factor must be positive");
        let new_order = factor * (self.order() + 1) - 1;
        let mut coeffs = vec![Rational::zero(); new_order + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * factor] = c.clone();
        }
        TruncatedSeries { coeffs }
    }

    /// Keeps every `factor`-th coefficient: the inverse of [`dilate`](Self::dilate).
    /// Fails if any other coefficient is nonzero.
    pub fn contract(&self, factor: usize) -> Result<Self> {
        assert!(factor >= 1, "contraction factor must be positive");
        if let Some((i, _)) =
            self.coeffs.iter().enumerate().find(|(i, c)| i % factor != 0 && !c.is_zero())
        {
            return Err(Error::InvalidArgument(format!(
                "coefficient of t^{i} is nonzero; series is not a function of t^{factor}"
            )));
        }
        Ok(TruncatedSeries { coeffs: self.coeffs.iter().step_by(factor).cloned().collect() })
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        TruncatedSeries {
            coeffs: (0..=order).map(|i| &self.coeffs[i] + &other.coeffs[i]).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        TruncatedSeries {
            coeffs: (0..=order).map(|i| &self.coeffs[i] - &other.coeffs[i]).collect(),
        }
    }

    /// Cauchy product truncated to the smaller order. Both factors are
    /// scaled to integer vectors over a common denominator, so the inner loop
    /// runs on big integers and each coefficient is reduced once.
    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let (lhs, lhs_den) = integer_scaled(&self.coeffs[..=order]);
        let (rhs, rhs_den) = integer_scaled(&other.coeffs[..=order]);
        let mut sums = vec![BigInt::zero(); order + 1];
        for (i, a) in lhs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.iter().enumerate().take(order + 1 - i) {
                if !b.is_zero() {
                    sums[i + j] += a * b;
                }
            }
        }
        let den = lhs_den * rhs_den;
        TruncatedSeries { coeffs: sums.into_iter().map(|n| Rational::new(n, den.clone())).collect() }
    }

    /// Multiplicative inverse; requires a nonzero constant term.
    pub fn inverse(&self) -> Result<Self> {
        let head = &self.coeffs[0];
        if head.is_zero() {
            return Err(Error::ZeroConstantTerm);
        }
        let head_inv = head.recip();
        let order = self.order();
        let mut out: Vec<Rational> = Vec::with_capacity(order + 1);
        out.push(head_inv.clone());
        for k in 1..=order {
            let mut acc = Rational::zero();
            for i in 1..=k {
                if !self.coeffs[i].is_zero() {
                    acc += &self.coeffs[i] * &out[k - i];
                }
            }
            out.push(-(acc * &head_inv));
        }
        Ok(TruncatedSeries { coeffs: out })
    }

    /// `self / divisor`, i.e. the series `q` with `q * divisor = self`.
    pub fn div(&self, divisor: &Self) -> Result<Self> {
        let head = &divisor.coeffs[0];
        if head.is_zero() {
            return Err(Error::ZeroConstantTerm);
        }
        let head_inv = head.recip();
        let order = self.order().min(divisor.order());
        let mut out: Vec<Rational> = Vec::with_capacity(order + 1);
        for k in 0..=order {
            let mut acc = self.coeffs[k].clone();
            for i in 1..=k {
                if !divisor.coeffs[i].is_zero() {
                    acc -= &divisor.coeffs[i] * &out[k - i];
                }
            }
            out.push(acc * &head_inv);
        }
        Ok(TruncatedSeries { coeffs: out })
    }

    /// Integer power; negative exponents go through [`inverse`](Self::inverse).
    pub fn powi(&self, exponent: i64) -> Result<Self> {
        let mut base = if exponent < 0 { self.inverse()? } else { self.clone() };
        let mut e = exponent.unsigned_abs();
        let mut acc = TruncatedSeries::one(self.order());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        Ok(acc)
    }

    /// `(1 + x)^e` for `x = self - 1`, via the power recurrence
    /// `k p_k = sum_{j=1}^{k} (e j - (k - j)) a_j p_{k-j}`.
    pub fn pow_rational(&self, exponent: &Rational) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::NonUnitConstant);
        }
        let order = self.order();
        let mut out: Vec<Rational> = Vec::with_capacity(order + 1);
        out.push(Rational::one());
        for k in 1..=order {
            let mut acc = Rational::zero();
            for j in 1..=k {
                let a = &self.coeffs[j];
                if a.is_zero() {
                    continue;
                }
                let weight = exponent * rat(j as i64) - rat((k - j) as i64);
                acc += weight * a * &out[k - j];
            }
            out.push(acc / rat(k as i64));
        }
        Ok(TruncatedSeries { coeffs: out })
    }

    /// Formal derivative d/dt; the order drops by one (floored at zero).
    pub fn derivative(&self) -> Self {
        if self.order() == 0 {
            return TruncatedSeries::zero(0);
        }
        TruncatedSeries {
            coeffs: self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * rat(i as i64)).collect(),
        }
    }
}

impl PartialEq for TruncatedSeries {
    /// Coefficient-wise equality up to the common truncation order.
    fn eq(&self, other: &Self) -> bool {
        let order = self.order().min(other.order());
        self.coeffs[..=order] == other.coeffs[..=order]
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (sign, mag) = if c < &Rational::zero() { ("-", -c) } else { ("+", c.clone()) };
            if wrote {
                write!(f, " {sign} ")?;
            } else if sign == "-" {
                write!(f, "-")?;
            }
            let mag_text = format_rational(&mag);
            match i {
                0 => write!(f, "{mag_text}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag_text}*")?;
                    }
                    if i == 1 {
                        write!(f, "t")?;
                    } else {
                        write!(f, "t^{i}")?;
                    }
                }
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        write!(f, " + O(t^{})", self.order() + 1)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&TruncatedSeries> for &TruncatedSeries {
            type Output = TruncatedSeries;
            fn $method(self, rhs: &TruncatedSeries) -> TruncatedSeries {
                TruncatedSeries::$method(self, rhs)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        TruncatedSeries { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Neg for TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        -&self
    }
}

#[derive(Serialize, Deserialize)]
struct SeriesJson {
    order: usize,
    coeffs: Vec<String>,
}

impl Serialize for TruncatedSeries {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        SeriesJson { order: self.order(), coeffs: self.coeffs.iter().map(format_rational).collect() }
            .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for TruncatedSeries {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = SeriesJson::deserialize(deserializer)?;
        if raw.coeffs.len() != raw.order + 1 {
            return Err(D::Error::custom(format!(
                "order {} requires {} coefficients, found {}",
                raw.order,
                raw.order + 1,
                raw.coeffs.len()
            )));
        }
        let coeffs = raw
            .coeffs
            .iter()
            .map(|c| parse_rational(c))
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        Ok(TruncatedSeries { coeffs })
    }
}


/// Numerators over the least common denominator of `values`.
fn integer_scaled(values: &[Rational]) -> (Vec<BigInt>, BigInt) {
    let den = values.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let nums = values.iter().map(|v| v.numer() * (&den / v.denom())).collect();
    (nums, den)
}
