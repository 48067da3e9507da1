//! Regularization and exponential shifts.
//!
//! `laplace` multiplies the coefficient of `t^n` by `n!`; the shifted
//! variants conjugate multiplication by `e^{s t}` through it.

use std::fmt;

use num_traits::{One, Zero};

use super::TruncatedSeries;
use crate::rational::{rat, Rational};

/// Exponent `s` of the shift `e^{s t}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ShiftConstant(pub Rational);

impl ShiftConstant {
    pub fn integer(s: i64) -> Self {
        ShiftConstant(rat(s))
    }

    pub fn value(&self) -> &Rational {
        &self.0
    }
}

impl From<i64> for ShiftConstant {
    fn from(s: i64) -> Self {
        ShiftConstant::integer(s)
    }
}

impl From<Rational> for ShiftConstant {
    fn from(s: Rational) -> Self {
        ShiftConstant(s)
    }
}

impl fmt::Display for ShiftConstant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// `e^{s t}` to the given order.
pub fn exp_series(s: &Rational, order: usize) -> TruncatedSeries {
    let mut coeffs = Vec::with_capacity(order + 1);
    let mut term = Rational::one();
    coeffs.push(term.clone());
    for n in 1..=order {
        term = term * s / rat(n as i64);
        coeffs.push(term.clone());
    }
    TruncatedSeries::new(coeffs)
}

fn scale_by_factorials(a: &TruncatedSeries, invert: bool) -> TruncatedSeries {
    let mut fact = Rational::one();
    let coeffs = a
        .coeffs()
        .iter()
        .enumerate()
        .map(|(n, c)| {
            if n > 0 {
                fact *= rat(n as i64);
            }
            if invert {
                c / &fact
            } else {
                c * &fact
            }
        })
        .collect();
    TruncatedSeries::new(coeffs)
}

impl TruncatedSeries {
    pub fn laplace(&self) -> TruncatedSeries {
        scale_by_factorials(self, false)
    }

    pub fn inverse_laplace(&self) -> TruncatedSeries {
        scale_by_factorials(self, true)
    }

    /// `L(e^{s t} * self)`.
    pub fn shifted_laplace(&self, s: &ShiftConstant) -> TruncatedSeries {
        if s.0.is_zero() {
            return self.laplace();
        }
        exp_series(&s.0, self.order()).mul(self).laplace()
    }

    /// `L_s L^{-1}`: adds `s` to the linear coefficient of a regularized series.
    pub fn regular_shift(&self, s: &ShiftConstant) -> TruncatedSeries {
        if s.0.is_zero() {
            return self.clone();
        }
        self.inverse_laplace().shifted_laplace(s)
    }

    /// Regular shift by minus the linear coefficient, so the result has no
    /// `t` term.
    pub fn normalize(&self) -> TruncatedSeries {
        match self.get(1) {
            Some(a1) => self.regular_shift(&ShiftConstant(-a1)),
            None => self.clone(),
        }
    }

    /// Regular shift that makes the linear coefficient equal to `target`.
    pub fn with_linear_coefficient(&self, target: &Rational) -> TruncatedSeries {
        match self.get(1) {
            Some(a1) => self.regular_shift(&ShiftConstant(target - a1)),
            None => self.clone(),
        }
    }
}
