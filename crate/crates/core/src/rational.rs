//! Exact rational scalars and the combinatorial tables shared by the series
//! generators.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn from_uint(n: BigUint) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Canonical text form: reduced `p/q`, or bare `p` for integers.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

/// Parses `p`, `-p`, or `p/q` with integer p, q (q nonzero).
pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let bad = || Error::Parse(format!("`{text}` is not a rational number"));
    match text.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(text.parse().map_err(|_| bad())?)),
    }
}

pub fn is_integer(r: &Rational) -> bool {
    r.denom().is_one()
}

/// Factorials 0!..=n! as big integers.
#[derive(Debug, Clone)]
pub struct Factorials(Vec<BigUint>);

impl Factorials {
    pub fn up_to(n: usize) -> Self {
        let mut table = Vec::with_capacity(n + 1);
        table.push(BigUint::one());
        for k in 1..=n {
            let next = &table[k - 1] * BigUint::from(k);
            table.push(next);
        }
        Factorials(table)
    }

    pub fn get(&self, k: usize) -> &BigUint {
        &self.0[k]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Pascal triangle rows 0..=n.
#[derive(Debug, Clone)]
pub struct Binomials(Vec<Vec<BigUint>>);

impl Binomials {
    pub fn up_to(n: usize) -> Self {
        let mut rows: Vec<Vec<BigUint>> = Vec::with_capacity(n + 1);
        rows.push(vec![BigUint::one()]);
        for m in 1..=n {
            let prev = &rows[m - 1];
            let mut row = Vec::with_capacity(m + 1);
            row.push(BigUint::one());
            for k in 1..m {
                row.push(&prev[k - 1] + &prev[k]);
            }
            row.push(BigUint::one());
            rows.push(row);
        }
        Binomials(rows)
    }

    /// C(n, k); zero when k > n.
    pub fn get(&self, n: usize, k: usize) -> BigUint {
        if k > n {
            BigUint::zero()
        } else {
            self.0[n][k].clone()
        }
    }

    pub fn get_ref(&self, n: usize, k: usize) -> &BigUint {
        &self.0[n][k]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_roundtrip() {
        for text in ["0", "7", "-3", "5/6", "-1/24"] {
            let r = parse_rational(text).unwrap();
            assert_eq!(format_rational(&r), text);
        }
        assert_eq!(format_rational(&parse_rational("4/8").unwrap()), "1/2");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn tables() {
        let f = Factorials::up_to(10);
        assert_eq!(f.get(10), &BigUint::from(3_628_800u32));
        let b = Binomials::up_to(10);
        assert_eq!(b.get(10, 5), BigUint::from(252u32));
        assert_eq!(b.get(3, 4), BigUint::zero());
    }
}
