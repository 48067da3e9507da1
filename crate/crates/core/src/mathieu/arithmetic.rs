//! `phi`, `psi`, `epsilon = 24/psi` and `iota`.

use num_traits::Zero;
use serde::Serialize;

use crate::rational::{format_rational, frac, is_integer, Rational};

/// Distinct prime divisors in increasing order.
pub fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut primes = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            primes.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        primes.push(n);
    }
    primes
}

pub fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && prime_divisors(n) == [n]
}

/// Euler's totient `N prod (1 - 1/p)`.
pub fn phi(n: u64) -> u64 {
    assert!(n >= 1, "phi(0) is undefined");
    prime_divisors(n).iter().fold(n, |acc, p| acc / p * (p - 1))
}

/// `N prod (1 + 1/p)`, the index of `Gamma_0(N)`.
pub fn psi(n: u64) -> u64 {
    assert!(n >= 1, "psi(0) is undefined");
    prime_divisors(n).iter().fold(n, |acc, p| acc / p * (p + 1))
}

pub fn epsilon(n: u64) -> Rational {
    frac(24, psi(n) as i64)
}

/// `(sum_{M | N} phi(M) epsilon(M)) / N`.
pub fn iota(n: u64) -> Rational {
    iota_undivided(n) / Rational::from_integer((n as i64).into())
}

/// The sum `sum_{M | N} phi(M) epsilon(M)` without the final division.
pub fn iota_undivided(n: u64) -> Rational {
    divisors(n)
        .into_iter()
        .fold(Rational::zero(), |acc, m| acc + epsilon(m) * Rational::from_integer((phi(m) as i64).into()))
}

pub fn epsilon_is_integral(n: u64) -> bool {
    24 % psi(n) == 0
}

/// Levels `N <= limit` with integral `epsilon(N)`.
pub fn integral_epsilon_levels(limit: u64) -> Vec<u64> {
    (1..=limit).filter(|&n| epsilon_is_integral(n)).collect()
}

/// `epsilon(N) >= 2`.
pub fn rational_type(n: u64) -> bool {
    epsilon(n) >= frac(2, 1)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ArithmeticRow {
    #[serde(rename = "N")]
    pub n: u64,
    pub phi: u64,
    pub psi: u64,
    pub epsilon: String,
    pub iota: String,
    pub epsilon_integral: bool,
}

pub fn arithmetic_table(limit: u64) -> Vec<ArithmeticRow> {
    (1..=limit)
        .map(|n| {
            let eps = epsilon(n);
            ArithmeticRow {
                n,
                phi: phi(n),
                psi: psi(n),
                epsilon_integral: is_integer(&eps),
                epsilon: format_rational(&eps),
                iota: format_rational(&iota(n)),
            }
        })
        .collect()
}
