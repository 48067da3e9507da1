//! Mason's eta-products `eta_g` and desk-scale Hecke eigenform checks.

use serde::Serialize;

use super::arithmetic::is_prime;
use super::frame::FrameShape;
use crate::error::{Error, Result};
use crate::eta::eta_product;
use crate::qexp::QExpansion;
use crate::report::Status;

/// `prod eta(q^i)^{a_i}` with relative precision `order`.
pub fn mason_eta(g: &FrameShape, order: usize) -> QExpansion {
    eta_product(&g.eta_exponents(), order)
}

/// Signed pentagonal exponents of `prod (1 - q^{factor n})` up to `order`.
fn pentagonal(factor: usize, order: usize) -> Vec<(usize, i8)> {
    let mut terms = vec![(0, 1)];
    for k in 1usize.. {
        let sign = if k % 2 == 0 { 1 } else { -1 };
        let low = factor * k * (3 * k - 1) / 2;
        if low > order {
            break;
        }
        terms.push((low, sign));
        let high = factor * k * (3 * k + 1) / 2;
        if high <= order {
            terms.push((high, sign));
        }
    }
    terms
}

fn checked(value: Option<i128>, index: usize) -> Result<i128> {
    value.ok_or(Error::Overflow(index))
}

/// Body coefficients of `eta_g` (i.e. `eta_g / q^{degree/24}`) through
/// `q^order`, in `i128` using only additions; overflow is an error.
pub fn eta_body_i128(g: &FrameShape, order: usize) -> Result<Vec<i128>> {
    let mut f = vec![0i128; order + 1];
    f[0] = 1;
    for (i, a) in g.cycles() {
        let terms = pentagonal(i as usize, order);
        for _ in 0..a.unsigned_abs() {
            if a > 0 {
                // f <- f * E(q^i), descending so f[n - e] is still old.
                for n in (0..=order).rev() {
                    let mut acc = 0i128;
                    for &(e, sign) in terms.iter().take_while(|&&(e, _)| e <= n) {
                        let term = f[n - e];
                        acc = checked(if sign > 0 { acc.checked_add(term) } else { acc.checked_sub(term) }, n)?;
                    }
                    f[n] = acc;
                }
            } else {
                // f <- f / E(q^i): g[n] = f[n] - sum_{e > 0} sign_e g[n - e], ascending.
                for n in 0..=order {
                    let mut acc = f[n];
                    for &(e, sign) in terms.iter().skip(1).take_while(|&&(e, _)| e <= n) {
                        let term = f[n - e];
                        acc = checked(if sign > 0 { acc.checked_sub(term) } else { acc.checked_add(term) }, n)?;
                    }
                    f[n] = acc;
                }
            }
        }
    }
    Ok(f)
}

/// Fourier coefficients `a(1..=count)` of a shape with `sum i a_i = 24`,
/// so that `eta_g = sum a(n) q^n`.
pub fn cusp_coefficients(g: &FrameShape, count: usize) -> Result<Vec<i128>> {
    if g.degree() != 24 {
        return Err(Error::SumNot24 { shape: g.to_string(), degree: g.degree() });
    }
    let body = eta_body_i128(g, count.saturating_sub(1))?;
    let mut a = vec![0i128];
    a.extend(body);
    Ok(a)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HeckeReport {
    pub shape: FrameShape,
    pub weight: String,
    pub level: u64,
    pub bound: usize,
    pub prime_bound: u64,
    pub multiplicativity: Status,
    /// Coprime pairs `(m, n)` with `a(m) a(n) != a(mn)`.
    pub multiplicative_failures: Vec<(usize, usize)>,
    /// `None` when the weight is odd and the recursion is not run.
    pub prime_power: Option<Status>,
    /// `(p, r)` with `a(p^{r+1}) != a(p) a(p^r) - p^{w-1} a(p^{r-1})`.
    pub prime_power_failures: Vec<(u64, u32)>,
    pub note: Option<String>,
}

impl HeckeReport {
    pub fn passed(&self) -> bool {
        self.multiplicativity.passed() && self.prime_power.is_none_or(Status::passed)
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Multiplicativity for coprime `m, n <= bound` and, for even weight, the
/// prime-power recursion for `p <= prime_bound`, `p` not dividing the level.
/// Coefficients are taken up to `bound^2`.
pub fn hecke_eigenform_check(g: &FrameShape, bound: usize, prime_bound: u64) -> Result<HeckeReport> {
    let weight = g
        .integer_weight()
        .ok_or_else(|| Error::InvalidArgument(format!("{g} has half-integral weight")))?;
    let top = bound * bound;
    let a = cusp_coefficients(g, top)?;

    let mut multiplicative_failures = Vec::new();
    for m in 2..=bound {
        for n in m + 1..=bound {
            if gcd(m, n) != 1 {
                continue;
            }
            let lhs = checked(a[m].checked_mul(a[n]), m * n)?;
            if lhs != a[m * n] {
                multiplicative_failures.push((m, n));
            }
        }
    }

    let level = g.level();
    let (prime_power, prime_power_failures, note) = if weight % 2 == 0 {
        let mut failures = Vec::new();
        for p in (2..=prime_bound).filter(|&p| is_prime(p) && !level.is_multiple_of(p)) {
            let pw = checked((p as i128).checked_pow((weight - 1) as u32), p as usize)?;
            let ap = a[p as usize];
            let mut r = 1u32;
            // prev = a(p^{r-1}), cur = a(p^r)
            let (mut prev, mut cur, mut power) = (1i128, ap, p as usize);
            while let Some(next_power) = power.checked_mul(p as usize).filter(|&x| x <= top) {
                let expected = checked(
                    ap.checked_mul(cur).and_then(|x| pw.checked_mul(prev).and_then(|y| x.checked_sub(y))),
                    next_power,
                )?;
                if a[next_power] != expected {
                    failures.push((p, r));
                }
                prev = cur;
                cur = a[next_power];
                power = next_power;
                r += 1;
            }
        }
        (Some(Status::from_bool(failures.is_empty())), failures, None)
    } else {
        (None, Vec::new(), Some("character route not checked".to_string()))
    };

    Ok(HeckeReport {
        shape: g.clone(),
        weight: weight.to_string(),
        level,
        bound,
        prime_bound,
        multiplicativity: Status::from_bool(multiplicative_failures.is_empty()),
        multiplicative_failures,
        prime_power,
        prime_power_failures,
        note,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eta::discriminant;
    use crate::mathieu::frame::{m24_shapes, parse_eta_quotient, parse_frame_shape};
    use crate::rational::rat;
    use num_traits::ToPrimitive;

    #[test]
    fn delta_from_the_identity_shape() {
        let g = parse_frame_shape("1^24").unwrap();
        assert_eq!(mason_eta(&g, 30), discriminant(30));
        let a = cusp_coefficients(&g, 6).unwrap();
        assert_eq!(&a[1..], &[1, -24, 252, -1472, 4830, -6048]);
        assert_eq!(a[2] * a[3], a[6]);
    }

    #[test]
    fn level_two_coefficient() {
        let g = parse_frame_shape("1^8 2^8").unwrap();
        let e = mason_eta(&g, 3);
        assert_eq!(e.offset(), &rat(1));
        assert_eq!(e.coeff(1), &rat(-8));
    }

    #[test]
    fn offsets_are_one() {
        for e in m24_shapes() {
            assert_eq!(mason_eta(&e.shape, 2).offset(), &rat(1), "{}", e.shape);
        }
    }

    #[test]
    fn integer_route_matches_rational_route() {
        for text in ["1^24", "2^2 10^2", "3 21", "2^4 6^4 1^-1 3^-1 4^-1 12^-1"] {
            let g = parse_eta_quotient(text).unwrap();
            let exact = eta_product(&g.eta_exponents(), 120);
            let fast = eta_body_i128(&g, 120).unwrap();
            let exact: Vec<i128> = exact.coeffs().iter().map(|c| c.to_integer().to_i128().unwrap()).collect();
            assert_eq!(exact, fast, "{text}");
        }
    }

    #[test]
    fn overflow_is_reported() {
        let g = parse_eta_quotient("1^-400").unwrap();
        assert!(matches!(eta_body_i128(&g, 3000), Err(Error::Overflow(_))));
    }

    #[test]
    fn small_hecke_checks() {
        let r = hecke_eigenform_check(&parse_frame_shape("1^8 2^8").unwrap(), 40, 20).unwrap();
        assert!(r.passed(), "{r:?}");
        let r = hecke_eigenform_check(&parse_frame_shape("1^3 7^3").unwrap(), 30, 20).unwrap();
        assert!(r.passed() && r.prime_power.is_none(), "{r:?}");
        assert_eq!(r.note.as_deref(), Some("character route not checked"));
        // 1^12 2^6 is not an eigenform: it has weight 9 and fails multiplicativity.
        let not_eigen = FrameShape::permutation([(1, 12), (2, 6)]).unwrap();
        assert!(!hecke_eigenform_check(&not_eigen, 20, 10).unwrap().passed());
    }
}
