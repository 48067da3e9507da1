use num_traits::Zero;

use super::TruncatedSeries;
use crate::error::{Error, Result};
use crate::rational::{rat, Rational};

impl TruncatedSeries {
    /// `outer(inner(t))` by Horner's rule. `inner` must have zero constant
    /// term. The result is exact up to the order of `inner`, lowered when the
    /// unknown tail of `outer` could already contribute.
    pub fn compose(&self, inner: &TruncatedSeries) -> Result<TruncatedSeries> {
        if !inner.coeff(0).is_zero() {
            return Err(Error::NonzeroInnerConstant);
        }
        let order = match inner.valuation() {
            None => inner.order(),
            Some(v) => inner.order().min((self.order() + 1) * v - 1),
        };
        let inner = inner.truncate(order);
        let top = self.order().min(order);
        let mut acc = TruncatedSeries::constant(self.coeff(top).clone(), order);
        for k in (0..top).rev() {
            acc = acc.mul(&inner);
            let head = acc.coeff(0) + self.coeff(k);
            acc.set_coeff(0, head);
        }
        Ok(acc)
    }

    /// Compositional inverse of a series with valuation exactly 1, by
    /// Lagrange inversion: `[t^n] r = (1/n) [w^(n-1)] (w / f(w))^n`.
    pub fn reverse(&self) -> Result<TruncatedSeries> {
        if !self.coeff(0).is_zero() || self.order() < 1 || self.coeff(1).is_zero() {
            return Err(Error::NotInvertible);
        }
        let order = self.order();
        let ratio = self.div_by_power(1)?.inverse()?;
        let mut out = vec![Rational::zero(); order + 1];
        let mut power = TruncatedSeries::one(order - 1);
        for (n, slot) in out.iter_mut().enumerate().skip(1) {
            power = power.mul(&ratio);
            *slot = power.coeff(n - 1) / rat(n as i64);
        }
        Ok(TruncatedSeries::new(out))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn s(values: &[i64], order: usize) -> TruncatedSeries {
        TruncatedSeries::from_i64s(values, order)
    }

    /// Order-by-order substitution: fix r_k so that [t^k] f(r) vanishes.
    fn reverse_by_substitution(f: &TruncatedSeries) -> TruncatedSeries {
        let order = f.order();
        let lead = f.coeff(1).clone();
        let mut r = TruncatedSeries::variable(order).scale(&lead.recip());
        for k in 2..=order {
            let residual = f.compose(&r).unwrap().coeff(k).clone();
            let next = r.coeff(k) - residual / &lead;
            r.set_coeff(k, next);
        }
        r
    }

    #[test]
    fn compose_examples() {
        let q = s(&[0, 1, -1], 6);
        assert_eq!(s(&[1, 1], 6).compose(&q).unwrap(), s(&[1, 1, -1], 6));
        let geo = s(&[1; 9], 8);
        assert_eq!(geo.compose(&TruncatedSeries::variable(8)).unwrap(), geo);
        let c = geo.compose(&s(&[0, 1, 1], 8)).unwrap();
        assert_eq!(c.coeff(2), &rat(2));
        assert_eq!(geo.compose(&s(&[1, 1], 8)), Err(Error::NonzeroInnerConstant));
    }

    #[test]
    fn compose_order_respects_outer_tail() {
        // Outer known to t^2 only; with valuation-2 inner the result is exact to t^5.
        let c = s(&[1, 1, 1], 2).compose(&s(&[0, 0, 1], 10)).unwrap();
        assert_eq!(c.order(), 5);
        assert_eq!(c, s(&[1, 0, 1, 0, 1], 5));
    }

    #[test]
    fn reverse_examples() {
        let t = TruncatedSeries::variable(6);
        assert_eq!(t.reverse().unwrap(), t);
        // Catalan numbers.
        let r = s(&[0, 1, -1], 6).reverse().unwrap();
        assert_eq!(r, s(&[0, 1, 1, 2, 5, 14, 42], 6));
        let f = s(&[0, 1, 3, 7], 9);
        let r = f.reverse().unwrap();
        assert_eq!(f.compose(&r).unwrap(), TruncatedSeries::variable(9));
        assert_eq!(r.compose(&f).unwrap(), TruncatedSeries::variable(9));
        assert_eq!(s(&[0, 0, 1], 4).reverse(), Err(Error::NotInvertible));
        assert_eq!(s(&[1, 1], 4).reverse(), Err(Error::NotInvertible));
    }

    fn valuation_one(order: usize) -> impl Strategy<Value = TruncatedSeries> {
        (prop_oneof![Just(1i64), Just(-1), Just(2), Just(3)], proptest::collection::vec(-9i64..9, order - 1))
            .prop_map(move |(lead, tail)| {
                let mut all = vec![0, lead];
                all.extend(tail);
                TruncatedSeries::from_i64s(&all, order)
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn reverse_matches_substitution(f in valuation_one(9)) {
            let fast = f.reverse().unwrap();
            let slow = reverse_by_substitution(&f);
            prop_assert_eq!(fast.coeffs(), slow.coeffs());
        }

        #[test]
        fn reverse_is_two_sided(f in valuation_one(10)) {
            let r = f.reverse().unwrap();
            let t = TruncatedSeries::variable(10);
            prop_assert_eq!(f.compose(&r).unwrap(), t.clone());
            prop_assert_eq!(r.compose(&f).unwrap(), t);
        }
    }
}
