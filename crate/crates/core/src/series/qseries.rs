//! Truncated Puiseux series in `q`.
//!
//! A series is exact for every exponent `<= K` (its truncation order) and says
//! nothing beyond. Products keep the tightest order that is still valid.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exactnum::rational::{exp_denom, lcm_u64};
use crate::scalar::Ring;
use crate::series::laurent::BiLaurent;
use crate::series::ratfun::RationalFunction;
use crate::Exponent;

#[derive(Clone, PartialEq)]
pub struct QSeries<C> {
    terms: BTreeMap<Exponent, C>,
    order: Exponent,
}

impl<C: Ring> QSeries<C> {
    pub fn zero(order: Exponent) -> Self {
        QSeries {
            terms: BTreeMap::new(),
            order,
        }
    }

    pub fn constant(c: C, order: Exponent) -> Self {
        Self::monomial(c, Exponent::zero(), order)
    }

    pub fn one(order: Exponent) -> Self {
        Self::constant(C::one(), order)
    }

    /// `c · q^e`.
    pub fn monomial(c: C, e: Exponent, order: Exponent) -> Self {
        Self::from_terms([(e, c)], order)
    }

    pub fn from_terms(iter: impl IntoIterator<Item = (Exponent, C)>, order: Exponent) -> Self {
        let mut s = Self::zero(order);
        for (e, c) in iter {
            s.add_term(e, c);
        }
        s
    }

    pub fn add_term(&mut self, e: Exponent, c: C) {
        if e > self.order || c.is_zero() {
            return;
        }
        let sum = match self.terms.remove(&e) {
            Some(old) => old.add(&c),
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(e, sum);
        }
    }

    pub fn order(&self) -> Exponent {
        self.order
    }

    pub fn terms(&self) -> &BTreeMap<Exponent, C> {
        &self.terms
    }

    pub fn coeff(&self, e: Exponent) -> C {
        self.terms.get(&e).cloned().unwrap_or_else(C::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Lcm of the denominators of the stored exponents (the `r` of `q^{1/r}`).
    pub fn q_denom(&self) -> u64 {
        self.terms.keys().fold(1, |acc, e| lcm_u64(acc, exp_denom(e)))
    }

    pub fn lowest(&self) -> Option<Exponent> {
        self.terms.keys().next().copied()
    }

    pub fn truncate(&self, order: Exponent) -> Self {
        let order = order.min(self.order);
        QSeries {
            terms: self
                .terms
                .range(..=order)
                .map(|(e, c)| (*e, c.clone()))
                .collect(),
            order,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.truncate(other.order);
        for (e, c) in other.terms.range(..=out.order) {
            out.add_term(*e, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map(|c| c.neg())
    }

    pub fn scale(&self, c: &C) -> Self {
        self.map(|a| a.mul(c))
    }

    pub fn map<D: Ring>(&self, f: impl Fn(&C) -> D) -> QSeries<D> {
        QSeries::from_terms(self.terms.iter().map(|(e, c)| (*e, f(c))), self.order)
    }

    pub fn try_map<D: Ring>(&self, f: impl Fn(&C) -> Result<D>) -> Result<QSeries<D>> {
        let mut out = QSeries::zero(self.order);
        for (e, c) in &self.terms {
            out.add_term(*e, f(c)?);
        }
        Ok(out)
    }

    /// Multiplies by `q^s`; the truncation order moves with it.
    pub fn shift(&self, s: Exponent) -> Self {
        QSeries {
            terms: self.terms.iter().map(|(e, c)| (e + s, c.clone())).collect(),
            order: self.order + s,
        }
    }

    /// Truncated Cauchy product.
    ///
    /// If `a` is known to `K_a` with lowest exponent `l_a` (and similarly for
    /// `b`), the product is known to `min(K_a + l_b, K_b + l_a)`.
    pub fn mul(&self, other: &Self) -> Self {
        let la = self.lowest().unwrap_or(self.order);
        let lb = other.lowest().unwrap_or(other.order);
        let order = (self.order + lb).min(other.order + la);
        let mut out = Self::zero(order);
        for (ea, a) in &self.terms {
            for (eb, b) in other.terms.range(..=(order - ea)) {
                out.add_term(ea + eb, a.mul(b));
            }
        }
        out
    }

    /// `1 / (1 − c q^s)` expanded to order `order`.
    pub fn geometric(c: &C, s: Exponent, order: Exponent) -> Result<Self> {
        if s <= Exponent::zero() {
            return Err(Error::NonPositiveShift(s.to_string()));
        }
        let mut out = Self::zero(order);
        let mut pow = C::one();
        let mut e = Exponent::zero();
        while e <= order {
            out.add_term(e, pow.clone());
            pow = pow.mul(c);
            e += s;
        }
        Ok(out)
    }

    /// Multiplicative inverse of a series whose `q^0` coefficient is a unit
    /// and which has no negative exponents.
    pub fn invert_unit(&self) -> Result<Self> {
        if self.lowest().is_some_and(|e| e.is_negative()) {
            return Err(Error::NonUnitLeadingTerm);
        }
        let a0 = self.coeff(Exponent::zero());
        let inv0 = a0.try_inv().ok_or(Error::NonUnitLeadingTerm)?;
        // 1/a = inv0 · Σ_j (−rest·inv0)^j
        let mut rest = self.clone();
        rest.terms.remove(&Exponent::zero());
        let x = rest.scale(&inv0).neg();
        let mut out = Self::one(self.order);
        if let Some(step) = x.lowest() {
            let mut pow = Self::one(self.order);
            let mut e = step;
            while e <= self.order {
                pow = pow.mul(&x).truncate(self.order);
                out = out.add(&pow);
                e += step;
            }
        }
        Ok(QSeries {
            order: self.order,
            ..out.scale(&inv0)
        })
    }
}

/// Per-order outcome of [`QSeries::t_constancy`].
#[derive(Clone, Debug, PartialEq)]
pub struct OrderConstancy {
    pub q_exp: Exponent,
    pub is_constant: bool,
    pub residual: RationalFunction,
}

impl QSeries<RationalFunction> {
    /// For every stored order, whether the reduced coefficient is free of t.
    pub fn t_constancy(&self) -> Vec<OrderConstancy> {
        self.terms
            .iter()
            .map(|(e, c)| OrderConstancy {
                q_exp: *e,
                is_constant: c.is_t_constant(),
                residual: c.clone(),
            })
            .collect()
    }

    pub fn is_t_constant(&self) -> bool {
        self.terms.values().all(RationalFunction::is_t_constant)
    }
}

impl QSeries<BiLaurent> {
    pub fn to_rational(&self) -> QSeries<RationalFunction> {
        self.map(|c| RationalFunction::from_laurent(c.clone()))
    }
}

impl<C: Ring + fmt::Display> fmt::Display for QSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            write!(f, "0")?;
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if e.is_zero() {
                write!(f, "({c})")?;
            } else {
                write!(f, "({c})·q^{e}")?;
            }
        }
        write!(f, " + O(q^>{})", self.order)
    }
}

impl<C: Ring + fmt::Display> fmt::Debug for QSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rational::exp;
    use crate::exactnum::Cyclotomic;

    type S = QSeries<BiLaurent>;

    fn k(n: i64) -> BiLaurent {
        BiLaurent::constant(Cyclotomic::from_int(n))
    }
    fn t(e: i64) -> BiLaurent {
        BiLaurent::t_pow(exp(e, 1))
    }

    #[test]
    fn identity_and_difference_of_squares() {
        let order = exp(3, 1);
        let a = S::from_terms([(exp(0, 1), k(1)), (exp(1, 1), k(1))], order);
        let b = S::from_terms([(exp(0, 1), k(1)), (exp(1, 1), k(-1))], order);
        assert_eq!(a.mul(&S::one(order)), a);
        let expected = S::from_terms([(exp(0, 1), k(1)), (exp(2, 1), k(-1))], order);
        assert_eq!(a.mul(&b), expected);
    }

    #[test]
    fn puiseux_product() {
        let order = exp(1, 1);
        let a = S::from_terms([(exp(0, 1), k(1)), (exp(1, 3), t(1))], order);
        let b = S::from_terms([(exp(0, 1), k(1)), (exp(1, 3), t(1).neg())], order);
        let expected = S::from_terms([(exp(0, 1), k(1)), (exp(2, 3), t(2).neg())], order);
        let p = a.mul(&b);
        assert_eq!(p, expected);
        assert_eq!(p.q_denom(), 3);
    }

    #[test]
    fn geometric_examples() {
        let g = S::geometric(&k(1), exp(1, 1), exp(3, 1)).unwrap();
        let expected = S::from_terms((0..=3).map(|j| (exp(j, 1), k(1))), exp(3, 1));
        assert_eq!(g, expected);

        let g = S::geometric(&t(1), exp(1, 2), exp(1, 1)).unwrap();
        let expected = S::from_terms(
            [(exp(0, 1), k(1)), (exp(1, 2), t(1)), (exp(1, 1), t(2))],
            exp(1, 1),
        );
        assert_eq!(g, expected);

        let c = BiLaurent::monomial(Cyclotomic::one(), exp(-1, 1), exp(1, 1));
        let g = S::geometric(&c, exp(2, 1), exp(3, 1)).unwrap();
        assert_eq!(g, S::from_terms([(exp(0, 1), k(1)), (exp(2, 1), c)], exp(3, 1)));

        assert!(matches!(
            S::geometric(&k(1), exp(0, 1), exp(3, 1)),
            Err(Error::NonPositiveShift(_))
        ));
    }

    #[test]
    fn inversion() {
        let order = exp(4, 1);
        let a = S::from_terms([(exp(0, 1), k(1)), (exp(1, 1), k(-1))], order);
        let inv = a.invert_unit().unwrap();
        assert_eq!(inv, S::from_terms((0..=4).map(|j| (exp(j, 1), k(1))), order));
        assert_eq!(S::one(order).invert_unit().unwrap(), S::one(order));

        let one_minus_t = RationalFunction::from_laurent(k(1).sub(&t(1)));
        let r = QSeries::constant(one_minus_t.clone(), order);
        let inv = r.invert_unit().unwrap();
        let c0 = inv.coeff(exp(0, 1));
        assert_eq!(c0.mul(&one_minus_t), RationalFunction::one());

        let zero = QSeries::<RationalFunction>::zero(order);
        assert_eq!(zero.invert_unit(), Err(Error::NonUnitLeadingTerm));
    }

    #[test]
    fn constancy_report() {
        let order = exp(1, 1);
        let zeta = BiLaurent::zeta_pow(exp(1, 1));
        let s = QSeries::from_terms(
            [
                (exp(0, 1), RationalFunction::from_laurent(k(1).add(&zeta))),
                (exp(1, 1), RationalFunction::from_laurent(t(1))),
            ],
            order,
        );
        let report = s.t_constancy();
        assert!(report[0].is_constant);
        assert!(!report[1].is_constant);
        assert!(!s.is_t_constant());
    }
}
