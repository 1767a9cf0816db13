//! Laurent polynomials in the equivariant variable `t` and a formal `ζ`,
//! with rational exponents and cyclotomic coefficients.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use num_traits::Zero;

use crate::exactnum::rational::{exp_denom, lcm_u64};
use crate::exactnum::Cyclotomic;
use crate::scalar::Ring;
use crate::Exponent;

/// Exponent pair `(t-exponent, ζ-exponent)`.
pub type Monomial = (Exponent, Exponent);

/// Finite sum of `c · t^a · ζ^b`. No stored coefficient is zero.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct BiLaurent {
    terms: BTreeMap<Monomial, Cyclotomic>,
}

impl BiLaurent {
    pub fn monomial(c: Cyclotomic, t_exp: Exponent, z_exp: Exponent) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((t_exp, z_exp), c);
        }
        BiLaurent { terms }
    }

    pub fn constant(c: Cyclotomic) -> Self {
        Self::monomial(c, Exponent::zero(), Exponent::zero())
    }

    pub fn t_pow(e: Exponent) -> Self {
        Self::monomial(Cyclotomic::one(), e, Exponent::zero())
    }

    pub fn zeta_pow(e: Exponent) -> Self {
        Self::monomial(Cyclotomic::one(), Exponent::zero(), e)
    }

    pub fn from_terms(iter: impl IntoIterator<Item = (Monomial, Cyclotomic)>) -> Self {
        let mut out = BiLaurent::default();
        for (m, c) in iter {
            out.add_term(m, c);
        }
        out
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Cyclotomic> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: Monomial, c: Cyclotomic) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().add(&c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn coeff(&self, t_exp: Exponent, z_exp: Exponent) -> Cyclotomic {
        self.terms
            .get(&(t_exp, z_exp))
            .cloned()
            .unwrap_or_else(Cyclotomic::zero)
    }

    /// Single term, if the polynomial is a nonzero monomial.
    pub fn as_monomial(&self) -> Option<(Monomial, &Cyclotomic)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(m, c)| (*m, c))
        } else {
            None
        }
    }

    pub fn as_constant(&self) -> Option<Cyclotomic> {
        if self.is_empty() {
            return Some(Cyclotomic::zero());
        }
        match self.as_monomial() {
            Some(((t, z), c)) if t.is_zero() && z.is_zero() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn is_t_free(&self) -> bool {
        self.terms.keys().all(|(t, _)| t.is_zero())
    }

    pub fn is_zeta_free(&self) -> bool {
        self.terms.keys().all(|(_, z)| z.is_zero())
    }

    /// Lcm of the denominators of the t-exponents.
    pub fn t_denom(&self) -> u64 {
        self.terms.keys().fold(1, |acc, (t, _)| lcm_u64(acc, exp_denom(t)))
    }

    pub fn zeta_denom(&self) -> u64 {
        self.terms.keys().fold(1, |acc, (_, z)| lcm_u64(acc, exp_denom(z)))
    }

    pub fn scale(&self, c: &Cyclotomic) -> Self {
        if c.is_zero() {
            return Self::default();
        }
        BiLaurent {
            terms: self.terms.iter().map(|(m, a)| (*m, a.mul(c))).collect(),
        }
    }

    /// Multiplies by `t^a ζ^b`.
    pub fn shift(&self, t_exp: Exponent, z_exp: Exponent) -> Self {
        BiLaurent {
            terms: self
                .terms
                .iter()
                .map(|((t, z), c)| ((t + t_exp, z + z_exp), c.clone()))
                .collect(),
        }
    }

    pub fn map_coeffs(&self, f: impl Fn(&Cyclotomic) -> Cyclotomic) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, c)| (*m, f(c))))
    }

    /// Lifts every coefficient to Q(ζ_M).
    pub fn lift_coeffs(&self, modulus: u64) -> crate::Result<Self> {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| Ok((*m, c.lift(modulus)?)))
            .collect::<crate::Result<_>>()?;
        Ok(BiLaurent { terms })
    }

    /// Common modulus of all coefficients.
    pub fn coeff_modulus(&self) -> u64 {
        self.terms.values().fold(1, |acc, c| lcm_u64(acc, c.modulus()))
    }

    /// Replaces ζ by `value(e)` for each ζ-exponent `e`.
    pub fn specialize_zeta(
        &self,
        mut value: impl FnMut(Exponent) -> crate::Result<Cyclotomic>,
    ) -> crate::Result<Self> {
        let mut out = BiLaurent::default();
        for ((t, z), c) in &self.terms {
            out.add_term((*t, Exponent::zero()), c.mul(&value(*z)?));
        }
        Ok(out)
    }

    /// Numeric value with `t^a = e^{2πi a z}` and `ζ^b = e^{2πi b σ}`.
    pub fn eval(&self, z: Complex64, sigma: Complex64) -> Complex64 {
        let tau = std::f64::consts::TAU;
        self.terms
            .iter()
            .map(|((a, b), c)| {
                let a = *a.numer() as f64 / *a.denom() as f64;
                let b = *b.numer() as f64 / *b.denom() as f64;
                let phase = Complex64::i() * tau * (z * a + sigma * b);
                c.to_complex() * phase.exp()
            })
            .sum()
    }

    /// Lowest t-exponent (for nonzero polynomials).
    pub fn min_t(&self) -> Option<Exponent> {
        self.terms.keys().map(|(t, _)| *t).min()
    }

    pub fn max_t(&self) -> Option<Exponent> {
        self.terms.keys().map(|(t, _)| *t).max()
    }

    pub fn min_zeta(&self) -> Option<Exponent> {
        self.terms.keys().map(|(_, z)| *z).min()
    }

    /// Sum of the terms whose t-exponent equals `t`, as a ζ-polynomial.
    pub fn t_slice(&self, t: Exponent) -> BiLaurent {
        Self::from_terms(
            self.terms
                .iter()
                .filter(|((te, _), _)| *te == t)
                .map(|((_, z), c)| ((Exponent::zero(), *z), c.clone())),
        )
    }
}

impl Ring for BiLaurent {
    fn zero() -> Self {
        Self::default()
    }
    fn one() -> Self {
        Self::constant(Cyclotomic::one())
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
    fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.neg());
        }
        out
    }
    fn neg(&self) -> Self {
        BiLaurent {
            terms: self.terms.iter().map(|(m, c)| (*m, c.neg())).collect(),
        }
    }
    fn mul(&self, other: &Self) -> Self {
        let mut out = BiLaurent::default();
        for ((t1, z1), a) in &self.terms {
            for ((t2, z2), b) in &other.terms {
                out.add_term((t1 + t2, z1 + z2), a.mul(b));
            }
        }
        out
    }
    fn try_inv(&self) -> Option<Self> {
        let ((t, z), c) = self.as_monomial()?;
        Some(Self::monomial(c.inverse().ok()?, -t, -z))
    }
}

impl fmt::Debug for BiLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for BiLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, ((t, z), c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            let unit = !t.is_zero() || !z.is_zero();
            if c.is_one() && unit {
            } else if c.as_rational().is_some() {
                write!(f, "{c}")?;
            } else {
                write!(f, "[{c}]")?;
            }
            if !t.is_zero() {
                write!(f, "t^{t}")?;
            }
            if !z.is_zero() {
                write!(f, "ζ^{z}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rational::exp;

    fn c(n: i64) -> Cyclotomic {
        Cyclotomic::from_int(n)
    }

    #[test]
    fn difference_of_squares() {
        let half = exp(1, 2);
        let a = BiLaurent::t_pow(half).sub(&BiLaurent::t_pow(-half));
        let b = BiLaurent::t_pow(half).add(&BiLaurent::t_pow(-half));
        let expected = BiLaurent::t_pow(exp(1, 1)).sub(&BiLaurent::t_pow(exp(-1, 1)));
        assert_eq!(a.mul(&b), expected);
    }

    #[test]
    fn additive_inverse() {
        let x = BiLaurent::from_terms([
            ((exp(1, 3), exp(0, 1)), c(2)),
            ((exp(-2, 1), exp(1, 2)), Cyclotomic::root_of_unity(1, 5)),
        ]);
        assert!(x.add(&x.neg()).is_zero());
    }

    #[test]
    fn formal_zeta_product() {
        let one = BiLaurent::one();
        let zt = BiLaurent::monomial(c(1), exp(1, 1), exp(1, 1));
        let a = one.sub(&zt);
        let b = one.sub(&zt.try_inv().unwrap());
        let expected = BiLaurent::from_terms([
            ((exp(0, 1), exp(0, 1)), c(2)),
            ((exp(1, 1), exp(1, 1)), c(-1)),
            ((exp(-1, 1), exp(-1, 1)), c(-1)),
        ]);
        assert_eq!(a.mul(&b), expected);
    }

    #[test]
    fn numeric_evaluation_is_multiplicative() {
        let a = BiLaurent::from_terms([
            ((exp(1, 2), exp(0, 1)), c(1)),
            ((exp(0, 1), exp(1, 1)), Cyclotomic::root_of_unity(1, 3)),
        ]);
        let b = BiLaurent::one().sub(&BiLaurent::t_pow(exp(-1, 1)));
        let (z, s) = (Complex64::new(0.13, 0.02), Complex64::new(0.31, 0.0));
        let lhs = a.mul(&b).eval(z, s);
        let rhs = a.eval(z, s) * b.eval(z, s);
        assert!((lhs - rhs).norm() < 1e-12);
    }
}
