//! Reduced fractions of [`BiLaurent`] polynomials.
//!
//! Denominators are required to split as `unit · A(t) · B(ζ)`; every
//! denominator produced by the fixed-point formulas has this shape (the
//! t-part is a product of `1 − ε t^m`, the ζ-part only appears when
//! dividing by Jacobi values at `t = ζ`). Reduction cancels the gcd of the
//! numerator with `A` over `K(ζ)[t]` and with `B` over `K(t)[ζ]`, where `K`
//! is the cyclotomic coefficient field. Since `A` and `B` are univariate,
//! both gcds are computed as univariate gcds over `K` against the slices of
//! the numerator.

use std::fmt;

use num_complex::Complex64;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactnum::rational::lcm_u64;
use crate::exactnum::Cyclotomic;
use crate::scalar::Ring;
use crate::series::laurent::{BiLaurent, Monomial};
use crate::series::poly::Poly;
use crate::Exponent;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Axis {
    T,
    Zeta,
}

impl Axis {
    fn get(self, m: &Monomial) -> Exponent {
        match self {
            Axis::T => m.0,
            Axis::Zeta => m.1,
        }
    }
    fn other(self, m: &Monomial) -> Exponent {
        match self {
            Axis::T => m.1,
            Axis::Zeta => m.0,
        }
    }
    fn make(self, along: Exponent, other: Exponent) -> Monomial {
        match self {
            Axis::T => (along, other),
            Axis::Zeta => (other, along),
        }
    }
    fn denom(self, b: &BiLaurent) -> u64 {
        match self {
            Axis::T => b.t_denom(),
            Axis::Zeta => b.zeta_denom(),
        }
    }
}

/// Polynomial in `w = var^{1/d}` of a univariate Laurent polynomial whose
/// lowest exponent along `axis` is `shift`. All other-axis exponents must be zero.
fn to_poly(b: &BiLaurent, axis: Axis, d: u64, shift: Exponent) -> Poly<Cyclotomic> {
    let d_e = Exponent::from_integer(d as i64);
    let mut coeffs: Vec<Cyclotomic> = Vec::new();
    for (m, c) in b.terms() {
        debug_assert!(axis.other(m).is_zero());
        let idx = (axis.get(m) - shift) * d_e;
        debug_assert!(idx.is_integer() && idx >= Exponent::zero());
        let idx = idx.to_integer() as usize;
        if coeffs.len() <= idx {
            coeffs.resize(idx + 1, Cyclotomic::zero());
        }
        coeffs[idx] = c.clone();
    }
    Poly::new(coeffs)
}

fn from_poly(p: &Poly<Cyclotomic>, axis: Axis, d: u64, shift: Exponent) -> BiLaurent {
    let d_e = Exponent::from_integer(d as i64);
    BiLaurent::from_terms(p.coeffs().iter().enumerate().map(|(k, c)| {
        let e = shift + Exponent::from_integer(k as i64) / d_e;
        (axis.make(e, Exponent::zero()), c.clone())
    }))
}

/// Slices of `num` by the exponent along the other axis, each moved onto the main axis.
fn slices(num: &BiLaurent, axis: Axis) -> Vec<(Exponent, BiLaurent)> {
    let mut out: Vec<(Exponent, BiLaurent)> = Vec::new();
    for (m, c) in num.terms() {
        let key = axis.other(m);
        let term = (axis.make(axis.get(m), Exponent::zero()), c.clone());
        match out.iter_mut().find(|(k, _)| *k == key) {
            Some((_, s)) => s.add_term(term.0, term.1),
            None => out.push((key, BiLaurent::from_terms([term]))),
        }
    }
    out
}

fn min_along(b: &BiLaurent, axis: Axis) -> Exponent {
    b.terms().keys().map(|m| axis.get(m)).min().unwrap_or_else(Exponent::zero)
}

/// Cancels the gcd of `num` and the univariate, normalized `den` along `axis`.
/// Returns the new numerator and normalized denominator.
fn cancel(num: &BiLaurent, den: &BiLaurent, axis: Axis) -> (BiLaurent, BiLaurent) {
    if den.is_one() || num.is_zero() {
        return (num.clone(), den.clone());
    }
    let d = lcm_u64(axis.denom(num), axis.denom(den));
    let pden = to_poly(den, axis, d, Exponent::zero());
    let shift = min_along(num, axis);
    let parts: Vec<(Exponent, Poly<Cyclotomic>)> = slices(num, axis)
        .into_iter()
        .map(|(k, s)| (k, to_poly(&s, axis, d, shift)))
        .collect();
    let mut g = pden.clone();
    for (_, p) in &parts {
        if g.degree() == Some(0) {
            break;
        }
        g = g.gcd(p);
    }
    if g.degree() == Some(0) {
        return (num.clone(), den.clone());
    }
    let reduced_den = pden.div_exact(&g).expect("gcd divides denominator");
    let lambda = reduced_den.coeff(0).inverse().expect("constant term is nonzero");
    let reduced_den = reduced_den.scale(&lambda);
    let mut out = BiLaurent::default();
    for (k, p) in &parts {
        let q = p.div_exact(&g).expect("gcd divides slice").scale(&lambda);
        let piece = from_poly(&q, axis, d, shift);
        let moved = match axis {
            Axis::T => piece.shift(Exponent::zero(), *k),
            Axis::Zeta => piece.shift(*k, Exponent::zero()),
        };
        out = out.add(&moved);
    }
    (out, from_poly(&reduced_den, axis, d, Exponent::zero()))
}

/// Splits a nonzero `den` as `c t^a ζ^b · A(t) · B(ζ)` with `A(0) = B(0) = 1`.
fn split(den: &BiLaurent) -> Result<(BiLaurent, BiLaurent, BiLaurent)> {
    let t0 = den.min_t().ok_or(Error::ZeroDenominator)?;
    let z0 = den.min_zeta().ok_or(Error::ZeroDenominator)?;
    let a0 = den.coeff(t0, z0);
    if a0.is_zero() {
        return Err(Error::NonSeparableDenominator);
    }
    let a0_inv = a0.inverse()?;
    let unit = BiLaurent::monomial(a0.clone(), t0, z0);
    // column at ζ^{z0}, row at t^{t0}
    let col = BiLaurent::from_terms(
        den.terms()
            .iter()
            .filter(|((_, z), _)| *z == z0)
            .map(|((t, _), c)| ((t - t0, Exponent::zero()), c.mul(&a0_inv))),
    );
    let row = BiLaurent::from_terms(
        den.terms()
            .iter()
            .filter(|((t, _), _)| *t == t0)
            .map(|((_, z), c)| ((Exponent::zero(), z - z0), c.mul(&a0_inv))),
    );
    if unit.mul(&col).mul(&row) != *den {
        return Err(Error::NonSeparableDenominator);
    }
    Ok((unit, col, row))
}

/// `num / (den_t · den_zeta)` in canonical reduced form.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalFunction {
    num: BiLaurent,
    den_t: BiLaurent,
    den_zeta: BiLaurent,
}

impl RationalFunction {
    pub fn from_laurent(num: BiLaurent) -> Self {
        RationalFunction {
            num,
            den_t: BiLaurent::one(),
            den_zeta: BiLaurent::one(),
        }
    }

    pub fn constant(c: Cyclotomic) -> Self {
        Self::from_laurent(BiLaurent::constant(c))
    }

    /// Canonical reduced form of `num / den`.
    pub fn reduce(num: &BiLaurent, den: &BiLaurent) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        let (unit, a, b) = split(den)?;
        let num = num.mul(&unit.try_inv().expect("monomial with nonzero coefficient"));
        Ok(Self::reduce_split(num, a, b))
    }

    fn reduce_split(num: BiLaurent, den_t: BiLaurent, den_zeta: BiLaurent) -> Self {
        if num.is_zero() {
            return Self::from_laurent(num);
        }
        let (num, den_t) = cancel(&num, &den_t, Axis::T);
        let (num, den_zeta) = cancel(&num, &den_zeta, Axis::Zeta);
        RationalFunction {
            num,
            den_t,
            den_zeta,
        }
    }

    pub fn numerator(&self) -> &BiLaurent {
        &self.num
    }

    /// Full denominator `A(t) · B(ζ)`.
    pub fn denominator(&self) -> BiLaurent {
        self.den_t.mul(&self.den_zeta)
    }

    pub fn t_denominator(&self) -> &BiLaurent {
        &self.den_t
    }

    pub fn zeta_denominator(&self) -> &BiLaurent {
        &self.den_zeta
    }

    /// Neither numerator nor denominator contains t.
    pub fn is_t_constant(&self) -> bool {
        self.den_t.is_one() && self.num.is_t_free()
    }

    pub fn has_t_free_denominator(&self) -> bool {
        self.den_t.is_one()
    }

    pub fn as_laurent(&self) -> Option<&BiLaurent> {
        (self.den_t.is_one() && self.den_zeta.is_one()).then_some(&self.num)
    }

    pub fn eval(&self, z: Complex64, sigma: Complex64) -> Complex64 {
        self.num.eval(z, sigma) / self.denominator().eval(z, sigma)
    }

    pub fn scale(&self, c: &Cyclotomic) -> Self {
        RationalFunction {
            num: self.num.scale(c),
            ..self.clone()
        }
    }

    pub fn mul_laurent(&self, m: &BiLaurent) -> Self {
        Self::reduce_split(self.num.mul(m), self.den_t.clone(), self.den_zeta.clone())
    }

    /// Replaces ζ-powers by cyclotomic values; the ζ-denominator must evaluate to a unit.
    pub fn specialize_zeta(
        &self,
        mut value: impl FnMut(Exponent) -> Result<Cyclotomic>,
    ) -> Result<Self> {
        let num = self.num.specialize_zeta(&mut value)?;
        let den = self.den_t.mul(&self.den_zeta.specialize_zeta(&mut value)?);
        Self::reduce(&num, &den)
    }

    pub fn lift_coeffs(&self, modulus: u64) -> Result<Self> {
        Ok(RationalFunction {
            num: self.num.lift_coeffs(modulus)?,
            den_t: self.den_t.lift_coeffs(modulus)?,
            den_zeta: self.den_zeta.lift_coeffs(modulus)?,
        })
    }

    /// Sums fractions over a single common denominator, reducing once at the end.
    pub fn sum_fractions(parts: &[(BiLaurent, BiLaurent)]) -> Result<Self> {
        let mut split_parts = Vec::with_capacity(parts.len());
        for (n, d) in parts {
            if n.is_zero() {
                continue;
            }
            if d.is_zero() {
                return Err(Error::ZeroDenominator);
            }
            let (unit, a, b) = split(d)?;
            let n = n.mul(&unit.try_inv().expect("unit"));
            split_parts.push((n, a, b));
        }
        let mut lcm_t = BiLaurent::one();
        let mut lcm_z = BiLaurent::one();
        for (_, a, b) in &split_parts {
            lcm_t = lcm(&lcm_t, a, Axis::T);
            lcm_z = lcm(&lcm_z, b, Axis::Zeta);
        }
        let mut total = BiLaurent::default();
        for (n, a, b) in &split_parts {
            let ct = exact_quotient(&lcm_t, a, Axis::T);
            let cz = exact_quotient(&lcm_z, b, Axis::Zeta);
            total = total.add(&n.mul(&ct).mul(&cz));
        }
        Ok(Self::reduce_split(total, lcm_t, lcm_z))
    }

    pub fn sum<'a>(items: impl IntoIterator<Item = &'a RationalFunction>) -> Self {
        let parts: Vec<_> = items.into_iter().map(|r| (r.num.clone(), r.denominator())).collect();
        Self::sum_fractions(&parts).expect("denominators of reduced fractions split")
    }
}

fn lcm(a: &BiLaurent, b: &BiLaurent, axis: Axis) -> BiLaurent {
    if a.is_one() {
        return b.clone();
    }
    if b.is_one() || a == b {
        return a.clone();
    }
    let d = lcm_u64(axis.denom(a), axis.denom(b));
    let pa = to_poly(a, axis, d, Exponent::zero());
    let pb = to_poly(b, axis, d, Exponent::zero());
    let g = pa.gcd(&pb);
    let l = pa.mul(&pb.div_exact(&g).expect("gcd divides"));
    let l = l.scale(&l.coeff(0).inverse().expect("nonzero constant term"));
    from_poly(&l, axis, d, Exponent::zero())
}

fn exact_quotient(a: &BiLaurent, b: &BiLaurent, axis: Axis) -> BiLaurent {
    if b.is_one() {
        return a.clone();
    }
    let d = lcm_u64(axis.denom(a), axis.denom(b));
    let pa = to_poly(a, axis, d, Exponent::zero());
    let pb = to_poly(b, axis, d, Exponent::zero());
    from_poly(&pa.div_exact(&pb).expect("lcm is a multiple"), axis, d, Exponent::zero())
}

impl Ring for RationalFunction {
    fn zero() -> Self {
        Self::from_laurent(BiLaurent::zero())
    }
    fn one() -> Self {
        Self::from_laurent(BiLaurent::one())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn add(&self, other: &Self) -> Self {
        if self.den_t == other.den_t && self.den_zeta == other.den_zeta {
            return Self::reduce_split(
                self.num.add(&other.num),
                self.den_t.clone(),
                self.den_zeta.clone(),
            );
        }
        Self::sum([self, other])
    }
    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }
    fn neg(&self) -> Self {
        RationalFunction {
            num: self.num.neg(),
            ..self.clone()
        }
    }
    fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        Self::reduce_split(
            self.num.mul(&other.num),
            self.den_t.mul(&other.den_t),
            self.den_zeta.mul(&other.den_zeta),
        )
    }
    fn try_inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Self::reduce(&self.denominator(), &self.num).ok()
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let den = self.denominator();
        if den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rational::exp;

    fn t(e: i64) -> BiLaurent {
        BiLaurent::t_pow(exp(e, 1))
    }
    fn k(n: i64) -> BiLaurent {
        BiLaurent::constant(Cyclotomic::from_int(n))
    }
    fn zeta() -> BiLaurent {
        BiLaurent::zeta_pow(exp(1, 1))
    }

    #[test]
    fn factor_cancellation() {
        let r = RationalFunction::reduce(&t(2).sub(&k(1)), &t(1).sub(&k(1))).unwrap();
        assert_eq!(r, RationalFunction::from_laurent(t(1).add(&k(1))));
    }

    #[test]
    fn zeta_coefficient_survives_cancellation() {
        let one_plus_z = k(1).add(&zeta());
        let num = one_plus_z.mul(&t(1).sub(&k(1)));
        let r = RationalFunction::reduce(&num, &t(1).sub(&k(1))).unwrap();
        assert_eq!(r, RationalFunction::from_laurent(one_plus_z));
        assert!(r.is_t_constant());
    }

    #[test]
    fn monomial_denominator_is_a_unit() {
        let r = RationalFunction::reduce(&k(1), &t(1)).unwrap();
        assert_eq!(r.as_laurent(), Some(&t(-1)));
    }

    #[test]
    fn zero_denominator_rejected() {
        assert_eq!(
            RationalFunction::reduce(&k(1), &BiLaurent::zero()),
            Err(Error::ZeroDenominator)
        );
    }

    #[test]
    fn non_separable_denominator_rejected() {
        let den = k(1).sub(&zeta().mul(&t(1)));
        assert_eq!(
            RationalFunction::reduce(&k(1), &den),
            Err(Error::NonSeparableDenominator)
        );
    }

    #[test]
    fn cplone_ty_localization_sum() {
        // (1 - ζ t^{-1})/(1 - t^{-1}) + (1 - ζ t)/(1 - t) = 1 + ζ
        let a = RationalFunction::reduce(&k(1).sub(&zeta().mul(&t(-1))), &k(1).sub(&t(-1))).unwrap();
        let b = RationalFunction::reduce(&k(1).sub(&zeta().mul(&t(1))), &k(1).sub(&t(1))).unwrap();
        assert!(!a.has_t_free_denominator());
        let s = a.add(&b);
        assert_eq!(s, RationalFunction::from_laurent(k(1).add(&zeta())));
    }

    #[test]
    fn fractional_exponents_and_roots_of_unity() {
        // (1 - t) / (1 - ω t^{1/3}) with ω = ζ_3: 1 - t = Π_j (1 - ω^j t^{1/3})
        let w = Cyclotomic::root_of_unity(1, 3);
        let den = k(1).sub(&BiLaurent::monomial(w.clone(), exp(1, 3), exp(0, 1)));
        let r = RationalFunction::reduce(&k(1).sub(&t(1)), &den).unwrap();
        assert!(r.as_laurent().is_some());
        let expected = k(1)
            .sub(&BiLaurent::monomial(Cyclotomic::one(), exp(1, 3), exp(0, 1)))
            .mul(&k(1).sub(&BiLaurent::monomial(w.mul(&w), exp(1, 3), exp(0, 1))));
        assert_eq!(r.as_laurent(), Some(&expected));
    }

    #[test]
    fn zeta_denominator_cancels() {
        let den = k(1).sub(&zeta());
        let num = den.mul(&t(3));
        let r = RationalFunction::reduce(&num, &den).unwrap();
        assert_eq!(r.as_laurent(), Some(&t(3)));
        let inv = RationalFunction::from_laurent(den.clone()).try_inv().unwrap();
        assert_eq!(inv.zeta_denominator(), &den);
    }
}
