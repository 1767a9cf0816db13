//! `Φ(z, τ)` and the extended `φ(w, τ, σ)` as exact truncated q-series.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exactnum::rational::{exp, exp_denom, from_exponent, lcm_u64};
use crate::exactnum::Cyclotomic;
use crate::scalar::Ring;
use crate::series::{BiLaurent, QSeries, RationalFunction};
use crate::Exponent;

use super::{GenusKind, GenusSeries, SigmaSpec};

/// `ζ` and its powers for one evaluation, with every constant in `Q(ζ_M)`.
#[derive(Clone, Debug)]
pub(crate) struct Context {
    pub sigma: SigmaSpec,
    pub modulus: u64,
    zeta: BiLaurent,
    zeta_inv: BiLaurent,
    zeta_neg_half: BiLaurent,
}

impl Context {
    pub fn new(sigma: SigmaSpec, modulus: u64) -> Result<Self> {
        let modulus = lcm_u64(modulus, sigma.base_modulus());
        let mut ctx = Context {
            sigma,
            modulus,
            zeta: BiLaurent::one(),
            zeta_inv: BiLaurent::one(),
            zeta_neg_half: BiLaurent::one(),
        };
        ctx.zeta = ctx.zeta_pow(exp(1, 1))?;
        ctx.zeta_inv = ctx.zeta_pow(exp(-1, 1))?;
        ctx.zeta_neg_half = ctx.zeta_pow(exp(-1, 2))?;
        Ok(ctx)
    }

    pub fn one(&self) -> Cyclotomic {
        Cyclotomic::root_of_unity(0, self.modulus)
    }

    /// `e^{2πi e}`.
    pub fn root(&self, e: Exponent) -> Result<Cyclotomic> {
        Cyclotomic::exp_2pi_i(&from_exponent(&e), self.modulus)
    }

    /// `ζ^e`: a ζ-monomial in formal mode, a root of unity otherwise.
    pub fn zeta_pow(&self, e: Exponent) -> Result<BiLaurent> {
        match self.sigma {
            SigmaSpec::Formal => Ok(BiLaurent::monomial(self.one(), Exponent::zero(), e)),
            SigmaSpec::Rational { k, n } => Ok(BiLaurent::constant(self.root(e * k / n)?)),
        }
    }
}

/// `num / den` where only the numerator depends on `q`.
#[derive(Clone, Debug)]
pub(crate) struct Fraction {
    pub num: QSeries<BiLaurent>,
    pub den: BiLaurent,
}

impl Fraction {
    pub fn one(order: Exponent) -> Self {
        Fraction {
            num: QSeries::one(order),
            den: BiLaurent::one(),
        }
    }

    pub fn mul(&self, other: &Fraction) -> Fraction {
        Fraction {
            num: self.num.mul(&other.num),
            den: self.den.mul(&other.den),
        }
    }

    pub fn reduce(&self) -> Result<QSeries<RationalFunction>> {
        self.num.try_map(|c| RationalFunction::reduce(c, &self.den))
    }
}

/// `(1 − z c q^s) / (1 − c q^s) = 1 + (1 − z) Σ_{j≥1} c^j q^{js}` for `s > 0`.
fn ratio_series(c: &BiLaurent, z: &BiLaurent, s: Exponent, order: Exponent) -> QSeries<BiLaurent> {
    let mut out = QSeries::one(order);
    let one_minus_z = BiLaurent::one().sub(z);
    if one_minus_z.is_zero() {
        return out;
    }
    let mut pow = c.clone();
    let mut e = s;
    while e <= order {
        out.add_term(e, one_minus_z.mul(&pow));
        pow = pow.mul(c);
        e += s;
    }
    out
}

/// `φ(w, τ, σ)` with `e^{2πiw} = t^{t_exp} e^{−2πi root_arg} q^{q_shift}`.
///
/// The product is regrouped into ratios `(1 − z c q^s)/(1 − c q^s)` with
/// `z = ζ^{±1}`. A ratio with `s < 0` equals `z` times the ratio for
/// `(c⁻¹, z⁻¹, −s)`; one with `s = 0` is a scalar fraction whose
/// denominator vanishes identically exactly when `c = 1`.
pub(crate) fn phi_fraction(
    ctx: &Context,
    t_exp: Exponent,
    q_shift: Exponent,
    root_arg: Exponent,
    order: Exponent,
) -> Result<Fraction> {
    let u = BiLaurent::monomial(ctx.root(-root_arg)?, t_exp, Exponent::zero());
    let u_inv = u.try_inv().expect("monomial");
    let mut ratios = Vec::new();
    let mut k = Exponent::zero();
    while q_shift + k <= order {
        ratios.push((u.clone(), ctx.zeta.clone(), q_shift + k));
        k += 1;
    }
    let mut k = Exponent::from_integer(1);
    while k - q_shift <= order {
        ratios.push((u_inv.clone(), ctx.zeta_inv.clone(), k - q_shift));
        k += 1;
    }

    let mut scalar = ctx.zeta_neg_half.clone();
    let mut den = BiLaurent::one();
    let mut num = QSeries::one(order);
    for (mut c, mut z, mut s) in ratios {
        if s.is_negative() {
            scalar = scalar.mul(&z);
            c = c.try_inv().expect("monomial");
            z = z.try_inv().expect("ζ is a unit");
            s = -s;
        }
        if s.is_zero() {
            let d = BiLaurent::one().sub(&c);
            if d.is_zero() {
                return Err(Error::PoleAtFactor(format!(
                    "t^{t_exp} q^{q_shift} e^(-2πi·{root_arg}) = 1"
                )));
            }
            den = den.mul(&d);
            scalar = scalar.mul(&BiLaurent::one().sub(&z.mul(&c)));
        } else if s <= order {
            num = num.mul(&ratio_series(&c, &z, s, order));
        }
    }
    Ok(Fraction {
        num: num.scale(&scalar),
        den,
    })
}

/// One factor of the fixed-point formula as a series of reduced rational functions.
pub fn phi_factor(
    t_exp: Exponent,
    q_shift: Exponent,
    root_arg: Exponent,
    sigma: SigmaSpec,
    order: Exponent,
) -> Result<QSeries<RationalFunction>> {
    let ctx = Context::new(sigma, exp_denom(&root_arg))?;
    phi_fraction(&ctx, t_exp, q_shift, root_arg, order)?.reduce()
}

/// `(x^{1/2} − x^{−1/2}) ∏_{k≥1} (1 − x q^k)(1 − x⁻¹ q^k)/(1 − q^k)²`.
fn capital_phi_with(x_half: &BiLaurent, order: Exponent) -> QSeries<BiLaurent> {
    let x_neg_half = x_half.try_inv().expect("monomial");
    let x = x_half.mul(x_half);
    let x_inv = x_neg_half.mul(&x_neg_half);
    let mut out = QSeries::constant(x_half.sub(&x_neg_half), order);
    let mut k = Exponent::from_integer(1);
    while k <= order {
        for c in [&x, &x_inv] {
            out = out.mul(&QSeries::from_terms(
                [(Exponent::zero(), BiLaurent::one()), (k, c.neg())],
                order,
            ));
        }
        let g = QSeries::geometric(&BiLaurent::one(), k, order).expect("positive shift");
        out = out.mul(&g).mul(&g);
        k += 1;
    }
    out
}

/// `Φ(z, τ)` with `t = e^{2πiz}`, coefficients Laurent in `t^{1/2}`.
pub fn capital_phi(order: Exponent) -> QSeries<BiLaurent> {
    capital_phi_with(&BiLaurent::t_pow(exp(1, 2)), order)
}

/// `Φ(σ, τ)`: `t` replaced by `ζ`.
pub fn capital_phi_at_zeta(sigma: SigmaSpec, order: Exponent) -> Result<QSeries<BiLaurent>> {
    let ctx = Context::new(sigma, 1)?;
    Ok(capital_phi_with(&ctx.zeta_pow(exp(1, 2))?, order))
}

fn phi_sigma_power(g: &GenusSeries) -> Result<QSeries<RationalFunction>> {
    let phi = capital_phi_at_zeta(g.sigma, g.order)?.to_rational();
    let mut acc = QSeries::one(g.order);
    for _ in 0..g.n {
        acc = acc.mul(&phi);
    }
    Ok(acc)
}

/// `g / Φ(σ, τ)ⁿ`.
pub fn stabilize(g: &GenusSeries) -> Result<GenusSeries> {
    let inv = phi_sigma_power(g)?.invert_unit()?;
    Ok(GenusSeries {
        kind: GenusKind::Stabilized(Box::new(g.kind.clone())),
        series: g.series.mul(&inv).truncate(g.order),
        ..g.clone()
    })
}

/// Inverse of [`stabilize`].
pub fn unstabilize(g: &GenusSeries) -> Result<GenusSeries> {
    let GenusKind::Stabilized(inner) = &g.kind else {
        return Err(Error::InvalidArgument(format!("{} is not stabilized", g.kind.name())));
    };
    Ok(GenusSeries {
        kind: (**inner).clone(),
        series: g.series.mul(&phi_sigma_power(g)?).truncate(g.order),
        ..g.clone()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn e(n: i64) -> Exponent {
        Exponent::from_integer(n)
    }

    #[test]
    fn capital_phi_low_orders() {
        let half = BiLaurent::t_pow(exp(1, 2)).sub(&BiLaurent::t_pow(exp(-1, 2)));
        assert_eq!(capital_phi(e(0)), QSeries::constant(half.clone(), e(0)));
        // (t^½ − t^-½)(2 − t − t⁻¹) at q¹
        let two = BiLaurent::constant(Cyclotomic::from_int(2));
        let q1 = half.mul(&two.sub(&BiLaurent::t_pow(e(1))).sub(&BiLaurent::t_pow(e(-1))));
        let phi = capital_phi(e(1));
        assert_eq!(phi.coeff(e(0)), half);
        assert_eq!(phi.coeff(e(1)), q1);
    }

    #[test]
    fn capital_phi_matches_direct_product() {
        let (z, tau) = (Complex64::new(0.3, 0.0), Complex64::new(0.0, 1.1));
        let series = capital_phi(e(40));
        let q = (Complex64::i() * std::f64::consts::TAU * tau).exp();
        let exact: Complex64 = series
            .terms()
            .iter()
            .map(|(k, c)| c.eval(z, Complex64::new(0.0, 0.0)) * q.powf(*k.numer() as f64 / *k.denom() as f64))
            .sum();
        let t = (Complex64::i() * std::f64::consts::TAU * z).exp();
        let mut direct = t.sqrt() - t.sqrt().inv();
        for k in 1..200 {
            let qk = q.powi(k);
            direct *= (1.0 - t * qk) * (1.0 - qk / t) / ((1.0 - qk) * (1.0 - qk));
        }
        assert!((exact - direct).norm() < 1e-10, "{exact} vs {direct}");
    }

    #[test]
    fn pole_is_reported() {
        assert!(matches!(
            phi_factor(e(0), e(0), e(0), SigmaSpec::Formal, e(1)),
            Err(Error::PoleAtFactor(_))
        ));
    }

    #[test]
    fn q0_term_formal() {
        // ζ^{-1/2}(1 − ζt⁻¹)/(1 − t⁻¹)
        let s = phi_factor(e(-1), e(0), e(0), SigmaSpec::Formal, e(0)).unwrap();
        let z = |a: i64, b: i64| BiLaurent::monomial(Cyclotomic::from_int(1), e(0), exp(a, b));
        let num = z(-1, 2).mul(&BiLaurent::one().sub(&BiLaurent::monomial(
            Cyclotomic::from_int(1),
            e(-1),
            e(1),
        )));
        let den = BiLaurent::one().sub(&BiLaurent::t_pow(e(-1)));
        assert_eq!(s.coeff(e(0)), RationalFunction::reduce(&num, &den).unwrap());
        assert_eq!(s.terms().len(), 1);
    }

    #[test]
    fn shift_laws_hold_exactly() {
        for (te, f, a, k, n) in [(1, exp(1, 3), exp(2, 3), 1, 5), (-2, exp(0, 1), exp(1, 2), 2, 3), (3, exp(-5, 4), exp(1, 4), 3, 7)] {
            let sigma = SigmaSpec::Rational { k, n };
            let ctx = Context::new(sigma, 4 * 3 * 2).unwrap();
            let lhs = phi_fraction(&ctx, e(te), f + 1, a, e(3)).unwrap();
            let rhs = phi_fraction(&ctx, e(te), f, a, e(3)).unwrap();
            let zinv = ctx.zeta_pow(e(-1)).unwrap();
            assert_eq!(lhs.num.scale(&rhs.den), rhs.num.scale(&lhs.den).scale(&zinv));
            let shifted = phi_fraction(&ctx, e(te), f, a + 1, e(3)).unwrap();
            assert_eq!(shifted.num.scale(&rhs.den), rhs.num.scale(&shifted.den));
        }
    }

    #[test]
    fn phi_is_ratio_of_capital_phi_numerically() {
        // φ(z, τ, σ) = Φ(z + σ, τ)/Φ(z, τ)
        let (z, tau, sigma) = (Complex64::new(0.21, 0.03), Complex64::new(0.1, 1.2), Complex64::new(0.25, 0.0));
        let q = (Complex64::i() * std::f64::consts::TAU * tau).exp();
        let eval = |s: &QSeries<BiLaurent>, z: Complex64| -> Complex64 {
            s.terms()
                .iter()
                .map(|(k, c)| c.eval(z, sigma) * q.powf(*k.numer() as f64 / *k.denom() as f64))
                .sum()
        };
        let big = capital_phi(e(30));
        let ratio = eval(&big, z + sigma) / eval(&big, z);
        let f = phi_fraction(&Context::new(SigmaSpec::Rational { k: 1, n: 4 }, 1).unwrap(), e(1), e(0), e(0), e(30)).unwrap();
        let val = eval(&f.num, z) / f.den.eval(z, sigma);
        assert!((ratio - val).norm() < 1e-9, "{ratio} vs {val}");
    }
}
