//! The `T_y` family as rational functions in `t`, computed directly from the
//! Bott-type localization sum (independently of the elliptic evaluators).
//!
//! With `ζ = −y`, the sector `(h₁, h₂)` at a point contributes
//! `w(h₁)/|H| · ∏_{i : chi_i(h₁) = 0} (1 − ζ t^{−m_i} ε_i)/(1 − t^{−m_i} ε_i)`,
//! `ε_i = e^{−2πi chi_i(h₂)}`.

use num_integer::Integer;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactnum::rational::{frac, from_exponent, int, to_exponent};
use crate::exactnum::Cyclotomic;
use crate::model::OrbifoldModel;
use crate::scalar::Ring;
use crate::series::{BiLaurent, QSeries, RationalFunction};
use crate::Exponent;

use super::arith::breve_lift;
use super::{GenusKind, GenusSeries, SigmaSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TyKind {
    /// Untwisted sectors only.
    Ty,
    /// All sectors with weight `(−y)^{f}`.
    HatTy,
    /// All sectors with weight `(−y)^{breve f}`; needs a level.
    BreveTy,
    /// `T_y` at `y = 0`.
    Todd,
}

/// One (point, h₁, h₂) term of the localization sum.
#[derive(Clone, Debug, PartialEq)]
pub struct TySector {
    pub point: String,
    pub h1: usize,
    pub h2: usize,
    /// `w(h₁)/|H|`.
    pub weight: BiLaurent,
    /// Numerator including the weight.
    pub num: BiLaurent,
    pub den: BiLaurent,
    /// Number of factors with positive t-weight.
    pub mu: usize,
    /// Number of factors in the product.
    pub factors: usize,
}

struct Zeta {
    sigma: SigmaSpec,
    modulus: u64,
    todd: bool,
}

impl Zeta {
    fn one(&self) -> Cyclotomic {
        Cyclotomic::root_of_unity(0, self.modulus)
    }

    fn root(&self, e: Exponent) -> Result<Cyclotomic> {
        Cyclotomic::exp_2pi_i(&from_exponent(&e), self.modulus)
    }

    fn pow(&self, e: Exponent) -> Result<BiLaurent> {
        if self.todd {
            return Ok(if e.is_zero() { BiLaurent::one() } else { BiLaurent::zero() });
        }
        match self.sigma {
            SigmaSpec::Formal => Ok(BiLaurent::monomial(self.one(), Exponent::zero(), e)),
            SigmaSpec::Rational { k, n } => Ok(BiLaurent::constant(self.root(e * k / n)?)),
        }
    }
}

fn breve_level(m: &OrbifoldModel, sigma: SigmaSpec, level: Option<i64>) -> Result<i64> {
    let n = level
        .or(sigma.parts().map(|(_, n)| n))
        .ok_or_else(|| Error::InvalidArgument("breveTy needs a level N".into()))?;
    if n < 2 {
        return Err(Error::InvalidArgument(format!("level {n} must be greater than 1")));
    }
    for p in &m.fixed_points {
        let order = p.order() as u64;
        if order.gcd(&(n as u64)) != 1 {
            return Err(Error::NonCoprimeLevel { level: n, order });
        }
    }
    if let Some((k, d)) = sigma.parts() {
        if (k * n) % d != 0 {
            return Err(Error::InvalidArgument(format!(
                "ζ = e^(2πi·{k}/{d}) is not an N-th root of unity for N = {n}"
            )));
        }
    }
    Ok(n)
}

/// Every sector term of the chosen `T_y` variant, in model order.
pub fn ty_sectors(
    m: &OrbifoldModel,
    which: TyKind,
    zeta: SigmaSpec,
    level: Option<i64>,
) -> Result<Vec<TySector>> {
    m.require_evaluable()?;
    let level = match which {
        TyKind::BreveTy => Some(breve_level(m, zeta, level)?),
        _ => None,
    };
    let z = Zeta {
        sigma: zeta,
        modulus: zeta.modulus_for(m.r()),
        todd: which == TyKind::Todd,
    };
    let zeta1 = z.pow(Exponent::from_integer(1))?;
    let mut out = Vec::new();
    for p in &m.fixed_points {
        let g = &p.isotropy;
        let size = int(g.order() as i64);
        let h1s: Vec<usize> = match which {
            TyKind::Ty | TyKind::Todd => vec![g.identity()],
            _ => g.elements().collect(),
        };
        for h1 in h1s {
            let w = match (which, level) {
                (TyKind::HatTy, _) => z.pow(to_exponent(&super::age_f(p, h1))?)?,
                (TyKind::BreveTy, Some(n)) => {
                    let mut b = 0;
                    for wt in &p.weights {
                        b += breve_lift(&wt.chi[h1], n)?;
                    }
                    z.pow(Exponent::from_integer(b.rem_euclid(n)))?
                }
                _ => BiLaurent::one(),
            };
            let weight = w.scale(&z.one().scale(&size.recip()));
            for h2 in g.elements() {
                let mut num = weight.clone();
                let mut den = BiLaurent::one();
                let (mut mu, mut factors) = (0, 0);
                for wt in &p.weights {
                    if frac(&wt.chi[h1]) != int(0) {
                        continue;
                    }
                    let m_i = to_exponent(&wt.m_s1)?;
                    let eps = z.root(-to_exponent(&wt.chi[h2])?)?;
                    let c = BiLaurent::monomial(eps, -m_i, Exponent::zero());
                    let d = BiLaurent::one().sub(&c);
                    if d.is_zero() {
                        return Err(Error::PoleAtFactor(format!("zero t-weight at `{}`", p.label)));
                    }
                    num = num.mul(&BiLaurent::one().sub(&zeta1.mul(&c)));
                    den = den.mul(&d);
                    factors += 1;
                    if m_i > Exponent::zero() {
                        mu += 1;
                    }
                }
                out.push(TySector {
                    point: p.label.clone(),
                    h1,
                    h2,
                    weight: weight.clone(),
                    num,
                    den,
                    mu,
                    factors,
                });
            }
        }
    }
    Ok(out)
}

/// The `T_y`-type genus as a single reduced coefficient (stored at `q⁰`).
///
/// `zeta` fixes `ζ = −y`: formal, or `e^{2πik/N}`. It is ignored for Todd.
pub fn ty_family(m: &OrbifoldModel, which: TyKind, zeta: SigmaSpec, level: Option<i64>) -> Result<GenusSeries> {
    let zeta = if which == TyKind::Todd { SigmaSpec::Formal } else { zeta };
    let sectors = ty_sectors(m, which, zeta, level)?;
    let parts: Vec<_> = sectors.into_iter().map(|s| (s.num, s.den)).collect();
    let value = RationalFunction::sum_fractions(&parts)?;
    let order = Exponent::zero();
    Ok(GenusSeries {
        kind: match which {
            TyKind::Ty => GenusKind::Ty,
            TyKind::HatTy => GenusKind::HatTy,
            TyKind::BreveTy => GenusKind::BreveTy,
            TyKind::Todd => GenusKind::Todd,
        },
        sigma: zeta,
        model: m.name.clone(),
        n: m.n,
        order,
        modulus: zeta.modulus_for(m.r()),
        series: QSeries::from_terms([(order, value)], order),
    })
}
