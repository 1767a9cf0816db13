//! Localization sums over fixed points and pairs of isotropy elements.

use num_integer::Integer;
use num_traits::Zero;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactnum::rational::{exp, from_exponent, to_exponent};
use crate::model::{FixedPointDatum, OrbifoldModel};
use crate::scalar::Ring;
use crate::series::{BiLaurent, QSeries, RationalFunction};
use crate::Exponent;

use super::arith::breve_lift;
use super::jacobi::{phi_fraction, Context, Fraction};
use super::{GenusKind, GenusSeries, SigmaSpec};

/// Tangent data of one fixed point with machine-size exponents.
#[derive(Clone, Debug, PartialEq)]
pub struct LocalPoint {
    pub label: String,
    pub identity: usize,
    /// t-exponents `m_i`.
    pub m: Vec<Exponent>,
    /// `chi[h][i]`; representatives are used as given.
    pub chi: Vec<Vec<Exponent>>,
}

impl LocalPoint {
    pub fn from_datum(p: &FixedPointDatum) -> Result<Self> {
        if !p.isotropy.is_abelian() {
            return Err(Error::NonAbelianIsotropy(p.label.clone()));
        }
        let m = p.weights.iter().map(|w| to_exponent(&w.m_s1)).collect::<Result<_>>()?;
        let chi = p
            .isotropy
            .elements()
            .map(|h| p.weights.iter().map(|w| to_exponent(&w.chi[h])).collect())
            .collect::<Result<_>>()?;
        Ok(LocalPoint {
            label: p.label.clone(),
            identity: p.isotropy.identity(),
            m,
            chi,
        })
    }

    pub fn order(&self) -> usize {
        self.chi.len()
    }
}

/// Which pairs `(h₁, h₂)` enter and with which prefactor.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SectorRule {
    /// `h₁ = e`: the equivariant elliptic genus.
    Untwisted,
    /// All pairs, prefactor `∏ ζ^{chi_i(h₁)}`.
    Orbifold,
    /// All pairs, prefactor `∏ e^{2πi·breve(chi_i(h₁))·k/N}`.
    Modified,
}

fn local_points(m: &OrbifoldModel) -> Result<Vec<LocalPoint>> {
    m.require_evaluable()?;
    m.fixed_points.iter().map(LocalPoint::from_datum).collect()
}

/// Weighted fractions `(w, F)` of every (point, h₁, h₂), grouped by point.
pub(crate) fn evaluate_local(
    points: &[LocalPoint],
    rule: SectorRule,
    ctx: &Context,
    order: Exponent,
) -> Result<Vec<Vec<(BiLaurent, Fraction)>>> {
    let mut jobs = Vec::new();
    for (x, p) in points.iter().enumerate() {
        let h1s: Vec<usize> = match rule {
            SectorRule::Untwisted => vec![p.identity],
            _ => (0..p.order()).collect(),
        };
        for &h1 in &h1s {
            for h2 in 0..p.order() {
                jobs.push((x, h1, h2));
            }
        }
    }
    let results: Vec<(usize, BiLaurent, Fraction)> = jobs
        .par_iter()
        .map(|&(x, h1, h2)| {
            let p = &points[x];
            let size = Exponent::from_integer(p.order() as i64);
            let prefactor = match rule {
                SectorRule::Untwisted => BiLaurent::one(),
                SectorRule::Orbifold => {
                    let f = p.chi[h1].iter().fold(Exponent::zero(), |a, c| a + c);
                    ctx.zeta_pow(f)?
                }
                SectorRule::Modified => {
                    let (k, n) = ctx.sigma.parts().expect("modified genus needs σ = k/N");
                    let mut b = 0i64;
                    for c in &p.chi[h1] {
                        b += breve_lift(&from_exponent(c), n)?;
                    }
                    BiLaurent::constant(ctx.root(exp(b * k, n))?)
                }
            };
            let weight = prefactor.scale(&ctx.root(Exponent::zero())?.scale(&from_exponent(&size.recip())));
            let mut frac = Fraction::one(order);
            for i in 0..p.m.len() {
                let q_shift = match rule {
                    SectorRule::Untwisted => Exponent::zero(),
                    _ => p.chi[h1][i],
                };
                frac = frac.mul(&phi_fraction(ctx, -p.m[i], q_shift, p.chi[h2][i], order)?);
            }
            Ok((x, weight, frac))
        })
        .collect::<Result<_>>()?;
    let mut grouped = vec![Vec::new(); points.len()];
    for (x, w, f) in results {
        grouped[x].push((w, f));
    }
    Ok(grouped)
}

/// Sums weighted fractions order by order, reducing once per order.
pub(crate) fn assemble(terms: &[(BiLaurent, Fraction)], order: Exponent) -> Result<QSeries<RationalFunction>> {
    let mut exponents: Vec<Exponent> = terms
        .iter()
        .flat_map(|(_, f)| f.num.terms().keys().copied())
        .collect();
    exponents.sort();
    exponents.dedup();
    let coeffs: Vec<(Exponent, RationalFunction)> = exponents
        .par_iter()
        .map(|&e| {
            // numerators over equal denominators are added before reduction
            let mut parts: Vec<(BiLaurent, BiLaurent)> = Vec::new();
            for (w, f) in terms {
                let c = f.num.coeff(e);
                if c.is_zero() {
                    continue;
                }
                let c = c.mul(w);
                match parts.iter_mut().find(|(_, d)| *d == f.den) {
                    Some((n, _)) => *n = n.add(&c),
                    None => parts.push((c, f.den.clone())),
                }
            }
            Ok((e, RationalFunction::sum_fractions(&parts)?))
        })
        .collect::<Result<_>>()?;
    Ok(QSeries::from_terms(coeffs, order))
}

fn check_level(m: &OrbifoldModel, n: i64) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("level {n} must be greater than 1")));
    }
    for p in &m.fixed_points {
        let order = p.order() as u64;
        if order.gcd(&(n as u64)) != 1 {
            return Err(Error::NonCoprimeLevel { level: n, order });
        }
    }
    Ok(())
}

fn rule_kind(rule: SectorRule) -> GenusKind {
    match rule {
        SectorRule::Untwisted => GenusKind::Elliptic,
        SectorRule::Orbifold => GenusKind::OrbifoldElliptic,
        SectorRule::Modified => GenusKind::ModifiedOrbifold,
    }
}

fn prepare(m: &OrbifoldModel, rule: SectorRule, sigma: SigmaSpec) -> Result<(Vec<LocalPoint>, Context)> {
    if rule == SectorRule::Modified {
        let (_, n) = sigma
            .parts()
            .ok_or_else(|| Error::InvalidArgument("the modified genus needs σ = k/N".into()))?;
        check_level(m, n)?;
    }
    let points = local_points(m)?;
    let ctx = Context::new(sigma, sigma.modulus_for(m.r()))?;
    Ok((points, ctx))
}

fn evaluate(m: &OrbifoldModel, rule: SectorRule, sigma: SigmaSpec, order: Exponent) -> Result<GenusSeries> {
    let (points, ctx) = prepare(m, rule, sigma)?;
    let terms: Vec<_> = evaluate_local(&points, rule, &ctx, order)?.into_iter().flatten().collect();
    Ok(GenusSeries {
        kind: rule_kind(rule),
        sigma,
        model: m.name.clone(),
        n: m.n,
        order,
        modulus: ctx.modulus,
        series: assemble(&terms, order)?,
    })
}

/// `Σ_x 1/|H_x| Σ_h ∏_i φ(−m_i z − chi_i(h), τ, σ)`.
pub fn equivariant_elliptic_genus(m: &OrbifoldModel, sigma: SigmaSpec, order: Exponent) -> Result<GenusSeries> {
    evaluate(m, SectorRule::Untwisted, sigma, order)
}

/// `Σ_x 1/|H_x| Σ_{(h₁,h₂)} ∏_i ζ^{chi_i(h₁)} φ(−m_i z + chi_i(h₁)τ − chi_i(h₂), τ, σ)`.
pub fn orbifold_elliptic_genus(m: &OrbifoldModel, sigma: SigmaSpec, order: Exponent) -> Result<GenusSeries> {
    evaluate(m, SectorRule::Orbifold, sigma, order)
}

/// The orbifold sum with prefactors `e^{2πi·breve(chi_i(h₁))·k/N}`.
pub fn modified_orbifold_genus(m: &OrbifoldModel, k: i64, n: i64, order: Exponent) -> Result<GenusSeries> {
    evaluate(m, SectorRule::Modified, SigmaSpec::rational(k, n)?, order)
}

/// The contribution of each fixed point separately, reduced.
pub fn point_contributions(
    m: &OrbifoldModel,
    rule: SectorRule,
    sigma: SigmaSpec,
    order: Exponent,
) -> Result<Vec<(String, QSeries<RationalFunction>)>> {
    let (points, ctx) = prepare(m, rule, sigma)?;
    let grouped = evaluate_local(&points, rule, &ctx, order)?;
    points
        .iter()
        .zip(grouped)
        .map(|(p, terms)| Ok((p.label.clone(), assemble(&terms, order)?)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::Cyclotomic;
    use crate::model::fixtures;

    fn e(n: i64) -> Exponent {
        Exponent::from_integer(n)
    }

    #[test]
    fn cp1_level_two_is_rigid() {
        let g = equivariant_elliptic_genus(&fixtures::cp1(), SigmaSpec::Rational { k: 1, n: 2 }, e(3)).unwrap();
        assert!(g.is_t_constant(), "{g}");
    }

    #[test]
    fn cp1_formal_q0() {
        // ζ^{-1/2}(1 + ζ)
        let g = equivariant_elliptic_genus(&fixtures::cp1(), SigmaSpec::Formal, e(0)).unwrap();
        let one = Cyclotomic::from_int(1);
        let expect = BiLaurent::monomial(one.clone(), e(0), exp(-1, 2))
            .add(&BiLaurent::monomial(one, e(0), exp(1, 2)));
        assert_eq!(g.q0(), RationalFunction::from_laurent(expect));
    }

    #[test]
    fn sectors_collapse_for_trivial_isotropy() {
        let m = fixtures::cp2();
        let sigma = SigmaSpec::Rational { k: 1, n: 3 };
        let a = equivariant_elliptic_genus(&m, sigma, e(2)).unwrap();
        let b = orbifold_elliptic_genus(&m, sigma, e(2)).unwrap();
        let c = modified_orbifold_genus(&m, 1, 3, e(2)).unwrap();
        assert_eq!(a.series, b.series);
        assert_eq!(a.series, c.series);
    }

    #[test]
    fn representatives_do_not_matter() {
        let m = fixtures::p113();
        let points = local_points(&m).unwrap();
        let mut shifted = points.clone();
        shifted[2].chi[1][0] += 1;
        shifted[2].chi[2][1] += 1;
        for (rule, sigma) in [
            (SectorRule::Orbifold, SigmaSpec::Rational { k: 1, n: 5 }),
            (SectorRule::Modified, SigmaSpec::Rational { k: 2, n: 5 }),
            (SectorRule::Untwisted, SigmaSpec::Rational { k: 1, n: 5 }),
        ] {
            let ctx = Context::new(sigma, sigma.modulus_for(3)).unwrap();
            let run = |pts: &[LocalPoint]| {
                let t: Vec<_> = evaluate_local(pts, rule, &ctx, e(1)).unwrap().into_iter().flatten().collect();
                assemble(&t, e(1)).unwrap()
            };
            assert_eq!(run(&points), run(&shifted), "{rule:?}");
        }
    }

    #[test]
    fn modified_needs_coprime_level() {
        assert_eq!(
            modified_orbifold_genus(&fixtures::p113(), 1, 3, e(1)).unwrap_err(),
            Error::NonCoprimeLevel { level: 3, order: 3 }
        );
    }
}
