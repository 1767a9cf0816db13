//! Executable checks: exact rigidity certification, numeric modular laws,
//! vanishing predictions, `T_y` limit decompositions, divisibility and
//! cross-checks between independent evaluation paths.

mod modular;
mod suite;

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::rational::{int, is_integer, rat};
use crate::exactnum::Cyclotomic;
use crate::genera::{
    age_f, equivariant_elliptic_genus, modified_orbifold_genus, orbifold_elliptic_genus, point_contributions,
    ty_family, ty_sectors, GenusSeries, SectorRule, SigmaSpec, TyKind,
};
use crate::model::{validate_model, OrbifoldModel};
use crate::scalar::Ring;
use crate::series::{BiLaurent, Poly, RationalFunction};
use crate::{Exponent, Rational};

pub use modular::{check_modular_numeric, check_modular_numeric_in, ModularLaw, ModularParams};
pub use suite::{exit_code, run_suite, Suite, SuiteParams};

/// One diagnostic line of a report.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CheckItem {
    pub label: String,
    pub passed: bool,
    pub observed: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected: Option<String>,
}

impl CheckItem {
    pub fn new(label: impl Into<String>, passed: bool, observed: impl Into<String>) -> Self {
        CheckItem {
            label: label.into(),
            passed,
            observed: observed.into(),
            expected: None,
        }
    }

    /// An informational line that never fails the report.
    pub fn note(label: impl Into<String>, observed: impl Into<String>) -> Self {
        Self::new(label, true, observed)
    }

    pub fn expecting(mut self, expected: impl Into<String>) -> Self {
        self.expected = Some(expected.into());
        self
    }
}

/// Outcome of one check; `passed` is the conjunction of the item passes.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CheckReport {
    pub check_name: String,
    pub passed: bool,
    pub summary: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub details: Vec<CheckItem>,
}

impl CheckReport {
    pub fn new(check_name: impl Into<String>, summary: impl Into<String>, details: Vec<CheckItem>) -> Self {
        CheckReport {
            check_name: check_name.into(),
            passed: details.iter().all(|d| d.passed),
            summary: summary.into(),
            seed: None,
            details,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    /// Items that failed.
    pub fn failures(&self) -> impl Iterator<Item = &CheckItem> {
        self.details.iter().filter(|d| !d.passed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

fn same(a: &RationalFunction, b: &RationalFunction) -> bool {
    Ring::sub(a, b).is_zero()
}

/// Passes iff every stored q-order of `g` is free of `t`; names the first
/// order that is not.
pub fn check_rigidity(g: &GenusSeries) -> CheckReport {
    let orders = g.series.t_constancy();
    let mut details: Vec<CheckItem> = orders
        .iter()
        .map(|o| {
            let observed = if o.is_constant {
                format!("t-constant: {}", o.residual)
            } else {
                format!("depends on t: {}", o.residual)
            };
            CheckItem::new(format!("q^{}", o.q_exp), o.is_constant, observed)
        })
        .collect();
    if details.is_empty() {
        details.push(CheckItem::new("all orders", true, "0"));
    }
    let summary = match orders.iter().find(|o| !o.is_constant) {
        Some(o) => format!(
            "{} genus of {} at sigma = {} is not rigid: first t-dependent order q^{}",
            g.kind.name(),
            g.model,
            g.sigma,
            o.q_exp
        ),
        None => format!(
            "{} genus of {} at sigma = {} is t-constant through q^{}",
            g.kind.name(),
            g.model,
            g.sigma,
            g.order
        ),
    };
    CheckReport::new("rigidity", summary, details)
}

/// The level a vanishing statement is made at.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VanishingLevel {
    /// Modified orbifold genus at `σ = k/N`.
    Modified { n: i64, k: i64 },
    /// Orbifold genus at `σ = k/N` with a genuine bundle.
    Orbifold { n: i64, k: i64 },
    /// Orbifold genus with trivial canonical data, sampled at `σ = k/N`.
    Plain { n: i64, k: i64 },
}

/// `Σ m_i` when it is the same at every point and every `Σ chi_i(h)` is an integer.
pub fn trivial_canonical_weight(m: &OrbifoldModel) -> Option<Rational> {
    let mut l0: Option<Rational> = None;
    for p in &m.fixed_points {
        let sum = p.weights.iter().fold(int(0), |a, w| a + &w.m_s1);
        match &l0 {
            Some(l) if *l != sum => return None,
            _ => l0 = Some(sum),
        }
        for h in p.isotropy.elements() {
            let s = p.weights.iter().fold(int(0), |a, w| a + &w.chi[h]);
            if !is_integer(&s) {
                return None;
            }
        }
    }
    l0
}

fn coprime_to_isotropy(m: &OrbifoldModel, n: i64) -> bool {
    m.fixed_points.iter().all(|p| (p.order() as i64).gcd(&n) == 1)
}

/// Predicts whether the genus vanishes and compares with an exact computation
/// through `q^order`. Only a predicted vanishing is ever asserted.
pub fn predict_and_check_vanishing(m: &OrbifoldModel, level: VanishingLevel, order: Exponent) -> Result<CheckReport> {
    let mut hyp: Vec<(String, bool)> = Vec::new();
    let (n, k) = match level {
        VanishingLevel::Modified { n, k } | VanishingLevel::Orbifold { n, k } | VanishingLevel::Plain { n, k } => {
            (n, k)
        }
    };
    let sigma = SigmaSpec::rational(k, n)?;
    hyp.push((format!("0 < k < N for sigma = {sigma}"), sigma.is_certifiable()));
    let (genus, what) = match level {
        VanishingLevel::Plain { .. } => {
            let l0 = trivial_canonical_weight(m);
            hyp.push(("trivial canonical data".into(), l0.is_some()));
            if let Some(l0) = &l0 {
                hyp.push((format!("l = {l0} is nonzero"), *l0 != int(0)));
            }
            (orbifold_elliptic_genus(m, sigma, order)?, "orbifold")
        }
        VanishingLevel::Modified { .. } | VanishingLevel::Orbifold { .. } => {
            let bundle = m.require_bundle()?;
            hyp.push((
                format!("L^{n} exists (N divides the bundle level {})", bundle.level),
                n > 1 && bundle.level % n == 0,
            ));
            hyp.push((format!("gcd(l = {}, N = {n}) = 1", bundle.l), bundle.l.gcd(&n) == 1));
            let diagnostics = validate_model(m);
            hyp.push(("model data consistent".into(), diagnostics.is_empty()));
            if let VanishingLevel::Modified { .. } = level {
                hyp.push(("N coprime to isotropy orders".into(), coprime_to_isotropy(m, n)));
                (modified_orbifold_genus(m, k, n, order)?, "modified")
            } else {
                hyp.push(("line bundle genuine".into(), bundle.genuine));
                (orbifold_elliptic_genus(m, sigma, order)?, "orbifold")
            }
        }
    };
    let predicted = hyp.iter().all(|(_, ok)| *ok);
    let observed = genus.series.is_zero();
    let mut details: Vec<CheckItem> = hyp
        .iter()
        .map(|(h, ok)| CheckItem::note(format!("hypothesis: {h}"), if *ok { "holds" } else { "fails" }))
        .collect();
    let observed_text = if observed {
        "0".to_string()
    } else {
        genus.series.to_string()
    };
    let item = CheckItem::new(format!("{what} genus through q^{order}"), !predicted || observed, observed_text);
    details.push(if predicted { item.expecting("0") } else { item });
    let summary = match (predicted, observed) {
        (true, true) => "predicted vanishing confirmed".to_string(),
        (true, false) => "predicted vanishing NOT observed".to_string(),
        (false, true) => "no prediction; observed vanishing".to_string(),
        (false, false) => "no prediction; observed non-zero".to_string(),
    };
    let name = match level {
        VanishingLevel::Modified { .. } => "vanishing-modified",
        VanishingLevel::Orbifold { .. } => "vanishing-orbifold",
        VanishingLevel::Plain { .. } => "vanishing-trivial-canonical",
    };
    Ok(CheckReport::new(name, format!("{}: {summary}", m.name), details))
}

/// The model with the circle action reversed (`t ↦ t⁻¹`).
pub fn flip_action(m: &OrbifoldModel) -> OrbifoldModel {
    let mut out = m.clone();
    out.name = format!("{} (reversed action)", m.name);
    for p in &mut out.fixed_points {
        for w in &mut p.weights {
            w.m_s1 = -w.m_s1.clone();
        }
        if let Some(lb) = &mut p.line_bundle {
            lb.m_s1 = -lb.m_s1.clone();
        }
    }
    if let Some(b) = &mut out.bundle {
        b.l = -b.l;
    }
    out
}

enum End {
    Zero,
    Infinity,
}

/// Limit of `num/den` at `t → 0` or `t → ∞` as a ζ-polynomial; `None` if infinite.
fn t_limit(num: &BiLaurent, den: &BiLaurent, end: End) -> Result<Option<BiLaurent>> {
    let pick = |p: &BiLaurent| match end {
        End::Zero => p.min_t(),
        End::Infinity => p.max_t(),
    };
    let (Some(a), Some(b)) = (pick(num), pick(den)) else {
        return Ok(Some(BiLaurent::zero()));
    };
    let finite = match end {
        End::Zero => a >= b,
        End::Infinity => a <= b,
    };
    if !finite {
        return Ok(None);
    }
    if a != b {
        return Ok(Some(BiLaurent::zero()));
    }
    let lead = den
        .t_slice(b)
        .as_constant()
        .ok_or(Error::NonSeparableDenominator)?
        .inverse()?;
    Ok(Some(num.t_slice(a).scale(&lead)))
}

fn limit_pass(m: &OrbifoldModel, which: TyKind, label: &str, details: &mut Vec<CheckItem>) -> Result<()> {
    let sectors = ty_sectors(m, which, SigmaSpec::Formal, None)?;
    let value = ty_family(m, which, SigmaSpec::Formal, None)?.q0();
    let mut at_zero = BiLaurent::zero();
    let mut at_inf = BiLaurent::zero();
    let mut by_mu = BiLaurent::zero();
    let mut by_mu_inf = BiLaurent::zero();
    let mut finite = true;
    for s in &sectors {
        match (t_limit(&s.num, &s.den, End::Zero)?, t_limit(&s.num, &s.den, End::Infinity)?) {
            (Some(a), Some(b)) => {
                at_zero = at_zero.add(&a);
                at_inf = at_inf.add(&b);
            }
            _ => finite = false,
        }
        by_mu = by_mu.add(&s.weight.mul(&BiLaurent::zeta_pow(Exponent::from_integer(s.mu as i64))));
        let rest = (s.factors - s.mu) as i64;
        by_mu_inf = by_mu_inf.add(&s.weight.mul(&BiLaurent::zeta_pow(Exponent::from_integer(rest))));
    }
    let zero_rf = RationalFunction::from_laurent(at_zero.clone());
    let inf_rf = RationalFunction::from_laurent(at_inf.clone());
    details.push(CheckItem::new(
        format!("{label}: sector limits finite"),
        finite,
        format!("{} sectors", sectors.len()),
    ));
    details.push(
        CheckItem::new(format!("{label}: t→0 limit equals the genus"), same(&zero_rf, &value), zero_rf.to_string())
            .expecting(value.to_string()),
    );
    details.push(
        CheckItem::new(format!("{label}: t→∞ limit equals the genus"), same(&inf_rf, &value), inf_rf.to_string())
            .expecting(value.to_string()),
    );
    details.push(
        CheckItem::new(
            format!("{label}: Σ_k ζ^k Σ_(μ=k) weight reproduces t→0"),
            by_mu == at_zero,
            by_mu.to_string(),
        )
        .expecting(at_zero.to_string()),
    );
    details.push(
        CheckItem::new(
            format!("{label}: Σ_k ζ^k Σ_(factors−μ=k) weight reproduces t→∞"),
            by_mu_inf == at_inf,
            by_mu_inf.to_string(),
        )
        .expecting(at_inf.to_string()),
    );
    Ok(())
}

/// Evaluates every `T_y` sector at `t → 0` and `t → ∞`, for the model and for
/// the reversed action, and compares with the assembled genus (`ζ = −y`).
pub fn ty_limit_decomposition(m: &OrbifoldModel) -> Result<CheckReport> {
    let mut details = Vec::new();
    let flipped = flip_action(m);
    limit_pass(m, TyKind::Ty, "ty", &mut details)?;
    limit_pass(m, TyKind::HatTy, "hatTy", &mut details)?;
    limit_pass(&flipped, TyKind::Ty, "ty reversed", &mut details)?;
    limit_pass(&flipped, TyKind::HatTy, "hatTy reversed", &mut details)?;
    let a = ty_family(m, TyKind::Ty, SigmaSpec::Formal, None)?.q0();
    let b = ty_family(&flipped, TyKind::Ty, SigmaSpec::Formal, None)?.q0();
    details.push(CheckItem::new("ty invariant under reversal", same(&a, &b), b.to_string()).expecting(a.to_string()));
    Ok(CheckReport::new(
        "tylimits",
        format!("{}: ty = {a} (ζ = −y)", m.name),
        details,
    ))
}

/// The reduced `q⁰`-type coefficient as a polynomial in `ζ` with rational coefficients.
pub fn zeta_polynomial(f: &RationalFunction) -> Option<Poly<Rational>> {
    let p = f.as_laurent()?;
    let mut coeffs: Vec<Rational> = Vec::new();
    for ((t, z), c) in p.terms() {
        if !t.is_integer() || *t != Exponent::from_integer(0) || !z.is_integer() || *z < Exponent::from_integer(0) {
            return None;
        }
        let k = z.to_integer() as usize;
        if coeffs.len() <= k {
            coeffs.resize(k + 1, int(0));
        }
        coeffs[k] = c.as_rational()?;
    }
    Some(Poly::new(coeffs))
}

/// `c₀ + c₁ζ + …`, with `ζ = −y`.
pub fn format_zeta_poly(p: &Poly<Rational>) -> String {
    let mut parts = Vec::new();
    for (k, c) in p.coeffs().iter().enumerate() {
        if c == &int(0) {
            continue;
        }
        let mono = match k {
            0 => String::new(),
            1 => "ζ".into(),
            _ => format!("ζ^{k}"),
        };
        parts.push(match (k, c == &int(1)) {
            (0, _) => c.to_string(),
            (_, true) => mono,
            _ => format!("{c}{mono}"),
        });
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

/// Divides `hatTy` (as a polynomial in `ζ = −y`) by `1 + ζ + … + ζ^{N−1}`.
pub fn check_divisibility(m: &OrbifoldModel, n: i64) -> Result<CheckReport> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("level {n} must be greater than 1")));
    }
    let bundle = m.require_bundle()?;
    if !bundle.genuine {
        return Err(Error::InvalidArgument(format!(
            "{}: divisibility needs a genuine line bundle",
            m.name
        )));
    }
    for p in &m.fixed_points {
        for h in p.isotropy.elements() {
            let f = age_f(p, h);
            if !is_integer(&f) {
                return Err(Error::NonIntegralAge(format!("{f} at `{}`", p.label)));
            }
        }
    }
    let hat = ty_family(m, TyKind::HatTy, SigmaSpec::Formal, None)?.q0();
    let poly = zeta_polynomial(&hat)
        .ok_or_else(|| Error::InvalidArgument(format!("hatTy = {hat} is not a polynomial in ζ")))?;
    let divisor = Poly::new(vec![int(1); n as usize]);
    let (quotient, remainder) = poly.div_rem(&divisor).expect("divisor is nonzero");
    let hyp = bundle.level % n == 0 && bundle.l.gcd(&n) == 1;
    let mut details = vec![
        CheckItem::note("hatTy", format_zeta_poly(&poly)),
        CheckItem::note(
            "hypotheses (L^N exists, gcd(l, N) = 1)",
            if hyp { "hold" } else { "fail" },
        ),
        CheckItem::new(
            format!("divisible by 1 + ζ + … + ζ^{}", n - 1),
            poly.is_zero() || remainder.is_zero(),
            format!("remainder {}", format_zeta_poly(&remainder)),
        )
        .expecting("remainder 0"),
        CheckItem::note("quotient", format_zeta_poly(&quotient)),
    ];
    if !poly.is_zero() {
        details.push(CheckItem::note(
            "degree bound N ≤ n + 1",
            format!("N = {n}, n + 1 = {}", m.n + 1),
        ));
    }
    Ok(CheckReport::new(
        "divisibility",
        format!("{}: hatTy = {}", m.name, format_zeta_poly(&poly)),
        details,
    ))
}

/// Compares the `q⁰` coefficient of `ζ^{n/2}` times the orbifold (and, when
/// defined, the modified) genus at `σ = k/N` with `hatTy` (`breveTy`).
pub fn cross_check_q0(m: &OrbifoldModel, k: i64, n: i64) -> Result<CheckReport> {
    let sigma = SigmaSpec::rational(k, n)?;
    let modulus = sigma.modulus_for(m.r());
    let half = Cyclotomic::exp_2pi_i(&rat(m.n as i64 * k, 2 * n), modulus)?;
    let zero = Exponent::from_integer(0);
    let orb = orbifold_elliptic_genus(m, sigma, zero)?.q0().scale(&half);
    let hat = ty_family(m, TyKind::HatTy, sigma, None)?.q0();
    let mut details = vec![
        CheckItem::new("orbifold q⁰ = hatTy", same(&orb, &hat), orb.to_string()).expecting(hat.to_string()),
    ];
    if coprime_to_isotropy(m, n) && n > 1 {
        let modi = modified_orbifold_genus(m, k, n, zero)?.q0().scale(&half);
        let breve = ty_family(m, TyKind::BreveTy, sigma, Some(n))?.q0();
        details.push(
            CheckItem::new("modified q⁰ = breveTy", same(&modi, &breve), modi.to_string())
                .expecting(breve.to_string()),
        );
    } else {
        details.push(CheckItem::note("modified q⁰ = breveTy", "skipped: N shares a factor with an isotropy order"));
    }
    Ok(CheckReport::new("q0", format!("{} at sigma = {sigma}", m.name), details))
}

/// At `q^e`, every fixed-point contribution has a t-dependent denominator
/// while the reduced total has denominator 1.
pub fn check_pole_cancellation(m: &OrbifoldModel, rule: SectorRule, sigma: SigmaSpec, e: Exponent) -> Result<CheckReport> {
    let parts = point_contributions(m, rule, sigma, e)?;
    let mut details = Vec::new();
    let mut coeffs = Vec::new();
    for (label, series) in &parts {
        let c = series.coeff(e);
        details.push(CheckItem::new(
            format!("`{label}` has a pole in t"),
            !c.has_t_free_denominator(),
            format!("denominator {}", c.denominator()),
        ));
        coeffs.push(c);
    }
    let total = RationalFunction::sum(coeffs.iter());
    details.push(
        CheckItem::new("total is a Laurent polynomial", total.denominator().is_one(), total.to_string())
            .expecting("denominator 1"),
    );
    Ok(CheckReport::new("poles", format!("{} at q^{e}, sigma = {sigma}", m.name), details))
}

/// The plain equivariant genus (all isotropy ignored) is used for manifolds.
pub fn rigidity_genus(m: &OrbifoldModel, k: i64, n: i64, order: Exponent) -> Result<GenusSeries> {
    let sigma = SigmaSpec::rational(k, n)?;
    if m.is_manifold() {
        equivariant_elliptic_genus(m, sigma, order)
    } else if coprime_to_isotropy(m, n) {
        modified_orbifold_genus(m, k, n, order)
    } else {
        orbifold_elliptic_genus(m, sigma, order)
    }
}
