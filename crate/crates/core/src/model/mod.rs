//! Isolated fixed-point data of a circle action on an almost complex
//! orbifold, optional line-bundle data, and model validation.

pub mod fixtures;
pub mod io;
pub mod wps;

use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactnum::rational::{frac, int, is_integer, lcm_u64};
use crate::groups::{FiniteGroup, GroupSpec};
use crate::Rational;

pub use io::{load_model, load_model_str, model_to_json, save_model};
pub use wps::weighted_projective_model;

/// Weight of the action on one tangent line at a fixed point.
#[derive(Clone, Debug, PartialEq)]
pub struct TangentWeight {
    /// Exponent of `t` for the circle action.
    pub m_s1: Rational,
    /// `h ↦ m(h) ∈ [0, 1)`, indexed by group element.
    pub chi: Vec<Rational>,
}

/// Weight of the circle and of the isotropy group on the fiber of `L`.
#[derive(Clone, Debug, PartialEq)]
pub struct LineBundleWeight {
    pub m_s1: Rational,
    pub chi: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FixedPointDatum {
    pub label: String,
    pub isotropy_spec: GroupSpec,
    pub isotropy: FiniteGroup,
    pub weights: Vec<TangentWeight>,
    pub line_bundle: Option<LineBundleWeight>,
}

impl FixedPointDatum {
    pub fn new(
        label: impl Into<String>,
        isotropy_spec: GroupSpec,
        weights: Vec<TangentWeight>,
        line_bundle: Option<LineBundleWeight>,
    ) -> Result<Self> {
        let isotropy = isotropy_spec.build()?;
        Ok(FixedPointDatum {
            label: label.into(),
            isotropy_spec,
            isotropy,
            weights,
            line_bundle,
        })
    }

    /// A point with trivial isotropy and the given integer t-weights.
    pub fn manifold_point(label: impl Into<String>, weights: &[i64]) -> Self {
        let weights = weights
            .iter()
            .map(|&m| TangentWeight {
                m_s1: int(m),
                chi: vec![int(0)],
            })
            .collect();
        Self::new(label, GroupSpec::Cyclic { order: 1 }, weights, None).expect("trivial group")
    }

    pub fn order(&self) -> usize {
        self.isotropy.order()
    }
}

/// Global data of an orbifold line bundle `L` with `Λⁿ TX = L^N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineBundlePolicy {
    pub level: i64,
    pub l: i64,
    pub genuine: bool,
    pub normalize_weight_sums: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct OrbifoldModel {
    pub name: String,
    pub n: usize,
    pub fixed_points: Vec<FixedPointDatum>,
    pub bundle: Option<LineBundlePolicy>,
    /// Levels `N > 1` coprime to every isotropy order for which `L` exists.
    pub suggested_levels: Vec<i64>,
}

impl OrbifoldModel {
    /// Lcm of the isotropy orders.
    pub fn r(&self) -> u64 {
        self.fixed_points
            .iter()
            .fold(1, |acc, p| lcm_u64(acc, p.order() as u64))
    }

    pub fn is_manifold(&self) -> bool {
        self.fixed_points.iter().all(|p| p.order() == 1)
    }

    /// Errors unless every isotropy group is abelian and every weight has the right shape.
    pub fn require_evaluable(&self) -> Result<()> {
        if self.fixed_points.is_empty() {
            return Err(Error::SchemaError("model has no fixed points".into()));
        }
        for p in &self.fixed_points {
            if !p.isotropy.is_abelian() {
                return Err(Error::NonAbelianIsotropy(p.label.clone()));
            }
            if p.weights.len() != self.n {
                return Err(Error::SchemaError(format!(
                    "weights: point `{}` has {} weights, expected {}",
                    p.label,
                    p.weights.len(),
                    self.n
                )));
            }
            for w in &p.weights {
                if !p.isotropy.character_validate(&w.chi)? {
                    return Err(Error::SchemaError(format!("character at point `{}`", p.label)));
                }
            }
        }
        Ok(())
    }

    pub fn require_bundle(&self) -> Result<&LineBundlePolicy> {
        self.bundle.as_ref().ok_or(Error::MissingBundleData)
    }
}

/// One problem found by [`validate_model`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub code: &'static str,
    pub point: Option<String>,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.point {
            Some(p) => write!(f, "{} at `{}`: {}", self.code, p, self.message),
            None => write!(f, "{}: {}", self.code, self.message),
        }
    }
}

pub const NON_ISOLATED: &str = "non-isolated fixed point";
pub const EQUILIB_VIOLATED: &str = "equilib violated";
pub const WEIGHTSUM_VIOLATED: &str = "weightsum violated";
pub const GENUINE_VIOLATED: &str = "genuine violated";
pub const NON_INTEGRAL_AGE: &str = "non-integral age";
pub const BAD_CHARACTER: &str = "character";
pub const DIMENSION_MISMATCH: &str = "dimension mismatch";
pub const NON_ABELIAN: &str = "non-abelian isotropy";
pub const MISSING_LINE_WEIGHT: &str = "missing line bundle weight";
pub const NO_FIXED_POINTS: &str = "no fixed points";

/// Sum of `chi_i(h)` over tangent lines where it is nonzero.
pub(crate) fn age(point: &FixedPointDatum, h: usize) -> Rational {
    point
        .weights
        .iter()
        .map(|w| w.chi[h].clone())
        .fold(int(0), |acc, x| acc + x)
}

/// All consistency problems of a model; empty when the model is valid.
pub fn validate_model(m: &OrbifoldModel) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    let mut push = |code, point: Option<&str>, message: String| {
        out.push(Diagnostic {
            code,
            point: point.map(str::to_string),
            message,
        })
    };
    if m.fixed_points.is_empty() {
        push(NO_FIXED_POINTS, None, "a circle action on a closed orbifold has fixed points".into());
    }
    for p in &m.fixed_points {
        let label = Some(p.label.as_str());
        if p.weights.len() != m.n {
            push(
                DIMENSION_MISMATCH,
                label,
                format!("{} weights for n = {}", p.weights.len(), m.n),
            );
        }
        for (i, w) in p.weights.iter().enumerate() {
            if w.m_s1.is_zero() {
                push(NON_ISOLATED, label, format!("weight {i} has zero t-exponent"));
            }
        }
        if !p.isotropy.is_abelian() {
            push(NON_ABELIAN, label, "evaluators need abelian isotropy".into());
            continue;
        }
        for (i, w) in p.weights.iter().enumerate() {
            if !p.isotropy.character_validate(&w.chi).unwrap_or(false) {
                push(BAD_CHARACTER, label, format!("weight {i} is not a character"));
            }
        }
    }

    let Some(bundle) = &m.bundle else {
        return out;
    };
    let level = int(bundle.level);
    for p in &m.fixed_points {
        let label = Some(p.label.as_str());
        let Some(lb) = &p.line_bundle else {
            push(MISSING_LINE_WEIGHT, label, "bundle policy present but no fiber weight".into());
            continue;
        };
        if !p.isotropy.is_abelian() {
            continue;
        }
        if !p.isotropy.character_validate(&lb.chi).unwrap_or(false) {
            push(BAD_CHARACTER, label, "line bundle weight is not a character".into());
            continue;
        }
        let sum: Rational = p.weights.iter().fold(int(0), |acc, w| acc + &w.m_s1);
        let l_here = sum - &level * &lb.m_s1;
        if l_here != int(bundle.l) {
            push(
                EQUILIB_VIOLATED,
                label,
                format!("Σ m_i − N·m_L = {l_here}, expected l = {}", bundle.l),
            );
        }
        if bundle.genuine {
            if lb.chi.iter().any(|c| !c.is_zero()) {
                push(GENUINE_VIOLATED, label, "isotropy acts on the fiber of L".into());
            }
            for h in p.isotropy.elements() {
                let f = age(p, h);
                if !is_integer(&f) {
                    push(NON_INTEGRAL_AGE, label, format!("age of element {h} is {f}"));
                }
            }
        }
        if bundle.normalize_weight_sums {
            for h in p.isotropy.elements() {
                if p.weights.len() != m.n {
                    break;
                }
                let lhs = frac(&age(p, h));
                let rhs = frac(&(&level * &lb.chi[h]));
                if lhs != rhs {
                    push(
                        WEIGHTSUM_VIOLATED,
                        label,
                        format!("element {h}: Σ m_i(h) = {lhs} but N·m(h) = {rhs} mod 1"),
                    );
                }
            }
        }
    }
    out
}
