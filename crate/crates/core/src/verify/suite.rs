//! Named bundles of checks, as run by the command-line driver.

use crate::error::{Error, Result};
use crate::model::OrbifoldModel;
use crate::numeric::{Matrix, IDENTITY, S, T, TS};
use crate::Exponent;

use super::{
    check_divisibility, check_modular_numeric, check_rigidity, coprime_to_isotropy, cross_check_q0,
    predict_and_check_vanishing, rigidity_genus, ty_limit_decomposition, CheckReport, ModularLaw, ModularParams,
    VanishingLevel,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Rigidity,
    Modular,
    Vanishing,
    TyLimits,
    Divisibility,
    Q0,
    All,
}

impl Suite {
    pub fn parse(s: &str) -> Option<Self> {
        match s.to_ascii_lowercase().as_str() {
            "rigidity" => Some(Suite::Rigidity),
            "modular" => Some(Suite::Modular),
            "vanishing" => Some(Suite::Vanishing),
            "tylimits" | "ty-limits" => Some(Suite::TyLimits),
            "divisibility" => Some(Suite::Divisibility),
            "q0" => Some(Suite::Q0),
            "all" => Some(Suite::All),
            _ => None,
        }
    }

    pub fn needs_model(&self) -> bool {
        !matches!(self, Suite::Modular)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SuiteParams {
    /// Level `N`; defaults to the model's largest suggested level, then its
    /// bundle level, then 2.
    pub level: Option<i64>,
    /// `k` in `σ = k/N`.
    pub k: i64,
    pub order: Exponent,
    /// Restricts the modular suite to one matrix; all of `I, T, S, TS` otherwise.
    pub matrix: Option<Matrix>,
    pub samples: usize,
    pub numeric_order: usize,
    pub tol: f64,
    pub seed: u64,
}

impl Default for SuiteParams {
    fn default() -> Self {
        SuiteParams {
            level: None,
            k: 1,
            order: Exponent::from_integer(2),
            matrix: None,
            samples: 20,
            numeric_order: 60,
            tol: 1e-8,
            seed: 0,
        }
    }
}

fn default_level(m: &OrbifoldModel, p: &SuiteParams) -> i64 {
    p.level
        .or_else(|| m.suggested_levels.iter().copied().max())
        .or_else(|| m.bundle.as_ref().map(|b| b.level))
        .unwrap_or(2)
}

fn modular(p: &SuiteParams) -> Vec<Result<CheckReport>> {
    let matrices = match p.matrix {
        Some(a) => vec![a],
        None => vec![IDENTITY, T, S, TS],
    };
    let run = |law, matrix| {
        check_modular_numeric(&ModularParams {
            law,
            matrix,
            samples: p.samples,
            order: p.numeric_order,
            tol: p.tol,
            seed: p.seed,
        })
    };
    let mut out: Vec<_> = [ModularLaw::CapitalPhi, ModularLaw::PhiSl2]
        .into_iter()
        .flat_map(|law| matrices.iter().map(move |&a| (law, a)))
        .map(|(law, a)| run(law, a))
        .collect();
    out.push(run(ModularLaw::PhiLattice, IDENTITY));
    out
}

fn vanishing(m: &OrbifoldModel, n: i64, p: &SuiteParams) -> Vec<Result<CheckReport>> {
    let mut out = Vec::new();
    if let Some(b) = &m.bundle {
        if coprime_to_isotropy(m, n) {
            out.push(predict_and_check_vanishing(m, VanishingLevel::Modified { n, k: p.k }, p.order));
        }
        if b.genuine {
            out.push(predict_and_check_vanishing(m, VanishingLevel::Orbifold { n, k: p.k }, p.order));
        }
    }
    out.push(predict_and_check_vanishing(m, VanishingLevel::Plain { n, k: p.k }, p.order));
    out
}

/// Runs a suite; `model` may be `None` only for [`Suite::Modular`].
pub fn run_suite(model: Option<&OrbifoldModel>, suite: Suite, p: &SuiteParams) -> Vec<Result<CheckReport>> {
    if suite == Suite::Modular {
        return modular(p);
    }
    let Some(m) = model else {
        return vec![Err(Error::InvalidArgument("this suite needs a model".into()))];
    };
    let n = default_level(m, p);
    match suite {
        Suite::Rigidity => vec![rigidity_genus(m, p.k, n, p.order).map(|g| check_rigidity(&g))],
        Suite::Modular => unreachable!(),
        Suite::Vanishing => vanishing(m, n, p),
        Suite::TyLimits => vec![ty_limit_decomposition(m)],
        Suite::Divisibility => vec![check_divisibility(m, n)],
        Suite::Q0 => vec![cross_check_q0(m, p.k, n)],
        Suite::All => {
            let mut out = run_suite(Some(m), Suite::Rigidity, p);
            out.extend(modular(p));
            out.extend(vanishing(m, n, p));
            out.push(ty_limit_decomposition(m));
            if m.bundle.as_ref().is_some_and(|b| b.genuine) {
                out.push(check_divisibility(m, n));
            }
            out.push(cross_check_q0(m, p.k, n));
            out
        }
    }
}

/// `0` iff every check ran and passed; `3` if some check could not run, `1` otherwise.
pub fn exit_code(results: &[Result<CheckReport>]) -> i32 {
    if results.iter().any(|r| r.is_err()) {
        3
    } else if results.iter().all(|r| r.as_ref().is_ok_and(|r| r.passed)) {
        0
    } else {
        1
    }
}
