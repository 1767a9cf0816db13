//! JSON form of [`OrbifoldModel`]. Rationals are written as `"p/q"` strings
//! and character tables as maps from element index to value.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::rational::{format_rational, parse_rational};
use crate::groups::{FiniteGroup, GroupSpec};
use crate::Rational;

use super::{FixedPointDatum, LineBundlePolicy, LineBundleWeight, OrbifoldModel, TangentWeight};

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
struct ModelFile {
    name: String,
    n: usize,
    fixed_points: Vec<PointFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    bundle: Option<BundleFile>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    suggested_levels: Vec<i64>,
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
struct PointFile {
    label: String,
    isotropy: GroupSpec,
    weights: Vec<WeightFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    line_bundle: Option<WeightFile>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct WeightFile {
    #[serde(rename = "mS1")]
    m_s1: String,
    chi: BTreeMap<String, String>,
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
struct BundleFile {
    #[serde(rename = "N")]
    level: i64,
    l: i64,
    genuine: bool,
    normalize_weight_sums: bool,
}

fn write_weight(m_s1: &Rational, chi: &[Rational]) -> WeightFile {
    WeightFile {
        m_s1: format_rational(m_s1),
        chi: chi
            .iter()
            .enumerate()
            .map(|(h, v)| (h.to_string(), format_rational(v)))
            .collect(),
    }
}

/// Missing entries of the character map mean 0.
fn read_weight(w: &WeightFile, group: &FiniteGroup, label: &str) -> Result<(Rational, Vec<Rational>)> {
    let m_s1 = parse_rational(&w.m_s1)?;
    let mut chi = vec![Rational::from_integer(0.into()); group.order()];
    for (k, v) in &w.chi {
        let h: usize = k
            .parse()
            .ok()
            .filter(|&h| h < group.order())
            .ok_or_else(|| Error::SchemaError(format!("character: bad element index `{k}` at `{label}`")))?;
        chi[h] = parse_rational(v)?;
    }
    if group.is_abelian() && !group.character_validate(&chi)? {
        return Err(Error::SchemaError(format!(
            "character: weights at `{label}` do not define a character"
        )));
    }
    Ok((m_s1, chi))
}

fn from_file(f: ModelFile) -> Result<OrbifoldModel> {
    let mut points = Vec::with_capacity(f.fixed_points.len());
    for p in f.fixed_points {
        let group = p.isotropy.build()?;
        if p.weights.len() != f.n {
            return Err(Error::SchemaError(format!(
                "weights: point `{}` lists {} weights, expected n = {}",
                p.label,
                p.weights.len(),
                f.n
            )));
        }
        let weights = p
            .weights
            .iter()
            .map(|w| read_weight(w, &group, &p.label).map(|(m_s1, chi)| TangentWeight { m_s1, chi }))
            .collect::<Result<Vec<_>>>()?;
        let line_bundle = p
            .line_bundle
            .as_ref()
            .map(|w| read_weight(w, &group, &p.label).map(|(m_s1, chi)| LineBundleWeight { m_s1, chi }))
            .transpose()?;
        points.push(FixedPointDatum {
            label: p.label,
            isotropy_spec: p.isotropy,
            isotropy: group,
            weights,
            line_bundle,
        });
    }
    Ok(OrbifoldModel {
        name: f.name,
        n: f.n,
        fixed_points: points,
        bundle: f.bundle.map(|b| LineBundlePolicy {
            level: b.level,
            l: b.l,
            genuine: b.genuine,
            normalize_weight_sums: b.normalize_weight_sums,
        }),
        suggested_levels: f.suggested_levels,
    })
}

fn to_file(m: &OrbifoldModel) -> ModelFile {
    ModelFile {
        name: m.name.clone(),
        n: m.n,
        fixed_points: m
            .fixed_points
            .iter()
            .map(|p| PointFile {
                label: p.label.clone(),
                isotropy: p.isotropy_spec.clone(),
                weights: p.weights.iter().map(|w| write_weight(&w.m_s1, &w.chi)).collect(),
                line_bundle: p.line_bundle.as_ref().map(|w| write_weight(&w.m_s1, &w.chi)),
            })
            .collect(),
        bundle: m.bundle.as_ref().map(|b| BundleFile {
            level: b.level,
            l: b.l,
            genuine: b.genuine,
            normalize_weight_sums: b.normalize_weight_sums,
        }),
        suggested_levels: m.suggested_levels.clone(),
    }
}

/// Parses a model. Malformed JSON gives `ParseError`; well-formed JSON of
/// the wrong shape gives `SchemaError` naming the offending field.
pub fn load_model_str(s: &str) -> Result<OrbifoldModel> {
    let value: serde_json::Value = serde_json::from_str(s).map_err(|e| Error::ParseError {
        location: format!("line {}, column {}", e.line(), e.column()),
        message: e.to_string(),
    })?;
    let file: ModelFile =
        serde_json::from_value(value).map_err(|e| Error::SchemaError(e.to_string()))?;
    from_file(file)
}

pub fn model_to_json(m: &OrbifoldModel) -> String {
    serde_json::to_string_pretty(&to_file(m)).expect("model serializes")
}

pub fn load_model(path: impl AsRef<Path>) -> Result<OrbifoldModel> {
    let path = path.as_ref();
    let s = std::fs::read_to_string(path).map_err(|e| Error::ParseError {
        location: path.display().to_string(),
        message: e.to_string(),
    })?;
    load_model_str(&s)
}

pub fn save_model(m: &OrbifoldModel, path: impl AsRef<Path>) -> std::io::Result<()> {
    let mut s = model_to_json(m);
    s.push('\n');
    std::fs::write(path, s)
}
