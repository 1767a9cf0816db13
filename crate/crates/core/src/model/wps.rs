//! Localization data of weighted projective spaces `P(a_0, …, a_n)` with the
//! circle action `t · [z_i] = [t^{c_i} z_i]`.
//!
//! At the point `p_j` (only `z_j ≠ 0`) the orbifold chart is `ℂⁿ / ℤ/a_j` with
//! coordinates `w_i = z_i / z_j^{a_i/a_j}`; the generator acts on `w_i` by
//! `e^{2πi a_i/a_j}` and the circle by `t^{(c_i a_j − c_j a_i)/a_j}`.
//! The bundle `L = O(d)` with `d = Σa / N` satisfies `L^N = O(Σa) = Λⁿ TX`;
//! its fiber weights at `p_j` are `−d c_j / a_j` and `s ↦ s d / a_j`,
//! which makes `Σ m_i − N m_L = Σ c_i` at every point.

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::exactnum::rational::{frac, int, rat};
use crate::groups::GroupSpec;

use super::{FixedPointDatum, LineBundlePolicy, LineBundleWeight, OrbifoldModel, TangentWeight};

/// Levels `N > 1` dividing `Σa` and coprime to every `a_j`.
pub fn suggested_levels(a: &[i64]) -> Vec<i64> {
    let total: i64 = a.iter().sum();
    (2..=total)
        .filter(|n| total % n == 0 && a.iter().all(|aj| aj.gcd(n) == 1))
        .collect()
}

/// Model of `P(a)` with circle weights `c`. `level` defaults to the largest
/// suggested level, or `Σa` when there is none.
pub fn weighted_projective_model(a: &[i64], c: &[i64], level: Option<i64>) -> Result<OrbifoldModel> {
    if a.len() < 2 || a.len() != c.len() {
        return Err(Error::InvalidArgument(
            "need matching weight lists a and c of length at least 2".into(),
        ));
    }
    if a.iter().any(|&x| x < 1) {
        return Err(Error::InvalidArgument("orbifold weights a_i must be positive".into()));
    }
    for i in 0..a.len() {
        for j in i + 1..a.len() {
            if c[i] * a[j] == c[j] * a[i] {
                return Err(Error::DegenerateAction(i, j));
            }
        }
    }
    let total: i64 = a.iter().sum();
    let suggested = suggested_levels(a);
    let level = level.unwrap_or_else(|| suggested.last().copied().unwrap_or(total));
    if level < 2 || total % level != 0 {
        return Err(Error::InvalidArgument(format!(
            "level {level} must be > 1 and divide Σa = {total}"
        )));
    }
    let d = total / level;
    let n = a.len() - 1;
    let l: i64 = c.iter().sum();

    let mut points = Vec::with_capacity(a.len());
    for j in 0..a.len() {
        let order = a[j] as usize;
        let weights = (0..a.len())
            .filter(|&i| i != j)
            .map(|i| TangentWeight {
                m_s1: rat(c[i] * a[j] - c[j] * a[i], a[j]),
                chi: (0..a[j]).map(|s| frac(&rat(s * a[i], a[j]))).collect(),
            })
            .collect();
        let line = LineBundleWeight {
            m_s1: rat(-d * c[j], a[j]),
            chi: (0..a[j]).map(|s| frac(&rat(s * d, a[j]))).collect(),
        };
        points.push(FixedPointDatum::new(
            format!("p{j}"),
            GroupSpec::Cyclic { order },
            weights,
            Some(line),
        )?);
    }
    let genuine = points
        .iter()
        .all(|p| p.line_bundle.as_ref().is_some_and(|lb| lb.chi.iter().all(|x| *x == int(0))));
    let name = format!(
        "P({})",
        a.iter().map(i64::to_string).collect::<Vec<_>>().join(",")
    );
    Ok(OrbifoldModel {
        name,
        n,
        fixed_points: points,
        bundle: Some(LineBundlePolicy {
            level,
            l,
            genuine,
            normalize_weight_sums: true,
        }),
        suggested_levels: suggested,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::validate_model;

    #[test]
    fn projective_line() {
        let m = weighted_projective_model(&[1, 1], &[0, 1], None).unwrap();
        assert_eq!(m.n, 1);
        assert_eq!(m.fixed_points.len(), 2);
        assert_eq!(m.fixed_points[0].weights[0].m_s1, int(1));
        assert_eq!(m.fixed_points[1].weights[0].m_s1, int(-1));
        assert!(m.fixed_points.iter().all(|p| p.order() == 1));
        assert_eq!(m.bundle.as_ref().unwrap().level, 2);
        assert!(validate_model(&m).is_empty());
    }

    #[test]
    fn p113_chart_data() {
        let m = weighted_projective_model(&[1, 1, 3], &[0, 1, 5], None).unwrap();
        let p2 = &m.fixed_points[2];
        assert_eq!(p2.order(), 3);
        assert_eq!(p2.weights[0].m_s1, rat(-5, 3));
        assert_eq!(p2.weights[1].m_s1, rat(-2, 3));
        for w in &p2.weights {
            assert_eq!(w.chi, vec![int(0), rat(1, 3), rat(2, 3)]);
        }
        assert_eq!(m.suggested_levels, vec![5]);
        assert_eq!(m.bundle.as_ref().unwrap().level, 5);
        assert_eq!(m.bundle.as_ref().unwrap().l, 6);
        assert!(validate_model(&m).is_empty());
    }

    #[test]
    fn degenerate_action_rejected() {
        assert_eq!(
            weighted_projective_model(&[1, 1], &[1, 1], None),
            Err(Error::DegenerateAction(0, 1))
        );
    }

    #[test]
    fn generic_weights_always_validate() {
        for (a, c) in [
            (vec![1, 1, 1], vec![0, 1, 2]),
            (vec![1, 1, 2], vec![0, 1, 4]),
            (vec![1, 2, 3], vec![0, 1, 5]),
            (vec![2, 3, 5], vec![1, -4, 7]),
            (vec![1, 1, 1, 1], vec![0, 1, 3, 7]),
        ] {
            let m = weighted_projective_model(&a, &c, None).unwrap();
            assert!(validate_model(&m).is_empty(), "{a:?} {c:?}: {:?}", validate_model(&m));
        }
    }
}
