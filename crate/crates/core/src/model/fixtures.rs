//! Small models used by tests, the acceptance suite and the CLI.

use crate::exactnum::rational::rat;

use super::{weighted_projective_model, FixedPointDatum, OrbifoldModel};

/// `CP¹` with weights `±1`, `N = 2`, `l = 1`.
pub fn cp1() -> OrbifoldModel {
    named(weighted_projective_model(&[1, 1], &[0, 1], Some(2)), "CP1")
}

/// `CP²` with `c = (0, 1, 2)`, `N = 3`, `l = 3`.
pub fn cp2() -> OrbifoldModel {
    named(weighted_projective_model(&[1, 1, 1], &[0, 1, 2], Some(3)), "CP2")
}

/// `P(1,1,2)` with `c = (0, 1, 4)` and `L = O(2)`, `N = 2`: genuine, `l = 5`.
pub fn p112() -> OrbifoldModel {
    named(weighted_projective_model(&[1, 1, 2], &[0, 1, 4], Some(2)), "P112")
}

/// `P(1,1,3)` with `c = (0, 1, 5)`, `N = 5`, `l = 6`; `ℤ/3` at one point.
pub fn p113() -> OrbifoldModel {
    named(weighted_projective_model(&[1, 1, 3], &[0, 1, 5], Some(5)), "P113")
}

/// [`p113`] with the first weight at the `ℤ/3` point acting by the wrong
/// character. Structurally valid, but not the data of any bundle.
pub fn p113_perturbed() -> OrbifoldModel {
    let mut m = p113();
    m.name = "P113-perturbed".into();
    m.fixed_points[2].weights[0].chi = vec![rat(0, 1), rat(2, 3), rat(1, 3)];
    m
}

/// Two points with weights `(1, 1, −2)` and `(−1, −1, 2)`, as for a circle
/// action on an almost complex six-sphere. No line-bundle data.
pub fn s6() -> OrbifoldModel {
    OrbifoldModel {
        name: "S6".into(),
        n: 3,
        fixed_points: vec![
            FixedPointDatum::manifold_point("north", &[1, 1, -2]),
            FixedPointDatum::manifold_point("south", &[-1, -1, 2]),
        ],
        bundle: None,
        suggested_levels: vec![],
    }
}

pub fn all() -> Vec<OrbifoldModel> {
    vec![cp1(), cp2(), p112(), p113(), p113_perturbed(), s6()]
}

pub fn by_name(name: &str) -> Option<OrbifoldModel> {
    all().into_iter().find(|m| m.name.eq_ignore_ascii_case(name))
}

fn named(m: crate::Result<OrbifoldModel>, name: &str) -> OrbifoldModel {
    let mut m = m.expect("fixture data is valid");
    m.name = name.into();
    m
}
