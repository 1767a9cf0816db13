//! Jacobi-form building blocks and fixed-point-formula evaluators for the
//! equivariant, orbifold and modified elliptic genera and the `T_y` family.

mod arith;
mod fixed_point;
mod jacobi;
mod ty;

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::rational::{format_exponent, format_rational, lcm_u64};
use crate::exactnum::Cyclotomic;
use crate::series::{BiLaurent, QSeries, RationalFunction};
use crate::Exponent;

pub use arith::{age_f, breve_lift};
pub use fixed_point::{
    equivariant_elliptic_genus, modified_orbifold_genus, orbifold_elliptic_genus,
    point_contributions, LocalPoint, SectorRule,
};
pub use jacobi::{capital_phi, capital_phi_at_zeta, phi_factor, stabilize, unstabilize};
pub use ty::{ty_family, ty_sectors, TyKind, TySector};

/// How `ζ = e^{2πiσ}` enters a computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SigmaSpec {
    /// `ζ` is an indeterminate; its exponents may be fractional.
    Formal,
    /// `σ = k/N`, so `ζ` is a root of unity in `Q(ζ_N)`.
    Rational { k: i64, n: i64 },
}

impl SigmaSpec {
    pub fn rational(k: i64, n: i64) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidArgument(format!("sigma denominator {n} must be positive")));
        }
        Ok(SigmaSpec::Rational { k, n })
    }

    /// `"formal"` or `"k/N"`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("formal") {
            return Ok(SigmaSpec::Formal);
        }
        let bad = || Error::InvalidArgument(format!("sigma `{s}` is neither `formal` nor `k/N`"));
        let (k, n) = s.split_once('/').ok_or_else(bad)?;
        let k = k.trim().parse().map_err(|_| bad())?;
        let n = n.trim().parse().map_err(|_| bad())?;
        Self::rational(k, n)
    }

    pub fn is_formal(&self) -> bool {
        matches!(self, SigmaSpec::Formal)
    }

    /// `(k, N)` in rational mode.
    pub fn parts(&self) -> Option<(i64, i64)> {
        match *self {
            SigmaSpec::Formal => None,
            SigmaSpec::Rational { k, n } => Some((k, n)),
        }
    }

    /// Whether `0 < k < N`, the range in which rigidity and vanishing are claimed.
    pub fn is_certifiable(&self) -> bool {
        matches!(*self, SigmaSpec::Rational { k, n } if 0 < k && k < n)
    }

    /// Cyclotomic modulus needed for `ζ^{1/2}`.
    pub(crate) fn base_modulus(&self) -> u64 {
        match *self {
            SigmaSpec::Formal => 1,
            SigmaSpec::Rational { n, .. } => 2 * n as u64,
        }
    }

    /// Modulus that holds every constant of a genus over isotropy orders with lcm `r`.
    pub fn modulus_for(&self, r: u64) -> u64 {
        match *self {
            SigmaSpec::Formal => r.max(1),
            SigmaSpec::Rational { n, .. } => lcm_u64(2 * n as u64, n as u64 * r),
        }
    }
}

impl fmt::Display for SigmaSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SigmaSpec::Formal => f.write_str("formal"),
            SigmaSpec::Rational { k, n } => write!(f, "{k}/{n}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GenusKind {
    Elliptic,
    OrbifoldElliptic,
    ModifiedOrbifold,
    Ty,
    HatTy,
    BreveTy,
    Todd,
    Stabilized(Box<GenusKind>),
}

impl GenusKind {
    pub fn name(&self) -> String {
        match self {
            GenusKind::Elliptic => "elliptic".into(),
            GenusKind::OrbifoldElliptic => "orbifoldElliptic".into(),
            GenusKind::ModifiedOrbifold => "modifiedOrbifold".into(),
            GenusKind::Ty => "ty".into(),
            GenusKind::HatTy => "hatTy".into(),
            GenusKind::BreveTy => "breveTy".into(),
            GenusKind::Todd => "todd".into(),
            GenusKind::Stabilized(k) => format!("stabilized-{}", k.name()),
        }
    }
}

/// A computed genus: exact up to and including `q^order`.
#[derive(Clone, Debug, PartialEq)]
pub struct GenusSeries {
    pub kind: GenusKind,
    pub sigma: SigmaSpec,
    pub model: String,
    pub n: usize,
    pub order: Exponent,
    pub modulus: u64,
    pub series: QSeries<RationalFunction>,
}

impl GenusSeries {
    pub fn coeff(&self, q: Exponent) -> RationalFunction {
        self.series.coeff(q)
    }

    pub fn q0(&self) -> RationalFunction {
        self.coeff(Exponent::from_integer(0))
    }

    pub fn is_t_constant(&self) -> bool {
        self.series.is_t_constant()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("genus serializes")
    }

    fn to_file(&self) -> GenusFile {
        let m = self.modulus;
        GenusFile {
            kind: self.kind.name(),
            sigma: self.sigma.to_string(),
            model: self.model.clone(),
            k: format_exponent(&self.order),
            modulus: m,
            terms: self
                .series
                .terms()
                .iter()
                .map(|(q, c)| TermFile {
                    q: format_exponent(q),
                    value: ValueFile {
                        num: laurent_file(c.numerator(), m),
                        den: laurent_file(&c.denominator(), m),
                    },
                })
                .collect(),
        }
    }

    /// One line per q-order from `q⁰` (or the lowest order) through `q^K`, ascending.
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "# {} genus of {} at sigma = {}, exact through q^{}\n",
            self.kind.name(),
            self.model,
            self.sigma,
            self.order
        );
        // every order on the exponent grid is listed, zeros included
        let step = Exponent::new(1, self.series.q_denom() as i64);
        let mut q = self.series.lowest().map_or(Exponent::from_integer(0), |l| l.min(Exponent::from_integer(0)));
        while q <= self.order {
            out.push_str(&format!("q^{q}: {}\n", self.series.coeff(q)));
            q += step;
        }
        out
    }
}

#[derive(Serialize)]
struct GenusFile {
    kind: String,
    sigma: String,
    model: String,
    #[serde(rename = "K")]
    k: String,
    modulus: u64,
    terms: Vec<TermFile>,
}

#[derive(Serialize)]
struct TermFile {
    q: String,
    value: ValueFile,
}

#[derive(Serialize)]
struct ValueFile {
    num: Vec<(String, String, Vec<String>)>,
    den: Vec<(String, String, Vec<String>)>,
}

fn laurent_file(p: &BiLaurent, modulus: u64) -> Vec<(String, String, Vec<String>)> {
    p.terms()
        .iter()
        .map(|((t, z), c)| {
            let c: Cyclotomic = c.lift(modulus).unwrap_or_else(|_| c.clone());
            (
                format_exponent(t),
                format_exponent(z),
                c.coeffs().iter().map(format_rational).collect(),
            )
        })
        .collect()
}

impl fmt::Display for GenusSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sigma_parsing() {
        assert_eq!(SigmaSpec::parse("formal").unwrap(), SigmaSpec::Formal);
        assert_eq!(SigmaSpec::parse("1/2").unwrap(), SigmaSpec::Rational { k: 1, n: 2 });
        assert!(SigmaSpec::parse("1/0").is_err());
        assert!(SigmaSpec::parse("half").is_err());
        assert!(!SigmaSpec::parse("0/3").unwrap().is_certifiable());
        assert!(SigmaSpec::parse("2/3").unwrap().is_certifiable());
    }
}
