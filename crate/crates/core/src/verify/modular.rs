//! Floating-point checks of the transformation laws of `Φ` and `φ` at random
//! sample points.

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::numeric::{act, automorphy, capital_phi, e2pii, phi, Matrix, Truncated, IDENTITY};
use crate::scalar::Real;

use super::{CheckItem, CheckReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModularLaw {
    /// `Φ(A(z,τ)) = (cτ+d)⁻¹ e^{πicz²/(cτ+d)} Φ(z,τ)`.
    CapitalPhi,
    /// `φ(z+mτ+n, τ, σ) = ζ^{−m} φ(z, τ, σ)`.
    PhiLattice,
    /// `φ(A(z,τ), σ) = e^{πic(2zσ+(cτ+d)σ²)} φ(z, τ, (cτ+d)σ)`.
    PhiSl2,
}

impl ModularLaw {
    pub fn name(&self) -> &'static str {
        match self {
            ModularLaw::CapitalPhi => "capitalPhi",
            ModularLaw::PhiLattice => "phiLattice",
            ModularLaw::PhiSl2 => "phiSL2",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s.to_ascii_lowercase().as_str() {
            "capitalphi" | "capital-phi" => Some(ModularLaw::CapitalPhi),
            "philattice" | "phi-lattice" => Some(ModularLaw::PhiLattice),
            "phisl2" | "phi-sl2" => Some(ModularLaw::PhiSl2),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ModularParams {
    pub law: ModularLaw,
    /// Ignored by [`ModularLaw::PhiLattice`].
    pub matrix: Matrix,
    pub samples: usize,
    /// Number of product factors kept.
    pub order: usize,
    /// Bound on the absolute error.
    pub tol: f64,
    pub seed: u64,
}

impl Default for ModularParams {
    fn default() -> Self {
        ModularParams {
            law: ModularLaw::CapitalPhi,
            matrix: IDENTITY,
            samples: 20,
            order: 60,
            tol: 1e-8,
            seed: 0,
        }
    }
}

struct Sample<T> {
    z: Complex<T>,
    tau: Complex<T>,
    sigma: Complex<T>,
    shift: (i64, i64),
}

fn draw<T: Real>(rng: &mut ChaCha8Rng) -> Sample<T> {
    let mut r = |lo: f64, hi: f64| T::from_f64(rng.gen_range(lo..hi));
    let z = Complex::new(r(0.1, 0.4), r(-0.1, 0.1));
    let tau = Complex::new(r(-0.5, 0.5), r(1.0, 2.0));
    let sigma = Complex::new(r(0.05, 0.45), T::zero());
    let shift = (rng.gen_range(-2..=2), rng.gen_range(-2..=2));
    Sample { z, tau, sigma, shift }
}

fn real<T: Real>(x: i64) -> T {
    T::from_f64(x as f64)
}

/// Both sides of the law at one sample, with the combined tail bound.
fn sides<T: Real>(p: &ModularParams, s: &Sample<T>) -> (Complex<T>, Complex<T>, T) {
    let k = p.order;
    let a = &p.matrix;
    let c = real::<T>(a[1][0]);
    let i_pi = Complex::new(T::zero(), T::PI());
    let bound = |lhs: Truncated<T>, factor: Complex<T>, rhs: Truncated<T>| {
        (lhs.value, factor * rhs.value, lhs.tail_bound + factor.norm() * rhs.tail_bound)
    };
    match p.law {
        ModularLaw::CapitalPhi => {
            let j = automorphy(a, s.tau);
            let (z1, tau1) = act(a, s.z, s.tau);
            let factor = (i_pi * s.z * s.z * c / j).exp() / j;
            bound(capital_phi(z1, tau1, k), factor, capital_phi(s.z, s.tau, k))
        }
        ModularLaw::PhiLattice => {
            let (m, n) = s.shift;
            let z1 = s.z + s.tau * real::<T>(m) + real::<T>(n);
            let factor = e2pii(-s.sigma * real::<T>(m));
            bound(phi(z1, s.tau, s.sigma, k), factor, phi(s.z, s.tau, s.sigma, k))
        }
        ModularLaw::PhiSl2 => {
            let j = automorphy(a, s.tau);
            let (z1, tau1) = act(a, s.z, s.tau);
            let two = T::from_f64(2.0);
            let factor = (i_pi * c * (s.z * s.sigma * two + j * s.sigma * s.sigma)).exp();
            bound(phi(z1, tau1, s.sigma, k), factor, phi(s.z, s.tau, j * s.sigma, k))
        }
    }
}

fn format_matrix(a: &Matrix) -> String {
    format!("[[{}, {}], [{}, {}]]", a[0][0], a[0][1], a[1][0], a[1][1])
}

/// [`check_modular_numeric_in`] in double precision.
pub fn check_modular_numeric(p: &ModularParams) -> Result<CheckReport> {
    check_modular_numeric_in::<f64>(p)
}

/// Checks the law at `p.samples` seeded random points, `Im τ ∈ [1, 2]`.
pub fn check_modular_numeric_in<T: Real>(p: &ModularParams) -> Result<CheckReport> {
    let a = &p.matrix;
    if a[0][0] * a[1][1] - a[0][1] * a[1][0] != 1 {
        return Err(Error::InvalidArgument(format!("{} is not in SL2(Z)", format_matrix(a))));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    let mut details = Vec::with_capacity(p.samples);
    let mut max_err = 0.0f64;
    let mut max_tail = 0.0f64;
    for i in 0..p.samples {
        let s = draw::<T>(&mut rng);
        let (lhs, rhs, tail) = sides(p, &s);
        let tail = tail.to_f64();
        max_tail = max_tail.max(if tail.is_nan() { f64::INFINITY } else { tail });
        let err = (lhs - rhs).norm().to_f64();
        let err = if err.is_nan() { f64::INFINITY } else { err };
        max_err = max_err.max(err);
        let label = match p.law {
            ModularLaw::PhiLattice => format!(
                "sample {i}: z = {:.4}, tau = {:.4}, sigma = {:.4}, (m, n) = {:?}",
                s.z.to_f64_pair(),
                s.tau.to_f64_pair(),
                s.sigma.re.to_f64(),
                s.shift
            ),
            _ => format!(
                "sample {i}: z = {:.4}, tau = {:.4}, sigma = {:.4}",
                s.z.to_f64_pair(),
                s.tau.to_f64_pair(),
                s.sigma.re.to_f64()
            ),
        };
        details.push(CheckItem::new(label, err <= p.tol, format!("error {err:.3e}")).expecting(format!("≤ {:e}", p.tol)));
    }
    let limit = p.tol / 10.0;
    if max_tail > limit {
        return Err(Error::TruncationInsufficient { bound: max_tail, limit });
    }
    let target = match p.law {
        ModularLaw::PhiLattice => String::new(),
        _ => format!(" under {}", format_matrix(a)),
    };
    let summary = format!(
        "{}{target}: max error {max_err:.3e}, tail bound {max_tail:.3e}, K = {}",
        p.law.name(),
        p.order
    );
    Ok(CheckReport::new(format!("modular-{}", p.law.name()), summary, details).with_seed(p.seed))
}

trait Pair {
    fn to_f64_pair(&self) -> Complex<f64>;
}

impl<T: Real> Pair for Complex<T> {
    fn to_f64_pair(&self) -> Complex<f64> {
        Complex::new(self.re.to_f64(), self.im.to_f64())
    }
}
