//! Exact arithmetic in cyclotomic fields Q(ζ_M).
//!
//! An element is a polynomial in ζ_M of degree below φ(M), reduced modulo the
//! M-th cyclotomic polynomial. Binary operations on elements of different
//! moduli first lift both operands to the lcm of the moduli.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use num_complex::Complex64;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::scalar::{Field, Ring};
use crate::series::poly::Poly;
use crate::Rational;

use super::rational::int;

/// Per-modulus data: Φ_M and the reductions of ζ^j for `0 <= j < M`.
#[derive(Debug)]
struct CycloData {
    degree: usize,
    phi: Poly<Rational>,
    powers: Vec<Vec<Rational>>,
}

fn cache() -> &'static RwLock<HashMap<u64, Arc<CycloData>>> {
    static CACHE: OnceLock<RwLock<HashMap<u64, Arc<CycloData>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

fn data(m: u64) -> Arc<CycloData> {
    if let Some(d) = cache().read().expect("cyclotomic cache poisoned").get(&m) {
        return d.clone();
    }
    let phi = cyclotomic_polynomial(m);
    let built = Arc::new(build_data(m, phi));
    cache()
        .write()
        .expect("cyclotomic cache poisoned")
        .entry(m)
        .or_insert(built)
        .clone()
}

fn build_data(m: u64, phi: Poly<Rational>) -> CycloData {
    let degree = phi.degree().expect("cyclotomic polynomial is nonzero");
    let mut powers = Vec::with_capacity(m as usize);
    let mut cur = vec![Rational::zero(); degree];
    cur[0] = int(1);
    for _ in 0..m {
        powers.push(cur.clone());
        // multiply by x and reduce with the monic relation x^deg = -Σ φ_k x^k
        let top = cur[degree - 1].clone();
        let mut next = vec![Rational::zero(); degree];
        next[1..degree].clone_from_slice(&cur[..degree - 1]);
        if !top.is_zero() {
            for (k, c) in phi.coeffs()[..degree].iter().enumerate() {
                next[k] -= &top * c;
            }
        }
        cur = next;
    }
    CycloData {
        degree,
        phi,
        powers,
    }
}

/// Φ_M by dividing x^M − 1 by Φ_d for every proper divisor d of M.
pub fn cyclotomic_polynomial(m: u64) -> Poly<Rational> {
    assert!(m >= 1, "cyclotomic modulus must be positive");
    if let Some(d) = cache().read().expect("cyclotomic cache poisoned").get(&m) {
        return d.phi.clone();
    }
    let mut p = Poly::monomial(int(1), m as usize).sub(&Poly::one());
    for d in 1..m {
        if m % d == 0 {
            p = p
                .div_exact(&data(d).phi)
                .expect("Φ_d divides x^M - 1 for d | M");
        }
    }
    p
}

pub fn euler_phi(m: u64) -> usize {
    data(m).degree
}

/// Element of Q(ζ_M).
#[derive(Clone)]
pub struct Cyclotomic {
    modulus: u64,
    coeffs: Vec<Rational>,
}

impl Cyclotomic {
    /// Builds an element from an arbitrary polynomial in ζ_M (any length).
    pub fn from_poly_coeffs(modulus: u64, poly: &[Rational]) -> Self {
        let d = data(modulus);
        let mut coeffs = vec![Rational::zero(); d.degree];
        for (j, c) in poly.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let pw = &d.powers[j % modulus as usize];
            for (k, b) in pw.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[k] += c * b;
                }
            }
        }
        Cyclotomic { modulus, coeffs }
    }

    pub fn from_rational(r: Rational) -> Self {
        Cyclotomic {
            modulus: 1,
            coeffs: vec![r],
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(int(n))
    }

    /// ζ_M^a.
    pub fn root_of_unity(a: i64, m: u64) -> Self {
        assert!(m >= 1, "root of unity needs a positive modulus");
        let d = data(m);
        let j = a.rem_euclid(m as i64) as usize;
        Cyclotomic {
            modulus: m,
            coeffs: d.powers[j].clone(),
        }
    }

    /// e^{2πi r} for a rational `r` whose denominator divides `m`.
    pub fn exp_2pi_i(r: &Rational, m: u64) -> Result<Self> {
        let scaled = r * int(m as i64);
        if !scaled.is_integer() {
            return Err(Error::IncompatibleModulus {
                from: super::rational::denom_u64(r),
                to: m,
            });
        }
        let m_i = num_bigint::BigInt::from(m);
        let a = scaled.to_integer().mod_floor(&m_i).to_i64().expect("reduced exponent fits");
        Ok(Self::root_of_unity(a, m))
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// The same field element in Q(ζ_{M'}).
    pub fn lift(&self, target: u64) -> Result<Self> {
        if target % self.modulus != 0 {
            return Err(Error::IncompatibleModulus {
                from: self.modulus,
                to: target,
            });
        }
        if target == self.modulus {
            return Ok(self.clone());
        }
        let step = (target / self.modulus) as usize;
        let d = data(target);
        let mut coeffs = vec![Rational::zero(); d.degree];
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (k, b) in d.powers[i * step].iter().enumerate() {
                if !b.is_zero() {
                    coeffs[k] += c * b;
                }
            }
        }
        Ok(Cyclotomic {
            modulus: target,
            coeffs,
        })
    }

    fn common(&self, other: &Self) -> (Self, Self) {
        if self.modulus == other.modulus {
            return (self.clone(), other.clone());
        }
        let m = self.modulus.lcm(&other.modulus);
        (
            self.lift(m).expect("lcm is a multiple"),
            other.lift(m).expect("lcm is a multiple"),
        )
    }

    fn zip(&self, other: &Self, f: impl Fn(&Rational, &Rational) -> Rational) -> Self {
        if self.modulus == other.modulus {
            let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| f(a, b)).collect();
            return Cyclotomic {
                modulus: self.modulus,
                coeffs,
            };
        }
        let (a, b) = self.common(other);
        a.zip(&b, f)
    }

    /// Rational value if the element lies in Q.
    pub fn as_rational(&self) -> Option<Rational> {
        self.coeffs[1..]
            .iter()
            .all(Ring::is_zero)
            .then(|| self.coeffs[0].clone())
    }

    pub fn to_complex(&self) -> Complex64 {
        let m = self.modulus as f64;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| {
                let theta = std::f64::consts::TAU * (k as f64) / m;
                Complex64::from_polar(c.to_f64().unwrap_or(f64::NAN), theta)
            })
            .sum()
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Cyclotomic {
            modulus: self.modulus,
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    pub fn inverse(&self) -> Result<Self> {
        if Ring::is_zero(self) {
            return Err(Error::DivisionByZero);
        }
        if let Some(r) = self.as_rational() {
            return Ok(Self::from_rational(r.recip()).lift(self.modulus)?);
        }
        let d = data(self.modulus);
        let a = Poly::new(self.coeffs.clone());
        let (g, s, _) = a.xgcd(&d.phi);
        debug_assert_eq!(g.degree(), Some(0), "Φ_M is irreducible");
        Ok(Cyclotomic::from_poly_coeffs(self.modulus, s.coeffs()))
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.modulus == other.modulus {
            return self.coeffs == other.coeffs;
        }
        let (a, b) = self.common(other);
        a.coeffs == b.coeffs
    }
}

impl Eq for Cyclotomic {}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})·z{}", self.modulus)?,
                _ => write!(f, "({c})·z{}^{k}", self.modulus)?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl Ring for Cyclotomic {
    fn zero() -> Self {
        Self::from_int(0)
    }
    fn one() -> Self {
        Self::from_int(1)
    }
    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Ring::is_zero)
    }
    fn add(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a + b)
    }
    fn sub(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a - b)
    }
    fn neg(&self) -> Self {
        Cyclotomic {
            modulus: self.modulus,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
    fn mul(&self, other: &Self) -> Self {
        if self.modulus != other.modulus {
            let (a, b) = self.common(other);
            return a.mul(&b);
        }
        if self.modulus == 1 {
            return Cyclotomic {
                modulus: 1,
                coeffs: vec![&self.coeffs[0] * &other.coeffs[0]],
            };
        }
        let n = self.coeffs.len();
        let mut prod = vec![Rational::zero(); 2 * n - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        Cyclotomic::from_poly_coeffs(self.modulus, &prod)
    }
    fn try_inv(&self) -> Option<Self> {
        self.inverse().ok()
    }
}

impl Field for Cyclotomic {}
