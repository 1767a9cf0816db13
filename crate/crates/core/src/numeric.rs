//! Floating-point evaluation of `Φ` and `φ` by truncated products, with a
//! self-estimated bound on the neglected tail.

use num_complex::Complex;

use crate::scalar::Real;

/// A truncated product and a bound on its distance to the infinite product.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Truncated<T> {
    pub value: Complex<T>,
    pub tail_bound: T,
}

/// An element of `SL₂(ℤ)` as `[[a, b], [c, d]]`.
pub type Matrix = [[i64; 2]; 2];

pub const IDENTITY: Matrix = [[1, 0], [0, 1]];
pub const T: Matrix = [[1, 1], [0, 1]];
pub const S: Matrix = [[0, -1], [1, 0]];
pub const TS: Matrix = [[1, -1], [1, 0]];

pub fn named_matrix(name: &str) -> Option<Matrix> {
    match name.to_ascii_uppercase().as_str() {
        "I" | "ID" | "IDENTITY" => Some(IDENTITY),
        "T" => Some(T),
        "S" => Some(S),
        "TS" => Some(TS),
        _ => None,
    }
}

fn c<T: Real>(x: f64) -> T {
    T::from_f64(x)
}

/// `e^{2πix}`.
pub fn e2pii<T: Real>(x: Complex<T>) -> Complex<T> {
    (Complex::new(T::zero(), T::TAU()) * x).exp()
}

/// `cτ + d`.
pub fn automorphy<T: Real>(a: &Matrix, tau: Complex<T>) -> Complex<T> {
    tau * c::<T>(a[1][0] as f64) + c::<T>(a[1][1] as f64)
}

/// `A(z, τ) = (z/(cτ+d), (aτ+b)/(cτ+d))`.
pub fn act<T: Real>(a: &Matrix, z: Complex<T>, tau: Complex<T>) -> (Complex<T>, Complex<T>) {
    let j = automorphy(a, tau);
    let num = tau * c::<T>(a[0][0] as f64) + c::<T>(a[0][1] as f64);
    (z / j, num / j)
}

/// Relative error bound `e^δ − 1` for `∏_{k>K}` of factors `1 + O(Σ|x_j| |q|^k)`.
fn tail<T: Real>(weights: T, q_abs: T, k: usize) -> T {
    let qk = q_abs.powi(k as i32 + 1);
    let half = c::<T>(0.5);
    if q_abs >= T::one() || weights * qk > half {
        return T::infinity();
    }
    let delta = c::<T>(2.0) * weights * qk / (T::one() - q_abs);
    delta.exp_m1()
}

/// `Φ(z, τ) = (t^{1/2} − t^{−1/2}) ∏_{k=1}^{K} (1 − tq^k)(1 − t⁻¹q^k)/(1 − q^k)²`.
pub fn capital_phi<T: Real>(z: Complex<T>, tau: Complex<T>, k: usize) -> Truncated<T> {
    let half = c::<T>(0.5);
    let t = e2pii(z);
    let t_inv = t.inv();
    let q = e2pii(tau);
    let mut value = e2pii(z * half) - e2pii(-z * half);
    let mut qk = Complex::new(T::one(), T::zero());
    for _ in 0..k {
        qk = qk * q;
        let one = Complex::new(T::one(), T::zero());
        value = value * (one - t * qk) * (one - t_inv * qk) / ((one - qk) * (one - qk));
    }
    let weights = t.norm() + t_inv.norm() + c::<T>(2.0);
    Truncated {
        value,
        tail_bound: value.norm() * tail(weights, q.norm(), k),
    }
}

/// `φ(z, τ, σ)` from its own product expansion.
pub fn phi<T: Real>(z: Complex<T>, tau: Complex<T>, sigma: Complex<T>, k: usize) -> Truncated<T> {
    let one = Complex::new(T::one(), T::zero());
    let t = e2pii(z);
    let t_inv = t.inv();
    let zeta = e2pii(sigma);
    let zeta_inv = zeta.inv();
    let q = e2pii(tau);
    let mut value = e2pii(-sigma * c::<T>(0.5)) * (one - zeta * t) / (one - t);
    let mut qk = one;
    for _ in 0..k {
        qk = qk * q;
        value = value * (one - zeta * t * qk) * (one - zeta_inv * t_inv * qk)
            / ((one - t * qk) * (one - t_inv * qk));
    }
    let weights = (zeta * t).norm() + (zeta_inv * t_inv).norm() + t.norm() + t_inv.norm();
    Truncated {
        value,
        tail_bound: value.norm() * tail(weights, q.norm(), k),
    }
}
