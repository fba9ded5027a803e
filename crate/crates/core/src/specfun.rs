//! Scalar special-function kernels shared by the matrix-element formulas.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Shift point above which the Stirling series is used directly.
const STIRLING_MIN: f64 = 15.0;

/// `B_{2k} / (2k (2k-1))` for k = 1..=8.
const STIRLING_COEFFS: [f64; 8] =
    [1.0 / 12.0, -1.0 / 360.0, 1.0 / 1260.0, -1.0 / 1680.0, 1.0 / 1188.0, -691.0 / 360_360.0, 1.0 / 156.0, -3617.0 / 122_400.0];

/// Degree and upper index of a generalized Laguerre polynomial `L_n^ν`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LaguerreOrder {
    pub n: usize,
    pub nu: f64,
}

impl LaguerreOrder {
    pub fn new(n: usize, nu: f64) -> Result<Self> {
        if !(nu >= 0.0) || !nu.is_finite() {
            return Err(Error::domain("LaguerreOrder", format!("nu = {nu} must be >= 0")));
        }
        Ok(Self { n, nu })
    }

    /// `L_n^ν(x)`.
    pub fn eval(&self, x: f64) -> f64 {
        laguerre_seq(self.n, self.nu, x)[self.n]
    }

    /// Squared norm `Γ(n+ν+1)/n!` under the weight `x^ν e^{-x}`.
    pub fn norm_sq(&self) -> f64 {
        (ln_gamma_unchecked(self.n as f64 + self.nu + 1.0) - ln_factorial(self.n)).exp()
    }
}

/// Natural log of the gamma function for `x > 0`.
pub fn log_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::domain("log_gamma", format!("x = {x} must be finite and > 0")));
    }
    Ok(ln_gamma_unchecked(x))
}

pub(crate) fn ln_gamma_unchecked(x: f64) -> f64 {
    // small integers: exact factorial products
    if x <= 20.0 && x.fract() == 0.0 {
        let mut p = 1.0;
        for k in 2..(x as u64) {
            p *= k as f64;
        }
        return p.ln();
    }
    if x >= STIRLING_MIN {
        return stirling(x);
    }
    let mut shifted = x;
    let mut prod = 1.0;
    while shifted < STIRLING_MIN {
        prod *= shifted;
        shifted += 1.0;
    }
    stirling(shifted) - prod.ln()
}

fn stirling(x: f64) -> f64 {
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    let mut series = 0.0;
    let mut pow = inv;
    for c in STIRLING_COEFFS {
        series += c * pow;
        pow *= inv2;
    }
    (x - 0.5) * x.ln() - x + 0.5 * (2.0 * std::f64::consts::PI).ln() + series
}

/// `ln n!`.
pub fn ln_factorial(n: usize) -> f64 {
    ln_gamma_unchecked(n as f64 + 1.0)
}

/// `ln C(top, k) = ln Γ(top+1) - ln k! - ln Γ(top-k+1)`, for `top - k > -1`.
pub fn ln_binom(top: f64, k: usize) -> f64 {
    ln_gamma_unchecked(top + 1.0) - ln_factorial(k) - ln_gamma_unchecked(top - k as f64 + 1.0)
}

/// `L_0^ν(x), …, L_{n_max}^ν(x)` by the upward three-term recurrence.
pub fn laguerre_seq(n_max: usize, nu: f64, x: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(n_max + 1);
    laguerre_seq_into(n_max, nu, x, &mut out);
    out
}

/// Same as [`laguerre_seq`] but reuses the caller's buffer.
pub fn laguerre_seq_into(n_max: usize, nu: f64, x: f64, out: &mut Vec<f64>) {
    out.clear();
    out.push(1.0);
    if n_max == 0 {
        return;
    }
    out.push(1.0 + nu - x);
    for k in 1..n_max {
        let kf = k as f64;
        let next = ((2.0 * kf + nu + 1.0 - x) * out[k] - (kf + nu) * out[k - 1]) / (kf + 1.0);
        out.push(next);
    }
}

/// Basis normalization `a_n = sqrt(λ Γ(n+1) / Γ(n+ν+1))`.
pub fn norm_coeff(n: usize, nu: f64, lambda: f64) -> Result<f64> {
    if !(nu >= 0.0) || !nu.is_finite() {
        return Err(Error::domain("norm_coeff", format!("nu = {nu} must be >= 0")));
    }
    if !(lambda > 0.0) || !lambda.is_finite() {
        return Err(Error::domain("norm_coeff", format!("lambda = {lambda} must be > 0")));
    }
    Ok(norm_coeff_unchecked(n, nu, lambda))
}

pub(crate) fn norm_coeff_unchecked(n: usize, nu: f64, lambda: f64) -> f64 {
    (0.5 * (lambda.ln() + ln_factorial(n) - ln_gamma_unchecked(n as f64 + nu + 1.0))).exp()
}

/// Generalized binomial coefficient `a (a-1) … (a-k+1) / k!`.
pub fn binom_real(a: f64, k: usize) -> f64 {
    let mut acc = 1.0;
    for j in 0..k {
        acc *= (a - j as f64) / (j as f64 + 1.0);
    }
    acc
}

/// Neumaier-compensated accumulator.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    carry: f64,
}

impl CompensatedSum {
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.carry
    }
}

/// `₂F₁(-n, b; c; z)` as the explicit finite sum of `n + 1` terms.
///
/// The sum stops early, without error, once the numerator `(-n)_k (b)_k`
/// vanishes. A vanishing `(c)_k` under a nonzero numerator is a [`Error::Pole`].
pub fn hyp2f1_terminating(neg_n: usize, b: f64, c: f64, z: Complex64) -> Result<Complex64> {
    let mut re = CompensatedSum::default();
    let mut im = CompensatedSum::default();
    re.add(1.0);
    if z == Complex64::new(0.0, 0.0) {
        return Ok(Complex64::new(1.0, 0.0));
    }
    let mut term = Complex64::new(1.0, 0.0);
    for k in 0..neg_n {
        let kf = k as f64;
        let num = (kf - neg_n as f64) * (b + kf);
        if num == 0.0 {
            break;
        }
        let den = c + kf;
        if den == 0.0 {
            return Err(Error::Pole { k: k + 1 });
        }
        term *= z * (num / (den * (kf + 1.0)));
        re.add(term.re);
        im.add(term.im);
    }
    Ok(Complex64::new(re.value(), im.value()))
}

/// `₂F₁(-n, b; c; 1)` in closed form, `(c-b)_n / (c)_n` (Chu–Vandermonde).
///
/// The explicit sum at unit argument alternates with binomial-sized terms and
/// cancels catastrophically for large `n`; the product form has no cancellation.
pub fn hyp2f1_unit(neg_n: usize, b: f64, c: f64) -> Result<f64> {
    let mut acc = 1.0;
    for j in 0..neg_n {
        let jf = j as f64;
        let num = c - b + jf;
        if num == 0.0 {
            return Ok(0.0);
        }
        let den = c + jf;
        if den == 0.0 {
            return Err(Error::Pole { k: j + 1 });
        }
        acc *= num / den;
    }
    Ok(acc)
}
