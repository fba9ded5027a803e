//! Complex-screened Yukawa potential `V(r) = -(A/r) e^{-μr}`, `μ = μ_R + iμ_I`.
//!
//! With `σ = 1 + μ/λ` the matrix element is
//!
//! ```text
//! V_nm = -A a_n a_m Γ(n+m+ν+1)/(n! m!) (σ-1)^{n+m}/σ^{n+m+ν+1}
//!        ₂F₁(-n, -m; -n-m-ν; σ(σ-2)/(σ-1)²)
//! ```
//!
//! Evaluated literally, the terminating sum cancels catastrophically in f64 for
//! complex σ and large indices (tens of digits at n, m ≈ 100). Production
//! assembly instead runs the three-term recurrence in `(n, m)` obeyed by the
//! same closed form (it follows from the generating function
//! `Γ(ν+1)[σ - (σ-1)(t+u) + (σ-2)tu]^{-ν-1}` of the integrals), which is stable
//! for every `Re σ > 1/2` and smooth through `σ = 1`. The literal ₂F₁ form is
//! kept as [`yukawa_element_hypergeometric`] and cross-checked in tests.

use num_complex::Complex64;

use crate::basis::{BasisSpec, SymMatrix};
use crate::error::{Error, Result};
use crate::specfun::{hyp2f1_terminating, ln_factorial, ln_gamma_unchecked, CompensatedSum};

/// Below this `|σ - 1|` the hypergeometric route expands in powers of `σ - 1`.
pub const DEGENERATE_SIGMA: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum YukawaVariant {
    /// Real screening, `μ_I = 0`.
    Classical,
    /// `Re V = -(A/r) e^{-μ_R r} cos(μ_I r)`.
    Cosine,
    /// `Im V = (A/r) e^{-μ_R r} sin(μ_I r)`.
    Sine,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct YukawaParams {
    pub strength: f64,
    pub mu_re: f64,
    pub mu_im: f64,
    pub variant: YukawaVariant,
}

impl YukawaParams {
    pub fn new(strength: f64, mu_re: f64, mu_im: f64, variant: YukawaVariant) -> Result<Self> {
        if !(strength >= 0.0) || !strength.is_finite() {
            return Err(Error::domain("YukawaParams", format!("strength A = {strength} must be >= 0")));
        }
        if !(mu_re >= 0.0) || !(mu_im >= 0.0) || !mu_re.is_finite() || !mu_im.is_finite() {
            return Err(Error::domain("YukawaParams", "screening components must be finite and >= 0"));
        }
        if variant == YukawaVariant::Classical && mu_im != 0.0 {
            return Err(Error::domain("YukawaParams", "classical variant requires mu_im = 0"));
        }
        Ok(Self { strength, mu_re, mu_im, variant })
    }

    pub fn classical(strength: f64, mu: f64) -> Result<Self> {
        Self::new(strength, mu, 0.0, YukawaVariant::Classical)
    }

    /// Cosine-like potential with `μ_R = μ_I = δ`.
    pub fn cosine(strength: f64, delta: f64) -> Result<Self> {
        Self::new(strength, delta, delta, YukawaVariant::Cosine)
    }

    /// Sine-like potential with `μ_R = μ_I = δ`.
    pub fn sine(strength: f64, delta: f64) -> Result<Self> {
        Self::new(strength, delta, delta, YukawaVariant::Sine)
    }

    /// Same family with the screening replaced by `μ_R = μ_I = δ`
    /// (classical variants take `μ = δ`).
    pub fn with_delta(&self, delta: f64) -> Result<Self> {
        let mu_im = if self.variant == YukawaVariant::Classical { 0.0 } else { delta };
        Self::new(self.strength, delta, mu_im, self.variant)
    }

    pub fn mu(&self) -> Complex64 {
        Complex64::new(self.mu_re, self.mu_im)
    }

    pub fn sigma(&self, basis: &BasisSpec) -> Complex64 {
        Complex64::new(1.0, 0.0) + self.mu() / basis.lambda()
    }

    pub fn radial(&self, r: f64) -> f64 {
        let decay = (-self.mu_re * r).exp() / r;
        match self.variant {
            YukawaVariant::Classical => -self.strength * decay,
            YukawaVariant::Cosine => -self.strength * decay * (self.mu_im * r).cos(),
            YukawaVariant::Sine => self.strength * decay * (self.mu_im * r).sin(),
        }
    }
}

fn check_sigma(sigma: Complex64) -> Result<()> {
    if !(sigma.re > 0.5) {
        return Err(Error::domain("yukawa_element", format!("Re σ = {} must exceed 1/2 for the integral to converge", sigma.re)));
    }
    Ok(())
}

/// Normalized integrals `Î_nm = h_n h_m ∫ x^ν e^{-σx} L_n^ν L_m^ν dx`,
/// `h_n = sqrt(n!/Γ(n+ν+1))`, for `n, m < size`, as columns `cols[m][n]`.
pub(crate) fn screened_integrals(sigma: Complex64, nu: f64, size: usize) -> Vec<Vec<Complex64>> {
    let one = Complex64::new(1.0, 0.0);
    let sm1 = sigma - one;
    let sm2 = sigma - 2.0 * one;
    let p = sm1 / sigma;

    let mut first = Vec::with_capacity(size);
    let mut v = sigma.powf(-(nu + 1.0));
    for n in 0..size {
        first.push(v);
        let nf = n as f64;
        v *= p * ((nf + nu + 1.0) / (nf + 1.0)).sqrt();
    }
    let q: Vec<f64> = (0..size).map(|n| ((n as f64 + 1.0) * (n as f64 + nu + 1.0)).sqrt()).collect();
    let r: Vec<f64> = (0..size).map(|k| ((k as f64 + 1.0) / (k as f64 + nu + 1.0)).sqrt()).collect();

    let mut cols: Vec<Vec<Complex64>> = Vec::with_capacity(size);
    cols.push(first);
    for m in 1..size {
        let prev = &cols[m - 1];
        let mut col = Vec::with_capacity(size);
        col.push(cols[0][m]);
        let rm = r[m - 1];
        for n in 0..size - 1 {
            let nf = n as f64;
            let next =
                (sm1 * q[n] * col[n] + sm1 * (nf + 1.0) * rm * prev[n + 1] - sm2 * (q[n] * rm) * prev[n]) / (sigma * (nf + 1.0));
            col.push(next);
        }
        cols.push(col);
    }
    cols
}

/// Complex element `V_nm` of the generalized Yukawa potential.
pub fn yukawa_element(p: &YukawaParams, basis: &BasisSpec, n: usize, m: usize) -> Result<Complex64> {
    check_indices(basis, n, m)?;
    let sigma = p.sigma(basis);
    check_sigma(sigma)?;
    let (lo, hi) = if n <= m { (n, m) } else { (m, n) };
    let cols = screened_integrals(sigma, basis.nu(), hi + 1);
    Ok(cols[lo][hi] * (-p.strength * basis.lambda()))
}

/// `V_nm` from the literal hypergeometric closed form.
///
/// For `|σ-1| < DEGENERATE_SIGMA` the factor `(σ-1)^{n+m}` is distributed into
/// the terms, `Σ_k t_k (σ-1)^{n+m-2k} [σ(σ-2)]^k`, removing the `0 × ∞` at
/// `σ = 1`.
pub fn yukawa_element_hypergeometric(p: &YukawaParams, basis: &BasisSpec, n: usize, m: usize) -> Result<Complex64> {
    check_indices(basis, n, m)?;
    let sigma = p.sigma(basis);
    check_sigma(sigma)?;
    let one = Complex64::new(1.0, 0.0);
    let nu = basis.nu();
    let (lo, hi) = if n <= m { (n, m) } else { (m, n) };
    let total = (n + m) as i32;
    let ln_pref = 0.5 * (ln_factorial(n) - ln_gamma_unchecked(n as f64 + nu + 1.0))
        + 0.5 * (ln_factorial(m) - ln_gamma_unchecked(m as f64 + nu + 1.0))
        + ln_gamma_unchecked((n + m) as f64 + nu + 1.0)
        - ln_factorial(n)
        - ln_factorial(m);
    let sm1 = sigma - one;
    let c = -((n + m) as f64) - nu;
    let series = if sm1.norm() >= DEGENERATE_SIGMA {
        let z = sigma * (sigma - 2.0 * one) / (sm1 * sm1);
        hyp2f1_terminating(lo, -(hi as f64), c, z)? * sm1.powi(total)
    } else {
        let w = sigma * (sigma - 2.0 * one);
        let (mut re, mut im) = (CompensatedSum::default(), CompensatedSum::default());
        let mut t = 1.0;
        for k in 0..=lo {
            let term = sm1.powi(total - 2 * k as i32) * w.powi(k as i32) * t;
            re.add(term.re);
            im.add(term.im);
            let kf = k as f64;
            t *= (kf - lo as f64) * (kf - hi as f64) / ((c + kf) * (kf + 1.0));
        }
        Complex64::new(re.value(), im.value())
    };
    let value = series * ln_pref.exp() / sigma.powf(total as f64 + nu + 1.0);
    Ok(value * (-p.strength * basis.lambda()))
}

/// Real and imaginary parts of the full complex element matrix.
pub fn yukawa_complex_matrix(p: &YukawaParams, basis: &BasisSpec) -> Result<(SymMatrix, SymMatrix)> {
    let sigma = p.sigma(basis);
    check_sigma(sigma)?;
    let cols = screened_integrals(sigma, basis.nu(), basis.size());
    let scale = -p.strength * basis.lambda();
    let re = SymMatrix::from_lower_fn(basis.size(), |i, j| (cols[j][i] * scale).re);
    let im = SymMatrix::from_lower_fn(basis.size(), |i, j| (cols[j][i] * scale).im);
    if !re.is_finite() || !im.is_finite() {
        return Err(Error::domain("yukawa_matrix", "non-finite matrix element"));
    }
    Ok((re, im))
}

/// Real potential matrix for the selected variant: classical and cosine take
/// the real part of the complex element, sine the imaginary part.
pub fn yukawa_matrix(p: &YukawaParams, basis: &BasisSpec) -> Result<SymMatrix> {
    let (re, im) = yukawa_complex_matrix(p, basis)?;
    Ok(match p.variant {
        YukawaVariant::Classical | YukawaVariant::Cosine => re,
        YukawaVariant::Sine => im,
    })
}

fn check_indices(basis: &BasisSpec, n: usize, m: usize) -> Result<()> {
    if n >= basis.size() || m >= basis.size() {
        return Err(Error::domain("yukawa_element", format!("({n}, {m}) outside basis of size {}", basis.size())));
    }
    Ok(())
}
