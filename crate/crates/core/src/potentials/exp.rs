//! Elements of `e^{-cr}`: `⟨φ_n| e^{-cr} |φ_m⟩ = h_n h_m ∫ x^{ν+1} e^{-σx} L_n^ν L_m^ν dx`
//! with `σ = 1 + c/λ` and `h_n = sqrt(n!/Γ(n+ν+1))`.
//!
//! Two routes are provided.
//!
//! [`exp_matrix`] raises the Laguerre index, `L_n^ν = L_n^{ν+1} - L_{n-1}^{ν+1}`,
//! which turns each element into four normalized screened integrals of order
//! `ν+1` (the same table the Yukawa elements use):
//!
//! ```text
//! E_nm = r_n r_m Î'_{n,m} - s_n r_m Î'_{n-1,m} - r_n s_m Î'_{n,m-1} + s_n s_m Î'_{n-1,m-1},
//! r_n = sqrt(n+ν+1), s_n = sqrt(n).
//! ```
//!
//! [`exp_element_series`] is the finite double sum: expanding in `L_k^{ν+1}` at
//! scaled argument gives `σ^{-ν-2} Σ_k ĉ_{nk} ĉ_{mk}` with a terminating
//! `₂F₁(k-n, ν+k+2; k+ν+1; 1/σ)` in each coefficient, which a Pfaff
//! transformation reduces to two terms:
//!
//! ```text
//! ĉ_{nk} = C(n+ν, n-k) h_n sqrt(Γ(k+ν+2)/k!) σ^{-n} d^{p-1} (d - p/(k+ν+1)),
//! ```
//!
//! `p = n - k`, `d = c/λ`. For `σ` near 1 the far off-diagonal elements are
//! small differences of O(1) products there, so the sum is kept as a
//! cross-check only.

use num_complex::Complex64;

use crate::basis::{BasisSpec, SymMatrix};
use crate::error::{Error, Result};
use crate::specfun::{ln_binom, ln_factorial, ln_gamma_unchecked, CompensatedSum};

use super::yukawa::screened_integrals;

fn check(c: f64, basis: &BasisSpec) -> Result<f64> {
    if !(c >= 0.0) || !c.is_finite() {
        return Err(Error::domain("exp_element", format!("decay c = {c} must be finite and >= 0")));
    }
    Ok(c / basis.lambda())
}

fn check_indices(basis: &BasisSpec, n: usize, m: usize) -> Result<()> {
    if n >= basis.size() || m >= basis.size() {
        return Err(Error::domain("exp_element", format!("({n}, {m}) outside basis of size {}", basis.size())));
    }
    Ok(())
}

/// Real parts of the order-`ν+1` screened integral table, `t[m][n]`.
fn raised_table(d: f64, nu: f64, size: usize) -> Vec<Vec<f64>> {
    let sigma = Complex64::new(1.0 + d, 0.0);
    screened_integrals(sigma, nu + 1.0, size).into_iter().map(|col| col.into_iter().map(|z| z.re).collect()).collect()
}

fn combine(t: &[Vec<f64>], nu: f64, n: usize, m: usize) -> f64 {
    let at = |a: usize, b: usize| if a >= b { t[b][a] } else { t[a][b] };
    let r = |k: usize| (k as f64 + nu + 1.0).sqrt();
    let s = |k: usize| (k as f64).sqrt();
    let mut acc = CompensatedSum::default();
    acc.add(r(n) * r(m) * at(n, m));
    if n > 0 {
        acc.add(-s(n) * r(m) * at(n - 1, m));
    }
    if m > 0 {
        acc.add(-r(n) * s(m) * at(n, m - 1));
    }
    if n > 0 && m > 0 {
        acc.add(s(n) * s(m) * at(n - 1, m - 1));
    }
    acc.value()
}

/// `⟨φ_n| e^{-cr} |φ_m⟩`.
pub fn exp_element(c: f64, basis: &BasisSpec, n: usize, m: usize) -> Result<f64> {
    let d = check(c, basis)?;
    check_indices(basis, n, m)?;
    let t = raised_table(d, basis.nu(), n.max(m) + 1);
    Ok(combine(&t, basis.nu(), n.max(m), n.min(m)))
}

/// Full matrix of `e^{-cr}`.
pub fn exp_matrix(c: f64, basis: &BasisSpec) -> Result<SymMatrix> {
    let d = check(c, basis)?;
    let nu = basis.nu();
    let t = raised_table(d, nu, basis.size());
    let m = SymMatrix::from_lower_fn(basis.size(), |i, j| combine(&t, nu, i, j));
    if !m.is_finite() {
        return Err(Error::domain("exp_matrix", "non-finite matrix element"));
    }
    Ok(m)
}

fn coefficient(n: usize, k: usize, nu: f64, d: f64, ln_sigma: f64) -> f64 {
    let p = n - k;
    let kf = k as f64;
    let mut ln_mag = ln_binom(n as f64 + nu, p)
        + 0.5 * (ln_factorial(n) - ln_gamma_unchecked(n as f64 + nu + 1.0))
        + 0.5 * (ln_gamma_unchecked(kf + nu + 2.0) - ln_factorial(k))
        - n as f64 * ln_sigma;
    if p == 0 {
        return ln_mag.exp();
    }
    let bracket = d - p as f64 / (kf + nu + 1.0);
    if p > 1 {
        if d == 0.0 {
            return 0.0;
        }
        ln_mag += (p - 1) as f64 * d.ln();
    }
    ln_mag.exp() * bracket
}

/// `⟨φ_n| e^{-cr} |φ_m⟩` from the finite double sum.
pub fn exp_element_series(c: f64, basis: &BasisSpec, n: usize, m: usize) -> Result<f64> {
    let d = check(c, basis)?;
    check_indices(basis, n, m)?;
    let nu = basis.nu();
    let ln_sigma = d.ln_1p();
    let mut acc = CompensatedSum::default();
    for k in 0..=n.min(m) {
        acc.add(coefficient(n, k, nu, d, ln_sigma) * coefficient(m, k, nu, d, ln_sigma));
    }
    Ok(acc.value() * (-(nu + 2.0) * ln_sigma).exp())
}
