//! Kratzer potential `V(r) = -A/r + B/(2r²)`.
//!
//! The Coulomb part is `-Aλ` times the identity (`x^ν`-weight orthogonality).
//! The inverse-square part uses `∫ x^{ν-1} e^{-x} L_n^ν L_m^ν dx`, expanded as a
//! sum over `k ≤ min(n, m)` of products of
//! `C(n+ν, n-k) ₂F₁(k-n, ν+k; k+ν+1; 1)` factors; both factors carry the same
//! second parameter `ν+k`, which keeps the sum symmetric in `n, m`.

use crate::basis::{BasisSpec, SymMatrix};
use crate::error::{Error, Result};
use crate::specfun::{hyp2f1_unit, ln_binom, ln_factorial, ln_gamma_unchecked};

use super::gram_lower;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KratzerParams {
    /// `A` in `-A/r`; positive is attractive.
    pub coulomb: f64,
    /// `B` in `B/(2r²)`.
    pub inverse_square: f64,
}

impl KratzerParams {
    pub fn new(coulomb: f64, inverse_square: f64) -> Result<Self> {
        if !coulomb.is_finite() {
            return Err(Error::domain("KratzerParams", "coulomb strength must be finite"));
        }
        if !(inverse_square > 0.0) || !inverse_square.is_finite() {
            return Err(Error::domain("KratzerParams", format!("B = {inverse_square} must be finite and > 0")));
        }
        Ok(Self { coulomb, inverse_square })
    }

    pub fn radial(&self, r: f64) -> f64 {
        -self.coulomb / r + self.inverse_square / (2.0 * r * r)
    }
}

pub(crate) fn check_basis(basis: &BasisSpec) -> Result<()> {
    if basis.nu() == 0.0 {
        return Err(Error::domain("kratzer", "requires |ell| >= 1: the 1/r^2 element diverges for nu = 2|ell| = 0"));
    }
    Ok(())
}

fn coefficient(n: usize, k: usize, nu: f64) -> Result<f64> {
    let p = n - k;
    let kf = k as f64;
    let ln_mag = ln_binom(n as f64 + nu, p)
        + 0.5 * (ln_factorial(n) - ln_gamma_unchecked(n as f64 + nu + 1.0))
        + 0.5 * (ln_gamma_unchecked(kf + nu) - ln_factorial(k));
    Ok(ln_mag.exp() * hyp2f1_unit(p, nu + kf, kf + nu + 1.0)?)
}

/// `(V⁽¹⁾, V⁽²⁾)`: the Coulomb and inverse-square parts.
pub fn kratzer_parts(p: &KratzerParams, basis: &BasisSpec) -> Result<(SymMatrix, SymMatrix)> {
    check_basis(basis)?;
    let nu = basis.nu();
    let lambda = basis.lambda();
    let v1 = SymMatrix::identity(basis.size()).scaled(-p.coulomb * lambda);
    let rows = (0..basis.size())
        .map(|n| (0..=n).map(|k| coefficient(n, k, nu)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    let v2 = gram_lower(&rows, 0.5 * lambda * lambda * p.inverse_square);
    if !v2.is_finite() {
        return Err(Error::domain("kratzer_matrix", "non-finite matrix element"));
    }
    Ok((v1, v2))
}

pub fn kratzer_matrix(p: &KratzerParams, basis: &BasisSpec) -> Result<SymMatrix> {
    let (v1, v2) = kratzer_parts(p, basis)?;
    v1.add(&v2)
}
