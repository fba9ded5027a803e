//! Generalized Morse potential `V₀ (e^{-2w(r/r₀-1)} - 2β e^{-w(r/r₀-1)})`,
//! assembled from two [`exp_matrix`] blocks.

use crate::basis::{BasisSpec, SymMatrix};
use crate::error::{Error, Result};

use super::exp_matrix;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MorseParams {
    /// `V₀`.
    pub depth: f64,
    /// `r₀`.
    pub r_eq: f64,
    /// Morse exponent `w`.
    pub width: f64,
    pub beta: f64,
}

impl MorseParams {
    pub fn new(depth: f64, r_eq: f64, width: f64, beta: f64) -> Result<Self> {
        if !depth.is_finite() {
            return Err(Error::domain("MorseParams", "depth must be finite"));
        }
        if !(r_eq > 0.0) || !r_eq.is_finite() {
            return Err(Error::domain("MorseParams", format!("r_eq = {r_eq} must be > 0")));
        }
        if !(width > 0.0) || !width.is_finite() {
            return Err(Error::domain("MorseParams", format!("width = {width} must be > 0")));
        }
        if !(beta >= 0.0) || !beta.is_finite() {
            return Err(Error::domain("MorseParams", format!("beta = {beta} must be >= 0")));
        }
        Ok(Self { depth, r_eq, width, beta })
    }

    pub fn radial(&self, r: f64) -> f64 {
        let s = self.width * (r / self.r_eq - 1.0);
        self.depth * ((-2.0 * s).exp() - 2.0 * self.beta * (-s).exp())
    }
}

pub fn morse_matrix(p: &MorseParams, basis: &BasisSpec) -> Result<SymMatrix> {
    let w = p.width;
    let repulsive = exp_matrix(2.0 * w / p.r_eq, basis)?.scaled(p.depth * (2.0 * w).exp());
    if p.beta == 0.0 {
        return Ok(repulsive);
    }
    let attractive = exp_matrix(w / p.r_eq, basis)?.scaled(-2.0 * p.beta * p.depth * w.exp());
    repulsive.add(&attractive)
}
