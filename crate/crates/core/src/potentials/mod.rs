//! Closed-form potential matrix elements in the Laguerre basis.
//!
//! Three solvable families are covered: the complex-screened Yukawa
//! `-(A/r) e^{-μr}` (classical, cosine-like and sine-like variants), the
//! Kratzer potential `-A/r + B/(2r²)`, and the generalized Morse potential.
//! Every family also exposes its radial function and the quadrature weight
//! exponent that makes the oracle integrand polynomial-times-entire.

mod exp;
mod kratzer;
mod morse;
mod yukawa;

pub use exp::{exp_element, exp_element_series, exp_matrix};
pub use kratzer::{kratzer_matrix, kratzer_parts, KratzerParams};
pub use morse::{morse_matrix, MorseParams};
pub use yukawa::{
    yukawa_complex_matrix, yukawa_element, yukawa_element_hypergeometric, yukawa_matrix, YukawaParams, YukawaVariant,
    DEGENERATE_SIGMA,
};

use crate::basis::{BasisSpec, SymMatrix};
use crate::error::Result;
use crate::par;
use crate::quadrature::{default_order, quad_matrix, RuleExponent};
use crate::specfun::CompensatedSum;

/// One of the supported potential families.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PotentialSpec {
    Yukawa(YukawaParams),
    Kratzer(KratzerParams),
    Morse(MorseParams),
}

impl PotentialSpec {
    /// Analytic matrix `V_{nm}` in `basis`.
    pub fn matrix(&self, basis: &BasisSpec) -> Result<SymMatrix> {
        match self {
            PotentialSpec::Yukawa(p) => yukawa_matrix(p, basis),
            PotentialSpec::Kratzer(p) => kratzer_matrix(p, basis),
            PotentialSpec::Morse(p) => morse_matrix(p, basis),
        }
    }

    /// `V(r)` as a real function (the part that enters the real Hamiltonian).
    pub fn radial(&self, r: f64) -> f64 {
        match self {
            PotentialSpec::Yukawa(p) => p.radial(r),
            PotentialSpec::Kratzer(p) => p.radial(r),
            PotentialSpec::Morse(p) => p.radial(r),
        }
    }

    /// Weight exponent for which the oracle integrand has no endpoint singularity.
    pub fn oracle_exponent(&self) -> RuleExponent {
        match self {
            PotentialSpec::Kratzer(_) => RuleExponent::Lowered(1),
            _ => RuleExponent::Basis,
        }
    }

    /// Checks that this potential can be represented in `basis`.
    pub fn check_basis(&self, basis: &BasisSpec) -> Result<()> {
        match self {
            PotentialSpec::Kratzer(_) => kratzer::check_basis(basis),
            _ => Ok(()),
        }
    }

    pub fn family(&self) -> &'static str {
        match self {
            PotentialSpec::Yukawa(p) => match p.variant {
                YukawaVariant::Classical => "yukawa",
                YukawaVariant::Cosine => "yukawa-cos",
                YukawaVariant::Sine => "yukawa-sin",
            },
            PotentialSpec::Kratzer(_) => "kratzer",
            PotentialSpec::Morse(_) => "morse",
        }
    }
}

/// Elements smaller than this fraction of the matrix scale `max(1, max |V_ij|)`
/// are compared in absolute terms against that floor.
pub const ORACLE_FLOOR: f64 = 1e-2;

/// Largest analytic-vs-quadrature discrepancy over a matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleDeviation {
    /// `max |a - q| / max(|a|, floor)`.
    pub max_rel: f64,
    /// Index pair `(n, m)`, `n >= m`, where the maximum occurs.
    pub at: (usize, usize),
    pub analytic: f64,
    pub quadrature: f64,
    /// Absolute floor used for small elements.
    pub floor: f64,
    pub order: usize,
}

impl PotentialSpec {
    /// Quadrature matrix of the radial function, with an order of at least
    /// `min_order` and at least the default for the largest index pair.
    pub fn oracle_matrix(&self, basis: &BasisSpec, min_order: usize) -> Result<(SymMatrix, usize)> {
        self.check_basis(basis)?;
        let top = basis.size() - 1;
        let order = min_order.max(default_order(top, top, basis.nu()));
        let me = *self;
        let v = move |r: f64| me.radial(r);
        Ok((quad_matrix(&v, basis, order, self.oracle_exponent())?, order))
    }

    /// Compares [`PotentialSpec::matrix`] with [`PotentialSpec::oracle_matrix`].
    pub fn oracle_deviation(&self, basis: &BasisSpec, min_order: usize) -> Result<OracleDeviation> {
        let analytic = self.matrix(basis)?;
        let (oracle, order) = self.oracle_matrix(basis, min_order)?;
        let floor = ORACLE_FLOOR * analytic.as_slice().iter().fold(1.0f64, |a, v| a.max(v.abs()));
        let mut worst = OracleDeviation {
            max_rel: 0.0,
            at: (0, 0),
            analytic: analytic.get(0, 0),
            quadrature: oracle.get(0, 0),
            floor,
            order,
        };
        for n in 0..basis.size() {
            for m in 0..=n {
                let (a, q) = (analytic.get(n, m), oracle.get(n, m));
                let rel = (a - q).abs() / a.abs().max(floor);
                if rel > worst.max_rel {
                    worst = OracleDeviation { max_rel: rel, at: (n, m), analytic: a, quadrature: q, floor, order };
                }
            }
        }
        Ok(worst)
    }
}

/// `G_{nm} = scale · Σ_{k ≤ min(n,m)} c[n][k] c[m][k]` from lower-triangular
/// coefficient rows (`coeffs[n].len() == n + 1`).
pub(crate) fn gram_lower(coeffs: &[Vec<f64>], scale: f64) -> SymMatrix {
    let rows = par::map_range(coeffs.len(), |n| {
        (0..=n)
            .map(|m| {
                let mut acc = CompensatedSum::default();
                for (a, b) in coeffs[n][..=m].iter().zip(&coeffs[m][..=m]) {
                    acc.add(a * b);
                }
                scale * acc.value()
            })
            .collect()
    });
    SymMatrix::from_lower_rows(rows)
}
