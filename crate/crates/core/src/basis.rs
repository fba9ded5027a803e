//! The Laguerre basis and its two tridiagonal structural matrices.

use nalgebra::DMatrix;

use crate::error::{Error, Result};

/// Configuration of the basis `φ_n(x) = a_n x^α e^{-x/2} L_n^ν(x)`, `x = λr`.
///
/// `ν = 2|ℓ|` and `α = |ℓ| + 1/2` are derived; only `|ℓ|` matters, so negative
/// angular momenta are folded.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BasisSpec {
    lambda: f64,
    ell: i32,
    size: usize,
}

impl BasisSpec {
    pub fn new(lambda: f64, ell: i32, size: usize) -> Result<Self> {
        if !(lambda > 0.0) || !lambda.is_finite() {
            return Err(Error::domain("BasisSpec", format!("lambda = {lambda} must be finite and > 0")));
        }
        if size == 0 {
            return Err(Error::domain("BasisSpec", "size must be >= 1"));
        }
        Ok(Self { lambda, ell, size })
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// Angular momentum as given (sign preserved for echoing).
    pub fn ell(&self) -> i32 {
        self.ell
    }

    pub fn abs_ell(&self) -> u32 {
        self.ell.unsigned_abs()
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn nu(&self) -> f64 {
        2.0 * self.abs_ell() as f64
    }

    pub fn alpha(&self) -> f64 {
        self.abs_ell() as f64 + 0.5
    }

    pub fn with_lambda(&self, lambda: f64) -> Result<Self> {
        Self::new(lambda, self.ell, self.size)
    }

    pub fn with_size(&self, size: usize) -> Result<Self> {
        Self::new(self.lambda, self.ell, size)
    }
}

/// Dense real symmetric matrix.
///
/// Storage is full row-major; constructors evaluate each unordered pair once
/// (lower triangle) and mirror it, so symmetry holds bit-for-bit.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix {
    dim: usize,
    data: Vec<f64>,
}

impl SymMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self { dim, data: vec![0.0; dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = 1.0;
        }
        m
    }

    /// Builds from `f(i, j)` evaluated for `j <= i` only.
    pub fn from_lower_fn(dim: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            for j in 0..=i {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    /// Builds from lower-triangle rows: `rows[i]` holds entries `(i, 0..=i)`.
    pub fn from_lower_rows(rows: Vec<Vec<f64>>) -> Self {
        let dim = rows.len();
        let mut m = Self::zeros(dim);
        for (i, row) in rows.into_iter().enumerate() {
            debug_assert_eq!(row.len(), i + 1);
            for (j, v) in row.into_iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    /// Builds from a dense matrix, taking the lower triangle as authoritative.
    pub fn from_dense_lower(m: &DMatrix<f64>) -> Result<Self> {
        if m.nrows() != m.ncols() {
            return Err(Error::Dimension(format!("{}x{} is not square", m.nrows(), m.ncols())));
        }
        Ok(Self::from_lower_fn(m.nrows(), |i, j| m[(i, j)]))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.dim + j]
    }

    /// Sets `(i, j)` and `(j, i)`.
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.dim + j] = v;
        self.data[j * self.dim + i] = v;
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|v| v.is_finite())
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self { dim: self.dim, data: self.data.iter().map(|v| v * factor).collect() }
    }

    pub fn add(&self, other: &SymMatrix) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::Dimension(format!("{} vs {}", self.dim, other.dim)));
        }
        Ok(Self { dim: self.dim, data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect() })
    }

    /// Leading `k × k` block.
    pub fn truncated(&self, k: usize) -> Self {
        let k = k.min(self.dim);
        Self::from_lower_fn(k, |i, j| self.get(i, j))
    }

    /// Max absolute row sum (the ∞-norm, equal to the 1-norm here).
    pub fn norm_inf(&self) -> f64 {
        (0..self.dim)
            .map(|i| self.data[i * self.dim..(i + 1) * self.dim].iter().map(|v| v.abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        DMatrix::from_row_slice(self.dim, self.dim, &self.data)
    }

    /// `self · v`.
    pub fn mul_vec(&self, v: &[f64]) -> Vec<f64> {
        (0..self.dim).map(|i| self.data[i * self.dim..(i + 1) * self.dim].iter().zip(v).map(|(a, b)| a * b).sum()).collect()
    }
}

/// Overlap `S = ⟨φ_n|φ_m⟩`: `2n+ν+1` on the diagonal, `-√(n(n+ν))` beside it.
pub fn overlap_matrix(basis: &BasisSpec) -> SymMatrix {
    let nu = basis.nu();
    SymMatrix::from_lower_fn(basis.size(), |i, j| {
        let n = i as f64;
        if i == j {
            2.0 * n + nu + 1.0
        } else if i == j + 1 {
            -(n * (n + nu)).sqrt()
        } else {
            0.0
        }
    })
}

/// Reference Hamiltonian `H₀ = -½ d²/dr² + (ℓ² - 1/4)/(2r²)`:
/// `(λ²/8)(2n+ν+1)` on the diagonal, `+(λ²/8)√(n(n+ν))` beside it.
pub fn h0_matrix(basis: &BasisSpec) -> SymMatrix {
    let nu = basis.nu();
    let scale = basis.lambda() * basis.lambda() / 8.0;
    SymMatrix::from_lower_fn(basis.size(), |i, j| {
        let n = i as f64;
        if i == j {
            scale * (2.0 * n + nu + 1.0)
        } else if i == j + 1 {
            scale * (n * (n + nu)).sqrt()
        } else {
            0.0
        }
    })
}
