//! Symmetric-definite generalized eigenproblem `H f = E S f`.
//!
//! The pencil is reduced to the standard problem `L⁻¹ H L⁻ᵀ y = E y` with the
//! Cholesky factor `S = L Lᵀ`, solved with nalgebra's dense symmetric
//! eigensolver, and eigenvectors are mapped back by `f = L⁻ᵀ y`.

use nalgebra::{DMatrix, SymmetricEigen};

use crate::basis::SymMatrix;
use crate::error::{Error, Result};
use crate::specfun::CompensatedSum;

/// Overlap condition numbers above this are logged as a warning.
pub const CONDITION_WARN: f64 = 1e12;

/// A symmetric-definite pencil `(h, s)`.
#[derive(Debug, Clone)]
pub struct Pencil {
    h: SymMatrix,
    s: SymMatrix,
}

impl Pencil {
    pub fn new(h: SymMatrix, s: SymMatrix) -> Result<Self> {
        if h.dim() != s.dim() {
            return Err(Error::Dimension(format!("H is {} but S is {}", h.dim(), s.dim())));
        }
        if !h.is_finite() || !s.is_finite() {
            return Err(Error::domain("Pencil", "matrices must be finite"));
        }
        Ok(Self { h, s })
    }

    pub fn h(&self) -> &SymMatrix {
        &self.h
    }

    pub fn s(&self) -> &SymMatrix {
        &self.s
    }

    pub fn dim(&self) -> usize {
        self.h.dim()
    }
}

/// Eigenvalues (ascending) and, optionally, S-orthonormal eigenvectors
/// stored as the columns of `vectors`.
#[derive(Debug, Clone)]
pub struct PencilSolution {
    pub values: Vec<f64>,
    pub vectors: Option<DMatrix<f64>>,
    /// Estimated 2-norm condition number of `S`.
    pub s_condition: f64,
}

/// Cholesky factor `L` (lower triangular, positive diagonal) with `L Lᵀ = s`.
pub fn cholesky(s: &SymMatrix) -> Result<DMatrix<f64>> {
    let n = s.dim();
    let mut l = DMatrix::<f64>::zeros(n, n);
    for j in 0..n {
        let mut d = s.get(j, j);
        for k in 0..j {
            d -= l[(j, k)] * l[(j, k)];
        }
        if !(d > 0.0) {
            return Err(Error::NotPositiveDefinite { pivot: j, value: d });
        }
        let djj = d.sqrt();
        l[(j, j)] = djj;
        for i in (j + 1)..n {
            let mut v = s.get(i, j);
            for k in 0..j {
                v -= l[(i, k)] * l[(j, k)];
            }
            l[(i, j)] = v / djj;
        }
    }
    Ok(l)
}

/// Solves `L x = b` in place for each column of `b`.
fn forward_substitute(l: &DMatrix<f64>, b: &mut DMatrix<f64>) {
    let n = l.nrows();
    for c in 0..b.ncols() {
        for i in 0..n {
            let mut v = b[(i, c)];
            for k in 0..i {
                v -= l[(i, k)] * b[(k, c)];
            }
            b[(i, c)] = v / l[(i, i)];
        }
    }
}

/// Solves `Lᵀ x = b` in place for each column of `b`.
fn backward_substitute_transpose(l: &DMatrix<f64>, b: &mut DMatrix<f64>) {
    let n = l.nrows();
    for c in 0..b.ncols() {
        for i in (0..n).rev() {
            let mut v = b[(i, c)];
            for k in (i + 1)..n {
                v -= l[(k, i)] * b[(k, c)];
            }
            b[(i, c)] = v / l[(i, i)];
        }
    }
}

/// Eigenvalues of `p`, ascending; eigenvectors too when `with_vectors`.
pub fn solve_pencil(p: &Pencil, with_vectors: bool) -> Result<PencilSolution> {
    let n = p.dim();
    let l = cholesky(&p.s)?;
    let s_condition = condition_estimate(&p.s, &l);
    if s_condition > CONDITION_WARN {
        log::warn!("overlap matrix is ill-conditioned (cond ≈ {s_condition:.3e}, dim {n})");
    }

    // C = L⁻¹ H L⁻ᵀ = L⁻¹ (L⁻¹ H)ᵀ since H is symmetric
    let mut x = p.h.to_dense();
    forward_substitute(&l, &mut x);
    let mut c = x.transpose();
    forward_substitute(&l, &mut c);
    let c = (&c + c.transpose()) * 0.5;

    let eig = SymmetricEigen::new(c);
    if eig.eigenvalues.iter().any(|v| !v.is_finite()) {
        return Err(Error::Convergence { what: "symmetric eigensolver" });
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();

    let vectors = with_vectors.then(|| {
        let mut y = DMatrix::<f64>::zeros(n, n);
        for (dst, &src) in order.iter().enumerate() {
            y.set_column(dst, &eig.eigenvectors.column(src));
        }
        backward_substitute_transpose(&l, &mut y);
        y
    });

    Ok(PencilSolution { values, vectors, s_condition })
}

/// Compensated `fᵀ M f`.
fn quadratic_form(m: &SymMatrix, f: &[f64]) -> f64 {
    let n = m.dim();
    let mut outer = CompensatedSum::default();
    for i in 0..n {
        if f[i] == 0.0 {
            continue;
        }
        let mut row = CompensatedSum::default();
        for (a, b) in m.as_slice()[i * n..(i + 1) * n].iter().zip(f) {
            row.add(a * b);
        }
        outer.add(f[i] * row.value());
    }
    outer.value()
}

/// Replaces the `count` lowest eigenvalues by Rayleigh quotients
/// `fᵀHf / fᵀSf` evaluated in the original basis.
///
/// The dense solve carries an absolute error of order `ε‖L⁻¹HL⁻ᵀ‖`, which
/// grows with the basis size; the quotient's error is second order in the
/// eigenvector error, so low levels recover nearly full relative precision.
/// Requires eigenvectors; without them this is a no-op.
pub fn rayleigh_refine(p: &Pencil, sol: &mut PencilSolution, count: usize) {
    let Some(vecs) = &sol.vectors else { return };
    for c in 0..count.min(sol.values.len()) {
        let f: Vec<f64> = vecs.column(c).iter().copied().collect();
        let num = quadratic_form(&p.h, &f);
        let den = quadratic_form(&p.s, &f);
        if den > 0.0 && num.is_finite() {
            sol.values[c] = num / den;
        }
    }
}

fn condition_estimate(s: &SymMatrix, l: &DMatrix<f64>) -> f64 {
    let n = s.dim();
    let tridiagonal = (0..n).all(|i| (0..n).all(|j| i.abs_diff(j) <= 1 || s.get(i, j) == 0.0));
    if tridiagonal {
        let diag: Vec<f64> = (0..n).map(|i| s.get(i, i)).collect();
        let off: Vec<f64> = (1..n).map(|i| s.get(i, i - 1)).collect();
        if let Ok(ev) = tridiagonal_eigenvalues(&diag, &off) {
            let (lo, hi) = (ev[0], ev[n - 1]);
            if lo > 0.0 {
                return hi / lo;
            }
        }
    }
    // lower bound from the Cholesky diagonal
    let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
    for i in 0..n {
        lo = lo.min(l[(i, i)]);
        hi = hi.max(l[(i, i)]);
    }
    (hi / lo).powi(2)
}

/// Eigenvalues of the symmetric tridiagonal matrix with diagonal `diag` and
/// sub-diagonal `off` (`off[i]` couples `i` and `i+1`), ascending.
///
/// Implicit QL with Wilkinson shifts, eigenvalues only.
pub fn tridiagonal_eigenvalues(diag: &[f64], off: &[f64]) -> Result<Vec<f64>> {
    let n = diag.len();
    if n == 0 {
        return Ok(Vec::new());
    }
    if off.len() + 1 != n {
        return Err(Error::Dimension(format!("diag {} vs off {}", n, off.len())));
    }
    let mut d = diag.to_vec();
    let mut e = off.to_vec();
    e.push(0.0);

    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 60 {
                return Err(Error::Convergence { what: "tridiagonal QL" });
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut deflated = false;
            for i in (l..m).rev() {
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    d.sort_by(f64::total_cmp);
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::{h0_matrix, overlap_matrix, BasisSpec};
    use approx::assert_relative_eq;

    fn sym(rows: &[&[f64]]) -> SymMatrix {
        SymMatrix::from_lower_fn(rows.len(), |i, j| rows[i][j])
    }

    #[test]
    fn cholesky_examples() {
        let l = cholesky(&SymMatrix::identity(3)).unwrap();
        assert_eq!(l, DMatrix::identity(3, 3));

        let l = cholesky(&sym(&[&[4.0, 2.0], &[2.0, 3.0]])).unwrap();
        assert_eq!(l[(0, 0)], 2.0);
        assert_eq!(l[(1, 0)], 1.0);
        assert_eq!(l[(0, 1)], 0.0);
        assert_relative_eq!(l[(1, 1)], 2f64.sqrt(), max_relative = 1e-15);

        let err = cholesky(&sym(&[&[1.0, 2.0], &[2.0, 1.0]])).unwrap_err();
        assert!(matches!(err, Error::NotPositiveDefinite { pivot: 1, .. }));
    }

    #[test]
    fn pencil_examples() {
        let h = sym(&[&[1.0, 0.0], &[0.0, 2.0]]);
        let sol = solve_pencil(&Pencil::new(h, SymMatrix::identity(2)).unwrap(), false).unwrap();
        assert_relative_eq!(sol.values[0], 1.0, max_relative = 1e-15);
        assert_relative_eq!(sol.values[1], 2.0, max_relative = 1e-15);

        let s = overlap_matrix(&BasisSpec::new(1.0, 2, 8).unwrap());
        let sol = solve_pencil(&Pencil::new(s.clone(), s).unwrap(), false).unwrap();
        for v in sol.values {
            assert_relative_eq!(v, 1.0, max_relative = 1e-13);
        }

        let b = BasisSpec::new(1.0, 0, 2).unwrap();
        let sol = solve_pencil(&Pencil::new(h0_matrix(&b), overlap_matrix(&b)).unwrap(), false).unwrap();
        let r3 = 3f64.sqrt();
        assert_relative_eq!(sol.values[0], (2.0 - r3) / 8.0, max_relative = 1e-14);
        assert_relative_eq!(sol.values[1], (2.0 + r3) / 8.0, max_relative = 1e-14);
    }

    #[test]
    fn mismatched_dims_rejected() {
        assert!(Pencil::new(SymMatrix::identity(2), SymMatrix::identity(3)).is_err());
    }

    #[test]
    fn eigenvectors_are_s_orthonormal_with_small_residual() {
        let b = BasisSpec::new(1.7, 1, 40).unwrap();
        let s = overlap_matrix(&b);
        // a dense symmetric perturbation on top of H0
        let v = SymMatrix::from_lower_fn(40, |i, j| -1.0 / (1.0 + i as f64 + j as f64));
        let h = h0_matrix(&b).add(&v).unwrap();
        let sol = solve_pencil(&Pencil::new(h.clone(), s.clone()).unwrap(), true).unwrap();
        let f = sol.vectors.unwrap();
        let (hn, sn) = (h.norm_inf(), s.norm_inf());
        for a in 0..40 {
            let fa: Vec<f64> = f.column(a).iter().copied().collect();
            let hf = h.mul_vec(&fa);
            let sf = s.mul_vec(&fa);
            let e = sol.values[a];
            let res = hf.iter().zip(&sf).map(|(x, y)| (x - e * y).abs()).fold(0.0, f64::max);
            assert!(res <= 1e-10 * (hn + e.abs() * sn), "residual {res}");
            for c in 0..40 {
                let fc: Vec<f64> = f.column(c).iter().copied().collect();
                let dot: f64 = fc.iter().zip(&sf).map(|(x, y)| x * y).sum();
                let expect = if a == c { 1.0 } else { 0.0 };
                assert!((dot - expect).abs() < 1e-10);
            }
        }
        assert!(sol.values.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn tridiagonal_qr_matches_dense() {
        let diag = [4.0, 1.0, -2.0, 3.5, 0.25];
        let off = [1.0, -0.5, 2.0, 0.75];
        let ev = tridiagonal_eigenvalues(&diag, &off).unwrap();
        let dense = SymMatrix::from_lower_fn(5, |i, j| {
            if i == j {
                diag[i]
            } else if i == j + 1 {
                off[j]
            } else {
                0.0
            }
        });
        let mut reference: Vec<f64> = SymmetricEigen::new(dense.to_dense()).eigenvalues.iter().copied().collect();
        reference.sort_by(f64::total_cmp);
        for (a, b) in ev.iter().zip(&reference) {
            assert_relative_eq!(a, b, epsilon = 1e-13);
        }
    }
}
