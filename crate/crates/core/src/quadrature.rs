//! Generalized Gauss–Laguerre rules and the numerical matrix-element oracle.
//!
//! A rule of order `N` and exponent `ν` integrates `x^ν e^{-x} p(x)` exactly for
//! polynomials of degree `≤ 2N-1`. Nodes come from the eigenvalues of the
//! Jacobi matrix of the Laguerre recurrence and are polished by Newton steps on
//! `L_N^ν`; weights come from the Christoffel function of the orthonormal
//! polynomials, evaluated in log form so that the far-tail weights keep their
//! relative accuracy until they underflow.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use twofloat::TwoFloat;

use crate::basis::{BasisSpec, SymMatrix};
use crate::eigen::tridiagonal_eigenvalues;
use crate::error::{Error, Result};
use crate::par;
use crate::specfun::{laguerre_seq, laguerre_seq_into, ln_gamma_unchecked, norm_coeff_unchecked, CompensatedSum};

/// Minimum oracle order.
pub const DEFAULT_MIN_ORDER: usize = 300;

// power of two, so rescaling is exact
const RESCALE_AT: f64 = 2.037035976334486e90; // 2^300

/// Nodes and weights of a generalized Gauss–Laguerre rule.
///
/// Weights of nodes deep in the tail underflow to `0.0` for large orders
/// (roughly `x > 700`); `log_weights` keeps their exact logarithm.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadRule {
    pub order: usize,
    pub nu: f64,
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub log_weights: Vec<f64>,
}

impl QuadRule {
    /// `Σ_j w_j f(x_j)`, compensated.
    pub fn integrate(&self, mut f: impl FnMut(f64) -> f64) -> f64 {
        let mut acc = CompensatedSum::default();
        for (&x, &w) in self.nodes.iter().zip(&self.weights) {
            if w != 0.0 {
                acc.add(w * f(x));
            }
        }
        acc.value()
    }
}

/// Orthonormal recurrence at `x`, returning `(p_N, p_{N-1}, ln Σ_{k<N} p_k²)`
/// where the `p` values share an arbitrary common scale.
///
/// Runs in double-double: in f64 the recurrence error grows roughly like
/// `k ε`, which leaves order-300 weights good to only ~1e-14.
fn orthonormal_scan(order: usize, nu: f64, x: f64) -> (f64, f64, f64) {
    let mut prev = TwoFloat::from(0.0);
    let mut cur = TwoFloat::from((-0.5 * ln_gamma_unchecked(nu + 1.0)).exp());
    let mut sum_sq = TwoFloat::from(0.0);
    let mut log_scale = 0.0;
    let x = TwoFloat::from(x);
    for k in 0..order {
        sum_sq += cur * cur;
        let kf = k as f64;
        let back = (TwoFloat::from(kf) * (kf + nu)).sqrt();
        let fwd = (TwoFloat::from(kf + 1.0) * (kf + 1.0 + nu)).sqrt();
        let next = ((TwoFloat::from(2.0 * kf + nu + 1.0) - x) * cur - back * prev) / fwd;
        prev = cur;
        cur = next;
        if cur.hi().abs() > RESCALE_AT {
            prev /= RESCALE_AT;
            cur /= RESCALE_AT;
            sum_sq /= RESCALE_AT * RESCALE_AT;
            log_scale += RESCALE_AT.ln();
        }
    }
    let ln_sum = sum_sq.hi().ln() + sum_sq.lo() / sum_sq.hi();
    (f64::from(cur), f64::from(prev), ln_sum + 2.0 * log_scale)
}

/// Builds the order-`order` rule for the weight `x^ν e^{-x}`.
pub fn gauss_laguerre_rule(order: usize, nu: f64) -> Result<QuadRule> {
    if order == 0 {
        return Err(Error::domain("gauss_laguerre_rule", "order must be >= 1"));
    }
    if !(nu >= 0.0) || !nu.is_finite() {
        return Err(Error::domain("gauss_laguerre_rule", format!("nu = {nu} must be >= 0")));
    }
    let diag: Vec<f64> = (0..order).map(|k| 2.0 * k as f64 + nu + 1.0).collect();
    let off: Vec<f64> = (1..order).map(|k| (k as f64 * (k as f64 + nu)).sqrt()).collect();
    let guesses = tridiagonal_eigenvalues(&diag, &off)?;

    let n = order as f64;
    let link = (n * (n + nu)).sqrt();
    let mut nodes = Vec::with_capacity(order);
    let mut log_weights = Vec::with_capacity(order);
    for mut x in guesses {
        // Newton on L_N: x L_N' = N L_N - (N+ν) L_{N-1}, written for orthonormal values
        for _ in 0..12 {
            let (pn, pm, _) = orthonormal_scan(order, nu, x);
            let denom = n * pn - link * pm;
            if denom == 0.0 {
                break;
            }
            let step = x * pn / denom;
            x -= step;
            if step.abs() <= 4.0 * f64::EPSILON * x.abs() {
                break;
            }
        }
        let (_, _, ln_christoffel) = orthonormal_scan(order, nu, x);
        nodes.push(x);
        log_weights.push(-ln_christoffel);
    }

    let mut idx: Vec<usize> = (0..order).collect();
    idx.sort_by(|&a, &b| nodes[a].total_cmp(&nodes[b]));
    let nodes: Vec<f64> = idx.iter().map(|&i| nodes[i]).collect();
    let log_weights: Vec<f64> = idx.iter().map(|&i| log_weights[i]).collect();
    if !(nodes[0] > 0.0) || nodes.windows(2).any(|w| !(w[1] > w[0])) || nodes.iter().any(|x| !x.is_finite()) {
        return Err(Error::Convergence { what: "Gauss–Laguerre node computation" });
    }
    let weights = log_weights.iter().map(|lw| lw.exp()).collect();
    Ok(QuadRule { order, nu, nodes, weights, log_weights })
}

type RuleCache = RwLock<HashMap<(usize, u64), Arc<QuadRule>>>;

fn cache() -> &'static RuleCache {
    static CACHE: OnceLock<RuleCache> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Shared, memoized rule keyed by `(order, ν.to_bits())`.
pub fn cached_rule(order: usize, nu: f64) -> Result<Arc<QuadRule>> {
    let key = (order, nu.to_bits());
    if let Some(rule) = cache().read().expect("rule cache poisoned").get(&key) {
        return Ok(Arc::clone(rule));
    }
    let rule = Arc::new(gauss_laguerre_rule(order, nu)?);
    let mut guard = cache().write().expect("rule cache poisoned");
    Ok(Arc::clone(guard.entry(key).or_insert(rule)))
}

/// Default oracle order `max(300, n + m + ν + 50)`.
pub fn default_order(n: usize, m: usize, nu: f64) -> usize {
    DEFAULT_MIN_ORDER.max(n + m + nu.ceil() as usize + 50)
}

/// Weight exponent used by an oracle evaluation.
///
/// The residual power `2α - ν_rule` and the potential are carried in the
/// integrand. [`RuleExponent::Basis`] uses `ν_rule = ν`; a shifted exponent
/// `ν - s` absorbs an `r^{-s}` singularity of the potential into the weight so
/// the integrand stays a polynomial (needed for `1/r²` terms).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RuleExponent {
    #[default]
    Basis,
    Lowered(u32),
}

impl RuleExponent {
    pub fn resolve(self, basis: &BasisSpec) -> Result<f64> {
        match self {
            RuleExponent::Basis => Ok(basis.nu()),
            RuleExponent::Lowered(s) => {
                let nu = basis.nu() - s as f64;
                if nu < 0.0 {
                    return Err(Error::domain("quadrature", format!("rule exponent ν - {s} is negative for ν = {}", basis.nu())));
                }
                Ok(nu)
            }
        }
    }
}

/// Node-wise prefactor `w_j x_j^{2α-ν_rule} v(x_j/λ)`; zero for underflowed weights.
fn node_factors(v: &(dyn Fn(f64) -> f64 + Sync), basis: &BasisSpec, rule: &QuadRule) -> Result<Vec<f64>> {
    let power = 2.0 * basis.alpha() - rule.nu;
    let lambda = basis.lambda();
    let mut out = Vec::with_capacity(rule.order);
    for (j, (&x, &w)) in rule.nodes.iter().zip(&rule.weights).enumerate() {
        if w == 0.0 {
            out.push(0.0);
            continue;
        }
        let g = w * x.powf(power) * v(x / lambda);
        if !g.is_finite() {
            return Err(Error::NonFiniteIntegrand { index: j, node: x });
        }
        out.push(g);
    }
    Ok(out)
}

/// `⟨φ_n| v |φ_m⟩` by Gauss–Laguerre quadrature with a rule of exponent ν.
pub fn quad_matrix_element(v: &(dyn Fn(f64) -> f64 + Sync), basis: &BasisSpec, n: usize, m: usize, order: usize) -> Result<f64> {
    quad_matrix_element_with(v, basis, n, m, order, RuleExponent::Basis)
}

/// [`quad_matrix_element`] with an explicit rule exponent.
pub fn quad_matrix_element_with(
    v: &(dyn Fn(f64) -> f64 + Sync),
    basis: &BasisSpec,
    n: usize,
    m: usize,
    order: usize,
    exponent: RuleExponent,
) -> Result<f64> {
    if n >= basis.size() || m >= basis.size() {
        return Err(Error::domain("quad_matrix_element", format!("({n}, {m}) outside basis of size {}", basis.size())));
    }
    let (lo, hi) = if n <= m { (n, m) } else { (m, n) };
    let rule = cached_rule(order, exponent.resolve(basis)?)?;
    let factors = node_factors(v, basis, &rule)?;
    let nu = basis.nu();
    let mut acc = CompensatedSum::default();
    for (&x, &g) in rule.nodes.iter().zip(&factors) {
        if g == 0.0 {
            continue;
        }
        let seq = laguerre_seq(hi, nu, x);
        acc.add(g * seq[lo] * seq[hi]);
    }
    let lambda = basis.lambda();
    Ok(norm_coeff_unchecked(lo, nu, lambda) * norm_coeff_unchecked(hi, nu, lambda) / lambda * acc.value())
}

/// Full `N × N` oracle matrix of `v`.
///
/// Laguerre sequences are evaluated once per node; each unordered `(n, m)`
/// pair is then a dot product over nodes. Rows are assembled in parallel.
pub fn quad_matrix(
    v: &(dyn Fn(f64) -> f64 + Sync),
    basis: &BasisSpec,
    order: usize,
    exponent: RuleExponent,
) -> Result<SymMatrix> {
    let size = basis.size();
    let nu = basis.nu();
    let lambda = basis.lambda();
    let rule = cached_rule(order, exponent.resolve(basis)?)?;
    let factors = node_factors(v, basis, &rule)?;

    let active: Vec<usize> = (0..rule.order).filter(|&j| factors[j] != 0.0).collect();
    // table[n][k] = L_n(x_{active[k]})
    let mut table = vec![Vec::with_capacity(active.len()); size];
    let mut buf = Vec::with_capacity(size);
    for &j in &active {
        laguerre_seq_into(size - 1, nu, rule.nodes[j], &mut buf);
        for (n, &val) in buf.iter().enumerate() {
            table[n].push(val);
        }
    }
    let g: Vec<f64> = active.iter().map(|&j| factors[j]).collect();
    let norms: Vec<f64> = (0..size).map(|n| norm_coeff_unchecked(n, nu, lambda)).collect();

    let rows = par::map_range(size, |n| {
        (0..=n)
            .map(|m| {
                let mut acc = CompensatedSum::default();
                for ((gk, ln), lm) in g.iter().zip(&table[n]).zip(&table[m]) {
                    acc.add(gk * ln * lm);
                }
                norms[n] * norms[m] / lambda * acc.value()
            })
            .collect()
    });
    let out = SymMatrix::from_lower_rows(rows);
    if !out.is_finite() {
        return Err(Error::domain("quad_matrix", "non-finite oracle entry"));
    }
    Ok(out)
}
