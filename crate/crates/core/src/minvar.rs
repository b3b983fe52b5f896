//! Minimum spectral variance over trace-normalized generalized Laplacians.
//!
//! With `Σw = m` fixed, the variance of λ₂..λₙ is an affine function of
//! `f(w) = wᵀM₂w`, so the problem is a positive definite QP on the scaled
//! simplex. Three routes are offered: closed forms, exhaustive support
//! enumeration with the KKT test, and a pairwise descent.

use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Default cap on the edge count for exhaustive support enumeration.
pub const DEFAULT_EXHAUSTIVE_LIMIT: usize = 20;
/// Absolute tolerance for the two support conditions.
pub const SUPPORT_TOL: f64 = 1e-10;
/// Descent weights at or below this are reported outside the support.
pub const DESCENT_SUPPORT_THRESHOLD: f64 = 1e-6;
/// How often the descent recomputes `M₂w` from scratch.
const RECOMPUTE_EVERY: usize = 1024;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SolverKind {
    Exact,
    Descent,
    ClosedForm,
}

impl std::fmt::Display for SolverKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            SolverKind::Exact => "exact",
            SolverKind::Descent => "descent",
            SolverKind::ClosedForm => "closed-form",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MinVarResult {
    /// Minimizer on `{w ≥ 0, Σw = m}`.
    pub weights: Vec<f64>,
    /// Edge indices with nonzero weight, ascending.
    pub support: Vec<usize>,
    /// `wᵀM₂w`.
    pub objective: f64,
    pub variance: f64,
    pub solver: SolverKind,
    /// Whether the full edge set passes the support test.
    pub eligible: bool,
    pub iterations: usize,
    /// Some weight is zero: the value is an infimum attained only in the
    /// closure (a weighting of a proper spanning subgraph).
    pub boundary: bool,
}

/// The QP `min wᵀM₂w` subject to `w ≥ 0`, `Σw = m`.
#[derive(Debug, Clone)]
pub struct QPInstance {
    pub m2: DMatrix<f64>,
    pub m: usize,
    pub n: usize,
    /// `edge_adjacency[i][j]`: edges i ≠ j share a vertex.
    pub edge_adjacency: Vec<Vec<bool>>,
}

impl QPInstance {
    pub fn new(g: &Graph) -> Result<Self> {
        if g.m() == 0 {
            return Err(Error::NoEdges);
        }
        if !g.is_connected() {
            return Err(Error::Disconnected);
        }
        let m2 = g.m2_matrix()?;
        let m = g.m();
        let edge_adjacency = (0..m)
            .map(|i| (0..m).map(|j| i != j && m2[(i, j)] != 0.0).collect())
            .collect();
        Ok(QPInstance {
            m2,
            m,
            n: g.n(),
            edge_adjacency,
        })
    }

    pub fn objective(&self, w: &[f64]) -> f64 {
        let w = DVector::from_column_slice(w);
        w.dot(&(&self.m2 * &w))
    }

    /// Variance of λ₂..λₙ for a weighting with `Σw = m` and `wᵀM₂w = objective`.
    pub fn variance_of_objective(&self, objective: f64) -> f64 {
        let k = (self.n - 1) as f64;
        let mean = 2.0 * self.m as f64 / k;
        objective / k - mean * mean
    }

    fn check_feasible(&self, w: &[f64]) -> Result<()> {
        if w.len() != self.m {
            return Err(Error::LengthMismatch {
                expected: self.m,
                found: w.len(),
            });
        }
        if let Some((index, &value)) = w.iter().enumerate().find(|(_, &x)| !(x >= 0.0)) {
            return Err(Error::NegativeWeight { index, value });
        }
        let total: f64 = w.iter().sum();
        let m = self.m as f64;
        if (total - m).abs() > 1e-9 * m {
            return Err(Error::InvalidInput(format!(
                "weights sum to {total}, expected {m}"
            )));
        }
        Ok(())
    }

    fn result(&self, weights: Vec<f64>, solver: SolverKind, eligible: bool, iterations: usize) -> MinVarResult {
        self.result_with_threshold(weights, solver, eligible, iterations, 0.0)
    }

    fn result_with_threshold(
        &self,
        weights: Vec<f64>,
        solver: SolverKind,
        eligible: bool,
        iterations: usize,
        threshold: f64,
    ) -> MinVarResult {
        let objective = self.objective(&weights);
        let support: Vec<usize> = (0..self.m).filter(|&k| weights[k] > threshold).collect();
        MinVarResult {
            boundary: support.len() < self.m,
            variance: self.variance_of_objective(objective),
            weights,
            support,
            objective,
            solver,
            eligible,
            iterations,
        }
    }
}

/// Solution of the equality-constrained problem, ignoring `w ≥ 0`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Unconstrained {
    pub weights: Vec<f64>,
    pub objective: f64,
    pub eligible: bool,
}

fn spd_solve_ones(a: DMatrix<f64>) -> Result<DVector<f64>> {
    let k = a.nrows();
    let chol = a
        .cholesky()
        .ok_or_else(|| Error::Numerical("M2 block is not positive definite".into()))?;
    let diag = chol.l_dirty().diagonal();
    let (lo, hi) = diag
        .iter()
        .fold((f64::INFINITY, 0.0f64), |(lo, hi), d| (lo.min(*d), hi.max(*d)));
    let estimate = (hi / lo).powi(2);
    if estimate > 1e8 {
        log::warn!("M2 block condition estimate {estimate:e}");
    }
    Ok(chol.solve(&DVector::from_element(k, 1.0)))
}

/// `w = k·M₂⁻¹𝟙` with `k = m / 𝟙ᵀM₂⁻¹𝟙`; objective `m² / 𝟙ᵀM₂⁻¹𝟙`.
pub fn unconstrained_minimizer(q: &QPInstance) -> Result<Unconstrained> {
    let x = spd_solve_ones(q.m2.clone())?;
    let s = x.sum();
    let m = q.m as f64;
    Ok(Unconstrained {
        weights: x.iter().map(|v| v * m / s).collect(),
        objective: m * m / s,
        eligible: x.iter().all(|&v| v > SUPPORT_TOL),
    })
}

/// Lower bound from the unconstrained minimizer.
pub fn amv(g: &Graph) -> Result<f64> {
    let q = QPInstance::new(g)?;
    let u = unconstrained_minimizer(&q)?;
    Ok(q.variance_of_objective(u.objective))
}

/// `m(4+r)/(n−1) − (2m/(n−1))²` when the line graph is r-regular.
pub fn closed_form_line_regular(g: &Graph) -> Option<f64> {
    if g.n() < 2 || !g.is_connected() {
        return None;
    }
    let r = g.line_graph_regularity()? as f64;
    let m = g.m() as f64;
    let k = (g.n() - 1) as f64;
    Some(m * (4.0 + r) / k - (2.0 * m / k).powi(2))
}

/// `d₀ = 1, d₁ = 4, d_{k+2} = 4d_{k+1} − d_k`.
pub fn path_d_sequence(len: usize) -> Vec<f64> {
    let mut d = Vec::with_capacity(len);
    for k in 0..len {
        d.push(match k {
            0 => 1.0,
            1 => 4.0,
            _ => 4.0 * d[k - 1] - d[k - 2],
        });
    }
    d
}

/// mv(Pₙ) in closed form.
///
/// The ratios `d_{m−1}/d_m` and `1/d_m` are carried instead of `d_m` itself,
/// which overflows around m ≈ 540.
pub fn path_mv_exact(n: usize) -> Result<f64> {
    if n < 2 {
        return Err(Error::InvalidInput(format!("path needs n >= 2, got {n}")));
    }
    let m = n - 1;
    // ratio = d_{k−1}/d_k, inv = 1/d_k
    let (mut ratio, mut inv) = (0.25, 0.25);
    for _ in 1..m {
        let next = 1.0 / (4.0 - ratio);
        inv *= next;
        ratio = next;
    }
    let sign = if (m - 1) % 2 == 0 { 1.0 } else { -1.0 };
    let mf = m as f64;
    let ones = mf / 6.0 + 1.0 / 18.0 + ratio / 18.0 + sign * inv / 18.0;
    Ok(mf / ones - 4.0)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SupportCheck {
    pub is_local_min: bool,
    /// Candidate weighting on `alpha` (zeros elsewhere, summing to m) when
    /// `M₂[α]⁻¹𝟙` is positive.
    pub weights: Option<Vec<f64>>,
}

/// KKT test for a support `alpha`: `x = M₂[α]⁻¹𝟙 > 0` and the off-support
/// rows satisfy `M₂(α] x ≥ 1`.
pub fn support_check(q: &QPInstance, alpha: &[usize]) -> Result<SupportCheck> {
    if alpha.is_empty() {
        return Err(Error::InvalidInput("support must be nonempty".into()));
    }
    if let Some(&bad) = alpha.iter().find(|&&k| k >= q.m) {
        return Err(Error::InvalidInput(format!("edge index {bad} out of range")));
    }
    let sub = q.m2.select_rows(alpha).select_columns(alpha);
    let x = spd_solve_ones(sub)?;
    if !x.iter().all(|&v| v > SUPPORT_TOL) {
        return Ok(SupportCheck {
            is_local_min: false,
            weights: None,
        });
    }
    let mut inside = vec![false; q.m];
    for &k in alpha {
        inside[k] = true;
    }
    let dominated = (0..q.m).filter(|&r| !inside[r]).all(|r| {
        let row: f64 = alpha.iter().zip(x.iter()).map(|(&c, v)| q.m2[(r, c)] * v).sum();
        row >= 1.0 - SUPPORT_TOL
    });
    let scale = q.m as f64 / x.sum();
    let mut w = vec![0.0; q.m];
    for (&k, v) in alpha.iter().zip(x.iter()) {
        w[k] = v * scale;
    }
    Ok(SupportCheck {
        is_local_min: dominated,
        weights: Some(w),
    })
}

fn mask_to_support(mask: u64, m: usize) -> Vec<usize> {
    (0..m).filter(|k| mask >> k & 1 == 1).collect()
}

/// All `m`-bit masks with `k` bits set, ascending (Gosper's hack).
fn masks_with_popcount(m: usize, k: usize) -> Vec<u64> {
    let mut out = Vec::new();
    if k == 0 || k > m {
        return out;
    }
    let limit = 1u64 << m;
    let mut v: u64 = (1u64 << k) - 1;
    while v < limit {
        out.push(v);
        let c = v & v.wrapping_neg();
        let r = v + c;
        v = (((r ^ v) >> 2) / c) | r;
    }
    out
}

/// Exhaustive search for the eligible support, largest supports first.
///
/// The full support is always tested; enumeration beyond it is refused when
/// `m > limit`.
pub fn minvar_exact(g: &Graph, limit: usize) -> Result<MinVarResult> {
    let q = QPInstance::new(g)?;
    let full: Vec<usize> = (0..q.m).collect();
    let full_check = support_check(&q, &full)?;
    if full_check.is_local_min {
        let w = full_check.weights.expect("passing support has weights");
        return Ok(q.result(w, SolverKind::Exact, true, 0));
    }
    if q.m > limit || q.m > 63 {
        return Err(Error::LimitExceeded {
            m: q.m,
            limit: limit.min(63),
        });
    }
    for k in (1..q.m).rev() {
        let hit = masks_with_popcount(q.m, k)
            .into_par_iter()
            .map(|mask| {
                let alpha = mask_to_support(mask, q.m);
                support_check(&q, &alpha).map(|c| c.weights.filter(|_| c.is_local_min))
            })
            .find_first(|r| !matches!(r, Ok(None)));
        if let Some(r) = hit {
            let w = r?.expect("filtered to hits");
            return Ok(q.result(w, SolverKind::Exact, false, 0));
        }
    }
    Err(Error::Numerical("no support passed the optimality test".into()))
}

/// Every support passing [`support_check`], without early exit.
pub fn scan_all_supports(g: &Graph) -> Result<Vec<Vec<usize>>> {
    let q = QPInstance::new(g)?;
    if q.m > 63 {
        return Err(Error::LimitExceeded { m: q.m, limit: 63 });
    }
    let masks: Vec<u64> = (1..=q.m).rev().flat_map(|k| masks_with_popcount(q.m, k)).collect();
    let found: Result<Vec<Option<Vec<usize>>>> = masks
        .into_par_iter()
        .map(|mask| {
            let alpha = mask_to_support(mask, q.m);
            Ok(support_check(&q, &alpha)?.is_local_min.then_some(alpha))
        })
        .collect();
    Ok(found?.into_iter().flatten().collect())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DescentOptions {
    /// Stop once η falls below this.
    pub tol: f64,
    pub max_iter: usize,
    /// Use the exact curvature 6 for incident edge pairs instead of 8.
    pub exact_step: bool,
}

impl Default for DescentOptions {
    fn default() -> Self {
        DescentOptions {
            tol: 1e-10,
            max_iter: 1_000_000,
            exact_step: false,
        }
    }
}

struct Move {
    i: usize,
    j: usize,
    eta: f64,
}

fn best_move(q: &QPInstance, w: &[f64], grad: &[f64], exact_step: bool) -> Move {
    let mut i = 0;
    for k in 1..q.m {
        if grad[k] < grad[i] {
            i = k;
        }
    }
    let mut best = Move { i, j: i, eta: 0.0 };
    for j in 0..q.m {
        let denom = if exact_step && q.edge_adjacency[i][j] { 6.0 } else { 8.0 };
        let eta = ((grad[j] - grad[i]) / denom).min(w[j]);
        if eta > best.eta {
            best = Move { i, j, eta };
        }
    }
    best
}

fn m2_times(q: &QPInstance, w: &[f64]) -> Vec<f64> {
    (&q.m2 * DVector::from_column_slice(w)).iter().copied().collect()
}

/// `max_j min{((M₂w)_j − min M₂w)/8, w_j}`; zero exactly at the optimum.
pub fn eta(q: &QPInstance, w: &[f64]) -> Result<f64> {
    q.check_feasible(w)?;
    let grad = m2_times(q, w);
    Ok(best_move(q, w, &grad, false).eta)
}

/// One accepted descent move, as seen by an observer.
#[derive(Debug, Clone, Copy)]
pub struct DescentStep<'a> {
    pub iteration: usize,
    /// Edge that received mass.
    pub to: usize,
    /// Edge that gave mass.
    pub from: usize,
    pub eta: f64,
    /// Iterate after the move.
    pub weights: &'a [f64],
}

/// Pairwise descent from `w = 𝟙`: move mass η from the edge with the
/// largest progress measure to the edge minimizing `M₂w`.
pub fn minvar_descent(g: &Graph, opts: &DescentOptions) -> Result<MinVarResult> {
    minvar_descent_observed(g, opts, |_| {})
}

/// [`minvar_descent`], calling `observe` after every move.
pub fn minvar_descent_observed<F>(g: &Graph, opts: &DescentOptions, mut observe: F) -> Result<MinVarResult>
where
    F: FnMut(DescentStep<'_>),
{
    let q = QPInstance::new(g)?;
    let eligible = unconstrained_minimizer(&q)?.eligible;
    let mut w = vec![1.0; q.m];
    let mut grad = m2_times(&q, &w);
    let mut iterations = 0;
    loop {
        let mv = best_move(&q, &w, &grad, opts.exact_step);
        let finish = |w: Vec<f64>, iterations| {
            q.result_with_threshold(w, SolverKind::Descent, eligible, iterations, DESCENT_SUPPORT_THRESHOLD)
        };
        if mv.eta < opts.tol {
            return Ok(finish(w, iterations));
        }
        if iterations >= opts.max_iter {
            return Err(Error::NotConverged {
                iterations,
                eta: mv.eta,
                best: Box::new(finish(w, iterations)),
            });
        }
        let Move { i, j, eta } = mv;
        w[i] += eta;
        w[j] = if eta == w[j] { 0.0 } else { w[j] - eta };
        iterations += 1;
        if iterations % RECOMPUTE_EVERY == 0 {
            grad = m2_times(&q, &w);
        } else {
            for (r, gr) in grad.iter_mut().enumerate() {
                *gr += eta * (q.m2[(r, i)] - q.m2[(r, j)]);
            }
        }
        observe(DescentStep {
            iteration: iterations,
            to: i,
            from: j,
            eta,
            weights: &w,
        });
    }
}

/// Variance of the combinatorial Laplacian, from the degree sequence.
pub fn var_one(g: &Graph) -> Result<f64> {
    if g.n() < 2 {
        return Err(Error::InvalidInput("variance needs n >= 2".into()));
    }
    let k = (g.n() - 1) as f64;
    let m = g.m() as f64;
    let sq: f64 = g.degrees().iter().map(|&d| (d * d) as f64).sum();
    Ok((2.0 * m + sq) / k - (2.0 * m / k).powi(2))
}

/// `(m/(n−1))(n − 2m/(n−1))`, an upper bound on [`var_one`].
pub fn var_one_upper_bound(g: &Graph) -> Result<f64> {
    if g.n() < 2 {
        return Err(Error::InvalidInput("variance needs n >= 2".into()));
    }
    let k = (g.n() - 1) as f64;
    let m = g.m() as f64;
    Ok(m / k * (g.n() as f64 - 2.0 * m / k))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolverChoice {
    Exact,
    Descent,
    /// Closed form when the line graph is regular, else exact up to the
    /// limit, else descent.
    Auto,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MinVarOptions {
    pub solver: SolverChoice,
    pub limit: usize,
    pub descent: DescentOptions,
}

impl Default for MinVarOptions {
    fn default() -> Self {
        MinVarOptions {
            solver: SolverChoice::Auto,
            limit: DEFAULT_EXHAUSTIVE_LIMIT,
            descent: DescentOptions::default(),
        }
    }
}

pub fn minvar(g: &Graph, opts: &MinVarOptions) -> Result<MinVarResult> {
    match opts.solver {
        SolverChoice::Exact => minvar_exact(g, opts.limit),
        SolverChoice::Descent => minvar_descent(g, &opts.descent),
        SolverChoice::Auto => {
            let q = QPInstance::new(g)?;
            if g.line_graph_regularity().is_some() {
                Ok(q.result(vec![1.0; q.m], SolverKind::ClosedForm, true, 0))
            } else if q.m <= opts.limit {
                minvar_exact(g, opts.limit)
            } else {
                minvar_descent(g, &opts.descent)
            }
        }
    }
}
