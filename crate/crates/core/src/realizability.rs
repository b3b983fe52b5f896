//! Laplacian realizability tests and witness constructions.
//!
//! A target `{0, λ₂, …, λₙ}` is realizable for a graph G when some
//! generalized Laplacian of G (negative entries exactly on the edges, zero
//! row sums) has it as spectrum. Every positive answer here comes with a
//! [`RealizationWitness`] whose spectrum is recomputed by the eigensolver.

use nalgebra::{Complex, DMatrix};

use crate::error::{Error, Result};
use crate::family::Family;
use crate::graph::Graph;
use crate::spectral::{assemble_laplacian, spectrum_of, Spectrum, DEFAULT_MULTIPLICITY_TOL};

/// Relative slack applied to the non-strict boundary inequalities.
const BOUNDARY_SLACK: f64 = 1e-12;
/// Accepted residual of a star weight as a root of the star polynomial.
const ROOT_RESIDUAL_TOL: f64 = 1e-9;

/// Ascending `{0, λ₂, …, λₙ}` with λ₂ > 0.
#[derive(Debug, Clone, PartialEq)]
pub struct TargetSpectrum(Vec<f64>);

impl TargetSpectrum {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::InvalidInput("target needs at least two values".into()));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidInput("target values must be finite".into()));
        }
        if values[0] != 0.0 {
            return Err(Error::InvalidInput(format!(
                "target must start with 0, got {}",
                values[0]
            )));
        }
        if values[1] <= 0.0 {
            return Err(Error::InvalidInput(
                "nonzero eigenvalues must be positive (connected graphs only)".into(),
            ));
        }
        if values.windows(2).any(|w| w[1] < w[0]) {
            return Err(Error::InvalidInput("target must be ascending".into()));
        }
        Ok(TargetSpectrum(values))
    }

    /// Builds `{0, λ^(n−2), μ}` in ascending order.
    pub fn three_distinct(n: usize, lambda: f64, mu: f64) -> Result<Self> {
        let mut v = vec![0.0, mu];
        v.extend(std::iter::repeat_n(lambda, n.saturating_sub(2)));
        v.sort_by(f64::total_cmp);
        TargetSpectrum::new(v)
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn nonzero(&self) -> &[f64] {
        &self.0[1..]
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }
}

/// A weighted graph together with its assembled Laplacian and spectrum.
#[derive(Debug, Clone)]
pub struct RealizationWitness {
    pub graph: Graph,
    pub weights: Vec<f64>,
    pub matrix: DMatrix<f64>,
    pub achieved: Spectrum,
}

impl RealizationWitness {
    pub fn from_weights(graph: Graph, weights: Vec<f64>) -> Result<Self> {
        let matrix = assemble_laplacian(&graph, &weights)?;
        let achieved = spectrum_of(&matrix, DEFAULT_MULTIPLICITY_TOL)?;
        Ok(RealizationWitness {
            graph,
            weights,
            matrix,
            achieved,
        })
    }

    /// Largest deviation from `target`, relative to `max(1, λₙ)`.
    pub fn spectrum_error(&self, target: &[f64]) -> f64 {
        let scale = target.last().copied().unwrap_or(0.0).abs().max(1.0);
        self.achieved.max_abs_diff(target) / scale
    }

    pub fn is_generalized_laplacian(&self, tol: f64) -> bool {
        self.weights.iter().all(|&w| w > 0.0) && is_generalized_laplacian_of(&self.graph, &self.matrix, tol)
    }
}

/// Membership test for S_L(G): zero row sums, negative exactly on edges,
/// zero on non-edges. Tolerances are relative to `max(1, max |a_ij|)`.
pub fn is_generalized_laplacian_of(g: &Graph, a: &DMatrix<f64>, tol: f64) -> bool {
    let n = g.n();
    if a.nrows() != n || a.ncols() != n {
        return false;
    }
    let thr = tol * a.amax().max(1.0);
    let mut edge = vec![vec![false; n]; n];
    for [i, j] in g.edges() {
        edge[*i][*j] = true;
        edge[*j][*i] = true;
    }
    for i in 0..n {
        if a.row(i).sum().abs() > thr {
            return false;
        }
        for j in 0..n {
            if i == j {
                continue;
            }
            if (a[(i, j)] - a[(j, i)]).abs() > thr {
                return false;
            }
            let ok = if edge[i][j] {
                a[(i, j)] < 0.0
            } else {
                a[(i, j)].abs() <= thr
            };
            if !ok {
                return false;
            }
        }
    }
    true
}

/// σ₀..σ_len of `vals`, by multiplying out ∏(x + vᵢ).
pub fn elementary_symmetric(vals: &[f64]) -> Vec<f64> {
    let mut sigma = vec![0.0; vals.len() + 1];
    sigma[0] = 1.0;
    for (i, &v) in vals.iter().enumerate() {
        for k in (1..=i + 1).rev() {
            sigma[k] += v * sigma[k - 1];
        }
    }
    sigma
}

/// The monic polynomial whose negated roots are the star's edge weights:
/// the coefficient of x^(n−1−k) is σₖ/(k+1), with σ taken over λ₂..λₙ.
#[derive(Debug, Clone, PartialEq)]
pub struct StarPolynomial {
    coeffs: Vec<f64>,
}

impl StarPolynomial {
    pub fn from_nonzero(lambdas: &[f64]) -> Self {
        let coeffs = elementary_symmetric(lambdas)
            .into_iter()
            .enumerate()
            .map(|(k, s)| s / (k + 1) as f64)
            .collect();
        StarPolynomial { coeffs }
    }

    /// Coefficients from the leading one down to the constant term.
    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn max_coeff(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |a, c| a.max(c.abs()))
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().fold(0.0, |acc, c| acc * x + c)
    }

    pub fn eval_derivative(&self, x: f64) -> f64 {
        let d = self.degree();
        self.coeffs[..d]
            .iter()
            .enumerate()
            .fold(0.0, |acc, (k, c)| acc * x + c * (d - k) as f64)
    }

    fn companion(&self) -> DMatrix<f64> {
        let d = self.degree();
        let mut c = DMatrix::zeros(d, d);
        for k in 0..d {
            c[(0, k)] = -self.coeffs[k + 1];
        }
        for i in 1..d {
            c[(i, i - 1)] = 1.0;
        }
        c
    }

    /// Real parts of the roots from the companion matrix, each polished by a
    /// Newton step when that lowers the residual. Ascending.
    pub fn real_roots(&self) -> Vec<f64> {
        if self.degree() == 0 {
            return Vec::new();
        }
        let eig: Vec<Complex<f64>> = self.companion().complex_eigenvalues().iter().copied().collect();
        let mut roots: Vec<f64> = eig
            .into_iter()
            .map(|z| {
                let r = z.re;
                let fr = self.eval(r);
                let dr = self.eval_derivative(r);
                if dr != 0.0 {
                    let polished = r - fr / dr;
                    if self.eval(polished).abs() < fr.abs() {
                        return polished;
                    }
                }
                r
            })
            .collect();
        roots.sort_by(f64::total_cmp);
        roots
    }
}

fn normalized_nonzero(t: &TargetSpectrum) -> (Vec<f64>, f64) {
    let scale = *t.values().last().expect("target is nonempty");
    (t.nonzero().iter().map(|v| v / scale).collect(), scale)
}

/// Sign test for the star K₁,ₙ₋₁: `(−1)ᵏ f(−λₖ) ≤ 0` for k = 2..n−1.
///
/// Evaluated on the target scaled to λₙ = 1, with absolute slack
/// `1e-12 · max coefficient` so that exact boundary cases pass.
pub fn check_star(t: &TargetSpectrum) -> Result<bool> {
    let (lams, _) = normalized_nonzero(t);
    let f = StarPolynomial::from_nonzero(&lams);
    let slack = BOUNDARY_SLACK * f.max_coeff();
    let n = t.n();
    Ok((2..n).all(|k| {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        sign * f.eval(-t.values()[k - 1] / t.values()[n - 1]) <= slack
    }))
}

/// A star eigenvalue λ of multiplicity k ≥ 2 forces the weight λ with
/// multiplicity k + 1, i.e. a multiple root of the star polynomial, which the
/// companion eigensolver only resolves to about ε^(1/(k+1)). Those roots are
/// replaced by the exact value.
fn snap_repeated_roots(roots: &mut [f64], lams: &[f64]) {
    let clusters = Spectrum::new(lams.to_vec())
        .with_tolerance(DEFAULT_MULTIPLICITY_TOL)
        .clusters();
    let mut taken = vec![false; roots.len()];
    for (value, count) in clusters.into_iter().filter(|c| c.1 >= 2) {
        let mut nearest: Vec<usize> = (0..roots.len()).filter(|&i| !taken[i]).collect();
        nearest.sort_by(|&a, &b| (roots[a] + value).abs().total_cmp(&(roots[b] + value).abs()));
        for &i in nearest.iter().take(count + 1) {
            roots[i] = -value;
            taken[i] = true;
        }
    }
}

/// Cauchy interlacing (delete the center) puts the k-th smallest weight in
/// `[λ_k, λ_{k+1}]` (with λ₁ = 0). Where f changes sign strictly across that
/// bracket, the companion estimate is refined by safeguarded Newton; this
/// recovers full accuracy for nearly coincident weights, where the companion
/// eigensolver returns a complex pair and a single Newton step stalls.
fn refine_in_brackets(f: &StarPolynomial, roots: &mut [f64], lams: &[f64]) {
    let mut ends = Vec::with_capacity(lams.len() + 1);
    ends.push(0.0);
    ends.extend_from_slice(lams);
    // Weights ascending ⇔ roots descending.
    let mut order: Vec<usize> = (0..roots.len()).collect();
    order.sort_by(|&a, &b| roots[b].total_cmp(&roots[a]));
    for (k, &idx) in order.iter().enumerate() {
        let (mut lo, mut hi) = (ends[k], ends[k + 1]);
        let g = |w: f64| f.eval(-w);
        let (g_lo, g_hi) = (g(lo), g(hi));
        if !(hi > lo) || g_lo == 0.0 || g_hi == 0.0 || g_lo.signum() == g_hi.signum() {
            continue;
        }
        let lo_sign = g_lo.signum();
        let mut w = (-roots[idx]).clamp(lo, hi);
        for _ in 0..200 {
            let gw = g(w);
            if gw == 0.0 {
                break;
            }
            if gw.signum() == lo_sign {
                lo = w;
            } else {
                hi = w;
            }
            // d/dw f(−w) = −f'(−w)
            let slope = -f.eval_derivative(-w);
            let newton = w - gw / slope;
            w = if slope != 0.0 && newton > lo && newton < hi {
                newton
            } else {
                0.5 * (lo + hi)
            };
            if hi - lo <= 4.0 * f64::EPSILON * hi {
                break;
            }
            if (newton - w).abs() == 0.0 && (gw / slope).abs() <= f64::EPSILON * w {
                break;
            }
        }
        roots[idx] = -w;
    }
}

/// Star weights are the negated roots of the star polynomial.
pub fn realize_star(t: &TargetSpectrum) -> Result<RealizationWitness> {
    if !check_star(t)? {
        return Err(Error::NotRealizable(
            "star sign conditions fail".into(),
        ));
    }
    let (lams, scale) = normalized_nonzero(t);
    let f = StarPolynomial::from_nonzero(&lams);
    let mut roots = f.real_roots();
    snap_repeated_roots(&mut roots, &lams);
    refine_in_brackets(&f, &mut roots, &lams);
    let residual = roots.iter().map(|&r| f.eval(r).abs()).fold(0.0, f64::max);
    if residual > ROOT_RESIDUAL_TOL * f.max_coeff() {
        return Err(Error::Numerical(format!(
            "star polynomial root residual {residual:e} too large"
        )));
    }
    if roots.iter().any(|&r| r >= 0.0) {
        return Err(Error::Numerical("star polynomial has a nonnegative root".into()));
    }
    let mut weights: Vec<f64> = roots.iter().map(|r| -r * scale).collect();
    weights.sort_by(f64::total_cmp);
    RealizationWitness::from_weights(Graph::star(t.n())?, weights)
}

/// Positive `(p, q)`, `p ≤ q`, with `p² + q² = α` and `pq = β`, when one exists.
///
/// `α − 2β` down to `−1e-12·α` is treated as the boundary `p = q`.
pub fn solve_sum_of_squares(alpha: f64, beta: f64) -> Option<(f64, f64)> {
    if !(alpha > 0.0 && beta > 0.0) {
        return None;
    }
    let disc = alpha - 2.0 * beta;
    if disc < -BOUNDARY_SLACK * alpha {
        return None;
    }
    let sum = (alpha + 2.0 * beta).sqrt();
    let q = 0.5 * (sum + disc.max(0.0).sqrt());
    Some((beta / q, q))
}

/// Whether `p² + q² = α, pq = β` has a positive solution, i.e. `α ≥ 2β`.
pub fn check_quadratic_system(alpha: f64, beta: f64) -> Result<bool> {
    if !(alpha > 0.0 && beta > 0.0) {
        return Err(Error::InvalidInput(format!(
            "alpha and beta must be positive, got ({alpha}, {beta})"
        )));
    }
    Ok(solve_sum_of_squares(alpha, beta).is_some())
}

/// P₃ with weights (a, b): `a + b = (λ₂+λ₃)/2`, `ab = λ₂λ₃/3`, `a ≤ b`.
pub fn realize_p3(t: &TargetSpectrum) -> Result<RealizationWitness> {
    if t.n() != 3 {
        return Err(Error::InvalidInput(format!("P3 needs 3 values, got {}", t.n())));
    }
    let (l2, l3) = (t.values()[1], t.values()[2]);
    if l3 < 3.0 * l2 * (1.0 - BOUNDARY_SLACK) {
        return Err(Error::NotRealizable(format!(
            "P3 requires lambda3 >= 3 lambda2, got {l3} < {}",
            3.0 * l2
        )));
    }
    let half_sum = 0.5 * (l2 + l3);
    let product = l2 * l3 / 3.0;
    let disc = (half_sum * half_sum - 4.0 * product).max(0.0);
    let b = 0.5 * (half_sum + disc.sqrt());
    let a = product / b;
    RealizationWitness::from_weights(Graph::path(3), vec![a, b])
}

fn check_laplacian_block(m: &DMatrix<f64>, name: &str) -> Result<()> {
    if m.nrows() != m.ncols() || m.nrows() == 0 {
        return Err(Error::InvalidInput(format!("{name} must be square and nonempty")));
    }
    let thr = 1e-9 * m.amax().max(1.0);
    for i in 0..m.nrows() {
        if m.row(i).sum().abs() > thr {
            return Err(Error::InvalidInput(format!("{name} has a nonzero row sum")));
        }
        for j in 0..m.ncols() {
            if i != j && m[(i, j)] > thr {
                return Err(Error::InvalidInput(format!(
                    "{name} has a positive off-diagonal entry"
                )));
            }
        }
    }
    Ok(())
}

/// Joins two generalized Laplacians with a complete bipartite layer of
/// weight `rho`:
///
/// ```text
/// [ A + ρqI   −ρJ     ]
/// [ −ρJ       B + ρpI ]
/// ```
///
/// Spectrum: `{0, ρ(p+q), μᵢ + ρq, τⱼ + ρp}`.
pub fn join_construct(a: &DMatrix<f64>, b: &DMatrix<f64>, rho: f64) -> Result<DMatrix<f64>> {
    if !(rho > 0.0) || !rho.is_finite() {
        return Err(Error::InvalidInput(format!("rho must be positive, got {rho}")));
    }
    check_laplacian_block(a, "A")?;
    check_laplacian_block(b, "B")?;
    let (p, q) = (a.nrows(), b.nrows());
    let mut m = DMatrix::from_element(p + q, p + q, -rho);
    m.view_mut((0, 0), (p, p)).copy_from(a);
    m.view_mut((p, p), (q, q)).copy_from(b);
    for i in 0..p {
        m[(i, i)] += rho * q as f64;
    }
    for j in p..p + q {
        m[(j, j)] += rho * p as f64;
    }
    Ok(m)
}

fn kn_matrix(nonzero: &[f64]) -> DMatrix<f64> {
    let n = nonzero.len() + 1;
    if n == 2 {
        let a = 0.5 * nonzero[0];
        return DMatrix::from_row_slice(2, 2, &[a, -a, -a, a]);
    }
    let rho = nonzero[0] / n as f64;
    let shifted: Vec<f64> = nonzero[1..].iter().map(|v| v - rho).collect();
    let inner = kn_matrix(&shifted);
    join_construct(&inner, &DMatrix::zeros(1, 1), rho).expect("recursive blocks are Laplacians")
}

/// Every target is realizable for Kₙ: peel off λ₂ by joining a witness for
/// `{0, λ₃−ρ, …, λₙ−ρ}` with one vertex at `ρ = λ₂/n`.
pub fn realize_kn(t: &TargetSpectrum) -> Result<RealizationWitness> {
    let m = kn_matrix(t.nonzero());
    let g = Graph::complete(t.n());
    let weights = g.edges().iter().map(|[i, j]| -m[(*i, *j)]).collect();
    RealizationWitness::from_weights(g, weights)
}

fn validate_pair(lambda: f64, mu: f64) -> Result<()> {
    if !(lambda > 0.0 && mu > 0.0) || !lambda.is_finite() || !mu.is_finite() {
        return Err(Error::InvalidInput("lambda and mu must be positive".into()));
    }
    if lambda == mu {
        return Err(Error::InvalidInput("lambda and mu must differ".into()));
    }
    Ok(())
}

/// Is `{0, λ^(n−2), μ}` realizable for `family`?
///
/// λ is always the repeated eigenvalue and μ the simple one, whichever is
/// larger.
pub fn check_three_distinct(family: Family, lambda: f64, mu: f64) -> Result<bool> {
    validate_pair(lambda, mu)?;
    let sqrt3 = 3f64.sqrt();
    match family {
        Family::Complete(n) if n >= 3 => Ok(true),
        Family::Star(3) | Family::Path(3) => {
            check_star(&TargetSpectrum::three_distinct(3, lambda, mu)?)
        }
        Family::Star(n) if n >= 4 => {
            let target = n as f64 * lambda;
            Ok((mu - target).abs() <= BOUNDARY_SLACK * target)
        }
        // A path only ever has simple eigenvalues.
        Family::Path(n) if n >= 4 => Ok(false),
        Family::Paw => Ok(mu >= (2.0 + sqrt3) * lambda || mu <= (2.0 - sqrt3) * lambda),
        Family::Cycle4 => Ok(mu >= 2.0 * lambda),
        Family::K4MinusE => Ok(mu > 2.0 * lambda || mu <= 0.5 * lambda),
        other => Err(Error::Unsupported(format!(
            "three-distinct test for {other}"
        ))),
    }
}

/// Unit vector u ⊥ 𝟙 for the four-vertex families with
/// `I − J/4 + g·uuᵀ ∈ S_L(G)`, where `g = (μ − λ)/λ`.
fn three_distinct_vector(family: Family, g: f64) -> Result<[f64; 4]> {
    let infeasible = || Error::Numerical(format!("no vector for {family} at g = {g}"));
    let (s2, s6) = (2f64.sqrt(), 6f64.sqrt());
    let sqrt3 = 3f64.sqrt();
    let u = match family {
        Family::Paw => {
            // y = x and x·z = 1/(4g); 6x² + 2z² = 1 − 1/g.
            let alpha = 1.0 - 1.0 / g;
            if g > 0.0 {
                let (p, q) = solve_sum_of_squares(alpha, sqrt3 / (2.0 * g)).ok_or_else(infeasible)?;
                let (x, z) = (p / s6, q / s2);
                [x, x, z, -(2.0 * x + z)]
            } else {
                let (p, q) = solve_sum_of_squares(alpha, -sqrt3 / (2.0 * g)).ok_or_else(infeasible)?;
                let (x, z) = (p / s6, -q / s2);
                [x, x, z, -(2.0 * x + z)]
            }
        }
        Family::Cycle4 => {
            let (x, y) = solve_sum_of_squares(0.5, 1.0 / (4.0 * g)).ok_or_else(infeasible)?;
            [x, y, -x, -y]
        }
        Family::K4MinusE if g > 0.0 => {
            let eps = f64::min(0.5 * (0.5 - 0.5 / g), 1.0 / (8.0 * g));
            let (x, y) = solve_sum_of_squares(0.5 - eps, 1.0 / (4.0 * g)).ok_or_else(infeasible)?;
            let (nz, nw) =
                solve_sum_of_squares(0.5 + eps, 1.0 / (4.0 * g) - eps).ok_or_else(infeasible)?;
            [x, y, -nz, -nw]
        }
        Family::K4MinusE => {
            let eps = 1.0 / (6.0 * g) - 1.0 / 6.0;
            let (small, large) =
                solve_sum_of_squares(0.5 - eps, -1.0 / (4.0 * g)).ok_or_else(infeasible)?;
            let zw = (1.0 / (12.0 * g) + 1.0 / 6.0).max(0.0).sqrt();
            // x + y = −2z keeps u ⊥ 𝟙.
            [small, -large, zw, zw]
        }
        other => {
            return Err(Error::Unsupported(format!("vector construction for {other}")));
        }
    };
    Ok(u)
}

/// Witness for `{0, λ^(n−2), μ}` on `family`.
pub fn realize_three_distinct(family: Family, lambda: f64, mu: f64) -> Result<RealizationWitness> {
    if !check_three_distinct(family, lambda, mu)? {
        return Err(Error::NotRealizable(format!(
            "{{0, {lambda}^({}), {mu}}} on {family}",
            family.n().saturating_sub(2)
        )));
    }
    match family {
        Family::Complete(n) => realize_kn(&TargetSpectrum::three_distinct(n, lambda, mu)?),
        Family::Star(3) | Family::Path(3) => {
            realize_star(&TargetSpectrum::three_distinct(3, lambda, mu)?)
        }
        Family::Star(n) => RealizationWitness::from_weights(Graph::star(n)?, vec![lambda; n - 1]),
        Family::Paw | Family::Cycle4 | Family::K4MinusE => {
            let g = (mu - lambda) / lambda;
            let u = three_distinct_vector(family, g)?;
            let graph = family.graph()?;
            let entry = |i: usize, j: usize| lambda * (-0.25 + g * u[i] * u[j]);
            for i in 0..4 {
                for j in i + 1..4 {
                    let a = entry(i, j);
                    let is_edge = graph.edge_index(i, j).is_some();
                    if (is_edge && !(a < 0.0)) || (!is_edge && a.abs() > 1e-9 * lambda) {
                        return Err(Error::Numerical(format!(
                            "constructed matrix breaks the sign pattern at ({}, {})",
                            i + 1,
                            j + 1
                        )));
                    }
                }
            }
            let weights = graph.edges().iter().map(|[i, j]| -entry(*i, *j)).collect();
            RealizationWitness::from_weights(graph, weights)
        }
        other => Err(Error::Unsupported(format!("three-distinct witness for {other}"))),
    }
}

/// Splits a four-vertex target into `(λ repeated, μ simple)` when it has
/// exactly three distinct values.
fn as_three_distinct(t: &TargetSpectrum) -> Option<(f64, f64)> {
    let clusters = Spectrum::new(t.values().to_vec())
        .with_tolerance(DEFAULT_MULTIPLICITY_TOL)
        .clusters();
    match clusters[..] {
        [_, (a, 1), (b, k)] if k >= 2 => Some((b, a)),
        [_, (a, k), (b, 1)] if k >= 2 => Some((a, b)),
        _ => None,
    }
}

fn multiplicity_allowed(family: Family, t: &TargetSpectrum) -> Result<bool> {
    let list = Spectrum::new(t.values().to_vec())
        .with_tolerance(DEFAULT_MULTIPLICITY_TOL)
        .multiplicity_list();
    Ok(crate::multiplicity::allowed_lists(family)?.contains(&list))
}

fn require_size(family: Family, t: &TargetSpectrum) -> Result<()> {
    if t.n() != family.n() {
        return Err(Error::InvalidInput(format!(
            "{family} has {} vertices but the target has {} values",
            family.n(),
            t.n()
        )));
    }
    Ok(())
}

/// Realizability of an arbitrary target for `family`, where it is decided.
///
/// Targets whose multiplicity list is outside the family catalog are
/// rejected; among the rest, only spectra covered by a known test are
/// answered and the others are reported as unsupported.
pub fn check_realizable(family: Family, t: &TargetSpectrum) -> Result<bool> {
    require_size(family, t)?;
    match family {
        Family::Complete(_) => Ok(true),
        Family::Star(_) | Family::Path(2) | Family::Path(3) => check_star(t),
        _ if !multiplicity_allowed(family, t)? => Ok(false),
        Family::Paw | Family::Cycle4 | Family::K4MinusE => match as_three_distinct(t) {
            Some((lambda, mu)) => check_three_distinct(family, lambda, mu),
            None => Err(Error::Unsupported(format!(
                "{family} with four distinct eigenvalues"
            ))),
        },
        Family::Path(_) => Err(Error::Unsupported(format!(
            "{family} with n distinct eigenvalues"
        ))),
    }
}

/// Witness for `t` on `family`; see [`check_realizable`] for coverage.
pub fn realize(family: Family, t: &TargetSpectrum) -> Result<RealizationWitness> {
    if !check_realizable(family, t)? {
        return Err(Error::NotRealizable(format!("{:?} on {family}", t.values())));
    }
    match family {
        Family::Complete(_) => realize_kn(t),
        Family::Path(3) => realize_p3(t),
        Family::Star(_) | Family::Path(2) => realize_star(t),
        Family::Paw | Family::Cycle4 | Family::K4MinusE => {
            let (lambda, mu) = as_three_distinct(t).expect("checked above");
            realize_three_distinct(family, lambda, mu)
        }
        Family::Path(_) => unreachable!("paths with n >= 4 are rejected or unsupported"),
    }
}
