//! Generalized Laplacians, their spectra and the statistics built on them.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Relative gap below which neighbouring eigenvalues are treated as equal.
pub const DEFAULT_MULTIPLICITY_TOL: f64 = 1e-8;

/// Sorted eigenvalues plus the relative tolerance used to group them.
///
/// Serializes as a plain ascending JSON array.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(from = "Vec<f64>", into = "Vec<f64>")]
pub struct Spectrum {
    values: Vec<f64>,
    tolerance: f64,
}

impl From<Vec<f64>> for Spectrum {
    fn from(values: Vec<f64>) -> Self {
        Spectrum::new(values)
    }
}

impl From<Spectrum> for Vec<f64> {
    fn from(s: Spectrum) -> Self {
        s.values
    }
}

impl Spectrum {
    /// Sorts `values` ascending; uses the default multiplicity tolerance.
    pub fn new(mut values: Vec<f64>) -> Self {
        values.sort_by(f64::total_cmp);
        Spectrum {
            values,
            tolerance: DEFAULT_MULTIPLICITY_TOL,
        }
    }

    pub fn with_tolerance(mut self, tolerance: f64) -> Self {
        self.tolerance = tolerance;
        self
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn largest(&self) -> f64 {
        self.values.last().copied().unwrap_or(0.0)
    }

    /// Absolute gap threshold: `tolerance · max(1, λ_max − λ_min)`.
    pub fn gap_threshold(&self) -> f64 {
        let diameter = match (self.values.first(), self.values.last()) {
            (Some(lo), Some(hi)) => hi - lo,
            _ => 0.0,
        };
        self.tolerance * diameter.max(1.0)
    }

    /// Groups of (representative value, multiplicity), ascending.
    pub fn clusters(&self) -> Vec<(f64, usize)> {
        let thr = self.gap_threshold();
        let mut out: Vec<(f64, usize, f64)> = Vec::new();
        for &v in &self.values {
            match out.last_mut() {
                Some((sum, count, last)) if v - *last <= thr => {
                    *sum += v;
                    *count += 1;
                    *last = v;
                }
                _ => out.push((v, 1, v)),
            }
        }
        out.into_iter()
            .map(|(sum, count, _)| (sum / count as f64, count))
            .collect()
    }

    pub fn multiplicity_list(&self) -> OrderedMultiplicityList {
        OrderedMultiplicityList(self.clusters().into_iter().map(|(_, c)| c).collect())
    }

    /// Smallest gap between consecutive eigenvalues (no grouping).
    pub fn min_gap(&self) -> f64 {
        self.values
            .windows(2)
            .map(|w| w[1] - w[0])
            .fold(f64::INFINITY, f64::min)
    }

    /// Largest absolute elementwise deviation from `other`.
    pub fn max_abs_diff(&self, other: &[f64]) -> f64 {
        assert_eq!(self.values.len(), other.len(), "spectra differ in size");
        self.values
            .iter()
            .zip(other)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// Multiplicities of the distinct eigenvalues in ascending order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct OrderedMultiplicityList(pub Vec<usize>);

impl OrderedMultiplicityList {
    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }
}

impl std::fmt::Display for OrderedMultiplicityList {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

pub fn check_weights(g: &Graph, w: &[f64]) -> Result<()> {
    if w.len() != g.m() {
        return Err(Error::LengthMismatch {
            expected: g.m(),
            found: w.len(),
        });
    }
    if let Some((index, &value)) = w.iter().enumerate().find(|(_, &x)| !(x >= 0.0)) {
        return Err(Error::NegativeWeight { index, value });
    }
    Ok(())
}

/// `N W Nᵀ`: off-diagonal `-w_e` on edge `e`, zero row sums.
pub fn assemble_laplacian(g: &Graph, w: &[f64]) -> Result<DMatrix<f64>> {
    check_weights(g, w)?;
    let mut l = DMatrix::zeros(g.n(), g.n());
    for ([a, b], &we) in g.edges().iter().zip(w) {
        l[(*a, *b)] -= we;
        l[(*b, *a)] -= we;
        l[(*a, *a)] += we;
        l[(*b, *b)] += we;
    }
    Ok(l)
}

fn max_asymmetry(a: &DMatrix<f64>) -> f64 {
    let mut dev: f64 = 0.0;
    for i in 0..a.nrows() {
        for j in i + 1..a.ncols() {
            dev = dev.max((a[(i, j)] - a[(j, i)]).abs());
        }
    }
    dev
}

/// Ascending eigenvalues of a symmetric matrix.
///
/// `tol` bounds the allowed asymmetry relative to `max(1, max |a_ij|)` and
/// becomes the multiplicity tolerance of the result.
pub fn spectrum_of(a: &DMatrix<f64>, tol: f64) -> Result<Spectrum> {
    if a.nrows() != a.ncols() {
        return Err(Error::InvalidInput(format!(
            "matrix is {}x{}, expected square",
            a.nrows(),
            a.ncols()
        )));
    }
    let scale = a.amax().max(1.0);
    let dev = max_asymmetry(a);
    if dev > tol * scale {
        return Err(Error::Asymmetric(dev));
    }
    let sym = (a + a.transpose()) * 0.5;
    let values = sym.symmetric_eigenvalues().iter().copied().collect();
    Ok(Spectrum::new(values).with_tolerance(tol))
}

/// Spectrum of the generalized Laplacian of `g` with weights `w`.
pub fn laplacian_spectrum(g: &Graph, w: &[f64]) -> Result<Spectrum> {
    spectrum_of(&assemble_laplacian(g, w)?, DEFAULT_MULTIPLICITY_TOL)
}

pub fn multiplicity_list(s: &Spectrum) -> OrderedMultiplicityList {
    s.multiplicity_list()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct VarianceStats {
    pub mean: f64,
    pub variance: f64,
    /// Sum of squares of the nonzero-part eigenvalues.
    pub p2: f64,
}

impl VarianceStats {
    /// Variance through `p₂/(n−1) − mean²`; agrees with `variance` up to rounding.
    pub fn variance_from_p2(&self, count: usize) -> f64 {
        self.p2 / count as f64 - self.mean * self.mean
    }
}

/// Mean, variance and p₂ over λ₂..λₙ (the smallest eigenvalue is dropped once).
pub fn variance_stats(s: &Spectrum) -> Result<VarianceStats> {
    if s.len() < 2 {
        return Err(Error::InvalidInput("variance needs n >= 2".into()));
    }
    let rest = &s.values()[1..];
    let k = rest.len() as f64;
    let mean = rest.iter().sum::<f64>() / k;
    let variance = rest.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / k;
    let p2 = rest.iter().map(|x| x * x).sum();
    Ok(VarianceStats { mean, variance, p2 })
}

/// Rescales `w` so that it sums to m (the assembled trace is then 2m).
pub fn normalize_trace(g: &Graph, w: &[f64]) -> Result<Vec<f64>> {
    check_weights(g, w)?;
    let total: f64 = w.iter().sum();
    if !(total > 0.0) {
        return Err(Error::ZeroWeights);
    }
    let m = g.m() as f64;
    Ok(w.iter().map(|x| x * m / total).collect())
}
