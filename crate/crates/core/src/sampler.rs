//! Monte Carlo sampling of realizable spectra.
//!
//! Each sample draws edge weights from Uniform(0, 1], rescales them so the
//! trace is 2m, and records the ascending spectrum. Sample `k` uses its own
//! ChaCha8 stream, so results do not depend on thread count.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::spectral::{laplacian_spectrum, normalize_trace};

pub const DEFAULT_SAMPLE_COUNT: usize = 100_000;

#[derive(Debug, Clone, PartialEq)]
pub struct SampleRun {
    pub graph: Graph,
    pub count: usize,
    pub seed: u64,
    /// Sample 0 is the all-ones weighting.
    pub anchor: bool,
    /// Full ascending spectra (leading ≈ 0 included), in sample order.
    pub records: Vec<Vec<f64>>,
}

/// Uniform(0, 1] weights for sample `index`.
pub fn sample_weights(m: usize, seed: u64, index: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    (0..m).map(|_| 1.0 - rng.random::<f64>()).collect()
}

fn record(g: &Graph, w: &[f64]) -> Result<Vec<f64>> {
    let w = normalize_trace(g, w)?;
    Ok(laplacian_spectrum(g, &w)?.values().to_vec())
}

pub fn sample_spectra(g: &Graph, count: usize, seed: u64, anchor: bool) -> Result<SampleRun> {
    if g.m() == 0 {
        return Err(Error::NoEdges);
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let records = (0..count)
        .into_par_iter()
        .map(|k| {
            let w = if anchor && k == 0 {
                vec![1.0; g.m()]
            } else {
                sample_weights(g.m(), seed, k as u64)
            };
            record(g, &w)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SampleRun {
        graph: g.clone(),
        count,
        seed,
        anchor,
        records,
    })
}

/// `a·x + b·y = c` in the (λ₂, λ₃) plane of a 4-vertex sample.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReferenceLine {
    pub name: String,
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Sidecar {
    pub graph: String,
    pub n: usize,
    pub m: usize,
    pub count: usize,
    pub seed: u64,
    pub anchor: bool,
    pub columns: Vec<String>,
    pub trace: f64,
    pub reference_lines: Vec<ReferenceLine>,
    /// λ₂..λₙ of the combinatorial Laplacian.
    pub combinatorial_point: Vec<f64>,
}

impl Sidecar {
    pub fn for_run(run: &SampleRun) -> Result<Self> {
        let g = &run.graph;
        let two_m = 2.0 * g.m() as f64;
        let line = |name: &str, a: f64, b: f64, c: f64| ReferenceLine {
            name: name.to_string(),
            a,
            b,
            c,
        };
        Ok(Sidecar {
            graph: g.to_text(),
            n: g.n(),
            m: g.m(),
            count: run.count,
            seed: run.seed,
            anchor: run.anchor,
            columns: csv_header(g.n()),
            trace: two_m,
            // λ₄ = 2m − x − y only pins down the plane picture for n = 4
            reference_lines: if g.n() == 4 {
                vec![
                    line("lambda2 = lambda3", 1.0, -1.0, 0.0),
                    line("lambda3 = lambda4 (x + 2y = 2m)", 1.0, 2.0, two_m),
                    line("lambda4 = 0 (x + y = 2m)", 1.0, 1.0, two_m),
                ]
            } else {
                Vec::new()
            },
            combinatorial_point: record(g, &vec![1.0; g.m()])?[1..].to_vec(),
        })
    }
}

fn csv_header(n: usize) -> Vec<String> {
    (2..=n).map(|k| format!("lambda{k}")).collect()
}

/// Path of the sidecar written next to `csv_path`.
pub fn sidecar_path(csv_path: &Path) -> PathBuf {
    csv_path.with_extension("json")
}

/// Writes λ₂..λₙ per sample, plus the sidecar JSON. Returns the sidecar path.
pub fn export_csv(run: &SampleRun, path: &Path) -> Result<PathBuf> {
    let mut out = csv::Writer::from_writer(BufWriter::new(File::create(path)?));
    let io = |e: csv::Error| Error::Io(e.into());
    out.write_record(csv_header(run.graph.n())).map_err(io)?;
    for rec in &run.records {
        out.write_record(rec[1..].iter().map(|v| v.to_string())).map_err(io)?;
    }
    out.flush()?;

    let side = sidecar_path(path);
    let mut f = BufWriter::new(File::create(&side)?);
    serde_json::to_writer_pretty(&mut f, &Sidecar::for_run(run)?)
        .map_err(|e| Error::Io(e.into()))?;
    writeln!(f)?;
    f.flush()?;
    Ok(side)
}
