//! Graph families with known realizability results.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Path(usize),
    Complete(usize),
    /// K₁,ₙ₋₁, identified by its vertex count n.
    Star(usize),
    Paw,
    Cycle4,
    K4MinusE,
}

impl Family {
    pub fn n(&self) -> usize {
        match *self {
            Family::Path(n) | Family::Complete(n) | Family::Star(n) => n,
            Family::Paw | Family::Cycle4 | Family::K4MinusE => 4,
        }
    }

    pub fn graph(&self) -> Result<Graph> {
        match *self {
            Family::Path(n) => Ok(Graph::path(n)),
            Family::Complete(n) => Ok(Graph::complete(n)),
            Family::Star(n) => Graph::star(n),
            Family::Paw => Ok(Graph::paw()),
            Family::Cycle4 => Graph::cycle(4),
            Family::K4MinusE => Ok(Graph::k4_minus_e()),
        }
    }

    /// Like `FromStr`, but also accepts the size-free names `star`, `path`
    /// and `complete`, taking the vertex count from `n`. A sized name must
    /// agree with `n`.
    pub fn parse_for_size(name: &str, n: usize) -> Result<Self> {
        let family = match name.trim().to_ascii_lowercase().as_str() {
            "star" => Family::Star(n),
            "path" => Family::Path(n),
            "complete" => Family::Complete(n),
            _ => name.parse()?,
        };
        if family.n() < 2 {
            return Err(Error::Unsupported(name.trim().to_string()));
        }
        if family.n() != n {
            return Err(Error::InvalidInput(format!(
                "{family} has {} vertices but {n} values were given",
                family.n()
            )));
        }
        Ok(family)
    }

    /// The four-vertex families whose catalogs are tabulated.
    pub fn four_vertex() -> [Family; 6] {
        [
            Family::Path(4),
            Family::Star(4),
            Family::Paw,
            Family::Cycle4,
            Family::K4MinusE,
            Family::Complete(4),
        ]
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Family::Path(n) => write!(f, "P{n}"),
            Family::Complete(n) => write!(f, "K{n}"),
            Family::Star(n) => write!(f, "K1,{}", n - 1),
            Family::Paw => write!(f, "paw"),
            Family::Cycle4 => write!(f, "C4"),
            Family::K4MinusE => write!(f, "K4-e"),
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    /// Accepts `P<n>`, `K<n>`, `K1,<k>`, `star<n>`, `paw`, `C4`, `K4-e`.
    fn from_str(s: &str) -> Result<Self> {
        let lower = s.trim().to_ascii_lowercase();
        let unsupported = || Error::Unsupported(s.trim().to_string());
        let number = |t: &str| t.parse::<usize>().map_err(|_| unsupported());
        let family = match lower.as_str() {
            "paw" => Family::Paw,
            "c4" => Family::Cycle4,
            "k4-e" | "k4e" => Family::K4MinusE,
            _ => {
                if let Some(k) = lower.strip_prefix("k1,") {
                    Family::Star(number(k)? + 1)
                } else if let Some(n) = lower.strip_prefix("star") {
                    Family::Star(number(n)?)
                } else if let Some(n) = lower.strip_prefix('p') {
                    Family::Path(number(n)?)
                } else if let Some(n) = lower.strip_prefix('k') {
                    Family::Complete(number(n)?)
                } else {
                    return Err(unsupported());
                }
            }
        };
        let min_n = match family {
            Family::Star(_) | Family::Complete(_) | Family::Path(_) => 2,
            _ => 4,
        };
        if family.n() < min_n {
            return Err(unsupported());
        }
        Ok(family)
    }
}
