//! Ordered multiplicity lists: catalogs per family and constructive witnesses.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::family::Family;
use crate::graph::Graph;
use crate::realizability::RealizationWitness;
use crate::spectral::{assemble_laplacian, spectrum_of, OrderedMultiplicityList};

/// Relative tolerance used to separate eigenvalues while building the
/// all-distinct witness; much tighter than the default grouping so that the
/// scheme keeps working once gaps get small.
const DISTINCT_GROUPING_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ListCatalog {
    pub family: String,
    pub lists: BTreeSet<OrderedMultiplicityList>,
}

impl ListCatalog {
    pub fn contains(&self, list: &OrderedMultiplicityList) -> bool {
        self.lists.contains(list)
    }

    pub fn len(&self) -> usize {
        self.lists.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lists.is_empty()
    }
}

/// All compositions of `n` that start with 1, in lexicographic order.
pub fn compositions_starting_with_one(n: usize) -> Vec<Vec<usize>> {
    fn rec(rest: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in 1..=rest {
            prefix.push(part);
            rec(rest - part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n >= 1 {
        rec(n - 1, &mut vec![1], &mut out);
    }
    out
}

/// m₁ = m_q = 1, and an entry ≥ 2 is always followed by a 1.
pub fn is_star_list(list: &[usize]) -> bool {
    list.len() >= 2
        && list[0] == 1
        && *list.last().unwrap() == 1
        && list.iter().all(|&m| m >= 1)
        && list.windows(2).all(|w| w[0] < 2 || w[1] == 1)
}

fn table(rows: &[&[usize]]) -> BTreeSet<OrderedMultiplicityList> {
    rows.iter().map(|r| OrderedMultiplicityList(r.to_vec())).collect()
}

/// The allowed ordered multiplicity lists for `family`.
pub fn allowed_lists(family: Family) -> Result<ListCatalog> {
    let n = family.n();
    let lists = match family {
        Family::Path(_) => table(&[&vec![1; n]]),
        Family::Complete(_) => compositions_starting_with_one(n)
            .into_iter()
            .map(OrderedMultiplicityList)
            .collect(),
        Family::Star(_) => compositions_starting_with_one(n)
            .into_iter()
            .filter(|c| is_star_list(c))
            .map(OrderedMultiplicityList)
            .collect(),
        Family::Paw | Family::K4MinusE => table(&[&[1, 1, 1, 1], &[1, 1, 2], &[1, 2, 1]]),
        Family::Cycle4 => table(&[&[1, 1, 1, 1], &[1, 2, 1]]),
    };
    Ok(ListCatalog {
        family: family.to_string(),
        lists,
    })
}

/// Collapses a star list into the multiplicities of the weight multiset:
/// drop m₁, then merge every `m_k ≥ 2` with its successor into `m_k + 1`.
pub fn star_weight_blocks(list: &[usize]) -> Result<Vec<usize>> {
    if !is_star_list(list) {
        return Err(Error::InvalidInput(format!(
            "{} is not an allowed star list",
            OrderedMultiplicityList(list.to_vec())
        )));
    }
    let rest = &list[1..];
    let mut out = Vec::new();
    let mut k = 0;
    while k < rest.len() {
        if rest[k] >= 2 {
            out.push(rest[k] + 1);
            k += 2;
        } else {
            out.push(rest[k]);
            k += 1;
        }
    }
    Ok(out)
}

/// Star weighting with weight values 1, 2, 3, … on the collapsed blocks.
pub fn star_witness_for_list(list: &OrderedMultiplicityList) -> Result<RealizationWitness> {
    let blocks = star_weight_blocks(list.as_slice())?;
    let weights: Vec<f64> = blocks
        .iter()
        .enumerate()
        .flat_map(|(v, &count)| std::iter::repeat_n((v + 1) as f64, count))
        .collect();
    RealizationWitness::from_weights(Graph::star(list.total())?, weights)
}

fn distinct_gap(g: &Graph, w: &[f64]) -> Result<f64> {
    let s = spectrum_of(&assemble_laplacian(g, w)?, DISTINCT_GROUPING_TOL)?;
    let clusters = s.clusters();
    Ok(clusters
        .windows(2)
        .map(|c| c[1].0 - c[0].0)
        .fold(f64::INFINITY, f64::min))
}

/// A weighting of `g` with n distinct Laplacian eigenvalues.
///
/// Spanning-tree edges go first (the first with weight 1), then the
/// remaining edges; every added edge gets `δ/7`, where δ is the smallest
/// gap between distinct eigenvalues before the addition.
pub fn construct_all_distinct(g: &Graph) -> Result<RealizationWitness> {
    let tree = g.spanning_tree()?;
    let in_tree: BTreeSet<usize> = tree.iter().copied().collect();
    let order: Vec<usize> = tree
        .iter()
        .copied()
        .chain((0..g.m()).filter(|e| !in_tree.contains(e)))
        .collect();
    let mut w = vec![0.0; g.m()];
    for (step, &e) in order.iter().enumerate() {
        w[e] = if step == 0 {
            1.0
        } else {
            distinct_gap(g, &w)? / 7.0
        };
        if !(w[e] > 0.0) {
            return Err(Error::Numerical(format!(
                "eigenvalue gap collapsed before adding edge {e}"
            )));
        }
    }
    RealizationWitness::from_weights(g.clone(), w)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn list(v: &[usize]) -> OrderedMultiplicityList {
        OrderedMultiplicityList(v.to_vec())
    }

    #[test]
    fn compositions() {
        assert_eq!(
            compositions_starting_with_one(4),
            vec![vec![1, 1, 1, 1], vec![1, 1, 2], vec![1, 2, 1], vec![1, 3]]
        );
        assert_eq!(compositions_starting_with_one(1), vec![vec![1]]);
    }

    #[test]
    fn catalogs() {
        let c4 = allowed_lists(Family::Cycle4).unwrap();
        assert_eq!(c4.lists, table(&[&[1, 1, 1, 1], &[1, 2, 1]]));
        let k4 = allowed_lists(Family::Complete(4)).unwrap();
        assert_eq!(
            k4.lists,
            table(&[&[1, 1, 1, 1], &[1, 1, 2], &[1, 2, 1], &[1, 3]])
        );
        let star = allowed_lists(Family::Star(5)).unwrap();
        assert_eq!(
            star.lists,
            table(&[&[1, 1, 1, 1, 1], &[1, 1, 2, 1], &[1, 2, 1, 1], &[1, 3, 1]])
        );
        let path = allowed_lists(Family::Path(5)).unwrap();
        assert_eq!(path.lists, table(&[&[1, 1, 1, 1, 1]]));
        for f in Family::four_vertex() {
            for l in &allowed_lists(f).unwrap().lists {
                assert_eq!(l.total(), 4);
                assert_eq!(l.0[0], 1);
            }
        }
    }

    #[test]
    fn star_blocks() {
        assert_eq!(star_weight_blocks(&[1, 2, 1]).unwrap(), vec![3]);
        assert_eq!(star_weight_blocks(&[1, 1, 1, 1]).unwrap(), vec![1, 1, 1]);
        assert_eq!(star_weight_blocks(&[1, 2, 1, 1]).unwrap(), vec![3, 1]);
        assert!(star_weight_blocks(&[1, 2, 2, 1]).is_err());
        assert!(star_weight_blocks(&[1, 3]).is_err());
    }

    #[test]
    fn star_witnesses() {
        let w = star_witness_for_list(&list(&[1, 2, 1])).unwrap();
        assert_eq!(w.weights, vec![1.0, 1.0, 1.0]);
        assert!(w.spectrum_error(&[0.0, 1.0, 1.0, 4.0]) < 1e-12);

        let w = star_witness_for_list(&list(&[1, 1, 1, 1])).unwrap();
        assert_eq!(w.weights, vec![1.0, 2.0, 3.0]);
        assert_eq!(w.achieved.multiplicity_list(), list(&[1, 1, 1, 1]));

        let w = star_witness_for_list(&list(&[1, 2, 1, 1])).unwrap();
        assert_eq!(w.weights, vec![1.0, 1.0, 1.0, 2.0]);
        assert_eq!(w.achieved.multiplicity_list(), list(&[1, 2, 1, 1]));
    }

    #[test]
    fn all_distinct_examples() {
        let w = construct_all_distinct(&Graph::path(2)).unwrap();
        assert_eq!(w.weights, vec![1.0]);
        assert!(w.spectrum_error(&[0.0, 2.0]) < 1e-12);

        let w = construct_all_distinct(&Graph::cycle(4).unwrap()).unwrap();
        assert!(w.weights.iter().all(|&x| x > 0.0));
        assert_eq!(w.achieved.multiplicity_list(), list(&[1, 1, 1, 1]));

        let w = construct_all_distinct(&Graph::complete(4)).unwrap();
        assert_eq!(w.weights.len(), 6);
        assert!(w.achieved.min_gap() > 0.0);

        let disconnected = Graph::new(4, [(0, 1), (2, 3)]).unwrap();
        assert!(matches!(
            construct_all_distinct(&disconnected),
            Err(Error::Disconnected)
        ));
    }
}
