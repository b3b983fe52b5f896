//! Simple undirected graphs with a fixed edge ordering.
//!
//! Vertices are `0..n` internally. Every edge is stored as `[lo, hi]` with
//! `lo < hi`, and its position in the edge list is its index everywhere else
//! in the crate: weight vectors, rows and columns of the M₂ matrix, supports.
//!
//! The text format used by the CLI is 1-based:
//!
//! ```text
//! 4 3
//! 1 2
//! 2 3
//! 3 4
//! ```

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Graph {
    n: usize,
    edges: Vec<[usize; 2]>,
}

/// The two colour classes of a connected bipartite graph.
///
/// `left` always contains vertex 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bipartition {
    pub left: Vec<usize>,
    pub right: Vec<usize>,
}

impl Bipartition {
    /// Diagonal of the signature matrix: `+1` on `left`, `-1` on `right`.
    pub fn signature(&self, n: usize) -> Vec<f64> {
        let mut d = vec![1.0; n];
        for &v in &self.right {
            d[v] = -1.0;
        }
        d
    }
}

impl Graph {
    /// Builds a graph from 0-based vertex pairs, keeping the given order.
    pub fn new<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if n == 0 {
            return Err(Error::InvalidGraph("graph needs at least one vertex".into()));
        }
        let mut seen = HashSet::new();
        let mut list = Vec::new();
        for (a, b) in edges {
            if a >= n || b >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge {{{}, {}}} out of range for {} vertices",
                    a + 1,
                    b + 1,
                    n
                )));
            }
            if a == b {
                return Err(Error::InvalidGraph(format!("self-loop at vertex {}", a + 1)));
            }
            let e = [a.min(b), a.max(b)];
            if !seen.insert(e) {
                return Err(Error::InvalidGraph(format!(
                    "duplicate edge {{{}, {}}}",
                    e[0] + 1,
                    e[1] + 1
                )));
            }
            list.push(e);
        }
        Ok(Graph { n, edges: list })
    }

    /// Builds a graph from 1-based vertex pairs.
    pub fn from_one_based<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut shifted = Vec::new();
        for (a, b) in edges {
            if a == 0 || b == 0 {
                return Err(Error::InvalidGraph("vertex labels start at 1".into()));
            }
            shifted.push((a - 1, b - 1));
        }
        Graph::new(n, shifted)
    }

    fn from_static(n: usize, one_based: &[(usize, usize)]) -> Self {
        Graph::from_one_based(n, one_based.iter().copied()).expect("static graph is valid")
    }

    pub fn path(n: usize) -> Self {
        Graph::new(n.max(1), (1..n).map(|i| (i - 1, i))).expect("path is valid")
    }

    /// The cycle on `n ≥ 3` vertices.
    ///
    /// `cycle(4)` uses the labelling 1–3–2–4–1 (edges `{1,3}, {1,4}, {2,4}, {2,3}`),
    /// so that `{1,2}` and `{3,4}` are the non-edges and the colour classes.
    /// Larger cycles are labelled consecutively.
    pub fn cycle(n: usize) -> Result<Self> {
        match n {
            0..=2 => Err(Error::InvalidGraph(format!("C{n} is not a simple graph"))),
            4 => Ok(Graph::from_static(4, &[(3, 1), (1, 4), (4, 2), (2, 3)])),
            _ => Graph::new(n, (0..n).map(|i| (i, (i + 1) % n))),
        }
    }

    /// Edges in lexicographic order `{1,2}, {1,3}, …, {n-1,n}`.
    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)));
        Graph::new(n.max(1), edges).expect("complete graph is valid")
    }

    /// The star K₁,ₙ₋₁ on `n` vertices with centre vertex 1.
    pub fn star(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidGraph("a star needs at least 2 vertices".into()));
        }
        Graph::new(n, (1..n).map(|i| (0, i)))
    }

    /// Triangle {1,2,4} with leaf 3 hanging off vertex 4.
    pub fn paw() -> Self {
        Graph::from_static(4, &[(4, 1), (1, 2), (2, 4), (4, 3)])
    }

    /// K₄ without the edge {1,2}.
    pub fn k4_minus_e() -> Self {
        Graph::from_static(4, &[(3, 1), (1, 4), (4, 2), (2, 3), (3, 4)])
    }

    /// Two stars K₁,ₚ and K₁,q whose centres are joined.
    ///
    /// Centres are vertices 1 and p+2. Edge order: the p leaf edges of the
    /// first star, the bridge, then the q leaf edges of the second star.
    pub fn double_star(p: usize, q: usize) -> Self {
        let b = p + 1;
        let mut edges: Vec<(usize, usize)> = (1..=p).map(|i| (0, i)).collect();
        edges.push((0, b));
        edges.extend((1..=q).map(|i| (b, b + i)));
        Graph::new(p + q + 2, edges).expect("double star is valid")
    }

    /// Parses a named graph: `P4`, `C5`, `K4`, `K1,3`, `paw`, `K4-e`,
    /// `doublestar 3 3`.
    pub fn from_name(name: &str) -> Result<Self> {
        let compact: String = name.split_whitespace().collect::<Vec<_>>().join(" ");
        let lower = compact.to_ascii_lowercase();
        let bad = || Error::InvalidGraph(format!("unknown graph name '{name}'"));
        let number = |s: &str| s.trim().parse::<usize>().map_err(|_| bad());

        if lower == "paw" {
            return Ok(Graph::paw());
        }
        if lower == "k4-e" || lower == "k4e" {
            return Ok(Graph::k4_minus_e());
        }
        if let Some(rest) = lower.strip_prefix("doublestar") {
            let parts: Vec<&str> = rest
                .split(|c: char| c == ' ' || c == ',')
                .filter(|s| !s.is_empty())
                .collect();
            if parts.len() != 2 {
                return Err(bad());
            }
            return Ok(Graph::double_star(number(parts[0])?, number(parts[1])?));
        }
        if let Some(rest) = lower.strip_prefix("k1,") {
            return Graph::star(number(rest)? + 1);
        }
        if let Some(rest) = lower.strip_prefix('p') {
            let n = number(rest)?;
            if n == 0 {
                return Err(bad());
            }
            return Ok(Graph::path(n));
        }
        if let Some(rest) = lower.strip_prefix('c') {
            return Graph::cycle(number(rest)?);
        }
        if let Some(rest) = lower.strip_prefix('k') {
            let n = number(rest)?;
            if n == 0 {
                return Err(bad());
            }
            return Ok(Graph::complete(n));
        }
        Err(bad())
    }

    /// Parses the "n m" + edge-lines text format.
    pub fn parse_text(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines
            .next()
            .ok_or_else(|| Error::InvalidGraph("empty graph description".into()))?;
        let nums = parse_numbers(header)?;
        let [n, m] = nums[..] else {
            return Err(Error::InvalidGraph(format!("bad header line '{header}'")));
        };
        let mut edges = Vec::with_capacity(m);
        for line in lines.by_ref().take(m) {
            match parse_numbers(line)?[..] {
                [a, b] => edges.push((a, b)),
                _ => return Err(Error::InvalidGraph(format!("bad edge line '{line}'"))),
            }
        }
        if edges.len() != m {
            return Err(Error::InvalidGraph(format!(
                "header announces {m} edges but {} were given",
                edges.len()
            )));
        }
        if lines.next().is_some() {
            return Err(Error::InvalidGraph("trailing lines after edge list".into()));
        }
        Graph::from_one_based(n, edges)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.n, self.edges.len());
        for [a, b] in &self.edges {
            s.push_str(&format!("{} {}\n", a + 1, b + 1));
        }
        s
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[[usize; 2]] {
        &self.edges
    }

    pub fn edge_index(&self, a: usize, b: usize) -> Option<usize> {
        let e = [a.min(b), a.max(b)];
        self.edges.iter().position(|&f| f == e)
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for [a, b] in &self.edges {
            d[*a] += 1;
            d[*b] += 1;
        }
        d
    }

    /// Incident edge indices per vertex, in edge order.
    pub fn incident_edges(&self) -> Vec<Vec<usize>> {
        let mut inc = vec![Vec::new(); self.n];
        for (k, [a, b]) in self.edges.iter().enumerate() {
            inc[*a].push(k);
            inc[*b].push(k);
        }
        inc
    }

    pub fn edges_share_vertex(&self, e: usize, f: usize) -> bool {
        let [a, b] = self.edges[e];
        let [c, d] = self.edges[f];
        e != f && (a == c || a == d || b == c || b == d)
    }

    pub fn component_count(&self) -> usize {
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut count = self.n;
        for [a, b] in &self.edges {
            let (ra, rb) = (find(&mut parent, *a), find(&mut parent, *b));
            if ra != rb {
                parent[ra] = rb;
                count -= 1;
            }
        }
        count
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() == 1
    }

    fn require_connected(&self) -> Result<()> {
        if self.is_connected() {
            Ok(())
        } else {
            Err(Error::Disconnected)
        }
    }

    /// Signed n×m incidence matrix; the column of edge `{i, j}` (i < j) has
    /// `+1` in row i and `-1` in row j.
    pub fn incidence_matrix(&self) -> DMatrix<f64> {
        let mut nm = DMatrix::zeros(self.n, self.m());
        for (k, [a, b]) in self.edges.iter().enumerate() {
            nm[(*a, k)] = 1.0;
            nm[(*b, k)] = -1.0;
        }
        nm
    }

    /// Adjacency matrix of the line graph (edges adjacent iff they share a vertex).
    pub fn line_graph_adjacency(&self) -> DMatrix<f64> {
        let m = self.m();
        let mut adj = DMatrix::zeros(m, m);
        for list in self.incident_edges() {
            for (x, &e) in list.iter().enumerate() {
                for &f in &list[x + 1..] {
                    adj[(e, f)] = 1.0;
                    adj[(f, e)] = 1.0;
                }
            }
        }
        adj
    }

    /// `4I + B` with `B` the line-graph adjacency. Positive definite with
    /// smallest eigenvalue at least 2.
    pub fn m2_matrix(&self) -> Result<DMatrix<f64>> {
        if self.m() == 0 {
            return Err(Error::NoEdges);
        }
        let mut m2 = self.line_graph_adjacency();
        for k in 0..self.m() {
            m2[(k, k)] = 4.0;
        }
        Ok(m2)
    }

    /// `Some(r)` when the line graph is r-regular.
    pub fn line_graph_regularity(&self) -> Option<usize> {
        if self.m() == 0 {
            return None;
        }
        let deg = self.degrees();
        let mut it = self.edges.iter().map(|[a, b]| deg[*a] + deg[*b] - 2);
        let r = it.next()?;
        it.all(|x| x == r).then_some(r)
    }

    /// `D - A`.
    pub fn combinatorial_laplacian(&self) -> DMatrix<f64> {
        let mut l = DMatrix::zeros(self.n, self.n);
        for [a, b] in &self.edges {
            l[(*a, *b)] -= 1.0;
            l[(*b, *a)] -= 1.0;
            l[(*a, *a)] += 1.0;
            l[(*b, *b)] += 1.0;
        }
        l
    }

    fn neighbours(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.n];
        for (k, [a, b]) in self.edges.iter().enumerate() {
            adj[*a].push((*b, k));
            adj[*b].push((*a, k));
        }
        adj
    }

    /// BFS 2-colouring. `None` if an odd cycle is found.
    pub fn bipartition(&self) -> Result<Option<Bipartition>> {
        self.require_connected()?;
        let adj = self.neighbours();
        let mut colour: Vec<Option<bool>> = vec![None; self.n];
        colour[0] = Some(false);
        let mut queue = VecDeque::from([0]);
        while let Some(v) = queue.pop_front() {
            let c = colour[v].expect("queued vertices are coloured");
            for &(u, _) in &adj[v] {
                match colour[u] {
                    None => {
                        colour[u] = Some(!c);
                        queue.push_back(u);
                    }
                    Some(cu) if cu == c => return Ok(None),
                    Some(_) => {}
                }
            }
        }
        let (mut left, mut right) = (Vec::new(), Vec::new());
        for (v, c) in colour.into_iter().enumerate() {
            if c == Some(false) {
                left.push(v);
            } else {
                right.push(v);
            }
        }
        Ok(Some(Bipartition { left, right }))
    }

    /// BFS spanning tree from vertex 1, scanning incident edges in index
    /// order. Returns the n−1 tree edge indices in discovery order.
    pub fn spanning_tree(&self) -> Result<Vec<usize>> {
        self.require_connected()?;
        let inc = self.incident_edges();
        let mut seen = vec![false; self.n];
        seen[0] = true;
        let mut queue = VecDeque::from([0]);
        let mut tree = Vec::with_capacity(self.n - 1);
        while let Some(v) = queue.pop_front() {
            for &k in &inc[v] {
                let [a, b] = self.edges[k];
                let u = if a == v { b } else { a };
                if !seen[u] {
                    seen[u] = true;
                    tree.push(k);
                    queue.push_back(u);
                }
            }
        }
        Ok(tree)
    }
}

fn parse_numbers(line: &str) -> Result<Vec<usize>> {
    line.split_whitespace()
        .map(|t| {
            t.parse::<usize>()
                .map_err(|_| Error::InvalidGraph(format!("expected an integer, got '{t}'")))
        })
        .collect()
}

impl FromStr for Graph {
    type Err = Error;

    /// Accepts either a graph name or the text format.
    fn from_str(s: &str) -> Result<Self> {
        if s.trim().lines().count() > 1 {
            Graph::parse_text(s)
        } else {
            Graph::from_name(s)
        }
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "graph(n={}, edges=[", self.n)?;
        for (k, [a, b]) in self.edges.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}-{}", a + 1, b + 1)?;
        }
        write!(f, "])")
    }
}

/// All connected graphs on `n` vertices up to isomorphism, each in the
/// canonical labelling that minimises its edge bitmask. `n ≤ 7`.
pub fn connected_graphs(n: usize) -> Vec<Graph> {
    assert!((1..=7).contains(&n), "enumeration supports 1..=7 vertices");
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let mut pair_index = vec![vec![0usize; n]; n];
    for (k, &(i, j)) in pairs.iter().enumerate() {
        pair_index[i][j] = k;
        pair_index[j][i] = k;
    }
    let perms = permutations(n);
    let mut canon = std::collections::BTreeSet::new();
    for mask in 0u64..(1u64 << pairs.len()) {
        let edges: Vec<(usize, usize)> = pairs
            .iter()
            .enumerate()
            .filter(|(k, _)| mask >> k & 1 == 1)
            .map(|(_, &p)| p)
            .collect();
        if !Graph::new(n, edges.iter().copied()).map(|g| g.is_connected()).unwrap_or(false) {
            continue;
        }
        let best = perms
            .iter()
            .map(|p| {
                edges
                    .iter()
                    .fold(0u64, |acc, &(i, j)| acc | 1 << pair_index[p[i]][p[j]])
            })
            .min()
            .expect("at least one permutation");
        canon.insert(best);
    }
    canon
        .into_iter()
        .map(|mask| {
            let edges = pairs
                .iter()
                .enumerate()
                .filter(|(k, _)| mask >> k & 1 == 1)
                .map(|(_, &p)| p);
            Graph::new(n, edges).expect("enumerated graph is valid")
        })
        .collect()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                prefix.push(v);
                rec(prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}
