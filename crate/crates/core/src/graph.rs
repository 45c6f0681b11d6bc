//! Simple undirected graphs on vertices `0..n`, stored as bit rows.

use std::fmt;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};

/// An unordered vertex pair, normalized so that `u < v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
}

impl Edge {
    /// Normalizes the endpoint order. Panics on a loop.
    pub fn new(a: usize, b: usize) -> Self {
        assert_ne!(a, b, "loop edge {a}-{a}");
        if a < b {
            Edge { u: a, v: b }
        } else {
            Edge { u: b, v: a }
        }
    }

    pub fn try_new(a: usize, b: usize) -> Result<Self> {
        if a == b {
            return Err(Error::input(format!("loop at vertex {a}")));
        }
        Ok(Edge::new(a, b))
    }

    pub fn contains(&self, x: usize) -> bool {
        self.u == x || self.v == x
    }

    /// True when the two pairs share exactly one endpoint.
    pub fn meets(&self, other: &Edge) -> bool {
        self != other
            && (self.u == other.u || self.u == other.v || self.v == other.u || self.v == other.v)
    }

    pub fn is_disjoint(&self, other: &Edge) -> bool {
        !self.contains(other.u) && !self.contains(other.v)
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.u, self.v)
    }
}

/// A vertex of a line graph: an edge `{u, v}` of the base graph.
pub type LineVertex = Edge;

/// Position of the pair `{u, v}` in the lexicographic list of all pairs of
/// `0..n`, i.e. the vertex id of `uv` in `L(K_n)`.
pub fn pair_rank(n: usize, u: usize, v: usize) -> usize {
    let (u, v) = if u < v { (u, v) } else { (v, u) };
    debug_assert!(v < n);
    u * n - u * (u + 1) / 2 + (v - u - 1)
}

/// Inverse of [`pair_rank`].
pub fn pair_unrank(n: usize, mut rank: usize) -> Edge {
    let mut u = 0;
    loop {
        let row = n - u - 1;
        if rank < row {
            return Edge::new(u, u + 1 + rank);
        }
        rank -= row;
        u += 1;
    }
}

pub fn choose2(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

#[derive(Clone)]
pub struct Graph {
    n: usize,
    rows: Vec<FixedBitSet>,
    labels: Option<Vec<String>>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.rows == other.rows
    }
}

impl Eq for Graph {}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges())
            .finish()
    }
}

impl Graph {
    pub fn edgeless(n: usize) -> Self {
        Graph {
            n,
            rows: vec![FixedBitSet::with_capacity(n); n],
            labels: None,
        }
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::edgeless(n);
        for (a, b) in edges {
            if a >= n || b >= n {
                return Err(Error::input(format!(
                    "edge {a}-{b} out of range for {n} vertices"
                )));
            }
            let e = Edge::try_new(a, b)?;
            g.add_edge(e);
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::edgeless(n);
        for (v, row) in g.rows.iter_mut().enumerate() {
            row.insert_range(..);
            row.remove(v);
        }
        g
    }

    pub fn cycle(n: usize) -> Self {
        let mut g = Graph::edgeless(n);
        if n >= 3 {
            for v in 0..n {
                g.add_edge(Edge::new(v, (v + 1) % n));
            }
        }
        g
    }

    pub fn path(n: usize) -> Self {
        let mut g = Graph::edgeless(n);
        for v in 1..n {
            g.add_edge(Edge::new(v - 1, v));
        }
        g
    }

    /// `K(n, 2)`, realized as the complement of `L(K_n)`; vertex `i` is the
    /// `i`-th 2-subset of `0..n` in lexicographic order.
    pub fn kneser_2(n: usize) -> Result<Self> {
        if n < 5 {
            return Err(Error::input(format!(
                "KG(n,2) needs n >= 5, got n = {n}"
            )));
        }
        Ok(Graph::complete(n).line_graph().complement())
    }

    pub(crate) fn add_edge(&mut self, e: Edge) {
        self.rows[e.u].insert(e.v);
        self.rows[e.v].insert(e.u);
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.n {
            return Err(Error::input(format!(
                "{} labels for {} vertices",
                labels.len(),
                self.n
            )));
        }
        let mut sorted: Vec<&String> = labels.iter().collect();
        sorted.sort();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::input("vertex labels are not distinct"));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones(..)).sum::<usize>() / 2
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.rows[u].contains(v)
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &FixedBitSet {
        &self.rows[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].count_ones(..)
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn is_complete(&self) -> bool {
        self.edge_count() == choose2(self.n)
    }

    /// All edges, lexicographically sorted.
    pub fn edges(&self) -> Vec<Edge> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            for v in self.rows[u].ones().filter(|&v| v > u) {
                out.push(Edge { u, v });
            }
        }
        out
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, v: usize) -> String {
        match &self.labels {
            Some(labels) => labels[v].clone(),
            None => v.to_string(),
        }
    }

    pub fn complement(&self) -> Graph {
        let mut g = Graph::edgeless(self.n);
        for v in 0..self.n {
            let mut row = self.rows[v].clone();
            row.toggle_range(..);
            row.remove(v);
            g.rows[v] = row;
        }
        g.labels = self.labels.clone();
        g
    }

    /// `L(G)`: one vertex per edge of `self` in lexicographic order, labeled
    /// `u-v`; adjacent iff the edges share an endpoint.
    pub fn line_graph(&self) -> Graph {
        let edges = self.edges();
        let m = edges.len();
        let mut incident: Vec<Vec<usize>> = vec![Vec::new(); self.n];
        for (i, e) in edges.iter().enumerate() {
            incident[e.u].push(i);
            incident[e.v].push(i);
        }
        let mut g = Graph::edgeless(m);
        for star in &incident {
            for (k, &i) in star.iter().enumerate() {
                for &j in &star[k + 1..] {
                    g.add_edge(Edge::new(i, j));
                }
            }
        }
        g.labels = Some(edges.iter().map(|e| e.to_string()).collect());
        g
    }

    /// Subgraph induced by `vertices`, relabeled `0..k` in increasing order of
    /// the original ids. Original labels (or ids) are kept as labels.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Result<Graph> {
        let mut keep: Vec<usize> = vertices.to_vec();
        keep.sort_unstable();
        keep.dedup();
        if let Some(&bad) = keep.iter().find(|&&v| v >= self.n) {
            return Err(Error::input(format!(
                "vertex {bad} out of range for {} vertices",
                self.n
            )));
        }
        let mut g = Graph::edgeless(keep.len());
        for (i, &a) in keep.iter().enumerate() {
            for (j, &b) in keep.iter().enumerate().skip(i + 1) {
                if self.rows[a].contains(b) {
                    g.add_edge(Edge::new(i, j));
                }
            }
        }
        g.labels = Some(keep.iter().map(|&v| self.label(v)).collect());
        Ok(g)
    }

    /// Removes one vertex; convenience over [`Graph::induced_subgraph`].
    pub fn without_vertices(&self, drop: &[usize]) -> Result<Graph> {
        let keep: Vec<usize> = (0..self.n).filter(|v| !drop.contains(v)).collect();
        self.induced_subgraph(&keep)
    }

    /// Parses the edge-list format: a header `n m`, then `m` lines `u v`.
    /// Lines starting with `#` and blank lines are ignored.
    pub fn parse_edge_list(text: &str) -> Result<Graph> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

        let (header_line, header) = lines
            .next()
            .ok_or_else(|| Error::parse(1, "missing header \"n m\""))?;
        let header = parse_numbers(header_line, header)?;
        let [n, m] = header[..] else {
            return Err(Error::parse(header_line, "header must be \"n m\""));
        };

        let mut g = Graph::edgeless(n);
        let mut seen = 0;
        for (line, body) in lines {
            let nums = parse_numbers(line, body)?;
            let [a, b] = nums[..] else {
                return Err(Error::parse(line, "edge line must be \"u v\""));
            };
            if a == b {
                return Err(Error::parse(line, format!("loop at vertex {a}")));
            }
            if a >= n || b >= n {
                return Err(Error::parse(
                    line,
                    format!("vertex id out of range for n = {n}"),
                ));
            }
            g.add_edge(Edge::new(a, b));
            seen += 1;
        }
        if seen != m {
            return Err(Error::parse(
                header_line,
                format!("header announces {m} edges, found {seen}"),
            ));
        }
        Ok(g)
    }

    /// Canonical edge-list text: header, then edges in lexicographic order.
    pub fn to_edge_list(&self) -> String {
        let edges = self.edges();
        let mut out = format!("{} {}\n", self.n, edges.len());
        for e in edges {
            out.push_str(&format!("{} {}\n", e.u, e.v));
        }
        out
    }
}

fn parse_numbers(line: usize, body: &str) -> Result<Vec<usize>> {
    body.split_whitespace()
        .map(|tok| {
            tok.parse::<usize>()
                .map_err(|_| Error::parse(line, format!("not a vertex id: {tok:?}")))
        })
        .collect()
}
