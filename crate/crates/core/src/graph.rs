//! Simple undirected graphs on at most 63 vertices, stored as one neighbor
//! bitmask per vertex.

use std::fmt;
use std::ops::{BitAnd, BitOr, Not, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported vertex count. Every vertex set fits in one `u64`.
pub const MAX_VERTICES: usize = 63;

/// A set of vertices encoded as a bitmask.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    #[inline]
    pub const fn from_bits(bits: u64) -> Self {
        VertexSet(bits)
    }

    #[inline]
    pub const fn bits(self) -> u64 {
        self.0
    }

    /// `{0, 1, ..., n-1}`.
    #[inline]
    pub const fn full(n: usize) -> Self {
        if n >= 64 {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    #[inline]
    pub const fn singleton(v: usize) -> Self {
        VertexSet(1u64 << v)
    }

    #[inline]
    pub const fn contains(self, v: usize) -> bool {
        v < 64 && self.0 >> v & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, v: usize) {
        self.0 |= 1u64 << v;
    }

    #[inline]
    pub fn remove(&mut self, v: usize) {
        self.0 &= !(1u64 << v);
    }

    #[inline]
    pub const fn with(self, v: usize) -> Self {
        VertexSet(self.0 | 1u64 << v)
    }

    #[inline]
    pub const fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub const fn is_subset(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub const fn is_disjoint(self, other: VertexSet) -> bool {
        self.0 & other.0 == 0
    }

    /// Least vertex in the set.
    #[inline]
    pub const fn first(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as usize)
        }
    }

    /// The single element, if the set has exactly one.
    #[inline]
    pub const fn only(self) -> Option<usize> {
        if self.0 != 0 && self.0 & (self.0 - 1) == 0 {
            Some(self.0.trailing_zeros() as usize)
        } else {
            None
        }
    }

    /// Vertices in increasing order.
    pub fn iter(self) -> Iter {
        Iter(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut set = VertexSet::EMPTY;
        for v in iter {
            set.insert(v);
        }
        set
    }
}

impl BitOr for VertexSet {
    type Output = VertexSet;
    #[inline]
    fn bitor(self, rhs: Self) -> Self {
        VertexSet(self.0 | rhs.0)
    }
}

impl BitAnd for VertexSet {
    type Output = VertexSet;
    #[inline]
    fn bitand(self, rhs: Self) -> Self {
        VertexSet(self.0 & rhs.0)
    }
}

impl Sub for VertexSet {
    type Output = VertexSet;
    #[inline]
    fn sub(self, rhs: Self) -> Self {
        VertexSet(self.0 & !rhs.0)
    }
}

impl Not for VertexSet {
    type Output = VertexSet;
    #[inline]
    fn not(self) -> Self {
        VertexSet(!self.0)
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("}")
    }
}

impl Serialize for VertexSet {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for VertexSet {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let vertices = Vec::<usize>::deserialize(deserializer)?;
        if let Some(&v) = vertices.iter().find(|&&v| v >= MAX_VERTICES) {
            return Err(serde::de::Error::custom(format!("vertex {v} out of range")));
        }
        Ok(vertices.into_iter().collect())
    }
}

pub struct Iter(u64);

impl Iterator for Iter {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Iter {}

/// A simple undirected graph. `adj[v]` holds the neighbors of `v`.
///
/// Invariants: no loops, symmetric adjacency, no bits at or above `n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_VERTICES {
            return Err(Error::VertexCount { got: n });
        }
        Ok(Graph { n, adj: vec![0; n] })
    }

    /// Builds a graph from an edge list, rejecting loops, repeated edges and
    /// out-of-range endpoints.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::empty(n)?;
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Builds a graph from raw neighbor masks, checking every invariant.
    pub fn from_adjacency(adj: Vec<u64>) -> Result<Self> {
        let n = adj.len();
        let g = Graph::empty(n)?;
        let mask = VertexSet::full(n).bits();
        for (v, &row) in adj.iter().enumerate() {
            if row >> v & 1 == 1 {
                return Err(Error::Loop(v));
            }
            if row & !mask != 0 {
                let vertex = (row & !mask).trailing_zeros() as usize;
                return Err(Error::VertexOutOfRange { vertex, n });
            }
            for u in VertexSet::from_bits(row).iter() {
                if adj[u] >> v & 1 == 0 {
                    return Err(Error::Parse {
                        line: 0,
                        message: format!("asymmetric adjacency between {v} and {u}"),
                    });
                }
            }
        }
        Ok(Graph { adj, ..g })
    }

    fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        for w in [u, v] {
            if w >= self.n {
                return Err(Error::VertexOutOfRange {
                    vertex: w,
                    n: self.n,
                });
            }
        }
        if u == v {
            return Err(Error::Loop(u));
        }
        if self.has_edge(u, v) {
            return Err(Error::DuplicateEdge(u.min(v), u.max(v)));
        }
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
        Ok(())
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> VertexSet {
        VertexSet(self.adj[v])
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u] >> v & 1 == 1
    }

    pub fn adjacency(&self) -> &[u64] {
        &self.adj
    }

    pub fn edge_count(&self) -> usize {
        self.adj
            .iter()
            .map(|row| row.count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    /// Edges `(u, v)` with `u < v`, sorted lexicographically.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            VertexSet(self.adj[u] & !((2u64 << u) - 1))
                .iter()
                .map(move |v| (u, v))
        })
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    pub fn has_isolated_vertex(&self) -> bool {
        self.adj.contains(&0)
    }

    /// Connected components of the whole graph, ordered by least vertex.
    pub fn connected_components(&self) -> Vec<VertexSet> {
        self.components_within(self.vertices())
    }

    /// Connected components of the subgraph induced by `within`, ordered by
    /// least vertex.
    pub fn components_within(&self, within: VertexSet) -> Vec<VertexSet> {
        let mut rest = within & self.vertices();
        let mut blocks = Vec::new();
        while let Some(root) = rest.first() {
            let block = self.reach(root, rest);
            blocks.push(block);
            rest = rest - block;
        }
        blocks
    }

    /// Vertices reachable from `root` inside `within`.
    pub fn reach(&self, root: usize, within: VertexSet) -> VertexSet {
        let mut seen = VertexSet::singleton(root);
        let mut frontier = seen;
        while !frontier.is_empty() {
            let mut next = VertexSet::EMPTY;
            for v in frontier.iter() {
                next = next | self.neighbors(v);
            }
            frontier = next & (within - seen);
            seen = seen | frontier;
        }
        seen
    }

    pub fn is_connected(&self) -> bool {
        self.reach(0, self.vertices()) == self.vertices()
    }

    /// True iff the graph is connected with exactly `n - 1` edges.
    pub fn is_tree(&self) -> bool {
        self.edge_count() + 1 == self.n && self.is_connected()
    }

    /// True iff the graph is connected and 2-regular on at least 3 vertices.
    pub fn is_cycle(&self) -> bool {
        self.n >= 3 && self.adj.iter().all(|row| row.count_ones() == 2) && self.is_connected()
    }

    /// True iff every pair of vertices is adjacent.
    pub fn is_complete(&self) -> bool {
        self.edge_count() == self.n * (self.n - 1) / 2
    }

    /// Unordered pairs `{u, v}` (`u < v`) forming a module of order 2, that
    /// is `N(u) \ {v} = N(v) \ {u}`. The flag is `true` when `uv` is an edge.
    pub fn modules_of_order_two(&self) -> Vec<(usize, usize, bool)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in u + 1..self.n {
                let nu = self.adj[u] & !(1 << v);
                let nv = self.adj[v] & !(1 << u);
                if nu == nv {
                    out.push((u, v, self.has_edge(u, v)));
                }
            }
        }
        out
    }

    /// Relabels `other` after `self`; no edges between the parts.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph> {
        let n = self.n + other.n;
        if n > MAX_VERTICES {
            return Err(Error::VertexCount { got: n });
        }
        let shift = self.n;
        let mut adj = self.adj.clone();
        adj.extend(other.adj.iter().map(|row| row << shift));
        Ok(Graph { n, adj })
    }

    /// The subgraph induced by `keep`, relabeled `0..|keep|` in increasing
    /// order of the original labels.
    pub fn induced_subgraph(&self, keep: VertexSet) -> Result<Graph> {
        let keep = keep & self.vertices();
        let order = keep.to_vec();
        let mut g = Graph::empty(order.len())?;
        for (i, &u) in order.iter().enumerate() {
            for (j, &v) in order.iter().enumerate() {
                if self.has_edge(u, v) {
                    g.adj[i] |= 1 << j;
                }
            }
        }
        Ok(g)
    }

    /// Parses the edge-list format: a header `n m` followed by `m` lines
    /// `u v` with 0-based endpoints. Blank lines and `#` comments are ignored.
    pub fn parse_edge_list(text: &str) -> Result<Graph> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, line)| (i + 1, line.split('#').next().unwrap_or("").trim()))
            .filter(|(_, line)| !line.is_empty());

        let (header_line, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            message: "missing header `n m`".into(),
        })?;
        let [n, m] = parse_pair(header_line, header, "header `n m`")?;
        if n == 0 || n > MAX_VERTICES {
            return Err(Error::VertexCount { got: n });
        }

        let mut g = Graph::empty(n)?;
        let mut seen = 0;
        for (line_no, line) in lines {
            if seen == m {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("more than the {m} edges announced in the header"),
                });
            }
            let [u, v] = parse_pair(line_no, line, "edge `u v`")?;
            g.add_edge(u, v)?;
            seen += 1;
        }
        if seen != m {
            return Err(Error::Parse {
                line: text.lines().count().max(1),
                message: format!("header announces {m} edges, found {seen}"),
            });
        }
        Ok(g)
    }

    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{} {}\n", self.n, self.edge_count());
        for (u, v) in self.edges() {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }
}

fn parse_pair(line: usize, text: &str, what: &str) -> Result<[usize; 2]> {
    let bad = || Error::Parse {
        line,
        message: format!("expected {what}, got `{text}`"),
    };
    let mut fields = text.split_whitespace();
    let a = fields.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
    let b = fields.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
    if fields.next().is_some() {
        return Err(bad());
    }
    Ok([a, b])
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|v| (v - 1, v))).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).map(|v| (v, (v + 1) % n))).unwrap()
    }

    fn complete(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).unwrap()
    }

    #[test]
    fn vertex_set_basics() {
        let s: VertexSet = [0, 3, 5].into_iter().collect();
        assert_eq!(s.len(), 3);
        assert!(s.contains(3) && !s.contains(4));
        assert_eq!(s.to_vec(), vec![0, 3, 5]);
        assert_eq!(s.first(), Some(0));
        assert_eq!(VertexSet::singleton(7).only(), Some(7));
        assert_eq!(s.only(), None);
        assert_eq!(VertexSet::full(63).len(), 63);
        assert_eq!(s.to_string(), "{0,3,5}");
    }

    #[test]
    fn rejects_bad_edges() {
        assert_eq!(Graph::from_edges(2, [(0, 0)]), Err(Error::Loop(0)));
        assert_eq!(
            Graph::from_edges(2, [(0, 1), (1, 0)]),
            Err(Error::DuplicateEdge(0, 1))
        );
        assert!(matches!(
            Graph::from_edges(2, [(0, 2)]),
            Err(Error::VertexOutOfRange { vertex: 2, n: 2 })
        ));
        assert!(Graph::empty(0).is_err());
        assert!(Graph::empty(64).is_err());
        assert!(Graph::empty(63).is_ok());
    }

    #[test]
    fn disjoint_union_examples() {
        let p2 = path(2);
        let two_p2 = p2.disjoint_union(&p2).unwrap();
        assert_eq!((two_p2.order(), two_p2.edge_count()), (4, 2));
        assert_eq!(two_p2.connected_components().len(), 2);

        let k1 = Graph::empty(1).unwrap();
        let k1k1 = k1.disjoint_union(&k1).unwrap();
        assert_eq!(k1k1, Graph::empty(2).unwrap());

        let g = cycle(3).disjoint_union(&p2).unwrap();
        assert_eq!((g.order(), g.edge_count()), (5, 4));
        assert!(g.has_edge(3, 4) && !g.has_edge(2, 3));

        let big = Graph::empty(40).unwrap();
        assert!(big.disjoint_union(&big).is_err());
    }

    #[test]
    fn component_examples() {
        assert_eq!(cycle(5).connected_components(), vec![VertexSet::full(5)]);
        let k3bar = Graph::empty(3).unwrap();
        assert_eq!(
            k3bar.connected_components(),
            (0..3).map(VertexSet::singleton).collect::<Vec<_>>()
        );
        let g = cycle(3).disjoint_union(&path(2)).unwrap();
        let sizes: Vec<_> = g.connected_components().iter().map(|c| c.len()).collect();
        assert_eq!(sizes, vec![3, 2]);
    }

    #[test]
    fn components_within_examples() {
        let c4 = cycle(4);
        let white: VertexSet = [0, 2].into_iter().collect();
        assert_eq!(
            c4.components_within(white),
            vec![VertexSet::singleton(0), VertexSet::singleton(2)]
        );
        let p4 = path(4);
        assert_eq!(p4.components_within(p4.vertices()).len(), 1);
        let k4 = complete(4);
        let white: VertexSet = [1, 2, 3].into_iter().collect();
        assert_eq!(k4.components_within(white), vec![white]);
    }

    #[test]
    fn module_examples() {
        assert_eq!(
            complete(3).modules_of_order_two(),
            vec![(0, 1, true), (0, 2, true), (1, 2, true)]
        );
        let k22 = cycle(4);
        assert_eq!(
            k22.modules_of_order_two(),
            vec![(0, 2, false), (1, 3, false)]
        );
        assert!(path(4).modules_of_order_two().is_empty());
    }

    #[test]
    fn tree_examples() {
        assert!(path(5).is_tree());
        assert!(!cycle(4).is_tree());
        assert!(Graph::empty(1).unwrap().is_tree());
        assert!(!Graph::empty(2).unwrap().is_tree());
        assert!(cycle(3).is_cycle() && complete(3).is_cycle());
        assert!(!path(3).is_cycle());
    }

    #[test]
    fn parse_examples() {
        assert_eq!(Graph::parse_edge_list("2 1\n0 1").unwrap(), path(2));
        assert_eq!(
            Graph::parse_edge_list("3 3\n0 1\n1 2\n0 2").unwrap(),
            complete(3)
        );
        assert_eq!(Graph::parse_edge_list("2 1\n0 0"), Err(Error::Loop(0)));
        assert!(matches!(
            Graph::parse_edge_list("3 2\n0 1\n1 0"),
            Err(Error::DuplicateEdge(0, 1))
        ));
        assert!(matches!(
            Graph::parse_edge_list("3 1\n0 3"),
            Err(Error::VertexOutOfRange { .. })
        ));
        assert!(matches!(
            Graph::parse_edge_list("three 1\n0 1"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            Graph::parse_edge_list("3 2\n0 1"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            Graph::parse_edge_list(""),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            Graph::parse_edge_list("0 0"),
            Err(Error::VertexCount { got: 0 })
        ));
        let commented = "# a triangle\n3 3\n0 1\n\n1 2 # rim\n0 2\n";
        assert_eq!(Graph::parse_edge_list(commented).unwrap(), complete(3));
    }

    #[test]
    fn serialize_is_canonical() {
        assert_eq!(cycle(4).to_edge_list(), "4 4\n0 1\n0 3\n1 2\n2 3\n");
    }

    #[test]
    fn induced_subgraph_relabels() {
        let c5 = cycle(5);
        let keep: VertexSet = [1, 2, 3].into_iter().collect();
        assert_eq!(c5.induced_subgraph(keep).unwrap(), path(3));
    }
}
