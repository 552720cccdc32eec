//! Bit-adjacency simple graphs and vertex-weighted graphs.

use std::fmt;

use crate::error::{input, KsfError, Result};

/// Largest supported vertex count; every row fits in one `u64` and the
/// graph6 size header is a single byte.
pub const MAX_VERTICES: usize = 62;

/// Simple undirected graph on vertices `0..n`, stored as one adjacency mask per vertex.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

pub(crate) fn check_capacity(n: usize) -> Result<()> {
    if n > MAX_VERTICES {
        return Err(KsfError::Capacity {
            what: "vertex count",
            got: n,
            limit: MAX_VERTICES,
        });
    }
    Ok(())
}

#[inline]
pub(crate) fn full_mask(n: usize) -> u64 {
    if n == 0 {
        0
    } else {
        u64::MAX >> (64 - n)
    }
}

/// Packs the bits of `value` selected by `mask` into the low bits, in ascending order.
#[inline]
pub(crate) fn compress_bits(value: u64, mask: u64) -> u64 {
    let mut out = 0u64;
    let mut m = mask;
    let mut k = 0;
    while m != 0 {
        let b = m.trailing_zeros();
        if value >> b & 1 == 1 {
            out |= 1 << k;
        }
        k += 1;
        m &= m - 1;
    }
    out
}

/// Iterates the set bits of a mask in ascending order.
pub(crate) fn bits(mut m: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let b = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(b)
        }
    })
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self> {
        check_capacity(n)?;
        Ok(Graph { n, adj: vec![0; n] })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        for &(a, b) in edges {
            if a >= n || b >= n {
                return input(format!("edge ({a},{b}) has an endpoint outside 0..{n}"));
            }
            if a == b {
                return input(format!("self-loop at vertex {a}"));
            }
            g.set_edge(a, b, true);
        }
        Ok(g)
    }

    /// Builds a graph from adjacency rows, validating symmetry and irreflexivity.
    pub fn from_rows(rows: Vec<u64>) -> Result<Self> {
        let n = rows.len();
        check_capacity(n)?;
        let full = full_mask(n);
        for (i, &r) in rows.iter().enumerate() {
            if r & !full != 0 {
                return input(format!("row {i} has bits beyond vertex {n}"));
            }
            if r >> i & 1 == 1 {
                return input(format!("self-loop at vertex {i}"));
            }
            for j in bits(r) {
                if rows[j] >> i & 1 == 0 {
                    return input(format!("adjacency not symmetric at ({i},{j})"));
                }
            }
        }
        Ok(Graph { n, adj: rows })
    }

    pub(crate) fn from_rows_unchecked(rows: Vec<u64>) -> Self {
        Graph {
            n: rows.len(),
            adj: rows,
        }
    }

    pub fn complete(n: usize) -> Result<Self> {
        check_capacity(n)?;
        let full = full_mask(n);
        Ok(Graph {
            n,
            adj: (0..n).map(|i| full & !(1 << i)).collect(),
        })
    }

    pub fn path(n: usize) -> Result<Self> {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges)
    }

    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return input("a cycle needs at least 3 vertices");
        }
        let mut edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        edges.push((n - 1, 0));
        Graph::from_edges(n, &edges)
    }

    /// The star `K_{1,leaves}` with center 0.
    pub fn star(leaves: usize) -> Result<Self> {
        let edges: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
        Graph::from_edges(leaves + 1, &edges)
    }

    /// The claw `K_{1,3}`, center 0.
    pub fn claw() -> Self {
        Graph::star(3).expect("claw fits")
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn rows(&self) -> &[u64] {
        &self.adj
    }

    #[inline]
    pub fn row(&self, v: usize) -> u64 {
        self.adj[v]
    }

    #[inline]
    pub fn vertex_mask(&self) -> u64 {
        full_mask(self.n)
    }

    #[inline]
    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a] >> b & 1 == 1
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges `(i, j)` with `i < j`, ordered by `(i, j)`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for i in 0..self.n {
            for j in bits(self.adj[i] >> (i + 1)) {
                out.push((i, i + 1 + j));
            }
        }
        out
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = (0..self.n).map(|v| self.degree(v)).collect();
        d.sort_unstable_by(|a, b| b.cmp(a));
        d
    }

    pub(crate) fn set_edge(&mut self, a: usize, b: usize, on: bool) {
        if on {
            self.adj[a] |= 1 << b;
            self.adj[b] |= 1 << a;
        } else {
            self.adj[a] &= !(1 << b);
            self.adj[b] &= !(1 << a);
        }
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n {
            return input(format!("vertex {v} out of range 0..{}", self.n));
        }
        Ok(())
    }

    /// Copy of the graph with edge `ab` added (`G ∪ ab`).
    pub fn with_edge(&self, a: usize, b: usize) -> Result<Self> {
        self.check_vertex(a)?;
        self.check_vertex(b)?;
        if a == b {
            return input(format!("self-loop at vertex {a}"));
        }
        let mut g = self.clone();
        g.set_edge(a, b, true);
        Ok(g)
    }

    /// Copy of the graph with edge `ab` removed.
    pub fn without_edge(&self, a: usize, b: usize) -> Result<Self> {
        self.check_vertex(a)?;
        self.check_vertex(b)?;
        let mut g = self.clone();
        g.set_edge(a, b, false);
        Ok(g)
    }

    /// Subgraph induced by the vertices in `set`, relabelled in ascending order.
    pub fn induced_subgraph(&self, set: u64) -> Result<Self> {
        if set & !self.vertex_mask() != 0 {
            return input(format!("vertex set {set:#x} exceeds 0..{}", self.n));
        }
        Ok(self.induced_unchecked(set))
    }

    pub(crate) fn induced_unchecked(&self, set: u64) -> Self {
        let rows = bits(set).map(|v| compress_bits(self.adj[v], set)).collect();
        Graph::from_rows_unchecked(rows)
    }

    pub fn induced_by(&self, vertices: &[usize]) -> Result<Self> {
        let mut set = 0u64;
        for &v in vertices {
            self.check_vertex(v)?;
            set |= 1 << v;
        }
        Ok(self.induced_unchecked(set))
    }

    pub fn delete_vertex(&self, v: usize) -> Result<Self> {
        self.check_vertex(v)?;
        Ok(self.induced_unchecked(self.vertex_mask() & !(1 << v)))
    }

    pub fn delete_vertices(&self, vs: &[usize]) -> Result<Self> {
        let mut set = self.vertex_mask();
        for &v in vs {
            self.check_vertex(v)?;
            set &= !(1 << v);
        }
        Ok(self.induced_unchecked(set))
    }

    /// `G ⊔ H`: vertices of `self` first, no cross edges.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Self> {
        self.combine(other, false)
    }

    /// `G ⊙ H`: the disjoint union plus every cross edge.
    pub fn join(&self, other: &Graph) -> Result<Self> {
        self.combine(other, true)
    }

    fn combine(&self, other: &Graph, cross: bool) -> Result<Self> {
        let n = self.n + other.n;
        check_capacity(n)?;
        let lo = full_mask(self.n);
        let hi = full_mask(n) & !lo;
        let mut rows = Vec::with_capacity(n);
        rows.extend(self.adj.iter().map(|&r| r | if cross { hi } else { 0 }));
        rows.extend(
            other
                .adj
                .iter()
                .map(|&r| r << self.n | if cross { lo } else { 0 }),
        );
        Ok(Graph::from_rows_unchecked(rows))
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.n {
            return input("permutation length differs from the vertex count");
        }
        let mut seen = 0u64;
        for &p in perm {
            if p >= self.n || seen >> p & 1 == 1 {
                return input("not a permutation");
            }
            seen |= 1 << p;
        }
        Ok(self.relabel_unchecked(perm))
    }

    pub(crate) fn relabel_unchecked(&self, perm: &[usize]) -> Self {
        let mut rows = vec![0u64; self.n];
        for v in 0..self.n {
            let mut r = 0u64;
            for u in bits(self.adj[v]) {
                r |= 1 << perm[u];
            }
            rows[perm[v]] = r;
        }
        Graph::from_rows_unchecked(rows)
    }

    /// Whether `set` contains no edge.
    #[inline]
    pub fn is_stable(&self, set: u64) -> bool {
        bits(set).all(|v| self.adj[v] & set == 0)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

/// A graph together with positive integer vertex weights.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct WeightedGraph {
    graph: Graph,
    weights: Vec<u32>,
}

impl WeightedGraph {
    pub fn new(graph: Graph, weights: Vec<u32>) -> Result<Self> {
        if weights.len() != graph.n() {
            return input(format!(
                "{} weights given for {} vertices",
                weights.len(),
                graph.n()
            ));
        }
        if weights.contains(&0) {
            return input("vertex weights must be positive");
        }
        Ok(WeightedGraph { graph, weights })
    }

    /// All weights equal to 1.
    pub fn unit(graph: Graph) -> Self {
        let weights = vec![1; graph.n()];
        WeightedGraph { graph, weights }
    }

    /// The weighted complete graph `K_λ`: one vertex per part, weighted by the part.
    pub fn complete_weighted(parts: &[u32]) -> Result<Self> {
        WeightedGraph::new(Graph::complete(parts.len())?, parts.to_vec())
    }

    #[inline]
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    #[inline]
    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn total_weight(&self) -> usize {
        self.weights.iter().map(|&w| w as usize).sum()
    }

    #[inline]
    pub fn weight_of(&self, set: u64) -> usize {
        bits(set).map(|v| self.weights[v] as usize).sum()
    }

    pub fn delete_vertex(&self, v: usize) -> Result<Self> {
        let graph = self.graph.delete_vertex(v)?;
        let mut weights = self.weights.clone();
        weights.remove(v);
        Ok(WeightedGraph { graph, weights })
    }

    pub fn disjoint_union(&self, other: &WeightedGraph) -> Result<Self> {
        let graph = self.graph.disjoint_union(&other.graph)?;
        Ok(WeightedGraph {
            graph,
            weights: [self.weights.as_slice(), other.weights.as_slice()].concat(),
        })
    }

    pub fn join(&self, other: &WeightedGraph) -> Result<Self> {
        let graph = self.graph.join(&other.graph)?;
        Ok(WeightedGraph {
            graph,
            weights: [self.weights.as_slice(), other.weights.as_slice()].concat(),
        })
    }

    /// The α-clan graph: vertex `i` becomes a clique of `alpha[i]` copies of
    /// weight `w(i)`; copies of equal or adjacent originals are adjacent.
    pub fn clan_graph(&self, alpha: &[usize]) -> Result<Self> {
        let n = self.n();
        if alpha.len() != n {
            return input(format!(
                "composition has {} parts for {n} vertices",
                alpha.len()
            ));
        }
        if alpha.contains(&0) {
            return input("composition parts must be positive");
        }
        let total: usize = alpha.iter().sum();
        check_capacity(total)?;
        let mut start = Vec::with_capacity(n);
        let mut acc = 0;
        for &a in alpha {
            start.push(acc);
            acc += a;
        }
        let block = |i: usize| full_mask(alpha[i]) << start[i];
        let mut rows = vec![0u64; total];
        let mut weights = vec![0u32; total];
        for i in 0..n {
            let mut reach = block(i);
            for j in bits(self.graph.row(i)) {
                reach |= block(j);
            }
            for c in start[i]..start[i] + alpha[i] {
                rows[c] = reach & !(1 << c);
                weights[c] = self.weights[i];
            }
        }
        Ok(WeightedGraph {
            graph: Graph::from_rows_unchecked(rows),
            weights,
        })
    }
}

impl From<Graph> for WeightedGraph {
    fn from(g: Graph) -> Self {
        WeightedGraph::unit(g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn from_edges_basics() {
        let k1 = Graph::from_edges(1, &[]).unwrap();
        assert_eq!(k1.n(), 1);
        assert_eq!(k1.edge_count(), 0);
        let k2 = Graph::from_edges(2, &[(0, 1)]).unwrap();
        assert_eq!(k2, Graph::complete(2).unwrap());
        let p3 = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(p3.edges(), vec![(0, 1), (1, 2)]);
        assert_eq!(p3, Graph::path(3).unwrap());
    }

    #[test]
    fn from_edges_errors() {
        assert!(matches!(
            Graph::from_edges(2, &[(0, 2)]),
            Err(KsfError::Input(_))
        ));
        assert!(matches!(
            Graph::from_edges(2, &[(1, 1)]),
            Err(KsfError::Input(_))
        ));
        let dup = Graph::from_edges(2, &[(0, 1), (1, 0), (0, 1)]).unwrap();
        assert_eq!(dup.edge_count(), 1);
        assert!(matches!(
            Graph::empty(63),
            Err(KsfError::Capacity { .. })
        ));
    }

    #[test]
    fn induced_subgraphs() {
        let p3 = Graph::path(3).unwrap();
        assert_eq!(p3.induced_subgraph(0b101).unwrap(), Graph::empty(2).unwrap());
        let k3 = Graph::complete(3).unwrap();
        assert_eq!(k3.induced_subgraph(0b011).unwrap(), Graph::complete(2).unwrap());
        let c4 = Graph::cycle(4).unwrap();
        assert_eq!(c4.induced_subgraph(0b0111).unwrap(), Graph::path(3).unwrap());
        assert_eq!(c4.induced_subgraph(0).unwrap().n(), 0);
        assert!(c4.induced_subgraph(0b10000).is_err());
    }

    #[test]
    fn vertex_deletion() {
        let k2 = Graph::complete(2).unwrap();
        assert_eq!(k2.delete_vertex(0).unwrap(), Graph::empty(1).unwrap());
        let k3 = Graph::complete(3).unwrap();
        assert_eq!(k3.delete_vertex(2).unwrap(), k2);
        assert_eq!(Graph::claw().delete_vertex(0).unwrap(), Graph::empty(3).unwrap());
        assert!(k2.delete_vertex(2).is_err());
    }

    #[test]
    fn unions_and_joins() {
        let k1 = Graph::empty(1).unwrap();
        let k2 = Graph::complete(2).unwrap();
        assert_eq!(k1.disjoint_union(&k1).unwrap(), Graph::empty(2).unwrap());
        let u = k2.disjoint_union(&k1).unwrap();
        assert_eq!(u.edges(), vec![(0, 1)]);
        let p3k2 = Graph::path(3).unwrap().disjoint_union(&k2).unwrap();
        assert_eq!((p3k2.n(), p3k2.edge_count()), (5, 3));

        assert_eq!(k1.join(&k1).unwrap(), k2);
        let j = k1.join(&Graph::empty(2).unwrap()).unwrap();
        assert_eq!(j.edges(), vec![(0, 1), (0, 2)]);
        assert_eq!(k2.join(&k2).unwrap(), Graph::complete(4).unwrap());

        let big = Graph::empty(40).unwrap();
        assert!(matches!(
            big.join(&big),
            Err(KsfError::Capacity { .. })
        ));
    }

    #[test]
    fn clan_graphs() {
        let k1 = WeightedGraph::unit(Graph::empty(1).unwrap());
        assert_eq!(k1.clan_graph(&[1]).unwrap(), k1);
        let k3 = k1.clan_graph(&[3]).unwrap();
        assert_eq!(k3.graph(), &Graph::complete(3).unwrap());
        assert_eq!(k3.weights(), &[1, 1, 1]);
        let k2 = WeightedGraph::unit(Graph::complete(2).unwrap());
        assert_eq!(k2.clan_graph(&[2, 1]).unwrap().graph(), &Graph::complete(3).unwrap());
        let p3 = WeightedGraph::new(Graph::path(3).unwrap(), vec![2, 1, 3]).unwrap();
        let c = p3.clan_graph(&[1, 1, 2]).unwrap();
        assert_eq!(c.weights(), &[2, 1, 3, 3]);
        assert_eq!(c.graph().edges(), vec![(0, 1), (1, 2), (1, 3), (2, 3)]);
        assert!(k2.clan_graph(&[1]).is_err());
        assert!(k2.clan_graph(&[1, 0]).is_err());
    }

    #[test]
    fn weighted_validation() {
        let g = Graph::complete(2).unwrap();
        assert!(WeightedGraph::new(g.clone(), vec![1]).is_err());
        assert!(WeightedGraph::new(g.clone(), vec![1, 0]).is_err());
        let w = WeightedGraph::new(g, vec![2, 3]).unwrap();
        assert_eq!(w.total_weight(), 5);
        let j = w.join(&WeightedGraph::unit(Graph::empty(1).unwrap())).unwrap();
        assert_eq!(j.weights(), &[2, 3, 1]);
        assert_eq!(j.graph(), &Graph::complete(3).unwrap());
    }

    #[test]
    fn rows_validation() {
        assert!(Graph::from_rows(vec![0b10, 0b00]).is_err());
        assert!(Graph::from_rows(vec![0b01]).is_err());
        assert!(Graph::from_rows(vec![0b10, 0b01]).is_ok());
    }
}
