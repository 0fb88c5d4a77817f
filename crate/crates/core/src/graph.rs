//! Simple undirected graphs on at most 64 vertices, stored as one adjacency
//! word per vertex, together with the structural primitives the counting,
//! transfer and search code is built on.

use std::fmt;

use crate::error::{Error, Result};

/// Largest supported order: one machine word of adjacency per vertex.
pub const MAX_ORDER: usize = 64;

/// Bit set over vertex indices `0..64`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct VertexSet(pub u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    /// The set `{0, .., n-1}`.
    #[inline]
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_ORDER);
        if n == MAX_ORDER {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    #[inline]
    pub fn singleton(v: usize) -> Self {
        VertexSet(1u64 << v)
    }

    pub fn from_vertices<I: IntoIterator<Item = usize>>(vs: I) -> Self {
        let mut s = VertexSet::EMPTY;
        for v in vs {
            s.insert(v);
        }
        s
    }

    #[inline]
    pub fn bits(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn contains(self, v: usize) -> bool {
        v < MAX_ORDER && (self.0 >> v) & 1 == 1
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
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn is_subset(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    /// Smallest element, if any.
    #[inline]
    pub fn first(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as usize)
        }
    }

    pub fn iter(self) -> Bits {
        Bits(self.0)
    }
}

impl std::ops::BitOr for VertexSet {
    type Output = VertexSet;
    fn bitor(self, rhs: Self) -> Self {
        VertexSet(self.0 | rhs.0)
    }
}

impl std::ops::BitAnd for VertexSet {
    type Output = VertexSet;
    fn bitand(self, rhs: Self) -> Self {
        VertexSet(self.0 & rhs.0)
    }
}

impl std::ops::Sub for VertexSet {
    type Output = VertexSet;
    fn sub(self, rhs: Self) -> Self {
        VertexSet(self.0 & !rhs.0)
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl IntoIterator for VertexSet {
    type Item = usize;
    type IntoIter = Bits;
    fn into_iter(self) -> Bits {
        self.iter()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        VertexSet::from_vertices(iter)
    }
}

/// Iterator over the set bits of a word, lowest first.
#[derive(Clone, Copy, Debug)]
pub struct Bits(pub u64);

impl Iterator for Bits {
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
        let c = self.0.count_ones() as usize;
        (c, Some(c))
    }
}

impl ExactSizeIterator for Bits {}

/// A simple undirected graph with `n <= 64` vertices.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self> {
        if n > MAX_ORDER {
            return Err(Error::Capacity { order: n });
        }
        Ok(Graph { n, adj: vec![0; n] })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            g.try_add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Builds a graph from raw adjacency words, checking every invariant.
    pub fn from_adjacency(adj: Vec<u64>) -> Result<Self> {
        let n = adj.len();
        if n > MAX_ORDER {
            return Err(Error::Capacity { order: n });
        }
        let all = VertexSet::full(n).0;
        for (v, &row) in adj.iter().enumerate() {
            if row & !all != 0 {
                return Err(Error::invalid(format!("vertex {v} has a neighbor outside 0..{n}")));
            }
            if (row >> v) & 1 == 1 {
                return Err(Error::invalid(format!("loop at vertex {v}")));
            }
            for u in Bits(row) {
                if (adj[u] >> v) & 1 == 0 {
                    return Err(Error::invalid(format!("asymmetric edge {v}-{u}")));
                }
            }
        }
        Ok(Graph { n, adj })
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

    /// Raw adjacency words, `adj[v]` = neighbors of `v`.
    #[inline]
    pub fn adjacency(&self) -> &[u64] {
        &self.adj
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && (self.adj[u] >> v) & 1 == 1
    }

    /// Adds the edge `uv`. Panics on out-of-range vertices or loops.
    pub fn add_edge(&mut self, u: usize, v: usize) {
        self.try_add_edge(u, v).expect("invalid edge");
    }

    pub fn try_add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        if u >= self.n || v >= self.n {
            return Err(Error::invalid(format!("edge {u}-{v} out of range for order {}", self.n)));
        }
        if u == v {
            return Err(Error::invalid(format!("loop at vertex {u}")));
        }
        self.adj[u] |= 1u64 << v;
        self.adj[v] |= 1u64 << u;
        Ok(())
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        self.adj[u] &= !(1u64 << v);
        self.adj[v] &= !(1u64 << u);
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, ordered by `u` then `v`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| Bits(self.adj[u] & (u64::MAX << u << 1)).map(move |v| (u, v)))
    }

    /// `Some(d)` when every vertex has degree `d`.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.adj.first().map_or(0, |r| r.count_ones());
        self.adj.iter().all(|r| r.count_ones() == d).then_some(d as usize)
    }

    /// Vertices reachable from the lowest vertex of `s` inside `G[s]`.
    #[inline]
    pub fn reach_within(&self, s: u64) -> u64 {
        if s == 0 {
            return 0;
        }
        let mut seen = s & s.wrapping_neg();
        let mut frontier = seen;
        while frontier != 0 {
            let mut next = 0u64;
            for v in Bits(frontier) {
                next |= self.adj[v];
            }
            next &= s & !seen;
            seen |= next;
            frontier = next;
        }
        seen
    }

    /// Whether `G[s]` is connected. The empty set is not.
    #[inline]
    pub fn induced_is_connected(&self, s: VertexSet) -> bool {
        s.0 != 0 && self.reach_within(s.0) == s.0
    }

    pub fn is_connected(&self) -> bool {
        self.induced_is_connected(self.vertices())
    }

    /// Closed neighborhood of a set.
    #[inline]
    pub fn closed_neighborhood(&self, s: u64) -> u64 {
        let mut out = s;
        for v in Bits(s) {
            out |= self.adj[v];
        }
        out
    }

    /// Every vertex outside `s` has a neighbor in `s`.
    #[inline]
    pub fn is_dominating(&self, s: VertexSet) -> bool {
        self.closed_neighborhood(s.0) == self.vertices().0
    }

    /// Vertex sets of the connected components, ordered by smallest vertex.
    pub fn components(&self) -> Vec<VertexSet> {
        let mut rest = self.vertices().0;
        let mut out = Vec::new();
        while rest != 0 {
            let c = self.reach_within(rest);
            out.push(VertexSet(c));
            rest &= !c;
        }
        out
    }

    /// Articulation vertices of `G[s]`.
    ///
    /// Iterative Tarjan lowpoint search restricted to `s`; fails when `G[s]`
    /// is empty or disconnected.
    pub fn cut_vertices(&self, s: VertexSet) -> Result<VertexSet> {
        if !self.induced_is_connected(s) {
            return Err(Error::Contract(
                "cut vertices requested for an empty or disconnected vertex set".into(),
            ));
        }
        Ok(VertexSet(articulation_points(&self.adj, s.0)))
    }

    /// Length of the shortest cycle, `None` for forests.
    pub fn girth(&self) -> Option<usize> {
        let mut best = usize::MAX;
        let mut dist = vec![usize::MAX; self.n];
        let mut parent = vec![usize::MAX; self.n];
        let mut queue = Vec::with_capacity(self.n);
        for root in 0..self.n {
            dist.iter_mut().for_each(|d| *d = usize::MAX);
            dist[root] = 0;
            parent[root] = usize::MAX;
            queue.clear();
            queue.push(root);
            let mut head = 0;
            while head < queue.len() {
                let v = queue[head];
                head += 1;
                if 2 * dist[v] + 1 >= best {
                    break;
                }
                for u in Bits(self.adj[v]) {
                    if dist[u] == usize::MAX {
                        dist[u] = dist[v] + 1;
                        parent[u] = v;
                        queue.push(u);
                    } else if parent[v] != u {
                        best = best.min(dist[u] + dist[v] + 1);
                    }
                }
            }
        }
        (best != usize::MAX).then_some(best)
    }

    /// Set-theoretic complement on the same vertex set.
    pub fn complement(&self) -> Graph {
        let all = self.vertices().0;
        let adj = (0..self.n).map(|v| all & !self.adj[v] & !(1u64 << v)).collect();
        Graph { n: self.n, adj }
    }

    /// `self + other`, with `other`'s vertices shifted by `self.order()`.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph> {
        let n = self.n + other.n;
        if n > MAX_ORDER {
            return Err(Error::Capacity { order: n });
        }
        let mut adj = self.adj.clone();
        adj.extend(other.adj.iter().map(|&r| r << self.n));
        Ok(Graph { n, adj })
    }

    /// Graph with vertex `v` renamed to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n, "permutation length must equal the order");
        let mut adj = vec![0u64; self.n];
        for v in 0..self.n {
            for u in Bits(self.adj[v]) {
                adj[perm[v]] |= 1u64 << perm[u];
            }
        }
        Graph { n: self.n, adj }
    }

    /// Subgraph induced by `s`, relabeled to `0..|s|` in increasing order.
    pub fn induced(&self, s: VertexSet) -> Graph {
        let verts: Vec<usize> = s.iter().collect();
        let mut pos = [usize::MAX; MAX_ORDER];
        for (i, &v) in verts.iter().enumerate() {
            pos[v] = i;
        }
        let adj = verts
            .iter()
            .map(|&v| Bits(self.adj[v] & s.0).fold(0u64, |acc, u| acc | 1u64 << pos[u]))
            .collect();
        Graph { n: verts.len(), adj }
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph({}: {})", self.n, crate::graph6::to_graph6(self))
    }
}

/// Tarjan's articulation points on `G[s]`, with `s` assumed connected and
/// nonempty. Explicit stack, linear in `|s|` plus induced edges.
pub(crate) fn articulation_points(adj: &[u64], s: u64) -> u64 {
    let root = s.trailing_zeros() as usize;
    let mut disc = [0u8; MAX_ORDER];
    let mut low = [0u8; MAX_ORDER];
    let mut parent = [u8::MAX; MAX_ORDER];
    // neighbors still to scan, per vertex on the stack
    let mut pending = [0u64; MAX_ORDER];
    let mut stack = [0u8; MAX_ORDER];
    let mut depth = 1usize;
    let mut time = 1u8;
    let mut cut = 0u64;
    let mut root_children = 0u32;

    disc[root] = time;
    low[root] = time;
    time += 1;
    pending[root] = adj[root] & s;
    stack[0] = root as u8;

    while depth > 0 {
        let v = stack[depth - 1] as usize;
        if pending[v] != 0 {
            let u = pending[v].trailing_zeros() as usize;
            pending[v] &= pending[v] - 1;
            if disc[u] == 0 {
                parent[u] = v as u8;
                disc[u] = time;
                low[u] = time;
                time += 1;
                pending[u] = adj[u] & s;
                stack[depth] = u as u8;
                depth += 1;
                if v == root {
                    root_children += 1;
                }
            } else if parent[v] as usize != u && disc[u] < low[v] {
                low[v] = disc[u];
            }
        } else {
            depth -= 1;
            if depth > 0 {
                let p = stack[depth - 1] as usize;
                if low[v] < low[p] {
                    low[p] = low[v];
                }
                if p != root && low[v] >= disc[p] {
                    cut |= 1u64 << p;
                }
            }
        }
    }
    if root_children > 1 {
        cut |= 1u64 << root;
    }
    cut
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    fn complete(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    fn set(vs: &[usize]) -> VertexSet {
        vs.iter().copied().collect()
    }

    #[test]
    fn connectivity_examples() {
        let c5 = cycle(5);
        assert!(c5.induced_is_connected(set(&[0, 1, 2])));
        assert!(!c5.induced_is_connected(set(&[0, 2])));
        assert!(!c5.induced_is_connected(VertexSet::EMPTY));
        let k4 = complete(4);
        for s in 1u64..16 {
            assert!(k4.induced_is_connected(VertexSet(s)));
        }
    }

    #[test]
    fn domination_examples() {
        assert!(cycle(5).is_dominating(set(&[0, 2])));
        assert!(cycle(6).is_dominating(set(&[0, 3])));
        assert!(!cycle(6).is_dominating(set(&[0, 2])));
        assert!(complete(4).is_dominating(set(&[0])));
        assert!(cycle(7).is_dominating(cycle(7).vertices()));
        assert!(!cycle(3).is_dominating(VertexSet::EMPTY));
    }

    #[test]
    fn cut_vertex_examples() {
        let p3 = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(p3.cut_vertices(p3.vertices()).unwrap(), set(&[1]));
        let k4 = complete(4);
        assert_eq!(k4.cut_vertices(k4.vertices()).unwrap(), VertexSet::EMPTY);
        let bowtie =
            Graph::from_edges(5, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]).unwrap();
        assert_eq!(bowtie.cut_vertices(bowtie.vertices()).unwrap(), set(&[2]));
        assert_eq!(k4.cut_vertices(set(&[1])).unwrap(), VertexSet::EMPTY);
    }

    #[test]
    fn cut_vertices_reject_bad_input() {
        let c6 = cycle(6);
        assert!(matches!(c6.cut_vertices(set(&[0, 3])), Err(Error::Contract(_))));
        assert!(matches!(c6.cut_vertices(VertexSet::EMPTY), Err(Error::Contract(_))));
    }

    #[test]
    fn cut_vertices_on_induced_path_of_cycle() {
        let c6 = cycle(6);
        assert_eq!(c6.cut_vertices(set(&[1, 2, 3, 4])).unwrap(), set(&[2, 3]));
    }

    #[test]
    fn girth_examples() {
        assert_eq!(complete(4).girth(), Some(3));
        assert_eq!(cycle(7).girth(), Some(7));
        let path = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(path.girth(), None);
        let k33 = Graph::from_edges(
            6,
            &[(0, 3), (0, 4), (0, 5), (1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5)],
        )
        .unwrap();
        assert_eq!(k33.girth(), Some(4));
    }

    #[test]
    fn regular_degree_examples() {
        assert_eq!(complete(4).regular_degree(), Some(3));
        assert_eq!(cycle(7).regular_degree(), Some(2));
        let k34: Vec<_> = (0..3).flat_map(|a| (3..7).map(move |b| (a, b))).collect();
        assert_eq!(Graph::from_edges(7, &k34).unwrap().regular_degree(), None);
    }

    #[test]
    fn union_and_complement() {
        let u = cycle(3).disjoint_union(&cycle(4)).unwrap();
        assert_eq!(u.order(), 7);
        assert_eq!(u.regular_degree(), Some(2));
        assert_eq!(u.components().len(), 2);
        let co = u.complement();
        assert_eq!(co.regular_degree(), Some(4));
        assert_eq!(co.complement(), u);
        assert!(matches!(
            complete(40).disjoint_union(&complete(30)),
            Err(Error::Capacity { order: 70 })
        ));
    }

    #[test]
    fn from_adjacency_checks_invariants() {
        assert!(Graph::from_adjacency(vec![0b10, 0b01]).is_ok());
        assert!(Graph::from_adjacency(vec![0b10, 0b00]).is_err());
        assert!(Graph::from_adjacency(vec![0b01]).is_err());
        assert!(Graph::from_adjacency(vec![0b100, 0b000]).is_err());
    }

    #[test]
    fn full_set_of_64() {
        assert_eq!(VertexSet::full(64).len(), 64);
        assert_eq!(VertexSet::full(0), VertexSet::EMPTY);
    }
}
