//! Canonical labeling by minimal breadth-first code.
//!
//! A BFS labeling puts a root at label 0 and then, for every position `p` in
//! turn, gives the still unlabeled neighbors of the vertex at `p` the next
//! free labels in some order. Its code is the sequence of words
//! `H_p = {labels > p adjacent to position p}`. The lexicographically
//! smallest code over all roots and all child orders identifies a connected
//! graph up to isomorphism; disconnected graphs are handled per component.
//!
//! The same search answers the partial question asked during orderly
//! generation: given a labeled graph where only some neighborhoods are
//! final, is there a BFS labeling whose fully determined code prefix is
//! already smaller than the identity's?

use crate::graph::{Bits, Graph, VertexSet, MAX_ORDER};

const INF: u64 = u64::MAX;

struct Search<'a> {
    adj: &'a [u64],
    n: usize,
    known: u64,
    /// `twins[x]`: known vertices with the same neighborhood as `x` up to `x` itself.
    twins: [u64; MAX_ORDER],
    label: [u8; MAX_ORDER],
    labeled: u64,
    order: [u8; MAX_ORDER],
    best: [u64; MAX_ORDER],
    best_order: [u8; MAX_ORDER],
}

impl<'a> Search<'a> {
    fn new(adj: &'a [u64], known: u64) -> Self {
        let n = adj.len();
        let mut twins = [0u64; MAX_ORDER];
        for x in Bits(known) {
            for y in Bits(known) {
                if x != y && adj[x] & !(1u64 << y) == adj[y] & !(1u64 << x) {
                    twins[x] |= 1u64 << y;
                }
            }
        }
        Search {
            adj,
            n,
            known,
            twins,
            label: [u8::MAX; MAX_ORDER],
            labeled: 0,
            order: [0; MAX_ORDER],
            best: [INF; MAX_ORDER],
            best_order: [0; MAX_ORDER],
        }
    }

    fn reset(&mut self, root: usize) {
        self.labeled = 1u64 << root;
        self.label[root] = 0;
        self.order[0] = root as u8;
    }

    /// Code word of position `p`, plus the unlabeled neighbors to be numbered
    /// from `next`.
    #[inline]
    fn entry(&self, p: usize, next: usize) -> (u64, u64) {
        let x = self.order[p] as usize;
        let nb = self.adj[x];
        let mut word = 0u64;
        for u in Bits(nb & self.labeled) {
            let l = self.label[u] as usize;
            if l > p {
                word |= 1u64 << l;
            }
        }
        let fresh = nb & !self.labeled;
        let c = fresh.count_ones() as usize;
        if c > 0 {
            word |= ((1u64 << c) - 1) << next;
        }
        (word, fresh)
    }

    /// Vertices of `rest` that may take the next label: a known vertex waits
    /// for its smaller-indexed known twins.
    #[inline]
    fn eligible(&self, rest: u64) -> u64 {
        let mut out = 0u64;
        for u in Bits(rest) {
            let lower_twins = self.twins[u] & rest & ((1u64 << u) - 1);
            if lower_twins == 0 {
                out |= 1u64 << u;
            }
        }
        out
    }

    // ---- full canonical search -------------------------------------------

    fn canon(&mut self, p: usize, next: usize) {
        if p == self.n {
            self.best_order[..self.n].copy_from_slice(&self.order[..self.n]);
            return;
        }
        debug_assert!(p < next, "canonical search requires a connected graph");
        let (word, fresh) = self.entry(p, next);
        match word.cmp(&self.best[p]) {
            std::cmp::Ordering::Greater => return,
            std::cmp::Ordering::Less => {
                self.best[p] = word;
                self.best[p + 1..self.n].iter_mut().for_each(|b| *b = INF);
            }
            std::cmp::Ordering::Equal => {}
        }
        self.canon_assign(fresh, p, next);
    }

    fn canon_assign(&mut self, rest: u64, p: usize, next: usize) {
        if rest == 0 {
            return self.canon(p + 1, next);
        }
        for u in Bits(self.eligible(rest)) {
            self.label[u] = next as u8;
            self.order[next] = u as u8;
            self.labeled |= 1u64 << u;
            self.canon_assign(rest & !(1u64 << u), p, next + 1);
            self.labeled &= !(1u64 << u);
            self.label[u] = u8::MAX;
        }
    }

    // ---- partial minimality test -----------------------------------------

    /// True when some labeling has a determined prefix smaller than `target`.
    /// `target[p]` is meaningful for `p < target_len`.
    fn smaller(&mut self, p: usize, next: usize, target: &[u64]) -> bool {
        if p == self.n || p >= next || p >= target.len() {
            return false;
        }
        let x = self.order[p] as usize;
        if self.known & (1u64 << x) == 0 {
            return false;
        }
        let (word, fresh) = self.entry(p, next);
        match word.cmp(&target[p]) {
            std::cmp::Ordering::Less => true,
            std::cmp::Ordering::Greater => false,
            std::cmp::Ordering::Equal => self.smaller_assign(fresh, p, next, target),
        }
    }

    fn smaller_assign(&mut self, rest: u64, p: usize, next: usize, target: &[u64]) -> bool {
        if rest == 0 {
            return self.smaller(p + 1, next, target);
        }
        for u in Bits(self.eligible(rest)) {
            self.label[u] = next as u8;
            self.order[next] = u as u8;
            self.labeled |= 1u64 << u;
            let found = self.smaller_assign(rest & !(1u64 << u), p, next + 1, target);
            self.labeled &= !(1u64 << u);
            self.label[u] = u8::MAX;
            if found {
                return true;
            }
        }
        false
    }
}

/// Code of the identity labeling: `adj[p]` restricted to labels above `p`.
fn identity_code(adj: &[u64], len: usize) -> Vec<u64> {
    (0..len).map(|p| adj[p] & (u64::MAX << p << 1)).collect()
}

/// Whether the identity labeling of a partially built graph can still be the
/// minimal BFS labeling. `known` marks vertices whose neighborhoods are final;
/// with every vertex known this is an exact canonicity test for connected
/// graphs labeled in BFS order.
pub fn is_minimal_partial(adj: &[u64], known: u64) -> bool {
    let prefix = (!known).trailing_zeros().min(adj.len() as u32) as usize;
    if prefix == 0 {
        return true;
    }
    let target = identity_code(adj, prefix);
    let mut s = Search::new(adj, known);
    for root in Bits(known) {
        s.reset(root);
        let found = s.smaller(0, 1, &target);
        s.label[root] = u8::MAX;
        if found {
            return false;
        }
    }
    true
}

/// Minimal BFS code and a labeling achieving it (`order[label] = vertex`)
/// for a connected graph.
fn connected_canon(adj: &[u64]) -> (Vec<u64>, Vec<u8>) {
    let n = adj.len();
    let mut s = Search::new(adj, VertexSet::full(n).bits());
    for root in 0..n {
        // one root per twin class suffices
        if s.twins[root] & ((1u64 << root) - 1) != 0 {
            continue;
        }
        s.reset(root);
        s.canon(0, 1);
        s.label[root] = u8::MAX;
    }
    (s.best[..n].to_vec(), s.best_order[..n].to_vec())
}

/// Canonically relabeled copy of `g`: isomorphic graphs map to identical
/// graphs. Components are ordered by size, then by code.
pub fn canonical_form(g: &Graph) -> Graph {
    let n = g.order();
    if n == 0 {
        return g.clone();
    }
    let mut parts: Vec<(usize, Vec<u64>, Vec<usize>)> = g
        .components()
        .into_iter()
        .map(|comp| {
            let verts: Vec<usize> = comp.iter().collect();
            let sub = g.induced(comp);
            let (code, order) = connected_canon(sub.adjacency());
            let order = order.into_iter().map(|i| verts[i as usize]).collect();
            (verts.len(), code, order)
        })
        .collect();
    parts.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
    let mut perm = vec![0usize; n];
    let mut offset = 0;
    for (size, _, order) in &parts {
        for (i, &v) in order.iter().enumerate() {
            perm[v] = offset + i;
        }
        offset += size;
    }
    g.relabel(&perm)
}

/// graph6 of the canonical form; equal strings iff isomorphic graphs.
pub fn canonical_graph6(g: &Graph) -> String {
    crate::graph6::to_graph6(&canonical_form(g))
}

pub fn is_isomorphic(a: &Graph, b: &Graph) -> bool {
    a.order() == b.order()
        && a.edge_count() == b.edge_count()
        && canonical_form(a) == canonical_form(b)
}
