//! Orderly generation of connected regular graphs with a girth bound.
//!
//! Graphs are built directly in breadth-first labeling: vertex `v` is
//! completed by joining it to some already created, still unsaturated
//! vertices above it, and then to brand new children that take the next
//! free labels. After each step the partial graph is rejected if another
//! breadth-first labeling already has a smaller determined code prefix, and
//! complete graphs are kept only when their identity labeling is the minimal
//! one. Each isomorphism class is therefore produced exactly once.

use crate::canon::is_minimal_partial;
use crate::error::{Error, Result};
use crate::graph::{Bits, Graph, MAX_ORDER};

/// Largest cubic order generated without an explicit override.
pub const CUBIC_MAX_ORDER: usize = 14;
/// Largest quartic order generated without an explicit override.
pub const QUARTIC_MAX_ORDER: usize = 10;

/// Checks parity and the default scale limits.
pub fn check_parameters(n: usize, d: usize, allow_large: bool) -> Result<()> {
    if n > MAX_ORDER {
        return Err(Error::Capacity { order: n });
    }
    if d >= n || (n * d) % 2 != 0 {
        return Err(Error::invalid(format!("no {d}-regular graph on {n} vertices (need d < n and n*d even)")));
    }
    let limit = match d {
        0..=2 => usize::MAX,
        3 => CUBIC_MAX_ORDER,
        4 => QUARTIC_MAX_ORDER,
        _ => 2 * d + 2,
    };
    if n > limit && !allow_large {
        return Err(Error::Budget(format!(
            "generating {d}-regular graphs on {n} vertices is beyond the default limit n <= {limit}; \
             supply a graph6 corpus from an external generator (e.g. `genreg -c {n} {d} <girth>` or \
             `geng -c -d{d} -D{d} {n}`) via --in or --corpus, or lift the limit explicitly"
        )));
    }
    Ok(())
}

struct Gen<'a, F: FnMut(Graph)> {
    n: usize,
    d: usize,
    girth: usize,
    adj: Vec<u64>,
    deg: Vec<usize>,
    emit: &'a mut F,
}

impl<F: FnMut(Graph)> Gen<'_, F> {
    fn link(&mut self, a: usize, b: usize) {
        self.adj[a] |= 1 << b;
        self.adj[b] |= 1 << a;
        self.deg[a] += 1;
        self.deg[b] += 1;
    }

    fn unlink(&mut self, a: usize, b: usize) {
        self.adj[a] &= !(1 << b);
        self.adj[b] &= !(1 << a);
        self.deg[a] -= 1;
        self.deg[b] -= 1;
    }

    /// Whether `a` and `b` are within distance `girth - 2`, so that joining
    /// them would close a cycle shorter than the girth bound.
    fn too_close(&self, a: usize, b: usize) -> bool {
        if self.girth <= 3 {
            return false;
        }
        let mut seen = 1u64 << a;
        let mut frontier = seen;
        for _ in 0..self.girth - 2 {
            let mut next = 0;
            for v in Bits(frontier) {
                next |= self.adj[v];
            }
            frontier = next & !seen;
            if frontier >> b & 1 == 1 {
                return true;
            }
            seen |= frontier;
        }
        false
    }

    fn known(&self, processed: usize) -> u64 {
        let mut k = if processed >= 64 { u64::MAX } else { (1u64 << processed) - 1 };
        for v in processed..self.n {
            if self.deg[v] == self.d {
                k |= 1 << v;
            }
        }
        k & (u64::MAX >> (64 - self.n))
    }

    /// Completes vertex `v`; labels `next..` are not yet created.
    fn step(&mut self, v: usize, next: usize) {
        if v == self.n {
            let all = u64::MAX >> (64 - self.n);
            if is_minimal_partial(&self.adj, all) {
                let g = Graph::from_adjacency(self.adj.clone()).expect("generator keeps the graph simple");
                (self.emit)(g);
            }
            return;
        }
        if v >= next {
            // nothing left to attach to: the graph would be disconnected
            return;
        }
        let deficit = self.d - self.deg[v];
        let mut cands = 0u64;
        for u in v + 1..next {
            if self.deg[u] < self.d {
                cands |= 1 << u;
            }
        }
        self.choose(v, next, cands, deficit);
    }

    /// Picks the existing neighbours of `v` from `cands` (in increasing
    /// label order), then creates the remaining ones.
    fn choose(&mut self, v: usize, next: usize, cands: u64, deficit: usize) {
        if deficit <= self.n - next {
            self.spawn(v, next, deficit);
        }
        if deficit == 0 {
            return;
        }
        for u in Bits(cands) {
            if self.too_close(v, u) {
                continue;
            }
            self.link(v, u);
            let rest = cands & (u64::MAX << u << 1);
            self.choose(v, next, rest, deficit - 1);
            self.unlink(v, u);
        }
    }

    fn spawn(&mut self, v: usize, next: usize, fresh: usize) {
        for c in next..next + fresh {
            self.link(v, c);
        }
        let next2 = next + fresh;
        if is_minimal_partial(&self.adj, self.known(v + 1)) {
            self.step(v + 1, next2);
        }
        for c in next..next + fresh {
            self.unlink(v, c);
        }
    }
}

/// Calls `emit` once for every connected `d`-regular graph on `n` vertices
/// with girth at least `girth`, up to isomorphism.
pub fn for_each_regular<F: FnMut(Graph)>(n: usize, d: usize, girth: usize, allow_large: bool, mut emit: F) -> Result<()> {
    check_parameters(n, d, allow_large)?;
    if n == 0 {
        return Ok(());
    }
    let mut g = Gen { n, d, girth, adj: vec![0; n], deg: vec![0; n], emit: &mut emit };
    g.step(0, 1);
    Ok(())
}

/// All connected `d`-regular graphs on `n` vertices with girth at least
/// `girth`, one per isomorphism class, in generation order.
pub fn generate_regular(n: usize, d: usize, girth: usize) -> Result<Vec<Graph>> {
    let mut out = Vec::new();
    for_each_regular(n, d, girth, false, |g| out.push(g))?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::canonical_graph6;
    use crate::families;
    use std::collections::HashSet;

    fn counts(d: usize, girth: usize, orders: impl Iterator<Item = usize>) -> Vec<usize> {
        orders.map(|n| generate_regular(n, d, girth).unwrap().len()).collect()
    }

    #[test]
    fn small_cubic_counts() {
        assert_eq!(counts(3, 3, (4..=10).step_by(2)), vec![1, 2, 5, 19]);
        assert_eq!(counts(3, 4, (4..=12).step_by(2)), vec![0, 1, 2, 6, 22]);
        assert_eq!(counts(3, 5, (10..=12).step_by(2)), vec![1, 2]);
    }

    #[test]
    fn small_quartic_counts() {
        assert_eq!(counts(4, 3, 5..=9), vec![1, 1, 2, 6, 16]);
    }

    #[test]
    fn cycles_and_complete_graphs() {
        for n in 3..12 {
            let gs = generate_regular(n, 2, 3).unwrap();
            assert_eq!(gs.len(), 1);
            assert!(crate::canon::is_isomorphic(&gs[0], &families::cycle(n).unwrap()));
        }
        for n in 2..9 {
            assert_eq!(generate_regular(n, n - 1, 3).unwrap().len(), 1);
        }
    }

    #[test]
    fn output_is_valid_and_distinct() {
        let gs = generate_regular(10, 3, 3).unwrap();
        let mut seen = HashSet::new();
        for g in &gs {
            assert_eq!(g.regular_degree(), Some(3));
            assert!(g.is_connected());
            assert!(seen.insert(canonical_graph6(g)));
        }
        assert!(gs.iter().any(|g| crate::canon::is_isomorphic(g, &families::petersen())));
        for g in generate_regular(12, 3, 5).unwrap() {
            assert!(g.girth().unwrap() >= 5);
        }
    }

    #[test]
    fn parameter_checks() {
        assert!(matches!(generate_regular(7, 3, 3), Err(Error::Invalid(_))));
        assert!(matches!(generate_regular(16, 3, 3), Err(Error::Budget(_))));
        assert!(matches!(generate_regular(12, 4, 3), Err(Error::Budget(_))));
        assert!(generate_regular(4, 4, 3).is_err());
    }
}
