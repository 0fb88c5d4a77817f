//! Named graphs and parametric families, including the cyclic gluing
//! `M^k` of a gadget along one of its cycles.
//!
//! Every constructor uses a fixed, documented labeling so that graph6
//! output is reproducible byte for byte.

use crate::error::{Error, Result};
use crate::graph::{Graph, MAX_ORDER};

/// Cycle `0-1-..-(n-1)-0`.
pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::invalid(format!("cycle needs n >= 3, got {n}")));
    }
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::from_edges(n, &edges)
}

/// Path `0-1-..-(n-1)`.
pub fn path(n: usize) -> Result<Graph> {
    if n < 1 {
        return Err(Error::invalid("path needs n >= 1"));
    }
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Graph::from_edges(n, &edges)
}

pub fn complete(n: usize) -> Result<Graph> {
    complete_multipartite(&vec![1; n])
}

/// `K_{a,b}` with parts `0..a` and `a..a+b`.
pub fn complete_bipartite(a: usize, b: usize) -> Result<Graph> {
    complete_multipartite(&[a, b])
}

/// Complete multipartite graph; parts are consecutive label blocks in the
/// given order.
pub fn complete_multipartite(sizes: &[usize]) -> Result<Graph> {
    if sizes.is_empty() || sizes.contains(&0) {
        return Err(Error::invalid("complete multipartite graph needs nonempty parts"));
    }
    let n: usize = sizes.iter().sum();
    let mut part = Vec::with_capacity(n);
    for (i, &s) in sizes.iter().enumerate() {
        part.extend(std::iter::repeat(i).take(s));
    }
    let mut g = Graph::empty(n)?;
    for u in 0..n {
        for v in u + 1..n {
            if part[u] != part[v] {
                g.add_edge(u, v);
            }
        }
    }
    Ok(g)
}

/// Cycle `0..n` plus the long diagonals `i ~ i + n/2`.
pub fn moebius_ladder(n: usize) -> Result<Graph> {
    if n < 4 || n % 2 != 0 {
        return Err(Error::invalid(format!("Moebius ladder needs even n >= 4, got {n}")));
    }
    let mut g = cycle(n)?;
    for i in 0..n / 2 {
        g.add_edge(i, i + n / 2);
    }
    Ok(g)
}

/// `GP(n, k)`: outer cycle `u_i = i`, spokes `u_i ~ w_i` with `w_i = n + i`,
/// inner edges `w_i ~ w_{i+k mod n}`.
pub fn generalized_petersen(n: usize, k: usize) -> Result<Graph> {
    if n < 3 || k < 1 || 2 * k >= n {
        return Err(Error::invalid(format!("GP(n,k) needs n >= 3 and 1 <= k < n/2, got ({n},{k})")));
    }
    let mut g = Graph::empty(2 * n)?;
    for i in 0..n {
        g.add_edge(i, (i + 1) % n);
        g.add_edge(i, n + i);
        g.add_edge(n + i, n + (i + k) % n);
    }
    Ok(g)
}

pub fn petersen() -> Graph {
    generalized_petersen(5, 2).expect("valid parameters")
}

/// Hamiltonian cycle `0..n` plus chords given in LCF notation.
pub fn lcf(n: usize, jumps: &[isize]) -> Result<Graph> {
    let mut g = cycle(n)?;
    for i in 0..n {
        let j = jumps[i % jumps.len()];
        let t = (i as isize + j).rem_euclid(n as isize) as usize;
        if t == i {
            return Err(Error::invalid("LCF jump maps a vertex to itself"));
        }
        g.add_edge(i, t);
    }
    Ok(g)
}

/// Heawood graph, LCF `[5,-5]^7`.
pub fn heawood() -> Graph {
    lcf(14, &[5, -5]).expect("valid LCF")
}

/// McGee graph, LCF `[12,7,-7]^8`.
pub fn mcgee() -> Graph {
    lcf(24, &[12, 7, -7]).expect("valid LCF")
}

/// The extremal graphs of maximal order `2d - r` for small `r = 2d - n`:
/// `K_{d,n-d}` (side of size `d` on labels `0..d`) with an `r`-regular graph
/// laid over the size-`d` side: nothing for `r = 0`, the matching
/// `{0,1},{2,3},..` for `r = 1`, and the cycle `0-1-..-(d-1)-0` for `r = 2`.
pub fn near_extremal(n: usize, d: usize) -> Result<Graph> {
    if !(d < n && n <= 2 * d) {
        return Err(Error::invalid(format!("near_extremal needs d < n <= 2d, got n={n} d={d}")));
    }
    let r = 2 * d - n;
    let mut g = complete_bipartite(d, n - d)?;
    match r {
        0 => {}
        1 => {
            if d % 2 != 0 {
                return Err(Error::invalid(format!("a perfect matching on {d} vertices needs even d")));
            }
            for i in (0..d).step_by(2) {
                g.add_edge(i, i + 1);
            }
        }
        2 => {
            if d < 3 {
                return Err(Error::invalid("a cycle overlay needs d >= 3"));
            }
            for i in 0..d {
                g.add_edge(i, (i + 1) % d);
            }
        }
        _ => {
            return Err(Error::invalid(format!(
                "near_extremal covers 2d - n in {{0,1,2}}, got {r}; supply the overlay explicitly"
            )))
        }
    }
    Ok(g)
}

/// Base graph `M` together with an ordered cycle `v_1..v_l` of `M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gadget {
    base: Graph,
    cycle: Vec<usize>,
}

impl Gadget {
    pub fn new(base: Graph, cycle: Vec<usize>) -> Result<Self> {
        let l = cycle.len();
        if l < 3 {
            return Err(Error::invalid(format!("gadget cycle needs length >= 3, got {l}")));
        }
        let mut seen = 0u64;
        for &v in &cycle {
            if v >= base.order() {
                return Err(Error::invalid(format!("cycle vertex {v} out of range")));
            }
            if seen & (1u64 << v) != 0 {
                return Err(Error::invalid(format!("cycle vertex {v} repeated")));
            }
            seen |= 1u64 << v;
        }
        for i in 0..l {
            let (a, b) = (cycle[i], cycle[(i + 1) % l]);
            if !base.has_edge(a, b) {
                return Err(Error::invalid(format!("cycle edge {a}-{b} is not an edge of the base graph")));
            }
        }
        Ok(Gadget { base, cycle })
    }

    pub fn base(&self) -> &Graph {
        &self.base
    }

    pub fn cycle(&self) -> &[usize] {
        &self.cycle
    }

    pub fn order(&self) -> usize {
        self.base.order()
    }

    pub fn cycle_mask(&self) -> u64 {
        self.cycle.iter().fold(0, |m, &v| m | 1u64 << v)
    }

    /// Adjacency of `M` with the cycle edges removed.
    pub fn intra_adjacency(&self) -> Vec<u64> {
        let mut adj = self.base.adjacency().to_vec();
        let l = self.cycle.len();
        for i in 0..l {
            let (a, b) = (self.cycle[i], self.cycle[(i + 1) % l]);
            adj[a] &= !(1u64 << b);
            adj[b] &= !(1u64 << a);
        }
        adj
    }
}

/// Glues `k` copies of the gadget along its cycle.
///
/// Copy `j` (0-based) of base vertex `m` gets label `j * n0 + m`. Edges:
/// `E(M) \ E(C)` inside every copy; `(v_i, j) ~ (v_i, j+1)` for cycle
/// vertices; and the shifted wrap `(v_i, 0) ~ (v_{i-1}, k-1)` with
/// `v_0 = v_l`. With `k = 1` the wrap restores `C`, giving `M` back.
pub fn glue(gadget: &Gadget, k: usize) -> Result<Graph> {
    let n0 = gadget.order();
    if k < 1 {
        return Err(Error::invalid("glue needs k >= 1"));
    }
    if k * n0 > MAX_ORDER {
        return Err(Error::Capacity { order: k * n0 });
    }
    let intra = gadget.intra_adjacency();
    let cyc = gadget.cycle();
    let l = cyc.len();
    let mut g = Graph::empty(k * n0)?;
    for j in 0..k {
        for (a, row) in intra.iter().enumerate() {
            for b in crate::graph::Bits(*row) {
                if a < b {
                    g.add_edge(j * n0 + a, j * n0 + b);
                }
            }
        }
        if j + 1 < k {
            for &v in cyc {
                g.add_edge(j * n0 + v, (j + 1) * n0 + v);
            }
        }
    }
    for i in 0..l {
        let prev = cyc[(i + l - 1) % l];
        g.add_edge(cyc[i], (k - 1) * n0 + prev);
    }
    Ok(g)
}

/// Named families reachable from the command line.
pub fn standard_family(name: &str, params: &[usize]) -> Result<Graph> {
    let want = |k: usize| -> Result<()> {
        if params.len() == k {
            Ok(())
        } else {
            Err(Error::invalid(format!("family `{name}` takes {k} parameter(s), got {}", params.len())))
        }
    };
    match name {
        "cycle" => want(1).and_then(|_| cycle(params[0])),
        "path" => want(1).and_then(|_| path(params[0])),
        "complete" => want(1).and_then(|_| complete(params[0])),
        "complete_bipartite" => want(2).and_then(|_| complete_bipartite(params[0], params[1])),
        "complete_multipartite" => complete_multipartite(params),
        "moebius_ladder" => want(1).and_then(|_| moebius_ladder(params[0])),
        "generalized_petersen" => want(2).and_then(|_| generalized_petersen(params[0], params[1])),
        "prism" => want(1).and_then(|_| generalized_petersen(params[0], 1)),
        "petersen" => want(0).map(|_| petersen()),
        "heawood" => want(0).map(|_| heawood()),
        "mcgee" => want(0).map(|_| mcgee()),
        "moebius_kantor" => want(0).and_then(|_| generalized_petersen(8, 3)),
        "near_extremal" => want(2).and_then(|_| near_extremal(params[0], params[1])),
        _ => Err(Error::invalid(format!("unknown family `{name}`"))),
    }
}

pub const FAMILY_NAMES: &[&str] = &[
    "cycle",
    "path",
    "complete",
    "complete_bipartite",
    "complete_multipartite",
    "moebius_ladder",
    "generalized_petersen",
    "prism",
    "petersen",
    "heawood",
    "mcgee",
    "moebius_kantor",
    "near_extremal",
];

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::is_isomorphic;

    #[test]
    fn named_graph_parameters() {
        let k44 = complete_bipartite(4, 4).unwrap();
        assert_eq!((k44.order(), k44.regular_degree(), k44.girth()), (8, Some(4), Some(4)));
        let h = heawood();
        assert_eq!((h.order(), h.regular_degree(), h.girth()), (14, Some(3), Some(6)));
        let p = petersen();
        assert_eq!((p.order(), p.regular_degree(), p.girth()), (10, Some(3), Some(5)));
        let m = mcgee();
        assert_eq!((m.order(), m.regular_degree(), m.girth()), (24, Some(3), Some(7)));
        let mk = generalized_petersen(8, 3).unwrap();
        assert_eq!((mk.order(), mk.regular_degree(), mk.girth()), (16, Some(3), Some(6)));
        let gp = generalized_petersen(13, 5).unwrap();
        assert_eq!((gp.order(), gp.regular_degree()), (26, Some(3)));
        let ml = moebius_ladder(8).unwrap();
        assert_eq!((ml.regular_degree(), ml.girth()), (Some(3), Some(4)));
        assert_eq!(complete_multipartite(&[3, 3]).unwrap(), complete_bipartite(3, 3).unwrap());
    }

    #[test]
    fn parameter_errors() {
        assert!(cycle(2).is_err());
        assert!(generalized_petersen(5, 3).is_err());
        assert!(generalized_petersen(4, 2).is_err());
        assert!(moebius_ladder(7).is_err());
        assert!(complete_multipartite(&[2, 0]).is_err());
        assert!(near_extremal(7, 3).is_err());
        assert!(near_extremal(9, 5).is_err());
        assert!(standard_family("twinplex", &[]).is_err());
        assert!(standard_family("cycle", &[]).is_err());
    }

    #[test]
    fn near_extremal_shapes() {
        let g = near_extremal(7, 4).unwrap();
        assert_eq!(g.regular_degree(), Some(4));
        let c3c4 = cycle(3).unwrap().disjoint_union(&cycle(4).unwrap()).unwrap();
        assert!(is_isomorphic(&g, &c3c4.complement()));
        let g = near_extremal(6, 4).unwrap();
        assert_eq!(g.regular_degree(), Some(4));
        assert_eq!(near_extremal(8, 4).unwrap(), complete_bipartite(4, 4).unwrap());
    }

    #[test]
    fn glue_single_copy_is_base() {
        let k4 = complete(4).unwrap();
        let gad = Gadget::new(k4.clone(), vec![0, 1, 2]).unwrap();
        assert_eq!(glue(&gad, 1).unwrap(), k4);
        let p = petersen();
        let gad = Gadget::new(p.clone(), vec![0, 1, 2, 7, 9, 4]).unwrap();
        assert_eq!(glue(&gad, 1).unwrap(), p);
    }

    #[test]
    fn glue_preserves_regularity() {
        let gadgets = [
            Gadget::new(complete(4).unwrap(), vec![0, 1, 2]).unwrap(),
            Gadget::new(complete_bipartite(3, 3).unwrap(), vec![0, 3, 1, 4]).unwrap(),
            Gadget::new(petersen(), vec![0, 1, 2, 7, 9, 4]).unwrap(),
            Gadget::new(complete_bipartite(4, 4).unwrap(), vec![0, 4, 1, 5, 2, 6]).unwrap(),
        ];
        for gad in &gadgets {
            let d = gad.base().regular_degree();
            for k in 1..=4 {
                if k * gad.order() > 64 {
                    continue;
                }
                let g = glue(gad, k).unwrap();
                assert_eq!(g.order(), k * gad.order());
                assert_eq!(g.regular_degree(), d, "k={k} {gad:?}");
                assert!(g.is_connected());
            }
        }
    }

    #[test]
    fn glue_k4_matches_section_construction() {
        // C_{3k} on the cycle rows plus one hub per copy joined to three
        // cycle vertices k apart
        for k in 1..=5 {
            let gad = Gadget::new(complete(4).unwrap(), vec![0, 1, 2]).unwrap();
            let g = glue(&gad, k).unwrap();
            let hubs: Vec<usize> = (0..k).map(|j| j * 4 + 3).collect();
            let rim = g.vertices().bits() & !hubs.iter().fold(0u64, |m, &h| m | 1 << h);
            let rim_graph = g.induced(crate::graph::VertexSet(rim));
            if k >= 2 {
                assert!(is_isomorphic(&rim_graph, &cycle(3 * k).unwrap()), "k={k}");
            }
            assert_eq!(g.girth(), if k == 1 { Some(3) } else { g.girth() });
        }
        let gad = Gadget::new(complete(4).unwrap(), vec![0, 1, 2]).unwrap();
        assert_eq!(glue(&gad, 1).unwrap().girth(), Some(3));
    }

    #[test]
    fn glue_capacity() {
        let gad = Gadget::new(complete(4).unwrap(), vec![0, 1, 2]).unwrap();
        assert!(glue(&gad, 16).is_ok());
        assert!(matches!(glue(&gad, 17), Err(Error::Capacity { order: 68 })));
    }

    #[test]
    fn gadget_validation() {
        let k4 = complete(4).unwrap();
        assert!(Gadget::new(k4.clone(), vec![0, 1]).is_err());
        assert!(Gadget::new(k4.clone(), vec![0, 1, 1]).is_err());
        assert!(Gadget::new(cycle(5).unwrap(), vec![0, 1, 3]).is_err());
        assert!(Gadget::new(k4, vec![0, 1, 4]).is_err());
    }
}
