//! Column-state transfer matrices for the glued families `M^k`.
//!
//! A column holds one cell per vertex of the gadget. Cells are occupied
//! (fixed when already joined to the first column through earlier columns,
//! loose otherwise) or empty; in dominating mode an empty cell also records
//! whether it has been dominated yet. States carry cell types only, not the
//! partition of loose cells into components.
//!
//! Rows of the gadget keep the gadget's own vertex labels. A row is a
//! "cycle row" when its vertex lies on the gadget cycle; only those rows have
//! edges to the neighbouring columns.

pub mod matrix;
pub mod spectral;

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use rustc_hash::FxHashMap;

use crate::counting::{self, BigCount, CountMode, Engine, Limits};
use crate::error::{Error, Result};
use crate::families::{glue, Gadget};
use crate::graph::Bits;
pub use matrix::SparseMatrix;
pub use spectral::{path_count, Dominant, DEFAULT_MAX_ITER, DEFAULT_TOL};

/// Largest gadget order the state machinery accepts.
pub const MAX_GADGET_ORDER: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    Connected,
    Dominating,
}

impl Mode {
    pub fn count_mode(self) -> CountMode {
        match self {
            Mode::Connected => CountMode::Connected,
            Mode::Dominating => CountMode::DominatingConnected,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Mode::Connected => "connected",
            Mode::Dominating => "dominating",
        }
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "connected" => Ok(Mode::Connected),
            "dominating" => Ok(Mode::Dominating),
            _ => Err(Error::invalid(format!("unknown mode `{s}` (expected connected or dominating)"))),
        }
    }
}

/// How an occupied cell of the new column becomes fixed.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum FixedRule {
    /// Its component within the new column has a cycle row whose left
    /// neighbour is fixed. Paths that pass through loose cells of the
    /// previous column are not followed.
    #[default]
    Column,
    /// Its component in the two-column graph contains a fixed cell of the
    /// previous column. Accepts every sequence `Column` accepts, and more
    /// on gadgets whose loose components span several cycle rows.
    TwoColumn,
}

impl FromStr for FixedRule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "column" => Ok(FixedRule::Column),
            "two-column" => Ok(FixedRule::TwoColumn),
            _ => Err(Error::invalid(format!("unknown fixed rule `{s}` (expected column or two-column)"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CellType {
    OccFixed,
    OccLoose,
    EmptyDom,
    EmptyUndom,
    Empty,
}

impl CellType {
    pub fn symbol(self) -> char {
        match self {
            CellType::OccFixed => 'F',
            CellType::OccLoose => 'L',
            CellType::EmptyDom => 'D',
            CellType::EmptyUndom => 'U',
            CellType::Empty => 'E',
        }
    }
}

/// One column, packed as three row masks. Rows in none of them are empty
/// (dominated, in dominating mode).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ColumnState {
    pub fixed: u32,
    pub loose: u32,
    pub undom: u32,
}

impl ColumnState {
    pub fn full(n0: usize) -> Self {
        ColumnState { fixed: low_mask(n0), loose: 0, undom: 0 }
    }

    pub fn occupied(self) -> u32 {
        self.fixed | self.loose
    }

    pub fn cell(self, row: usize, mode: Mode) -> CellType {
        let b = 1u32 << row;
        if self.fixed & b != 0 {
            CellType::OccFixed
        } else if self.loose & b != 0 {
            CellType::OccLoose
        } else if self.undom & b != 0 {
            CellType::EmptyUndom
        } else if mode == Mode::Dominating {
            CellType::EmptyDom
        } else {
            CellType::Empty
        }
    }

    pub fn cells(self, n0: usize, mode: Mode) -> Vec<CellType> {
        (0..n0).map(|r| self.cell(r, mode)).collect()
    }

    pub fn from_cells(cells: &[CellType]) -> Self {
        let mut s = ColumnState { fixed: 0, loose: 0, undom: 0 };
        for (r, c) in cells.iter().enumerate() {
            match c {
                CellType::OccFixed => s.fixed |= 1 << r,
                CellType::OccLoose => s.loose |= 1 << r,
                CellType::EmptyUndom => s.undom |= 1 << r,
                CellType::EmptyDom | CellType::Empty => {}
            }
        }
        s
    }

    /// Row-by-row symbols, e.g. `FFLE`.
    pub fn label(self, n0: usize, mode: Mode) -> String {
        self.cells(n0, mode).into_iter().map(CellType::symbol).collect()
    }

    fn permuted(self, perm: &[usize]) -> Self {
        let map = |m: u32| Bits(m as u64).fold(0u32, |acc, r| acc | 1 << perm[r]);
        ColumnState { fixed: map(self.fixed), loose: map(self.loose), undom: map(self.undom) }
    }
}

fn low_mask(n: usize) -> u32 {
    if n >= 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

/// Gadget data in the form the transition rule needs.
struct Board {
    n0: usize,
    full: u32,
    cyc: u32,
    intra: Vec<u32>,
    /// Two-column adjacency: rows `0..n0` are the left column, `n0..2n0`
    /// the right one.
    adj2: Vec<u32>,
}

impl Board {
    fn new(gadget: &Gadget) -> Result<Self> {
        let n0 = gadget.order();
        if n0 > MAX_GADGET_ORDER {
            return Err(Error::Budget(format!(
                "gadget order {n0} exceeds the state-space limit of {MAX_GADGET_ORDER}"
            )));
        }
        let intra: Vec<u32> = gadget.intra_adjacency().iter().map(|&r| r as u32).collect();
        let cyc = gadget.cycle_mask() as u32;
        let mut adj2 = vec![0u32; 2 * n0];
        for r in 0..n0 {
            adj2[r] = intra[r];
            adj2[n0 + r] = intra[r] << n0;
            if cyc >> r & 1 == 1 {
                adj2[r] |= 1 << (n0 + r);
                adj2[n0 + r] |= 1 << r;
            }
        }
        Ok(Board { n0, full: low_mask(n0), cyc, intra, adj2 })
    }

    fn flood(&self, seeds: u32, allowed: u32) -> u32 {
        let mut seen = seeds & allowed;
        let mut frontier = seen;
        while frontier != 0 {
            let mut next = 0;
            for v in Bits(frontier as u64) {
                next |= self.adj2[v];
            }
            frontier = next & allowed & !seen;
            seen |= frontier;
        }
        seen
    }

    fn flood_column(&self, seeds: u32, allowed: u32) -> u32 {
        let mut seen = seeds & allowed;
        let mut frontier = seen;
        while frontier != 0 {
            let mut next = 0;
            for v in Bits(frontier as u64) {
                next |= self.intra[v];
            }
            frontier = next & allowed & !seen;
            seen |= frontier;
        }
        seen
    }

    /// The unique state that may follow `s` with occupancy `occ`, if any.
    fn successor(&self, s: ColumnState, occ: u32, mode: Mode, rule: FixedRule) -> Option<ColumnState> {
        let n0 = self.n0;
        let so = s.occupied();
        if mode == Mode::Dominating && s.undom & !occ != 0 {
            return None;
        }
        let allowed = so | occ << n0;
        let fixed = match rule {
            FixedRule::Column => self.flood_column(occ & self.cyc & s.fixed, occ),
            FixedRule::TwoColumn => (self.flood(s.fixed, allowed) >> n0) & occ,
        };
        if fixed == 0 {
            return None;
        }
        if s.loose != 0 && s.loose & !self.flood(occ << n0, allowed) != 0 {
            return None;
        }
        let mut undom = 0;
        if mode == Mode::Dominating {
            for r in Bits((self.full & !occ) as u64) {
                let on_cycle = self.cyc >> r & 1 == 1;
                let dominated = self.intra[r] & occ != 0 || (on_cycle && so >> r & 1 == 1);
                if !dominated {
                    if !on_cycle {
                        return None;
                    }
                    undom |= 1 << r;
                }
            }
        }
        Some(ColumnState { fixed, loose: occ & !fixed, undom })
    }

    fn successors(&self, s: ColumnState, mode: Mode, rule: FixedRule) -> Vec<ColumnState> {
        let need = if mode == Mode::Dominating { s.undom } else { 0 };
        let free = self.full & !need;
        let mut out = Vec::new();
        let mut sub = free;
        loop {
            let occ = sub | need;
            if occ != 0 {
                if let Some(t) = self.successor(s, occ, mode, rule) {
                    out.push(t);
                }
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & free;
        }
        out
    }

    /// Connected components of the intra-column graph restricted to `occ`.
    fn column_components(&self, occ: u32) -> Vec<u32> {
        let mut out = Vec::new();
        let mut rest = occ;
        while rest != 0 {
            let mut comp = rest & rest.wrapping_neg();
            let mut frontier = comp;
            while frontier != 0 {
                let mut next = 0;
                for v in Bits(frontier as u64) {
                    next |= self.intra[v];
                }
                frontier = next & occ & !comp;
                comp |= frontier;
            }
            out.push(comp);
            rest &= !comp;
        }
        out
    }
}

/// All valid column states, sorted by their packed masks.
///
/// Valid means: at least one fixed cell; each intra-column component of
/// occupied cells is entirely fixed or entirely loose; undominated empty
/// cells only on cycle rows.
pub fn enumerate_states(gadget: &Gadget, mode: Mode) -> Result<Vec<ColumnState>> {
    let b = Board::new(gadget)?;
    let mut out = Vec::new();
    for occ in 1..=b.full {
        let comps = b.column_components(occ);
        let empty_cyc = b.cyc & !occ;
        for pick in 1u32..1 << comps.len() {
            let fixed = Bits(pick as u64).fold(0, |acc, i| acc | comps[i]);
            let base = ColumnState { fixed, loose: occ & !fixed, undom: 0 };
            if mode == Mode::Connected {
                out.push(base);
                continue;
            }
            let mut sub = empty_cyc;
            loop {
                out.push(ColumnState { undom: sub, ..base });
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & empty_cyc;
            }
        }
    }
    out.sort_unstable();
    Ok(out)
}

/// Whether column `t` may directly follow column `s` under the default
/// [`FixedRule`].
pub fn transition_valid(gadget: &Gadget, mode: Mode, s: ColumnState, t: ColumnState) -> Result<bool> {
    transition_valid_with(gadget, mode, FixedRule::default(), s, t)
}

/// Whether column `t` may directly follow column `s`: every loose cell of
/// `s` reaches an occupied cell of `t` in the two-column graph, the fixed
/// cells of `t` are those selected by `rule`, and in dominating mode every
/// undominated cell of `s` gets an occupied right neighbour while the empty
/// cells of `t` carry the right dominated flag.
pub fn transition_valid_with(
    gadget: &Gadget,
    mode: Mode,
    rule: FixedRule,
    s: ColumnState,
    t: ColumnState,
) -> Result<bool> {
    let b = Board::new(gadget)?;
    Ok(b.successor(s, t.occupied(), mode, rule) == Some(t))
}

/// Row permutations preserving the intra-column graph and the set of cycle
/// rows. Both transition rules are invariant under them.
pub fn row_symmetries(gadget: &Gadget) -> Vec<Vec<usize>> {
    let intra = gadget.intra_adjacency();
    let cyc = gadget.cycle_mask();
    let n = gadget.order();
    let mut out = Vec::new();
    let mut perm = vec![usize::MAX; n];
    let mut used = 0u64;
    fn extend(
        i: usize,
        n: usize,
        intra: &[u64],
        cyc: u64,
        perm: &mut Vec<usize>,
        used: &mut u64,
        out: &mut Vec<Vec<usize>>,
    ) {
        if i == n {
            out.push(perm.clone());
            return;
        }
        for img in 0..n {
            if *used >> img & 1 == 1
                || (cyc >> i & 1) != (cyc >> img & 1)
                || intra[i].count_ones() != intra[img].count_ones()
            {
                continue;
            }
            let consistent = (0..i).all(|j| (intra[i] >> j & 1) == (intra[img] >> perm[j] & 1));
            if !consistent {
                continue;
            }
            perm[i] = img;
            *used |= 1 << img;
            extend(i + 1, n, intra, cyc, perm, used, out);
            *used &= !(1 << img);
        }
        perm[i] = usize::MAX;
    }
    extend(0, n, &intra, cyc, &mut perm, &mut used, &mut out);
    out
}

#[derive(Clone, Copy, Debug)]
pub struct BuildOptions {
    /// Lump states in the same orbit under [`row_symmetries`].
    pub merge: bool,
    /// Keep only states reachable from, and leading back to, the full column.
    pub trim: bool,
    pub rule: FixedRule,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions { merge: false, trim: true, rule: FixedRule::default() }
    }
}

#[derive(Clone, Debug)]
pub struct TransferMatrix {
    pub n0: usize,
    pub mode: Mode,
    /// One state per row/column; class representatives when merged.
    pub states: Vec<ColumnState>,
    /// Orbit sizes when merged.
    pub class_sizes: Option<Vec<usize>>,
    pub full_index: usize,
    /// Entry `(t, s)` counts the transitions from `s` into `t`.
    pub matrix: SparseMatrix,
}

impl TransferMatrix {
    pub fn dim(&self) -> usize {
        self.states.len()
    }

    pub fn path_count(&self, k: usize) -> BigCount {
        path_count(&self.matrix, self.full_index, k)
    }

    pub fn spectral(&self, opts: SpectralOptions) -> Result<SpectralResult> {
        spectral_result(&self.matrix, self.n0, opts)
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SpectralOptions {
    pub tol: f64,
    pub max_iter: usize,
    pub second: bool,
}

impl Default for SpectralOptions {
    fn default() -> Self {
        SpectralOptions { tol: DEFAULT_TOL, max_iter: DEFAULT_MAX_ITER, second: false }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpectralResult {
    pub lambda: f64,
    pub second_modulus: Option<f64>,
    pub iterations: usize,
    pub residual: f64,
    /// `lambda^(1/n0)`.
    pub bound: f64,
}

/// Dominant eigenvalue (and optionally second modulus) of `m`, with the
/// bound taken as the `n0`-th root.
pub fn spectral_result(m: &SparseMatrix, n0: usize, opts: SpectralOptions) -> Result<SpectralResult> {
    let d = spectral::dominant_eigenvalue(m, opts.tol, opts.max_iter)?;
    let second = if opts.second { Some(spectral::second_modulus(m, &d, opts.max_iter)?) } else { None };
    Ok(SpectralResult {
        lambda: d.lambda,
        second_modulus: second,
        iterations: d.iterations,
        residual: d.residual,
        bound: d.lambda.powf(1.0 / n0 as f64),
    })
}

/// Orbit representatives (smallest packed state) under a row group.
struct Orbits {
    group: Vec<Vec<usize>>,
}

impl Orbits {
    fn rep(&self, s: ColumnState) -> ColumnState {
        self.group.iter().map(|p| s.permuted(p)).min().unwrap_or(s)
    }

    fn size(&self, s: ColumnState) -> usize {
        let mut images: Vec<ColumnState> = self.group.iter().map(|p| s.permuted(p)).collect();
        images.sort_unstable();
        images.dedup();
        images.len()
    }
}

/// Successors of `s` grouped by representative, with multiplicities.
fn class_successors(b: &Board, mode: Mode, rule: FixedRule, orbits: Option<&Orbits>, s: ColumnState) -> Vec<(ColumnState, u64)> {
    let mut ts: Vec<ColumnState> = b.successors(s, mode, rule);
    if let Some(o) = orbits {
        ts.iter_mut().for_each(|t| *t = o.rep(*t));
        ts.sort_unstable();
    }
    let mut out: Vec<(ColumnState, u64)> = Vec::with_capacity(ts.len());
    for t in ts {
        match out.last_mut() {
            Some((last, c)) if *last == t => *c += 1,
            _ => out.push((t, 1)),
        }
    }
    out
}

type Edge = (u32, u32, u64);

/// Breadth-first closure from `start`; edges are `(to, from, multiplicity)`.
fn reachable(b: &Board, mode: Mode, rule: FixedRule, orbits: Option<&Orbits>, start: ColumnState) -> (Vec<ColumnState>, Vec<Edge>) {
    let mut index: FxHashMap<ColumnState, u32> = FxHashMap::default();
    let mut states = vec![start];
    index.insert(start, 0);
    let mut edges = Vec::new();
    let mut frontier = vec![0u32];
    while !frontier.is_empty() {
        let succ: Vec<(u32, Vec<(ColumnState, u64)>)> = frontier
            .par_iter()
            .map(|&i| (i, class_successors(b, mode, rule, orbits, states[i as usize])))
            .collect();
        let mut next = Vec::new();
        for (s, ts) in succ {
            for (t, c) in ts {
                let ti = *index.entry(t).or_insert_with(|| {
                    states.push(t);
                    next.push(states.len() as u32 - 1);
                    states.len() as u32 - 1
                });
                edges.push((ti, s, c));
            }
        }
        frontier = next;
    }
    (states, edges)
}

/// Drops states from which `target` cannot be reached.
fn trim_to(states: &mut Vec<ColumnState>, edges: &mut Vec<Edge>, target: usize) {
    let n = states.len();
    let mut preds = vec![Vec::new(); n];
    for &(t, s, _) in edges.iter() {
        preds[t as usize].push(s);
    }
    let mut keep = vec![false; n];
    keep[target] = true;
    let mut queue = VecDeque::from([target as u32]);
    while let Some(t) = queue.pop_front() {
        for &s in &preds[t as usize] {
            if !keep[s as usize] {
                keep[s as usize] = true;
                queue.push_back(s);
            }
        }
    }
    if keep.iter().all(|&k| k) {
        return;
    }
    let mut remap = vec![u32::MAX; n];
    let mut kept = Vec::new();
    for (i, s) in states.iter().enumerate() {
        if keep[i] {
            remap[i] = kept.len() as u32;
            kept.push(*s);
        }
    }
    edges.retain(|&(t, s, _)| keep[t as usize] && keep[s as usize]);
    edges.iter_mut().for_each(|e| *e = (remap[e.0 as usize], remap[e.1 as usize], e.2));
    *states = kept;
}

/// Builds the transfer matrix. The default is unmerged and trimmed, with
/// 0/1 entries.
///
/// A merged build works on orbit representatives throughout. Its entry
/// `(T, S)` is the number of states of class `S` with a transition into the
/// representative of `T`.
pub fn build_matrix(gadget: &Gadget, mode: Mode, opts: BuildOptions) -> Result<TransferMatrix> {
    let b = Board::new(gadget)?;
    let full = ColumnState::full(b.n0);
    let orbits = opts.merge.then(|| Orbits { group: row_symmetries(gadget) });
    let orbits = orbits.as_ref();
    let (mut states, mut edges) = if opts.trim {
        reachable(&b, mode, opts.rule, orbits, full)
    } else {
        let mut states = enumerate_states(gadget, mode)?;
        if let Some(o) = orbits {
            states.retain(|&s| o.rep(s) == s);
        }
        let index: FxHashMap<ColumnState, u32> = states.iter().enumerate().map(|(i, &s)| (s, i as u32)).collect();
        let edges = states
            .par_iter()
            .enumerate()
            .flat_map_iter(|(si, &s)| {
                let index = &index;
                class_successors(&b, mode, opts.rule, orbits, s).into_iter().map(move |(t, c)| (index[&t], si as u32, c))
            })
            .collect();
        (states, edges)
    };
    if opts.trim {
        let target = states.iter().position(|&s| s == full).expect("full column present");
        trim_to(&mut states, &mut edges, target);
    }

    // canonical order: sorted by packed masks
    let mut order: Vec<usize> = (0..states.len()).collect();
    order.sort_unstable_by_key(|&i| states[i]);
    let mut pos = vec![0u32; states.len()];
    for (p, &i) in order.iter().enumerate() {
        pos[i] = p as u32;
    }
    let states: Vec<ColumnState> = order.iter().map(|&i| states[i]).collect();
    let full_index = states.binary_search(&full).expect("full column present");
    let dim = states.len();

    let class_sizes = orbits.map(|o| states.iter().map(|&s| o.size(s)).collect::<Vec<usize>>());
    let triples = edges
        .into_iter()
        .map(|(t, s, c)| {
            let (t, s) = (pos[t as usize] as usize, pos[s as usize] as usize);
            let c = match &class_sizes {
                // successor counts -> predecessor counts
                Some(sz) => {
                    let total = c * sz[s] as u64;
                    debug_assert_eq!(total % sz[t] as u64, 0);
                    total / sz[t] as u64
                }
                None => c,
            };
            (t, s, c)
        })
        .collect();
    let matrix = SparseMatrix::from_triples(dim, dim, triples)?;
    Ok(TransferMatrix { n0: b.n0, mode, states, class_sizes, full_index, matrix })
}

/// Dominant eigenvalue of the default build and the bound `lambda^(1/n0)`.
pub fn growth_bound(gadget: &Gadget, mode: Mode) -> Result<SpectralResult> {
    build_matrix(gadget, mode, BuildOptions::default())?.spectral(SpectralOptions::default())
}

/// Successive ratios `N(M^(k+1)) / N(M^k)` for `k = 2..k_max-1`, from exact
/// counts of the glued graphs.
pub fn ratio_estimate(gadget: &Gadget, mode: Mode, k_max: usize) -> Result<Vec<f64>> {
    if k_max < 3 {
        return Err(Error::invalid("ratio_estimate needs k_max >= 3"));
    }
    let counts = (2..=k_max)
        .map(|k| {
            let g = glue(gadget, k)?;
            Ok(counting::count(&g, mode.count_mode(), Engine::Recursive, Limits::default())?.count)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(counts.windows(2).map(|w| counting::ln_big(&w[1]) - counting::ln_big(&w[0])).map(f64::exp).collect())
}

impl fmt::Display for SpectralResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "lambda={} bound={} iterations={} residual={:e}", self.lambda, self.bound, self.iterations, self.residual)?;
        if let Some(s) = self.second_modulus {
            write!(f, " second={s}")?;
        }
        Ok(())
    }
}
