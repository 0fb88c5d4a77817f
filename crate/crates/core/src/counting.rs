//! Exact counts of connected sets, dominating connected sets and
//! independent sets.
//!
//! Two engines are provided. The brute engine walks all `2^n` subsets and is
//! gated by an order budget; the recursive engine starts from the whole
//! vertex set and peels off non-cut vertices, visiting each connected set
//! once through a hash set of masks.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use rustc_hash::FxHashSet;

use crate::error::{Error, Result};
use crate::graph::{articulation_points, Bits, Graph};
use crate::graph6::to_graph6;

pub type BigCount = BigUint;

/// Default order limit of the brute engine.
pub const BRUTE_MAX_ORDER: usize = 30;

/// Default cap on the number of sets the recursive engine may memoize.
pub const DEFAULT_MEMO_LIMIT: usize = 400_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CountMode {
    Connected,
    DominatingConnected,
    Independent,
}

impl CountMode {
    pub fn name(self) -> &'static str {
        match self {
            CountMode::Connected => "connected",
            CountMode::DominatingConnected => "dominating",
            CountMode::Independent => "independent",
        }
    }
}

impl fmt::Display for CountMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CountMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "connected" => Ok(CountMode::Connected),
            "dominating" | "dominating_connected" => Ok(CountMode::DominatingConnected),
            "independent" => Ok(CountMode::Independent),
            _ => Err(Error::invalid(format!("unknown count mode `{s}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Engine {
    Brute,
    Recursive,
    Both,
}

impl FromStr for Engine {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "brute" => Ok(Engine::Brute),
            "recursive" => Ok(Engine::Recursive),
            "both" => Ok(Engine::Both),
            _ => Err(Error::invalid(format!("unknown engine `{s}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Limits {
    pub brute_max_order: usize,
    pub memo_limit: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { brute_max_order: BRUTE_MAX_ORDER, memo_limit: DEFAULT_MEMO_LIMIT }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CountResult {
    pub n: usize,
    pub count: BigCount,
    pub mode: CountMode,
    pub c: f64,
}

impl CountResult {
    pub fn new(n: usize, count: BigCount, mode: CountMode) -> Self {
        let c = if n == 0 || count.is_zero() { 0.0 } else { c_value(&count, n) };
        CountResult { n, count, mode, c }
    }
}

fn check_budget(g: &Graph, limit: usize) -> Result<()> {
    if g.order() > limit {
        return Err(Error::Budget(format!(
            "brute force over 2^{} subsets exceeds the order limit {limit}; use the recursive engine",
            g.order()
        )));
    }
    Ok(())
}

/// Counts the masks in `0..2^n` accepted by `pred`, splitting the range
/// across threads once it is large enough to matter.
fn count_masks<F>(n: usize, pred: F) -> u64
where
    F: Fn(u64) -> bool + Sync,
{
    let total = 1u64 << n;
    if n <= 16 {
        return (0..total).filter(|&m| pred(m)).count() as u64;
    }
    let chunk_bits = 16;
    (0..total >> chunk_bits)
        .into_par_iter()
        .map(|hi| {
            let base = hi << chunk_bits;
            (0..1u64 << chunk_bits).filter(|&lo| pred(base | lo)).count() as u64
        })
        .sum()
}

fn flood(adj: &[u64], s: u64) -> u64 {
    let mut seen = s & s.wrapping_neg();
    let mut frontier = seen;
    while frontier != 0 {
        let mut next = 0;
        for v in Bits(frontier) {
            next |= adj[v];
        }
        frontier = next & s & !seen;
        seen |= frontier;
    }
    seen
}

fn dominates(adj: &[u64], full: u64, s: u64) -> bool {
    let mut covered = s;
    for v in Bits(s) {
        covered |= adj[v];
    }
    covered & full == full
}

pub fn count_connected_brute(g: &Graph) -> Result<BigCount> {
    count_brute(g, CountMode::Connected, BRUTE_MAX_ORDER)
}

pub fn count_dom_connected_brute(g: &Graph) -> Result<BigCount> {
    count_brute(g, CountMode::DominatingConnected, BRUTE_MAX_ORDER)
}

pub fn count_independent_brute(g: &Graph) -> Result<BigCount> {
    count_brute(g, CountMode::Independent, BRUTE_MAX_ORDER)
}

/// Exhaustive count over all subsets. Connected and dominating counts
/// exclude the empty set; the independent count includes it.
pub fn count_brute(g: &Graph, mode: CountMode, max_order: usize) -> Result<BigCount> {
    check_budget(g, max_order)?;
    let adj = g.adjacency();
    let n = g.order();
    let full = g.vertices().bits();
    let c = match mode {
        CountMode::Connected => count_masks(n, |m| m != 0 && flood(adj, m) == m),
        CountMode::DominatingConnected => {
            count_masks(n, |m| m != 0 && dominates(adj, full, m) && flood(adj, m) == m)
        }
        CountMode::Independent => count_masks(n, |m| Bits(m).all(|v| adj[v] & m == 0)),
    };
    Ok(BigCount::from(c))
}

pub fn count_connected_recursive(g: &Graph) -> Result<BigCount> {
    count_recursive(g, CountMode::Connected, DEFAULT_MEMO_LIMIT)
}

pub fn count_dom_connected_recursive(g: &Graph) -> Result<BigCount> {
    count_recursive(g, CountMode::DominatingConnected, DEFAULT_MEMO_LIMIT)
}

/// Downward generation from `V(G)`: each visited set spawns the sets
/// obtained by deleting one of its non-cut vertices. In dominating mode a
/// deletion is only taken when the remainder still dominates.
pub fn count_recursive(g: &Graph, mode: CountMode, memo_limit: usize) -> Result<BigCount> {
    let dominating = match mode {
        CountMode::Connected => false,
        CountMode::DominatingConnected => true,
        CountMode::Independent => {
            return Err(Error::invalid("the recursive engine counts connected sets only"))
        }
    };
    if g.order() == 0 {
        return Ok(BigCount::zero());
    }
    if !g.is_connected() {
        return Err(Error::Contract(format!(
            "recursive engine needs a connected graph, got {}",
            to_graph6(g)
        )));
    }
    let adj = g.adjacency();
    let full = g.vertices().bits();
    let mut seen: FxHashSet<u64> = FxHashSet::default();
    let mut stack = vec![full];
    seen.insert(full);
    while let Some(s) = stack.pop() {
        let removable = s & !articulation_points(adj, s);
        for u in Bits(removable) {
            let t = s & !(1u64 << u);
            if t == 0 || seen.contains(&t) {
                continue;
            }
            if dominating && !still_dominates(adj, t, u) {
                continue;
            }
            if seen.len() >= memo_limit {
                return Err(Error::Budget(format!("memo table reached its limit of {memo_limit} sets")));
            }
            seen.insert(t);
            stack.push(t);
        }
    }
    Ok(BigCount::from(seen.len()))
}

/// Whether `t = s \ {u}` still dominates, given that `s` did: only `u` and
/// its neighbours can have lost their dominator.
fn still_dominates(adj: &[u64], t: u64, u: usize) -> bool {
    if adj[u] & t == 0 {
        return false;
    }
    Bits(adj[u] & !t).all(|w| adj[w] & t != 0)
}

/// Runs the requested engine, or both with a cross-check.
pub fn count(g: &Graph, mode: CountMode, engine: Engine, limits: Limits) -> Result<CountResult> {
    let value = match (mode, engine) {
        (CountMode::Independent, _) => count_brute(g, mode, limits.brute_max_order)?,
        (_, Engine::Brute) => count_brute(g, mode, limits.brute_max_order)?,
        (_, Engine::Recursive) => recursive_any(g, mode, limits.memo_limit)?,
        (_, Engine::Both) => {
            let a = count_brute(g, mode, limits.brute_max_order)?;
            let b = recursive_any(g, mode, limits.memo_limit)?;
            if a != b {
                return Err(Error::EngineMismatch {
                    graph6: to_graph6(g),
                    brute: a.to_string(),
                    recursive: b.to_string(),
                });
            }
            a
        }
    };
    Ok(CountResult::new(g.order(), value, mode))
}

/// Recursive count that also accepts disconnected graphs: `N` adds over
/// components and `N_dom` vanishes once there are two of them.
fn recursive_any(g: &Graph, mode: CountMode, memo_limit: usize) -> Result<BigCount> {
    let comps = g.components();
    if comps.len() <= 1 {
        return count_recursive(g, mode, memo_limit);
    }
    if mode == CountMode::DominatingConnected {
        return Ok(BigCount::zero());
    }
    let mut total = BigCount::zero();
    for c in comps {
        total += count_recursive(&g.induced(c), mode, memo_limit)?;
    }
    Ok(total)
}

/// Natural logarithm of a positive big integer, from its top 64 bits and
/// binary exponent.
pub fn ln_big(x: &BigCount) -> f64 {
    assert!(!x.is_zero(), "logarithm of zero");
    let shift = x.bits().saturating_sub(64);
    let top = (x >> shift).to_u64().expect("at most 64 bits remain");
    (top as f64).ln() + shift as f64 * std::f64::consts::LN_2
}

/// `count^(1/n)`, accurate for counts beyond `f64` range.
pub fn c_value(count: &BigCount, n: usize) -> f64 {
    assert!(n >= 1, "c_value needs n >= 1");
    if count.is_one() {
        return 1.0;
    }
    (ln_big(count) / n as f64).exp()
}

/// Rounds to four decimals, halves upward. A strict ceiling would turn
/// 233^(1/8) = 1.976603 into 1.9767 rather than the expected 1.9766.
pub fn round_4(x: f64) -> f64 {
    (x * 1e4 + 0.5).floor() / 1e4
}

/// Formats with 9 significant digits.
pub fn sig9(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let mag = x.abs().log10().floor() as i32;
    let decimals = (8 - mag).max(0) as usize;
    format!("{x:.decimals$}")
}
