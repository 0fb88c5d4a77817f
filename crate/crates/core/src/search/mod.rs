//! Exhaustive extremal search over regular-graph corpora.

mod generate;

use std::fmt;
use std::fs::File;
use std::io::BufReader;
use std::path::{Path, PathBuf};

use rayon::prelude::*;

pub use generate::{check_parameters, for_each_regular, generate_regular, CUBIC_MAX_ORDER, QUARTIC_MAX_ORDER};

use crate::canon::{canonical_form, canonical_graph6};
use crate::counting::{c_value, count_recursive, round_4, sig9, BigCount, CountMode, DEFAULT_MEMO_LIMIT};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::graph6::{read_graph6, to_graph6};

#[derive(Clone, Debug)]
pub struct SearchReport {
    pub n: usize,
    pub d: usize,
    pub girth_min: usize,
    pub mode: CountMode,
    pub max_count: BigCount,
    pub c: f64,
    /// Argmax graphs in canonical labeling, sorted by graph6.
    pub extremal: Vec<Graph>,
    pub graphs_examined: usize,
    /// Smallest girth among the extremal graphs; `None` if they are acyclic.
    pub extremal_girth: Option<usize>,
}

impl SearchReport {
    /// One TSV row per extremal graph:
    /// `n d g mode count c extremal_graph6 extremal_girth`.
    pub fn tsv_rows(&self) -> Vec<String> {
        self.extremal
            .iter()
            .map(|g| {
                format!(
                    "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
                    self.n,
                    self.d,
                    self.girth_min,
                    self.mode.name(),
                    self.max_count,
                    sig9(self.c),
                    to_graph6(g),
                    g.girth().map_or("inf".to_string(), |x| x.to_string()),
                )
            })
            .collect()
    }
}

pub const TSV_HEADER: &str = "n\td\tg\tmode\tcount\tc\textremal_graph6\textremal_girth";

#[derive(Clone, Debug, Default)]
struct Best {
    count: BigCount,
    graphs: Vec<Graph>,
    examined: usize,
}

impl Best {
    fn offer(mut self, count: BigCount, g: &Graph) -> Self {
        self.examined += 1;
        if count > self.count || self.graphs.is_empty() {
            self.count = count;
            self.graphs = vec![g.clone()];
        } else if count == self.count {
            self.graphs.push(g.clone());
        }
        self
    }

    fn merge(mut self, other: Best) -> Best {
        self.examined += other.examined;
        if other.graphs.is_empty() {
            return self;
        }
        if self.graphs.is_empty() || other.count > self.count {
            other.graphs.clone_into(&mut self.graphs);
            self.count = other.count;
        } else if other.count == self.count {
            self.graphs.extend(other.graphs);
        }
        self
    }
}

/// Counts every graph in `graphs` (in parallel) and reports the maximum.
///
/// All graphs must share one order. `d` is taken from the first graph and
/// every graph must be regular of that degree. `girth_min` is recorded in
/// the report; when `None` the smallest girth seen in the stream is used.
pub fn search_extremal(graphs: &[Graph], mode: CountMode, girth_min: Option<usize>) -> Result<SearchReport> {
    let first = graphs.first().ok_or_else(|| Error::invalid("search needs at least one graph"))?;
    let n = first.order();
    let d = first
        .regular_degree()
        .ok_or_else(|| Error::invalid(format!("{} is not regular", to_graph6(first))))?;
    for g in graphs {
        if g.order() != n {
            return Err(Error::invalid(format!("mixed orders in stream: {} and {}", n, g.order())));
        }
        if g.regular_degree() != Some(d) {
            return Err(Error::invalid(format!("{} is not {d}-regular", to_graph6(g))));
        }
        if !g.is_connected() {
            return Err(Error::invalid(format!("{} is not connected", to_graph6(g))));
        }
    }
    if matches!(mode, CountMode::Independent) {
        return Err(Error::invalid("search supports connected and dominating modes"));
    }

    let best = graphs
        .par_iter()
        .map(|g| count_recursive(g, mode, DEFAULT_MEMO_LIMIT).map(|c| (c, g)))
        .try_fold(Best::default, |acc, r| r.map(|(c, g)| acc.offer(c, g)))
        .try_reduce(Best::default, |a, b| Ok(a.merge(b)))?;

    let mut extremal: Vec<(String, Graph)> = Vec::new();
    for g in &best.graphs {
        let code = canonical_graph6(g);
        if !extremal.iter().any(|(c, _)| *c == code) {
            extremal.push((code, canonical_form(g)));
        }
    }
    extremal.sort_by(|a, b| a.0.cmp(&b.0));
    let extremal: Vec<Graph> = extremal.into_iter().map(|(_, g)| g).collect();
    let extremal_girth = extremal.iter().filter_map(Graph::girth).min();
    let girth_min = girth_min.unwrap_or_else(|| graphs.iter().filter_map(Graph::girth).min().unwrap_or(0));
    Ok(SearchReport {
        n,
        d,
        girth_min,
        mode,
        c: c_value(&best.count, n),
        max_count: best.count,
        extremal,
        graphs_examined: best.examined,
        extremal_girth,
    })
}

/// Searches all generated graphs with the given parameters. With `jobs`,
/// counting runs on a dedicated pool of that many threads.
pub fn search_generated(n: usize, d: usize, girth: usize, mode: CountMode, jobs: Option<usize>) -> Result<SearchReport> {
    let graphs = generate_regular(n, d, girth)?;
    if graphs.is_empty() {
        return Err(Error::invalid(format!("no connected {d}-regular graph on {n} vertices with girth >= {girth}")));
    }
    in_pool(jobs, || search_extremal(&graphs, mode, Some(girth)))
}

/// Runs `f` on a pool with `jobs` threads, or on the global pool.
pub fn in_pool<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> Result<T> + Send) -> Result<T> {
    match jobs {
        None => f(),
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build()
            .map_err(|e| Error::invalid(format!("thread pool: {e}")))?
            .install(f),
    }
}

/// Reads a graph6 file, one graph per line.
pub fn read_graph6_file(path: &Path) -> Result<Vec<Graph>> {
    read_graph6(BufReader::new(File::open(path)?))
}

/// File name expected in a corpus directory for one table row.
pub fn corpus_file_name(n: usize, d: usize, g: usize) -> String {
    format!("n{n}_d{d}_g{g}.g6")
}

#[derive(Clone, Debug)]
pub struct TableRow {
    pub n: usize,
    pub g: usize,
    pub c: f64,
    /// `c` rounded to four decimals.
    pub c4: f64,
    pub extremal_girth: Option<usize>,
    pub report: SearchReport,
}

impl fmt::Display for TableRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}\t{}\t{:.4}\t{}\t{}\t{}\t{}",
            self.n,
            self.g,
            self.c4,
            sig9(self.c),
            self.extremal_girth.map_or("inf".to_string(), |x| x.to_string()),
            self.report.max_count,
            self.report.extremal.len(),
        )
    }
}

pub const TABLE_HEADER: &str = "n\tg\tc4\tc\tg_ex\tcount\textremal";

/// One table row per order. Orders with a corpus file
/// (see [`corpus_file_name`]) are read from `corpus`; the rest are
/// generated within the default limits.
pub fn table_rows(d: usize, g: usize, orders: &[usize], mode: CountMode, corpus: Option<&Path>) -> Result<Vec<TableRow>> {
    orders
        .iter()
        .map(|&n| {
            let file: Option<PathBuf> = corpus.map(|dir| dir.join(corpus_file_name(n, d, g))).filter(|p| p.is_file());
            let report = match file {
                Some(path) => {
                    let graphs: Vec<Graph> = read_graph6_file(&path)?
                        .into_iter()
                        .filter(|x| x.girth().map_or(true, |gi| gi >= g))
                        .collect();
                    if graphs.is_empty() {
                        return Err(Error::invalid(format!("{} has no graph of girth >= {g}", path.display())));
                    }
                    search_extremal(&graphs, mode, Some(g))?
                }
                None => search_generated(n, d, g, mode, None)?,
            };
            Ok(TableRow {
                n,
                g,
                c: report.c,
                c4: round_4(report.c),
                extremal_girth: report.extremal_girth,
                report,
            })
        })
        .collect()
}
