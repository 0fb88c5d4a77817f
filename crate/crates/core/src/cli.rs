//! Command-line front end. Exit codes: 0 success, 1 computation error,
//! 2 usage error.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::counting::{self, sig9, CountMode, Engine, Limits};
use crate::error::{Error, Result};
use crate::families::{self, Gadget};
use crate::graph::Graph;
use crate::graph6::to_graph6;
use crate::search::{self, TABLE_HEADER, TSV_HEADER};
use crate::transfer::{self, spectral, BuildOptions, FixedRule, Mode};

#[derive(Parser, Debug)]
#[command(name = "consets", version, about = "Count connected and dominating connected vertex sets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Count connected (or dominating connected, or independent) sets of each graph in a graph6 file.
    Count {
        #[arg(long = "in", value_name = "FILE")]
        input: PathBuf,
        #[arg(long, conflicts_with = "independent")]
        dominating: bool,
        #[arg(long)]
        independent: bool,
        #[arg(long, default_value = "recursive", value_parser = parse_engine)]
        engine: Engine,
    },
    /// Print a named graph, or `glue` copies of a gadget, as graph6.
    Family {
        #[arg(long)]
        name: String,
        #[arg(long, value_delimiter = ',')]
        params: Vec<usize>,
        #[command(flatten)]
        gadget: OptionalGadget,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Build the transfer matrix of a gadget and report its spectrum.
    Transfer {
        #[command(flatten)]
        gadget: GadgetArgs,
        #[arg(long, value_parser = parse_mode)]
        mode: Mode,
        #[arg(long)]
        merge: bool,
        #[arg(long)]
        no_trim: bool,
        #[arg(long)]
        second: bool,
        #[arg(long, value_name = "FILE")]
        dump_matrix: Option<PathBuf>,
        #[arg(long, default_value_t = transfer::DEFAULT_TOL)]
        tol: f64,
        #[arg(long, default_value_t = transfer::DEFAULT_MAX_ITER)]
        max_iter: usize,
        /// Which occupied cells of a new column count as fixed.
        #[arg(long, default_value = "column", value_parser = parse_rule)]
        rule: FixedRule,
    },
    /// Find the regular graphs with the most connected (dominating) sets.
    Search {
        #[arg(long = "in", value_name = "FILE", required_unless_present = "gen", conflicts_with = "gen")]
        input: Option<PathBuf>,
        #[arg(long, value_name = "n=N,d=D,girth=G", value_parser = parse_gen)]
        gen: Option<GenSpec>,
        #[arg(long)]
        dominating: bool,
        #[arg(long)]
        jobs: Option<usize>,
        /// Generate beyond the default order limits.
        #[arg(long)]
        allow_large: bool,
    },
    /// Rows of the extremal table for degree D and girth at least G.
    Table {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        g: usize,
        #[arg(long, value_delimiter = ',', required = true)]
        n_list: Vec<usize>,
        #[arg(long)]
        dominating: bool,
        #[arg(long, value_name = "DIR")]
        corpus: Option<PathBuf>,
    },
    /// Successive count ratios of glued graphs.
    Ratio {
        #[command(flatten)]
        gadget: GadgetArgs,
        #[arg(long)]
        k_max: usize,
        #[arg(long)]
        dominating: bool,
    },
}

#[derive(Args, Debug)]
struct GadgetArgs {
    #[arg(long, value_name = "FILE")]
    gadget: PathBuf,
    #[arg(long, value_delimiter = ',', required = true)]
    cycle: Vec<usize>,
}

#[derive(Args, Debug)]
struct OptionalGadget {
    #[arg(long, value_name = "FILE", requires = "cycle")]
    gadget: Option<PathBuf>,
    #[arg(long, value_delimiter = ',')]
    cycle: Vec<usize>,
}

#[derive(Clone, Copy, Debug)]
struct GenSpec {
    n: usize,
    d: usize,
    girth: usize,
}

fn parse_engine(s: &str) -> std::result::Result<Engine, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_mode(s: &str) -> std::result::Result<Mode, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_rule(s: &str) -> std::result::Result<FixedRule, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_gen(s: &str) -> std::result::Result<GenSpec, String> {
    let (mut n, mut d, mut girth) = (None, None, 3);
    for part in s.split(',') {
        let (k, v) = part.split_once('=').ok_or_else(|| format!("expected key=value, got `{part}`"))?;
        let v: usize = v.trim().parse().map_err(|_| format!("`{v}` is not a number"))?;
        match k.trim() {
            "n" => n = Some(v),
            "d" => d = Some(v),
            "girth" | "g" => girth = v,
            other => return Err(format!("unknown key `{other}`")),
        }
    }
    Ok(GenSpec { n: n.ok_or("missing n=")?, d: d.ok_or("missing d=")?, girth })
}

fn read_graphs(path: &Path) -> Result<Vec<Graph>> {
    let gs = search::read_graph6_file(path)?;
    if gs.is_empty() {
        return Err(Error::invalid(format!("{} contains no graph", path.display())));
    }
    Ok(gs)
}

fn load_gadget(path: &Path, cycle: &[usize]) -> Result<Gadget> {
    let base = read_graphs(path)?.swap_remove(0);
    Gadget::new(base, cycle.to_vec())
}

fn connected_or_dominating(dominating: bool) -> CountMode {
    if dominating {
        CountMode::DominatingConnected
    } else {
        CountMode::Connected
    }
}

enum Failure {
    Usage(String),
    Compute(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Compute(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Compute(e.into())
    }
}

fn execute(cmd: Command, out: &mut dyn Write) -> std::result::Result<(), Failure> {
    match cmd {
        Command::Count { input, dominating, independent, engine } => {
            let mode = if independent { CountMode::Independent } else { connected_or_dominating(dominating) };
            let graphs = read_graphs(&input)?;
            writeln!(out, "graph6\tn\tmode\tcount\tc")?;
            for g in &graphs {
                let r = counting::count(g, mode, engine, Limits::default())?;
                writeln!(out, "{}\t{}\t{}\t{}\t{}", to_graph6(g), r.n, mode.name(), r.count, sig9(r.c))?;
            }
        }
        Command::Family { name, params, gadget, k, out: path } => {
            let g = if name == "glue" {
                let (Some(file), Some(k)) = (gadget.gadget, k) else {
                    return Err(Failure::Usage("family glue needs --gadget, --cycle and --k".into()));
                };
                families::glue(&load_gadget(&file, &gadget.cycle)?, k)?
            } else {
                if gadget.gadget.is_some() || k.is_some() {
                    return Err(Failure::Usage("--gadget and --k only apply to --name glue".into()));
                }
                if !families::FAMILY_NAMES.contains(&name.as_str()) {
                    return Err(Failure::Usage(format!(
                        "unknown family `{name}`; known: glue, {}",
                        families::FAMILY_NAMES.join(", ")
                    )));
                }
                families::standard_family(&name, &params)?
            };
            let line = to_graph6(&g);
            match path {
                Some(p) => fs::write(p, format!("{line}\n"))?,
                None => writeln!(out, "{line}")?,
            }
        }
        Command::Transfer { gadget, mode, merge, no_trim, second, dump_matrix, tol, max_iter, rule } => {
            if tol.is_nan() || tol <= 0.0 || max_iter == 0 {
                return Err(Failure::Usage("--tol must be positive and --max-iter nonzero".into()));
            }
            let gadget = load_gadget(&gadget.gadget, &gadget.cycle)?;
            let t = transfer::build_matrix(&gadget, mode, BuildOptions { merge, trim: !no_trim, rule })?;
            if let Some(p) = dump_matrix {
                let mut f = std::io::BufWriter::new(fs::File::create(p)?);
                t.matrix.write_dump(&mut f)?;
                f.flush()?;
            }
            let dom = spectral::dominant_eigenvalue(&t.matrix, tol, max_iter)?;
            writeln!(out, "mode\t{}", mode.name())?;
            writeln!(out, "states\t{}", t.dim())?;
            writeln!(out, "nonzeros\t{}", t.matrix.nnz())?;
            writeln!(out, "lambda\t{}", sig9(dom.lambda))?;
            writeln!(out, "bound\t{}", sig9(dom.lambda.powf(1.0 / t.n0 as f64)))?;
            writeln!(out, "iterations\t{}", dom.iterations)?;
            writeln!(out, "residual\t{:.3e}", dom.residual)?;
            if second {
                match spectral::second_modulus(&t.matrix, &dom, max_iter) {
                    Ok(s) => writeln!(out, "second\t{}", sig9(s))?,
                    Err(e) => writeln!(out, "second\tunavailable ({e})")?,
                }
            }
        }
        Command::Search { input, gen, dominating, jobs, allow_large } => {
            if jobs == Some(0) {
                return Err(Failure::Usage("--jobs must be at least 1".into()));
            }
            let mode = connected_or_dominating(dominating);
            let (graphs, girth) = match (input, gen) {
                (Some(p), _) => (read_graphs(&p)?, None),
                (None, Some(s)) => {
                    let mut gs = Vec::new();
                    search::for_each_regular(s.n, s.d, s.girth, allow_large, |g| gs.push(g))?;
                    if gs.is_empty() {
                        return Err(Failure::Compute(Error::Invalid(format!(
                            "no connected {}-regular graph on {} vertices with girth >= {}",
                            s.d, s.n, s.girth
                        ))));
                    }
                    (gs, Some(s.girth))
                }
                (None, None) => unreachable!("clap requires --in or --gen"),
            };
            let report = search::in_pool(jobs, || search::search_extremal(&graphs, mode, girth))?;
            writeln!(out, "# examined {}", report.graphs_examined)?;
            writeln!(out, "{TSV_HEADER}")?;
            for row in report.tsv_rows() {
                writeln!(out, "{row}")?;
            }
        }
        Command::Table { d, g, n_list, dominating, corpus } => {
            let rows = search::table_rows(d, g, &n_list, connected_or_dominating(dominating), corpus.as_deref())?;
            writeln!(out, "{TABLE_HEADER}")?;
            for r in rows {
                writeln!(out, "{r}")?;
            }
        }
        Command::Ratio { gadget, k_max, dominating } => {
            if k_max < 3 {
                return Err(Failure::Usage("--k-max must be at least 3".into()));
            }
            let gadget = load_gadget(&gadget.gadget, &gadget.cycle)?;
            let mode = if dominating { Mode::Dominating } else { Mode::Connected };
            let ratios = transfer::ratio_estimate(&gadget, mode, k_max)?;
            writeln!(out, "k\tratio")?;
            for (i, r) in ratios.iter().enumerate() {
                writeln!(out, "{}\t{}", i + 3, sig9(*r))?;
            }
        }
    }
    Ok(())
}

/// Parses `args` (including the program name) and runs the command,
/// writing results to `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(()) => 0,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(Failure::Compute(e)) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gen_spec() {
        let s = parse_gen("n=10,d=3,girth=5").unwrap();
        assert_eq!((s.n, s.d, s.girth), (10, 3, 5));
        assert_eq!(parse_gen("d=4,n=8").unwrap().girth, 3);
        assert!(parse_gen("n=10").is_err());
        assert!(parse_gen("n=10,d=3,x=1").is_err());
        assert!(parse_gen("n=ten,d=3").is_err());
    }
}
