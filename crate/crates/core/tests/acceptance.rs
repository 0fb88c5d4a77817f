//! Acceptance suite: one line per criterion, then a summary.
//!
//! Runs without the libtest harness so the report is printed as it goes.
//! Exits nonzero if any criterion outside `KNOWN_FAILING` fails, or if a
//! criterion listed there starts passing.

use std::time::Instant;

use consets::canon::is_isomorphic;
use consets::counting::{self, c_value, round_4, BigCount, CountMode};
use consets::families::{self, Gadget};
use consets::search::{self, generate_regular};
use consets::transfer::{self, BuildOptions, Mode, SparseMatrix, SpectralOptions};
use consets::Graph;
use num_bigint::BigUint;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

/// Criteria that fail for a documented reason (see README).
const KNOWN_FAILING: &[u32] = &[9];

const FIXTURE_LAMBDA_TOL: f64 = 1e-3;
const FIXTURE_DOM_LAMBDA_TOL: f64 = 1e-6;
const TABLE3_LAMBDA_TOL: f64 = 0.01;
const TABLE3_BOUND_TOL: f64 = 0.001;
const RATIO_TOL_K4: f64 = 0.02;
const RATIO_TOL_K4_DOM: f64 = 0.03;
const RATIO_TOL_K33: f64 = 0.05;
const RANDOM_GRAPHS: usize = 500;
const PROPERTY_CASES: usize = 120;

type Outcome = Result<String, String>;
type Criterion = (u32, &'static str, fn() -> Outcome);

fn check(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn big(x: u64) -> BigCount {
    BigUint::from(x)
}

fn both_engines(g: &Graph, mode: CountMode) -> Result<BigCount, String> {
    let b = counting::count_brute(g, mode, counting::BRUTE_MAX_ORDER).map_err(|e| e.to_string())?;
    let r = counting::count_recursive(g, mode, counting::DEFAULT_MEMO_LIMIT).map_err(|e| e.to_string())?;
    check(b == r, format!("engines disagree on {}: {b} vs {r}", consets::to_graph6(g)))?;
    Ok(b)
}

fn c1_cycle_formula() -> Outcome {
    for a in 3u64..=20 {
        let n = both_engines(&families::cycle(a as usize).unwrap(), CountMode::Connected)?;
        check(n == big(a * a - a + 1), format!("C_{a}: {n}"))?;
    }
    Ok("a = 3..20, both engines".into())
}

fn c2_multipartite() -> Outcome {
    for (n, d) in [(6u32, 3u32), (8, 4), (9, 6), (10, 5), (12, 8)] {
        let r = n / (n - d);
        let g = families::complete_multipartite(&vec![(n - d) as usize; r as usize]).unwrap();
        let base = (1u64 << n) - r as u64 * (1u64 << (n - d));
        let want_n = base + n as u64 + r as u64 - 1;
        let want_dom = base + r as u64 - 1;
        let got_n = both_engines(&g, CountMode::Connected)?;
        let got_dom = both_engines(&g, CountMode::DominatingConnected)?;
        check(got_n == big(want_n), format!("N for (n,d)=({n},{d}): {got_n} vs {want_n}"))?;
        check(got_dom == big(want_dom), format!("N_dom for ({n},{d}): {got_dom} vs {want_dom}"))?;
    }
    Ok("5 (n,d) pairs, N and N_dom".into())
}

fn c3_named_values() -> Outcome {
    let n = |g: &Graph| both_engines(g, CountMode::Connected);
    check(n(&families::complete_bipartite(4, 4).unwrap())? == big(233), "N(K44)")?;
    let k34pp = families::near_extremal(7, 4).unwrap();
    check(n(&k34pp)? == big(114), "N(K34++)")?;
    let k24c4 = families::near_extremal(6, 4).unwrap();
    check(n(&k24c4)? == big(60), "N(K24 u C4)")?;
    for d in [4u64, 6, 8] {
        let p = |e: u64| (1u64 << e) - 1;
        let matching = p(d) * p(d - 1) + 5 * d / 2 - 1;
        let cycle = p(d) * p(d - 2) + d * d - 1;
        let got_m = n(&families::near_extremal(2 * d as usize - 1, d as usize).unwrap())?;
        let got_c = n(&families::near_extremal(2 * d as usize - 2, d as usize).unwrap())?;
        check(got_m == big(matching), format!("matching form d={d}: {got_m} vs {matching}"))?;
        check(got_c == big(cycle), format!("cycle form d={d}: {got_c} vs {cycle}"))?;
    }
    Ok("233, 114, 60; closed forms for d = 4, 6, 8".into())
}

fn random_connected(rng: &mut StdRng, max_n: usize) -> Graph {
    loop {
        let n = rng.gen_range(1..=max_n);
        let p: f64 = rng.gen_range(0.1..0.7);
        let mut g = Graph::empty(n).unwrap();
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(p) {
                    g.add_edge(u, v);
                }
            }
        }
        if g.is_connected() {
            return g;
        }
    }
}

fn c4_engine_agreement() -> Outcome {
    let mut cubic = 0;
    for n in (4..=12).step_by(2) {
        for g in generate_regular(n, 3, 3).map_err(|e| e.to_string())? {
            both_engines(&g, CountMode::Connected)?;
            both_engines(&g, CountMode::DominatingConnected)?;
            cubic += 1;
        }
    }
    let mut rng = StdRng::seed_from_u64(0xC0FFEE);
    for _ in 0..RANDOM_GRAPHS {
        let g = random_connected(&mut rng, 16);
        both_engines(&g, CountMode::Connected)?;
        both_engines(&g, CountMode::DominatingConnected)?;
    }
    Ok(format!("{cubic} cubic graphs (n <= 12) and {RANDOM_GRAPHS} random graphs (n <= 16), both modes"))
}

struct TableRow {
    n: usize,
    c: f64,
    c_gex: usize,
    dom: f64,
    dom_gex: usize,
}

fn row(n: usize, c: f64, c_gex: usize, dom: f64, dom_gex: usize) -> TableRow {
    TableRow { n, c, c_gex, dom, dom_gex }
}

fn table_check(d: usize, rows: &[TableRow]) -> Result<Vec<search::SearchReport>, String> {
    let mut reports = Vec::new();
    for r in rows {
        let con = search::search_generated(r.n, d, 3, CountMode::Connected, None).map_err(|e| e.to_string())?;
        let dom = search::search_generated(r.n, d, 3, CountMode::DominatingConnected, None).map_err(|e| e.to_string())?;
        check(round_4(con.c) == r.c, format!("n={}: c {} vs {}", r.n, round_4(con.c), r.c))?;
        check(round_4(dom.c) == r.dom, format!("n={}: dominating c {} vs {}", r.n, round_4(dom.c), r.dom))?;
        check(con.extremal_girth == Some(r.c_gex), format!("n={}: extremal girth {:?}", r.n, con.extremal_girth))?;
        check(dom.extremal_girth == Some(r.dom_gex), format!("n={}: dominating extremal girth {:?}", r.n, dom.extremal_girth))?;
        reports.push(con);
    }
    Ok(reports)
}

fn c5_table_cubic() -> Outcome {
    let rows = [
        row(4, 1.9680, 3, 1.9680, 3),
        row(6, 1.9501, 4, 1.9129, 4),
        row(8, 1.9044, 4, 1.8358, 4),
        row(10, 1.8855, 5, 1.8127, 5),
        row(12, 1.8644, 5, 1.7957, 5),
        row(14, 1.8563, 6, 1.7860, 6),
    ];
    let reports = table_check(3, &rows)?;
    let named = [
        Some(families::complete(4).unwrap()),
        Some(families::complete_bipartite(3, 3).unwrap()),
        Some(families::moebius_ladder(8).unwrap()),
        Some(families::petersen()),
        None,
        Some(families::heawood()),
    ];
    for (rep, want) in reports.iter().zip(named) {
        check(rep.extremal.len() == 1, format!("n={}: {} extremal graphs", rep.n, rep.extremal.len()))?;
        if let Some(h) = want {
            check(is_isomorphic(&rep.extremal[0], &h), format!("n={}: unexpected extremal graph", rep.n))?;
        }
    }
    Ok("n = 4..14 both modes; extremal K4, K33, Moebius ladder, Petersen, girth-5 (n=12), Heawood".into())
}

fn c6_table_quartic() -> Outcome {
    let rows = [
        row(5, 1.9873, 3, 1.9873, 3),
        row(6, 1.9786, 3, 1.9442, 3),
        row(7, 1.9672, 3, 1.9442, 3),
        row(8, 1.9766, 4, 1.9680, 4),
        row(9, 1.9590, 3, 1.9320, 3),
        row(10, 1.9603, 4, 1.9470, 4),
    ];
    let reports = table_check(4, &rows)?;
    check(reports[3].c > reports[2].c, "no increase from n=7 to n=8")?;
    check(reports[3].max_count == big(233) && reports[2].max_count == big(114), "233 / 114 maxima")?;
    Ok("n = 5..10 both modes; step 1.9672 -> 1.9766 at n = 7 -> 8".into())
}

fn fixture(name: &str) -> SparseMatrix {
    let path = format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    SparseMatrix::read_dump(std::io::BufReader::new(std::fs::File::open(path).unwrap())).unwrap()
}

fn c7_fixtures() -> Outcome {
    let opts = SpectralOptions { second: true, ..Default::default() };
    let a = transfer::spectral_result(&fixture("k4_connected_9x9.txt"), 4, opts).map_err(|e| e.to_string())?;
    check((a.lambda - 8.95242).abs() <= FIXTURE_LAMBDA_TOL, format!("9x9 lambda {}", a.lambda))?;
    let second = a.second_modulus.unwrap();
    check(second < 2.0, format!("9x9 second modulus {second}"))?;
    let b = transfer::spectral_result(&fixture("k4_dominating_13x13.txt"), 4, SpectralOptions::default()).map_err(|e| e.to_string())?;
    check((b.lambda - 8.29488091).abs() <= FIXTURE_DOM_LAMBDA_TOL, format!("13x13 lambda {}", b.lambda))?;
    Ok(format!("9x9: {:.6} (second {:.4}); 13x13: {:.8}", a.lambda, second, b.lambda))
}

fn gadget(base: Graph, cycle: &[usize]) -> Gadget {
    Gadget::new(base, cycle.to_vec()).unwrap()
}

fn c8_growth_bounds() -> Outcome {
    let cases = [
        ("K4/C3", gadget(families::complete(4).unwrap(), &[0, 1, 2]), 8.95242, 8.29488, None),
        ("K33/C4", gadget(families::complete_bipartite(3, 3).unwrap(), &[0, 3, 1, 4]), 30.30, 26.15, Some((1.766, 1.723))),
        ("K44/C6", gadget(families::complete_bipartite(4, 4).unwrap(), &[0, 4, 1, 5, 2, 6]), 167.97, 152.66, Some((1.897, 1.875))),
    ];
    let mut report = Vec::new();
    for (name, g, lc, ld, bounds) in cases {
        let c = transfer::growth_bound(&g, Mode::Connected).map_err(|e| e.to_string())?;
        let d = transfer::growth_bound(&g, Mode::Dominating).map_err(|e| e.to_string())?;
        check((c.lambda - lc).abs() <= TABLE3_LAMBDA_TOL, format!("{name}: lambda {}", c.lambda))?;
        check((d.lambda - ld).abs() <= TABLE3_LAMBDA_TOL, format!("{name}: dominating lambda {}", d.lambda))?;
        if let Some((bc, bd)) = bounds {
            check((c.bound - bc).abs() <= TABLE3_BOUND_TOL, format!("{name}: bound {}", c.bound))?;
            check((d.bound - bd).abs() <= TABLE3_BOUND_TOL, format!("{name}: dominating bound {}", d.bound))?;
        }
        check(d.lambda <= c.lambda, format!("{name}: dominating exceeds connected"))?;
        report.push(format!("{name} {:.2}/{:.2}", c.lambda, d.lambda));
    }
    Ok(report.join(", "))
}

/// Larger gadgets; reported but not gating.
fn extended_growth_bounds() {
    let cases = [
        ("P52/C6", gadget(families::petersen(), &[0, 1, 2, 7, 9, 4]), 329.81, 252.7, false),
        ("K55/C8", gadget(families::complete_bipartite(5, 5).unwrap(), &[0, 5, 1, 6, 2, 7, 3, 8]), 807.93, 756.64, false),
        ("Heawood/C8", gadget(families::heawood(), &[0, 1, 2, 3, 4, 9, 8, 13]), 3512.31, 2396.46, true),
    ];
    for (name, g, lc, ld, merge) in cases {
        let t0 = Instant::now();
        let opts = BuildOptions { merge, ..Default::default() };
        let lambda = |mode| {
            transfer::build_matrix(&g, mode, opts)
                .and_then(|t| t.spectral(SpectralOptions::default()))
                .map(|r| r.lambda)
        };
        match (lambda(Mode::Connected), lambda(Mode::Dominating)) {
            (Ok(c), Ok(d)) => {
                let ok = (c - lc).abs() <= TABLE3_LAMBDA_TOL && (d - ld).abs() <= TABLE3_LAMBDA_TOL;
                println!(
                    "  info  8x {name}: {c:.2}/{d:.2} (expected {lc}/{ld}) {} [{:.1?}]",
                    if ok { "match" } else { "MISMATCH" },
                    t0.elapsed()
                );
            }
            (a, b) => println!("  info  8x {name}: unavailable ({a:?}, {b:?})"),
        }
    }
}

fn c9_ratios() -> Outcome {
    let k4 = gadget(families::complete(4).unwrap(), &[0, 1, 2]);
    let k33 = gadget(families::complete_bipartite(3, 3).unwrap(), &[0, 3, 1, 4]);
    let cases = [
        ("K4 connected", &k4, Mode::Connected, 6, 8.95242, RATIO_TOL_K4),
        ("K4 dominating", &k4, Mode::Dominating, 6, 8.29488, RATIO_TOL_K4_DOM),
        ("K33 connected", &k33, Mode::Connected, 4, 30.30, RATIO_TOL_K33),
    ];
    let mut lines = Vec::new();
    let mut ok = true;
    for (name, g, mode, k_max, lambda, tol) in cases {
        let ratios = transfer::ratio_estimate(g, mode, k_max).map_err(|e| e.to_string())?;
        let last = *ratios.last().unwrap();
        let rel = last / lambda - 1.0;
        ok &= rel.abs() <= tol;
        lines.push(format!("{name} {last:.4} vs {lambda} ({:+.1}%, tol {:.0}%)", rel * 100.0, tol * 100.0));
    }
    if ok {
        Ok(lines.join("; "))
    } else {
        Err(lines.join("; "))
    }
}

fn c10_generator() -> Outcome {
    let want = [1usize, 2, 5, 19, 85, 509];
    let got: Vec<usize> = (4..=14)
        .step_by(2)
        .map(|n| generate_regular(n, 3, 3).map(|v| v.len()))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    check(got == want, format!("counts {got:?}"))?;
    Ok(format!("cubic n = 4..14: {got:?}"))
}

fn random_graph(rng: &mut StdRng, max_n: usize) -> Graph {
    let n = rng.gen_range(1..=max_n);
    let p: f64 = rng.gen_range(0.1..0.8);
    let mut g = Graph::empty(n).unwrap();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(u, v);
            }
        }
    }
    g
}

fn c11_properties() -> Outcome {
    let mut rng = StdRng::seed_from_u64(11);
    let n = |g: &Graph| counting::count_brute(g, CountMode::Connected, counting::BRUTE_MAX_ORDER).unwrap();
    let dom = |g: &Graph| counting::count_brute(g, CountMode::DominatingConnected, counting::BRUTE_MAX_ORDER).unwrap();
    for _ in 0..PROPERTY_CASES {
        let a = random_graph(&mut rng, 10);
        let b = random_graph(&mut rng, 10);
        let u = a.disjoint_union(&b).unwrap();
        check(n(&u) == n(&a) + n(&b), "N(G+H) != N(G) + N(H)")?;
        check(dom(&u) == big(0), "N_dom(G+H) != 0")?;
    }
    for _ in 0..PROPERTY_CASES {
        let g = random_graph(&mut rng, 14);
        let k = g.order();
        let non_edges: Vec<(usize, usize)> = (0..k).flat_map(|u| (u + 1..k).map(move |v| (u, v))).filter(|&(u, v)| !g.has_edge(u, v)).collect();
        if let Some(&(u, v)) = non_edges.get(rng.gen_range(0..non_edges.len().max(1))) {
            let mut h = g.clone();
            h.add_edge(u, v);
            check(n(&h) >= n(&g), "adding an edge decreased N")?;
        }
        check(dom(&g) <= n(&g), "N_dom > N")?;
    }
    let mut regular = 0;
    for nn in (4..=12).step_by(2) {
        for g in generate_regular(nn, 3, 3).unwrap() {
            check(c_value(&n(&g), nn) < 2.0, "c >= 2")?;
            regular += 1;
        }
    }
    for _ in 0..PROPERTY_CASES {
        let g = random_connected(&mut rng, 16);
        check(c_value(&n(&g), g.order()) < 2.0, "c >= 2")?;
    }
    Ok(format!("{PROPERTY_CASES} cases per property; c < 2 on {regular} cubic and {PROPERTY_CASES} random graphs"))
}

fn main() {
    let criteria: [Criterion; 11] = [
        (1, "cycle formula", c1_cycle_formula),
        (2, "multipartite closed forms", c2_multipartite),
        (3, "named values", c3_named_values),
        (4, "engine agreement", c4_engine_agreement),
        (5, "cubic table, g = 3", c5_table_cubic),
        (6, "quartic table, g = 3", c6_table_quartic),
        (7, "printed matrix spectra", c7_fixtures),
        (8, "builder growth bounds", c8_growth_bounds),
        (9, "count ratio cross-check", c9_ratios),
        (10, "generator counts", c10_generator),
        (11, "property suite", c11_properties),
    ];
    // The Heawood row takes about a minute optimized; skip it in debug builds.
    let extended = !cfg!(debug_assertions) || std::env::var_os("CONSETS_EXTENDED").is_some();
    let mut unexpected = Vec::new();
    let mut passed = 0;
    for (id, name, f) in criteria {
        let t0 = Instant::now();
        let outcome = f();
        let secs = t0.elapsed().as_secs_f64();
        let known = KNOWN_FAILING.contains(&id);
        match &outcome {
            Ok(msg) => {
                passed += 1;
                println!("PASS  {id:>2} {name}: {msg} [{secs:.1}s]");
                if known {
                    unexpected.push(id);
                }
            }
            Err(msg) => {
                let tag = if known { " (known)" } else { "" };
                println!("FAIL  {id:>2} {name}{tag}: {msg} [{secs:.1}s]");
                if !known {
                    unexpected.push(id);
                }
            }
        }
        if id == 8 && extended {
            extended_growth_bounds();
        }
    }
    if !extended {
        println!("  info  extended builder rows skipped (debug build; set CONSETS_EXTENDED=1)");
    }
    println!("acceptance: {passed}/11 passed; known failing: {KNOWN_FAILING:?}");
    if !unexpected.is_empty() {
        println!("acceptance: unexpected outcome for criteria {unexpected:?}");
        std::process::exit(1);
    }
}
