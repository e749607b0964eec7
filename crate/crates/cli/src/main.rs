use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use mono_triangles::catalog::{self, enumerate_v3};
use mono_triangles::cliques::{check_conjecture, clique_report, verify_six_line_bound, ConjectureStatus};
use mono_triangles::coloring::{min_monochromatic, optimal_color_balance, Color, LineColoring, SearchMode, SearchOptions};
use mono_triangles::connected_sum::{connected_sum, Origin, SumSpec};
use mono_triangles::incidence::{classify, parse_configuration};
use mono_triangles::ramsey::{self, EdgeColoring};
use mono_triangles::triangles::{enumerate_triangles, format_triangles};
use mono_triangles::{Configuration, Error, IncidenceGeometry};

/// Exact minimum monochromatic triangle counts for configurations and complete graphs.
#[derive(Parser)]
#[command(name = "monotri", version)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Output::Text)]
    output: Output,
    /// Worker threads (default: all cores). Never changes results.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Give up after this many seconds (exit 2).
    #[arg(long, global = true, value_name = "SECONDS")]
    time_budget: Option<f64>,
    /// Coloring search strategy.
    #[arg(long, global = true, value_enum, default_value_t = Mode::Exhaustive)]
    mode: Mode,
    /// Largest line count accepted by any search mode.
    #[arg(long, global = true, default_value_t = 40)]
    cap: usize,
    /// Allow the long-running cases: `disjoint-min --n 8`, `enumerate --v 11`.
    #[arg(long, global = true)]
    slow: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Output {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Exhaustive,
    Bnb,
}

/// A configuration file (brace or plain format) or a builtin name.
#[derive(Args)]
struct Input {
    /// Path to a configuration file, or a builtin name when no such file exists.
    input: Option<String>,
    /// Use a builtin configuration.
    #[arg(long, conflicts_with = "input")]
    builtin: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and classify a geometry.
    Validate(Input),
    /// List every triangle: points and line indices.
    Triangles(Input),
    /// Minimum monochromatic triangles over line 2-colorings, with a witness.
    MinMono {
        #[command(flatten)]
        input: Input,
        /// Print the Menger graph in DOT format, edges colored by the witness.
        #[arg(long)]
        dot: bool,
    },
    /// Smallest minority color count among optimal colorings.
    Balance(Input),
    /// Goodman's minimum for K_n, cross-checked where feasible.
    Goodman {
        #[arg(long)]
        n: u64,
    },
    /// Minimum monochromatic triangles in K_n by brute force (n <= 7).
    GraphMin {
        #[arg(long)]
        n: usize,
    },
    /// Minimum over colorings of K_n of the largest vertex-disjoint monochromatic packing.
    DisjointMin {
        #[arg(long)]
        n: usize,
    },
    /// The 2-colorings of K_5 without monochromatic triangles.
    K5Classify,
    /// Connected sum by an incidence switch at one flag of each summand.
    ConnectedSum {
        left: String,
        right: String,
        #[arg(long)]
        p1: u32,
        #[arg(long)]
        l1: usize,
        #[arg(long)]
        p2: u32,
        #[arg(long)]
        l2: usize,
    },
    /// Largest set of mutually intersecting lines and disjoint 6-line packings.
    Cliques {
        #[command(flatten)]
        input: Input,
        /// Also check the six-line bound on every 6-clique.
        #[arg(long)]
        verify_six: bool,
    },
    /// "Nonzero minimum implies more than four mutually intersecting lines".
    Conjecture {
        #[command(flatten)]
        input: Input,
        /// Check every symmetric v_3 configuration with 7 <= v <= MAX_V instead.
        #[arg(long, value_name = "MAX_V", conflicts_with_all = ["input", "builtin"])]
        max_v: Option<usize>,
    },
    /// Builtin configurations.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Symmetric v_3 configurations up to isomorphism.
    Enumerate {
        #[arg(long)]
        v: usize,
        /// Write one brace-format file per configuration and a manifest here.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    List,
    Show { name: String },
}

enum Failure {
    Domain(String),
    Resource(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_resource_limit() {
            Failure::Resource(e.to_string())
        } else {
            Failure::Domain(e.to_string())
        }
    }
}

type Outcome = Result<String, Failure>;

const GOODMAN_MAX_N: u64 = 1_000_000;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.global.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Resource(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Outcome {
    let g = &cli.global;
    let json = g.output == Output::Json;
    match &cli.command {
        Command::Validate(input) => validate(&load(input)?, json),
        Command::Triangles(input) => {
            let geometry = load(input)?;
            let triangles = enumerate_triangles(&geometry);
            if json {
                Ok(to_json(&serde_json::json!({ "count": triangles.len(), "triangles": triangles })))
            } else {
                Ok(format_triangles(&triangles))
            }
        }
        Command::MinMono { input, dot } => {
            let geometry = load(input)?;
            let result = min_monochromatic(&geometry, &search_options(g))?;
            if *dot {
                return Ok(menger_dot(&geometry, &result.witness));
            }
            let report = result.report();
            if json {
                Ok(to_json(&report))
            } else {
                Ok(format!(
                    "min_mono {}\nred lines {:?}\nblue lines {:?}\nred triangles {}\nblue triangles {}\noptimal colorings {}\n",
                    report.min_mono,
                    report.red,
                    report.blue,
                    report.red_triangles,
                    report.blue_triangles,
                    report.optimal_colorings
                ))
            }
        }
        Command::Balance(input) => {
            let balance = optimal_color_balance(&load(input)?, &search_options(g))?;
            Ok(if json {
                to_json(&serde_json::json!({ "balance": balance }))
            } else {
                format!("{balance}\n")
            })
        }
        Command::Goodman { n } => goodman(*n, json),
        Command::GraphMin { n } => {
            let min = ramsey::brute_force_min_mono(*n)?;
            Ok(if json {
                to_json(&serde_json::json!({ "n": n, "min_mono": min }))
            } else {
                format!("{min}\n")
            })
        }
        Command::DisjointMin { n } => {
            if *n > ramsey::EXHAUSTIVE_DISJOINT_MAX_N && *n <= ramsey::BNB_DISJOINT_MAX_N && !g.slow {
                return Err(Failure::Resource(format!("n = {n} needs --slow")));
            }
            let result = ramsey::min_max_disjoint(*n, budget(g))?;
            Ok(if json {
                to_json(&result)
            } else {
                format!(
                    "{}\nwitness red edges {:?}\n",
                    result.value,
                    edge_pairs(&result.witness, Color::Red)
                )
            })
        }
        Command::K5Classify => {
            let all = ramsey::triangle_free_colorings_k5();
            if json {
                let rows: Vec<_> = all
                    .iter()
                    .map(|c| serde_json::json!({ "red": edge_pairs(c, Color::Red), "blue": edge_pairs(c, Color::Blue) }))
                    .collect();
                return Ok(to_json(&serde_json::json!({ "count": all.len(), "colorings": rows })));
            }
            let mut out = format!("{} triangle-free colorings\n", all.len());
            for c in &all {
                let red = c.color_class(Color::Red);
                let blue = c.color_class(Color::Blue);
                let _ = writeln!(
                    out,
                    "red {:?} blue {:?} cycles {}",
                    edge_pairs(c, Color::Red),
                    edge_pairs(c, Color::Blue),
                    ramsey::is_hamiltonian_cycle(&red) && ramsey::is_hamiltonian_cycle(&blue)
                );
            }
            Ok(out)
        }
        Command::ConnectedSum {
            left,
            right,
            p1,
            l1,
            p2,
            l2,
        } => {
            let left = load_configuration(left)?;
            let right = load_configuration(right)?;
            let sum = connected_sum(&SumSpec {
                left: &left,
                right: &right,
                p1: *p1,
                l1: *l1,
                p2: *p2,
                l2: *l2,
            })?;
            let brace = sum.configuration.to_brace_string();
            Ok(if json {
                let left_points: Vec<usize> = (1..=sum.partition.len())
                    .filter(|&p| sum.partition[p - 1] == Origin::Left)
                    .collect();
                to_json(&serde_json::json!({ "configuration": brace, "left_points": left_points }))
            } else {
                format!("{brace}\n")
            })
        }
        Command::Cliques { input, verify_six } => {
            let geometry = load(input)?;
            cliques(&geometry, &search_options(g), *verify_six, json)
        }
        Command::Conjecture { input, max_v } => match max_v {
            Some(max_v) => conjecture_sweep(*max_v, g, json),
            None => {
                let report = check_conjecture(&load(input)?, &search_options(g))?;
                Ok(if json {
                    to_json(&report)
                } else {
                    format!(
                        "{} (min_mono {}, max_clique {})\n",
                        report.status.as_str(),
                        report.min_mono,
                        report.max_clique
                    )
                })
            }
        },
        Command::Catalog { action } => match action {
            CatalogAction::List => {
                let entries = catalog::builtins();
                if json {
                    let rows: Vec<_> = entries
                        .iter()
                        .map(|e| serde_json::json!({ "name": e.name, "provenance": e.provenance }))
                        .collect();
                    return Ok(to_json(&rows));
                }
                let mut out = String::new();
                for e in entries {
                    let _ = writeln!(out, "{:<14} {}", e.name, e.provenance);
                }
                Ok(out)
            }
            CatalogAction::Show { name } => {
                let e = catalog::builtin(name)?;
                Ok(if json {
                    to_json(&serde_json::json!({ "name": e.name, "provenance": e.provenance, "geometry": e.geometry }))
                } else {
                    format!("{}\n", e.geometry.to_brace_string())
                })
            }
        },
        Command::Enumerate { v, out_dir } => enumerate(*v, out_dir.as_deref(), g, json),
    }
}

fn budget(g: &Global) -> Option<Duration> {
    g.time_budget.map(|s| Duration::from_secs_f64(s.max(0.0)))
}

fn search_options(g: &Global) -> SearchOptions {
    SearchOptions {
        mode: match g.mode {
            Mode::Exhaustive => SearchMode::Exhaustive,
            Mode::Bnb => SearchMode::BranchAndBound,
        },
        line_cap: g.cap,
        budget: budget(g),
        ..SearchOptions::default()
    }
}

fn to_json<T: Serialize + ?Sized>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("serializable");
    s.push('\n');
    s
}

fn read_geometry(source: &str) -> Result<IncidenceGeometry, Failure> {
    let path = Path::new(source);
    if path.exists() {
        let text = fs::read_to_string(path).map_err(|e| Failure::Domain(format!("{source}: {e}")))?;
        parse_configuration(&text).map_err(|e| Failure::Domain(format!("{source}: {e}")))
    } else if catalog::BUILTIN_NAMES.contains(&source) {
        Ok(catalog::builtin(source)?.geometry)
    } else {
        Err(Failure::Domain(format!("{source}: no such file or builtin")))
    }
}

fn load(input: &Input) -> Result<IncidenceGeometry, Failure> {
    match (&input.builtin, &input.input) {
        (Some(name), _) => Ok(catalog::builtin(name)?.geometry),
        (None, Some(source)) => read_geometry(source),
        (None, None) => Err(Failure::Domain("no input given (path or --builtin NAME)".into())),
    }
}

fn load_configuration(source: &str) -> Result<Configuration, Failure> {
    let geometry = read_geometry(source)?;
    classify(&geometry).map_err(|d| Failure::Domain(format!("{source}: not a configuration: {d}")))
}

fn validate(geometry: &IncidenceGeometry, json: bool) -> Outcome {
    match classify(geometry) {
        Ok(c) => {
            let (n, m, s, t) = (c.point_count(), c.line_count(), c.s(), c.t());
            Ok(if json {
                to_json(&serde_json::json!({ "valid": true, "points": n, "lines": m, "s": s, "t": t }))
            } else {
                format!("configuration ({n}_{s}, {m}_{t})\n")
            })
        }
        Err(d) => Err(Failure::Domain(format!("not a configuration: {d}"))),
    }
}

fn goodman(n: u64, json: bool) -> Outcome {
    if n > GOODMAN_MAX_N {
        return Err(Failure::Resource(format!("n = {n} exceeds {GOODMAN_MAX_N}")));
    }
    let value = ramsey::goodman_min(n);
    if !json {
        return Ok(format!("{value}\n"));
    }
    let small = n >= 1 && n as usize <= ramsey::BRUTE_FORCE_MAX_N;
    let brute = if small { Some(ramsey::brute_force_min_mono(n as usize)?) } else { None };
    let disjoint = if small {
        Some(ramsey::min_max_disjoint(n as usize, None)?.value)
    } else {
        None
    };
    Ok(to_json(&GoodmanJson {
        n,
        goodman: value,
        brute_force: brute,
        min_max_disjoint: disjoint,
    }))
}

#[derive(Serialize)]
struct GoodmanJson {
    n: u64,
    goodman: u64,
    brute_force: Option<usize>,
    min_max_disjoint: Option<usize>,
}

#[derive(Serialize)]
struct CliquesJson {
    max_clique: usize,
    witness: Vec<usize>,
    six_clique_packing: usize,
    conjecture: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    six_line_check: Option<mono_triangles::cliques::SixLineCheck>,
}

fn cliques(geometry: &IncidenceGeometry, options: &SearchOptions, verify_six: bool, json: bool) -> Outcome {
    let report = clique_report(geometry);
    let conjecture = check_conjecture(geometry, options)?;
    let check = if verify_six {
        Some(verify_six_line_bound(geometry, options)?)
    } else {
        None
    };
    if json {
        return Ok(to_json(&CliquesJson {
            max_clique: report.max_clique,
            witness: report.witness,
            six_clique_packing: report.six_clique_packing,
            conjecture: conjecture.status.as_str(),
            six_line_check: check,
        }));
    }
    let mut out = format!(
        "max_clique {}\nwitness {:?}\nsix_clique_packing {}\nconjecture {}\n",
        report.max_clique,
        report.witness,
        report.six_clique_packing,
        conjecture.status.as_str()
    );
    if let Some(check) = check {
        for (clique, minimum) in &check.clique_minima {
            let _ = writeln!(out, "six-clique {clique:?} minimum {minimum}");
        }
        let _ = writeln!(out, "violations {}", check.violations.len());
        for v in &check.violations {
            let _ = writeln!(out, "  {v:?}");
        }
    }
    Ok(out)
}

fn conjecture_sweep(max_v: usize, g: &Global, json: bool) -> Outcome {
    let options = search_options(g);
    let top = max_v.min(*catalog::ENUMERATION_RANGE.end());
    if top == 11 && !g.slow {
        return Err(Failure::Resource("v = 11 needs --slow".into()));
    }
    let mut rows = Vec::new();
    for v in *catalog::ENUMERATION_RANGE.start()..=top {
        for (index, c) in enumerate_v3(v)?.into_iter().enumerate() {
            let report = check_conjecture(&c, &options)?;
            rows.push(serde_json::json!({
                "v": v,
                "index": index,
                "status": report.status.as_str(),
                "min_mono": report.min_mono,
                "max_clique": report.max_clique,
                "configuration": c.to_brace_string(),
            }));
        }
    }
    let counterexamples: Vec<_> = rows
        .iter()
        .filter(|r| r["status"] == ConjectureStatus::Counterexample.as_str())
        .cloned()
        .collect();
    if json {
        return Ok(to_json(&serde_json::json!({
            "checked": rows.len(),
            "counterexamples": counterexamples,
            "results": rows,
        })));
    }
    let mut out = String::new();
    for r in &rows {
        let _ = writeln!(
            out,
            "v{}#{} {} (min_mono {}, max_clique {})",
            r["v"], r["index"], r["status"].as_str().unwrap(), r["min_mono"], r["max_clique"]
        );
    }
    let _ = writeln!(out, "{} checked, {} counterexample(s)", rows.len(), counterexamples.len());
    for r in &counterexamples {
        let _ = writeln!(out, "counterexample {}", r["configuration"].as_str().unwrap());
    }
    Ok(out)
}

fn enumerate(v: usize, out_dir: Option<&Path>, g: &Global, json: bool) -> Outcome {
    if v == 11 && !g.slow {
        return Err(Failure::Resource("v = 11 needs --slow".into()));
    }
    let found = enumerate_v3(v)?;
    let braces: Vec<String> = found.iter().map(|c| c.to_brace_string()).collect();
    if let Some(dir) = out_dir {
        let io = |e: std::io::Error| Failure::Domain(format!("{}: {e}", dir.display()));
        fs::create_dir_all(dir).map_err(io)?;
        let mut manifest = String::new();
        for (i, brace) in braces.iter().enumerate() {
            let name = format!("v{v}_{i:03}.txt");
            fs::write(dir.join(&name), format!("{brace}\n")).map_err(io)?;
            let _ = writeln!(manifest, "{name}");
        }
        fs::write(dir.join("manifest.txt"), manifest).map_err(io)?;
    }
    Ok(if json {
        to_json(&serde_json::json!({ "v": v, "count": braces.len(), "configurations": braces }))
    } else {
        let mut out = String::new();
        for b in &braces {
            let _ = writeln!(out, "{b}");
        }
        out
    })
}

fn edge_pairs(c: &EdgeColoring, color: Color) -> Vec<(usize, usize)> {
    let n = c.n();
    (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .filter(|&(i, j)| c.color(i, j) == color)
        .collect()
}

fn menger_dot(geometry: &IncidenceGeometry, coloring: &LineColoring) -> String {
    let mut out = String::from("graph menger {\n  node [shape=circle];\n");
    for p in geometry.points() {
        let _ = writeln!(out, "  {p};");
    }
    for (index, line) in geometry.lines().iter().enumerate() {
        let color = match coloring.color(index) {
            Color::Red => "red",
            Color::Blue => "blue",
        };
        for (i, &a) in line.iter().enumerate() {
            for &b in &line[i + 1..] {
                let _ = writeln!(out, "  {a} -- {b} [color={color}, label=\"L{index}\"];");
            }
        }
    }
    out.push_str("}\n");
    out
}
