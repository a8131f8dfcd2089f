//! Command-line front end for the `graphent` library.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use graphent::bounds::{format_table, TableRow};
use graphent::catalog::{load_catalog, parse_family_spec, seed_catalog, CatalogEntry, CatalogId};
use graphent::graph::{
    encode_graph6, lc_orbit_with_cap, parse_edge_list, parse_graph6, DEFAULT_ORBIT_CAP,
};
use graphent::optimizer::{
    auto_fix_search, optimize_with_escalation, presample, snap_canonical, snap_to_exact,
    PresampleReport, SnapResult, PRESAMPLE_BINS,
};
use graphent::report::{restarts_csv, traces_csv, OptimizationReport};
use graphent::{
    classify, optimize, BoundsReport, Error, FixedCoordinateSpec64, Graph, OptimizationResult64,
    OptimizerConfig64, ProductState64, UpdateMode,
};

#[derive(Parser)]
#[command(name = "graphent", version, about = "Entanglement of graph states")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    /// Write output to this file instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,

    /// Worker threads for restarts (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Closest product state, E and the derived measures.
    Compute {
        #[command(flatten)]
        source: GraphSource,
        #[command(flatten)]
        opt: OptArgs,
        /// Also snap the best state onto the exact alphabet.
        #[arg(long)]
        snap: bool,
        /// CSV content when --format csv.
        #[arg(long, value_enum, default_value_t = CsvKind::Traces)]
        csv: CsvKind,
    },
    /// LOCC upper bound, bipartite lower bound and supporting sets.
    Bounds {
        #[command(flatten)]
        source: GraphSource,
    },
    /// Table category from the bounds.
    Classify {
        #[command(flatten)]
        source: GraphSource,
    },
    /// Local-complementation orbit of the labeled graph.
    Orbit {
        #[command(flatten)]
        source: GraphSource,
        /// Print every graph of the orbit in graph6.
        #[arg(long)]
        list: bool,
        #[arg(long, default_value_t = DEFAULT_ORBIT_CAP)]
        cap: usize,
    },
    /// Fidelity statistics at random product states, no iteration.
    Presample {
        #[command(flatten)]
        source: GraphSource,
        #[arg(long, default_value_t = 100_000)]
        count: usize,
        #[arg(long, env = "GRAPHENT_SEED", default_value_t = 0)]
        seed: u64,
    },
    /// Bounds, E and success probability for every catalog entry.
    Table {
        /// JSON-lines catalog (default: the shipped one).
        #[arg(long)]
        catalog: Option<PathBuf>,
        #[command(flatten)]
        opt: OptArgs,
    },
    /// Snap the best state of a saved `compute --format json` result.
    Snap {
        /// Saved result.
        result: PathBuf,
        /// Snap each qubit as is, without moving along the stabilizer group first.
        #[arg(long)]
        plain: bool,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CsvKind {
    Traces,
    Restarts,
}

#[derive(Args)]
struct GraphSource {
    #[command(flatten)]
    pick: GraphPick,
    /// Catalog file for --catalog-id (default: the shipped one).
    #[arg(long, requires = "catalog_id")]
    catalog: Option<PathBuf>,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct GraphPick {
    /// Built-in family as name:n (empty, complete, star, path, cycle).
    #[arg(long)]
    family: Option<String>,
    /// Edge-list file, one `a b` pair per line.
    #[arg(long)]
    edges: Option<PathBuf>,
    /// graph6 string.
    #[arg(long)]
    graph6: Option<String>,
    /// Catalog entry id.
    #[arg(long)]
    catalog_id: Option<String>,
}

#[derive(Args)]
struct OptArgs {
    #[arg(long, default_value_t = 1000)]
    restarts: usize,
    #[arg(long, default_value_t = 150)]
    rounds: usize,
    #[arg(long, env = "GRAPHENT_SEED", default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Mode::Sequential)]
    mode: Mode,
    #[arg(long, default_value_t = 1e-14)]
    success_tol: f64,
    /// Hold coordinates fixed, e.g. "0=|0>,3=random,4=Phi1".
    #[arg(long, conflicts_with = "auto_fix")]
    fix: Option<String>,
    /// Try every single and pair of coordinates fixed at |0>.
    #[arg(long)]
    auto_fix: bool,
    /// Retry with fixed coordinates when any restart stalls.
    #[arg(long)]
    escalate: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Sequential,
    PerRound,
}

impl OptArgs {
    fn config(&self) -> Result<OptimizerConfig64, Error> {
        let mut cfg = OptimizerConfig64::default()
            .with_restarts(self.restarts)
            .with_rounds(self.rounds)
            .with_seed(self.seed)
            .with_mode(match self.mode {
                Mode::Sequential => UpdateMode::Sequential,
                Mode::PerRound => UpdateMode::PerRound,
            });
        cfg.success_tol = self.success_tol;
        if let Some(f) = &self.fix {
            cfg.fixed = Some(f.parse::<FixedCoordinateSpec64>()?);
        }
        cfg.validate()?;
        Ok(cfg)
    }

    fn run(&self, g: &Graph) -> Result<(OptimizerConfig64, OptimizationResult64), Error> {
        let cfg = self.config()?;
        let r = if self.auto_fix {
            auto_fix_search(g, &cfg)?
        } else if self.escalate {
            optimize_with_escalation(g, &cfg)?
        } else {
            optimize(g, &cfg)?
        };
        Ok((cfg, r))
    }
}

fn find_entry(entries: Vec<CatalogEntry>, id: &str) -> Result<CatalogEntry, Error> {
    let want: CatalogId = id.parse()?;
    entries
        .into_iter()
        .find(|e| e.id == want)
        .ok_or_else(|| Error::InvalidArgument(format!("no catalog entry with id {id}")))
}

impl GraphSource {
    fn load(&self) -> Result<Graph, Error> {
        let pick = &self.pick;
        if let Some(f) = &pick.family {
            parse_family_spec(f)
        } else if let Some(p) = &pick.edges {
            parse_edge_list(&std::fs::read_to_string(p)?)
        } else if let Some(s) = &pick.graph6 {
            parse_graph6(s)
        } else if let Some(id) = &pick.catalog_id {
            let entries = match &self.catalog {
                Some(p) => load_catalog(p)?,
                None => seed_catalog(),
            };
            Ok(find_entry(entries, id)?.graph)
        } else {
            Err(Error::InvalidArgument("no graph given".into()))
        }
    }
}

fn json<T: serde::Serialize>(v: &T) -> Result<String, Error> {
    serde_json::to_string_pretty(v)
        .map(|s| s + "\n")
        .map_err(|e| Error::InvalidArgument(e.to_string()))
}

fn edges_text(g: &Graph) -> String {
    let e: Vec<String> = g.edges().iter().map(|(a, b)| format!("{a}-{b}")).collect();
    if e.is_empty() {
        "none".into()
    } else {
        e.join(" ")
    }
}

fn state_text(p: &ProductState64) -> String {
    let mut out = String::new();
    for (j, q) in p.qubits().iter().enumerate() {
        let (x, y) = (q.x(), q.y());
        let _ = writeln!(
            out,
            "  {j}: {:.12} |0> + ({:.12}{:+.12}i) |1>",
            x.re, y.re, y.im
        );
    }
    out
}

fn snap_text(s: &SnapResult<f64>) -> String {
    let mut out = format!(
        "snapped: {}\n  {}\n  E = {:.15}\n",
        s.pattern,
        s.describe(),
        s.entanglement
    );
    if !s.stabilizer_flips.is_empty() {
        let v: Vec<String> = s.stabilizer_flips.iter().map(|v| v.to_string()).collect();
        let _ = writeln!(out, "  stabilizer X-part: {}", v.join(" "));
    }
    for (j, q) in s.qubits.iter().enumerate().filter(|(_, q)| q.refused) {
        let _ = writeln!(
            out,
            "  qubit {j} refused: nearest |{}> at distance {:.3e}",
            q.label, q.distance
        );
    }
    out
}

fn compute_text(rep: &OptimizationReport<f64>) -> String {
    let s = &rep.restarts_summary;
    let m = &rep.measures;
    let mut out = String::new();
    let _ = writeln!(
        out,
        "graph: n={} edges {} (graph6 {})",
        rep.graph.n(),
        edges_text(&rep.graph),
        encode_graph6(&rep.graph)
    );
    let _ = writeln!(out, "E = {:.15}", rep.entanglement);
    let _ = writeln!(out, "best F = {:.15}", rep.best_f);
    let _ = writeln!(
        out,
        "measures: E_r = {:.15}  LR = {:.15}  E_g = {:.15}  R = {:.15}",
        m.relative_entropy, m.log_robustness, m.geometric, m.robustness
    );
    let _ = writeln!(
        out,
        "fix used: {}",
        rep.fix_used
            .as_ref()
            .map_or("none".to_string(), |f| f.describe())
    );
    let _ = writeln!(
        out,
        "restarts: {} converged {} stalled {} degenerate steps {} success {:.3} mean rounds {:.1}",
        s.count, s.converged, s.stalled, s.degenerate_steps, s.success_fraction, s.mean_rounds
    );
    let _ = writeln!(out, "best state (restart {}):", rep.best_index);
    out.push_str(&state_text(&rep.best_state));
    if let Some(snap) = &rep.snapped_state {
        out.push_str(&snap_text(snap));
    }
    out
}

fn bounds_text(b: &BoundsReport) -> String {
    let is: Vec<String> = b.independent_set.iter().map(|v| v.to_string()).collect();
    let mm: Vec<String> = b.matching.iter().map(|(a, c)| format!("{a}-{c}")).collect();
    format!(
        "n = {}\nE_u (LOCC upper bound) = {}\nE_l (bipartite lower bound) = {}\ncut-rank lower bound = {}\n\
         two-colorable = {}\ncategory = {}\nmaximum independent set: {}\nmaximum matching: {}\n",
        b.n,
        b.upper,
        b.lower,
        b.cut_rank,
        b.two_colorable,
        b.category,
        is.join(" "),
        mm.join(" ")
    )
}

fn bounds_csv(b: &BoundsReport) -> String {
    format!(
        "n,upper,lower,cut_rank,equal,two_colorable,category\n{},{},{},{},{},{},{}\n",
        b.n, b.upper, b.lower, b.cut_rank, b.equal, b.two_colorable, b.category
    )
}

fn presample_out(r: &PresampleReport<f64>, format: Format) -> Result<String, Error> {
    let width = 1.0 / PRESAMPLE_BINS as f64;
    Ok(match format {
        Format::Json => json(r)?,
        Format::Csv => {
            let mut out = String::from("bin_low,bin_high,count\n");
            for (k, c) in r.histogram.iter().enumerate() {
                let _ = writeln!(out, "{},{},{c}", k as f64 * width, (k + 1) as f64 * width);
            }
            out
        }
        Format::Text => {
            let mut out = format!(
                "samples = {}\nmin F = {:.15}\nmax F = {:.15}\nmean F = {:.15}\nE upper estimate = {:.15}\n",
                r.count,
                r.min_f,
                r.max_f,
                r.mean_f,
                -r.max_f.log2()
            );
            out.push_str("histogram (non-empty bins):\n");
            for (k, c) in r.histogram.iter().enumerate().filter(|(_, c)| **c > 0) {
                let _ = writeln!(
                    out,
                    "  [{:.2}, {:.2}) {c}",
                    k as f64 * width,
                    (k + 1) as f64 * width
                );
            }
            out
        }
    })
}

fn table(catalog: &Option<PathBuf>, opt: &OptArgs, format: Format) -> Result<String, Error> {
    let entries = match catalog {
        Some(p) => load_catalog(p)?,
        None => seed_catalog(),
    };
    let mut rows = Vec::new();
    for e in &entries {
        let b = classify(&e.graph)?;
        let (cfg, r) = opt.run(&e.graph)?;
        let reference = e.expected.as_ref().map_or(r.entanglement, |v| v.eval());
        let note = e.expected.as_ref().map(|v| {
            if (r.entanglement - v.eval()).abs() <= 1e-12 {
                format!("{v}")
            } else {
                format!("{v} MISMATCH")
            }
        });
        rows.push(TableRow {
            id: e.id.to_string(),
            upper: b.upper,
            lower: b.lower,
            entanglement: Some(r.entanglement),
            success: Some(r.success_fraction(reference, cfg.success_tol)),
            note,
        });
    }
    Ok(match format {
        Format::Text => format_table(&rows),
        Format::Json => json(&rows)?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for r in &rows {
                w.serialize(r)
                    .map_err(|e| Error::InvalidArgument(e.to_string()))?;
            }
            let bytes = w
                .into_inner()
                .map_err(|e| Error::InvalidArgument(e.to_string()))?;
            String::from_utf8(bytes).map_err(|e| Error::InvalidArgument(e.to_string()))?
        }
    })
}

fn run(cli: &Cli) -> Result<String, Error> {
    let format = cli.format;
    match &cli.command {
        Command::Compute {
            source,
            opt,
            snap,
            csv,
        } => {
            let g = source.load()?;
            let (cfg, r) = opt.run(&g)?;
            if format == Format::Csv {
                return Ok(match csv {
                    CsvKind::Traces => traces_csv(&r),
                    CsvKind::Restarts => restarts_csv(&r),
                });
            }
            let mut rep = OptimizationReport::new(&g, &cfg, &r);
            if *snap {
                rep = rep.with_snap()?;
            }
            match format {
                Format::Json => json(&rep),
                _ => Ok(compute_text(&rep)),
            }
        }
        Command::Bounds { source } | Command::Classify { source } => {
            let b = classify(&source.load()?)?;
            let short = matches!(cli.command, Command::Classify { .. });
            Ok(match format {
                Format::Json => json(&b)?,
                Format::Csv => bounds_csv(&b),
                Format::Text if short => {
                    format!("{} (E_u = {}, E_l = {})\n", b.category, b.upper, b.lower)
                }
                Format::Text => bounds_text(&b),
            })
        }
        Command::Orbit { source, list, cap } => {
            let orbit = lc_orbit_with_cap(&source.load()?, *cap)?;
            let codes: Vec<String> = orbit.iter().map(encode_graph6).collect();
            Ok(match format {
                Format::Json => json(&serde_json::json!({ "size": orbit.len(), "graphs": codes }))?,
                Format::Csv => std::iter::once("graph6".to_string())
                    .chain(codes)
                    .map(|c| c + "\n")
                    .collect(),
                Format::Text => {
                    let mut out = format!("orbit size = {}\n", orbit.len());
                    if *list {
                        for c in codes {
                            out.push_str(&c);
                            out.push('\n');
                        }
                    }
                    out
                }
            })
        }
        Command::Presample {
            source,
            count,
            seed,
        } => {
            let r = presample::<f64>(&source.load()?, *count, *seed)?;
            presample_out(&r, format)
        }
        Command::Table { catalog, opt } => table(catalog, opt, format),
        Command::Snap { result, plain } => {
            let rep = OptimizationReport::<f64>::from_json(&std::fs::read_to_string(result)?)?;
            let s = if *plain {
                snap_to_exact(&rep.graph, &rep.best_state)?
            } else {
                snap_canonical(&rep.graph, &rep.best_state)?
            };
            match format {
                Format::Json => json(&s),
                Format::Csv => {
                    let mut out = String::from("qubit,label,distance,refused\n");
                    for (j, q) in s.qubits.iter().enumerate() {
                        let _ = writeln!(out, "{j},{},{:e},{}", q.label, q.distance, q.refused);
                    }
                    Ok(out)
                }
                Format::Text => Ok(snap_text(&s)),
            }
        }
    }
}

/// 1 when the request is well-formed but beyond what can be computed, 2 otherwise.
fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Capability(_) | Error::OrbitCap { .. } => 1,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let out = match run(&cli) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(exit_code(&e));
        }
    };
    let written = match &cli.output {
        Some(p) => std::fs::write(p, out),
        None => {
            print!("{out}");
            Ok(())
        }
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    ExitCode::SUCCESS
}
