use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use decatone::circulant::{
    canonical_groups, check_n3_configuration_with, enumerate_cyclic_103, jump_set_from_offsets,
    ConfigurationVerdict, CyclicCensus,
};
use decatone::graphlab::GraphError;
use decatone::harmony::{enumerate_systems, solve_thirds, HarmonicSystem, HarmonyError};
use decatone::report::{analyze_system, AnalysisReport};
use decatone::tonnetz::{
    build_functional_tonnetz, build_set_level_tonnetz, derive_plr_offsets, rotation, LabeledGraph,
    Plr, TonnetzError,
};
use decatone::tuning::{scan_systems, ScanEntry};

#[derive(Debug, Parser)]
#[command(name = "decatone", version, about = "Pythagorean tunings, chord systems and Tonnetz graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Pythagorean scale searches.
    Tune {
        #[command(subcommand)]
        command: TuneCommand,
    },
    /// Third-pair congruences.
    Harmony {
        #[command(subcommand)]
        command: HarmonyCommand,
    },
    /// Chord graphs.
    Tonnetz {
        #[command(subcommand)]
        command: TonnetzCommand,
    },
    /// n_3 configuration checks.
    Config {
        #[command(subcommand)]
        command: ConfigCommand,
    },
    /// Brute-force enumerations.
    Census {
        #[command(subcommand)]
        command: CensusCommand,
    },
}

#[derive(Debug, Subcommand)]
enum TuneCommand {
    /// Systems whose comma does not exceed the classical 12-step comma.
    Scan {
        /// Exclusive upper bound on the generator parameter p.
        #[arg(long, default_value_t = 20)]
        max_p: u64,
        #[arg(long, default_value_t = 30)]
        max_n: u32,
        #[arg(long, default_value_t = 10)]
        max_u: u32,
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
enum HarmonyCommand {
    /// Solve t + s = q, t - s = delta over Z_n.
    Solve {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        q: u32,
        /// Only this delta; all deltas otherwise.
        #[arg(long)]
        delta: Option<u32>,
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
enum TonnetzCommand {
    /// Build the chord graph and export it.
    Build {
        #[command(flatten)]
        system: SystemArgs,
        /// Keep only edges between chords with exactly two common tones.
        #[arg(long)]
        set_level: bool,
        #[arg(long)]
        dot: Option<PathBuf>,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Full invariant report.
    Analyze {
        #[command(flatten)]
        system: SystemArgs,
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
enum ConfigCommand {
    /// Check whether the chord graph is the Levi graph of an n_3 configuration.
    Check {
        #[command(flatten)]
        system: SystemArgs,
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
enum CensusCommand {
    /// Cyclic 10_3 configurations generated by {0, a, b} mod 10.
    #[command(name = "cyclic-103")]
    Cyclic103 {
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum NamedSystem {
    Acoustic,
    Tritone,
    Wide,
}

#[derive(Debug, Args)]
struct SystemArgs {
    /// Shortcut for (10,7,4,3), (10,7,5,2) or (10,7,6,1).
    #[arg(long, value_enum, conflicts_with_all = ["n", "q", "t", "s"])]
    system: Option<NamedSystem>,
    #[arg(long)]
    n: Option<u32>,
    #[arg(long)]
    q: Option<u32>,
    #[arg(long)]
    t: Option<u32>,
    #[arg(long)]
    s: Option<u32>,
}

impl SystemArgs {
    fn resolve(&self) -> Result<HarmonicSystem, CliError> {
        if let Some(named) = self.system {
            return Ok(match named {
                NamedSystem::Acoustic => HarmonicSystem::acoustic(),
                NamedSystem::Tritone => HarmonicSystem::tritone(),
                NamedSystem::Wide => HarmonicSystem::wide(),
            });
        }
        match (self.n, self.q, self.t, self.s) {
            (Some(n), Some(q), Some(t), Some(s)) => Ok(HarmonicSystem::new(n, q, t, s)?),
            _ => Err(CliError::Usage(
                "give --system or all of --n, --q, --t, --s".to_string(),
            )),
        }
    }
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Harmony(#[from] HarmonyError),
    #[error(transparent)]
    Tonnetz(#[from] TonnetzError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("cannot write {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Harmony(e) => harmony_code(e),
            CliError::Tonnetz(TonnetzError::Harmony(e)) => harmony_code(e),
            CliError::Tonnetz(TonnetzError::Graph(e)) | CliError::Graph(e) => graph_code(e),
            CliError::Tonnetz(_) => 3,
            CliError::Io { .. } | CliError::Json(_) => 1,
        }
    }
}

fn harmony_code(e: &HarmonyError) -> u8 {
    match e {
        HarmonyError::Modulus(_) | HarmonyError::Inconsistent { .. } => 2,
        HarmonyError::DegenerateChord { .. } => 3,
    }
}

fn graph_code(e: &GraphError) -> u8 {
    match e {
        GraphError::UnsupportedSize { .. } => 2,
        _ => 1,
    }
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn write_json<T: Serialize>(path: Option<&PathBuf>, value: &T) -> Result<(), CliError> {
    if let Some(path) = path {
        let mut text = serde_json::to_string_pretty(value)?;
        text.push('\n');
        write_file(path, &text)?;
    }
    Ok(())
}

#[derive(Serialize)]
struct ScanRow<'a> {
    p: u64,
    u: u32,
    n: u32,
    generator: String,
    comma: &'a decatone::precise::Real,
}

fn tune_scan(max_p: u64, max_n: u32, max_u: u32, json: Option<&PathBuf>) -> Result<(), CliError> {
    let rows: Vec<ScanEntry> = scan_systems(max_p, max_n, max_u);
    println!("{:>4} {:>4} {:>4} {:>10}  comma", "p", "u", "n", "generator");
    for r in &rows {
        println!("{:>4} {:>4} {:>4} {:>10}  {}", r.p, r.u, r.n, r.generator.to_string(), r.comma.to_decimal(20));
    }
    let out: Vec<ScanRow> = rows
        .iter()
        .map(|r| ScanRow {
            p: r.p,
            u: r.u,
            n: r.n,
            generator: r.generator.to_string(),
            comma: &r.comma,
        })
        .collect();
    write_json(json, &out)
}

fn harmony_solve(n: u32, q: u32, delta: Option<u32>, json: Option<&PathBuf>) -> Result<(), CliError> {
    if n < 2 {
        return Err(HarmonyError::Modulus(n).into());
    }
    let table: BTreeMap<u32, Vec<[u32; 2]>> = match delta {
        Some(d) => BTreeMap::from([(d % n, solve_thirds(n, q % n, d % n))]),
        None => enumerate_systems(n, q % n),
    }
    .into_iter()
    .map(|(d, sols)| (d, sols.into_iter().map(|p| [p.t, p.s]).collect()))
    .collect();
    println!("delta  (t, s)");
    for (d, sols) in &table {
        let cells: Vec<String> = sols.iter().map(|[t, s]| format!("({t}, {s})")).collect();
        println!("{d:>5}  {}", cells.join(" "));
    }
    write_json(json, &table)
}

#[derive(Serialize)]
struct EdgeOut {
    a: String,
    b: String,
    label: Option<Plr>,
    common_tones: Option<usize>,
}

#[derive(Serialize)]
struct GraphOut {
    system: HarmonicSystem,
    set_level: bool,
    order: usize,
    size: usize,
    vertices: Vec<String>,
    edges: Vec<EdgeOut>,
}

fn graph_out(sys: &HarmonicSystem, g: &LabeledGraph, set_level: bool) -> GraphOut {
    GraphOut {
        system: *sys,
        set_level,
        order: g.order(),
        size: g.size(),
        vertices: (0..g.order()).map(|v| g.name(v)).collect(),
        edges: g
            .edges
            .iter()
            .map(|e| EdgeOut {
                a: g.name(e.a),
                b: g.name(e.b),
                label: e.label,
                common_tones: e.common_tones,
            })
            .collect(),
    }
}

fn tonnetz_build(
    system: &SystemArgs,
    set_level: bool,
    dot: Option<&PathBuf>,
    json: Option<&PathBuf>,
) -> Result<(), CliError> {
    let sys = system.resolve()?;
    let g = if set_level {
        build_set_level_tonnetz(&sys)?
    } else {
        build_functional_tonnetz(&sys)?
    };
    println!("{sys}: {} vertices, {} edges", g.order(), g.size());
    for v in 0..g.order() {
        println!("  {:>4} ~ {}", g.name(v), g.neighbor_names(v).join(" "));
    }
    if let Some(path) = dot {
        write_file(path, &g.to_dot("tonnetz"))?;
    }
    write_json(json, &graph_out(&sys, &g, set_level))
}

fn print_report(r: &AnalysisReport) {
    let f = &r.functional;
    let opt = |x: Option<usize>| x.map_or("none".to_string(), |v| v.to_string());
    println!("system         {}", r.system);
    println!("offsets        {:?}", r.offsets);
    println!("degeneracy     {}", r.degeneracy.sigma.map_or("none".into(), |s| format!("sigma = {s}")));
    println!(
        "set level      {} edges, {} components {:?}",
        r.set_level.edges, r.set_level.components, r.set_level.component_sizes
    );
    println!("order          {} vertices, {} edges, degree {}", f.order, f.edges, opt(f.regular_degree));
    println!("bipartite      {}", f.bipartite);
    println!("girth          {}", opt(f.girth));
    println!("hamiltonian    {}", f.hamiltonian);
    println!(
        "4-cycles       {} ({} directed / {} undirected rotation classes)",
        f.four_cycle_classes.count, f.four_cycle_classes.oriented_classes, f.four_cycle_classes.unoriented_classes
    );
    println!("automorphisms  {}", f.aut_order);
    if let Some(d) = f.dihedral {
        println!("dihedral       {d}");
    }
    println!("circulant      Ci{}{:?} verified={}", r.circulant.n_vertices, r.circulant.jumps, r.circulant.verified);
    println!(
        "configuration  n3={} self_dual={} cyclic={}",
        r.configuration.is_n3, r.configuration.self_dual, r.configuration.cyclic
    );
}

fn tonnetz_analyze(system: &SystemArgs, json: Option<&PathBuf>) -> Result<(), CliError> {
    let sys = system.resolve()?;
    let report = analyze_system(&sys)?;
    print_report(&report);
    write_json(json, &report)
}

#[derive(Serialize)]
struct ConfigOut {
    #[serde(flatten)]
    verdict: ConfigurationVerdict,
    circulant_jumps: Vec<usize>,
}

fn config_check(system: &SystemArgs, json: Option<&PathBuf>) -> Result<(), CliError> {
    let sys = system.resolve()?;
    let g = build_functional_tonnetz(&sys)?;
    let verdict = check_n3_configuration_with(g.graph(), Some(&rotation(sys.n)))?;
    let jumps = jump_set_from_offsets(&derive_plr_offsets(&sys)?);
    println!("{sys}");
    println!("is_n3      {}", verdict.is_n3);
    for reason in &verdict.reasons {
        println!("  reason   {reason:?}");
    }
    println!("self_dual  {}", verdict.self_dual);
    println!("cyclic     {}", verdict.cyclic);
    println!("circulant  {:?}", jumps.jumps);
    let out = ConfigOut {
        verdict,
        circulant_jumps: jumps.jumps.into_iter().collect(),
    };
    write_json(json, &out)
}

#[derive(Serialize)]
struct CensusOut {
    #[serde(flatten)]
    census: CyclicCensus,
    canonical: BTreeMap<String, Vec<(usize, usize)>>,
}

fn census_cyclic(json: Option<&PathBuf>) -> Result<(), CliError> {
    let census = enumerate_cyclic_103()?;
    let groups = canonical_groups(&census);
    println!(
        "{} of {} triples {{0, a, b}} give a 10_3 configuration",
        census.survivors.len(),
        census.candidates
    );
    for (i, class) in census.classes.iter().enumerate() {
        let members: Vec<String> = class.iter().map(|(a, b)| format!("{{0,{a},{b}}}")).collect();
        println!("class {i}: {}", members.join(" "));
    }
    let canonical = groups
        .into_iter()
        .map(|((a, b), members)| (format!("0,{a},{b}"), members))
        .collect();
    write_json(json, &CensusOut { census, canonical })
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Tune {
            command: TuneCommand::Scan { max_p, max_n, max_u, json },
        } => tune_scan(max_p, max_n, max_u, json.as_ref()),
        Command::Harmony {
            command: HarmonyCommand::Solve { n, q, delta, json },
        } => harmony_solve(n, q, delta, json.as_ref()),
        Command::Tonnetz { command } => match command {
            TonnetzCommand::Build { system, set_level, dot, json } => {
                tonnetz_build(&system, set_level, dot.as_ref(), json.as_ref())
            }
            TonnetzCommand::Analyze { system, json } => tonnetz_analyze(&system, json.as_ref()),
        },
        Command::Config {
            command: ConfigCommand::Check { system, json },
        } => config_check(&system, json.as_ref()),
        Command::Census {
            command: CensusCommand::Cyclic103 { json },
        } => census_cyclic(json.as_ref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
