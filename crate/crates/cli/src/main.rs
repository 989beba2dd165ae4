use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Parser, Subcommand};
use serde::Serialize;

use cremona::geometry::{cremona_at, equivalent, random_config, star_violation, CenterSet, Configuration};
use cremona::lattice::{
    coxeter_element, coxeter_relations, distinctness_certificate, jordan_certificate, DistinctnessReport, DivisorClass, IntMatrix,
    JordanCertificate, RelationCheck,
};
use cremona::orbit::{consistency_check, lemma3_iterate, orbit_bfs, IterateOptions, OrbitLimits, TRACKED_PLANE};
use cremona::Error;

const WORKERS_ENV: &str = "CREMONA_WORKERS";

#[derive(Parser)]
#[command(name = "cremona", version, about = "Cremona dynamics of point configurations in P^3")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a seeded random configuration satisfying (*) for every center set.
    Gen {
        #[arg(long)]
        seed: u64,
        /// Coordinates are drawn from [-height, height].
        #[arg(long, default_value_t = 50)]
        height: u64,
        #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(u64).range(8..))]
        k: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Apply the standard Cremona transformation at four centers.
    Cremona {
        #[arg(long = "in")]
        input: PathBuf,
        /// Four distinct 1-based labels, comma separated.
        #[arg(long, value_delimiter = ',', num_args = 1..)]
        centers: Vec<usize>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Cremona at points 1-4 followed by the cyclic shift, repeated.
    Iterate {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        steps: u64,
        /// Stop early once a coordinate exceeds this many bits.
        #[arg(long)]
        max_bits: Option<u64>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Breadth-first search of the orbit under all admissible center sets.
    Orbit {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        max_depth: usize,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        max_nodes: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Decide equivalence up to PGL(4) and relabeling.
    Equiv { a: PathBuf, b: PathBuf },
    /// Coxeter matrix, Jordan data, distinctness and relation certificates.
    LatticeCert {
        #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(u64).range(8..))]
        k: u64,
        #[arg(long = "n", value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure { code: 2, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Star(_) | Error::StarAtStep { .. } | Error::NoFrame | Error::DegenerateFrame(_) => 3,
            _ => 2,
        };
        Failure { code, message: e.to_string() }
    }
}

type CmdResult = Result<u8, Failure>;

#[derive(Serialize)]
struct RunManifest {
    command: &'static str,
    version: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
    inputs: Vec<PathBuf>,
    outputs: Vec<PathBuf>,
    limits: BTreeMap<&'static str, u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    workers: Option<usize>,
    exit_code: u8,
    unix_time: u64,
}

impl RunManifest {
    fn new(command: &'static str) -> Self {
        RunManifest {
            command,
            version: env!("CARGO_PKG_VERSION"),
            seed: None,
            inputs: Vec::new(),
            outputs: Vec::new(),
            limits: BTreeMap::new(),
            workers: None,
            exit_code: 0,
            unix_time: SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0),
        }
    }

    fn write(mut self, out: &Path, exit_code: u8) -> Result<(), Failure> {
        self.exit_code = exit_code;
        write_json(&sidecar(out, "manifest.json"), &self)
    }
}

/// `run.json` -> `run.<suffix>`.
fn sidecar(out: &Path, suffix: &str) -> PathBuf {
    out.with_extension(suffix)
}

fn write_text(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::input(format!("cannot write {}: {e}", path.display())))
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), Failure> {
    let mut text = serde_json::to_string_pretty(value).map_err(|e| Failure::input(e.to_string()))?;
    text.push('\n');
    write_text(path, &text)
}

fn read_config(path: &Path) -> Result<Configuration, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::input(format!("cannot read {}: {e}", path.display())))?;
    Configuration::from_json(&text).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn worker_count() -> Result<usize, Failure> {
    match std::env::var(WORKERS_ENV) {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n >= 1 => Ok(n),
            _ => Err(Failure::input(format!("{WORKERS_ENV} must be a positive integer, got {v:?}"))),
        },
        Err(_) => Ok(std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)),
    }
}

fn cmd_gen(seed: u64, height: u64, k: u64, out: &Path) -> CmdResult {
    let mut manifest = RunManifest::new("gen");
    manifest.seed = Some(seed);
    manifest.outputs.push(out.to_path_buf());
    manifest.limits.insert("height", height);
    manifest.limits.insert("k", k);
    let config = random_config(seed, height, k as usize)?;
    write_text(out, &config.to_json())?;
    manifest.write(out, 0)?;
    println!("wrote {} points to {}", config.k(), out.display());
    Ok(0)
}

fn cmd_cremona(input: &Path, centers: &[usize], out: &Path) -> CmdResult {
    let config = read_config(input)?;
    let centers = CenterSet::from_labels(centers, config.k())?;
    if let Some(v) = star_violation(&config, centers) {
        println!("condition (*) fails at centers {:?}", centers.labels());
        return Err(Error::Star(v).into());
    }
    let image = cremona_at(&config, centers)?;
    write_text(out, &image.to_json())?;
    let mut manifest = RunManifest::new("cremona");
    manifest.inputs.push(input.to_path_buf());
    manifest.outputs.push(out.to_path_buf());
    manifest.write(out, 0)?;
    println!("condition (*) holds at centers {:?}; wrote {}", centers.labels(), out.display());
    Ok(0)
}

fn cmd_iterate(input: &Path, steps: u64, max_bits: Option<u64>, out: &Path) -> CmdResult {
    let config = read_config(input)?;
    let csv = sidecar(out, "degrees.csv");
    let mut manifest = RunManifest::new("iterate");
    manifest.inputs.push(input.to_path_buf());
    manifest.outputs.extend([out.to_path_buf(), csv.clone()]);
    manifest.limits.insert("steps", steps);
    if let Some(b) = max_bits {
        manifest.limits.insert("max_bits", b);
    }
    let (report, code, failure) = match lemma3_iterate(&config, steps as usize, IterateOptions { max_bits }) {
        Ok(report) => {
            let code = if consistency_check(&report) { 0 } else { 1 };
            (report, code, None)
        }
        Err(e) if e.partial.records.is_empty() => return Err(e.source.into()),
        Err(e) => {
            let failure = Failure::from(e.source);
            let message = format!("stopped at step {}: {}; partial report written", e.step, failure.message);
            (*e.partial, failure.code, Some(Failure { code: failure.code, message }))
        }
    };
    write_json(out, &report)?;
    write_text(&csv, &report.degree_table_csv())?;
    manifest.write(out, code)?;
    for r in &report.records {
        println!("step {}: degree {}, (*) {}, {} coplanar", r.step, r.degree, r.star_holds, r.coplanar.len());
    }
    if report.truncated {
        eprintln!("warning: height cap reached after {} steps", report.steps_completed());
    }
    if let Some(f) = failure {
        return Err(f);
    }
    println!(
        "pairwise inequivalent: {}; consistency check: {}",
        report.pairwise_inequivalent(),
        if code == 0 { "passed" } else { "FAILED" }
    );
    Ok(code)
}

fn cmd_orbit(input: &Path, max_depth: usize, max_nodes: u64, out: &Path) -> CmdResult {
    let config = read_config(input)?;
    let workers = worker_count()?;
    let limits = OrbitLimits { max_depth, max_nodes: max_nodes as usize, workers };
    let graph = orbit_bfs(&config, limits)?;
    write_json(out, &graph)?;
    let mut manifest = RunManifest::new("orbit");
    manifest.inputs.push(input.to_path_buf());
    manifest.outputs.push(out.to_path_buf());
    manifest.limits.insert("max_depth", max_depth as u64);
    manifest.limits.insert("max_nodes", max_nodes);
    manifest.workers = Some(workers);
    manifest.write(out, 0)?;
    for s in &graph.skipped {
        eprintln!("warning: node {} centers {:?} skipped: {}", s.source, s.centers.labels(), s.reason);
    }
    println!(
        "{} nodes, {} edges, truncated: {}",
        graph.nodes.len(),
        graph.edges.len(),
        graph.truncated
    );
    Ok(0)
}

fn cmd_equiv(a: &Path, b: &Path) -> CmdResult {
    let (a, b) = (read_config(a)?, read_config(b)?);
    let same = equivalent(&a, &b).map_err(|e| Failure { code: 2, message: e.to_string() })?;
    println!("{}", if same { "EQUIVALENT" } else { "INEQUIVALENT" });
    Ok(if same { 0 } else { 1 })
}

#[derive(Serialize)]
struct LatticeCertificate {
    k: usize,
    n: usize,
    coxeter_matrix: IntMatrix,
    jordan: JordanCertificate,
    blocks_at_one: Option<Vec<usize>>,
    start_class: String,
    distinctness: DistinctnessReport,
    certified: bool,
    relations: Vec<RelationCheck>,
    relations_hold: bool,
}

fn cmd_lattice_cert(k: u64, n: u64, out: &Path) -> CmdResult {
    let (k, n) = (k as usize, n as usize);
    let m = coxeter_element(k)?;
    let jordan = jordan_certificate(m.matrix())?;
    let start = DivisorClass::plane_through(k, &TRACKED_PLANE);
    let distinctness = distinctness_certificate(&start, n)?;
    let relations = coxeter_relations(k)?;
    let cert = LatticeCertificate {
        k,
        n,
        coxeter_matrix: m.matrix().clone(),
        blocks_at_one: jordan.blocks_at_one(),
        jordan,
        start_class: start.to_string(),
        certified: distinctness.certified(),
        relations_hold: relations.iter().all(|r| r.holds),
        distinctness,
        relations,
    };
    let csv = sidecar(out, "degrees.csv");
    let mut table = String::from("n,degree\n");
    for (i, d) in cert.distinctness.degrees.iter().enumerate() {
        table.push_str(&format!("{i},{d}\n"));
    }
    write_json(out, &cert)?;
    write_text(&csv, &table)?;
    let code = if cert.distinctness.all_distinct && cert.relations_hold { 0 } else { 1 };
    let mut manifest = RunManifest::new("lattice-cert");
    manifest.outputs.extend([out.to_path_buf(), csv]);
    manifest.limits.insert("k", k as u64);
    manifest.limits.insert("n", n as u64);
    manifest.write(out, code)?;
    println!("characteristic polynomial (low to high): {:?}", cert.jordan.characteristic_polynomial.iter().map(ToString::to_string).collect::<Vec<_>>());
    println!("Jordan blocks at 1: {:?}", cert.blocks_at_one);
    println!(
        "orbit of {} distinct up to n = {n}: {}; eigenvalue-1 depth {}",
        cert.start_class, cert.distinctness.all_distinct, cert.distinctness.unipotent_depth
    );
    println!("{} Coxeter relations, all hold: {}", cert.relations.len(), cert.relations_hold);
    Ok(code)
}

fn run(cli: Cli) -> CmdResult {
    match cli.command {
        Command::Gen { seed, height, k, out } => cmd_gen(seed, height, k, &out),
        Command::Cremona { input, centers, out } => cmd_cremona(&input, &centers, &out),
        Command::Iterate { input, steps, max_bits, out } => cmd_iterate(&input, steps, max_bits, &out),
        Command::Orbit { input, max_depth, max_nodes, out } => cmd_orbit(&input, max_depth, max_nodes, &out),
        Command::Equiv { a, b } => cmd_equiv(&a, &b),
        Command::LatticeCert { k, n, out } => cmd_lattice_cert(k, n, &out),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
