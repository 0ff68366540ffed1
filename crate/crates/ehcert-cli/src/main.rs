use clap::{Args, Parser, Subcommand};
use ehcert::certificate::verify_certificate;
use ehcert::error::Error;
use ehcert::graph::Graph;
use ehcert::limits::SearchLimits;
use ehcert::numeric::{parse_rat, Rat};
use ehcert::{experiments, generate, io, pipeline, swiss};
use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

/// Certified graph dichotomies: generate graphs, run the end-to-end
/// certifier, verify certificates, and drive experiment grids.
#[derive(Parser)]
#[command(name = "ehcert", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Produce a verified certificate for a graph against a Swiss Army
    /// pattern built from a forest and parameters s, t.
    Certify(CertifyArgs),
    /// Write a generated graph to stdout in edge-list form.
    Generate(GenerateArgs),
    /// Recheck a serialized certificate against a graph.
    Verify(VerifyArgs),
    /// Run a seeded experiment grid from a config file and print CSV.
    Experiments(ExperimentArgs),
}

#[derive(Args)]
struct CertifyArgs {
    /// Edge-list graph file.
    graph: PathBuf,
    /// Edge-list file holding the forest F of the pattern F^s_t.
    #[arg(long)]
    forest: PathBuf,
    #[arg(short)]
    s: usize,
    #[arg(short)]
    t: usize,
    /// Constant-sheet overrides, repeatable: --override c=1/100
    #[arg(long = "override", value_name = "NAME=VALUE")]
    overrides: Vec<String>,
    /// Recorded into the trace for replay bookkeeping.
    #[arg(long)]
    seed: Option<u64>,
    /// Write the run trace as JSON to this path.
    #[arg(long)]
    trace: Option<PathBuf>,
}

#[derive(Args)]
struct GenerateArgs {
    #[command(subcommand)]
    kind: GenerateKind,
}

#[derive(Subcommand)]
enum GenerateKind {
    /// Swiss Army graph F^s_t from a forest file.
    Swiss {
        forest: PathBuf,
        #[arg(short)]
        s: usize,
        #[arg(short)]
        t: usize,
    },
    /// Erdos-Renyi G(n, p).
    Gnp {
        n: usize,
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Cycle C_n.
    Cycle { n: usize },
    /// Path P_n.
    Path { n: usize },
    /// Complete graph K_n.
    Complete { n: usize },
}

#[derive(Args)]
struct VerifyArgs {
    certificate: PathBuf,
    graph: PathBuf,
}

#[derive(Args)]
struct ExperimentArgs {
    config: PathBuf,
}

fn parse_overrides(items: &[String]) -> Result<BTreeMap<String, Rat>, String> {
    let mut map = BTreeMap::new();
    for item in items {
        let (k, v) = item
            .split_once('=')
            .ok_or_else(|| format!("override '{item}' is not NAME=VALUE"))?;
        let val = parse_rat(v).ok_or_else(|| format!("override '{item}' has a bad rational"))?;
        map.insert(k.trim().to_string(), val);
    }
    Ok(map)
}

fn read_graph_file(path: &PathBuf) -> Result<Graph, Error> {
    let text = std::fs::read_to_string(path)?;
    io::read_graph(&text)
}

fn run() -> Result<ExitCode, Error> {
    let cli = Cli::parse();
    let limits = SearchLimits::default();
    match cli.command {
        Command::Certify(args) => {
            let g = read_graph_file(&args.graph)?;
            let forest = read_graph_file(&args.forest)?;
            let overrides = parse_overrides(&args.overrides).map_err(Error::Precondition)?;
            let result =
                pipeline::eh_certify(&g, &forest, args.s, args.t, &overrides, &limits, args.seed)?;
            if let Some(path) = args.trace {
                std::fs::write(path, result.trace.to_json())?;
            }
            match result.certificate {
                Some(cert) => {
                    let rep = verify_certificate(&cert, &g);
                    if !rep.pass() {
                        return Err(Error::Verification(rep.violations.join("; ")));
                    }
                    print!("{}", io::write_certificate(&cert));
                    Ok(ExitCode::SUCCESS)
                }
                None => {
                    eprintln!("inconclusive: every stage is logged in the trace");
                    Ok(ExitCode::from(2))
                }
            }
        }
        Command::Generate(args) => {
            let g = match args.kind {
                GenerateKind::Swiss { forest, s, t } => {
                    let f = read_graph_file(&forest)?;
                    swiss::swiss_army(&f, s, t)?
                }
                GenerateKind::Gnp { n, p, seed } => generate::gnp(n, p, seed)?,
                GenerateKind::Cycle { n } => generate::cycle(n),
                GenerateKind::Path { n } => generate::path(n),
                GenerateKind::Complete { n } => Graph::complete(n),
            };
            print!("{}", io::write_graph(&g));
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify(args) => {
            let cert_text = std::fs::read_to_string(&args.certificate)?;
            let cert = io::parse_certificate(&cert_text)?;
            let g = read_graph_file(&args.graph)?;
            let rep = verify_certificate(&cert, &g);
            for w in &rep.warnings {
                eprintln!("warning: {w}");
            }
            if rep.pass() {
                println!("pass: {} certificate verified", cert.kind());
                Ok(ExitCode::SUCCESS)
            } else {
                for v in &rep.violations {
                    eprintln!("violation: {v}");
                }
                Err(Error::Verification(format!(
                    "{} violated inequalities",
                    rep.violations.len()
                )))
            }
        }
        Command::Experiments(args) => {
            let text = std::fs::read_to_string(&args.config)?;
            let cfg = experiments::parse_config(&text)?;
            let summary = experiments::run_experiments(&cfg, &limits)?;
            if let Some(out) = &cfg.out {
                std::fs::write(out, &summary.csv)?;
                eprintln!("wrote {} rows to {out}", summary.rows.len());
            } else {
                print!("{}", summary.csv);
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
