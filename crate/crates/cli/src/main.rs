mod suites;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use pimsner::abgroup::IntMatrix;
use pimsner::error::Error;
use pimsner::fock::TruncatedFock;
use pimsner::leavitt::{crossed_product_k_groups, k_groups, parse_quiver, quiver_correspondence, KPresets};
use pimsner::ringcore::CoeffRing;
use pimsner::selfsim::{build_nek_correspondence, nek_k_groups, parse_group, DEFAULT_EQUALITY_DEPTH};

use suites::{Status, Suite};

#[derive(Parser)]
#[command(name = "pimsner", version, about = "K-theory and operator checks for Cuntz-Pimsner rings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args)]
struct Common {
    /// Coefficient ring: z, q, zmod:m or fp:p.
    #[arg(long, default_value = "z")]
    coeff: String,
    #[arg(long = "out", value_enum, default_value = "json")]
    out: Format,
}

#[derive(Subcommand)]
enum Command {
    /// K-groups of the Leavitt path algebra of a quiver file.
    Kgroups {
        file: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Operator-level suites for a quiver, or recursion suites for a self-similar group.
    Verify {
        file: PathBuf,
        #[arg(long, default_value_t = 6)]
        fock_depth: usize,
        #[arg(long, default_value_t = 4)]
        word_bound: usize,
        /// Equality depth for self-similar groups.
        #[arg(long, default_value_t = DEFAULT_EQUALITY_DEPTH)]
        depth: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Crossed product by an automorphism of k^r given by its matrix on K-theory.
    Pv {
        #[arg(long)]
        matrix: String,
        #[command(flatten)]
        common: Common,
    },
    /// Nekrashevych correspondence of a self-similar group file.
    Selfsim {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_EQUALITY_DEPTH)]
        depth: usize,
        #[command(flatten)]
        common: Common,
    },
}

enum Failure {
    Input(String),
    Depth(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InsufficientDepth(_) => Failure::Depth(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {}", path.display(), e)))
}

fn coeff(spec: &str) -> Result<CoeffRing, Failure> {
    Ok(spec.parse::<CoeffRing>()?)
}

struct Output {
    json: Value,
    text: String,
    status: Status,
}

fn emit(out: Output, format: Format) -> ExitCode {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&out.json).expect("json")),
        Format::Text => print!("{}", out.text),
    }
    match out.status {
        Status::Pass => ExitCode::SUCCESS,
        Status::InsufficientDepth => ExitCode::from(3),
        Status::Fail => ExitCode::from(4),
    }
}

fn suites_text(suites: &[Suite]) -> String {
    let mut s = String::new();
    for suite in suites {
        s.push_str(&format!(
            "{:<22} {:<18} checks={} coverage={:?}\n",
            suite.name,
            suite.status.label(),
            suite.checks,
            suite.coverage
        ));
        for n in &suite.notes {
            s.push_str(&format!("    {}\n", n));
        }
    }
    s
}

fn kgroups(file: &Path, common: &Common) -> Result<Output, Failure> {
    let q = parse_quiver(&read(file)?)?;
    let k = coeff(&common.coeff)?;
    let report = k_groups(&q, &KPresets::for_coeff(&k)?);
    let mut text = format!("regular vertices: {:?}\n", report.adjacency.regular);
    text.push_str(&format!("M = {}\n", report.sequence.map));
    for d in &report.sequence.degrees {
        text.push_str(&format!(
            "K{}: cokernel {} | kernel {} | {}\n",
            d.degree,
            d.cokernel,
            d.kernel,
            d.assembled.as_ref().map_or("unassembled".to_string(), |g| g.to_string())
        ));
    }
    Ok(Output {
        json: json!({ "schema": 1, "command": "kgroups", "input": file.display().to_string(), "report": report.to_json() }),
        text,
        status: Status::Pass,
    })
}

fn verify(
    file: &Path,
    fock_depth: usize,
    word_bound: usize,
    depth: usize,
    seed: u64,
    common: &Common,
) -> Result<Output, Failure> {
    if word_bound == 0 || depth == 0 {
        return Err(Failure::Input("word bound and depth must be at least 1".into()));
    }
    let text = read(file)?;
    let k = coeff(&common.coeff)?;
    let is_group = text.lines().any(|l| l.trim_start().starts_with("alphabet:"));
    let (kind, suites) = if is_group {
        let g = parse_group(&text)?.with_equality_depth(depth);
        let nek = build_nek_correspondence(Arc::new(g), k.clone())?;
        ("selfsim", suites::group_suites(&nek))
    } else {
        if fock_depth == 0 {
            return Err(Failure::Input("fock depth must be at least 1".into()));
        }
        let q = parse_quiver(&text)?;
        let fock = TruncatedFock::new(Arc::new(quiver_correspondence(&q, k.clone())), fock_depth)?;
        ("quiver", suites::fock_suites(&fock, word_bound, seed)?)
    };
    let status = suites::overall(&suites);
    let json = json!({
        "schema": 1,
        "command": "verify",
        "input": file.display().to_string(),
        "kind": kind,
        "config": {
            "fock_depth": fock_depth,
            "word_bound": word_bound,
            "equality_depth": depth,
            "coefficients": k.to_string(),
            "seed": seed,
        },
        "status": status.label(),
        "suites": suites.iter().map(Suite::to_json).collect::<Vec<_>>(),
    });
    let mut out = format!("{} ({}), seed {}: {}\n", file.display(), kind, seed, status.label());
    out.push_str(&suites_text(&suites));
    Ok(Output { json, text: out, status })
}

fn pv(matrix: &str, common: &Common) -> Result<Output, Failure> {
    let alpha = IntMatrix::parse(matrix)?;
    let k = coeff(&common.coeff)?;
    let report = crossed_product_k_groups(&alpha, &KPresets::for_coeff(&k)?)?;
    let mut text = format!("1 - alpha = {}\n", report.map);
    for d in &report.degrees {
        text.push_str(&format!("K{}: cokernel {} | kernel {}\n", d.degree, d.cokernel, d.kernel));
    }
    Ok(Output {
        json: json!({ "schema": 1, "command": "pv", "alpha": alpha.to_string(), "report": report.to_json() }),
        text,
        status: Status::Pass,
    })
}

fn selfsim(file: &Path, depth: usize, common: &Common) -> Result<Output, Failure> {
    if depth == 0 {
        return Err(Failure::Input("depth must be at least 1".into()));
    }
    let g = parse_group(&read(file)?)?.with_equality_depth(depth);
    let k = coeff(&common.coeff)?;
    let nek = build_nek_correspondence(Arc::new(g), k.clone())?;
    let kg = match KPresets::for_coeff(&k) {
        Ok(p) => nek_k_groups(&nek, None, &p)?,
        Err(_) => None,
    };
    let status = if nek.checks.all_pass() { Status::Pass } else { Status::Fail };
    let mut text = format!(
        "alphabet {:?}, {} generators, equality depth {}\n",
        nek.group.alphabet(),
        nek.group.generators().len(),
        depth
    );
    text.push_str(&format!(
        "module law {} | adjoint law {} | compact {}\n",
        nek.checks.module_law, nek.checks.adjoint_law, nek.checks.compact
    ));
    match &kg {
        Some(r) => {
            for d in &r.degrees {
                text.push_str(&format!("K{}: cokernel {} | kernel {}\n", d.degree, d.cokernel, d.kernel));
            }
        }
        None => text.push_str("K-groups: not computed (needs the action matrix on a finite quotient)\n"),
    }
    Ok(Output {
        json: json!({
            "schema": 1,
            "command": "selfsim",
            "input": file.display().to_string(),
            "status": status.label(),
            "correspondence": nek.to_json(),
            "k_groups": kg.as_ref().map(|r| r.to_json()),
        }),
        text,
        status,
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (result, format) = match &cli.command {
        Command::Kgroups { file, common } => (kgroups(file, common), common.out),
        Command::Verify {
            file,
            fock_depth,
            word_bound,
            depth,
            seed,
            common,
        } => (verify(file, *fock_depth, *word_bound, *depth, *seed, common), common.out),
        Command::Pv { matrix, common } => (pv(matrix, common), common.out),
        Command::Selfsim { file, depth, common } => (selfsim(file, *depth, common), common.out),
    };
    match result {
        Ok(out) => emit(out, format),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {}", msg);
            ExitCode::from(2)
        }
        Err(Failure::Depth(msg)) => {
            eprintln!("error: {}", msg);
            ExitCode::from(3)
        }
    }
}
