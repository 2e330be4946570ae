//! Command-line surface: evaluate invariants of braid closures, compare
//! catalogued links, and run the validation suites.
//!
//! Exit codes: 0 ok, 1 usage error, 2 computation error, 3 compared pair is
//! P-equivalent but Θ-distinguished.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use thetalink::braid::BraidWord;
use thetalink::cache::{cache_key, Cache};
use thetalink::catalog::Catalog;
use thetalink::invariants::{compare, theta, Engine};
use thetalink::scalar::{rat_frac, ScalarValue};
use thetalink::validate::{self, all_passed, Check, PropertyConfig};

#[derive(Parser)]
#[command(name = "thetalink", version, about = "Exact link invariants from braid closures")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate an invariant of a braid closure or a catalogued link.
    Eval(EvalArgs),
    /// Compare two links under P and the theta invariants.
    Compare(CompareArgs),
    /// Run a validation suite.
    Validate(ValidateArgs),
    /// List the built-in catalog.
    Catalog(CatalogArgs),
}

#[derive(Args)]
struct EvalArgs {
    /// Braid word, e.g. "{1,-2,1,-2}".
    #[arg(long, conflicts_with = "link")]
    braid: Option<String>,
    /// Catalogued link name, e.g. "L11n418{0,0}".
    #[arg(long)]
    link: Option<String>,
    /// Explicit strand count (allows trailing trivial strands).
    #[arg(long)]
    strands: Option<usize>,
    /// Invariant: theta | homflypt | theta-d:<d>.
    #[arg(long, default_value = "theta")]
    invariant: String,
    /// Engine: trace | skein | closed | all | auto.
    #[arg(long, default_value = "auto")]
    engine: String,
    /// Output format: text | json.
    #[arg(long, default_value = "text")]
    format: String,
    /// Cache directory for computed values.
    #[arg(long)]
    cache_dir: Option<String>,
    /// Extra catalog file (JSON lines).
    #[arg(long)]
    catalog: Option<String>,
}

#[derive(Args)]
struct CompareArgs {
    /// First link: catalog name or braid word.
    link1: String,
    /// Second link: catalog name or braid word.
    link2: String,
    /// Output format: text | json.
    #[arg(long, default_value = "text")]
    format: String,
    /// Extra catalog file (JSON lines).
    #[arg(long)]
    catalog: Option<String>,
}

#[derive(Args)]
struct ValidateArgs {
    /// Suite: paper | properties | esystem.
    #[arg(long)]
    suite: String,
    /// Seed for the randomized properties suite.
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Strand bound for random braids.
    #[arg(long, default_value_t = 4)]
    max_strands: usize,
    /// Length bound for random braids.
    #[arg(long, default_value_t = 10)]
    max_length: usize,
    /// Numeric tolerance for the E-system suite.
    #[arg(long, default_value_t = 1e-9)]
    tolerance: f64,
}

#[derive(Args)]
struct CatalogArgs {
    /// Extra catalog file (JSON lines).
    #[arg(long)]
    catalog: Option<String>,
    /// Output format: text | json.
    #[arg(long, default_value = "text")]
    format: String,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap treats --help/--version as errors that exit successfully
            if e.use_stderr() {
                eprintln!("{}", e);
                return ExitCode::from(1);
            }
            print!("{}", e);
            return ExitCode::SUCCESS;
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {}", message);
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Eval(args) => cmd_eval(args),
        Command::Compare(args) => cmd_compare(args),
        Command::Validate(args) => cmd_validate(args),
        Command::Catalog(args) => cmd_catalog(args),
    }
}

fn load_catalog(extra: &Option<String>) -> Result<Catalog, String> {
    let mut catalog = Catalog::builtin();
    if let Some(path) = extra {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {}", path, e))?;
        catalog.load_jsonl(&text).map_err(|e| e.to_string())?;
    }
    Ok(catalog)
}

fn resolve_input(
    catalog: &Catalog,
    braid: &Option<String>,
    link: &Option<String>,
    strands: Option<usize>,
) -> Result<(String, BraidWord), String> {
    match (braid, link) {
        (Some(text), None) => {
            let w = BraidWord::parse_with_strands(text, strands).map_err(|e| e.to_string())?;
            Ok((w.to_string(), w))
        }
        (None, Some(name)) => {
            let w = catalog.resolve(name).map_err(|e| e.to_string())?;
            Ok((name.clone(), w))
        }
        _ => Err("exactly one of --braid or --link is required".to_string()),
    }
}

/// Either a catalog name or a literal braid word.
fn resolve_loose(catalog: &Catalog, text: &str) -> Result<(String, BraidWord), String> {
    if let Ok(entry) = catalog.get(text) {
        return Ok((entry.name.clone(), entry.word().map_err(|e| e.to_string())?));
    }
    let w = BraidWord::parse(text)
        .map_err(|e| format!("{:?} is neither a catalog name nor a braid word ({})", text, e))?;
    Ok((w.to_string(), w))
}

enum Invariant {
    Theta,
    Homflypt,
    ThetaD(usize),
}

fn parse_invariant(text: &str) -> Result<Invariant, String> {
    if text == "theta" {
        return Ok(Invariant::Theta);
    }
    if text == "homflypt" {
        return Ok(Invariant::Homflypt);
    }
    if let Some(d) = text.strip_prefix("theta-d:") {
        let d: usize = d.parse().map_err(|_| format!("bad depth in {:?}", text))?;
        if d < 1 {
            return Err("theta-d depth must be >= 1".to_string());
        }
        return Ok(Invariant::ThetaD(d));
    }
    Err(format!("unknown invariant {:?} (theta | homflypt | theta-d:<d>)", text))
}

fn render(value: &ScalarValue, format: &str) -> Result<String, String> {
    match format {
        "text" => Ok(value.to_string()),
        "json" => serde_json::to_string(value).map_err(|e| e.to_string()),
        other => Err(format!("unknown format {:?} (text | json)", other)),
    }
}

fn cmd_eval(args: EvalArgs) -> Result<ExitCode, String> {
    let catalog = load_catalog(&args.catalog)?;
    let (name, w) = match resolve_input(&catalog, &args.braid, &args.link, args.strands) {
        Ok(x) => x,
        Err(e) => {
            eprintln!("error: {}", e);
            return Ok(ExitCode::from(1));
        }
    };
    let invariant = match parse_invariant(&args.invariant) {
        Ok(x) => x,
        Err(e) => {
            eprintln!("error: {}", e);
            return Ok(ExitCode::from(1));
        }
    };
    let Some(engine) = Engine::parse(&args.engine) else {
        eprintln!(
            "error: unknown engine {:?} (trace | skein | closed | all | auto)",
            args.engine
        );
        return Ok(ExitCode::from(1));
    };

    let invariant_id = match &invariant {
        Invariant::Theta => "theta".to_string(),
        Invariant::Homflypt => "homflypt".to_string(),
        Invariant::ThetaD(d) => format!("theta-d:{}", d),
    };
    let cache = match &args.cache_dir {
        Some(dir) => Some(Cache::open(dir).map_err(|e| e.to_string())?),
        None => None,
    };
    let key = cache_key(&w.to_string(), &invariant_id, &args.engine);

    let value = if let Some(hit) = cache.as_ref().and_then(|c| c.get(&key)) {
        hit
    } else {
        let theta_value = theta(&w, engine).map_err(|e| e.to_string())?;
        let v = match invariant {
            Invariant::Theta => theta_value,
            Invariant::Homflypt => theta_value.specialize_e(&rat_frac(1, 1)).unwrap(),
            Invariant::ThetaD(d) => theta_value.specialize_e(&rat_frac(1, d as i64)).unwrap(),
        };
        if let Some(c) = &cache {
            c.put(&key, &v).map_err(|e| e.to_string())?;
        }
        v
    };

    println!("{}", render(&value, &args.format)?);
    if matches!(engine, Engine::All) && args.format == "text" {
        eprintln!("# engines agree on {}", name);
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_compare(args: CompareArgs) -> Result<ExitCode, String> {
    let catalog = load_catalog(&args.catalog)?;
    let ((name1, w1), (name2, w2)) = match (
        resolve_loose(&catalog, &args.link1),
        resolve_loose(&catalog, &args.link2),
    ) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(e), _) | (_, Err(e)) => {
            eprintln!("error: {}", e);
            return Ok(ExitCode::from(1));
        }
    };
    let report = compare(&name1, &w1, &name2, &w2);
    match args.format.as_str() {
        "json" => println!(
            "{}",
            serde_json::to_string_pretty(&report).map_err(|e| e.to_string())?
        ),
        "text" => {
            println!("link1:            {}", report.link1);
            println!("link2:            {}", report.link2);
            println!("P-equal:          {}", report.p_equal);
            println!("theta-equal:      {}", report.theta_equal);
            println!("theta difference: {}", report.theta_difference);
            for (at, v) in &report.specializations {
                println!("  at E={}:        {}", at, v);
            }
        }
        other => return Err(format!("unknown format {:?} (text | json)", other)),
    }
    if report.distinguished() {
        return Ok(ExitCode::from(3));
    }
    Ok(ExitCode::SUCCESS)
}

fn print_checks(checks: &[Check]) {
    for c in checks {
        println!("{} {} ({})", if c.passed { "PASS" } else { "FAIL" }, c.id, c.detail);
    }
}

fn cmd_validate(args: ValidateArgs) -> Result<ExitCode, String> {
    let checks = match args.suite.as_str() {
        "paper" => validate::paper_suite(),
        "properties" => validate::properties_suite(&PropertyConfig {
            seed: args.seed,
            max_strands: args.max_strands,
            max_length: args.max_length,
            ..PropertyConfig::default()
        }),
        "esystem" => validate::esystem_suite(args.tolerance),
        other => {
            eprintln!("error: unknown suite {:?} (paper | properties | esystem)", other);
            return Ok(ExitCode::from(1));
        }
    };
    print_checks(&checks);
    let (passed, total) = (checks.iter().filter(|c| c.passed).count(), checks.len());
    println!("{}/{} checks passed", passed, total);
    Ok(if all_passed(&checks) { ExitCode::SUCCESS } else { ExitCode::from(2) })
}

fn cmd_catalog(args: CatalogArgs) -> Result<ExitCode, String> {
    let catalog = load_catalog(&args.catalog)?;
    match args.format.as_str() {
        "json" => {
            for e in catalog.entries() {
                println!("{}", serde_json::to_string(e).map_err(|e| e.to_string())?);
            }
        }
        "text" => {
            for e in catalog.entries() {
                println!("{:16} {:3} component(s)  {}", e.name, e.components, e.braid);
            }
        }
        other => return Err(format!("unknown format {:?} (text | json)", other)),
    }
    Ok(ExitCode::SUCCESS)
}
