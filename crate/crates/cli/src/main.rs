//! `redei`: command-line front end for the Redei-Berge library.

mod suites;

use std::fs::OpenOptions;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use redei_berge::combinatorics::Permutation;
use redei_berge::digraph::Digraph;
use redei_berge::lab::{
    check_basis_conditions, collision_search, conjecture_scan, transition_matrix, DigraphFamily,
    SearchClass,
};
use redei_berge::order::{perm_to_poset, permutation_from_json, poset_to_digraph, Poset};
use redei_berge::qsym::{f_to_m, is_symmetric};
use redei_berge::redei::{
    invariants_from_u, redei_berge_polynomial, u_via_cycles, u_via_listings, InvariantMode,
};
use redei_berge::Error;

use suites::{run_suite, SuiteConfig, SUITES};

#[derive(Parser)]
#[command(
    name = "redei",
    version,
    about = "Exact Redei-Berge symmetric functions of digraphs, posets and permutations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Worker threads (default: all cores). Results do not depend on it.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Seed for every sampled suite; printed in report headers.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    Digraph,
    Poset,
    Permutation,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Basis {
    #[value(name = "F")]
    F,
    #[value(name = "M")]
    M,
    #[value(name = "p")]
    P,
}

#[derive(Args)]
struct ObjectArgs {
    /// Path to a JSON (or digraph text) file, or inline JSON.
    #[arg(long)]
    input: String,
    #[arg(long, value_enum, default_value_t = Kind::Digraph)]
    kind: Kind,
}

#[derive(Subcommand)]
enum Command {
    /// Print U in the requested basis.
    Compute {
        #[command(flatten)]
        object: ObjectArgs,
        #[arg(long, value_enum, default_value_t = Basis::P)]
        basis: Basis,
        #[arg(long)]
        check_symmetric: bool,
    },
    /// Print the Redei-Berge polynomial u_X(m).
    Poly {
        #[command(flatten)]
        object: ObjectArgs,
        #[arg(long)]
        m: usize,
    },
    /// Run a property suite.
    Verify {
        suite: String,
        #[arg(long, default_value_t = 4)]
        n: usize,
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
    /// Invariants recovered from U.
    Invariants {
        #[command(flatten)]
        object: ObjectArgs,
    },
    /// Group objects by U (posets, digraphs, path-unions, chain-unions).
    Search {
        class: String,
        #[arg(long)]
        n: Option<usize>,
        /// Scan every n from 1 up to this value.
        #[arg(long)]
        max_n: Option<usize>,
        /// Append the JSON-lines report to this file.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Check a digraph family for the new-basis conditions.
    Bases {
        /// discrete or xnk
        family: String,
        #[arg(long, default_value_t = 0)]
        k: usize,
        #[arg(long, default_value_t = 6)]
        max_n: usize,
    },
}

enum Object {
    Digraph(Digraph),
    Poset(Poset),
    Permutation(Permutation),
}

impl Object {
    fn digraph(&self) -> Digraph {
        match self {
            Object::Digraph(x) => x.clone(),
            Object::Poset(p) => poset_to_digraph(p),
            Object::Permutation(s) => poset_to_digraph(&perm_to_poset(s)),
        }
    }
}

/// Failure carrying its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Validation(_) | Error::Domain(_) => 2,
            Error::Capacity { .. } => 3,
            Error::Consistency(_) | Error::Precision(_) => 4,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn validation(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

fn load(args: &ObjectArgs) -> Result<Object, Failure> {
    let trimmed = args.input.trim_start();
    let text = if trimmed.starts_with('{') {
        args.input.clone()
    } else {
        std::fs::read_to_string(&args.input)
            .map_err(|e| validation(format!("cannot read {}: {e}", args.input)))?
    };
    let parsed: Result<Value, _> = serde_json::from_str(&text);
    Ok(match (args.kind, parsed) {
        (Kind::Digraph, Ok(v)) => Object::Digraph(Digraph::from_json(&v)?),
        (Kind::Digraph, Err(_)) => Object::Digraph(Digraph::parse_text(&text)?),
        (Kind::Poset, Ok(v)) => Object::Poset(Poset::from_json(&v)?),
        (Kind::Permutation, Ok(v)) => Object::Permutation(permutation_from_json(&v)?),
        (_, Err(e)) => return Err(validation(format!("invalid JSON: {e}"))),
    })
}

fn header(cli: &Cli, command: &str) -> Value {
    json!({
        "report": command,
        "seed": cli.seed,
        "threads": cli.threads.unwrap_or_else(rayon::current_num_threads),
    })
}

fn emit(lines: &[String], output: Option<&PathBuf>) -> Result<(), Failure> {
    for l in lines {
        println!("{l}");
    }
    if let Some(path) = output {
        let mut f = OpenOptions::new()
            .create(true)
            .append(true)
            .open(path)
            .map_err(|e| validation(format!("cannot open {}: {e}", path.display())))?;
        for l in lines {
            writeln!(f, "{l}").map_err(|e| validation(format!("write failed: {e}")))?;
        }
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<u8, Failure> {
    let json_out = cli.format == Format::Json;
    match &cli.command {
        Command::Compute {
            object,
            basis,
            check_symmetric,
        } => {
            let x = load(object)?.digraph();
            let (text, value, symmetric) = match basis {
                Basis::F => {
                    let u = u_via_listings(&x)?;
                    let s = check_symmetric.then(|| is_symmetric(&f_to_m(&u)));
                    (u.to_string(), u.to_json(), s)
                }
                Basis::M => {
                    let u = f_to_m(&u_via_listings(&x)?);
                    let s = check_symmetric.then(|| is_symmetric(&u));
                    (u.to_string(), u.to_json(), s)
                }
                Basis::P => {
                    let u = u_via_cycles(&x)?;
                    let s = if *check_symmetric {
                        Some(is_symmetric(&f_to_m(&u_via_listings(&x)?)))
                    } else {
                        None
                    };
                    (u.to_string(), u.to_json(), s)
                }
            };
            if json_out {
                let mut out = json!({"u": value});
                if let Some(s) = symmetric {
                    out["symmetric"] = json!(s);
                }
                println!("{out}");
            } else {
                println!("{text}");
                if let Some(s) = symmetric {
                    println!("symmetric: {s}");
                }
            }
            Ok(0)
        }
        Command::Poly { object, m } => {
            let x = load(object)?.digraph();
            let v = redei_berge_polynomial(&x, *m)?;
            if json_out {
                println!("{}", json!({"m": m, "value": v.to_string()}));
            } else {
                println!("{v}");
            }
            Ok(0)
        }
        Command::Invariants { object } => {
            let obj = load(object)?;
            let x = obj.digraph();
            let mode = match &obj {
                Object::Digraph(d) if d.is_tournament() && d.n() >= 3 => InvariantMode::Tournament,
                Object::Digraph(_) => InvariantMode::Digraph,
                Object::Poset(_) | Object::Permutation(_) => InvariantMode::Poset,
            };
            let report = invariants_from_u(&u_via_listings(&x)?, x.n(), mode)?;
            if json_out {
                println!("{}", report.to_json());
            } else {
                println!("vertices: {}", report.n);
                println!("edges: {}", report.nonloop_edges);
                for (k, v) in &report.path_counts {
                    println!("{k}-vertex paths: {v}");
                }
                if let Some(c) = &report.odd_cycles {
                    for (k, v) in c {
                        println!("{k}-cycles: {v}");
                    }
                }
                if let Some(i) = report.incomparable_pairs {
                    println!("incomparable pairs: {i}");
                }
            }
            Ok(0)
        }
        Command::Verify { suite, n, samples } => {
            if !SUITES.contains(&suite.as_str()) {
                return Err(validation(format!(
                    "unknown suite {suite:?}; expected one of {}",
                    SUITES.join(", ")
                )));
            }
            if *n == 0 {
                return Err(validation("--n must be positive"));
            }
            let cfg = SuiteConfig {
                n: *n,
                samples: *samples,
                seed: cli.seed,
            };
            let outcome = run_suite(suite, &cfg)?;
            let mut head = header(cli, "verify");
            head["suite"] = json!(suite);
            head["n"] = json!(n);
            let verdict = if outcome.failure.is_none() { "PASS" } else { "FAIL" };
            if json_out {
                head["verdict"] = json!(verdict);
                head["checked"] = json!(outcome.checked);
                head["counterexample"] = outcome.failure.clone().unwrap_or(Value::Null);
                println!("{head}");
            } else {
                println!("# seed {} suite {suite} n {n}", cli.seed);
                println!("{verdict} {suite}: {} objects checked", outcome.checked);
                if let Some(f) = &outcome.failure {
                    println!("counterexample: {f}");
                }
            }
            Ok(if outcome.failure.is_none() { 0 } else { 1 })
        }
        Command::Search {
            class,
            n,
            max_n,
            output,
        } => {
            let class = SearchClass::parse(class)?;
            let sizes: Vec<usize> = match (n, max_n) {
                (Some(n), None) => vec![*n],
                (None, Some(m)) => (1..=*m).collect(),
                (Some(n), Some(m)) => (*n..=*m).collect(),
                (None, None) => return Err(validation("give --n or --max-n")),
            };
            let mut head = header(cli, "search");
            head["class"] = json!(class.name());
            let mut lines = vec![head.to_string()];
            let mut ok = true;
            if class == SearchClass::Posets {
                let top = *sizes.last().expect("nonempty range");
                let scan = conjecture_scan(top)?;
                for r in scan.reports.iter().filter(|r| sizes.contains(&r.n)) {
                    lines.extend(r.json_lines());
                    lines.push(json!({"summary": r.summary_json()}).to_string());
                }
                lines.push(json!({"verdict": scan.verdict()}).to_string());
            } else {
                for &n in &sizes {
                    let r = collision_search(class, n)?;
                    lines.extend(r.json_lines());
                    lines.push(json!({"summary": r.summary_json()}).to_string());
                    if matches!(class, SearchClass::PathUnions | SearchClass::ChainUnions) {
                        ok &= r.all_singletons();
                    }
                }
            }
            emit(&lines, output.as_ref())?;
            Ok(if ok { 0 } else { 1 })
        }
        Command::Bases { family, k, max_n } => {
            let fam = match family.as_str() {
                "discrete" => DigraphFamily::discrete(),
                "xnk" => DigraphFamily::xnk(*k),
                other => return Err(validation(format!("unknown family {other:?}; expected discrete or xnk"))),
            };
            let rows = check_basis_conditions(&fam, *max_n)?;
            let mut ok = true;
            let mut head = header(cli, "bases");
            head["family"] = json!(fam.name());
            if json_out {
                println!("{head}");
            } else {
                println!("# family {} seed {}", fam.name(), cli.seed);
            }
            for row in &rows {
                let m = transition_matrix(&fam, row.n)?;
                let triangular = m.is_dominance_triangular();
                let det = m.determinant();
                let invertible = m.is_invertible();
                ok &= row.condition_holds && row.identity_holds && triangular && invertible;
                if json_out {
                    let mut v = row.to_json();
                    v["matrix"] = m.to_json();
                    v["dominance_triangular"] = json!(triangular);
                    v["determinant"] = json!(det.to_string());
                    println!("{v}");
                } else {
                    println!(
                        "n = {}: h = {}, h_bar = {}, [p_n] = {}, conditions {}, identity {}",
                        row.n,
                        row.h,
                        row.h_bar,
                        row.top_coefficient,
                        if row.condition_holds { "hold" } else { "fail" },
                        if row.identity_holds { "holds" } else { "fails" },
                    );
                    print!("{m}");
                    println!("dominance-triangular: {triangular}, determinant: {det}");
                }
            }
            Ok(if ok { 0 } else { 1 })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if t == 0 {
            eprintln!("error: --threads must be positive");
            return ExitCode::from(2);
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .expect("thread pool is configured once");
    }
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
