mod identities;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use enright::completion::{complete_lattice, complete_verma_lattice, in_completion, rescaled_completion_lattice, verify_lattice_completion, DeodharSymbol};
use enright::crystal::{default_window, to_dot, CrystalBasis};
use enright::decomp::{decompose, verify_decomposition, DecomposeOptions, TwistedPresentation};
use enright::rep::{ComponentShape, Element, ModuleShape, Slot, Tag};
use identities::Identity;
use serde_json::json;

#[derive(Parser)]
#[command(name = "enright", version, about = "Crystal lattices, completions and decompositions of U_q(sl2)-modules")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Depth of the explicit region (number of steps along each infinite string).
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    window: Option<u64>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write the output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Check the q-number identities and the Kashiwara relation.
    Identities {
        #[arg(long, default_value_t = 12)]
        max_n: u64,
        /// Invert the expected outcome of one identity (self-test of the harness).
        #[arg(long, value_enum)]
        negate: Option<Identity>,
    },
    /// Complete the standard crystal basis of a module.
    Complete {
        #[arg(long)]
        shape: String,
    },
    /// Crystal graph of the standard basis in DOT.
    Graph {
        #[arg(long)]
        shape: String,
    },
    /// Is `f^(-k) m0` of `M(-n-2)` in the completion?
    Deodhar {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        k: u64,
    },
    /// Compare the two constructions of the completed lattice of `M(-n-2)`.
    SnCompare {
        #[arg(long)]
        n: u64,
    },
    /// Decompose a module given by a shape or by a twisted presentation in JSON.
    Decompose {
        #[arg(long)]
        shape: Option<String>,
        #[arg(long)]
        twist: Option<PathBuf>,
        /// Scan candidates from the last coordinate.
        #[arg(long)]
        reverse: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
    Text,
}

enum CliError {
    Usage(String),
    Failed(String),
}

impl<E: std::fmt::Display> From<E> for CliError {
    fn from(e: E) -> Self {
        CliError::Failed(e.to_string())
    }
}

struct Outcome {
    text: String,
    json: serde_json::Value,
    dot: Option<String>,
    pass: bool,
}

fn parse_shape(s: &str) -> Result<ModuleShape, CliError> {
    s.parse().map_err(|e| CliError::Usage(format!("bad shape {s:?}: {e}")))
}

fn shape_window(shape: &ModuleShape) -> u64 {
    let n = shape
        .components
        .iter()
        .map(|c| match c {
            ComponentShape::Verma(r) => r.unsigned_abs(),
            ComponentShape::T(n) | ComponentShape::FinDim(n) => *n,
        })
        .max()
        .unwrap_or(0);
    default_window(n)
}

fn identities(max_n: u64, negate: Option<Identity>) -> Result<Outcome, CliError> {
    if max_n > 50 {
        return Err(CliError::Usage(format!("--max-n must be at most 50, got {max_n}")));
    }
    let results = identities::run(max_n, negate);
    let mut text = String::new();
    for r in &results {
        let name = serde_json::to_value(r.identity).unwrap();
        let status = if r.pass() { "PASS" } else { "FAIL" };
        text.push_str(&format!("{status} {} ({} cases)\n", name.as_str().unwrap(), r.cases));
        for f in r.failures.iter().take(5) {
            text.push_str(&format!("  failed: {f}\n"));
        }
    }
    let pass = results.iter().all(|r| r.pass());
    Ok(Outcome { text, json: json!({ "max_n": max_n, "results": results, "pass": pass }), dot: None, pass })
}

fn element_rows(rows: &[(i64, Element)]) -> Vec<serde_json::Value> {
    rows.iter().map(|(w, e)| json!({ "weight": w, "element": e })).collect()
}

fn complete(shape: &str, window: Option<u64>) -> Result<Outcome, CliError> {
    let shape = parse_shape(shape)?;
    if shape.has_findim() {
        return Err(CliError::Usage("completion needs a module without finite-dimensional summands".into()));
    }
    let window = window.unwrap_or_else(|| shape_window(&shape));
    let cb = CrystalBasis::standard(&shape, window);
    let done = complete_lattice(&cb)?;
    let report = verify_lattice_completion(&cb, &done.basis, &done.completion)?;
    let target = &done.completion.target;
    let unchanged = *target == shape;
    let rows = done.basis.lattice.generator_rows();
    let mut text = format!("M = {shape}\nC(M) = {target}{}\n", if unchanged { " (complete)" } else { "" });
    for (name, c) in [
        ("(i)", &report.cond_i),
        ("(ii)", &report.cond_ii),
        ("(iii)", &report.cond_iii),
        ("basis", &report.basis_cond),
        ("kernel", &report.kernel_match),
        ("top generator", &report.top_generator),
    ] {
        let detail = c.detail.as_ref().map(|d| format!(": {d}")).unwrap_or_default();
        text.push_str(&format!("{} {name}{detail}\n", if c.pass { "PASS" } else { "FAIL" }));
    }
    text.push_str("tails:\n");
    for (t, (c, tag)) in done.basis.lattice.tails().iter().zip(target.strings()) {
        text.push_str(&format!("  {c}/{tag}: {}\n", serde_json::to_string(t).unwrap()));
    }
    text.push_str("generators:\n");
    for (w, e) in &rows {
        text.push_str(&format!("  {w}: {e}\n"));
    }
    let json = json!({
        "source": shape.to_string(),
        "completion": target.to_string(),
        "complete": unchanged,
        "report": report,
        "tails": done.basis.lattice.tails(),
        "generators": element_rows(&rows),
    });
    Ok(Outcome { text, json, dot: None, pass: report.pass })
}

fn graph(shape: &str, window: Option<u64>) -> Result<Outcome, CliError> {
    let shape = parse_shape(shape)?;
    let window = window.unwrap_or_else(|| shape_window(&shape));
    let cb = CrystalBasis::standard(&shape, window);
    let dot = to_dot(&cb)?;
    let nodes: Vec<String> = cb.reps.iter().map(ToString::to_string).collect();
    Ok(Outcome { text: dot.clone(), json: json!({ "shape": shape.to_string(), "nodes": nodes, "dot": dot }), dot: Some(dot), pass: true })
}

fn deodhar(n: u64, k: u64) -> Result<Outcome, CliError> {
    if k == 0 {
        return Err(CliError::Usage("--k must be positive".into()));
    }
    let shape = ModuleShape::verma(-(n as i64) - 2);
    let sym = DeodharSymbol::new(k, Element::basis(Slot::new(0, Tag::M, 0)));
    let inside = in_completion(&sym, &shape)?;
    let verdict = if inside { "in C(M)" } else { "not in C(M)" };
    Ok(Outcome {
        text: format!("f^(-{k}) m0 of {shape}: {verdict}\n"),
        json: json!({ "n": n, "k": k, "in_completion": inside }),
        dot: None,
        pass: true,
    })
}

fn sn_compare(n: u64, window: Option<u64>) -> Result<Outcome, CliError> {
    let window = window.unwrap_or(25);
    let a = rescaled_completion_lattice(n, window);
    let b = complete_verma_lattice(n, window);
    let equal = a.equals(&b)? && a.tails() == b.tails();
    Ok(Outcome {
        text: format!("n = {n}, window = {window}: {}\n", if equal { "equal" } else { "different" }),
        json: json!({ "n": n, "window": window, "equal": equal, "tails": a.tails() }),
        dot: None,
        pass: equal,
    })
}

fn decomposition(shape: Option<&str>, twist: Option<&PathBuf>, reverse: bool, window: Option<u64>) -> Result<Outcome, CliError> {
    let p = match (shape, twist) {
        (_, Some(path)) => {
            let text = std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
            let p: TwistedPresentation =
                serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
            if let Some(s) = shape {
                if parse_shape(s)? != p.base {
                    return Err(CliError::Usage(format!("--shape {s} differs from the presentation base {}", p.base)));
                }
            }
            p
        }
        (Some(s), None) => TwistedPresentation::identity(parse_shape(s)?),
        (None, None) => return Err(CliError::Usage("decompose needs --shape or --twist".into())),
    };
    let d = decompose(&p, DecomposeOptions { reverse })?;
    let report = verify_decomposition(&p, &d, window.unwrap_or(4))?;
    let mut text = format!("standard form: {}\n", d.standard);
    for entry in d.certificate() {
        text.push_str(&format!("{}({})\n", entry.kind, entry.parameter));
        for (name, g) in &entry.generators {
            text.push_str(&format!("  {name} = {g}\n"));
        }
    }
    text.push_str(&format!("{} generator conditions and direct sum\n", if report.pass { "PASS" } else { "FAIL" }));
    let json = json!({ "standard": d.standard.to_string(), "summands": d.certificate(), "report": report });
    Ok(Outcome { text, json, dot: None, pass: report.pass })
}

fn run(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Identities { max_n, negate } => identities(*max_n, *negate),
        Command::Complete { shape } => complete(shape, cli.window),
        Command::Graph { shape } => graph(shape, cli.window),
        Command::Deodhar { n, k } => deodhar(*n, *k),
        Command::SnCompare { n } => sn_compare(*n, cli.window),
        Command::Decompose { shape, twist, reverse } => decomposition(shape.as_deref(), twist.as_ref(), *reverse, cli.window),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match run(&cli) {
        Ok(o) => o,
        Err(CliError::Usage(m)) => {
            eprintln!("error: {m}");
            return ExitCode::from(2);
        }
        Err(CliError::Failed(m)) => {
            eprintln!("error: {m}");
            return ExitCode::from(1);
        }
    };
    let is_graph = matches!(cli.command, Command::Graph { .. });
    let body = match cli.format.unwrap_or(if is_graph { Format::Dot } else { Format::Text }) {
        Format::Json => serde_json::to_string_pretty(&outcome.json).unwrap() + "\n",
        Format::Text => outcome.text,
        Format::Dot => match outcome.dot {
            Some(d) => d,
            None => {
                eprintln!("error: --format dot is only available for graph");
                return ExitCode::from(2);
            }
        },
    };
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, body) {
                eprintln!("error: {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{body}"),
    }
    if outcome.pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
