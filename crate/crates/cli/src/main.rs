use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use betaexp::branching::{branching_tree, classify_sigma, default_depth, is_null_infinite, tree_ascii, tree_json};
use betaexp::certify::{
    assemble_with, main_window, sigma_with_classification, verify_conjugate_exclusion, verify_search, AssembleOptions,
    Status, TheoremVerdict,
};
use betaexp::constants::NamedConstant;
use betaexp::exactnum::{isolate_real_roots, parse_interval, IntPolynomial};
use betaexp::search::{b_aleph0_in, emit_tables, row_csv, row_json, CSV_HEADER};
use betaexp::symbolic::Window;
use betaexp::Error;

mod inputs;
mod render;

#[derive(Parser)]
#[command(name = "betaexp", version, about = "Exact computations on expansions of 1 in non-integer bases")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum Theorem {
    #[value(name = "1.1")]
    Conclusion,
    #[value(name = "1.2")]
    Search,
    #[value(name = "4.1")]
    Structure,
    #[value(name = "4.2")]
    Exclusion,
    All,
}

#[derive(Subcommand)]
enum Command {
    /// Isolate the real roots of a polynomial given by ascending coefficients.
    Roots {
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        /// Closed window lo,hi.
        #[arg(long, allow_hyphen_values = true)]
        window: Option<String>,
        #[arg(long, default_value_t = 5)]
        digits: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Classify the number of expansions of x in base q.
    Classify {
        #[arg(long)]
        q: String,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long)]
        depth: Option<usize>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Recompute the printed tables of orbit equations.
    Tables {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
        which: u8,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Bases in a window at which some point has countably many expansions.
    Search {
        #[arg(long)]
        window: String,
        #[arg(long)]
        depth: Option<usize>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Run the certification checks.
    Certify {
        #[arg(long, value_enum, default_value = "all")]
        theorem: Theorem,
        /// Number of structure levels checked at q3.
        #[arg(long, default_value_t = 50)]
        k: usize,
        /// Replace the defining polynomial of q3 (ascending coefficients).
        #[arg(long, allow_hyphen_values = true, hide = true)]
        q3_poly: Option<String>,
        #[arg(long)]
        depth: Option<usize>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Unfold the branching points of x as a tree.
    Tree {
        #[arg(long)]
        q: String,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long)]
        depth: Option<usize>,
        /// Levels of the tree to print.
        #[arg(long, default_value_t = 8)]
        levels: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

enum Failure {
    Lib(Error),
    Usage(String),
    Verification,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type Run = std::result::Result<String, Failure>;

fn to_json(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("values serialise")
}

fn no_csv(cmd: &str) -> Failure {
    Failure::Usage(format!("{cmd} has no csv output"))
}

fn roots(poly: &str, window: Option<&str>, digits: usize, format: Format) -> Run {
    let p = IntPolynomial::parse(poly)?;
    let w = window.map(parse_interval).transpose()?;
    let found = isolate_real_roots(&p, w.as_ref().map(|(a, b)| (a, b)))?;
    let decimals: Vec<String> = found.iter().map(|r| r.refine_to_digits(digits)).collect();
    match format {
        Format::Text => Ok(decimals.join("\n")),
        Format::Json => Ok(to_json(&json!({
            "polynomial": p.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            "digits": digits,
            "roots": found.iter().zip(&decimals).map(|(r, d)| {
                let (lo, hi) = r.interval();
                json!({"decimal": d, "interval": [lo.to_string(), hi.to_string()]})
            }).collect::<Vec<_>>(),
        }))),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["root"])
                .and_then(|_| decimals.iter().try_for_each(|d| w.write_record([d])))
                .map_err(|e| Failure::Usage(e.to_string()))?;
            csv_string(w)
        }
    }
}

fn csv_string(w: csv::Writer<Vec<u8>>) -> Run {
    let bytes = w.into_inner().map_err(|e| Failure::Usage(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8").trim_end().to_string())
}

fn base_label(base: &betaexp::expansions::Base, named: Option<NamedConstant>) -> String {
    match named {
        Some(c) => format!("{} ({c})", base.decimal(5)),
        None => base.decimal(5),
    }
}

fn classify(q: &str, x: &str, depth: usize, format: Format) -> Run {
    let (base, named) = inputs::parse_base(q)?;
    base.check_unique_range()?;
    let point = inputs::parse_point(x, &base)?;
    let v = classify_sigma(&point, &base, depth)?;
    let n = is_null_infinite(&point, &base, depth)?;
    let label = base_label(&base, named);
    match format {
        Format::Text => Ok(render::classify_text(&base, &label, &point, &v, &n)),
        Format::Json => Ok(to_json(&render::classify_json(&base, &label, &point, &v, &n))),
        Format::Csv => Err(no_csv("classify")),
    }
}

fn tables(which: u8, format: Format) -> Run {
    let rows = emit_tables(which)?;
    match format {
        Format::Text => {
            let mut out = Vec::new();
            for r in &rows {
                let printed = match (&r.printed_decimal, &r.printed_polynomial) {
                    (Some(d), Some(p)) => format!("  printed {d} {p}"),
                    _ => String::new(),
                };
                let agreement = r.agreement.map(|a| a.name()).unwrap_or("-");
                out.push(format!(
                    "{} {}  [{}]  {}{}",
                    r.root_decimal_5dp, r.equation.cleared, agreement, r.equation, printed
                ));
            }
            Ok(out.join("\n"))
        }
        Format::Json => Ok(to_json(&Value::Array(rows.iter().map(|r| row_json(r, None)).collect()))),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let mut write = || -> csv::Result<()> {
                w.write_record(CSV_HEADER)?;
                for r in &rows {
                    w.write_record(row_csv(r))?;
                }
                Ok(())
            };
            write().map_err(|e| Failure::Usage(e.to_string()))?;
            csv_string(w)
        }
    }
}

fn search(window: &str, depth: usize, format: Format) -> Run {
    let (lo, hi) = parse_interval(window)?;
    let report = b_aleph0_in(&Window::rational(&lo, &hi), depth)?;
    let text = match format {
        Format::Text => render::search_text(&report),
        Format::Json => to_json(&render::search_json(&report)),
        Format::Csv => return Err(no_csv("search")),
    };
    if report.hits.iter().any(|h| !h.check.valid) {
        println!("{text}");
        return Err(Failure::Verification);
    }
    Ok(text)
}

fn certify(theorem: Theorem, k: usize, q3_poly: Option<&str>, depth: usize, format: Format) -> Run {
    let q3_polynomial = match q3_poly {
        Some(s) => IntPolynomial::parse(s)?,
        None => NamedConstant::Q3.polynomial(),
    };
    let opts = AssembleOptions { q3_polynomial, sigma_k: k, depth };
    let verdicts: Vec<TheoremVerdict> = match theorem {
        Theorem::All | Theorem::Conclusion => {
            let all = assemble_with(&opts);
            if matches!(theorem, Theorem::All) {
                all
            } else {
                all.into_iter().filter(|v| v.id == "1.1").collect()
            }
        }
        Theorem::Search => vec![verify_search(&main_window(), depth)],
        Theorem::Structure => {
            let base = betaexp::expansions::Base::from_polynomial(
                &opts.q3_polynomial,
                &betaexp::exactnum::int(1),
                &betaexp::exactnum::int(2),
            )?;
            vec![sigma_with_classification(&base, k, depth)]
        }
        Theorem::Exclusion => vec![verify_conjugate_exclusion()],
    };
    let text = match format {
        Format::Text => verdicts.iter().map(render::verdict_text).collect::<Vec<_>>().join("\n"),
        Format::Json => to_json(&Value::Array(verdicts.iter().map(TheoremVerdict::to_json).collect())),
        Format::Csv => return Err(no_csv("certify")),
    };
    if verdicts.iter().any(|v| v.status == Status::Failed) {
        println!("{text}");
        return Err(Failure::Verification);
    }
    Ok(text)
}

fn tree(q: &str, x: &str, depth: usize, levels: usize, format: Format) -> Run {
    let (base, _) = inputs::parse_base(q)?;
    base.check_unique_range()?;
    let point = inputs::parse_point(x, &base)?;
    let v = branching_tree(&point, &base, depth)?;
    match format {
        Format::Text => Ok(tree_ascii(&v, &base, levels)?.trim_end().to_string()),
        Format::Json => Ok(to_json(&tree_json(&v, &base, levels)?)),
        Format::Csv => Err(no_csv("tree")),
    }
}

fn run(cli: Cli) -> Run {
    let depth = |d: Option<usize>| d.unwrap_or_else(default_depth);
    match cli.command {
        Command::Roots { poly, window, digits, format } => roots(&poly, window.as_deref(), digits, format),
        Command::Classify { q, x, depth: d, format } => classify(&q, &x, depth(d), format),
        Command::Tables { which, format } => tables(which, format),
        Command::Search { window, depth: d, format } => search(&window, depth(d), format),
        Command::Certify { theorem, k, q3_poly, depth: d, format } => {
            certify(theorem, k, q3_poly.as_deref(), depth(d), format)
        }
        Command::Tree { q, x, depth: d, levels, format } => tree(&q, &x, depth(d), levels, format),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            let _ = writeln!(stdout, "{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_parse() { 2 } else { 3 })
        }
        Err(Failure::Verification) => {
            eprintln!("error: verification failed");
            ExitCode::from(4)
        }
    }
}
