//! `mrlai`: evaluate MRLAI curves, classify ageing, compare distributions
//! and reproduce the worked-example corpus.

mod grid;
mod output;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use mrlai_core::classify::{self, MonotonicityVerdict, VerdictKind};
use mrlai_core::corpus::{self, format_sig, Overrides};
use mrlai_core::orders::{self, OrderKind};
use mrlai_core::{mrlai, Convention, Dist, DistSpec};

use grid::GridArg;
use output::{Cell, Format, Table};

#[derive(Parser, Debug)]
#[command(name = "mrlai", version, about = "Mean residual life ageing intensity toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args, Debug)]
struct Common {
    /// Evaluation points: `min:max:step` or `min:max/n[:log]`.
    #[arg(long)]
    grid: GridArg,
    /// Where the running-average integral starts: zero, support or formal.
    #[arg(long, default_value = "zero")]
    conv: Convention,
    #[arg(long, value_enum, default_value = "table")]
    format: Format,
    /// Write to this file instead of stdout.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Tabulate survival, MRL, running average, MRLAI and hazard ageing intensity.
    Eval {
        /// Distribution spec: a JSON file, or inline JSON starting with `{`.
        spec: String,
        #[command(flatten)]
        common: Common,
    },
    /// Monotonicity verdicts for the MRL, its average, the MRLAI and the hazard ageing intensity.
    Classify {
        spec: String,
        #[command(flatten)]
        common: Common,
    },
    /// Check stochastic orders of X against Y.
    Compare {
        x: String,
        y: String,
        /// Comma-separated: mrlai, ratio, lr, icx, vrl, mrl.
        #[arg(long, default_value = "mrlai,ratio,lr,icx,vrl,mrl", value_delimiter = ',')]
        orders: Vec<String>,
        /// Absolute tolerance for the order inequalities.
        #[arg(long, default_value_t = orders::DEFAULT_TOL)]
        tol: f64,
        #[command(flatten)]
        common: Common,
    },
    /// Run the corpus; exits 1 if any check is a MISMATCH.
    Reproduce {
        /// Comma-separated glob patterns over case ids, e.g. `ex3.*`.
        #[arg(long)]
        filter: Option<String>,
        /// Replace every check tolerance.
        #[arg(long)]
        tol: Option<f64>,
        /// Replace every case convention.
        #[arg(long)]
        conv: Option<Convention>,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// List corpus cases.
    List {
        #[arg(long)]
        filter: Option<String>,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// CSV of t against one quantity; several specs give long format with a series column.
    Plotdata {
        #[arg(required = true)]
        specs: Vec<String>,
        /// One of L, mu, mu_avg, survival, hazard_ai.
        #[arg(long, default_value = "L")]
        quantity: String,
        #[arg(long)]
        grid: GridArg,
        #[arg(long, default_value = "zero")]
        conv: Convention,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Failure {
        Failure(e.to_string())
    }
}

fn load_spec(arg: &str) -> Result<Dist, Failure> {
    let text = if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else {
        fs::read_to_string(arg).map_err(|e| Failure(format!("cannot read spec {arg}: {e}")))?
    };
    let spec = DistSpec::from_json(&text).map_err(|e| Failure(format!("{arg}: {e}")))?;
    Dist::build(&spec).map_err(|e| Failure(format!("{arg}: {e}")))
}

fn emit(text: &str, output: &Option<PathBuf>) -> Result<(), Failure> {
    match output {
        Some(p) => fs::write(p, text).map_err(|e| Failure(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn eval(spec: &str, c: &Common) -> Result<(), Failure> {
    let d = load_spec(spec)?;
    let p = mrlai::profile(&d, &c.grid.points(), c.conv)?;
    let mut headers = vec!["t", "survival", "mu", "mu_avg", "L"];
    if p.hazard_ai.is_some() {
        headers.push("hazard_ai");
    }
    let mut t = Table::new(headers);
    for j in 0..p.grid.len() {
        let mut row: Vec<Cell> = vec![
            p.grid[j].into(),
            p.survival[j].into(),
            p.mu[j].into(),
            p.mu_avg[j].into(),
            p.l[j].into(),
        ];
        if let Some(h) = &p.hazard_ai {
            row.push(h[j].into());
        }
        t.push(row);
    }
    emit(&t.render(c.format), &c.output)
}

fn verdict_row(name: &str, v: &MonotonicityVerdict) -> Vec<Cell> {
    let level = match v.kind {
        VerdictKind::Constant { level } => Some(level),
        _ => None,
    };
    let witness = v
        .witness
        .map(|w| w.t.iter().map(|t| format_sig(*t)).collect::<Vec<_>>().join(" "));
    vec![
        name.into(),
        v.kind.label().into(),
        level.into(),
        witness.map_or(Cell::Empty, Cell::Text),
        v.margin.into(),
    ]
}

fn classify_cmd(spec: &str, c: &Common) -> Result<(), Failure> {
    let d = load_spec(spec)?;
    let classes = classify::classify_all(&d, &c.grid.scan_grid()?, c.conv)?;
    let mut t = Table::new(["quantity", "verdict", "level", "witness", "margin"]);
    t.push(verdict_row("mrl", &classes.mrl));
    t.push(verdict_row("mrla", &classes.mrla));
    t.push(verdict_row("mrlai", &classes.mrlai));
    if let Some(h) = &classes.hazard_ai {
        t.push(verdict_row("hazard_ai", h));
    }
    emit(&t.render(c.format), &c.output)
}

fn compare_cmd(x: &str, y: &str, names: &[String], tol: f64, c: &Common) -> Result<(), Failure> {
    let (dx, dy) = (load_spec(x)?, load_spec(y)?);
    let kinds = names
        .iter()
        .map(|n| OrderKind::parse(n.trim()).ok_or_else(|| Failure(format!("unknown order {n:?}"))))
        .collect::<Result<Vec<_>, _>>()?;
    let grid = c.grid.scan_grid()?;
    let mut t = Table::new(["order", "relation", "decided_by", "t", "lhs", "rhs", "note"]);
    for k in kinds {
        let result = if k == OrderKind::Mrlai {
            orders::compare(&dx, &dy, &grid, c.conv, tol)
        } else {
            orders::order(k, &dx, &dy, &grid, c.conv, tol)
        };
        let v = match result {
            Ok(v) => v,
            Err(e) => {
                let mut row = vec![k.name().into(), "undefined".into()];
                row.extend(std::iter::repeat_n(Cell::Empty, 4));
                row.push(e.to_string().into());
                t.push(row);
                continue;
            }
        };
        let by = serde_json::to_value(v.decided_by)?;
        t.push(vec![
            k.name().into(),
            v.relation.label().into(),
            by.as_str().unwrap_or_default().into(),
            v.witness.map(|w| w.t).into(),
            v.witness.map(|w| w.lhs).into(),
            v.witness.map(|w| w.rhs).into(),
            v.note.map_or(Cell::Empty, Cell::Text),
        ]);
    }
    emit(&t.render(c.format), &c.output)
}

fn reproduce_cmd(
    filter: Option<&str>,
    overrides: Overrides,
    format: Format,
    output: &Option<PathBuf>,
) -> Result<bool, Failure> {
    let report = corpus::reproduce(filter, &overrides)?;
    for w in &report.warnings {
        eprintln!("warning: {w}");
    }
    let text = match format {
        Format::Table => corpus::report_table(&report),
        Format::Json => report.to_json() + "\n",
        Format::Csv => {
            let mut t = Table::new([
                "case", "check", "t", "computed", "expected", "printed", "delta", "tol", "status",
            ]);
            for case in &report.cases {
                for c in &case.checks {
                    t.push(vec![
                        case.id.as_str().into(),
                        c.label.as_str().into(),
                        c.t.into(),
                        c.computed.render().into(),
                        c.expected.render().into(),
                        c.printed.as_ref().map_or(Cell::Empty, |p| p.render().into()),
                        c.delta.into(),
                        c.tol.into(),
                        c.status.label().into(),
                    ]);
                }
            }
            t.render(Format::Csv)
        }
    };
    emit(&text, output)?;
    Ok(!report.has_mismatch())
}

fn list_cmd(filter: Option<&str>, format: Format) -> Result<(), Failure> {
    let mut t = Table::new(["id", "source", "convention", "checks", "disputed", "title"]);
    for c in corpus::list_cases(filter)? {
        t.push(vec![
            c.id.into(),
            c.source.into(),
            c.convention.short_name().into(),
            (c.checks as f64).into(),
            if c.disputed { "yes" } else { "" }.into(),
            c.title.into(),
        ]);
    }
    emit(&t.render(format), &None)
}

fn plotdata(
    specs: &[String],
    quantity: &str,
    grid: &GridArg,
    conv: Convention,
    output: &Option<PathBuf>,
) -> Result<(), Failure> {
    let points = grid.points();
    let long = specs.len() > 1;
    let mut t = if long {
        Table::new(["series", "t", quantity])
    } else {
        Table::new(["t", quantity])
    };
    for (i, s) in specs.iter().enumerate() {
        let d = load_spec(s)?;
        let p = mrlai::profile(&d, &points, conv)?;
        let values: Vec<f64> = match quantity {
            "L" => p.l,
            "mu" => p.mu,
            "mu_avg" => p.mu_avg,
            "survival" => p.survival,
            "hazard_ai" => p
                .hazard_ai
                .ok_or_else(|| Failure("hazard_ai needs a density and support starting at 0".into()))?,
            other => return Err(Failure(format!("unknown quantity {other:?}"))),
        };
        let series = if s.trim_start().starts_with('{') {
            format!("{}{}", d.family_name(), i + 1)
        } else {
            s.clone()
        };
        for (t_j, v) in points.iter().zip(values) {
            let mut row: Vec<Cell> = vec![(*t_j).into(), v.into()];
            if long {
                row.insert(0, series.as_str().into());
            }
            t.push(row);
        }
    }
    emit(&t.render(Format::Csv), output)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Eval { spec, common } => eval(spec, common).map(|_| true),
        Command::Classify { spec, common } => classify_cmd(spec, common).map(|_| true),
        Command::Compare {
            x,
            y,
            orders,
            tol,
            common,
        } => compare_cmd(x, y, orders, *tol, common).map(|_| true),
        Command::Reproduce {
            filter,
            tol,
            conv,
            format,
            output,
        } => reproduce_cmd(
            filter.as_deref(),
            Overrides {
                tol: *tol,
                convention: *conv,
            },
            *format,
            output,
        ),
        Command::List { filter, format } => list_cmd(filter.as_deref(), *format).map(|_| true),
        Command::Plotdata {
            specs,
            quantity,
            grid,
            conv,
            output,
        } => plotdata(specs, quantity, grid, *conv, output).map(|_| true),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
