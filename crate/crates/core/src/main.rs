use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use divsum::parser::{parse, parse_expr, ModeChoice, ParseError};
use divsum::report::{run, RunError};

#[derive(Parser)]
#[command(name = "divsum", version, about = "Sums of convergent and divergent series, computed exactly")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Arithmetic mode; without it, exact is tried first and float used as a fallback.
    #[arg(long, global = true, value_enum, env = "DIVSUM_MODE")]
    mode: Option<ModeArg>,

    /// Float-mode comparison tolerance.
    #[arg(long, global = true)]
    tolerance: Option<f64>,

    /// Print the JSON report.
    #[arg(long, global = true)]
    json: bool,

    /// Include the primitive F used for the sum.
    #[arg(long, global = true)]
    show_primitive: bool,

    /// Primitive F(n) for a term outside the exponential-polynomial class.
    #[arg(long, global = true, value_name = "EXPR", allow_hyphen_values = true)]
    primitive: Option<String>,

    /// Cross-check against a numeric oracle.
    #[arg(long, global = true)]
    verify: bool,

    /// Value bound to `theta` in the term, e.g. "pi/3" or "1.0".
    #[arg(long, global = true, value_name = "EXPR", allow_hyphen_values = true)]
    theta: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Exact,
    Float,
}

#[derive(Subcommand)]
enum Command {
    /// Σ term over a range, e.g. `divsum sum "(-1)^(u-1)*u, u=1..inf"`.
    Sum {
        #[arg(allow_hyphen_values = true)]
        query: String,
    },
    /// Assigned limit of a sequence, e.g. `divsum limit "n^2"`.
    Limit {
        #[arg(allow_hyphen_values = true)]
        query: String,
    },
    /// ζ(s) for integers s ≤ 0.
    Zeta {
        #[arg(allow_hyphen_values = true)]
        s: String,
    },
    /// η(s) for integers s ≤ 0.
    Eta {
        #[arg(allow_hyphen_values = true)]
        s: String,
    },
    /// a! extended to negative integers.
    Factorial {
        #[arg(allow_hyphen_values = true)]
        a: String,
    },
    /// A sum checked against the numeric oracles; fails if they disagree.
    Verify {
        #[arg(allow_hyphen_values = true)]
        query: String,
    },
}

fn execute(cli: &Cli) -> Result<String, RunError> {
    let input = match &cli.command {
        Command::Sum { query } => format!("sum {query}"),
        Command::Limit { query } => format!("limit {query}"),
        Command::Verify { query } => format!("verify {query}"),
        Command::Zeta { s } => format!("zeta {s}"),
        Command::Eta { s } => format!("eta {s}"),
        Command::Factorial { a } => format!("factorial {a}"),
    };
    let mut query = parse(&input)?;
    let opts = &mut query.options;
    opts.mode = match cli.mode {
        None => ModeChoice::Auto,
        Some(ModeArg::Exact) => ModeChoice::Exact,
        Some(ModeArg::Float) => ModeChoice::Float,
    };
    opts.tolerance = cli.tolerance;
    opts.show_primitive = cli.show_primitive;
    opts.verify = cli.verify;
    if let Some(p) = &cli.primitive {
        opts.primitive = Some(parse_expr(p)?);
    }
    if let Some(t) = &cli.theta {
        opts.theta = Some(parse_expr(t)?);
    }
    let report = run(&query)?;
    Ok(if cli.json { report.to_json() } else { report.to_text() })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(out) => {
            // a closed pipe (`divsum … | head`) is not an error worth reporting
            let _ = writeln!(std::io::stdout().lock(), "{}", out.trim_end());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            if let RunError::Parse(ParseError::Syntax { position, .. }) = &e {
                eprintln!("  (position {position} of the assembled query)");
            }
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
