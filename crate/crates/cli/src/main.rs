//! `upsilon`: exact Upsilon invariants of L-space knots from the command line.

#![allow(clippy::result_large_err)]

mod svg;
mod sweep;

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use upsilon_core::knots::{parse_knot, KnotExpr, ParseError};
use upsilon_core::rational::Rational;
use upsilon_core::semigroup::SemigroupError;
use upsilon_core::upsilon::{
    integral_iterated_cable, integral_upsilon, tau, upsilon, verify_identity, Identity, Method, UpsilonError,
    VerificationReport, NORMALIZATION_NOTE,
};

const EXIT_INTERNAL: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_DOMAIN: u8 = 3;
const EXIT_VERIFY: u8 = 4;

#[derive(Parser)]
#[command(name = "upsilon", version, about = "Exact Upsilon invariants of L-space knots and their cables")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print Upsilon of a knot expression.
    Upsilon {
        expr: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Evaluate at a single rational point in [0, 2].
        #[arg(long, value_name = "T")]
        eval: Option<String>,
        #[arg(long, value_enum, default_value_t = MethodArg::Both)]
        method: MethodArg,
        /// Write the output to a file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Additional knots drawn on the same SVG plot.
        #[arg(long)]
        overlay: Vec<String>,
        /// Skip the formula/oracle comparison under `--method both`.
        #[arg(long, env = "UPSILON_NO_CROSSCHECK", value_parser = clap::builder::BoolishValueParser::new(), default_value_t = false, hide = true)]
        no_crosscheck: bool,
    },
    /// Print the exact integral of Upsilon over [0, 2].
    Integral {
        expr: String,
        /// Use the level-by-level sum for iterated cables with q >= 2gp.
        #[arg(long)]
        iterated: bool,
    },
    /// Print τ.
    Tau { expr: String },
    /// Print the formal semigroup.
    Semigroup {
        expr: String,
        #[arg(long, value_enum, default_value_t = SemigroupFormat::Text)]
        format: SemigroupFormat,
    },
    /// Check an identity over a sweep of parameters, one JSON line per tuple.
    Verify {
        /// thm-main, thm-s, thm-cor, sandwich, lemma18, prop8, thm9, fk, wang or symmetry.
        tag: String,
        /// torus, pretzel, unknot, all, or a knot expression.
        #[arg(long, default_value = "all")]
        core: String,
        #[arg(long, default_value_t = 4)]
        pmax: u64,
        #[arg(long, default_value_t = 40)]
        qmax: u64,
        /// Bound on the parameters of the torus and pretzel core families.
        #[arg(long, default_value_t = 5)]
        cmax: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
    Svg,
}

#[derive(Clone, Copy, ValueEnum)]
enum SemigroupFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Formula,
    Oracle,
    Both,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure { code, message: message.into() }
    }
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure::new(EXIT_PARSE, format!("parse error: {e}"))
    }
}

impl From<UpsilonError> for Failure {
    fn from(e: UpsilonError) -> Self {
        let code = match &e {
            UpsilonError::Inconsistent(_) | UpsilonError::Pl(_) => EXIT_INTERNAL,
            UpsilonError::Semigroup(SemigroupError::Invalid(_)) => EXIT_INTERNAL,
            _ => EXIT_DOMAIN,
        };
        Failure::new(code, e.to_string())
    }
}

impl From<SemigroupError> for Failure {
    fn from(e: SemigroupError) -> Self {
        UpsilonError::from(e).into()
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::new(EXIT_INTERNAL, format!("i/o error: {e}"))
    }
}

type CliResult<T> = Result<T, Failure>;

fn emit(out: Option<&PathBuf>, text: &str) -> CliResult<()> {
    match out {
        Some(path) => fs::write(path, text)?,
        None => io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn with_newline(mut s: String) -> String {
    if !s.ends_with('\n') {
        s.push('\n');
    }
    s
}

#[allow(clippy::too_many_arguments)]
fn run_upsilon(
    expr: &str,
    format: Format,
    eval: Option<&str>,
    method: MethodArg,
    out: Option<&PathBuf>,
    overlay: &[String],
    no_crosscheck: bool,
) -> CliResult<()> {
    let k = parse_knot(expr)?;
    let method = match method {
        MethodArg::Formula => Method::Formula,
        MethodArg::Oracle => Method::Oracle,
        MethodArg::Both if no_crosscheck => Method::Oracle,
        MethodArg::Both => Method::Both,
    };
    if !overlay.is_empty() && !matches!(format, Format::Svg) {
        return Err(Failure::new(EXIT_PARSE, "--overlay needs --format svg"));
    }
    let f = upsilon(&k, method)?;
    if let Some(t) = eval {
        let t: Rational =
            t.trim().parse().map_err(|e| Failure::new(EXIT_PARSE, format!("bad --eval value `{t}`: {e}")))?;
        let v = f.eval(&t).map_err(|e| Failure::new(EXIT_PARSE, format!("bad --eval value: {e}")))?;
        return emit(out, &format!("{v}\n"));
    }
    let text = match format {
        Format::Text => f.to_text(),
        Format::Json => f.to_json(),
        Format::Csv => f.to_csv(),
        Format::Svg => {
            let others = overlay
                .iter()
                .map(|e| {
                    let k = parse_knot(e)?;
                    let g = upsilon(&k, method)?;
                    Ok((k.to_string(), g))
                })
                .collect::<CliResult<Vec<_>>>()?;
            let mut series = vec![svg::Series { label: k.to_string(), function: &f }];
            series.extend(others.iter().map(|(label, g)| svg::Series { label: label.clone(), function: g }));
            svg::render(&series)
        }
    };
    emit(out, &with_newline(text))
}

fn run_semigroup(expr: &str, format: SemigroupFormat) -> CliResult<()> {
    let k = parse_knot(expr)?;
    let verdict = k.is_lspace();
    if !verdict.is_lspace {
        return Err(UpsilonError::NotLSpace { reason: verdict.reason }.into());
    }
    let s = k.semigroup()?;
    let text = match format {
        SemigroupFormat::Text => s.to_string(),
        SemigroupFormat::Json => serde_json::json!({
            "knot": k.to_string(),
            "genus": s.genus(),
            "small_elements": s.small_elements().collect::<Vec<_>>(),
            "gaps": s.gaps().collect::<Vec<_>>(),
        })
        .to_string(),
    };
    emit(None, &with_newline(text))
}

fn cores_for(selector: &str, cmax: u64) -> CliResult<Vec<KnotExpr>> {
    Ok(match selector {
        "torus" => sweep::torus_cores(cmax),
        "pretzel" => sweep::pretzel_cores(cmax),
        "unknot" => vec![KnotExpr::Unknot],
        "all" => sweep::all_cores(cmax),
        expr => vec![parse_knot(expr)?],
    })
}

fn run_verify(tag: &str, core: &str, bounds: sweep::Bounds) -> CliResult<()> {
    let id: Identity = tag.parse().map_err(|e: String| Failure::new(EXIT_PARSE, e))?;
    let cores = cores_for(core, bounds.cmax)?;
    if id == Identity::TorusIntegral {
        eprintln!("{NORMALIZATION_NOTE}");
    }
    let tuples = sweep::tuples(id, &cores, bounds);
    let results: Vec<Result<VerificationReport, UpsilonError>> =
        tuples.par_iter().map(|params| verify_identity(id, params)).collect();

    let stdout = io::stdout();
    let mut lock = stdout.lock();
    let (mut passed, mut failed) = (0usize, 0usize);
    let mut first_error = None;
    for (params, result) in tuples.iter().zip(results) {
        match result {
            Ok(report) => {
                if report.passed() {
                    passed += 1;
                } else {
                    failed += 1;
                }
                writeln!(lock, "{}", report.to_json_line())?;
            }
            Err(e) => {
                eprintln!("{id} {params}: {e}");
                first_error.get_or_insert(e);
            }
        }
    }
    eprintln!("{id}: {} tuples, {passed} passed, {failed} failed", tuples.len());
    if let Some(e) = first_error {
        return Err(e.into());
    }
    if failed > 0 {
        return Err(Failure::new(EXIT_VERIFY, format!("{failed} of {} checks failed", tuples.len())));
    }
    Ok(())
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Upsilon { expr, format, eval, method, out, overlay, no_crosscheck } => {
            run_upsilon(&expr, format, eval.as_deref(), method, out.as_ref(), &overlay, no_crosscheck)
        }
        Command::Integral { expr, iterated } => {
            let k = parse_knot(&expr)?;
            let v = if iterated { integral_iterated_cable(&k)? } else { integral_upsilon(&k)? };
            emit(None, &format!("{v}\n"))
        }
        Command::Tau { expr } => {
            let k = parse_knot(&expr)?;
            emit(None, &format!("{}\n", tau(&k)?))
        }
        Command::Semigroup { expr, format } => run_semigroup(&expr, format),
        Command::Verify { tag, core, pmax, qmax, cmax } => run_verify(&tag, &core, sweep::Bounds { pmax, qmax, cmax }),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_PARSE) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
