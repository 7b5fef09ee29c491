//! Command-line front end.
//!
//! Exit status: 0 on success, 1 on bad input (or a failed self-test),
//! 2 on numerical failure. Errors are printed as a single line
//! `error[<kind>]: <message>`.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::fourier::contrast_report;
use crate::instfreq::{check_fit_params, phi_fitted, phi_vs_ville_note, SampledSignal, SymbolicPhi};
use crate::pipeline::{analyze, class_name, Route};
use crate::selftest;
use crate::sigexpr::parse;

/// Significant digits in every rendered number.
pub const DIGITS: usize = 12;

#[derive(Debug, Parser)]
#[command(name = "algspec", version, about = "Algebraic spectra of signal expressions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Frequencies of a signal expression.
    Spectrum {
        expr: String,
        #[arg(long)]
        json: bool,
        /// Show the image or defining equation and the singular points.
        #[arg(long)]
        explain: bool,
    },
    /// Operational image in C(s), or the defining equation.
    Opform {
        expr: String,
        #[arg(long)]
        json: bool,
    },
    /// Curvature-based instantaneous frequency.
    Instfreq(InstfreqArgs),
    /// Algebraic spectrum next to the Fourier description.
    Contrast {
        expr: String,
        #[arg(long, conflicts_with = "dump")]
        json: bool,
        /// Two numeric columns of the Fourier side, for plotting.
        #[arg(long)]
        dump: bool,
    },
    /// Run the built-in oracle suite.
    Selftest,
}

#[derive(Debug, Args)]
#[command(group = clap::ArgGroup::new("source").required(true).args(["csv", "expr"]))]
pub struct InstfreqArgs {
    /// Samples with header `t,x`; Φ from sliding polynomial fits.
    #[arg(long)]
    pub csv: Option<PathBuf>,
    /// Expression; Φ from exact derivatives on a uniform grid.
    #[arg(long)]
    pub expr: Option<String>,
    #[arg(long, default_value_t = 11)]
    pub window: usize,
    #[arg(long, default_value_t = 3)]
    pub degree: usize,
    /// Grid start for --expr, seconds.
    #[arg(long, default_value_t = 0.0)]
    pub from: f64,
    /// Grid end for --expr, seconds.
    #[arg(long, default_value_t = 3.0)]
    pub to: f64,
    /// Grid rate for --expr, Hz.
    #[arg(long, default_value_t = 20.0)]
    pub rate: f64,
    /// With --expr of the form A*sin(w*t): tabulate against the analytic-signal frequency.
    #[arg(long, requires = "expr")]
    pub ville: bool,
    #[arg(long)]
    pub json: bool,
}

fn render(out: &mut dyn Write, json: bool, value: Value, text: impl FnOnce() -> String) -> Result<()> {
    let s = if json { format!("{value}\n") } else { text() };
    out.write_all(s.as_bytes()).map_err(|e| Error::Io(e.to_string()))
}

/// Executes one command. `Ok(false)` means the self-test found a mismatch.
pub fn execute(cmd: &Command, out: &mut dyn Write) -> Result<bool> {
    match cmd {
        Command::Spectrum { expr, json, explain } => {
            let a = analyze(&parse(expr)?)?;
            let mut value = a.spectrum.to_json(DIGITS);
            if *explain {
                value["explanation"] = Value::from(a.explain());
            }
            render(out, *json, value, || if *explain { a.explain() } else { format!("{}\n", a.spectrum) })?;
        }
        Command::Opform { expr, json } => {
            let a = analyze(&parse(expr)?)?;
            let (value, text) = match &a.route {
                Route::Rational(r) => (
                    json!({
                        "class": class_name(a.class),
                        "numerator": r.num().to_string(),
                        "denominator": r.den().to_string(),
                    }),
                    format!("{} / {}\n", r.num(), r.den()),
                ),
                Route::Ode { system, .. } => (
                    json!({
                        "class": class_name(a.class),
                        "operator": system.op().to_string(),
                        "rhs": system.rhs().to_string(),
                    }),
                    format!("{system}\n"),
                ),
            };
            render(out, *json, value, || text)?;
        }
        Command::Instfreq(args) => instfreq(args, out)?,
        Command::Contrast { expr, json, dump } => {
            let report = contrast_report(&parse(expr)?)?;
            let text = if *dump { report.dump() } else { report.to_string() };
            render(out, *json, report.to_json(DIGITS), || text)?;
        }
        Command::Selftest => {
            let checks = selftest::run();
            let mut text = String::new();
            for c in &checks {
                text.push_str(&format!("{c}\n"));
            }
            let failed = checks.iter().filter(|c| !c.passed()).count();
            text.push_str(&format!("{} checks, {} failed\n", checks.len(), failed));
            out.write_all(text.as_bytes()).map_err(|e| Error::Io(e.to_string()))?;
            return Ok(failed == 0);
        }
    }
    Ok(true)
}

fn instfreq(args: &InstfreqArgs, out: &mut dyn Write) -> Result<()> {
    check_fit_params(args.window, args.degree)?;
    if let Some(path) = &args.csv {
        let file = std::fs::File::open(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        let trace = phi_fitted(&SampledSignal::read_csv(file)?, args.window, args.degree)?;
        return render(out, args.json, trace.to_json(DIGITS), || trace.to_string());
    }
    let e = parse(args.expr.as_deref().unwrap_or_default())?;
    if args.ville {
        let cmp = phi_vs_ville_note(&e)?;
        let num = |x: f64| crate::scalar::json_number(x, DIGITS);
        let value = json!({
            "amplitude": num(cmp.amplitude),
            "omega": num(cmp.omega),
            "times": cmp.rows.iter().map(|r| num(r.t)).collect::<Vec<_>>(),
            "ville": cmp.rows.iter().map(|r| num(r.ville)).collect::<Vec<_>>(),
            "phi": cmp.rows.iter().map(|r| num(r.phi)).collect::<Vec<_>>(),
        });
        return render(out, args.json, value, || cmp.to_string());
    }
    if !(args.rate > 0.0) || !(args.to > args.from) || args.from < 0.0 {
        return Err(Error::Invalid("need 0 <= from < to and rate > 0".into()));
    }
    let n = ((args.to - args.from) * args.rate + 1e-9).floor() as usize + 1;
    let times: Vec<f64> = (0..n).map(|k| args.from + k as f64 / args.rate).collect();
    let trace = SymbolicPhi::new(&e)?.trace(&times)?;
    render(out, args.json, trace.to_json(DIGITS), || trace.to_string())
}

/// One-line machine-parsable error.
pub fn error_line(e: &Error) -> String {
    format!("error[{}]: {}", e.kind(), e.to_string().replace('\n', " "))
}

/// Parses `args`, runs the command and returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return 0;
            }
            let first = e.to_string().lines().next().unwrap_or_default().trim_start_matches("error: ").to_string();
            let _ = writeln!(err, "error[usage]: {first}");
            return 1;
        }
    };
    match execute(&cli.command, out) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            let _ = writeln!(err, "{}", error_line(&e));
            if e.is_numerical() {
                2
            } else {
                1
            }
        }
    }
}
