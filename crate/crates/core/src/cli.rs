//! Command-line front end. Output is JSON when requested or when stdout is
//! not a terminal, and a plain two-column table otherwise.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::applications::{hitchin_report, lebrun_report, ricci_flat_moduli_dim, surface_report};
use crate::bundles::{dump_characters, GroupElement};
use crate::error::Error;
use crate::index::{
    chi_orb, correction_at, correction_sum, correction_sum_closed_form, index_closed_form, index_kawasaki,
    tau_orb, Duality, Pipeline, TopologicalData,
};
use crate::scalars::{format_rational, parse_rational};
use crate::verify;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VERIFY: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

pub const THREADS_ENV: &str = "ORBIFOLD_INDEX_THREADS";

#[derive(Parser, Debug)]
#[command(name = "orbifold-index", version, about = "Exact index computations for orbifold-cone metrics")]
struct Cli {
    /// Emit JSON even on a terminal
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Topology {
    /// Euler characteristic of M
    #[arg(long, allow_negative_numbers = true)]
    chi: i64,
    /// Signature of M
    #[arg(long, allow_negative_numbers = true)]
    tau: i64,
    /// Euler characteristic of the singular surface
    #[arg(long, allow_negative_numbers = true)]
    sigma_chi: i64,
    /// Self-intersection of the singular surface
    #[arg(long, allow_negative_numbers = true)]
    sigma_sq: i64,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum DualityArg {
    Asd,
    Sd,
}

impl From<DualityArg> for Duality {
    fn from(d: DualityArg) -> Self {
        match d {
            DualityArg::Asd => Duality::Asd,
            DualityArg::Sd => Duality::Sd,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Route {
    Kawasaki,
    Closed,
    Both,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Fault {
    ThomSign,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Index of the deformation complex
    Index {
        #[command(flatten)]
        topology: Topology,
        /// Cone order (cone angle 2π/p)
        #[arg(long)]
        p: u32,
        #[arg(long, value_enum, default_value = "asd")]
        duality: DualityArg,
        #[arg(long, value_enum, default_value = "kawasaki")]
        route: Route,
    },
    /// Averaged fixed-point correction, brute force and closed form
    Correction {
        #[arg(long)]
        p: u32,
        /// Include every per-element character
        #[arg(long)]
        dump: bool,
    },
    /// Run the self-consistency suites
    Verify {
        #[arg(long, default_value_t = 50)]
        p_max: u32,
        #[arg(long, value_enum, hide = true)]
        inject_fault: Option<Fault>,
    },
    /// Orbifold Euler characteristic and signature for cone angle 2πβ
    OrbifoldChar {
        #[command(flatten)]
        topology: Topology,
        /// Cone angle parameter as a fraction a/b
        #[arg(long)]
        beta: String,
    },
    /// Self-intersection constraints for surfaces in S⁴
    Surfaces {
        #[arg(long)]
        j: u32,
    },
    /// Worked families
    Example {
        #[command(subcommand)]
        family: Example,
    },
}

#[derive(Subcommand, Debug)]
enum Example {
    /// S⁴ with cone angle 2π/(k−2) along ℝP²
    Hitchin {
        #[arg(long)]
        k: u32,
    },
    /// n#ℂP² with a cone along a sphere
    Lebrun {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        p: u32,
    },
    /// Ricci-flat moduli dimension
    RicciFlat {
        #[command(flatten)]
        topology: Topology,
        #[arg(long, default_value_t = 2)]
        p: u32,
    },
}

/// A rendered result plus the exit status it implies.
struct Output {
    value: Value,
    table: Option<String>,
    status: i32,
}

impl Output {
    fn ok(value: Value) -> Self {
        Output { value, table: None, status: EXIT_OK }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Inconsistency(_) | Error::NotRational => EXIT_INTERNAL,
        _ => EXIT_USAGE,
    }
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn topology_json(t: &Topology) -> serde_json::Map<String, Value> {
    let mut m = serde_json::Map::new();
    m.insert("chi".into(), t.chi.into());
    m.insert("tau".into(), t.tau.into());
    m.insert("sigma_chi".into(), t.sigma_chi.into());
    m.insert("sigma_sq".into(), t.sigma_sq.into());
    m
}

fn cmd_index(t: &Topology, p: u32, dual: Duality, route: Route) -> Result<Output, Error> {
    let d = TopologicalData::new(t.chi, t.tau, t.sigma_chi, t.sigma_sq, p)?;
    if p == 1 && route != Route::Kawasaki {
        return Err(Error::invalid(
            "p = 1 is the smooth case: the closed form applies only to cones (p >= 2); use --route kawasaki for the smooth index",
        ));
    }
    let mut inputs = topology_json(t);
    inputs.insert("p".into(), p.into());
    inputs.insert("duality".into(), dual.to_string().into());

    let kawasaki = || -> Result<Value, Error> {
        let index = index_kawasaki(&d, dual)?;
        let correction = correction_sum(p)?;
        let route = if p == 1 { "smooth" } else { "kawasaki" };
        Ok(json!({"index": index, "route": route, "correction": to_value(&correction), "inputs": inputs}))
    };
    let closed = || -> Result<Value, Error> {
        let index = index_closed_form(&d, dual)?;
        let correction = correction_sum_closed_form(p)?;
        Ok(json!({"index": index, "route": "closed_form", "correction": to_value(&correction), "inputs": inputs}))
    };
    match route {
        Route::Kawasaki => Ok(Output::ok(kawasaki()?)),
        Route::Closed => Ok(Output::ok(closed()?)),
        Route::Both => {
            let k = kawasaki()?;
            let c = closed()?;
            let agree = k["index"] == c["index"] && k["correction"] == c["correction"];
            let value = json!({
                "index": k["index"],
                "agree": agree,
                "kawasaki": k,
                "closed_form": c,
            });
            let status = if agree { EXIT_OK } else { EXIT_VERIFY };
            Ok(Output { value, table: None, status })
        }
    }
}

fn cmd_correction(p: u32, dump: bool) -> Result<Output, Error> {
    let brute = correction_sum(p)?;
    let closed = if p >= 2 { Some(correction_sum_closed_form(p)?) } else { None };
    let agree = closed.as_ref().is_none_or(|c| *c == brute);
    let mut value = json!({
        "p": p,
        "brute_force": to_value(&brute),
        "closed_form": closed.as_ref().map(to_value),
        "agree": agree,
    });
    if dump {
        let mut terms = Vec::new();
        for g in GroupElement::nontrivial(p) {
            terms.push(json!({
                "j": g.j(),
                "correction": to_value(&correction_at(&g)?),
                "characters": dump_characters(&g)?,
            }));
        }
        value["terms"] = Value::Array(terms);
    }
    let status = if agree { EXIT_OK } else { EXIT_VERIFY };
    Ok(Output { value, table: None, status })
}

fn cmd_verify(p_max: u32, fault: Option<Fault>) -> Result<Output, Error> {
    let pipeline = match fault {
        None => Pipeline::Standard,
        Some(Fault::ThomSign) => Pipeline::ThomSignFault,
    };
    let report = verify::run(p_max, pipeline)?;
    let mut table = format!("{:<24} {:>8} {:>9}  status\n", "suite", "checked", "failures");
    for s in &report.suites {
        let status = if s.passed() { "pass" } else { "FAIL" };
        table.push_str(&format!("{:<24} {:>8} {:>9}  {status}\n", s.name, s.checked, s.failures.len()));
        for f in s.failures.iter().take(5) {
            table.push_str(&format!("    {f}\n"));
        }
    }
    table.push_str(&format!("overall (p <= {}): {}\n", p_max, if report.passed { "pass" } else { "FAIL" }));
    let status = if report.passed { EXIT_OK } else { EXIT_VERIFY };
    Ok(Output { value: to_value(&report), table: Some(table), status })
}

fn cmd_orbifold_char(t: &Topology, beta: &str) -> Result<Output, Error> {
    let beta = parse_rational(beta)?;
    let chi = chi_orb(t.chi, &beta, t.sigma_chi)?;
    let tau = tau_orb(t.tau, &beta, t.sigma_sq)?;
    let mut inputs = topology_json(t);
    inputs.insert("beta".into(), format_rational(&beta).into());
    Ok(Output::ok(json!({
        "chi_orb": format_rational(&chi),
        "tau_orb": format_rational(&tau),
        "inputs": inputs,
    })))
}

fn with_family(family: &str, params: Value, report: Value) -> Value {
    let mut v = report;
    v["family"] = family.into();
    v["params"] = params;
    v
}

fn cmd_example(e: &Example) -> Result<Output, Error> {
    let value = match e {
        Example::Hitchin { k } => with_family("hitchin", json!({"k": k}), to_value(&hitchin_report(*k)?)),
        Example::Lebrun { n, p } => with_family("lebrun", json!({"n": n, "p": p}), to_value(&lebrun_report(*n, *p)?)),
        Example::RicciFlat { topology: t, p } => {
            let d = TopologicalData::new(t.chi, t.tau, t.sigma_chi, t.sigma_sq, *p)?;
            let mut inputs = topology_json(t);
            inputs.insert("p".into(), (*p).into());
            json!({
                "family": "ricci-flat",
                "moduli_dimension": ricci_flat_moduli_dim(&d)?,
                "inputs": inputs,
                "assumptions": ["no parallel vector fields", "no parallel sections"],
            })
        }
    };
    Ok(Output::ok(value))
}

fn dispatch(cmd: &Command) -> Result<Output, Error> {
    match cmd {
        Command::Index { topology, p, duality, route } => cmd_index(topology, *p, (*duality).into(), *route),
        Command::Correction { p, dump } => cmd_correction(*p, *dump),
        Command::Verify { p_max, inject_fault } => cmd_verify(*p_max, *inject_fault),
        Command::OrbifoldChar { topology, beta } => cmd_orbifold_char(topology, beta),
        Command::Surfaces { j } => Ok(Output::ok(to_value(&surface_report(*j)?))),
        Command::Example { family } => cmd_example(family),
    }
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

/// Flattens nested JSON into `key value` rows; arrays of scalars stay inline.
fn flatten(prefix: &str, v: &Value, rows: &mut Vec<(String, String)>) {
    let key = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                flatten(&key(k), x, rows);
            }
        }
        Value::Array(items) if items.iter().all(|x| !x.is_object() && !x.is_array()) => {
            let parts: Vec<String> = items.iter().map(scalar_text).collect();
            rows.push((prefix.to_string(), format!("[{}]", parts.join(", "))));
        }
        Value::Array(items) => {
            for (i, x) in items.iter().enumerate() {
                flatten(&key(&i.to_string()), x, rows);
            }
        }
        other => rows.push((prefix.to_string(), scalar_text(other))),
    }
}

fn render_table(v: &Value) -> String {
    let mut rows = Vec::new();
    flatten("", v, &mut rows);
    let width = rows.iter().map(|(k, _)| k.chars().count()).max().unwrap_or(0);
    rows.iter()
        .map(|(k, x)| format!("{k:<width$}  {x}\n"))
        .collect()
}

/// Parses `args` (including the program name), runs the command and writes
/// the result. Returns the process exit status.
pub fn run<I, T>(args: I, json_default: bool, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{text}");
                    EXIT_USAGE
                }
            };
        }
    };
    match dispatch(&cli.command) {
        Ok(o) => {
            let text = if cli.json || json_default {
                let mut s = serde_json::to_string_pretty(&o.value).expect("serializable");
                s.push('\n');
                s
            } else {
                o.table.unwrap_or_else(|| render_table(&o.value))
            };
            if out.write_all(text.as_bytes()).is_err() {
                return EXIT_INTERNAL;
            }
            o.status
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

/// Sizes the global thread pool from the environment, if requested.
pub fn configure_threads() -> Result<(), Error> {
    let Ok(raw) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Error::invalid(format!("{THREADS_ENV} must be a positive integer, got `{raw}`")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Error::invalid(format!("cannot size thread pool: {e}")))
}
