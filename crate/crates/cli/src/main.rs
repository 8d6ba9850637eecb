//! `hyperconnect` command-line front end.
//!
//! Parameters can be bound either as `--param name=value` or as `--name value`
//! for any name the subcommand does not already use as a flag.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{CommandFactory, Parser, Subcommand, ValueEnum};
use hyperconnect::connection::{
    closed_form, complete_relation_params, connect_linear_solve, power_collect, relation_endpoints,
    ConnectionExpansion, Method, Relation,
};
use hyperconnect::families::{catalog, descriptor, family_eval, gf_expand, FamilyDescriptor, ParamSet};
use hyperconnect::scalar::parse_scalar;
use hyperconnect::series::TruncatedSeries;
use hyperconnect::verify::{
    acceptance_suite, batch_verify, identity_info, registry, BatchReport, Form, IdentityCase, Status,
    VerificationReport,
};
use hyperconnect::{Error, ExactScalar, FieldKind, FieldTag, NumericScalar, Scalar};
use serde::{Deserialize, Serialize};

const EXIT_OK: u8 = 0;
const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_INCONCLUSIVE: u8 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "hyperconnect",
    version,
    about = "Connection relations and identity checks for hypergeometric orthogonal polynomials"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Backend {
    Exact,
    Numeric,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(clap::Args, Debug)]
struct Common {
    /// Coefficient field.
    #[arg(long, value_enum, default_value = "exact")]
    backend: Backend,
    /// Absolute and relative tolerance for the numeric backend.
    #[arg(long)]
    tolerance: Option<f64>,
    #[arg(long, value_enum, default_value = "text")]
    output: Format,
    /// Write the document here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Parameter binding `name=value`; rationals as `p/q`.
    #[arg(long = "param", value_name = "NAME=VALUE")]
    params: Vec<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate P_n(x) for a catalog family.
    Eval {
        #[arg(long)]
        family: String,
        #[arg(long)]
        n: usize,
        /// Variable (x, or cos θ for the trigonometric families).
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[command(flatten)]
        common: Common,
    },
    /// Expand a generating function through t^order.
    Expand {
        #[arg(long)]
        family: String,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, default_value_t = 8)]
        order: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Connection coefficients between two parameter sets of a family.
    Connect {
        #[arg(long)]
        family: String,
        /// Named relation; its source and target come from the bindings.
        #[arg(long)]
        relation: Option<String>,
        /// closed-form | power-collection | linear-solve
        #[arg(long)]
        method: Option<String>,
        #[arg(long, default_value_t = 6)]
        n_max: usize,
        /// Target parameter override `name=value`; unlisted names keep the
        /// source value.
        #[arg(long = "to", value_name = "NAME=VALUE")]
        to: Vec<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Verify one identity, a case file, or the built-in suite.
    Verify {
        /// Identity id; see `verify --list`.
        #[arg(long, alias = "identity")]
        theorem: Option<String>,
        /// Built-in suite name.
        #[arg(long)]
        suite: Option<String>,
        /// JSON array of cases.
        #[arg(long)]
        cases: Option<PathBuf>,
        #[arg(long)]
        list: bool,
        #[arg(long, default_value_t = 12)]
        order: usize,
        /// Summation cutoff for infinite sums.
        #[arg(long)]
        x_max: Option<usize>,
        /// Abscissae for connection cases, comma separated.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        samples: Vec<String>,
        #[arg(long)]
        as_displayed: bool,
        /// Record wall time per case.
        #[arg(long)]
        timing: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Print the family catalog.
    Catalog {
        #[arg(long)]
        family: Option<String>,
        #[arg(long, value_enum, default_value = "json")]
        output: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// A finished command: the rendered document and the exit status.
struct Outcome {
    document: String,
    code: u8,
}

impl Outcome {
    fn ok(document: String) -> Self {
        Outcome {
            document,
            code: EXIT_OK,
        }
    }
}

/// Failure that maps to an exit code.
#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InvalidParameter { .. }
            | Error::MissingParameter(_)
            | Error::UnknownFamily(_)
            | Error::UnknownRelation(_)
            | Error::UnknownIdentity(_)
            | Error::Parse(_)
            | Error::UnsupportedMode(_)
            | Error::UnsupportedExpansion(_)
            | Error::DegreeOutOfRange { .. } => EXIT_USAGE,
            _ => EXIT_FAIL,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

/// Rewrites `--name value` into `--param name=value` for names the
/// subcommand does not define.
fn normalize_args(args: Vec<String>) -> Vec<String> {
    let mut out = Vec::with_capacity(args.len());
    let mut iter = args.into_iter();
    out.extend(iter.next());
    let rest: Vec<String> = iter.collect();
    let sub_pos = rest.iter().position(|a| !a.starts_with('-'));
    let known: Vec<String> = match sub_pos.and_then(|i| Cli::command().find_subcommand(&rest[i]).cloned()) {
        Some(cmd) => cmd
            .get_arguments()
            .flat_map(|a| {
                let mut names: Vec<String> = a
                    .get_long_and_visible_aliases()
                    .unwrap_or_default()
                    .iter()
                    .map(|s| s.to_string())
                    .collect();
                names.extend(a.get_all_aliases().unwrap_or_default().iter().map(|s| s.to_string()));
                names
            })
            .chain(["help".to_string(), "version".to_string()])
            .collect(),
        None => return out.into_iter().chain(rest).collect(),
    };
    let mut i = 0;
    while i < rest.len() {
        let arg = &rest[i];
        if Some(i) > sub_pos {
            if let Some(body) = arg.strip_prefix("--") {
                let (name, inline) = match body.split_once('=') {
                    Some((n, v)) => (n, Some(v.to_string())),
                    None => (body, None),
                };
                if !name.is_empty() && !known.iter().any(|k| k == name) {
                    let value = match inline {
                        Some(v) => Some(v),
                        None if i + 1 < rest.len() => {
                            i += 1;
                            Some(rest[i].clone())
                        }
                        None => None,
                    };
                    match value {
                        Some(v) => {
                            out.push("--param".into());
                            out.push(format!("{name}={v}"));
                        }
                        None => out.push(arg.clone()),
                    }
                    i += 1;
                    continue;
                }
            }
        }
        out.push(arg.clone());
        i += 1;
    }
    out
}

fn bindings(raw: &[String], flag: &str) -> CliResult<BTreeMap<String, String>> {
    let mut map = BTreeMap::new();
    for b in raw {
        let (name, value) = b
            .split_once('=')
            .ok_or_else(|| Failure::usage(format!("{flag} `{b}`: expected NAME=VALUE, e.g. {flag} alpha=3/2")))?;
        if map.insert(name.trim().to_string(), value.trim().to_string()).is_some() {
            return Err(Failure::usage(format!("parameter `{name}` bound twice")));
        }
    }
    Ok(map)
}

fn looks_decimal(v: &str) -> bool {
    v.contains('.') || v.contains(['e', 'E']) && v.chars().any(|c| c.is_ascii_digit()) && v.parse::<f64>().is_ok()
}

/// Parses a literal in the chosen field, with a hint for decimals on the
/// exact backend.
fn scalar<S: Scalar>(name: &str, v: &str) -> CliResult<S> {
    if S::KIND == FieldKind::Exact && looks_decimal(v) {
        return Err(Failure::usage(format!(
            "`{name}={v}`: the exact backend takes rationals as p/q (e.g. 1/4 rather than 0.25); use --backend numeric for decimals"
        )));
    }
    parse_scalar(v).map_err(|e| Failure::usage(format!("`{name}={v}`: {e}")))
}

fn param_set<S: Scalar>(raw: &BTreeMap<String, String>) -> CliResult<ParamSet<S>> {
    let mut set = ParamSet::new();
    for (k, v) in raw {
        set.set(k, scalar::<S>(k, v)?);
    }
    Ok(set)
}

fn check_names(desc: &FamilyDescriptor, raw: &BTreeMap<String, String>) -> CliResult<()> {
    let expected: Vec<&str> = desc.parameter_names().collect();
    for name in raw.keys() {
        if !expected.contains(&name.as_str()) {
            return Err(Failure::usage(format!(
                "`{name}` is not a parameter of {}; expected {}",
                desc.id,
                expected.join(", ")
            )));
        }
    }
    Ok(())
}

fn field_tag(common: &Common) -> CliResult<FieldTag> {
    match (common.backend, common.tolerance) {
        (Backend::Exact, Some(_)) => Err(Failure::usage("--tolerance applies to --backend numeric only")),
        (Backend::Exact, None) => Ok(FieldTag::exact()),
        (Backend::Numeric, None) => Ok(FieldTag::default_for(FieldKind::Numeric)),
        (Backend::Numeric, Some(t)) => FieldTag::numeric(t).map_err(Failure::from),
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable output");
    s.push('\n');
    s
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
struct Evaluation<S> {
    family: String,
    n: usize,
    x: S,
    params: ParamSet<S>,
    value: S,
}

fn eval_cmd<S: Scalar + Serialize>(family: &str, n: usize, x: &str, common: &Common) -> CliResult<String> {
    let desc = descriptor(family)?;
    let raw = bindings(&common.params, "--param")?;
    check_names(desc, &raw)?;
    let params = param_set::<S>(&raw)?;
    let xv = scalar::<S>("x", x)?;
    let value = family_eval(family, n, &xv, &params)?;
    Ok(match common.output {
        Format::Json => to_json(&Evaluation {
            family: family.to_string(),
            n,
            x: xv,
            params,
            value,
        }),
        Format::Csv => format!("family,n,x,value\n{family},{n},{xv},{value}\n"),
        Format::Text => format!("{value}\n"),
    })
}

fn expand_cmd<S: Scalar + Serialize>(family: &str, x: &str, order: usize, common: &Common) -> CliResult<String> {
    let desc = descriptor(family)?;
    let raw = bindings(&common.params, "--param")?;
    check_names(desc, &raw)?;
    let params = param_set::<S>(&raw)?;
    let xv = scalar::<S>("x", x)?;
    let series: TruncatedSeries<S> = gf_expand(desc, &xv, &params, order)?;
    Ok(match common.output {
        Format::Json => to_json(&series),
        Format::Csv => {
            let mut s = String::from("k,coefficient\n");
            for (k, c) in series.coefficients().iter().enumerate() {
                let _ = writeln!(s, "{k},{c}");
            }
            s
        }
        Format::Text => format!("{series}\n"),
    })
}

fn connect_cmd<S: Scalar + Serialize>(
    family: &str,
    relation: Option<&str>,
    method: Option<&str>,
    n_max: usize,
    to: &[String],
    common: &Common,
) -> CliResult<String> {
    let desc = descriptor(family)?;
    let raw = bindings(&common.params, "--param")?;
    let overrides = bindings(to, "--to")?;
    let method: Option<Method> = method.map(str::parse).transpose()?;
    let expansion: ConnectionExpansion<S> = match relation {
        Some(id) => {
            let rel: Relation = id.parse()?;
            if rel.family() != desc.id {
                return Err(Failure::usage(format!(
                    "relation {rel} belongs to {}, not {}",
                    rel.family(),
                    desc.id
                )));
            }
            if !overrides.is_empty() {
                return Err(Failure::usage(
                    "--to is for --method power-collection | linear-solve without --relation",
                ));
            }
            for name in raw.keys() {
                if !rel.parameter_names().contains(&name.as_str()) {
                    return Err(Failure::usage(format!(
                        "`{name}` is not a parameter of {rel}; expected {}",
                        rel.parameter_names().join(", ")
                    )));
                }
            }
            let params = complete_relation_params(rel, &param_set::<S>(&raw)?)?;
            match method.unwrap_or(Method::ClosedForm) {
                Method::ClosedForm => closed_form(rel, &params, n_max)?,
                Method::PowerCollection | Method::LinearSolve if rel.is_connection_type() => {
                    return Err(Failure::usage(format!(
                        "{rel} has x-dependent coefficients; only --method closed-form applies"
                    )))
                }
                m => {
                    let (from, to) = relation_endpoints(rel, &params)?;
                    let n = if desc.id == "krawtchouk" {
                        n_max.min(from.integer("N")?)
                    } else {
                        n_max
                    };
                    let mut e = if m == Method::PowerCollection {
                        power_collect(desc, &from, &to, n)?
                    } else {
                        connect_linear_solve(&desc.id, &from, &to, n)?
                    };
                    e.relation = Some(rel);
                    e
                }
            }
        }
        None => {
            check_names(desc, &raw)?;
            check_names(desc, &overrides)?;
            let from = param_set::<S>(&raw)?;
            let mut target = from.clone();
            for (k, v) in &overrides {
                target.set(k, scalar::<S>(k, v)?);
            }
            match method.unwrap_or(Method::PowerCollection) {
                Method::PowerCollection => power_collect(desc, &from, &target, n_max)?,
                Method::LinearSolve => connect_linear_solve(&desc.id, &from, &target, n_max)?,
                _ => return Err(Failure::usage("--method closed-form needs --relation")),
            }
        }
    };
    Ok(match common.output {
        Format::Json => to_json(&expansion),
        Format::Csv => expansion.to_csv(),
        Format::Text => connection_text(&expansion),
    })
}

fn connection_text<S: Scalar>(e: &ConnectionExpansion<S>) -> String {
    let mut s = format!("{} {}", e.family, e.method);
    if let Some(r) = e.relation {
        let _ = write!(s, " {r}");
    }
    s.push('\n');
    match e.table() {
        Some(rows) => {
            for (n, row) in rows.iter().enumerate() {
                let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
                let _ = writeln!(s, "n={n}: {}", cells.join("  "));
            }
        }
        None => s.push_str("coefficients depend on x; evaluate with the library or use --output json\n"),
    }
    s
}

fn render_reports(reports: &[VerificationReport], format: Format) -> String {
    match format {
        Format::Csv => {
            let mut s = String::from("id,status,deviation,first_failing_order,terms_summed,tail_bound,error\n");
            for r in reports {
                let opt = |v: Option<String>| v.unwrap_or_default();
                let _ = writeln!(
                    s,
                    "{},{},{},{},{},{},\"{}\"",
                    r.case.id,
                    status_word(r.status),
                    opt(r.deviation.map(|d| d.to_string())),
                    opt(r.first_failing_order.map(|d| d.to_string())),
                    opt(r.terms_summed.map(|d| d.to_string())),
                    opt(r.tail_bound.map(|d| d.to_string())),
                    opt(r.error.clone()).replace('"', "'"),
                );
            }
            s
        }
        _ => {
            let mut s = String::new();
            for r in reports {
                let _ = write!(s, "{:<12} {}", status_word(r.status).to_uppercase(), r.case.id);
                if let Some(gf) = r.case.params.get("generating_function") {
                    let _ = write!(s, " [{gf}]");
                }
                if let Some(d) = r.deviation {
                    let _ = write!(s, " deviation={d:e}");
                }
                if let Some(o) = r.first_failing_order {
                    let _ = write!(s, " first_failing_order={o}");
                }
                if let Some(t) = r.tail_bound {
                    let _ = write!(s, " tail={t:e}");
                }
                if let Some(ms) = r.millis {
                    let _ = write!(s, " {ms}ms");
                }
                if let Some(e) = &r.error {
                    let _ = write!(s, " error: {e}");
                }
                s.push('\n');
            }
            s
        }
    }
}

fn status_word(s: Status) -> &'static str {
    match s {
        Status::Pass => "pass",
        Status::Fail => "fail",
        Status::Error => "error",
        Status::Inconclusive => "inconclusive",
    }
}

fn exit_for(reports: &[VerificationReport]) -> u8 {
    if reports.iter().any(|r| matches!(r.status, Status::Fail | Status::Error)) {
        EXIT_FAIL
    } else if reports.iter().any(|r| r.status == Status::Inconclusive) {
        EXIT_INCONCLUSIVE
    } else {
        EXIT_OK
    }
}

#[allow(clippy::too_many_arguments)]
fn verify_cmd(
    theorem: Option<&str>,
    suite: Option<&str>,
    cases: Option<&PathBuf>,
    list: bool,
    order: usize,
    x_max: Option<usize>,
    samples: &[String],
    as_displayed: bool,
    timing: bool,
    common: &Common,
) -> CliResult<Outcome> {
    if list {
        return Ok(Outcome::ok(match common.output {
            Format::Json => to_json(&registry()),
            _ => registry()
                .iter()
                .map(|i| format!("{:<36} {}\n    params: {}\n", i.id, i.summary, i.parameters.join(", ")))
                .collect(),
        }));
    }
    let chosen = [theorem.is_some(), suite.is_some(), cases.is_some()]
        .iter()
        .filter(|b| **b)
        .count();
    if chosen != 1 {
        return Err(Failure::usage(
            "verify needs exactly one of --theorem ID, --suite acceptance, --cases FILE",
        ));
    }
    let field = field_tag(common)?;
    if let Some(id) = theorem {
        let info = identity_info(id)?;
        let raw = bindings(&common.params, "--param")?;
        if field.kind == FieldKind::Exact {
            for (k, v) in &raw {
                if k != "generating_function" {
                    scalar::<ExactScalar>(k, v)?;
                }
            }
        }
        let mut case = IdentityCase {
            id: info.id.to_string(),
            params: raw,
            order,
            field,
            tail: None,
            samples: samples.to_vec(),
            form: if as_displayed {
                Form::AsDisplayed
            } else {
                Form::Verified
            },
        };
        if let Some(x) = x_max {
            case = case.with_tail(x);
        }
        case.validate()?;
        let report = batch_verify(std::slice::from_ref(&case), timing).reports.remove(0);
        let code = exit_for(std::slice::from_ref(&report));
        let document = match common.output {
            Format::Json => to_json(&report),
            f => render_reports(std::slice::from_ref(&report), f),
        };
        return Ok(Outcome { document, code });
    }
    let list: Vec<IdentityCase> = match (suite, cases) {
        (Some("acceptance"), _) => acceptance_suite(order, field.kind),
        (Some(other), _) => return Err(Failure::usage(format!("unknown suite `{other}`; expected acceptance"))),
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::usage(format!("--cases {}: {e}", path.display())))?;
            serde_json::from_str(&text).map_err(|e| Failure::usage(format!("--cases {}: {e}", path.display())))?
        }
        (None, None) => unreachable!("checked above"),
    };
    let report: BatchReport = batch_verify(&list, timing);
    let code = exit_for(&report.reports);
    let document = match common.output {
        Format::Json => to_json(&report),
        f => {
            let mut s = render_reports(&report.reports, f);
            if f == Format::Text {
                let m = report.summary;
                let _ = writeln!(
                    s,
                    "total {} pass {} fail {} error {} inconclusive {}",
                    m.total, m.pass, m.fail, m.error, m.inconclusive
                );
            }
            s
        }
    };
    Ok(Outcome { document, code })
}

fn catalog_cmd(family: Option<&str>, output: Format) -> CliResult<String> {
    let entries: Vec<&FamilyDescriptor> = match family {
        Some(id) => vec![descriptor(id)?],
        None => catalog().iter().collect(),
    };
    Ok(match output {
        Format::Json if family.is_some() => to_json(entries[0]),
        Format::Json => to_json(&entries),
        Format::Csv => {
            let mut s = String::from("id,name,variable,expandable,parameters\n");
            for d in entries {
                let params: Vec<&str> = d.parameter_names().collect();
                let _ = writeln!(
                    s,
                    "{},\"{}\",{},{},{}",
                    d.id,
                    d.name,
                    serde_json::to_value(d.variable)
                        .expect("enum")
                        .as_str()
                        .unwrap_or_default(),
                    serde_json::to_value(d.expandable)
                        .expect("enum")
                        .as_str()
                        .unwrap_or_default(),
                    params.join(" ")
                );
            }
            s
        }
        Format::Text => {
            let mut s = String::new();
            for d in entries {
                let params: Vec<&str> = d.parameter_names().collect();
                let _ = writeln!(s, "{:<24} {} ({})", d.id, d.name, params.join(", "));
                let _ = writeln!(s, "    {}", d.generating_function);
                for f in &d.factors {
                    let _ = writeln!(s, "    factor: {}", f.describe());
                }
            }
            s
        }
    })
}

fn by_backend<T>(
    backend: Backend,
    exact: impl FnOnce() -> CliResult<T>,
    numeric: impl FnOnce() -> CliResult<T>,
) -> CliResult<T> {
    match backend {
        Backend::Exact => exact(),
        Backend::Numeric => numeric(),
    }
}

fn run(cli: &Cli) -> CliResult<(Outcome, Option<PathBuf>)> {
    match &cli.command {
        Command::Eval { family, n, x, common } => {
            field_tag(common)?;
            let doc = by_backend(
                common.backend,
                || eval_cmd::<ExactScalar>(family, *n, x, common),
                || eval_cmd::<NumericScalar>(family, *n, x, common),
            )?;
            Ok((Outcome::ok(doc), common.out.clone()))
        }
        Command::Expand {
            family,
            x,
            order,
            common,
        } => {
            field_tag(common)?;
            let doc = by_backend(
                common.backend,
                || expand_cmd::<ExactScalar>(family, x, *order, common),
                || expand_cmd::<NumericScalar>(family, x, *order, common),
            )?;
            Ok((Outcome::ok(doc), common.out.clone()))
        }
        Command::Connect {
            family,
            relation,
            method,
            n_max,
            to,
            common,
        } => {
            field_tag(common)?;
            let (r, m) = (relation.as_deref(), method.as_deref());
            let doc = by_backend(
                common.backend,
                || connect_cmd::<ExactScalar>(family, r, m, *n_max, to, common),
                || connect_cmd::<NumericScalar>(family, r, m, *n_max, to, common),
            )?;
            Ok((Outcome::ok(doc), common.out.clone()))
        }
        Command::Verify {
            theorem,
            suite,
            cases,
            list,
            order,
            x_max,
            samples,
            as_displayed,
            timing,
            common,
        } => {
            let outcome = verify_cmd(
                theorem.as_deref(),
                suite.as_deref(),
                cases.as_ref(),
                *list,
                *order,
                *x_max,
                samples,
                *as_displayed,
                *timing,
                common,
            )?;
            Ok((outcome, common.out.clone()))
        }
        Command::Catalog { family, output, out } => {
            Ok((Outcome::ok(catalog_cmd(family.as_deref(), *output)?), out.clone()))
        }
    }
}

/// `HYPERCONNECT_THREADS` caps the worker pool; 0 or unset means automatic.
fn configure_threads() -> CliResult<()> {
    let Ok(raw) = std::env::var("HYPERCONNECT_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .map_err(|_| Failure::usage(format!("HYPERCONNECT_THREADS=`{raw}`: expected a non-negative integer")))?;
    if n > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Failure::usage(format!("HYPERCONNECT_THREADS: {e}")))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse_from(normalize_args(std::env::args().collect())) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { EXIT_OK });
        }
    };
    let result = configure_threads().and_then(|_| run(&cli));
    match result {
        Ok((outcome, path)) => {
            match path {
                Some(p) => {
                    if let Err(e) = std::fs::write(&p, &outcome.document) {
                        eprintln!("error: writing {}: {e}", p.display());
                        return ExitCode::from(EXIT_FAIL);
                    }
                }
                None => print!("{}", outcome.document),
            }
            ExitCode::from(outcome.code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
