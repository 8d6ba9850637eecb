use std::process::{Command, Output};

use hyperconnect::connection::ConnectionExpansion;
use hyperconnect::families::FamilyDescriptor;
use hyperconnect::series::TruncatedSeries;
use hyperconnect::verify::{BatchReport, IdentityCase, Status, VerificationReport};
use hyperconnect::ExactScalar;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hyperconnect"))
        .args(args)
        .env_remove("HYPERCONNECT_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn eval_meixner_degree_one() {
    let o = run(&[
        "eval", "--family", "meixner", "--n", "1", "--x", "4", "--alpha", "1", "--c", "1/2",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(stdout(&o).trim(), "-3");
}

#[test]
fn eval_with_param_flag_and_negative_x() {
    let o = run(&[
        "eval", "--family", "charlier", "--n", "2", "--x", "-1", "--param", "a=2",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    // C_2(x;a) = 1 - 2x/a + x(x-1)/a^2 at x = -1, a = 2
    assert_eq!(stdout(&o).trim(), "5/2");
}

#[test]
fn decimals_are_rejected_on_exact_backend() {
    let o = run(&[
        "eval", "--family", "meixner", "--n", "1", "--x", "4", "--alpha", "1", "--c", "0.5",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("p/q"));
    let o = run(&[
        "eval",
        "--family",
        "meixner",
        "--n",
        "1",
        "--x",
        "4",
        "--alpha",
        "1",
        "--c",
        "0.5",
        "--backend",
        "numeric",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
}

#[test]
fn usage_errors_name_the_problem() {
    let o = run(&[
        "eval", "--family", "meixner", "--n", "1", "--x", "4", "--alpha", "1", "--gamma", "1/2",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("gamma") && stderr(&o).contains("alpha, c"));
    let o = run(&["eval", "--family", "nope", "--n", "1", "--x", "4"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["frobnicate"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["connect", "--family", "meixner", "--n-max", "many"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("--n-max"));
    let o = run(&["verify", "--order", "3"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn connect_identity_table() {
    let o = run(&[
        "connect",
        "--family",
        "meixner",
        "--relation",
        "alpha_to_beta",
        "--alpha",
        "3/2",
        "--beta",
        "3/2",
        "--n-max",
        "3",
        "--output",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let e: ConnectionExpansion<ExactScalar> = serde_json::from_str(&stdout(&o)).unwrap();
    let table = e.table().unwrap();
    for (n, row) in table.iter().enumerate() {
        for (k, v) in row.iter().enumerate() {
            let expected = if k == n { 1 } else { 0 };
            assert_eq!(*v, ExactScalar::integer(expected));
        }
    }
}

#[test]
fn connect_methods_agree() {
    let base = [
        "connect",
        "--family",
        "meixner",
        "--relation",
        "alpha_c_to_beta_d",
        "--alpha",
        "3/2",
        "--beta",
        "7/3",
        "--c",
        "2/5",
        "--d",
        "3/7",
        "--n-max",
        "5",
        "--output",
        "json",
    ];
    let tables: Vec<Vec<Vec<ExactScalar>>> = ["closed-form", "linear-solve"]
        .iter()
        .map(|m| {
            let mut args = base.to_vec();
            args.extend(["--method", m]);
            let o = run(&args);
            assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
            let e: ConnectionExpansion<ExactScalar> = serde_json::from_str(&stdout(&o)).unwrap();
            e.table().unwrap().to_vec()
        })
        .collect();
    assert_eq!(tables[0], tables[1]);
}

#[test]
fn power_collection_reports_the_blocking_factor() {
    let o = run(&[
        "connect", "--family", "meixner", "--alpha", "3/2", "--c", "2/5", "--to", "c=3/7", "--n-max", "3",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("not applicable"), "{}", stderr(&o));
    let o = run(&[
        "connect",
        "--family",
        "meixner",
        "--alpha",
        "3/2",
        "--c",
        "2/5",
        "--to",
        "alpha=7/3",
        "--n-max",
        "3",
        "--output",
        "csv",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).starts_with("n,k0"));
}

#[test]
fn expand_round_trips() {
    let o = run(&[
        "expand",
        "--family",
        "krawtchouk",
        "--x",
        "2",
        "--p",
        "1/3",
        "--N",
        "4",
        "--order",
        "6",
        "--output",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let s: TruncatedSeries<ExactScalar> = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(s.order(), 6);
    assert_eq!(s.coeff(5), ExactScalar::integer(0));
}

#[test]
fn verify_single_identity() {
    let o = run(&[
        "verify",
        "--theorem",
        "meixner-2f1-beta",
        "--x",
        "3",
        "--alpha",
        "5/4",
        "--beta",
        "1/2",
        "--c",
        "3/7",
        "--gamma",
        "5/4",
        "--order",
        "12",
        "--output",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let r: VerificationReport = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r.status, Status::Pass);
    assert_eq!(r.deviation, Some(0.0));
}

#[test]
fn verify_failure_exit_code() {
    let o = run(&[
        "verify",
        "--theorem",
        "meixner-phi2-d",
        "--x",
        "4",
        "--alpha",
        "3/2",
        "--c",
        "2/5",
        "--d",
        "3/7",
        "--order",
        "4",
        "--as-displayed",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("FAIL"));
}

#[test]
fn verify_inconclusive_exit_code() {
    let o = run(&[
        "verify",
        "--theorem",
        "meixner-exp-sum-beta",
        "--alpha",
        "2",
        "--beta",
        "3",
        "--c",
        "1/2",
        "--t",
        "1/4",
        "--n",
        "3",
        "--backend",
        "numeric",
        "--x-max",
        "12",
    ]);
    assert_eq!(o.status.code(), Some(3), "{}{}", stdout(&o), stderr(&o));
}

#[test]
fn verify_numeric_only_identity_on_exact_backend() {
    let o = run(&[
        "verify",
        "--theorem",
        "meixner-orthogonality",
        "--alpha",
        "2",
        "--c",
        "1/2",
        "--order",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("numeric"));
}

#[test]
fn acceptance_suite_passes_and_is_deterministic() {
    let args = [
        "verify",
        "--suite",
        "acceptance",
        "--backend",
        "exact",
        "--order",
        "12",
        "--output",
        "json",
    ];
    let a = run(&args);
    assert_eq!(a.status.code(), Some(0), "{}", stderr(&a));
    let b = run(&args);
    assert_eq!(a.stdout, b.stdout);
    let report: BatchReport = serde_json::from_str(&stdout(&a)).unwrap();
    assert!(report.summary.all_pass());
    assert_eq!(report.summary.total, report.reports.len());
}

#[test]
fn thread_cap_is_honoured_and_validated() {
    let out = Command::new(env!("CARGO_BIN_EXE_hyperconnect"))
        .args(["verify", "--suite", "acceptance", "--order", "6"])
        .env("HYPERCONNECT_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let out = Command::new(env!("CARGO_BIN_EXE_hyperconnect"))
        .args(["catalog"])
        .env("HYPERCONNECT_THREADS", "lots")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn cases_file_and_output_path() {
    let dir = tempfile::tempdir().unwrap();
    let cases = vec![
        IdentityCase::new(
            "krawtchouk-exp-sum",
            &[
                ("p", "1/2"),
                ("q", "1/3"),
                ("N", "3"),
                ("M", "5"),
                ("t", "1/5"),
                ("n", "2"),
            ],
            0,
            hyperconnect::FieldTag::exact(),
        ),
        IdentityCase::new("no-such-identity", &[], 3, hyperconnect::FieldTag::exact()),
    ];
    let input = dir.path().join("cases.json");
    std::fs::write(&input, serde_json::to_string(&cases).unwrap()).unwrap();
    let output = dir.path().join("report.json");
    let o = run(&[
        "verify",
        "--cases",
        input.to_str().unwrap(),
        "--output",
        "json",
        "--out",
        output.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).is_empty());
    let report: BatchReport = serde_json::from_str(&std::fs::read_to_string(&output).unwrap()).unwrap();
    assert_eq!(report.reports[0].status, Status::Pass);
    assert_eq!(report.reports[1].status, Status::Error);
    assert_eq!(report.reports[0].case, cases[0]);
}

#[test]
fn catalog_dump_round_trips() {
    let o = run(&["catalog"]);
    assert_eq!(o.status.code(), Some(0));
    let all: Vec<FamilyDescriptor> = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(all.len(), hyperconnect::families::catalog().len());
    let o = run(&["catalog", "--family", "al-salam-carlitz-1", "--output", "text"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("factor:"));
}
