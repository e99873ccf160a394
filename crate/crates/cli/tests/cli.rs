use std::path::PathBuf;

use quiver_si::symalg::{det_of_arrow, render_poly};
use quiver_si::{FieldSpec, Quiver};
use quiver_si_cli::{run, EXIT_INPUT, EXIT_OK};

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../core/fixtures")
        .join(format!("{name}.quiver"))
        .to_string_lossy()
        .into_owned()
}

fn cli(args: &[&str]) -> quiver_si_cli::Outcome {
    run(std::iter::once("quiver-si").chain(args.iter().copied()))
}

#[test]
fn twovertex_prints_the_count() {
    let out = cli(&["twovertex", "4", "4", "4", "--char", "0"]);
    assert_eq!(out.code, EXIT_OK);
    assert_eq!(out.stdout, "1167\n");
    let both = cli(&["twovertex", "2", "2", "2"]);
    assert_eq!(both.stdout, "char 2: 46\nchar != 2: 46\n");
    let listed = cli(&["twovertex", "0", "0", "1", "--char", "2", "--list"]);
    assert_eq!(listed.stdout, "1\ndet z1\n");
}

#[test]
fn tree_quiver_count_is_the_arrow_count() {
    let out = cli(&["count", &fixture("path3"), "--char", "2"]);
    assert_eq!(out.code, EXIT_OK);
    assert_eq!(out.stdout, "2\n");
    let out = cli(&["gens", &fixture("path3"), "--char", "0"]);
    assert_eq!(out.stdout, "det a\ndet b\n");
}

#[test]
fn double_pass_trace_is_twice_the_determinant() {
    let out = cli(&["poly", &fixture("one_arrow"), "--path", "z1 z1*"]);
    assert_eq!(out.code, EXIT_OK);
    let q = Quiver::parse(&std::fs::read_to_string(fixture("one_arrow")).unwrap()).unwrap();
    let det = det_of_arrow(q.arrow_id("z1").unwrap());
    assert_eq!(out.stdout, format!("{}\n", render_poly(&q, &det.scale(2), FieldSpec::Rational)));
    assert_eq!(out.stdout, "2 * x[z1][1][1] * x[z1][2][2] - 2 * x[z1][1][2] * x[z1][2][1]\n");
}

#[test]
fn output_is_stable_across_runs() {
    let args = ["gens", &fixture("two_vertex_222"), "--char", "2"];
    assert_eq!(cli(&args).stdout, cli(&args).stdout);
    assert_eq!(cli(&args).stdout.lines().count(), 46);
}

#[test]
fn decomp_reports_the_verdict() {
    let out = cli(&["decomp", &fixture("four_loops"), "--path", "a b c d"]);
    assert_eq!(out.code, EXIT_OK);
    assert!(out.stdout.starts_with("decomposition 1: p1 = a, p2 = b, p3 = c, p4 = d\n"));
    assert!(out.stdout.ends_with("verdict: not admissible\n"));
}

#[test]
fn verify_suites_pass() {
    let out = cli(&["verify", "--char", "2", "--suite", "relations"]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stdout);
    assert!(out.stdout.lines().all(|l| l.starts_with("PASS ")));
    let out = cli(&["verify", &fixture("one_loop"), "--char", "0", "--suite", "invariance"]);
    assert_eq!(out.stdout, "PASS invariance tr a | mdeg {a:1}\nPASS invariance det a\n");
}

#[test]
fn input_errors_exit_with_two() {
    assert_eq!(cli(&["count", "/nonexistent/quiver"]).code, EXIT_INPUT);
    assert_eq!(cli(&["poly", &fixture("one_arrow"), "--path", "z1 z1"]).code, EXIT_INPUT);
    assert_eq!(cli(&["poly", &fixture("one_arrow"), "--path", "nope"]).code, EXIT_INPUT);
    assert_eq!(cli(&["count", &fixture("one_loop"), "--char", "4"]).code, EXIT_INPUT);
    assert_eq!(cli(&["verify", "--suite", "minimality"]).code, EXIT_INPUT);
    assert_eq!(cli(&["frobnicate"]).code, EXIT_INPUT);
    let capped = cli(&["count", &fixture("ex_decomp"), "--arrow-cap", "4"]);
    assert_eq!(capped.code, EXIT_INPUT);
    assert!(capped.stderr.contains("cap"));
}
