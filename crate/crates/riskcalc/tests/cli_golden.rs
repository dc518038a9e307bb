//! End-to-end tests of the `riskcalc` binary: golden stdout per command,
//! the exit-code contract, determinism, and config discovery.
//!
//! Regenerate the golden files with
//! `UPDATE_GOLDEN=1 cargo test -p riskcalc --test cli_golden`.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn manifest_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

fn data(file: &str) -> String {
    manifest_dir().join("data").join(file).display().to_string()
}

/// Spawn the binary with a clean config environment.
fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_riskcalc"))
        .env_remove("RISKCALC_CONFIG")
        .current_dir(manifest_dir())
        .args(args)
        .output()
        .expect("failed to spawn riskcalc")
}

fn assert_golden(name: &str, actual: &[u8]) {
    let path = manifest_dir().join("tests/golden").join(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        fs::create_dir_all(path.parent().unwrap()).unwrap();
        fs::write(&path, actual).unwrap();
        return;
    }
    let expected = fs::read(&path)
        .unwrap_or_else(|_| panic!("missing golden file {} (run with UPDATE_GOLDEN=1)", path.display()));
    assert_eq!(
        actual,
        expected.as_slice(),
        "output for {name} diverged from golden file\n--- actual ---\n{}",
        String::from_utf8_lossy(actual)
    );
}

fn assert_success(output: &Output) {
    assert!(
        output.status.success(),
        "command failed: {}",
        String::from_utf8_lossy(&output.stderr)
    );
}

// ---------------------------------------------------------------------
// golden stdout per command
// ---------------------------------------------------------------------

#[test]
fn golden_assess_table() {
    let output = run(&[
        "assess",
        "--register",
        &data("register.toml"),
        "--config",
        &data("config.toml"),
    ]);
    assert_success(&output);
    let stdout = String::from_utf8_lossy(&output.stdout);
    assert!(stdout.contains("ALE 2500.00"), "{stdout}");
    assert!(stdout.contains("SOL 25000.00"), "{stdout}");
    assert_golden("assess_table.txt", &output.stdout);
}

#[test]
fn golden_assess_csv() {
    let output = run(&[
        "assess",
        "--register",
        &data("register.toml"),
        "--config",
        &data("config.toml"),
        "--format",
        "csv",
    ]);
    assert_success(&output);
    assert_golden("assess_csv.txt", &output.stdout);
}

#[test]
fn golden_sif_bands() {
    let minimum = run(&["sif", "--register", &data("register.toml"), "--asset", "srv-files"]);
    assert_success(&minimum);
    assert!(String::from_utf8_lossy(&minimum.stdout).contains("SI_f 0.5000 (Minimum)"));
    assert_golden("sif_minimum.txt", &minimum.stdout);

    let over = run(&["sif", "--register", &data("register.toml"), "--asset", "ws-cad"]);
    assert_success(&over);
    assert!(String::from_utf8_lossy(&over.stdout).contains("SI_f 1.2000 (OverInvested)"));
    assert_golden("sif_over_invested.txt", &over.stdout);

    let none = run(&["sif", "--register", &data("register.toml"), "--asset", "ws-office"]);
    assert_success(&none);
    assert!(String::from_utf8_lossy(&none.stdout).contains("SI_f 0.0000 (NoInvestment)"));
    assert_golden("sif_no_investment.txt", &none.stdout);
}

#[test]
fn golden_trend_table() {
    let output = run(&[
        "trend",
        "--prev",
        &data("losses_2006.csv"),
        "--curr",
        &data("losses_2007.csv"),
    ]);
    assert_success(&output);
    let stdout = String::from_utf8_lossy(&output.stdout);
    assert!(stdout.contains("total delta: 0.28"), "{stdout}");
    assert_golden("trend_table.txt", &output.stdout);
}

#[test]
fn golden_trend_csv() {
    let output = run(&[
        "trend",
        "--prev",
        &data("losses_2006.csv"),
        "--curr",
        &data("losses_2007.csv"),
        "--format",
        "csv",
    ]);
    assert_success(&output);
    let stdout = String::from_utf8_lossy(&output.stdout);
    assert!(stdout.starts_with("category,prev,curr,delta\n"), "{stdout}");
    assert_golden("trend_csv.txt", &output.stdout);
}

#[test]
fn golden_simulate() {
    let args = [
        "simulate",
        "--register",
        &data("register.toml"),
        "--asset",
        "srv-files",
        "--threat",
        "th-outage",
        "--years",
        "20000",
        "--seed",
        "42",
    ];
    let output = run(&args);
    assert_success(&output);
    assert_golden("simulate_table.txt", &output.stdout);
}

#[test]
fn golden_simulate_csv() {
    let output = run(&[
        "simulate",
        "--register",
        &data("register.toml"),
        "--asset",
        "srv-files",
        "--threat",
        "th-outage",
        "--years",
        "20000",
        "--seed",
        "42",
        "--format",
        "csv",
    ]);
    assert_success(&output);
    let stdout = String::from_utf8_lossy(&output.stdout);
    assert!(stdout.starts_with("metric,value\n"), "{stdout}");
    assert!(stdout.contains("analytic_ale,2500.00"), "{stdout}");
    assert_golden("simulate_csv.txt", &output.stdout);
}

#[test]
fn golden_matrix() {
    let output = run(&["matrix", "--config", &data("config.toml")]);
    assert_success(&output);
    assert_golden("matrix_table.txt", &output.stdout);
}

#[test]
fn simulate_converges_on_the_analytic_value() {
    let output = run(&[
        "simulate",
        "--register",
        &data("register.toml"),
        "--asset",
        "srv-files",
        "--threat",
        "th-outage",
        "--years",
        "1000000",
        "--seed",
        "42",
    ]);
    assert_success(&output);
    let stdout = String::from_utf8_lossy(&output.stdout);
    let ratio: f64 = stdout
        .lines()
        .find_map(|l| l.strip_prefix("ratio simulated/analytic: "))
        .expect("ratio line present")
        .parse()
        .expect("ratio parses");
    assert!(
        (0.99..=1.01).contains(&ratio),
        "1e6-year ratio {ratio} left [0.99, 1.01]"
    );
}

// ---------------------------------------------------------------------
// determinism
// ---------------------------------------------------------------------

#[test]
fn identical_runs_are_byte_identical() {
    let args = [
        "simulate",
        "--register",
        &data("register.toml"),
        "--asset",
        "srv-files",
        "--threat",
        "th-outage",
        "--years",
        "5000",
        "--seed",
        "7",
    ];
    let first = run(&args);
    let second = run(&args);
    assert_success(&first);
    assert_eq!(first.stdout, second.stdout);

    let mut different = args;
    different[9] = "8";
    let third = run(&different);
    assert_ne!(first.stdout, third.stdout, "seed must matter");
}

#[test]
fn curve_files_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let first = dir.path().join("a.dat");
    let second = dir.path().join("b.dat");
    for path in [&first, &second] {
        let output = run(&[
            "curve",
            "--risk",
            "0.25",
            "--points",
            "100",
            "--out",
            &path.display().to_string(),
        ]);
        assert_success(&output);
        assert_eq!(
            String::from_utf8_lossy(&output.stdout).trim(),
            path.display().to_string()
        );
    }
    let a = fs::read(&first).unwrap();
    assert_eq!(a, fs::read(&second).unwrap());
    assert_eq!(a.iter().filter(|b| **b == b'\n').count(), 100);
    assert!(a.starts_with(b"0.250000 1.000000\n"));
}

// ---------------------------------------------------------------------
// exit-code contract
// ---------------------------------------------------------------------

fn assert_fails_with(output: &Output, code: i32, needle: &str) {
    assert_eq!(output.status.code(), Some(code));
    assert!(
        output.stdout.is_empty(),
        "failures keep stdout clean: {}",
        String::from_utf8_lossy(&output.stdout)
    );
    let stderr = String::from_utf8_lossy(&output.stderr);
    assert!(!stderr.is_empty(), "non-zero exits must explain themselves");
    assert!(stderr.contains(needle), "stderr lacks {needle:?}: {stderr}");
}

#[test]
fn exit_codes_for_bad_inputs() {
    let output = run(&["assess", "--register", "/nonexistent/register.toml"]);
    assert_fails_with(&output, 1, "/nonexistent/register.toml");

    let dir = tempfile::tempdir().unwrap();
    let empty = dir.path().join("empty.toml");
    fs::write(&empty, "schema_version = 1\ncurrency = \"EUR\"\n").unwrap();
    let output = run(&["assess", "--register", &empty.display().to_string()]);
    assert_fails_with(&output, 1, "no assets");

    let output = run(&["sif", "--register", &data("register.toml"), "--asset", "ghost"]);
    assert_fails_with(&output, 1, "ghost");

    let output = run(&["sif", "--register", &data("register.toml"), "--asset", "dc-main"]);
    assert_fails_with(&output, 1, "equipment cost");

    let output = run(&[
        "simulate",
        "--register",
        &data("register.toml"),
        "--asset",
        "srv-files",
        "--threat",
        "th-flood",
    ]);
    assert_fails_with(&output, 1, "does not target");

    let blank = dir.path().join("blank.csv");
    fs::write(&blank, "").unwrap();
    let output = run(&[
        "trend",
        "--prev",
        &blank.display().to_string(),
        "--curr",
        &data("losses_2007.csv"),
    ]);
    assert_fails_with(&output, 1, "empty input");
}

#[test]
fn exit_codes_for_usage_errors() {
    let out = tempfile::tempdir().unwrap().path().join("c.dat");
    let output = run(&["curve", "--risk", "0", "--points", "100", "--out", &out.display().to_string()]);
    assert_fails_with(&output, 2, "acceptable risk");

    let output = run(&["curve", "--risk", "0.25", "--points", "1", "--out", &out.display().to_string()]);
    assert_fails_with(&output, 2, "2 points");

    // malformed flags are clap usage errors
    let output = run(&["assess", "--no-such-flag"]);
    assert_eq!(output.status.code(), Some(2));
    assert!(!output.stderr.is_empty());

    let output = run(&[]);
    assert_eq!(output.status.code(), Some(2));
    assert!(!output.stderr.is_empty());
}

// ---------------------------------------------------------------------
// help coverage
// ---------------------------------------------------------------------

#[test]
fn every_command_documents_its_flags() {
    let expectations: &[(&str, &[&str])] = &[
        ("assess", &["--register", "--config", "--format"]),
        ("sif", &["--register", "--asset"]),
        ("trend", &["--prev", "--curr", "--format"]),
        (
            "simulate",
            &["--register", "--asset", "--threat", "--years", "--seed", "--model", "--format"],
        ),
        ("curve", &["--risk", "--points", "--out", "--config"]),
        ("matrix", &["--config"]),
    ];
    for (command, flags) in expectations {
        let output = run(&[command, "--help"]);
        assert_success(&output);
        let help = String::from_utf8_lossy(&output.stdout);
        for flag in *flags {
            assert!(help.contains(flag), "{command} --help lacks {flag}: {help}");
        }
    }
    let output = run(&["--help"]);
    assert_success(&output);
    let help = String::from_utf8_lossy(&output.stdout);
    for (command, _) in expectations {
        assert!(help.contains(command), "top-level help lacks {command}");
    }
}

// ---------------------------------------------------------------------
// config discovery order
// ---------------------------------------------------------------------

const STRICT_CONFIG: &str = "schema_version = 1\nacceptable_risk = 0.01\n";

fn count_line(stdout: &[u8]) -> String {
    String::from_utf8_lossy(stdout)
        .lines()
        .find(|l| l.starts_with("curve verdicts"))
        .expect("assess output has a curve verdict line")
        .to_string()
}

#[test]
fn config_discovery_order() {
    let dir = tempfile::tempdir().unwrap();
    let strict = dir.path().join("strict.toml");
    fs::write(&strict, STRICT_CONFIG).unwrap();
    let register = data("register.toml");

    // defaults: acceptable risk 0.1 tolerates two of the three pairs
    let baseline = run(&["assess", "--register", &register]);
    assert_success(&baseline);
    assert_eq!(count_line(&baseline.stdout), "curve verdicts: pairs 3, T: 2, NT: 1");

    // environment variable points at the strict config
    let via_env = Command::new(env!("CARGO_BIN_EXE_riskcalc"))
        .env("RISKCALC_CONFIG", &strict)
        .current_dir(manifest_dir())
        .args(["assess", "--register", &register])
        .output()
        .unwrap();
    assert_success(&via_env);
    assert_eq!(count_line(&via_env.stdout), "curve verdicts: pairs 3, T: 1, NT: 2");

    // an explicit flag wins over the environment
    let via_flag = Command::new(env!("CARGO_BIN_EXE_riskcalc"))
        .env("RISKCALC_CONFIG", &strict)
        .current_dir(manifest_dir())
        .args(["assess", "--register", &register, "--config", &data("config.toml")])
        .output()
        .unwrap();
    assert_success(&via_flag);
    assert_eq!(count_line(&via_flag.stdout), "curve verdicts: pairs 3, T: 2, NT: 1");

    // a riskcalc.toml in the working directory is found last
    fs::write(dir.path().join("riskcalc.toml"), STRICT_CONFIG).unwrap();
    let via_cwd = Command::new(env!("CARGO_BIN_EXE_riskcalc"))
        .env_remove("RISKCALC_CONFIG")
        .current_dir(dir.path())
        .args(["assess", "--register", &register])
        .output()
        .unwrap();
    assert_success(&via_cwd);
    assert_eq!(count_line(&via_cwd.stdout), "curve verdicts: pairs 3, T: 1, NT: 2");
}

#[test]
fn identical_trend_tables_show_zero_deltas() {
    let output = run(&[
        "trend",
        "--prev",
        &data("losses_2007.csv"),
        "--curr",
        &data("losses_2007.csv"),
    ]);
    assert_success(&output);
    let stdout = String::from_utf8_lossy(&output.stdout);
    for line in stdout.lines() {
        if line.starts_with("total delta") {
            assert_eq!(line, "total delta: 0.00");
        }
    }
    let zero_rows = stdout
        .lines()
        .filter(|l| !l.starts_with("total delta") && l.ends_with("0.00"))
        .count();
    // 22 categories present in 2007 plus the total row
    assert_eq!(zero_rows, 23, "{stdout}");
}

#[test]
fn simulate_single_year_is_legal() {
    let output = run(&[
        "simulate",
        "--register",
        &data("register.toml"),
        "--asset",
        "srv-files",
        "--threat",
        "th-outage",
        "--years",
        "1",
        "--seed",
        "3",
    ]);
    assert_success(&output);
    let stdout = String::from_utf8_lossy(&output.stdout);
    assert!(stdout.contains("years: 1"));
    assert!(
        stdout.contains("std error: n/a"),
        "single-year std error is flagged as unavailable: {stdout}"
    );
}

// the curve written through the CLI matches the library's own output
#[test]
fn curve_output_path_is_printed_and_file_matches_library() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("curve.dat");
    let output = run(&[
        "curve",
        "--risk",
        "0.04",
        "--points",
        "7",
        "--out",
        &out.display().to_string(),
    ]);
    assert_success(&output);
    assert_eq!(
        String::from_utf8_lossy(&output.stdout).trim(),
        out.display().to_string()
    );
    let text = fs::read_to_string(&out).unwrap();
    let points = riskcalc::engine::iso_risk_curve(
        riskcalc::RiskScalar::new(0.04).unwrap(),
        7,
    )
    .unwrap();
    let rendered = riskcalc::registry::Render::render(
        points.as_slice(),
        riskcalc::registry::ReportFormat::Plotdata,
    )
    .unwrap();
    assert_eq!(text, rendered);
}
