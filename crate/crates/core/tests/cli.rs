//! End-to-end checks of the `bestarm` binary: output contents, exit codes,
//! and the stdout/stderr split.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_bestarm"))
}

fn config(name: &str) -> String {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "configs", name]
        .iter()
        .collect();
    path.to_str().unwrap().to_owned()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn complexity_reports_kappa_8_for_easy_model() {
    let out = bin()
        .args(["complexity", "--model", &config("easy.json")])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.lines().any(|l| l == "kappa_B=8"), "{text}");
    assert!(text.contains("optimal_alpha=0.5"), "{text}");
}

#[test]
fn complexity_reports_kappa_20000_for_difficult_model() {
    let out = bin()
        .args(["complexity", "--model", &config("difficult.json")])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(
        stdout(&out).lines().any(|l| l.starts_with("kappa_B=20000")),
        "{}",
        stdout(&out)
    );
}

#[test]
fn complexity_json_and_oracle() {
    let out = bin()
        .args([
            "complexity",
            "--model",
            &config("bernoulli.json"),
            "--json",
            "--oracle",
            "--grid",
            "400",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("\"c_star\""), "{text}");
    assert!(text.contains("oracle_c_star="), "{text}");
}

#[test]
fn rates_single_row() {
    let out = bin()
        .args(["rates", "--kind", "robbins", "--delta", "0.5", "--t-max", "1"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("t,beta"));
    let row = lines.next().unwrap();
    assert!(row.starts_with("1,1.38629"), "{row}");
    assert_eq!(lines.next(), None);
}

#[test]
fn bound_evaluates() {
    let out = bin()
        .args(["bound", "--x", "10", "--beta-exp", "1.5"])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(
        stdout(&out).contains("bound=0.0006830045981967"),
        "{}",
        stdout(&out)
    );
}

#[test]
fn simulate_zero_reps_exits_2() {
    let out = bin()
        .args([
            "simulate",
            "--model",
            &config("easy.json"),
            "--strategy",
            &config("elimination_robbins.json"),
            "--reps",
            "0",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn simulate_missing_model_exits_2() {
    let out = bin()
        .args([
            "simulate",
            "--model",
            "/nonexistent/model.json",
            "--strategy",
            &config("elimination_robbins.json"),
            "--reps",
            "10",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn simulate_model_strategy_mismatch_exits_3() {
    // the Bernoulli KL rule on a Gaussian model fails at run time
    let out = bin()
        .args([
            "simulate",
            "--model",
            &config("easy.json"),
            "--strategy",
            &config("bernoulli_kl.json"),
            "--reps",
            "10",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn simulate_emits_csv_and_keeps_diagnostics_on_stderr() {
    let out = bin()
        .args([
            "simulate",
            "--model",
            &config("easy.json"),
            "--strategy",
            &config("elimination_robbins.json"),
            "--reps",
            "200",
            "--seed",
            "7",
            "--progress",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "sweep_param,replications,error_prob,error_stderr,mean_tau,\
         tau_p50,tau_p90,tau_p99,censored_frac,seed,error"
    );
    let row = lines.next().unwrap();
    assert!(row.starts_with("0.1,200,"), "{row}");
    assert!(row.ends_with(",7,"), "{row}");
    let diag = String::from_utf8(out.stderr).unwrap();
    assert!(diag.contains("config:"), "{diag}");
    assert!(diag.contains("progress:"), "{diag}");
}

#[test]
fn simulate_seed_defaults_to_ab_seed_env() {
    let run = |env: Option<&str>| {
        let mut cmd = bin();
        cmd.args([
            "simulate",
            "--model",
            &config("easy.json"),
            "--strategy",
            &config("elimination_robbins.json"),
            "--reps",
            "50",
        ]);
        cmd.env_remove("AB_SEED");
        if let Some(seed) = env {
            cmd.env("AB_SEED", seed);
        }
        let out = cmd.output().unwrap();
        assert!(out.status.success());
        stdout(&out)
    };
    let with_env = run(Some("123"));
    assert!(with_env.lines().nth(1).unwrap().ends_with(",123,"), "{with_env}");
    let default = run(None);
    assert!(default.lines().nth(1).unwrap().ends_with(",0,"), "{default}");
}

#[test]
fn sweep_delta_rows_in_request_order() {
    let out = bin()
        .args([
            "simulate",
            "--model",
            &config("easy.json"),
            "--strategy",
            &config("elimination_robbins.json"),
            "--reps",
            "100",
            "--seed",
            "1",
            "--sweep-delta",
            "0.5,0.1",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = stdout(&out);
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(rows.len(), 2);
    assert!(rows[0].starts_with("0.5,"));
    assert!(rows[1].starts_with("0.1,"));
}

#[test]
fn unknown_flag_rejected() {
    let out = bin()
        .args(["complexity", "--model", &config("easy.json"), "--bogus"])
        .output()
        .unwrap();
    assert!(!out.status.success());
}
