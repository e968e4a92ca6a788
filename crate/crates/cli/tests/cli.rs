use std::path::Path;
use std::process::{Command, Output};

use incoherence::commands::CounterexampleSidecar;
use incoherence::format::{format_matrix, parse_matrix};
use incoherence_core::Matrix;
use proptest::prelude::*;

fn bin(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_incoherence"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.display().to_string()
}

#[test]
fn coherence_identity_and_boundary() {
    let dir = tempfile::tempdir().unwrap();
    let id = write(dir.path(), "id.txt", "4 4\n1 0 0 0\n0 1 0 0\n0 0 1 0\n0 0 0 1\n");
    let o = bin(&["coherence", &id], dir.path());
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("mu 0\n"));
    assert_eq!(text.matches("holds true").count(), 4);

    let ce = dir.path().join("ce");
    let o = bin(&["counterexample", "2", ce.to_str().unwrap()], dir.path());
    assert_eq!(o.status.code(), Some(0));
    let o = bin(&["coherence", "--json", ce.join("phi.txt").to_str().unwrap()], dir.path());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!((v["mu"].as_f64().unwrap() - 1.0 / 3.0).abs() < 1e-9);
    let verdicts = v["verdicts"].as_array().unwrap();
    assert_eq!(verdicts[0]["holds"], true);
    assert_eq!(verdicts[1]["holds"], false);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.txt", "2 2\n1 2\n3 oops\n");
    let o = bin(&["coherence", &bad], dir.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains(":3:"));

    let raw = write(dir.path(), "raw.txt", "2 2\n3 0\n4 1\n");
    assert_eq!(bin(&["coherence", &raw], dir.path()).status.code(), Some(3));
    assert_eq!(bin(&["coherence", "--normalize", &raw], dir.path()).status.code(), Some(0));

    // Duplicate columns: the second OMP step selects a dependent column.
    let dup = write(dir.path(), "dup.txt", "2 3\n1 1 0\n0 0 1\n");
    let sig = write(dir.path(), "sig.txt", "3 1\n1\n0\n0\n");
    assert_eq!(bin(&["run", &dup, &sig, "2"], dir.path()).status.code(), Some(4));

    let short = write(dir.path(), "short.txt", "2 1\n1\n0\n");
    assert_eq!(bin(&["run", &dup, &short, "1"], dir.path()).status.code(), Some(2));

    let blocker = write(dir.path(), "file", "x");
    let target = format!("{blocker}/sub");
    assert_eq!(bin(&["counterexample", "2", &target], dir.path()).status.code(), Some(2));
    assert_eq!(bin(&["counterexample", "65", "out"], dir.path()).status.code(), Some(2));
    assert_eq!(bin(&["no-such-command"], dir.path()).status.code(), Some(2));
}

#[test]
fn run_one_sparse_and_trace() {
    let dir = tempfile::tempdir().unwrap();
    let ce = dir.path().join("m");
    bin(&["counterexample", "3", ce.to_str().unwrap()], dir.path());
    let phi = ce.join("phi.txt");
    let sig = write(dir.path(), "sig.txt", "1 6\n0 0 0 0 -1.5 0\n");
    let o = bin(&["run", phi.to_str().unwrap(), &sig, "1"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("support 4\n"), "{text}");
    let residual: f64 = text
        .lines()
        .find_map(|l| l.strip_prefix("residual_norm "))
        .unwrap()
        .parse()
        .unwrap();
    assert!(residual <= 1e-10);

    let sig = write(dir.path(), "sig3.txt", "6 1\n0.3\n0\n-1\n0\n0\n2\n");
    let o = bin(&["run", "--trace", phi.to_str().unwrap(), &sig, "3"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    let records: Vec<serde_json::Value> = stdout(&o)
        .lines()
        .filter(|l| l.starts_with('{'))
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(records.len(), 3);
    let norms: Vec<f64> = records.iter().map(|r| r["residual_norm"].as_f64().unwrap()).collect();
    assert!(norms.windows(2).all(|w| w[1] <= w[0] * (1.0 + 1e-12)));
    assert_eq!(records[2]["support_so_far"].as_array().unwrap().len(), 3);
}

#[test]
fn run_recovers_support_on_orthonormal_matrix() {
    let dir = tempfile::tempdir().unwrap();
    let id = write(dir.path(), "id.txt", "3 3\n1 0 0\n0 1 0\n0 0 1\n");
    let sig = write(dir.path(), "s.txt", "3 1\n0\n4\n-2\n");
    let o = bin(&["run", "--json", &id, &sig, "2"], dir.path());
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["support"], serde_json::json!([1, 2]));
    assert_eq!(v["support_matches_input"], true);
}

#[test]
fn counterexample_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("k1");
    let o = bin(&["counterexample", "1", out.to_str().unwrap()], dir.path());
    let mu: f64 = stdout(&o).lines().find_map(|l| l.strip_prefix("mu ")).unwrap().parse().unwrap();
    assert!((mu - 1.0).abs() <= 1e-9);

    let out = dir.path().join("k4");
    let o = bin(&["counterexample", "4", out.to_str().unwrap()], dir.path());
    let mu: f64 = stdout(&o).lines().find_map(|l| l.strip_prefix("mu ")).unwrap().parse().unwrap();
    assert!((mu - 1.0 / 7.0).abs() <= 1e-9);
    let sidecar: CounterexampleSidecar =
        serde_json::from_str(&std::fs::read_to_string(out.join("counterexample.json")).unwrap()).unwrap();
    assert_eq!(sidecar.k, 4);
    assert_eq!(sidecar.x1.len(), 8);
    assert!(sidecar.ambiguity_gap <= 1e-9 && sidecar.null_residual <= 1e-9);
    let phi = parse_matrix(&std::fs::read_to_string(out.join("phi.txt")).unwrap(), "phi").unwrap();
    assert_eq!(phi.shape(), (7, 8));

    let out = dir.path().join("sq");
    bin(&["counterexample", "--square", "4", out.to_str().unwrap()], dir.path());
    let phi = parse_matrix(&std::fs::read_to_string(out.join("phi.txt")).unwrap(), "phi").unwrap();
    assert_eq!(phi.shape(), (8, 8));
}

#[test]
fn ric_subcommand() {
    let dir = tempfile::tempdir().unwrap();
    let ce = dir.path().join("m");
    bin(&["counterexample", "2", ce.to_str().unwrap()], dir.path());
    let o = bin(&["ric", "--json", ce.join("phi.txt").to_str().unwrap(), "2"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert!((v["delta_bruteforce"].as_f64().unwrap() - 1.0 / 3.0).abs() < 1e-9);
    assert_eq!(v["ric"], "computed");
    assert_eq!(bin(&["ric", ce.join("phi.txt").to_str().unwrap(), "9"], dir.path()).status.code(), Some(2));
}

fn phase_config(dir: &Path, name: &str, body: &str) -> String {
    write(dir, name, body)
}

#[test]
fn phase_is_deterministic_and_consistent() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = phase_config(
        dir.path(),
        "cfg.json",
        r#"{"m":12,"n":24,"k_range":[1,4],"trials":15,"seed":99,"ensemble":"gaussian","output_path":"a.csv"}"#,
    );
    assert_eq!(bin(&["phase", &cfg], dir.path()).status.code(), Some(0));
    let first = std::fs::read(dir.path().join("a.csv")).unwrap();
    assert_eq!(bin(&["phase", &cfg], dir.path()).status.code(), Some(0));
    let second = std::fs::read(dir.path().join("a.csv")).unwrap();
    assert_eq!(first, second);

    let text = String::from_utf8(first).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("K,trials,successes,mean_mu,theorem1_fraction"));
    for line in lines {
        let f: Vec<&str> = line.split(',').collect();
        let trials: usize = f[1].parse().unwrap();
        let successes: usize = f[2].parse().unwrap();
        assert!(successes <= trials);
        if f[4].parse::<f64>().unwrap() == 1.0 {
            assert_eq!(successes, trials);
        }
    }

    let o = bin(&["phase", "--seed", "7", &cfg], dir.path());
    assert_eq!(o.status.code(), Some(0));
    assert_ne!(std::fs::read(dir.path().join("a.csv")).unwrap(), second);
}

#[test]
fn phase_identity_ensemble_always_succeeds() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = phase_config(
        dir.path(),
        "id.json",
        r#"{"m":10,"n":10,"k_range":[1,10],"trials":5,"seed":1,"ensemble":"identity","output_path":"id.csv"}"#,
    );
    assert_eq!(bin(&["phase", &cfg], dir.path()).status.code(), Some(0));
    let text = std::fs::read_to_string(dir.path().join("id.csv")).unwrap();
    for (k, line) in text.lines().skip(1).enumerate() {
        assert_eq!(line, format!("{},5,5,0,1", k + 1));
    }
}

#[test]
fn phase_rejects_bad_configs() {
    let dir = tempfile::tempdir().unwrap();
    for body in [
        r#"{"m":4,"n":8,"k_range":[1,5],"trials":3,"seed":1,"ensemble":"gaussian","output_path":"x.csv"}"#,
        r#"{"m":4,"n":8,"k_range":[1,2],"trials":0,"seed":1,"ensemble":"gaussian","output_path":"x.csv"}"#,
        r#"{"m":4,"n":8,"k_range":[1,2],"trials":3,"seed":1,"ensemble":"fourier","output_path":"x.csv"}"#,
        r#"{"m":4,"n":8,"k_range":[1,2],"trials":3,"seed":1,"ensemble":"gaussian"}"#,
        "not json",
    ] {
        let cfg = phase_config(dir.path(), "c.json", body);
        assert_eq!(bin(&["phase", &cfg], dir.path()).status.code(), Some(2), "{body}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn matrix_text_round_trips_bit_exactly(
        (rows, cols, bits) in (1usize..6, 1usize..6).prop_flat_map(|(r, c)| {
            (Just(r), Just(c), prop::collection::vec(any::<f64>().prop_filter("finite", |v| v.is_finite()), r * c))
        })
    ) {
        let a = Matrix::new(rows, cols, bits).unwrap();
        let back = parse_matrix(&format_matrix(&a), "mem").unwrap();
        prop_assert_eq!(back.shape(), a.shape());
        for (x, y) in back.as_slice().iter().zip(a.as_slice()) {
            prop_assert_eq!(x.to_bits(), y.to_bits());
        }
    }
}
