use std::process::{Command, Output};

fn jfe(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_jfe"))
        .args(args)
        .env_remove("JE_DENSE_CAP")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

/// Column `name` of every data row.
fn column(csv: &str, name: &str) -> Vec<String> {
    let mut lines = csv.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let idx = header
        .iter()
        .position(|h| *h == name)
        .unwrap_or_else(|| panic!("no column {name}"));
    lines.map(|l| l.split(',').nth(idx).unwrap().to_string()).collect()
}

#[test]
fn worked_example_on_every_route() {
    let out = jfe(&[
        "entropy",
        "--n",
        "4",
        "--k",
        "2",
        "--alpha",
        "0,1",
        "--distances",
        "0",
        "--route",
        "all",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    assert_eq!(column(&text, "route"), ["oracle", "modules", "heun"]);
    for s in column(&text, "entropy") {
        assert!((s.parse::<f64>().unwrap() - 0.636514).abs() < 1e-6);
    }
    for d in column(&text, "max_discrepancy") {
        assert!(d.parse::<f64>().unwrap() <= 1e-10);
    }
}

#[test]
fn spectrum_listing() {
    let out = jfe(&[
        "entropy",
        "--n",
        "4",
        "--k",
        "2",
        "--alpha",
        "0,1",
        "--distances",
        "0",
        "--spectrum",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "route,lambda,multiplicity\nmodules,0.333333333333,1\n");
}

#[test]
fn whole_graph_is_pure() {
    let out = jfe(&[
        "entropy",
        "--n",
        "30",
        "--k",
        "15",
        "--distances",
        "0..15",
        "--fill-levels",
        "4",
    ]);
    assert!(out.status.success());
    let s: f64 = column(&stdout(&out), "entropy")[0].parse().unwrap();
    assert!(s.abs() < 1e-6, "{s}");
}

#[test]
fn large_ball_through_heun() {
    let out = jfe(&[
        "entropy",
        "--n",
        "30",
        "--k",
        "15",
        "--cutoff",
        "7",
        "--fill-levels",
        "4",
        "--route",
        "heun",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let size: u64 = column(&text, "sv_size")[0].parse().unwrap();
    let expect: u64 = (0..=7u64).map(|i| binom(15, i).pow(2)).sum();
    assert_eq!(size, expect);
    let s: f64 = column(&text, "entropy")[0].parse().unwrap();
    assert!(s > 0.0 && s <= size as f64 * std::f64::consts::LN_2);
}

fn binom(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[test]
fn exit_codes() {
    // dense capacity
    let out = jfe(&[
        "entropy",
        "--n",
        "30",
        "--k",
        "15",
        "--distances",
        "0",
        "--route",
        "oracle",
    ]);
    assert_eq!(out.status.code(), Some(3));
    let out = Command::new(env!("CARGO_BIN_EXE_jfe"))
        .args([
            "entropy",
            "--n",
            "12",
            "--k",
            "6",
            "--distances",
            "0",
            "--route",
            "oracle",
        ])
        .env("JE_DENSE_CAP", "100")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    // invalid graph, level outside the spectrum, distance out of range
    assert_eq!(
        jfe(&["entropy", "--n", "3", "--k", "2", "--distances", "0"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        jfe(&["entropy", "--n", "6", "--k", "3", "--se", "7", "--distances", "0"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        jfe(&["entropy", "--n", "6", "--k", "3", "--distances", "5"])
            .status
            .code(),
        Some(2)
    );
    // heun needs a ball
    let out = jfe(&[
        "entropy",
        "--n",
        "8",
        "--k",
        "4",
        "--distances",
        "1,3",
        "--route",
        "heun",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn energies_mark_the_ground_state() {
    let out = jfe(&["energies", "--n", "4", "--k", "2", "--alpha", "0,1"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(column(&text, "occupied"), ["true", "false", "false"]);
    assert_eq!(column(&text, "degeneracy"), ["2", "3", "1"]);
}

#[test]
fn exponential_hopping_energies_increase() {
    let out = jfe(&[
        "energies",
        "--n",
        "10",
        "--k",
        "4",
        "--exp-hopping",
        "1",
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let omegas: Vec<f64> = v
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["omega"].as_f64().unwrap())
        .collect();
    assert_eq!(omegas.len(), 5);
    assert!(omegas.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn quick_verify_passes() {
    let out = jfe(&["verify", "--quick"]);
    assert!(out.status.success(), "{}", stdout(&out));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["quick"], serde_json::json!(true));
    assert!(v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["passed"] == serde_json::json!(true)));
}

#[test]
fn sweeps_echo_their_inputs() {
    let out = jfe(&[
        "sweep", "fig3b", "--n", "8", "--k", "4", "--levels", "1,2", "--route", "oracle",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    assert_eq!(column(&text, "levels_filled"), ["1", "1", "1", "1", "2", "2", "2", "2"]);
    assert_eq!(column(&text, "cutoff"), ["0", "1", "2", "3", "0", "1", "2", "3"]);

    let out = jfe(&["sweep", "fig4", "--modules", "6.5:7.5"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).lines().count(), 1 + 14);

    let out = jfe(&["sweep", "fig2a", "--n-max", "12"]);
    assert!(out.status.success());
    assert!(column(&stdout(&out), "neighborhood").contains(&"k/4".to_string()));
}

#[test]
fn output_file_matches_stdout() {
    let dir = std::env::temp_dir().join(format!("jfe-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("fig2b.json");
    let args = ["sweep", "fig2b", "--n", "10", "--k", "5", "--format", "json"];
    let direct = jfe(&args);
    let mut with_file = args.to_vec();
    with_file.extend(["--output", path.to_str().unwrap()]);
    assert!(jfe(&with_file).status.success());
    assert_eq!(std::fs::read(&path).unwrap(), direct.stdout);
    std::fs::remove_dir_all(&dir).unwrap();
}
