use std::process::{Command, Output};

fn grav_bell(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_grav-bell"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn value(report: &str, key: &str) -> String {
    report
        .lines()
        .find_map(|l| l.strip_prefix(&format!("{key}:")))
        .unwrap_or_else(|| panic!("missing {key} in\n{report}"))
        .trim()
        .to_string()
}

#[test]
fn rotated_franson_is_post_selectable() {
    let o = grav_bell(&[
        "delays",
        "--kind",
        "franson-rotated",
        "--l2p",
        "1e4",
        "--height",
        "1e4",
        "--window",
        "1e-18",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    assert_eq!(value(&out, "feasible"), "true");
    let d: f64 = value(&out, "delta_g1_g2p_s").parse().unwrap();
    assert!((d / 3.64e-17 - 1.0).abs() < 2e-3, "{d}");
}

#[test]
fn flat_franson_has_no_delays() {
    let o = grav_bell(&[
        "delays", "--kind", "franson", "--l2p", "1e4", "--height", "1e4", "--dtau", "0", "--g", "0",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    for key in ["g1_g1p", "g2_g2p", "g1_g2", "g1p_g2p", "g1_g2p", "g2_g1p"] {
        let d: f64 = value(&out, &format!("delta_{key}_s")).parse().unwrap();
        assert_eq!(d, 0.0, "{key}");
    }
    assert_eq!(value(&out, "feasible"), "false");
}

#[test]
fn rotated_hugged_delays_are_opposite() {
    let o = grav_bell(&[
        "delays",
        "--kind",
        "hugged-rotated",
        "--l2p",
        "1e4",
        "--height",
        "1e4",
        "--format",
        "csv",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("quantity,value\n"));
    let get = |k: &str| -> f64 {
        out.lines()
            .find_map(|l| l.strip_prefix(&format!("{k},")))
            .unwrap()
            .parse()
            .unwrap()
    };
    assert_eq!(get("delta_g1_g2_s"), -get("delta_g1p_g2p_s"));
    assert!(get("delta_g1_g2_s") < 0.0);
}

#[test]
fn invalid_flags_exit_with_usage_code_and_name_the_flag() {
    for (args, flag) in [
        (vec!["delays", "--l2p", "-5"], "--l2p"),
        (vec!["delays", "--height", "1e14"], "--height"),
        (vec!["delays", "--kind", "triangle"], "--kind"),
        (vec!["critical-area", "--bandwidth", "2e-6"], "--bandwidth"),
        (
            vec!["sweep", "--variable", "area", "--start", "1", "--stop", "0"],
            "--stop",
        ),
        (vec!["probabilities", "--grid-points", "11"], "--grid-points"),
        (vec!["figure", "fig9"], "fig9"),
        (vec!["delays", "--g", "-1"], "--g"),
    ] {
        let o = grav_bell(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(stderr(&o).contains(flag), "{args:?}: {}", stderr(&o));
    }
    assert_eq!(grav_bell(&[]).status.code(), Some(2));
    assert_eq!(grav_bell(&["--help"]).status.code(), Some(0));
}

#[test]
fn numerical_failures_exit_with_code_three() {
    // a delay of microseconds makes the integrand oscillate far beyond what the rule resolves
    let o = grav_bell(&["probabilities", "--l2p", "1e9", "--method", "quadrature"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("did not converge"));
}

#[test]
fn tabulated_spectrum_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("spectrum.txt");
    std::fs::write(&path, "omega1 omega2 density\n0 0 1\n0 1 1\n1 0 1\n1 1 1\n").unwrap();
    let file = path.to_str().unwrap();
    let o = grav_bell(&[
        "probabilities",
        "--spectrum-file",
        file,
        "--method",
        "closed-form",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("--method"));
    let o = grav_bell(&["probabilities", "--spectrum-file", file, "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(stdout(&o).lines().count(), 3);
}

#[test]
fn unnormalized_spectrum_file_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("spectrum.txt");
    std::fs::write(&path, "omega1 omega2 density\n0 0 1\n0 1 1\n1 0 1\n1 1 5\n").unwrap();
    let o = grav_bell(&["probabilities", "--spectrum-file", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("--spectrum-file"));
}

#[test]
fn probabilities_methods_agree() {
    let o = grav_bell(&["probabilities", "--format", "csv", "--alpha", "0.3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    let rows: Vec<Vec<f64>> = out
        .lines()
        .skip(1)
        .map(|l| l.split(',').skip(1).map(|v| v.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 3);
    for r in &rows[1..] {
        for (a, b) in r.iter().zip(&rows[0]) {
            assert!((a - b).abs() < 1e-6);
        }
    }
}

#[test]
fn critical_area_report() {
    let o = grav_bell(&["critical-area", "--bandwidth", "644.2e-9"]);
    assert_eq!(o.status.code(), Some(0));
    let a: f64 = value(&stdout(&o), "critical_area_m2").parse().unwrap();
    assert!((a / 8.52e8 - 1.0).abs() < 2e-3, "{a}");

    let o = grav_bell(&["critical-area", "--sigma1", "4.448e15", "--sigma2", "6.152e15"]);
    let halved: f64 = value(&stdout(&o), "critical_area_m2").parse().unwrap();
    assert!((halved / (a / 2.0) - 1.0).abs() < 2e-3);

    let o = grav_bell(&["critical-area", "--g", "0"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("no finite critical area"));
}

#[test]
fn sweep_csv_is_deterministic_and_follows_schema() {
    let args = [
        "sweep",
        "--variable",
        "area",
        "--start",
        "0",
        "--stop",
        "2e9",
        "--points",
        "21",
    ];
    let a = grav_bell(&args);
    let b = grav_bell(&args);
    assert_eq!(a.status.code(), Some(0), "{}", stderr(&a));
    assert_eq!(a.stdout, b.stdout);
    let out = stdout(&a);
    assert_eq!(
        out.lines().next().unwrap(),
        "index,area_m2,delta_tau_s,visibility,p_pp,p_pm,p_mp,p_mm,E,sigma,sigma_classical"
    );
    assert_eq!(out.lines().count(), 22);
    let second: Vec<&str> = out.lines().nth(2).unwrap().split(',').collect();
    assert_eq!(second[0], "1");
    assert_eq!(second[1], "1.00000000000e8");

    let o = grav_bell(&[
        "sweep",
        "--variable",
        "height",
        "--start",
        "0",
        "--stop",
        "1e4",
        "--points",
        "3",
        "--quantities",
        "sigma",
    ]);
    assert_eq!(
        stdout(&o).lines().next().unwrap(),
        "index,height_m,delta_tau_s,sigma"
    );
}

#[test]
fn flat_sweep_has_constant_sigma() {
    let o = grav_bell(&[
        "sweep",
        "--variable",
        "length",
        "--start",
        "0",
        "--stop",
        "1e5",
        "--points",
        "5",
        "--g",
        "0",
        "--quantities",
        "sigma",
    ]);
    let sigmas: Vec<String> = stdout(&o)
        .lines()
        .skip(1)
        .map(|l| l.rsplit(',').next().unwrap().to_string())
        .collect();
    assert!(sigmas.iter().all(|s| *s == sigmas[0]));
}

#[test]
fn figure_written_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fig4.csv");
    let o = grav_bell(&["figure", "fig4", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("delta_lambda_m,area_m2,delta_tau_s,visibility,sigma,critical_area_m2\n"));
    let first: Vec<f64> = text
        .lines()
        .nth(1)
        .unwrap()
        .split(',')
        .map(|v| v.parse().unwrap())
        .collect();
    assert!((first[4] - 2.0 * 2f64.sqrt()).abs() < 1e-10);
}

#[test]
fn figure_help_mentions_both_bandwidths() {
    let o = grav_bell(&["figure", "--help"]);
    let text = stdout(&o);
    assert!(text.contains("644.8") && text.contains("644.2"));
}
