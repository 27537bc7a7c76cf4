use std::path::Path;
use std::process::{Command, Output};

use riemann_limit_cli::output::{ProfileDocument, SweepDocument};

const TWO_SHOCK: [&str; 8] = ["--ul", "1", "--rhol", "1", "--ur", "-1", "--rhor", "1"];
const SPREADING: [&str; 8] = ["--ul", "-1", "--rhol", "1", "--ur", "1", "--rhor", "1"];

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_riemann-limit"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn with(cmd: &str, data: &[&str], extra: &[&str]) -> Vec<String> {
    std::iter::once(cmd)
        .chain(data.iter().copied())
        .chain(extra.iter().copied())
        .map(String::from)
        .collect()
}

fn run_v(args: &[String]) -> Output {
    let refs: Vec<&str> = args.iter().map(String::as_str).collect();
    run(&refs)
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn read_csv(path: &Path) -> (Vec<String>, Vec<Vec<String>>) {
    let mut r = csv::Reader::from_path(path).unwrap();
    let header = r.headers().unwrap().iter().map(String::from).collect();
    let rows = r
        .records()
        .map(|rec| rec.unwrap().iter().map(String::from).collect())
        .collect();
    (header, rows)
}

#[test]
fn exit_codes_follow_failure_class() {
    assert_eq!(
        run_v(&with("solve", &TWO_SHOCK, &["--eps", "0.01"])).status.code(),
        Some(0)
    );
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(
        run_v(&with("solve", &TWO_SHOCK, &["--eps", "-1"])).status.code(),
        Some(2)
    );
    assert_eq!(run_v(&with("solve", &TWO_SHOCK, &["--bogus"])).status.code(), Some(2));
    let overlap = ["--ul", "-0.01", "--rhol", "1", "--ur", "0.01", "--rhor", "1"];
    let o = run_v(&with("solve", &overlap, &["--eps", "1"]));
    assert_eq!(o.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&o.stderr).contains("overlap"));
}

#[test]
fn invalid_density_names_the_flag() {
    let o = run(&[
        "solve", "--ul", "1", "--rhol", "0", "--ur", "-1", "--rhor", "1", "--eps", "0.1",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("--rhol"));
}

#[test]
fn unwritable_output_is_an_io_failure() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("missing").join("out.csv");
    let o = run_v(&with(
        "solve",
        &TWO_SHOCK,
        &["--eps", "0.01", "--out", out.to_str().unwrap()],
    ));
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn two_shock_profile_has_two_transitions() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("p.csv");
    let o = run_v(&with(
        "sample",
        &TWO_SHOCK,
        &[
            "--eps",
            "0.01",
            "--t",
            "1",
            "--n",
            "401",
            "--out",
            out.to_str().unwrap(),
        ],
    ));
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let (header, rows) = read_csv(&out);
    assert_eq!(header, ["x", "t", "u", "rho", "region_tag"]);
    assert_eq!(rows.len(), 401);
    let transitions = rows.windows(2).filter(|w| w[0][4] != w[1][4]).count();
    assert_eq!(transitions, 2);
    assert!(!out.with_extension("delta.csv").exists());
}

#[test]
fn vacuum_region_has_zero_density() {
    let o = run_v(&with(
        "sample",
        &SPREADING,
        &["--eps", "0.01", "--t", "1", "--n", "101"],
    ));
    assert!(o.status.success());
    let text = stdout(&o);
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let mut vacuum = 0;
    for rec in r.records() {
        let rec = rec.unwrap();
        if rec[4].starts_with("vacuum") {
            vacuum += 1;
            assert_eq!(rec[3].parse::<f64>().unwrap(), 0.0);
            let x: f64 = rec[0].parse().unwrap();
            assert!((rec[2].parse::<f64>().unwrap() - x).abs() < 1e-15);
        }
    }
    assert!(vacuum > 10);
}

#[test]
fn sweep_header_and_monotone_error() {
    let o = run_v(&with(
        "sweep",
        &TWO_SHOCK,
        &[
            "--eps", "0.1", "--eps", "1e-3", "--eps", "1e-6", "--eps", "1e-12", "--eps", "1e-300",
        ],
    ));
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(
        text.lines().next().unwrap(),
        "eps,u_star,log_rho_star,eps_p_rho_star,s1,s2,d_coeff,err_u,err_l,err_w"
    );
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let err_l: Vec<f64> = r.records().map(|rec| rec.unwrap()[8].parse().unwrap()).collect();
    assert_eq!(err_l.len(), 5);
    assert!(err_l.windows(2).all(|w| w[1] < w[0]), "{err_l:?}");
}

#[test]
fn json_sweep_round_trips_bit_exactly() {
    let args = with("sweep", &TWO_SHOCK, &["--eps", "0.3", "--eps", "1e-7"]);
    let json = run_v(&[args.clone(), vec!["--format".into(), "json".into()]].concat());
    let csv_out = run_v(&args);
    let doc: SweepDocument = serde_json::from_slice(&json.stdout).unwrap();
    let text = stdout(&csv_out);
    let mut r = csv::Reader::from_reader(text.as_bytes());
    for (row, rec) in doc.records.iter().zip(r.records()) {
        let rec = rec.unwrap();
        let vals: Vec<f64> = rec.iter().map(|v| v.parse().unwrap()).collect();
        let from_json = [
            row.eps,
            row.u_star,
            row.log_rho_star,
            row.eps_p_rho_star,
            row.s1,
            row.s2,
            row.d_coeff,
            row.err_u,
            row.err_l,
            row.err_w,
        ];
        for (a, b) in vals.iter().zip(from_json) {
            assert_eq!(a.to_bits(), b.to_bits());
        }
    }
    let again = serde_json::to_vec_pretty(&doc).unwrap();
    let doc2: SweepDocument = serde_json::from_slice(&again).unwrap();
    assert_eq!(doc, doc2);
}

#[test]
fn delta_side_table_goes_next_to_output() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("alt.csv");
    let o = run_v(&with(
        "sample",
        &TWO_SHOCK,
        &[
            "--eps",
            "0.5",
            "--t",
            "1",
            "--model",
            "alt",
            "--out",
            out.to_str().unwrap(),
        ],
    ));
    assert!(o.status.success());
    let (header, rows) = read_csv(&out.with_extension("delta.csv"));
    assert_eq!(header, ["speed", "w0", "carried_u"]);
    assert_eq!(rows.len(), 1);
    let v: Vec<f64> = rows[0].iter().map(|s| s.parse().unwrap()).collect();
    // speed and carried velocity (u_l + u_r)/2 + eps; weight jump (rho_l + rho_r)/2 + eps (rho_r - rho_l)
    assert_eq!(v, [0.5, 2.0, 0.5]);
}

#[test]
fn json_profile_keys() {
    let o = run_v(&with(
        "sample",
        &TWO_SHOCK,
        &["--eps", "0.1", "--t", "0.5", "--n", "11", "--format", "json"],
    ));
    let value: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let keys: Vec<&String> = value.as_object().unwrap().keys().collect();
    assert_eq!(keys, ["meta", "profile", "waves"]);
    let doc: ProfileDocument = serde_json::from_value(value).unwrap();
    assert_eq!(doc.profile.len(), 11);
    assert_eq!(doc.waves.len(), 5);
}

#[test]
fn limit_lists_delta_for_both_models() {
    for model in ["base", "alt"] {
        let o = run_v(&with("limit", &TWO_SHOCK, &["--model", model]));
        assert!(o.status.success());
        let text = stdout(&o);
        let row = text.lines().find(|l| l.starts_with("1,delta")).expect("delta row");
        let f: Vec<&str> = row.split(',').collect();
        assert_eq!(f[8].parse::<f64>().unwrap(), 2.0);
        assert_eq!(f[9].parse::<f64>().unwrap(), 0.0);
    }
}

#[test]
fn oracle_reports_summary() {
    let o = run_v(&with(
        "oracle",
        &TWO_SHOCK,
        &["--eps", "0.05", "--t", "0.4", "--n", "200"],
    ));
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    let (_, summary) = text.split_once("\n\n").expect("summary block");
    let mut r = csv::Reader::from_reader(summary.as_bytes());
    let rec = r.records().next().unwrap().unwrap();
    assert_eq!(&rec[0], "200");
    let mass: f64 = rec[6].parse().unwrap();
    assert!(mass < 1e-12);
    let rel_rho: f64 = rec[5].parse().unwrap();
    assert!(rel_rho < 0.2);
}
