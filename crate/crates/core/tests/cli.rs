use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use lemni::claims::ClaimResult;
use lemni::cli::{AreaReport, CapacityReport, ComponentsReport, Envelope, VerifyReport};

fn lemni(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lemni"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn area_json_round_trips() {
    let o = lemni(&["area", "--chebyshev", "8", "--depth", "12"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let env: Envelope<AreaReport> = serde_json::from_str(&text).unwrap();
    assert_eq!(env.schema, 1);
    assert!(env.body.certificate.upper <= 81.0 * std::f64::consts::PI / 16.0);
    let again = serde_json::to_value(&env).unwrap();
    assert_eq!(again, serde_json::from_str::<serde_json::Value>(&text).unwrap());
    let back: Envelope<AreaReport> = serde_json::from_value(again).unwrap();
    assert_eq!(back, env);
}

#[test]
fn components_of_example_polynomial() {
    let o = lemni(&["components", "--roots", "4;4;-4;-4", "--depth", "10"]);
    assert_eq!(o.status.code(), Some(0));
    let env: Envelope<ComponentsReport> = serde_json::from_str(&stdout(&o)).unwrap();
    let s = env.body.summary;
    assert_eq!(s.component_count, 2);
    assert!(s.components.iter().all(|c| c.diameter_upper <= 1.0));
}

#[test]
fn capacity_of_pair_example() {
    let o = lemni(&["capacity", "--set", r#"{"kind":"pair","p":2,"q":2.5}"#]);
    assert_eq!(o.status.code(), Some(0));
    let env: Envelope<CapacityReport> = serde_json::from_str(&stdout(&o)).unwrap();
    assert!((env.body.capacity.value - 0.75).abs() < 1e-15);
    assert!(env.body.capacity.exact);
}

#[test]
fn compose_from_file_source() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("p.json");
    fs::write(&file, r#"{"roots":[[0,0]]}"#).unwrap();
    let o = lemni(&["area", "--file", file.to_str().unwrap(), "--depth", "10"]);
    assert_eq!(o.status.code(), Some(0));
    let env: Envelope<AreaReport> = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(env.body.certificate.brackets(std::f64::consts::PI));

    let o = lemni(&["area", "--compose", "2:-4,0,1", "--depth", "10"]);
    assert_eq!(o.status.code(), Some(0));
    let env: Envelope<AreaReport> = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(env.body.polynomial.degree(), 4);
}

#[test]
fn exit_codes() {
    // usage errors name the flag
    let o = lemni(&["area", "--chebyshev", "3", "--depht", "4"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("--depht"));
    assert_eq!(
        lemni(&["area", "--chebyshev", "3", "--roots", "0"]).status.code(),
        Some(1)
    );
    assert_eq!(lemni(&["area", "--roots", "nan"]).status.code(), Some(1));
    // no interior cell certified at this depth
    assert_eq!(
        lemni(&["area", "--chebyshev", "32", "--depth", "2"]).status.code(),
        Some(2)
    );
    // lower bounds unreachable at this depth
    let o = lemni(&["verify", "interval_rate", "--depth", "2"]);
    assert_eq!(o.status.code(), Some(2));
    let env: Envelope<VerifyReport> = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(env.body.results[0].status.as_str(), "inconclusive");
}

fn files(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut out = Vec::new();
    for entry in walk(dir) {
        let rel = entry.strip_prefix(dir).unwrap().to_string_lossy().into_owned();
        out.push((rel, fs::read(&entry).unwrap()));
    }
    out.sort();
    out
}

fn walk(dir: &Path) -> Vec<std::path::PathBuf> {
    let mut v = Vec::new();
    for e in fs::read_dir(dir).unwrap() {
        let p = e.unwrap().path();
        if p.is_dir() {
            v.extend(walk(&p));
        } else {
            v.push(p);
        }
    }
    v
}

#[test]
fn outputs_are_byte_identical_across_runs() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    for dir in [&a, &b] {
        let out = dir.path().to_str().unwrap();
        let runs = [
            vec!["verify", "lemma_ball", "--out", out, "--csv"],
            vec![
                "sweep",
                "--family",
                "chebyshev",
                "--n",
                "2,4,8",
                "--depth",
                "10",
                "--out",
                out,
                "--csv",
            ],
            vec![
                "render",
                "--roots",
                "4;4;-4;-4",
                "--disk",
                "4,0,0.5",
                "--disk",
                "-4,0,0.5",
                "--out",
                out,
            ],
            vec!["area", "--chebyshev", "5", "--svg", "--out", out],
        ];
        for args in runs {
            let o = lemni(&args);
            assert_eq!(
                o.status.code(),
                Some(0),
                "{args:?}: {}",
                String::from_utf8_lossy(&o.stderr)
            );
        }
    }
    let (fa, fb) = (files(a.path()), files(b.path()));
    let names: Vec<_> = fa.iter().map(|(n, _)| n.as_str()).collect();
    for expected in [
        "area.json",
        "area.svg",
        "render.svg",
        "render.json",
        "sweep.csv",
        "sweep.json",
        "verify.csv",
    ] {
        assert!(names.contains(&expected), "{expected} missing from {names:?}");
    }
    assert!(names
        .iter()
        .any(|n| n.starts_with("claims/lemma_ball/") && n.ends_with(".json")));
    assert_eq!(fa, fb);
}

#[test]
fn sweep_csv_columns() {
    let o = lemni(&[
        "sweep", "--family", "circle", "--radius", "1.2", "--n", "6,8", "--depth", "9", "--csv",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("n,lower,upper,cells_inside,cells_undecided,elapsed_ms")
    );
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0][0], "6");
    assert_eq!(rows[0][5], "0.0000000000000000e0");
    let upper: f64 = rows[1][2].parse().unwrap();
    assert!(upper < 0.5);
}

#[test]
fn claim_artifacts_reparse() {
    let dir = tempfile::tempdir().unwrap();
    let o = lemni(&[
        "verify",
        "chebyshev_area_sandwich",
        "--depth",
        "10",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let env: Envelope<VerifyReport> = serde_json::from_str(&stdout(&o)).unwrap();
    let r = &env.body.results[0];
    assert_eq!(r.artifacts.len(), 2);
    let json_path = r.artifacts.iter().find(|a| a.ends_with(".json")).unwrap();
    let on_disk: ClaimResult = serde_json::from_str(&fs::read_to_string(dir.path().join(json_path)).unwrap()).unwrap();
    assert_eq!(&on_disk, r);
}

#[test]
fn verify_with_explicit_params() {
    let params = r#"{"claim":"main_theorem_decay","t":1.5,"n_min":2,"n_max":12,"depth":11}"#;
    let o = lemni(&["verify", "--params", params]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let env: Envelope<VerifyReport> = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(env.body.results[0].numbers["slope"] <= -0.6);
}

#[test]
fn render_to_stdout() {
    let o = lemni(&["render", "--chebyshev", "4", "--depth", "8"]);
    assert_eq!(o.status.code(), Some(0));
    let svg = stdout(&o);
    assert!(svg.starts_with("<svg"));
    assert_eq!(svg.matches(r#"r="3"/>"#).count(), 4);
}
