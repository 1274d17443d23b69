use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

use homcount::canon::enumerate_graphs;

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_homcount")
}

fn run(args: &[&str]) -> Output {
    Command::new(bin()).args(args).output().expect("binary runs")
}

fn run_with_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(bin())
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn plain_count_is_a_bare_number() {
    let o = run(&[
        "--format",
        "plain",
        "count",
        "--kind",
        "hom",
        "--g",
        data("p3.graph").to_str().unwrap(),
        "--h",
        data("k2.graph").to_str().unwrap(),
    ]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "2\n");
}

#[test]
fn pattern_can_come_from_stdin() {
    let h = data("k3.graph");
    let o = run_with_stdin(
        &[
            "--format",
            "plain",
            "count",
            "--kind",
            "vsurj",
            "--g",
            "-",
            "--h",
            h.to_str().unwrap(),
        ],
        "vertices 3\nedge 0 1\nedge 1 2\nedge 0 2\n",
    );
    assert!(o.status.success());
    assert_eq!(stdout(&o), "6\n");
}

#[test]
fn automatic_path_matches_forced_brute_force() {
    let dir = tempfile::tempdir().unwrap();
    let graphs: Vec<_> = enumerate_graphs(3).into_iter().map(|(_, g)| g).collect();
    let paths: Vec<PathBuf> = graphs
        .iter()
        .enumerate()
        .map(|(i, g)| {
            let p = dir.path().join(format!("g{i}.graph"));
            std::fs::write(&p, g.to_text()).unwrap();
            p
        })
        .collect();
    // A spread of targets in and out of the tractable families.
    for h in paths.iter().step_by(3) {
        for g in paths.iter().step_by(4) {
            for kind in ["hom", "vsurj", "vesurj"] {
                let base = [
                    "count",
                    "--kind",
                    kind,
                    "--g",
                    g.to_str().unwrap(),
                    "--h",
                    h.to_str().unwrap(),
                ];
                let auto = json(&run(&base));
                let mut forced_args = base.to_vec();
                forced_args.push("--force-bruteforce");
                let forced = json(&run(&forced_args));
                assert_eq!(auto["count"], forced["count"], "{kind} {g:?} {h:?}");
                assert_eq!(forced["path"], "bruteforce");
            }
        }
    }
}

#[test]
fn exit_codes() {
    let k2 = data("k2.graph");
    let k2 = k2.to_str().unwrap();
    // Usage: unknown subcommand, missing pattern graph.
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["count", "--kind", "hom", "--h", k2]).status.code(), Some(2));
    assert_eq!(run(&["recover", "--h", k2, "--g", k2]).status.code(), Some(2));
    // Parse: duplicate edge line, missing file.
    let bad = data("bad_duplicate.graph");
    assert_eq!(run(&["classify", "--h", bad.to_str().unwrap()]).status.code(), Some(3));
    assert_eq!(run(&["classify", "--h", "/nonexistent.graph"]).status.code(), Some(3));
    // Precondition: budget exceeded, image size limit.
    let c5 = data("c5.graph");
    let o = run(&[
        "count",
        "--kind",
        "hom",
        "--g",
        c5.to_str().unwrap(),
        "--h",
        data("k3.graph").to_str().unwrap(),
        "--budget",
        "10",
    ]);
    assert_eq!(o.status.code(), Some(4));
    let dir = tempfile::tempdir().unwrap();
    let big = dir.path().join("big.graph");
    std::fs::write(&big, "vertices 9\n").unwrap();
    assert_eq!(run(&["images", "--h", big.to_str().unwrap()]).status.code(), Some(4));
    assert_eq!(run(&["verify", "--n-max", "9"]).status.code(), Some(4));
}

#[test]
fn inconsistent_external_oracle_is_an_internal_failure() {
    let k2 = data("k2.graph");
    let p3 = data("p3.graph");
    let o = run(&[
        "recover",
        "--h",
        k2.to_str().unwrap(),
        "--g",
        p3.to_str().unwrap(),
        "--mode",
        "vsurj",
        "--oracle-cmd",
        "sh -c echo${IFS}7",
    ]);
    assert_eq!(o.status.code(), Some(5), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn external_oracle_drives_the_reduction() {
    let k3 = data("k3.graph");
    let c5 = data("c5.graph");
    let oracle = format!("{} --format plain count --kind vsurj --g - --h {}", bin(), k3.display());
    let o = run(&[
        "recover",
        "--h",
        k3.to_str().unwrap(),
        "--g",
        c5.to_str().unwrap(),
        "--mode",
        "vsurj",
        "--oracle-cmd",
        &oracle,
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let report = json(&o);
    assert_eq!(report["targets"][0]["recovered"], "30");
    assert_eq!(report["targets"][0]["matches"], true);
    assert_eq!(report["oracle_calls"], report["closed_set"].as_array().unwrap().len());
}

#[test]
fn plain_formats_render() {
    let k22 = data("k22.graph");
    let o = run(&["--format", "plain", "classify", "--h", k22.to_str().unwrap()]);
    assert_eq!(
        stdout(&o),
        "in_F: true\nin_C: false\ncomponents: biclique(2,2)\nhard_edge: 0 2\n"
    );
    let o = run(&["--format", "plain", "verify", "--n-max", "1"]);
    assert_eq!(stdout(&o), "graphs: 3\npairs checked: 9\nviolations: 0\n");
    let o = run(&[
        "--format",
        "plain",
        "inverse-column",
        "--h",
        data("k2.graph").to_str().unwrap(),
    ]);
    assert_eq!(stdout(&o), "-1\tvertices 2\n1\tvertices 2; edge 0 1\n");
}
