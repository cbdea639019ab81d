use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_purecycle"))
}

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/tests/fixtures").join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).env_remove("PURECYCLE_CAP").output().expect("binary runs")
}

fn run_stdin(args: &[&str], input: &str) -> Output {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn count_all_methods_agree() {
    let o = run(&["count", "--d", "4", "--e", "2,2,2", "--method", "all"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 4);
    for line in &lines[..3] {
        assert!(line.ends_with(" 16"), "{line}");
    }
    assert_eq!(lines[3], "MATCH");
}

#[test]
fn count_single_values() {
    assert_eq!(stdout(&run(&["count", "--d", "5", "--e", "5"])), "1\n");
    assert_eq!(stdout(&run(&["count", "--d", "5", "--cycle-index", "2:2,3:1"])), "75\n");
    let o = run(&["count", "--d", "5", "--cycle-index", "2:2,3:1", "--method", "bijection"]);
    assert_eq!(stdout(&o), "75\n");
    assert_eq!(stdout(&run(&["count", "--d", "5", "--e", "2,2,2,2", "--hurwitz"])), "25\n");
}

#[test]
fn count_json_format() {
    let o = run(&["count", "--d", "3", "--e", "2,2", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["count"], "3");
    assert_eq!(v["method"], "formula");
}

#[test]
fn positive_genus_marks_tree_methods_unavailable() {
    let o = run(&["count", "--d", "4", "--e", "2,2,2,2,2", "--method", "all"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("bruteforce  640"));
    assert!(text.lines().filter(|l| l.contains("n/a")).count() == 2);
    assert!(text.ends_with("MATCH\n"));
    assert_eq!(run(&["count", "--d", "4", "--e", "2,2,2,2,2"]).status.code(), Some(2));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["count", "--d", "4", "--e", "2,2,2,2"]).status.code(), Some(2));
    let o = run(&["count", "--d", "9", "--e", "2,2,2,2,2,2,2,2", "--method", "brute-force"]);
    assert_eq!(o.status.code(), Some(3));
    // the formula has no cap
    assert!(run(&["count", "--d", "9", "--e", "2,2,2,2,2,2,2,2"]).status.success());
    assert_eq!(run_stdin(&["convert", "--to", "graph"], "{\"x\":1}").status.code(), Some(2));
    let bad = "{\"d\":3,\"tau\":[1,2,3],\"sigmas\":[[1,3,2]]}";
    assert_eq!(run_stdin(&["convert", "--to", "graph"], bad).status.code(), Some(2));
    assert_eq!(run(&["verify", "--only", "nope"]).status.code(), Some(2));
}

#[test]
fn cap_override_reports_search_space() {
    let o = bin()
        .args(["count", "--d", "4", "--e", "2,2,2", "--method", "brute-force"])
        .env("PURECYCLE_CAP", "8")
        .output()
        .unwrap();
    assert_eq!(stdout(&o), "16\n");
    assert!(String::from_utf8_lossy(&o.stderr).contains("search space about 36"));
}

#[test]
fn enumerate_streams() {
    let o = run(&["enumerate", "--kind", "factorization", "--d", "3", "--e", "2,2"]);
    assert_eq!(stdout(&o).lines().count(), 3);
    assert!(String::from_utf8_lossy(&o.stderr).contains("3 records"));
    let o = run(&["enumerate", "--kind", "mnr", "--vertex-data", "1,1"]);
    assert_eq!(
        stdout(&o),
        "{\"S\":[3],\"vertex_data\":[1,1],\"edges\":[{\"parent\":0,\"child\":3,\"beta\":1}]}\n"
    );
    let o = run(&["enumerate", "--kind", "graph", "--d", "4", "--e", "2,2,2"]);
    let lines: Vec<String> = stdout(&o).lines().map(String::from).collect();
    assert_eq!(lines.len(), 16);
    for l in &lines {
        assert!(serde_json::from_str::<serde_json::Value>(l).unwrap()["edges"].is_array());
    }
}

const KINDS: [(&str, &str); 5] = [
    ("fac", "running_factorization.json"),
    ("graph", "running_graph.json"),
    ("labeled", "running_labeled.json"),
    ("mnr", "running_mnr.json"),
    ("prufer", "running_prufer.json"),
];

#[test]
fn convert_matches_golden_files() {
    for (_, src) in KINDS {
        for (kind, dst) in KINDS {
            let input = fixture(src);
            let o = run(&["convert", "--input", input.to_str().unwrap(), "--to", kind, "--roundtrip"]);
            assert!(o.status.success(), "{src} -> {kind}: {}", String::from_utf8_lossy(&o.stderr));
            let expected = std::fs::read_to_string(fixture(dst)).unwrap();
            assert_eq!(stdout(&o), expected, "{src} -> {kind}");
        }
    }
}

#[test]
fn convert_reads_stdin_with_explicit_kind() {
    let text = std::fs::read_to_string(fixture("running_prufer.json")).unwrap();
    let o = run_stdin(&["convert", "--from", "prufer", "--to", "mnr"], &text);
    assert_eq!(stdout(&o), std::fs::read_to_string(fixture("running_mnr.json")).unwrap());
}

#[test]
fn export_dot() {
    let path = fixture("running_factorization.json");
    let dot = stdout(&run(&["export", "--input", path.to_str().unwrap()]));
    assert!(dot.starts_with("graph factorization {"));
    assert_eq!(dot.matches("shape=point").count() + dot.matches("shape=circle").count(), 29);
    assert_eq!(dot.matches(" -- ").count(), 28);

    let star = "{\"d\":3,\"tau\":[1,2,3],\"sigmas\":[[1,2,3]]}";
    let dot = stdout(&run_stdin(&["export"], star));
    assert_eq!(dot.matches("shape=").count(), 4);

    let path = fixture("running_mnr.json");
    let dot = stdout(&run(&["export", "--input", path.to_str().unwrap()]));
    assert!(dot.starts_with("digraph mnr {"));
    assert_eq!(dot.matches("xlabel=").count(), 10);
    assert_eq!(dot.matches(" -> ").count(), 9);
}

#[test]
fn prufer_subcommand() {
    let mnr = fixture("running_mnr.json");
    let o = run(&["prufer", "encode", "--input", mnr.to_str().unwrap()]);
    assert_eq!(stdout(&o), std::fs::read_to_string(fixture("running_prufer.json")).unwrap());
    let h = fixture("running_prufer.json");
    let o = run(&["prufer", "decode", "--input", h.to_str().unwrap()]);
    assert_eq!(stdout(&o), std::fs::read_to_string(mnr).unwrap());
    let o = run(&["prufer", "decode", "--seq", "4,0", "--s", "3,4"]);
    assert!(stdout(&o).contains("{\"parent\":4,\"child\":3,\"beta\":1}"));
    assert_eq!(run(&["prufer", "decode", "--seq", "3,0", "--s", "2,3,4"]).status.code(), Some(2));
}

#[test]
fn verify_small() {
    let o = run(&["verify", "--max-d", "2"]);
    assert!(o.status.success());
    assert!(stdout(&o).ends_with("14 checks, 0 failed\n"));
    let o = run(&["verify", "--max-d", "4", "--only", "pipeline,golden"]);
    assert!(o.status.success());
    assert!(stdout(&o).ends_with("2 checks, 0 failed\n"));
}

#[test]
fn rejected_graphs_name_the_violation() {
    let bad = "{\"d\":4,\"S\":[5,6,7],\"edges\":[[5,1],[5,3],[6,2],[6,3],[7,3],[7,4]],\"tau\":[1,2,3,4]}";
    let o = run_stdin(&["convert", "--to", "fac"], bad);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("vertex 3 lacks CICPP"));
    let cyclic = "{\"d\":4,\"S\":[5,6,7],\"edges\":[[5,1],[5,2],[6,1],[6,2],[7,3],[7,4]],\"tau\":[1,2,3,4]}";
    let o = run_stdin(&["convert", "--to", "mnr"], cyclic);
    assert!(String::from_utf8_lossy(&o.stderr).contains("not a tree"));
}

#[test]
fn star_round_trip() {
    let star = "{\"d\":3,\"tau\":[1,2,3],\"sigmas\":[[1,2,3]]}\n";
    let o = run_stdin(&["convert", "--to", "graph", "--roundtrip"], star);
    assert!(o.status.success());
    let back = run_stdin(&["convert", "--to", "fac"], &stdout(&o));
    assert_eq!(stdout(&back), star);
}
