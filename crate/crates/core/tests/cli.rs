//! End-to-end tests of the `attractor` binary: exit codes, output shapes,
//! file round-trips, and determinism.

use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run<I, S>(args: I) -> Output
where
    I: IntoIterator<Item = S>,
    S: AsRef<std::ffi::OsStr>,
{
    Command::new(env!("CARGO_BIN_EXE_attractor"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

fn write(dir: &Path, name: &str, content: &str) -> std::path::PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, content).unwrap();
    p
}

#[test]
fn verify_valid_and_invalid_markings() {
    let dir = tempfile::tempdir().unwrap();
    let inst = write(dir.path(), "s.txt", "abbcabccac\n");

    let ok = run([
        "verify", inst.to_str().unwrap(),
        "--shape", "string", "--k", "2", "--marking", "2,7,9",
    ]);
    assert_eq!(code(&ok), 0, "stderr: {}", String::from_utf8_lossy(&ok.stderr));
    assert_eq!(stdout(&ok), "valid\n");

    let bad = run([
        "verify", inst.to_str().unwrap(),
        "--shape", "string", "--k", "3", "--marking", "2,7,9",
    ]);
    assert_eq!(code(&bad), 1);
    let text = stdout(&bad);
    assert!(text.starts_with("invalid\n"));
    let witness = text.lines().nth(1).unwrap().strip_prefix("witness ").unwrap();
    assert!(witness == "bca" || witness == "cab", "witness {witness:?}");
}

#[test]
fn usage_and_io_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let inst = write(dir.path(), "s.txt", "abc\n");

    // malformed --k
    let out = run([
        "verify", inst.to_str().unwrap(),
        "--shape", "string", "--k", "banana", "--marking", "1",
    ]);
    assert_eq!(code(&out), 2);

    // missing instance file
    let out = run([
        "verify", dir.path().join("nope.txt").to_str().unwrap(),
        "--shape", "string", "--k", "2", "--marking", "1",
    ]);
    assert_eq!(code(&out), 2);

    // marking group is required
    let out = run(["verify", inst.to_str().unwrap(), "--shape", "string", "--k", "2"]);
    assert_eq!(code(&out), 2);

    // circular needs k <= n
    let out = run([
        "verify", inst.to_str().unwrap(),
        "--shape", "circular", "--k", "7", "--marking", "1",
    ]);
    assert_eq!(code(&out), 2);

    // method min1 demands k = 1
    let out = run([
        "solve", inst.to_str().unwrap(),
        "--shape", "string", "--k", "2", "--method", "min1",
    ]);
    assert_eq!(code(&out), 2);
}

#[test]
fn exhausted_budget_exits_three() {
    let dir = tempfile::tempdir().unwrap();
    let inst = write(dir.path(), "s.txt", "abbcabccac\n");
    let out = run([
        "solve", inst.to_str().unwrap(),
        "--shape", "string", "--k", "full", "--budget", "0",
    ]);
    assert_eq!(code(&out), 3);
    assert!(String::from_utf8_lossy(&out.stderr).contains("budget"));
}

#[test]
fn json_reports_carry_schema_and_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let inst = write(dir.path(), "s.txt", "abbcabccac\n");
    let args = [
        "--format", "json",
        "solve", inst.to_str().unwrap(),
        "--shape", "string", "--k", "2",
    ];
    let a = run(args);
    let b = run(args);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout, "reruns must be byte-identical");
    let doc: Value = serde_json::from_str(&stdout(&a)).unwrap();
    assert_eq!(doc["schema"], "attractor-cli/1");
    assert_eq!(doc["command"], "solve");
    assert_eq!(doc["size"], 3);
    assert_eq!(doc["k"], 2);
}

#[test]
fn solve_marking_file_round_trips_through_verify() {
    let dir = tempfile::tempdir().unwrap();
    let inst = write(dir.path(), "s.txt", "abbcabccac\n");
    let marks = dir.path().join("m.txt");
    let out = run([
        "solve", inst.to_str().unwrap(),
        "--shape", "string", "--k", "full",
        "--marking-out", marks.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).starts_with("size 4\n"));
    let out = run([
        "verify", inst.to_str().unwrap(),
        "--shape", "string", "--k", "full",
        "--marking-file", marks.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
}

#[test]
fn transform_artifact_solves_and_lifts_back() {
    let dir = tempfile::tempdir().unwrap();
    let set = write(dir.path(), "set.txt", "ab\nba\n");
    let stitched = dir.path().join("stitched.txt");
    let out = run([
        "transform", set.to_str().unwrap(),
        "--from", "set", "--via", "string",
        "--output", stitched.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(&stitched).unwrap();
    assert!(text.contains("# transform set -> string"));
    assert!(text.contains("# offset 1"));
    assert!(text.contains("shape string"));

    // the artifact is directly consumable: structured headers name the shape
    let marks = dir.path().join("m.txt");
    let out = run([
        "solve", stitched.to_str().unwrap(), "--k", "2",
        "--marking-out", marks.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", String::from_utf8_lossy(&out.stderr));

    let out = run([
        "lift", set.to_str().unwrap(),
        "--from", "set", "--via", "string", "--k", "2",
        "--marking-file", marks.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    assert!(text.contains("size 2"), "lifted size: {text}");

    // a target marking that misses a delimiter substring must be rejected
    let out = run([
        "lift", set.to_str().unwrap(),
        "--from", "set", "--via", "string", "--k", "2",
        "--marking", "2,5",
    ]);
    assert_eq!(code(&out), 1);
}

#[test]
fn graph_pipeline_build_solve_verify_deloop() {
    let dir = tempfile::tempdir().unwrap();
    let inst = write(dir.path(), "s.txt", "abbcabccac\n");
    let gfile = dir.path().join("g.txt");
    let out = run([
        "graph", "build", inst.to_str().unwrap(),
        "--shape", "string", "--output", gfile.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let report = stdout(&out);
    assert!(report.contains("vertices 6"), "report: {report}");
    assert!(report.contains("edges 10"), "report: {report}");

    let out = run(["graph", "solve", gfile.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.starts_with("size 3\n"), "solve said: {text}");
    let cover = text.lines().nth(1).unwrap().strip_prefix("cover ").unwrap().to_string();

    let out = run([
        "graph", "verify", gfile.to_str().unwrap(), "--cover", &cover,
    ]);
    assert_eq!(code(&out), 0);

    // dropping one edge breaks the cover
    let partial: Vec<&str> = cover.split(',').collect();
    let out = run([
        "graph", "verify", gfile.to_str().unwrap(),
        "--cover", &partial[..partial.len() - 1].join(","),
    ]);
    assert_eq!(code(&out), 1);

    // deloop route agrees with the direct solve
    let out = run(["graph", "solve", gfile.to_str().unwrap(), "--deloop"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).starts_with("size 3\n"));

    // the gadget needs colors: plain + deloop is a usage error
    let out = run(["graph", "solve", gfile.to_str().unwrap(), "--deloop", "--plain"]);
    assert_eq!(code(&out), 2);

    // deloop as a file rewrite: output has no loops and solves one higher
    let dfile = dir.path().join("d.txt");
    let out = run([
        "graph", "deloop", gfile.to_str().unwrap(),
        "--output", dfile.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let out = run(["graph", "solve", dfile.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).starts_with("size 4\n"));
}

#[test]
fn sat_gen_validate_solve_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let cnf = dir.path().join("f.cnf");
    let out = run([
        "sat", "gen", "--vars", "3", "--seed", "1",
        "--output", cnf.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let text = std::fs::read_to_string(&cnf).unwrap();
    assert!(text.contains("p cnf 3 4"));
    assert!(text.contains("vars 3 seed 1"));

    let out = run(["sat", "validate", cnf.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).starts_with("balanced\n"));

    let out = run(["--format", "json", "sat", "solve", cnf.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let doc: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(doc["verdict"] == "sat" || doc["verdict"] == "unsat");

    let out = run(["sat", "solve", cnf.to_str().unwrap(), "--max"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).starts_with("maxsat "));

    // valid DIMACS, but every literal positive: unbalanced, exit 1
    let skew = write(
        dir.path(),
        "skew.cnf",
        "p cnf 3 4\n1 2 3 0\n1 2 3 0\n1 2 3 0\n1 2 3 0\n",
    );
    let out = run(["sat", "validate", skew.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).starts_with("unbalanced\n"));

    // not DIMACS at all: parse error, exit 2
    let junk = write(dir.path(), "junk.cnf", "hello\n");
    let out = run(["sat", "validate", junk.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
}

#[test]
fn reduce_and_certify_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let cnf = dir.path().join("f.cnf");
    assert_eq!(code(&run([
        "sat", "gen", "--vars", "3", "--seed", "2",
        "--output", cnf.to_str().unwrap(),
    ])), 0);

    let out = run(["--format", "json", "sat", "solve", cnf.to_str().unwrap()]);
    let doc: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["verdict"], "sat", "seed 2 at n = 3 is satisfiable");
    let asg = doc["assignment"].as_str().unwrap().to_string();

    // assignment -> cover -> assignment
    let out = run([
        "--format", "json", "certify", "asg2cover",
        cnf.to_str().unwrap(), "--assignment", &asg,
    ]);
    assert_eq!(code(&out), 0);
    let doc: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["size"], 15);
    assert_eq!(doc["predicted"], 15);
    let cover = doc["cover"].as_str().unwrap().to_string();

    let out = run([
        "--format", "json", "certify", "cover2asg",
        cnf.to_str().unwrap(), "--cover", &cover,
    ]);
    assert_eq!(code(&out), 0);
    let doc: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["assignment"].as_str().unwrap(), asg);

    // a short cover is an invalid certificate
    let out = run([
        "certify", "cover2asg", cnf.to_str().unwrap(), "--cover", "0,1,2",
    ]);
    assert_eq!(code(&out), 1);

    // assignment -> marking -> assignment
    let out = run([
        "--format", "json", "certify", "asg2marking",
        cnf.to_str().unwrap(), "--assignment", &asg,
    ]);
    assert_eq!(code(&out), 0);
    let doc: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["size"], 21);
    let marking = doc["marking"].as_str().unwrap().to_string();

    let out = run([
        "--format", "json", "certify", "marking2asg",
        cnf.to_str().unwrap(), "--marking", &marking,
    ]);
    assert_eq!(code(&out), 0);
    let doc: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["assignment"].as_str().unwrap(), asg);

    // the reduced artifacts solve to their predicted minima
    let setf = dir.path().join("set.txt");
    let stitchedf = dir.path().join("stitched.txt");
    assert_eq!(code(&run([
        "reduce", "sat2attr", cnf.to_str().unwrap(),
        "--output", setf.to_str().unwrap(),
        "--stitched-out", stitchedf.to_str().unwrap(),
    ])), 0);
    let out = run(["solve", setf.to_str().unwrap(), "--k", "2"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).starts_with("size 21\n"));
    let out = run(["solve", stitchedf.to_str().unwrap(), "--k", "2"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).starts_with("size 32\n"));

    let gfile = dir.path().join("g.txt");
    assert_eq!(code(&run([
        "reduce", "sat2cec", cnf.to_str().unwrap(),
        "--output", gfile.to_str().unwrap(),
    ])), 0);
    let out = run(["graph", "solve", gfile.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).starts_with("size 15\n"));

    // the exact cover found above verifies against the artifact file
    let out = run([
        "graph", "verify", gfile.to_str().unwrap(), "--cover", &cover,
    ]);
    assert_eq!(code(&out), 0);
}

#[test]
fn experiment_gap_emits_csv_rows_within_bounds() {
    let out = run([
        "experiment", "gap", "--vars", "3", "--trials", "3", "--seed", "5",
    ]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "seed,n,m,sat,u,predicted,exact,lower,upper,within_bounds"
    );
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 3);
    for row in rows {
        assert!(row.ends_with(",true"), "row out of bounds: {row}");
    }
    assert!(String::from_utf8_lossy(&out.stderr).contains("budget"));
}

#[test]
fn structured_files_preserve_multi_glyph_alphabets() {
    let dir = tempfile::tempdir().unwrap();
    let cnf = dir.path().join("f.cnf");
    assert_eq!(code(&run([
        "sat", "gen", "--vars", "3", "--seed", "4",
        "--output", cnf.to_str().unwrap(),
    ])), 0);
    let setf = dir.path().join("set.txt");
    assert_eq!(code(&run([
        "reduce", "sat2attr", cnf.to_str().unwrap(),
        "--output", setf.to_str().unwrap(),
    ])), 0);
    let text = std::fs::read_to_string(&setf).unwrap();
    assert!(text.contains("glyphs"));
    assert!(text.contains("C1"), "clause glyphs survive: {text}");
    assert!(text.contains("~L1"), "negated leg glyphs survive: {text}");

    // solving the file twice is byte-identical
    let a = run(["solve", setf.to_str().unwrap(), "--k", "2"]);
    let b = run(["solve", setf.to_str().unwrap(), "--k", "2"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
}
