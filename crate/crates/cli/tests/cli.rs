use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn eqcol(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_eqcol"))
        .args(args)
        .output()
        .expect("spawn eqcol")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn data_file(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../core/tests/data")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

#[test]
fn solve_dimacs_file() {
    let dir = tempfile::tempdir().unwrap();
    let col = dir.path().join("coloring.txt");
    let out = eqcol(&[
        "solve",
        &data_file("myciel4.col"),
        "--algo",
        "comb",
        "--out",
        col.to_str().unwrap(),
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = stdout(&out);
    assert!(text.contains("chi_eq      5 (optimal)"), "{text}");
    let lines = fs::read_to_string(col).unwrap();
    assert_eq!(lines.lines().count(), 23);
    assert!(lines.lines().all(|l| l.split(' ').count() == 2));
}

#[test]
fn solve_missing_file_fails() {
    let out = eqcol(&["solve", "missing.col"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("no such file"));
}

#[test]
fn solve_family_and_bad_args() {
    let out = eqcol(&["solve", "star20", "--algo", "flow"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("chi_eq      11 (optimal)"));
    assert_ne!(
        eqcol(&["solve", "K5", "--algo", "nope"]).status.code(),
        Some(0)
    );
}

#[test]
fn bench_replay_and_aggregate() {
    let dir = tempfile::tempdir().unwrap();
    let run = |tag: &str| {
        let data = dir.path().join(format!("{tag}.csv"));
        let agg = dir.path().join(format!("{tag}_agg.csv"));
        let out = eqcol(&[
            "bench",
            "--n",
            "10",
            "--p",
            "0.5",
            "--count",
            "5",
            "--seed",
            "7",
            "--algo",
            "std,flow,comb",
            "--time-limit",
            "30",
            "--no-times",
            "--threads",
            "1",
            "--out",
            data.to_str().unwrap(),
            "--aggregate-out",
            agg.to_str().unwrap(),
        ]);
        assert_eq!(
            out.status.code(),
            Some(0),
            "{}",
            String::from_utf8_lossy(&out.stderr)
        );
        (
            fs::read_to_string(&data).unwrap(),
            fs::read_to_string(&agg).unwrap(),
            data,
        )
    };
    let (data_a, agg_a, data_path) = run("a");
    let (data_b, agg_b, _) = run("b");
    assert_eq!(data_a, data_b, "replay differs");
    assert_eq!(agg_a, agg_b);

    let lines: Vec<&str> = data_a.lines().collect();
    assert_eq!(lines[0], eqcol_cli::bench::DATA_HEADER);
    assert_eq!(lines.len(), 16);
    let rows = eqcol_cli::bench::parse_data_csv(&data_a).unwrap();
    for chunk in rows.chunks(3) {
        assert!(chunk
            .iter()
            .all(|r| r.chi_eq == chunk[0].chi_eq && r.index == chunk[0].index));
    }

    let agg_lines: Vec<&str> = agg_a.lines().collect();
    assert_eq!(agg_lines[0], eqcol_cli::bench::AGGREGATE_HEADER);
    assert_eq!(agg_lines.len(), 4);
    for line in &agg_lines[1..] {
        let fields: Vec<&str> = line.split(',').collect();
        assert_eq!(fields.len(), 6);
        assert_eq!(fields[4], "0");
    }

    let out = eqcol(&[
        "aggregate",
        data_path.to_str().unwrap(),
        "--time-limit",
        "30",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), agg_a);
}

#[test]
fn verify_small_instances() {
    let out = eqcol(&[
        "verify", "star12", "K6", "--random", "50", "--n", "8", "--p", "0.5", "--seed", "3",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let text = stdout(&out);
    assert_eq!(
        text.lines().filter(|l| l.starts_with("ok ")).count(),
        52,
        "{text}"
    );
    assert!(text.contains("star12: chi_eq 7"));
}

#[test]
fn gen_round_trips_through_solve() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.col");
    let out = eqcol(&[
        "gen",
        "--n",
        "15",
        "--p",
        "0.3",
        "--seed",
        "4",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(fs::read_to_string(&path).unwrap().contains("p edge 15"));
    assert_eq!(
        eqcol(&["solve", path.to_str().unwrap()]).status.code(),
        Some(0)
    );
    let fam = eqcol(&["gen", "--family", "queen6_6"]);
    assert!(stdout(&fam).contains("p edge 36"));
}
