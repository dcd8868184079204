use std::path::Path;
use std::process::{Command, Output};

use horseshoe::io::BoxFile;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_horseshoe"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn sft_prints_counts() {
    let o = run(&["sft", "0010100", "0011100"]);
    assert_eq!(o.status.code(), Some(0));
    let rows: Vec<String> = stdout(&o).lines().skip(2).map(str::to_owned).collect();
    assert_eq!(rows, ["3 8", "4 16", "5 22", "6 52", "7 114"]);

    let o = run(&["sft", "--column", "Ls", "--n", "1..3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("1 2\n2 4\n3 2\n"), "{}", stdout(&o));
}

#[test]
fn verify_exit_codes() {
    let ok = run(&["verify", "--a", "1", "--c", "-10"]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(stdout(&ok).contains("status = \"Certified\""));

    let unknown = run(&["verify", "--a", "1", "--c", "-10", "--max-seconds", "0", "--max-cubes", "0"]);
    assert_eq!(unknown.status.code(), Some(2));

    let bad = run(&["verify", "--a", "[2, 1]", "--c", "-10"]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("invalid interval"));
}

#[test]
fn sweep_writes_round_trippable_files() {
    let dir = tempfile::tempdir().unwrap();
    let region = dir.path().join("region.toml");
    std::fs::write(&region, "mode = \"real\"\n\n[[box]]\na = \"1\"\nc = \"[-10.25, -9.75]\"\n").unwrap();
    let o = run(&["sweep", path(&region), "--param-depth", "1", "--out", path(dir.path())]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let certified = BoxFile::read(&dir.path().join("certified.toml")).unwrap();
    let unknown = BoxFile::read(&dir.path().join("unknown.toml")).unwrap();
    assert!(unknown.boxes.is_empty());
    let lo = certified.boxes.iter().map(|p| p.c().re.lo()).fold(f64::INFINITY, f64::min);
    let hi = certified.boxes.iter().map(|p| p.c().re.hi()).fold(f64::NEG_INFINITY, f64::max);
    assert_eq!((lo, hi), (-10.25, -9.75));
}

#[test]
fn render_of_empty_box_file_is_a_blank_canvas() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("empty.toml");
    let out = dir.path().join("empty.svg");
    std::fs::write(&input, "mode = \"complex\"\n").unwrap();
    let o = run(&["render", path(&input), "--out", path(&out)]);
    assert_eq!(o.status.code(), Some(0));
    let svg = std::fs::read_to_string(out).unwrap();
    assert_eq!(svg.matches("<rect").count(), 1);
}

#[test]
fn enclosure_renders() {
    let dir = tempfile::tempdir().unwrap();
    let cubes = dir.path().join("cr.cubes");
    let o = run(&["cr-enclose", "--a", "1", "--c", "-10", "--depth", "5", "--out", path(&cubes)]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let svg = dir.path().join("cr.svg");
    let o = run(&["render", path(&cubes), "--out", path(&svg)]);
    assert_eq!(o.status.code(), Some(0));
    assert!(std::fs::read_to_string(svg).unwrap().matches("<rect").count() > 1);
}

#[test]
fn count_and_pruning_check() {
    let o = run(&["count", "--a", "1", "--c", "-5.4", "--n", "3..5"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));

    let pass = run(&["pruning-check", "--a", "1", "--c", "-5.4", "0010100", "0011100", "--n", "3..6"]);
    assert_eq!(pass.status.code(), Some(0));
    // The full shift predicts 2^n real points, more than exist here.
    let fail = run(&["pruning-check", "--a", "1", "--c", "-5.4", "--n", "5..5"]);
    assert_eq!(fail.status.code(), Some(1), "{}", stdout(&fail));
}

#[test]
fn malformed_loop_is_an_error() {
    let dir = tempfile::tempdir().unwrap();
    let lp = dir.path().join("open.toml");
    std::fs::write(
        &lp,
        "name = \"open\"\nsymmetric = false\nzero_side = \"positive\"\n\n\
         [[vertex]]\nt = \"0\"\na = \"0.25\"\nc = \"-6\"\n\n\
         [[vertex]]\nt = \"1\"\na = \"0.25\"\nc = \"-5\"\n",
    )
    .unwrap();
    let o = run(&["monodromy", path(&lp)]);
    assert_eq!(o.status.code(), Some(1));
}
