use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use toroid::cli::Report;
use toroid::sheafcore::parse_explicit;

fn toroid(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_toroid")).args(args).output().expect("binary runs")
}

fn fixture(name: &str) -> String {
    format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("toroid-cli-{}-{name}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.display().to_string()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn analyze_running_example() {
    let o = toroid(&["analyze", &fixture("running_example.txt"), "--k-fold", "1,2,3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let r = Report::parse(&stdout(&o)).unwrap();
    let d = r.body.sections("direction").next().unwrap();
    assert_eq!(d.get_ints("toroidal_rank"), Some(&[1i64][..]));
    assert_eq!(d.sections("k_fold").count(), 3);
    assert_eq!(d.sections("cycle").count(), 1);
}

#[test]
fn reports_are_byte_identical() {
    let args = ["analyze", &fixture("torsion_degree2.txt"), "--k-fold", "1,2"];
    assert_eq!(toroid(&args).stdout, toroid(&args).stdout);
    let args = ["oracle", "--oracle", "20", "--seed", "9"];
    assert_eq!(toroid(&args).stdout, toroid(&args).stdout);
}

#[test]
fn out_file_matches_stdout() {
    let dir = scratch("out");
    let path = dir.join("r.txt");
    let o = toroid(&["analyze", &fixture("schwarz_p_1.txt"), "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let plain = toroid(&["analyze", &fixture("schwarz_p_1.txt")]);
    assert_eq!(std::fs::read(&path).unwrap(), plain.stdout);
}

#[test]
fn parse_errors_exit_2_with_location() {
    let dir = scratch("parse");
    let bad = write(&dir, "bad.txt", "format simplicial\nfield 2\nperiodic 1\nvertex 0\nvertex 1/2\nsimplex 0 9\n");
    let o = toroid(&["analyze", &bad]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 6"), "{}", stderr(&o));

    let o = toroid(&["analyze", &fixture("torsion_degree2.txt"), "--degree", "1"]);
    assert_eq!(o.status.code(), Some(2));
    let o = toroid(&["analyze"]);
    assert_eq!(o.status.code(), Some(2));
    let o = toroid(&["analyze", &fixture("running_example.txt"), "--field", "4"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn config_file() {
    let dir = scratch("config");
    let good = write(
        &dir,
        "good.cfg",
        &format!("command = analyze\ninput = {}\nk_fold = 2\n", fixture("torsion_degree2.txt")),
    );
    let o = toroid(&["analyze", "--config", &good]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("k ints 2"));

    let bad = write(&dir, "bad.cfg", "command = analyze\n\nflavour = x\n");
    let o = toroid(&["analyze", "--config", &bad]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 3"), "{}", stderr(&o));
}

#[test]
fn unsupported_geometry_exits_3() {
    let dir = scratch("unsupported");
    let torus = write(
        &dir,
        "torus.txt",
        "format simplicial\nfield 2\nperiodic 2\nvertex 0 0\nvertex 1/3 0\nvertex 0 1/3\nvertex 1/3 1/3\nsimplex 0 1 3\nsimplex 0 2 3\n",
    );
    let o = toroid(&["analyze", &torus]);
    assert_eq!(o.status.code(), Some(3), "{}{}", stdout(&o), stderr(&o));
}

#[test]
fn size_refusals_exit_4() {
    assert_eq!(toroid(&["oracle", "--field", "5"]).status.code(), Some(4));
    let o = toroid(&["isofy", &fixture("running_example_explicit.txt"), "--oracle", "1"]);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn oracle_runs_clean() {
    let o = toroid(&["oracle", "--oracle", "30", "--field", "3", "--seed", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let r = Report::parse(&stdout(&o)).unwrap();
    assert_eq!(r.body.get_ints("mismatches"), Some(&[0i64][..]));
}

#[test]
fn isofy_writes_outputs() {
    let dir = scratch("isofy");
    let out = dir.join("res");
    let o = toroid(&["isofy", &fixture("running_example_explicit.txt"), "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    for f in ["epi.sheaf", "mono.cosheaf", "isobisheaf.txt", "transcript.txt"] {
        assert!(out.join(f).exists(), "{f} missing");
    }
    let mono = parse_explicit(&std::fs::read_to_string(out.join("mono.cosheaf")).unwrap()).unwrap();
    assert!(mono.cosheaf.unwrap().stalk_dims().iter().all(|&d| d == 1));
    let iso = out.join("isobisheaf.txt");
    let again = toroid(&["analyze", iso.to_str().unwrap()]);
    assert_eq!(again.status.code(), Some(0));
    assert!(stdout(&again).contains("pls_rank ints 1"));
}

#[test]
fn cubical_fixtures() {
    for (name, rank) in [("cubical_strip.txt", 1), ("cubical_grid.txt", 1)] {
        let o = toroid(&["analyze", &fixture(name)]);
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
        let r = Report::parse(&stdout(&o)).unwrap();
        for d in r.body.sections("direction") {
            assert_eq!(d.get_ints("toroidal_rank"), Some(&[rank][..]));
        }
    }
}
