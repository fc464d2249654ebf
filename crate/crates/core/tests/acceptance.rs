//! Acceptance criteria 1 to 6. Prints one line per criterion and exits
//! nonzero if any fails.

mod common;

use std::path::PathBuf;
use std::time::{Duration, Instant};

use toroid::cli::{run, Command, JobConfig};
use toroid::exactla::{Field, FieldMatrix};
use toroid::fixtures::{running_example, running_example_geometry, schwarz_p_1, schwarz_p_12, torsion};
use toroid::isofy::{epify, monofy};
use toroid::sheafcore::covering_relations;
use toroid::toroidal::{analyze_bisheaf, analyze_direction, lift_toroidal_basis};

const RUNNING_EXAMPLE_BUDGET: Duration = Duration::from_secs(5);
const ORACLE_BUDGET: Duration = Duration::from_secs(60);
const PROPERTY_BUDGET: Duration = Duration::from_secs(300);
const ORACLE_INSTANCES: usize = 200;
const ORACLE_SEED: u64 = 20;
const PROPERTY_CASES: u64 = 500;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn e<E: std::fmt::Display>(x: E) -> String {
    x.to_string()
}

fn split_dims(dims: &[usize], l: usize) -> (&[usize], &[usize]) {
    dims.split_at(l)
}

fn running_example_criterion() -> Outcome {
    let start = Instant::now();
    let g = running_example_geometry(4).map_err(e)?;
    let a = analyze_direction(&g, 0, 1, None, &[1]).map_err(e)?;
    let b = &a.built.bisheaf;
    let l = a.built.cellulation.vertex_count();
    ensure!(l == 4, "base has {l} vertices");
    let (sv, se) = split_dims(b.sheaf().stalk_dims(), l);
    let (cv, ce) = split_dims(b.cosheaf().stalk_dims(), l);
    ensure!(sv.iter().all(|&d| d == 5) && se.iter().all(|&d| d == 4), "sheaf dims {sv:?} {se:?}");
    ensure!(cv.iter().all(|&d| d == 3) && ce.iter().all(|&d| d == 4), "cosheaf dims {cv:?} {ce:?}");

    let ep = epify(b.sheaf()).map_err(e)?;
    ensure!(
        ep.sub.subspaces().iter().all(|s| s.is_full()),
        "epify shrank the sheaf to {:?}",
        ep.sub.sheaf().stalk_dims()
    );
    let mo = monofy(b.cosheaf()).map_err(e)?;
    ensure!(
        mo.quotient.cosheaf().stalk_dims().iter().all(|&d| d == 1),
        "monofy dims {:?}",
        mo.quotient.cosheaf().stalk_dims()
    );

    ensure!(a.analysis.pls.rank() == 1, "PLS rank {}", a.analysis.pls.rank());
    let m = a.monodromy().map_err(e)?;
    ensure!(m.matrix == FieldMatrix::identity(Field::gf2(), 1), "monodromy {:?}", m.matrix.signed_rows());
    ensure!(m.toroidal_rank() == 1, "toroidal rank {}", m.toroidal_rank());

    let lifted = lift_toroidal_basis(&a, &g).map_err(e)?;
    ensure!(lifted.cycles.len() == 1, "{} lifted cycles", lifted.cycles.len());
    let image = a.pls_image_at_base(&lifted.cycles[0]).map_err(e)?;
    ensure!(image.iter().any(|&x| x != 0), "lifted cycle has zero PLS image");

    let explicit = running_example(4).map_err(e)?;
    ensure!(
        explicit.sheaf().stalk_dims() == b.sheaf().stalk_dims()
            && explicit.cosheaf().stalk_dims() == b.cosheaf().stalk_dims(),
        "explicit fixture disagrees with the geometric build"
    );
    let t = start.elapsed();
    ensure!(t < RUNNING_EXAMPLE_BUDGET, "took {t:?}");
    Ok(format!("sheaf 5/4, cosheaf 3/4, PLS rank 1, M = [1], lift image {image:?}, {t:.2?}"))
}

fn torsion_criterion() -> Outcome {
    let one = analyze_bisheaf(&torsion(1).map_err(e)?.bisheaf().map_err(e)?, 0, 0, &[]).map_err(e)?;
    ensure!(one.pls.rank() == 1, "degree 1 PLS rank {}", one.pls.rank());
    let two = analyze_bisheaf(&torsion(2).map_err(e)?.bisheaf().map_err(e)?, 0, 0, &[1, 2]).map_err(e)?;
    ensure!(two.pls.rank() == 2, "degree 2 PLS rank {}", two.pls.rank());
    let m = two.monodromy.as_ref().ok_or("no monodromy")?;
    let swap = FieldMatrix::from_rows(Field::gf2(), &[vec![0, 1], vec![1, 0]]).map_err(e)?;
    ensure!(m.matrix == swap, "monodromy {:?}", m.matrix.signed_rows());
    ensure!(m.powers[&1] == 1 && m.powers[&2] == 2, "eigenspace dims {:?}", m.powers);
    Ok(format!("ranks 1 and 2, swap monodromy, eig1 dims {:?}", m.powers))
}

fn schwarz_criterion() -> Outcome {
    let one = analyze_bisheaf(&schwarz_p_1().map_err(e)?.bisheaf().map_err(e)?, 0, 0, &[]).map_err(e)?;
    ensure!(one.pls.rank() == 1, "1-periodic PLS rank {}", one.pls.rank());
    for (s, t) in covering_relations(one.pls.base()) {
        ensure!(one.pls.map(s, t).is_identity(), "PLS map {s} <= {t} is not the identity");
    }
    ensure!(
        one.monodromy.as_ref().is_some_and(|m| m.matrix.is_identity()),
        "1-periodic monodromy is not the identity"
    );
    let both = analyze_bisheaf(&schwarz_p_12().map_err(e)?.bisheaf().map_err(e)?, 0, 0, &[]).map_err(e)?;
    ensure!(both.pls.rank() == 0, "L_12 PLS rank {}", both.pls.rank());
    Ok("1-periodic PLS is the identity of rank 1, L_12 PLS is zero".into())
}

fn oracle_criterion() -> Outcome {
    let start = Instant::now();
    let mut cfg = JobConfig::new(Command::Oracle);
    cfg.oracle = Some(ORACLE_INSTANCES);
    cfg.seed = ORACLE_SEED;
    cfg.field = Some(2);
    cfg.oracle_vertices = 4;
    cfg.oracle_max_dim = 3;
    let out = run(&cfg).map_err(e)?;
    let body = &out.report.body;
    let n = ORACLE_INSTANCES as i64;
    ensure!(body.get_ints("sheaf_agree") == Some(&[n][..]), "sheaf agreements {:?}", body.get_ints("sheaf_agree"));
    ensure!(
        body.get_ints("cosheaf_agree") == Some(&[n][..]),
        "cosheaf agreements {:?}",
        body.get_ints("cosheaf_agree")
    );
    ensure!(out.exit == 0, "exit {}", out.exit);
    let t = start.elapsed();
    ensure!(t < ORACLE_BUDGET, "took {t:?}");
    Ok(format!("{n} sheaves and {n} cosheaves, 0 mismatches, {t:.2?}"))
}

fn property_criterion() -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();
    for (name, check) in common::PROPERTIES {
        for seed in 0..PROPERTY_CASES {
            if let Err(why) = check(seed) {
                failures.push(format!("{name} (seed {seed}): {why}"));
                break;
            }
        }
    }
    let t = start.elapsed();
    ensure!(failures.is_empty(), "{}", failures.join("; "));
    ensure!(t < PROPERTY_BUDGET, "took {t:?}");
    Ok(format!("{} suites x {PROPERTY_CASES} cases, {t:.2?}", common::PROPERTIES.len()))
}

fn determinism_criterion() -> Outcome {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let mut jobs = Vec::new();
    for name in [
        "running_example.txt",
        "running_example_explicit.txt",
        "torsion_degree1.txt",
        "torsion_degree2.txt",
        "schwarz_p_1.txt",
        "schwarz_p_12.txt",
        "cubical_strip.txt",
        "cubical_grid.txt",
    ] {
        jobs.push(vec!["analyze".to_string(), dir.join(name).display().to_string(), "--k-fold".into(), "1,2".into()]);
    }
    jobs.push(vec!["oracle".into(), "--oracle".into(), "25".into(), "--seed".into(), "3".into()]);
    for args in &jobs {
        let go = || {
            std::process::Command::new(env!("CARGO_BIN_EXE_toroid"))
                .args(args)
                .output()
                .map_err(e)
        };
        let (a, b) = (go()?, go()?);
        ensure!(a.status.success(), "{args:?} failed: {}", String::from_utf8_lossy(&a.stderr));
        ensure!(a.stdout == b.stdout && !a.stdout.is_empty(), "{args:?} differs between runs");
    }
    Ok(format!("{} commands byte-identical across two runs", jobs.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 6] = [
        ("running example", running_example_criterion),
        ("torsion", torsion_criterion),
        ("Schwarz P", schwarz_criterion),
        ("oracle equivalence", oracle_criterion),
        ("property suites", property_criterion),
        ("determinism", determinism_criterion),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(msg) => println!("criterion {} {name}: PASS ({msg})", i + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {} {name}: FAIL ({msg})", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
