//! Drives the analyze command as a library call and reads numbers back out
//! of the report.

use std::path::PathBuf;

use toroid::cli::{run, Command, JobConfig, Report};

fn main() -> toroid::Result<()> {
    let mut cfg = JobConfig::new(Command::Analyze);
    cfg.input = Some(PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/torsion_degree2.txt")));
    cfg.k_fold = vec![1, 2, 3];
    let out = run(&cfg)?;
    let text = out.report.serialize();
    print!("{text}");

    let back = Report::parse(&text)?;
    let dir = back.body.sections("direction").next().expect("one direction");
    for k in dir.sections("k_fold") {
        println!("k {:?} -> cover rank {:?}", k.get_ints("k"), k.get_ints("cover_rank"));
    }
    println!("exit code {}", out.exit);
    Ok(())
}
