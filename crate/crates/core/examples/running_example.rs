//! Builds the bisheaf of the periodic running example for its one direction
//! and checks every square.

use toroid::bisheafbuild::{build_bisheaf, BisheafRequest};
use toroid::fixtures::running_example_geometry;
use toroid::sheafcore::validate_bisheaf;

fn main() -> toroid::Result<()> {
    let g = running_example_geometry(4)?;
    println!("quotient complex: {} vertices, {} cells", g.vertex_count(), g.complex().len());
    let bb = build_bisheaf(&BisheafRequest::new(g, 0, 1))?;
    let b = &bb.bisheaf;
    let angles: Vec<String> = bb.cellulation.angles.iter().map(|a| a.to_string()).collect();
    println!("base angles {}", angles.join(" "));
    println!("sheaf stalks   {:?}", b.sheaf().stalk_dims());
    println!("cosheaf stalks {:?}", b.cosheaf().stalk_dims());
    validate_bisheaf(b)?;
    println!("all squares commute");
    Ok(())
}
