//! A local system whose monodromy swaps two classes, and what finite covers
//! see of it.

use toroid::fixtures::torsion;
use toroid::sheafcore::{circle_walk, CoverMap};
use toroid::toroidal::{analyze_bisheaf, eigenvalue_diagnostic};

fn main() -> toroid::Result<()> {
    for degree in [1, 2] {
        let b = torsion(degree)?.bisheaf()?;
        let a = analyze_bisheaf(&b, 0, 0, &[1, 2, 3])?;
        let m = a.monodromy.as_ref().expect("circle base");
        println!("degree {degree}: monodromy {:?}", m.matrix.signed_rows());
        println!("  1-eigenspace dims by power {:?}", m.powers);
        println!("  order {:?}", eigenvalue_diagnostic(&m.matrix, 16)?);

        let walk = circle_walk(b.base(), 0)?;
        for k in [1, 2, 3] {
            let cover = CoverMap::new(b.base().field(), &walk, k)?.bisheaf(&b)?;
            let r = analyze_bisheaf(&cover, 0, 0, &[])?.toroidal_rank();
            println!("  {k}-fold cover toroidal rank {r:?}");
        }
    }
    Ok(())
}
