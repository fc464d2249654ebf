//! Geometric k-fold covers of the running example along its periodic axis.

use toroid::fixtures::running_example_geometry;
use toroid::periodic::k_fold_cover;
use toroid::toroidal::analyze_direction;

fn main() -> toroid::Result<()> {
    let g = running_example_geometry(4)?;
    let base = analyze_direction(&g, 0, 1, None, &[1, 2, 3])?;
    println!("powers of the monodromy: {:?}", base.monodromy()?.powers);
    for k in 1..=3 {
        let cover = k_fold_cover(&g, 0, k)?;
        let a = analyze_direction(&cover, 0, 1, None, &[])?;
        println!(
            "k = {k}: {} cells, toroidal rank {}",
            cover.complex().len(),
            a.monodromy()?.toroidal_rank()
        );
    }
    Ok(())
}
