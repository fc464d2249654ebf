//! Reads a cubical description of a periodic strip and analyzes it.

use toroid::cli::{parse_input, Input};
use toroid::toroidal::toroidal_profile;

const STRIP: &str = "\
format cubical
field 3
extents 3 1
periodic 1
cube 0 0 axes 1 2
cube 1 0 axes 1 2
cube 2 0 axes 1 2
";

fn main() -> toroid::Result<()> {
    let Input::Geometric { complex: g, .. } = parse_input(STRIP, None)? else {
        unreachable!("cubical text is geometric")
    };
    println!("{} cells after triangulation", g.complex().len());
    for a in toroidal_profile(&g, 1, &[1, 2]) {
        let a = a?;
        let m = a.monodromy()?;
        println!("direction {}: toroidal rank {}, powers {:?}", a.direction() + 1, m.toroidal_rank(), m.powers);
    }
    Ok(())
}
