//! The Schwarz P surface: one direction at a time the local system is
//! trivial of rank one; over the two-direction base nothing persists.

use toroid::fixtures::{schwarz_p_1, schwarz_p_12};
use toroid::toroidal::analyze_bisheaf;

fn main() -> toroid::Result<()> {
    let one = analyze_bisheaf(&schwarz_p_1()?.bisheaf()?, 0, 0, &[])?;
    let m = one.monodromy.as_ref().expect("circle base");
    println!("single direction: rank {}, monodromy identity {}", one.pls.rank(), m.matrix.is_identity());

    let both = analyze_bisheaf(&schwarz_p_12()?.bisheaf()?, 0, 0, &[])?;
    println!("two directions: rank {}", both.pls.rank());
    if let Some(note) = &both.note {
        println!("  {note}");
    }
    Ok(())
}
