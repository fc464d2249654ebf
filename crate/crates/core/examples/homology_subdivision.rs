//! Homology of a hollow triangle, before and after barycentric subdivision.

use toroid::complex::{barycentric_subdivide, homology, CellComplex};
use toroid::exactla::Field;

fn main() -> toroid::Result<()> {
    let f = Field::new(5)?;
    let c = CellComplex::from_simplices(f, 3, &[vec![0, 1], vec![1, 2], vec![0, 2]])?;
    let h1 = homology(&c, 1)?;
    println!("{} cells, H0 rank {}, H1 rank {}", c.len(), homology(&c, 0)?.rank(), h1.rank());

    let sd = barycentric_subdivide(&c)?;
    let h1_sd = homology(&sd.complex, 1)?;
    println!("subdivided: {} cells, H1 rank {}", sd.complex.len(), h1_sd.rank());

    let z = &h1.representatives()[0];
    let carried = sd.carry(z);
    println!("carried cycle has {} terms, class {:?}", carried.terms().len(), h1_sd.coords_of(&carried)?);
    Ok(())
}
