//! Kernels, images, solving and 1-eigenspaces over GF(3).

use toroid::exactla::{eigenspace_one, image, kernel, rank, solve, Field, FieldMatrix};

fn main() -> toroid::Result<()> {
    let f = Field::new(3)?;
    let m = FieldMatrix::from_rows(f, &[vec![1, 2, 0], vec![2, 1, 0], vec![0, 0, 1]])?;
    println!("rank {}", rank(&m));
    println!("kernel basis {:?}", kernel(&m).basis_vectors());
    println!("image dim {}", image(&m).dim());

    let b = m.mul_vec(&[1, 1, 2])?;
    let x = solve(&m, &b)?.expect("b lies in the image");
    println!("a solution of m x = {b:?}: {x:?}");

    // a 3-cycle permutation fixes exactly the diagonal line
    let c = FieldMatrix::from_rows(f, &[vec![0, 0, 1], vec![1, 0, 0], vec![0, 1, 0]])?;
    let fixed = eigenspace_one(&c)?;
    println!("fixed vectors of the 3-cycle: {:?}", fixed.basis_vectors());
    Ok(())
}
