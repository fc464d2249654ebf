//! Classifies a few cycles of the running example and lifts the toroidal
//! part of its monodromy back to an honest cycle.

use toroid::fixtures::running_example_geometry;
use toroid::toroidal::{analyze_direction, classify_with, lift_toroidal_basis};

fn main() -> toroid::Result<()> {
    let g = running_example_geometry(4)?;
    let a = analyze_direction(&g, 0, 1, None, &[])?;

    // the triangle c0 top, c1 middle, c2 bottom, c3 top and back along the top row
    let tri: Vec<(usize, Vec<i64>)> = [(0, 2), (1, 1), (2, 0), (3, 2), (2, 2), (1, 2), (0, 2)]
        .iter()
        .map(|&(c, j)| (3 * c + j, vec![0]))
        .collect();
    // the top row, once around
    let line: Vec<(usize, Vec<i64>)> =
        (0..=4).map(|c| (3 * (c % 4) + 2, vec![(c / 4) as i64])).collect();

    for (name, path) in [("triangle", tri), ("top row", line)] {
        let z = g.path_chain(&path)?;
        let v = classify_with(std::slice::from_ref(&a), &z)?;
        println!("{name}: toroidal {} images {:?}", v.toroidal, v.images);
    }

    let lifted = lift_toroidal_basis(&a, &g)?;
    for (z, x) in lifted.cycles.iter().zip(&lifted.pls_coords) {
        println!("lifted cycle {:?} has PLS coordinates {x:?}", z.terms());
    }
    Ok(())
}
