//! Epification and monofication of the explicit running example, with the
//! exhaustive oracle as a cross-check.

use toroid::fixtures::running_example;
use toroid::isofy::{epify, extract_pls, isobisheafify, monofy, oracle_epify, oracle_monofy, OracleLimits};
use toroid::sheafcore::{is_episheaf, is_monocosheaf};

fn main() -> toroid::Result<()> {
    let b = running_example(4)?;
    println!("input is an episheaf: {}", is_episheaf(b.sheaf()).holds);
    println!("input is a monocosheaf: {:?}", is_monocosheaf(b.cosheaf()).witness);

    let e = epify(b.sheaf())?;
    let m = monofy(b.cosheaf())?;
    println!("epi stalks {:?} after {} sweeps", e.sub.sheaf().stalk_dims(), e.iterations);
    println!("mono stalks {:?} after {} sweeps", m.quotient.cosheaf().stalk_dims(), m.iterations);

    // both stalk totals exceed the oracle's limit, so expect refusals
    let limits = OracleLimits::default();
    match oracle_epify(b.sheaf(), &limits) {
        Ok(o) => println!("oracle epify agrees: {}", o == e.sub),
        Err(err) => println!("oracle epify refused: {err}"),
    }
    match oracle_monofy(b.cosheaf(), &limits) {
        Ok(o) => println!("oracle monofy agrees: {}", o == m.quotient),
        Err(err) => println!("oracle monofy refused: {err}"),
    }

    let iso = isobisheafify(&b)?;
    let pls = extract_pls(&iso)?;
    println!("persistent local system of rank {}", pls.rank());
    Ok(())
}
