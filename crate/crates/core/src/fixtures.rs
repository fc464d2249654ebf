//! Worked examples shipped with the crate, used by tests, examples and the CLI.

use std::collections::BTreeMap;

use crate::error::Result;
use crate::exactla::{Field, FieldMatrix};
use crate::periodic::{BaseCellulation, LiftedSimplex, Origin, PeriodicComplex, Rational};
use crate::sheafcore::{parse_explicit, Bisheaf, CellCosheaf, CellSheaf, ExplicitInput};

pub const RUNNING_EXAMPLE_EXPLICIT: &str = include_str!("../fixtures/running_example_explicit.txt");
pub const RUNNING_EXAMPLE_GEOMETRY: &str = include_str!("../fixtures/running_example.txt");
pub const TORSION_DEGREE1: &str = include_str!("../fixtures/torsion_degree1.txt");
pub const TORSION_DEGREE2: &str = include_str!("../fixtures/torsion_degree2.txt");
pub const SCHWARZ_P_1: &str = include_str!("../fixtures/schwarz_p_1.txt");
pub const SCHWARZ_P_12: &str = include_str!("../fixtures/schwarz_p_12.txt");

fn m(f: Field, rows: &[&[i64]]) -> FieldMatrix {
    let rows: Vec<Vec<i64>> = rows.iter().map(|r| r.to_vec()).collect();
    FieldMatrix::from_rows(f, &rows).expect("literal matrix")
}

/// The degree (1, 0) bisheaf of the three-strand graph over an `n`-vertex
/// circle, in the bases of the hand-computed diagrams. Over GF(2).
pub fn running_example(n: usize) -> Result<Bisheaf> {
    let f = Field::gf2();
    let angles = (0..n as i64).map(|m| Rational::new(m, n as i64)).collect();
    let base = BaseCellulation::new(0, angles)?.complex(f);
    let a = m(f, &[&[1, 0, 1, 0, 0], &[0, 0, 1, 0, 0], &[0, 0, 0, 0, 1], &[0, 0, 0, 1, 0]]);
    let b = m(f, &[&[1, 1, 0, 0, 0], &[0, 0, 0, 1, 0], &[0, 1, 0, 0, 0], &[0, 0, 0, 0, 1]]);
    let c = m(f, &[&[1, 1, 0, 0], &[0, 0, 0, 1], &[0, 0, 1, 0]]);
    let d = m(f, &[&[1, 0, 1, 0], &[0, 1, 0, 0], &[0, 0, 0, 1]]);
    let v = m(f, &[&[1, 0, 0, 0, 0], &[0, 0, 0, 1, 0], &[0, 0, 0, 0, 1]]);
    let mut sheaf = BTreeMap::new();
    let mut cosheaf = BTreeMap::new();
    for k in 0..n {
        let e = n + k;
        let next = (k + 1) % n;
        sheaf.insert((e, k), a.clone());
        sheaf.insert((e, next), b.clone());
        cosheaf.insert((e, k), c.clone());
        cosheaf.insert((e, next), d.clone());
    }
    let sdims = (0..2 * n).map(|i| if i < n { 5 } else { 4 }).collect();
    let cdims = (0..2 * n).map(|i| if i < n { 3 } else { 4 }).collect();
    let vertical = (0..2 * n)
        .map(|i| if i < n { v.clone() } else { FieldMatrix::identity(f, 4) })
        .collect();
    Bisheaf::new(
        CellSheaf::new(base.clone(), sdims, sheaf)?,
        CellCosheaf::new(base, cdims, cosheaf)?,
        vertical,
    )
}

/// The three-strand graph of the running example, quotiented by `n`
/// translations. Vertex `3c + j - 1` sits in column `c` at height `j - 2`.
pub fn running_example_geometry(n: usize) -> Result<PeriodicComplex> {
    let f = Field::gf2();
    let coords = (0..n)
        .flat_map(|c| (0..3).map(move |j| vec![Rational::new(c as i64, n as i64), Rational::from_integer(j - 1)]))
        .collect();
    let mut simplices: Vec<LiftedSimplex> = Vec::new();
    for c in 0..n {
        let next = (c + 1) % n;
        let shift = vec![(c + 1 == n) as i64];
        let here = |j: usize| (3 * c + j - 1, vec![0]);
        let there = |j: usize| (3 * next + j - 1, shift.clone());
        for (a, b) in [(3, 3), (3, 2), (2, 1), (1, 3)] {
            simplices.push(vec![here(a), there(b)]);
        }
    }
    PeriodicComplex::from_lifted_simplices(f, 1, coords, &simplices, Origin::Simplicial)
}

pub fn torsion(degree: usize) -> Result<ExplicitInput> {
    match degree {
        1 => parse_explicit(TORSION_DEGREE1),
        2 => parse_explicit(TORSION_DEGREE2),
        _ => Err(crate::Error::Config(format!("no torsion fixture in degree {degree}"))),
    }
}

pub fn schwarz_p_1() -> Result<ExplicitInput> {
    parse_explicit(SCHWARZ_P_1)
}

pub fn schwarz_p_12() -> Result<ExplicitInput> {
    parse_explicit(SCHWARZ_P_12)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sheafcore::write_explicit;

    #[test]
    fn shipped_explicit_file_matches_the_builder() {
        let x = parse_explicit(RUNNING_EXAMPLE_EXPLICIT).unwrap();
        assert_eq!(x.bisheaf().unwrap(), running_example(4).unwrap());
        let body: String = RUNNING_EXAMPLE_EXPLICIT
            .lines()
            .filter(|l| !l.starts_with('#'))
            .map(|l| format!("{l}\n"))
            .collect();
        assert_eq!(write_explicit(&x), body);
    }

    #[test]
    fn all_fixtures_parse() {
        for d in [1, 2] {
            torsion(d).unwrap().bisheaf().unwrap();
        }
        schwarz_p_1().unwrap().bisheaf().unwrap();
        let t = schwarz_p_12().unwrap();
        assert_eq!(t.base.len(), 16);
        t.bisheaf().unwrap();
        for n in 3..7 {
            running_example(n).unwrap();
        }
    }
}
