use std::collections::BTreeMap;

use super::{LiftedSimplex, Origin, PeriodicComplex, Rational};
use crate::error::{Error, Result};
use crate::exactla::Field;

/// A unit cube of the grid: its lowest corner and the axes it spans.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cube {
    pub origin: Vec<i64>,
    pub axes: Vec<usize>,
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

/// Builds a quotient complex from cubes of an integer grid.
///
/// Axes `0..d` are periodic with `extents[i]` grid steps per period; the
/// remaining axes run over `0..=extents[i]`. Each cube is split into simplices
/// by the standard staircase (Freudenthal) rule, which is compatible across
/// neighbouring cubes and across the periodic identification.
pub fn cubical_complex(
    field: Field,
    extents: &[usize],
    d: usize,
    cubes: &[Cube],
) -> Result<PeriodicComplex> {
    let n = extents.len();
    if d > n {
        return Err(Error::InvalidPeriodic(
            "more periodic axes than grid axes".into(),
        ));
    }
    for (i, &e) in extents.iter().enumerate() {
        if i < d && e < 2 {
            return Err(Error::Unsupported(format!(
                "periodic axis {} needs at least two grid steps",
                i + 1
            )));
        }
        if e == 0 {
            return Err(Error::InvalidPeriodic(format!(
                "axis {} has zero extent",
                i + 1
            )));
        }
    }
    let wrap = |x: &[i64]| -> (Vec<i64>, Vec<i64>) {
        let mut canon = x.to_vec();
        let mut shift = vec![0i64; d];
        for i in 0..d {
            let e = extents[i] as i64;
            shift[i] = x[i].div_euclid(e);
            canon[i] = x[i].rem_euclid(e);
        }
        (canon, shift)
    };

    let mut raw: Vec<Vec<(Vec<i64>, Vec<i64>)>> = Vec::new();
    for cube in cubes {
        if cube.origin.len() != n {
            return Err(Error::InvalidPeriodic(format!(
                "cube {:?} has wrong arity",
                cube.origin
            )));
        }
        let mut axes = cube.axes.clone();
        axes.sort_unstable();
        axes.dedup();
        if axes.iter().any(|&a| a >= n) {
            return Err(Error::InvalidPeriodic(format!(
                "cube {:?} spans an unknown axis",
                cube.origin
            )));
        }
        for i in 0..n {
            let lo = cube.origin[i];
            let hi = lo + axes.contains(&i) as i64;
            let max = extents[i] as i64;
            let ok = if i < d {
                (0..max).contains(&lo)
            } else {
                lo >= 0 && hi <= max
            };
            if !ok {
                return Err(Error::InvalidPeriodic(format!(
                    "cube {:?} leaves the grid",
                    cube.origin
                )));
            }
        }
        for perm in permutations(&axes) {
            let mut point = cube.origin.clone();
            let mut simplex = vec![wrap(&point)];
            for &a in &perm {
                point[a] += 1;
                simplex.push(wrap(&point));
            }
            raw.push(simplex);
        }
        if axes.is_empty() {
            raw.push(vec![wrap(&cube.origin)]);
        }
    }

    let mut ids: BTreeMap<Vec<i64>, usize> = BTreeMap::new();
    for s in &raw {
        for (p, _) in s {
            ids.insert(p.clone(), 0);
        }
    }
    for (i, v) in ids.values_mut().enumerate() {
        *v = i;
    }
    let coords: Vec<Vec<Rational>> = ids
        .keys()
        .map(|p| {
            (0..n)
                .map(|i| {
                    if i < d {
                        Rational::new(p[i], extents[i] as i64)
                    } else {
                        Rational::from_integer(p[i])
                    }
                })
                .collect()
        })
        .collect();
    let simplices: Vec<LiftedSimplex> = raw
        .iter()
        .map(|s| s.iter().map(|(p, sh)| (ids[p], sh.clone())).collect())
        .collect();
    PeriodicComplex::from_lifted_simplices(
        field,
        d,
        coords,
        &simplices,
        Origin::Cubical {
            extents: extents.to_vec(),
        },
    )
}
