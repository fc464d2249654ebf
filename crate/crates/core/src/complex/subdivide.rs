use std::collections::BTreeMap;

use super::{Cell, CellComplex, ChainVector};
use crate::error::Result;

/// Barycentric subdivision together with its bookkeeping.
///
/// Each subdivided simplex is a flag `s_0 < ... < s_k` of original cells
/// ordered by increasing dimension; its vertices are the barycenters of the
/// flag in that order. Barycenters are numbered by (dimension, original id),
/// so every vertex list is ascending.
#[derive(Debug, Clone)]
pub struct Subdivision {
    pub complex: CellComplex,
    /// Original cells of each subdivided cell, lowest dimension first.
    pub flags: Vec<Vec<usize>>,
    /// Subdivided vertex id of the barycenter of each original cell.
    pub barycenter: Vec<usize>,
    /// Chain-level subdivision operator on each original cell.
    pub carrier: Vec<ChainVector>,
}

impl Subdivision {
    /// Original cell whose interior contains the given subdivided cell.
    pub fn support(&self, sd_cell: usize) -> usize {
        *self.flags[sd_cell].last().expect("nonempty flag")
    }

    /// Applies the carrier to a chain of the original complex.
    pub fn carry(&self, z: &ChainVector) -> ChainVector {
        let f = self.complex.field();
        let mut terms = Vec::new();
        for &(c, a) in z.terms() {
            terms.extend(
                self.carrier[c]
                    .terms()
                    .iter()
                    .map(|&(s, x)| (s, f.mul(a, x))),
            );
        }
        ChainVector::from_terms(f, z.degree(), terms)
    }

    /// Subdivided cells lying in the interiors of the given original cells.
    pub fn cells_over(&self, original: &[usize]) -> Vec<usize> {
        let mut member = vec![false; self.barycenter.len()];
        for &c in original {
            member[c] = true;
        }
        (0..self.flags.len())
            .filter(|&s| member[self.support(s)])
            .collect()
    }
}

/// Barycentric subdivision of a simplicial complex, with the carrier chain map.
pub fn barycentric_subdivide(c: &CellComplex) -> Result<Subdivision> {
    c.check_simplicial()?;
    let f = c.field();
    let mut originals: Vec<usize> = (0..c.len()).collect();
    originals.sort_by_key(|&x| (c.cell_dim(x), x));
    let mut barycenter = vec![0; c.len()];
    for (i, &x) in originals.iter().enumerate() {
        barycenter[x] = i;
    }

    let closures: Vec<Vec<usize>> = (0..c.len()).map(|x| c.closure_of(x)).collect();
    let mut chains_ending: Vec<Vec<Vec<usize>>> = vec![Vec::new(); c.len()];
    for &x in &originals {
        let mut chains = vec![vec![x]];
        for &t in &closures[x] {
            if t == x {
                continue;
            }
            for ch in &chains_ending[t] {
                let mut ext = ch.clone();
                ext.push(x);
                chains.push(ext);
            }
        }
        chains_ending[x] = chains;
    }

    let mut flags: Vec<Vec<usize>> = chains_ending.into_iter().flatten().collect();
    let key = |fl: &Vec<usize>| -> (usize, Vec<usize>) {
        (fl.len(), fl.iter().map(|&x| barycenter[x]).collect())
    };
    flags.sort_by_key(key);
    let index: BTreeMap<Vec<usize>, usize> = flags
        .iter()
        .enumerate()
        .map(|(i, fl)| (fl.clone(), i))
        .collect();

    let mut cells = Vec::with_capacity(flags.len());
    for fl in &flags {
        let dim = fl.len() - 1;
        let mut boundary = Vec::new();
        if dim > 0 {
            for i in 0..fl.len() {
                let mut face = fl.clone();
                face.remove(i);
                let inc = if i % 2 == 0 { 1 } else { f.neg(1) };
                boundary.push((index[&face], inc));
            }
        }
        cells.push(Cell {
            dim,
            boundary,
            vertices: Some(fl.iter().map(|&x| barycenter[x]).collect()),
            label: None,
        });
    }
    let complex = CellComplex::new(f, cells)?;

    let mut carrier: Vec<ChainVector> = vec![ChainVector::zero(f, 0); c.len()];
    for &x in &originals {
        let k = c.cell_dim(x);
        if k == 0 {
            carrier[x] = ChainVector::from_terms(f, 0, vec![(index[&vec![x]], 1)]);
            continue;
        }
        let sign = if k.is_multiple_of(2) { 1 } else { f.neg(1) };
        let mut terms = Vec::new();
        for &(face, inc) in &c.cell(x).boundary {
            for &(s, a) in carrier[face].terms() {
                let mut fl = flags[s].clone();
                fl.push(x);
                terms.push((index[&fl], f.mul(sign, f.mul(inc, a))));
            }
        }
        carrier[x] = ChainVector::from_terms(f, k, terms);
    }

    Ok(Subdivision {
        complex,
        flags,
        barycenter,
        carrier,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::homology;
    use crate::exactla::Field;

    #[test]
    fn edge_becomes_path() {
        let c = CellComplex::from_simplices(Field::gf2(), 2, &[vec![0, 1]]).unwrap();
        let sd = barycentric_subdivide(&c).unwrap();
        assert_eq!(sd.complex.cells_of_dim(0).len(), 3);
        assert_eq!(sd.complex.cells_of_dim(1).len(), 2);
    }

    #[test]
    fn triangle_counts() {
        let c = CellComplex::from_simplices(Field::gf2(), 3, &[vec![0, 1, 2]]).unwrap();
        let sd = barycentric_subdivide(&c).unwrap();
        let counts: Vec<usize> = (0..3).map(|k| sd.complex.cells_of_dim(k).len()).collect();
        assert_eq!(counts, vec![7, 12, 6]);
    }

    #[test]
    fn carrier_is_a_chain_map() {
        let f = Field::new(5).unwrap();
        let c = CellComplex::from_simplices(
            f,
            5,
            &[vec![0, 1, 2], vec![1, 2, 3], vec![0, 3, 4], vec![2, 4]],
        )
        .unwrap();
        let sd = barycentric_subdivide(&c).unwrap();
        for x in 0..c.len() {
            let z = ChainVector::from_terms(f, c.cell_dim(x), vec![(x, 1)]);
            let lhs = sd.complex.boundary(&sd.carry(&z));
            let rhs = sd.carry(&c.boundary(&z));
            if c.cell_dim(x) > 0 {
                assert_eq!(lhs, rhs, "cell {x}");
            }
        }
        for k in 0..3 {
            assert_eq!(
                homology(&c, k).unwrap().rank(),
                homology(&sd.complex, k).unwrap().rank()
            );
        }
    }

    #[test]
    fn vertex_lists_ascend() {
        let c = CellComplex::from_simplices(Field::gf2(), 3, &[vec![0, 1, 2]]).unwrap();
        let sd = barycentric_subdivide(&c).unwrap();
        for cell in sd.complex.cells() {
            let vs = cell.vertices.as_ref().unwrap();
            assert!(vs.windows(2).all(|w| w[0] < w[1]));
        }
    }
}
