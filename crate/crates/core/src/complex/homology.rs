use super::{CellComplex, ChainVector};
use crate::error::{Error, Result};
use crate::exactla::{image, kernel, span_sum, Decomposer, Field, FieldMatrix, Subspace};

/// A basis of one (co)homology group with representatives and a coordinate
/// functional.
///
/// The group is computed on a chain complex spanned by a set of cells of a
/// larger complex. Chains passed to [`HomologyBasis::coords_of`] are first
/// projected onto that set, which is the quotient map for relative groups.
#[derive(Debug, Clone)]
pub struct HomologyBasis {
    field: Field,
    degree: usize,
    cells: Vec<usize>,
    representatives: Vec<ChainVector>,
    outgoing: FieldMatrix,
    boundaries: usize,
    decomposer: Decomposer,
}

impl HomologyBasis {
    /// `incoming` maps into the chain group on `cells` and `outgoing` maps out
    /// of it; their composite must vanish.
    pub(crate) fn from_maps(
        field: Field,
        degree: usize,
        cells: Vec<usize>,
        incoming: &FieldMatrix,
        outgoing: &FieldMatrix,
    ) -> Result<Self> {
        let n = cells.len();
        let cycles = kernel(outgoing);
        let bounds = image(incoming);
        let mut span = bounds.clone();
        let mut reps = Vec::new();
        for z in cycles.basis_vectors() {
            if !span.contains(&z) {
                span = span_sum(&span, &Subspace::from_vectors(field, n, std::slice::from_ref(&z)))?;
                reps.push(z);
            }
        }
        let mut rows = bounds.basis_vectors();
        rows.extend(reps.iter().cloned());
        let decomposer = Decomposer::new(&FieldMatrix::from_row_vectors(field, n, &rows))?;
        let representatives = reps
            .iter()
            .map(|r| ChainVector::from_dense(field, degree, &cells, r))
            .collect();
        Ok(HomologyBasis {
            field,
            degree,
            cells,
            representatives,
            outgoing: outgoing.clone(),
            boundaries: bounds.dim(),
            decomposer,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn rank(&self) -> usize {
        self.representatives.len()
    }

    pub fn representatives(&self) -> &[ChainVector] {
        &self.representatives
    }

    /// Cells spanning the chain group, in id order.
    pub fn cells(&self) -> &[usize] {
        &self.cells
    }

    /// Class coordinates of a cycle. Terms outside the chain group are dropped
    /// first; the remainder must be a cycle.
    pub fn coords_of(&self, z: &ChainVector) -> Result<Vec<u32>> {
        if z.degree() != self.degree && !z.is_zero() {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                got: z.degree(),
            });
        }
        let v = z.dense_on(&self.cells);
        self.coords_of_dense(&v)
    }

    pub(crate) fn coords_of_dense(&self, v: &[u32]) -> Result<Vec<u32>> {
        if self.outgoing.mul_vec(v)?.iter().any(|&x| x != 0) {
            return Err(Error::NotACycle);
        }
        let c = self
            .decomposer
            .coefficients(v)
            .ok_or_else(|| Error::Internal("cycle outside cycles + boundaries".into()))?;
        Ok(c[self.boundaries..].to_vec())
    }

    /// Chain representing the class with the given coordinates.
    pub fn chain_of(&self, coords: &[u32]) -> ChainVector {
        ChainVector::combine(self.field, self.degree, &self.representatives, coords)
    }
}

/// Homology of the chain complex spanned by `cells`, a difference of two
/// closed sets (so boundary terms outside `cells` may be dropped).
pub fn homology_of_cells(c: &CellComplex, cells: &[usize], k: usize) -> Result<HomologyBasis> {
    let keep = c.membership(cells);
    let group: Vec<usize> = c
        .cells_of_dim(k)
        .iter()
        .copied()
        .filter(|&x| keep[x])
        .collect();
    let incoming = c.boundary_matrix(k + 1, Some(&keep));
    let outgoing = c.boundary_matrix(k, Some(&keep));
    HomologyBasis::from_maps(c.field(), k, group, &incoming, &outgoing)
}

pub fn homology(c: &CellComplex, k: usize) -> Result<HomologyBasis> {
    let all: Vec<usize> = (0..c.len()).collect();
    homology_of_cells(c, &all, k)
}

fn complement_of_closed(c: &CellComplex, sub: &[usize]) -> Result<Vec<usize>> {
    if let Some((cell, face)) = c.first_missing_face(sub) {
        return Err(Error::NotClosed { cell, face });
    }
    let member = c.membership(sub);
    Ok((0..c.len()).filter(|&x| !member[x]).collect())
}

/// Homology of `C(c) / C(sub)`; `sub` must be closed.
pub fn relative_homology(c: &CellComplex, sub: &[usize], k: usize) -> Result<HomologyBasis> {
    let rest = complement_of_closed(c, sub)?;
    homology_of_cells(c, &rest, k)
}

/// Relative cohomology `H^k(c, sub)` with representative cocycles, stored as
/// [`ChainVector`]s of degree `k`.
pub fn cohomology(c: &CellComplex, sub: &[usize], k: usize) -> Result<HomologyBasis> {
    let rest = complement_of_closed(c, sub)?;
    let keep = c.membership(&rest);
    let group: Vec<usize> = c
        .cells_of_dim(k)
        .iter()
        .copied()
        .filter(|&x| keep[x])
        .collect();
    let incoming = c.boundary_matrix(k, Some(&keep)).transpose();
    let outgoing = c.boundary_matrix(k + 1, Some(&keep)).transpose();
    let incoming = if k == 0 {
        FieldMatrix::zeros(c.field(), group.len(), 0)
    } else {
        incoming
    };
    HomologyBasis::from_maps(c.field(), k, group, &incoming, &outgoing)
}

/// Largest subset of `keep` closed under taking faces.
pub fn maximal_subcomplex(c: &CellComplex, keep: &[usize]) -> Vec<usize> {
    let mut member = c.membership(keep);
    loop {
        let mut changed = false;
        for id in 0..c.len() {
            if member[id] && c.faces(id).any(|f| !member[f]) {
                member[id] = false;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    (0..c.len()).filter(|&x| member[x]).collect()
}
