//! Finite regular cell complexes over a prime field.
//!
//! The face poset follows the star convention: `leq(s, t)` holds when `t` is
//! a face of `s`, so vertices are the maximal elements.

mod cap;
mod chain;
mod homology;
mod subdivide;

use std::collections::BTreeSet;

pub use cap::{cap_product, coboundary, evaluate};
pub use chain::ChainVector;
pub use homology::{
    cohomology, homology, homology_of_cells, maximal_subcomplex, relative_homology, HomologyBasis,
};
pub use subdivide::{barycentric_subdivide, Subdivision};

use crate::error::{Error, Result};
use crate::exactla::{Field, FieldMatrix};

/// One cell. `boundary` lists codimension-one faces with incidence numbers.
/// Simplicial cells carry their ordered vertex list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cell {
    pub dim: usize,
    pub boundary: Vec<(usize, u32)>,
    pub vertices: Option<Vec<usize>>,
    pub label: Option<String>,
}

impl Cell {
    pub fn vertex() -> Self {
        Cell {
            dim: 0,
            boundary: Vec::new(),
            vertices: None,
            label: None,
        }
    }

    pub fn new(dim: usize, boundary: Vec<(usize, u32)>) -> Self {
        Cell {
            dim,
            boundary,
            vertices: None,
            label: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellComplex {
    field: Field,
    cells: Vec<Cell>,
    by_dim: Vec<Vec<usize>>,
    position: Vec<usize>,
    cofaces: Vec<Vec<usize>>,
}

impl CellComplex {
    /// Builds and validates a complex. Cell ids are the indices into `cells`.
    pub fn new(field: Field, cells: Vec<Cell>) -> Result<Self> {
        let c = Self::assemble(field, cells)?;
        validate(&c)?;
        Ok(c)
    }

    fn assemble(field: Field, mut cells: Vec<Cell>) -> Result<Self> {
        let n = cells.len();
        let mut by_dim: Vec<Vec<usize>> = Vec::new();
        let mut position = vec![0; n];
        let mut cofaces = vec![Vec::new(); n];
        for (id, cell) in cells.iter_mut().enumerate() {
            for (_, inc) in cell.boundary.iter_mut() {
                *inc %= field.p();
            }
            if by_dim.len() <= cell.dim {
                by_dim.resize(cell.dim + 1, Vec::new());
            }
            position[id] = by_dim[cell.dim].len();
            by_dim[cell.dim].push(id);
            for &(face, _) in &cell.boundary {
                if face >= n || face == id {
                    return Err(Error::DanglingFace { cell: id, face });
                }
                cofaces[face].push(id);
            }
        }
        Ok(CellComplex {
            field,
            cells,
            by_dim,
            position,
            cofaces,
        })
    }

    pub fn empty(field: Field) -> Self {
        Self::assemble(field, Vec::new()).expect("empty complex")
    }

    /// Simplicial complex on vertices `0..n_vertices` generated by the given
    /// simplices. Every face is added; each simplex is oriented by ascending
    /// vertex index. Cells are ordered by dimension, then lexicographically.
    pub fn from_simplices(
        field: Field,
        n_vertices: usize,
        simplices: &[Vec<usize>],
    ) -> Result<Self> {
        let mut all: BTreeSet<(usize, Vec<usize>)> = BTreeSet::new();
        for v in 0..n_vertices {
            all.insert((0, vec![v]));
        }
        for s in simplices {
            let mut s = s.clone();
            s.sort_unstable();
            s.dedup();
            if s.iter().any(|&v| v >= n_vertices) {
                return Err(Error::Unsupported(format!(
                    "simplex {:?} uses unknown vertex",
                    s
                )));
            }
            for mask in 1u64..(1u64 << s.len()) {
                let face: Vec<usize> = (0..s.len())
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| s[i])
                    .collect();
                all.insert((face.len() - 1, face));
            }
        }
        let ordered: Vec<Vec<usize>> = all.into_iter().map(|(_, s)| s).collect();
        let index: std::collections::BTreeMap<&Vec<usize>, usize> =
            ordered.iter().enumerate().map(|(i, s)| (s, i)).collect();
        let mut cells = Vec::with_capacity(ordered.len());
        for s in &ordered {
            let dim = s.len() - 1;
            let mut boundary = Vec::new();
            if dim > 0 {
                for i in 0..s.len() {
                    let mut face = s.clone();
                    face.remove(i);
                    let inc = if i % 2 == 0 { 1 } else { field.neg(1) };
                    boundary.push((index[&face], inc));
                }
            }
            cells.push(Cell {
                dim,
                boundary,
                vertices: Some(s.clone()),
                label: None,
            });
        }
        Self::new(field, cells)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn cell(&self, id: usize) -> &Cell {
        &self.cells[id]
    }

    pub fn cell_dim(&self, id: usize) -> usize {
        self.cells[id].dim
    }

    /// Top dimension, or `None` for the empty complex.
    pub fn dim(&self) -> Option<usize> {
        self.by_dim.len().checked_sub(1)
    }

    pub fn cells_of_dim(&self, k: usize) -> &[usize] {
        self.by_dim.get(k).map_or(&[], |v| v.as_slice())
    }

    /// Index of a cell among the cells of its dimension.
    pub fn position(&self, id: usize) -> usize {
        self.position[id]
    }

    pub fn faces(&self, id: usize) -> impl Iterator<Item = usize> + '_ {
        self.cells[id].boundary.iter().map(|&(f, _)| f)
    }

    /// Cells having `id` as a codimension-one face.
    pub fn cofaces(&self, id: usize) -> &[usize] {
        &self.cofaces[id]
    }

    /// Incidence number of `face` in the boundary of `id`.
    pub fn incidence(&self, id: usize, face: usize) -> u32 {
        self.cells[id]
            .boundary
            .iter()
            .filter(|&&(f, _)| f == face)
            .fold(0, |acc, &(_, inc)| self.field.add(acc, inc))
    }

    /// All faces of `id`, including `id` itself, sorted.
    pub fn closure_of(&self, id: usize) -> Vec<usize> {
        self.closure(&[id])
    }

    /// Smallest closed set containing `set`, sorted.
    pub fn closure(&self, set: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.len()];
        let mut stack: Vec<usize> = set.to_vec();
        while let Some(c) = stack.pop() {
            if seen[c] {
                continue;
            }
            seen[c] = true;
            stack.extend(self.faces(c));
        }
        (0..self.len()).filter(|&c| seen[c]).collect()
    }

    /// Cells having `id` as a face (any codimension), including `id`, sorted.
    pub fn star_of(&self, id: usize) -> Vec<usize> {
        let mut seen = vec![false; self.len()];
        let mut stack = vec![id];
        while let Some(c) = stack.pop() {
            if seen[c] {
                continue;
            }
            seen[c] = true;
            stack.extend(self.cofaces(c).iter().copied());
        }
        (0..self.len()).filter(|&c| seen[c]).collect()
    }

    pub fn is_closed(&self, set: &[usize]) -> bool {
        self.first_missing_face(set).is_none()
    }

    pub(crate) fn first_missing_face(&self, set: &[usize]) -> Option<(usize, usize)> {
        let member = self.membership(set);
        set.iter()
            .flat_map(|&c| self.faces(c).map(move |f| (c, f)))
            .find(|&(_, f)| !member[f])
    }

    pub(crate) fn membership(&self, set: &[usize]) -> Vec<bool> {
        let mut m = vec![false; self.len()];
        for &c in set {
            m[c] = true;
        }
        m
    }

    /// Face-poset order: `leq(s, t)` iff `t` is a face of `s` (or equal).
    pub fn leq(&self, s: usize, t: usize) -> bool {
        s == t
            || (self.cell_dim(t) < self.cell_dim(s) && self.closure_of(s).binary_search(&t).is_ok())
    }

    /// Matrix of the boundary from `k`-cells to `(k-1)`-cells, both restricted
    /// to `keep` (all cells when `None`). Rows and columns follow id order.
    pub fn boundary_matrix(&self, k: usize, keep: Option<&[bool]>) -> FieldMatrix {
        let kept = |c: &usize| keep.is_none_or(|m| m[*c]);
        let cols: Vec<usize> = self.cells_of_dim(k).iter().copied().filter(kept).collect();
        let rows: Vec<usize> = if k == 0 {
            Vec::new()
        } else {
            self.cells_of_dim(k - 1)
                .iter()
                .copied()
                .filter(kept)
                .collect()
        };
        let mut row_of = vec![usize::MAX; self.len()];
        for (i, &r) in rows.iter().enumerate() {
            row_of[r] = i;
        }
        let mut m = FieldMatrix::zeros(self.field, rows.len(), cols.len());
        for (j, &c) in cols.iter().enumerate() {
            for &(f, inc) in &self.cells[c].boundary {
                let i = row_of[f];
                if i != usize::MAX {
                    let v = self.field.add(m.get(i, j), inc);
                    m.set(i, j, v);
                }
            }
        }
        m
    }

    /// Boundary of a chain.
    pub fn boundary(&self, z: &ChainVector) -> ChainVector {
        let f = self.field;
        let mut terms = Vec::new();
        for &(c, a) in z.terms() {
            for &(face, inc) in &self.cells[c].boundary {
                terms.push((face, f.mul(a, inc)));
            }
        }
        ChainVector::from_terms(f, z.degree().saturating_sub(1), terms)
    }

    pub fn is_cycle(&self, z: &ChainVector) -> bool {
        z.degree() == 0 || self.boundary(z).is_zero()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.by_dim
            .iter()
            .enumerate()
            .map(|(k, cells)| {
                if k % 2 == 0 {
                    cells.len() as i64
                } else {
                    -(cells.len() as i64)
                }
            })
            .sum()
    }

    /// Ordered vertex list of a simplicial cell.
    pub fn simplex_vertices(&self, id: usize) -> Result<&[usize]> {
        self.cells[id]
            .vertices
            .as_deref()
            .ok_or(Error::NotSimplicial(id))
    }

    /// Checks that every cell is a simplex: its closure has `k+1` vertices and
    /// `2^(k+1) - 1` cells.
    pub fn check_simplicial(&self) -> Result<()> {
        for id in 0..self.len() {
            let k = self.cell_dim(id);
            let cl = self.closure_of(id);
            let nv = cl.iter().filter(|&&c| self.cell_dim(c) == 0).count();
            if nv != k + 1 || cl.len() != (1usize << (k + 1)) - 1 {
                return Err(Error::NotSimplicial(id));
            }
        }
        Ok(())
    }

    /// Same complex with relabelled cells; `perm[old] = new`.
    pub fn relabel(&self, perm: &[usize]) -> Result<CellComplex> {
        let mut cells = vec![Cell::vertex(); self.len()];
        for (old, cell) in self.cells.iter().enumerate() {
            let mut c = cell.clone();
            c.boundary = c.boundary.iter().map(|&(f, i)| (perm[f], i)).collect();
            c.vertices = c.vertices.map(|vs| vs.iter().map(|&v| perm[v]).collect());
            cells[perm[old]] = c;
        }
        CellComplex::new(self.field, cells)
    }
}

/// Checks face gradation and that the boundary of a boundary vanishes.
pub fn validate(c: &CellComplex) -> Result<()> {
    for (id, cell) in c.cells.iter().enumerate() {
        for &(face, _) in &cell.boundary {
            if face >= c.len() {
                return Err(Error::DanglingFace { cell: id, face });
            }
            let fd = c.cells[face].dim;
            if fd + 1 != cell.dim {
                return Err(Error::Gradation {
                    cell: id,
                    dim: cell.dim,
                    face,
                    face_dim: fd,
                });
            }
        }
    }
    for id in 0..c.len() {
        if c.cells[id].dim < 2 {
            continue;
        }
        let z = ChainVector::from_terms(c.field, c.cells[id].dim, vec![(id, 1)]);
        if !c.boundary(&c.boundary(&z)).is_zero() {
            return Err(Error::BoundarySquare(id));
        }
    }
    Ok(())
}
