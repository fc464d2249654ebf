use super::{Field, FieldMatrix};
use crate::error::{Error, Result};

/// A linear subspace of `GF(p)^n`, stored as the nonzero rows of an RREF
/// matrix. Equal subspaces have identical representations.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    basis: FieldMatrix,
    pivots: Vec<usize>,
}

impl Subspace {
    /// Span of the rows of `generators`.
    pub fn from_generators(generators: &FieldMatrix) -> Self {
        let mut b = generators.clone();
        let pivots = b.rref_in_place();
        b.truncate_rows(pivots.len());
        Subspace { basis: b, pivots }
    }

    pub fn from_vectors(field: Field, ambient: usize, vectors: &[Vec<u32>]) -> Self {
        Self::from_generators(&FieldMatrix::from_row_vectors(field, ambient, vectors))
    }

    pub fn zero(field: Field, ambient: usize) -> Self {
        Subspace {
            basis: FieldMatrix::zeros(field, 0, ambient),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: Field, ambient: usize) -> Self {
        Subspace {
            basis: FieldMatrix::identity(field, ambient),
            pivots: (0..ambient).collect(),
        }
    }

    pub fn field(&self) -> Field {
        self.basis.field()
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient_dim()
    }

    /// Basis rows in RREF.
    pub fn basis(&self) -> &FieldMatrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<u32>> {
        self.basis.row_vectors()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Ambient-by-dim matrix whose columns are the basis vectors.
    pub fn inclusion(&self) -> FieldMatrix {
        self.basis.transpose()
    }

    /// Coordinates of `v` in the stored basis, or `None` if `v` lies outside.
    pub fn coordinates(&self, v: &[u32]) -> Option<Vec<u32>> {
        assert_eq!(v.len(), self.ambient_dim());
        let f = self.field();
        let coords: Vec<u32> = self.pivots.iter().map(|&c| v[c]).collect();
        let mut rest = v.to_vec();
        for (i, &a) in coords.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, r) in rest.iter_mut().enumerate() {
                *r = f.sub(*r, f.mul(a, self.basis.get(i, j)));
            }
        }
        rest.iter().all(|&x| x == 0).then_some(coords)
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.ambient_dim() == other.ambient_dim()
            && (0..self.dim()).all(|i| other.contains(self.basis.row(i)))
    }

    /// Vectors `w` with `w . u = 0` for every `u` in the subspace.
    pub fn annihilator(&self) -> Subspace {
        kernel(&self.basis)
    }

    /// Vector with the given coordinates in the stored basis.
    pub fn vector(&self, coords: &[u32]) -> Vec<u32> {
        self.inclusion().mul_vec(coords).expect("coordinate length")
    }
}

fn check_ambient(a: &Subspace, b: &Subspace) -> Result<()> {
    if a.ambient_dim() != b.ambient_dim() {
        return Err(Error::AmbientMismatch(a.ambient_dim(), b.ambient_dim()));
    }
    if a.field() != b.field() {
        return Err(Error::FieldMismatch(a.field().p(), b.field().p()));
    }
    Ok(())
}

/// Column space of `m`.
pub fn image(m: &FieldMatrix) -> Subspace {
    Subspace::from_generators(&m.transpose())
}

/// Null space of `m`.
pub fn kernel(m: &FieldMatrix) -> Subspace {
    let f = m.field();
    let mut r = m.clone();
    let pivots = r.rref_in_place();
    let n = m.cols();
    let mut is_pivot = vec![false; n];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let gens: Vec<Vec<u32>> = (0..n)
        .filter(|&j| !is_pivot[j])
        .map(|j| {
            let mut v = vec![0u32; n];
            v[j] = 1;
            for (row, &c) in pivots.iter().enumerate() {
                v[c] = f.neg(r.get(row, j));
            }
            v
        })
        .collect();
    Subspace::from_vectors(f, n, &gens)
}

/// `{v : m v in s}`.
pub fn preimage(m: &FieldMatrix, s: &Subspace) -> Result<Subspace> {
    if s.ambient_dim() != m.rows() {
        return Err(Error::AmbientMismatch(s.ambient_dim(), m.rows()));
    }
    let ann = s.annihilator();
    Ok(kernel(&ann.basis().mul(m)?))
}

pub fn intersect(a: &Subspace, b: &Subspace) -> Result<Subspace> {
    check_ambient(a, b)?;
    let stacked = a.annihilator().basis().vstack(b.annihilator().basis())?;
    Ok(kernel(&stacked))
}

pub fn span_sum(a: &Subspace, b: &Subspace) -> Result<Subspace> {
    check_ambient(a, b)?;
    Ok(Subspace::from_generators(&a.basis().vstack(b.basis())?))
}

/// Surjection with kernel exactly `k`. The quotient basis is given by the
/// standard vectors at the non-pivot columns of `k`, in increasing order.
pub fn quotient(v_dim: usize, k: &Subspace) -> Result<(FieldMatrix, usize)> {
    if k.ambient_dim() != v_dim {
        return Err(Error::AmbientMismatch(k.ambient_dim(), v_dim));
    }
    let f = k.field();
    let free = complement_indices(k);
    let mut proj = FieldMatrix::zeros(f, free.len(), v_dim);
    for (row, &j) in free.iter().enumerate() {
        proj.set(row, j, 1);
        for (i, &c) in k.pivots().iter().enumerate() {
            let coeff = k.basis().get(i, j);
            if coeff != 0 {
                proj.set(row, c, f.neg(coeff));
            }
        }
    }
    Ok((proj, free.len()))
}

/// Non-pivot columns of `k`; the standard vectors there complete its basis.
pub fn complement_indices(k: &Subspace) -> Vec<usize> {
    let mut is_pivot = vec![false; k.ambient_dim()];
    for &c in k.pivots() {
        is_pivot[c] = true;
    }
    (0..k.ambient_dim()).filter(|&j| !is_pivot[j]).collect()
}

/// Matrix of `m` from the stored basis of `dom` to the stored basis of `cod`.
pub fn restrict_map(m: &FieldMatrix, dom: &Subspace, cod: &Subspace) -> Result<FieldMatrix> {
    if m.cols() != dom.ambient_dim() {
        return Err(Error::AmbientMismatch(m.cols(), dom.ambient_dim()));
    }
    if m.rows() != cod.ambient_dim() {
        return Err(Error::AmbientMismatch(m.rows(), cod.ambient_dim()));
    }
    let mut columns = Vec::with_capacity(dom.dim());
    for i in 0..dom.dim() {
        let w = m.mul_vec(dom.basis().row(i))?;
        columns.push(cod.coordinates(&w).ok_or(Error::NotRestrictable(i))?);
    }
    Ok(FieldMatrix::from_columns(m.field(), cod.dim(), &columns))
}

/// `ker(m - 1)`.
pub fn eigenspace_one(m: &FieldMatrix) -> Result<Subspace> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch(
            "eigenspace of a non-square matrix".into(),
        ));
    }
    Ok(kernel(&m.sub(&FieldMatrix::identity(m.field(), m.rows()))?))
}

/// Expresses vectors in terms of a fixed list of linearly independent rows.
#[derive(Debug, Clone)]
pub struct Decomposer {
    rref: FieldMatrix,
    pivots: Vec<usize>,
    transform: FieldMatrix,
}

impl Decomposer {
    /// `rows` must be linearly independent.
    pub fn new(rows: &FieldMatrix) -> Result<Self> {
        let n = rows.rows();
        let f = rows.field();
        let mut aug = rows.hstack(&FieldMatrix::identity(f, n))?;
        let pivots = aug.rref_in_place();
        let cols = rows.cols();
        if pivots.iter().filter(|&&c| c < cols).count() != n {
            return Err(Error::Internal("decomposer rows are dependent".into()));
        }
        let left: Vec<usize> = (0..cols).collect();
        let right: Vec<usize> = (cols..cols + n).collect();
        let rref = aug.select_columns(&left);
        let transform = aug.select_columns(&right);
        Ok(Decomposer {
            rref,
            pivots,
            transform,
        })
    }

    /// Coefficients `c` with `x = sum c_i rows_i`, or `None` if `x` is outside the span.
    pub fn coefficients(&self, x: &[u32]) -> Option<Vec<u32>> {
        let f = self.rref.field();
        let n = self.transform.cols();
        let a: Vec<u32> = self.pivots.iter().map(|&c| x[c]).collect();
        let mut rest = x.to_vec();
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, r) in rest.iter_mut().enumerate() {
                *r = f.sub(*r, f.mul(ai, self.rref.get(i, j)));
            }
        }
        if rest.iter().any(|&v| v != 0) {
            return None;
        }
        let mut c = vec![0u32; n];
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, cj) in c.iter_mut().enumerate() {
                *cj = f.add(*cj, f.mul(ai, self.transform.get(i, j)));
            }
        }
        Some(c)
    }
}
