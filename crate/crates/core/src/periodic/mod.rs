//! Quotients of periodic complexes, their projections to circles, and covers.
//!
//! A quotient complex `G` is stored as a simplicial complex whose vertices
//! carry coordinates in `[0,1)^d x R^(n-d)`. Each cell records a lift: an
//! integer shift per vertex saying which translate of that vertex the cell
//! actually touches. Lifts are normalized so the first vertex has shift zero.

mod base;
mod cover;
mod cubical;
mod fibers;

use std::collections::BTreeMap;

pub use base::{base_cellulation, star_preimages, BaseCellulation, StarAssignment};
pub use cover::k_fold_cover;
pub use cubical::{cubical_complex, Cube};
pub use fibers::{is_fiber_aligned, subdivide_for_fibers, FiberSubdivision};

use num_rational::Rational64;
use num_traits::{One, Signed, Zero};

use crate::complex::{Cell, CellComplex, ChainVector};
use crate::error::{Error, Result};
use crate::exactla::Field;

pub type Rational = Rational64;

/// How the complex was described on input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Origin {
    Simplicial,
    /// Cubical grid, triangulated; `extents[i]` grid cells along axis `i`.
    Cubical {
        extents: Vec<usize>,
    },
}

/// A simplex of the periodic complex given by vertices and their shifts.
pub type LiftedSimplex = Vec<(usize, Vec<i64>)>;

#[derive(Debug, Clone)]
pub struct PeriodicComplex {
    complex: CellComplex,
    d: usize,
    coords: Vec<Vec<Rational>>,
    lifts: Vec<Vec<Vec<i64>>>,
    origin: Origin,
}

fn normalize(simplex: &LiftedSimplex) -> LiftedSimplex {
    let mut s = simplex.clone();
    s.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.cmp(&b.1)));
    if let Some(first) = s.first().map(|x| x.1.clone()) {
        for (_, shift) in s.iter_mut() {
            for (x, f) in shift.iter_mut().zip(&first) {
                *x -= f;
            }
        }
    }
    s
}

impl PeriodicComplex {
    /// Builds the complex generated by the given lifted simplices; all faces
    /// are added. Vertex cells get ids `0..coords.len()`.
    pub fn from_lifted_simplices(
        field: Field,
        d: usize,
        coords: Vec<Vec<Rational>>,
        simplices: &[LiftedSimplex],
        origin: Origin,
    ) -> Result<Self> {
        let nv = coords.len();
        let n = coords.first().map_or(d, |c| c.len());
        for (v, c) in coords.iter().enumerate() {
            if c.len() != n || n < d {
                return Err(Error::InvalidPeriodic(format!(
                    "vertex {v} has {} coordinates",
                    c.len()
                )));
            }
            for x in &c[..d] {
                if *x < Rational::zero() || *x >= Rational::one() {
                    return Err(Error::InvalidPeriodic(format!(
                        "vertex {v} periodic coordinate {x} outside [0,1)"
                    )));
                }
            }
        }
        let mut all: BTreeMap<(usize, LiftedSimplex), ()> = BTreeMap::new();
        for v in 0..nv {
            all.insert((0, vec![(v, vec![0; d])]), ());
        }
        for s in simplices {
            if s.iter().any(|(v, sh)| *v >= nv || sh.len() != d) {
                return Err(Error::InvalidPeriodic(format!("malformed simplex {s:?}")));
            }
            let mut ids: Vec<usize> = s.iter().map(|x| x.0).collect();
            ids.sort_unstable();
            if ids.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::Unsupported(format!(
                    "simplex {s:?} meets two translates of one vertex; refine the periodic cell"
                )));
            }
            for mask in 1u64..(1u64 << s.len()) {
                let face: LiftedSimplex = (0..s.len())
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| s[i].clone())
                    .collect();
                let face = normalize(&face);
                all.insert((face.len() - 1, face), ());
            }
        }
        let ordered: Vec<LiftedSimplex> = all.into_keys().map(|(_, s)| s).collect();
        let index: BTreeMap<&LiftedSimplex, usize> =
            ordered.iter().enumerate().map(|(i, s)| (s, i)).collect();
        let mut cells = Vec::with_capacity(ordered.len());
        let mut lifts = Vec::with_capacity(ordered.len());
        for s in &ordered {
            let dim = s.len() - 1;
            let mut boundary = Vec::new();
            if dim > 0 {
                for i in 0..s.len() {
                    let mut face = s.clone();
                    face.remove(i);
                    let face = normalize(&face);
                    let inc = if i % 2 == 0 { 1 } else { field.neg(1) };
                    boundary.push((index[&face], inc));
                }
            }
            cells.push(Cell {
                dim,
                boundary,
                vertices: Some(s.iter().map(|x| x.0).collect()),
                label: None,
            });
            lifts.push(s.iter().map(|x| x.1.clone()).collect());
        }
        let complex = CellComplex::new(field, cells)?;
        let g = PeriodicComplex {
            complex,
            d,
            coords,
            lifts,
            origin,
        };
        g.validate()?;
        Ok(g)
    }

    /// Builds a complex from plain vertex lists, choosing for every vertex the
    /// translate nearest to the simplex's first vertex in each periodic axis.
    pub fn from_simplices_nearest(
        field: Field,
        d: usize,
        coords: Vec<Vec<Rational>>,
        simplices: &[Vec<usize>],
    ) -> Result<Self> {
        let half = Rational::new(1, 2);
        let mut lifted = Vec::with_capacity(simplices.len());
        for s in simplices {
            let Some(&first) = s.first() else { continue };
            let mut ls = Vec::with_capacity(s.len());
            for &v in s {
                if v >= coords.len() || first >= coords.len() {
                    return Err(Error::InvalidPeriodic(format!(
                        "simplex {s:?} uses unknown vertex"
                    )));
                }
                let mut shift = vec![0i64; d];
                for (i, sh) in shift.iter_mut().enumerate() {
                    let delta = coords[first][i] - coords[v][i];
                    let r = (delta + half).floor();
                    if (delta - r).abs() == half {
                        return Err(Error::InvalidPeriodic(format!(
                            "simplex {s:?}: nearest translate of vertex {v} is ambiguous"
                        )));
                    }
                    *sh = r.to_integer();
                }
                ls.push((v, shift));
            }
            lifted.push(ls);
        }
        Self::from_lifted_simplices(field, d, coords, &lifted, Origin::Simplicial)
    }

    /// Checks coordinate ranges, lift shapes, lift coherence with faces, and
    /// that every cell spans less than one period in each periodic axis.
    pub fn validate(&self) -> Result<()> {
        let c = &self.complex;
        for id in 0..c.len() {
            let vs = c.simplex_vertices(id)?;
            let lift = &self.lifts[id];
            if lift.len() != vs.len() || lift.iter().any(|s| s.len() != self.d) {
                return Err(Error::InvalidPeriodic(format!(
                    "cell {id} has a malformed lift"
                )));
            }
            for axis in 0..self.d {
                let (lo, hi) = self.projected_interval(id, axis);
                if hi - lo >= Rational::one() {
                    return Err(Error::Unsupported(format!(
                        "cell {id} spans a full period along axis {}; refine the periodic cell",
                        axis + 1
                    )));
                }
            }
            for face in c.faces(id) {
                let fvs = c.simplex_vertices(face)?;
                let restricted: LiftedSimplex = fvs
                    .iter()
                    .map(|v| {
                        let j = vs.iter().position(|x| x == v).expect("face vertex");
                        (*v, lift[j].clone())
                    })
                    .collect();
                let own: LiftedSimplex = fvs
                    .iter()
                    .copied()
                    .zip(self.lifts[face].iter().cloned())
                    .collect();
                if normalize(&restricted) != normalize(&own) {
                    return Err(Error::InvalidPeriodic(format!(
                        "lift of cell {id} disagrees with face {face}"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn complex(&self) -> &CellComplex {
        &self.complex
    }

    pub fn field(&self) -> Field {
        self.complex.field()
    }

    /// Number of periodic axes.
    pub fn d(&self) -> usize {
        self.d
    }

    /// Ambient dimension.
    pub fn n(&self) -> usize {
        self.coords.first().map_or(self.d, |c| c.len())
    }

    pub fn vertex_count(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Vec<Rational>] {
        &self.coords
    }

    pub fn origin(&self) -> &Origin {
        &self.origin
    }

    /// Shifts of the vertices of a cell, in its vertex order.
    pub fn lift(&self, cell: usize) -> &[Vec<i64>] {
        &self.lifts[cell]
    }

    /// The cell as a lifted simplex.
    pub fn lifted_simplex(&self, cell: usize) -> LiftedSimplex {
        let vs = self.complex.simplex_vertices(cell).expect("simplicial");
        vs.iter()
            .copied()
            .zip(self.lifts[cell].iter().cloned())
            .collect()
    }

    /// Coordinates of the `j`-th vertex of `cell` in the cell's own lift.
    pub fn lifted_point(&self, cell: usize, j: usize) -> Vec<Rational> {
        let v = self.complex.simplex_vertices(cell).expect("simplicial")[j];
        let mut x = self.coords[v].clone();
        for (i, s) in self.lifts[cell][j].iter().enumerate() {
            x[i] += Rational::from_integer(*s);
        }
        x
    }

    /// Closed interval swept by the lifted cell along a periodic axis.
    pub fn projected_interval(&self, cell: usize, axis: usize) -> (Rational, Rational) {
        let vs = self.complex.simplex_vertices(cell).expect("simplicial");
        let mut lo: Option<Rational> = None;
        let mut hi: Option<Rational> = None;
        for (j, &v) in vs.iter().enumerate() {
            let x = self.coords[v][axis] + Rational::from_integer(self.lifts[cell][j][axis]);
            lo = Some(lo.map_or(x, |l| l.min(x)));
            hi = Some(hi.map_or(x, |h| h.max(x)));
        }
        (lo.expect("nonempty cell"), hi.expect("nonempty cell"))
    }

    /// Finds the cell matching a lifted simplex (up to common translation)
    /// and the sign relating the given vertex order to the stored orientation.
    pub fn find_cell(&self, simplex: &LiftedSimplex) -> Option<(usize, u32)> {
        let target = normalize(simplex);
        let k = simplex.len().checked_sub(1)?;
        let f = self.field();
        for &id in self.complex.cells_of_dim(k) {
            if normalize(&self.lifted_simplex(id)) == target {
                let stored: Vec<usize> = self.complex.simplex_vertices(id).ok()?.to_vec();
                let perm: Vec<usize> = simplex
                    .iter()
                    .map(|(v, _)| stored.iter().position(|x| x == v).expect("vertex"))
                    .collect();
                let sign = if permutation_parity(&perm) {
                    f.neg(1)
                } else {
                    1
                };
                return Some((id, sign));
            }
        }
        None
    }

    /// 1-chain following a closed path of lifted vertices `(v, shift)`.
    pub fn path_chain(&self, path: &[(usize, Vec<i64>)]) -> Result<ChainVector> {
        let f = self.field();
        let mut terms = Vec::new();
        for w in path.windows(2) {
            let (id, sign) = self
                .find_cell(&vec![w[0].clone(), w[1].clone()])
                .ok_or_else(|| {
                    Error::InvalidPeriodic(format!("no edge between {:?} and {:?}", w[0], w[1]))
                })?;
            terms.push((id, sign));
        }
        Ok(ChainVector::from_terms(f, 1, terms))
    }
}

/// True for odd permutations.
pub(crate) fn permutation_parity(perm: &[usize]) -> bool {
    let mut seen = vec![false; perm.len()];
    let mut odd = false;
    for i in 0..perm.len() {
        if seen[i] {
            continue;
        }
        let mut j = i;
        let mut len = 0;
        while !seen[j] {
            seen[j] = true;
            j = perm[j];
            len += 1;
        }
        if len % 2 == 0 {
            odd = !odd;
        }
    }
    odd
}

/// Parses `a`, `a/b` or a finite decimal such as `0.25` into an exact rational.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    if let Some((a, b)) = s.split_once('/') {
        let a: i64 = a.trim().parse().ok()?;
        let b: i64 = b.trim().parse().ok()?;
        if b == 0 {
            return None;
        }
        return Some(Rational::new(a, b));
    }
    if let Some((int, frac)) = s.split_once('.') {
        if frac.is_empty() || frac.len() > 15 || !frac.chars().all(|c| c.is_ascii_digit()) {
            return None;
        }
        let neg = int.starts_with('-');
        let whole: i64 = if int.is_empty() || int == "-" {
            0
        } else {
            int.parse().ok()?
        };
        let den = 10i64.checked_pow(frac.len() as u32)?;
        let num: i64 = frac.parse().ok()?;
        let mag = Rational::from_integer(whole.abs()) + Rational::new(num, den);
        return Some(if neg { -mag } else { mag });
    }
    s.parse::<i64>().ok().map(Rational::from_integer)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(a: i64, b: i64) -> Rational {
        Rational::new(a, b)
    }

    #[test]
    fn rationals_parse_exactly() {
        assert_eq!(parse_rational("1/4"), Some(r(1, 4)));
        assert_eq!(parse_rational("0.25"), Some(r(1, 4)));
        assert_eq!(parse_rational("-1.5"), Some(r(-3, 2)));
        assert_eq!(parse_rational("-0.5"), Some(r(-1, 2)));
        assert_eq!(parse_rational("3"), Some(r(3, 1)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
    }

    #[test]
    fn circle_of_three_vertices() {
        let coords = vec![vec![r(0, 1)], vec![r(1, 3)], vec![r(2, 3)]];
        let g = PeriodicComplex::from_simplices_nearest(
            Field::gf2(),
            1,
            coords,
            &[vec![0, 1], vec![1, 2], vec![2, 0]],
        )
        .unwrap();
        assert_eq!(g.complex().len(), 6);
        let wrap = g.find_cell(&vec![(2, vec![0]), (0, vec![1])]).unwrap().0;
        assert_eq!(g.projected_interval(wrap, 0), (r(-1, 3), r(0, 1)));
    }

    #[test]
    fn full_period_cells_are_rejected() {
        let coords = vec![vec![r(0, 1)], vec![r(1, 2)]];
        let err = PeriodicComplex::from_lifted_simplices(
            Field::gf2(),
            1,
            coords,
            &[vec![(0, vec![0]), (1, vec![1])]],
            Origin::Simplicial,
        )
        .unwrap_err();
        assert!(matches!(err, Error::Unsupported(_)));
    }

    #[test]
    fn ambiguous_nearest_translate() {
        let coords = vec![vec![r(0, 1)], vec![r(1, 2)]];
        assert!(
            PeriodicComplex::from_simplices_nearest(Field::gf2(), 1, coords, &[vec![0, 1]])
                .is_err()
        );
    }

    #[test]
    fn parity() {
        assert!(!permutation_parity(&[0, 1, 2]));
        assert!(permutation_parity(&[1, 0, 2]));
        assert!(!permutation_parity(&[1, 2, 0]));
    }
}
