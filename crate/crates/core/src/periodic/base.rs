use num_traits::{One, Zero};

use super::{PeriodicComplex, Rational};
use crate::complex::{Cell, CellComplex};
use crate::error::{Error, Result};
use crate::exactla::Field;

/// A cellulation of the circle `R/Z` along one periodic axis.
///
/// Vertex `m` sits at `angles[m]`; edge `m` runs from vertex `m` to vertex
/// `m+1` (cyclically). In the base complex vertices have ids `0..L` and edge
/// `m` has id `L + m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BaseCellulation {
    pub axis: usize,
    pub angles: Vec<Rational>,
    /// Angle of a vertex added because the input occupied a single angle.
    pub artificial: Option<Rational>,
}

impl BaseCellulation {
    pub fn new(axis: usize, mut angles: Vec<Rational>) -> Result<Self> {
        angles.sort();
        angles.dedup();
        if angles.len() < 2 {
            return Err(Error::Unsupported(
                "a circle cellulation needs at least two vertices".into(),
            ));
        }
        if angles
            .iter()
            .any(|a| *a < Rational::zero() || *a >= Rational::one())
        {
            return Err(Error::InvalidPeriodic(
                "base angles must lie in [0,1)".into(),
            ));
        }
        Ok(BaseCellulation {
            axis,
            angles,
            artificial: None,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.angles.len()
    }

    pub fn vertex(&self, m: usize) -> usize {
        m
    }

    pub fn edge(&self, m: usize) -> usize {
        self.angles.len() + m
    }

    pub fn is_vertex(&self, cell: usize) -> bool {
        cell < self.angles.len()
    }

    /// Lifted endpoints of edge `m`.
    pub fn edge_span(&self, m: usize) -> (Rational, Rational) {
        let l = self.angles.len();
        let a = self.angles[m];
        let b = if m + 1 == l {
            self.angles[0] + Rational::one()
        } else {
            self.angles[m + 1]
        };
        (a, b)
    }

    /// Open arc `(lo, hi)` forming the open star of a base cell.
    pub fn open_star(&self, cell: usize) -> (Rational, Rational) {
        let l = self.angles.len();
        if cell < l {
            let prev = if cell == 0 {
                self.angles[l - 1] - Rational::one()
            } else {
                self.angles[cell - 1]
            };
            let next = if cell + 1 == l {
                self.angles[0] + Rational::one()
            } else {
                self.angles[cell + 1]
            };
            (prev, next)
        } else {
            self.edge_span(cell - l)
        }
    }

    /// The circle as a cell complex.
    pub fn complex(&self, field: Field) -> CellComplex {
        let l = self.angles.len();
        let mut cells: Vec<Cell> = (0..l).map(|_| Cell::vertex()).collect();
        for m in 0..l {
            let head = (m + 1) % l;
            cells.push(Cell {
                dim: 1,
                boundary: vec![(m, field.neg(1)), (head, 1)],
                vertices: Some(vec![m, head]),
                label: None,
            });
        }
        CellComplex::new(field, cells).expect("circle is a valid complex")
    }

    /// Same cellulation with one more vertex.
    pub fn with_vertex(&self, angle: Rational) -> Result<Self> {
        let mut angles = self.angles.clone();
        angles.push(angle);
        let mut b = Self::new(self.axis, angles)?;
        b.artificial = self.artificial;
        Ok(b)
    }
}

/// Circle cellulation by the distinct vertex coordinates along `axis`. When
/// only one coordinate occurs, its antipode is added and recorded.
pub fn base_cellulation(g: &PeriodicComplex, axis: usize) -> Result<BaseCellulation> {
    if axis >= g.d() {
        return Err(Error::Config(format!(
            "direction {} exceeds periodicity {}",
            axis + 1,
            g.d()
        )));
    }
    let mut angles: Vec<Rational> = g.coords().iter().map(|c| c[axis]).collect();
    angles.sort();
    angles.dedup();
    match angles.len() {
        0 => {
            let mut b = BaseCellulation::new(axis, vec![Rational::zero(), Rational::new(1, 2)])?;
            b.artificial = Some(Rational::new(1, 2));
            Ok(b)
        }
        1 => {
            let a = angles[0];
            let half = Rational::new(1, 2);
            let anti = if a >= half { a - half } else { a + half };
            angles.push(anti);
            let mut b = BaseCellulation::new(axis, angles)?;
            b.artificial = Some(anti);
            Ok(b)
        }
        _ => BaseCellulation::new(axis, angles),
    }
}

/// For each base cell, the cells of the quotient whose projection meets its
/// open star, and the closure of that set. Sets are sorted by cell id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarAssignment {
    pub preimage: Vec<Vec<usize>>,
    pub closure: Vec<Vec<usize>>,
}

/// Whether the closed interval `[lo, hi]` meets the open arc `(a, b)` modulo 1.
fn meets(lo: Rational, hi: Rational, a: Rational, b: Rational) -> bool {
    let n = (a - hi).floor() + Rational::one();
    n < b - lo
}

pub fn star_preimages(g: &PeriodicComplex, b: &BaseCellulation) -> Result<StarAssignment> {
    let c = g.complex();
    let l = b.vertex_count();
    let mut preimage = vec![Vec::new(); 2 * l];
    for id in 0..c.len() {
        let (lo, hi) = g.projected_interval(id, b.axis);
        if hi - lo >= Rational::one() {
            return Err(Error::Unsupported(format!(
                "cell {id} projects onto the whole circle; refine the periodic cell"
            )));
        }
        for (sigma, set) in preimage.iter_mut().enumerate() {
            let (a, bb) = b.open_star(sigma);
            if meets(lo, hi, a, bb) {
                set.push(id);
            }
        }
    }
    let closure = preimage.iter().map(|x| c.closure(x)).collect();
    Ok(StarAssignment { preimage, closure })
}
