//! Cellular sheaves, cosheaves and bisheaves over a finite base complex.
//!
//! Face relations follow the star convention: `sigma <= tau` when `tau` is a
//! face of `sigma`. Only covering relations (codimension one) are stored;
//! longer relations are composites.

mod circle;
mod format;

use std::collections::{BTreeMap, BTreeSet};

use crate::complex::CellComplex;
use crate::error::{Error, Result};
use crate::exactla::{rank, Field, FieldMatrix};

pub use circle::{circle_walk, CircleWalk, CoverMap};
pub use format::{parse_explicit, write_explicit, ExplicitInput};

/// A covering relation `(sigma, tau)` with `tau` a facet of `sigma`.
pub type Relation = (usize, usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Variance {
    Contra,
    Co,
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Diagram {
    base: CellComplex,
    dims: Vec<usize>,
    maps: BTreeMap<Relation, FieldMatrix>,
}

/// Covering relations of `base` in lexicographic order.
pub fn covering_relations(base: &CellComplex) -> Vec<Relation> {
    let mut out = BTreeSet::new();
    for s in 0..base.len() {
        for t in base.faces(s) {
            out.insert((s, t));
        }
    }
    out.into_iter().collect()
}

impl Diagram {
    fn shape(&self, v: Variance, (s, t): Relation) -> (usize, usize) {
        match v {
            Variance::Contra => (self.dims[s], self.dims[t]),
            Variance::Co => (self.dims[t], self.dims[s]),
        }
    }

    fn new(
        v: Variance,
        base: CellComplex,
        dims: Vec<usize>,
        mut maps: BTreeMap<Relation, FieldMatrix>,
    ) -> Result<Self> {
        if dims.len() != base.len() {
            return Err(Error::InvalidSheaf(format!(
                "{} stalks for {} cells",
                dims.len(),
                base.len()
            )));
        }
        for s in 0..base.len() {
            let faces: Vec<usize> = base.faces(s).collect();
            let distinct: BTreeSet<usize> = faces.iter().copied().collect();
            if distinct.len() != faces.len() {
                return Err(Error::InvalidSheaf(format!("cell {s} lists a face twice")));
            }
        }
        let rels = covering_relations(&base);
        for key in maps.keys() {
            if rels.binary_search(key).is_err() {
                return Err(Error::Relation {
                    sigma: key.0,
                    tau: key.1,
                    reason: "not a covering relation of the base".into(),
                });
            }
        }
        let mut d = Diagram {
            base,
            dims,
            maps: BTreeMap::new(),
        };
        let f = d.base.field();
        for r in rels {
            let (rows, cols) = d.shape(v, r);
            let m = match maps.remove(&r) {
                Some(m) => m,
                None if rows == 0 || cols == 0 => FieldMatrix::zeros(f, rows, cols),
                None => {
                    return Err(Error::Relation {
                        sigma: r.0,
                        tau: r.1,
                        reason: "missing map".into(),
                    })
                }
            };
            if m.field() != f {
                return Err(Error::FieldMismatch(m.field().p(), f.p()));
            }
            if (m.rows(), m.cols()) != (rows, cols) {
                return Err(Error::Relation {
                    sigma: r.0,
                    tau: r.1,
                    reason: format!("map is {}x{}, expected {rows}x{cols}", m.rows(), m.cols()),
                });
            }
            d.maps.insert(r, m);
        }
        d.check_functorial(v)?;
        Ok(d)
    }

    /// Composite along `sigma <= mid <= tau`.
    fn compose(&self, v: Variance, first: &FieldMatrix, second: &FieldMatrix) -> Result<FieldMatrix> {
        match v {
            Variance::Contra => first.mul(second),
            Variance::Co => second.mul(first),
        }
    }

    fn check_functorial(&self, v: Variance) -> Result<()> {
        for s in 0..self.base.len() {
            let mut seen: BTreeMap<usize, FieldMatrix> = BTreeMap::new();
            for mid in self.base.faces(s) {
                for t in self.base.faces(mid) {
                    let m = self.compose(v, &self.maps[&(s, mid)], &self.maps[&(mid, t)])?;
                    match seen.get(&t) {
                        Some(prev) if *prev != m => {
                            return Err(Error::Relation {
                                sigma: s,
                                tau: t,
                                reason: "composites along different paths disagree".into(),
                            })
                        }
                        Some(_) => {}
                        None => {
                            seen.insert(t, m);
                        }
                    }
                }
            }
        }
        Ok(())
    }

    fn composite(&self, v: Variance, s: usize, t: usize) -> Option<FieldMatrix> {
        if s == t {
            return Some(FieldMatrix::identity(self.base.field(), self.dims[s]));
        }
        if self.base.cell_dim(s) <= self.base.cell_dim(t) {
            return None;
        }
        for mid in self.base.faces(s) {
            if mid == t || self.base.leq(mid, t) {
                let rest = self.composite(v, mid, t)?;
                return self.compose(v, &self.maps[&(s, mid)], &rest).ok();
            }
        }
        None
    }

    fn relabel(&self, v: Variance, perm: &[usize]) -> Result<Self> {
        let base = self.base.relabel(perm)?;
        let mut dims = vec![0; self.dims.len()];
        for (old, &d) in self.dims.iter().enumerate() {
            dims[perm[old]] = d;
        }
        let maps = self
            .maps
            .iter()
            .map(|(&(s, t), m)| ((perm[s], perm[t]), m.clone()))
            .collect();
        Diagram::new(v, base, dims, maps)
    }

    fn constant(v: Variance, base: CellComplex, dim: usize) -> Result<Self> {
        let f = base.field();
        let dims = vec![dim; base.len()];
        let maps = covering_relations(&base)
            .into_iter()
            .map(|r| (r, FieldMatrix::identity(f, dim)))
            .collect();
        Diagram::new(v, base, dims, maps)
    }
}

macro_rules! diagram_api {
    ($ty:ident, $var:expr) => {
        impl $ty {
            /// Validates shapes and functoriality on every length-two path.
            pub fn new(
                base: CellComplex,
                dims: Vec<usize>,
                maps: BTreeMap<Relation, FieldMatrix>,
            ) -> Result<Self> {
                Ok($ty(Diagram::new($var, base, dims, maps)?))
            }

            pub fn zero(base: CellComplex) -> Self {
                let dims = vec![0; base.len()];
                $ty(Diagram::new($var, base, dims, BTreeMap::new()).expect("zero diagram"))
            }

            /// Every stalk `F^dim`, every map the identity.
            pub fn constant(base: CellComplex, dim: usize) -> Result<Self> {
                Ok($ty(Diagram::constant($var, base, dim)?))
            }

            pub fn base(&self) -> &CellComplex {
                &self.0.base
            }

            pub fn field(&self) -> Field {
                self.0.base.field()
            }

            pub fn stalk_dim(&self, cell: usize) -> usize {
                self.0.dims[cell]
            }

            pub fn stalk_dims(&self) -> &[usize] {
                &self.0.dims
            }

            pub fn total_dim(&self) -> usize {
                self.0.dims.iter().sum()
            }

            /// Map of a covering relation.
            pub fn map(&self, sigma: usize, tau: usize) -> &FieldMatrix {
                &self.0.maps[&(sigma, tau)]
            }

            pub fn maps(&self) -> &BTreeMap<Relation, FieldMatrix> {
                &self.0.maps
            }

            pub fn relations(&self) -> impl Iterator<Item = Relation> + '_ {
                self.0.maps.keys().copied()
            }

            /// Map of an arbitrary relation `sigma <= tau`, or `None` when
            /// `tau` is not in the closure of `sigma`.
            pub fn composite(&self, sigma: usize, tau: usize) -> Option<FieldMatrix> {
                self.0.composite($var, sigma, tau)
            }

            /// Same data on a relabelled base; `perm[old] = new`.
            pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
                Ok($ty(self.0.relabel($var, perm)?))
            }
        }
    };
}

/// Stalks with restriction maps `F(sigma <= tau): F(tau) -> F(sigma)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellSheaf(Diagram);

/// Stalks with extension maps `F(sigma <= tau): F(sigma) -> F(tau)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellCosheaf(Diagram);

diagram_api!(CellSheaf, Variance::Contra);
diagram_api!(CellCosheaf, Variance::Co);

impl CellCosheaf {
    /// True when every map is square and invertible.
    pub fn is_colocal(&self) -> bool {
        self.0
            .maps
            .values()
            .all(|m| m.is_square() && rank(m) == m.rows())
    }
}

/// Outcome of a structural check: the first failing relation, if any.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Check {
    pub holds: bool,
    pub witness: Option<Relation>,
}

impl Check {
    fn from_witness(witness: Option<Relation>) -> Self {
        Check {
            holds: witness.is_none(),
            witness,
        }
    }
}

/// Every restriction map surjective.
pub fn is_episheaf(s: &CellSheaf) -> Check {
    Check::from_witness(
        s.0.maps
            .iter()
            .find(|(_, m)| rank(m) != m.rows())
            .map(|(&r, _)| r),
    )
}

/// Every extension map injective.
pub fn is_monocosheaf(c: &CellCosheaf) -> Check {
    Check::from_witness(
        c.0.maps
            .iter()
            .find(|(_, m)| rank(m) != m.cols())
            .map(|(&r, _)| r),
    )
}

/// A sheaf and a cosheaf on one base with vertical maps
/// `F_sigma: sheaf(sigma) -> cosheaf(sigma)`, subject to
/// `F_tau = cosheaf(sigma <= tau) . F_sigma . sheaf(sigma <= tau)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bisheaf {
    sheaf: CellSheaf,
    cosheaf: CellCosheaf,
    vertical: Vec<FieldMatrix>,
}

impl Bisheaf {
    pub fn new(sheaf: CellSheaf, cosheaf: CellCosheaf, vertical: Vec<FieldMatrix>) -> Result<Self> {
        let b = Bisheaf {
            sheaf,
            cosheaf,
            vertical,
        };
        validate_bisheaf(&b)?;
        Ok(b)
    }

    pub fn zero(base: CellComplex) -> Self {
        let f = base.field();
        let n = base.len();
        Bisheaf {
            sheaf: CellSheaf::zero(base.clone()),
            cosheaf: CellCosheaf::zero(base),
            vertical: vec![FieldMatrix::zeros(f, 0, 0); n],
        }
    }

    pub fn sheaf(&self) -> &CellSheaf {
        &self.sheaf
    }

    pub fn cosheaf(&self) -> &CellCosheaf {
        &self.cosheaf
    }

    pub fn vertical(&self, cell: usize) -> &FieldMatrix {
        &self.vertical[cell]
    }

    pub fn verticals(&self) -> &[FieldMatrix] {
        &self.vertical
    }

    pub fn base(&self) -> &CellComplex {
        self.sheaf.base()
    }

    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        let mut vertical = self.vertical.clone();
        for (old, m) in self.vertical.iter().enumerate() {
            vertical[perm[old]] = m.clone();
        }
        Bisheaf::new(self.sheaf.relabel(perm)?, self.cosheaf.relabel(perm)?, vertical)
    }
}

/// Shapes, functoriality of both sides and every covering square.
pub fn validate_bisheaf(b: &Bisheaf) -> Result<()> {
    let base = b.sheaf.base();
    if base != b.cosheaf.base() {
        return Err(Error::InvalidSheaf("sheaf and cosheaf live on different bases".into()));
    }
    b.sheaf.0.check_functorial(Variance::Contra)?;
    b.cosheaf.0.check_functorial(Variance::Co)?;
    if b.vertical.len() != base.len() {
        return Err(Error::InvalidSheaf(format!(
            "{} vertical maps for {} cells",
            b.vertical.len(),
            base.len()
        )));
    }
    for (s, m) in b.vertical.iter().enumerate() {
        let want = (b.cosheaf.stalk_dim(s), b.sheaf.stalk_dim(s));
        if (m.rows(), m.cols()) != want {
            return Err(Error::InvalidSheaf(format!(
                "vertical map at {s} is {}x{}, expected {}x{}",
                m.rows(),
                m.cols(),
                want.0,
                want.1
            )));
        }
    }
    for (s, t) in b.sheaf.relations() {
        let lhs = b
            .cosheaf
            .map(s, t)
            .mul(&b.vertical[s])?
            .mul(b.sheaf.map(s, t))?;
        if lhs != b.vertical[t] {
            return Err(Error::Square { sigma: s, tau: t });
        }
    }
    Ok(())
}
