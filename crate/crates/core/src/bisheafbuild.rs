//! Bisheaves of a periodic complex projected onto one coordinate circle.
//!
//! The quotient complex is first refined so that no cell straddles a base
//! vertex, then barycentrically subdivided once. For a base cell `s` with
//! open star preimage `X(s)`:
//!
//! * the sheaf stalk is `H_deg` of the subdivided pair `(cl X(s), cl X(s) - X(s))`,
//! * the cosheaf stalk is `H_{deg-1}` of the largest subcomplex `Y(s)` of the
//!   subdivided cells lying over `X(s)`,
//! * the vertical map caps a relative cycle with a crossing cocycle that
//!   counts signed passages through one cut point of the base edge leaving
//!   `s` clockwise.

use num_traits::One;

use crate::complex::{
    barycentric_subdivide, cap_product, homology, homology_of_cells, maximal_subcomplex,
    ChainVector, HomologyBasis, Subdivision,
};
use crate::error::{Error, Result};
use crate::exactla::{Field, FieldMatrix};
use crate::periodic::{
    base_cellulation, star_preimages, subdivide_for_fibers, BaseCellulation, FiberSubdivision,
    Origin, PeriodicComplex, Rational, StarAssignment,
};
use crate::sheafcore::{covering_relations, Bisheaf, CellCosheaf, CellSheaf};

#[derive(Debug, Clone)]
pub struct BisheafRequest {
    pub g: PeriodicComplex,
    /// Periodic axis, counted from zero.
    pub direction: usize,
    /// Degree of the cycles being classified; the cosheaf side sits one below.
    pub degree: usize,
    /// Base cellulation to use instead of the one read off the vertices.
    pub base: Option<BaseCellulation>,
}

impl BisheafRequest {
    pub fn new(g: PeriodicComplex, direction: usize, degree: usize) -> Self {
        BisheafRequest {
            g,
            direction,
            degree,
            base: None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct BuiltBisheaf {
    pub bisheaf: Bisheaf,
    pub degree: usize,
    pub direction: usize,
    pub cellulation: BaseCellulation,
    /// Refinement of the input with no cell straddling a base vertex.
    pub fibers: FiberSubdivision,
    /// Barycentric subdivision of `fibers.complex`.
    pub sd: Subdivision,
    pub stars: StarAssignment,
    /// Per base cell: the sheaf stalk basis as relative cycles of `sd`.
    pub sheaf_bases: Vec<HomologyBasis>,
    /// Per base cell: the cosheaf stalk basis as cycles of `Y(s)` in `sd`.
    pub cosheaf_bases: Vec<HomologyBasis>,
    /// Per base cell: the crossing cocycle on `sd`.
    pub cocycles: Vec<ChainVector>,
    /// Position of each cut point along its base edge.
    pub cut_fraction: Rational,
}

impl BuiltBisheaf {
    pub fn field(&self) -> Field {
        self.bisheaf.sheaf().field()
    }

    /// Chain of `sd` representing a sheaf stalk vector.
    pub fn sheaf_chain(&self, cell: usize, coords: &[u32]) -> ChainVector {
        self.sheaf_bases[cell].chain_of(coords)
    }

    pub fn cosheaf_chain(&self, cell: usize, coords: &[u32]) -> ChainVector {
        self.cosheaf_bases[cell].chain_of(coords)
    }

    /// Carries a chain of the input complex to the subdivision.
    pub fn carry(&self, z: &ChainVector) -> ChainVector {
        self.sd.carry(&self.fibers.carry(z))
    }
}

fn is_prime(n: i64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// `2/P` for the least prime `P >= 5` above `max_dim + 1`. Barycenters of
/// cells spanning one base edge sit at fractions with denominator at most
/// `max_dim + 1`, so the cut never meets a subdivided vertex.
fn cut_fraction(max_dim: usize) -> Rational {
    let mut p = (max_dim as i64 + 2).max(5);
    while !is_prime(p) {
        p += 1;
    }
    Rational::new(2, p)
}

/// Coordinate along `axis` of the barycenter of `sub`, a face of `top`,
/// in the lift of `top`.
fn barycenter_x(g: &PeriodicComplex, top: usize, sub: usize, axis: usize) -> Result<Rational> {
    let c = g.complex();
    let tv = c.simplex_vertices(top)?;
    let sv = c.simplex_vertices(sub)?;
    let mut sum = Rational::from_integer(0);
    for v in sv {
        let j = tv
            .iter()
            .position(|x| x == v)
            .ok_or_else(|| Error::Internal(format!("{sub} is not a face of {top}")))?;
        sum += g.lifted_point(top, j)[axis];
    }
    Ok(sum / Rational::from_integer(sv.len() as i64))
}

/// Signed count of passages of each subdivided edge through the translates
/// of `cut`, as a 1-cochain.
fn crossing_cocycle(
    g: &PeriodicComplex,
    sd: &Subdivision,
    axis: usize,
    cut: Rational,
) -> Result<ChainVector> {
    let f = g.field();
    let mut terms = Vec::new();
    for &e in sd.complex.cells_of_dim(1) {
        let flag = &sd.flags[e];
        let (low, top) = (flag[0], flag[1]);
        let x0 = barycenter_x(g, top, low, axis)?;
        let x1 = barycenter_x(g, top, top, axis)?;
        let (lo, hi) = if x0 < x1 { (x0, x1) } else { (x1, x0) };
        let through = cut + (lo - cut).floor() + Rational::one();
        if through < hi {
            terms.push((e, if x0 < x1 { 1 } else { f.neg(1) }));
        }
    }
    Ok(ChainVector::from_terms(f, 1, terms))
}

/// Matrix whose columns are the coordinates of the given chains.
fn coordinate_matrix(
    f: Field,
    target: &HomologyBasis,
    chains: impl Iterator<Item = Result<ChainVector>>,
) -> Result<FieldMatrix> {
    let columns = chains
        .map(|z| target.coords_of(&z?))
        .collect::<Result<Vec<_>>>()?;
    Ok(FieldMatrix::from_columns(f, target.rank(), &columns))
}

pub fn build_bisheaf(r: &BisheafRequest) -> Result<BuiltBisheaf> {
    let g = &r.g;
    let f = g.field();
    if r.degree == 0 {
        return Err(Error::Config(
            "degree must be at least 1: the cosheaf side sits one degree lower".into(),
        ));
    }
    if r.direction >= g.d() {
        return Err(Error::Config(format!(
            "direction {} exceeds periodicity {}",
            r.direction + 1,
            g.d()
        )));
    }
    if *g.origin() == Origin::Simplicial && g.d() >= 2 {
        return Err(Error::Unsupported(
            "simplicial input with two or more periodic directions needs a constrained \
             triangulation of the torus; use cubical input instead"
                .into(),
        ));
    }
    let cellulation = match &r.base {
        Some(b) if b.axis == r.direction => b.clone(),
        Some(_) => return Err(Error::Config("base cellulation is for another axis".into())),
        None => base_cellulation(g, r.direction)?,
    };
    let fibers = subdivide_for_fibers(g, &cellulation)?;
    let aligned = &fibers.complex;
    let stars = star_preimages(aligned, &cellulation)?;
    let sd = barycentric_subdivide(aligned.complex())?;
    let base = cellulation.complex(f);
    let l = cellulation.vertex_count();
    let cut_fraction = cut_fraction(aligned.complex().dim().unwrap_or(0));

    let mut sheaf_bases = Vec::with_capacity(base.len());
    let mut cosheaf_bases = Vec::with_capacity(base.len());
    let mut cocycles = Vec::with_capacity(base.len());
    for s in 0..base.len() {
        let over = sd.cells_over(&stars.preimage[s]);
        sheaf_bases.push(homology_of_cells(&sd.complex, &over, r.degree)?);
        let y = maximal_subcomplex(&sd.complex, &over);
        cosheaf_bases.push(homology_of_cells(&sd.complex, &y, r.degree - 1)?);
        let m = if s < l { s } else { s - l };
        let (a, b) = cellulation.edge_span(m);
        let cut = a + cut_fraction * (b - a);
        cocycles.push(crossing_cocycle(aligned, &sd, r.direction, cut)?);
    }

    let mut sheaf_maps = std::collections::BTreeMap::new();
    let mut cosheaf_maps = std::collections::BTreeMap::new();
    for (sigma, tau) in covering_relations(&base) {
        let down = coordinate_matrix(
            f,
            &sheaf_bases[sigma],
            sheaf_bases[tau].representatives().iter().map(|z| Ok(z.clone())),
        )?;
        sheaf_maps.insert((sigma, tau), down);
        let up = coordinate_matrix(
            f,
            &cosheaf_bases[tau],
            cosheaf_bases[sigma].representatives().iter().map(|z| Ok(z.clone())),
        )?;
        cosheaf_maps.insert((sigma, tau), up);
    }
    let vertical = (0..base.len())
        .map(|s| {
            coordinate_matrix(
                f,
                &cosheaf_bases[s],
                sheaf_bases[s]
                    .representatives()
                    .iter()
                    .map(|z| cap_product(&sd.complex, z, &cocycles[s])),
            )
        })
        .collect::<Result<Vec<_>>>()?;
    let sheaf = CellSheaf::new(
        base.clone(),
        sheaf_bases.iter().map(HomologyBasis::rank).collect(),
        sheaf_maps,
    )?;
    let cosheaf = CellCosheaf::new(
        base,
        cosheaf_bases.iter().map(HomologyBasis::rank).collect(),
        cosheaf_maps,
    )?;
    let bisheaf = Bisheaf::new(sheaf, cosheaf, vertical)?;
    Ok(BuiltBisheaf {
        bisheaf,
        degree: r.degree,
        direction: r.direction,
        cellulation,
        fibers,
        sd,
        stars,
        sheaf_bases,
        cosheaf_bases,
        cocycles,
        cut_fraction,
    })
}

/// Class coordinates of a cycle of the input complex in every sheaf stalk.
pub fn cycle_to_sheaf_classes(bb: &BuiltBisheaf, z: &ChainVector) -> Result<Vec<Vec<u32>>> {
    let c = bb.fibers.carrier.len();
    if z.degree() != bb.degree && !z.is_zero() {
        return Err(Error::DegreeMismatch {
            expected: bb.degree,
            got: z.degree(),
        });
    }
    if z.terms().iter().any(|&(x, _)| x >= c) {
        return Err(Error::InvalidPeriodic("chain uses an unknown cell".into()));
    }
    let w = bb.carry(z);
    if !bb.sd.complex.is_cycle(&w) {
        return Err(Error::NotACycle);
    }
    bb.sheaf_bases.iter().map(|h| h.coords_of(&w)).collect()
}

/// Homology basis of the input complex in the bisheaf's degree.
pub fn cycle_basis(bb: &BuiltBisheaf, g: &PeriodicComplex) -> Result<HomologyBasis> {
    homology(g.complex(), bb.degree)
}
