//! Monodromy of persistent local systems over a circle, and what it says
//! about toroidal cycles.

use std::collections::BTreeMap;

use crate::bisheafbuild::{build_bisheaf, cycle_to_sheaf_classes, BisheafRequest, BuiltBisheaf};
use crate::complex::{homology, ChainVector};
use crate::error::{Error, Result};
use crate::exactla::{eigenspace_one, invert, solve, FieldMatrix, Subspace};
use crate::isofy::{extract_pls, isobisheafify, Isobisheaf, PersistentLocalSystem};
use crate::periodic::{BaseCellulation, PeriodicComplex};
use crate::sheafcore::{circle_walk, Bisheaf, CircleWalk};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonodromyReport {
    pub direction: usize,
    pub base_vertex: usize,
    pub walk: CircleWalk,
    /// In the coordinates of the PLS stalk at the base vertex.
    pub matrix: FieldMatrix,
    pub one_eigenspace: Subspace,
    /// `k` to the dimension of the 1-eigenspace of `matrix^k`.
    pub powers: BTreeMap<usize, usize>,
}

impl MonodromyReport {
    pub fn toroidal_rank(&self) -> usize {
        self.one_eigenspace.dim()
    }
}

/// Transport of PLS stalk coordinates from `walk.vertices[m]` to the next
/// vertex along `walk.edges[m]`.
fn step(pls: &PersistentLocalSystem, walk: &CircleWalk, m: usize) -> Result<FieldMatrix> {
    let e = walk.edges[m];
    let back = invert(pls.map(e, walk.vertices[m]))?;
    pls.map(e, walk.next_vertex(m)).mul(&back)
}

/// Composite of the transports once around the circle starting at
/// `base_vertex`, later steps on the left.
pub fn monodromy(
    pls: &PersistentLocalSystem,
    base_vertex: usize,
    direction: usize,
    powers: &[usize],
) -> Result<MonodromyReport> {
    let walk = circle_walk(pls.base(), base_vertex)?;
    let r = pls.stalks[base_vertex].dim();
    let f = pls.system.field();
    let mut matrix = FieldMatrix::identity(f, r);
    for m in 0..walk.len() {
        matrix = step(pls, &walk, m)?.mul(&matrix)?;
    }
    let one_eigenspace = eigenspace_one(&matrix)?;
    let powers = powers
        .iter()
        .map(|&k| Ok((k, eigenspace_one(&matrix.pow(k as u32)?)?.dim())))
        .collect::<Result<BTreeMap<_, _>>>()?;
    Ok(MonodromyReport {
        direction,
        base_vertex,
        walk,
        matrix,
        one_eigenspace,
        powers,
    })
}

/// Smallest `k <= max_k` with `m^k = 1`. Diagnostic only.
pub fn eigenvalue_diagnostic(m: &FieldMatrix, max_k: usize) -> Result<Option<usize>> {
    invert(m)?;
    let mut p = m.clone();
    for k in 1..=max_k {
        if p.is_identity() {
            return Ok(Some(k));
        }
        p = p.mul(m)?;
    }
    Ok(None)
}

/// Isobisheaf, PLS and (when the base is a circle) monodromy of a bisheaf.
#[derive(Debug, Clone)]
pub struct LocalSystemAnalysis {
    pub isobisheaf: Isobisheaf,
    pub pls: PersistentLocalSystem,
    pub monodromy: Option<MonodromyReport>,
    /// Why monodromy is missing, if it is.
    pub note: Option<String>,
}

impl LocalSystemAnalysis {
    pub fn toroidal_rank(&self) -> Option<usize> {
        self.monodromy.as_ref().map(MonodromyReport::toroidal_rank)
    }
}

pub fn analyze_bisheaf(
    b: &Bisheaf,
    direction: usize,
    base_vertex: usize,
    powers: &[usize],
) -> Result<LocalSystemAnalysis> {
    let isobisheaf = isobisheafify(b)?;
    let pls = extract_pls(&isobisheaf)?;
    let (monodromy, note) = match monodromy(&pls, base_vertex, direction, powers) {
        Ok(m) => (Some(m), None),
        Err(Error::NotACircle(why)) => (None, Some(format!("base is not a circle: {why}"))),
        Err(e) => return Err(e),
    };
    Ok(LocalSystemAnalysis {
        isobisheaf,
        pls,
        monodromy,
        note,
    })
}

/// Everything computed for one periodic direction of a geometric input.
#[derive(Debug, Clone)]
pub struct DirectionAnalysis {
    pub built: BuiltBisheaf,
    pub analysis: LocalSystemAnalysis,
}

impl DirectionAnalysis {
    pub fn direction(&self) -> usize {
        self.built.direction
    }

    pub fn monodromy(&self) -> Result<&MonodromyReport> {
        self.analysis
            .monodromy
            .as_ref()
            .ok_or_else(|| Error::Internal("geometric base without monodromy".into()))
    }

    /// PLS coordinates of the image of a cycle at every base vertex.
    pub fn pls_image(&self, z: &ChainVector) -> Result<Vec<Vec<u32>>> {
        let classes = cycle_to_sheaf_classes(&self.built, z)?;
        let b = &self.built.bisheaf;
        let iso = &self.analysis.isobisheaf;
        b.base()
            .cells_of_dim(0)
            .iter()
            .map(|&v| {
                let w = iso
                    .mono
                    .projection(v)
                    .mul(b.vertical(v))?
                    .mul_vec(&classes[v])?;
                self.analysis.pls.coordinates(v, &w).ok_or_else(|| {
                    Error::Internal(format!("image of a cycle leaves the PLS stalk at {v}"))
                })
            })
            .collect()
    }

    /// Image of a cycle in the PLS stalk at the monodromy base vertex.
    pub fn pls_image_at_base(&self, z: &ChainVector) -> Result<Vec<u32>> {
        let v = self.monodromy()?.base_vertex;
        let mut all = self.pls_image(z)?;
        Ok(std::mem::take(&mut all[v]))
    }
}

pub fn analyze_direction(
    g: &PeriodicComplex,
    direction: usize,
    degree: usize,
    base: Option<BaseCellulation>,
    powers: &[usize],
) -> Result<DirectionAnalysis> {
    let mut request = BisheafRequest::new(g.clone(), direction, degree);
    request.base = base;
    let built = build_bisheaf(&request)?;
    let analysis = analyze_bisheaf(&built.bisheaf, direction, 0, powers)?;
    if analysis.monodromy.is_none() {
        return Err(Error::Internal("circle base without monodromy".into()));
    }
    Ok(DirectionAnalysis { built, analysis })
}

/// One analysis per periodic direction. A failing direction does not stop
/// the others.
pub fn toroidal_profile(
    g: &PeriodicComplex,
    degree: usize,
    powers: &[usize],
) -> Vec<Result<DirectionAnalysis>> {
    (0..g.d())
        .map(|i| analyze_direction(g, i, degree, None, powers))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleVerdict {
    pub cycle: ChainVector,
    /// Per direction, PLS coordinates at the base vertex.
    pub images: Vec<(usize, Vec<u32>)>,
    pub toroidal: bool,
}

pub fn classify_with(analyses: &[DirectionAnalysis], z: &ChainVector) -> Result<CycleVerdict> {
    let mut images = Vec::with_capacity(analyses.len());
    for a in analyses {
        images.push((a.direction(), a.pls_image_at_base(z)?));
    }
    let toroidal = images.iter().any(|(_, x)| x.iter().any(|&c| c != 0));
    Ok(CycleVerdict {
        cycle: z.clone(),
        images,
        toroidal,
    })
}

/// Runs every direction and classifies `z`.
pub fn classify_cycle(g: &PeriodicComplex, z: &ChainVector, degree: usize) -> Result<CycleVerdict> {
    let analyses = toroidal_profile(g, degree, &[])
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    classify_with(&analyses, z)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ToroidalCycleBasis {
    pub degree: usize,
    pub direction: usize,
    /// Cycles of the input complex.
    pub cycles: Vec<ChainVector>,
    /// PLS coordinates of each cycle at the base vertex.
    pub pls_coords: Vec<Vec<u32>>,
}

/// Transports each 1-eigenvector of the monodromy around the circle and
/// solves for a cycle of `g` whose PLS image is that section.
pub fn lift_toroidal_basis(a: &DirectionAnalysis, g: &PeriodicComplex) -> Result<ToroidalCycleBasis> {
    let report = a.monodromy()?;
    let pls = &a.analysis.pls;
    let f = g.field();
    let degree = a.built.degree;
    let walk = &report.walk;
    let vertices: Vec<usize> = a.built.bisheaf.base().cells_of_dim(0).to_vec();

    let h = homology(g.complex(), degree)?;
    let mut columns = Vec::with_capacity(h.rank());
    for z in h.representatives() {
        let image = a.pls_image(z)?;
        let mut col = Vec::new();
        for (i, &v) in vertices.iter().enumerate() {
            col.extend(pls.stalks[v].vector(&image[i]));
        }
        columns.push(col);
    }
    let rows: usize = vertices.iter().map(|&v| pls.stalks[v].ambient_dim()).sum();
    let psi = FieldMatrix::from_columns(f, rows, &columns);

    let mut cycles = Vec::new();
    let mut pls_coords = Vec::new();
    for b in report.one_eigenspace.basis_vectors() {
        let mut section: BTreeMap<usize, Vec<u32>> = BTreeMap::new();
        let mut t = b.clone();
        section.insert(walk.vertices[0], t.clone());
        for m in 0..walk.len() - 1 {
            t = step(pls, walk, m)?.mul_vec(&t)?;
            section.insert(walk.next_vertex(m), t.clone());
        }
        let mut target = Vec::with_capacity(rows);
        for &v in &vertices {
            target.extend(pls.stalks[v].vector(&section[&v]));
        }
        let x = solve(&psi, &target)?.ok_or_else(|| {
            Error::Internal("no cycle realizes a monodromy-invariant section".into())
        })?;
        let z = ChainVector::combine(f, degree, h.representatives(), &x);
        let coords = a.pls_image_at_base(&z)?;
        if coords != b {
            return Err(Error::Internal("lifted cycle has the wrong PLS image".into()));
        }
        cycles.push(z);
        pls_coords.push(coords);
    }
    Ok(ToroidalCycleBasis {
        degree,
        direction: a.direction(),
        cycles,
        pls_coords,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::Field;
    use crate::fixtures::{running_example_geometry, torsion};

    #[test]
    fn running_example_pipeline() {
        let g = running_example_geometry(4).unwrap();
        let a = analyze_direction(&g, 0, 1, None, &[1, 2, 3]).unwrap();
        assert_eq!(a.analysis.pls.rank(), 1);
        let m = a.monodromy().unwrap();
        assert!(m.matrix.is_identity());
        assert_eq!(m.toroidal_rank(), 1);
        assert_eq!(m.powers.values().copied().collect::<Vec<_>>(), vec![1, 1, 1]);
        let lifted = lift_toroidal_basis(&a, &g).unwrap();
        assert_eq!(lifted.cycles.len(), 1);
        let z = &lifted.cycles[0];
        assert!(g.complex().is_cycle(z));
        assert!(classify_with(std::slice::from_ref(&a), z).unwrap().toroidal);
    }

    #[test]
    fn running_example_verdicts() {
        let g = running_example_geometry(4).unwrap();
        let tri: Vec<(usize, Vec<i64>)> = [(0, 2), (1, 1), (2, 0), (3, 2), (2, 2), (1, 2), (0, 2)]
            .iter()
            .map(|&(c, j)| (3 * c + j, vec![0]))
            .collect();
        let tri = g.path_chain(&tri).unwrap();
        let v = classify_cycle(&g, &tri, 1).unwrap();
        assert!(!v.toroidal);
        let zero = ChainVector::zero(Field::gf2(), 1);
        assert!(!classify_cycle(&g, &zero, 1).unwrap().toroidal);
        let path: Vec<(usize, Vec<i64>)> = (0..=4)
            .map(|c| (3 * (c % 4) + 2, vec![(c / 4) as i64]))
            .collect();
        let line = g.path_chain(&path).unwrap();
        assert!(classify_cycle(&g, &line, 1).unwrap().toroidal);
    }

    #[test]
    fn torsion_monodromy() {
        let b = torsion(2).unwrap().bisheaf().unwrap();
        let a = analyze_bisheaf(&b, 0, 0, &[1, 2, 3, 4]).unwrap();
        let m = a.monodromy.unwrap();
        let swap = FieldMatrix::from_rows(Field::gf2(), &[vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(m.matrix, swap);
        assert_eq!(m.powers[&1], 1);
        assert_eq!(m.powers[&2], 2);
        assert_eq!(m.powers[&3], 1);
        assert_eq!(eigenvalue_diagnostic(&m.matrix, 10).unwrap(), Some(2));
        let b1 = torsion(1).unwrap().bisheaf().unwrap();
        assert_eq!(analyze_bisheaf(&b1, 0, 0, &[]).unwrap().toroidal_rank(), Some(1));
    }

    #[test]
    fn diagnostic_examples() {
        let f = Field::gf2();
        assert_eq!(eigenvalue_diagnostic(&FieldMatrix::identity(f, 3), 5).unwrap(), Some(1));
        let c = FieldMatrix::from_rows(f, &[vec![0, 0, 1], vec![1, 0, 0], vec![0, 1, 0]]).unwrap();
        assert_eq!(eigenvalue_diagnostic(&c, 2).unwrap(), None);
        assert_eq!(eigenvalue_diagnostic(&c, 3).unwrap(), Some(3));
        assert!(eigenvalue_diagnostic(&FieldMatrix::zeros(f, 2, 2), 3).is_err());
    }

    #[test]
    fn non_circle_base_has_no_monodromy() {
        let b = crate::fixtures::schwarz_p_12().unwrap().bisheaf().unwrap();
        let a = analyze_bisheaf(&b, 0, 0, &[]).unwrap();
        assert_eq!(a.pls.rank(), 0);
        assert!(a.monodromy.is_none());
        assert!(a.note.is_some());
    }
}
