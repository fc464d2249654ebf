//! Epification, monofication, isobisheaves and persistent local systems.

mod oracle;

use std::collections::BTreeMap;

use crate::complex::CellComplex;
use crate::error::{Error, Result};
use crate::exactla::{
    complement_indices, image, intersect, preimage, quotient, rank, restrict_map, span_sum, FieldMatrix, Subspace,
};
use crate::sheafcore::{is_episheaf, is_monocosheaf, Bisheaf, CellCosheaf, CellSheaf, Relation};

pub use oracle::{all_subspaces, oracle_epify, oracle_monofy, OracleLimits};

/// Cells grouped by repeatedly removing the maximal ones: the first stratum
/// holds the cells with no cofaces.
pub fn strata(base: &CellComplex) -> Vec<Vec<usize>> {
    let n = base.len();
    let mut left: Vec<usize> = (0..n).map(|c| base.cofaces(c).len()).collect();
    let mut done = vec![false; n];
    let mut out = Vec::new();
    let mut remaining = n;
    while remaining > 0 {
        let layer: Vec<usize> = (0..n).filter(|&c| !done[c] && left[c] == 0).collect();
        for &c in &layer {
            done[c] = true;
            for f in base.faces(c) {
                left[f] -= 1;
            }
        }
        remaining -= layer.len();
        out.push(layer);
    }
    out
}

/// A sub-sheaf given by one subspace per stalk, with maps written in the
/// stored subspace bases.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubSheaf {
    parent: CellSheaf,
    sub: Vec<Subspace>,
    sheaf: CellSheaf,
}

impl SubSheaf {
    pub fn new(parent: CellSheaf, sub: Vec<Subspace>) -> Result<Self> {
        if sub.len() != parent.base().len() {
            return Err(Error::InvalidSheaf("one subspace per cell".into()));
        }
        for (c, s) in sub.iter().enumerate() {
            if s.ambient_dim() != parent.stalk_dim(c) {
                return Err(Error::AmbientMismatch(s.ambient_dim(), parent.stalk_dim(c)));
            }
        }
        let mut maps = BTreeMap::new();
        for (s, t) in parent.relations() {
            let m = restrict_map(parent.map(s, t), &sub[t], &sub[s]).map_err(|_| Error::Relation {
                sigma: s,
                tau: t,
                reason: "subspaces are not carried into each other".into(),
            })?;
            maps.insert((s, t), m);
        }
        let dims = sub.iter().map(|s| s.dim()).collect();
        let sheaf = CellSheaf::new(parent.base().clone(), dims, maps)?;
        Ok(SubSheaf { parent, sub, sheaf })
    }

    pub fn full(parent: &CellSheaf) -> Self {
        let f = parent.field();
        let sub = parent.stalk_dims().iter().map(|&d| Subspace::full(f, d)).collect();
        SubSheaf::new(parent.clone(), sub).expect("full sub-sheaf")
    }

    pub fn parent(&self) -> &CellSheaf {
        &self.parent
    }

    pub fn subspace(&self, cell: usize) -> &Subspace {
        &self.sub[cell]
    }

    pub fn subspaces(&self) -> &[Subspace] {
        &self.sub
    }

    /// The sub-sheaf in its own bases.
    pub fn sheaf(&self) -> &CellSheaf {
        &self.sheaf
    }

    pub fn inclusion(&self, cell: usize) -> FieldMatrix {
        self.sub[cell].inclusion()
    }
}

/// A quotient cosheaf `F / K` with the standard-vector quotient bases.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientCosheaf {
    parent: CellCosheaf,
    kern: Vec<Subspace>,
    proj: Vec<FieldMatrix>,
    cosheaf: CellCosheaf,
}

impl QuotientCosheaf {
    pub fn new(parent: CellCosheaf, kern: Vec<Subspace>) -> Result<Self> {
        if kern.len() != parent.base().len() {
            return Err(Error::InvalidSheaf("one subspace per cell".into()));
        }
        let f = parent.field();
        let mut proj = Vec::with_capacity(kern.len());
        let mut lifts = Vec::with_capacity(kern.len());
        for (c, k) in kern.iter().enumerate() {
            let (p, _) = quotient(parent.stalk_dim(c), k)?;
            proj.push(p);
            let cols: Vec<Vec<u32>> = complement_indices(k)
                .into_iter()
                .map(|j| {
                    let mut e = vec![0; k.ambient_dim()];
                    e[j] = 1;
                    e
                })
                .collect();
            lifts.push(FieldMatrix::from_columns(f, k.ambient_dim(), &cols));
        }
        let mut maps = BTreeMap::new();
        for (s, t) in parent.relations() {
            let m = parent.map(s, t);
            for v in kern[s].basis_vectors() {
                if !kern[t].contains(&m.mul_vec(&v)?) {
                    return Err(Error::Relation {
                        sigma: s,
                        tau: t,
                        reason: "kernel is not carried into the kernel".into(),
                    });
                }
            }
            maps.insert((s, t), proj[t].mul(m)?.mul(&lifts[s])?);
        }
        let dims = proj.iter().map(|p| p.rows()).collect();
        let cosheaf = CellCosheaf::new(parent.base().clone(), dims, maps)?;
        Ok(QuotientCosheaf {
            parent,
            kern,
            proj,
            cosheaf,
        })
    }

    pub fn identity(parent: &CellCosheaf) -> Self {
        let f = parent.field();
        let kern = parent.stalk_dims().iter().map(|&d| Subspace::zero(f, d)).collect();
        QuotientCosheaf::new(parent.clone(), kern).expect("trivial quotient")
    }

    pub fn parent(&self) -> &CellCosheaf {
        &self.parent
    }

    pub fn kernel(&self, cell: usize) -> &Subspace {
        &self.kern[cell]
    }

    pub fn kernels(&self) -> &[Subspace] {
        &self.kern
    }

    pub fn projection(&self, cell: usize) -> &FieldMatrix {
        &self.proj[cell]
    }

    /// The quotient in its own bases.
    pub fn cosheaf(&self) -> &CellCosheaf {
        &self.cosheaf
    }
}

/// Output of `epify`: the maximal sub-episheaf and the number of sweeps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Epification {
    pub sub: SubSheaf,
    pub iterations: usize,
}

/// Output of `monofy`: the minimal quotient-monocosheaf and the sweep count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Monofication {
    pub quotient: QuotientCosheaf,
    pub iterations: usize,
}

fn images_agree(s: &CellSheaf, e: &[Subspace]) -> Result<bool> {
    for (a, b) in s.relations() {
        let img = image(&s.map(a, b).mul(&e[b].inclusion())?);
        if img != e[a] {
            return Ok(false);
        }
    }
    Ok(true)
}

fn kernels_agree(c: &CellCosheaf, k: &[Subspace]) -> Result<bool> {
    for (a, b) in c.relations() {
        if preimage(c.map(a, b), &k[b])? != k[a] {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Maximal sub-episheaf. Each sweep first intersects every stalk with the
/// images of the maps entering it, then walks the strata from the top,
/// intersecting with preimages of the already-updated cofaces.
pub fn epify(s: &CellSheaf) -> Result<Epification> {
    let base = s.base();
    let order: Vec<usize> = strata(base).into_iter().flatten().collect();
    let f = s.field();
    let mut cur: Vec<Subspace> = s.stalk_dims().iter().map(|&d| Subspace::full(f, d)).collect();
    let mut iterations = 0;
    while !images_agree(s, &cur)? {
        iterations += 1;
        let mut prime = cur.clone();
        for (a, b) in s.relations() {
            let img = image(&s.map(a, b).mul(&cur[b].inclusion())?);
            prime[a] = intersect(&prime[a], &img)?;
        }
        let mut next = prime;
        for &c in &order {
            for &r in base.cofaces(c) {
                let pre = preimage(s.map(r, c), &next[r])?;
                next[c] = intersect(&next[c], &pre)?;
            }
        }
        if next == cur {
            return Err(Error::Internal("epification sweep made no progress".into()));
        }
        cur = next;
    }
    Ok(Epification {
        sub: SubSheaf::new(s.clone(), cur)?,
        iterations,
    })
}

/// Minimal quotient-monocosheaf. Each sweep first adds the preimages of the
/// kernels along every outgoing map, then walks the strata from the top,
/// pushing the updated kernels of cofaces forward.
pub fn monofy(c: &CellCosheaf) -> Result<Monofication> {
    let base = c.base();
    let order: Vec<usize> = strata(base).into_iter().flatten().collect();
    let f = c.field();
    let mut cur: Vec<Subspace> = c.stalk_dims().iter().map(|&d| Subspace::zero(f, d)).collect();
    let mut iterations = 0;
    while !kernels_agree(c, &cur)? {
        iterations += 1;
        let mut prime = cur.clone();
        for (a, b) in c.relations() {
            let pre = preimage(c.map(a, b), &cur[b])?;
            prime[a] = span_sum(&prime[a], &pre)?;
        }
        let mut next = prime;
        for &x in &order {
            for &r in base.cofaces(x) {
                let pushed = image(&c.map(r, x).mul(&next[r].inclusion())?);
                next[x] = span_sum(&next[x], &pushed)?;
            }
        }
        if next == cur {
            return Err(Error::Internal("monofication sweep made no progress".into()));
        }
        cur = next;
    }
    Ok(Monofication {
        quotient: QuotientCosheaf::new(c.clone(), cur)?,
        iterations,
    })
}

/// An episheaf over a monocosheaf with verticals `I = proj . F . incl`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Isobisheaf {
    pub epi: SubSheaf,
    pub mono: QuotientCosheaf,
    pub bisheaf: Bisheaf,
    pub epi_iterations: usize,
    pub mono_iterations: usize,
}

impl Isobisheaf {
    pub fn vertical(&self, cell: usize) -> &FieldMatrix {
        self.bisheaf.vertical(cell)
    }
}

pub fn isobisheafify(b: &Bisheaf) -> Result<Isobisheaf> {
    let e = epify(b.sheaf())?;
    let m = monofy(b.cosheaf())?;
    let mut vertical = Vec::with_capacity(b.base().len());
    for c in 0..b.base().len() {
        vertical.push(
            m.quotient
                .projection(c)
                .mul(b.vertical(c))?
                .mul(&e.sub.inclusion(c))?,
        );
    }
    let bisheaf = Bisheaf::new(e.sub.sheaf().clone(), m.quotient.cosheaf().clone(), vertical)
        .map_err(|err| Error::Internal(format!("isobisheaf square fails: {err}")))?;
    if !is_episheaf(bisheaf.sheaf()).holds || !is_monocosheaf(bisheaf.cosheaf()).holds {
        return Err(Error::Internal("isofication did not reach an isobisheaf".into()));
    }
    Ok(Isobisheaf {
        epi: e.sub,
        mono: m.quotient,
        bisheaf,
        epi_iterations: e.iterations,
        mono_iterations: m.iterations,
    })
}

/// The image of the isobisheaf verticals, a cosheaf with invertible maps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PersistentLocalSystem {
    /// Stalk at each cell as a subspace of the monocosheaf stalk.
    pub stalks: Vec<Subspace>,
    /// Maps in the stored stalk bases.
    pub system: CellCosheaf,
}

impl PersistentLocalSystem {
    pub fn rank(&self) -> usize {
        self.stalks.iter().map(|s| s.dim()).max().unwrap_or(0)
    }

    pub fn base(&self) -> &CellComplex {
        self.system.base()
    }

    pub fn map(&self, sigma: usize, tau: usize) -> &FieldMatrix {
        self.system.map(sigma, tau)
    }

    /// Coordinates of a monocosheaf vector at `cell` in the stalk basis.
    pub fn coordinates(&self, cell: usize, v: &[u32]) -> Option<Vec<u32>> {
        self.stalks[cell].coordinates(v)
    }
}

pub fn extract_pls(i: &Isobisheaf) -> Result<PersistentLocalSystem> {
    let base = i.bisheaf.base();
    let stalks: Vec<Subspace> = (0..base.len()).map(|c| image(i.vertical(c))).collect();
    let mut maps: BTreeMap<Relation, FieldMatrix> = BTreeMap::new();
    for (s, t) in i.bisheaf.cosheaf().relations() {
        let m = restrict_map(i.bisheaf.cosheaf().map(s, t), &stalks[s], &stalks[t])
            .map_err(|e| Error::Internal(format!("persistent local system at {s} <= {t}: {e}")))?;
        if !m.is_square() || rank(&m) != m.rows() {
            return Err(Error::Internal(format!(
                "persistent local system map {s} <= {t} is not invertible"
            )));
        }
        maps.insert((s, t), m);
    }
    let dims = stalks.iter().map(|s| s.dim()).collect();
    Ok(PersistentLocalSystem {
        stalks,
        system: CellCosheaf::new(base.clone(), dims, maps)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::Field;
    use crate::fixtures;
    use crate::periodic::{BaseCellulation, Rational};

    fn circle(f: Field, l: i64) -> CellComplex {
        BaseCellulation::new(0, (0..l).map(|m| Rational::new(m, l)).collect())
            .unwrap()
            .complex(f)
    }

    #[test]
    fn strata_of_a_triangle() {
        let c = CellComplex::from_simplices(Field::gf2(), 3, &[vec![0, 1, 2]]).unwrap();
        let s = strata(&c);
        assert_eq!(s.len(), 3);
        assert_eq!(s[0], vec![6]);
        assert_eq!(s[2], vec![0, 1, 2]);
    }

    #[test]
    fn running_example_isofies_as_computed_by_hand() {
        let b = fixtures::running_example(4).unwrap();
        let i = isobisheafify(&b).unwrap();
        assert_eq!(i.epi_iterations, 0);
        assert_eq!(i.epi.sheaf(), b.sheaf());
        assert!(i.mono.cosheaf().stalk_dims().iter().all(|&d| d == 1));
        assert!(i.mono.cosheaf().maps().values().all(|m| m.is_identity()));
        let f = Field::gf2();
        let qv = FieldMatrix::from_rows(f, &[vec![1, 1, 1]]).unwrap();
        assert_eq!(i.mono.projection(0), &qv);
        let iv = FieldMatrix::from_rows(f, &[vec![1, 0, 0, 1, 1]]).unwrap();
        let ie = FieldMatrix::from_rows(f, &[vec![1, 1, 1, 1]]).unwrap();
        assert_eq!(i.vertical(0), &iv);
        assert_eq!(i.vertical(4), &ie);
        let pls = extract_pls(&i).unwrap();
        assert_eq!(pls.rank(), 1);
        assert!(pls.system.maps().values().all(|m| m.is_identity()));
    }

    #[test]
    fn zero_inputs() {
        let f = Field::new(3).unwrap();
        let base = circle(f, 3);
        let i = isobisheafify(&Bisheaf::zero(base)).unwrap();
        assert_eq!(extract_pls(&i).unwrap().rank(), 0);
    }

    #[test]
    fn non_surjective_map_is_cut_down() {
        let f = Field::gf2();
        let base = circle(f, 2);
        let mut maps = BTreeMap::new();
        maps.insert((2, 0), FieldMatrix::identity(f, 2));
        maps.insert((2, 1), FieldMatrix::identity(f, 2));
        maps.insert((3, 1), FieldMatrix::identity(f, 2));
        maps.insert((3, 0), FieldMatrix::from_rows(f, &[vec![1, 0], vec![0, 0]]).unwrap());
        let s = CellSheaf::new(base, vec![2; 4], maps).unwrap();
        let e = epify(&s).unwrap();
        assert!(is_episheaf(e.sub.sheaf()).holds);
        assert_eq!(e.sub.sheaf().stalk_dims(), &[1, 1, 1, 1]);
        let o = oracle_epify(&s, &OracleLimits::default()).unwrap();
        assert_eq!(o, e.sub);
        assert!(e.iterations <= s.total_dim() * s.base().len());
    }

    #[test]
    fn identity_local_system_is_fixed() {
        let f = Field::new(3).unwrap();
        let c = CellCosheaf::constant(circle(f, 3), 2).unwrap();
        let m = monofy(&c).unwrap();
        assert_eq!(m.iterations, 0);
        assert_eq!(m.quotient.cosheaf(), &c);
    }

    #[test]
    fn torsion_degree_two_has_a_swap() {
        let b = fixtures::torsion(2).unwrap().bisheaf().unwrap();
        let i = isobisheafify(&b).unwrap();
        assert_eq!(i.mono.cosheaf().stalk_dims(), &[2, 2, 2, 2]);
        let pls = extract_pls(&i).unwrap();
        assert_eq!(pls.rank(), 2);
        let swap = FieldMatrix::from_rows(Field::gf2(), &[vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(pls.map(3, 1), &swap);
    }

    #[test]
    fn schwarz_fixtures() {
        let b = fixtures::schwarz_p_1().unwrap().bisheaf().unwrap();
        let pls = extract_pls(&isobisheafify(&b).unwrap()).unwrap();
        assert_eq!(pls.rank(), 1);
        let t = fixtures::schwarz_p_12().unwrap().bisheaf().unwrap();
        let pls = extract_pls(&isobisheafify(&t).unwrap()).unwrap();
        assert_eq!(pls.rank(), 0);
    }
}
