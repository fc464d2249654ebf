use std::collections::BTreeMap;

use super::{Bisheaf, CellCosheaf, CellSheaf, Relation};
use crate::complex::{Cell, CellComplex};
use crate::error::{Error, Result};
use crate::exactla::{Field, FieldMatrix};

/// A traversal `v0, e0, v1, e1, ..., e_{L-1}, v0` of a circle base, where
/// `edges[m]` joins `vertices[m]` and `vertices[m+1]` (cyclically).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CircleWalk {
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
}

impl CircleWalk {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn next_vertex(&self, m: usize) -> usize {
        self.vertices[(m + 1) % self.len()]
    }
}

fn endpoints(base: &CellComplex, e: usize) -> (usize, usize) {
    let cell = base.cell(e);
    match &cell.vertices {
        Some(v) if v.len() == 2 => (v[0], v[1]),
        _ => (cell.boundary[0].0, cell.boundary[1].0),
    }
}

/// Walks the circle from `start`. The first edge is the lowest-id edge whose
/// tail is `start`, falling back to the lowest-id incident edge.
pub fn circle_walk(base: &CellComplex, start: usize) -> Result<CircleWalk> {
    let verts = base.cells_of_dim(0).to_vec();
    let edges = base.cells_of_dim(1).to_vec();
    if base.dim() != Some(1) || verts.len() < 2 || verts.len() != edges.len() {
        return Err(Error::NotACircle(format!(
            "{} vertices, {} edges, dimension {:?}",
            verts.len(),
            edges.len(),
            base.dim()
        )));
    }
    if start >= base.len() || base.cell_dim(start) != 0 {
        return Err(Error::NotACircle(format!("{start} is not a vertex")));
    }
    for &v in &verts {
        if base.cofaces(v).len() != 2 {
            return Err(Error::NotACircle(format!("vertex {v} has degree {}", base.cofaces(v).len())));
        }
    }
    for &e in &edges {
        if base.cell(e).boundary.len() != 2 {
            return Err(Error::NotACircle(format!("edge {e} is not an interval")));
        }
    }
    let mut incident: Vec<usize> = base.cofaces(start).to_vec();
    incident.sort_unstable();
    let first = incident
        .iter()
        .copied()
        .find(|&e| endpoints(base, e).0 == start)
        .unwrap_or(incident[0]);
    let mut walk = CircleWalk {
        vertices: vec![start],
        edges: Vec::new(),
    };
    let mut v = start;
    let mut e = first;
    loop {
        walk.edges.push(e);
        let (a, b) = endpoints(base, e);
        v = if a == v { b } else { a };
        if v == start {
            break;
        }
        if walk.vertices.contains(&v) || walk.vertices.len() == verts.len() {
            return Err(Error::NotACircle("walk revisits a vertex".into()));
        }
        walk.vertices.push(v);
        e = *base.cofaces(v).iter().find(|&&x| x != e).expect("degree two");
    }
    if walk.vertices.len() != verts.len() {
        return Err(Error::NotACircle("base is disconnected".into()));
    }
    Ok(walk)
}

/// The `k`-fold cyclic cover of a circle base. New vertex `i` is
/// `0..kL`, new edge `i` has id `kL + i` and runs from vertex `i` to `i+1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverMap {
    pub complex: CellComplex,
    /// Original cell under each new cell.
    pub under: Vec<usize>,
    /// Original covering relation under each new one.
    pub relations: BTreeMap<Relation, Relation>,
}

impl CoverMap {
    pub fn new(field: Field, walk: &CircleWalk, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::Config("cover degree must be at least 1".into()));
        }
        let l = walk.len();
        let n = k * l;
        let mut cells: Vec<Cell> = (0..n).map(|_| Cell::vertex()).collect();
        let mut under: Vec<usize> = (0..n).map(|i| walk.vertices[i % l]).collect();
        let mut relations = BTreeMap::new();
        for i in 0..n {
            let head = (i + 1) % n;
            let mut c = Cell::new(1, vec![(i, field.neg(1)), (head, 1)]);
            c.vertices = Some(vec![i, head]);
            cells.push(c);
            let m = i % l;
            under.push(walk.edges[m]);
            relations.insert((n + i, i), (walk.edges[m], walk.vertices[m]));
            relations.insert((n + i, head), (walk.edges[m], walk.next_vertex(m)));
        }
        Ok(CoverMap {
            complex: CellComplex::new(field, cells)?,
            under,
            relations,
        })
    }

    fn pull<T: Clone>(&self, data: &BTreeMap<Relation, T>) -> BTreeMap<Relation, T> {
        self.relations
            .iter()
            .map(|(&new, old)| (new, data[old].clone()))
            .collect()
    }

    pub fn sheaf(&self, s: &CellSheaf) -> Result<CellSheaf> {
        let dims = self.under.iter().map(|&c| s.stalk_dim(c)).collect();
        CellSheaf::new(self.complex.clone(), dims, self.pull(s.maps()))
    }

    pub fn cosheaf(&self, c: &CellCosheaf) -> Result<CellCosheaf> {
        let dims = self.under.iter().map(|&x| c.stalk_dim(x)).collect();
        CellCosheaf::new(self.complex.clone(), dims, self.pull(c.maps()))
    }

    pub fn bisheaf(&self, b: &Bisheaf) -> Result<Bisheaf> {
        let vertical: Vec<FieldMatrix> = self.under.iter().map(|&c| b.vertical(c).clone()).collect();
        Bisheaf::new(self.sheaf(b.sheaf())?, self.cosheaf(b.cosheaf())?, vertical)
    }
}
