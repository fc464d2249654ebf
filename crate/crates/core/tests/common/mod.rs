//! Random inputs and property checks shared by the property suites and the
//! acceptance target. Every check is a pure function of a seed.

#![allow(dead_code)]

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use toroid::bisheafbuild::{build_bisheaf, BisheafRequest};
use toroid::cli::{random_circle_cosheaf, random_circle_sheaf};
use toroid::complex::{
    barycentric_subdivide, cap_product, coboundary, homology, CellComplex, ChainVector,
};
use toroid::exactla::{intersect, invert, rank, span_sum, Field, FieldMatrix, Subspace};
use toroid::isofy::{epify, extract_pls, isobisheafify, monofy, OracleLimits};
use toroid::periodic::{k_fold_cover, BaseCellulation, LiftedSimplex, Origin, PeriodicComplex, Rational};
use toroid::sheafcore::{
    circle_walk, covering_relations, is_episheaf, is_monocosheaf, validate_bisheaf, Bisheaf,
    CellCosheaf, CellSheaf, CoverMap,
};
use toroid::toroidal::{analyze_bisheaf, analyze_direction, classify_with, lift_toroidal_basis};

pub type Check = Result<(), String>;

pub const POWERS: [usize; 3] = [1, 2, 3];

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn field(rng: &mut ChaCha8Rng) -> Field {
    Field::new([2u64, 3, 5][rng.gen_range(0..3)]).unwrap()
}

pub fn random_matrix(rng: &mut ChaCha8Rng, f: Field, rows: usize, cols: usize) -> FieldMatrix {
    let data = (0..rows * cols).map(|_| rng.gen_range(0..f.p())).collect();
    FieldMatrix::from_residues(f, rows, cols, data)
}

pub fn random_invertible(rng: &mut ChaCha8Rng, f: Field, n: usize) -> FieldMatrix {
    loop {
        let m = random_matrix(rng, f, n, n);
        if rank(&m) == n {
            return m;
        }
    }
}

pub fn random_subspace(rng: &mut ChaCha8Rng, f: Field, n: usize) -> Subspace {
    let k = rng.gen_range(0..=n);
    let vs: Vec<Vec<u32>> = (0..k).map(|_| (0..n).map(|_| rng.gen_range(0..f.p())).collect()).collect();
    Subspace::from_vectors(f, n, &vs)
}

/// A finite simplicial complex on at most six vertices with simplices of
/// dimension at most three.
pub fn random_simplicial(rng: &mut ChaCha8Rng, f: Field) -> CellComplex {
    let nv = rng.gen_range(3..=6);
    let count = rng.gen_range(1..=5);
    let simplices: Vec<Vec<usize>> = (0..count)
        .map(|_| {
            let size = rng.gen_range(2..=4.min(nv));
            let mut vs: Vec<usize> = (0..nv).collect();
            for i in 0..size {
                let j = rng.gen_range(i..nv);
                vs.swap(i, j);
            }
            vs.truncate(size);
            vs
        })
        .collect();
    CellComplex::from_simplices(f, nv, &simplices).unwrap()
}

/// A 1-periodic complex in the plane: `c` columns of `h` vertices, random
/// edges between neighbouring columns (the last column joins the first one
/// period over), some vertical edges, and triangles wherever an edge pair
/// and a vertical edge close up.
pub fn random_periodic(rng: &mut ChaCha8Rng, f: Field) -> PeriodicComplex {
    let c = rng.gen_range(2..=3usize);
    let h = rng.gen_range(1..=3usize);
    let coords: Vec<Vec<Rational>> = (0..c * h)
        .map(|v| vec![Rational::new((v / h) as i64, c as i64), Rational::from_integer((v % h) as i64)])
        .collect();
    let at = |i: usize, j: usize| -> (usize, Vec<i64>) { (i % c * h + j, vec![(i / c) as i64]) };
    let mut simplices: Vec<LiftedSimplex> = Vec::new();
    let mut across = std::collections::BTreeSet::new();
    for i in 0..c {
        // a random permutation keeps some strands running through
        let mut perm: Vec<usize> = (0..h).collect();
        for k in (1..h).rev() {
            perm.swap(k, rng.gen_range(0..=k));
        }
        for j in 0..h {
            if rng.gen_bool(0.8) {
                across.insert((i, j, perm[j]));
            }
            if rng.gen_bool(0.2) {
                across.insert((i, j, rng.gen_range(0..h)));
            }
        }
        for j in 0..h.saturating_sub(1) {
            if rng.gen_bool(0.3) {
                simplices.push(vec![at(i, j), at(i, j + 1)]);
                for k in 0..h {
                    if across.contains(&(i, j, k)) && across.contains(&(i, j + 1, k)) && rng.gen_bool(0.5) {
                        simplices.push(vec![at(i, j), at(i, j + 1), at(i + 1, k)]);
                    }
                }
            }
        }
    }
    for &(i, j, k) in &across {
        simplices.push(vec![at(i, j), at(i + 1, k)]);
    }
    PeriodicComplex::from_lifted_simplices(f, 1, coords, &simplices, Origin::Simplicial)
        .expect("column complexes are valid")
}

/// A local system on a circle with `l` vertices with the given sheaf maps:
/// cosheaf maps are their inverses and verticals identities.
pub fn local_system_from(
    f: Field,
    l: usize,
    r: usize,
    maps: &BTreeMap<(usize, usize), FieldMatrix>,
) -> Result<Bisheaf, String> {
    let angles = (0..l as i64).map(|m| Rational::new(m, l as i64)).collect();
    let base = BaseCellulation::new(0, angles).map_err(err)?.complex(f);
    let dims = vec![r; base.len()];
    let sheaf = CellSheaf::new(base.clone(), dims.clone(), maps.clone()).map_err(err)?;
    let co: BTreeMap<_, _> = maps.iter().map(|(k, m)| (*k, invert(m).unwrap())).collect();
    let cosheaf = CellCosheaf::new(base.clone(), dims, co).map_err(err)?;
    let vertical = (0..base.len()).map(|_| FieldMatrix::identity(f, r)).collect();
    Bisheaf::new(sheaf, cosheaf, vertical).map_err(err)
}

pub struct LocalSystem {
    pub field: Field,
    pub l: usize,
    pub r: usize,
    /// Sheaf map of edge `m` at its tail and at its head.
    pub transports: Vec<(FieldMatrix, FieldMatrix)>,
}

impl LocalSystem {
    pub fn random(rng: &mut ChaCha8Rng) -> Self {
        let f = field(rng);
        let l = rng.gen_range(2..=5);
        let r = rng.gen_range(1..=3);
        let transports = (0..l)
            .map(|_| (random_invertible(rng, f, r), random_invertible(rng, f, r)))
            .collect();
        LocalSystem { field: f, l, r, transports }
    }

    pub fn bisheaf(&self) -> Result<Bisheaf, String> {
        let l = self.l;
        let mut maps = BTreeMap::new();
        for (m, (tail, head)) in self.transports.iter().enumerate() {
            maps.insert((l + m, m), tail.clone());
            maps.insert((l + m, (m + 1) % l), head.clone());
        }
        local_system_from(self.field, l, self.r, &maps)
    }

    /// Inserts a vertex in the middle of edge `j`.
    pub fn subdivide(&self, j: usize) -> Self {
        let id = FieldMatrix::identity(self.field, self.r);
        let mut transports = Vec::with_capacity(self.l + 1);
        for (m, (tail, head)) in self.transports.iter().enumerate() {
            if m == j {
                transports.push((tail.clone(), id.clone()));
                transports.push((id.clone(), head.clone()));
            } else {
                transports.push((tail.clone(), head.clone()));
            }
        }
        LocalSystem {
            field: self.field,
            l: self.l + 1,
            r: self.r,
            transports,
        }
    }
}

// ---- properties ----

pub fn lattice_dimension_identity(seed: u64) -> Check {
    let mut rng = rng(seed);
    let f = field(&mut rng);
    let n = rng.gen_range(0..=6);
    let a = random_subspace(&mut rng, f, n);
    let b = random_subspace(&mut rng, f, n);
    let sum = span_sum(&a, &b).map_err(err)?;
    let meet = intersect(&a, &b).map_err(err)?;
    ensure!(
        sum.dim() + meet.dim() == a.dim() + b.dim(),
        "dim(A+B) {} + dim(A^B) {} != {} + {}",
        sum.dim(),
        meet.dim(),
        a.dim(),
        b.dim()
    );
    ensure!(meet.is_subspace_of(&a) && meet.is_subspace_of(&b), "meet not below both");
    ensure!(a.is_subspace_of(&sum) && b.is_subspace_of(&sum), "join not above both");
    Ok(())
}

pub fn boundary_and_subdivision(seed: u64) -> Check {
    let mut rng = rng(seed);
    let f = field(&mut rng);
    let c = random_simplicial(&mut rng, f);
    for id in 0..c.len() {
        let cell = ChainVector::from_terms(f, c.cell_dim(id), vec![(id, 1)]);
        if c.cell_dim(id) >= 2 {
            ensure!(c.boundary(&c.boundary(&cell)).is_zero(), "boundary squared nonzero on cell {id}");
        }
    }
    let sd = barycentric_subdivide(&c).map_err(err)?;
    let top = c.dim().unwrap_or(0);
    for k in 0..=top {
        let h = homology(&c, k).map_err(err)?;
        let hs = homology(&sd.complex, k).map_err(err)?;
        ensure!(h.rank() == hs.rank(), "H{k} rank {} becomes {}", h.rank(), hs.rank());
        let cols: Vec<Vec<u32>> = h
            .representatives()
            .iter()
            .map(|z| hs.coords_of(&sd.carry(z)))
            .collect::<Result<_, _>>()
            .map_err(err)?;
        let m = FieldMatrix::from_columns(f, hs.rank(), &cols);
        ensure!(rank(&m) == h.rank(), "carrier is not injective on H{k}");
    }
    Ok(())
}

pub fn cap_leibniz(seed: u64) -> Check {
    let mut rng = rng(seed);
    let f = field(&mut rng);
    let c = random_simplicial(&mut rng, f);
    let n = c.dim().unwrap_or(0);
    if n == 0 {
        return Ok(());
    }
    let n = rng.gen_range(1..=n);
    let p = rng.gen_range(0..n);
    let random_chain = |rng: &mut ChaCha8Rng, k: usize| {
        let terms = c.cells_of_dim(k).iter().map(|&s| (s, rng.gen_range(0..f.p()))).collect();
        ChainVector::from_terms(f, k, terms)
    };
    let z = random_chain(&mut rng, n);
    let phi = random_chain(&mut rng, p);
    let lhs = c.boundary(&cap_product(&c, &z, &phi).map_err(err)?);
    let mut rhs = cap_product(&c, &c.boundary(&z), &phi)
        .map_err(err)?
        .sub(&cap_product(&c, &z, &coboundary(&c, &phi)).map_err(err)?);
    if p % 2 == 1 {
        rhs = rhs.scale(f.neg(1));
    }
    ensure!(lhs == rhs, "Leibniz fails for n={n} p={p}");
    Ok(())
}

pub fn squares_commute(seed: u64) -> Check {
    let mut rng = rng(seed);
    let f = field(&mut rng);
    let g = random_periodic(&mut rng, f);
    let degree = rng.gen_range(1..=2);
    let bb = build_bisheaf(&BisheafRequest::new(g, 0, degree)).map_err(err)?;
    validate_bisheaf(&bb.bisheaf).map_err(|e| format!("built: {e}"))?;
    let iso = isobisheafify(&bb.bisheaf).map_err(err)?;
    validate_bisheaf(&iso.bisheaf).map_err(|e| format!("isobisheaf: {e}"))?;
    let ls = LocalSystem::random(&mut rng).bisheaf()?;
    validate_bisheaf(&ls).map_err(|e| format!("local system: {e}"))?;
    Ok(())
}

pub fn pls_invertible(seed: u64) -> Check {
    let mut rng = rng(seed);
    let f = field(&mut rng);
    let g = random_periodic(&mut rng, f);
    let degree = rng.gen_range(1..=2);
    let bb = build_bisheaf(&BisheafRequest::new(g, 0, degree)).map_err(err)?;
    let pls = extract_pls(&isobisheafify(&bb.bisheaf).map_err(err)?).map_err(err)?;
    for (s, t) in covering_relations(pls.base()) {
        let m = pls.map(s, t);
        ensure!(
            m.rows() == m.cols() && rank(m) == m.rows(),
            "PLS map {s} <= {t} is {}x{} of rank {}",
            m.rows(),
            m.cols(),
            rank(m)
        );
    }
    Ok(())
}

fn max_dim(dims: &[usize]) -> usize {
    dims.iter().copied().max().unwrap_or(0)
}

/// Epify and monofy are idempotent and finish within `n * D` sweeps, `n`
/// the number of base cells and `D` the largest stalk.
fn isofy_bounds(s: &CellSheaf, c: &CellCosheaf) -> Check {
    let e = epify(s).map_err(err)?;
    let bound = s.base().len() * max_dim(s.stalk_dims());
    ensure!(e.iterations <= bound, "epify took {} > {bound} sweeps", e.iterations);
    ensure!(is_episheaf(e.sub.sheaf()).holds, "epify output is not an episheaf");
    let again = epify(e.sub.sheaf()).map_err(err)?;
    ensure!(again.iterations == 0, "epify not idempotent");
    ensure!(again.sub.sheaf().stalk_dims() == e.sub.sheaf().stalk_dims(), "epify changed dims");
    if is_episheaf(s).holds {
        ensure!(e.sub.sheaf().stalk_dims() == s.stalk_dims(), "epify shrank an episheaf");
    }

    let m = monofy(c).map_err(err)?;
    let bound = c.base().len() * max_dim(c.stalk_dims());
    ensure!(m.iterations <= bound, "monofy took {} > {bound} sweeps", m.iterations);
    ensure!(is_monocosheaf(m.quotient.cosheaf()).holds, "monofy output is not a monocosheaf");
    let again = monofy(m.quotient.cosheaf()).map_err(err)?;
    ensure!(again.iterations == 0, "monofy not idempotent");
    ensure!(
        again.quotient.cosheaf().stalk_dims() == m.quotient.cosheaf().stalk_dims(),
        "monofy changed dims"
    );
    Ok(())
}

pub fn idempotence(seed: u64) -> Check {
    let mut rng = rng(seed);
    let f = field(&mut rng);
    if rng.gen_bool(0.5) {
        let limits = OracleLimits {
            max_total_dim: 24,
            ..OracleLimits::default()
        };
        let s = random_circle_sheaf(&mut rng, f, 6, 4, &limits).map_err(err)?;
        let c = random_circle_cosheaf(&mut rng, f, 6, 4, &limits).map_err(err)?;
        isofy_bounds(&s, &c)
    } else {
        let g = random_periodic(&mut rng, f);
        let bb = build_bisheaf(&BisheafRequest::new(g, 0, 1)).map_err(err)?;
        isofy_bounds(bb.bisheaf.sheaf(), bb.bisheaf.cosheaf())
    }
}

pub fn iteration_bound(seed: u64) -> Check {
    // same sweep as idempotence but on larger circles
    let mut rng = rng(seed ^ 0x5eed);
    let f = field(&mut rng);
    let limits = OracleLimits {
        max_total_dim: 40,
        ..OracleLimits::default()
    };
    let s = random_circle_sheaf(&mut rng, f, 8, 4, &limits).map_err(err)?;
    let c = random_circle_cosheaf(&mut rng, f, 8, 4, &limits).map_err(err)?;
    isofy_bounds(&s, &c)
}

pub fn monodromy_invariance(seed: u64) -> Check {
    let mut rng = rng(seed);
    let ls = LocalSystem::random(&mut rng);
    let b = ls.bisheaf()?;
    let reference = analyze_bisheaf(&b, 0, 0, &POWERS).map_err(err)?;
    let want = reference.monodromy.as_ref().ok_or("no monodromy")?.powers.clone();
    for v in 1..ls.l {
        let a = analyze_bisheaf(&b, 0, v, &POWERS).map_err(err)?;
        let got = &a.monodromy.as_ref().ok_or("no monodromy")?.powers;
        ensure!(*got == want, "base vertex {v}: {got:?} != {want:?}");
    }
    let j = rng.gen_range(0..ls.l);
    let sub = ls.subdivide(j).bisheaf()?;
    let a = analyze_bisheaf(&sub, 0, 0, &POWERS).map_err(err)?;
    let got = &a.monodromy.as_ref().ok_or("no monodromy")?.powers;
    ensure!(*got == want, "subdividing edge {j}: {got:?} != {want:?}");

    // the same for a geometric build
    let f = field(&mut rng);
    let g = random_periodic(&mut rng, f);
    let a = analyze_direction(&g, 0, 1, None, &POWERS).map_err(err)?;
    let want = a.monodromy().map_err(err)?.powers.clone();
    let nv = a.built.cellulation.vertex_count();
    for v in 1..nv {
        let b = analyze_bisheaf(&a.built.bisheaf, 0, v, &POWERS).map_err(err)?;
        let got = &b.monodromy.as_ref().ok_or("no monodromy")?.powers;
        ensure!(*got == want, "geometric base vertex {v}: {got:?} != {want:?}");
    }
    let (lo, hi) = a.built.cellulation.edge_span(rng.gen_range(0..nv));
    let mut mid = (lo + hi) / Rational::from_integer(2);
    if mid >= Rational::from_integer(1) {
        mid -= Rational::from_integer(1);
    }
    let finer = a.built.cellulation.with_vertex(mid).map_err(err)?;
    let b = analyze_direction(&g, 0, 1, Some(finer), &POWERS).map_err(err)?;
    let got = &b.monodromy().map_err(err)?.powers;
    ensure!(*got == want, "geometric subdivision at {mid}: {got:?} != {want:?}");
    Ok(())
}

/// Cycles of a window of the infinite cover, pushed down to `g`.
pub fn window_cycles(g: &PeriodicComplex, width: i64) -> Result<Vec<ChainVector>, String> {
    let f = g.field();
    let nv = g.vertex_count();
    let w = width as usize;
    let id = |v: usize, s: i64| v * w + s as usize;
    let mut edges = Vec::new();
    for &e in g.complex().cells_of_dim(1) {
        let ls = g.lifted_simplex(e);
        let (a, sa) = (ls[0].0, ls[0].1[0]);
        let (b, sb) = (ls[1].0, ls[1].1[0]);
        for t in -2..=width {
            let (x, y) = (sa + t, sb + t);
            if (0..width).contains(&x) && (0..width).contains(&y) {
                edges.push(vec![id(a, x), id(b, y)]);
            }
        }
    }
    let window = CellComplex::from_simplices(f, nv * w, &edges).map_err(err)?;
    let h = homology(&window, 1).map_err(err)?;
    let mut out = Vec::new();
    for z in h.representatives() {
        let mut terms = Vec::new();
        for &(cell, c) in z.terms() {
            let vs = window.cell(cell).vertices.clone().expect("simplicial");
            let lifted: LiftedSimplex = vs.iter().map(|&x| (x / w, vec![(x % w) as i64])).collect();
            let (gc, sign) = g.find_cell(&lifted).ok_or("window edge has no image")?;
            terms.push((gc, f.mul(c, sign)));
        }
        out.push(ChainVector::from_terms(f, 1, terms));
    }
    Ok(out)
}

pub fn non_toroidal_nullity(seed: u64) -> Check {
    let mut rng = rng(seed);
    let f = field(&mut rng);
    let g = random_periodic(&mut rng, f);
    let a = analyze_direction(&g, 0, 1, None, &[]).map_err(err)?;
    for z in window_cycles(&g, 3)? {
        ensure!(g.complex().is_cycle(&z), "pushed window cycle is not a cycle");
        let v = classify_with(std::slice::from_ref(&a), &z).map_err(err)?;
        ensure!(!v.toroidal, "window cycle {:?} classified toroidal: {:?}", z.terms(), v.images);
        for img in a.pls_image(&z).map_err(err)? {
            ensure!(img.iter().all(|&x| x == 0), "nonzero PLS image {img:?} off the base vertex");
        }
    }
    Ok(())
}

pub fn lift_soundness(seed: u64) -> Check {
    let mut rng = rng(seed);
    let f = field(&mut rng);
    let g = random_periodic(&mut rng, f);
    let a = analyze_direction(&g, 0, 1, None, &[]).map_err(err)?;
    let m = a.monodromy().map_err(err)?;
    let lifted = lift_toroidal_basis(&a, &g).map_err(err)?;
    ensure!(
        lifted.cycles.len() == m.toroidal_rank(),
        "{} lifted cycles for toroidal rank {}",
        lifted.cycles.len(),
        m.toroidal_rank()
    );
    let r = m.matrix.rows();
    if !lifted.cycles.is_empty() {
        let coords = FieldMatrix::from_columns(f, r, &lifted.pls_coords);
        ensure!(rank(&coords) == lifted.cycles.len(), "lifted images are dependent");
    }
    for (z, x) in lifted.cycles.iter().zip(&lifted.pls_coords) {
        ensure!(g.complex().is_cycle(z), "lift is not a cycle");
        ensure!(m.matrix.mul_vec(x).map_err(err)? == *x, "image {x:?} is not fixed by the monodromy");
        ensure!(a.pls_image_at_base(z).map_err(err)? == *x, "recomputed image differs");
        ensure!(classify_with(std::slice::from_ref(&a), z).map_err(err)?.toroidal, "lift not toroidal");
    }
    Ok(())
}

pub fn cover_scaling(seed: u64) -> Check {
    let mut rng = rng(seed);
    let ls = LocalSystem::random(&mut rng);
    let b = ls.bisheaf()?;
    let a = analyze_bisheaf(&b, 0, 0, &POWERS).map_err(err)?;
    let m = a.monodromy.as_ref().ok_or("no monodromy")?;
    let walk = circle_walk(b.base(), 0).map_err(err)?;
    for k in POWERS {
        let cover = CoverMap::new(ls.field, &walk, k).map_err(err)?.bisheaf(&b).map_err(err)?;
        let got = analyze_bisheaf(&cover, 0, 0, &[]).map_err(err)?.toroidal_rank();
        ensure!(got == Some(m.powers[&k]), "explicit k={k}: cover {got:?} vs power {}", m.powers[&k]);
    }

    let f = field(&mut rng);
    let g = random_periodic(&mut rng, f);
    let a = analyze_direction(&g, 0, 1, None, &POWERS).map_err(err)?;
    let m = a.monodromy().map_err(err)?;
    for k in POWERS {
        let cover = k_fold_cover(&g, 0, k).map_err(err)?;
        let c = analyze_direction(&cover, 0, 1, None, &[]).map_err(err)?;
        let got = c.monodromy().map_err(err)?.toroidal_rank();
        ensure!(got == m.powers[&k], "geometric k={k}: cover {got} vs power {}", m.powers[&k]);
    }
    Ok(())
}

pub const PROPERTIES: &[(&str, fn(u64) -> Check)] = &[
    ("lattice dimension identity", lattice_dimension_identity),
    ("boundary squared and subdivision invariance", boundary_and_subdivision),
    ("cap Leibniz rule", cap_leibniz),
    ("squares commute after every build", squares_commute),
    ("PLS maps invertible", pls_invertible),
    ("epify and monofy idempotent", idempotence),
    ("sweeps at most n times D", iteration_bound),
    ("monodromy eigenspace dims invariant", monodromy_invariance),
    ("non-toroidal cycles have zero image", non_toroidal_nullity),
    ("lifted cycles are sound", lift_soundness),
    ("covers match monodromy powers", cover_scaling),
];
