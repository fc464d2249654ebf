//! Brute-force reference implementations for small instances.
//!
//! Every assignment of subspaces to the cells without faces is enumerated;
//! the remaining cells are then forced by the relation constraints, and an
//! assignment survives only if all constraints hold. The extremal solution is
//! the join (or meet) of all survivors, which is checked to be a solution.

use std::collections::{BTreeMap, BTreeSet};

use super::{QuotientCosheaf, SubSheaf};
use crate::error::{Error, Result};
use crate::exactla::{image, intersect, preimage, span_sum, Field, Subspace};
use crate::sheafcore::{CellCosheaf, CellSheaf, Relation};

/// Size limits beyond which the oracles refuse to run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleLimits {
    pub max_total_dim: usize,
    pub max_stalk_dim: usize,
    pub max_cells: usize,
    pub primes: Vec<u32>,
    pub max_assignments: u64,
}

impl Default for OracleLimits {
    fn default() -> Self {
        OracleLimits {
            max_total_dim: 24,
            max_stalk_dim: 4,
            max_cells: 8,
            primes: vec![2, 3],
            max_assignments: 2_000_000,
        }
    }
}

/// Every subspace of `F^d`, smallest first, ties broken by basis.
pub fn all_subspaces(field: Field, d: usize) -> Vec<Subspace> {
    let p = field.p() as u64;
    let count = p.pow(d as u32);
    let vectors: Vec<Vec<u32>> = (0..count)
        .map(|mut x| {
            (0..d)
                .map(|_| {
                    let r = (x % p) as u32;
                    x /= p;
                    r
                })
                .collect()
        })
        .collect();
    let mut seen: BTreeSet<(usize, Vec<Vec<u32>>)> = BTreeSet::new();
    let mut frontier = vec![Subspace::zero(field, d)];
    seen.insert((0, Vec::new()));
    while let Some(s) = frontier.pop() {
        for v in &vectors {
            if s.contains(v) {
                continue;
            }
            let mut gens = s.basis_vectors();
            gens.push(v.clone());
            let t = Subspace::from_vectors(field, d, &gens);
            if seen.insert((t.dim(), t.basis_vectors())) {
                frontier.push(t);
            }
        }
    }
    seen.into_iter()
        .map(|(_, b)| Subspace::from_vectors(field, d, &b))
        .collect()
}

fn check_size(field: Field, dims: &[usize], limits: &OracleLimits) -> Result<()> {
    let total: usize = dims.iter().sum();
    if !limits.primes.contains(&field.p()) {
        return Err(Error::TooLarge(format!("oracle supports GF(p) for p in {:?}", limits.primes)));
    }
    if dims.len() > limits.max_cells {
        return Err(Error::TooLarge(format!("{} cells exceed {}", dims.len(), limits.max_cells)));
    }
    if total > limits.max_total_dim {
        return Err(Error::TooLarge(format!("total stalk dimension {total} exceeds {}", limits.max_total_dim)));
    }
    if let Some(d) = dims.iter().find(|&&d| d > limits.max_stalk_dim) {
        return Err(Error::TooLarge(format!("stalk dimension {d} exceeds {}", limits.max_stalk_dim)));
    }
    Ok(())
}

fn index_of(list: &[Subspace], s: &Subspace) -> usize {
    list.iter().position(|x| x == s).expect("every subspace is listed")
}

/// Enumerates solutions where a relation `(a, b)` forces `a` from `b`
/// through `table[(a, b)][idx_b]`. Cells with no faces are free.
fn enumerate(
    n: usize,
    free: &[usize],
    forced_order: &[usize],
    options: &[Vec<Subspace>],
    table: &BTreeMap<Relation, Vec<usize>>,
    faces: &[Vec<usize>],
    limit: u64,
    mut visit: impl FnMut(&[usize]),
) -> Result<()> {
    let combos: u64 = free
        .iter()
        .map(|&c| options[c].len() as u64)
        .try_fold(1u64, |acc, x| acc.checked_mul(x))
        .unwrap_or(u64::MAX);
    if combos > limit {
        return Err(Error::TooLarge(format!("{combos} assignments exceed {limit}")));
    }
    let mut choice = vec![0usize; n];
    let mut counter = vec![0usize; free.len()];
    'outer: loop {
        for (i, &c) in free.iter().enumerate() {
            choice[c] = counter[i];
        }
        let mut ok = true;
        for &c in forced_order {
            let mut value = None;
            for &t in &faces[c] {
                let v = table[&(c, t)][choice[t]];
                match value {
                    None => value = Some(v),
                    Some(w) if w != v => {
                        ok = false;
                        break;
                    }
                    _ => {}
                }
            }
            if !ok {
                break;
            }
            choice[c] = value.expect("forced cells have faces");
        }
        if ok {
            visit(&choice);
        }
        for i in 0..free.len() {
            counter[i] += 1;
            if counter[i] < options[free[i]].len() {
                continue 'outer;
            }
            counter[i] = 0;
        }
        return Ok(());
    }
}

struct Setup {
    options: Vec<Vec<Subspace>>,
    free: Vec<usize>,
    forced: Vec<usize>,
    faces: Vec<Vec<usize>>,
}

fn setup(field: Field, dims: &[usize], base: &crate::complex::CellComplex) -> Setup {
    let n = dims.len();
    let options = dims.iter().map(|&d| all_subspaces(field, d)).collect();
    let faces: Vec<Vec<usize>> = (0..n)
        .map(|c| {
            let s: BTreeSet<usize> = base.faces(c).collect();
            s.into_iter().collect()
        })
        .collect();
    let mut by_dim: Vec<usize> = (0..n).collect();
    by_dim.sort_by_key(|&c| (base.cell_dim(c), c));
    let free = by_dim.iter().copied().filter(|&c| faces[c].is_empty()).collect();
    let forced = by_dim.into_iter().filter(|&c| !faces[c].is_empty()).collect();
    Setup {
        options,
        free,
        forced,
        faces,
    }
}

/// Reference maximal sub-episheaf: the join of every sub-episheaf.
pub fn oracle_epify(s: &CellSheaf, limits: &OracleLimits) -> Result<SubSheaf> {
    let f = s.field();
    check_size(f, s.stalk_dims(), limits)?;
    let st = setup(f, s.stalk_dims(), s.base());
    let mut table = BTreeMap::new();
    for (a, b) in s.relations() {
        let row = st.options[b]
            .iter()
            .map(|e| Ok(index_of(&st.options[a], &image(&s.map(a, b).mul(&e.inclusion())?))))
            .collect::<Result<Vec<_>>>()?;
        table.insert((a, b), row);
    }
    let mut join: Vec<Subspace> = s.stalk_dims().iter().map(|&d| Subspace::zero(f, d)).collect();
    let mut err = None;
    enumerate(
        s.base().len(),
        &st.free,
        &st.forced,
        &st.options,
        &table,
        &st.faces,
        limits.max_assignments,
        |choice| {
            for (c, &i) in choice.iter().enumerate() {
                match span_sum(&join[c], &st.options[c][i]) {
                    Ok(x) => join[c] = x,
                    Err(e) => err = Some(e),
                }
            }
        },
    )?;
    if let Some(e) = err {
        return Err(e);
    }
    for (a, b) in s.relations() {
        if image(&s.map(a, b).mul(&join[b].inclusion())?) != join[a] {
            return Err(Error::Internal("join of sub-episheaves is not an episheaf".into()));
        }
    }
    SubSheaf::new(s.clone(), join)
}

/// Reference minimal quotient-monocosheaf: the meet of every admissible
/// kernel assignment.
pub fn oracle_monofy(c: &CellCosheaf, limits: &OracleLimits) -> Result<QuotientCosheaf> {
    let f = c.field();
    check_size(f, c.stalk_dims(), limits)?;
    let st = setup(f, c.stalk_dims(), c.base());
    let mut table = BTreeMap::new();
    for (a, b) in c.relations() {
        let row = st.options[b]
            .iter()
            .map(|k| Ok(index_of(&st.options[a], &preimage(c.map(a, b), k)?)))
            .collect::<Result<Vec<_>>>()?;
        table.insert((a, b), row);
    }
    let mut meet: Vec<Subspace> = c.stalk_dims().iter().map(|&d| Subspace::full(f, d)).collect();
    let mut err = None;
    enumerate(
        c.base().len(),
        &st.free,
        &st.forced,
        &st.options,
        &table,
        &st.faces,
        limits.max_assignments,
        |choice| {
            for (x, &i) in choice.iter().enumerate() {
                match intersect(&meet[x], &st.options[x][i]) {
                    Ok(m) => meet[x] = m,
                    Err(e) => err = Some(e),
                }
            }
        },
    )?;
    if let Some(e) = err {
        return Err(e);
    }
    for (a, b) in c.relations() {
        if preimage(c.map(a, b), &meet[b])? != meet[a] {
            return Err(Error::Internal("meet of admissible kernels is not admissible".into()));
        }
    }
    QuotientCosheaf::new(c.clone(), meet)
}
