use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};

use super::{
    normalize, permutation_parity, BaseCellulation, LiftedSimplex, PeriodicComplex, Rational,
};
use crate::complex::ChainVector;
use crate::error::{Error, Result};

/// A fiber-aligned refinement of a quotient complex.
#[derive(Debug, Clone)]
pub struct FiberSubdivision {
    pub complex: PeriodicComplex,
    /// Image of each original cell as a chain of the refined complex.
    pub carrier: Vec<ChainVector>,
}

impl FiberSubdivision {
    pub fn carry(&self, z: &ChainVector) -> ChainVector {
        let f = self.complex.field();
        let mut terms = Vec::new();
        for &(c, a) in z.terms() {
            terms.extend(
                self.carrier[c]
                    .terms()
                    .iter()
                    .map(|&(s, x)| (s, f.mul(a, x))),
            );
        }
        ChainVector::from_terms(f, z.degree(), terms)
    }

    pub fn is_identity(&self) -> bool {
        self.carrier
            .iter()
            .enumerate()
            .all(|(i, z)| z.terms() == [(i, 1)])
    }
}

#[derive(Debug, Clone)]
struct Piece {
    parent: usize,
    verts: Vec<(usize, Vec<i64>, Vec<Rational>)>,
}

fn lifted_x(coords: &[Vec<Rational>], v: usize, shift: &[i64], axis: usize) -> Rational {
    coords[v][axis] + Rational::from_integer(shift[axis])
}

/// Smallest translate of `a` strictly inside `(lo, hi)`.
fn crossing_of(a: Rational, lo: Rational, hi: Rational) -> Option<Rational> {
    Some(a + (lo - a).floor() + Rational::one()).filter(|&c| c < hi)
}

/// Smallest translate of a base angle strictly inside `(lo, hi)`.
fn crossing(b: &BaseCellulation, lo: Rational, hi: Rational) -> Option<Rational> {
    b.angles
        .iter()
        .filter_map(|&a| crossing_of(a, lo, hi))
        .min()
}

/// True when no edge of `g` passes strictly over a base vertex.
pub fn is_fiber_aligned(g: &PeriodicComplex, b: &BaseCellulation) -> bool {
    g.complex().cells_of_dim(1).iter().all(|&e| {
        let (lo, hi) = g.projected_interval(e, b.axis);
        crossing(b, lo, hi).is_none()
    })
}

fn determinant(mut m: Vec<Vec<Rational>>) -> Rational {
    let n = m.len();
    let mut det = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !m[r][c].is_zero()) else {
            return Rational::zero();
        };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        det *= m[c][c];
        for r in c + 1..n {
            let factor = m[r][c] / m[c][c];
            if factor.is_zero() {
                continue;
            }
            for j in c..n {
                let v = m[c][j];
                m[r][j] -= factor * v;
            }
        }
    }
    det
}

/// Splits edges at every base vertex they pass over, until each closed cell
/// projects into a single closed base edge. Returns the refined complex and
/// the carrier sending each original cell to the signed sum of its pieces.
pub fn subdivide_for_fibers(g: &PeriodicComplex, b: &BaseCellulation) -> Result<FiberSubdivision> {
    let axis = b.axis;
    let c = g.complex();
    let mut coords: Vec<Vec<Rational>> = g.coords().to_vec();
    let mut pieces: Vec<Piece> = (0..c.len())
        .map(|id| {
            let k = c.cell_dim(id) + 1;
            let verts = g
                .lifted_simplex(id)
                .into_iter()
                .enumerate()
                .map(|(j, (v, s))| {
                    let mut lambda = vec![Rational::zero(); k];
                    lambda[j] = Rational::one();
                    (v, s, lambda)
                })
                .collect();
            Piece { parent: id, verts }
        })
        .collect();

    // One angle at a time: once no edge crosses a translate of `angle`, later
    // splits stay on one side of it, so each inner loop strictly reduces the
    // number of crossing edges.
    for &angle in &b.angles {
        loop {
            let mut found = None;
            'search: for p in &pieces {
                for j in 0..p.verts.len() {
                    for l in j + 1..p.verts.len() {
                        let xj = lifted_x(&coords, p.verts[j].0, &p.verts[j].1, axis);
                        let xl = lifted_x(&coords, p.verts[l].0, &p.verts[l].1, axis);
                        let (lo, hi) = if xj < xl { (xj, xl) } else { (xl, xj) };
                        if let Some(cut) = crossing_of(angle, lo, hi) {
                            found = Some((p.verts[j].clone(), p.verts[l].clone(), xj, xl, cut));
                            break 'search;
                        }
                    }
                }
            }
            let Some(((vj, sj, _), (vl, sl, _), xj, xl, cut)) = found else {
                break;
            };
            let t = (cut - xj) / (xl - xj);
            let mut point = Vec::with_capacity(coords[vj].len());
            let mut base_shift = vec![0i64; g.d()];
            for i in 0..coords[vj].len() {
                let (mut pj, mut pl) = (coords[vj][i], coords[vl][i]);
                if i < g.d() {
                    pj += Rational::from_integer(sj[i]);
                    pl += Rational::from_integer(sl[i]);
                }
                let mut q = pj + t * (pl - pj);
                if i < g.d() {
                    let fl = q.floor();
                    base_shift[i] = fl.to_integer();
                    q -= fl;
                }
                point.push(q);
            }
            let m = coords.len();
            coords.push(point);
            let rel: Vec<i64> = sl.iter().zip(&sj).map(|(a, b)| a - b).collect();

            let mut next = Vec::with_capacity(pieces.len() + 8);
            for p in pieces {
                let a = p.verts.iter().position(|x| x.0 == vj);
                let bpos = p.verts.iter().position(|x| x.0 == vl);
                let hit = match (a, bpos) {
                    (Some(a), Some(bp)) => {
                        let d: Vec<i64> = p.verts[bp]
                            .1
                            .iter()
                            .zip(&p.verts[a].1)
                            .map(|(x, y)| x - y)
                            .collect();
                        (d == rel).then_some((a, bp))
                    }
                    _ => None,
                };
                let Some((a, bp)) = hit else {
                    next.push(p);
                    continue;
                };
                let delta: Vec<i64> = p.verts[a].1.iter().zip(&sj).map(|(x, y)| x - y).collect();
                let shift: Vec<i64> = base_shift.iter().zip(&delta).map(|(x, y)| x + y).collect();
                let lambda: Vec<Rational> = p.verts[a]
                    .2
                    .iter()
                    .zip(&p.verts[bp].2)
                    .map(|(&la, &lb)| (Rational::one() - t) * la + t * lb)
                    .collect();
                let mut p1 = p.clone();
                p1.verts[bp] = (m, shift.clone(), lambda.clone());
                let mut p2 = p;
                p2.verts[a] = (m, shift, lambda);
                next.push(p1);
                next.push(p2);
            }
            pieces = next;
        }
    }
    finish(g, coords, pieces)
}

fn finish(
    g: &PeriodicComplex,
    coords: Vec<Vec<Rational>>,
    pieces: Vec<Piece>,
) -> Result<FiberSubdivision> {
    let f = g.field();
    let simplices: Vec<LiftedSimplex> = pieces
        .iter()
        .map(|p| p.verts.iter().map(|(v, s, _)| (*v, s.clone())).collect())
        .collect();
    let complex =
        PeriodicComplex::from_lifted_simplices(f, g.d(), coords, &simplices, g.origin().clone())?;
    let mut index: BTreeMap<LiftedSimplex, usize> = BTreeMap::new();
    for id in 0..complex.complex().len() {
        index.insert(normalize(&complex.lifted_simplex(id)), id);
    }
    let mut terms: Vec<Vec<(usize, u32)>> = vec![Vec::new(); g.complex().len()];
    for p in &pieces {
        let simplex: LiftedSimplex = p.verts.iter().map(|(v, s, _)| (*v, s.clone())).collect();
        let id = index[&normalize(&simplex)];
        let stored = complex.complex().simplex_vertices(id)?;
        let perm: Vec<usize> = simplex
            .iter()
            .map(|(v, _)| stored.iter().position(|x| x == v).expect("vertex"))
            .collect();
        let det = determinant(p.verts.iter().map(|x| x.2.clone()).collect());
        if det.is_zero() {
            return Err(Error::Internal(
                "degenerate piece in fiber subdivision".into(),
            ));
        }
        let negative = det.is_negative() != permutation_parity(&perm);
        terms[p.parent].push((id, if negative { f.neg(1) } else { 1 }));
    }
    let carrier = terms
        .into_iter()
        .enumerate()
        .map(|(id, t)| ChainVector::from_terms(f, g.complex().cell_dim(id), t))
        .collect();
    Ok(FiberSubdivision { complex, carrier })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::homology;
    use crate::exactla::Field;
    use crate::periodic::Origin;

    fn r(a: i64, b: i64) -> Rational {
        Rational::new(a, b)
    }

    #[test]
    fn aligned_complex_is_untouched() {
        let coords = vec![vec![r(0, 1)], vec![r(1, 2)]];
        let g = PeriodicComplex::from_simplices_nearest(Field::gf2(), 1, coords, &[vec![0, 1]])
            .unwrap_err();
        assert!(matches!(g, Error::InvalidPeriodic(_)));
        let coords = vec![vec![r(0, 1)], vec![r(1, 3)], vec![r(2, 3)]];
        let g = PeriodicComplex::from_simplices_nearest(
            Field::gf2(),
            1,
            coords,
            &[vec![0, 1], vec![1, 2], vec![2, 0]],
        )
        .unwrap();
        let b = crate::periodic::base_cellulation(&g, 0).unwrap();
        assert!(is_fiber_aligned(&g, &b));
        let s = subdivide_for_fibers(&g, &b).unwrap();
        assert!(s.is_identity());
    }

    #[test]
    fn edge_over_a_base_vertex_is_split() {
        let f = Field::new(3).unwrap();
        let coords = vec![
            vec![r(0, 1), r(0, 1)],
            vec![r(1, 2), r(1, 1)],
            vec![r(1, 4), r(5, 1)],
        ];
        let g = PeriodicComplex::from_lifted_simplices(
            f,
            1,
            coords,
            &[
                vec![(0, vec![0]), (1, vec![0])],
                vec![(1, vec![0]), (0, vec![1])],
            ],
            Origin::Simplicial,
        )
        .unwrap();
        let b = crate::periodic::base_cellulation(&g, 0).unwrap();
        assert!(!is_fiber_aligned(&g, &b));
        let s = subdivide_for_fibers(&g, &b).unwrap();
        assert!(is_fiber_aligned(&s.complex, &b));
        let edge = g.find_cell(&vec![(0, vec![0]), (1, vec![0])]).unwrap().0;
        assert_eq!(s.carrier[edge].terms().len(), 2);
        for id in 0..g.complex().len() {
            let z = ChainVector::from_terms(f, g.complex().cell_dim(id), vec![(id, 1)]);
            if g.complex().cell_dim(id) > 0 {
                assert_eq!(
                    s.complex.complex().boundary(&s.carry(&z)),
                    s.carry(&g.complex().boundary(&z))
                );
            }
        }
        assert_eq!(homology(s.complex.complex(), 1).unwrap().rank(), 1);
    }

    #[test]
    fn triangles_are_split_with_consistent_signs() {
        let f = Field::new(5).unwrap();
        let coords = vec![
            vec![r(0, 1), r(0, 1)],
            vec![r(1, 3), r(1, 1)],
            vec![r(2, 3), r(0, 1)],
        ];
        let g = PeriodicComplex::from_simplices_nearest(f, 1, coords, &[vec![0, 1, 2]]).unwrap();
        let b = BaseCellulation::new(0, vec![r(0, 1), r(1, 4), r(1, 2), r(3, 4)]).unwrap();
        let s = subdivide_for_fibers(&g, &b).unwrap();
        assert!(is_fiber_aligned(&s.complex, &b));
        for id in 0..g.complex().len() {
            let z = ChainVector::from_terms(f, g.complex().cell_dim(id), vec![(id, 1)]);
            if g.complex().cell_dim(id) > 0 {
                assert_eq!(
                    s.complex.complex().boundary(&s.carry(&z)),
                    s.carry(&g.complex().boundary(&z))
                );
            }
        }
    }
}
