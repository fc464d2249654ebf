use super::{LiftedSimplex, Origin, PeriodicComplex, Rational};
use crate::error::{Error, Result};

/// The quotient by `k` times the unit translation along `axis`.
///
/// Copy `j` of vertex `v` gets id `j * V + v` and coordinate `(x + j) / k`
/// along `axis`.
pub fn k_fold_cover(g: &PeriodicComplex, axis: usize, k: usize) -> Result<PeriodicComplex> {
    if k == 0 {
        return Err(Error::Config("cover degree must be at least 1".into()));
    }
    if axis >= g.d() {
        return Err(Error::Config(format!(
            "direction {} exceeds periodicity {}",
            axis + 1,
            g.d()
        )));
    }
    let nv = g.vertex_count();
    let kk = k as i64;
    let mut coords = Vec::with_capacity(nv * k);
    for j in 0..k {
        for c in g.coords() {
            let mut c = c.clone();
            c[axis] = (c[axis] + Rational::from_integer(j as i64)) / Rational::from_integer(kk);
            coords.push(c);
        }
    }
    let c = g.complex();
    let mut simplices: Vec<LiftedSimplex> = Vec::with_capacity(c.len() * k);
    for id in 0..c.len() {
        let base = g.lifted_simplex(id);
        for j in 0..k {
            let s = base
                .iter()
                .map(|(v, shift)| {
                    let t = j as i64 + shift[axis];
                    let copy = t.rem_euclid(kk) as usize;
                    let mut sh = shift.clone();
                    sh[axis] = t.div_euclid(kk);
                    (copy * nv + v, sh)
                })
                .collect();
            simplices.push(s);
        }
    }
    let origin = match g.origin() {
        Origin::Simplicial => Origin::Simplicial,
        Origin::Cubical { extents } => {
            let mut e = extents.clone();
            e[axis] *= k;
            Origin::Cubical { extents: e }
        }
    };
    PeriodicComplex::from_lifted_simplices(g.field(), g.d(), coords, &simplices, origin)
}
