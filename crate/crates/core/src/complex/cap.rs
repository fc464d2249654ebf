use super::{CellComplex, ChainVector};
use crate::error::{Error, Result};

fn face_with_vertices(c: &CellComplex, id: usize, target: &[usize]) -> Result<usize> {
    for face in c.faces(id) {
        if c.simplex_vertices(face)? == target {
            return Ok(face);
        }
    }
    Err(Error::NotSimplicial(id))
}

/// Face of simplex `id` spanned by the vertices at positions `from..=to`.
fn sub_simplex(c: &CellComplex, id: usize, from: usize, to: usize) -> Result<usize> {
    let mut cur = id;
    let mut vs = c.simplex_vertices(id)?.to_vec();
    let (mut lo, mut hi) = (0, vs.len() - 1);
    while hi > to {
        vs.pop();
        cur = face_with_vertices(c, cur, &vs)?;
        hi -= 1;
    }
    while lo < from {
        vs.remove(0);
        cur = face_with_vertices(c, cur, &vs)?;
        lo += 1;
    }
    Ok(cur)
}

/// Value of a cochain on a chain of the same degree.
pub fn evaluate(phi: &ChainVector, z: &ChainVector) -> u32 {
    let f = z.field();
    z.terms()
        .iter()
        .fold(0, |acc, &(c, a)| f.add(acc, f.mul(a, phi.coefficient(c))))
}

/// Coboundary of a cochain: `(d phi)(t) = sum_faces [t:s] phi(s)`.
pub fn coboundary(c: &CellComplex, phi: &ChainVector) -> ChainVector {
    let f = c.field();
    let mut terms = Vec::new();
    for &(s, a) in phi.terms() {
        for &t in c.cofaces(s) {
            terms.push((t, f.mul(a, c.incidence(t, s))));
        }
    }
    ChainVector::from_terms(f, phi.degree() + 1, terms)
}

/// Cap product on an ordered simplicial complex. A simplex `[v_0 .. v_n]`
/// capped with a `p`-cochain gives `phi([v_0 .. v_p]) [v_p .. v_n]`.
pub fn cap_product(c: &CellComplex, z: &ChainVector, phi: &ChainVector) -> Result<ChainVector> {
    let f = c.field();
    let (n, p) = (z.degree(), phi.degree());
    if p > n {
        return Err(Error::DegreeMismatch {
            expected: p,
            got: n,
        });
    }
    let mut terms = Vec::new();
    for &(s, a) in z.terms() {
        if c.cell_dim(s) != n {
            return Err(Error::DegreeMismatch {
                expected: n,
                got: c.cell_dim(s),
            });
        }
        let front = sub_simplex(c, s, 0, p)?;
        let value = phi.coefficient(front);
        if value == 0 {
            continue;
        }
        let back = sub_simplex(c, s, p, n)?;
        terms.push((back, f.mul(a, value)));
    }
    Ok(ChainVector::from_terms(f, n - p, terms))
}
