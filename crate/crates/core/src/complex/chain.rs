use crate::exactla::Field;

/// A chain (or cochain) of one degree, stored sparsely as `(cell id, coefficient)`
/// pairs sorted by cell id with zero coefficients removed.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ChainVector {
    field: Field,
    degree: usize,
    terms: Vec<(usize, u32)>,
}

impl ChainVector {
    pub fn zero(field: Field, degree: usize) -> Self {
        ChainVector {
            field,
            degree,
            terms: Vec::new(),
        }
    }

    /// Sums repeated cells and drops zeros.
    pub fn from_terms(field: Field, degree: usize, mut terms: Vec<(usize, u32)>) -> Self {
        terms.sort_unstable_by_key(|t| t.0);
        let mut out: Vec<(usize, u32)> = Vec::with_capacity(terms.len());
        for (c, a) in terms {
            let a = a % field.p();
            match out.last_mut() {
                Some(last) if last.0 == c => last.1 = field.add(last.1, a),
                _ => out.push((c, a)),
            }
        }
        out.retain(|t| t.1 != 0);
        ChainVector {
            field,
            degree,
            terms: out,
        }
    }

    /// Chain with coefficients `coeffs[i]` on `cells[i]`.
    pub fn from_dense(field: Field, degree: usize, cells: &[usize], coeffs: &[u32]) -> Self {
        let terms = cells.iter().copied().zip(coeffs.iter().copied()).collect();
        Self::from_terms(field, degree, terms)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> &[(usize, u32)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, cell: usize) -> u32 {
        self.terms
            .binary_search_by_key(&cell, |t| t.0)
            .map_or(0, |i| self.terms[i].1)
    }

    /// Coefficients on `cells`, in that order; other cells are dropped.
    pub fn dense_on(&self, cells: &[usize]) -> Vec<u32> {
        cells.iter().map(|&c| self.coefficient(c)).collect()
    }

    pub fn add(&self, other: &ChainVector) -> ChainVector {
        assert_eq!(
            self.degree, other.degree,
            "adding chains of different degree"
        );
        let mut terms = self.terms.clone();
        terms.extend_from_slice(&other.terms);
        Self::from_terms(self.field, self.degree, terms)
    }

    pub fn scale(&self, a: u32) -> ChainVector {
        let f = self.field;
        let terms = self.terms.iter().map(|&(c, x)| (c, f.mul(a, x))).collect();
        Self::from_terms(f, self.degree, terms)
    }

    pub fn sub(&self, other: &ChainVector) -> ChainVector {
        self.add(&other.scale(self.field.neg(1)))
    }

    /// Keeps only the terms on cells where `keep` holds.
    pub fn restrict(&self, keep: impl Fn(usize) -> bool) -> ChainVector {
        ChainVector {
            field: self.field,
            degree: self.degree,
            terms: self
                .terms
                .iter()
                .copied()
                .filter(|&(c, _)| keep(c))
                .collect(),
        }
    }

    /// Renames cells through `map`.
    pub fn map_cells(&self, map: impl Fn(usize) -> usize) -> ChainVector {
        let terms = self.terms.iter().map(|&(c, a)| (map(c), a)).collect();
        Self::from_terms(self.field, self.degree, terms)
    }

    /// Linear combination `sum coeffs[i] * chains[i]`.
    pub fn combine(
        field: Field,
        degree: usize,
        chains: &[ChainVector],
        coeffs: &[u32],
    ) -> ChainVector {
        let mut terms = Vec::new();
        for (z, &a) in chains.iter().zip(coeffs) {
            if a == 0 {
                continue;
            }
            terms.extend(z.terms.iter().map(|&(c, x)| (c, field.mul(a, x))));
        }
        Self::from_terms(field, degree, terms)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn terms_are_normalized() {
        let f = Field::new(3).unwrap();
        let z = ChainVector::from_terms(f, 1, vec![(4, 1), (2, 2), (4, 2), (1, 0)]);
        assert_eq!(z.terms(), &[(2, 2)]);
        assert_eq!(z.coefficient(4), 0);
        assert!(z.sub(&z).is_zero());
    }
}
