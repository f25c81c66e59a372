//! Dense matrices over F_{p^k} with deterministic Gaussian elimination.

use std::sync::Arc;

use crate::gf::{FieldCtx, FieldElement};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FqMatrix {
    field: Arc<FieldCtx>,
    rows: usize,
    cols: usize,
    entries: Vec<FieldElement>,
}

impl FqMatrix {
    pub fn zeros(field: &Arc<FieldCtx>, rows: usize, cols: usize) -> Self {
        FqMatrix {
            field: field.clone(),
            rows,
            cols,
            entries: vec![FieldElement::ZERO; rows * cols],
        }
    }

    pub fn identity(field: &Arc<FieldCtx>, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, FieldElement::ONE);
        }
        m
    }

    pub fn from_rows(field: &Arc<FieldCtx>, rows: Vec<Vec<FieldElement>>) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        FqMatrix {
            field: field.clone(),
            rows: rows.len(),
            cols,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn field(&self) -> &Arc<FieldCtx> {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> FieldElement {
        self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: FieldElement) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[FieldElement] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn mul_vec(&self, v: &[FieldElement]) -> Vec<FieldElement> {
        assert_eq!(v.len(), self.cols);
        let f = &self.field;
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(FieldElement::ZERO, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
            })
            .collect()
    }

    /// Reduces to reduced row-echelon form in place and returns the pivot columns.
    ///
    /// Pivots are taken leftmost-first, choosing the first nonzero row at or below
    /// the current rank, so the result depends only on the input.
    pub fn rref(&mut self) -> Vec<usize> {
        let f = self.field.clone();
        let mut pivots = Vec::new();
        let mut rank = 0;
        for c in 0..self.cols {
            if rank == self.rows {
                break;
            }
            let Some(pr) = (rank..self.rows).find(|&r| !self.get(r, c).is_zero()) else {
                continue;
            };
            if pr != rank {
                for j in 0..self.cols {
                    self.entries.swap(pr * self.cols + j, rank * self.cols + j);
                }
            }
            let inv = f.inv(self.get(rank, c)).expect("nonzero pivot");
            for j in c..self.cols {
                let v = f.mul(self.get(rank, j), inv);
                self.set(rank, j, v);
            }
            for r in 0..self.rows {
                if r == rank {
                    continue;
                }
                let factor = self.get(r, c);
                if factor.is_zero() {
                    continue;
                }
                for j in c..self.cols {
                    let v = f.sub(self.get(r, j), f.mul(factor, self.get(rank, j)));
                    self.set(r, j, v);
                }
            }
            pivots.push(c);
            rank += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    pub fn nullity(&self) -> usize {
        self.cols - self.rank()
    }

    /// Basis of `{h : M h = 0}`, one vector per free column in ascending order.
    pub fn nullspace(&self) -> Vec<Vec<FieldElement>> {
        let f = self.field.clone();
        let mut m = self.clone();
        let pivots = m.rref();
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![FieldElement::ZERO; self.cols];
            v[free] = FieldElement::ONE;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(m.get(r, free));
            }
            basis.push(v);
        }
        basis
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_kernels() {
        let f = FieldCtx::new(2, 1).unwrap();
        assert_eq!(FqMatrix::zeros(&f, 2, 2).nullspace().len(), 2);
        assert!(FqMatrix::identity(&f, 3).nullspace().is_empty());
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let f = FieldCtx::new(3, 2).unwrap();
        let e = |c| FieldElement::from_code(c);
        let m = FqMatrix::from_rows(
            &f,
            vec![
                vec![e(1), e(4), e(0), e(7)],
                vec![e(2), e(8), e(0), e(5)],
                vec![e(3), e(3), e(3), e(3)],
            ],
        );
        let basis = m.nullspace();
        assert_eq!(basis.len() + m.rank(), m.cols());
        for v in &basis {
            assert!(m.mul_vec(v).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn rref_is_deterministic_and_idempotent() {
        let f = FieldCtx::new(5, 1).unwrap();
        let e = |c| FieldElement::from_code(c);
        let mut m = FqMatrix::from_rows(&f, vec![vec![e(0), e(2), e(4)], vec![e(3), e(1), e(0)]]);
        let p1 = m.rref();
        let snapshot = m.clone();
        let p2 = m.rref();
        assert_eq!(p1, p2);
        assert_eq!(m, snapshot);
        assert_eq!(p1, vec![0, 1]);
    }
}
