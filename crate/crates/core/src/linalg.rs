//! Row reduction over a finite field given as a [`FiniteRing`].

use crate::ring::{Elem, FiniteRing};

/// A dense matrix over a finite field, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Elem>,
}

impl FieldMatrix {
    pub fn zeros(field: &FiniteRing, rows: usize, cols: usize) -> Self {
        FieldMatrix {
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<Elem>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        FieldMatrix {
            rows: rows.len(),
            cols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Elem {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Elem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// Stacks `other` below `self`.
    pub fn stack(&self, other: &FieldMatrix) -> FieldMatrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        FieldMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    /// Reduces in place to reduced row echelon form and returns the pivot
    /// columns.
    pub fn rref(&mut self, field: &FiniteRing) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| self.get(i, c) != field.zero()) else {
                continue;
            };
            self.swap_rows(r, p);
            let inv = field
                .inverse(self.get(r, c))
                .expect("nonzero field element");
            for j in 0..self.cols {
                let v = field.mul(inv, self.get(r, j));
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                let f = self.get(i, c);
                if i != r && f != field.zero() {
                    for j in 0..self.cols {
                        let v = field.sub(self.get(i, j), field.mul(f, self.get(r, j)));
                        self.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self, field: &FiniteRing) -> usize {
        self.clone().rref(field).len()
    }
}
