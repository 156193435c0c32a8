//! Exact field arithmetic behind the idempotent and certificate calculus.
//!
//! A [`Field`] is a handle object (the rationals, or a finite field with its
//! tables) whose elements are plain values; matrices carry their field
//! handle. This keeps finite-field elements as cheap indices while the
//! rationals stay arbitrary-precision.

use crate::abelian::BigRational;
use crate::error::{Error, Result};
use crate::kfinite::FiniteField;
use num_traits::{One, Zero};

pub trait Field: Clone {
    type Elem: Clone + PartialEq + std::fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// None iff a = 0.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn render(&self, a: &Self::Elem) -> String;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }
}

/// The field Q with arbitrary-precision elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn one(&self) -> BigRational {
        BigRational::one()
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }

    fn render(&self, a: &BigRational) -> String {
        a.to_string()
    }
}

impl Field for FiniteField {
    type Elem = u8;

    fn zero(&self) -> u8 {
        0
    }

    fn one(&self) -> u8 {
        self.one_index()
    }

    fn add(&self, a: &u8, b: &u8) -> u8 {
        self.add_elems(*a, *b)
    }

    fn neg(&self, a: &u8) -> u8 {
        self.neg_elem(*a)
    }

    fn mul(&self, a: &u8, b: &u8) -> u8 {
        self.mul_elems(*a, *b)
    }

    fn inv(&self, a: &u8) -> Option<u8> {
        self.inv_elem(*a)
    }

    fn render(&self, a: &u8) -> String {
        self.render_elem(*a)
    }
}

/// Dense matrix over an exact field, row-major.
#[derive(Clone)]
pub struct FieldMatrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    entries: Vec<F::Elem>,
}

impl<F: Field> FieldMatrix<F> {
    pub fn new(field: F, rows: usize, cols: usize, entries: Vec<F::Elem>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::input(format!(
                "matrix needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        Ok(FieldMatrix { field, rows, cols, entries })
    }

    pub fn zero(field: F, rows: usize, cols: usize) -> Self {
        let z = field.zero();
        FieldMatrix { field, rows, cols, entries: vec![z; rows * cols] }
    }

    pub fn identity(field: F, n: usize) -> Self {
        let mut m = Self::zero(field, n, n);
        for i in 0..n {
            m[(i, i)] = m.field.one();
        }
        m
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn mul(&self, other: &FieldMatrix<F>) -> FieldMatrix<F> {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = FieldMatrix::zero(self.field.clone(), self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if self.field.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let t = self.field.mul(a, &other[(k, j)]);
                    out[(i, j)] = self.field.add(&out[(i, j)], &t);
                }
            }
        }
        out
    }

    pub fn eq_entries(&self, other: &FieldMatrix<F>) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.entries == other.entries
    }

    /// Rank by Gaussian elimination (exact).
    pub fn rank(&self) -> usize {
        let f = &self.field;
        let mut a = self.entries.clone();
        let (r, c) = (self.rows, self.cols);
        let at = |a: &Vec<F::Elem>, i: usize, j: usize| a[i * c + j].clone();
        let mut rank = 0;
        let mut row = 0;
        for col in 0..c {
            if row >= r {
                break;
            }
            // find a pivot in this column
            let Some(p) = (row..r).find(|&i| !f.is_zero(&at(&a, i, col))) else {
                continue;
            };
            if p != row {
                for j in 0..c {
                    a.swap(row * c + j, p * c + j);
                }
            }
            let inv = f.inv(&at(&a, row, col)).expect("pivot nonzero");
            for i in (row + 1)..r {
                let factor = f.mul(&at(&a, i, col), &inv);
                if f.is_zero(&factor) {
                    continue;
                }
                for j in col..c {
                    let t = f.mul(&factor, &at(&a, row, j));
                    a[i * c + j] = f.sub(&at(&a, i, j), &t);
                }
            }
            rank += 1;
            row += 1;
        }
        rank
    }

    /// Determinant by fraction-free-ish Gaussian elimination (exact, with
    /// division by pivots).
    pub fn det(&self) -> F::Elem {
        assert!(self.is_square());
        let f = self.field.clone();
        let n = self.rows;
        let mut a = self.clone();
        let mut det = f.one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&i| !f.is_zero(&a[(i, col)])) else {
                return f.zero();
            };
            if p != col {
                for j in 0..n {
                    let tmp = a[(col, j)].clone();
                    a[(col, j)] = a[(p, j)].clone();
                    a[(p, j)] = tmp;
                }
                det = f.neg(&det);
            }
            let pivot = a[(col, col)].clone();
            det = f.mul(&det, &pivot);
            let inv = f.inv(&pivot).expect("pivot nonzero");
            for i in (col + 1)..n {
                let factor = f.mul(&a[(i, col)], &inv);
                if f.is_zero(&factor) {
                    continue;
                }
                for j in col..n {
                    let t = f.mul(&factor, &a[(col, j)]);
                    a[(i, j)] = f.sub(&a[(i, j)], &t);
                }
            }
        }
        det
    }

    /// Inverse, or None when singular.
    pub fn inverse(&self) -> Option<FieldMatrix<F>> {
        assert!(self.is_square());
        let f = self.field.clone();
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = FieldMatrix::identity(f.clone(), n);
        for col in 0..n {
            let p = (col..n).find(|&i| !f.is_zero(&a[(i, col)]))?;
            if p != col {
                for j in 0..n {
                    let tmp = a[(col, j)].clone();
                    a[(col, j)] = a[(p, j)].clone();
                    a[(p, j)] = tmp;
                    let tmp = inv[(col, j)].clone();
                    inv[(col, j)] = inv[(p, j)].clone();
                    inv[(p, j)] = tmp;
                }
            }
            let pv = f.inv(&a[(col, col)]).expect("pivot nonzero");
            for j in 0..n {
                a[(col, j)] = f.mul(&a[(col, j)], &pv);
                inv[(col, j)] = f.mul(&inv[(col, j)], &pv);
            }
            for i in 0..n {
                if i == col || f.is_zero(&a[(i, col)]) {
                    continue;
                }
                let factor = a[(i, col)].clone();
                for j in 0..n {
                    let t = f.mul(&factor, &a[(col, j)]);
                    a[(i, j)] = f.sub(&a[(i, j)], &t);
                    let t = f.mul(&factor, &inv[(col, j)]);
                    inv[(i, j)] = f.sub(&inv[(i, j)], &t);
                }
            }
        }
        Some(inv)
    }

    /// Block-diagonal direct sum.
    pub fn direct_sum(&self, other: &FieldMatrix<F>) -> FieldMatrix<F> {
        let mut out = FieldMatrix::zero(
            self.field.clone(),
            self.rows + other.rows,
            self.cols + other.cols,
        );
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = self[(i, j)].clone();
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                out[(self.rows + i, self.cols + j)] = other[(i, j)].clone();
            }
        }
        out
    }

    pub fn render_rows(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.field.render(&self[(i, j)])).collect())
            .collect()
    }
}

impl<F: Field> std::ops::Index<(usize, usize)> for FieldMatrix<F> {
    type Output = F::Elem;
    fn index(&self, (i, j): (usize, usize)) -> &F::Elem {
        &self.entries[i * self.cols + j]
    }
}

impl<F: Field> std::ops::IndexMut<(usize, usize)> for FieldMatrix<F> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut F::Elem {
        &mut self.entries[i * self.cols + j]
    }
}

impl<F: Field> std::fmt::Debug for FieldMatrix<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "FieldMatrix {}x{}", self.rows, self.cols)?;
        for row in self.render_rows() {
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}
