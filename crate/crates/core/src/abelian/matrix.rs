use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Dense integer matrix, row-major, arbitrary-precision entries.
///
/// Empty matrices (0 rows or 0 columns) are legal everywhere.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count must be rows*cols");
        IntMatrix { rows, cols, entries }
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Self {
        Self::new(rows, cols, entries.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn diagonal(diag: &[BigInt]) -> Self {
        let n = diag.len();
        let mut m = Self::zero(n, n);
        for (i, d) in diag.iter().enumerate() {
            m[(i, i)] = d.clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Column `j` as a vector.
    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in matrix product");
        let mut out = IntMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let t = a * &other[(k, j)];
                    out[(i, j)] += t;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| &self[(i, j)] * &v[j]).sum())
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row_i += lambda * row_j
    fn add_row_multiple(&mut self, i: usize, j: usize, lambda: &BigInt) {
        for c in 0..self.cols {
            let t = lambda * &self[(j, c)];
            self[(i, c)] += t;
        }
    }

    /// col_i += lambda * col_j
    fn add_col_multiple(&mut self, i: usize, j: usize, lambda: &BigInt) {
        for r in 0..self.rows {
            let t = lambda * &self[(r, j)];
            self[(r, i)] += t;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for c in 0..self.cols {
            let v = -self[(i, c)].clone();
            self[(i, c)] = v;
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.entries[i * self.cols + j]
    }
}

impl std::fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "IntMatrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self[(i, j)].to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Result of `smith_normal_form`: `left * m * right` is diagonal with
/// diagonal `diag` (length min(rows, cols)), the diagonal is non-negative
/// and satisfies d₁ | d₂ | …, and both transforms are unimodular.
pub struct SmithNormalForm {
    pub diag: Vec<BigInt>,
    pub left: IntMatrix,
    pub right: IntMatrix,
}

/// Smith normal form over Z.
///
/// Pivot strategy: smallest nonzero absolute value in the active submatrix,
/// ties broken by lowest (row, col). Diagonal entries are normalized
/// non-negative by sign flips absorbed into the left transform.
pub fn smith_normal_form(m: &IntMatrix) -> SmithNormalForm {
    let mut a = m.clone();
    let mut left = IntMatrix::identity(m.rows());
    let mut right = IntMatrix::identity(m.cols());
    let n = m.rows().min(m.cols());

    for t in 0..n {
        loop {
            let Some((pi, pj)) = select_pivot(&a, t) else {
                break; // active submatrix is zero
            };
            if pi != t {
                a.swap_rows(t, pi);
                left.swap_rows(t, pi);
            }
            if pj != t {
                a.swap_cols(t, pj);
                right.swap_cols(t, pj);
            }
            // Euclid steps: shrink all other entries of row/col t modulo the pivot.
            let mut clean = true;
            for i in (t + 1)..a.rows() {
                if a[(i, t)].is_zero() {
                    continue;
                }
                let q = div_rounded(&a[(i, t)], &a[(t, t)]);
                if !q.is_zero() {
                    let lam = -q;
                    a.add_row_multiple(i, t, &lam);
                    left.add_row_multiple(i, t, &lam);
                }
                if !a[(i, t)].is_zero() {
                    clean = false;
                }
            }
            for j in (t + 1)..a.cols() {
                if a[(t, j)].is_zero() {
                    continue;
                }
                let q = div_rounded(&a[(t, j)], &a[(t, t)]);
                if !q.is_zero() {
                    let lam = -q;
                    a.add_col_multiple(j, t, &lam);
                    right.add_col_multiple(j, t, &lam);
                }
                if !a[(t, j)].is_zero() {
                    clean = false;
                }
            }
            if clean {
                // Pivot divides the rest of row/col exactly; they are zero now.
                // Ensure the pivot also divides the remaining submatrix so the
                // divisor chain can be fixed later with fewer passes: standard
                // trick, fold a non-divisible row into row t and loop again.
                let p = a[(t, t)].clone();
                let mut offender = None;
                'scan: for i in (t + 1)..a.rows() {
                    for j in (t + 1)..a.cols() {
                        if !(&a[(i, j)] % &p).is_zero() {
                            offender = Some(i);
                            break 'scan;
                        }
                    }
                }
                match offender {
                    Some(i) => {
                        let one = BigInt::one();
                        a.add_row_multiple(t, i, &one);
                        left.add_row_multiple(t, i, &one);
                    }
                    None => break,
                }
            }
        }
        if a[(t, t)].is_negative() {
            a.negate_row(t);
            left.negate_row(t);
        }
    }

    let diag: Vec<BigInt> = (0..n).map(|i| a[(i, i)].clone()).collect();
    debug_assert!(chain_holds(&diag));
    SmithNormalForm { diag, left, right }
}

fn chain_holds(d: &[BigInt]) -> bool {
    d.windows(2).all(|w| {
        if w[0].is_zero() {
            w[1].is_zero()
        } else {
            (&w[1] % &w[0]).is_zero()
        }
    })
}

/// Smallest nonzero |entry| in the active submatrix [t.., t..],
/// ties by lowest (row, col).
fn select_pivot(a: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(BigInt, usize, usize)> = None;
    for i in t..a.rows() {
        for j in t..a.cols() {
            let v = &a[(i, j)];
            if v.is_zero() {
                continue;
            }
            let abs = v.abs();
            match &best {
                Some((b, _, _)) if *b <= abs => {}
                _ => best = Some((abs, i, j)),
            }
        }
    }
    best.map(|(_, i, j)| (i, j))
}

/// Quotient rounded to nearest (ties toward the floor side), so the
/// remainder has absolute value at most |b|/2. Keeps entry growth small.
fn div_rounded(a: &BigInt, b: &BigInt) -> BigInt {
    let (mut q, r) = num_integer::Integer::div_mod_floor(a, b);
    // r has the sign of b and |r| < |b|; replacing r by r - b (and q by
    // q + 1) yields the representative with |r| <= |b|/2 in either sign case.
    let two_r = BigInt::from(2) * r.abs();
    if two_r > b.abs() {
        q += 1;
    }
    q
}
