//! Square matrices over the integers and over `Z[x]`.
//!
//! The determinant uses fraction-free (Bareiss) elimination, so every
//! intermediate entry stays in `Z[x]` and each pivot division is exact.
//! The adjugate is the transposed cofactor matrix, one minor determinant
//! per entry.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::IntPoly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    n: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            entries: vec![BigInt::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.entries[i * n + i] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from rows; each row must have `rows.len()` entries.
    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    actual: row.len(),
                });
            }
            entries.extend(row);
        }
        Ok(Self { n, entries })
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.entries[i * self.n + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    /// Matrix-vector product over the integers.
    pub fn mul_vec(&self, v: &[BigInt]) -> Result<Vec<BigInt>> {
        if v.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                actual: v.len(),
            });
        }
        Ok((0..self.n)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    n: usize,
    entries: Vec<IntPoly>,
}

impl PolyMatrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            entries: vec![IntPoly::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, &IntPoly::one())
    }

    /// `p * I`.
    pub fn scalar(n: usize, p: &IntPoly) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.entries[i * n + i] = p.clone();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<IntPoly>>) -> Result<Self> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    actual: row.len(),
                });
            }
            entries.extend(row);
        }
        Ok(Self { n, entries })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &IntPoly {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: IntPoly) {
        self.entries[i * self.n + j] = p;
    }

    pub fn row(&self, i: usize) -> &[IntPoly] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[IntPoly]> {
        (0..self.n).map(move |i| self.row(i))
    }

    pub fn entries(&self) -> &[IntPoly] {
        &self.entries
    }

    /// Matrix product. Panics if the dimensions differ.
    pub fn mul(&self, rhs: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.n, rhs.n, "matrix dimensions differ");
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = IntPoly::zero();
                for k in 0..n {
                    let a = self.get(i, k);
                    let b = rhs.get(k, j);
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    /// The matrix with row `row` and column `col` deleted.
    pub fn minor(&self, row: usize, col: usize) -> PolyMatrix {
        let n = self.n;
        let mut entries = Vec::with_capacity((n - 1) * (n - 1));
        for i in (0..n).filter(|&i| i != row) {
            for j in (0..n).filter(|&j| j != col) {
                entries.push(self.get(i, j).clone());
            }
        }
        PolyMatrix { n: n - 1, entries }
    }
}

/// The characteristic matrix `xI - A`.
pub fn char_matrix(a: &IntMatrix) -> PolyMatrix {
    let n = a.dim();
    let mut m = PolyMatrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            let c = IntPoly::constant(-a.get(i, j));
            let entry = if i == j { &IntPoly::x() + &c } else { c };
            m.set(i, j, entry);
        }
    }
    m
}

/// Determinant by Bareiss elimination. The empty matrix has determinant 1.
///
/// A zero pivot is swapped with the first lower row that has a nonzero
/// entry in the pivot column; if there is none the determinant is 0.
pub fn determinant(m: &PolyMatrix) -> IntPoly {
    let n = m.dim();
    if n == 0 {
        return IntPoly::one();
    }
    let mut rows: Vec<Vec<IntPoly>> = m.rows().map(<[IntPoly]>::to_vec).collect();
    let mut negate = false;
    let mut prev = IntPoly::one();

    for k in 0..n - 1 {
        if rows[k][k].is_zero() {
            match (k + 1..n).find(|&r| !rows[r][k].is_zero()) {
                Some(r) => {
                    rows.swap(k, r);
                    negate = !negate;
                }
                None => return IntPoly::zero(),
            }
        }
        let (upper, lower) = rows.split_at_mut(k + 1);
        let pivot_row = &upper[k];
        let pivot = &pivot_row[k];
        for row in lower.iter_mut() {
            let factor = row[k].clone();
            for j in k + 1..n {
                let num = &(&row[j] * pivot) - &(&factor * &pivot_row[j]);
                row[j] = num.div_exact(&prev).unwrap_or_else(|| {
                    panic!("internal invariant failed: Bareiss division by {prev} is not exact")
                });
            }
            row[k] = IntPoly::zero();
        }
        prev = rows[k][k].clone();
    }

    let det = rows[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

/// Classical adjugate: entry `(i, j)` is `(-1)^(i+j)` times the determinant
/// of `m` with row `j` and column `i` removed.
pub fn adjugate(m: &PolyMatrix) -> PolyMatrix {
    let n = m.dim();
    if n == 0 {
        return PolyMatrix::zeros(0);
    }
    if n == 1 {
        return PolyMatrix::identity(1);
    }
    let mut adj = PolyMatrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            let d = determinant(&m.minor(j, i));
            adj.set(i, j, if (i + j) % 2 == 0 { d } else { -d });
        }
    }
    adj
}

/// Evaluates every entry at `t` and multiplies by the integer vector `v`.
pub fn apply_vector(m: &PolyMatrix, v: &[BigInt], t: &BigInt) -> Result<Vec<BigInt>> {
    let n = m.dim();
    if v.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            actual: v.len(),
        });
    }
    Ok(m
        .rows()
        .map(|row| row.iter().zip(v).map(|(p, vk)| p.eval_at(t) * vk).sum())
        .collect())
}

/// Combines each row into a single polynomial, `sum_k m[i][k] * v[k]`.
pub fn row_combine(m: &PolyMatrix, v: &[BigInt]) -> Result<Vec<IntPoly>> {
    let n = m.dim();
    if v.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            actual: v.len(),
        });
    }
    Ok(m
        .rows()
        .map(|row| {
            row.iter()
                .zip(v)
                .fold(IntPoly::zero(), |acc, (p, vk)| &acc + &p.scale(vk))
        })
        .collect())
}
