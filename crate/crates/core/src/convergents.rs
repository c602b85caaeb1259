//! Integer matrix machinery for the MSA: the inverse-branch matrices
//! β(k), their products β^(s) carrying the convergent columns B_i^(s),
//! the scalar column recursion, and exact reconstruction of x from
//! y = S^s x.
//!
//! Columns of β^(s) follow the cyclic layout
//! (B^(s-n+1), ..., B^(s-1), B^(s), B^(s-n)): position n-1 holds the
//! newest column B^(s) and position n the oldest B^(s-n). For s = 0 the
//! product is the identity, whose columns define the negative-label
//! vectors B^(-j) = e_{n-1-j} (j < n) and B^(-n) = e_n.

use crate::maps::PointB;
use crate::numfield::NumberFieldElement;
use crate::rational::Rational;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConvergentError {
    #[error("identity state has no convergent columns yet")]
    EmptyState,
    #[error("column {0} has a zero denominator entry B_0")]
    ZeroDenominator(usize),
    #[error("column index {index} out of range for order {order}")]
    ColumnOutOfRange { index: usize, order: usize },
    #[error("point dimension {point} does not match state dimension {state}")]
    DimensionMismatch { point: usize, state: usize },
    #[error("reconstruction denominator vanished")]
    ReconstructDenominatorZero,
    #[error("digit {0} must be >= 1")]
    BadDigit(BigInt),
}

/// Dense square matrix of arbitrary-precision integers, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    order: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zero(order: usize) -> Self {
        assert!(order >= 1);
        IntMatrix { order, entries: vec![BigInt::zero(); order * order] }
    }

    pub fn identity(order: usize) -> Self {
        let mut m = IntMatrix::zero(order);
        for i in 0..order {
            *m.get_mut(i, i) = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: &[&[i64]]) -> Self {
        let order = rows.len();
        assert!(rows.iter().all(|r| r.len() == order));
        let entries = rows.iter().flat_map(|r| r.iter().map(|&v| BigInt::from(v))).collect();
        IntMatrix { order, entries }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.order + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.entries[i * self.order + j] = v;
    }

    fn get_mut(&mut self, i: usize, j: usize) -> &mut BigInt {
        &mut self.entries[i * self.order + j]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.order).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn set_column(&mut self, j: usize, col: &[BigInt]) {
        for (i, v) in col.iter().enumerate().take(self.order) {
            *self.get_mut(i, j) = v.clone();
        }
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.order, other.order);
        let n = self.order;
        let mut out = IntMatrix::zero(n);
        for i in 0..n {
            for l in 0..n {
                let a = self.get(i, l);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let t = a * other.get(l, j);
                    *out.get_mut(i, j) += t;
                }
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> IntMatrix {
        let mut acc = IntMatrix::identity(self.order);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn trace(&self) -> BigInt {
        (0..self.order).map(|i| self.get(i, i).clone()).sum()
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> BigInt {
        let n = self.order;
        let mut m: Vec<Vec<BigInt>> = (0..n)
            .map(|i| (0..n).map(|j| self.get(i, j).clone()).collect())
            .collect();
        let mut sign = 1i32;
        let mut prev = BigInt::one();
        for k in 0..n.saturating_sub(1) {
            if m[k][k].is_zero() {
                match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                    Some(r) => {
                        m.swap(k, r);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                    m[i][j] = num / &prev; // exact in Bareiss elimination
                }
                m[i][k] = BigInt::zero();
            }
            prev = m[k][k].clone();
        }
        let d = m[n - 1][n - 1].clone();
        if sign < 0 {
            -d
        } else {
            d
        }
    }

    pub fn is_entrywise_positive(&self) -> bool {
        self.entries.iter().all(|e| e.is_positive())
    }

    pub fn is_entrywise_nonnegative(&self) -> bool {
        self.entries.iter().all(|e| !e.is_negative())
    }

    pub fn has_zero_row_or_column(&self) -> bool {
        let n = self.order;
        (0..n).any(|i| (0..n).all(|j| self.get(i, j).is_zero()))
            || (0..n).any(|j| (0..n).all(|i| self.get(i, j).is_zero()))
    }

    /// JSON as rows of decimal strings.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            (0..self.order)
                .map(|i| {
                    serde_json::Value::Array(
                        (0..self.order)
                            .map(|j| serde_json::Value::String(self.get(i, j).to_string()))
                            .collect(),
                    )
                })
                .collect(),
        )
    }

    /// Plain text with aligned columns, for trace printing.
    pub fn to_aligned_text(&self) -> String {
        let n = self.order;
        let strs: Vec<Vec<String>> = (0..n)
            .map(|i| (0..n).map(|j| self.get(i, j).to_string()).collect())
            .collect();
        let widths: Vec<usize> = (0..n)
            .map(|j| strs.iter().map(|row| row[j].len()).max().unwrap_or(1))
            .collect();
        strs.iter()
            .map(|row| {
                let cells: Vec<String> = row
                    .iter()
                    .zip(&widths)
                    .map(|(s, w)| format!("{s:>w$}"))
                    .collect();
                format!("[ {} ]", cells.join("  "))
            })
            .collect::<Vec<_>>()
            .join("\n")
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix({}x{})\n{}", self.order, self.order, self.to_aligned_text())
    }
}

/// The (n+1)x(n+1) inverse-branch matrix of the MSA digit k:
/// first row (0, ..., 0, k, 1), shifted identity below.
pub fn beta_matrix(k: &BigInt, n: usize) -> IntMatrix {
    assert!(n >= 1, "dimension must be >= 1");
    assert!(*k >= BigInt::one(), "digit must be >= 1");
    let mut m = IntMatrix::zero(n + 1);
    *m.get_mut(0, n - 1) = k.clone();
    *m.get_mut(0, n) = BigInt::one();
    for i in 1..=n {
        *m.get_mut(i, i - 1) = BigInt::one();
    }
    m
}

/// Product state β^(s) = β(k_1)···β(k_s) together with its digit history
/// and the cyclic column labeling.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvergentState {
    dim: usize,
    digits: Vec<BigInt>,
    matrix: IntMatrix,
}

impl ConvergentState {
    /// β^(0): the identity state.
    pub fn identity(n: usize) -> Self {
        assert!(n >= 1);
        ConvergentState { dim: n, digits: Vec::new(), matrix: IntMatrix::identity(n + 1) }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn digits(&self) -> &[BigInt] {
        &self.digits
    }

    pub fn step_count(&self) -> usize {
        self.digits.len()
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    /// Label carried by each column position: position c < n holds
    /// B^(s-n+1+c), position n holds B^(s-n).
    pub fn column_labels(&self) -> Vec<i64> {
        let s = self.digits.len() as i64;
        let n = self.dim as i64;
        (0..=n).map(|c| if c < n { s - n + 1 + c } else { s - n }).collect()
    }

    /// Column position currently labeled `t`, if present in the window.
    pub fn position_of_label(&self, t: i64) -> Option<usize> {
        self.column_labels().iter().position(|&l| l == t)
    }

    /// Position of the newest column B^(s).
    pub fn main_column(&self) -> usize {
        self.dim - 1
    }

    /// One step of the scalar recursion
    /// B_i^(s+1) = k_{s+1} B_i^(s-n+1) + B_i^(s-n): O(n^2) instead of a
    /// full matrix product. This is the production path; `beta_product`
    /// is the independent oracle.
    pub fn extend(&self, k: &BigInt) -> Result<ConvergentState, ConvergentError> {
        if *k < BigInt::one() {
            return Err(ConvergentError::BadDigit(k.clone()));
        }
        let n = self.dim;
        let old_first = self.matrix.column(0); // B^(s-n+1)
        let old_last = self.matrix.column(n); // B^(s-n)
        let new_col: Vec<BigInt> = old_first
            .iter()
            .zip(&old_last)
            .map(|(a, b)| a * k + b)
            .collect();
        let mut m = IntMatrix::zero(n + 1);
        for c in 0..n.saturating_sub(1) {
            m.set_column(c, &self.matrix.column(c + 1));
        }
        m.set_column(n - 1, &new_col);
        m.set_column(n, &old_first);
        let mut digits = self.digits.clone();
        digits.push(k.clone());
        Ok(ConvergentState { dim: n, digits, matrix: m })
    }

    /// Convergent ratios (B_1/B_0, ..., B_n/B_0) of column position `g`.
    pub fn convergent_point(&self, g: usize) -> Result<Vec<Rational>, ConvergentError> {
        if self.digits.is_empty() {
            return Err(ConvergentError::EmptyState);
        }
        if g > self.dim {
            return Err(ConvergentError::ColumnOutOfRange { index: g, order: self.dim + 1 });
        }
        let denom = self.matrix.get(0, g);
        if denom.is_zero() {
            return Err(ConvergentError::ZeroDenominator(g));
        }
        Ok((1..=self.dim)
            .map(|i| Rational::new(self.matrix.get(i, g).clone(), denom.clone()))
            .collect())
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "dim": self.dim,
            "digits": self.digits.iter().map(|k| k.to_string()).collect::<Vec<_>>(),
            "matrix": self.matrix.to_json(),
            "column_labels": self.column_labels(),
        })
    }
}

/// Free-function form of [`ConvergentState::extend`]: one step of the
/// scalar column recursion.
pub fn recursion_extend(
    state: &ConvergentState,
    k_next: &BigInt,
) -> Result<ConvergentState, ConvergentError> {
    state.extend(k_next)
}

/// β^(s) by straight matrix multiplication — the oracle the recursion
/// is checked against.
pub fn beta_product(digits: &[BigInt], n: usize) -> ConvergentState {
    let mut matrix = IntMatrix::identity(n + 1);
    for k in digits {
        matrix = matrix.mul(&beta_matrix(k, n));
    }
    ConvergentState { dim: n, digits: digits.to_vec(), matrix }
}

/// Exact reconstruction of x from y = S^s x:
/// x_i = (B_i^(s-n+1) + y_1 B_i^(s-n+2) + ... + y_{n-1} B_i^(s) + y_n B_i^(s-n))
///       / (same row 0 expression),
/// which in the stored column order is the matrix applied to
/// (1, y_1, ..., y_n).
pub fn reconstruct_point(state: &ConvergentState, y: &PointB) -> Result<PointB, ConvergentError> {
    let n = state.dim;
    if y.dim() != n {
        return Err(ConvergentError::DimensionMismatch { point: y.dim(), state: n });
    }
    let field = y.field().clone();
    let mut weights: Vec<NumberFieldElement> = Vec::with_capacity(n + 1);
    weights.push(field.one());
    weights.extend(y.coords().iter().cloned());
    let mut rows: Vec<NumberFieldElement> = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let mut acc = field.zero();
        for (j, w) in weights.iter().enumerate() {
            let entry = state.matrix.get(i, j);
            if entry.is_zero() {
                continue;
            }
            let term = w.mul_rational(&Rational::from_integer(entry.clone()));
            acc = acc.add(&term).expect("same field");
        }
        rows.push(acc);
    }
    if rows[0].is_zero() {
        return Err(ConvergentError::ReconstructDenominatorZero);
    }
    let inv = rows[0].inv().expect("nonzero");
    let coords = rows[1..]
        .iter()
        .map(|r| r.mul(&inv).expect("same field"))
        .collect();
    PointB::new(coords).map_err(|_| ConvergentError::ReconstructDenominatorZero)
}
