//! Dense matrices over polynomial entries.

use std::fmt;

use num_bigint::BigInt;

use crate::combinat::all_perms;
use crate::error::{Error, Result};
use crate::poly::{Coefficient, Poly};

/// Row-major matrix with polynomial entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymMatrix<C = BigInt> {
    rows: usize,
    cols: usize,
    entries: Vec<Poly<C>>,
}

impl<C: Coefficient> SymMatrix<C> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SymMatrix {
            rows,
            cols,
            entries: vec![Poly::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Poly::one());
        }
        m
    }

    /// The matrix `(x_{ij}(label))`, with 1-based variable indices.
    pub fn generic(label: u32, rows: usize, cols: usize) -> Self {
        let entries = (0..rows)
            .flat_map(|i| (0..cols).map(move |j| Poly::entry(label, i as u32 + 1, j as u32 + 1)))
            .collect();
        SymMatrix {
            rows,
            cols,
            entries,
        }
    }

    pub fn from_rows(rows: Vec<Vec<Poly<C>>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Shape("ragged rows".into()));
        }
        Ok(SymMatrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Poly<C>) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        SymMatrix {
            rows,
            cols,
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Entry at 0-based `(i, j)`.
    pub fn get(&self, i: usize, j: usize) -> &Poly<C> {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Poly<C>) {
        self.entries[i * self.cols + j] = value;
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.shape() != other.shape() {
            return Err(Error::Shape(format!(
                "cannot add {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Self::from_fn(self.rows, self.cols, |i, j| {
            self.get(i, j) + other.get(i, j)
        }))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        SymMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|p| -p).collect(),
        }
    }

    /// Multiplies every entry by the polynomial `p` (typically a scalar `t(r)`).
    pub fn scale(&self, p: &Poly<C>) -> Self {
        SymMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| e * p).collect(),
        }
    }

    pub fn scale_by_scalar_var(&self, r: u32) -> Self {
        self.scale(&Poly::scalar(r))
    }

    /// Product, or `None` when the inner dimensions disagree.
    pub fn checked_mul(&self, other: &Self) -> Option<Self> {
        if self.cols != other.rows {
            return None;
        }
        Some(Self::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = Poly::zero();
            for k in 0..self.cols {
                let (a, b) = (self.get(i, k), other.get(k, j));
                if !a.is_zero() && !b.is_zero() {
                    acc += &(a * b);
                }
            }
            acc
        }))
    }

    pub fn trace(&self) -> Result<Poly<C>> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        Ok((0..self.rows).map(|i| self.get(i, i).clone()).sum())
    }

    /// Leibniz expansion over all permutations of the rows.
    pub fn det(&self) -> Result<Poly<C>> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let idx: Vec<usize> = (0..self.rows).collect();
        self.principal_minor(&idx)
    }

    fn principal_minor(&self, idx: &[usize]) -> Result<Poly<C>> {
        let mut acc = Poly::zero();
        for perm in all_perms(idx.len())? {
            let mut term = Poly::one();
            for (r, &c) in perm.images().iter().enumerate() {
                let entry = self.get(idx[r], idx[c]);
                if entry.is_zero() {
                    term = Poly::zero();
                    break;
                }
                term = &term * entry;
            }
            if !term.is_zero() {
                let sign = if perm.sign() > 0 { C::one() } else { -C::one() };
                term.add_scaled_into(&mut acc, &sign);
            }
        }
        Ok(acc)
    }

    /// `σ_k`: the sum of all principal `k×k` minors, so that
    /// `det(λE − A) = Σ_k (−1)^k σ_k(A) λ^{n−k}`. Returns zero for `k > n`.
    pub fn sigma(&self, k: usize) -> Result<Poly<C>> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        if k == 0 {
            return Err(Error::OutOfRange("sigma_k needs k >= 1".into()));
        }
        let n = self.rows;
        if k > n {
            return Ok(Poly::zero());
        }
        let mut acc = Poly::zero();
        for subset in k_subsets(n, k) {
            acc += &self.principal_minor(&subset)?;
        }
        Ok(acc)
    }

    pub fn map_coefficients<D: Coefficient>(&self, f: impl Fn(&C) -> D + Copy) -> SymMatrix<D> {
        SymMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|p| p.map_coefficients(f)).collect(),
        }
    }
}

impl<C: Coefficient> fmt::Display for SymMatrix<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Increasing `k`-subsets of `0..n` in lexicographic order.
pub fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::with_capacity(k), &mut out);
    out
}

/// A matrix or the formal absorbing zero produced by an ill-defined product.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MaybeMatrix<C = BigInt> {
    Zero,
    Matrix(SymMatrix<C>),
}

impl<C: Coefficient> MaybeMatrix<C> {
    pub fn is_zero(&self) -> bool {
        matches!(self, MaybeMatrix::Zero)
    }

    pub fn as_matrix(&self) -> Option<&SymMatrix<C>> {
        match self {
            MaybeMatrix::Zero => None,
            MaybeMatrix::Matrix(m) => Some(m),
        }
    }

    pub fn into_matrix(self) -> Option<SymMatrix<C>> {
        match self {
            MaybeMatrix::Zero => None,
            MaybeMatrix::Matrix(m) => Some(m),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        match (self, other) {
            (MaybeMatrix::Matrix(a), MaybeMatrix::Matrix(b)) => a
                .checked_mul(b)
                .map_or(MaybeMatrix::Zero, MaybeMatrix::Matrix),
            _ => MaybeMatrix::Zero,
        }
    }

    /// Sum of two matrices of equal shape. Zero acts as the additive identity
    /// here; adding two matrices of different shapes is a usage error.
    pub fn add(&self, other: &Self) -> Result<Self> {
        match (self, other) {
            (MaybeMatrix::Matrix(a), MaybeMatrix::Matrix(b)) => Ok(MaybeMatrix::Matrix(a.add(b)?)),
            (MaybeMatrix::Zero, x) | (x, MaybeMatrix::Zero) => Ok(x.clone()),
        }
    }

    pub fn transpose(&self) -> Self {
        match self {
            MaybeMatrix::Zero => MaybeMatrix::Zero,
            MaybeMatrix::Matrix(m) => MaybeMatrix::Matrix(m.transpose()),
        }
    }

    pub fn scale_by_scalar_var(&self, r: u32) -> Self {
        match self {
            MaybeMatrix::Zero => MaybeMatrix::Zero,
            MaybeMatrix::Matrix(m) => MaybeMatrix::Matrix(m.scale_by_scalar_var(r)),
        }
    }

    pub fn trace(&self) -> Result<Poly<C>> {
        match self {
            MaybeMatrix::Zero => Ok(Poly::zero()),
            MaybeMatrix::Matrix(m) => m.trace(),
        }
    }

    pub fn sigma(&self, k: usize) -> Result<Poly<C>> {
        match self {
            MaybeMatrix::Zero if k == 0 => Err(Error::OutOfRange("sigma_k needs k >= 1".into())),
            MaybeMatrix::Zero => Ok(Poly::zero()),
            MaybeMatrix::Matrix(m) => m.sigma(k),
        }
    }
}

impl<C> From<SymMatrix<C>> for MaybeMatrix<C> {
    fn from(m: SymMatrix<C>) -> Self {
        MaybeMatrix::Matrix(m)
    }
}
