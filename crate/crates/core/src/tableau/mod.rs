//! Tableaux with substitution.
//!
//! A tableau of dimension `(n_1, …, n_m)` is a shape of `m` columns of cells
//! in which every cell is the head or the tail of exactly one arrow. Each
//! arrow carries a label `j`, and label `j` is substituted by a matrix `X_j`
//! of shape `n_{tail column} × n_{head column}`. Columns and cells are
//! 1-based throughout.

mod json;
mod path;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::combinat::Perm;
use crate::error::{Error, Result};
use crate::matrix::SymMatrix;

pub use json::{ArrowSpec, MatrixSpec, TableauSpec};
pub use path::{
    contract, eval_word, path_decompose, word_of, Contraction, Path, PathDecomposition, PathElem,
    PathKind,
};

/// A cell, addressed by 1-based column and 1-based row within the column.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Cell {
    pub col: usize,
    pub row: usize,
}

impl Cell {
    pub fn new(col: usize, row: usize) -> Self {
        Cell { col, row }
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.col, self.row)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub id: usize,
    pub tail: Cell,
    pub head: Cell,
    pub label: u32,
}

impl Arrow {
    pub fn new(id: usize, tail: (usize, usize), head: (usize, usize), label: u32) -> Self {
        Arrow {
            id,
            tail: Cell::new(tail.0, tail.1),
            head: Cell::new(head.0, head.1),
            label,
        }
    }

    pub fn touches(&self, col: usize) -> bool {
        self.tail.col == col || self.head.col == col
    }
}

/// A broken tableau invariant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    OddCellCount(usize),
    DuplicateArrowId(usize),
    CellOutOfShape {
        arrow: usize,
        cell: Cell,
    },
    UncoveredCell(Cell),
    OvercoveredCell {
        cell: Cell,
        arrows: Vec<usize>,
    },
    ZeroLabel {
        arrow: usize,
    },
    MissingLabel(u32),
    LabelColumns {
        label: u32,
        arrows: (usize, usize),
    },
    MissingMatrix(u32),
    UnusedMatrix(u32),
    MatrixShape {
        label: u32,
        expected: (usize, usize),
        found: (usize, usize),
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::OddCellCount(n) => write!(f, "total cell count {n} is odd"),
            Violation::DuplicateArrowId(id) => write!(f, "arrow id {id} is used twice"),
            Violation::CellOutOfShape { arrow, cell } => {
                write!(f, "arrow {arrow} ends at {cell}, outside the shape")
            }
            Violation::UncoveredCell(c) => write!(f, "cell {c} is not an endpoint of any arrow"),
            Violation::OvercoveredCell { cell, arrows } => {
                write!(f, "cell {cell} is an endpoint of several arrows {arrows:?}")
            }
            Violation::ZeroLabel { arrow } => {
                write!(f, "arrow {arrow} has label 0; labels start at 1")
            }
            Violation::MissingLabel(j) => write!(f, "labels must cover [1,s] but {j} is unused"),
            Violation::LabelColumns { label, arrows } => write!(
                f,
                "arrows {} and {} share label {label} but not their head and tail columns",
                arrows.0, arrows.1
            ),
            Violation::MissingMatrix(j) => write!(f, "no matrix substituted for label {j}"),
            Violation::UnusedMatrix(j) => {
                write!(f, "matrix given for label {j}, which no arrow carries")
            }
            Violation::MatrixShape {
                label,
                expected,
                found,
            } => write!(
                f,
                "matrix for label {label} is {}x{} but its arrows need {}x{}",
                found.0, found.1, expected.0, expected.1
            ),
        }
    }
}

/// `((tail column, tail row), (head column, head row), label)`.
pub type ArrowTriple = ((usize, usize), (usize, usize), u32);

/// A tableau together with its substitution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tableau {
    dims: Vec<usize>,
    arrows: Vec<Arrow>,
    substitution: BTreeMap<u32, SymMatrix<BigInt>>,
}

impl Tableau {
    /// Assembles a tableau without checking it; see [`Tableau::validate`].
    pub fn new(
        dims: Vec<usize>,
        arrows: Vec<Arrow>,
        substitution: BTreeMap<u32, SymMatrix<BigInt>>,
    ) -> Self {
        Tableau {
            dims,
            arrows,
            substitution,
        }
    }

    /// Substitutes the generic matrix `X_j = (x_{pq}(j))` for every label `j`.
    pub fn with_generic(dims: Vec<usize>, arrows: Vec<Arrow>) -> Self {
        let mut substitution = BTreeMap::new();
        for a in &arrows {
            let rows = dims.get(a.tail.col.wrapping_sub(1)).copied().unwrap_or(0);
            let cols = dims.get(a.head.col.wrapping_sub(1)).copied().unwrap_or(0);
            substitution
                .entry(a.label)
                .or_insert_with(|| SymMatrix::generic(a.label, rows, cols));
        }
        Tableau {
            dims,
            arrows,
            substitution,
        }
    }

    /// Builds from `(tail, head, label)` triples with ids in input order and
    /// generic matrices, then validates.
    pub fn generic_from_triples(dims: &[usize], triples: &[ArrowTriple]) -> Result<Self> {
        let arrows = triples
            .iter()
            .enumerate()
            .map(|(id, &(t, h, l))| Arrow::new(id, t, h, l))
            .collect();
        Self::with_generic(dims.to_vec(), arrows).checked()
    }

    pub fn checked(self) -> Result<Self> {
        let v = self.validate();
        if v.is_empty() {
            Ok(self)
        } else {
            Err(Error::InvalidTableau(
                v.iter().map(ToString::to_string).collect(),
            ))
        }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn columns(&self) -> usize {
        self.dims.len()
    }

    pub fn cell_count(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow(&self, id: usize) -> Option<&Arrow> {
        self.arrows.iter().find(|a| a.id == id)
    }

    pub fn substitution(&self) -> &BTreeMap<u32, SymMatrix<BigInt>> {
        &self.substitution
    }

    pub fn matrix(&self, label: u32) -> Option<&SymMatrix<BigInt>> {
        self.substitution.get(&label)
    }

    pub fn replace_matrix(&mut self, label: u32, m: SymMatrix<BigInt>) {
        self.substitution.insert(label, m);
    }

    /// `s`, the number of distinct labels.
    pub fn label_count(&self) -> usize {
        self.arrows
            .iter()
            .map(|a| a.label)
            .collect::<BTreeSet<_>>()
            .len()
    }

    /// Number of arrows carrying each label.
    pub fn label_multiplicities(&self) -> BTreeMap<u32, usize> {
        let mut m = BTreeMap::new();
        for a in &self.arrows {
            *m.entry(a.label).or_insert(0) += 1;
        }
        m
    }

    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let total = self.cell_count();
        if total % 2 == 1 {
            out.push(Violation::OddCellCount(total));
        }
        let mut ids = BTreeSet::new();
        for a in &self.arrows {
            if !ids.insert(a.id) {
                out.push(Violation::DuplicateArrowId(a.id));
            }
        }
        let mut owners: BTreeMap<Cell, Vec<usize>> = BTreeMap::new();
        for a in &self.arrows {
            for cell in [a.tail, a.head] {
                if cell.col == 0
                    || cell.col > self.dims.len()
                    || cell.row == 0
                    || cell.row > self.dims[cell.col - 1]
                {
                    out.push(Violation::CellOutOfShape { arrow: a.id, cell });
                } else {
                    owners.entry(cell).or_default().push(a.id);
                }
            }
        }
        for (c, &n) in self.dims.iter().enumerate() {
            for r in 1..=n {
                let cell = Cell::new(c + 1, r);
                match owners.get(&cell) {
                    None => out.push(Violation::UncoveredCell(cell)),
                    Some(v) if v.len() > 1 => out.push(Violation::OvercoveredCell {
                        cell,
                        arrows: v.clone(),
                    }),
                    Some(_) => {}
                }
            }
        }
        let mut first_of_label: BTreeMap<u32, &Arrow> = BTreeMap::new();
        for a in &self.arrows {
            if a.label == 0 {
                out.push(Violation::ZeroLabel { arrow: a.id });
                continue;
            }
            match first_of_label.get(&a.label) {
                None => {
                    first_of_label.insert(a.label, a);
                }
                Some(b) if b.tail.col != a.tail.col || b.head.col != a.head.col => {
                    out.push(Violation::LabelColumns {
                        label: a.label,
                        arrows: (b.id, a.id),
                    });
                }
                Some(_) => {}
            }
        }
        let s = first_of_label.keys().max().copied().unwrap_or(0);
        for j in 1..=s {
            if !first_of_label.contains_key(&j) {
                out.push(Violation::MissingLabel(j));
            }
        }
        for (&label, a) in &first_of_label {
            let in_shape = |c: usize| c >= 1 && c <= self.dims.len();
            if !in_shape(a.tail.col) || !in_shape(a.head.col) {
                continue;
            }
            let expected = (self.dims[a.tail.col - 1], self.dims[a.head.col - 1]);
            match self.substitution.get(&label) {
                None => out.push(Violation::MissingMatrix(label)),
                Some(m) if m.shape() != expected => out.push(Violation::MatrixShape {
                    label,
                    expected,
                    found: m.shape(),
                }),
                Some(_) => {}
            }
        }
        for &label in self.substitution.keys() {
            if !first_of_label.contains_key(&label) {
                out.push(Violation::UnusedMatrix(label));
            }
        }
        out
    }

    /// `T^τ`: the cells of column `q2` permuted by `τ`.
    pub fn apply_tau(&self, q2: usize, tau: &Perm) -> Result<Tableau> {
        let n = *self
            .dims
            .get(q2.wrapping_sub(1))
            .ok_or_else(|| Error::OutOfRange(format!("column {q2} does not exist")))?;
        if tau.len() != n {
            return Err(Error::Precondition(format!(
                "permutation of degree {} applied to column {q2} of height {n}",
                tau.len()
            )));
        }
        let move_cell = |c: Cell| {
            if c.col == q2 {
                Cell::new(c.col, tau.apply(c.row - 1) + 1)
            } else {
                c
            }
        };
        let arrows = self
            .arrows
            .iter()
            .map(|a| Arrow {
                tail: move_cell(a.tail),
                head: move_cell(a.head),
                ..*a
            })
            .collect();
        Ok(Tableau {
            dims: self.dims.clone(),
            arrows,
            substitution: self.substitution.clone(),
        })
    }

    /// `c_T = Π_j (#arrows labelled j)!`.
    pub fn c_t(&self) -> BigInt {
        self.label_multiplicities()
            .values()
            .map(|&k| (1..=k).fold(BigInt::from(1), |acc, i| acc * i))
            .fold(BigInt::from(1), |acc, f| acc * f)
    }

    /// `c_T` restricted to arrows touching either of the columns `q1`, `q2`.
    pub fn c_t_touching(&self, q1: usize, q2: usize) -> BigInt {
        let mut counts: BTreeMap<u32, usize> = BTreeMap::new();
        for a in self
            .arrows
            .iter()
            .filter(|a| a.touches(q1) || a.touches(q2))
        {
            *counts.entry(a.label).or_insert(0) += 1;
        }
        counts
            .values()
            .map(|&k| (1..=k).fold(BigInt::from(1), |acc, i| acc * i))
            .fold(BigInt::from(1), |acc, f| acc * f)
    }
}
