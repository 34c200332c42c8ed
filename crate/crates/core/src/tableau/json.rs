//! JSON form of a tableau with substitution.
//!
//! ```json
//! {"dims":[2,2],
//!  "arrows":[{"tail":[1,1],"head":[2,1],"label":1},{"tail":[1,2],"head":[2,2],"label":1}],
//!  "matrices":{"1":"generic"},
//!  "q":[1,2]}
//! ```
//!
//! Matrices default to generic; explicit ones are integer grids
//! `{"rows":r,"cols":c,"entries":[[…]]}`. `q` is optional.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::{Arrow, Tableau};
use crate::error::{Error, Result};
use crate::matrix::SymMatrix;
use crate::poly::{Monomial, Polynomial};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowSpec {
    pub tail: [usize; 2],
    pub head: [usize; 2],
    pub label: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MatrixSpec {
    Named(String),
    Explicit {
        rows: usize,
        cols: usize,
        entries: Vec<Vec<i64>>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableauSpec {
    pub dims: Vec<usize>,
    pub arrows: Vec<ArrowSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub matrices: BTreeMap<String, MatrixSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<[usize; 2]>,
}

impl TableauSpec {
    pub fn parse(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("tableau spec serializes")
    }

    /// Builds the tableau without validating it.
    pub fn build_unchecked(&self) -> Result<Tableau> {
        let arrows: Vec<Arrow> = self
            .arrows
            .iter()
            .enumerate()
            .map(|(id, a)| Arrow::new(id, (a.tail[0], a.tail[1]), (a.head[0], a.head[1]), a.label))
            .collect();
        let mut t = Tableau::with_generic(self.dims.clone(), arrows);
        for (key, spec) in &self.matrices {
            let label: u32 = key
                .parse()
                .map_err(|_| Error::Parse(format!("matrix key {key:?} is not a label")))?;
            let m = match spec {
                MatrixSpec::Named(name) if name == "generic" => {
                    let shape = t.matrix(label).map(|m| m.shape());
                    match shape {
                        Some((r, c)) => SymMatrix::generic(label, r, c),
                        None => SymMatrix::generic(label, 0, 0),
                    }
                }
                MatrixSpec::Named(name) => {
                    return Err(Error::Parse(format!(
                        "unknown matrix kind {name:?} for label {label}"
                    )))
                }
                MatrixSpec::Explicit {
                    rows,
                    cols,
                    entries,
                } => {
                    if entries.len() != *rows || entries.iter().any(|r| r.len() != *cols) {
                        return Err(Error::Shape(format!(
                            "matrix for label {label} does not match {rows}x{cols}"
                        )));
                    }
                    SymMatrix::from_fn(*rows, *cols, |i, j| Polynomial::from_int(entries[i][j]))
                }
            };
            t.replace_matrix(label, m);
        }
        Ok(t)
    }

    /// Builds and validates the tableau.
    pub fn build(&self) -> Result<Tableau> {
        self.build_unchecked()?.checked()
    }

    /// The spec of a tableau whose matrices are generic or integer constants.
    pub fn from_tableau(t: &Tableau) -> Result<Self> {
        let mut arrows: Vec<&Arrow> = t.arrows().iter().collect();
        arrows.sort_by_key(|a| a.id);
        let arrows = arrows
            .into_iter()
            .map(|a| ArrowSpec {
                tail: [a.tail.col, a.tail.row],
                head: [a.head.col, a.head.row],
                label: a.label,
            })
            .collect();
        let mut matrices = BTreeMap::new();
        for (&label, m) in t.substitution() {
            let (r, c) = m.shape();
            if *m == SymMatrix::generic(label, r, c) {
                continue;
            }
            let mut entries = vec![vec![0i64; c]; r];
            for (i, row) in entries.iter_mut().enumerate() {
                for (j, e) in row.iter_mut().enumerate() {
                    let p = m.get(i, j);
                    let k = p.coefficient(&Monomial::one());
                    if p.len() > 1 || (p.len() == 1 && k.is_zero()) {
                        return Err(Error::Precondition(format!(
                            "matrix for label {label} is not constant"
                        )));
                    }
                    *e = i64::try_from(k).map_err(|_| {
                        Error::Precondition(format!("entry of label {label} exceeds i64"))
                    })?;
                }
            }
            matrices.insert(
                label.to_string(),
                MatrixSpec::Explicit {
                    rows: r,
                    cols: c,
                    entries,
                },
            );
        }
        Ok(TableauSpec {
            dims: t.dims().to_vec(),
            arrows,
            matrices,
            q: None,
        })
    }
}
