//! Paths through a pair of glued columns and the contracted tableau.
//!
//! Gluing columns `q1` and `q2` identifies the cells `(q1,i)` and `(q2,i)`.
//! The arrows touching either column then chain into paths: open paths whose
//! two outer ends lie outside both columns, and closed paths.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigInt;

use super::{Arrow, Cell, Tableau};
use crate::combinat::{canon_ct_seq, transpose_seq, Letter, Transposable, Word};
use crate::error::{Error, Result};
use crate::matrix::{MaybeMatrix, SymMatrix};

/// One arrow traversed forwards or backwards.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PathElem {
    pub arrow: usize,
    pub transposed: bool,
}

impl Transposable for PathElem {
    fn flipped(&self) -> Self {
        PathElem {
            arrow: self.arrow,
            transposed: !self.transposed,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PathKind {
    Open,
    Closed,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Path {
    pub kind: PathKind,
    pub elems: Vec<PathElem>,
}

impl Path {
    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn transpose(&self) -> Path {
        Path {
            kind: self.kind,
            elems: transpose_seq(&self.elems),
        }
    }

    /// Start cell of an open path.
    pub fn start(&self, t: &Tableau) -> Option<Cell> {
        let e = self.elems.first()?;
        let a = t.arrow(e.arrow)?;
        Some(if e.transposed { a.head } else { a.tail })
    }

    /// End cell of an open path.
    pub fn end(&self, t: &Tableau) -> Option<Cell> {
        let e = self.elems.last()?;
        let a = t.arrow(e.arrow)?;
        Some(if e.transposed { a.tail } else { a.head })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathDecomposition {
    pub q1: usize,
    pub q2: usize,
    /// Oriented so that the start cell precedes the end cell.
    pub open: Vec<Path>,
    /// In canonical form under rotation and transpose.
    pub closed: Vec<Path>,
}

fn check_columns(t: &Tableau, q1: usize, q2: usize) -> Result<()> {
    let m = t.columns();
    if q1 == 0 || q2 == 0 || q1 > m || q2 > m {
        return Err(Error::OutOfRange(format!(
            "columns ({q1},{q2}) outside 1..={m}"
        )));
    }
    if q1 >= q2 {
        return Err(Error::Precondition(format!(
            "glued columns need q1 < q2, got ({q1},{q2})"
        )));
    }
    if t.dims()[q1 - 1] != t.dims()[q2 - 1] {
        return Err(Error::Precondition(format!(
            "glued columns {q1} and {q2} have heights {} and {}",
            t.dims()[q1 - 1],
            t.dims()[q2 - 1]
        )));
    }
    Ok(())
}

/// Splits the arrows touching columns `q1`, `q2` into open and closed paths.
pub fn path_decompose(t: &Tableau, q1: usize, q2: usize) -> Result<PathDecomposition> {
    check_columns(t, q1, q2)?;
    let v = t.validate();
    if !v.is_empty() {
        return Err(Error::InvalidTableau(
            v.iter().map(ToString::to_string).collect(),
        ));
    }
    let arrows: HashMap<usize, &Arrow> = t.arrows().iter().map(|a| (a.id, a)).collect();
    let mut owner: HashMap<Cell, (usize, bool)> = HashMap::new();
    for a in t.arrows() {
        owner.insert(a.tail, (a.id, true));
        owner.insert(a.head, (a.id, false));
    }
    let in_q = |c: Cell| c.col == q1 || c.col == q2;
    let far_end = |e: PathElem| {
        let a = arrows[&e.arrow];
        if e.transposed {
            a.tail
        } else {
            a.head
        }
    };
    let next = |e: PathElem| -> Option<PathElem> {
        let h = far_end(e);
        if !in_q(h) {
            return None;
        }
        let partner = Cell::new(if h.col == q1 { q2 } else { q1 }, h.row);
        let (id, is_tail) = owner[&partner];
        Some(PathElem {
            arrow: id,
            transposed: !is_tail,
        })
    };
    let limit = t.arrows().len();

    let touching: Vec<&Arrow> = t
        .arrows()
        .iter()
        .filter(|a| a.touches(q1) || a.touches(q2))
        .collect();
    let mut seen: BTreeSet<usize> = BTreeSet::new();
    let mut open = Vec::new();
    for a in &touching {
        if seen.contains(&a.id) {
            continue;
        }
        let start = if !in_q(a.tail) {
            PathElem {
                arrow: a.id,
                transposed: false,
            }
        } else if !in_q(a.head) {
            PathElem {
                arrow: a.id,
                transposed: true,
            }
        } else {
            continue;
        };
        let mut elems = vec![start];
        let mut cur = start;
        while let Some(n) = next(cur) {
            elems.push(n);
            cur = n;
            if elems.len() > limit {
                return Err(Error::Precondition(
                    "path traversal did not terminate".into(),
                ));
            }
        }
        seen.extend(elems.iter().map(|e| e.arrow));
        let mut p = Path {
            kind: PathKind::Open,
            elems,
        };
        if p.start(t) > p.end(t) {
            p = p.transpose();
        }
        open.push(p);
    }
    let mut closed = Vec::new();
    for a in &touching {
        if seen.contains(&a.id) {
            continue;
        }
        let start = PathElem {
            arrow: a.id,
            transposed: false,
        };
        let mut elems = vec![start];
        let mut cur = start;
        loop {
            let n = next(cur)
                .ok_or_else(|| Error::Precondition("closed path left the glued columns".into()))?;
            if n == start {
                break;
            }
            elems.push(n);
            cur = n;
            if elems.len() > limit {
                return Err(Error::Precondition(
                    "path traversal did not terminate".into(),
                ));
            }
        }
        seen.extend(elems.iter().map(|e| e.arrow));
        closed.push(Path {
            kind: PathKind::Closed,
            elems: canon_ct_seq(&elems),
        });
    }
    open.sort();
    closed.sort();
    Ok(PathDecomposition {
        q1,
        q2,
        open,
        closed,
    })
}

/// The word read along a path.
pub fn word_of(path: &Path, t: &Tableau) -> Result<Word> {
    let letters = path
        .elems
        .iter()
        .map(|e| {
            let a = t
                .arrow(e.arrow)
                .ok_or_else(|| Error::OutOfRange(format!("arrow {} not in tableau", e.arrow)))?;
            Ok(Letter {
                label: a.label,
                transposed: e.transposed,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Word::new(letters)
}

/// Evaluates a word as a product of substituted matrices.
pub fn eval_word(w: &Word, substitution: &BTreeMap<u32, SymMatrix<BigInt>>) -> Result<MaybeMatrix> {
    let mut acc: Option<MaybeMatrix> = None;
    for l in w.letters() {
        let m = substitution
            .get(&l.label)
            .ok_or(Error::UnknownLabel(l.label))?;
        let m = MaybeMatrix::from(if l.transposed {
            m.transpose()
        } else {
            m.clone()
        });
        acc = Some(match acc {
            None => m,
            Some(a) => a.mul(&m),
        });
    }
    acc.ok_or_else(|| Error::Precondition("empty word".into()))
}

/// The tableau `T̃` obtained by deleting the glued columns and replacing every
/// open path by a single arrow.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Contraction {
    pub decomposition: PathDecomposition,
    pub tableau: Tableau,
    /// The word each label of `T̃` stands for.
    pub words: BTreeMap<u32, Word>,
    /// `false` when some substituted word evaluates to the zero matrix.
    pub substitution_defined: bool,
}

pub fn contract(t: &Tableau, q1: usize, q2: usize) -> Result<Contraction> {
    let decomposition = path_decompose(t, q1, q2)?;
    let shift = |c: Cell| {
        let d = [q1, q2].iter().filter(|&&q| q < c.col).count();
        Cell::new(c.col - d, c.row)
    };
    let dims: Vec<usize> = t
        .dims()
        .iter()
        .enumerate()
        .filter(|(i, _)| i + 1 != q1 && i + 1 != q2)
        .map(|(_, &n)| n)
        .collect();

    struct Pending {
        id: usize,
        tail: Cell,
        head: Cell,
        word: Word,
    }
    let mut pending = Vec::new();
    for a in t
        .arrows()
        .iter()
        .filter(|a| !a.touches(q1) && !a.touches(q2))
    {
        pending.push(Pending {
            id: a.id,
            tail: shift(a.tail),
            head: shift(a.head),
            word: Word::letter(Letter::new(a.label)),
        });
    }
    let mut next_id = t.arrows().iter().map(|a| a.id + 1).max().unwrap_or(0);
    for p in &decomposition.open {
        let (s, e) = (p.start(t), p.end(t));
        let (Some(s), Some(e)) = (s, e) else { continue };
        pending.push(Pending {
            id: next_id,
            tail: shift(s),
            head: shift(e),
            word: word_of(p, t)?,
        });
        next_id += 1;
    }
    let distinct: BTreeSet<&Word> = pending.iter().map(|p| &p.word).collect();
    let label_of: BTreeMap<&Word, u32> = distinct.into_iter().zip(1u32..).collect();
    let mut substitution = BTreeMap::new();
    let mut words = BTreeMap::new();
    let mut substitution_defined = true;
    for (w, &j) in &label_of {
        match eval_word(w, t.substitution())? {
            MaybeMatrix::Matrix(m) => {
                substitution.insert(j, m);
            }
            MaybeMatrix::Zero => substitution_defined = false,
        }
        words.insert(j, (*w).clone());
    }
    let arrows = pending
        .iter()
        .map(|p| Arrow {
            id: p.id,
            tail: p.tail,
            head: p.head,
            label: label_of[&p.word],
        })
        .collect();
    let mut arrows: Vec<Arrow> = arrows;
    arrows.sort_by_key(|a| a.id);
    Ok(Contraction {
        decomposition,
        tableau: Tableau::new(dims, arrows, substitution),
        words,
        substitution_defined,
    })
}
