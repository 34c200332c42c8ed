//! Block embeddings and the correspondence between block partial
//! linearizations and tableaux.

use std::collections::BTreeMap;

use super::{bpf, partial_lin_pf, LinearizationSpec};
use crate::error::{Error, Result};
use crate::matrix::SymMatrix;
use crate::poly::Polynomial;
use crate::tableau::{Arrow, Tableau};

/// A payload placed at block `(p, q)` of an `n×n` matrix partitioned by `dims`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockSpec {
    pub dims: Vec<usize>,
    pub p: usize,
    pub q: usize,
    pub payload: SymMatrix,
}

fn block_offset(dims: &[usize], i: usize) -> usize {
    dims[..i - 1].iter().sum()
}

/// `X^{p,q}`: the payload in block `(p, q)`, zeros elsewhere.
pub fn block_embed(spec: &BlockSpec) -> Result<SymMatrix> {
    let m = spec.dims.len();
    if spec.p == 0 || spec.q == 0 || spec.p > m || spec.q > m {
        return Err(Error::OutOfRange(format!(
            "block ({},{}) outside {m} columns",
            spec.p, spec.q
        )));
    }
    let expected = (spec.dims[spec.p - 1], spec.dims[spec.q - 1]);
    if spec.payload.shape() != expected {
        return Err(Error::Shape(format!(
            "payload is {}x{}, block ({},{}) is {}x{}",
            spec.payload.rows(),
            spec.payload.cols(),
            spec.p,
            spec.q,
            expected.0,
            expected.1
        )));
    }
    let n: usize = spec.dims.iter().sum();
    let (r0, c0) = (
        block_offset(&spec.dims, spec.p),
        block_offset(&spec.dims, spec.q),
    );
    Ok(SymMatrix::from_fn(n, n, |i, j| {
        if (r0..r0 + expected.0).contains(&i) && (c0..c0 + expected.1).contains(&j) {
            spec.payload.get(i - r0, j - c0).clone()
        } else {
            Polynomial::zero()
        }
    }))
}

/// One block matrix `X_j^{p_j,q_j}` of a b.p.l.p. with multiplicity `k_j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockTerm {
    pub p: usize,
    pub q: usize,
    pub payload: SymMatrix,
    pub k: usize,
}

/// `P_{k_1,…,k_s}(X_1^{p_1,q_1}, …, X_s^{p_s,q_s})` over the partition `dims`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bplp {
    pub dims: Vec<usize>,
    pub blocks: Vec<BlockTerm>,
}

impl Bplp {
    /// Columns `i` where `Σ_{p_j=i} k_j + Σ_{q_j=i} k_j ≠ n_i`.
    pub fn block_condition_failures(&self) -> Vec<usize> {
        let mut load = vec![0usize; self.dims.len()];
        for b in &self.blocks {
            if let Some(l) = load.get_mut(b.p.wrapping_sub(1)) {
                *l += b.k;
            }
            if let Some(l) = load.get_mut(b.q.wrapping_sub(1)) {
                *l += b.k;
            }
        }
        (1..=self.dims.len())
            .filter(|&i| load[i - 1] != self.dims[i - 1])
            .collect()
    }

    pub fn embeddings(&self) -> Result<LinearizationSpec> {
        let matrices = self
            .blocks
            .iter()
            .map(|b| {
                block_embed(&BlockSpec {
                    dims: self.dims.clone(),
                    p: b.p,
                    q: b.q,
                    payload: b.payload.clone(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        LinearizationSpec::new(matrices, self.blocks.iter().map(|b| b.k).collect())
    }

    /// The partial linearization of the embedded matrices.
    pub fn evaluate(&self) -> Result<Polynomial> {
        partial_lin_pf(&self.embeddings()?)
    }
}

/// Builds a tableau realizing `f` up to sign: `k_j` arrows from column `p_j`
/// to column `q_j` labelled `j`, filling each column's cells top-down in
/// block order.
pub fn tableau_from_bplp(f: &Bplp) -> Result<Tableau> {
    let bad = f.block_condition_failures();
    if !bad.is_empty() {
        return Err(Error::Precondition(format!(
            "block condition fails in columns {bad:?}"
        )));
    }
    let mut next = vec![1usize; f.dims.len()];
    let mut arrows = Vec::new();
    let mut substitution = BTreeMap::new();
    for (j, b) in f.blocks.iter().enumerate() {
        let label = j as u32 + 1;
        for _ in 0..b.k {
            let tail = (b.p, next[b.p - 1]);
            next[b.p - 1] += 1;
            let head = (b.q, next[b.q - 1]);
            next[b.q - 1] += 1;
            arrows.push(Arrow::new(arrows.len(), tail, head, label));
        }
        substitution.insert(label, b.payload.clone());
    }
    Tableau::new(f.dims.clone(), arrows, substitution).checked()
}

/// The b.p.l.p. of a tableau and the sign `ε` with `bpf_T = ε·f`, read off
/// the least monomials of both sides.
pub fn bplp_from_tableau(t: &Tableau) -> Result<(Bplp, i32)> {
    let t = t.clone().checked()?;
    let counts = t.label_multiplicities();
    let mut blocks = Vec::new();
    for (&label, &k) in &counts {
        let a = t
            .arrows()
            .iter()
            .find(|a| a.label == label)
            .expect("label has an arrow");
        let payload = t
            .matrix(label)
            .expect("validated tableau has every matrix")
            .clone();
        blocks.push(BlockTerm {
            p: a.tail.col,
            q: a.head.col,
            payload,
            k,
        });
    }
    let f = Bplp {
        dims: t.dims().to_vec(),
        blocks,
    };
    let sign = bpf(&t)?.least_monomial_sign(&f.evaluate()?);
    Ok((f, sign))
}
