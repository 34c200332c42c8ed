//! The decomposition of `bpf_T` along two glued columns of equal height.
//!
//! For every `ξ ∈ S_n` the tableau `T^ξ` splits into open and closed paths.
//! Grouping permutations by the multisets of path words gives the admissible
//! quadruples, and `bpf_T` is the sum over them of `sgn ξ · bpf_{T̃^ξ}` times
//! `σ_γ` of the closed words.

mod census;
mod corollaries;
mod newton;

use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::bpf::bpf_with;
use crate::combinat::{all_perms_limited, Equivalence, Perm, Word, WordMultiset};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::matrix::MaybeMatrix;
use crate::poly::Polynomial;
use crate::tableau::{contract, eval_word, word_of, Contraction, Tableau};

pub use census::{
    class_partition_check, class_partition_check_with, lemma2_check, lemma2_check_with,
    ClassCensus, ClassInfo, IdentityReport,
};
pub use corollaries::{
    amitsur_det, amitsur_det_terms, pfaffian_product, pfaffian_product_terms, CorollaryTerm,
};
pub use newton::{
    class_sum_value, class_sum_value_with, newton_consistency_check, newton_consistency_check_with,
    sigma_newton, trace_expansion_value, trace_expansion_value_with, NewtonReport,
};

/// The path words of `T^τ`.
#[derive(Debug, Clone)]
pub(crate) struct TauAnalysis {
    pub tau: Perm,
    pub contraction: Contraction,
    /// Open path words modulo transpose.
    pub open: WordMultiset,
    /// Closed path words modulo rotation and transpose.
    pub closed: WordMultiset,
    pub closed_words: Vec<Word>,
}

impl TauAnalysis {
    pub fn all_closed_primitive(&self) -> bool {
        self.closed_words.iter().all(Word::is_primitive)
    }

    /// Closed words replaced by their primitive roots, counted with power.
    pub fn closed_roots(&self) -> WordMultiset {
        let mut ms = WordMultiset::new(Equivalence::Ct);
        for w in &self.closed_words {
            let (root, k) = w.primitive_root();
            ms.insert_many(&root, k);
        }
        ms
    }

    /// `tr(T_cl^τ)`: the product of traces of closed words.
    pub fn closed_trace(&self, t: &Tableau) -> Result<Polynomial> {
        let mut acc = Polynomial::one();
        for w in &self.closed_words {
            acc = &acc * &eval_word(w, t.substitution())?.trace()?;
        }
        Ok(acc)
    }

    pub fn contracted(&self) -> Result<&Tableau> {
        if !self.contraction.substitution_defined {
            return Err(Error::Precondition(format!(
                "an open path of T^{} has an ill-defined product",
                self.tau
            )));
        }
        Ok(&self.contraction.tableau)
    }
}

/// Glued columns must exist, differ, have equal height within the guard.
pub(crate) fn junction_height(t: &Tableau, q1: usize, q2: usize, limits: &Limits) -> Result<usize> {
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
    let n = t.dims()[q1 - 1];
    if t.dims()[q2 - 1] != n {
        return Err(Error::Precondition(format!(
            "glued columns {q1} and {q2} have heights {n} and {}",
            t.dims()[q2 - 1]
        )));
    }
    limits.check_junction(n)?;
    let v = t.validate();
    if !v.is_empty() {
        return Err(Error::InvalidTableau(
            v.iter().map(ToString::to_string).collect(),
        ));
    }
    Ok(n)
}

pub(crate) fn analyze(t: &Tableau, q1: usize, q2: usize, tau: &Perm) -> Result<TauAnalysis> {
    let tt = t.apply_tau(q2, tau)?;
    let contraction = contract(&tt, q1, q2)?;
    let mut open = WordMultiset::new(Equivalence::T);
    for p in &contraction.decomposition.open {
        open.insert(&word_of(p, &tt)?);
    }
    let closed_words = contraction
        .decomposition
        .closed
        .iter()
        .map(|p| word_of(p, &tt))
        .collect::<Result<Vec<_>>>()?;
    let closed = WordMultiset::from_words(Equivalence::Ct, &closed_words);
    Ok(TauAnalysis {
        tau: tau.clone(),
        contraction,
        open,
        closed,
        closed_words,
    })
}

/// A representative of a ct-class of admissible quadruples with its
/// witness permutation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quadruple {
    /// `b̲` with multiplicities `β̲`, modulo transpose.
    pub open: WordMultiset,
    /// `c̲` with multiplicities `γ̲`, modulo rotation and transpose.
    pub closed: WordMultiset,
    /// First `ξ` in lexicographic order realizing the quadruple.
    pub witness: Perm,
    pub sign: i32,
    /// `T̃^ξ` with its substitution.
    pub contracted: Tableau,
    /// `sgn ξ · bpf_{T̃^ξ}`.
    pub factor: Polynomial,
    /// Number of `ξ` with primitive closed words realizing the quadruple.
    pub witnesses: usize,
}

impl Quadruple {
    pub fn beta(&self) -> Vec<usize> {
        self.open.entries().map(|(_, k)| k).collect()
    }

    pub fn gamma(&self) -> Vec<usize> {
        self.closed.entries().map(|(_, k)| k).collect()
    }

    pub fn b(&self) -> Vec<&Word> {
        self.open.entries().map(|(w, _)| w).collect()
    }

    pub fn c(&self) -> Vec<&Word> {
        self.closed.entries().map(|(w, _)| w).collect()
    }
}

/// A witness whose factor disagrees with the first witness of its class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessConflict {
    pub class: usize,
    pub witness: Perm,
    pub factor: Polynomial,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadrupleSet {
    pub q1: usize,
    pub q2: usize,
    pub n: usize,
    pub quadruples: Vec<Quadruple>,
    pub conflicts: Vec<WitnessConflict>,
}

impl QuadrupleSet {
    /// `sgn ξ · bpf_{T̃^ξ}` agrees across all witnesses of every class.
    pub fn witness_independent(&self) -> bool {
        self.conflicts.is_empty()
    }

    pub fn witnesses_checked(&self) -> usize {
        self.quadruples.iter().map(|q| q.witnesses).sum()
    }
}

pub fn enumerate_quadruples(t: &Tableau, q1: usize, q2: usize) -> Result<QuadrupleSet> {
    enumerate_quadruples_with(t, q1, q2, &Limits::default())
}

pub fn enumerate_quadruples_with(
    t: &Tableau,
    q1: usize,
    q2: usize,
    limits: &Limits,
) -> Result<QuadrupleSet> {
    let n = junction_height(t, q1, q2, limits)?;
    let mut index: BTreeMap<(WordMultiset, WordMultiset), usize> = BTreeMap::new();
    let mut quadruples: Vec<Quadruple> = Vec::new();
    let mut conflicts = Vec::new();
    for xi in all_perms_limited(n, usize::MAX)? {
        let a = analyze(t, q1, q2, &xi)?;
        if !a.all_closed_primitive() {
            continue;
        }
        let sign = xi.sign();
        let factor = bpf_with(a.contracted()?, limits)?.scale(&sign.into());
        let key = (a.open.clone(), a.closed.clone());
        match index.get(&key) {
            Some(&i) => {
                quadruples[i].witnesses += 1;
                if quadruples[i].factor != factor {
                    conflicts.push(WitnessConflict {
                        class: i,
                        witness: xi,
                        factor,
                    });
                }
            }
            None => {
                index.insert(key, quadruples.len());
                quadruples.push(Quadruple {
                    open: a.open,
                    closed: a.closed,
                    witness: xi,
                    sign,
                    contracted: a.contraction.tableau,
                    factor,
                    witnesses: 1,
                });
            }
        }
    }
    Ok(QuadrupleSet {
        q1,
        q2,
        n,
        quadruples,
        conflicts,
    })
}

/// One summand of the decomposition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub quadruple: Quadruple,
    /// `Π_j σ_{γ_j}(X_{c_j})`.
    pub sigma_product: Polynomial,
    pub value: Polynomial,
}

fn dims_without(t: &Tableau, q1: usize, q2: usize) -> Vec<usize> {
    t.dims()
        .iter()
        .enumerate()
        .filter(|(i, _)| i + 1 != q1 && i + 1 != q2)
        .map(|(_, &d)| d)
        .collect()
}

fn terms_of(t: &Tableau, set: &QuadrupleSet) -> Result<Vec<Term>> {
    let d = dims_without(t, set.q1, set.q2);
    let mut out = Vec::new();
    for q in &set.quadruples {
        if q.contracted.dims() != d.as_slice() {
            return Err(Error::Precondition(format!(
                "contracted tableau has dimension {:?}, expected {d:?}",
                q.contracted.dims()
            )));
        }
        let mut sigma_product = Polynomial::one();
        for (c, gamma) in q.closed.entries() {
            if gamma > set.n {
                return Err(Error::Precondition(format!(
                    "sigma index {gamma} exceeds column height {}",
                    set.n
                )));
            }
            let x = match eval_word(c, t.substitution())? {
                MaybeMatrix::Matrix(m) => m,
                MaybeMatrix::Zero => {
                    return Err(Error::Precondition(format!(
                        "closed word {c} has an ill-defined product"
                    )))
                }
            };
            sigma_product = &sigma_product * &x.sigma(gamma)?;
        }
        let value = &q.factor * &sigma_product;
        out.push(Term {
            quadruple: q.clone(),
            sigma_product,
            value,
        });
    }
    Ok(out)
}

/// The right-hand side `Σ_{Q_T} sgn ξ · bpf_{T̃^ξ} · Π_j σ_{γ_j}(X_{c_j})`.
pub fn rhs_decomposition(t: &Tableau, q1: usize, q2: usize) -> Result<Polynomial> {
    rhs_decomposition_with(t, q1, q2, &Limits::default())
}

pub fn rhs_decomposition_with(
    t: &Tableau,
    q1: usize,
    q2: usize,
    limits: &Limits,
) -> Result<Polynomial> {
    let set = enumerate_quadruples_with(t, q1, q2, limits)?;
    Ok(terms_of(t, &set)?.into_iter().map(|term| term.value).sum())
}

/// Both sides of the decomposition with the per-quadruple breakdown.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionReport {
    pub q1: usize,
    pub q2: usize,
    pub lhs: Polynomial,
    pub rhs: Polynomial,
    pub equal: bool,
    pub witness_independent: bool,
    pub witnesses_checked: usize,
    pub terms: Vec<Term>,
}

impl DecompositionReport {
    pub fn quadruple_count(&self) -> usize {
        self.terms.len()
    }

    pub fn to_json(&self) -> Value {
        let words = |ms: &WordMultiset| -> Vec<Value> {
            ms.entries()
                .map(|(w, k)| json!({"word": w.to_string(), "count": k}))
                .collect()
        };
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|term| {
                let q = &term.quadruple;
                json!({
                    "xi": q.witness.to_string(),
                    "sign": q.sign,
                    "beta": q.beta(),
                    "gamma": q.gamma(),
                    "open_words": words(&q.open),
                    "closed_words": words(&q.closed),
                    "contracted_bpf": q.factor.scale(&q.sign.into()).to_string(),
                    "sigma_product": term.sigma_product.to_string(),
                    "term": term.value.to_string(),
                })
            })
            .collect();
        json!({
            "q": [self.q1, self.q2],
            "lhs": self.lhs.to_string(),
            "rhs": self.rhs.to_string(),
            "equal": self.equal,
            "quadruple_count": self.quadruple_count(),
            "witness_independent": self.witness_independent,
            "witnesses_checked": self.witnesses_checked,
            "terms": terms,
        })
    }
}

pub fn verify_decomposition(t: &Tableau, q1: usize, q2: usize) -> Result<DecompositionReport> {
    verify_decomposition_with(t, q1, q2, &Limits::default())
}

pub fn verify_decomposition_with(
    t: &Tableau,
    q1: usize,
    q2: usize,
    limits: &Limits,
) -> Result<DecompositionReport> {
    let set = enumerate_quadruples_with(t, q1, q2, limits)?;
    let terms = terms_of(t, &set)?;
    let rhs: Polynomial = terms.iter().map(|term| term.value.clone()).sum();
    let lhs = bpf_with(t, limits)?;
    Ok(DecompositionReport {
        q1,
        q2,
        equal: lhs == rhs,
        lhs,
        rhs,
        witness_independent: set.witness_independent(),
        witnesses_checked: set.witnesses_checked(),
        terms,
    })
}
