//! The free-sum expansion over `S_n` and the census of its classes.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::One;
use serde_json::{json, Value};

use super::{analyze, enumerate_quadruples_with, junction_height, TauAnalysis};
use crate::bpf::bpf0_with;
use crate::combinat::{
    all_perms_limited, c_coeff_multi, MultiPartition, Partition, Perm, Word, WordMultiset,
};
use crate::error::Result;
use crate::limits::Limits;
use crate::poly::Polynomial;
use crate::tableau::Tableau;

/// Two sides of an exact identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityReport {
    pub lhs: Polynomial,
    pub rhs: Polynomial,
    pub equal: bool,
}

impl IdentityReport {
    pub fn new(lhs: Polynomial, rhs: Polynomial) -> Self {
        IdentityReport {
            equal: lhs == rhs,
            lhs,
            rhs,
        }
    }

    pub fn to_json(&self) -> Value {
        json!({"lhs": self.lhs.to_string(), "rhs": self.rhs.to_string(), "equal": self.equal})
    }
}

/// `g(T,τ) = sgn τ · bpf⁰_{T̃^τ} · tr(T_cl^τ)`.
fn g_value(t: &Tableau, a: &TauAnalysis, limits: &Limits) -> Result<Polynomial> {
    let b = bpf0_with(a.contracted()?, limits)?;
    Ok((&b * &a.closed_trace(t)?).scale(&a.tau.sign().into()))
}

/// `bpf⁰_T = Σ_{τ∈S_n} sgn τ · bpf⁰_{T̃^τ} · tr(T_cl^τ)`.
pub fn lemma2_check(t: &Tableau, q1: usize, q2: usize) -> Result<IdentityReport> {
    lemma2_check_with(t, q1, q2, &Limits::default())
}

pub fn lemma2_check_with(
    t: &Tableau,
    q1: usize,
    q2: usize,
    limits: &Limits,
) -> Result<IdentityReport> {
    let n = junction_height(t, q1, q2, limits)?;
    let mut rhs = Polynomial::zero();
    for tau in all_perms_limited(n, usize::MAX)? {
        let a = analyze(t, q1, q2, &tau)?;
        rhs += &g_value(t, &a, limits)?;
    }
    Ok(IdentityReport::new(bpf0_with(t, limits)?, rhs))
}

/// `λ̲(τ)`: for each primitive root of a closed word, the partition of
/// powers in which it occurs.
pub(crate) fn lambda_of(a: &TauAnalysis) -> MultiPartition {
    let mut powers: BTreeMap<Word, Vec<usize>> = BTreeMap::new();
    for w in &a.closed_words {
        let (root, k) = w.primitive_root();
        powers.entry(root.canon_ct()).or_default().push(k);
    }
    powers.into_values().map(Partition::from_parts).collect()
}

fn factorial(k: usize) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, i| acc * i)
}

/// `β̲! = Π_i β_i!` over the open word multiplicities.
pub(crate) fn beta_factorial(open: &WordMultiset) -> BigInt {
    open.entries()
        .map(|(_, k)| factorial(k))
        .fold(BigInt::one(), |acc, f| acc * f)
}

/// One class `S_τ` of permutations with equal path-word multisets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassInfo {
    pub representative: Perm,
    pub members: Vec<Perm>,
    pub open: WordMultiset,
    pub closed: WordMultiset,
    pub lambda: MultiPartition,
    pub beta_factorial: BigInt,
    pub c_lambda: BigInt,
    pub size_matches: bool,
    pub g_constant: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassCensus {
    pub n: usize,
    /// `c^{(q1,q2)}_T`, the label factorials over arrows touching the glued columns.
    pub c_q: BigInt,
    pub quadruple_count: usize,
    pub classes: Vec<ClassInfo>,
    /// Every permutation lies in the class of exactly one admissible quadruple
    /// and every quadruple is realized.
    pub disjoint_union: bool,
}

impl ClassCensus {
    pub fn sizes_match(&self) -> bool {
        self.classes.iter().all(|c| c.size_matches)
    }

    pub fn g_constant(&self) -> bool {
        self.classes.iter().all(|c| c.g_constant)
    }

    pub fn ok(&self) -> bool {
        self.disjoint_union && self.sizes_match() && self.g_constant()
    }

    pub fn to_json(&self) -> Value {
        let classes: Vec<Value> = self
            .classes
            .iter()
            .map(|c| {
                json!({
                    "representative": c.representative.to_string(),
                    "size": c.members.len(),
                    "lambda": c.lambda.iter().map(ToString::to_string).collect::<Vec<_>>(),
                    "beta_factorial": c.beta_factorial.to_string(),
                    "c_lambda": c.c_lambda.to_string(),
                    "size_matches": c.size_matches,
                    "g_constant": c.g_constant,
                })
            })
            .collect();
        json!({
            "n": self.n,
            "c_q": self.c_q.to_string(),
            "quadruple_count": self.quadruple_count,
            "disjoint_union": self.disjoint_union,
            "sizes_match": self.sizes_match(),
            "g_constant": self.g_constant(),
            "ok": self.ok(),
            "classes": classes,
        })
    }
}

pub fn class_partition_check(t: &Tableau, q1: usize, q2: usize) -> Result<ClassCensus> {
    class_partition_check_with(t, q1, q2, &Limits::default())
}

pub fn class_partition_check_with(
    t: &Tableau,
    q1: usize,
    q2: usize,
    limits: &Limits,
) -> Result<ClassCensus> {
    let n = junction_height(t, q1, q2, limits)?;
    limits.check_census(n)?;
    let quadruples = enumerate_quadruples_with(t, q1, q2, limits)?;
    let admissible: BTreeSet<(WordMultiset, WordMultiset)> = quadruples
        .quadruples
        .iter()
        .map(|q| (q.open.clone(), q.closed.clone()))
        .collect();
    let c_q = t.c_t_touching(q1, q2);

    let mut order: Vec<(WordMultiset, WordMultiset)> = Vec::new();
    let mut groups: BTreeMap<(WordMultiset, WordMultiset), Vec<(TauAnalysis, Polynomial)>> =
        BTreeMap::new();
    let mut realized = BTreeSet::new();
    let mut every_tau_admissible = true;
    for tau in all_perms_limited(n, usize::MAX)? {
        let a = analyze(t, q1, q2, &tau)?;
        let root_key = (a.open.clone(), a.closed_roots());
        every_tau_admissible &= admissible.contains(&root_key);
        realized.insert(root_key);
        let g = g_value(t, &a, limits)?;
        let key = (a.open.clone(), a.closed.clone());
        if !groups.contains_key(&key) {
            order.push(key.clone());
        }
        groups.entry(key).or_default().push((a, g));
    }
    let disjoint_union = every_tau_admissible && realized == admissible;

    let mut classes = Vec::new();
    for key in order {
        let members = &groups[&key];
        let (first, g0) = &members[0];
        let lambda = lambda_of(first);
        let beta_factorial = beta_factorial(&first.open);
        let c_lambda = c_coeff_multi(&lambda);
        let size = BigInt::from(members.len());
        classes.push(ClassInfo {
            representative: first.tau.clone(),
            members: members.iter().map(|(a, _)| a.tau.clone()).collect(),
            open: key.0.clone(),
            closed: key.1.clone(),
            size_matches: size * &beta_factorial * &c_lambda == c_q,
            g_constant: members.iter().all(|(_, g)| g == g0),
            lambda,
            beta_factorial,
            c_lambda,
        });
    }
    Ok(ClassCensus {
        n,
        c_q,
        quadruple_count: quadruples.quadruples.len(),
        classes,
        disjoint_union,
    })
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;

    #[test]
    fn single_cell() {
        let t = det_tableau(&[1]);
        let r = lemma2_check(&t, 1, 2).unwrap();
        assert!(r.equal);
        assert_eq!(r.lhs, Polynomial::entry(1, 1, 1));
        let c = class_partition_check(&t, 1, 2).unwrap();
        assert_eq!(c.classes.len(), 1);
        assert_eq!(c.classes[0].members.len(), 1);
        assert_eq!(c.c_q, BigInt::from(1));
        assert!(c.ok());
    }

    #[test]
    fn two_by_two_determinant() {
        let t = det_tableau(&[1, 2]);
        let r = lemma2_check(&t, 1, 2).unwrap();
        assert!(r.equal);
        assert_eq!(r.lhs.len(), 4);
        let c = class_partition_check(&t, 1, 2).unwrap();
        let sizes: Vec<usize> = c.classes.iter().map(|k| k.members.len()).collect();
        assert_eq!(sizes, vec![1, 1]);
        assert_eq!(c.c_q, BigInt::from(1));
        assert!(c.ok());
    }

    #[test]
    fn shared_label_classes() {
        let t = det_tableau(&[1, 1]);
        let c = class_partition_check(&t, 1, 2).unwrap();
        assert_eq!(c.c_q, BigInt::from(2));
        // id gives two closed words "1"; (12) gives "1·1", a proper power.
        assert_eq!(c.classes.len(), 2);
        assert_eq!(c.quadruple_count, 1);
        assert_eq!(c.classes[0].lambda, vec![Partition::from_parts(vec![1, 1])]);
        assert_eq!(c.classes[1].lambda, vec![Partition::from_parts(vec![2])]);
        assert!(c.ok(), "{}", c.to_json());
    }

    #[test]
    fn three_cells() {
        for labels in [[1, 1, 1], [1, 1, 2], [1, 2, 3]] {
            let t = det_tableau(&labels);
            assert!(lemma2_check(&t, 1, 2).unwrap().equal);
            assert!(class_partition_check(&t, 1, 2).unwrap().ok(), "{labels:?}");
        }
    }

    #[test]
    fn census_guard() {
        let t = pfaffian_pair(4);
        assert!(matches!(
            class_partition_check(&t, 1, 2),
            Err(crate::Error::Guard { .. })
        ));
    }
}
