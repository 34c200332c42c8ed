use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};

use super::Perm;

/// A weakly decreasing sequence of positive parts.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::Precondition(
                "partition parts must be positive".into(),
            ));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Precondition(format!(
                "{parts:?} is not weakly decreasing"
            )));
        }
        Ok(Partition(parts))
    }

    /// Sorts arbitrary positive parts into a partition.
    pub fn from_parts(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn weight(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "({})", s.join(","))
    }
}

/// A tuple of partitions `(λ_1, …, λ_q)`.
pub type MultiPartition = Vec<Partition>;

/// Every partition of `k`, in reverse-lexicographic order.
pub fn partitions(k: usize) -> Vec<Partition> {
    fn go(remaining: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        for part in (1..=remaining.min(max)).rev() {
            cur.push(part);
            go(remaining - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(k, k, &mut Vec::new(), &mut out);
    out
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// `c(λ) = λ_1 ⋯ λ_l · Π_k (#{i : λ_i = k})!`, the order of the centralizer
/// of a permutation of cycle type `λ`. Parts need not be sorted.
pub fn c_coeff(parts: &[usize]) -> Result<BigInt> {
    if parts.contains(&0) {
        return Err(Error::Precondition("c(λ) needs positive parts".into()));
    }
    let mut product: BigInt = parts.iter().fold(BigInt::one(), |acc, &p| acc * p);
    let mut sorted = parts.to_vec();
    sorted.sort_unstable();
    for run in sorted.chunk_by(|a, b| a == b) {
        product *= factorial(run.len());
    }
    Ok(product)
}

/// `c` of a multi-partition: the product over its components.
pub fn c_coeff_multi(lambda: &[Partition]) -> BigInt {
    lambda
        .iter()
        .map(|p| c_coeff(p.parts()).expect("partition parts are positive"))
        .fold(BigInt::one(), |acc, c| acc * c)
}

/// `ρ_ν = (1, …, ν_1)(ν_1 + 1, …, ν_1 + ν_2)⋯` on `[1, |ν|]`.
pub fn rho_nu(nu: &Partition) -> Perm {
    let mut images = Vec::with_capacity(nu.weight());
    let mut start = 0;
    for &part in nu.parts() {
        for k in 0..part {
            images.push(start + (k + 1) % part);
        }
        start += part;
    }
    Perm::from_images(images).expect("disjoint cycles form a permutation")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinat::all_perms;
    use std::collections::BTreeMap;

    #[test]
    fn partition_lists() {
        assert_eq!(partitions(0), vec![Partition(vec![])]);
        assert_eq!(
            partitions(3),
            vec![
                Partition(vec![3]),
                Partition(vec![2, 1]),
                Partition(vec![1, 1, 1])
            ]
        );
        let counts: Vec<usize> = (0..=6).map(|k| partitions(k).len()).collect();
        assert_eq!(counts, [1, 1, 2, 3, 5, 7, 11]);
        assert!(partitions(6).windows(2).all(|w| w[0] > w[1]));
    }

    #[test]
    fn c_values() {
        assert_eq!(c_coeff(&[1, 1]).unwrap(), BigInt::from(2));
        assert_eq!(c_coeff(&[2]).unwrap(), BigInt::from(2));
        assert_eq!(c_coeff(&[2, 1, 1]).unwrap(), BigInt::from(4));
        assert_eq!(c_coeff(&[1, 2, 1]).unwrap(), BigInt::from(4));
        assert!(c_coeff(&[2, 0]).is_err());
        let multi = vec![
            Partition::from_parts(vec![1, 1]),
            Partition::from_parts(vec![3]),
        ];
        assert_eq!(c_coeff_multi(&multi), BigInt::from(6));
    }

    /// c(ν) times the number of permutations of cycle type ν is γ!.
    #[test]
    fn c_is_centralizer_order() {
        for gamma in 0..=5 {
            let mut census: BTreeMap<Partition, usize> = BTreeMap::new();
            for p in all_perms(gamma).unwrap() {
                *census.entry(p.cycle_type()).or_default() += 1;
            }
            assert_eq!(census.len(), partitions(gamma).len());
            for (nu, count) in census {
                assert_eq!(
                    c_coeff(nu.parts()).unwrap() * count,
                    factorial(gamma),
                    "ν = {nu}"
                );
            }
        }
    }

    #[test]
    fn rho_examples() {
        let id = rho_nu(&Partition(vec![1, 1, 1]));
        assert!(id.is_identity());
        assert_eq!(id.sign(), 1);
        let t = rho_nu(&Partition(vec![2, 1]));
        assert_eq!(t.to_string(), "213");
        assert_eq!(t.sign(), -1);
        let c = rho_nu(&Partition(vec![3]));
        assert_eq!(c.to_string(), "231");
        assert_eq!(c.sign(), 1);
        for gamma in 1..=5 {
            for nu in partitions(gamma) {
                let rho = rho_nu(&nu);
                let expected = if (gamma - nu.len()) % 2 == 0 { 1 } else { -1 };
                assert_eq!(rho.sign(), expected);
                assert_eq!(rho.cycle_type(), nu);
            }
        }
    }
}
