use std::fmt;

use crate::error::{Error, Result};

use super::Partition;

/// Largest `n` for which [`all_perms`] enumerates `S_n` without an explicit
/// override.
pub const MAX_PERM_ORDER: usize = 8;

/// A bijection of `{0, …, n−1}` in one-line notation.
///
/// Displayed 1-based, matching the usual `[1, n]` convention. Composition
/// follows `(f ∘ g)(x) = f(g(x))`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Perm(Vec<usize>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n).collect())
    }

    /// From 0-based images.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || std::mem::replace(&mut seen[i], true) {
                return Err(Error::Precondition(format!(
                    "{images:?} is not a permutation"
                )));
            }
        }
        Ok(Perm(images))
    }

    /// From 1-based one-line notation, e.g. `[2, 1, 3]`.
    pub fn from_one_line(images: &[usize]) -> Result<Self> {
        if images.contains(&0) {
            return Err(Error::Precondition("one-line notation is 1-based".into()));
        }
        Self::from_images(images.iter().map(|i| i - 1).collect())
    }

    /// The cycle `(c_1, c_2, …, c_k)` on `[1, n]`, 1-based.
    pub fn cycle(n: usize, elems: &[usize]) -> Result<Self> {
        let mut images: Vec<usize> = (0..n).collect();
        for (k, &e) in elems.iter().enumerate() {
            let next = elems[(k + 1) % elems.len()];
            if e == 0 || e > n || next == 0 || next > n {
                return Err(Error::OutOfRange(format!("cycle element outside [1,{n}]")));
            }
            images[e - 1] = next - 1;
        }
        Self::from_images(images)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// `+1` or `−1` according to the parity of the inversion count.
    pub fn sign(&self) -> i32 {
        let mut inversions = 0usize;
        for i in 0..self.0.len() {
            for j in i + 1..self.0.len() {
                if self.0[i] > self.0[j] {
                    inversions += 1;
                }
            }
        }
        if inversions.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Perm) -> Perm {
        assert_eq!(
            self.len(),
            other.len(),
            "composing permutations of different degrees"
        );
        Perm(other.0.iter().map(|&i| self.0[i]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j] = i;
        }
        Perm(inv)
    }

    /// Cycle lengths, sorted into a partition.
    pub fn cycle_type(&self) -> Partition {
        let n = self.0.len();
        let mut seen = vec![false; n];
        let mut parts = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.0[i];
                len += 1;
            }
            parts.push(len);
        }
        Partition::from_parts(parts)
    }

    /// Advances to the lexicographically next arrangement; `false` at the end.
    fn next_lex(&mut self) -> bool {
        let v = &mut self.0;
        if v.len() < 2 {
            return false;
        }
        let mut i = v.len() - 1;
        while i > 0 && v[i - 1] >= v[i] {
            i -= 1;
        }
        if i == 0 {
            return false;
        }
        let mut j = v.len() - 1;
        while v[j] <= v[i - 1] {
            j -= 1;
        }
        v.swap(i - 1, j);
        v[i..].reverse();
        true
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.0.len() > 9 { " " } else { "" };
        let s: Vec<String> = self.0.iter().map(|i| (i + 1).to_string()).collect();
        write!(f, "{}", s.join(sep))
    }
}

/// All of `S_n` in lexicographic one-line order, guarded at [`MAX_PERM_ORDER`].
pub fn all_perms(n: usize) -> Result<Vec<Perm>> {
    all_perms_limited(n, MAX_PERM_ORDER)
}

pub fn all_perms_limited(n: usize, limit: usize) -> Result<Vec<Perm>> {
    if n > limit {
        return Err(Error::Guard {
            what: "permutation order",
            value: n,
            limit,
        });
    }
    let mut p = Perm::identity(n);
    let mut out = vec![p.clone()];
    while p.next_lex() {
        out.push(p.clone());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_enumerations() {
        let s0 = all_perms(0).unwrap();
        assert_eq!(s0.len(), 1);
        assert!(s0[0].is_empty());
        let s2 = all_perms(2).unwrap();
        assert_eq!(
            s2.iter().map(ToString::to_string).collect::<Vec<_>>(),
            ["12", "21"]
        );
        assert_eq!(s2.iter().map(Perm::sign).collect::<Vec<_>>(), [1, -1]);
        let s4 = all_perms(4).unwrap();
        assert_eq!(s4.len(), 24);
        assert_eq!(s4.iter().filter(|p| p.sign() == 1).count(), 12);
        assert!(s4.windows(2).all(|w| w[0] < w[1]));
        assert!(matches!(all_perms(9), Err(Error::Guard { .. })));
    }

    #[test]
    fn sign_is_a_homomorphism() {
        let s4 = all_perms(4).unwrap();
        for p in &s4 {
            for q in &s4 {
                assert_eq!(p.compose(q).sign(), p.sign() * q.sign());
            }
            assert!(p.compose(&p.inverse()).is_identity());
        }
    }

    #[test]
    fn composition_convention() {
        // f = (1,2), g = (2,3): f∘g sends 3 ↦ g ↦ 2 ↦ f ↦ 1.
        let f = Perm::cycle(3, &[1, 2]).unwrap();
        let g = Perm::cycle(3, &[2, 3]).unwrap();
        assert_eq!(f.compose(&g).apply(2), 0);
        assert_eq!(Perm::cycle(3, &[1, 2, 3]).unwrap().to_string(), "231");
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Perm::from_images(vec![0, 0]).is_err());
        assert!(Perm::from_one_line(&[0, 1]).is_err());
        assert!(Perm::from_one_line(&[2, 1]).is_ok());
    }
}
