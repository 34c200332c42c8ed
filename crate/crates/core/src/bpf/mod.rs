//! Pfaffians, partial linearizations and the permutation sums `bpf_T`,
//! `bpf⁰_T` of a tableau with substitution.

mod blocks;

use std::collections::BTreeMap;

use num_bigint::BigInt;

use crate::combinat::{all_perms_limited, Perm};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::matrix::SymMatrix;
use crate::poly::Polynomial;
use crate::tableau::{Arrow, Tableau};

pub use blocks::{block_embed, bplp_from_tableau, tableau_from_bplp, BlockSpec, BlockTerm, Bplp};

fn even_square(x: &SymMatrix) -> Result<usize> {
    if !x.is_square() {
        return Err(Error::NotSquare {
            rows: x.rows(),
            cols: x.cols(),
        });
    }
    if x.rows() % 2 == 1 {
        return Err(Error::OddOrder(x.rows()));
    }
    Ok(x.rows())
}

/// Perfect matchings of `0..n` as one-line images `π(1), π(2), …` with
/// `π(1) < π(3) < ⋯` and `π(2i−1) < π(2i)`.
fn ordered_matchings(n: usize) -> Vec<Vec<usize>> {
    fn rec(free: &mut Vec<usize>, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if free.is_empty() {
            out.push(cur.clone());
            return;
        }
        let first = free.remove(0);
        for k in 0..free.len() {
            let partner = free.remove(k);
            cur.push(first);
            cur.push(partner);
            rec(free, cur, out);
            cur.truncate(cur.len() - 2);
            free.insert(k, partner);
        }
        free.insert(0, first);
    }
    let mut out = Vec::new();
    rec(&mut (0..n).collect(), &mut Vec::with_capacity(n), &mut out);
    out
}

/// The pfaffian as a signed sum over perfect matchings. Only the entries
/// above the diagonal selected by each matching are read.
pub fn pf_skew(x: &SymMatrix) -> Result<Polynomial> {
    let n = even_square(x)?;
    let mut acc = Polynomial::zero();
    for m in ordered_matchings(n) {
        let sign = Perm::from_images(m.clone())?.sign();
        let mut term = Polynomial::one();
        for pair in m.chunks(2) {
            term = &term * x.get(pair[0], pair[1]);
            if term.is_zero() {
                break;
            }
        }
        term.add_scaled_into(&mut acc, &BigInt::from(sign));
    }
    Ok(acc)
}

/// `P(X) = pf(X − Xᵗ)` for an arbitrary square matrix of even order.
pub fn gen_pf(x: &SymMatrix) -> Result<Polynomial> {
    even_square(x)?;
    pf_skew(&x.sub(&x.transpose())?)
}

/// Matrices `X_1, …, X_s` with multiplicities `k_1, …, k_s`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearizationSpec {
    pub matrices: Vec<SymMatrix>,
    pub ks: Vec<usize>,
}

impl LinearizationSpec {
    pub fn new(matrices: Vec<SymMatrix>, ks: Vec<usize>) -> Result<Self> {
        if matrices.len() != ks.len() || matrices.is_empty() {
            return Err(Error::Precondition(format!(
                "{} matrices but {} multiplicities",
                matrices.len(),
                ks.len()
            )));
        }
        if ks.contains(&0) {
            return Err(Error::Precondition(
                "multiplicities must be positive".into(),
            ));
        }
        let shape = matrices[0].shape();
        if shape.0 != shape.1 {
            return Err(Error::NotSquare {
                rows: shape.0,
                cols: shape.1,
            });
        }
        if let Some(m) = matrices.iter().find(|m| m.shape() != shape) {
            return Err(Error::Shape(format!(
                "{}x{} among {}x{} matrices",
                m.rows(),
                m.cols(),
                shape.0,
                shape.1
            )));
        }
        Ok(LinearizationSpec { matrices, ks })
    }

    pub fn order(&self) -> usize {
        self.matrices[0].rows()
    }

    /// `Σ_r t(r)·X_r` with scalar variables numbered from 1.
    fn combination(&self) -> Result<SymMatrix> {
        let mut acc = SymMatrix::zeros(self.order(), self.order());
        for (r, m) in self.matrices.iter().enumerate() {
            acc = acc.add(&m.scale_by_scalar_var(r as u32 + 1))?;
        }
        Ok(acc)
    }

    fn scalar_powers(&self) -> BTreeMap<u32, u32> {
        self.ks
            .iter()
            .enumerate()
            .map(|(r, &k)| (r as u32 + 1, k as u32))
            .collect()
    }
}

/// `P_{k_1,…,k_s}(X_1, …, X_s)`: the coefficient of `Π t_r^{k_r}` in
/// `P(Σ t_r X_r)`.
pub fn partial_lin_pf(spec: &LinearizationSpec) -> Result<Polynomial> {
    let n = spec.order();
    if n % 2 == 1 {
        return Err(Error::OddOrder(n));
    }
    let total: usize = spec.ks.iter().sum();
    if 2 * total != n {
        return Err(Error::Precondition(format!(
            "multiplicities sum to {total}, expected {}",
            n / 2
        )));
    }
    Ok(gen_pf(&spec.combination()?)?.coefficient_of(&spec.scalar_powers()))
}

/// `det_{k_1,…,k_s}(X_1, …, X_s)`: the coefficient of `Π t_r^{k_r}` in
/// `det(Σ t_r X_r)`.
pub fn partial_lin_det(spec: &LinearizationSpec) -> Result<Polynomial> {
    let n = spec.order();
    let total: usize = spec.ks.iter().sum();
    if total != n {
        return Err(Error::Precondition(format!(
            "multiplicities sum to {total}, expected {n}"
        )));
    }
    Ok(spec
        .combination()?
        .det()?
        .coefficient_of(&spec.scalar_powers()))
}

/// Permutations of one column allowed by the ordering condition: tails of
/// equally labelled arrows keep their relative order.
fn column_perms(t: &Tableau, col: usize, constrained: bool, limits: &Limits) -> Result<Vec<Perm>> {
    let n = t.dims()[col - 1];
    limits.check_perm_order(n)?;
    let all = all_perms_limited(n, usize::MAX)?;
    if !constrained {
        return Ok(all);
    }
    let mut tails: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
    for a in t.arrows().iter().filter(|a| a.tail.col == col) {
        tails.entry(a.label).or_default().push(a.tail.row - 1);
    }
    for rows in tails.values_mut() {
        rows.sort_unstable();
    }
    Ok(all
        .into_iter()
        .filter(|p| {
            tails
                .values()
                .all(|rows| rows.windows(2).all(|w| p.apply(w[0]) < p.apply(w[1])))
        })
        .collect())
}

struct Evaluator<'a> {
    t: &'a Tableau,
    perms: Vec<Vec<Perm>>,
    /// Arrows whose later endpoint column is `c`, indexed by `c − 1`.
    closing: Vec<Vec<&'a Arrow>>,
    chosen: Vec<usize>,
    acc: Polynomial,
}

impl Evaluator<'_> {
    fn rec(&mut self, col: usize, partial: &Polynomial, sign: i32) {
        if col == self.perms.len() {
            partial.add_scaled_into(&mut self.acc, &BigInt::from(sign));
            return;
        }
        for idx in 0..self.perms[col].len() {
            self.chosen[col] = idx;
            let p_sign = self.perms[col][idx].sign();
            let mut term = partial.clone();
            for a in &self.closing[col] {
                let pt = &self.perms[a.tail.col - 1][self.chosen[a.tail.col - 1]];
                let ph = &self.perms[a.head.col - 1][self.chosen[a.head.col - 1]];
                let x = self
                    .t
                    .matrix(a.label)
                    .expect("validated tableau has every matrix");
                term = &term * x.get(pt.apply(a.tail.row - 1), ph.apply(a.head.row - 1));
                if term.is_zero() {
                    break;
                }
            }
            if !term.is_zero() {
                self.rec(col + 1, &term, sign * p_sign);
            }
        }
    }
}

fn perm_sum(t: &Tableau, constrained: bool, limits: &Limits) -> Result<Polynomial> {
    let v = t.validate();
    if !v.is_empty() {
        return Err(Error::InvalidTableau(
            v.iter().map(ToString::to_string).collect(),
        ));
    }
    let m = t.columns();
    let perms = (1..=m)
        .map(|c| column_perms(t, c, constrained, limits))
        .collect::<Result<Vec<_>>>()?;
    let mut closing = vec![Vec::new(); m];
    for a in t.arrows() {
        closing[a.tail.col.max(a.head.col) - 1].push(a);
    }
    let mut ev = Evaluator {
        t,
        perms,
        closing,
        chosen: vec![0; m],
        acc: Polynomial::zero(),
    };
    ev.rec(0, &Polynomial::one(), 1);
    Ok(ev.acc)
}

/// `bpf⁰_T`: the free sum over all tuples `(π_1, …, π_m)`.
pub fn bpf0(t: &Tableau) -> Result<Polynomial> {
    bpf0_with(t, &Limits::default())
}

pub fn bpf0_with(t: &Tableau, limits: &Limits) -> Result<Polynomial> {
    perm_sum(t, false, limits)
}

/// `bpf_T`: the sum restricted to tuples that keep the tails of equally
/// labelled arrows in order. The empty tableau gives 1.
pub fn bpf(t: &Tableau) -> Result<Polynomial> {
    bpf_with(t, &Limits::default())
}

pub fn bpf_with(t: &Tableau, limits: &Limits) -> Result<Polynomial> {
    perm_sum(t, true, limits)
}

/// `c_T = Π_j (#arrows labelled j)!`.
pub fn c_t(t: &Tableau) -> BigInt {
    t.c_t()
}

#[cfg(test)]
mod tests {
    use num_rational::BigRational;
    use num_traits::One;

    use super::*;
    use crate::combinat::all_perms;
    use crate::poly::RatPolynomial;

    fn x(label: u32, n: usize) -> SymMatrix {
        SymMatrix::generic(label, n, n)
    }

    fn e(label: u32, i: u32, j: u32) -> Polynomial {
        Polynomial::entry(label, i, j)
    }

    /// Skew-symmetric generic matrix with entries `x_{ij}(1)` above the diagonal.
    fn skew(n: usize) -> SymMatrix {
        SymMatrix::from_fn(n, n, |i, j| match i.cmp(&j) {
            std::cmp::Ordering::Less => e(1, i as u32 + 1, j as u32 + 1),
            std::cmp::Ordering::Greater => -e(1, j as u32 + 1, i as u32 + 1),
            std::cmp::Ordering::Equal => Polynomial::zero(),
        })
    }

    /// One column of height `n` with arrows `(1,2i−1) → (1,2i)`; labels
    /// follow `labels`.
    fn one_column(labels: &[u32], subst: &[SymMatrix]) -> Tableau {
        let n = 2 * labels.len();
        let arrows = labels
            .iter()
            .enumerate()
            .map(|(i, &l)| Arrow::new(i, (1, 2 * i + 1), (1, 2 * i + 2), l))
            .collect();
        let sub = subst
            .iter()
            .enumerate()
            .map(|(j, m)| (j as u32 + 1, m.clone()))
            .collect();
        let t = Tableau::new(vec![n], arrows, sub);
        t.checked().unwrap()
    }

    /// Two columns of height `n` with arrows `(1,i) → (2,i)`.
    fn two_columns(labels: &[u32], subst: &[SymMatrix]) -> Tableau {
        let n = labels.len();
        let arrows = labels
            .iter()
            .enumerate()
            .map(|(i, &l)| Arrow::new(i, (1, i + 1), (2, i + 1), l))
            .collect();
        let sub = subst
            .iter()
            .enumerate()
            .map(|(j, m)| (j as u32 + 1, m.clone()))
            .collect();
        Tableau::new(vec![n, n], arrows, sub).checked().unwrap()
    }

    #[test]
    fn pf_small() {
        let a = Polynomial::entry(1, 1, 2);
        let m = SymMatrix::from_rows(vec![
            vec![Polynomial::zero(), a.clone()],
            vec![-a.clone(), Polynomial::zero()],
        ])
        .unwrap();
        assert_eq!(pf_skew(&m).unwrap(), a);
        let four = pf_skew(&x(1, 4)).unwrap();
        let expected =
            &(&e(1, 1, 2) * &e(1, 3, 4)) - &(&e(1, 1, 3) * &e(1, 2, 4)) + &e(1, 1, 4) * &e(1, 2, 3);
        assert_eq!(four, expected);
        assert_eq!(pf_skew(&x(1, 3)), Err(Error::OddOrder(3)));
    }

    #[test]
    fn pf_squared_is_det() {
        for n in [2, 4] {
            let s = skew(n);
            let pf = pf_skew(&s).unwrap();
            assert_eq!(&pf * &pf, s.det().unwrap());
        }
    }

    #[test]
    fn generalized_pfaffian() {
        assert_eq!(gen_pf(&x(1, 2)).unwrap(), &e(1, 1, 2) - &e(1, 2, 1));
        for n in [2usize, 4] {
            let s = skew(n);
            assert_eq!(
                gen_pf(&s).unwrap(),
                pf_skew(&s).unwrap().scale(&BigInt::from(1u32 << (n / 2)))
            );
        }
        let sym = SymMatrix::from_fn(4, 4, |i, j| e(1, i.min(j) as u32 + 1, i.max(j) as u32 + 1));
        assert!(gen_pf(&sym).unwrap().is_zero());
    }

    #[test]
    fn linearization_extremes() {
        let spec = LinearizationSpec::new(vec![x(1, 4)], vec![2]).unwrap();
        assert_eq!(partial_lin_pf(&spec).unwrap(), gen_pf(&x(1, 4)).unwrap());
        let spec = LinearizationSpec::new(vec![x(1, 3)], vec![3]).unwrap();
        assert_eq!(partial_lin_det(&spec).unwrap(), x(1, 3).det().unwrap());
        assert!(partial_lin_pf(&LinearizationSpec::new(vec![x(1, 4)], vec![1]).unwrap()).is_err());
    }

    #[test]
    fn det_linearization_two_by_two() {
        let spec = LinearizationSpec::new(vec![x(1, 2), x(2, 2)], vec![1, 1]).unwrap();
        let expected = &e(1, 1, 1) * &e(2, 2, 2) + &e(2, 1, 1) * &e(1, 2, 2)
            - &e(1, 1, 2) * &e(2, 2, 1)
            - &e(2, 1, 2) * &e(1, 2, 1);
        assert_eq!(partial_lin_det(&spec).unwrap(), expected);
    }

    /// Normalized permutation sum over ℚ for `P_{k_1,…,k_s}`.
    fn normalized_sum(spec: &LinearizationSpec) -> RatPolynomial {
        let n = spec.order();
        let mut labels = Vec::new();
        for (j, &k) in spec.ks.iter().enumerate() {
            labels.extend(std::iter::repeat_n(j, k));
        }
        let mut acc = RatPolynomial::zero();
        for p in all_perms(n).unwrap() {
            let mut term = Polynomial::from_int(p.sign() as i64);
            for (i, &j) in labels.iter().enumerate() {
                term = &term * spec.matrices[j].get(p.apply(2 * i), p.apply(2 * i + 1));
            }
            acc += &term.to_rational();
        }
        let c: BigInt = spec
            .ks
            .iter()
            .map(|&k| (1..=k).product::<usize>())
            .map(BigInt::from)
            .product();
        acc.scale(&BigRational::from_integer(c).recip())
    }

    #[test]
    fn coefficient_matches_normalized_sum() {
        for ks in [vec![1, 1], vec![2]] {
            let mats = (1..=ks.len() as u32).map(|j| x(j, 4)).collect();
            let spec = LinearizationSpec::new(mats, ks).unwrap();
            assert_eq!(
                partial_lin_pf(&spec).unwrap().to_rational(),
                normalized_sum(&spec)
            );
        }
        let spec = LinearizationSpec::new(vec![x(1, 6), x(2, 6)], vec![2, 1]).unwrap();
        assert_eq!(
            partial_lin_pf(&spec).unwrap().to_rational(),
            normalized_sum(&spec)
        );
    }

    #[test]
    fn one_column_is_generalized_pfaffian() {
        let t = one_column(&[1, 1], &[x(1, 4)]);
        assert_eq!(bpf(&t).unwrap(), gen_pf(&x(1, 4)).unwrap());
        let single = one_column(&[1], &[x(1, 2)]);
        assert_eq!(bpf0(&single).unwrap(), &e(1, 1, 2) - &e(1, 2, 1));
    }

    #[test]
    fn one_column_is_partial_linearization() {
        for labels in [vec![1, 2], vec![1, 1], vec![2, 1]] {
            let s = *labels.iter().max().unwrap();
            let mats: Vec<_> = (1..=s).map(|j| x(j, 4)).collect();
            let ks = (1..=s)
                .map(|j| labels.iter().filter(|&&l| l == j).count())
                .collect();
            let t = one_column(&labels, &mats);
            let spec = LinearizationSpec::new(mats, ks).unwrap();
            assert_eq!(
                bpf(&t).unwrap(),
                partial_lin_pf(&spec).unwrap(),
                "labels {labels:?}"
            );
        }
    }

    #[test]
    fn two_columns_give_determinant() {
        let t = two_columns(&[1, 1, 1], &[x(1, 3)]);
        assert_eq!(bpf(&t).unwrap(), x(1, 3).det().unwrap());
        let t2 = two_columns(&[1, 1], &[x(1, 2)]);
        assert_eq!(
            bpf0(&t2).unwrap(),
            x(1, 2).det().unwrap().scale(&BigInt::from(2))
        );
        for labels in [vec![1, 2, 2], vec![1, 1, 2], vec![1, 2, 3]] {
            let s = *labels.iter().max().unwrap();
            let mats: Vec<_> = (1..=s).map(|j| x(j, 3)).collect();
            let ks = (1..=s)
                .map(|j| labels.iter().filter(|&&l| l == j).count())
                .collect();
            let t = two_columns(&labels, &mats);
            let spec = LinearizationSpec::new(mats, ks).unwrap();
            assert_eq!(
                bpf(&t).unwrap(),
                partial_lin_det(&spec).unwrap(),
                "labels {labels:?}"
            );
        }
    }

    #[test]
    fn identity_gives_sigma() {
        for (n, k) in [(2, 1), (3, 1), (3, 2), (4, 2), (4, 3)] {
            let labels: Vec<u32> = (0..n).map(|i| if i < k { 1 } else { 2 }).collect();
            let t = two_columns(&labels, &[x(1, n), SymMatrix::identity(n)]);
            assert_eq!(bpf(&t).unwrap(), x(1, n).sigma(k).unwrap(), "n={n} k={k}");
        }
        let t = two_columns(&[1, 2], &[x(1, 2), SymMatrix::identity(2)]);
        assert_eq!(bpf(&t).unwrap(), &e(1, 1, 1) + &e(1, 2, 2));
    }

    #[test]
    fn free_sum_is_c_t_times_constrained() {
        let t = crate::tableau::Tableau::generic_from_triples(
            &[5, 3],
            &[
                ((1, 1), (2, 1), 1),
                ((1, 2), (1, 3), 2),
                ((1, 4), (1, 5), 2),
                ((2, 2), (2, 3), 3),
            ],
        )
        .unwrap();
        assert_eq!(c_t(&t), BigInt::from(2));
        let b = bpf(&t).unwrap();
        assert_eq!(bpf0(&t).unwrap(), b.scale(&c_t(&t)));
        assert!(b.terms().all(|(_, c)| c.is_one() || (-c).is_one()));
    }

    #[test]
    fn guard() {
        let t = one_column(&[1; 5], &[x(1, 10)]);
        assert!(matches!(bpf(&t), Err(Error::Guard { .. })));
    }
}
