//! Closed forms for partial linearizations of the determinant and for the
//! product of two pfaffians.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::combinat::{Letter, Word};
use crate::error::{Error, Result};
use crate::matrix::{MaybeMatrix, SymMatrix};
use crate::poly::Polynomial;
use crate::tableau::eval_word;

/// One signed product `± σ_{i_1}(c_1) ⋯ σ_{i_q}(c_q)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorollaryTerm {
    pub words: Vec<(Word, usize)>,
    pub sign: i32,
    pub value: Polynomial,
}

impl CorollaryTerm {
    pub fn to_json(&self) -> Value {
        json!({
            "words": self.words.iter().map(|(w, i)| json!({"word": w.to_string(), "power": i})).collect::<Vec<_>>(),
            "sign": self.sign,
            "term": self.value.to_string(),
        })
    }
}

/// Every multiset `{c_1^{i_1}, …}` drawn from `words` whose weights
/// `Σ i_j · weight(c_j)` equal `target`.
fn weighted_multisets(weights: &[Vec<usize>], target: &[usize]) -> Vec<Vec<(usize, usize)>> {
    fn go(
        idx: usize,
        weights: &[Vec<usize>],
        remaining: &mut Vec<usize>,
        cur: &mut Vec<(usize, usize)>,
        out: &mut Vec<Vec<(usize, usize)>>,
    ) {
        if remaining.iter().all(|&r| r == 0) {
            out.push(cur.clone());
            return;
        }
        if idx == weights.len() {
            return;
        }
        go(idx + 1, weights, remaining, cur, out);
        let w = &weights[idx];
        let mut i = 0;
        while w.iter().zip(remaining.iter()).all(|(a, r)| a <= r) {
            for (r, a) in remaining.iter_mut().zip(w) {
                *r -= a;
            }
            i += 1;
            cur.push((idx, i));
            go(idx + 1, weights, remaining, cur, out);
            cur.pop();
        }
        for (r, a) in remaining.iter_mut().zip(w) {
            *r += a * i;
        }
    }
    let mut out = Vec::new();
    go(0, weights, &mut target.to_vec(), &mut Vec::new(), &mut out);
    out
}

/// Sequences over `alphabet` of every length up to `max_len`.
fn sequences<T: Clone>(alphabet: &[T], max_len: usize) -> Vec<Vec<T>> {
    let mut out = Vec::new();
    let mut layer: Vec<Vec<T>> = vec![Vec::new()];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|s| {
                alphabet.iter().map(move |a| {
                    let mut next = s.clone();
                    next.push(a.clone());
                    next
                })
            })
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

fn square_product(w: &Word, substitution: &BTreeMap<u32, SymMatrix>) -> Result<SymMatrix> {
    match eval_word(w, substitution)? {
        MaybeMatrix::Matrix(m) => Ok(m),
        MaybeMatrix::Zero => Err(Error::Precondition(format!(
            "word {w} has an ill-defined product"
        ))),
    }
}

fn sigma_product(
    picks: &[(usize, usize)],
    words: &[Word],
    substitution: &BTreeMap<u32, SymMatrix>,
) -> Result<Polynomial> {
    let mut acc = Polynomial::one();
    for &(j, i) in picks {
        acc = &acc * &square_product(&words[j], substitution)?.sigma(i)?;
    }
    Ok(acc)
}

fn same_square_order(xs: &[&SymMatrix]) -> Result<usize> {
    let first = xs
        .first()
        .ok_or_else(|| Error::Precondition("no matrices given".into()))?;
    if !first.is_square() {
        return Err(Error::NotSquare {
            rows: first.rows(),
            cols: first.cols(),
        });
    }
    if let Some(m) = xs.iter().find(|m| m.shape() != first.shape()) {
        return Err(Error::Shape(format!(
            "{}x{} among {}x{} matrices",
            m.rows(),
            m.cols(),
            first.rows(),
            first.cols()
        )));
    }
    Ok(first.rows())
}

/// `det_{k_1,…,k_s}(X_1,…,X_s) = Σ (−1)^{n+Σi} σ_{i_1}(c_1) ⋯ σ_{i_q}(c_q)` over
/// multisets of pairwise non-conjugate primitive words with
/// `Σ_j i_j · deg_{X_r} c_j = k_r`.
pub fn amitsur_det(xs: &[SymMatrix], ks: &[usize]) -> Result<Polynomial> {
    Ok(amitsur_det_terms(xs, ks)?
        .into_iter()
        .map(|t| t.value)
        .sum())
}

pub fn amitsur_det_terms(xs: &[SymMatrix], ks: &[usize]) -> Result<Vec<CorollaryTerm>> {
    let n = same_square_order(&xs.iter().collect::<Vec<_>>())?;
    if xs.len() != ks.len() {
        return Err(Error::Precondition(format!(
            "{} matrices but {} multiplicities",
            xs.len(),
            ks.len()
        )));
    }
    if ks.iter().sum::<usize>() != n {
        return Err(Error::Precondition(format!(
            "multiplicities sum to {}, expected {n}",
            ks.iter().sum::<usize>()
        )));
    }
    let labels: Vec<u32> = (1..=xs.len() as u32).collect();
    let substitution: BTreeMap<u32, SymMatrix> =
        labels.iter().copied().zip(xs.iter().cloned()).collect();
    let alphabet: Vec<Letter> = labels.iter().map(|&l| Letter::new(l)).collect();
    let degrees = |w: &Word| -> Vec<usize> { labels.iter().map(|&l| w.degree_plain(l)).collect() };
    let words: Vec<Word> = sequences(&alphabet, n)
        .into_iter()
        .map(|s| Word::new(s).expect("non-empty"))
        .filter(|w| {
            w.is_primitive() && w.canon_c() == *w && degrees(w).iter().zip(ks).all(|(d, k)| d <= k)
        })
        .collect();
    let weights: Vec<Vec<usize>> = words.iter().map(degrees).collect();
    let mut out = Vec::new();
    for picks in weighted_multisets(&weights, ks) {
        let total: usize = picks.iter().map(|&(_, i)| i).sum();
        let sign = if (n + total).is_multiple_of(2) { 1 } else { -1 };
        let value = sigma_product(&picks, &words, &substitution)?.scale(&sign.into());
        out.push(CorollaryTerm {
            words: picks.iter().map(|&(j, i)| (words[j].clone(), i)).collect(),
            sign,
            value,
        });
    }
    Ok(out)
}

/// `P(Y)·P(Z)` as a signed sum of `σ`-products of primitive words built
/// from blocks `AB`, `A ∈ {Y, Yᵗ}`, `B ∈ {Z, Zᵗ}`, taken modulo rotation
/// and transpose.
pub fn pfaffian_product(y: &SymMatrix, z: &SymMatrix) -> Result<Polynomial> {
    Ok(pfaffian_product_terms(y, z)?
        .into_iter()
        .map(|t| t.value)
        .sum())
}

pub fn pfaffian_product_terms(y: &SymMatrix, z: &SymMatrix) -> Result<Vec<CorollaryTerm>> {
    let n = same_square_order(&[y, z])?;
    if n % 2 == 1 {
        return Err(Error::OddOrder(n));
    }
    let half = n / 2;
    let substitution: BTreeMap<u32, SymMatrix> =
        [(1, y.clone()), (2, z.clone())].into_iter().collect();
    let blocks: Vec<[Letter; 2]> = [Letter::new(1), Letter::t(1)]
        .into_iter()
        .flat_map(|a| [Letter::new(2), Letter::t(2)].map(|b| [a, b]))
        .collect();
    let words: Vec<Word> = sequences(&blocks, half)
        .into_iter()
        .map(|s| Word::new(s.concat()).expect("non-empty"))
        .filter(|w| w.is_primitive() && w.canon_ct() == *w)
        .collect();
    let weights: Vec<Vec<usize>> = words.iter().map(|w| vec![w.len() / 2]).collect();
    let mut out = Vec::new();
    for picks in weighted_multisets(&weights, &[half]) {
        let exponent: usize = picks
            .iter()
            .map(|&(j, i)| i * (words[j].degree_plain(1) + words[j].degree_plain(2) + 1))
            .sum();
        let sign = if exponent.is_multiple_of(2) { 1 } else { -1 };
        let value = sigma_product(&picks, &words, &substitution)?.scale(&sign.into());
        out.push(CorollaryTerm {
            words: picks.iter().map(|&(j, i)| (words[j].clone(), i)).collect(),
            sign,
            value,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::x;
    use super::*;
    use crate::bpf::{gen_pf, partial_lin_det, LinearizationSpec};

    fn tr(w: &str, subst: &BTreeMap<u32, SymMatrix>) -> Polynomial {
        eval_word(&w.parse().unwrap(), subst)
            .unwrap()
            .trace()
            .unwrap()
    }

    fn splits(n: usize, s: usize) -> Vec<Vec<usize>> {
        if s == 1 {
            return if n > 0 { vec![vec![n]] } else { vec![] };
        }
        (1..n)
            .flat_map(|k| {
                splits(n - k, s - 1).into_iter().map(move |mut rest| {
                    rest.insert(0, k);
                    rest
                })
            })
            .collect()
    }

    #[test]
    fn amitsur_two_by_two() {
        let (a, b) = (x(1, 2), x(2, 2));
        let subst: BTreeMap<u32, SymMatrix> =
            [(1, a.clone()), (2, b.clone())].into_iter().collect();
        let expected = &(&tr("1", &subst) * &tr("2", &subst)) - &tr("1·2", &subst);
        assert_eq!(amitsur_det(&[a.clone(), b], &[1, 1]).unwrap(), expected);
        assert_eq!(
            amitsur_det(std::slice::from_ref(&a), &[2]).unwrap(),
            a.det().unwrap()
        );
    }

    #[test]
    fn amitsur_matches_partial_linearization() {
        for (n, s) in [(2, 2), (3, 2), (3, 3)] {
            let xs: Vec<SymMatrix> = (1..=s as u32).map(|l| x(l, n)).collect();
            for ks in splits(n, s) {
                let brute =
                    partial_lin_det(&LinearizationSpec::new(xs.clone(), ks.clone()).unwrap())
                        .unwrap();
                assert_eq!(amitsur_det(&xs, &ks).unwrap(), brute, "n={n} ks={ks:?}");
            }
        }
    }

    #[test]
    fn amitsur_rejects_bad_multiplicities() {
        assert!(amitsur_det(&[x(1, 2), x(2, 2)], &[1, 2]).is_err());
        assert!(amitsur_det(&[x(1, 2)], &[1, 1]).is_err());
    }

    #[test]
    fn pfaffian_product_order_two() {
        let (y, z) = (x(1, 2), x(2, 2));
        let subst: BTreeMap<u32, SymMatrix> =
            [(1, y.clone()), (2, z.clone())].into_iter().collect();
        let value = pfaffian_product(&y, &z).unwrap();
        assert_eq!(value, &tr("1·2^t", &subst) - &tr("1·2", &subst));
        assert_eq!(value, &gen_pf(&y).unwrap() * &gen_pf(&z).unwrap());
    }

    #[test]
    fn pfaffian_product_order_four_has_six_terms() {
        let (y, z) = (x(1, 4), x(2, 4));
        let terms = pfaffian_product_terms(&y, &z).unwrap();
        assert_eq!(terms.len(), 6);
        let total: Polynomial = terms.into_iter().map(|t| t.value).sum();
        assert_eq!(total, &gen_pf(&y).unwrap() * &gen_pf(&z).unwrap());
    }

    #[test]
    fn pfaffian_product_rejects_odd_order() {
        assert!(matches!(
            pfaffian_product(&x(1, 3), &x(2, 3)),
            Err(Error::OddOrder(3))
        ));
    }
}
