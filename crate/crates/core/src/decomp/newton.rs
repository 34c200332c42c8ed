//! Traces of powers in place of `σ_k`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Value};

use super::census::lambda_of;
use super::{analyze, enumerate_quadruples_with, junction_height};
use crate::bpf::bpf_with;
use crate::combinat::{all_perms_limited, c_coeff, c_coeff_multi, partitions, WordMultiset};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::matrix::{MaybeMatrix, SymMatrix};
use crate::poly::RatPolynomial;
use crate::tableau::{eval_word, Tableau};

/// `σ_k(A) = Σ_{ν⊢k} (−1)^{k−#ν} / c(ν) · Π_j tr(A^{ν_j})` over ℚ.
pub fn sigma_newton(a: &SymMatrix, k: usize) -> Result<RatPolynomial> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    if k == 0 || k > a.rows() {
        return Err(Error::OutOfRange(format!(
            "sigma index {k} outside 1..={}",
            a.rows()
        )));
    }
    let mut traces = Vec::with_capacity(k);
    let mut power = a.clone();
    for _ in 0..k {
        traces.push(power.trace()?.to_rational());
        power = power.checked_mul(a).expect("square matrices multiply");
    }
    let mut acc = RatPolynomial::zero();
    for nu in partitions(k) {
        let sign = if (k - nu.len()).is_multiple_of(2) {
            1
        } else {
            -1
        };
        let coeff = BigRational::new(BigInt::from(sign), c_coeff(nu.parts())?);
        let product: RatPolynomial = nu.parts().iter().map(|&p| traces[p - 1].clone()).product();
        acc += &product.scale(&coeff);
    }
    Ok(acc)
}

/// The sum over one representative `π` of every class `S_π` of
/// `sgn π / c(λ̲(π)) · tr(T_cl^π) · bpf_{T̃^π}`.
pub fn class_sum_value(t: &Tableau, q1: usize, q2: usize) -> Result<RatPolynomial> {
    class_sum_value_with(t, q1, q2, &Limits::default())
}

pub fn class_sum_value_with(
    t: &Tableau,
    q1: usize,
    q2: usize,
    limits: &Limits,
) -> Result<RatPolynomial> {
    let n = junction_height(t, q1, q2, limits)?;
    let mut seen: BTreeMap<(WordMultiset, WordMultiset), ()> = BTreeMap::new();
    let mut acc = RatPolynomial::zero();
    for pi in all_perms_limited(n, usize::MAX)? {
        let a = analyze(t, q1, q2, &pi)?;
        if seen
            .insert((a.open.clone(), a.closed.clone()), ())
            .is_some()
        {
            continue;
        }
        let value = &a.closed_trace(t)? * &bpf_with(a.contracted()?, limits)?;
        let coeff = BigRational::new(BigInt::from(pi.sign()), c_coeff_multi(&lambda_of(&a)));
        acc += &value.to_rational().scale(&coeff);
    }
    Ok(acc)
}

/// The decomposition with every `σ_{γ_i}(X_{c_i})` expanded by
/// [`sigma_newton`].
pub fn trace_expansion_value(t: &Tableau, q1: usize, q2: usize) -> Result<RatPolynomial> {
    trace_expansion_value_with(t, q1, q2, &Limits::default())
}

pub fn trace_expansion_value_with(
    t: &Tableau,
    q1: usize,
    q2: usize,
    limits: &Limits,
) -> Result<RatPolynomial> {
    let set = enumerate_quadruples_with(t, q1, q2, limits)?;
    let mut acc = RatPolynomial::zero();
    for q in &set.quadruples {
        let mut term = q.factor.to_rational();
        for (c, gamma) in q.closed.entries() {
            let x = match eval_word(c, t.substitution())? {
                MaybeMatrix::Matrix(m) => m,
                MaybeMatrix::Zero => {
                    return Err(Error::Precondition(format!(
                        "closed word {c} has an ill-defined product"
                    )))
                }
            };
            let s = if gamma > x.rows() {
                RatPolynomial::zero()
            } else {
                sigma_newton(&x, gamma)?
            };
            term = &term * &s;
        }
        acc += &term;
    }
    Ok(acc)
}

/// `bpf_T` next to the class-representative sum and the trace expansion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NewtonReport {
    pub bpf: RatPolynomial,
    pub class_sum: RatPolynomial,
    pub trace_expansion: RatPolynomial,
}

impl NewtonReport {
    pub fn equal(&self) -> bool {
        self.bpf == self.class_sum && self.bpf == self.trace_expansion
    }

    pub fn to_json(&self) -> Value {
        json!({
            "bpf": self.bpf.to_string(),
            "class_sum": self.class_sum.to_string(),
            "trace_expansion": self.trace_expansion.to_string(),
            "equal": self.equal(),
        })
    }
}

pub fn newton_consistency_check(t: &Tableau, q1: usize, q2: usize) -> Result<NewtonReport> {
    newton_consistency_check_with(t, q1, q2, &Limits::default())
}

pub fn newton_consistency_check_with(
    t: &Tableau,
    q1: usize,
    q2: usize,
    limits: &Limits,
) -> Result<NewtonReport> {
    let n = junction_height(t, q1, q2, limits)?;
    limits.check_census(n)?;
    Ok(NewtonReport {
        bpf: bpf_with(t, limits)?.to_rational(),
        class_sum: class_sum_value_with(t, q1, q2, limits)?,
        trace_expansion: trace_expansion_value_with(t, q1, q2, limits)?,
    })
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;

    #[test]
    fn first_power_is_trace() {
        let a = x(1, 3);
        assert_eq!(
            sigma_newton(&a, 1).unwrap(),
            a.trace().unwrap().to_rational()
        );
    }

    #[test]
    fn matches_minor_sums() {
        for n in 1..=4 {
            let a = x(1, n);
            for k in 1..=n {
                assert_eq!(
                    sigma_newton(&a, k).unwrap(),
                    a.sigma(k).unwrap().to_rational(),
                    "n={n} k={k}"
                );
            }
        }
    }

    #[test]
    fn second_power_by_hand() {
        let a = x(1, 3);
        let tr = a.trace().unwrap().to_rational();
        let tr2 = a.checked_mul(&a).unwrap().trace().unwrap().to_rational();
        let half = BigRational::new(1.into(), 2.into());
        let expected = (&(&tr * &tr) - &tr2).scale(&half);
        assert_eq!(sigma_newton(&a, 2).unwrap(), expected);
    }

    #[test]
    fn index_out_of_range() {
        assert!(sigma_newton(&x(1, 2), 0).is_err());
        assert!(sigma_newton(&x(1, 2), 3).is_err());
    }

    #[test]
    fn consistency_on_small_tableaux() {
        for t in [
            det_tableau(&[1, 2]),
            det_tableau(&[1, 1]),
            det_tableau(&[1, 1, 2]),
            pfaffian_pair(2),
        ] {
            let r = newton_consistency_check(&t, 1, 2).unwrap();
            assert!(r.equal(), "{}", r.to_json());
        }
    }
}
