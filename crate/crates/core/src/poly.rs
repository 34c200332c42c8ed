//! Sparse multivariate polynomials with exact coefficients.
//!
//! A [`Poly`] maps monomials to nonzero coefficients. Two coefficient rings are
//! used throughout the crate: arbitrary-precision integers ([`Polynomial`]) for
//! every identity that holds over ℤ, and rationals ([`RatPolynomial`]) for the
//! handful of formulas that divide by factorials.
//!
//! Monomials are ordered graded-lexicographically: higher total degree first,
//! ties broken by the exponent of the smallest [`Variable`] on which the two
//! monomials differ. The canonical text form lists terms in descending order.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, Signed};

/// An indeterminate.
///
/// Scalar variables `t(r)` are the formal linearization parameters; entry
/// variables `x[i,j](r)` are the entries of the generic matrix with label `r`.
/// The derived order puts every scalar before every entry and compares
/// `(r, i, j)` lexicographically within a kind.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Variable {
    Scalar(u32),
    Entry { label: u32, row: u32, col: u32 },
}

impl Variable {
    pub fn entry(label: u32, row: u32, col: u32) -> Self {
        Variable::Entry { label, row, col }
    }

    pub fn is_scalar(&self) -> bool {
        matches!(self, Variable::Scalar(_))
    }
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Variable::Scalar(r) => write!(f, "t({r})"),
            Variable::Entry { label, row, col } => write!(f, "x[{row},{col}]({label})"),
        }
    }
}

/// A power product of variables, stored as a strictly sorted list of
/// `(variable, exponent)` pairs with positive exponents.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(Variable, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: Variable) -> Self {
        Monomial(vec![(v, 1)])
    }

    /// Builds a monomial from arbitrary `(variable, exponent)` pairs, merging
    /// repeated variables and dropping zero exponents.
    pub fn from_powers<I: IntoIterator<Item = (Variable, u32)>>(powers: I) -> Self {
        let mut map: BTreeMap<Variable, u32> = BTreeMap::new();
        for (v, e) in powers {
            *map.entry(v).or_insert(0) += e;
        }
        Monomial(map.into_iter().filter(|&(_, e)| e > 0).collect())
    }

    pub fn powers(&self) -> &[(Variable, u32)] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponent(&self, v: Variable) -> u32 {
        self.0
            .binary_search_by(|(w, _)| w.cmp(&v))
            .map(|k| self.0[k].1)
            .unwrap_or(0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    /// Splits into the scalar-variable part and the entry-variable part.
    pub fn split_scalars(&self) -> (Monomial, Monomial) {
        let (s, e): (Vec<_>, Vec<_>) = self.0.iter().partition(|(v, _)| v.is_scalar());
        (Monomial(s), Monomial(e))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        use std::cmp::Ordering::*;
        match self.degree().cmp(&other.degree()) {
            Equal => {}
            ord => return ord,
        }
        for (a, b) in self.0.iter().zip(other.0.iter()) {
            match a.0.cmp(&b.0) {
                // `self` carries a smaller variable that `other` lacks.
                Less => return Greater,
                Greater => return Less,
                Equal => match a.1.cmp(&b.1) {
                    Equal => {}
                    ord => return ord,
                },
            }
        }
        self.0.len().cmp(&other.0.len()).reverse()
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (k, (v, e)) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Coefficient ring of a [`Poly`].
pub trait Coefficient: Clone + Num + Signed + Ord + fmt::Display + fmt::Debug {}

impl<T: Clone + Num + Signed + Ord + fmt::Display + fmt::Debug> Coefficient for T {}

/// Sparse polynomial with coefficients in `C`. No zero coefficient is ever
/// stored, so structural equality is polynomial equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly<C> {
    terms: BTreeMap<Monomial, C>,
}

pub type Polynomial = Poly<BigInt>;
pub type RatPolynomial = Poly<BigRational>;

impl<C: Coefficient> Default for Poly<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Coefficient> Poly<C> {
    pub fn zero() -> Self {
        Poly {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn constant(c: C) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn term(c: C, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    pub fn var(v: Variable) -> Self {
        Self::term(C::one(), Monomial::var(v))
    }

    pub fn scalar(r: u32) -> Self {
        Self::var(Variable::Scalar(r))
    }

    pub fn entry(label: u32, row: u32, col: u32) -> Self {
        Self::var(Variable::entry(label, row, col))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    /// The least term in the monomial order, if any.
    pub fn least_term(&self) -> Option<(&Monomial, &C)> {
        self.terms.iter().next()
    }

    pub fn add_term(&mut self, m: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().clone() + c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), a.clone() * c.clone()))
                .collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(k, a)| (k.mul(m), a.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Adds `sign * self` to `acc` without cloning `self`'s map first.
    pub fn add_scaled_into(&self, acc: &mut Self, sign: &C) {
        for (m, c) in &self.terms {
            acc.add_term(m.clone(), c.clone() * sign.clone());
        }
    }

    /// The coefficient of the scalar monomial `Π t(r)^{e_r}`: the sum of all
    /// terms whose scalar part is exactly that monomial, with the scalar part
    /// removed.
    pub fn coefficient_of(&self, powers: &BTreeMap<u32, u32>) -> Self {
        let target = Monomial::from_powers(powers.iter().map(|(&r, &e)| (Variable::Scalar(r), e)));
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let (scalars, rest) = m.split_scalars();
            if scalars == target {
                out.add_term(rest, c.clone());
            }
        }
        out
    }

    pub fn contains_scalars(&self) -> bool {
        self.terms
            .keys()
            .any(|m| m.powers().iter().any(|(v, _)| v.is_scalar()))
    }

    pub fn map_coefficients<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> Poly<D> {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c));
        }
        out
    }
}

impl Polynomial {
    pub fn from_int(c: i64) -> Self {
        Self::constant(BigInt::from(c))
    }

    pub fn to_rational(&self) -> RatPolynomial {
        self.map_coefficients(|c| BigRational::from_integer(c.clone()))
    }

    /// The product of the signs of the coefficients at the least monomials
    /// of `self` and `other`; `+1` when either is zero.
    pub fn least_monomial_sign(&self, other: &Polynomial) -> i32 {
        match (self.least_term(), other.least_term()) {
            (Some((_, a)), Some((_, b))) if a.is_negative() != b.is_negative() => -1,
            _ => 1,
        }
    }

    /// `Some(±1)` when `self = ±other`. Zero equals zero with sign `+1`.
    ///
    /// The sign is read off the least monomial of `other` and then confirmed
    /// on the whole polynomial.
    pub fn sign_relative_to(&self, other: &Polynomial) -> Option<i32> {
        match (self.least_term(), other.least_term()) {
            (None, None) => Some(1),
            (Some((ma, ca)), Some((mb, cb))) if ma == mb => {
                let sign = if ca == cb {
                    1
                } else if *ca == -cb.clone() {
                    -1
                } else {
                    return None;
                };
                let flipped = if sign == 1 { other.clone() } else { -other };
                (*self == flipped).then_some(sign)
            }
            _ => None,
        }
    }
}

impl RatPolynomial {
    /// Returns the integer polynomial when every coefficient is integral.
    pub fn to_integer(&self) -> Option<Polynomial> {
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            if !c.is_integer() {
                return None;
            }
            out.add_term(m.clone(), c.to_integer());
        }
        Some(out)
    }
}

impl<C: Coefficient> AddAssign<&Poly<C>> for Poly<C> {
    fn add_assign(&mut self, rhs: &Poly<C>) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl<C: Coefficient> SubAssign<&Poly<C>> for Poly<C> {
    fn sub_assign(&mut self, rhs: &Poly<C>) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c.clone());
        }
    }
}

impl<C: Coefficient> Add for &Poly<C> {
    type Output = Poly<C>;
    fn add(self, rhs: &Poly<C>) -> Poly<C> {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<C: Coefficient> Add for Poly<C> {
    type Output = Poly<C>;
    fn add(mut self, rhs: Poly<C>) -> Poly<C> {
        self += &rhs;
        self
    }
}

impl<C: Coefficient> Sub for &Poly<C> {
    type Output = Poly<C>;
    fn sub(self, rhs: &Poly<C>) -> Poly<C> {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<C: Coefficient> Sub for Poly<C> {
    type Output = Poly<C>;
    fn sub(mut self, rhs: Poly<C>) -> Poly<C> {
        self -= &rhs;
        self
    }
}

impl<C: Coefficient> Neg for &Poly<C> {
    type Output = Poly<C>;
    fn neg(self) -> Poly<C> {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }
}

impl<C: Coefficient> Neg for Poly<C> {
    type Output = Poly<C>;
    fn neg(self) -> Poly<C> {
        -&self
    }
}

impl<C: Coefficient> Mul for &Poly<C> {
    type Output = Poly<C>;
    fn mul(self, rhs: &Poly<C>) -> Poly<C> {
        let mut out = Poly::zero();
        if self.is_zero() || rhs.is_zero() {
            return out;
        }
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca.clone() * cb.clone());
            }
        }
        out
    }
}

impl<C: Coefficient> Mul for Poly<C> {
    type Output = Poly<C>;
    fn mul(self, rhs: Poly<C>) -> Poly<C> {
        &self * &rhs
    }
}

impl<C: Coefficient> std::iter::Sum for Poly<C> {
    fn sum<I: Iterator<Item = Poly<C>>>(iter: I) -> Self {
        let mut acc = Poly::zero();
        for p in iter {
            acc += &p;
        }
        acc
    }
}

impl<C: Coefficient> std::iter::Product for Poly<C> {
    fn product<I: Iterator<Item = Poly<C>>>(iter: I) -> Self {
        let mut acc = Poly::one();
        for p in iter {
            acc = &acc * &p;
        }
        acc
    }
}

impl<C: Coefficient> fmt::Display for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            match (k, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let magnitude = c.abs();
            if m.is_one() {
                write!(f, "{magnitude}")?;
            } else if magnitude.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{magnitude}*{m}")?;
            }
        }
        Ok(())
    }
}
