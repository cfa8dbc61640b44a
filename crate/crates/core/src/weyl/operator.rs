//! Normal-ordered differential operators.
//!
//! A term is `coef · e^{μs} · x^α · ∂^β` with every multiplication factor to
//! the left of every derivative. Variable exponents are integers and may be
//! negative (`t^{-1}` is a legitimate multiplier), derivative exponents are
//! non-negative. Terms are kept in a `BTreeMap` keyed by `(μ, α, β)`, which
//! makes the representation canonical and equality decidable.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::chart::{Chart, ChartKind};
use crate::error::{Error, Result};
use crate::scalar::{HalfInt, Scalar};

/// Key of a normal-ordered term; the derived order is the canonical order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    pub exp_s: HalfInt,
    pub var: Vec<i32>,
    pub der: Vec<u32>,
}

impl Monomial {
    pub fn unit(slots: usize) -> Self {
        Monomial {
            exp_s: HalfInt::ZERO,
            var: vec![0; slots],
            der: vec![0; slots],
        }
    }

    pub fn order(&self) -> u32 {
        self.der.iter().sum()
    }

    pub fn is_multiplication(&self) -> bool {
        self.der.iter().all(|&d| d == 0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Operator<R> {
    chart: Chart,
    terms: BTreeMap<Monomial, R>,
}

/// Result of [`Operator::degree_of`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Grading {
    Homogeneous(HalfInt),
    NonHomogeneous,
    /// The zero operator has every degree.
    Zero,
}

impl<R: Scalar> Operator<R> {
    pub fn zero(chart: Chart) -> Self {
        Operator {
            chart,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(chart: Chart, a: R) -> Self {
        Self::from_terms(chart, [(Monomial::unit(chart.slots()), a)])
    }

    pub fn identity(chart: Chart) -> Self {
        Self::constant(chart, R::one())
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, R)>>(chart: Chart, iter: I) -> Self {
        let mut op = Self::zero(chart);
        for (m, a) in iter {
            op.add_term(m, a);
        }
        op
    }

    /// `coef · e^{μs} · x^var · ∂^der`; slot vectors must have `chart.slots()`
    /// entries.
    pub fn term(chart: Chart, coef: R, exp_s: HalfInt, var: &[i32], der: &[u32]) -> Self {
        assert_eq!(var.len(), chart.slots(), "variable exponent vector length");
        assert_eq!(der.len(), chart.slots(), "derivative exponent vector length");
        assert!(
            chart.is_osc() || exp_s == HalfInt::ZERO,
            "exponential weights only exist in the oscillator chart"
        );
        assert!(!chart.is_osc() || var[0] == 0, "s may not appear polynomially");
        Self::from_terms(
            chart,
            [(
                Monomial {
                    exp_s,
                    var: var.to_vec(),
                    der: der.to_vec(),
                },
                coef,
            )],
        )
    }

    /// The multiplication operator by the slot variable.
    pub fn var(chart: Chart, slot: usize) -> Self {
        assert!(
            !(chart.is_osc() && slot == 0),
            "s is not a polynomial variable; use exp_weight"
        );
        let mut m = Monomial::unit(chart.slots());
        m.var[slot] = 1;
        Self::from_terms(chart, [(m, R::one())])
    }

    /// The partial derivative in the slot variable.
    pub fn der(chart: Chart, slot: usize) -> Self {
        let mut m = Monomial::unit(chart.slots());
        m.der[slot] = 1;
        Self::from_terms(chart, [(m, R::one())])
    }

    /// Multiplication by `e^{μs}` (oscillator chart only).
    pub fn exp_weight(chart: Chart, mu: HalfInt) -> Self {
        assert!(chart.is_osc() || mu == HalfInt::ZERO);
        let mut m = Monomial::unit(chart.slots());
        m.exp_s = mu;
        Self::from_terms(chart, [(m, R::one())])
    }

    pub fn chart(&self) -> Chart {
        self.chart
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, R> {
        &self.terms
    }

    pub fn into_terms(self) -> BTreeMap<Monomial, R> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> R {
        self.terms.get(m).cloned().unwrap_or_else(R::zero)
    }

    pub fn leading(&self) -> Option<(&Monomial, &R)> {
        self.terms.iter().next()
    }

    /// Highest total derivative order.
    pub fn order(&self) -> u32 {
        self.terms.keys().map(Monomial::order).max().unwrap_or(0)
    }

    /// True when no term carries a derivative.
    pub fn is_multiplication(&self) -> bool {
        self.terms.keys().all(Monomial::is_multiplication)
    }

    /// True when some term differentiates in the slot variable.
    pub fn has_derivative_in(&self, slot: usize) -> bool {
        self.terms.keys().any(|m| m.der[slot] > 0)
    }

    pub fn add_term(&mut self, m: Monomial, a: R) {
        if a.is_zero() {
            return;
        }
        debug_assert_eq!(m.var.len(), self.chart.slots());
        match self.terms.get_mut(&m) {
            Some(b) => {
                let s = b.clone() + a;
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *b = s;
                }
            }
            None => {
                self.terms.insert(m, a);
            }
        }
    }

    pub fn scale(&self, a: &R) -> Self {
        if a.is_zero() {
            return Self::zero(self.chart);
        }
        Self::from_terms(
            self.chart,
            self.terms.iter().map(|(m, b)| (m.clone(), b.clone() * a.clone())),
        )
    }

    pub fn scale_rational(&self, r: &BigRational) -> Self {
        self.scale(&R::from_rational(r))
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.same_chart(other)?;
        let mut out = self.clone();
        for (m, a) in &other.terms {
            out.add_term(m.clone(), a.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.same_chart(other)?;
        let mut out = self.clone();
        for (m, a) in &other.terms {
            out.add_term(m.clone(), -a.clone());
        }
        Ok(out)
    }

    /// Associative product `self ∘ other`, brought back to normal order.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.same_chart(other)?;
        let mut out = Self::zero(self.chart);
        for (ma, a) in &self.terms {
            for (mb, b) in &other.terms {
                mul_terms(self.chart, ma, a, mb, b, &mut out);
            }
        }
        Ok(out)
    }

    /// `[self, other] = self·other − other·self`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.try_mul(other)?.try_sub(&other.try_mul(self)?)
    }

    /// `{self, other} = self·other + other·self`.
    pub fn anticommutator(&self, other: &Self) -> Result<Self> {
        self.try_mul(other)?.try_add(&other.try_mul(self)?)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::identity(self.chart);
        for _ in 0..n {
            out = out.try_mul(self).expect("same chart");
        }
        out
    }

    /// Left multiplication by a multiplication monomial `a·e^{μs}x^var`,
    /// which only shifts exponents.
    pub fn left_multiply_monomial(&self, a: &R, exp_s: HalfInt, var: &[i32]) -> Self {
        Self::from_terms(
            self.chart,
            self.terms.iter().map(|(m, b)| {
                let mut m = m.clone();
                m.exp_s = m.exp_s + exp_s;
                for (x, d) in m.var.iter_mut().zip(var) {
                    *x += d;
                }
                (m, a.clone() * b.clone())
            }),
        )
    }

    /// `r` with `[z0, self] = r·self`, if it exists.
    pub fn degree_of(&self, z0: &Self) -> Result<Grading> {
        self.same_chart(z0)?;
        let Some((lead, lead_coef)) = self.leading() else {
            return Ok(Grading::Zero);
        };
        let br = z0.commutator(self)?;
        let ratio = br.coeff(lead);
        let Some(r) = ratio.try_div(lead_coef) else {
            return Ok(Grading::NonHomogeneous);
        };
        let Some(q) = r.to_rational().as_ref().and_then(HalfInt::from_rational) else {
            return Ok(Grading::NonHomogeneous);
        };
        let resid = br.try_sub(&self.scale(&r))?;
        Ok(if resid.is_zero() {
            Grading::Homogeneous(q)
        } else {
            Grading::NonHomogeneous
        })
    }

    /// Internal-consistency checks on the normal form.
    pub fn check_invariants(&self) -> bool {
        let n = self.chart.slots();
        self.terms.iter().all(|(m, a)| {
            !a.is_zero()
                && m.var.len() == n
                && m.der.len() == n
                && match self.chart.kind() {
                    ChartKind::Free => m.exp_s == HalfInt::ZERO,
                    ChartKind::Osc => m.var[0] == 0,
                }
        })
    }

    fn same_chart(&self, other: &Self) -> Result<()> {
        if self.chart == other.chart {
            Ok(())
        } else {
            Err(Error::ChartMismatch)
        }
    }
}

/// Accumulates `(a·M_a)(b·M_b)` into `out`, using Leibniz on the
/// derivatives of `M_a` passing over the multiplication part of `M_b`.
fn mul_terms<R: Scalar>(
    chart: Chart,
    ma: &Monomial,
    a: &R,
    mb: &Monomial,
    b: &R,
    out: &mut Operator<R>,
) {
    let n = chart.slots();
    let var: Vec<i32> = ma.var.iter().zip(&mb.var).map(|(x, y)| x + y).collect();
    let mut parts: Vec<(BigRational, Vec<i32>, Vec<u32>)> =
        vec![(BigRational::one(), var, mb.der.clone())];
    for i in 0..n {
        let beta = ma.der[i];
        if beta == 0 {
            continue;
        }
        let exp_slot = i == 0 && chart.kind() == ChartKind::Osc;
        let gamma = mb.var[i];
        let mu = mb.exp_s.to_rational();
        let factors: Vec<BigRational> = (0..=beta)
            .map(|k| {
                let inner = if exp_slot {
                    pow_rational(&mu, k)
                } else {
                    BigRational::from_integer(falling(gamma, k))
                };
                inner * BigRational::from_integer(binom(beta, k))
            })
            .collect();
        let mut next = Vec::with_capacity(parts.len() * (beta as usize + 1));
        for (f, var, der) in parts {
            for (k, fk) in factors.iter().enumerate() {
                if fk.is_zero() {
                    continue;
                }
                let mut var = var.clone();
                if !exp_slot {
                    var[i] -= k as i32;
                }
                let mut der = der.clone();
                der[i] += beta - k as u32;
                next.push((&f * fk, var, der));
            }
        }
        parts = next;
    }
    let coef = a.clone() * b.clone();
    let exp_s = ma.exp_s + mb.exp_s;
    for (f, var, der) in parts {
        out.add_term(Monomial { exp_s, var, der }, coef.scale(&f));
    }
}

/// `γ (γ−1) ⋯ (γ−k+1)`.
pub(crate) fn falling(gamma: i32, k: u32) -> BigInt {
    (0..k as i64).fold(BigInt::one(), |acc, j| acc * BigInt::from(gamma as i64 - j))
}

pub(crate) fn binom(n: u32, k: u32) -> BigInt {
    let mut acc = BigInt::one();
    for j in 0..k {
        acc = acc * BigInt::from(n - j) / BigInt::from(j + 1);
    }
    acc
}

pub(crate) fn pow_rational(x: &BigRational, k: u32) -> BigRational {
    (0..k).fold(BigRational::one(), |acc, _| acc * x)
}

impl<R: Scalar> Add for &Operator<R> {
    type Output = Operator<R>;
    fn add(self, rhs: &Operator<R>) -> Operator<R> {
        self.try_add(rhs).expect("chart mismatch in operator sum")
    }
}

impl<R: Scalar> Add for Operator<R> {
    type Output = Operator<R>;
    fn add(self, rhs: Operator<R>) -> Operator<R> {
        &self + &rhs
    }
}

impl<R: Scalar> Sub for &Operator<R> {
    type Output = Operator<R>;
    fn sub(self, rhs: &Operator<R>) -> Operator<R> {
        self.try_sub(rhs).expect("chart mismatch in operator difference")
    }
}

impl<R: Scalar> Sub for Operator<R> {
    type Output = Operator<R>;
    fn sub(self, rhs: Operator<R>) -> Operator<R> {
        &self - &rhs
    }
}

impl<R: Scalar> Mul for &Operator<R> {
    type Output = Operator<R>;
    fn mul(self, rhs: &Operator<R>) -> Operator<R> {
        self.try_mul(rhs).expect("chart mismatch in operator product")
    }
}

impl<R: Scalar> Mul for Operator<R> {
    type Output = Operator<R>;
    fn mul(self, rhs: Operator<R>) -> Operator<R> {
        &self * &rhs
    }
}

impl<R: Scalar> Neg for Operator<R> {
    type Output = Operator<R>;
    fn neg(self) -> Operator<R> {
        Operator {
            chart: self.chart,
            terms: self.terms.into_iter().map(|(m, a)| (m, -a)).collect(),
        }
    }
}

impl<R: Scalar> Neg for &Operator<R> {
    type Output = Operator<R>;
    fn neg(self) -> Operator<R> {
        -(self.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;
    use num_rational::Ratio;

    type Q = BigRational;
    type Op = Operator<Q>;

    fn free(twice: i64) -> Chart {
        Chart::free(HalfInt::from_twice(twice)).unwrap()
    }

    #[test]
    fn heisenberg_relation() {
        let ch = free(1);
        let x = Op::var(ch, 1);
        let dx = Op::der(ch, 1);
        let prod = &dx * &x;
        let expected = &(&x * &dx) + &Op::identity(ch);
        assert_eq!(prod, expected);
        assert_eq!(dx.commutator(&x).unwrap(), Op::identity(ch));
        let dt = Op::der(ch, 0);
        assert!(dt.commutator(&dt).unwrap().is_zero());
    }

    #[test]
    fn exponential_shift() {
        let ch = Chart::osc(HalfInt::from_twice(1)).unwrap();
        let e = Op::exp_weight(ch, HalfInt::ONE);
        let ds = Op::der(ch, 0);
        assert_eq!(&ds * &e, &(&e * &ds) + &e);
        // ∂_s e^{-3s/2} = e^{-3s/2}∂_s − 3/2 e^{-3s/2}
        let e = Op::exp_weight(ch, HalfInt::from_twice(-3));
        assert_eq!(&ds * &e, &(&e * &ds) - &e.scale(&rat(3, 2)));
    }

    #[test]
    fn square_of_first_order_operator() {
        // (t∂_y + ∂_x)² at ℓ = 3/2; slots (t, x, y)
        let ch = free(3);
        let t = Op::var(ch, 0);
        let w = &(&t * &Op::der(ch, 2)) + &Op::der(ch, 1);
        let sq = &w * &w;
        let expected = Op::from_terms(
            ch,
            [
                (Monomial { exp_s: HalfInt::ZERO, var: vec![2, 0, 0], der: vec![0, 0, 2] }, rat(1, 1)),
                (Monomial { exp_s: HalfInt::ZERO, var: vec![1, 0, 0], der: vec![0, 1, 1] }, rat(2, 1)),
                (Monomial { exp_s: HalfInt::ZERO, var: vec![0, 0, 0], der: vec![0, 2, 0] }, rat(1, 1)),
            ],
        );
        assert_eq!(sq, expected);
    }

    #[test]
    fn laurent_variables() {
        let ch = free(1);
        let tinv = Op::term(ch, rat(1, 1), HalfInt::ZERO, &[-1, 0], &[0, 0]);
        let t = Op::var(ch, 0);
        assert_eq!(&tinv * &t, Op::identity(ch));
        // ∂_t t^{-1} = t^{-1}∂_t − t^{-2}
        let dt = Op::der(ch, 0);
        let lhs = &dt * &tinv;
        let tinv2 = Op::term(ch, rat(1, 1), HalfInt::ZERO, &[-2, 0], &[0, 0]);
        assert_eq!(lhs, &(&tinv * &dt) - &tinv2);
    }

    #[test]
    fn chart_mismatch_is_an_error() {
        let a = Op::der(free(1), 0);
        let b = Op::der(free(3), 0);
        assert_eq!(a.try_mul(&b), Err(Error::ChartMismatch));
        assert_eq!(a.commutator(&b), Err(Error::ChartMismatch));
    }

    #[test]
    fn degree_relative_to_dilation() {
        // z0 = −t∂_t − ½x∂_x at ℓ = 1/2
        let ch = free(1);
        let z0 = -(&(&Op::var(ch, 0) * &Op::der(ch, 0))
            + &(&Op::var(ch, 1) * &Op::der(ch, 1)).scale(&rat(1, 2)));
        assert_eq!(
            Op::der(ch, 0).degree_of(&z0).unwrap(),
            Grading::Homogeneous(HalfInt::ONE)
        );
        assert_eq!(
            Op::var(ch, 1).degree_of(&z0).unwrap(),
            Grading::Homogeneous(HalfInt::from_twice(-1))
        );
        let mixed = &Op::der(ch, 0) + &Op::der(ch, 1);
        assert_eq!(mixed.degree_of(&z0).unwrap(), Grading::NonHomogeneous);
        assert_eq!(Op::zero(ch).degree_of(&z0).unwrap(), Grading::Zero);
    }

    #[test]
    fn generic_over_machine_rationals() {
        let ch = free(1);
        type Small = Operator<Ratio<i64>>;
        let x = Small::var(ch, 1);
        let dx = Small::der(ch, 1);
        assert_eq!(dx.commutator(&x).unwrap(), Small::identity(ch));
    }

    #[test]
    fn combinatorics() {
        assert_eq!(falling(5, 2), BigInt::from(20));
        assert_eq!(falling(1, 2), BigInt::from(0));
        assert_eq!(falling(-1, 2), BigInt::from(2));
        assert_eq!(binom(6, 3), BigInt::from(20));
    }
}
