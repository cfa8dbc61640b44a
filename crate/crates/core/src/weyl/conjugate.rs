//! Similarity transformations `a ↦ e^{-q} a e^{q}` for quadratic weights
//! `q = κ x_1²/2` and linear weights `q = δ s`.
//!
//! Both act as automorphisms fixing every multiplication operator, with
//! `∂_1 ↦ ∂_1 + κ x_1` and `∂_s ↦ ∂_s + δ` respectively, so the image of a
//! normal-ordered term is obtained exactly by substituting those images for
//! the derivative factors.

use std::collections::HashMap;

use num_rational::BigRational;

use super::chart::ChartKind;
use super::operator::{Monomial, Operator};
use crate::error::{Error, Result};
use crate::scalar::{HalfInt, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub enum Weight<R> {
    /// `q = κ x_1² / 2` in the first space variable.
    Gaussian(R),
    /// `q = δ s` (oscillator chart only).
    Linear(BigRational),
}

impl<R: Scalar> Weight<R> {
    /// Reads a weight off a multiplication operator. Only `κ x_1²/2` is
    /// representable this way; linear `s`-weights must be built directly.
    pub fn from_exponent(q: &Operator<R>) -> Result<Self> {
        let n = q.chart().slots();
        if q.len() == 1 {
            let (m, a) = q.leading().expect("one term");
            let mut quad = Monomial::unit(n);
            if n > 1 {
                quad.var[1] = 2;
            }
            if n > 1 && *m == quad {
                return Ok(Weight::Gaussian(a.clone() + a.clone()));
            }
        }
        Err(Error::UnsupportedWeight(format!("{q:?}")))
    }
}

/// `e^{-q} · a · e^{q}`.
pub fn conjugate<R: Scalar>(a: &Operator<R>, weight: &Weight<R>) -> Result<Operator<R>> {
    let chart = a.chart();
    let (slot, image) = match weight {
        Weight::Gaussian(kappa) => {
            if chart.slots() < 2 {
                return Err(Error::UnsupportedWeight("no space variable".into()));
            }
            let img = &Operator::der(chart, 1) + &Operator::var(chart, 1).scale(kappa);
            (1, img)
        }
        Weight::Linear(delta) => {
            if chart.kind() != ChartKind::Osc {
                return Err(Error::UnsupportedWeight(
                    "linear s-weights need the oscillator chart".into(),
                ));
            }
            let img = &Operator::der(chart, 0) + &Operator::constant(chart, R::from_rational(delta));
            (0, img)
        }
    };
    if !a.has_derivative_in(slot) {
        return Ok(a.clone());
    }
    let mut powers: HashMap<u32, Operator<R>> = HashMap::new();
    let mut out = Operator::zero(chart);
    for (m, coef) in a.terms() {
        let e = m.der[slot];
        if e == 0 {
            out.add_term(m.clone(), coef.clone());
            continue;
        }
        let mut left = m.clone();
        left.der[slot] = 0;
        let power = powers.entry(e).or_insert_with(|| image.pow(e)).clone();
        // Everything left of ∂_slot^e in the normal form commutes with it
        // except multiplication factors, which stay on the left.
        let mut mult = Monomial::unit(chart.slots());
        mult.exp_s = left.exp_s;
        mult.var = left.var.clone();
        let mut rest = Monomial::unit(chart.slots());
        rest.der = left.der.clone();
        let prefix = Operator::from_terms(chart, [(mult, coef.clone())]);
        let suffix = Operator::from_terms(chart, [(rest, R::one())]);
        out = out.try_add(&prefix.try_mul(&power)?.try_mul(&suffix)?)?;
    }
    Ok(out)
}

/// Conjugation realizing `t^δ (·) t^{-δ}` after `t = e^s`.
pub fn time_power_dressing<R: Scalar>(a: &Operator<R>, delta: &BigRational) -> Result<Operator<R>> {
    conjugate(a, &Weight::Linear(-delta.clone()))
}

/// `e^{μs}` as a weight-free helper used by callers assembling weights.
pub fn exp_factor<R: Scalar>(a: &Operator<R>, mu: HalfInt) -> Operator<R> {
    a.left_multiply_monomial(&R::one(), mu, &vec![0; a.chart().slots()])
}
