//! Algebra homomorphisms out of the free chart, given by the images of the
//! coordinate generators `x_i` and `∂_i`.

use std::collections::HashMap;

use super::chart::{Chart, ChartKind};
use super::operator::{Monomial, Operator};
use crate::error::{Error, Result};
use crate::scalar::{HalfInt, Scalar};

/// A homomorphism determined by `x_i ↦ X_i`, `∂_i ↦ D_i`.
///
/// Construction checks that the images satisfy `[D_i, X_j] = δ_ij`,
/// `[X_i, X_j] = 0` and `[D_i, D_j] = 0`, which is exactly what makes the
/// induced map on normal-ordered operators multiplicative.
#[derive(Clone, Debug)]
pub struct Substitution<R> {
    source: Chart,
    target: Chart,
    var_images: Vec<Operator<R>>,
    var_inverses: Vec<Option<Operator<R>>>,
    der_images: Vec<Operator<R>>,
}

impl<R: Scalar> Substitution<R> {
    pub fn new(
        source: Chart,
        target: Chart,
        var_images: Vec<Operator<R>>,
        der_images: Vec<Operator<R>>,
    ) -> Result<Self> {
        if source.kind() != ChartKind::Free {
            return Err(Error::RelationViolation(
                "substitutions are defined on the free chart".into(),
            ));
        }
        let n = source.slots();
        if var_images.len() != n || der_images.len() != n {
            return Err(Error::RelationViolation(format!(
                "expected {n} images per kind"
            )));
        }
        if var_images.iter().chain(&der_images).any(|op| op.chart() != target) {
            return Err(Error::ChartMismatch);
        }
        let one = Operator::identity(target);
        for i in 0..n {
            for j in 0..n {
                let dx = der_images[i].commutator(&var_images[j])?;
                let expected = if i == j { one.clone() } else { Operator::zero(target) };
                if dx != expected {
                    return Err(Error::RelationViolation(format!(
                        "[image(∂_{i}), image(x_{j})] = {dx:?}"
                    )));
                }
                if i < j {
                    if !var_images[i].commutator(&var_images[j])?.is_zero() {
                        return Err(Error::RelationViolation(format!(
                            "images of x_{i} and x_{j} do not commute"
                        )));
                    }
                    if !der_images[i].commutator(&der_images[j])?.is_zero() {
                        return Err(Error::RelationViolation(format!(
                            "images of ∂_{i} and ∂_{j} do not commute"
                        )));
                    }
                }
            }
        }
        let var_inverses = var_images.iter().map(invert_monomial).collect();
        Ok(Substitution {
            source,
            target,
            var_images,
            var_inverses,
            der_images,
        })
    }

    pub fn identity(chart: Chart) -> Result<Self> {
        let n = chart.slots();
        Self::new(
            chart,
            chart,
            (0..n).map(|i| Operator::var(chart, i)).collect(),
            (0..n).map(|i| Operator::der(chart, i)).collect(),
        )
    }

    /// The change of variables `t = e^s`, `y_a = e^{(a-1/2)s} u_a`, with
    /// derivatives transformed by the chain rule:
    /// `∂_t = e^{-s}(∂_s − Σ (a−1/2) u_a ∂_{u_a})`, `∂_{y_a} = e^{-(a−1/2)s} ∂_{u_a}`.
    pub fn free_to_osc(ell: HalfInt) -> Result<Self> {
        let source = Chart::free(ell)?;
        let target = Chart::osc(ell)?;
        let n = source.slots();
        let weight = |a: usize| HalfInt::from_int(a as i64) - HalfInt::HALF;
        let mut vars = vec![Operator::exp_weight(target, HalfInt::ONE)];
        let mut ders = Vec::with_capacity(n);
        let mut euler = Operator::der(target, 0);
        for a in 1..n {
            let u = Operator::var(target, a);
            vars.push(&Operator::exp_weight(target, weight(a)) * &u);
            ders.push(&Operator::exp_weight(target, -weight(a)) * &Operator::der(target, a));
            let ud = &u * &Operator::der(target, a);
            euler = &euler - &ud.scale_rational(&weight(a).to_rational());
        }
        ders.insert(0, &Operator::exp_weight(target, -HalfInt::ONE) * &euler);
        Self::new(source, target, vars, ders)
    }

    pub fn source(&self) -> Chart {
        self.source
    }

    pub fn target(&self) -> Chart {
        self.target
    }

    pub fn var_image(&self, slot: usize) -> &Operator<R> {
        &self.var_images[slot]
    }

    pub fn der_image(&self, slot: usize) -> &Operator<R> {
        &self.der_images[slot]
    }

    pub fn apply(&self, a: &Operator<R>) -> Result<Operator<R>> {
        if a.chart() != self.source {
            return Err(Error::ChartMismatch);
        }
        let mut powers: HashMap<(bool, usize, i32), Operator<R>> = HashMap::new();
        let mut out = Operator::zero(self.target);
        for (m, coef) in a.terms() {
            let mut acc = Operator::constant(self.target, coef.clone());
            for (i, &e) in m.var.iter().enumerate() {
                if e != 0 {
                    acc = acc.try_mul(&self.power(&mut powers, false, i, e)?)?;
                }
            }
            for (i, &e) in m.der.iter().enumerate() {
                if e != 0 {
                    acc = acc.try_mul(&self.power(&mut powers, true, i, e as i32)?)?;
                }
            }
            out = out.try_add(&acc)?;
        }
        Ok(out)
    }

    fn power(
        &self,
        cache: &mut HashMap<(bool, usize, i32), Operator<R>>,
        is_der: bool,
        slot: usize,
        e: i32,
    ) -> Result<Operator<R>> {
        if let Some(op) = cache.get(&(is_der, slot, e)) {
            return Ok(op.clone());
        }
        let base = if is_der {
            self.der_images[slot].clone()
        } else if e < 0 {
            self.var_inverses[slot].clone().ok_or_else(|| {
                Error::NotMonomial(format!("image of variable {slot} is not invertible"))
            })?
        } else {
            self.var_images[slot].clone()
        };
        let op = base.pow(e.unsigned_abs());
        cache.insert((is_der, slot, e), op.clone());
        Ok(op)
    }
}

/// Inverse of a single-term multiplication operator with invertible
/// coefficient.
fn invert_monomial<R: Scalar>(op: &Operator<R>) -> Option<Operator<R>> {
    if op.len() != 1 {
        return None;
    }
    let (m, a) = op.leading()?;
    if !m.is_multiplication() {
        return None;
    }
    let inv = a.try_inverse()?;
    let mono = Monomial {
        exp_s: -m.exp_s,
        var: m.var.iter().map(|x| -x).collect(),
        der: m.der.clone(),
    };
    Some(Operator::from_terms(op.chart(), [(mono, inv)]))
}
