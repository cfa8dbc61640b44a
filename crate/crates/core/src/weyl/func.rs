//! Functions `exp(κ x_1²) · Σ a · e^{μs} x^α`, the class on which operators
//! of either chart act.

use std::collections::{BTreeMap, HashMap};

use super::chart::{Chart, ChartKind};
use super::operator::Operator;
use crate::error::{Error, Result};
use crate::scalar::{HalfInt, Scalar};

/// Key of a function term: `e^{μs} x^α` (the `s`-slot of `α` is always zero
/// in the oscillator chart).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FuncMonomial {
    pub exp_s: HalfInt,
    pub var: Vec<i32>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GaussFunc<R> {
    chart: Chart,
    kappa: R,
    terms: BTreeMap<FuncMonomial, R>,
}

impl<R: Scalar> GaussFunc<R> {
    pub fn zero(chart: Chart, kappa: R) -> Self {
        GaussFunc {
            chart,
            kappa,
            terms: BTreeMap::new(),
        }
    }

    /// `a · e^{μs} x^var · exp(κ x_1²)`.
    pub fn term(chart: Chart, kappa: R, a: R, exp_s: HalfInt, var: &[i32]) -> Self {
        let mut f = Self::zero(chart, kappa);
        f.add_term(
            FuncMonomial {
                exp_s,
                var: var.to_vec(),
            },
            a,
        );
        f
    }

    /// The bare Gaussian `exp(κ x_1²)`.
    pub fn gaussian(chart: Chart, kappa: R) -> Self {
        let n = chart.slots();
        Self::term(chart, kappa, R::one(), HalfInt::ZERO, &vec![0; n])
    }

    pub fn from_terms<I: IntoIterator<Item = (FuncMonomial, R)>>(
        chart: Chart,
        kappa: R,
        iter: I,
    ) -> Self {
        let mut f = Self::zero(chart, kappa);
        for (m, a) in iter {
            f.add_term(m, a);
        }
        f
    }

    pub fn chart(&self) -> Chart {
        self.chart
    }

    pub fn kappa(&self) -> &R {
        &self.kappa
    }

    pub fn terms(&self) -> &BTreeMap<FuncMonomial, R> {
        &self.terms
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

    pub fn leading(&self) -> Option<(&FuncMonomial, &R)> {
        self.terms.iter().next_back()
    }

    pub fn add_term(&mut self, m: FuncMonomial, a: R) {
        if a.is_zero() {
            return;
        }
        debug_assert_eq!(m.var.len(), self.chart.slots());
        debug_assert!(self.chart.kind() == ChartKind::Osc || m.exp_s == HalfInt::ZERO);
        debug_assert!(self.chart.kind() == ChartKind::Free || m.var[0] == 0);
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(a);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().clone() + a;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn scale(&self, a: &R) -> Self {
        let mut out = Self::zero(self.chart, self.kappa.clone());
        for (m, b) in &self.terms {
            out.add_term(m.clone(), a.clone() * b.clone());
        }
        out
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        if self.is_zero() {
            return Ok(other.clone());
        }
        let mut out = self.clone();
        for (m, b) in &other.terms {
            out.add_term(m.clone(), b.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.scale(&-R::one()))
    }

    /// Partial derivative in a slot; the Gaussian contributes `2κ x_1` in
    /// slot 1 and the exponential `μ` in slot 0 of the oscillator chart.
    pub fn derivative(&self, slot: usize) -> Self {
        let mut out = Self::zero(self.chart, self.kappa.clone());
        let two_kappa = self.kappa.clone() + self.kappa.clone();
        for (m, a) in &self.terms {
            if slot == 0 && self.chart.kind() == ChartKind::Osc {
                let mu = R::from_rational(&m.exp_s.to_rational());
                out.add_term(m.clone(), mu * a.clone());
                continue;
            }
            let e = m.var[slot];
            if e != 0 {
                let mut d = m.clone();
                d.var[slot] -= 1;
                out.add_term(d, a.clone() * R::from_int(e as i64));
            }
            if slot == 1 && !self.kappa.is_zero() {
                let mut d = m.clone();
                d.var[1] += 1;
                out.add_term(d, a.clone() * two_kappa.clone());
            }
        }
        out
    }

    /// Multiplication by `a · e^{μs} x^var`.
    pub fn multiply_monomial(&self, a: &R, exp_s: HalfInt, var: &[i32]) -> Self {
        let mut out = Self::zero(self.chart, self.kappa.clone());
        for (m, b) in &self.terms {
            let mut m = m.clone();
            m.exp_s = m.exp_s + exp_s;
            for (x, d) in m.var.iter_mut().zip(var) {
                *x += d;
            }
            out.add_term(m, a.clone() * b.clone());
        }
        out
    }

    /// `f = r·g` for some scalar `r` (cross-multiplication test; the zero
    /// function is proportional only to itself).
    pub fn is_proportional(&self, other: &Self) -> bool {
        if self.chart != other.chart || self.kappa != other.kappa {
            return false;
        }
        match (self.leading(), other.leading()) {
            (None, None) => true,
            (Some((ma, a)), Some((mb, b))) if ma == mb => {
                self.terms.keys().eq(other.terms.keys())
                    && self
                        .terms
                        .iter()
                        .zip(&other.terms)
                        .all(|((_, x), (_, y))| x.clone() * b.clone() == y.clone() * a.clone())
            }
            _ => false,
        }
    }

    /// `r` with `self = r · other`, when it exists in the ring.
    pub fn ratio_to(&self, other: &Self) -> Option<R> {
        if !self.is_proportional(other) {
            return None;
        }
        match (self.leading(), other.leading()) {
            (Some((_, a)), Some((_, b))) => a.try_div(b),
            _ => None,
        }
    }

    fn compatible(&self, other: &Self) -> Result<()> {
        if self.chart != other.chart {
            return Err(Error::ChartMismatch);
        }
        if self.kappa != other.kappa && !self.is_zero() && !other.is_zero() {
            return Err(Error::KappaMismatch);
        }
        Ok(())
    }
}

/// `a(f)` for an operator and function on the same chart.
pub fn apply<R: Scalar>(a: &Operator<R>, f: &GaussFunc<R>) -> Result<GaussFunc<R>> {
    if a.chart() != f.chart() {
        return Err(Error::ChartMismatch);
    }
    let mut cache: HashMap<Vec<u32>, GaussFunc<R>> = HashMap::new();
    let mut out = GaussFunc::zero(f.chart(), f.kappa().clone());
    for (m, coef) in a.terms() {
        if !cache.contains_key(&m.der) {
            let mut g = f.clone();
            for (slot, &e) in m.der.iter().enumerate() {
                for _ in 0..e {
                    g = g.derivative(slot);
                }
            }
            cache.insert(m.der.clone(), g);
        }
        let g = &cache[&m.der];
        for (fm, b) in g.multiply_monomial(coef, m.exp_s, &m.var).terms {
            out.add_term(fm, b);
        }
    }
    Ok(out)
}
