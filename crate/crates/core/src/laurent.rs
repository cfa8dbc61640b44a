//! Laurent polynomials in one formal symbol over an exact field.
//!
//! The symbol is the central charge `c`. Every coefficient met by the
//! operator calculus is of the form `Σ a_k c^k` with finitely many integer
//! powers `k`, so this ring is closed for all products the engine forms.
//! Division is only exact by units (`a·c^k`) or by exact polynomial
//! factors, see [`Laurent::div_monomial`] and [`Laurent::div_exact`].

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::Error;
use crate::scalar::{Field, Scalar};

/// `Σ coef·c^pow`, terms sorted by increasing power, no zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Laurent<F> {
    terms: Vec<(i32, F)>,
}

impl<F: Field> Laurent<F> {
    pub fn constant(a: F) -> Self {
        Self::monomial(a, 0)
    }

    pub fn monomial(a: F, pow: i32) -> Self {
        if a.is_zero() {
            Self::zero()
        } else {
            Laurent {
                terms: vec![(pow, a)],
            }
        }
    }

    /// The formal symbol `c` itself.
    pub fn symbol() -> Self {
        Self::monomial(F::one(), 1)
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Self::constant(F::from_rational(&crate::scalar::rat(n, d)))
    }

    /// Builds from arbitrary `(power, coefficient)` pairs, merging repeats.
    pub fn from_terms<I: IntoIterator<Item = (i32, F)>>(iter: I) -> Self {
        let mut terms: Vec<(i32, F)> = iter.into_iter().collect();
        terms.sort_by_key(|(k, _)| *k);
        let mut out: Vec<(i32, F)> = Vec::with_capacity(terms.len());
        for (k, a) in terms {
            match out.last_mut() {
                Some((lk, la)) if *lk == k => *la = la.clone() + a,
                _ => out.push((k, a)),
            }
        }
        out.retain(|(_, a)| !a.is_zero());
        Laurent { terms: out }
    }

    pub fn terms(&self) -> &[(i32, F)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, pow: i32) -> F {
        self.terms
            .iter()
            .find(|(k, _)| *k == pow)
            .map(|(_, a)| a.clone())
            .unwrap_or_else(F::zero)
    }

    pub fn min_pow(&self) -> Option<i32> {
        self.terms.first().map(|(k, _)| *k)
    }

    pub fn max_pow(&self) -> Option<i32> {
        self.terms.last().map(|(k, _)| *k)
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// The value when no power of the symbol other than `c^0` occurs.
    pub fn as_constant(&self) -> Option<F> {
        match self.terms.as_slice() {
            [] => Some(F::zero()),
            [(0, a)] => Some(a.clone()),
            _ => None,
        }
    }

    /// True when some non-zero power of the symbol occurs.
    pub fn depends_on_symbol(&self) -> bool {
        self.terms.iter().any(|(k, _)| *k != 0)
    }

    pub fn scale_field(&self, a: &F) -> Self {
        if a.is_zero() {
            return Self::zero();
        }
        Laurent {
            terms: self
                .terms
                .iter()
                .map(|(k, b)| (*k, b.clone() * a.clone()))
                .collect(),
        }
    }

    pub fn shift(&self, by: i32) -> Self {
        Laurent {
            terms: self.terms.iter().map(|(k, a)| (k + by, a.clone())).collect(),
        }
    }

    /// Substitutes `c = factor·m` and returns the result as a Laurent
    /// polynomial in `m`.
    pub fn rescale_symbol(&self, factor: &F) -> Self {
        assert!(!factor.is_zero(), "rescaling by zero");
        let inv = F::one() / factor.clone();
        let terms = self.terms.iter().map(|(k, a)| {
            let base = if *k >= 0 { factor } else { &inv };
            let mut p = F::one();
            for _ in 0..k.unsigned_abs() {
                p = p * base.clone();
            }
            (*k, a.clone() * p)
        });
        Self::from_terms(terms)
    }

    /// Exact quotient by a monomial `a·c^k`.
    pub fn div_monomial(&self, divisor: &Self) -> Result<Self, Error> {
        match divisor.terms.as_slice() {
            [] => Err(Error::ZeroDivisor),
            [(k, a)] => {
                let inv = F::one() / a.clone();
                Ok(self.shift(-k).scale_field(&inv))
            }
            _ => Err(Error::NotMonomial(divisor.to_string())),
        }
    }

    /// Exact quotient in the Laurent ring, or `None` if the divisor does not
    /// divide.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        if divisor.is_monomial() {
            return self.div_monomial(divisor).ok();
        }
        let (num, num_low) = self.to_poly();
        let (den, den_low) = divisor.to_poly();
        let (q, r) = poly_div_rem(&num, &den);
        if r.iter().any(|a| !a.is_zero()) {
            return None;
        }
        Some(Self::from_poly(&q, num_low - den_low))
    }

    /// Greatest common divisor, normalized to a monic polynomial with
    /// non-zero constant term (units of the Laurent ring are discarded).
    pub fn gcd(&self, other: &Self) -> Self {
        match (self.is_zero(), other.is_zero()) {
            (true, true) => return Self::zero(),
            (true, false) => return other.normalized_associate(),
            (false, true) => return self.normalized_associate(),
            _ => {}
        }
        if self.is_monomial() || other.is_monomial() {
            return Self::one();
        }
        let (mut a, _) = self.to_poly();
        let (mut b, _) = other.to_poly();
        while !b.is_empty() {
            let (_, r) = poly_div_rem(&a, &b);
            a = b;
            b = trim(r);
        }
        Self::from_poly(&a, 0).normalized_associate()
    }

    /// The associate with lowest power `c^0` and leading coefficient `1`.
    pub fn normalized_associate(&self) -> Self {
        match (self.terms.first(), self.terms.last()) {
            (Some((low, _)), Some((_, lead))) => {
                let inv = F::one() / lead.clone();
                self.shift(-low).scale_field(&inv)
            }
            _ => Self::zero(),
        }
    }

    fn to_poly(&self) -> (Vec<F>, i32) {
        let low = self.min_pow().unwrap_or(0);
        let high = self.max_pow().unwrap_or(0);
        let mut v = vec![F::zero(); (high - low + 1) as usize];
        for (k, a) in &self.terms {
            v[(k - low) as usize] = a.clone();
        }
        (v, low)
    }

    fn from_poly(p: &[F], low: i32) -> Self {
        Self::from_terms(
            p.iter()
                .enumerate()
                .map(|(i, a)| (low + i as i32, a.clone())),
        )
    }

    fn add_ref(&self, other: &Self) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (ka, a) = &self.terms[i];
            let (kb, b) = &other.terms[j];
            match ka.cmp(kb) {
                std::cmp::Ordering::Less => {
                    out.push((*ka, a.clone()));
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push((*kb, b.clone()));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let s = a.clone() + b.clone();
                    if !s.is_zero() {
                        out.push((*ka, s));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&other.terms[j..]);
        Laurent { terms: out }
    }

    fn mul_ref(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if other.terms.len() == 1 {
            let (k, a) = &other.terms[0];
            return self.shift(*k).scale_field(a);
        }
        if self.terms.len() == 1 {
            let (k, a) = &self.terms[0];
            return other.shift(*k).scale_field(a);
        }
        Self::from_terms(self.terms.iter().flat_map(|(ka, a)| {
            other
                .terms
                .iter()
                .map(move |(kb, b)| (ka + kb, a.clone() * b.clone()))
        }))
    }
}

fn trim<F: Field>(mut p: Vec<F>) -> Vec<F> {
    while p.last().is_some_and(|a| a.is_zero()) {
        p.pop();
    }
    p
}

/// Dense polynomial long division over a field; `den` must be non-zero.
fn poly_div_rem<F: Field>(num: &[F], den: &[F]) -> (Vec<F>, Vec<F>) {
    let den = trim(den.to_vec());
    let mut rem = trim(num.to_vec());
    let dl = den.len();
    let lead_inv = F::one() / den[dl - 1].clone();
    if rem.len() < dl {
        return (Vec::new(), rem);
    }
    let mut quot = vec![F::zero(); rem.len() - dl + 1];
    while rem.len() >= dl {
        let shift = rem.len() - dl;
        let factor = rem[rem.len() - 1].clone() * lead_inv.clone();
        for (i, d) in den.iter().enumerate() {
            rem[shift + i] = rem[shift + i].clone() - factor.clone() * d.clone();
        }
        quot[shift] = factor;
        rem.pop();
        rem = trim(rem);
    }
    (quot, rem)
}

impl<F: Field> Zero for Laurent<F> {
    fn zero() -> Self {
        Laurent { terms: Vec::new() }
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<F: Field> One for Laurent<F> {
    fn one() -> Self {
        Self::constant(F::one())
    }
}

impl<F: Field> Add for Laurent<F> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.add_ref(&rhs)
    }
}

impl<'a, F: Field> Add<&'a Laurent<F>> for &'a Laurent<F> {
    type Output = Laurent<F>;
    fn add(self, rhs: &Laurent<F>) -> Laurent<F> {
        self.add_ref(rhs)
    }
}

impl<F: Field> AddAssign for Laurent<F> {
    fn add_assign(&mut self, rhs: Self) {
        *self = self.add_ref(&rhs);
    }
}

impl<F: Field> Neg for Laurent<F> {
    type Output = Self;
    fn neg(self) -> Self {
        Laurent {
            terms: self.terms.into_iter().map(|(k, a)| (k, -a)).collect(),
        }
    }
}

impl<F: Field> Neg for &Laurent<F> {
    type Output = Laurent<F>;
    fn neg(self) -> Laurent<F> {
        -(self.clone())
    }
}

impl<F: Field> Sub for Laurent<F> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self.add_ref(&-rhs)
    }
}

impl<'a, F: Field> Sub<&'a Laurent<F>> for &'a Laurent<F> {
    type Output = Laurent<F>;
    fn sub(self, rhs: &Laurent<F>) -> Laurent<F> {
        self.add_ref(&-rhs)
    }
}

impl<F: Field> SubAssign for Laurent<F> {
    fn sub_assign(&mut self, rhs: Self) {
        *self = self.add_ref(&-rhs);
    }
}

impl<F: Field> Mul for Laurent<F> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.mul_ref(&rhs)
    }
}

impl<'a, F: Field> Mul<&'a Laurent<F>> for &'a Laurent<F> {
    type Output = Laurent<F>;
    fn mul(self, rhs: &Laurent<F>) -> Laurent<F> {
        self.mul_ref(rhs)
    }
}

impl<F: Field> Scalar for Laurent<F> {
    fn from_rational(r: &BigRational) -> Self {
        Self::constant(F::from_rational(r))
    }

    fn try_inverse(&self) -> Option<Self> {
        Self::one().div_monomial(self).ok()
    }

    fn to_rational(&self) -> Option<BigRational> {
        self.as_constant().map(|a| a.to_rational())
    }

    fn try_div(&self, d: &Self) -> Option<Self> {
        self.div_exact(d)
    }

    fn scale(&self, r: &BigRational) -> Self {
        self.scale_field(&F::from_rational(r))
    }
}

impl<F: Field> fmt::Display for Laurent<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_laurent(self, "c", f)
    }
}

impl<F: Field> fmt::Debug for Laurent<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Plain-text rendering, highest power first: `-3c`, `c^2 - 1`, `1/2c^-1`.
pub fn fmt_laurent<F: Field>(x: &Laurent<F>, symbol: &str, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if x.is_zero() {
        return write!(f, "0");
    }
    for (i, (k, a)) in x.terms.iter().rev().enumerate() {
        let neg = a.is_negative();
        let mag = a.abs();
        if i == 0 {
            if neg {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {} ", if neg { "-" } else { "+" })?;
        }
        match *k {
            0 => write!(f, "{mag}")?,
            _ => {
                if !mag.is_one() {
                    write!(f, "{mag}")?;
                }
                if *k == 1 {
                    write!(f, "{symbol}")?;
                } else {
                    write!(f, "{symbol}^{k}")?;
                }
            }
        }
    }
    Ok(())
}
