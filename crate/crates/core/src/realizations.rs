//! Differential realizations of the centrally extended CGA in both charts,
//! for general half-integer `ℓ` and as transcribed `ℓ = 3/2` fixtures.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::algebra::{w_labels, GenLabel, GenMap};
use crate::error::{Error, Result};
use crate::scalar::{rat, HalfInt};
use crate::weyl::operator::binom;
use crate::weyl::Chart;
use crate::{CScalar, WeylOp};

/// The two reference similarity transformations producing oscillator charts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OscNormalization {
    /// Weight `e^{cu²/2}` with `t`-dressing power 1, defined at `ℓ = 3/2` only.
    Section5,
    /// Weight `e^{-λu_1²/2}`, `λ = −c/(2ℓ+1)`, dressing power `δ`.
    Section7,
}

impl OscNormalization {
    pub fn name(&self) -> &'static str {
        match self {
            OscNormalization::Section5 => "s5",
            OscNormalization::Section7 => "s7",
        }
    }

    pub fn require_available(&self, ell: HalfInt) -> Result<()> {
        if *self == OscNormalization::Section5 && ell != three_halves() {
            return Err(Error::NormalizationUnavailable {
                normalization: self.name().into(),
                ell,
            });
        }
        Ok(())
    }
}

pub fn three_halves() -> HalfInt {
    HalfInt::from_twice(3)
}

/// `δ = (ℓ + 1/2)² / 4`.
pub fn delta(ell: HalfInt) -> BigRational {
    let l = (ell + HalfInt::HALF).to_rational();
    &l * &l / BigInt::from(4)
}

/// `λ = −c / (2ℓ + 1)`.
pub fn lambda(ell: HalfInt) -> CScalar {
    CScalar::monomial(-BigRational::one() / two_ell_plus_one(ell), 1)
}

pub(crate) fn two_ell_plus_one(ell: HalfInt) -> BigRational {
    BigRational::from_integer(BigInt::from(ell.twice() + 1))
}

/// Labels of the CGA itself: `z_{±1}, z_0, w_j, c`.
pub fn cga_labels(ell: HalfInt) -> Vec<GenLabel> {
    let mut out = vec![GenLabel::ZPlus, GenLabel::ZZero, GenLabel::ZMinus, GenLabel::C];
    out.extend(w_labels(ell));
    out
}

pub(crate) fn factorial(n: i64) -> BigInt {
    assert!(n >= 0, "factorial of a negative number");
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

fn q(r: BigRational) -> CScalar {
    CScalar::constant(r)
}

fn qc(r: BigRational) -> CScalar {
    CScalar::monomial(r, 1)
}

/// Builds single terms on a fixed chart.
struct Terms {
    chart: Chart,
}

impl Terms {
    fn op(&self, coef: CScalar, exp_twice: i64, var: &[(usize, i32)], der: &[(usize, u32)]) -> WeylOp {
        let n = self.chart.slots();
        let mut v = vec![0; n];
        let mut d = vec![0; n];
        for &(s, e) in var {
            v[s] += e;
        }
        for &(s, e) in der {
            d[s] += e;
        }
        WeylOp::term(self.chart, coef, HalfInt::from_twice(exp_twice), &v, &d)
    }
}

fn half_int_to_i64(q: HalfInt) -> i64 {
    q.to_integer().expect("integer value")
}

/// Generators in the free chart `(t, y_1, …, y_L)`.
pub fn free_generators(ell: HalfInt) -> Result<GenMap> {
    let chart = Chart::free(ell)?;
    let b = Terms { chart };
    let big_l = chart.space_dim();
    let half = HalfInt::HALF;
    let weight = |a: usize| (HalfInt::from_int(a as i64) - half).to_rational();

    let mut gens = GenMap::new();
    gens.insert(GenLabel::ZPlus, WeylOp::der(chart, 0));

    let mut z0 = b.op(q(rat(-1, 1)), 0, &[(0, 1)], &[(0, 1)]);
    for a in 1..=big_l {
        z0 = z0 + b.op(q(-weight(a)), 0, &[(a, 1)], &[(a, 1)]);
    }
    z0 = z0 + WeylOp::constant(chart, q(-delta(ell)));

    let t = WeylOp::var(chart, 0);
    let mut zm = &(&t * &z0).scale(&q(rat(2, 1))) + &b.op(q(rat(1, 1)), 0, &[(0, 2)], &[(0, 1)]);
    for a in 1..big_l {
        let coef = (ell + HalfInt::from_int(a as i64) + half).to_rational();
        zm = zm - b.op(q(coef), 0, &[(a + 1, 1)], &[(a, 1)]);
    }
    let lp = (ell + half).to_rational();
    zm = zm - b.op(qc(lp / BigInt::from(2)), 0, &[(1, 2)], &[]);
    gens.insert(GenLabel::ZZero, z0);
    gens.insert(GenLabel::ZMinus, zm);

    let ell_minus_half = half_int_to_i64(ell - half);
    let ell_plus_half = half_int_to_i64(ell + half);
    let mut j = half;
    while j <= ell {
        // w_j
        let n = half_int_to_i64(ell - j);
        let mut wp = WeylOp::zero(chart);
        for k in 0..=n {
            let c = BigRational::from_integer(binom(n as u32, k as u32));
            wp = wp + b.op(q(c), 0, &[(0, (n - k) as i32)], &[(big_l - k as usize, 1)]);
        }
        gens.insert(GenLabel::W(j), wp);

        // w_{-j}
        let m = half_int_to_i64(ell + j);
        let mut wm = WeylOp::zero(chart);
        for k in 0..=ell_minus_half {
            let c = BigRational::from_integer(binom(m as u32, k as u32));
            wm = wm + b.op(q(c), 0, &[(0, (m - k) as i32)], &[(big_l - k as usize, 1)]);
        }
        let prefactor = BigRational::new(
            factorial(m),
            factorial(ell_minus_half) * factorial(ell_plus_half),
        );
        let top = half_int_to_i64(j + half);
        for a in 1..=top {
            let sign = if a % 2 == 0 { 1 } else { -1 };
            let ratio = BigRational::new(factorial(ell_plus_half - a), factorial(top - a));
            let coef = -(&prefactor * &ratio) * BigInt::from(sign);
            wm = wm + b.op(qc(coef), 0, &[(0, (top - a) as i32), (a as usize, 1)], &[]);
        }
        gens.insert(GenLabel::W(-j), wm);
        j = j + HalfInt::ONE;
    }
    gens.insert(GenLabel::C, WeylOp::constant(chart, CScalar::symbol()));
    Ok(gens)
}

/// Generators in the oscillator chart `(s, u_1, …, u_L)`.
pub fn osc_generators(ell: HalfInt, norm: OscNormalization) -> Result<GenMap> {
    match norm {
        OscNormalization::Section5 => {
            norm.require_available(ell)?;
            Ok(osc_fixture_three_halves())
        }
        OscNormalization::Section7 => osc_generators_general(ell),
    }
}

fn osc_generators_general(ell: HalfInt) -> Result<GenMap> {
    let chart = Chart::osc(ell)?;
    let b = Terms { chart };
    let big_l = chart.space_dim();
    let half = HalfInt::HALF;
    let weight = |a: usize| (HalfInt::from_int(a as i64) - half).to_rational();
    let tw = two_ell_plus_one(ell);
    let dl = delta(ell);
    let lp = (ell + half).to_rational();

    // Σ (a − 1/2) u_a ∂_a
    let mut euler = WeylOp::zero(chart);
    for a in 1..=big_l {
        euler = euler + b.op(q(weight(a)), 0, &[(a, 1)], &[(a, 1)]);
    }
    let ds = WeylOp::der(chart, 0);
    let one = BigRational::one();

    let mut gens = GenMap::new();
    let inner_plus = &(&(&ds - &euler) + &b.op(qc(&one / (&tw * BigInt::from(2))), 0, &[(1, 2)], &[]))
        - &WeylOp::constant(chart, q(dl.clone()));
    gens.insert(GenLabel::ZPlus, WeylOp::exp_weight(chart, -HalfInt::ONE) * inner_plus);
    gens.insert(GenLabel::ZZero, -&ds);

    let mut inner_minus = &(-&ds) - &euler;
    for a in 1..big_l {
        let coef = (ell + half + HalfInt::from_int(a as i64)).to_rational();
        inner_minus = inner_minus - b.op(q(coef), 0, &[(a + 1, 1)], &[(a, 1)]);
    }
    let u1sq = (&(&one / &tw) - &lp) / BigInt::from(2);
    inner_minus = inner_minus + b.op(qc(u1sq), 0, &[(1, 2)], &[]);
    if big_l >= 2 {
        let coef = (&tw + BigInt::from(2)) / (&tw * BigInt::from(2));
        inner_minus = inner_minus + b.op(qc(coef), 0, &[(1, 1), (2, 1)], &[]);
    }
    inner_minus = inner_minus - WeylOp::constant(chart, q(dl));
    gens.insert(GenLabel::ZMinus, WeylOp::exp_weight(chart, HalfInt::ONE) * inner_minus);

    let ell_minus_half = half_int_to_i64(ell - half);
    let ell_plus_half = half_int_to_i64(ell + half);
    let mut j = half;
    while j <= ell {
        let n = half_int_to_i64(ell - j);
        let mut wp = WeylOp::zero(chart);
        for k in 0..=n {
            let c = BigRational::from_integer(binom(n as u32, k as u32));
            wp = wp + b.op(q(c), -j.twice(), &[], &[(big_l - k as usize, 1)]);
        }
        if j == half {
            wp = wp - b.op(qc(&one / &tw), -1, &[(1, 1)], &[]);
        }
        gens.insert(GenLabel::W(j), wp);

        let m = half_int_to_i64(ell + j);
        let mut wm = WeylOp::zero(chart);
        for k in 0..=ell_minus_half {
            let c = BigRational::from_integer(binom(m as u32, k as u32));
            wm = wm + b.op(q(c), j.twice(), &[], &[(big_l - k as usize, 1)]);
        }
        let prefactor = BigRational::new(
            factorial(m),
            factorial(ell_minus_half) * factorial(ell_plus_half),
        );
        let top = half_int_to_i64(j + half);
        for a in 1..=top {
            let sign = if a % 2 == 0 { 1 } else { -1 };
            let ratio = BigRational::new(factorial(ell_plus_half - a), factorial(top - a));
            let coef = -(&prefactor * &ratio) * BigInt::from(sign);
            wm = wm + b.op(qc(coef), j.twice(), &[(a as usize, 1)], &[]);
        }
        let extra = BigRational::from_integer(binom(m as u32, ell_minus_half as u32)) / &tw;
        wm = wm - b.op(qc(extra), j.twice(), &[(1, 1)], &[]);
        gens.insert(GenLabel::W(-j), wm);
        j = j + HalfInt::ONE;
    }
    gens.insert(GenLabel::C, WeylOp::constant(chart, CScalar::symbol()));
    Ok(gens)
}

/// The `ℓ = 3/2` free-chart reference generators, in `(t, x, y)`.
pub fn free_fixture_three_halves() -> GenMap {
    let chart = Chart::free(three_halves()).expect("valid ell");
    let b = Terms { chart };
    let (t, x, y) = (0, 1, 2);
    let c = CScalar::symbol;
    let k = |n: i64, d: i64| q(rat(n, d));
    let kc = |n: i64| qc(rat(n, 1));
    let mut g = GenMap::new();
    g.insert(GenLabel::ZPlus, b.op(k(1, 1), 0, &[], &[(t, 1)]));
    g.insert(
        GenLabel::ZZero,
        b.op(k(-1, 1), 0, &[(t, 1)], &[(t, 1)])
            + b.op(k(-1, 2), 0, &[(x, 1)], &[(x, 1)])
            + b.op(k(-3, 2), 0, &[(y, 1)], &[(y, 1)])
            + b.op(k(-1, 1), 0, &[], &[]),
    );
    g.insert(
        GenLabel::ZMinus,
        b.op(k(-1, 1), 0, &[(t, 2)], &[(t, 1)])
            + b.op(k(-1, 1), 0, &[(t, 1), (x, 1)], &[(x, 1)])
            + b.op(k(-3, 1), 0, &[(t, 1), (y, 1)], &[(y, 1)])
            + b.op(k(-3, 1), 0, &[(y, 1)], &[(x, 1)])
            + b.op(kc(-1), 0, &[(x, 2)], &[])
            + b.op(k(-2, 1), 0, &[(t, 1)], &[]),
    );
    let h = HalfInt::from_twice;
    g.insert(GenLabel::W(h(3)), b.op(k(1, 1), 0, &[], &[(y, 1)]));
    g.insert(
        GenLabel::W(h(1)),
        b.op(k(1, 1), 0, &[(t, 1)], &[(y, 1)]) + b.op(k(1, 1), 0, &[], &[(x, 1)]),
    );
    g.insert(
        GenLabel::W(h(-1)),
        b.op(k(1, 1), 0, &[(t, 2)], &[(y, 1)])
            + b.op(k(2, 1), 0, &[(t, 1)], &[(x, 1)])
            + b.op(c(), 0, &[(x, 1)], &[]),
    );
    g.insert(
        GenLabel::W(h(-3)),
        b.op(k(1, 1), 0, &[(t, 3)], &[(y, 1)])
            + b.op(k(3, 1), 0, &[(t, 2)], &[(x, 1)])
            + b.op(kc(3), 0, &[(t, 1), (x, 1)], &[])
            + b.op(kc(-3), 0, &[(y, 1)], &[]),
    );
    g.insert(GenLabel::C, WeylOp::constant(chart, c()));
    g
}

/// The `ℓ = 3/2` oscillator-chart reference generators, in `(s, u, v)`.
pub fn osc_fixture_three_halves() -> GenMap {
    let chart = Chart::osc(three_halves()).expect("valid ell");
    let b = Terms { chart };
    let (s, u, v) = (0, 1, 2);
    let k = |n: i64, d: i64| q(rat(n, d));
    let kc = |n: i64, d: i64| qc(rat(n, d));
    let mut g = GenMap::new();
    g.insert(
        GenLabel::ZPlus,
        b.op(k(1, 1), -2, &[], &[(s, 1)])
            + b.op(k(-1, 2), -2, &[(u, 1)], &[(u, 1)])
            + b.op(k(-3, 2), -2, &[(v, 1)], &[(v, 1)])
            + b.op(k(-1, 1), -2, &[], &[])
            + b.op(kc(1, 2), -2, &[(u, 2)], &[]),
    );
    g.insert(GenLabel::ZZero, b.op(k(-1, 1), 0, &[], &[(s, 1)]));
    g.insert(
        GenLabel::ZMinus,
        b.op(k(-1, 1), 2, &[], &[(s, 1)])
            + b.op(k(-1, 2), 2, &[(u, 1)], &[(u, 1)])
            + b.op(k(-3, 2), 2, &[(v, 1)], &[(v, 1)])
            + b.op(k(-3, 1), 2, &[(v, 1)], &[(u, 1)])
            + b.op(kc(-1, 2), 2, &[(u, 2)], &[])
            + b.op(k(-1, 1), 2, &[], &[])
            + b.op(kc(3, 1), 2, &[(u, 1), (v, 1)], &[]),
    );
    let h = HalfInt::from_twice;
    g.insert(GenLabel::W(h(3)), b.op(k(1, 1), -3, &[], &[(v, 1)]));
    g.insert(
        GenLabel::W(h(1)),
        b.op(k(1, 1), -1, &[], &[(v, 1)])
            + b.op(k(1, 1), -1, &[], &[(u, 1)])
            + b.op(kc(-1, 1), -1, &[(u, 1)], &[]),
    );
    g.insert(
        GenLabel::W(h(-1)),
        b.op(k(1, 1), 1, &[], &[(v, 1)])
            + b.op(k(2, 1), 1, &[], &[(u, 1)])
            + b.op(kc(-1, 1), 1, &[(u, 1)], &[]),
    );
    g.insert(
        GenLabel::W(h(-3)),
        b.op(k(1, 1), 3, &[], &[(v, 1)])
            + b.op(k(3, 1), 3, &[], &[(u, 1)])
            + b.op(kc(-3, 1), 3, &[(v, 1)], &[]),
    );
    g.insert(GenLabel::C, WeylOp::constant(chart, CScalar::symbol()));
    g
}

/// Checks that each generator is homogeneous of its label degree under the
/// realized `z_0`; returns the first offender.
pub fn check_gradings(gens: &GenMap) -> Result<()> {
    use crate::weyl::Grading;
    let z0 = gens
        .get(&GenLabel::ZZero)
        .ok_or_else(|| Error::Inconsistent("no z0".into()))?;
    for (l, g) in gens {
        let ok = match g.degree_of(z0)? {
            Grading::Homogeneous(r) => r == l.degree(),
            Grading::Zero => true,
            Grading::NonHomogeneous => false,
        };
        if !ok {
            return Err(Error::Mismatch {
                label: format!("degree of {l}"),
                residual: crate::weyl::render::describe(g),
            });
        }
    }
    Ok(())
}

/// Term-by-term homogeneity of a free-chart operator under the scaling
/// dimensions `[t] = −1`, `[y_a] = −(a − 1/2)`, `[c] = 0`: every term must
/// carry total dimension `r` for a degree-`r` generator.
pub fn scaling_degree(op: &WeylOp) -> Option<HalfInt> {
    let chart = op.chart();
    let mut found: Option<HalfInt> = None;
    for m in op.terms().keys() {
        let mut d = HalfInt::ZERO;
        for slot in 0..chart.slots() {
            let dim = chart.scaling_dimension(slot);
            let e = i64::from(m.var[slot]) - i64::from(m.der[slot]);
            d = d + dim * e;
        }
        match found {
            None => found = Some(d),
            Some(f) if f != d => return None,
            _ => {}
        }
    }
    found
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{extract_structure, verify_isomorphic_tables, AlgebraElement, BracketRule};

    fn h(t: i64) -> HalfInt {
        HalfInt::from_twice(t)
    }

    #[test]
    fn general_factory_matches_printed_fixture() {
        let general = free_generators(h(3)).unwrap();
        let fixture = free_fixture_three_halves();
        assert_eq!(general, fixture);
        assert_eq!(delta(h(3)), rat(1, 1));
    }

    #[test]
    fn general_osc_family_at_three_halves() {
        let g = osc_generators(h(3), OscNormalization::Section7).unwrap();
        assert_eq!(g[&GenLabel::ZZero], -&WeylOp::der(Chart::osc(h(3)).unwrap(), 0));
        let w = &g[&GenLabel::W(h(1))];
        let m = crate::weyl::Monomial {
            exp_s: h(-1),
            var: vec![0, 1, 0],
            der: vec![0, 0, 0],
        };
        assert_eq!(w.coeff(&m), CScalar::monomial(rat(-1, 4), 1));
        assert_eq!(lambda(h(3)), CScalar::monomial(rat(-1, 4), 1));
    }

    #[test]
    fn schroedinger_special_conformal() {
        let g = free_generators(h(1)).unwrap();
        let ch = Chart::free(h(1)).unwrap();
        let t = WeylOp::var(ch, 0);
        let expected = &(&(&t * &g[&GenLabel::ZZero]).scale(&CScalar::from_ratio(2, 1))
            + &(&t * &t * WeylOp::der(ch, 0)))
            - &WeylOp::var(ch, 1).pow(2).scale(&CScalar::monomial(rat(1, 2), 1));
        assert_eq!(g[&GenLabel::ZMinus], expected);
    }

    #[test]
    fn section5_is_three_halves_only() {
        assert!(matches!(
            osc_generators(h(5), OscNormalization::Section5),
            Err(Error::NormalizationUnavailable { .. })
        ));
        assert!(osc_generators(h(3), OscNormalization::Section5).is_ok());
    }

    #[test]
    fn gradings_and_scaling_dimensions() {
        for t in [1, 3, 5, 7, 9] {
            let free = free_generators(h(t)).unwrap();
            check_gradings(&free).unwrap();
            check_gradings(&osc_generators(h(t), OscNormalization::Section7).unwrap()).unwrap();
            for (l, g) in &free {
                assert_eq!(scaling_degree(g), Some(l.degree()), "{l} at ell = {}", h(t));
            }
        }
        check_gradings(&osc_fixture_three_halves()).unwrap();
    }

    #[test]
    fn heisenberg_pairs_at_three_halves() {
        let t = extract_structure(&free_generators(h(3)).unwrap(), BracketRule::Lie).unwrap();
        assert_eq!(
            t.bracket(GenLabel::W(h(1)), GenLabel::W(h(-1))),
            AlgebraElement::basis(GenLabel::C)
        );
        assert_eq!(
            t.bracket(GenLabel::W(h(3)), GenLabel::W(h(-3))),
            AlgebraElement::term(GenLabel::C, CScalar::from_ratio(-3, 1))
        );
        let osc = extract_structure(
            &osc_generators(h(3), OscNormalization::Section7).unwrap(),
            BracketRule::Lie,
        )
        .unwrap();
        assert!(verify_isomorphic_tables(&t, &osc));
    }
}
