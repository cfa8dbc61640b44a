#![allow(dead_code)]

use lcga::scalar::rat;
use lcga::weyl::{Chart, FuncMonomial};
use lcga::{CScalar, GaussFunc, HalfInt, WeylOp};
use rand::Rng;

pub fn h(twice: i64) -> HalfInt {
    HalfInt::from_twice(twice)
}

/// `(n/d)·c^k`.
pub fn cm(n: i64, d: i64, k: i32) -> CScalar {
    CScalar::monomial(rat(n, d), k)
}

pub fn q(n: i64, d: i64) -> CScalar {
    cm(n, d, 0)
}

/// Single term `a · e^{μs} x^var ∂^der`.
pub fn mono(chart: Chart, a: CScalar, twice_mu: i64, var: &[i32], der: &[u32]) -> WeylOp {
    WeylOp::term(chart, a, h(twice_mu), var, der)
}

/// `x_a ∂_b`.
pub fn xd(chart: Chart, a: usize, b: usize) -> WeylOp {
    &WeylOp::var(chart, a) * &WeylOp::der(chart, b)
}

pub fn random_scalar(rng: &mut impl Rng) -> CScalar {
    let mut out = q(0, 1);
    for _ in 0..rng.gen_range(1..=2) {
        let n = rng.gen_range(-4..=4);
        let d = rng.gen_range(1..=3);
        out += cm(n, d, rng.gen_range(-1..=1));
    }
    out
}

/// A random operator with a handful of terms; the oscillator chart gets
/// exponential weights and no powers of `s`.
pub fn random_operator(rng: &mut impl Rng, chart: Chart) -> WeylOp {
    let n = chart.slots();
    let mut op = WeylOp::zero(chart);
    for _ in 0..rng.gen_range(1..=4) {
        let mut var: Vec<i32> = (0..n).map(|_| rng.gen_range(0..=2)).collect();
        let der: Vec<u32> = (0..n).map(|_| rng.gen_range(0..=2)).collect();
        let mu = if chart.is_osc() {
            var[0] = 0;
            rng.gen_range(-3..=3)
        } else {
            0
        };
        op = op + mono(chart, random_scalar(rng), mu, &var, &der);
    }
    op
}

pub fn random_function(rng: &mut impl Rng, chart: Chart, kappa: CScalar) -> GaussFunc {
    let n = chart.slots();
    let terms: Vec<(FuncMonomial, CScalar)> = (0..rng.gen_range(1..=3))
        .map(|_| {
            let mut var: Vec<i32> = (0..n).map(|_| rng.gen_range(0..=3)).collect();
            let mu = if chart.is_osc() {
                var[0] = 0;
                rng.gen_range(-3..=3)
            } else {
                0
            };
            (FuncMonomial { exp_s: h(mu), var }, random_scalar(rng))
        })
        .collect();
    GaussFunc::from_terms(chart, kappa, terms)
}

/// Half-odd `ℓ` up to 7/2 and one of the two charts.
pub fn random_chart(rng: &mut impl Rng) -> Chart {
    let ell = h(2 * rng.gen_range(0..4) + 1);
    if rng.gen_bool(0.5) {
        Chart::free(ell).unwrap()
    } else {
        Chart::osc(ell).unwrap()
    }
}
