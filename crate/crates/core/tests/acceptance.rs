//! Acceptance gate. Runs every criterion, prints one PASS/FAIL line each and
//! exits non-zero if any fails. Expected values are transcribed here by hand
//! and do not go through the library's own fixtures.

mod common;

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::Instant;

use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::*;
use lcga::algebra::{extract_structure, AlgebraElement, BracketRule, GenLabel, GenMap};
use lcga::enlarged::{build_enlarged, duality_report, JacobiPlan};
use lcga::onshell::{certify_onshell, omega1_free, solve_omega1};
use lcga::realizations::{free_generators, OscNormalization};
use lcga::scalar::rat;
use lcga::spectrum::{
    hamiltonian, harmonic_reduction, ladder_state, m_form, matrix_oracle, spectrum, vacuum_energy, weighted_grade,
    HamiltonianNormalization,
};
use lcga::transform::{Transform, TransformSpec};
use lcga::weyl::{apply, Chart, FuncMonomial, Substitution};
use lcga::{CScalar, GaussFunc, HalfInt, WeylOp};

type Outcome = Result<String, String>;

fn ells() -> impl Iterator<Item = HalfInt> {
    [1, 3, 5, 7, 9].into_iter().map(h)
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lib<T>(r: lcga::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

// ---------------------------------------------------------------------------
// 1. structure constants at ℓ = 3/2

fn printed_commutators() -> BTreeMap<(GenLabel, GenLabel), AlgebraElement> {
    use GenLabel::*;
    let w = |t: i64| W(h(t));
    let e = |l: GenLabel, n: i64, d: i64| AlgebraElement::term(l, q(n, d));
    let mut t = BTreeMap::new();
    let mut put = |a: GenLabel, b: GenLabel, v: AlgebraElement| {
        t.insert((b, a), v.scale(&q(-1, 1)));
        t.insert((a, b), v);
    };
    put(ZPlus, ZMinus, e(ZZero, 2, 1));
    put(ZZero, ZPlus, e(ZPlus, 1, 1));
    put(ZZero, ZMinus, e(ZMinus, -1, 1));
    put(ZZero, w(3), e(w(3), 3, 2));
    put(ZZero, w(-3), e(w(-3), -3, 2));
    put(ZZero, w(1), e(w(1), 1, 2));
    put(ZZero, w(-1), e(w(-1), -1, 2));
    put(ZPlus, w(1), e(w(3), 1, 1));
    put(ZMinus, w(-1), e(w(-3), 1, 1));
    put(ZPlus, w(-1), e(w(1), 2, 1));
    put(ZMinus, w(1), e(w(-1), 2, 1));
    put(ZPlus, w(-3), e(w(-1), 3, 1));
    put(ZMinus, w(3), e(w(1), 3, 1));
    put(w(1), w(-1), e(C, 1, 1));
    put(w(3), w(-3), e(C, -3, 1));
    t
}

fn criterion_1() -> Outcome {
    let gens = lib(free_generators(h(3)))?;
    let table = lib(extract_structure(&gens, BracketRule::Lie))?;
    let printed = printed_commutators();
    let labels: Vec<GenLabel> = gens.keys().copied().collect();
    check(labels.len() == 8, || format!("{} generators", labels.len()))?;
    let mut nonzero = 0;
    for &a in &labels {
        for &b in &labels {
            let want = printed.get(&(a, b)).cloned().unwrap_or_else(AlgebraElement::zero);
            let got = table.bracket(a, b);
            check(got == want, || format!("[{a}, {b}] = {got}, printed {want}"))?;
            nonzero += usize::from(!want.is_zero());
        }
    }
    Ok(format!("{} ordered pairs, {nonzero} nonzero", labels.len().pow(2)))
}

// ---------------------------------------------------------------------------
// 2. dimensions and closure

fn criterion_2() -> Outcome {
    let mut notes = Vec::new();
    for ell in ells() {
        let l = ell.to_rational();
        let as_usize = |r: BigRational| r.to_integer().to_usize().unwrap();
        let even = as_usize(rat(2, 1) * &l * &l + rat(3, 1) * &l + rat(5, 1));
        let odd = as_usize(rat(2, 1) * &l + rat(1, 1));
        let ecga = as_usize(rat(2, 1) * &l * &l + rat(5, 1) * &l + rat(6, 1));
        let basis = lib(build_enlarged(&lib(free_generators(ell))?))?;
        let r = lib(duality_report(&basis, JacobiPlan::default()))?;
        check((r.even_dim, r.odd_dim, r.ecga_dim) == (even, odd, ecga), || {
            format!("l={ell}: dims {:?} vs {:?}", (r.even_dim, r.odd_dim, r.ecga_dim), (even, odd, ecga))
        })?;
        check(r.sp_closed && r.osp_closed && r.shared_operators, || format!("l={ell}: {r:?}"))?;
        check(r.jacobi_failures.is_empty(), || format!("l={ell}: {:?}", r.jacobi_failures))?;
        let n = ecga;
        let floor = if ell <= h(3) { n * (n - 1) * (n - 2) / 6 } else { 500 };
        check(r.lie_jacobi_checked >= floor && r.graded_jacobi_checked >= floor, || {
            format!("l={ell}: only {} / {} triples", r.lie_jacobi_checked, r.graded_jacobi_checked)
        })?;
        notes.push(format!("l={ell}: {even}+{odd}, ecga {ecga}"));
    }
    Ok(notes.join("; "))
}

// ---------------------------------------------------------------------------
// 3. degree-one on-shell operator

/// `∂_t + Σ_a (ℓ+½−a) y_a ∂_{a+1} − (ℓ+½)/(2c) ∂_1²`, written out again.
fn printed_omega1(ell: HalfInt) -> WeylOp {
    let ch = Chart::free(ell).unwrap();
    let big_l = ((ell.twice() + 1) / 2) as usize;
    let mut op = WeylOp::der(ch, 0);
    for a in 1..big_l {
        op = op + xd(ch, a, a + 1).scale(&q(big_l as i64 - a as i64, 1));
    }
    let mut d2 = vec![0; ch.slots()];
    d2[1] = 2;
    op + mono(ch, cm(-(big_l as i64), 2, -1), 0, &vec![0; ch.slots()], &d2)
}

fn criterion_3() -> Outcome {
    for ell in ells() {
        let ch = Chart::free(ell).unwrap();
        let omega = printed_omega1(ell);
        check(lib(omega1_free(ell))? == omega, || format!("l={ell}: library operator differs"))?;
        let basis = lib(build_enlarged(&lib(free_generators(ell))?))?;
        let zeros = vec![0u32; ch.slots()];
        let mut t1 = vec![0; ch.slots()];
        t1[0] = 1;
        let two_t = mono(ch, q(2, 1), 0, &t1, &zeros);
        let one = WeylOp::identity(ch);
        let expected = |l: GenLabel| match l {
            GenLabel::ZMinus => Some(two_t.clone()),
            GenLabel::ZZero => Some(one.clone()),
            _ => None,
        };
        // Direct commutators first, independent of the certificate.
        for (l, g) in basis.realized().iter() {
            let lhs = lib(g.commutator(&omega))?;
            let rhs = expected(*l).map(|f| &f * &omega).unwrap_or_else(|| WeylOp::zero(ch));
            check(lhs == rhs, || format!("l={ell}: [{l}, Omega1] is off"))?;
        }
        let cert = lib(certify_onshell(&omega, basis.realized()))?;
        check(cert.passed(), || format!("l={ell}: certificate failed"))?;
        let want: BTreeMap<GenLabel, WeylOp> =
            [(GenLabel::ZMinus, two_t.clone()), (GenLabel::ZZero, one.clone())].into_iter().collect();
        check(cert.nonzero() == want, || format!("l={ell}: multiplier table {:?}", cert.nonzero().keys()))?;
        let sol = lib(solve_omega1(ell))?;
        check(sol.dimension == 1, || format!("l={ell}: solution dimension {}", sol.dimension))?;
        check(sol.operator == omega, || format!("l={ell}: solver found a different operator"))?;
    }
    // The abstract combinations at ℓ = 3/2, transcribed.
    let ell = h(3);
    let basis = lib(build_enlarged(&lib(free_generators(ell))?))?;
    let ww = GenLabel::ww;
    let omega0 = AlgebraElement::from_terms([
        (GenLabel::ZZero, q(1, 1)),
        (ww(h(1), h(-1)), cm(1, 4, -1)),
        (ww(h(3), h(-3)), cm(-1, 4, -1)),
    ]);
    let omega1 = AlgebraElement::from_terms([
        (GenLabel::ZPlus, q(1, 1)),
        (ww(h(3), h(-1)), cm(1, 2, -1)),
        (ww(h(1), h(1)), cm(-1, 2, -1)),
    ]);
    let ch = Chart::free(ell).unwrap();
    let o1 = lib(omega1.realize(basis.realized()))?;
    let o0 = lib(omega0.realize(basis.realized()))?;
    // ∂_t + x∂_y − (1/c)∂_x².
    let printed = WeylOp::der(ch, 0) + xd(ch, 1, 2) + mono(ch, cm(-1, 1, -1), 0, &[0, 0, 0], &[0, 2, 0]);
    check(o1 == printed, || "abstract Omega1 does not realize to the printed operator".into())?;
    check(o0 == -(&WeylOp::var(ch, 0) * &printed), || "abstract Omega0 is not -t Omega1".into())?;
    Ok("l = 1/2 .. 9/2 certified, solver dimension 1, abstract pair realized at 3/2".into())
}

// ---------------------------------------------------------------------------
// 4. transformation

fn printed_section5() -> GenMap {
    let ch = Chart::osc(h(3)).unwrap();
    let z = [0, 0, 0];
    let e = |mu: i64, op: WeylOp| &WeylOp::exp_weight(ch, h(mu)) * &op;
    let ds = WeylOp::der(ch, 0);
    let du = WeylOp::der(ch, 1);
    let dv = WeylOp::der(ch, 2);
    let u = |a: CScalar| mono(ch, a, 0, &[0, 1, 0], &z);
    let v = |a: CScalar| mono(ch, a, 0, &[0, 0, 1], &z);
    let uu = |a: CScalar| mono(ch, a, 0, &[0, 2, 0], &z);
    let uv = |a: CScalar| mono(ch, a, 0, &[0, 1, 1], &z);
    let one = WeylOp::identity(ch);
    let half = rat(1, 2);
    let three_half = rat(3, 2);
    let mut g = GenMap::new();
    g.insert(
        GenLabel::ZPlus,
        e(-2, ds.clone() - xd(ch, 1, 1).scale_rational(&half) - xd(ch, 2, 2).scale_rational(&three_half) - one.clone()
            + uu(cm(1, 2, 1))),
    );
    g.insert(GenLabel::ZZero, -ds.clone());
    g.insert(
        GenLabel::ZMinus,
        e(2, -ds - xd(ch, 1, 1).scale_rational(&half) - xd(ch, 2, 2).scale_rational(&three_half)
            - xd(ch, 2, 1).scale_rational(&rat(3, 1))
            - uu(cm(1, 2, 1))
            - one
            + uv(cm(3, 1, 1))),
    );
    g.insert(GenLabel::W(h(3)), e(-3, dv.clone()));
    g.insert(GenLabel::W(h(1)), e(-1, dv.clone() + du.clone() - u(cm(1, 1, 1))));
    g.insert(GenLabel::W(h(-1)), e(1, dv.clone() + du.scale_rational(&rat(2, 1)) - u(cm(1, 1, 1))));
    g.insert(GenLabel::W(h(-3)), e(3, dv + WeylOp::der(ch, 1).scale_rational(&rat(3, 1)) - v(cm(3, 1, 1))));
    g.insert(GenLabel::C, WeylOp::constant(ch, cm(1, 1, 1)));
    g
}

fn factorial(n: i64) -> BigInt {
    (1..=n).map(BigInt::from).product()
}

/// The general-ℓ oscillator generators, evaluated term by term.
fn printed_section7(ell: HalfInt) -> GenMap {
    let ch = Chart::osc(ell).unwrap();
    let big_l = (ell.twice() + 1) / 2;
    let l = ell.to_rational();
    let tw = rat(ell.twice() + 1, 1);
    let delta = (&l + rat(1, 2)).pow(2) / rat(4, 1);
    let n = ch.slots();
    let zero = vec![0u32; n];
    let e = |twice_mu: i64, op: WeylOp| &WeylOp::exp_weight(ch, h(twice_mu)) * &op;
    let u_pow = |a: usize, k: i32, coef: CScalar| {
        let mut v = vec![0; n];
        v[a] += k;
        mono(ch, coef, 0, &v, &zero)
    };
    let c_times = |r: BigRational| CScalar::monomial(r, 1);
    let euler = (1..=big_l as usize).fold(WeylOp::zero(ch), |acc, a| {
        acc + xd(ch, a, a).scale_rational(&(rat(a as i64, 1) - rat(1, 2)))
    });
    let const_delta = WeylOp::constant(ch, CScalar::constant(delta.clone()));

    let mut g = GenMap::new();
    let ds = WeylOp::der(ch, 0);
    g.insert(
        GenLabel::ZPlus,
        e(-2, ds.clone() - euler.clone() + u_pow(1, 2, c_times(rat(1, 2) / &tw)) - const_delta.clone()),
    );
    g.insert(GenLabel::ZZero, -ds.clone());
    let mut zm = -ds - euler;
    for a in 1..big_l as usize {
        zm = zm - xd(ch, a + 1, a).scale_rational(&(rat(big_l, 1) + rat(a as i64, 1)));
    }
    zm = zm + u_pow(1, 2, c_times(rat(1, 2) * (rat(1, 1) / &tw - rat(big_l, 1))));
    if big_l >= 2 {
        let mut v = vec![0; n];
        v[1] = 1;
        v[2] = 1;
        zm = zm + mono(ch, c_times(rat(1, 2) * rat(ell.twice() + 3, 1) / &tw), 0, &v, &zero);
    }
    zm = zm - const_delta;
    g.insert(GenLabel::ZMinus, e(2, zm));

    let bin = |a: i64, b: i64| -> BigRational { BigRational::from_integer(binomial(BigInt::from(a), BigInt::from(b))) };
    let der = |k: i64| WeylOp::der(ch, (big_l - k) as usize);
    for jt in (1..=ell.twice()).step_by(2) {
        // ℓ − j and ℓ + j are integers.
        let lmj = (ell.twice() - jt) / 2;
        let lpj = (ell.twice() + jt) / 2;
        let mut plus = WeylOp::zero(ch);
        for k in 0..=lmj {
            plus = plus + der(k).scale_rational(&bin(lmj, k));
        }
        plus = e(-jt, plus);
        if jt == 1 {
            plus = plus - e(-1, u_pow(1, 1, c_times(rat(1, 1) / &tw)));
        }
        g.insert(GenLabel::W(h(jt)), plus);

        let mut minus = WeylOp::zero(ch);
        for k in 0..big_l {
            minus = minus + der(k).scale_rational(&bin(lpj, k));
        }
        let pref = BigRational::new(factorial(lpj), factorial(big_l - 1) * factorial(big_l));
        let jh = (jt + 1) / 2;
        for a in 1..=jh {
            let sign = if a % 2 == 0 { rat(1, 1) } else { rat(-1, 1) };
            let r = BigRational::new(factorial(big_l - a), factorial(jh - a));
            minus = minus - u_pow(a as usize, 1, c_times(&pref * sign * r));
        }
        minus = minus - u_pow(1, 1, c_times(bin(lpj, big_l - 1) / &tw));
        g.insert(GenLabel::W(h(-jt)), e(jt, minus));
    }
    g.insert(GenLabel::C, WeylOp::constant(ch, cm(1, 1, 1)));
    g
}

fn criterion_4() -> Outcome {
    let mut notes = Vec::new();
    let cases = [(h(3), OscNormalization::Section5)]
        .into_iter()
        .chain([1, 3, 5, 7].map(|t| (h(t), OscNormalization::Section7)));
    for (ell, norm) in cases {
        let printed = match norm {
            OscNormalization::Section5 => printed_section5(),
            OscNormalization::Section7 => printed_section7(ell),
        };
        let free = lib(free_generators(ell))?;
        let tau = lib(Transform::new(lib(TransformSpec::new(ell, norm))?))?;
        let mapped = lib(tau.apply_all(&free))?;
        check(mapped.len() == printed.len(), || format!("l={ell}: {} vs {}", mapped.len(), printed.len()))?;
        for (l, want) in &printed {
            let got = mapped.get(l).ok_or_else(|| format!("l={ell}: no image for {l}"))?;
            check(got == want, || {
                format!("l={ell} {}: {l} residual {}", norm.name(), lcga::weyl::render::describe(&(got - want)))
            })?;
        }
        let before = lib(extract_structure(&free, BracketRule::Lie))?;
        let after = lib(extract_structure(&printed, BracketRule::Lie))?;
        check(before == after, || format!("l={ell}: structure tables differ"))?;
        notes.push(format!("{}@{ell}: {}", norm.name(), printed.len()));
    }
    Ok(notes.join(", "))
}

// ---------------------------------------------------------------------------
// 5. Hamiltonian table

/// Rows as `(term, n, d, power of m)`. `dK^2` is `∂_K²`, `uK^2` is `u_K²`,
/// `uAdB` is `u_A ∂_B`, `1` the constant.
type Row = (i64, Vec<(&'static str, i64, i64, i32)>);

fn printed_rows() -> Vec<Row> {
    let kin = [("d1^2", -1, 2, -1), ("u1^2", 1, 2, 1)];
    let row = |extra: &[(&'static str, i64, i64, i32)]| kin.iter().chain(extra).copied().collect::<Vec<_>>();
    vec![
        (1, row(&[])),
        (3, row(&[("u2d2", 3, 1, 0), ("u1d2", -2, 1, 0), ("1", 3, 2, 0)])),
        (5, row(&[("u2d2", 3, 1, 0), ("u3d3", 5, 1, 0), ("u1d2", -4, 1, 0), ("u2d3", -2, 1, 0), ("1", 4, 1, 0)])),
        (
            7,
            row(&[
                ("u2d2", 3, 1, 0),
                ("u3d3", 5, 1, 0),
                ("u4d4", 7, 1, 0),
                ("u1d2", -6, 1, 0),
                ("u2d3", -4, 1, 0),
                ("u3d4", -2, 1, 0),
                ("1", 15, 2, 0),
            ]),
        ),
        (
            9,
            row(&[
                ("u2d2", 3, 1, 0),
                ("u3d3", 5, 1, 0),
                ("u4d4", 7, 1, 0),
                ("u5d5", 9, 1, 0),
                ("u1d2", -8, 1, 0),
                ("u2d3", -6, 1, 0),
                ("u3d4", -4, 1, 0),
                ("u4d5", -2, 1, 0),
                ("1", 12, 1, 0),
            ]),
        ),
    ]
}

fn row_operator(twice: i64, terms: &[(&str, i64, i64, i32)]) -> WeylOp {
    let ch = Chart::osc(h(twice)).unwrap();
    let n = ch.slots();
    let digit = |c: u8| (c - b'0') as usize;
    let mut op = WeylOp::zero(ch);
    for &(name, num, den, mp) in terms {
        let mut var = vec![0; n];
        let mut der = vec![0; n];
        let b = name.as_bytes();
        match b {
            [b'1'] => {}
            [b'd', k, b'^', b'2'] => der[digit(*k)] = 2,
            [b'u', k, b'^', b'2'] => var[digit(*k)] = 2,
            [b'u', a, b'd', b] => {
                var[digit(*a)] = 1;
                der[digit(*b)] = 1;
            }
            _ => panic!("bad term {name}"),
        }
        op = op + mono(ch, cm(num, den, mp), 0, &var, &der);
    }
    op
}

fn criterion_5() -> Outcome {
    for (twice, terms) in printed_rows() {
        let ell = h(twice);
        let printed = row_operator(twice, &terms);
        let got = m_form(&lib(hamiltonian(ell, HamiltonianNormalization::Section7))?, ell);
        check(got.len() == terms.len(), || format!("l={ell}: {} terms, printed {}", got.len(), terms.len()))?;
        check(got == printed, || {
            format!("l={ell}: residual {}", lcga::weyl::render::operator(&(&got - &printed), "m", lcga::weyl::render::Style::Text))
        })?;
    }
    Ok("H^(1/2) .. H^(9/2) term-for-term".into())
}

// ---------------------------------------------------------------------------
// 6. spectrum both ways

fn criterion_6() -> Outcome {
    let mut total = 0;
    for ell in ells() {
        let norm = HamiltonianNormalization::Section7;
        let big_l = (ell.twice() + 1) / 2;
        let omega0 = rat((ell.twice() + 1).pow(2), 8);
        let ham = lib(hamiltonian(ell, norm))?;
        let records = lib(spectrum(ell, norm, 6))?;
        let mut ladder = Vec::new();
        for r in &records {
            check(r.n.len() as i64 == big_l && r.n.iter().sum::<u32>() <= 6, || format!("index {:?}", r.n))?;
            let formula = r
                .n
                .iter()
                .enumerate()
                .fold(omega0.clone(), |acc, (i, &k)| acc + rat((2 * (i as i64 + 1) - 1) * k as i64, 1));
            check(r.energy == formula, || format!("l={ell} n={:?}: {} vs {formula}", r.n, r.energy))?;
            let hpsi = lib(apply(&ham, &r.state))?;
            check(hpsi == r.state.scale(&CScalar::constant(formula.clone())), || {
                format!("l={ell} n={:?}: not an eigenstate", r.n)
            })?;
            ladder.push(formula);
        }
        let count: usize = (0..=6u32).map(|s| binomial(s as usize + big_l as usize - 1, s as usize)).sum();
        check(records.len() == count, || format!("l={ell}: {} states, expected {count}", records.len()))?;

        let oracle = lib(matrix_oracle(ell, 6))?;
        let m = &oracle.matrix;
        let mut diagonal = Vec::new();
        for (i, row) in m.entries.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                if i == j {
                    let d = x.as_constant().ok_or_else(|| format!("l={ell}: diagonal {i} depends on c"))?;
                    diagonal.push(d);
                } else if !x.is_zero() {
                    check(weighted_grade(&m.basis[j]) < weighted_grade(&m.basis[i]), || {
                        format!("l={ell}: entry ({i},{j}) breaks triangularity")
                    })?;
                }
            }
        }
        ladder.sort();
        diagonal.sort();
        check(ladder == diagonal, || format!("l={ell}: ladder and matrix multisets differ"))?;
        total += records.len();
    }
    Ok(format!("{total} states, ladder = matrix diagonal at D = 6"))
}

// ---------------------------------------------------------------------------
// 7. the ℓ = 3/2 eigenstates

fn printed_states() -> Vec<((u32, u32), GaussFunc)> {
    let ch = Chart::osc(h(3)).unwrap();
    let kappa = cm(1, 2, 1);
    // (m, n), 2·(power of e^s), terms (coefficient, u power, v power).
    type Entry = ((u32, u32), i64, Vec<(CScalar, i32, i32)>);
    let table: Vec<Entry> = vec![
        ((0, 0), 2, vec![(q(1, 1), 0, 0)]),
        ((0, 1), 3, vec![(cm(1, 1, 1), 1, 0)]),
        ((0, 2), 4, vec![(cm(2, 1, 1), 0, 0), (cm(1, 1, 2), 2, 0)]),
        ((1, 0), 5, vec![(cm(3, 1, 1), 1, 0), (cm(-3, 1, 1), 0, 1)]),
        ((0, 3), 5, vec![(cm(6, 1, 2), 1, 0), (cm(1, 1, 3), 3, 0)]),
        ((1, 1), 6, vec![(cm(3, 1, 1), 0, 0), (cm(3, 1, 2), 2, 0), (cm(-3, 1, 2), 1, 1)]),
        ((0, 4), 6, vec![(cm(12, 1, 2), 0, 0), (cm(12, 1, 3), 2, 0), (cm(1, 1, 4), 4, 0)]),
    ];
    table
        .into_iter()
        .map(|(mn, mu, terms)| {
            let f = GaussFunc::from_terms(
                ch,
                kappa.clone(),
                terms.into_iter().map(|(a, pu, pv)| (FuncMonomial { exp_s: h(mu), var: vec![0, pu, pv] }, a)),
            );
            (mn, f)
        })
        .collect()
}

fn criterion_7() -> Outcome {
    let ell = h(3);
    let norm = HamiltonianNormalization::Section6;
    let ham = lib(hamiltonian(ell, norm))?;
    check(vacuum_energy(ell, norm) == rat(1, 1), || "vacuum energy is not 1".into())?;

    // H̃ = (1/2c)(w̃_{−½}w̃_{½} − w̃_{−3/2}w̃_{3/2}) + 1 with the transcribed generators.
    let g = printed_section5();
    let w = |t: i64| &g[&GenLabel::W(h(t))];
    let ch = Chart::osc(ell).unwrap();
    let rhs = (&(w(-1) * w(1)) - &(w(-3) * w(3))).scale(&cm(1, 2, -1)) + WeylOp::identity(ch);
    check(ham == rhs, || format!("H residual {}", lcga::weyl::render::describe(&(&ham - &rhs))))?;

    let mut energies = Vec::new();
    let mut at_five_halves = Vec::new();
    for ((m, n), printed) in printed_states() {
        let energy = rat(3 * m as i64, 2) + rat(n as i64, 2) + rat(1, 1);
        let hpsi = lib(apply(&ham, &printed))?;
        check(hpsi == printed.scale(&CScalar::constant(energy.clone())), || {
            format!("printed ({m},{n}) is not an eigenstate with E = {energy}")
        })?;
        let r = lib(ladder_state(ell, norm, &[m, n]))?;
        check(r.energy == energy, || format!("({m},{n}): ladder energy {}", r.energy))?;
        let ratio = printed.ratio_to(&r.state).ok_or_else(|| format!("({m},{n}) not proportional to ladder state"))?;
        check(!ratio.is_zero(), || "zero ratio".into())?;
        if energy == rat(5, 2) {
            at_five_halves.push(printed.clone());
        }
        energies.push(energy);
    }
    energies.sort();
    let want: Vec<BigRational> = [(1, 1), (3, 2), (2, 1), (5, 2), (5, 2), (3, 1), (3, 1)].map(|(n, d)| rat(n, d)).to_vec();
    check(energies == want, || format!("energies {energies:?}"))?;
    check(at_five_halves.len() == 2 && !at_five_halves[0].is_proportional(&at_five_halves[1]), || {
        "no double degeneracy at 5/2".into()
    })?;
    Ok("7 states, E_vac = 1, two independent states at 5/2".into())
}

// ---------------------------------------------------------------------------
// 8. restriction to functions of u_1

fn criterion_8() -> Outcome {
    let constants = [(1, rat(0, 1)), (3, rat(3, 2)), (5, rat(4, 1)), (7, rat(15, 2)), (9, rat(12, 1))];
    for (twice, constant) in constants {
        let ell = h(twice);
        let (_, reported) = lib(harmonic_reduction(ell))?;
        check(reported == constant, || format!("l={ell}: constant {reported}"))?;
        let ch = Chart::osc(ell).unwrap();
        let n = ch.slots();
        let zero = vec![0u32; n];
        let mut d2 = zero.clone();
        d2[1] = 2;
        let mut u2 = vec![0; n];
        u2[1] = 2;
        let harmonic = mono(ch, cm(-1, 2, -1), 0, &vec![0; n], &d2)
            + mono(ch, cm(1, 2, 1), 0, &u2, &zero)
            + WeylOp::constant(ch, CScalar::constant(constant.clone()));
        let hm = m_form(&lib(hamiltonian(ell, HamiltonianNormalization::Section7))?, ell);
        for k in 0..=6 {
            let mut v = vec![0; n];
            v[1] = k;
            let f = GaussFunc::term(ch, CScalar::zero(), CScalar::one(), HalfInt::ZERO, &v);
            let got = lib(apply(&hm, &f))?;
            check(got == lib(apply(&harmonic, &f))?, || format!("l={ell}: u_1^{k} leaves the reduction"))?;
        }
    }
    Ok("constants 0, 3/2, 4, 15/2, 12".into())
}

// ---------------------------------------------------------------------------
// 9. engine properties

const INSTANCES: u64 = 128;

fn criterion_9() -> Outcome {
    let mut failures = Vec::new();
    for seed in 0..INSTANCES {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ch = random_chart(&mut rng);
        let a = random_operator(&mut rng, ch);
        let b = random_operator(&mut rng, ch);
        let c = random_operator(&mut rng, ch);
        if &(&a * &b) * &c != &a * &(&b * &c) {
            failures.push(format!("associativity seed {seed}"));
        }
        let comm = |x: &WeylOp, y: &WeylOp| x.commutator(y).unwrap();
        let jac = comm(&a, &comm(&b, &c)) + comm(&b, &comm(&c, &a)) + comm(&c, &comm(&a, &b));
        if !jac.is_zero() {
            failures.push(format!("jacobi seed {seed}"));
        }
        let kappa = random_scalar(&mut rng);
        let f = random_function(&mut rng, ch, kappa);
        let lhs = apply(&(&a * &b), &f).unwrap();
        let rhs = apply(&a, &apply(&b, &f).unwrap()).unwrap();
        if lhs != rhs {
            failures.push(format!("apply seed {seed}"));
        }

        let ell = ch.ell();
        let free = Chart::free(ell).unwrap();
        let x = random_operator(&mut rng, free);
        let y = random_operator(&mut rng, free);
        let s = Substitution::free_to_osc(ell).unwrap();
        let sx = s.apply(&x).unwrap();
        let sy = s.apply(&y).unwrap();
        if s.apply(&(&x * &y)).unwrap() != &sx * &sy || s.apply(&(&x + &y)).unwrap() != &sx + &sy {
            failures.push(format!("substitution seed {seed}"));
        }
    }
    check(failures.is_empty(), || failures.join(", "))?;
    Ok(format!("{INSTANCES} seeded instances per property"))
}

fn main() -> ExitCode {
    type Criterion = (&'static str, fn() -> Outcome);
    let criteria: [Criterion; 9] = [
        ("structure constants at l = 3/2", criterion_1),
        ("dimensions and closure", criterion_2),
        ("degree-one on-shell certificate", criterion_3),
        ("transformation", criterion_4),
        ("Hamiltonian table", criterion_5),
        ("spectrum two ways", criterion_6),
        ("l = 3/2 eigenstates", criterion_7),
        ("harmonic reduction", criterion_8),
        ("engine properties", criterion_9),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {} {name}: {detail} ({secs:.1}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {} {name}: {why} ({secs:.1}s)", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
