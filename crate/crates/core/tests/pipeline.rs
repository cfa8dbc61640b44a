mod common;

use common::*;
use lcga::algebra::GenLabel;
use lcga::onshell::omega1_free;
use lcga::realizations::{free_generators, osc_generators, OscNormalization};
use lcga::spectrum::{hamiltonian, spectrum, HamiltonianNormalization};
use lcga::transform::certify_transform;
use lcga::weyl::{apply, Chart};
use lcga::{CScalar, GaussFunc};

#[test]
fn transform_is_an_isomorphism_up_to_nine_halves() {
    for t in [1, 3, 5, 7, 9] {
        let r = certify_transform(h(t), OscNormalization::Section7).unwrap();
        assert!(r.passed(), "{r:?}");
        let n = r.generators.len();
        assert_eq!(r.homomorphism_pairs, n * (n - 1) / 2);
    }
}

#[test]
fn positive_w_annihilate_omega1() {
    for t in [1, 3, 5, 7, 9] {
        let ell = h(t);
        let gens = free_generators(ell).unwrap();
        let omega = omega1_free(ell).unwrap();
        for jt in (1..=t).step_by(2) {
            assert!(gens[&GenLabel::W(h(jt))].commutator(&omega).unwrap().is_zero());
        }
    }
}

/// `Ψ_t + xΨ_y − (1/c)Ψ_xx` on monomials `t^a x^b y^d`.
#[test]
fn three_halves_pde_on_monomials() {
    let ch = Chart::free(h(3)).unwrap();
    let omega = omega1_free(h(3)).unwrap();
    for a in 0..3 {
        for b in 0..4 {
            for d in 0..3 {
                let psi = GaussFunc::term(ch, q(0, 1), q(1, 1), h(0), &[a, b, d]);
                let pde = psi
                    .derivative(0)
                    .try_add(&psi.derivative(2).multiply_monomial(&q(1, 1), h(0), &[0, 1, 0]))
                    .unwrap()
                    .try_sub(&psi.derivative(1).derivative(1).scale(&cm(1, 1, -1)))
                    .unwrap();
                assert_eq!(apply(&omega, &psi).unwrap(), pde, "t^{a} x^{b} y^{d}");
            }
        }
    }
}

#[test]
fn section6_states_diagonalize_minus_z0() {
    let ell = h(3);
    let norm = HamiltonianNormalization::Section6;
    let z0 = &osc_generators(ell, OscNormalization::Section5).unwrap()[&GenLabel::ZZero];
    let ham = hamiltonian(ell, norm).unwrap();
    for r in spectrum(ell, norm, 6).unwrap() {
        let e = CScalar::constant(r.energy.clone());
        assert_eq!(apply(&-z0, &r.state).unwrap(), r.state.scale(&e), "{:?}", r.n);
        assert_eq!(apply(&ham, &r.state).unwrap(), r.state.scale(&e), "{:?}", r.n);
        let [m, n] = r.n[..] else { panic!() };
        assert_eq!(r.energy, lcga::scalar::rat(3 * m as i64 + n as i64 + 2, 2));
    }
}

#[test]
fn section7_energies_carry_no_c() {
    for t in [1, 3, 5] {
        let ell = h(t);
        let ham = hamiltonian(ell, HamiltonianNormalization::Section7).unwrap();
        assert!(ham.terms().values().all(|a| a.min_pow().unwrap() >= -1 && a.max_pow().unwrap() <= 1));
        for r in spectrum(ell, HamiltonianNormalization::Section7, 4).unwrap() {
            let hpsi = apply(&ham, &r.state).unwrap();
            let ratio = hpsi.ratio_to(&r.state).unwrap();
            assert!(!ratio.depends_on_symbol());
            assert_eq!(ratio.as_constant().unwrap(), r.energy);
        }
    }
}
