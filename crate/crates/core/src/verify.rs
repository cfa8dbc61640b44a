//! Verification suites behind `lcga verify`, each producing a JSON report.

use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::{extract_structure, BracketRule, GenLabel};
use crate::enlarged::{build_enlarged, duality_report, expected_dimensions, require_jacobi, JacobiPlan};
use crate::error::{Error, Result};
use crate::onshell::{
    certify_onshell, check_abstract_omegas, cross_relations, offshell_centralizer, omega0_free,
    omega0_osc, omega1_free, omega1_osc, solve_omega1, OnShellCertificate,
};
use crate::realizations::{free_generators, osc_generators, three_halves, OscNormalization};
use crate::scalar::HalfInt;
use crate::spectrum::{
    canonical_hamiltonian, hamiltonian, harmonic_reduction, ladder_relations, m_form, matrix_oracle,
    section6_printed_states, spectrum, HamiltonianNormalization, Ladder,
};
use crate::transform::certify_transform;
use crate::weyl::render::describe;
use crate::weyl::ChartKind;
use crate::WeylOp;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub details: Value,
}

impl SuiteReport {
    fn from_result(suite: impl Into<String>, r: Result<(bool, Value)>) -> Self {
        let suite = suite.into();
        match r {
            Ok((passed, details)) => SuiteReport {
                suite,
                passed,
                error: None,
                details,
            },
            Err(e) => SuiteReport {
                suite,
                passed: false,
                error: Some(e.to_string()),
                details: Value::Null,
            },
        }
    }
}

pub fn closure(ell: HalfInt) -> SuiteReport {
    SuiteReport::from_result("closure", (|| {
        let basis = build_enlarged(&free_generators(ell)?)?;
        let lie = extract_structure(basis.realized(), BracketRule::Lie)?;
        let graded = extract_structure(basis.realized(), BracketRule::Graded)?;
        let (ee, eo, ec) = expected_dimensions(ell);
        let dims_ok = basis.even().len() == ee && basis.odd().len() == eo && basis.len() == ec;
        Ok((
            dims_ok,
            json!({
                "ell": ell.to_string(),
                "evenDim": basis.even().len(),
                "oddDim": basis.odd().len(),
                "ecgaDim": basis.len(),
                "lieEntries": lie.entries().count(),
                "gradedEntries": graded.entries().count(),
            }),
        ))
    })())
}

pub fn jacobi(ell: HalfInt, seed: u64) -> SuiteReport {
    SuiteReport::from_result("jacobi", (|| {
        let basis = build_enlarged(&free_generators(ell)?)?;
        let plan = JacobiPlan { seed, ..JacobiPlan::default() };
        let mut checked = serde_json::Map::new();
        for rule in [BracketRule::Lie, BracketRule::Graded] {
            let table = extract_structure(basis.realized(), rule)?;
            let report = require_jacobi(&table, ell, plan)?;
            let key = match rule {
                BracketRule::Lie => "lie",
                BracketRule::Graded => "graded",
            };
            checked.insert(key.into(), json!(report.checked));
        }
        Ok((true, json!({ "ell": ell.to_string(), "seed": seed, "checked": checked, "failures": [] })))
    })())
}

pub fn duality(ell: HalfInt, seed: u64) -> SuiteReport {
    SuiteReport::from_result("duality", (|| {
        let basis = build_enlarged(&free_generators(ell)?)?;
        let r = duality_report(&basis, JacobiPlan { seed, ..JacobiPlan::default() })?;
        Ok((r.passed(), serde_json::to_value(&r).expect("serializable")))
    })())
}

fn expect_table(cert: &OnShellCertificate, expected: &[(GenLabel, WeylOp)], name: &str) -> Result<()> {
    let got = cert.nonzero();
    let want: std::collections::BTreeMap<GenLabel, WeylOp> = expected.iter().cloned().collect();
    if got != want {
        let rendered: Vec<String> = got.iter().map(|(l, f)| format!("{l}: {}", describe(f))).collect();
        return Err(Error::Mismatch {
            label: format!("multipliers of {name}"),
            residual: rendered.join(", "),
        });
    }
    Ok(())
}

/// Free chart: `Ω̄_1`, `Ω̄_0` certificates, solver, cross relation, centralizer.
/// Oscillator chart: the same for `Ω̃_0`, `Ω̃_1` under `norm`.
pub fn onshell(ell: HalfInt, chart: ChartKind, norm: OscNormalization) -> SuiteReport {
    let name = match chart {
        ChartKind::Free => "onshell/free".to_string(),
        ChartKind::Osc => format!("onshell/osc-{}", norm.name()),
    };
    SuiteReport::from_result(name, (|| {
        let (omega0, omega1, gens) = match chart {
            ChartKind::Free => (omega0_free(ell)?, omega1_free(ell)?, free_generators(ell)?),
            ChartKind::Osc => (omega0_osc(ell, norm)?, omega1_osc(ell, norm)?, osc_generators(ell, norm)?),
        };
        let basis = build_enlarged(&gens)?;
        let ch = omega1.chart();
        let c0 = certify_onshell(&omega0, basis.realized())?;
        let c1 = certify_onshell(&omega1, basis.realized())?;
        let t = |k: i32| {
            let mut v = vec![0; ch.slots()];
            v[0] = k;
            WeylOp::term(ch, <crate::CScalar as num_traits::One>::one(), HalfInt::ZERO, &v, &vec![0; ch.slots()])
        };
        let e = |twice: i64| WeylOp::exp_weight(ch, HalfInt::from_twice(twice));
        let two = crate::scalar::rat(2, 1);
        let mut details = serde_json::Map::new();
        match chart {
            ChartKind::Free => {
                expect_table(&c1, &[(GenLabel::ZMinus, t(1).scale_rational(&two)), (GenLabel::ZZero, t(0))], "Omega1")?;
                expect_table(&c0, &[(GenLabel::ZPlus, t(-1)), (GenLabel::ZMinus, t(1))], "Omega0")?;
                let sol = solve_omega1(ell)?;
                if sol.operator != omega1 {
                    return Err(Error::Mismatch {
                        label: "solved Omega1".into(),
                        residual: describe(&(&sol.operator - &omega1)),
                    });
                }
                details.insert("solution".into(), json!(sol.element.to_string()));
                details.insert("solutionDimension".into(), json!(sol.dimension));
                details.insert("positiveOnlyDimension".into(), json!(sol.positive_only_dimension));
                if ell == three_halves() {
                    check_abstract_omegas()?;
                    details.insert("abstractOmegas".into(), json!("realized"));
                }
            }
            ChartKind::Osc => {
                expect_table(&c0, &[(GenLabel::ZPlus, e(-2)), (GenLabel::ZMinus, e(2))], "Omega0")?;
                expect_table(
                    &c1,
                    &[(GenLabel::ZZero, t(0)), (GenLabel::ZMinus, e(2).scale_rational(&two))],
                    "Omega1",
                )?;
            }
        }
        let cross = cross_relations(&omega0, &omega1)?;
        let central_of = match chart {
            ChartKind::Free => &omega1,
            ChartKind::Osc => &omega0,
        };
        let cent = offshell_centralizer(central_of, basis.realized())?;
        let graded = extract_structure(basis.realized(), BracketRule::Graded)?;
        let closes = graded.restrict(&cent).is_some();
        details.insert("ell".into(), json!(ell.to_string()));
        details.insert("omega0".into(), json!(c0.entries()));
        details.insert("omega1".into(), json!(c1.entries()));
        details.insert("crossRelation".into(), json!(cross));
        details.insert(
            "centralizer".into(),
            json!({ "labels": cent.iter().map(|l| l.name()).collect::<Vec<_>>(), "dim": cent.len(), "closes": closes }),
        );
        Ok((closes, Value::Object(details)))
    })())
}

pub fn transform(ell: HalfInt, norm: OscNormalization) -> SuiteReport {
    SuiteReport::from_result(format!("transform/{}", norm.name()), (|| {
        let r = certify_transform(ell, norm)?;
        Ok((r.passed(), serde_json::to_value(&r).expect("serializable")))
    })())
}

/// Section7: ladder energies, matrix oracle, relations, table row and
/// reduction. Section6: ladder energies, printed eigenstates, relations.
pub fn spectrum_suite(ell: HalfInt, norm: HamiltonianNormalization, max_total: u32) -> SuiteReport {
    SuiteReport::from_result(format!("spectrum/{}", norm.name()), (|| {
        let records = spectrum(ell, norm, max_total)?;
        let relations = ladder_relations(ell, norm)?;
        let mut details = serde_json::Map::new();
        details.insert("ell".into(), json!(ell.to_string()));
        details.insert("normalization".into(), json!(norm.name()));
        details.insert("states".into(), json!(records.len()));
        details.insert("relations".into(), serde_json::to_value(&relations).expect("serializable"));
        let mut passed = relations.passed();
        match norm {
            HamiltonianNormalization::Section7 => {
                let oracle = matrix_oracle(ell, max_total)?;
                let mut ladder: Vec<_> = records.iter().map(|r| r.energy.clone()).collect();
                let mut diag = oracle.eigenvalues.clone();
                ladder.sort();
                diag.sort();
                passed &= ladder == diag;
                let derived = m_form(&hamiltonian(ell, norm)?, ell);
                passed &= derived == canonical_hamiltonian(ell)?;
                let (reduction, _) = harmonic_reduction(ell)?;
                details.insert("oracleDimension".into(), json!(oracle.matrix.dim()));
                details.insert("ladderMatchesOracle".into(), json!(ladder == diag));
                details.insert(
                    "hamiltonian".into(),
                    json!(crate::weyl::render::operator(&derived, "m", crate::weyl::render::Style::Text)),
                );
                details.insert("reduction".into(), serde_json::to_value(&reduction).expect("serializable"));
            }
            HamiltonianNormalization::Section6 => {
                let mut ladder = Ladder::new(ell, norm)?;
                let mut matched = Vec::new();
                for (n, printed) in section6_printed_states()? {
                    let r = ladder.record(&n)?;
                    let ok = r.state.ratio_to(&printed).is_some();
                    passed &= ok;
                    matched.push(json!({ "n": n, "energy": r.energy.to_string(), "matches": ok }));
                }
                details.insert("printedStates".into(), json!(matched));
            }
        }
        Ok((passed, Value::Object(details)))
    })())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AllReport {
    pub ell: String,
    pub passed: bool,
    pub suites: Vec<SuiteReport>,
}

/// Every suite applicable at `ell`.
pub fn all(ell: HalfInt, seed: u64, max_total: u32) -> AllReport {
    let mut suites = vec![
        closure(ell),
        jacobi(ell, seed),
        duality(ell, seed),
        onshell(ell, ChartKind::Free, OscNormalization::Section7),
        onshell(ell, ChartKind::Osc, OscNormalization::Section7),
        transform(ell, OscNormalization::Section7),
        spectrum_suite(ell, HamiltonianNormalization::Section7, max_total),
    ];
    if ell == three_halves() {
        suites.push(onshell(ell, ChartKind::Osc, OscNormalization::Section5));
        suites.push(transform(ell, OscNormalization::Section5));
        suites.push(spectrum_suite(ell, HamiltonianNormalization::Section6, max_total));
    }
    AllReport {
        ell: ell.to_string(),
        passed: suites.iter().all(|s| s.passed),
        suites,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn everything_passes_at_three_halves() {
        let r = all(three_halves(), 0, 4);
        for s in &r.suites {
            assert!(s.passed, "{}", serde_json::to_string_pretty(s).unwrap());
        }
    }

    #[test]
    fn onshell_for_all_ell() {
        for t in [1, 5, 7, 9] {
            let ell = HalfInt::from_twice(t);
            for chart in [ChartKind::Free, ChartKind::Osc] {
                let s = onshell(ell, chart, OscNormalization::Section7);
                assert!(s.passed, "{}", serde_json::to_string_pretty(&s).unwrap());
            }
        }
    }
}
