//! The CGA enlarged by the second-order anticommutators `w_{i,j}`, checked
//! both as a Lie algebra and as a superalgebra on the same operators.

use std::sync::Arc;

use serde::Serialize;

use crate::algebra::{
    check_jacobi, extract_structure, jacobi_triples, BracketRule, GenLabel, GenMap, JacobiReport,
    StructureTable,
};
use crate::error::{Error, Result};
use crate::scalar::HalfInt;

#[derive(Clone, Debug)]
pub struct EnlargedBasis {
    ell: HalfInt,
    even: Vec<GenLabel>,
    odd: Vec<GenLabel>,
    realized: Arc<GenMap>,
}

impl EnlargedBasis {
    pub fn ell(&self) -> HalfInt {
        self.ell
    }

    pub fn even(&self) -> &[GenLabel] {
        &self.even
    }

    pub fn odd(&self) -> &[GenLabel] {
        &self.odd
    }

    pub fn ww(&self) -> Vec<GenLabel> {
        self.even
            .iter()
            .copied()
            .filter(|l| matches!(l, GenLabel::WW(..)))
            .collect()
    }

    pub fn realized(&self) -> &Arc<GenMap> {
        &self.realized
    }

    pub fn len(&self) -> usize {
        self.even.len() + self.odd.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Adds every `{w_i, w_j}` to a CGA generator map.
pub fn build_enlarged(gens: &GenMap) -> Result<EnlargedBasis> {
    let chart = gens
        .get(&GenLabel::ZZero)
        .map(|g| g.chart())
        .ok_or_else(|| Error::Inconsistent("generator map without z0".into()))?;
    let ell = chart.ell();
    let ws: Vec<(HalfInt, &crate::WeylOp)> = gens
        .iter()
        .filter_map(|(l, g)| match l {
            GenLabel::W(j) => Some((*j, g)),
            _ => None,
        })
        .collect();
    let mut realized = gens.clone();
    let pairs: Vec<(usize, usize)> = (0..ws.len())
        .flat_map(|a| (a..ws.len()).map(move |b| (a, b)))
        .collect();
    for (a, b) in pairs {
        let (i, wi) = ws[a];
        let (j, wj) = ws[b];
        realized.insert(GenLabel::ww(i, j), wi.anticommutator(wj)?);
    }
    let even = realized.keys().copied().filter(|l| !l.is_odd()).collect();
    let odd = realized.keys().copied().filter(|l| l.is_odd()).collect();
    Ok(EnlargedBasis {
        ell,
        even,
        odd,
        realized: Arc::new(realized),
    })
}

/// How many Jacobi triples to check: exhaustive up to `ℓ = 3/2`, a seeded
/// sample plus targeted triples above.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct JacobiPlan {
    pub sample: usize,
    pub seed: u64,
}

impl Default for JacobiPlan {
    fn default() -> Self {
        JacobiPlan { sample: 500, seed: 0 }
    }
}

impl JacobiPlan {
    pub fn triples(&self, ell: HalfInt, labels: &[GenLabel]) -> Vec<(GenLabel, GenLabel, GenLabel)> {
        if ell <= HalfInt::from_twice(3) {
            jacobi_triples(labels, None, &[], self.seed)
        } else {
            let targeted = [GenLabel::ZPlus, GenLabel::ZZero, GenLabel::ZMinus, GenLabel::C];
            jacobi_triples(labels, Some(self.sample), &targeted, self.seed)
        }
    }
}

/// All commutators re-expand in the enlarged basis.
pub fn verify_ecga_closure(basis: &EnlargedBasis) -> Result<StructureTable> {
    extract_structure(&basis.realized, BracketRule::Lie)
}

/// Graded brackets re-expand with the right parity.
pub fn verify_scga_graded(basis: &EnlargedBasis) -> Result<StructureTable> {
    extract_structure(&basis.realized, BracketRule::Graded)
}

/// Runs the Jacobi sweep for a table and turns failures into an error.
pub fn require_jacobi(table: &StructureTable, ell: HalfInt, plan: JacobiPlan) -> Result<JacobiReport> {
    let report = check_jacobi(table, &plan.triples(ell, table.labels()));
    if let Some((a, b, d, r)) = report.failures.first() {
        return Err(Error::JacobiFailure {
            triple: format!("({a}, {b}, {d})"),
            residual: r.to_string(),
        });
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct DualityReport {
    pub ell: String,
    pub even_dim: usize,
    pub odd_dim: usize,
    pub ecga_dim: usize,
    pub expected_even_dim: usize,
    pub expected_odd_dim: usize,
    pub expected_ecga_dim: usize,
    pub sp_dim: usize,
    pub osp_dim: usize,
    pub sp_closed: bool,
    pub osp_closed: bool,
    pub shared_operators: bool,
    pub lie_jacobi_checked: usize,
    pub graded_jacobi_checked: usize,
    pub jacobi_failures: Vec<String>,
}

impl DualityReport {
    pub fn passed(&self) -> bool {
        self.even_dim == self.expected_even_dim
            && self.odd_dim == self.expected_odd_dim
            && self.ecga_dim == self.expected_ecga_dim
            && self.sp_closed
            && self.osp_closed
            && self.shared_operators
            && self.jacobi_failures.is_empty()
    }
}

/// `(2ℓ² + 3ℓ + 5, 2ℓ + 1, 2ℓ² + 5ℓ + 6)`, computed from `2ℓ`.
pub fn expected_dimensions(ell: HalfInt) -> (usize, usize, usize) {
    let t = ell.twice();
    // 2ℓ² = t²/2, 3ℓ = 3t/2, 5ℓ = 5t/2
    let even = (t * t + 3 * t) / 2 + 5;
    let odd = t + 1;
    let ecga = (t * t + 5 * t) / 2 + 6;
    (even as usize, odd as usize, ecga as usize)
}

/// Both structures, verified on one shared operator map.
pub fn duality_report(basis: &EnlargedBasis, plan: JacobiPlan) -> Result<DualityReport> {
    let lie_ops = Arc::clone(basis.realized());
    let graded_ops = Arc::clone(basis.realized());
    let lie = extract_structure(&lie_ops, BracketRule::Lie)?;
    let graded = extract_structure(&graded_ops, BracketRule::Graded)?;
    let lie_j = check_jacobi(&lie, &plan.triples(basis.ell, lie.labels()));
    let graded_j = check_jacobi(&graded, &plan.triples(basis.ell, graded.labels()));
    let mut failures: Vec<String> = Vec::new();
    for (tag, rep) in [("lie", &lie_j), ("graded", &graded_j)] {
        failures.extend(
            rep.failures
                .iter()
                .map(|(a, b, d, r)| format!("{tag} ({a}, {b}, {d}): {r}")),
        );
    }
    let ww = basis.ww();
    let mut osp = ww.clone();
    osp.extend(basis.odd.iter().copied());
    let (ee, eo, ec) = expected_dimensions(basis.ell);
    Ok(DualityReport {
        ell: basis.ell.to_string(),
        even_dim: basis.even.len(),
        odd_dim: basis.odd.len(),
        ecga_dim: basis.len(),
        expected_even_dim: ee,
        expected_odd_dim: eo,
        expected_ecga_dim: ec,
        sp_dim: ww.len(),
        osp_dim: osp.len(),
        sp_closed: lie.restrict(&ww).is_some(),
        osp_closed: graded.restrict(&osp).is_some(),
        shared_operators: Arc::ptr_eq(&lie_ops, &graded_ops),
        lie_jacobi_checked: lie_j.checked,
        graded_jacobi_checked: graded_j.checked,
        jacobi_failures: failures,
    })
}
