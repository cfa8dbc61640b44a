//! Invariant second-order operators `Ω_1`, `Ω_0` in both charts, the
//! from-scratch degree-one solver, multiplier certificates and off-shell
//! centralizers.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{AlgebraElement, GenLabel, GenMap};
use crate::enlarged::build_enlarged;
use crate::error::{Error, Result};
use crate::linsolve::Echelon;
use crate::realizations::{free_generators, three_halves, two_ell_plus_one, OscNormalization};
use crate::scalar::{rat, HalfInt, Scalar};
use crate::weyl::operator::Monomial;
use crate::weyl::render::describe;
use crate::weyl::{Chart, ChartKind};
use crate::{CScalar, WeylOp};

fn coef_over_c(r: BigRational) -> CScalar {
    CScalar::monomial(r, -1)
}

/// `∂_t + Σ_{a<L} (ℓ+1/2−a) y_a ∂_{a+1} − (ℓ+1/2)/(2c) ∂_1²`.
pub fn omega1_free(ell: HalfInt) -> Result<WeylOp> {
    let chart = Chart::free(ell)?;
    let big_l = chart.space_dim();
    let lp = (ell + HalfInt::HALF).to_rational();
    let mut op = WeylOp::der(chart, 0);
    for a in 1..big_l {
        let coef = &lp - BigRational::from_integer(BigInt::from(a));
        op = op + (&WeylOp::var(chart, a) * &WeylOp::der(chart, a + 1)).scale_rational(&coef);
    }
    let lap = WeylOp::der(chart, 1).pow(2).scale(&coef_over_c(-lp / BigInt::from(2)));
    Ok(op + lap)
}

/// `Ω̄_0 = −t Ω̄_1`.
pub fn omega0_free(ell: HalfInt) -> Result<WeylOp> {
    let chart = Chart::free(ell)?;
    Ok(-(&WeylOp::var(chart, 0) * &omega1_free(ell)?))
}

/// The abstract `ℓ = 3/2` combinations `(Ω_0, Ω_1)` in the enlarged basis.
pub fn omega_elements_three_halves() -> (AlgebraElement, AlgebraElement) {
    let h = HalfInt::from_twice;
    let quarter = coef_over_c(rat(1, 4));
    let half = coef_over_c(rat(1, 2));
    let omega0 = AlgebraElement::from_terms([
        (GenLabel::ZZero, CScalar::one()),
        (GenLabel::ww(h(1), h(-1)), quarter.clone()),
        (GenLabel::ww(h(3), h(-3)), -quarter),
    ]);
    let omega1 = AlgebraElement::from_terms([
        (GenLabel::ZPlus, CScalar::one()),
        (GenLabel::ww(h(3), h(-1)), half.clone()),
        (GenLabel::ww(h(1), h(1)), -half),
    ]);
    (omega0, omega1)
}

/// Checks that the `ℓ = 3/2` abstract combinations realize to `Ω̄_0`, `Ω̄_1`.
pub fn check_abstract_omegas() -> Result<()> {
    let ell = three_halves();
    let basis = build_enlarged(&free_generators(ell)?)?;
    let (a0, a1) = omega_elements_three_halves();
    for (label, elem, expected) in [
        ("Omega0", a0, omega0_free(ell)?),
        ("Omega1", a1, omega1_free(ell)?),
    ] {
        let realized = elem.realize(basis.realized())?;
        if realized != expected {
            return Err(Error::Mismatch {
                label: label.into(),
                residual: describe(&(&realized - &expected)),
            });
        }
    }
    Ok(())
}

/// `Ω̃_0` in the oscillator chart for either normalization.
pub fn omega0_osc(ell: HalfInt, norm: OscNormalization) -> Result<WeylOp> {
    norm.require_available(ell)?;
    let chart = Chart::osc(ell)?;
    let big_l = chart.space_dim();
    let ud = |a: usize, b: usize| &WeylOp::var(chart, a) * &WeylOp::der(chart, b);
    let mut op = -WeylOp::der(chart, 0);
    match norm {
        OscNormalization::Section5 => {
            op = op - ud(1, 2) - ud(1, 1).scale_rational(&rat(3, 2))
                + ud(2, 2).scale_rational(&rat(3, 2))
                + WeylOp::der(chart, 1).pow(2).scale(&coef_over_c(rat(1, 1)))
                + WeylOp::var(chart, 1).pow(2).scale(&CScalar::monomial(rat(1, 2), 1));
        }
        OscNormalization::Section7 => {
            let lp = (ell + HalfInt::HALF).to_rational();
            let tw = two_ell_plus_one(ell);
            for j in 2..=big_l {
                op = op + ud(j, j).scale_rational(&(rat(j as i64, 1) - rat(1, 2)));
            }
            for j in 1..big_l {
                op = op - ud(j, j + 1).scale_rational(&(&lp - rat(j as i64, 1)));
            }
            op = op + WeylOp::der(chart, 1).pow(2).scale(&coef_over_c(&lp / BigInt::from(2)));
            let quad = CScalar::monomial(-BigRational::one() / (&tw * BigInt::from(4)), 1);
            op = op + WeylOp::var(chart, 1).pow(2).scale(&quad);
            let k = ell.twice();
            let constant = rat((k - 1) * (k + 3), 16);
            op = op + WeylOp::constant(chart, CScalar::constant(constant));
        }
    }
    Ok(op)
}

/// `Ω̃_1 = −e^{−s} Ω̃_0`.
pub fn omega1_osc(ell: HalfInt, norm: OscNormalization) -> Result<WeylOp> {
    let o = omega0_osc(ell, norm)?;
    Ok(-(&WeylOp::exp_weight(o.chart(), -HalfInt::ONE) * &o))
}

#[derive(Clone, Debug, PartialEq)]
pub struct Omega1Solution {
    pub element: AlgebraElement,
    pub operator: WeylOp,
    /// Dimension of the solution space with all `w_{±k}` imposed.
    pub dimension: usize,
    /// Dimension with only the `k > 0` constraints.
    pub positive_only_dimension: usize,
}

/// Solves `[w̄_k, Ω] = 0` over the degree-one even sector and normalizes the
/// `z_{+1}` coefficient to one.
pub fn solve_omega1(ell: HalfInt) -> Result<Omega1Solution> {
    let basis = build_enlarged(&free_generators(ell)?)?;
    let gens = basis.realized();
    let unknowns: Vec<GenLabel> = gens
        .keys()
        .copied()
        .filter(|l| !l.is_odd() && l.degree() == HalfInt::ONE)
        .collect();
    let ws: Vec<HalfInt> = basis
        .odd()
        .iter()
        .filter_map(|l| match l {
            GenLabel::W(j) => Some(*j),
            _ => None,
        })
        .collect();

    let system = |ks: &[HalfInt]| -> Result<Echelon<BigRational>> {
        let mut rows: BTreeMap<(HalfInt, Monomial), Vec<CScalar>> = BTreeMap::new();
        for (col, l) in unknowns.iter().enumerate() {
            for &k in ks {
                let br = gens[&GenLabel::W(k)].commutator(&gens[l])?;
                for (m, a) in br.terms() {
                    rows.entry((k, m.clone()))
                        .or_insert_with(|| vec![CScalar::zero(); unknowns.len()])[col] = a.clone();
                }
            }
        }
        Ok(Echelon::new(rows.into_values().collect(), unknowns.len()))
    };

    let positive: Vec<HalfInt> = ws.iter().copied().filter(|k| k.twice() > 0).collect();
    let positive_only_dimension = unknowns.len() - system(&positive)?.rank();
    let ech = system(&ws)?;
    let null = ech.nullspace(unknowns.len());
    match null.len() {
        0 => return Err(Error::NoSolution),
        1 => {}
        d => return Err(Error::NonUniqueSolution(d)),
    }
    let v = &null[0];
    let zpos = unknowns
        .iter()
        .position(|l| *l == GenLabel::ZPlus)
        .ok_or(Error::NoSolution)?;
    if v[zpos].is_zero() {
        return Err(Error::NoSolution);
    }
    let mut element = AlgebraElement::zero();
    for (l, x) in unknowns.iter().zip(v) {
        let a = x
            .try_div(&v[zpos])
            .ok_or_else(|| Error::NonLaurentSolution(format!("({x}) / ({})", v[zpos])))?;
        element.add_term(*l, a);
    }
    let operator = element.realize(gens)?;
    Ok(Omega1Solution {
        element,
        operator,
        dimension: 1,
        positive_only_dimension,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub enum Multiplier {
    Zero,
    /// `[g, Ω] = f·Ω` with `f` a single multiplication monomial.
    Factor(WeylOp),
    /// Not a multiple of `Ω` within the class; carries the bracket.
    Fail(WeylOp),
}

impl Multiplier {
    pub fn render(&self) -> String {
        match self {
            Multiplier::Zero => "zero".into(),
            Multiplier::Factor(f) => describe(f),
            Multiplier::Fail(_) => "fail".into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct OnShellCertificate {
    pub omega: WeylOp,
    pub table: BTreeMap<GenLabel, Multiplier>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertificateEntry {
    pub generator: String,
    pub multiplier: String,
}

impl OnShellCertificate {
    pub fn passed(&self) -> bool {
        !self.table.values().any(|m| matches!(m, Multiplier::Fail(_)))
    }

    pub fn nonzero(&self) -> BTreeMap<GenLabel, WeylOp> {
        self.table
            .iter()
            .filter_map(|(l, m)| match m {
                Multiplier::Factor(f) => Some((*l, f.clone())),
                _ => None,
            })
            .collect()
    }

    pub fn entries(&self) -> Vec<CertificateEntry> {
        self.table
            .iter()
            .map(|(l, m)| CertificateEntry {
                generator: l.name(),
                multiplier: m.render(),
            })
            .collect()
    }

    /// Turns the first failing entry into an error.
    pub fn require(self) -> Result<Self> {
        if let Some((l, Multiplier::Fail(br))) =
            self.table.iter().find(|(_, m)| matches!(m, Multiplier::Fail(_)))
        {
            return Err(Error::NotProportional {
                generator: l.name(),
                residual: describe(br),
            });
        }
        Ok(self)
    }
}

/// `f` with `br = f·omega`, `f` a monomial in the chart's multiplier class:
/// `α t^k` (free) or `α e^{μs}` (oscillator).
fn extract_multiplier(br: &WeylOp, omega: &WeylOp) -> Option<WeylOp> {
    let chart = omega.chart();
    let (mb, ab) = br.leading()?;
    let (mo, ao) = omega.leading()?;
    if mb.der != mo.der {
        return None;
    }
    let shift: Vec<i32> = mb.var.iter().zip(&mo.var).map(|(x, y)| x - y).collect();
    let exp_shift = mb.exp_s - mo.exp_s;
    let in_class = match chart.kind() {
        ChartKind::Free => exp_shift == HalfInt::ZERO && shift[1..].iter().all(|&e| e == 0),
        ChartKind::Osc => shift.iter().all(|&e| e == 0),
    };
    if !in_class {
        return None;
    }
    let alpha = ab.try_div(ao)?;
    let f = WeylOp::term(chart, alpha.clone(), exp_shift, &shift, &vec![0; chart.slots()]);
    (omega.left_multiply_monomial(&alpha, exp_shift, &shift) == *br).then_some(f)
}

/// Multiplier table of `[g, omega]` for every generator, without failing.
pub fn examine_onshell(omega: &WeylOp, gens: &GenMap) -> Result<OnShellCertificate> {
    let entries: Vec<(GenLabel, Result<Multiplier>)> = gens
        .par_iter()
        .map(|(l, g)| {
            let m = g.commutator(omega).map(|br| {
                if br.is_zero() {
                    Multiplier::Zero
                } else {
                    match extract_multiplier(&br, omega) {
                        Some(f) => Multiplier::Factor(f),
                        None => Multiplier::Fail(br),
                    }
                }
            });
            (*l, m)
        })
        .collect();
    let mut table = BTreeMap::new();
    for (l, m) in entries {
        table.insert(l, m?);
    }
    Ok(OnShellCertificate {
        omega: omega.clone(),
        table,
    })
}

/// Like [`examine_onshell`], failing with `NotProportional` on the first
/// bracket outside the multiplier class.
pub fn certify_onshell(omega: &WeylOp, gens: &GenMap) -> Result<OnShellCertificate> {
    examine_onshell(omega, gens)?.require()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrossRelation {
    pub relation: String,
    pub residual: String,
}

/// `[Ω̄_1, Ω̄_0] + Ω̄_1` (free) or `[Ω̃_0, Ω̃_1] − Ω̃_1` (oscillator); both
/// must vanish. Arguments are `(Ω_0, Ω_1)` in one chart.
pub fn cross_relations(omega0: &WeylOp, omega1: &WeylOp) -> Result<CrossRelation> {
    let (relation, residual) = match omega0.chart().kind() {
        ChartKind::Free => ("[Omega1, Omega0] + Omega1", omega1.commutator(omega0)? + omega1.clone()),
        ChartKind::Osc => ("[Omega0, Omega1] - Omega1", omega0.commutator(omega1)? - omega1.clone()),
    };
    if !residual.is_zero() {
        return Err(Error::Mismatch {
            label: relation.into(),
            residual: describe(&residual),
        });
    }
    Ok(CrossRelation {
        relation: relation.into(),
        residual: "0".into(),
    })
}

/// Generators with `[g, omega] = 0` exactly.
pub fn offshell_centralizer(omega: &WeylOp, gens: &GenMap) -> Result<Vec<GenLabel>> {
    let flags: Vec<(GenLabel, Result<bool>)> = gens
        .par_iter()
        .map(|(l, g)| (*l, g.commutator(omega).map(|b| b.is_zero())))
        .collect();
    let mut out = Vec::new();
    for (l, ok) in flags {
        if ok? {
            out.push(l);
        }
    }
    Ok(out)
}

/// Labels with nonzero multipliers in `cert`, for quick comparisons.
pub fn multiplier_labels(cert: &OnShellCertificate) -> BTreeSet<GenLabel> {
    cert.nonzero().into_keys().collect()
}
