//! The `ℓ`-oscillator Hamiltonian, its Gaussian vacuum, ladder eigenstates
//! and a triangular-matrix cross-check of the spectrum.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{GenLabel, GenMap};
use crate::error::{Error, Result};
use crate::onshell::omega0_osc;
use crate::realizations::{osc_generators, three_halves, two_ell_plus_one, OscNormalization};
use crate::scalar::{rat, HalfInt};
use crate::weyl::render::describe;
use crate::weyl::{apply, conjugate, Chart, FuncMonomial, Weight};
use crate::{CScalar, GaussFunc, WeylOp};

/// Which Hamiltonian: `H̃ = Ω̃_0 − z̃_0` on the Section5 chart (`ℓ = 3/2`),
/// or `H^{(ℓ)} = 2Ω̃_0 − 2z̃_0` on the Section7 chart.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum HamiltonianNormalization {
    Section6,
    Section7,
}

impl HamiltonianNormalization {
    pub fn name(&self) -> &'static str {
        match self {
            HamiltonianNormalization::Section6 => "s6",
            HamiltonianNormalization::Section7 => "s7",
        }
    }

    pub fn chart_normalization(&self) -> OscNormalization {
        match self {
            HamiltonianNormalization::Section6 => OscNormalization::Section5,
            HamiltonianNormalization::Section7 => OscNormalization::Section7,
        }
    }

    pub fn require_available(&self, ell: HalfInt) -> Result<()> {
        if *self == HamiltonianNormalization::Section6 && ell != three_halves() {
            return Err(Error::NormalizationUnavailable {
                normalization: self.name().into(),
                ell,
            });
        }
        crate::weyl::check_ell(ell)
    }

    /// `[H, w̃_{±j}] = ∓ factor·j w̃_{±j}`.
    fn ladder_factor(&self) -> i64 {
        match self {
            HamiltonianNormalization::Section6 => 1,
            HamiltonianNormalization::Section7 => 2,
        }
    }
}

fn mismatch(label: impl Into<String>, residual: &WeylOp) -> Error {
    Error::Mismatch {
        label: label.into(),
        residual: describe(residual),
    }
}

/// `H^{(ℓ)}` or `H̃`; asserts the result has no `∂_s` and, for Section6,
/// equals `(1/2c)(w̃_{−1/2}w̃_{1/2} − w̃_{−3/2}w̃_{3/2}) + 1`.
pub fn hamiltonian(ell: HalfInt, norm: HamiltonianNormalization) -> Result<WeylOp> {
    norm.require_available(ell)?;
    let osc = norm.chart_normalization();
    let gens = osc_generators(ell, osc)?;
    let omega = omega0_osc(ell, osc)?;
    let h = match norm {
        HamiltonianNormalization::Section6 => &omega - &gens[&GenLabel::ZZero],
        HamiltonianNormalization::Section7 => {
            (&omega - &gens[&GenLabel::ZZero]).scale_rational(&rat(2, 1))
        }
    };
    if h.has_derivative_in(0) {
        return Err(mismatch("hamiltonian free of d/ds", &h));
    }
    if norm == HamiltonianNormalization::Section6 {
        let quadratic = section6_quadratic_form(&gens)?;
        if quadratic != h {
            return Err(mismatch("quadratic form of H", &(&quadratic - &h)));
        }
    }
    Ok(h)
}

fn section6_quadratic_form(gens: &GenMap) -> Result<WeylOp> {
    let w = |t: i64| &gens[&GenLabel::W(HalfInt::from_twice(t))];
    let chart = w(1).chart();
    let inner = w(-1).try_mul(w(1))?.try_sub(&w(-3).try_mul(w(3))?)?;
    Ok(inner.scale(&CScalar::monomial(rat(1, 2), -1)) + WeylOp::identity(chart))
}

/// Rewrites coefficients in the mass `m` through `c = −(2ℓ+1) m`.
pub fn m_form(op: &WeylOp, ell: HalfInt) -> WeylOp {
    let factor = -two_ell_plus_one(ell);
    WeylOp::from_terms(
        op.chart(),
        op.terms().iter().map(|(m, a)| (m.clone(), a.rescale_symbol(&factor))),
    )
}

/// Gaussian exponent of the vacuum: `c/(2(2ℓ+1))` (Section7) or `c/2`.
pub fn vacuum_kappa(ell: HalfInt, norm: HamiltonianNormalization) -> CScalar {
    match norm {
        HamiltonianNormalization::Section6 => CScalar::monomial(rat(1, 2), 1),
        HamiltonianNormalization::Section7 => {
            CScalar::monomial(BigRational::one() / (two_ell_plus_one(ell) * BigInt::from(2)), 1)
        }
    }
}

/// `½(ℓ+½)²` for Section7, `1` for Section6.
pub fn vacuum_energy(ell: HalfInt, norm: HamiltonianNormalization) -> BigRational {
    match norm {
        HamiltonianNormalization::Section6 => BigRational::one(),
        HamiltonianNormalization::Section7 => {
            let l = (ell + HalfInt::HALF).to_rational();
            &l * &l / BigInt::from(2)
        }
    }
}

/// The vacuum, certified against `w̃_j ψ = 0 (j > 0)` and `Hψ = E_vac ψ`.
pub fn vacuum(ell: HalfInt, norm: HamiltonianNormalization) -> Result<GaussFunc> {
    Ok(Ladder::new(ell, norm)?.vacuum().clone())
}

/// Energy from the formula; `n` is `(m, n)` for Section6.
pub fn energy_formula(ell: HalfInt, norm: HamiltonianNormalization, n: &[u32]) -> BigRational {
    let base = vacuum_energy(ell, norm);
    match norm {
        HamiltonianNormalization::Section6 => {
            base + rat(3, 2) * BigInt::from(n[0]) + rat(1, 2) * BigInt::from(n[1])
        }
        HamiltonianNormalization::Section7 => {
            n.iter().enumerate().fold(base, |acc, (a, &k)| {
                acc + BigRational::from_integer(BigInt::from((2 * a as i64 + 1) * i64::from(k)))
            })
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpectrumRecord {
    pub n: Vec<u32>,
    pub energy: BigRational,
    pub state: GaussFunc,
}

/// Builds ladder states with memoization. Section7 states are
/// `w̃_{−1/2}^{n_1} ⋯ w̃_{−ℓ}^{n_L} φ_vac`; Section6 states are
/// `w̃_{−3/2}^m w̃_{−1/2}^n ψ_vac`.
pub struct Ladder {
    ell: HalfInt,
    norm: HamiltonianNormalization,
    gens: GenMap,
    h: WeylOp,
    vacuum: GaussFunc,
    cache: BTreeMap<Vec<u32>, GaussFunc>,
}

impl Ladder {
    pub fn new(ell: HalfInt, norm: HamiltonianNormalization) -> Result<Self> {
        let h = hamiltonian(ell, norm)?;
        let gens = osc_generators(ell, norm.chart_normalization())?;
        let chart = h.chart();
        let kappa = vacuum_kappa(ell, norm);
        let exp_s = match norm {
            HamiltonianNormalization::Section6 => HalfInt::ONE,
            HamiltonianNormalization::Section7 => HalfInt::ZERO,
        };
        let vacuum = GaussFunc::term(chart, kappa, CScalar::one(), exp_s, &vec![0; chart.slots()]);
        let mut j = HalfInt::HALF;
        while j <= ell {
            if !apply(&gens[&GenLabel::W(j)], &vacuum)?.is_zero() {
                return Err(Error::Inconsistent(format!("w{j} does not annihilate the vacuum")));
            }
            j = j + HalfInt::ONE;
        }
        let mut ladder = Ladder {
            ell,
            norm,
            gens,
            h,
            vacuum: vacuum.clone(),
            cache: BTreeMap::new(),
        };
        ladder.check_eigen(&vacuum, &vacuum_energy(ell, norm))?;
        let zero = vec![0; ladder.modes()];
        ladder.cache.insert(zero, vacuum);
        Ok(ladder)
    }

    pub fn hamiltonian(&self) -> &WeylOp {
        &self.h
    }

    pub fn vacuum(&self) -> &GaussFunc {
        &self.vacuum
    }

    pub fn generators(&self) -> &GenMap {
        &self.gens
    }

    /// Number of entries of a multi-index.
    pub fn modes(&self) -> usize {
        match self.norm {
            HamiltonianNormalization::Section6 => 2,
            HamiltonianNormalization::Section7 => self.h.chart().space_dim(),
        }
    }

    /// Lowering label applied for mode `a` (0-based).
    fn lowering(&self, a: usize) -> GenLabel {
        let j = match self.norm {
            HamiltonianNormalization::Section6 => [3, 1][a],
            HamiltonianNormalization::Section7 => 2 * a as i64 + 1,
        };
        GenLabel::W(HalfInt::from_twice(-j))
    }

    /// The raw state for `n`, without the eigen-check.
    pub fn state(&mut self, n: &[u32]) -> Result<GaussFunc> {
        if n.len() != self.modes() {
            return Err(Error::Inconsistent(format!(
                "multi-index needs {} entries, got {}",
                self.modes(),
                n.len()
            )));
        }
        if let Some(s) = self.cache.get(n) {
            return Ok(s.clone());
        }
        // The outermost factor is the first mode with a nonzero count.
        let a = n.iter().position(|&k| k > 0).expect("non-vacuum index");
        let mut inner = n.to_vec();
        inner[a] -= 1;
        let prev = self.state(&inner)?;
        let s = apply(&self.gens[&self.lowering(a)], &prev)?;
        self.cache.insert(n.to_vec(), s.clone());
        Ok(s)
    }

    fn check_eigen(&self, psi: &GaussFunc, energy: &BigRational) -> Result<()> {
        let e = CScalar::constant(energy.clone());
        let hpsi = apply(&self.h, psi)?;
        if hpsi != psi.scale(&e) || psi.is_zero() {
            return Err(Error::Inconsistent(format!("H psi != {energy} psi")));
        }
        if self.norm == HamiltonianNormalization::Section6 {
            let zpsi = apply(&-&self.gens[&GenLabel::ZZero], psi)?;
            if zpsi != psi.scale(&e) {
                return Err(Error::Inconsistent(format!("-z0 psi != {energy} psi")));
            }
        }
        Ok(())
    }

    /// State, formula energy, and the exact check `Hψ = Eψ`.
    pub fn record(&mut self, n: &[u32]) -> Result<SpectrumRecord> {
        let state = self.state(n)?;
        let energy = energy_formula(self.ell, self.norm, n);
        self.check_eigen(&state, &energy)?;
        Ok(SpectrumRecord {
            n: n.to_vec(),
            energy,
            state,
        })
    }
}

pub fn ladder_state(ell: HalfInt, norm: HamiltonianNormalization, n: &[u32]) -> Result<SpectrumRecord> {
    Ladder::new(ell, norm)?.record(n)
}

/// All multi-indices of length `len` with entry sum at most `max_total`,
/// ordered by total and then lexicographically.
pub fn multi_indices(len: usize, max_total: u32) -> Vec<Vec<u32>> {
    fn rec(len: usize, total: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if prefix.len() + 1 == len {
            prefix.push(total);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for k in (0..=total).rev() {
            prefix.push(k);
            rec(len, total - k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if len == 0 {
        return out;
    }
    for total in 0..=max_total {
        rec(len, total, &mut Vec::new(), &mut out);
    }
    out
}

/// Every ladder state up to total excitation `max_total`, each verified.
/// Eigen-checks run in parallel once the states are built.
pub fn spectrum(ell: HalfInt, norm: HamiltonianNormalization, max_total: u32) -> Result<Vec<SpectrumRecord>> {
    let mut ladder = Ladder::new(ell, norm)?;
    let indices = multi_indices(ladder.modes(), max_total);
    let states: Vec<(Vec<u32>, GaussFunc)> = indices
        .into_iter()
        .map(|n| ladder.state(&n).map(|s| (n, s)))
        .collect::<Result<_>>()?;
    let ladder = &ladder;
    states
        .into_par_iter()
        .map(|(n, state)| {
            let energy = energy_formula(ell, norm, &n);
            ladder.check_eigen(&state, &energy)?;
            Ok(SpectrumRecord { n, energy, state })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationCheck {
    pub relation: String,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct LadderReport {
    pub ell: String,
    pub normalization: String,
    pub relations: Vec<RelationCheck>,
    /// Pairs `(i, j)` of lowering operators and whether they commute.
    pub lowering_commutators: Vec<RelationCheck>,
    /// Recorded only: the Gaussian vacuum decays when `c < 0`.
    pub normalizable_when: String,
}

impl LadderReport {
    pub fn passed(&self) -> bool {
        self.relations.iter().all(|r| r.holds)
    }
}

/// `[Ω̃_0, w̃_{±j}] = 0`, `[H, w̃_{±j}] = ∓2j w̃_{±j}` (`∓j` for Section6),
/// `[z̃_0, H] = 0`, and for Section6 `Ω̃_0 = z̃_0 + H̃`; also measures the
/// commutators of the lowering operators.
pub fn ladder_relations(ell: HalfInt, norm: HamiltonianNormalization) -> Result<LadderReport> {
    let h = hamiltonian(ell, norm)?;
    let gens = osc_generators(ell, norm.chart_normalization())?;
    let omega = omega0_osc(ell, norm.chart_normalization())?;
    let mut relations = Vec::new();
    let mut push = |relation: String, residual: WeylOp| {
        relations.push(RelationCheck {
            relation,
            holds: residual.is_zero(),
        });
    };
    let ws: Vec<HalfInt> = gens
        .keys()
        .filter_map(|l| match l {
            GenLabel::W(j) => Some(*j),
            _ => None,
        })
        .collect();
    for &j in &ws {
        let w = &gens[&GenLabel::W(j)];
        push(format!("[Omega0, w{j}] = 0"), omega.commutator(w)?);
        let factor = rat(-norm.ladder_factor(), 1) * j.to_rational();
        push(
            format!("[H, w{j}] = {factor} w{j}"),
            h.commutator(w)? - w.scale_rational(&factor),
        );
    }
    let z0 = &gens[&GenLabel::ZZero];
    push("[z0, H] = 0".into(), z0.commutator(&h)?);
    if norm == HamiltonianNormalization::Section6 {
        push("Omega0 = z0 + H".into(), &omega - &(z0 + &h));
    }
    let mut lowering_commutators = Vec::new();
    let neg: Vec<HalfInt> = ws.iter().copied().filter(|j| j.twice() < 0).collect();
    for (a, &i) in neg.iter().enumerate() {
        for &j in &neg[a + 1..] {
            let br = gens[&GenLabel::W(i)].commutator(&gens[&GenLabel::W(j)])?;
            lowering_commutators.push(RelationCheck {
                relation: format!("[w{i}, w{j}] = 0"),
                holds: br.is_zero(),
            });
        }
    }
    Ok(LadderReport {
        ell: ell.to_string(),
        normalization: norm.name().into(),
        relations,
        lowering_commutators,
        normalizable_when: "c < 0".into(),
    })
}

/// `H'` acting on the polynomial part: `H(p·φ_vac) = (H'p)·φ_vac`, written in
/// the basis of `u`-monomials of degree at most `D`, one image per row.
#[derive(Clone, Debug, PartialEq)]
pub struct ExactMatrix {
    pub ell: HalfInt,
    pub max_degree: u32,
    /// Exponents of `u_1 … u_L`, sorted by `G(n) = Σ a·n_a`.
    pub basis: Vec<Vec<u32>>,
    /// `entries[i][j]` is the coefficient of `basis[j]` in `H'(basis[i])`.
    pub entries: Vec<Vec<CScalar>>,
}

impl ExactMatrix {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn diagonal(&self) -> Vec<CScalar> {
        (0..self.dim()).map(|i| self.entries[i][i].clone()).collect()
    }
}

/// `G(n) = Σ a·n_a` with `a` starting at 1.
pub fn weighted_grade(n: &[u32]) -> u32 {
    n.iter().enumerate().map(|(a, &k)| (a as u32 + 1) * k).sum()
}

#[derive(Clone, Debug, PartialEq)]
pub struct OracleResult {
    pub matrix: ExactMatrix,
    /// Diagonal, in basis order.
    pub eigenvalues: Vec<BigRational>,
    /// Formula energies for the same multi-indices.
    pub expected: Vec<BigRational>,
}

/// Builds the matrix, checks triangularity and a `c`-free diagonal, and
/// compares the diagonal multiset with the formula.
pub fn matrix_oracle(ell: HalfInt, max_degree: u32) -> Result<OracleResult> {
    let norm = HamiltonianNormalization::Section7;
    let h = hamiltonian(ell, norm)?;
    let chart = h.chart();
    // φ_vac = exp(κu_1²) ⇒ conjugation weight 2κ.
    let kappa = vacuum_kappa(ell, norm);
    let hp = conjugate(&h, &Weight::Gaussian(&kappa + &kappa))?;
    let modes = chart.space_dim();
    let mut basis = multi_indices(modes, max_degree);
    basis.sort_by_key(|n| weighted_grade(n));
    let index: BTreeMap<Vec<u32>, usize> = basis.iter().cloned().enumerate().map(|(i, n)| (n, i)).collect();
    let rows: Vec<Result<Vec<CScalar>>> = basis
        .par_iter()
        .map(|n| image_row(&hp, chart, n, &index))
        .collect();
    let entries: Vec<Vec<CScalar>> = rows.into_iter().collect::<Result<_>>()?;
    for (i, row) in entries.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            if i != j && !x.is_zero() && weighted_grade(&basis[j]) >= weighted_grade(&basis[i]) {
                return Err(Error::NotTriangular { row: i, col: j });
            }
        }
    }
    let mut eigenvalues = Vec::with_capacity(basis.len());
    for (i, row) in entries.iter().enumerate() {
        let d = row[i].as_constant().ok_or(Error::DiagonalDependsOnC(i))?;
        eigenvalues.push(d);
    }
    let expected: Vec<BigRational> = basis.iter().map(|n| energy_formula(ell, norm, n)).collect();
    let mut a = eigenvalues.clone();
    let mut b = expected.clone();
    a.sort();
    b.sort();
    if a != b {
        return Err(Error::Inconsistent("diagonal multiset differs from the spectrum formula".into()));
    }
    Ok(OracleResult {
        matrix: ExactMatrix {
            ell,
            max_degree,
            basis,
            entries,
        },
        eigenvalues,
        expected,
    })
}

fn image_row(
    hp: &WeylOp,
    chart: Chart,
    n: &[u32],
    index: &BTreeMap<Vec<u32>, usize>,
) -> Result<Vec<CScalar>> {
    let mut var = vec![0i32; chart.slots()];
    for (a, &k) in n.iter().enumerate() {
        var[a + 1] = k as i32;
    }
    let p = GaussFunc::term(chart, CScalar::zero(), CScalar::one(), HalfInt::ZERO, &var);
    let image = apply(hp, &p)?;
    let mut row = vec![CScalar::zero(); index.len()];
    for (FuncMonomial { exp_s, var }, a) in image.terms() {
        let key: Option<Vec<u32>> = var[1..].iter().map(|&e| u32::try_from(e).ok()).collect();
        let col = key
            .filter(|_| *exp_s == HalfInt::ZERO)
            .and_then(|k| index.get(&k).copied())
            .ok_or_else(|| Error::Inconsistent(format!("image of {n:?} leaves the degree-bounded basis")))?;
        row[col] = a.clone();
    }
    Ok(row)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ReductionReport {
    pub ell: String,
    /// The restricted operator in the mass form.
    pub restricted: String,
    pub constant: String,
}

/// Restricts `H^{(ℓ)}` to functions of `u_1` alone and checks it is
/// `−(1/2m)∂_1² + (m/2)u_1² + const`.
pub fn harmonic_reduction(ell: HalfInt) -> Result<(ReductionReport, BigRational)> {
    let h = hamiltonian(ell, HamiltonianNormalization::Section7)?;
    let chart = h.chart();
    let n = chart.slots();
    let mut restricted = WeylOp::zero(chart);
    for (m, a) in h.terms() {
        if m.der[2..].iter().any(|&d| d > 0) {
            continue;
        }
        if m.var[2..].iter().any(|&v| v != 0) || m.exp_s != HalfInt::ZERO {
            return Err(Error::Inconsistent(format!(
                "term {} leaves functions of u1",
                describe(&WeylOp::from_terms(chart, [(m.clone(), a.clone())]))
            )));
        }
        restricted.add_term(m.clone(), a.clone());
    }
    let restricted = m_form(&restricted, ell);
    let constant = restricted.coeff(&crate::weyl::Monomial::unit(n));
    let constant = constant
        .as_constant()
        .ok_or_else(|| Error::Inconsistent(format!("constant depends on m: {constant}")))?;
    let oscillator = WeylOp::der(chart, 1).pow(2).scale(&CScalar::monomial(rat(-1, 2), -1))
        + WeylOp::var(chart, 1).pow(2).scale(&CScalar::monomial(rat(1, 2), 1))
        + WeylOp::constant(chart, CScalar::constant(constant.clone()));
    if oscillator != restricted {
        return Err(Error::Inconsistent(format!(
            "restriction is not an oscillator: {}",
            crate::weyl::render::operator(&(&restricted - &oscillator), "m", crate::weyl::render::Style::Text)
        )));
    }
    Ok((
        ReductionReport {
            ell: ell.to_string(),
            restricted: crate::weyl::render::operator(&restricted, "m", crate::weyl::render::Style::Text),
            constant: constant.to_string(),
        },
        constant,
    ))
}

/// `H^{(ℓ)}` in canonical mass form, built directly from
/// `−(1/2m)∂_1² + (m/2)u_1² + Σ_j ((2j+1)u_{j+1}∂_{j+1} − (2ℓ−2j+1)u_j∂_{j+1}) + (2ℓ−1)(2ℓ+3)/8`.
pub fn canonical_hamiltonian(ell: HalfInt) -> Result<WeylOp> {
    let chart = Chart::osc(ell)?;
    let big_l = chart.space_dim() as i64;
    let k = ell.twice();
    let ud = |a: i64, b: i64| &WeylOp::var(chart, a as usize) * &WeylOp::der(chart, b as usize);
    let mut op = WeylOp::der(chart, 1).pow(2).scale(&CScalar::monomial(rat(-1, 2), -1))
        + WeylOp::var(chart, 1).pow(2).scale(&CScalar::monomial(rat(1, 2), 1));
    for j in 1..big_l {
        op = op + ud(j + 1, j + 1).scale_rational(&rat(2 * j + 1, 1))
            - ud(j, j + 1).scale_rational(&rat(k - 2 * j + 1, 1));
    }
    Ok(op + WeylOp::constant(chart, CScalar::constant(rat((k - 1) * (k + 3), 8))))
}

/// The seven lowest Section6 reference eigenstates, keyed by `(m, n)`.
pub fn section6_printed_states() -> Result<Vec<(Vec<u32>, GaussFunc)>> {
    let chart = Chart::osc(three_halves())?;
    let kappa = CScalar::monomial(rat(1, 2), 1);
    let f = |twice_s: i64, terms: &[(i64, i32, i32, i32)]| {
        GaussFunc::from_terms(
            chart,
            kappa.clone(),
            terms.iter().map(|&(a, cpow, u, v)| {
                (
                    FuncMonomial {
                        exp_s: HalfInt::from_twice(twice_s),
                        var: vec![0, u, v],
                    },
                    CScalar::monomial(rat(a, 1), cpow),
                )
            }),
        )
    };
    Ok(vec![
        (vec![0, 0], f(2, &[(1, 0, 0, 0)])),
        (vec![0, 1], f(3, &[(1, 1, 1, 0)])),
        (vec![0, 2], f(4, &[(2, 1, 0, 0), (1, 2, 2, 0)])),
        (vec![1, 0], f(5, &[(3, 1, 1, 0), (-3, 1, 0, 1)])),
        (vec![0, 3], f(5, &[(6, 2, 1, 0), (1, 3, 3, 0)])),
        (vec![1, 1], f(6, &[(3, 1, 0, 0), (3, 2, 2, 0), (-3, 2, 1, 1)])),
        (vec![0, 4], f(6, &[(12, 2, 0, 0), (12, 3, 2, 0), (1, 4, 4, 0)])),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(t: i64) -> HalfInt {
        HalfInt::from_twice(t)
    }

    #[test]
    fn vacuum_energies() {
        assert_eq!(vacuum_energy(h(3), HamiltonianNormalization::Section7), rat(2, 1));
        assert_eq!(vacuum_energy(h(9), HamiltonianNormalization::Section7), rat(25, 2));
        assert_eq!(vacuum_energy(h(3), HamiltonianNormalization::Section6), rat(1, 1));
        for t in [1, 3, 9] {
            vacuum(h(t), HamiltonianNormalization::Section7).unwrap();
        }
        vacuum(h(3), HamiltonianNormalization::Section6).unwrap();
    }

    #[test]
    fn first_excited_states() {
        let r = ladder_state(h(3), HamiltonianNormalization::Section7, &[1, 0]).unwrap();
        assert_eq!(r.energy, rat(3, 1));
        let r = ladder_state(h(3), HamiltonianNormalization::Section6, &[0, 1]).unwrap();
        assert_eq!(r.energy, rat(3, 2));
    }

    #[test]
    fn section6_needs_three_halves() {
        assert!(matches!(
            hamiltonian(h(5), HamiltonianNormalization::Section6),
            Err(Error::NormalizationUnavailable { .. })
        ));
    }

    #[test]
    fn multi_index_enumeration() {
        let v = multi_indices(2, 2);
        assert_eq!(v, vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![2, 0], vec![1, 1], vec![0, 2]]);
        assert_eq!(multi_indices(5, 6).len(), 462);
    }

    #[test]
    fn small_oracle() {
        let r = matrix_oracle(h(3), 2).unwrap();
        let mut ev = r.eigenvalues.clone();
        ev.sort();
        let mut expected: Vec<BigRational> = [2, 3, 5, 4, 6, 8].iter().map(|&k| rat(k, 1)).collect();
        expected.sort();
        assert_eq!(ev, expected);
        let r = matrix_oracle(h(1), 3).unwrap();
        assert_eq!(r.eigenvalues, vec![rat(1, 2), rat(3, 2), rat(5, 2), rat(7, 2)]);
    }

    #[test]
    fn ladder_relations_hold() {
        for t in [1, 3, 5, 7] {
            let r = ladder_relations(h(t), HamiltonianNormalization::Section7).unwrap();
            assert!(r.passed(), "{r:?}");
            assert!(r.lowering_commutators.iter().all(|c| c.holds));
        }
        let r = ladder_relations(h(3), HamiltonianNormalization::Section6).unwrap();
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn canonical_form_matches_derived_hamiltonian() {
        for t in [1, 3, 5, 7, 9] {
            let ell = h(t);
            let derived = m_form(&hamiltonian(ell, HamiltonianNormalization::Section7).unwrap(), ell);
            assert_eq!(derived, canonical_hamiltonian(ell).unwrap());
        }
    }

    #[test]
    fn printed_section6_states_are_ladder_states() {
        let mut ladder = Ladder::new(h(3), HamiltonianNormalization::Section6).unwrap();
        for (n, printed) in section6_printed_states().unwrap() {
            let built = ladder.record(&n).unwrap();
            assert!(built.state.ratio_to(&printed).is_some(), "{n:?}");
        }
    }

    #[test]
    fn reduction_constants() {
        for (t, k) in [(1, rat(0, 1)), (3, rat(3, 2)), (9, rat(12, 1))] {
            assert_eq!(harmonic_reduction(h(t)).unwrap().1, k);
        }
    }
}
