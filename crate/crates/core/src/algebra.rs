//! Generator labels, linear combinations of generators, and structure tables
//! extracted from a realization by re-expanding brackets.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linsolve::solve_unique;
use crate::scalar::HalfInt;
use crate::weyl::render::describe;
use crate::weyl::Monomial;
use crate::{CScalar, WeylOp};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GenLabel {
    ZPlus,
    ZZero,
    ZMinus,
    W(HalfInt),
    C,
    /// Anticommutator `{w_i, w_j}`, stored with `i ≥ j`.
    WW(HalfInt, HalfInt),
    Omega(HalfInt),
}

impl GenLabel {
    pub fn ww(i: HalfInt, j: HalfInt) -> Self {
        if i >= j {
            GenLabel::WW(i, j)
        } else {
            GenLabel::WW(j, i)
        }
    }

    pub fn is_odd(&self) -> bool {
        matches!(self, GenLabel::W(_))
    }

    /// Eigenvalue under bracketing with `z_0`.
    pub fn degree(&self) -> HalfInt {
        match *self {
            GenLabel::ZPlus => HalfInt::ONE,
            GenLabel::ZZero | GenLabel::C => HalfInt::ZERO,
            GenLabel::ZMinus => -HalfInt::ONE,
            GenLabel::W(j) => j,
            GenLabel::WW(i, j) => i + j,
            GenLabel::Omega(r) => r,
        }
    }

    /// Stable ASCII name, used in reports and encodings.
    pub fn name(&self) -> String {
        match self {
            GenLabel::ZPlus => "z+1".into(),
            GenLabel::ZZero => "z0".into(),
            GenLabel::ZMinus => "z-1".into(),
            GenLabel::W(j) => format!("w{}", signed(*j)),
            GenLabel::C => "c".into(),
            GenLabel::WW(i, j) => format!("w{{{},{}}}", signed(*i), signed(*j)),
            GenLabel::Omega(r) => format!("Omega{r}"),
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        let half = |t: &str| crate::scalar::parse_rational(t).as_ref().and_then(HalfInt::from_rational);
        Some(match s {
            "z+1" => GenLabel::ZPlus,
            "z0" => GenLabel::ZZero,
            "z-1" => GenLabel::ZMinus,
            "c" => GenLabel::C,
            _ => {
                if let Some(inner) = s.strip_prefix("w{").and_then(|t| t.strip_suffix('}')) {
                    let (a, b) = inner.split_once(',')?;
                    GenLabel::ww(half(a)?, half(b)?)
                } else if let Some(j) = s.strip_prefix('w') {
                    GenLabel::W(half(j)?)
                } else {
                    GenLabel::Omega(half(s.strip_prefix("Omega")?)?)
                }
            }
        })
    }
}

fn signed(q: HalfInt) -> String {
    if q.twice() > 0 {
        format!("+{q}")
    } else {
        q.to_string()
    }
}

impl fmt::Display for GenLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// All `W(j)` labels for `j = ℓ, ℓ−1, …, −ℓ`.
pub fn w_labels(ell: HalfInt) -> Vec<GenLabel> {
    let mut out = Vec::new();
    let mut j = ell;
    while j >= -ell {
        out.push(GenLabel::W(j));
        j = j - HalfInt::ONE;
    }
    out
}

/// All unordered pairs `WW(i, j)`, `i ≥ j`.
pub fn ww_labels(ell: HalfInt) -> Vec<GenLabel> {
    let ws = w_labels(ell);
    let mut out = Vec::new();
    for (a, wa) in ws.iter().enumerate() {
        for wb in &ws[a..] {
            if let (GenLabel::W(i), GenLabel::W(j)) = (wa, wb) {
                out.push(GenLabel::ww(*i, *j));
            }
        }
    }
    out
}

/// A finite linear combination of generators.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct AlgebraElement {
    coeffs: BTreeMap<GenLabel, CScalar>,
}

impl AlgebraElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(label: GenLabel) -> Self {
        Self::term(label, CScalar::from_ratio(1, 1))
    }

    pub fn term(label: GenLabel, a: CScalar) -> Self {
        let mut e = Self::zero();
        e.add_term(label, a);
        e
    }

    pub fn from_terms<I: IntoIterator<Item = (GenLabel, CScalar)>>(iter: I) -> Self {
        let mut e = Self::zero();
        for (l, a) in iter {
            e.add_term(l, a);
        }
        e
    }

    pub fn add_term(&mut self, label: GenLabel, a: CScalar) {
        if a.is_zero() {
            return;
        }
        let sum = match self.coeffs.remove(&label) {
            Some(b) => &b + &a,
            None => a,
        };
        if !sum.is_zero() {
            self.coeffs.insert(label, sum);
        }
    }

    pub fn coeffs(&self) -> &BTreeMap<GenLabel, CScalar> {
        &self.coeffs
    }

    pub fn coeff(&self, label: GenLabel) -> CScalar {
        self.coeffs.get(&label).cloned().unwrap_or_else(CScalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn scale(&self, a: &CScalar) -> Self {
        Self::from_terms(self.coeffs.iter().map(|(l, b)| (*l, a * b)))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (l, a) in &other.coeffs {
            out.add_term(*l, a.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&CScalar::from_ratio(-1, 1)))
    }

    /// The operator `Σ a_g · ḡ`.
    pub fn realize(&self, gens: &GenMap) -> Result<WeylOp> {
        let chart = gens.values().next().map(|g| g.chart()).ok_or(Error::ChartMismatch)?;
        let mut out = WeylOp::zero(chart);
        for (l, a) in &self.coeffs {
            let g = gens
                .get(l)
                .ok_or_else(|| Error::Inconsistent(format!("no realization for {l}")))?;
            out = out.try_add(&g.scale(a))?;
        }
        Ok(out)
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (l, a)) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({a}) {l}")?;
        }
        Ok(())
    }
}

/// Realized generators keyed by label.
pub type GenMap = BTreeMap<GenLabel, WeylOp>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BracketKind {
    Commutator,
    Anticommutator,
}

/// Which bracket to use for a pair of labels.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BracketRule {
    /// Commutators everywhere (the Lie algebra structure).
    Lie,
    /// Anticommutators on odd–odd pairs (the superalgebra structure).
    Graded,
}

impl BracketRule {
    pub fn kind(&self, a: GenLabel, b: GenLabel) -> BracketKind {
        match self {
            BracketRule::Graded if a.is_odd() && b.is_odd() => BracketKind::Anticommutator,
            _ => BracketKind::Commutator,
        }
    }

    fn parity(&self, l: GenLabel) -> bool {
        *self == BracketRule::Graded && l.is_odd()
    }

    pub fn bracket(&self, a: (GenLabel, &WeylOp), b: (GenLabel, &WeylOp)) -> Result<WeylOp> {
        match self.kind(a.0, b.0) {
            BracketKind::Commutator => a.1.commutator(b.1),
            BracketKind::Anticommutator => a.1.anticommutator(b.1),
        }
    }
}

/// Re-expands operators in the span of a generator set. Expansion is first
/// attempted in the degree sector predicted by the labels and falls back to
/// the full set.
pub struct Expander<'a> {
    gens: &'a GenMap,
    labels: Vec<GenLabel>,
    sectors: BTreeMap<HalfInt, Vec<GenLabel>>,
}

impl<'a> Expander<'a> {
    pub fn new(gens: &'a GenMap) -> Self {
        let labels: Vec<GenLabel> = gens.keys().copied().collect();
        let mut sectors: BTreeMap<HalfInt, Vec<GenLabel>> = BTreeMap::new();
        for l in &labels {
            sectors.entry(l.degree()).or_default().push(*l);
        }
        Expander {
            gens,
            labels,
            sectors,
        }
    }

    pub fn gens(&self) -> &GenMap {
        self.gens
    }

    pub fn labels(&self) -> &[GenLabel] {
        &self.labels
    }

    /// Coefficients of `op` in the span, or `NoSolution` if it lies outside.
    pub fn expand(&self, op: &WeylOp, degree: Option<HalfInt>) -> Result<AlgebraElement> {
        if op.is_zero() {
            return Ok(AlgebraElement::zero());
        }
        if let Some(sector) = degree.and_then(|d| self.sectors.get(&d)) {
            if let Ok(e) = self.expand_in(op, sector) {
                return Ok(e);
            }
        }
        self.expand_in(op, &self.labels)
    }

    fn expand_in(&self, op: &WeylOp, labels: &[GenLabel]) -> Result<AlgebraElement> {
        let mut rows: BTreeSet<&Monomial> = op.terms().keys().collect();
        for l in labels {
            rows.extend(self.gens[l].terms().keys());
        }
        let a: Vec<Vec<CScalar>> = rows
            .iter()
            .map(|m| labels.iter().map(|l| self.gens[l].coeff(m)).collect())
            .collect();
        let b: Vec<CScalar> = rows.iter().map(|m| op.coeff(m)).collect();
        let x = solve_unique(&a, &b)?;
        Ok(AlgebraElement::from_terms(labels.iter().copied().zip(x)))
    }
}

/// Brackets of a generator set re-expanded in the same set.
#[derive(Clone, Debug, PartialEq)]
pub struct StructureTable {
    rule: BracketRule,
    labels: Vec<GenLabel>,
    /// Entries for label pairs `(a, b)` with `a ≤ b`.
    entries: BTreeMap<(GenLabel, GenLabel), AlgebraElement>,
}

impl StructureTable {
    pub fn rule(&self) -> BracketRule {
        self.rule
    }

    pub fn labels(&self) -> &[GenLabel] {
        &self.labels
    }

    pub fn kind(&self, a: GenLabel, b: GenLabel) -> BracketKind {
        self.rule.kind(a, b)
    }

    /// `[a, b}` using the stored entry and graded (anti)symmetry.
    pub fn bracket(&self, a: GenLabel, b: GenLabel) -> AlgebraElement {
        if a <= b {
            self.entries.get(&(a, b)).cloned().unwrap_or_default()
        } else {
            let e = self.entries.get(&(b, a)).cloned().unwrap_or_default();
            match self.kind(a, b) {
                BracketKind::Commutator => e.scale(&CScalar::from_ratio(-1, 1)),
                BracketKind::Anticommutator => e,
            }
        }
    }

    /// Non-zero stored entries.
    pub fn entries(&self) -> impl Iterator<Item = (&(GenLabel, GenLabel), &AlgebraElement)> {
        self.entries.iter().filter(|(_, e)| !e.is_zero())
    }

    /// Bracket extended bilinearly to an element on the left.
    pub fn bracket_elements(&self, x: &AlgebraElement, y: &AlgebraElement) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        for (a, p) in x.coeffs() {
            for (b, q) in y.coeffs() {
                out = out.add(&self.bracket(*a, *b).scale(&(p * q)));
            }
        }
        out
    }

    /// Graded Jacobi sum for a triple of labels; zero when the identity holds.
    pub fn jacobi(&self, a: GenLabel, b: GenLabel, d: GenLabel) -> AlgebraElement {
        let sign = |x: GenLabel, y: GenLabel| {
            if self.rule.parity(x) && self.rule.parity(y) {
                CScalar::from_ratio(-1, 1)
            } else {
                CScalar::from_ratio(1, 1)
            }
        };
        let ba = AlgebraElement::basis;
        let t1 = self
            .bracket_elements(&ba(a), &self.bracket(b, d))
            .scale(&sign(a, d));
        let t2 = self
            .bracket_elements(&ba(b), &self.bracket(d, a))
            .scale(&sign(b, a));
        let t3 = self
            .bracket_elements(&ba(d), &self.bracket(a, b))
            .scale(&sign(d, b));
        t1.add(&t2).add(&t3)
    }

    /// Restriction to a label subset; `None` if some bracket leaves it.
    pub fn restrict(&self, labels: &[GenLabel]) -> Option<StructureTable> {
        let keep: BTreeSet<GenLabel> = labels.iter().copied().collect();
        let mut entries = BTreeMap::new();
        for (&(a, b), e) in &self.entries {
            if keep.contains(&a) && keep.contains(&b) {
                if e.coeffs().keys().any(|l| !keep.contains(l)) {
                    return None;
                }
                entries.insert((a, b), e.clone());
            }
        }
        Some(StructureTable {
            rule: self.rule,
            labels: keep.into_iter().collect(),
            entries,
        })
    }
}

/// Extracts the structure table of `gens` under `rule`.
pub fn extract_structure(gens: &GenMap, rule: BracketRule) -> Result<StructureTable> {
    let expander = Expander::new(gens);
    let labels = expander.labels().to_vec();
    let pairs: Vec<(GenLabel, GenLabel)> = labels
        .iter()
        .enumerate()
        .flat_map(|(i, a)| labels[i..].iter().map(move |b| (*a, *b)))
        .collect();
    let results: Vec<Result<((GenLabel, GenLabel), AlgebraElement)>> = pairs
        .par_iter()
        .map(|&(a, b)| {
            let br = rule.bracket((a, &gens[&a]), (b, &gens[&b]))?;
            let e = expander
                .expand(&br, Some(a.degree() + b.degree()))
                .map_err(|_| Error::NotClosed {
                    pair: format!("({a}, {b})"),
                    residual: describe(&br),
                })?;
            if rule == BracketRule::Graded {
                let parity = a.is_odd() != b.is_odd();
                if let Some(bad) = e.coeffs().keys().find(|l| l.is_odd() != parity) {
                    return Err(Error::GradingViolation {
                        pair: format!("({a}, {b})"),
                        detail: format!("component along {bad}"),
                    });
                }
            }
            Ok(((a, b), e))
        })
        .collect();
    let mut entries = BTreeMap::new();
    for r in results {
        let (k, e) = r?;
        entries.insert(k, e);
    }
    Ok(StructureTable {
        rule,
        labels,
        entries,
    })
}

/// True iff both tables have the same labels, rule and entries.
pub fn verify_isomorphic_tables(a: &StructureTable, b: &StructureTable) -> bool {
    a == b
}

/// Outcome of a Jacobi sweep.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct JacobiReport {
    pub checked: usize,
    pub failures: Vec<(GenLabel, GenLabel, GenLabel, AlgebraElement)>,
}

/// Triples to check: all of them when `limit` is `None` (or the cube is
/// small enough), otherwise a seeded sample of `limit` triples plus every
/// triple whose first entry lies in `targeted`.
pub fn jacobi_triples(
    labels: &[GenLabel],
    limit: Option<usize>,
    targeted: &[GenLabel],
    seed: u64,
) -> Vec<(GenLabel, GenLabel, GenLabel)> {
    let n = labels.len();
    let exhaustive = limit.is_none_or(|k| n * n * n <= k);
    if exhaustive {
        let mut out = Vec::with_capacity(n * n * n);
        for a in labels {
            for b in labels {
                for d in labels {
                    out.push((*a, *b, *d));
                }
            }
        }
        return out;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for _ in 0..limit.unwrap_or(0) {
        let pick = |rng: &mut ChaCha8Rng| *labels.choose(rng).expect("non-empty");
        out.push((pick(&mut rng), pick(&mut rng), pick(&mut rng)));
    }
    for a in targeted {
        for b in labels {
            for d in labels {
                out.push((*a, *b, *d));
            }
        }
    }
    out
}

pub fn check_jacobi(table: &StructureTable, triples: &[(GenLabel, GenLabel, GenLabel)]) -> JacobiReport {
    let failures: Vec<_> = triples
        .par_iter()
        .filter_map(|&(a, b, d)| {
            let j = table.jacobi(a, b, d);
            (!j.is_zero()).then_some((a, b, d, j))
        })
        .collect();
    JacobiReport {
        checked: triples.len(),
        failures,
    }
}
