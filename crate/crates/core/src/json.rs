//! JSON wire format for scalars, operators and functions.
//!
//! Rationals are `{"n": "...", "d": "..."}` with decimal strings, Laurent
//! coefficients are lists of `{"cpow", "coef"}`, and operators list their
//! normal-ordered terms in canonical order, so encodings are deterministic.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::algebra::{GenLabel, GenMap};
use crate::error::{Error, Result};
use crate::scalar::HalfInt;
use crate::spectrum::{ExactMatrix, SpectrumRecord};
use crate::weyl::{Chart, ChartKind, FuncMonomial, Monomial};
use crate::{CScalar, GaussFunc, WeylOp};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalJson {
    pub n: String,
    pub d: String,
}

impl From<&BigRational> for RationalJson {
    fn from(r: &BigRational) -> Self {
        RationalJson {
            n: r.numer().to_string(),
            d: r.denom().to_string(),
        }
    }
}

impl RationalJson {
    pub fn decode(&self) -> Result<BigRational> {
        let n = BigInt::from_str(&self.n).map_err(|e| Error::Decode(format!("numerator {:?}: {e}", self.n)))?;
        let d = BigInt::from_str(&self.d).map_err(|e| Error::Decode(format!("denominator {:?}: {e}", self.d)))?;
        if d.is_zero() {
            return Err(Error::Decode("zero denominator".into()));
        }
        Ok(BigRational::new(n, d))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LaurentTermJson {
    pub cpow: i32,
    pub coef: RationalJson,
}

pub fn encode_scalar(x: &CScalar) -> Vec<LaurentTermJson> {
    x.terms()
        .iter()
        .map(|(k, a)| LaurentTermJson {
            cpow: *k,
            coef: a.into(),
        })
        .collect()
}

pub fn decode_scalar(terms: &[LaurentTermJson]) -> Result<CScalar> {
    let parsed = terms
        .iter()
        .map(|t| t.coef.decode().map(|a| (t.cpow, a)))
        .collect::<Result<Vec<_>>>()?;
    Ok(CScalar::from_terms(parsed))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ChartJson {
    pub kind: String,
    pub twice_ell: i64,
}

impl From<Chart> for ChartJson {
    fn from(c: Chart) -> Self {
        ChartJson {
            kind: match c.kind() {
                ChartKind::Free => "free".into(),
                ChartKind::Osc => "osc".into(),
            },
            twice_ell: c.ell().twice(),
        }
    }
}

impl ChartJson {
    pub fn decode(&self) -> Result<Chart> {
        let kind = match self.kind.as_str() {
            "free" => ChartKind::Free,
            "osc" => ChartKind::Osc,
            k => return Err(Error::Decode(format!("unknown chart kind {k:?}"))),
        };
        Chart::new(kind, HalfInt::from_twice(self.twice_ell))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct OperatorTermJson {
    pub coef: Vec<LaurentTermJson>,
    pub twice_exp_s: i64,
    pub var: Vec<i32>,
    pub der: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OperatorJson {
    pub chart: ChartJson,
    pub terms: Vec<OperatorTermJson>,
}

pub fn encode_operator(op: &WeylOp) -> OperatorJson {
    OperatorJson {
        chart: op.chart().into(),
        terms: op
            .terms()
            .iter()
            .map(|(m, a)| OperatorTermJson {
                coef: encode_scalar(a),
                twice_exp_s: m.exp_s.twice(),
                var: m.var.clone(),
                der: m.der.clone(),
            })
            .collect(),
    }
}

pub fn decode_operator(json: &OperatorJson) -> Result<WeylOp> {
    let chart = json.chart.decode()?;
    let n = chart.slots();
    let mut terms = Vec::with_capacity(json.terms.len());
    for t in &json.terms {
        if t.var.len() != n || t.der.len() != n {
            return Err(Error::Decode(format!("term with {} slots on a {n}-slot chart", t.var.len())));
        }
        if chart.is_osc() && t.var[0] != 0 {
            return Err(Error::Decode("s is not a polynomial variable".into()));
        }
        if !chart.is_osc() && t.twice_exp_s != 0 {
            return Err(Error::Decode("exponential weight on the free chart".into()));
        }
        let m = Monomial {
            exp_s: HalfInt::from_twice(t.twice_exp_s),
            var: t.var.clone(),
            der: t.der.clone(),
        };
        terms.push((m, decode_scalar(&t.coef)?));
    }
    Ok(WeylOp::from_terms(chart, terms))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct FunctionTermJson {
    pub coef: Vec<LaurentTermJson>,
    pub twice_exp_s: i64,
    pub var: Vec<i32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctionJson {
    pub chart: ChartJson,
    pub kappa: Vec<LaurentTermJson>,
    pub terms: Vec<FunctionTermJson>,
}

pub fn encode_function(f: &GaussFunc) -> FunctionJson {
    FunctionJson {
        chart: f.chart().into(),
        kappa: encode_scalar(f.kappa()),
        terms: f
            .terms()
            .iter()
            .map(|(m, a)| FunctionTermJson {
                coef: encode_scalar(a),
                twice_exp_s: m.exp_s.twice(),
                var: m.var.clone(),
            })
            .collect(),
    }
}

pub fn decode_function(json: &FunctionJson) -> Result<GaussFunc> {
    let chart = json.chart.decode()?;
    let kappa = decode_scalar(&json.kappa)?;
    let mut terms = Vec::with_capacity(json.terms.len());
    for t in &json.terms {
        if t.var.len() != chart.slots() {
            return Err(Error::Decode("function term has the wrong number of slots".into()));
        }
        let m = FuncMonomial {
            exp_s: HalfInt::from_twice(t.twice_exp_s),
            var: t.var.clone(),
        };
        terms.push((m, decode_scalar(&t.coef)?));
    }
    Ok(GaussFunc::from_terms(chart, kappa, terms))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorJson {
    pub label: String,
    pub operator: OperatorJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorsJson {
    pub ell: String,
    pub generators: Vec<GeneratorJson>,
}

pub fn encode_generators(ell: HalfInt, gens: &GenMap) -> GeneratorsJson {
    GeneratorsJson {
        ell: ell.to_string(),
        generators: gens
            .iter()
            .map(|(l, g)| GeneratorJson {
                label: l.name(),
                operator: encode_operator(g),
            })
            .collect(),
    }
}

pub fn decode_generators(json: &GeneratorsJson) -> Result<GenMap> {
    json.generators
        .iter()
        .map(|g| {
            let label = GenLabel::parse(&g.label).ok_or_else(|| Error::Decode(format!("label {:?}", g.label)))?;
            Ok((label, decode_operator(&g.operator)?))
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpectrumEntryJson {
    pub n: Vec<u32>,
    pub energy: RationalJson,
}

impl From<&SpectrumRecord> for SpectrumEntryJson {
    fn from(r: &SpectrumRecord) -> Self {
        SpectrumEntryJson {
            n: r.n.clone(),
            energy: (&r.energy).into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct MatrixJson {
    pub ell: String,
    pub max_degree: u32,
    pub basis: Vec<Vec<u32>>,
    /// Nonzero entries only, row-major.
    pub entries: Vec<MatrixEntryJson>,
    pub diagonal: Vec<Vec<LaurentTermJson>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MatrixEntryJson {
    pub row: usize,
    pub col: usize,
    pub value: Vec<LaurentTermJson>,
}

impl From<&ExactMatrix> for MatrixJson {
    fn from(m: &ExactMatrix) -> Self {
        let mut entries = Vec::new();
        for (i, row) in m.entries.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                if !x.is_zero() {
                    entries.push(MatrixEntryJson {
                        row: i,
                        col: j,
                        value: encode_scalar(x),
                    });
                }
            }
        }
        MatrixJson {
            ell: m.ell.to_string(),
            max_degree: m.max_degree,
            basis: m.basis.clone(),
            entries,
            diagonal: m.diagonal().iter().map(encode_scalar).collect(),
        }
    }
}
