//! Plain-text and LaTeX rendering of operators and functions with Laurent
//! coefficients.

use std::fmt::Write;

use num_traits::Zero;

use super::chart::Chart;
use super::func::GaussFunc;
use super::operator::Operator;
use crate::laurent::Laurent;
use crate::scalar::{Field, HalfInt};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Style {
    Text,
    Latex,
}

/// Renders a Laurent coefficient in the given symbol.
pub fn scalar<F: Field>(x: &Laurent<F>, symbol: &str, style: Style) -> String {
    let mut out = String::new();
    if x.is_zero() {
        return "0".into();
    }
    for (i, (k, a)) in x.terms().iter().rev().enumerate() {
        let neg = a.is_negative();
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&laurent_monomial(&a.abs(), *k, symbol, style));
    }
    out
}

/// `|a| · sym^k` for `a > 0`.
fn laurent_monomial<F: Field>(a: &F, k: i32, symbol: &str, style: Style) -> String {
    let r = a.to_rational();
    let (n, d) = (r.numer().to_string(), r.denom().to_string());
    let power = |k: i32| match (k, style) {
        (1, _) => symbol.to_string(),
        (_, Style::Text) => format!("{symbol}^{k}"),
        (_, Style::Latex) => format!("{symbol}^{{{k}}}"),
    };
    match style {
        Style::Text => {
            let num = if d == "1" { n.clone() } else { format!("{n}/{d}") };
            match k {
                0 => num,
                k if k > 0 && a.is_one() => power(k),
                k if k > 0 => format!("{num}{}", power(k)),
                k if d == "1" => format!("{num}/{}", power(-k)),
                k => format!("{n}/({d}{})", power(-k)),
            }
        }
        Style::Latex => {
            let den = |extra: Option<String>| match (d.as_str(), extra) {
                ("1", None) => None,
                ("1", Some(e)) => Some(e),
                (d, None) => Some(d.to_string()),
                (d, Some(e)) => Some(format!("{d}{e}")),
            };
            let (num, den) = match k {
                0 => (n, den(None)),
                k if k > 0 => {
                    if a.is_one() {
                        return power(k);
                    }
                    let num = if d == "1" { format!("{n}{}", power(k)) } else { n };
                    let den = den(None);
                    if d != "1" {
                        return format!("\\frac{{{num}}}{{{}}}{}", den.unwrap(), power(k));
                    }
                    (num, None)
                }
                k => (n, den(Some(power(-k)))),
            };
            match den {
                None => num,
                Some(den) => format!("\\frac{{{num}}}{{{den}}}"),
            }
        }
    }
}

fn exp_factor(mu: HalfInt, style: Style) -> String {
    let r = mu.to_rational();
    let body = match (r.numer().to_string().as_str(), r.denom().to_string().as_str()) {
        ("1", "1") => "s".to_string(),
        ("-1", "1") => "-s".to_string(),
        (n, "1") => format!("{n}s"),
        (n, d) => match style {
            Style::Text => format!("{n}s/{d}"),
            Style::Latex => {
                let (sign, n) = n.strip_prefix('-').map_or(("", n), |n| ("-", n));
                if n == "1" {
                    format!("{sign}\\frac{{s}}{{{d}}}")
                } else {
                    format!("{sign}\\frac{{{n}s}}{{{d}}}")
                }
            }
        },
    };
    format!("e^{{{body}}}")
}

fn var_factor(chart: Chart, slot: usize, e: i32, style: Style) -> String {
    let name = var_symbol(chart, slot, style);
    match (e, style) {
        (1, _) => name,
        (_, Style::Text) => format!("{name}^{e}"),
        (_, Style::Latex) => format!("{name}^{{{e}}}"),
    }
}

fn der_factor(chart: Chart, slot: usize, e: u32, style: Style) -> String {
    let name = var_symbol(chart, slot, style);
    let base = match style {
        Style::Text => format!("∂_{name}"),
        Style::Latex if name.len() == 1 => format!("\\partial_{name}"),
        Style::Latex => format!("\\partial_{{{name}}}"),
    };
    match (e, style) {
        (1, _) => base,
        (_, Style::Text) => format!("{base}^{e}"),
        (_, Style::Latex) => format!("{base}^{{{e}}}"),
    }
}

fn var_symbol(chart: Chart, slot: usize, style: Style) -> String {
    let name = chart.var_name(slot);
    match style {
        Style::Latex if name.len() > 1 => format!("{}_{{{}}}", &name[..1], &name[1..]),
        _ => name,
    }
}

/// Product of the non-coefficient factors, or `None` for the unit monomial.
fn factors(chart: Chart, exp_s: HalfInt, var: &[i32], der: &[u32], style: Style) -> Option<String> {
    let mut parts = Vec::new();
    if exp_s != HalfInt::ZERO {
        parts.push(exp_factor(exp_s, style));
    }
    for (slot, &e) in var.iter().enumerate() {
        if e != 0 {
            parts.push(var_factor(chart, slot, e, style));
        }
    }
    for (slot, &e) in der.iter().enumerate() {
        if e != 0 {
            parts.push(der_factor(chart, slot, e, style));
        }
    }
    if parts.is_empty() {
        None
    } else {
        Some(parts.join(match style {
            Style::Text => "",
            Style::Latex => " ",
        }))
    }
}

/// Writes `± coef·rest` into `out`; multi-term coefficients are
/// parenthesized.
fn push_term<F: Field>(
    out: &mut String,
    first: bool,
    coef: &Laurent<F>,
    rest: Option<String>,
    symbol: &str,
    style: Style,
) {
    let single = coef.len() == 1;
    let neg = single && coef.terms()[0].1.is_negative();
    let body = if single {
        let (k, a) = &coef.terms()[0];
        let mag = laurent_monomial(&a.abs(), *k, symbol, style);
        match rest {
            None => mag,
            Some(r) if *k == 0 && a.abs().is_one() => r,
            Some(r) => format!("{mag} {r}"),
        }
    } else {
        let (open, close) = match style {
            Style::Text => ("(", ")"),
            Style::Latex => ("\\left(", "\\right)"),
        };
        let inner = scalar(coef, symbol, style);
        match rest {
            None => inner,
            Some(r) => format!("{open}{inner}{close} {r}"),
        }
    };
    if first {
        if neg {
            out.push('-');
        }
    } else {
        out.push_str(if neg { " - " } else { " + " });
    }
    out.push_str(&body);
}

/// Renders an operator. `symbol` names the central-charge variable; pass
/// `"m"` together with coefficients already rescaled for the mass form.
pub fn operator<F: Field>(op: &Operator<Laurent<F>>, symbol: &str, style: Style) -> String {
    if op.is_zero() {
        return "0".into();
    }
    let chart = op.chart();
    let mut out = String::new();
    // Derivatives first, highest order leading, constants last.
    let mut terms: Vec<_> = op.terms().iter().collect();
    terms.sort_by(|(a, _), (b, _)| {
        b.order()
            .cmp(&a.order())
            .then_with(|| b.der.cmp(&a.der))
            .then_with(|| a.exp_s.cmp(&b.exp_s))
            .then_with(|| b.var.cmp(&a.var))
    });
    for (i, (m, coef)) in terms.into_iter().enumerate() {
        let rest = factors(chart, m.exp_s, &m.var, &m.der, style);
        push_term(&mut out, i == 0, coef, rest, symbol, style);
    }
    out
}

/// Renders a function as `(Σ terms) · exp(κ x_1²)`.
pub fn function<F: Field>(f: &GaussFunc<Laurent<F>>, symbol: &str, style: Style) -> String {
    let chart = f.chart();
    let mut body = String::new();
    if f.is_zero() {
        body.push('0');
    }
    for (i, (m, coef)) in f.terms().iter().rev().enumerate() {
        let rest = factors(chart, m.exp_s, &m.var, &vec![0; chart.slots()], style);
        push_term(&mut body, i == 0, coef, rest, symbol, style);
    }
    if f.kappa().is_zero() {
        return body;
    }
    let x1 = var_symbol(chart, 1, style);
    let mut out = String::new();
    let kappa = scalar(f.kappa(), symbol, Style::Latex);
    match style {
        Style::Text => {
            let _ = write!(
                out,
                "({body}) exp(({}) {x1}^2)",
                scalar(f.kappa(), symbol, Style::Text)
            );
        }
        Style::Latex => {
            let _ = write!(out, "\\left({body}\\right) e^{{{kappa} {x1}^{{2}}}}");
        }
    }
    out
}

/// Default display of operators: text, symbol `c`.
pub fn describe<F: Field>(op: &Operator<Laurent<F>>) -> String {
    operator(op, "c", Style::Text)
}
