//! Plain-text polynomial format: integer coefficients, `^` powers, explicit `*`,
//! e.g. `u^2-2*u+2` or `2*r*t^2-r+1`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::bipoly::BiPoly;
use super::poly::{UniPoly, Var};
use super::ExactError;

pub type Monomial = Vec<(Var, usize)>;

pub(crate) fn format_terms(terms: &[(BigInt, Monomial)]) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (idx, (c, mono)) in terms.iter().enumerate() {
        let factors: Vec<String> = mono
            .iter()
            .filter(|(_, e)| *e > 0)
            .map(|(v, e)| if *e == 1 { v.to_string() } else { format!("{v}^{e}") })
            .collect();
        if c.is_negative() {
            out.push('-');
        } else if idx > 0 {
            out.push('+');
        }
        let a = c.abs();
        if factors.is_empty() {
            out.push_str(&a.to_string());
        } else {
            if !a.is_one() {
                out.push_str(&a.to_string());
                out.push('*');
            }
            out.push_str(&factors.join("*"));
        }
    }
    out
}

/// Parse into a map from exponent vectors to coefficients.
pub fn parse_terms(s: &str) -> Result<BTreeMap<Monomial, BigInt>, ExactError> {
    let bad = |msg: &str| ExactError::Parse(format!("{msg} in {s:?}"));
    let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
    if chars.is_empty() {
        return Err(bad("empty polynomial"));
    }
    let mut pos = 0;
    let mut out: BTreeMap<Monomial, BigInt> = BTreeMap::new();
    let read_int = |pos: &mut usize| -> Option<String> {
        let start = *pos;
        while *pos < chars.len() && chars[*pos].is_ascii_digit() {
            *pos += 1;
        }
        (*pos > start).then(|| chars[start..*pos].iter().collect())
    };
    while pos < chars.len() {
        let mut sign = BigInt::one();
        if chars[pos] == '+' || chars[pos] == '-' {
            if chars[pos] == '-' {
                sign = -sign;
            }
            pos += 1;
        } else if pos > 0 {
            return Err(bad("expected + or -"));
        }
        let mut coeff = sign;
        let mut exps: BTreeMap<Var, usize> = BTreeMap::new();
        let mut first = true;
        loop {
            if !first {
                if pos < chars.len() && chars[pos] == '*' {
                    pos += 1;
                } else {
                    break;
                }
            }
            first = false;
            if pos >= chars.len() {
                return Err(bad("dangling factor"));
            }
            if let Some(n) = read_int(&mut pos) {
                coeff *= n.parse::<BigInt>().map_err(|_| bad("bad integer"))?;
            } else if chars[pos].is_ascii_alphabetic() {
                let name = chars[pos].to_string();
                pos += 1;
                let v = Var::from_name(&name).ok_or_else(|| bad("unknown variable"))?;
                let mut e = 1usize;
                if pos < chars.len() && chars[pos] == '^' {
                    pos += 1;
                    e = read_int(&mut pos)
                        .ok_or_else(|| bad("missing exponent"))?
                        .parse()
                        .map_err(|_| bad("bad exponent"))?;
                }
                *exps.entry(v).or_default() += e;
            } else {
                return Err(bad("unexpected character"));
            }
        }
        let mono: Monomial = exps.into_iter().filter(|(_, e)| *e > 0).collect();
        let entry = out.entry(mono).or_insert_with(BigInt::zero);
        *entry += coeff;
    }
    out.retain(|_, c| !c.is_zero());
    Ok(out)
}

/// Parse a univariate polynomial; `default` labels constants and is required
/// to match the variable when one appears.
pub fn parse_uni(s: &str, default: Var) -> Result<UniPoly, ExactError> {
    let terms = parse_terms(s)?;
    let mut var = None;
    let mut coeffs: Vec<BigInt> = Vec::new();
    for (mono, c) in terms {
        let e = match mono.as_slice() {
            [] => 0,
            [(v, e)] => {
                if var.is_some_and(|w| w != *v) {
                    return Err(ExactError::Parse(format!("more than one variable in {s:?}")));
                }
                var = Some(*v);
                *e
            }
            _ => return Err(ExactError::Parse(format!("more than one variable in {s:?}"))),
        };
        if coeffs.len() <= e {
            coeffs.resize(e + 1, BigInt::zero());
        }
        coeffs[e] += c;
    }
    Ok(UniPoly::new(coeffs, var.unwrap_or(default)))
}

/// Parse a bivariate polynomial in the given variables.
pub fn parse_bi(s: &str, outer: Var, inner: Var) -> Result<BiPoly, ExactError> {
    let terms = parse_terms(s)?;
    let mut acc = BiPoly::zero(outer, inner);
    for (mono, c) in terms {
        let (mut i, mut j) = (0, 0);
        for (v, e) in mono {
            if v == outer {
                i = e;
            } else if v == inner {
                j = e;
            } else {
                return Err(ExactError::Parse(format!("unexpected variable {v} in {s:?}")));
            }
        }
        let mut row = vec![UniPoly::zero(inner); i + 1];
        row[i] = UniPoly::monomial(c, j, inner);
        acc = &acc + &BiPoly::new(outer, inner, row);
    }
    Ok(acc)
}
