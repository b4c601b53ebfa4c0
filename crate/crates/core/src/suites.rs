//! Regression suites shared by the `verify` command and the acceptance run.
//! Each line is named by the statement it checks.

use serde::Serialize;

use crate::exactalg::ExactError;
use crate::knotprops::{classify, two_bridge_params, KnotClass};
use crate::newton::{binom_check, check_shifted_polygon, complexabs_check, ShiftVariant};
use crate::polyseq::identity_suite;
use crate::riley::{ideal_generator_check, riley_poly_j, riley_poly_matrix, riley_poly_pq, trace_formula_check};

#[derive(Clone, Debug, Serialize)]
pub struct CheckLine {
    pub suite: &'static str,
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl CheckLine {
    fn new(suite: &'static str, name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Self {
        CheckLine { suite, name: name.into(), pass, detail: detail.into() }
    }
}

pub fn all_pass(lines: &[CheckLine]) -> bool {
    lines.iter().all(|l| l.pass)
}

pub fn identities(range: i64) -> Vec<CheckLine> {
    identity_suite(range)
        .results
        .into_iter()
        .map(|r| {
            let detail = match r.first_counterexample {
                Some(i) => format!("fails at index {i}"),
                None => format!("{} indices", r.checked),
            };
            CheckLine::new("identities", r.name, r.pass, detail)
        })
        .collect()
}

/// Hull of the shifted polynomial for α = 1 at p ∈ {2,3,5} (n ≤ nmax), for
/// α = i and α = −2+√3 at 3 (n ∈ {3,6,..} ≤ nmax), binomial valuations for
/// multiples of 2 and 3 up to `binom_max`, and the modulus ratio on the
/// roots of G_n for 1 ≤ |n| ≤ 10.
pub fn newton(nmax: u64, binom_max: u64) -> Result<Vec<CheckLine>, ExactError> {
    let mut out = Vec::new();
    let mut polygons = |name: String, variant: ShiftVariant| -> Result<(), ExactError> {
        let c = check_shifted_polygon(variant)?;
        let detail = if c.pass { format!("{} vertices", c.computed.len()) } else { format!("got {:?}", c.computed) };
        out.push(CheckLine::new("newton", name, c.pass, detail));
        Ok(())
    };
    for p in [2u64, 3, 5] {
        for n in 1..=nmax {
            polygons(format!("hull vertices, shift 1, p={p}, n={n}"), ShiftVariant::One { n, p })?;
        }
    }
    for n in (3..=nmax).step_by(3) {
        polygons(format!("hull vertices, shift i in Z[i], p=3, n={n}"), ShiftVariant::I { n })?;
        polygons(format!("hull vertices, shift -2+sqrt3 in Z[sqrt3], p=3, n={n}"), ShiftVariant::Alpha { n })?;
    }
    for p in [2u64, 3] {
        for n in (p..=binom_max).step_by(p as usize) {
            let b = binom_check(n, p)?;
            let detail = if b.beyond_e_exceptions.is_empty() {
                format!("e={}", b.e)
            } else {
                format!("e={}; j>e values (j, v): {:?}", b.e, b.beyond_e_exceptions)
            };
            out.push(CheckLine::new(
                "newton",
                format!("binomial valuations, p={p}, n={n}"),
                b.equality_holds && b.strict_bound_holds,
                detail,
            ));
        }
    }
    for e in complexabs_check((-10..=10).filter(|&n| n != 0))? {
        let detail = if e.vacuous {
            "G(n) constant".to_string()
        } else {
            format!("{} roots, ratio in [{:.6}, {:.6}]", e.roots, e.min_modulus.unwrap(), e.max_modulus.unwrap())
        };
        out.push(CheckLine::new("newton", format!("|g(n+1)/g(n)| vs 1 on roots of G(n), n={}", e.n), e.pass, detail));
    }
    Ok(out)
}

pub fn trace_formula(kmax: i64, samples: usize, seed: u64) -> Vec<CheckLine> {
    (-kmax..=kmax)
        .map(|k| {
            let c = trace_formula_check(k, samples, seed);
            let detail = match &c.first_failure {
                Some((lam, r)) => format!("fails at lambda={lam}, r={r}"),
                None => format!("{samples} samples"),
            };
            CheckLine::new("riley", format!("trace of W_k closed form, k={k}"), c.pass, detail)
        })
        .collect()
}

/// Closed-form Riley polynomial against the matrix route and, when J(k,2n)
/// is a hyperbolic or torus knot, against the Schubert normal form.
pub fn riley_polys(kmax: i64, nmax: i64) -> Vec<CheckLine> {
    let mut out = Vec::new();
    for k in (-kmax..=kmax).filter(|k| k.abs() >= 2) {
        for n in (-nmax..=nmax).filter(|&n| n != 0) {
            let j = riley_poly_j(k, n);
            let (pass, detail) = match riley_poly_matrix(k, n) {
                Ok(m) => (j.eq_up_to_unit(&m), String::new()),
                Err(e) => (false, e.to_string()),
            };
            out.push(CheckLine::new("riley", format!("closed form = matrix route, k={k}, n={n}"), pass, detail));
            let l = 2 * n;
            if matches!(classify(k, l), KnotClass::NotAKnot | KnotClass::Unknot) {
                continue;
            }
            let (pass, detail) = match two_bridge_params(k, l) {
                Ok(tb) => match riley_poly_pq(tb.p, tb.q) {
                    Ok(s) => (j.eq_up_to_unit(&s), format!("(p,q)=({},{})", tb.p, tb.q)),
                    Err(e) => (false, e.to_string()),
                },
                Err(e) => (false, e.to_string()),
            };
            out.push(CheckLine::new("riley", format!("closed form = Schubert form, k={k}, n={n}"), pass, detail));
        }
    }
    out
}

pub fn ideal_generator(kmax: i64, nmax: i64, samples: usize, seed: u64) -> Vec<CheckLine> {
    let mut out = Vec::new();
    for k in -kmax..=kmax {
        for n in (-nmax..=nmax).filter(|&n| n != 0) {
            let c = ideal_generator_check(k, n, samples, seed);
            let detail = match (&c.first_failure, c.vacuous) {
                (Some((lam, _)), _) => format!("fails at lambda={lam}"),
                (None, true) => "some samples constant (no nonabelian characters)".to_string(),
                (None, false) => format!("{samples} samples"),
            };
            out.push(CheckLine::new("riley", format!("relation entries generate the Riley ideal, k={k}, n={n}"), c.pass, detail));
        }
    }
    out
}

pub fn riley(kmax: i64, nmax: i64, seed: u64) -> Vec<CheckLine> {
    let mut out = trace_formula(kmax, 50, seed);
    out.extend(riley_polys(kmax, nmax));
    out.extend(ideal_generator(kmax.min(4), nmax.min(2), 10, seed));
    out
}
