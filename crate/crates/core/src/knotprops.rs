//! Classical invariants of the knots J(k,l): classification, two-bridge normal
//! form, 4-plat sequences, Alexander polynomial and fiberedness, trace-field
//! polynomials, and witnesses of nonintegral reducible characters.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::exactalg::roots::factor_integer;
use crate::exactalg::{irreducibility_analysis, ExactError, Irreducibility, UniPoly, Var};
use crate::models::{c_model, orient_kl, ModelError};
use crate::newton::{has_nonintegral_root, val_rat, Val};
use crate::polyseq::{f_poly, phi, psi};
use crate::serial::{rat, rat_to_string};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum KnotError {
    #[error("J({k},{l}) is a two-component link, not a knot")]
    NotAKnot { k: i64, l: i64 },
    #[error("unknot has no normal form")]
    Unknot,
    #[error("J({k},{l}) is not covered by the 4-plat table")]
    NotCoveredByTable { k: i64, l: i64 },
    #[error("J({k},{l}) is not hyperbolic ({class:?})")]
    NotHyperbolic { k: i64, l: i64, class: KnotClass },
    #[error("parameters too large: {0}")]
    Overflow(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Model(#[from] ModelError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum KnotClass {
    Unknot,
    Trefoil,
    TorusNonHyperbolic,
    Hyperbolic,
    NotAKnot,
}

/// (k, l) with l even; `swapped` records the exchange.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct KnotId {
    pub k: i64,
    pub l: i64,
    pub swapped: bool,
}

pub fn knot_id(k: i64, l: i64) -> Result<KnotId, KnotError> {
    let (k2, l2, swapped) = orient_kl(k, l).map_err(|_| KnotError::NotAKnot { k, l })?;
    Ok(KnotId { k: k2, l: l2, swapped })
}

pub fn classify(k: i64, l: i64) -> KnotClass {
    if (k * l) % 2 != 0 {
        KnotClass::NotAKnot
    } else if k * l == 0 || k * l == 2 {
        // p = |1 - kl| = 1
        KnotClass::Unknot
    } else if k.abs() == 2 && k == l {
        KnotClass::Trefoil
    } else if k.abs() == 1 || l.abs() == 1 {
        KnotClass::TorusNonHyperbolic
    } else {
        KnotClass::Hyperbolic
    }
}

// ---------------------------------------------------------------------------
// Two-bridge normal form

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwoBridgeForm {
    pub p: i64,
    pub q: i64,
    pub cont_frac: Vec<i64>,
}

/// The odd representative of q mod p in (−p, p], p odd.
pub fn odd_representative(q: i64, p: i64) -> i64 {
    let r = q.rem_euclid(p);
    if r == 0 {
        return p;
    }
    if r % 2 != 0 {
        r
    } else {
        r - p
    }
}

/// Continued fraction [a1,...,as] with all ai ≥ 1 and s odd for
/// num/den ∈ (0, 1].
pub fn odd_cont_frac(num: i64, den: i64) -> Vec<i64> {
    let (mut a, mut b) = (den, num);
    let mut out = Vec::new();
    while b != 0 {
        out.push(a.div_euclid(b));
        let r = a.rem_euclid(b);
        a = b;
        b = r;
    }
    if out.len() % 2 == 0 {
        let last = out.pop().unwrap();
        out.push(last - 1);
        out.push(1);
    }
    out
}

/// Value of 1/(a1 + 1/(a2 + ... + 1/as)).
pub fn cont_frac_value(seq: &[i64]) -> BigRational {
    let mut acc: Option<BigRational> = None;
    for &a in seq.iter().rev() {
        let a = BigRational::from_integer(a.into());
        acc = Some(match acc {
            None => a,
            Some(x) => a + x.recip(),
        });
    }
    acc.map_or_else(BigRational::zero, |x| x.recip())
}

/// (p, q mod p) read off a 4-plat sequence.
pub fn pq_of_sequence(seq: &[i64]) -> Option<(i64, i64)> {
    let v = cont_frac_value(seq);
    let p = v.denom().to_i64()?;
    let q = v.numer().to_i64()?;
    Some((p, odd_representative(q, p)))
}

pub fn two_bridge_params(k: i64, l: i64) -> Result<TwoBridgeForm, KnotError> {
    if (k * l) % 2 != 0 {
        return Err(KnotError::NotAKnot { k, l });
    }
    if k * l == 0 {
        return Err(KnotError::Unknot);
    }
    let kl = k.checked_mul(l).ok_or_else(|| KnotError::Overflow(format!("{k}*{l}")))?;
    let d = 1 - kl;
    let p = d.abs();
    // q/p ≡ l/(1 − kl) in Q/Z
    let q = odd_representative(if d > 0 { l } else { -l }, p);
    let num = if q > 0 { q } else { q + p };
    Ok(TwoBridgeForm { p, q, cont_frac: odd_cont_frac(num, p) })
}

/// qq' ≡ 1 (mod p) for the forms of J(k,l) and J(l,k).
pub fn swap_check(k: i64, l: i64) -> Result<bool, KnotError> {
    let a = two_bridge_params(k, l)?;
    let b = two_bridge_params(l, k)?;
    Ok(a.p == b.p && (a.q * b.q - 1).rem_euclid(a.p) == 0)
}

/// For k = l: q^2 ≡ 1 (mod p).
pub fn self_inverse_check(l: i64) -> Result<bool, KnotError> {
    let f = two_bridge_params(l, l)?;
    Ok((f.q * f.q - 1).rem_euclid(f.p) == 0)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FourPlat {
    pub sequence: Vec<i64>,
    pub p: i64,
    pub q: i64,
    /// "q" when the sequence gives the same q, "inverse" when it gives q^{-1} mod p.
    pub matches: &'static str,
}

pub fn fourplat_sequence(k: i64, l: i64) -> Result<FourPlat, KnotError> {
    let sequence = if k > 2 && l > 2 {
        vec![1, k - 2, 1, l - 2, 1]
    } else if k > 1 && l < 0 {
        vec![1, k - 1, -l]
    } else if k < 0 && l > 1 {
        vec![-k, l - 1, 1]
    } else if k < -1 && l < -1 {
        vec![-k - 1, 1, -l - 1]
    } else {
        return Err(KnotError::NotCoveredByTable { k, l });
    };
    let form = two_bridge_params(k, l)?;
    let (p, q) = pq_of_sequence(&sequence).ok_or_else(|| KnotError::Overflow(format!("{sequence:?}")))?;
    if p != form.p {
        return Err(KnotError::Invariant(format!("4-plat {sequence:?} gives p = {p}, expected {}", form.p)));
    }
    let matches = if (q - form.q).rem_euclid(p) == 0 {
        "q"
    } else if (q * form.q - 1).rem_euclid(p) == 0 {
        "inverse"
    } else {
        return Err(KnotError::Invariant(format!("4-plat {sequence:?} gives q = {q}, expected {} or its inverse", form.q)));
    };
    Ok(FourPlat { sequence, p, q, matches })
}

// ---------------------------------------------------------------------------
// Alexander polynomial and fiberedness

fn alternating_middle(c: i64, top: i64) -> Vec<i64> {
    // c(−t^{top} + t^{top−1} − ... − t), top odd
    (1..=top).map(|i| if i % 2 == 1 { -c } else { c }).collect()
}

/// Alexander polynomial of J(k,l) with lowest exponent 0, in the sign given
/// by the three closed forms (l made even first).
pub fn alexander(k: i64, l: i64) -> Result<UniPoly, KnotError> {
    let id = knot_id(k, l)?;
    let (k, n) = (id.k, id.l / 2);
    if k == 0 || n == 0 {
        return Ok(UniPoly::one(Var::T));
    }
    let coeffs: Vec<i64> = if k % 2 == 0 {
        let m = k / 2;
        vec![n * m, 1 - 2 * n * m, n * m]
    } else {
        let m = k.div_euclid(2);
        let (end, top) = if n > 0 { (m, 2 * n - 1) } else { (m + 1, -2 * n - 1) };
        let mut v = vec![end];
        v.extend(alternating_middle(1 + 2 * m, top));
        v.push(end);
        v
    };
    let mut v: Vec<BigInt> = coeffs.into_iter().map(BigInt::from).collect();
    let lead_zeros = v.iter().take_while(|c| c.is_zero()).count();
    v.drain(..lead_zeros);
    Ok(UniPoly::new(v, Var::T))
}

/// Alexander polynomial scaled so that Δ(1) = 1.
pub fn alexander_normalized(k: i64, l: i64) -> Result<UniPoly, KnotError> {
    let a = alexander(k, l)?;
    Ok(if a.eval_i64(1).is_negative() { -a } else { a })
}

pub fn is_fibered(k: i64, l: i64) -> Result<bool, KnotError> {
    if k * l == 0 {
        return Ok(true);
    }
    let a = alexander(k, l)?;
    let unit = |c: &BigInt| c.abs().is_one();
    Ok(unit(a.lead().unwrap()) && unit(&a.coeff(0)))
}

/// The fibered J(k,l) listed explicitly (l even after orientation).
pub fn fibered_by_list(k: i64, l: i64) -> Result<bool, KnotError> {
    let id = knot_id(k, l)?;
    let (k, l) = (id.k, id.l);
    Ok(k == 0
        || l == 0
        || (k.abs() == 2 && l.abs() == 2)
        || (k == 3 && l > 0)
        || (k == -3 && l < 0)
        || k.abs() == 1)
}

// ---------------------------------------------------------------------------
// Trace field

/// The polynomial in r whose root generates the trace field: C(k,l) at y = 2,
/// or for k = l and `canonical`, the diagonal component with r − 2 removed.
pub fn trace_field_poly(k: i64, l: i64, canonical: bool) -> Result<UniPoly, KnotError> {
    let id = knot_id(k, l)?;
    let (k, l) = (id.k, id.l);
    if k * l == 0 {
        return Err(KnotError::Unknot);
    }
    let p = if canonical && k == l {
        // r − 2 − Φ_{−k}Ψ_k(2 − r) = (r − 2)(1 + Φ_{−k}Ψ_k)
        &(&phi(-k) * &psi(k)) + &UniPoly::one(Var::R)
    } else {
        c_model(k, l)?.equation.eval_outer(&BigInt::from(2)).with_var(Var::R)
    };
    Ok(p.primitive_part())
}

pub fn trace_field_degree_formula(k: i64, l: i64, canonical: bool) -> i64 {
    let kl = k * l;
    if canonical && k == l {
        l.abs() - 1
    } else if kl < 0 {
        -kl / 2
    } else {
        kl / 2 - 1
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TraceFieldReport {
    pub k: i64,
    pub l: i64,
    pub bound: i64,
    #[serde(with = "crate::serial::display")]
    pub poly: UniPoly,
    pub degree: usize,
    pub squarefree: bool,
    pub irreducibility: Irreducibility,
    /// Data relevant to whether the bound is attained; reported, never asserted.
    pub observation: String,
}

pub const TRACE_FIELD_PRIME_BUDGET: usize = 30;

pub fn trace_field_report(k: i64, l: i64) -> Result<TraceFieldReport, KnotError> {
    let class = classify(k, l);
    if class != KnotClass::Hyperbolic {
        return Err(KnotError::NotHyperbolic { k, l, class });
    }
    let id = knot_id(k, l)?;
    let (k, l) = (id.k, id.l);
    let poly = trace_field_poly(k, l, true)?;
    let degree = poly.degree().unwrap_or(0);
    let bound = trace_field_degree_formula(k, l, true);
    if degree as i64 != bound {
        return Err(KnotError::Invariant(format!("trace-field polynomial of J({k},{l}) has degree {degree}, expected {bound}")));
    }
    let squarefree = poly.is_separable();
    let target = if squarefree { poly.clone() } else { poly.squarefree_part() };
    let irreducibility = irreducibility_analysis(&target, TRACE_FIELD_PRIME_BUDGET)?;
    let observation = match &irreducibility {
        Irreducibility::Irreducible { .. } => format!("polynomial irreducible of degree {degree} = bound"),
        Irreducibility::Reducible { rational_root } => {
            format!("polynomial has the rational root {}", rat_to_string(rational_root))
        }
        Irreducibility::Inconclusive { possible_factor_degrees, .. } => {
            format!("inconclusive; possible factor degrees {possible_factor_degrees:?}")
        }
    };
    Ok(TraceFieldReport { k, l, bound, poly, degree, squarefree, irreducibility, observation })
}

// ---------------------------------------------------------------------------
// Nonintegral reducible characters

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// k odd: the values y at r = 2 are the roots of `poly`, one of which is
    /// not p-integral (a Newton-polygon segment of positive slope at p).
    OddK {
        #[serde(with = "crate::serial::display")]
        poly: UniPoly,
        leading: String,
        constant: String,
        prime: u64,
        #[serde(with = "rat")]
        slope: BigRational,
    },
    /// k even: the point (2, y0) with v_p(y0 − 2) < 0.
    EvenK {
        #[serde(with = "rat")]
        y0: BigRational,
        prime: u64,
        valuation: Val,
    },
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum CommensurabilityCertificate {
    Fibered,
    NotCommensurable { witness: Witness, reverified: bool },
}

fn smallest_prime_factor(n: &BigInt) -> Result<u64, KnotError> {
    let fac = factor_integer(n)?;
    fac.first()
        .and_then(|(p, _)| p.to_u64())
        .ok_or_else(|| KnotError::Invariant(format!("{n} has no prime factor")))
}

/// m f_{n+1} − k f_n + (m+1) f_{n−1}, k = 2m + 1.
pub fn reducible_poly_odd(k: i64, n: i64) -> UniPoly {
    let m = k.div_euclid(2);
    let a = f_poly(n + 1).scale_i64(m);
    let b = f_poly(n).scale_i64(k);
    let c = f_poly(n - 1).scale_i64(m + 1);
    (&(&a - &b) + &c).with_var(Var::Y)
}

pub fn commensurability_certificate(k: i64, l: i64) -> Result<CommensurabilityCertificate, KnotError> {
    let class = classify(k, l);
    if class != KnotClass::Hyperbolic {
        return Err(KnotError::NotHyperbolic { k, l, class });
    }
    if is_fibered(k, l)? {
        return Ok(CommensurabilityCertificate::Fibered);
    }
    let id = knot_id(k, l)?;
    let (k, l) = (id.k, id.l);
    let n = l / 2;
    let c_at_2 = c_model(k, l)?.equation.eval_inner(&BigInt::from(2));
    if k % 2 != 0 {
        let poly = reducible_poly_odd(k, n);
        let lead = poly.lead().unwrap().clone();
        let cst = poly.coeff(0);
        if !lead.gcd(&cst).is_one() {
            return Err(KnotError::Invariant(format!("leading {lead} and constant {cst} not coprime")));
        }
        let prime = smallest_prime_factor(&lead)?;
        let slope = has_nonintegral_root(&poly, prime)?
            .ok_or_else(|| KnotError::Invariant(format!("no positive slope at {prime} for {poly}")))?;
        // C(2, y) must be this polynomial up to a unit.
        let reverified = c_at_2.primitive_part() == poly.primitive_part() || c_at_2.primitive_part() == (-&poly).primitive_part();
        Ok(CommensurabilityCertificate::NotCommensurable {
            witness: Witness::OddK { poly, leading: lead.to_string(), constant: cst.to_string(), prime, slope },
            reverified,
        })
    } else {
        let m = k / 2;
        let mn = BigInt::from(m * n);
        let y0 = BigRational::from_integer(2.into()) - BigRational::new(BigInt::one(), mn.clone());
        let prime = smallest_prime_factor(&mn)?;
        let valuation = val_rat(&(&y0 - BigRational::from_integer(2.into())), prime)?;
        let on_curve = c_at_2.eval_rat(&y0).is_zero();
        let negative = matches!(&valuation, Val::Finite(v) if v.is_negative());
        Ok(CommensurabilityCertificate::NotCommensurable {
            witness: Witness::EvenK { y0, prime, valuation },
            reverified: on_curve && negative,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(c: &[i64]) -> UniPoly {
        UniPoly::from_i64s(c, Var::T)
    }

    #[test]
    fn classification() {
        assert_eq!(classify(2, -2), KnotClass::Hyperbolic);
        assert_eq!(classify(2, 2), KnotClass::Trefoil);
        assert_eq!(classify(-2, -2), KnotClass::Trefoil);
        assert_eq!(classify(3, 3), KnotClass::NotAKnot);
        assert_eq!(classify(0, 5), KnotClass::Unknot);
        assert_eq!(classify(1, 2), KnotClass::Unknot);
        assert_eq!(classify(1, 4), KnotClass::TorusNonHyperbolic);
        assert_eq!(classify(-2, 2), KnotClass::Hyperbolic);
    }

    #[test]
    fn two_bridge_examples() {
        let f = two_bridge_params(2, -2).unwrap();
        assert_eq!((f.p, f.q, f.cont_frac.clone()), (5, 3, vec![1, 1, 2]));
        let f = two_bridge_params(2, 2).unwrap();
        assert_eq!((f.p, f.q), (3, 1));
        assert!(swap_check(4, 6).unwrap());
        assert_eq!(two_bridge_params(0, 4), Err(KnotError::Unknot));
    }

    #[test]
    fn cont_frac_reconstructs() {
        for k in -9i64..=9 {
            for l in [-8i64, -6, -4, -2, 2, 4, 6, 8] {
                if k * l == 0 {
                    continue;
                }
                let f = two_bridge_params(k, l).unwrap();
                assert_eq!(f.p, (1 - k * l).abs());
                assert_eq!(f.p % 2, 1);
                assert_eq!(f.cont_frac.len() % 2, 1);
                assert!(f.cont_frac.iter().all(|&a| a >= 1));
                assert_eq!(pq_of_sequence(&f.cont_frac), Some((f.p, f.q)));
                if k != l && k % 2 == 0 {
                    let g = two_bridge_params(l, k).unwrap();
                    let mut rev = f.cont_frac.clone();
                    rev.reverse();
                    assert_eq!(g.cont_frac, rev, "J({k},{l})");
                    assert!(swap_check(k, l).unwrap());
                }
            }
        }
        for l in [-10i64, -8, -6, -4, 4, 6, 8, 10] {
            assert!(self_inverse_check(l).unwrap());
        }
    }

    #[test]
    fn fourplat_examples() {
        assert_eq!(fourplat_sequence(3, 4).unwrap().sequence, vec![1, 1, 1, 2, 1]);
        assert_eq!(fourplat_sequence(3, -4).unwrap().sequence, vec![1, 2, 4]);
        assert_eq!(fourplat_sequence(-4, -6).unwrap().sequence, vec![3, 1, 5]);
        assert!(matches!(fourplat_sequence(1, 4), Err(KnotError::NotCoveredByTable { .. })));
        for k in -8i64..=8 {
            for l in -8i64..=8 {
                if (k * l) % 2 != 0 || k * l == 0 {
                    continue;
                }
                match fourplat_sequence(k, l) {
                    Ok(_) | Err(KnotError::NotCoveredByTable { .. }) => {}
                    Err(e) => panic!("J({k},{l}): {e}"),
                }
            }
        }
    }

    #[test]
    fn alexander_examples() {
        assert_eq!(alexander(2, -2).unwrap(), t(&[-1, 3, -1]));
        assert_eq!(alexander(3, 4).unwrap(), t(&[1, -3, 3, -3, 1]));
        assert_eq!(alexander(2, 2).unwrap(), t(&[1, -1, 1]));
        assert_eq!(alexander(3, -4).unwrap(), t(&[2, -3, 3, -3, 2]));
        for k in [-6i64, -4, -2, 2, 4, 6] {
            for l in [-6i64, -4, -2, 2, 4, 6] {
                assert_eq!(alexander_normalized(k, l).unwrap(), alexander_normalized(l, k).unwrap());
            }
        }
        for k in -7i64..=7 {
            for l in [-6i64, -4, -2, 2, 4, 6] {
                let a = alexander_normalized(k, l).unwrap();
                assert_eq!(a.eval_i64(1), BigInt::one());
                // symmetric up to the unit
                let mut c = a.coeffs().to_vec();
                c.reverse();
                assert_eq!(UniPoly::new(c, Var::T), a);
            }
        }
    }

    #[test]
    fn fibered_matches_list() {
        assert!(is_fibered(2, -2).unwrap());
        assert!(!is_fibered(2, 4).unwrap());
        assert!(is_fibered(3, 6).unwrap());
        for k in -9i64..=9 {
            for l in -8i64..=8 {
                if (k * l) % 2 != 0 {
                    continue;
                }
                assert_eq!(is_fibered(k, l).unwrap(), fibered_by_list(k, l).unwrap(), "J({k},{l})");
            }
        }
    }

    #[test]
    fn trace_field_examples() {
        assert_eq!(trace_field_poly(2, -2, false).unwrap().degree(), Some(2));
        assert_eq!(trace_field_poly(4, 6, false).unwrap().degree(), Some(11));
        assert_eq!(trace_field_poly(4, 4, true).unwrap().degree(), Some(3));
        let r = trace_field_report(2, -2).unwrap();
        assert_eq!((r.bound, r.degree), (2, 2));
        assert!(r.irreducibility.is_irreducible());
        assert_eq!(trace_field_report(2, 6).unwrap().bound, 5);
        assert_eq!(trace_field_report(4, 4).unwrap().bound, 3);
        for k in -8i64..=8 {
            for l in [-8i64, -6, -4, -2, 2, 4, 6, 8] {
                if k == 0 {
                    continue;
                }
                for canonical in [false, true] {
                    let p = trace_field_poly(k, l, canonical).unwrap();
                    assert_eq!(p.degree().unwrap() as i64, trace_field_degree_formula(k, l, canonical), "J({k},{l})");
                }
            }
        }
    }

    #[test]
    fn commensurability_examples() {
        match commensurability_certificate(2, 4).unwrap() {
            CommensurabilityCertificate::NotCommensurable { witness: Witness::EvenK { y0, prime, .. }, reverified } => {
                assert_eq!(y0, BigRational::new(3.into(), 2.into()));
                assert_eq!(prime, 2);
                assert!(reverified);
            }
            other => panic!("{other:?}"),
        }
        match commensurability_certificate(3, -4).unwrap() {
            CommensurabilityCertificate::NotCommensurable { witness: Witness::OddK { leading, constant, prime, .. }, reverified } => {
                assert_eq!(leading.trim_start_matches('-'), "2");
                assert_eq!(constant.trim_start_matches('-'), "1");
                assert_eq!(prime, 2);
                assert!(reverified);
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(commensurability_certificate(2, -2).unwrap(), CommensurabilityCertificate::Fibered));
        assert!(matches!(commensurability_certificate(1, 4), Err(KnotError::NotHyperbolic { .. })));
    }

    #[test]
    fn every_certificate_reverifies() {
        for k in -9i64..=9 {
            for l in [-8i64, -6, -4, -2, 2, 4, 6, 8] {
                if classify(k, l) != KnotClass::Hyperbolic {
                    continue;
                }
                match commensurability_certificate(k, l).unwrap() {
                    CommensurabilityCertificate::Fibered => assert!(fibered_by_list(k, l).unwrap()),
                    CommensurabilityCertificate::NotCommensurable { reverified, .. } => assert!(reverified, "J({k},{l})"),
                }
            }
        }
    }
}
