//! Smoothness certificates for D(k,l) and D1(l,l), component counts, genera
//! of the Y and X models, and the odd-valuation point counts used for the
//! double cover X -> Y.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::exactalg::{BiPoly, ExactError, QPoly, UniPoly, Var};
use crate::models::{d_model, d_split, format_point, orient_kl, CurveModel, ModelError, ModelState};
use crate::polyseq::{delta, f_poly, g_poly};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeometryError {
    #[error("non-reduced input: {0}")]
    NonReduced(String),
    #[error("constant input has no singular locus")]
    Constant,
    #[error("degenerate case J({k},{l}): {reason}")]
    Degenerate { k: i64, l: i64, reason: String },
    #[error("{0} is not certified smooth")]
    NotSmooth(String),
    #[error("not separable: {0}")]
    NotSeparable(String),
    #[error("routes disagree: {0}")]
    Mismatch(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

#[derive(Clone, Debug, Serialize)]
pub struct TraceStep {
    pub step: String,
    pub degree: Option<usize>,
}

fn step(s: impl Into<String>, p: &UniPoly) -> TraceStep {
    TraceStep { step: s.into(), degree: p.degree() }
}

// ---------------------------------------------------------------------------
// Arithmetic in K[y] with K = Q[x]/(m), m squarefree. Leading coefficients
// that are zero divisors split m, so each gcd returns a list of branches.

type KPoly = Vec<QPoly>;

fn k_trim(mut v: KPoly) -> KPoly {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

fn k_reduce(p: &[QPoly], m: &QPoly) -> KPoly {
    k_trim(p.iter().map(|c| c.rem(m)).collect())
}

enum Inv {
    Unit(QPoly),
    Split(QPoly, QPoly),
}

fn k_invert(c: &QPoly, m: &QPoly) -> Inv {
    let h = c.gcd(m);
    if h.degree() == Some(0) {
        Inv::Unit(c.inverse_mod(m).expect("coprime to the modulus"))
    } else {
        Inv::Split(h.clone(), m.divrem(&h).0.monic())
    }
}

fn k_rem(a: &KPoly, b: &KPoly, inv_lc: &QPoly, m: &QPoly) -> KPoly {
    let mut r = a.clone();
    let db = b.len() - 1;
    while r.len() > db {
        let top = r.len() - 1;
        let c = r[top].mul(inv_lc).rem(m);
        let shift = top - db;
        for (i, bi) in b.iter().enumerate() {
            r[shift + i] = r[shift + i].sub(&c.mul(bi)).rem(m);
        }
        r = k_trim(r);
    }
    r
}

fn k_monic(m: &QPoly, a: KPoly) -> Vec<(QPoly, KPoly)> {
    let Some(lc) = a.last() else {
        return vec![(m.clone(), a)];
    };
    match k_invert(lc, m) {
        Inv::Unit(inv) => {
            let out = a.iter().map(|c| c.mul(&inv).rem(m)).collect();
            vec![(m.clone(), out)]
        }
        Inv::Split(h1, h2) => {
            let mut out = k_monic(&h1, k_reduce(&a, &h1));
            out.extend(k_monic(&h2, k_reduce(&a, &h2)));
            out
        }
    }
}

fn k_gcd(m: &QPoly, a: &[QPoly], b: &[QPoly]) -> Vec<(QPoly, KPoly)> {
    let mut a = k_reduce(a, m);
    let mut b = k_reduce(b, m);
    loop {
        if b.is_empty() {
            return k_monic(m, a);
        }
        if a.len() < b.len() {
            std::mem::swap(&mut a, &mut b);
            continue;
        }
        match k_invert(b.last().unwrap(), m) {
            Inv::Unit(inv) => {
                let r = k_rem(&a, &b, &inv, m);
                a = b;
                b = r;
            }
            Inv::Split(h1, h2) => {
                let mut out = k_gcd(&h1, &a, &b);
                out.extend(k_gcd(&h2, &a, &b));
                return out;
            }
        }
    }
}

fn kpoly_of(f: &BiPoly, y: Var) -> KPoly {
    f.oriented(y).coeffs().iter().map(QPoly::from_uni).collect()
}

fn kpoly_const(p: &UniPoly) -> KPoly {
    p.coeffs().iter().map(|c| QPoly::constant(BigRational::from_integer(c.clone()))).collect()
}

fn kpoly_to_bipoly(g: &KPoly, x: Var, y: Var) -> BiPoly {
    let mut l = BigInt::one();
    for c in g {
        for a in &c.coeffs {
            l = l.lcm(a.denom());
        }
    }
    let lr = BigRational::from_integer(l);
    let rows = g
        .iter()
        .map(|c| UniPoly::new(c.coeffs.iter().map(|a| (a * &lr).to_integer()).collect(), x))
        .collect();
    BiPoly::new(y, x, rows).oriented(x)
}

/// Number of distinct roots over Q̄ of a monic g in K[y], summed over the
/// roots of m.
fn k_distinct_count(m: &QPoly, g: &KPoly) -> usize {
    if g.len() < 2 {
        return 0;
    }
    let dg: KPoly = g
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c.scale(&BigRational::from_integer(BigInt::from(i))))
        .collect();
    let dm = g.len() - 1;
    k_gcd(m, g, &dg)
        .into_iter()
        .map(|(mi, h)| mi.degree().unwrap_or(0) * (dm - (h.len().max(1) - 1)))
        .sum()
}

// ---------------------------------------------------------------------------
// Affine singular locus

/// Singular points over the roots of `x_poly`: for each root ρ, the roots of
/// `y_poly(ρ, y)`.
#[derive(Clone, Debug, Serialize)]
pub struct SingularSet {
    pub x_poly: String,
    pub y_poly: String,
    pub count: usize,
    pub rational_points: Vec<String>,
    #[serde(skip)]
    pub modulus: QPoly,
    #[serde(skip)]
    pub fiber: Vec<QPoly>,
}

#[derive(Clone, Debug, Serialize)]
pub enum SingularLocus {
    Empty,
    Points(Vec<SingularSet>),
}

impl SingularLocus {
    pub fn point_count(&self) -> usize {
        match self {
            SingularLocus::Empty => 0,
            SingularLocus::Points(v) => v.iter().map(|s| s.count).sum(),
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, SingularLocus::Empty)
    }
}

pub fn affine_singular_locus(f: &BiPoly) -> Result<SingularLocus, GeometryError> {
    Ok(affine_singular_locus_traced(f)?.0)
}

/// Singular points of f = 0 in the affine plane of its two variables, with
/// the resultant degrees used along the way.
pub fn affine_singular_locus_traced(f: &BiPoly) -> Result<(SingularLocus, Vec<TraceStep>), GeometryError> {
    if f.is_constant() {
        return Err(GeometryError::Constant);
    }
    let (x, y) = (f.outer(), f.inner());
    let fx = f.deriv(x);
    let fy = f.deriv(y);
    let mut trace = Vec::new();

    let dx = f.deg_in(x).unwrap_or(0);
    let dy = f.deg_in(y).unwrap_or(0);
    if dx == 0 || dy == 0 {
        // A polynomial in one variable: a union of parallel lines.
        let u = if dy == 0 { f.oriented(y).coeff(0) } else { f.oriented(x).coeff(0) };
        if !u.is_separable() {
            return Err(GeometryError::NonReduced(f.to_string()));
        }
        trace.push(step("univariate squarefree check", &u));
        return Ok((SingularLocus::Empty, trace));
    }

    let r1 = f.resultant(&fy, y)?;
    let sx = f.resultant(&fx, x)?;
    if r1.is_zero() || sx.is_zero() {
        return Err(GeometryError::NonReduced(f.to_string()));
    }
    let r2 = f.resultant(&fx, y)?;
    trace.push(step(format!("Res_{y}(F, F_{y})"), &r1));
    trace.push(step(format!("Res_{y}(F, F_{x})"), &r2));
    let g = if r2.is_zero() { r1.clone() } else { r1.gcd(&r2) };
    trace.push(step("gcd", &g));
    if g.is_constant() {
        return Ok((SingularLocus::Empty, trace));
    }
    let m0 = QPoly::from_uni(&g.squarefree_part()).monic();
    trace.push(step("squarefree part of gcd", &g.squarefree_part()));

    let mut parts = vec![(m0.clone(), kpoly_of(f, y))];
    for p in [kpoly_of(&fy, y), kpoly_of(&fx, y)] {
        parts = parts.into_iter().flat_map(|(mi, gi)| k_gcd(&mi, &gi, &p)).collect();
    }
    let mut sets = Vec::new();
    for (m, gfib) in parts {
        if gfib.is_empty() {
            return Err(GeometryError::NonReduced(f.to_string()));
        }
        if gfib.len() < 2 {
            continue;
        }
        let count = k_distinct_count(&m, &gfib);
        let mut rational_points = Vec::new();
        if m.degree() == Some(1) && gfib.len() == 2 {
            let x0 = -m.coeff(0) / m.coeff(1);
            let y0 = -gfib[0].coeff(0) / gfib[1].coeff(0);
            let check = [f, &fx, &fy].iter().all(|p| p.oriented(x).eval_rat(&x0, &y0).is_zero());
            if !check {
                return Err(GeometryError::Mismatch(format!("rational singular point {} fails substitution", format_point(&x0, &y0))));
            }
            rational_points.push(format_point(&x0, &y0));
        }
        sets.push(SingularSet {
            x_poly: m.to_uni(x).to_string(),
            y_poly: kpoly_to_bipoly(&gfib, x, y).normalized().to_string(),
            count,
            rational_points,
            modulus: m,
            fiber: gfib,
        });
    }
    if sets.is_empty() {
        Ok((SingularLocus::Empty, trace))
    } else {
        Ok((SingularLocus::Points(sets), trace))
    }
}

/// Every singular point of D(k,l) has Δ_k(r) = 0 and Δ_l(t) = 0.
pub fn delta_consistent(set: &SingularSet, k: i64, l: i64) -> bool {
    let m = &set.modulus;
    if !QPoly::from_uni(&delta(k)).rem(m).is_zero() {
        return false;
    }
    let one = QPoly::one();
    k_rem(&k_reduce(&kpoly_const(&delta(l)), m), &set.fiber, &one, m).is_empty()
}

fn on_diagonal(set: &SingularSet) -> bool {
    let g = &set.fiber;
    g.len() == 2 && g[0].add(&QPoly::new(vec![BigRational::zero(), BigRational::one()])).rem(&set.modulus).is_zero()
}

// ---------------------------------------------------------------------------
// Points at infinity in P1 x P1

#[derive(Clone, Debug, Serialize)]
pub enum InfinityVerdict {
    Transversal,
    Witness(Vec<String>),
}

#[derive(Clone, Debug, Serialize)]
pub struct InfinityReport {
    /// (degree in the first variable, degree in the second)
    pub bidegree: (usize, usize),
    /// Distinct points on the line where the first coordinate is ∞.
    pub first_line_points: usize,
    pub second_line_points: usize,
    pub corner_on_curve: bool,
    pub singular_at_infinity: bool,
    pub verdict: InfinityVerdict,
}

impl InfinityReport {
    pub fn is_transversal(&self) -> bool {
        matches!(self.verdict, InfinityVerdict::Transversal)
    }

    pub fn point_count(&self) -> usize {
        self.first_line_points + self.second_line_points - usize::from(self.corner_on_curve)
    }
}

fn distinct_roots(p: &UniPoly) -> usize {
    if p.is_constant() {
        0
    } else {
        p.squarefree_part().degree().unwrap_or(0)
    }
}

/// Checks the two lines at infinity of the closure of f = 0 in P1 x P1,
/// with `first` the variable of the first P1 factor.
pub fn infinity_check(f: &BiPoly, first: Var) -> InfinityReport {
    let fx = f.oriented(first);
    let second = fx.inner();
    let fy = f.oriented(second);
    let a = fx.deg_outer().unwrap_or(0);
    let b = fy.deg_outer().unwrap_or(0);
    let term = |i: usize, j: usize| fx.term(i, j);
    let coeff_or_zero = |p: &BiPoly, i: Option<usize>| i.map_or_else(|| UniPoly::zero(p.inner()), |i| p.coeff(i));

    let ca = fx.coeff(a);
    let db = fy.coeff(b);
    let corner = term(a, b).is_zero();
    let first_line = distinct_roots(&ca) + usize::from(corner);
    let second_line = distinct_roots(&db) + usize::from(corner);

    let mut witness = Vec::new();
    let sing_line = |c: &UniPoly, below: &UniPoly| {
        let g = c.gcd(&c.deriv());
        let g = if below.is_zero() { g } else { g.gcd(below) };
        !c.is_constant() && !g.is_constant()
    };
    let s1 = sing_line(&ca, &coeff_or_zero(&fx, a.checked_sub(1)));
    let s2 = sing_line(&db, &coeff_or_zero(&fy, b.checked_sub(1)));
    let below = |i: Option<usize>, j: Option<usize>| match (i, j) {
        (Some(i), Some(j)) => term(i, j).is_zero(),
        _ => true,
    };
    let s3 = corner && below(a.checked_sub(1), Some(b)) && below(Some(a), b.checked_sub(1));
    if s1 {
        witness.push(format!("singular point on {first}=∞ over a repeated root of {ca}"));
    }
    if s2 {
        witness.push(format!("singular point on {second}=∞ over a repeated root of {db}"));
    }
    if s3 {
        witness.push("singular point at (∞,∞)".to_string());
    }
    if first_line != b {
        witness.push(format!("{first}=∞ meets the curve in {first_line} distinct points, intersection number {b}"));
    }
    if second_line != a {
        witness.push(format!("{second}=∞ meets the curve in {second_line} distinct points, intersection number {a}"));
    }
    InfinityReport {
        bidegree: (a, b),
        first_line_points: first_line,
        second_line_points: second_line,
        corner_on_curve: corner,
        singular_at_infinity: s1 || s2 || s3,
        verdict: if witness.is_empty() { InfinityVerdict::Transversal } else { InfinityVerdict::Witness(witness) },
    }
}

pub fn infinity_transversality(model: &CurveModel) -> Result<InfinityReport, GeometryError> {
    if !model.is_curve() {
        return Err(GeometryError::Degenerate { k: model.k, l: model.l, reason: format!("{:?} model is {:?}", model.kind, model.state) });
    }
    Ok(infinity_check(&model.equation, model.vars.0))
}

// ---------------------------------------------------------------------------
// Smoothness certificate

#[derive(Clone, Debug, Serialize)]
pub struct UnionSingularities {
    pub locus: SingularLocus,
    pub count: usize,
    pub on_diagonal: bool,
    pub delta_consistent: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SmoothnessCertificate {
    pub k: i64,
    pub l: i64,
    pub target: CurveModel,
    pub affine_verdict: SingularLocus,
    pub infinity: InfinityReport,
    /// For k = l: singular points of D(l,l) = D0 ∪ D1.
    pub union_singularities: Option<UnionSingularities>,
    pub trace: Vec<TraceStep>,
    pub smooth: bool,
}

/// (k, l) with l even, refusing the cases where D is not an irreducible-curve
/// candidate.
pub fn nondegenerate(k: i64, l: i64) -> Result<(i64, i64), GeometryError> {
    let (k, l, _) = orient_kl(k, l)?;
    let refuse = |reason: &str| Err(GeometryError::Degenerate { k, l, reason: reason.to_string() });
    if k == 0 || l == 0 {
        return refuse("Empty: J(k,0) and J(0,l) are unknots");
    }
    if k == l && l.abs() == 2 {
        return refuse("LineUnion/trefoil");
    }
    if k.abs() < 2 {
        return refuse("LineUnion: bidegree (0,·), not hyperbolic");
    }
    Ok((k, l))
}

pub fn smoothness_certificate(k: i64, l: i64) -> Result<SmoothnessCertificate, GeometryError> {
    let (k, l) = nondegenerate(k, l)?;
    let (target, union) = if k == l {
        let (_, d1) = d_split(l)?;
        let whole = d_model(l, l)?;
        let (locus, _) = affine_singular_locus_traced(&whole.equation)?;
        let sets = match &locus {
            SingularLocus::Empty => Vec::new(),
            SingularLocus::Points(v) => v.clone(),
        };
        let u = UnionSingularities {
            count: locus.point_count(),
            on_diagonal: sets.iter().all(on_diagonal),
            delta_consistent: sets.iter().all(|s| delta_consistent(s, l, l)),
            locus,
        };
        (d1, Some(u))
    } else {
        (d_model(k, l)?, None)
    };
    if target.state != ModelState::Curve {
        return Err(GeometryError::Degenerate { k, l, reason: format!("{:?}", target.state) });
    }
    let (affine, trace) = affine_singular_locus_traced(&target.equation)?;
    if let SingularLocus::Points(sets) = &affine {
        if !sets.iter().all(|s| delta_consistent(s, k, l)) {
            return Err(GeometryError::Mismatch(format!("singular candidate of D({k},{l}) with Δ nonzero")));
        }
    }
    let infinity = infinity_transversality(&target)?;
    let smooth = affine.is_empty() && infinity.is_transversal();
    Ok(SmoothnessCertificate { k, l, target, affine_verdict: affine, infinity, union_singularities: union, trace, smooth })
}

// ---------------------------------------------------------------------------
// Components

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum ComponentCount {
    One,
    Two,
    Degenerate(String),
}

impl ComponentCount {
    pub fn as_number(&self) -> Option<u32> {
        match self {
            ComponentCount::One => Some(1),
            ComponentCount::Two => Some(2),
            ComponentCount::Degenerate(_) => None,
        }
    }
}

pub fn component_count(k: i64, l: i64) -> Result<ComponentCount, GeometryError> {
    let cert = match smoothness_certificate(k, l) {
        Ok(c) => c,
        Err(GeometryError::Degenerate { reason, .. }) => return Ok(ComponentCount::Degenerate(reason)),
        Err(e) => return Err(e),
    };
    let (a, b) = cert.infinity.bidegree;
    if !cert.smooth || a == 0 || b == 0 {
        return Err(GeometryError::NotSmooth(format!("D({},{})", cert.k, cert.l)));
    }
    // A smooth curve in P1 x P1 with both bidegree entries positive is
    // connected, hence irreducible.
    Ok(if cert.k == cert.l { ComponentCount::Two } else { ComponentCount::One })
}

// ---------------------------------------------------------------------------
// Odd-valuation points of the ramification function h

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Component {
    Whole,
    D0,
    D1,
}

#[derive(Clone, Debug, Serialize)]
pub struct OddPointDetail {
    /// Points (2, τ), τ ≠ 2, on the curve (even k only).
    pub fiber_points: usize,
    /// Points where the second factor of h vanishes.
    pub affine_points: usize,
    pub infinity_points: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct OddPointCount {
    pub k: i64,
    pub l: i64,
    pub component: Component,
    /// Case constant in the closed form.
    pub case_a: i64,
    pub sign_case: String,
    pub closed_form: i64,
    pub oracle: i64,
    pub detail: OddPointDetail,
    pub agree: bool,
}

fn in_rt(p: &UniPoly) -> BiPoly {
    BiPoly::from_outer(&p.clone().with_var(Var::R), Var::R, Var::T)
}

/// h and the substitution t = T(r) describing its second factor.
fn ramification_data(k: i64) -> (BiPoly, UniPoly) {
    let r = UniPoly::x(Var::R);
    let two = UniPoly::constant(BigInt::from(2), Var::R);
    let t = BiPoly::from_inner(&UniPoly::x(Var::T), Var::R, Var::T);
    if k % 2 == 0 {
        let m = k / 2;
        // T = (r^2 - 4) f_m^2 + 2, h = (r - 2)(T - t)
        let big_t = &(&(&(&r * &r) - &UniPoly::constant(BigInt::from(4), Var::R)) * &f_poly(m).with_var(Var::R).pow(2)) + &two;
        let h = &in_rt(&(&r - &two)) * &(&in_rt(&big_t) - &t);
        (h, big_t)
    } else {
        let m = k.div_euclid(2);
        // T = 2 - (r + 2) g_{m+1}^2, h = t - T
        let big_t = &two - &(&(&r + &two) * &g_poly(m + 1).with_var(Var::R).pow(2));
        let h = &t - &in_rt(&big_t);
        (h, big_t)
    }
}

/// Counts the points of the curve e = 0 (outer r, inner t) where h has odd
/// valuation, following the transversality argument chart by chart.
fn odd_point_oracle(e: &BiPoly, k: i64) -> Result<OddPointDetail, GeometryError> {
    let inf = infinity_check(e, Var::R);
    if !inf.is_transversal() {
        return Err(GeometryError::NotSmooth(format!("{e} at infinity")));
    }
    let (a, b) = inf.bidegree;
    let (h, big_t) = ramification_data(k);
    let two = BigInt::from(2);
    let two_r = BigRational::from_integer(two.clone());
    let even = k % 2 == 0;

    let mut fiber_points = 0;
    if even {
        let fib = e.oriented(Var::R).eval_outer(&two);
        if fib.degree() != Some(b) || !fib.is_separable() {
            return Err(GeometryError::NotSeparable(format!("fiber r = 2 of {e}: {fib}")));
        }
        fiber_points = b - usize::from(fib.eval(&two).is_zero());
    }

    let p = e.oriented(Var::T).subst_outer(&big_t);
    if p.is_zero() || !p.is_separable() {
        return Err(GeometryError::NotSeparable(format!("{e} restricted to t = {big_t}")));
    }
    let dp = p.degree().unwrap_or(0);
    let affine_points = if even { dp - usize::from(p.eval_rat(&two_r).is_zero()) } else { dp };

    // With both lines at infinity transversal, 1/r and 1/t are local
    // parameters there, so v(h) is read off from degrees.
    let hr = h.oriented(Var::R);
    let ht = h.oriented(Var::T);
    let ca = e.oriented(Var::R).coeff(a);
    let db = e.oriented(Var::T).coeff(b);
    let mut infinity_points = 0;
    let deg_hr = hr.deg_outer().unwrap_or(0);
    if !ca.is_constant() {
        if !ca.gcd(&hr.coeff(deg_hr)).is_constant() {
            return Err(GeometryError::Unsupported(format!("leading r-coefficient of h vanishes on {e} at r=∞")));
        }
        if deg_hr % 2 == 1 {
            infinity_points += distinct_roots(&ca);
        }
    }
    let deg_ht = ht.deg_outer().unwrap_or(0);
    if !db.is_constant() {
        if !db.gcd(&ht.coeff(deg_ht)).is_constant() {
            return Err(GeometryError::Unsupported(format!("leading t-coefficient of h vanishes on {e} at t=∞")));
        }
        if deg_ht % 2 == 1 {
            infinity_points += distinct_roots(&db);
        }
    }
    if inf.corner_on_curve {
        let mut best = 0;
        let mut hits = 0;
        for (i, row) in hr.coeffs().iter().enumerate() {
            for (j, c) in row.coeffs().iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                match (i + j).cmp(&best) {
                    std::cmp::Ordering::Greater => {
                        best = i + j;
                        hits = 1;
                    }
                    std::cmp::Ordering::Equal => hits += 1,
                    std::cmp::Ordering::Less => {}
                }
            }
        }
        if hits != 1 {
            return Err(GeometryError::Unsupported("valuation of h at (∞,∞) needs more than degrees".to_string()));
        }
        if best % 2 == 1 {
            infinity_points += 1;
        }
    }
    Ok(OddPointDetail { fiber_points, affine_points, infinity_points })
}

fn even_closed_form(m: i64, n: i64) -> (i64, i64) {
    let a = if m * n > 0 { 2 } else { 1 };
    (a, 2 * (m * n).abs() + 2 * m.abs() + 2 * n.abs() - 2 * a)
}

fn odd_closed_form(m: i64, n: i64) -> (i64, i64) {
    let a = if n > 0 {
        1
    } else if m < 0 {
        2
    } else {
        0
    };
    (a, (2 * m + 1).abs() * n.abs() + n.abs() + 2 * m.abs() - 2 * a)
}

fn sign_case(m: i64, n: i64) -> String {
    let s = |x: i64| if x > 0 { "+" } else { "-" };
    format!("m{} n{}", s(m), s(n))
}

pub fn odd_point_count(k: i64, l: i64, component: Component) -> Result<OddPointCount, GeometryError> {
    let (k, l) = nondegenerate(k, l)?;
    let n = l / 2;
    let m = k.div_euclid(2);
    let curve = match (k == l, component) {
        (false, Component::Whole) => d_model(k, l)?.equation,
        (true, Component::Whole) => d_model(l, l)?.equation,
        (true, Component::D0) => d_split(l)?.0.equation,
        (true, Component::D1) => d_split(l)?.1.equation,
        (false, c) => return Err(GeometryError::Unsupported(format!("component {c:?} needs k = l"))),
    };
    let (case_a, closed_form) = if k % 2 == 0 {
        let (a, whole) = even_closed_form(m, n);
        match component {
            Component::Whole => (a, whole),
            Component::D0 => (a, 2 * n.abs()),
            Component::D1 => (a, whole - 2 * n.abs()),
        }
    } else {
        odd_closed_form(m, n)
    };
    let detail = if k == l && component == Component::Whole {
        // The union is singular along D0 ∩ D1, where h is a unit; count on
        // each component separately.
        let d0 = odd_point_oracle(&d_split(l)?.0.equation, k)?;
        let d1 = odd_point_oracle(&d_split(l)?.1.equation, k)?;
        OddPointDetail {
            fiber_points: d0.fiber_points + d1.fiber_points,
            affine_points: d0.affine_points + d1.affine_points,
            infinity_points: d0.infinity_points + d1.infinity_points,
        }
    } else {
        odd_point_oracle(&curve, k)?
    };
    let oracle = (detail.fiber_points + detail.affine_points + detail.infinity_points) as i64;
    Ok(OddPointCount {
        k,
        l,
        component,
        case_a,
        sign_case: sign_case(m, n),
        closed_form,
        oracle,
        detail,
        agree: oracle == closed_form,
    })
}

// ---------------------------------------------------------------------------
// Genera

#[derive(Clone, Debug, Serialize)]
pub struct YGenus {
    pub component: Component,
    pub bidegree: (usize, usize),
    pub genus_bidegree: i64,
    pub genus_formula: i64,
    pub hyperelliptic: bool,
    pub hyperelliptic_formula: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct XGenus {
    pub component: Component,
    pub odd_points: OddPointCount,
    pub genus_x_rh: i64,
    pub genus_x_formula: i64,
}

#[derive(Clone, Debug, Serialize)]
pub struct GenusReport {
    pub k: i64,
    pub l: i64,
    pub certificate_smooth: bool,
    pub y: Vec<YGenus>,
    pub x: Vec<XGenus>,
    pub all_agree: bool,
}

fn bidegree_genus(bd: (usize, usize)) -> i64 {
    (bd.0 as i64 - 1) * (bd.1 as i64 - 1)
}

fn hyperelliptic_by_bidegree(bd: (usize, usize)) -> bool {
    bd.0 <= 2 || bd.1 <= 2
}

pub fn genus_y(k: i64, l: i64) -> Result<Vec<YGenus>, GeometryError> {
    let cert = smoothness_certificate(k, l)?;
    if !cert.smooth {
        return Err(GeometryError::NotSmooth(format!("D({},{})", cert.k, cert.l)));
    }
    let (k, l) = (cert.k, cert.l);
    let bd = cert.infinity.bidegree;
    if k != l {
        return Ok(vec![YGenus {
            component: Component::Whole,
            bidegree: bd,
            genus_bidegree: bidegree_genus(bd),
            genus_formula: (k.abs() / 2 - 1) * (l.abs() / 2 - 1),
            hyperelliptic: hyperelliptic_by_bidegree(bd),
            hyperelliptic_formula: Some(k.abs() <= 5 || l.abs() <= 5),
        }]);
    }
    let d0 = infinity_check(&d_split(l)?.0.equation, Var::R).bidegree;
    Ok(vec![
        YGenus {
            component: Component::D0,
            bidegree: d0,
            genus_bidegree: bidegree_genus(d0),
            genus_formula: 0,
            hyperelliptic: hyperelliptic_by_bidegree(d0),
            hyperelliptic_formula: None,
        },
        YGenus {
            component: Component::D1,
            bidegree: bd,
            genus_bidegree: bidegree_genus(bd),
            genus_formula: (l.abs() / 2 - 2).pow(2),
            hyperelliptic: hyperelliptic_by_bidegree(bd),
            hyperelliptic_formula: Some(l.abs() <= 6),
        },
    ])
}

/// Closed form for the genus of X(k,l), k ≠ l.
pub fn genus_x_closed_form(k: i64, l: i64) -> i64 {
    let m = k.div_euclid(2);
    let n = l / 2;
    let odd = k % 2 != 0;
    let a = if odd && k < 0 { 4 } else { 1 };
    let b = if odd && k < 0 && l > 0 {
        2
    } else if odd && l < 0 {
        1
    } else if !odd && k * l > 0 {
        -1
    } else {
        0
    };
    3 * (m * n).abs() - m.abs() - a * n.abs() + b
}

pub fn genus_x(k: i64, l: i64) -> Result<GenusReport, GeometryError> {
    let y = genus_y(k, l)?;
    let (k, l) = nondegenerate(k, l)?;
    let n = l / 2;
    let mut x = Vec::new();
    for yg in &y {
        let odd = odd_point_count(k, l, yg.component)?;
        if odd.oracle % 2 != 0 {
            return Err(GeometryError::Mismatch(format!("odd number {} of ramification points", odd.oracle)));
        }
        let rh = 2 * yg.genus_bidegree - 1 + odd.oracle / 2;
        let formula = match yg.component {
            Component::Whole => genus_x_closed_form(k, l),
            Component::D0 => n.abs() - 1,
            Component::D1 => 3 * n * n - 7 * n.abs() + 5,
        };
        x.push(XGenus { component: yg.component, odd_points: odd, genus_x_rh: rh, genus_x_formula: formula });
    }
    let all_agree = y.iter().all(|g| g.genus_bidegree == g.genus_formula && g.hyperelliptic_formula.is_none_or(|h| h == g.hyperelliptic))
        && x.iter().all(|g| g.odd_points.agree && g.genus_x_rh == g.genus_x_formula);
    Ok(GenusReport { k, l, certificate_smooth: true, y, x, all_agree })
}

/// Same as [`genus_x`] but a disagreement between routes is an error.
pub fn genus_x_checked(k: i64, l: i64) -> Result<GenusReport, GeometryError> {
    let rep = genus_x(k, l)?;
    if !rep.all_agree {
        return Err(GeometryError::Mismatch(format!("genus routes for J({},{})", rep.k, rep.l)));
    }
    Ok(rep)
}
