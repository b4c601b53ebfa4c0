//! p-adic valuations on ℚ, ℤ[i] and ℤ[√3] (all normalized by v(3) = 1 in
//! the quadratic cases), Newton polygons, and regression checks for the
//! valuation facts used in the smoothness argument.

use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::{binomial, Integer};
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Serialize, Serializer};

use crate::exactalg::{complex_roots, ExactError, QuadElem, QuadRing, UniPoly};
use crate::polyseq::{big_g, g_poly};
use crate::serial::rat_to_string;

/// An exact valuation value; `Inf` is the valuation of zero and sorts above
/// every finite value.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Val {
    Finite(BigRational),
    Inf,
}

impl Val {
    pub fn int(v: i64) -> Self {
        Val::Finite(BigRational::from_integer(v.into()))
    }

    pub fn frac(n: i64, d: i64) -> Self {
        Val::Finite(BigRational::new(n.into(), d.into()))
    }

    pub fn finite(&self) -> Option<&BigRational> {
        match self {
            Val::Finite(v) => Some(v),
            Val::Inf => None,
        }
    }

    pub fn is_inf(&self) -> bool {
        matches!(self, Val::Inf)
    }
}

impl std::ops::Add for &Val {
    type Output = Val;
    fn add(self, o: &Val) -> Val {
        match (self, o) {
            (Val::Finite(a), Val::Finite(b)) => Val::Finite(a + b),
            _ => Val::Inf,
        }
    }
}

impl fmt::Display for Val {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Val::Finite(v) => f.write_str(&rat_to_string(v)),
            Val::Inf => f.write_str("inf"),
        }
    }
}

impl Serialize for Val {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// v_p of a nonzero integer; `None` for zero.
pub fn vp_int(x: &BigInt, p: u64) -> Option<u64> {
    if x.is_zero() {
        return None;
    }
    let pb = BigInt::from(p);
    let mut m = x.abs();
    let mut e = 0;
    loop {
        let (q, r) = m.div_rem(&pb);
        if !r.is_zero() {
            return Some(e);
        }
        m = q;
        e += 1;
    }
}

pub fn val_int(x: &BigInt, p: u64) -> Val {
    match vp_int(x, p) {
        Some(e) => Val::int(e as i64),
        None => Val::Inf,
    }
}

pub fn val_rat(x: &BigRational, p: u64) -> Result<Val, ExactError> {
    if !crate::exactalg::is_prime(p) {
        return Err(ExactError::NotPrime(p));
    }
    if x.is_zero() {
        return Ok(Val::Inf);
    }
    let a = vp_int(x.numer(), p).unwrap() as i64;
    let b = vp_int(x.denom(), p).unwrap() as i64;
    Ok(Val::int(a - b))
}

/// The valuation above 3 on ℤ[i] (3 inert) or ℤ[√3] (3 ramified), computed
/// as v₃(norm)/2.
pub fn val_quad(x: &QuadElem) -> Val {
    match vp_int(&x.norm(), 3) {
        Some(e) => Val::frac(e as i64, 2),
        None => Val::Inf,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PolyPoint {
    pub index: usize,
    pub value: Val,
}

#[derive(Clone, Debug, Serialize)]
pub struct NewtonPolygon {
    pub points: Vec<PolyPoint>,
    /// Lower hull vertices, sorted by index. When the constant coefficient
    /// vanishes the first vertex is (0, inf).
    pub vertices: Vec<PolyPoint>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RootValuation {
    pub value: Val,
    pub count: usize,
}

fn cross(o: (&BigRational, &BigRational), a: (&BigRational, &BigRational), b: (&BigRational, &BigRational)) -> BigRational {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

/// Lower convex hull of (i, v_i); collinear interior points are dropped.
pub fn polygon(values: &[Val]) -> Result<NewtonPolygon, ExactError> {
    let points: Vec<PolyPoint> = values
        .iter()
        .enumerate()
        .map(|(i, v)| PolyPoint { index: i, value: v.clone() })
        .collect();
    let finite: Vec<(BigRational, BigRational)> = points
        .iter()
        .filter_map(|p| p.value.finite().map(|v| (BigRational::from_integer(p.index.into()), v.clone())))
        .collect();
    if finite.is_empty() {
        return Err(ExactError::ZeroPolynomial);
    }
    let mut hull: Vec<(BigRational, BigRational)> = Vec::new();
    for pt in finite {
        while hull.len() >= 2 {
            let n = hull.len();
            let c = cross((&hull[n - 2].0, &hull[n - 2].1), (&hull[n - 1].0, &hull[n - 1].1), (&pt.0, &pt.1));
            if c <= BigRational::zero() {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(pt);
    }
    let mut vertices = Vec::new();
    if values.first().is_some_and(Val::is_inf) {
        vertices.push(PolyPoint { index: 0, value: Val::Inf });
    }
    for (x, v) in hull {
        let idx = x.to_integer().try_into().unwrap_or(0usize);
        vertices.push(PolyPoint { index: idx, value: Val::Finite(v) });
    }
    Ok(NewtonPolygon { points, vertices })
}

impl NewtonPolygon {
    /// Segment slopes in order (the vertical initial segment is skipped).
    pub fn slopes(&self) -> Vec<BigRational> {
        self.finite_pairs()
            .windows(2)
            .map(|w| (&w[1].1 - &w[0].1) / BigRational::from_integer(BigInt::from(w[1].0 - w[0].0)))
            .collect()
    }

    fn finite_pairs(&self) -> Vec<(usize, BigRational)> {
        self.vertices
            .iter()
            .filter_map(|p| p.value.finite().map(|v| (p.index, v.clone())))
            .collect()
    }

    /// Valuations of the roots, with multiplicities: a segment of slope −q and
    /// horizontal length ℓ gives ℓ roots of valuation q; leading zero
    /// coefficients give roots of valuation inf.
    pub fn root_valuations(&self) -> Vec<RootValuation> {
        let pairs = self.finite_pairs();
        let mut out = Vec::new();
        if let Some(first) = pairs.first() {
            if first.0 > 0 {
                out.push(RootValuation { value: Val::Inf, count: first.0 });
            }
        }
        for w in pairs.windows(2) {
            let len = w[1].0 - w[0].0;
            let slope = (&w[1].1 - &w[0].1) / BigRational::from_integer(BigInt::from(len));
            out.push(RootValuation { value: Val::Finite(-slope), count: len });
        }
        out.sort_by(|a, b| a.value.cmp(&b.value));
        let mut merged: Vec<RootValuation> = Vec::new();
        for r in out {
            match merged.last_mut() {
                Some(m) if m.value == r.value => m.count += r.count,
                _ => merged.push(r),
            }
        }
        merged
    }

    pub fn vertex_pairs(&self) -> Vec<(usize, Val)> {
        self.vertices.iter().map(|p| (p.index, p.value.clone())).collect()
    }
}

/// Newton polygon of an integer polynomial at p.
pub fn int_polygon(f: &UniPoly, p: u64) -> Result<NewtonPolygon, ExactError> {
    if !crate::exactalg::is_prime(p) {
        return Err(ExactError::NotPrime(p));
    }
    let vals: Vec<Val> = f.coeffs().iter().map(|c| val_int(c, p)).collect();
    polygon(&vals)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ShiftVariant {
    /// α = 1 at the rational prime p
    One { n: u64, p: u64 },
    /// α = i in ℤ[i] at 3
    I { n: u64 },
    /// α = −2 + √3 in ℤ[√3] at 3
    Alpha { n: u64 },
}

/// Coefficients b_i of (S+α)^{4n} + 2n((S+α)^{2n+1} − (S+α)^{2n−1}) − 1.
fn shifted_coeffs(alpha: &QuadElem, n: u64) -> Vec<QuadElem> {
    let ring = alpha.ring;
    let top = 4 * n as usize;
    let mut apow = vec![QuadElem::one(ring)];
    for i in 1..=top {
        let next = &apow[i - 1] * alpha;
        apow.push(next);
    }
    let binom_row = |m: usize| -> Vec<QuadElem> {
        (0..=m)
            .map(|i| apow[m - i].scale(&binomial(BigInt::from(m), BigInt::from(i))))
            .collect()
    };
    let mut out = vec![QuadElem::zero(ring); top + 1];
    for (i, c) in binom_row(top).into_iter().enumerate() {
        out[i] = &out[i] + &c;
    }
    let two_n = BigInt::from(2 * n);
    for (i, c) in binom_row(2 * n as usize + 1).into_iter().enumerate() {
        out[i] = &out[i] + &c.scale(&two_n);
    }
    for (i, c) in binom_row(2 * n as usize - 1).into_iter().enumerate() {
        out[i] = &out[i] - &c.scale(&two_n);
    }
    out[0] = &out[0] - &QuadElem::one(ring);
    out
}

/// The valuations of the coefficients of the shifted polynomial.
pub fn shifted_valuations(variant: ShiftVariant) -> Result<Vec<Val>, ExactError> {
    match variant {
        ShiftVariant::One { n, p } => {
            if n == 0 {
                return Err(ExactError::Parse("n must be positive".into()));
            }
            if !crate::exactalg::is_prime(p) {
                return Err(ExactError::NotPrime(p));
            }
            let alpha = QuadElem::int(1, QuadRing::GaussInt);
            Ok(shifted_coeffs(&alpha, n).iter().map(|c| val_int(&c.a, p)).collect())
        }
        ShiftVariant::I { n } | ShiftVariant::Alpha { n } => {
            if n == 0 || n % 3 != 0 {
                return Err(ExactError::Parse("n must be a positive multiple of 3".into()));
            }
            let alpha = match variant {
                ShiftVariant::I { .. } => QuadElem::new(0, 1, QuadRing::GaussInt),
                _ => QuadElem::new(-2, 1, QuadRing::RootThree),
            };
            Ok(shifted_coeffs(&alpha, n).iter().map(val_quad).collect())
        }
    }
}

fn push_vertex(v: &mut Vec<(usize, Val)>, i: u64, val: Val) {
    let i = i as usize;
    if v.last().is_some_and(|(j, _)| *j == i) {
        return;
    }
    v.push((i, val));
}

/// The vertex list stated for each variant.
pub fn expected_vertices(variant: ShiftVariant) -> Vec<(usize, Val)> {
    let mut v = Vec::new();
    match variant {
        ShiftVariant::One { n, p } => {
            let e = vp_int(&BigInt::from(4 * n), p).unwrap() as i64;
            v.push((0, Val::Inf));
            if p == 2 {
                v.push((1, Val::int(e + 1)));
                let mut q = 4u64;
                let mut j = 2;
                while j <= e {
                    push_vertex(&mut v, q, Val::int(e - j));
                    q *= 2;
                    j += 1;
                }
            } else {
                let mut q = 1u64;
                for j in 0..=e {
                    push_vertex(&mut v, q, Val::int(e - j));
                    q *= p;
                }
            }
            push_vertex(&mut v, 4 * n, Val::int(0));
        }
        ShiftVariant::I { n } | ShiftVariant::Alpha { n } => {
            let e = vp_int(&BigInt::from(n), 3).unwrap() as i64;
            if matches!(variant, ShiftVariant::Alpha { .. }) {
                v.push((0, Val::frac(2 * e + 3, 2)));
                v.push((1, Val::int(e)));
            } else {
                v.push((0, Val::int(e)));
            }
            let mut q = 3u64;
            for j in 1..=e {
                push_vertex(&mut v, q, Val::int(e - j));
                q *= 3;
            }
            push_vertex(&mut v, 4 * n, Val::int(0));
        }
    }
    v
}

#[derive(Clone, Debug, Serialize)]
pub struct ShiftedPolygonCheck {
    pub variant: ShiftVariant,
    pub expected: Vec<(usize, Val)>,
    pub computed: Vec<(usize, Val)>,
    pub pass: bool,
}

pub fn check_shifted_polygon(variant: ShiftVariant) -> Result<ShiftedPolygonCheck, ExactError> {
    let poly = polygon(&shifted_valuations(variant)?)?;
    let computed = poly.vertex_pairs();
    let expected = expected_vertices(variant);
    let pass = computed == expected;
    Ok(ShiftedPolygonCheck { variant, expected, computed, pass })
}

#[derive(Clone, Debug, Serialize)]
pub struct BinomReport {
    pub n: u64,
    pub p: u64,
    pub e: u64,
    /// v_p(C(n, p^j)) = max(e − j, 0) for j ≤ e
    pub equality_holds: bool,
    /// v_p(C(n, k)) > e − j for all 0 < k < p^j
    pub strict_bound_holds: bool,
    /// Values of j > e (with p^j ≤ n) where v_p(C(n, p^j)) ≠ 0; the equality
    /// is not claimed there.
    pub beyond_e_exceptions: Vec<(u32, u64)>,
}

/// Checks binomial valuations for every j with p^j ≤ n.
pub fn binom_check(n: u64, p: u64) -> Result<BinomReport, ExactError> {
    if !crate::exactalg::is_prime(p) {
        return Err(ExactError::NotPrime(p));
    }
    if n == 0 || !n.is_multiple_of(p) {
        return Err(ExactError::Parse(format!("{p} does not divide {n}")));
    }
    let nb = BigInt::from(n);
    let e = vp_int(&nb, p).unwrap();
    let vb: Vec<u64> = (0..=n).map(|k| vp_int(&binomial(nb.clone(), BigInt::from(k)), p).unwrap()).collect();
    let mut equality_holds = true;
    let mut strict_bound_holds = true;
    let mut beyond = Vec::new();
    let mut j = 0u32;
    let mut pj = 1u64;
    while pj <= n {
        let v = vb[pj as usize];
        if j as u64 <= e {
            equality_holds &= v == e - j as u64;
        } else if v != 0 {
            beyond.push((j, v));
        }
        for k in 1..pj {
            strict_bound_holds &= (vb[k as usize] as i64) > e as i64 - j as i64;
        }
        j += 1;
        pj *= p;
    }
    Ok(BinomReport { n, p, e, equality_holds, strict_bound_holds, beyond_e_exceptions: beyond })
}

#[derive(Clone, Debug, Serialize)]
pub struct ComplexAbsEntry {
    pub n: i64,
    pub roots: usize,
    pub min_modulus: Option<f64>,
    pub max_modulus: Option<f64>,
    pub pass: bool,
    /// G_n is constant for |n| = 1, so there is nothing to check.
    pub vacuous: bool,
}

pub const COMPLEXABS_MARGIN: f64 = 1e-9;
pub const COMPLEXABS_TOL: f64 = 1e-12;

/// For each root ω of G_n, |g_{n+1}(ω)/g_n(ω)| must exceed 1 for n > 0 and
/// be below 1 for n < 0, both by `COMPLEXABS_MARGIN`.
pub fn complexabs_check(ns: impl IntoIterator<Item = i64>) -> Result<Vec<ComplexAbsEntry>, ExactError> {
    let mut out = Vec::new();
    for n in ns {
        if n == 0 {
            continue;
        }
        let gn = big_g(n);
        if gn.degree().unwrap_or(0) == 0 {
            out.push(ComplexAbsEntry { n, roots: 0, min_modulus: None, max_modulus: None, pass: true, vacuous: true });
            continue;
        }
        let roots: Vec<Complex64> = complex_roots(&gn, COMPLEXABS_TOL)?;
        let (num, den) = (g_poly(n + 1), g_poly(n));
        let mods: Vec<f64> = roots
            .iter()
            .map(|&w| (num.eval_complex(w) / den.eval_complex(w)).norm())
            .collect();
        let lo = mods.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = mods.iter().cloned().fold(0.0, f64::max);
        let pass = if n > 0 { lo > 1.0 + COMPLEXABS_MARGIN } else { hi < 1.0 - COMPLEXABS_MARGIN };
        out.push(ComplexAbsEntry {
            n,
            roots: roots.len(),
            min_modulus: Some(lo),
            max_modulus: Some(hi),
            pass,
            vacuous: false,
        });
    }
    Ok(out)
}

/// True when some root of `f` has negative p-adic valuation (a hull segment
/// of positive slope), i.e. f has a root that is not p-integral.
pub fn has_nonintegral_root(f: &UniPoly, p: u64) -> Result<Option<BigRational>, ExactError> {
    let poly = int_polygon(f, p)?;
    Ok(poly.slopes().into_iter().find(|s| s > &BigRational::zero()))
}
