//! 2×2 matrices over ℤ[r][λ, λ⁻¹], the words w_k and Schubert words, and
//! extraction of Riley polynomials in the trace coordinates (r, y) with
//! y = λ² + λ⁻².

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::exactalg::{BiPoly, LaurentPoly, QPoly, UniPoly, Var};
use crate::polyseq::{f_poly, phi, psi};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RileyError {
    #[error("invalid two-bridge parameters: {0}")]
    InvalidParams(String),
    #[error("not in trace subring: offending term {0}")]
    NotInTraceSubring(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Gen {
    A,
    B,
}

/// Freely reduced word in a, b with adjacent equal generators merged.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Word {
    letters: Vec<(Gen, i64)>,
}

impl Word {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn from_letters(letters: impl IntoIterator<Item = (Gen, i64)>) -> Self {
        let mut w = Self::empty();
        for (g, e) in letters {
            w.push(g, e);
        }
        w
    }

    pub fn push(&mut self, g: Gen, e: i64) {
        if e == 0 {
            return;
        }
        match self.letters.last_mut() {
            Some((h, f)) if *h == g => {
                *f += e;
                if *f == 0 {
                    self.letters.pop();
                }
            }
            _ => self.letters.push((g, e)),
        }
    }

    pub fn letters(&self) -> &[(Gen, i64)] {
        &self.letters
    }

    /// Total number of generator occurrences, Σ|e|.
    pub fn length(&self) -> usize {
        self.letters.iter().map(|(_, e)| e.unsigned_abs() as usize).sum()
    }

    pub fn concat(&self, o: &Word) -> Word {
        let mut w = self.clone();
        for &(g, e) in &o.letters {
            w.push(g, e);
        }
        w
    }

    pub fn inverse(&self) -> Word {
        Word::from_letters(self.letters.iter().rev().map(|&(g, e)| (g, -e)))
    }

    pub fn pow(&self, n: i64) -> Word {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut w = Word::empty();
        for _ in 0..n.unsigned_abs() {
            w = w.concat(&base);
        }
        w
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self
            .letters
            .iter()
            .map(|&(g, e)| {
                let c = if g == Gen::A { "a" } else { "b" };
                if e == 1 { c.to_string() } else { format!("{c}^{e}") }
            })
            .collect();
        f.write_str(&parts.join(" "))
    }
}

/// (ab⁻¹)^m (a⁻¹b)^m for k = 2m and (ab⁻¹)^m ab (a⁻¹b)^m for k = 2m+1.
pub fn w_k_word(k: i64) -> Word {
    let m = k.div_euclid(2);
    let left = Word::from_letters([(Gen::A, 1), (Gen::B, -1)]).pow(m);
    let right = Word::from_letters([(Gen::A, -1), (Gen::B, 1)]).pow(m);
    let mid = if k.rem_euclid(2) == 1 {
        Word::from_letters([(Gen::A, 1), (Gen::B, 1)])
    } else {
        Word::empty()
    };
    left.concat(&mid).concat(&right)
}

pub fn check_pq(p: i64, q: i64) -> Result<(), RileyError> {
    if p < 1 {
        return Err(RileyError::InvalidParams(format!("p = {p} must be positive")));
    }
    if p % 2 == 0 || q.rem_euclid(2) == 0 {
        return Err(RileyError::InvalidParams(format!("p = {p}, q = {q} must both be odd")));
    }
    if num_integer::gcd(p, q) != 1 {
        return Err(RileyError::InvalidParams(format!("p = {p}, q = {q} not coprime")));
    }
    if !(-p < q && q <= p) {
        return Err(RileyError::InvalidParams(format!("q = {q} outside (-p, p]")));
    }
    Ok(())
}

/// a^{e_1} b^{e_2} ⋯ b^{e_{p−1}} with e_i = (−1)^{⌊iq/p⌋}.
pub fn schubert_word(p: i64, q: i64) -> Result<Word, RileyError> {
    check_pq(p, q)?;
    let letters = (1..p).map(|i| {
        let e = if (i * q).div_euclid(p).rem_euclid(2) == 0 { 1 } else { -1 };
        let g = if i % 2 == 1 { Gen::A } else { Gen::B };
        (g, e)
    });
    Ok(Word::from_letters(letters))
}

fn lp_r(p: &UniPoly) -> LaurentPoly {
    LaurentPoly::constant(p.clone().with_var(Var::R))
}

/// 2×2 matrix over ℤ[r][λ, λ⁻¹].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentMat2 {
    pub m: [[LaurentPoly; 2]; 2],
}

impl LaurentMat2 {
    pub fn new(a: LaurentPoly, b: LaurentPoly, c: LaurentPoly, d: LaurentPoly) -> Self {
        LaurentMat2 { m: [[a, b], [c, d]] }
    }

    pub fn identity() -> Self {
        Self::new(LaurentPoly::int(1), LaurentPoly::zero(), LaurentPoly::zero(), LaurentPoly::int(1))
    }

    pub fn entry(&self, i: usize, j: usize) -> &LaurentPoly {
        &self.m[i][j]
    }

    pub fn trace(&self) -> LaurentPoly {
        &self.m[0][0] + &self.m[1][1]
    }

    pub fn det(&self) -> LaurentPoly {
        &(&self.m[0][0] * &self.m[1][1]) - &(&self.m[0][1] * &self.m[1][0])
    }

    /// Inverse assuming determinant 1.
    pub fn sl2_inverse(&self) -> Self {
        let [[a, b], [c, d]] = &self.m;
        Self::new(d.clone(), -b, -c, a.clone())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let e = |i: usize, j: usize| &(&self.m[i][0] * &o.m[0][j]) + &(&self.m[i][1] * &o.m[1][j]);
        Self::new(e(0, 0), e(0, 1), e(1, 0), e(1, 1))
    }

    pub fn sub(&self, o: &Self) -> Self {
        let e = |i: usize, j: usize| &self.m[i][j] - &o.m[i][j];
        Self::new(e(0, 0), e(0, 1), e(1, 0), e(1, 1))
    }

    /// Right multiplication by a single generator letter g^{±1}, using the
    /// sparsity of A and B.
    fn mul_letter(&self, g: Gen, inv: bool) -> Self {
        let l = LaurentPoly::lambda_pow(1);
        let li = LaurentPoly::lambda_pow(-1);
        let two_minus_r = lp_r(&UniPoly::from_i64s(&[2, -1], Var::R));
        let [[m11, m12], [m21, m22]] = &self.m;
        match (g, inv) {
            // A = [[λ, 1], [0, λ⁻¹]]
            (Gen::A, false) => Self::new(m11.shift(1), m11 + &m12.shift(-1), m21.shift(1), m21 + &m22.shift(-1)),
            // A⁻¹ = [[λ⁻¹, −1], [0, λ]]
            (Gen::A, true) => Self::new(m11.shift(-1), &m12.shift(1) - m11, m21.shift(-1), &m22.shift(1) - m21),
            // B = [[λ, 0], [2−r, λ⁻¹]]
            (Gen::B, false) => Self::new(
                &(m11 * &l) + &(m12 * &two_minus_r),
                m12.shift(-1),
                &(m21 * &l) + &(m22 * &two_minus_r),
                m22.shift(-1),
            ),
            // B⁻¹ = [[λ⁻¹, 0], [r−2, λ]]
            (Gen::B, true) => Self::new(
                &(m11 * &li) - &(m12 * &two_minus_r),
                m12.shift(1),
                &(m21 * &li) - &(m22 * &two_minus_r),
                m22.shift(1),
            ),
        }
    }

    /// Substitute λ := λ0, r := r0.
    pub fn eval(&self, lambda: &BigRational, r: &BigRational) -> RatMat2 {
        let e = |i: usize, j: usize| self.m[i][j].eval_rat(lambda, r);
        RatMat2 { m: [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]] }
    }
}

/// A = [[λ, 1], [0, λ⁻¹]], B = [[λ, 0], [2−r, λ⁻¹]]
pub fn gen_matrices() -> (LaurentMat2, LaurentMat2) {
    let id = LaurentMat2::identity();
    (id.mul_letter(Gen::A, false), id.mul_letter(Gen::B, false))
}

pub fn eval_word(w: &Word) -> LaurentMat2 {
    let mut acc = LaurentMat2::identity();
    for &(g, e) in w.letters() {
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul_letter(g, e < 0);
        }
    }
    acc
}

/// M^n by repeated squaring; negative n uses the SL₂ inverse.
pub fn mat_power(m: &LaurentMat2, n: i64) -> LaurentMat2 {
    let mut base = if n < 0 { m.sl2_inverse() } else { m.clone() };
    let mut e = n.unsigned_abs();
    let mut acc = LaurentMat2::identity();
    while e > 0 {
        if e & 1 == 1 {
            acc = acc.mul(&base);
        }
        e >>= 1;
        if e > 0 {
            base = base.mul(&base);
        }
    }
    acc
}

/// 2×2 matrix over ℚ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatMat2 {
    pub m: [[BigRational; 2]; 2],
}

impl RatMat2 {
    pub fn identity() -> Self {
        let (o, z) = (BigRational::one(), BigRational::zero());
        RatMat2 { m: [[o.clone(), z.clone()], [z, o]] }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let e = |i: usize, j: usize| &self.m[i][0] * &o.m[0][j] + &self.m[i][1] * &o.m[1][j];
        RatMat2 { m: [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]] }
    }

    pub fn trace(&self) -> BigRational {
        &self.m[0][0] + &self.m[1][1]
    }

    pub fn inverse(&self) -> Self {
        let det = &self.m[0][0] * &self.m[1][1] - &self.m[0][1] * &self.m[1][0];
        let [[a, b], [c, d]] = &self.m;
        RatMat2 { m: [[d / &det, -b / &det], [-c / &det, a / &det]] }
    }
}

/// Numeric A(λ0), B(λ0, r0).
pub fn gen_matrices_at(lambda: &BigRational, r: &BigRational) -> (RatMat2, RatMat2) {
    let (o, z) = (BigRational::one(), BigRational::zero());
    let li = lambda.recip();
    let a = RatMat2 { m: [[lambda.clone(), o.clone()], [z.clone(), li.clone()]] };
    let b = RatMat2 { m: [[lambda.clone(), z], [BigRational::from_integer(2.into()) - r, li]] };
    (a, b)
}

pub fn eval_word_at(w: &Word, lambda: &BigRational, r: &BigRational) -> RatMat2 {
    let (a, b) = gen_matrices_at(lambda, r);
    let (ai, bi) = (a.inverse(), b.inverse());
    let mut acc = RatMat2::identity();
    for &(g, e) in w.letters() {
        let m = match (g, e < 0) {
            (Gen::A, false) => &a,
            (Gen::A, true) => &ai,
            (Gen::B, false) => &b,
            (Gen::B, true) => &bi,
        };
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(m);
        }
    }
    acc
}

/// Rewrites a Laurent polynomial that lies in ℤ[r][y], y = λ² + λ⁻², as a
/// BiPoly with outer variable y and inner variable r.
pub fn laurent_to_y(p: &LaurentPoly) -> Result<BiPoly, RileyError> {
    let y = &LaurentPoly::lambda_pow(2) + &LaurentPoly::lambda_pow(-2);
    let mut rest = p.clone();
    let mut coeffs: Vec<UniPoly> = Vec::new();
    let mut ypows = vec![LaurentPoly::int(1)];
    while let Some(d) = rest.high_exp() {
        if d < 0 || d % 2 != 0 {
            return Err(RileyError::NotInTraceSubring(format!("({})*l^{d}", rest.coeff(d))));
        }
        let e = (d / 2) as usize;
        while ypows.len() <= e {
            let next = ypows.last().unwrap() * &y;
            ypows.push(next);
        }
        let c = rest.coeff(d);
        if coeffs.len() <= e {
            coeffs.resize(e + 1, UniPoly::zero(Var::R));
        }
        coeffs[e] = &coeffs[e] + &c;
        rest = &rest - &ypows[e].scale(&c);
    }
    Ok(BiPoly::new(Var::Y, Var::R, coeffs))
}

/// F_{k,n} = f_n(t)·F_{k,1} − f_{n−1}(t) with F_{k,1} = −Φ_{−k}Φ_{k−1}(y−r) + 1
/// and t = Φ_{−k}Ψ_k(y−r) + 2, expanded in ℤ[y][r].
pub fn riley_poly_j(k: i64, n: i64) -> BiPoly {
    let (t, fk1) = trace_and_f1(k);
    let fn_t = t.compose_into(&f_poly(n));
    let fn1_t = t.compose_into(&f_poly(n - 1));
    &(&fn_t * &fk1) - &fn1_t
}

/// (t, F_{k,1}) as BiPolys in (y, r).
pub fn trace_and_f1(k: i64) -> (BiPoly, BiPoly) {
    let y_minus_r = BiPoly::from_terms(Var::Y, Var::R, &[(1, 1, 0), (-1, 0, 1)]);
    let inner = |p: UniPoly| BiPoly::from_inner(&p.with_var(Var::R), Var::Y, Var::R);
    let phm = phi(-k);
    let t = &(&inner(&phm * &psi(k)) * &y_minus_r) + &BiPoly::constant(2.into(), Var::Y, Var::R);
    let f1 = &BiPoly::constant(1.into(), Var::Y, Var::R) - &(&inner(&phm * &phi(k - 1)) * &y_minus_r);
    (t, f1)
}

/// The same polynomial read off the matrix W = W_k^n as (λ − λ⁻¹)W₁₂ + W₂₂.
pub fn riley_poly_matrix(k: i64, n: i64) -> Result<BiPoly, RileyError> {
    let w = mat_power(&eval_word(&w_k_word(k)), n);
    let diff = &LaurentPoly::lambda_pow(1) - &LaurentPoly::lambda_pow(-1);
    laurent_to_y(&(&(&diff * w.entry(0, 1)) + w.entry(1, 1)))
}

/// Riley polynomial W₁₁ + (λ⁻¹ − λ)W₁₂ of the Schubert word of K(p, q).
pub fn riley_poly_pq(p: i64, q: i64) -> Result<BiPoly, RileyError> {
    let w = eval_word(&schubert_word(p, q)?);
    let diff = &LaurentPoly::lambda_pow(-1) - &LaurentPoly::lambda_pow(1);
    laurent_to_y(&(w.entry(0, 0) + &(&diff * w.entry(0, 1))))
}

/// Deterministic generator for the randomized checks.
pub fn check_rng(tag: u64, k: i64, n: i64, seed: u64) -> ChaCha8Rng {
    let mix = (k as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ (n as u64).wrapping_mul(0xC2B2_AE3D_27D4_EB4F);
    ChaCha8Rng::seed_from_u64(seed ^ mix ^ tag.rotate_left(17))
}

pub const SAMPLE_BOUND: i64 = 100;

pub fn random_rational(rng: &mut impl Rng) -> BigRational {
    let n = rng.gen_range(-SAMPLE_BOUND..=SAMPLE_BOUND);
    let d = rng.gen_range(1..=SAMPLE_BOUND);
    BigRational::new(n.into(), d.into())
}

/// λ0 avoiding {0, ±1}.
pub fn random_lambda(rng: &mut impl Rng) -> BigRational {
    loop {
        let l = random_rational(rng);
        if !l.is_zero() && !l.abs().is_one() {
            return l;
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RandomCheck {
    pub k: i64,
    pub n: i64,
    pub samples: usize,
    pub pass: bool,
    pub vacuous: bool,
    pub first_failure: Option<(String, String)>,
}

/// Compares tr W_k(λ0, r0) with Φ_{−k}(r0)Ψ_k(r0)(y0 − r0) + 2 exactly at
/// random rational points.
pub fn trace_formula_check(k: i64, samples: usize, seed: u64) -> RandomCheck {
    let mut rng = check_rng(1, k, 0, seed);
    let word = w_k_word(k);
    let coef = &phi(-k) * &psi(k);
    let two = BigRational::from_integer(2.into());
    for _ in 0..samples {
        let lambda = random_lambda(&mut rng);
        let r = random_rational(&mut rng);
        let y = &lambda * &lambda + (&lambda * &lambda).recip();
        let tr = eval_word_at(&word, &lambda, &r).trace();
        let formula = coef.eval_rat(&r) * (&y - &r) + &two;
        if tr != formula {
            return RandomCheck {
                k,
                n: 0,
                samples,
                pass: false,
                vacuous: false,
                first_failure: Some((crate::serial::rat_to_string(&lambda), crate::serial::rat_to_string(&r))),
            };
        }
    }
    RandomCheck { k, n: 0, samples, pass: true, vacuous: false, first_failure: None }
}

fn qpoly_from_rats(c: Vec<BigRational>) -> QPoly {
    QPoly::new(c)
}

/// At random λ0, the gcd over ℚ of the four entries of A W_k^n − W_k^n B,
/// as polynomials in r, must match F_{k,n} specialized at y0 = λ0² + λ0⁻².
pub fn ideal_generator_check(k: i64, n: i64, samples: usize, seed: u64) -> RandomCheck {
    let mut rng = check_rng(2, k, n, seed);
    let (a, b) = gen_matrices();
    let wn = mat_power(&eval_word(&w_k_word(k)), n);
    let rel = a.mul(&wn).sub(&wn.mul(&b));
    let f = riley_poly_j(k, n);
    let mut vacuous = false;
    for _ in 0..samples {
        let lambda = random_lambda(&mut rng);
        let y = &lambda * &lambda + (&lambda * &lambda).recip();
        let mut g = QPoly::zero();
        for i in 0..2 {
            for j in 0..2 {
                g = g.gcd(&qpoly_from_rats(rel.entry(i, j).eval_lambda(&lambda)));
            }
        }
        let fy = QPoly::new(f.eval_outer_rat(&y));
        let fy = if fy.is_zero() { fy } else { fy.monic() };
        let ok = if g.is_zero() { fy.is_zero() } else { g.monic() == fy };
        vacuous |= fy.degree() == Some(0);
        if !ok {
            return RandomCheck {
                k,
                n,
                samples,
                pass: false,
                vacuous: false,
                first_failure: Some((crate::serial::rat_to_string(&lambda), String::new())),
            };
        }
    }
    RandomCheck { k, n, samples, pass: true, vacuous, first_failure: None }
}

/// Exact trace of W_k rewritten in (y, r), for symbolic comparison.
pub fn trace_wk_symbolic(k: i64) -> Result<BiPoly, RileyError> {
    laurent_to_y(&eval_word(&w_k_word(k)).trace())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &[(Gen, i64)]) -> Word {
        Word::from_letters(s.iter().copied())
    }

    #[test]
    fn words() {
        use Gen::*;
        assert_eq!(w_k_word(2), w(&[(A, 1), (B, -1), (A, -1), (B, 1)]));
        assert_eq!(w_k_word(-1), w(&[(B, 1), (A, 1)]));
        assert_eq!(w_k_word(0), Word::empty());
        assert_eq!(schubert_word(5, 3).unwrap(), w(&[(A, 1), (B, -1), (A, -1), (B, 1)]));
        assert_eq!(schubert_word(7, 3).unwrap().length(), 6);
        assert!(schubert_word(4, 1).is_err());
        assert!(schubert_word(5, 7).is_err());
        assert!(schubert_word(9, 3).is_err());
    }

    #[test]
    fn generators() {
        let (a, b) = gen_matrices();
        assert_eq!(a.det(), LaurentPoly::int(1));
        assert_eq!(b.det(), LaurentPoly::int(1));
        let r = lp_r(&UniPoly::x(Var::R));
        assert_eq!(a.mul(&b.sl2_inverse()).trace(), r);
        assert_eq!(a.sl2_inverse().mul(&b).trace(), r);
        assert_eq!(eval_word(&Word::empty()), LaurentMat2::identity());
        let wa = eval_word(&w(&[(Gen::A, -2), (Gen::B, 3)]));
        assert_eq!(wa, a.sl2_inverse().mul(&a.sl2_inverse()).mul(&b).mul(&b).mul(&b));
    }

    #[test]
    fn powers() {
        let m = eval_word(&w_k_word(3));
        assert_eq!(mat_power(&m, 2), m.mul(&m));
        assert_eq!(mat_power(&m, -1).mul(&m), LaurentMat2::identity());
        assert_eq!(mat_power(&m, 3).det(), LaurentPoly::int(1));
    }

    #[test]
    fn trace_closed_form_symbolic() {
        for k in -6..=6 {
            let (t, _) = trace_and_f1(k);
            assert_eq!(trace_wk_symbolic(k).unwrap(), t, "k = {k}");
        }
    }

    #[test]
    fn trace_random() {
        assert!(trace_formula_check(-4, 50, 7).pass);
        assert!(trace_formula_check(0, 5, 7).pass);
    }

    #[test]
    fn closed_form_matches_matrix() {
        for k in [-3, 2, 3] {
            for n in [-2, -1, 1, 2] {
                let a = riley_poly_j(k, n);
                let b = riley_poly_matrix(k, n).unwrap();
                assert!(a.eq_up_to_unit(&b), "k={k} n={n}");
            }
        }
        assert_eq!(riley_poly_j(2, 0), BiPoly::constant(1.into(), Var::Y, Var::R));
        assert_eq!(riley_poly_j(2, -1).deg_in(Var::R), Some(2));
    }

    #[test]
    fn ideal_generator() {
        assert!(ideal_generator_check(2, -1, 10, 1).pass);
        assert!(ideal_generator_check(0, 1, 3, 1).pass);
    }

    #[test]
    fn not_in_subring() {
        let p = LaurentPoly::lambda_pow(1);
        assert!(laurent_to_y(&p).is_err());
    }
}
