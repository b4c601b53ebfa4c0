//! Plane models of the character varieties of J(k,l): the standard model C
//! in (r,y), its double cover X in (r,x), the model D in (r,t), and the
//! maps between C and D.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::exactalg::{BiPoly, QPoly, UniPoly, Var};
use crate::polyseq::{phi, psi};
use crate::riley::{riley_poly_j, trace_and_f1};
use crate::serial::rat_to_string;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModelError {
    #[error("k = {k} and l = {l} are both odd; J(k,l) is not a knot")]
    BothOdd { k: i64, l: i64 },
    #[error("indeterminate locus: Psi_k(r0) = 0 at r0 = {0}")]
    Indeterminate(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ModelKind {
    C,
    X,
    D,
    D0,
    D1,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ModelState {
    Empty,
    FullPlane,
    LineUnion,
    Curve,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveModel {
    pub kind: ModelKind,
    pub k: i64,
    pub l: i64,
    pub state: ModelState,
    /// Primitive, with positive leading coefficient in the stored orientation.
    pub equation: BiPoly,
    /// (first, second) coordinate; the second is the BiPoly inner variable
    /// for C and X, and the first is the outer variable for D.
    pub vars: (Var, Var),
    pub bidegree: Option<(usize, usize)>,
    /// Set when (k, l) was exchanged to make l even.
    pub swapped: bool,
}

impl Serialize for CurveModel {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("CurveModel", 8)?;
        st.serialize_field("kind", &self.kind)?;
        st.serialize_field("k", &self.k)?;
        st.serialize_field("l", &self.l)?;
        st.serialize_field("state", &self.state)?;
        st.serialize_field("equation", &self.equation.to_string())?;
        st.serialize_field("vars", &[self.vars.0.name(), self.vars.1.name()])?;
        st.serialize_field("bidegree", &self.bidegree)?;
        st.serialize_field("swapped", &self.swapped)?;
        st.end()
    }
}

impl CurveModel {
    pub fn is_curve(&self) -> bool {
        self.state == ModelState::Curve
    }
}

/// Returns (k, l, swapped) with l even, exchanging the arguments if needed.
pub fn orient_kl(k: i64, l: i64) -> Result<(i64, i64, bool), ModelError> {
    if l % 2 == 0 {
        Ok((k, l, false))
    } else if k % 2 == 0 {
        Ok((l, k, true))
    } else {
        Err(ModelError::BothOdd { k, l })
    }
}

/// f_n(t)(Φ_{−k}Φ_{k−1}(y−r) − 1) + f_{n−1}(t), t = Φ_{−k}Ψ_k(y−r) + 2,
/// with outer variable y and inner variable r. Not normalized.
pub fn c_raw(k: i64, n: i64) -> BiPoly {
    -&riley_poly_j(k, n)
}

fn classify_plane(eq: &BiPoly) -> ModelState {
    if eq.is_zero() {
        ModelState::FullPlane
    } else if eq.is_constant() {
        ModelState::Empty
    } else {
        ModelState::Curve
    }
}

pub fn c_model(k: i64, l: i64) -> Result<CurveModel, ModelError> {
    let (k, l, swapped) = orient_kl(k, l)?;
    let eq = c_raw(k, l / 2);
    let state = if k * l == 0 { ModelState::Empty } else { classify_plane(&eq) };
    Ok(CurveModel {
        kind: ModelKind::C,
        k,
        l,
        state,
        equation: eq.normalized(),
        vars: (Var::R, Var::Y),
        bidegree: None,
        swapped,
    })
}

pub fn x_model(k: i64, l: i64) -> Result<CurveModel, ModelError> {
    let c = c_model(k, l)?;
    let x2m2 = UniPoly::from_i64s(&[-2, 0, 1], Var::X);
    let eq = c.equation.subst_outer_poly(&x2m2).normalized();
    Ok(CurveModel { kind: ModelKind::X, equation: eq, vars: (Var::R, Var::X), ..c })
}

fn in_r(p: UniPoly) -> BiPoly {
    BiPoly::from_outer(&p.with_var(Var::R), Var::R, Var::T)
}

fn in_t(p: UniPoly) -> BiPoly {
    BiPoly::from_inner(&p.with_var(Var::T), Var::R, Var::T)
}

/// Φ_{k+1}(r)Φ_{l−1}(t) − Φ_{k−1}(r)Φ_{l+1}(t), outer r, inner t.
pub fn d_equation(k: i64, l: i64) -> BiPoly {
    &(&in_r(phi(k + 1)) * &in_t(phi(l - 1))) - &(&in_r(phi(k - 1)) * &in_t(phi(l + 1)))
}

/// Ψ_k(r)Φ_{l−1}(t) − Φ_{k−1}(r)Ψ_l(t)
pub fn d_equation_alt(k: i64, l: i64) -> BiPoly {
    &(&in_r(psi(k)) * &in_t(phi(l - 1))) - &(&in_r(phi(k - 1)) * &in_t(psi(l)))
}

/// Bidegree of D(k, 2n) as stated for the nondegenerate cases.
pub fn expected_bidegree(k: i64, n: i64) -> Option<(usize, usize)> {
    if k == 0 && n == 0 {
        return None;
    }
    if k.abs() == 1 {
        if n == 0 || n == k {
            return None;
        }
        let kn = k * n;
        return Some(if kn > 0 { (0, (kn - 1) as usize) } else { (0, (-kn) as usize) });
    }
    Some(((k.abs() / 2) as usize, n.unsigned_abs() as usize))
}

/// D(k,l) from both defining forms, which must agree.
pub fn d_model(k: i64, l: i64) -> Result<CurveModel, ModelError> {
    let eq = d_equation(k, l);
    let alt = d_equation_alt(k, l);
    if eq != alt {
        return Err(ModelError::Invariant(format!("the two equations for D({k},{l}) differ")));
    }
    let mut state = classify_plane(&eq);
    let bidegree = if state == ModelState::Curve {
        Some((eq.deg_in(Var::R).unwrap_or(0), eq.deg_in(Var::T).unwrap_or(0)))
    } else {
        None
    };
    if let Some((a, b)) = bidegree {
        if a == 0 || b == 0 || (k == l && k.abs() == 2) {
            state = ModelState::LineUnion;
        }
    }
    Ok(CurveModel {
        kind: ModelKind::D,
        k,
        l,
        state,
        equation: eq.normalized(),
        vars: (Var::R, Var::T),
        bidegree,
        swapped: false,
    })
}

/// Splits D(l,l) into the diagonal D0: r = t and the residual D1.
pub fn d_split(l: i64) -> Result<(CurveModel, CurveModel), ModelError> {
    if l == 0 || l % 2 != 0 {
        return Err(ModelError::Invariant(format!("d_split needs a nonzero even l, got {l}")));
    }
    let d = d_equation(l, l);
    let diag = BiPoly::from_terms(Var::R, Var::T, &[(1, 1, 0), (-1, 0, 1)]);
    let q = d
        .div_exact(&diag)
        .ok_or_else(|| ModelError::Invariant(format!("r - t does not divide D({l},{l})")))?;
    let d0 = CurveModel {
        kind: ModelKind::D0,
        k: l,
        l,
        state: ModelState::LineUnion,
        equation: diag,
        vars: (Var::R, Var::T),
        bidegree: Some((1, 1)),
        swapped: false,
    };
    let state = classify_plane(&q);
    let bidegree = if q.is_zero() {
        None
    } else {
        Some((q.deg_in(Var::R).unwrap_or(0), q.deg_in(Var::T).unwrap_or(0)))
    };
    let d1 = CurveModel {
        kind: ModelKind::D1,
        k: l,
        l,
        state,
        equation: q.normalized(),
        vars: (Var::R, Var::T),
        bidegree,
        swapped: false,
    };
    Ok((d0, d1))
}

/// t0 = Φ_{−k}(r0)Ψ_k(r0)(y0 − r0) + 2
pub fn sigma_push(k: i64, r0: &BigRational, y0: &BigRational) -> BigRational {
    (&phi(-k) * &psi(k)).eval_rat(r0) * (y0 - r0) + BigRational::from_integer(2.into())
}

/// y0 = r0 + (t0 − 2)/(Φ_{−k}(r0)Ψ_k(r0))
pub fn sigma_pull(k: i64, r0: &BigRational, t0: &BigRational) -> Result<BigRational, ModelError> {
    let c = (&phi(-k) * &psi(k)).eval_rat(r0);
    if c.is_zero() {
        return Err(ModelError::Indeterminate(rat_to_string(r0)));
    }
    Ok(r0 + (t0 - BigRational::from_integer(2.into())) / c)
}

/// Substitute the outer variable of `f` by `x`; the inner variables agree.
fn subst_outer_by(f: &BiPoly, x: &BiPoly) -> BiPoly {
    let mut acc = BiPoly::zero(x.outer(), x.inner());
    for c in f.coeffs().iter().rev() {
        acc = &(&acc * x) + &BiPoly::from_inner(c, x.outer(), x.inner());
    }
    acc
}

/// Exact pushforward certificate: D_alt(r, σ(r,y)) = −Ψ_k(r)·C(r,y).
pub fn pushforward_identity(k: i64, l: i64) -> bool {
    let n = l / 2;
    let (t, _) = trace_and_f1(k);
    let d = d_equation_alt(k, l).oriented(Var::T);
    let lhs = subst_outer_by(&d, &t);
    let psi_k = BiPoly::from_inner(&psi(k).with_var(Var::R), Var::Y, Var::R);
    let rhs = -&(&psi_k * &c_raw(k, n));
    lhs == rhs
}

fn qp(p: &UniPoly) -> QPoly {
    QPoly::from_uni(p)
}

#[derive(Clone, Debug, Serialize)]
pub struct SpecialPointsReport {
    pub k: i64,
    pub l: i64,
    /// C mod Ψ_k(r) is linear in y.
    pub linear_after_reduction: bool,
    /// The fiber over Ψ_k = 0 contains no whole line.
    pub no_vertical_line: bool,
    /// Roots of Ψ_k that carry a point of C: Ψ_k/gcd(Ψ_k, c1), monic.
    #[serde(serialize_with = "crate::serial::display::serialize")]
    pub carrier: UniPoly,
    #[serde(serialize_with = "crate::serial::rat_opt")]
    pub point_y: Option<BigRational>,
    pub expected_y: Option<String>,
    /// For D: D ≡ −Φ_{k−1}(r)Ψ_l(t) modulo Ψ_k(r), gcd(Ψ_k, Φ_{k−1}) = 1,
    /// and symmetrically in t.
    pub d_equivalences: bool,
    pub pass: bool,
}

/// Reduce each coefficient (in the inner variable) of `f` modulo m.
fn reduce_inner(f: &BiPoly, m: &QPoly) -> Vec<QPoly> {
    f.coeffs().iter().map(|c| qp(c).rem(m)).collect()
}

fn trim(v: &mut Vec<QPoly>) {
    while v.last().is_some_and(QPoly::is_zero) {
        v.pop();
    }
}

/// Checks where C(k,l) meets Ψ_k(r) = 0, and the matching statement on D.
pub fn special_points_check(k: i64, l: i64) -> Result<SpecialPointsReport, ModelError> {
    let (k, l, _) = orient_kl(k, l)?;
    if k * l == 0 {
        return Err(ModelError::Invariant("special points need kl != 0".into()));
    }
    let n = l / 2;
    let psi_k = qp(&psi(k));
    let c = c_raw(k, n);
    let mut red = reduce_inner(&c, &psi_k);
    trim(&mut red);
    let linear = red.len() <= 2;
    let c0 = red.first().cloned().unwrap_or_else(QPoly::zero);
    let c1 = red.get(1).cloned().unwrap_or_else(QPoly::zero);
    let g = psi_k.gcd(&c1);
    let no_vertical = psi_k.gcd(&g.gcd(&c0)).degree() == Some(0);
    let carrier_q = psi_k.divrem(&g).0.monic();
    let carrier = carrier_q.to_uni(Var::R);
    let two = BigRational::from_integer(2.into());
    let r_minus_2 = QPoly::new(vec![-two.clone(), BigRational::one()]);
    let (point_y, expected_y, point_ok) = if k % 2 == 0 {
        let y0 = -c0.eval(&two) / c1.eval(&two);
        let expect = two.clone() - BigRational::new(4.into(), BigInt::from(k * l));
        let on_curve = c.eval_rat(&y0, &two).is_zero();
        let ok = carrier_q == r_minus_2 && y0 == expect && on_curve;
        (Some(y0), Some(rat_to_string(&expect)), ok)
    } else {
        (None, None, carrier_q.degree() == Some(0))
    };

    let d_ok = d_equivalence(k, l) && d_equivalence(l, k);
    let pass = linear && no_vertical && point_ok && d_ok;
    Ok(SpecialPointsReport {
        k,
        l,
        linear_after_reduction: linear,
        no_vertical_line: no_vertical,
        carrier,
        point_y,
        expected_y,
        d_equivalences: d_ok,
        pass,
    })
}

/// On Ψ_k(r) = 0, D(k,l) reduces to −Φ_{k−1}(r)Ψ_l(t), with Φ_{k−1} a unit there.
fn d_equivalence(k: i64, l: i64) -> bool {
    let m = qp(&psi(k));
    if m.degree().is_none_or(|d| d == 0) {
        return true;
    }
    let unit = m.gcd(&qp(&phi(k - 1))).degree() == Some(0);
    let d = d_equation_alt(k, l).oriented(Var::T);
    let target = (&in_r(-phi(k - 1)) * &in_t(psi(l))).oriented(Var::T);
    let mut a = reduce_inner(&d, &m);
    let mut b = reduce_inner(&target, &m);
    trim(&mut a);
    trim(&mut b);
    unit && a == b
}

/// Point with exact coordinates, for reports.
pub fn format_point(a: &BigRational, b: &BigRational) -> String {
    format!("({}, {})", rat_to_string(a), rat_to_string(b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::parse_bi;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn c_examples() {
        assert_eq!(c_model(3, 0).unwrap().state, ModelState::Empty);
        let c = c_model(2, -2).unwrap();
        assert_eq!(c.state, ModelState::Curve);
        let at2 = c.equation.eval_outer_rat(&rat(2, 1));
        assert_eq!(QPoly::new(at2).degree(), Some(2));
        let x = x_model(2, -2).unwrap();
        // C(2,-2) = (r-1)(y-r) - 1 is linear in y
        assert_eq!(c.equation.deg_in(Var::Y), Some(1));
        assert_eq!(x.equation.deg_in(Var::X), Some(2));
        for (k, l) in [(3, 4), (-5, 6), (4, -8)] {
            let dy = c_model(k, l).unwrap().equation.deg_in(Var::Y).unwrap();
            assert_eq!(x_model(k, l).unwrap().equation.deg_in(Var::X), Some(2 * dy));
        }
        let s = c_model(3, 2).unwrap();
        assert!(!s.swapped);
        let s = c_model(2, 3).unwrap();
        assert!(s.swapped && s.k == 3 && s.l == 2);
        assert!(c_model(3, 3).is_err());
    }

    #[test]
    fn d_examples() {
        let d = d_model(2, 2).unwrap();
        assert_eq!(d.equation, parse_bi("r-t", Var::R, Var::T).unwrap());
        assert_eq!(d.state, ModelState::LineUnion);
        assert_eq!(d_model(2, -2).unwrap().bidegree, Some((1, 1)));
        assert_eq!(d_model(1, 4).unwrap().bidegree, Some((0, 1)));
        assert_eq!(d_model(1, 4).unwrap().state, ModelState::LineUnion);
        assert_eq!(d_model(0, 0).unwrap().state, ModelState::FullPlane);
        assert_eq!(d_model(1, 2).unwrap().state, ModelState::Empty);
        assert_eq!(d_model(-1, -2).unwrap().state, ModelState::Empty);
        assert_eq!(d_model(1, 0).unwrap().state, ModelState::Empty);
    }

    #[test]
    fn d_symmetries() {
        for k in -7..=7 {
            for l in -7..=7 {
                let a = d_model(k, l).unwrap().equation;
                assert_eq!(a, d_model(-k, -l).unwrap().equation, "({k},{l})");
                let b = d_model(l, k).unwrap().equation;
                assert!(a.swap_labels().eq_up_to_unit(&b) || (a.is_zero() && b.is_zero()), "({k},{l})");
            }
        }
    }

    #[test]
    fn bidegrees_match() {
        for k in -12i64..=12 {
            for n in -6i64..=6 {
                let Some(exp) = expected_bidegree(k, n) else { continue };
                let d = d_model(k, 2 * n).unwrap();
                assert_eq!(d.bidegree, Some(exp), "k={k} n={n}");
            }
        }
    }

    #[test]
    fn split_examples() {
        let (_, d1) = d_split(2).unwrap();
        assert_eq!(d1.state, ModelState::Empty);
        assert_eq!(d1.bidegree, Some((0, 0)));
        assert_eq!(d_split(4).unwrap().1.bidegree, Some((1, 1)));
        assert_eq!(d_split(-6).unwrap().1.bidegree, Some((2, 2)));
    }

    #[test]
    fn sigma_maps() {
        assert_eq!(sigma_push(4, &rat(2, 1), &rat(23, 12)), rat(2, 1));
        assert_eq!(sigma_push(3, &rat(5, 7), &rat(5, 7)), rat(2, 1));
        let r = rat(3, 5);
        let y = rat(-7, 4);
        let t = sigma_push(2, &r, &y);
        assert_eq!(sigma_pull(2, &r, &t).unwrap(), y);
        assert!(sigma_pull(2, &rat(2, 1), &rat(1, 1)).is_err());
    }

    #[test]
    fn pushforward() {
        for k in [-5, -2, 2, 3, 4] {
            for l in [-4, -2, 2, 6] {
                assert!(pushforward_identity(k, l), "({k},{l})");
            }
        }
    }

    #[test]
    fn special_points() {
        let r = special_points_check(4, 6).unwrap();
        assert!(r.pass, "{r:?}");
        assert_eq!(r.point_y, Some(rat(11, 6)));
        let r = special_points_check(3, 4).unwrap();
        assert!(r.pass, "{r:?}");
        assert!(r.point_y.is_none());
    }
}
