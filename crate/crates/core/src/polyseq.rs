//! The Chebyshev-like sequences f_j, g_j, Φ_k, Ψ_k and the derived
//! polynomials Δ_k, F_n, G_n, H_n, all in ℤ[u].

use std::sync::RwLock;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::exactalg::{RatPoly, UniPoly, Var};

static F_TABLE: RwLock<Vec<UniPoly>> = RwLock::new(Vec::new());

fn u() -> UniPoly {
    UniPoly::x(Var::U)
}

fn int(c: i64) -> UniPoly {
    UniPoly::constant(BigInt::from(c), Var::U)
}

/// f_0 = 0, f_1 = 1, f_{j+1} = u f_j − f_{j−1}, for all integers j.
pub fn f_poly(j: i64) -> UniPoly {
    if j < 0 {
        return -f_poly(-j);
    }
    let j = j as usize;
    if let Some(p) = F_TABLE.read().unwrap().get(j) {
        return p.clone();
    }
    let mut t = F_TABLE.write().unwrap();
    if t.is_empty() {
        t.push(UniPoly::zero(Var::U));
        t.push(UniPoly::one(Var::U));
    }
    let x = u();
    while t.len() <= j {
        let n = t.len();
        let next = &(&x * &t[n - 1]) - &t[n - 2];
        t.push(next);
    }
    t[j].clone()
}

/// g_j = f_j − f_{j−1}
pub fn g_poly(j: i64) -> UniPoly {
    &f_poly(j) - &f_poly(j - 1)
}

/// Φ_{2j} = f_j, Φ_{2j−1} = g_j
pub fn phi(k: i64) -> UniPoly {
    if k.rem_euclid(2) == 0 {
        f_poly(k / 2)
    } else {
        g_poly((k + 1).div_euclid(2))
    }
}

/// Ψ_k = Φ_{k+1} − Φ_{k−1}
pub fn psi(k: i64) -> UniPoly {
    &phi(k + 1) - &phi(k - 1)
}

/// p' q − p q'
fn wronskian(p: &UniPoly, q: &UniPoly) -> UniPoly {
    &(&p.deriv() * q) - &(p * &q.deriv())
}

/// Δ_k = Φ'_{k+1}Φ_{k−1} − Φ_{k+1}Φ'_{k−1}
pub fn delta(k: i64) -> UniPoly {
    wronskian(&phi(k + 1), &phi(k - 1))
}

/// F_n = f'_{n+1} f_n − f_{n+1} f'_n
pub fn big_f(n: i64) -> UniPoly {
    wronskian(&f_poly(n + 1), &f_poly(n))
}

/// G_n = g'_{n+1} g_n − g_{n+1} g'_n
pub fn big_g(n: i64) -> UniPoly {
    wronskian(&g_poly(n + 1), &g_poly(n))
}

/// H_n = g''_{n+1} g_n − g_{n+1} g''_n, computed from second derivatives.
pub fn big_h(n: i64) -> UniPoly {
    let a = g_poly(n + 1);
    let b = g_poly(n);
    &(&a.deriv().deriv() * &b) - &(&a * &b.deriv().deriv())
}

/// h_k = Φ_{k+1} / Φ_{k−1}
pub fn h_ratio(k: i64) -> Option<RatPoly> {
    RatPoly::new(phi(k + 1), phi(k - 1))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SeqTag {
    F,
    G,
    Phi,
    Psi,
    Delta,
    BigG,
    BigF,
    BigH,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SeqKind {
    pub tag: SeqTag,
    pub index: i64,
}

impl SeqKind {
    pub fn poly(self) -> UniPoly {
        let i = self.index;
        match self.tag {
            SeqTag::F => f_poly(i),
            SeqTag::G => g_poly(i),
            SeqTag::Phi => phi(i),
            SeqTag::Psi => psi(i),
            SeqTag::Delta => delta(i),
            SeqTag::BigG => big_g(i),
            SeqTag::BigF => big_f(i),
            SeqTag::BigH => big_h(i),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityResult {
    pub name: &'static str,
    pub pass: bool,
    pub first_counterexample: Option<i64>,
    pub checked: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityReport {
    pub range: i64,
    pub results: Vec<IdentityResult>,
}

impl IdentityReport {
    pub fn all_pass(&self) -> bool {
        self.results.iter().all(|r| r.pass)
    }
}

fn check(name: &'static str, idx: impl Iterator<Item = i64>, f: impl Fn(i64) -> bool) -> IdentityResult {
    let mut checked = 0;
    for i in idx {
        checked += 1;
        if !f(i) {
            return IdentityResult { name, pass: false, first_counterexample: Some(i), checked };
        }
    }
    IdentityResult { name, pass: true, first_counterexample: None, checked }
}

/// s^d f_j(s + 1/s) with d = deg f_j, as a polynomial in s.
fn cleared_at_s_plus_inverse(p: &UniPoly) -> UniPoly {
    let Some(d) = p.degree() else {
        return UniPoly::zero(Var::S);
    };
    let s2p1 = UniPoly::from_i64s(&[1, 0, 1], Var::S);
    let mut acc = UniPoly::zero(Var::S);
    for (i, a) in p.coeffs().iter().enumerate() {
        let term = s2p1.pow(i as u32).shift_up(d - i).scale(a);
        acc = &acc + &term;
    }
    acc
}

fn laurent_f_check(j: i64) -> bool {
    let f = f_poly(j);
    if j == 0 {
        return f.is_zero();
    }
    let lhs = &cleared_at_s_plus_inverse(&f) * &UniPoly::from_i64s(&[-1, 0, 1], Var::S);
    let n = 2 * j.unsigned_abs() as usize;
    let sign = if j > 0 { BigInt::one() } else { -BigInt::one() };
    let rhs = &UniPoly::monomial(sign.clone(), n, Var::S) - &UniPoly::constant(sign, Var::S);
    lhs == rhs
}

/// Verifies the stated identities among the sequences for all indices with
/// |index| ≤ range.
pub fn identity_suite(range: i64) -> IdentityReport {
    let all = || -range..=range;
    let nonzero = move || (-range..=range).filter(|&i| i != 0);
    let x = u();
    let mut results = vec![
        check("f(-j) = -f(j)", all(), |j| f_poly(-j) == -f_poly(j)),
        check("downward recursion f(j-1) = u f(j) - f(j+1)", all(), |j| {
            f_poly(j - 1) == &(&x * &f_poly(j)) - &f_poly(j + 1)
        }),
        check("g(-j) = g(j+1)", all(), |j| g_poly(-j) == g_poly(j + 1)),
        check("deg f(j) = |j|-1", nonzero(), |j| {
            f_poly(j).degree_i64() == j.abs() - 1
        }),
        check("deg g(j) = j-1 (j>0), -j (j<=0)", all(), |j| {
            let d = g_poly(j).degree_i64();
            if j > 0 { d == j - 1 } else { d == -j }
        }),
        check("f(j)(2) = j and g(j)(2) = 1", all(), |j| {
            f_poly(j).eval_i64(2) == BigInt::from(j) && g_poly(j).eval_i64(2).is_one()
        }),
        check("f(j-1) f(j+1) = f(j)^2 - 1", all(), |j| {
            &f_poly(j - 1) * &f_poly(j + 1) == &(&f_poly(j) * &f_poly(j)) - &int(1)
        }),
        check("g(j) g(j+1) = (u-2) f(j)^2 + 1", all(), |j| {
            &g_poly(j) * &g_poly(j + 1)
                == &(&(&x - &int(2)) * &(&f_poly(j) * &f_poly(j))) + &int(1)
        }),
        check("f(j)(s+1/s) (s-1/s) = s^j - s^-j", all(), laurent_f_check),
        check("Phi(k+2) = u Phi(k) - Phi(k-2)", all(), |k| {
            phi(k + 2) == &(&x * &phi(k)) - &phi(k - 2)
        }),
        check("Psi(k+2) = u Psi(k) - Psi(k-2)", all(), |k| {
            psi(k + 2) == &(&x * &psi(k)) - &psi(k - 2)
        }),
        check("Phi(k) = (-1)^(k+1) Phi(-k)", all(), |k| {
            let s = if (k + 1) % 2 == 0 { phi(-k) } else { -phi(-k) };
            phi(k) == s
        }),
        check("Psi(k) = (-1)^(k+1) Psi(-k)", all(), |k| {
            let s = if (k + 1) % 2 == 0 { psi(-k) } else { -psi(-k) };
            psi(k) == s
        }),
        check("deg Phi(k) = floor((|k|-1)/2)", nonzero(), |k| {
            phi(k).degree_i64() == (k.abs() - 1).div_euclid(2)
        }),
        check("Psi(2j) = (u-2) f(j) and Psi(2j-1) = g(j)", all(), |j| {
            psi(2 * j) == &(&x - &int(2)) * &f_poly(j) && psi(2 * j - 1) == g_poly(j)
        }),
        check("1 = f(j-1) g(j-1) - f(j-2) g(j)", all(), |j| {
            (&(&f_poly(j - 1) * &g_poly(j - 1)) - &(&f_poly(j - 2) * &g_poly(j))) == int(1)
        }),
        check("gcd(Phi(j+1), Phi(j-1)) = gcd(Psi(j), Phi(j-1)) = 1", all(), |j| {
            let one = int(1);
            phi(j + 1).gcd(&phi(j - 1)) == one && psi(j).gcd(&phi(j - 1)) == one
        }),
        check("f(n) separable (n != 0)", nonzero(), |n| f_poly(n).is_separable()),
        check("F(n), G(n) have leading coefficient +-1", nonzero(), |n| {
            let unit = |p: UniPoly| p.lead().is_some_and(|l| l.magnitude().is_one());
            unit(big_g(n)) && (n == -1 || unit(big_f(n)))
        }),
        check("(u+2) G(n) = f(2n) + 2n", all(), |n| {
            &(&x + &int(2)) * &big_g(n) == &f_poly(2 * n) + &int(2 * n)
        }),
        check("G(n)(2) = n and 3 G(n)(-2) = n(4n^2-1)", all(), |n| {
            let g = big_g(n);
            g.eval_i64(2) == BigInt::from(n)
                && g.eval_i64(-2) * 3 == BigInt::from(n * (4 * n * n - 1))
        }),
        check("2 - u = g(n+1)^2 + g(n)^2 - u g(n) g(n+1)", all(), |n| {
            let (a, b) = (g_poly(n + 1), g_poly(n));
            &(&(&a * &a) + &(&b * &b)) - &(&x * &(&a * &b)) == &int(2) - &x
        }),
        check("(4-u^2) G(n) = (2n+1) g(n)^2 + (2n-1) g(n+1)^2 - 2nu g(n) g(n+1)", all(), |n| {
            let (a, b) = (g_poly(n + 1), g_poly(n));
            let lhs = &UniPoly::from_i64s(&[4, 0, -1], Var::U) * &big_g(n);
            let rhs = &(&(&b * &b).scale_i64(2 * n + 1) + &(&a * &a).scale_i64(2 * n - 1))
                - &(&x * &(&a * &b)).scale_i64(2 * n);
            lhs == rhs
        }),
        check("(4-u^2) G(n) = g(n)^2 - g(n+1)^2 - 2n(u-2)", all(), |n| {
            let (a, b) = (g_poly(n + 1), g_poly(n));
            let lhs = &UniPoly::from_i64s(&[4, 0, -1], Var::U) * &big_g(n);
            let rhs = &(&(&b * &b) - &(&a * &a)) - &(&x - &int(2)).scale_i64(2 * n);
            lhs == rhs
        }),
        check("(u^2-4) F(n) = f(n+1)^2 - f(n)^2 - (2n+1)", all(), |n| {
            let (a, b) = (f_poly(n + 1), f_poly(n));
            let lhs = &UniPoly::from_i64s(&[-4, 0, 1], Var::U) * &big_f(n);
            let rhs = &(&(&a * &a) - &(&b * &b)) - &int(2 * n + 1);
            lhs == rhs
        }),
        check(
            "(u-2)(u+2)^2 H(n) = 2((n-1) f(2n+1) + f(2n) - (n+1) f(2n-1) - nu + 2n)",
            all(),
            |n| {
                let up2 = &x + &int(2);
                let lhs = &(&(&x - &int(2)) * &(&up2 * &up2)) * &big_h(n);
                let rhs = &(&(&f_poly(2 * n + 1).scale_i64(n - 1) + &f_poly(2 * n))
                    - &f_poly(2 * n - 1).scale_i64(n + 1))
                    + &UniPoly::from_i64s(&[2 * n, -n], Var::U);
                lhs == rhs.scale_i64(2)
            },
        ),
        check("Delta(2m) = G(m) and Delta(2m+1) = F(m)", all(), |m| {
            delta(2 * m) == big_g(m) && delta(2 * m + 1) == big_f(m)
        }),
    ];
    results.retain(|r| r.checked > 0 || range == 0);
    IdentityReport { range, results }
}

/// Evaluate f_j(2) without building the polynomial; used as a quick oracle.
pub fn f_at_two(j: i64) -> BigInt {
    let (mut a, mut b) = (BigInt::zero(), BigInt::one());
    if j == 0 {
        return a;
    }
    for _ in 1..j.abs() {
        let c = BigInt::from(2) * &b - &a;
        a = b;
        b = c;
    }
    if j < 0 {
        -b
    } else {
        b
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::parse_uni;

    fn p(s: &str) -> UniPoly {
        parse_uni(s, Var::U).unwrap()
    }

    #[test]
    fn small_values() {
        assert_eq!(f_poly(2), p("u"));
        assert_eq!(f_poly(-3), p("-u^2+1"));
        assert_eq!(f_poly(5).eval_i64(2), BigInt::from(5));
        assert_eq!(phi(4), p("u"));
        assert_eq!(psi(6), &p("u-2") * &f_poly(3));
        assert_eq!(phi(-5), phi(5));
        assert_eq!(phi(-4), -phi(4));
    }

    #[test]
    fn derived_polys() {
        assert_eq!(big_g(2), p("u^2-2*u+2"));
        for n in -6..=6 {
            assert_eq!(big_g(n).eval_i64(2), BigInt::from(n));
        }
        assert_eq!(big_g(3).eval_i64(-2), BigInt::from(35));
        assert_eq!(big_g(1), p("1"));
    }

    #[test]
    fn h_ratio_reduces() {
        let h = h_ratio(4).unwrap();
        assert_eq!(h.numerator(), &g_poly(3));
        assert_eq!(h.denominator(), &g_poly(2));
    }

    #[test]
    fn suite_passes() {
        let rep = identity_suite(12);
        for r in &rep.results {
            assert!(r.pass, "{} failed at {:?}", r.name, r.first_counterexample);
        }
    }

    #[test]
    fn start_identity_at_one() {
        let (a, b) = (g_poly(2), g_poly(1));
        let lhs = &(&(&a * &a) + &(&b * &b)) - &(&p("u") * &(&a * &b));
        assert_eq!(lhs, p("2-u"));
    }

    #[test]
    fn f_at_two_matches() {
        for j in -10..=10 {
            assert_eq!(f_at_two(j), f_poly(j).eval_i64(2));
        }
    }
}
