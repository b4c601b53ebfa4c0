//! Subresultant pseudo-remainder sequences over an integral domain.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::poly::UniPoly;

/// Coefficient rings the resultant code runs over: ℤ and ℤ[x].
pub trait Domain: Clone + PartialEq {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero_elt(&self) -> bool;
    fn add_elt(&self, o: &Self) -> Self;
    fn sub_elt(&self, o: &Self) -> Self;
    fn mul_elt(&self, o: &Self) -> Self;
    fn neg_elt(&self) -> Self;
    /// Division known to be exact; panics otherwise.
    fn div_exact_elt(&self, o: &Self) -> Self;

    fn pow_elt(&self, e: usize) -> Self {
        let mut acc = self.one_like();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_elt(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_elt(&base);
            }
        }
        acc
    }
}

impl Domain for BigInt {
    fn zero_like(&self) -> Self {
        BigInt::zero()
    }
    fn one_like(&self) -> Self {
        BigInt::one()
    }
    fn is_zero_elt(&self) -> bool {
        self.is_zero()
    }
    fn add_elt(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_elt(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_elt(&self, o: &Self) -> Self {
        self * o
    }
    fn neg_elt(&self) -> Self {
        -self
    }
    fn div_exact_elt(&self, o: &Self) -> Self {
        let (q, r) = self.div_rem(o);
        assert!(r.is_zero(), "inexact integer division in subresultant sequence");
        q
    }
}

impl Domain for UniPoly {
    fn zero_like(&self) -> Self {
        UniPoly::zero(self.var())
    }
    fn one_like(&self) -> Self {
        UniPoly::one(self.var())
    }
    fn is_zero_elt(&self) -> bool {
        self.is_zero()
    }
    fn add_elt(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_elt(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_elt(&self, o: &Self) -> Self {
        self * o
    }
    fn neg_elt(&self) -> Self {
        -self
    }
    fn div_exact_elt(&self, o: &Self) -> Self {
        self.div_exact(o)
            .expect("inexact polynomial division in subresultant sequence")
    }
}

fn trimmed<D: Domain>(mut v: Vec<D>) -> Vec<D> {
    while v.last().is_some_and(|c| c.is_zero_elt()) {
        v.pop();
    }
    v
}

/// lc(b)^(deg a - deg b + 1) · a  mod  b, coefficient vectors low to high.
pub fn pseudo_rem<D: Domain>(a: &[D], b: &[D]) -> Vec<D> {
    let b = trimmed(b.to_vec());
    let mut r = trimmed(a.to_vec());
    let Some(lcb) = b.last().cloned() else {
        panic!("pseudo-remainder by zero");
    };
    let db = b.len() - 1;
    if r.len() < b.len() {
        return r;
    }
    let mut e = r.len() - b.len() + 1;
    while !r.is_empty() && r.len() > db {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - db;
        for c in r.iter_mut() {
            *c = c.mul_elt(&lcb);
        }
        for (j, bj) in b.iter().enumerate() {
            r[shift + j] = r[shift + j].sub_elt(&lr.mul_elt(bj));
        }
        r = trimmed(r);
        e -= 1;
    }
    if e > 0 {
        let f = lcb.pow_elt(e);
        for c in r.iter_mut() {
            *c = c.mul_elt(&f);
        }
    }
    r
}

/// Resultant of two polynomials given as coefficient vectors (low to high)
/// over a domain, via the subresultant PRS. `unit` supplies the ring's one.
///
/// Convention: Res(A, B) = lc(A)^deg B · ∏ B(α) over the roots α of A, which
/// equals the Sylvester determinant with A's rows first.
pub fn resultant_coeffs<D: Domain>(a: &[D], b: &[D], unit: &D) -> D {
    let mut a = trimmed(a.to_vec());
    let mut b = trimmed(b.to_vec());
    if a.is_empty() || b.is_empty() {
        return unit.zero_like();
    }
    let mut da = a.len() - 1;
    let mut db = b.len() - 1;
    if da == 0 {
        return a[0].pow_elt(db);
    }
    if db == 0 {
        return b[0].pow_elt(da);
    }
    let mut s_neg = false;
    if da < db {
        std::mem::swap(&mut a, &mut b);
        std::mem::swap(&mut da, &mut db);
        if da % 2 == 1 && db % 2 == 1 {
            s_neg = true;
        }
    }
    let mut g = unit.one_like();
    let mut h = unit.one_like();
    loop {
        let delta = da - db;
        if da % 2 == 1 && db % 2 == 1 {
            s_neg = !s_neg;
        }
        let r = pseudo_rem(&a, &b);
        if r.is_empty() {
            return unit.zero_like();
        }
        a = b;
        da = db;
        let denom = g.mul_elt(&h.pow_elt(delta));
        b = r.iter().map(|c| c.div_exact_elt(&denom)).collect();
        db = b.len() - 1;
        g = a[da].clone();
        h = if delta == 0 {
            h
        } else {
            g.pow_elt(delta).div_exact_elt(&h.pow_elt(delta - 1))
        };
        if db == 0 {
            break;
        }
    }
    // h <- lc(B)^deg A / h^(deg A - 1)
    let res = if da == 0 {
        unit.one_like()
    } else {
        b[0].pow_elt(da).div_exact_elt(&h.pow_elt(da - 1))
    };
    if s_neg {
        res.neg_elt()
    } else {
        res
    }
}

/// Resultant of two univariate integer polynomials.
pub fn resultant_uni(f: &UniPoly, g: &UniPoly) -> BigInt {
    resultant_coeffs(f.coeffs(), g.coeffs(), &BigInt::one())
}

/// Discriminant-style check used in tests: Res(f, f').
pub fn res_with_derivative(f: &UniPoly) -> BigInt {
    resultant_uni(f, &f.deriv())
}
