use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// Formal variable names used across the crate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Var {
    L,
    R,
    S,
    T,
    U,
    X,
    Y,
}

impl Var {
    pub fn name(self) -> &'static str {
        match self {
            Var::L => "l",
            Var::R => "r",
            Var::S => "S",
            Var::T => "t",
            Var::U => "u",
            Var::X => "x",
            Var::Y => "y",
        }
    }

    pub fn from_name(s: &str) -> Option<Var> {
        Some(match s {
            "l" => Var::L,
            "r" => Var::R,
            "S" => Var::S,
            "t" => Var::T,
            "u" => Var::U,
            "x" => Var::X,
            "y" => Var::Y,
            _ => return None,
        })
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Dense univariate polynomial over the integers.
///
/// `coeffs[i]` is the coefficient of `x^i`; the highest stored coefficient is
/// never zero. Equality ignores the variable label.
#[derive(Clone, Debug)]
pub struct UniPoly {
    coeffs: Vec<BigInt>,
    var: Var,
}

impl PartialEq for UniPoly {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

impl Eq for UniPoly {}

fn trim(v: &mut Vec<BigInt>) {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<BigInt>, var: Var) -> Self {
        trim(&mut coeffs);
        UniPoly { coeffs, var }
    }

    pub fn from_i64s(coeffs: &[i64], var: Var) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect(), var)
    }

    pub fn zero(var: Var) -> Self {
        UniPoly { coeffs: Vec::new(), var }
    }

    pub fn one(var: Var) -> Self {
        Self::constant(BigInt::one(), var)
    }

    pub fn constant(c: BigInt, var: Var) -> Self {
        Self::new(vec![c], var)
    }

    /// The polynomial `x` itself.
    pub fn x(var: Var) -> Self {
        Self::monomial(BigInt::one(), 1, var)
    }

    pub fn monomial(c: BigInt, d: usize, var: Var) -> Self {
        let mut v = vec![BigInt::zero(); d + 1];
        v[d] = c;
        Self::new(v, var)
    }

    /// `x - c`
    pub fn linear_root(c: i64, var: Var) -> Self {
        Self::from_i64s(&[-c, 1], var)
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn with_var(mut self, var: Var) -> Self {
        self.var = var;
        self
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// `None` stands for the degree −∞ of the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with −1 for the zero polynomial; handy in arithmetic checks.
    pub fn degree_i64(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn lead(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn deriv(&self) -> Self {
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, a)| a * BigInt::from(i))
            .collect();
        Self::new(c, self.var)
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_i64(&self, x: i64) -> BigInt {
        self.eval(&BigInt::from(x))
    }

    pub fn eval_rat(&self, x: &BigRational) -> BigRational {
        // Horner on numerator with denominator powers kept integral.
        let (p, q) = (x.numer(), x.denom());
        let d = match self.degree() {
            None => return BigRational::zero(),
            Some(d) => d,
        };
        let mut acc = BigInt::zero();
        let mut qpow = BigInt::one();
        for c in self.coeffs.iter().rev() {
            acc = acc * p + c * &qpow;
            qpow *= q;
        }
        // acc = q^d f(p/q)
        BigRational::new(acc, num_traits::pow(q.clone(), d))
    }

    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * z + c.to_f64().unwrap_or(f64::NAN);
        }
        acc
    }

    /// Substitute `x := q` where `q` may live in another variable.
    pub fn compose(&self, q: &UniPoly) -> UniPoly {
        let mut acc = UniPoly::zero(q.var);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * q) + &UniPoly::constant(c.clone(), q.var);
        }
        acc
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero(self.var);
        }
        Self::new(self.coeffs.iter().map(|a| a * c).collect(), self.var)
    }

    pub fn scale_i64(&self, c: i64) -> Self {
        self.scale(&BigInt::from(c))
    }

    pub fn shift_up(&self, d: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![BigInt::zero(); d];
        v.extend(self.coeffs.iter().cloned());
        Self::new(v, self.var)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.var);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divide by the content and make the leading coefficient positive.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = self.content();
        if self.lead().is_some_and(Signed::is_negative) {
            c = -c;
        }
        Self::new(self.coeffs.iter().map(|a| a / &c).collect(), self.var)
    }

    pub fn div_scalar_exact(&self, c: &BigInt) -> Option<Self> {
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            let (q, r) = a.div_rem(c);
            if !r.is_zero() {
                return None;
            }
            out.push(q);
        }
        Some(Self::new(out, self.var))
    }

    /// Exact division over the integers; `None` when `d` does not divide.
    pub fn div_exact(&self, d: &UniPoly) -> Option<UniPoly> {
        let dd = d.degree()?;
        if self.is_zero() {
            return Some(Self::zero(self.var));
        }
        let n = self.degree().unwrap();
        if n < dd {
            return None;
        }
        let lc = d.lead().unwrap();
        let mut rem = self.coeffs.clone();
        let mut q = vec![BigInt::zero(); n - dd + 1];
        for i in (0..=n - dd).rev() {
            let c = &rem[i + dd];
            if c.is_zero() {
                continue;
            }
            let (qi, r) = c.div_rem(lc);
            if !r.is_zero() {
                return None;
            }
            for (j, dj) in d.coeffs.iter().enumerate() {
                rem[i + j] -= &qi * dj;
            }
            q[i] = qi;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(Self::new(q, self.var))
    }

    /// Pseudo-remainder: lc(d)^(deg self - deg d + 1) * self mod d.
    pub fn pseudo_rem(&self, d: &UniPoly) -> UniPoly {
        let coeffs = super::resultant::pseudo_rem(&self.coeffs, &d.coeffs);
        Self::new(coeffs, self.var)
    }

    /// Primitive gcd over the rationals with positive leading coefficient.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        poly_gcd(self, other)
    }

    pub fn is_separable(&self) -> bool {
        match self.degree() {
            None => false,
            Some(0) => true,
            Some(_) => self.gcd(&self.deriv()).degree() == Some(0),
        }
    }

    /// `self / gcd(self, self')`, primitive. The zero polynomial maps to itself.
    pub fn squarefree_part(&self) -> UniPoly {
        if self.degree().unwrap_or(0) == 0 {
            return self.primitive_part();
        }
        let g = self.gcd(&self.deriv());
        self.primitive_part()
            .div_exact(&g)
            .expect("gcd divides")
            .primitive_part()
    }

    pub fn to_f64_coeffs(&self) -> Vec<f64> {
        self.coeffs
            .iter()
            .map(|c| c.to_f64().unwrap_or(f64::INFINITY))
            .collect()
    }
}

/// Primitive gcd over ℚ, normalised with positive leading coefficient.
/// `gcd(0, 0) = 0`.
pub fn poly_gcd(f: &UniPoly, g: &UniPoly) -> UniPoly {
    if f.is_zero() {
        return g.primitive_part();
    }
    if g.is_zero() {
        return f.primitive_part();
    }
    let (mut a, mut b) = if f.degree() >= g.degree() {
        (f.primitive_part(), g.primitive_part())
    } else {
        (g.primitive_part(), f.primitive_part())
    };
    while !b.is_zero() {
        let r = a.pseudo_rem(&b);
        a = b;
        b = r.primitive_part();
    }
    a.primitive_part().with_var(f.var)
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<(BigInt, Vec<(Var, usize)>)> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (c.clone(), vec![(self.var, i)]))
            .collect();
        f.write_str(&super::text::format_terms(&terms))
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut v = Vec::with_capacity(n);
        for i in 0..n {
            let mut c = self.coeffs.get(i).cloned().unwrap_or_default();
            if let Some(d) = rhs.coeffs.get(i) {
                c += d;
            }
            v.push(c);
        }
        UniPoly::new(v, self.var)
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut v = Vec::with_capacity(n);
        for i in 0..n {
            let mut c = self.coeffs.get(i).cloned().unwrap_or_default();
            if let Some(d) = rhs.coeffs.get(i) {
                c -= d;
            }
            v.push(c);
        }
        UniPoly::new(v, self.var)
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero(self.var);
        }
        let mut v = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        UniPoly::new(v, self.var)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|c| -c).collect(), self.var)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for UniPoly {
            type Output = UniPoly;
            fn $m(self, rhs: UniPoly) -> UniPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&UniPoly> for UniPoly {
            type Output = UniPoly;
            fn $m(self, rhs: &UniPoly) -> UniPoly {
                (&self).$m(rhs)
            }
        }
        impl $tr<UniPoly> for &UniPoly {
            type Output = UniPoly;
            fn $m(self, rhs: UniPoly) -> UniPoly {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> UniPoly {
        UniPoly::from_i64s(c, Var::U)
    }

    #[test]
    fn zero_degree_is_minus_infinity() {
        assert_eq!(UniPoly::zero(Var::U).degree(), None);
        assert_eq!(p(&[5]).degree(), Some(0));
        assert_eq!(p(&[1, 2, 0, 0]).degree(), Some(1));
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(poly_gcd(&p(&[-1, 0, 1]), &p(&[-1, 1])), p(&[-1, 1]));
        assert_eq!(poly_gcd(&UniPoly::zero(Var::U), &p(&[4, 6])), p(&[2, 3]));
        assert!(poly_gcd(&UniPoly::zero(Var::U), &UniPoly::zero(Var::U)).is_zero());
        assert_eq!(poly_gcd(&p(&[-2, -2]), &p(&[3, 3])), p(&[1, 1]));
    }

    #[test]
    fn squarefree() {
        let f = p(&[1, -2, 1]);
        assert_eq!(f.squarefree_part(), p(&[-1, 1]));
        assert!(!f.is_separable());
        assert!(p(&[-1, 0, 1]).is_separable());
    }

    #[test]
    fn exact_division() {
        let a = p(&[-1, 0, 1]);
        assert_eq!(a.div_exact(&p(&[1, 1])), Some(p(&[-1, 1])));
        assert_eq!(a.div_exact(&p(&[1, 2])), None);
        assert_eq!(p(&[1, 2]).div_exact(&a), None);
    }

    #[test]
    fn eval_and_compose() {
        let f = p(&[2, -2, 1]);
        assert_eq!(f.eval_i64(3), BigInt::from(5));
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(f.eval_rat(&half), BigRational::new(5.into(), 4.into()));
        let g = f.compose(&p(&[1, 1]));
        assert_eq!(g, p(&[1, 0, 1]));
    }
}
