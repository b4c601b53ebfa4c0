//! Univariate polynomials over ℚ, used where field division is unavoidable
//! (gcds of specialisations, arithmetic modulo a squarefree polynomial).

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::poly::{UniPoly, Var};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QPoly {
    pub coeffs: Vec<BigRational>,
}

impl QPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    pub fn zero() -> Self {
        QPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        QPoly::new(vec![BigRational::one()])
    }

    pub fn constant(c: BigRational) -> Self {
        QPoly::new(vec![c])
    }

    pub fn from_uni(p: &UniPoly) -> Self {
        QPoly::new(
            p.coeffs()
                .iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect(),
        )
    }

    /// Clear denominators and return the primitive integer polynomial.
    pub fn to_uni(&self, var: Var) -> UniPoly {
        let mut l = BigInt::one();
        for c in &self.coeffs {
            l = l.lcm(c.denom());
        }
        let v = self
            .coeffs
            .iter()
            .map(|c| (c * BigRational::from_integer(l.clone())).to_integer())
            .collect();
        UniPoly::new(v, var).primitive_part()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn add(&self, o: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        QPoly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        QPoly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }

    pub fn mul(&self, o: &QPoly) -> QPoly {
        if self.is_zero() || o.is_zero() {
            return QPoly::zero();
        }
        let mut v = vec![BigRational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        QPoly::new(v)
    }

    pub fn scale(&self, c: &BigRational) -> QPoly {
        QPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn monic(&self) -> QPoly {
        match self.lead() {
            None => QPoly::zero(),
            Some(l) => {
                let inv = l.recip();
                self.scale(&inv)
            }
        }
    }

    pub fn divrem(&self, d: &QPoly) -> (QPoly, QPoly) {
        let dd = d.degree().expect("division by zero polynomial");
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (QPoly::zero(), self.clone());
        }
        let inv = d.lead().unwrap().recip();
        let mut q = vec![BigRational::zero(); rem.len() - dd];
        for i in (0..q.len()).rev() {
            let c = &rem[i + dd] * &inv;
            if c.is_zero() {
                continue;
            }
            for (j, dj) in d.coeffs.iter().enumerate() {
                rem[i + j] -= &c * dj;
            }
            q[i] = c;
        }
        rem.truncate(dd);
        (QPoly::new(q), QPoly::new(rem))
    }

    pub fn rem(&self, d: &QPoly) -> QPoly {
        self.divrem(d).1
    }

    /// Monic gcd; gcd(0,0) = 0.
    pub fn gcd(&self, o: &QPoly) -> QPoly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Inverse of `self` modulo `m` if it exists.
    pub fn inverse_mod(&self, m: &QPoly) -> Option<QPoly> {
        let (mut r0, mut r1) = (m.clone(), self.rem(m));
        let (mut s0, mut s1) = (QPoly::zero(), QPoly::one());
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            let s = s0.sub(&q.mul(&s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        if r0.degree() != Some(0) {
            return None;
        }
        let inv = r0.coeffs[0].recip();
        Some(s0.scale(&inv).rem(m))
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn deriv(&self) -> QPoly {
        QPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, a)| a * BigRational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }
}

/// Quotient of integer polynomials in lowest terms, e.g. h_k = Φ_{k+1}/Φ_{k−1}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatPoly {
    numerator: UniPoly,
    denominator: UniPoly,
}

impl RatPoly {
    /// `None` if the denominator is zero.
    pub fn new(num: UniPoly, den: UniPoly) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        let g = num.gcd(&den);
        let (mut n, mut d) = if g.degree().unwrap_or(0) > 0 {
            (num.div_exact(&g).unwrap(), den.div_exact(&g).unwrap())
        } else {
            (num, den)
        };
        let c = n.content().gcd(&d.content());
        let c = if d.lead().is_some_and(|l| l < &BigInt::zero()) { -c } else { c };
        if !c.is_zero() && !c.is_one() {
            n = n.div_scalar_exact(&c).unwrap();
            d = d.div_scalar_exact(&c).unwrap();
        }
        Some(RatPoly { numerator: n, denominator: d })
    }

    pub fn numerator(&self) -> &UniPoly {
        &self.numerator
    }

    pub fn denominator(&self) -> &UniPoly {
        &self.denominator
    }

    pub fn eval_complex(&self, z: num_complex::Complex64) -> num_complex::Complex64 {
        self.numerator.eval_complex(z) / self.denominator.eval_complex(z)
    }
}
