use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::Zero;

use super::poly::{UniPoly, Var};

/// Laurent polynomial in λ with coefficients in ℤ[r]:
/// Σ coeffs[i] · λ^(low_exp + i).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentPoly {
    low_exp: i64,
    coeffs: Vec<UniPoly>,
}

impl LaurentPoly {
    pub fn new(low_exp: i64, coeffs: Vec<UniPoly>) -> Self {
        let mut coeffs: Vec<UniPoly> = coeffs.into_iter().map(|c| c.with_var(Var::R)).collect();
        while coeffs.last().is_some_and(UniPoly::is_zero) {
            coeffs.pop();
        }
        let lead_zeros = coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead_zeros == coeffs.len() {
            return Self::zero();
        }
        coeffs.drain(..lead_zeros);
        LaurentPoly { low_exp: low_exp + lead_zeros as i64, coeffs }
    }

    pub fn zero() -> Self {
        LaurentPoly { low_exp: 0, coeffs: Vec::new() }
    }

    pub fn constant(c: UniPoly) -> Self {
        Self::new(0, vec![c])
    }

    pub fn int(c: i64) -> Self {
        Self::constant(UniPoly::constant(BigInt::from(c), Var::R))
    }

    /// c · λ^e
    pub fn monomial(c: UniPoly, e: i64) -> Self {
        Self::new(e, vec![c])
    }

    pub fn lambda_pow(e: i64) -> Self {
        Self::monomial(UniPoly::one(Var::R), e)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn low_exp(&self) -> i64 {
        self.low_exp
    }

    pub fn high_exp(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.low_exp + self.coeffs.len() as i64 - 1)
    }

    pub fn coeff(&self, e: i64) -> UniPoly {
        let i = e - self.low_exp;
        if i < 0 {
            return UniPoly::zero(Var::R);
        }
        self.coeffs
            .get(i as usize)
            .cloned()
            .unwrap_or_else(|| UniPoly::zero(Var::R))
    }

    /// Nonzero (exponent, coefficient) pairs, increasing exponent.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &UniPoly)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.low_exp + i as i64, c))
    }

    /// Multiply by λ^e.
    pub fn shift(&self, e: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        LaurentPoly { low_exp: self.low_exp + e, coeffs: self.coeffs.clone() }
    }

    pub fn scale(&self, c: &UniPoly) -> Self {
        Self::new(self.low_exp, self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Substitute λ := λ0 and r := r0.
    pub fn eval_rat(
        &self,
        lambda: &num_rational::BigRational,
        r: &num_rational::BigRational,
    ) -> num_rational::BigRational {
        let mut acc = num_rational::BigRational::zero();
        for (e, c) in self.terms() {
            acc += c.eval_rat(r) * num_traits::pow::Pow::pow(lambda, e as i32);
        }
        acc
    }

    /// Substitute λ := λ0, leaving a rational polynomial in r (coefficient list).
    pub fn eval_lambda(&self, lambda: &num_rational::BigRational) -> Vec<num_rational::BigRational> {
        let mut out: Vec<num_rational::BigRational> = Vec::new();
        for (e, c) in self.terms() {
            let w = num_traits::pow::Pow::pow(lambda, e as i32);
            for (j, a) in c.coeffs().iter().enumerate() {
                if out.len() <= j {
                    out.resize(j + 1, num_rational::BigRational::zero());
                }
                out[j] += &w * num_rational::BigRational::from_integer(a.clone());
            }
        }
        out
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms()
            .map(|(e, c)| format!("({c})*l^{e}"))
            .collect();
        f.write_str(&parts.join("+"))
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, o: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let lo = self.low_exp.min(o.low_exp);
        let hi = self.high_exp().unwrap().max(o.high_exp().unwrap());
        let v = (lo..=hi).map(|e| &self.coeff(e) + &o.coeff(e)).collect();
        LaurentPoly::new(lo, v)
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, o: &LaurentPoly) -> LaurentPoly {
        self + &(-o)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { low_exp: self.low_exp, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, o: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || o.is_zero() {
            return LaurentPoly::zero();
        }
        let mut v = vec![UniPoly::zero(Var::R); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                v[i + j] = &v[i + j] + &(a * b);
            }
        }
        LaurentPoly::new(self.low_exp + o.low_exp, v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form_strips_zeros() {
        let z = UniPoly::zero(Var::R);
        let one = UniPoly::one(Var::R);
        let p = LaurentPoly::new(-3, vec![z.clone(), one.clone(), z.clone(), one, z]);
        assert_eq!(p.low_exp(), -2);
        assert_eq!(p.high_exp(), Some(0));
    }

    #[test]
    fn lambda_inverse() {
        let p = &LaurentPoly::lambda_pow(3) * &LaurentPoly::lambda_pow(-3);
        assert_eq!(p, LaurentPoly::int(1));
        let q = &LaurentPoly::lambda_pow(2) - &LaurentPoly::lambda_pow(2);
        assert!(q.is_zero());
    }
}
