use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::{UniPoly, Var};
use super::resultant::resultant_coeffs;
use super::ExactError;

/// Bivariate integer polynomial: a polynomial in `outer` whose coefficients
/// are polynomials in `inner`. `coeffs[i]` multiplies `outer^i`.
#[derive(Clone, Debug)]
pub struct BiPoly {
    outer: Var,
    inner: Var,
    coeffs: Vec<UniPoly>,
}

impl PartialEq for BiPoly {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

impl Eq for BiPoly {}

impl BiPoly {
    pub fn new(outer: Var, inner: Var, coeffs: Vec<UniPoly>) -> Self {
        let mut coeffs: Vec<UniPoly> = coeffs.into_iter().map(|c| c.with_var(inner)).collect();
        while coeffs.last().is_some_and(UniPoly::is_zero) {
            coeffs.pop();
        }
        BiPoly { outer, inner, coeffs }
    }

    pub fn zero(outer: Var, inner: Var) -> Self {
        BiPoly { outer, inner, coeffs: Vec::new() }
    }

    /// Embed a polynomial in the inner variable.
    pub fn from_inner(p: &UniPoly, outer: Var, inner: Var) -> Self {
        Self::new(outer, inner, vec![p.clone()])
    }

    /// Embed a polynomial in the outer variable.
    pub fn from_outer(p: &UniPoly, outer: Var, inner: Var) -> Self {
        let c = p
            .coeffs()
            .iter()
            .map(|a| UniPoly::constant(a.clone(), inner))
            .collect();
        Self::new(outer, inner, c)
    }

    pub fn constant(c: BigInt, outer: Var, inner: Var) -> Self {
        Self::new(outer, inner, vec![UniPoly::constant(c, inner)])
    }

    /// Build from (coefficient, outer exponent, inner exponent) triples.
    pub fn from_terms(outer: Var, inner: Var, terms: &[(i64, usize, usize)]) -> Self {
        let mut acc = Self::zero(outer, inner);
        for &(c, i, j) in terms {
            let mut v = vec![UniPoly::zero(inner); i + 1];
            v[i] = UniPoly::monomial(BigInt::from(c), j, inner);
            acc = &acc + &Self::new(outer, inner, v);
        }
        acc
    }

    pub fn outer(&self) -> Var {
        self.outer
    }

    pub fn inner(&self) -> Var {
        self.inner
    }

    pub fn coeffs(&self) -> &[UniPoly] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> UniPoly {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| UniPoly::zero(self.inner))
    }

    /// Integer coefficient of outer^i inner^j.
    pub fn term(&self, i: usize, j: usize) -> BigInt {
        self.coeffs.get(i).map(|c| c.coeff(j)).unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1 && self.coeffs.first().is_none_or(UniPoly::is_constant)
    }

    pub fn deg_outer(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn deg_inner(&self) -> Option<usize> {
        self.coeffs.iter().filter_map(UniPoly::degree).max()
    }

    pub fn deg_in(&self, v: Var) -> Option<usize> {
        if v == self.outer {
            self.deg_outer()
        } else if v == self.inner {
            self.deg_inner()
        } else if self.is_zero() {
            None
        } else {
            Some(0)
        }
    }

    /// Exchange the roles of the two variables.
    pub fn transpose(&self) -> BiPoly {
        let Some(di) = self.deg_inner() else {
            return Self::zero(self.inner, self.outer);
        };
        let mut out = vec![vec![BigInt::zero(); self.coeffs.len()]; di + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            for (j, a) in c.coeffs().iter().enumerate() {
                out[j][i] = a.clone();
            }
        }
        let coeffs = out
            .into_iter()
            .map(|v| UniPoly::new(v, self.outer))
            .collect();
        Self::new(self.inner, self.outer, coeffs)
    }

    /// Rewrite with `outer` as the outer variable, transposing if needed.
    pub fn oriented(&self, outer: Var) -> BiPoly {
        if self.outer == outer {
            self.clone()
        } else {
            assert_eq!(self.inner, outer, "variable not present");
            self.transpose()
        }
    }

    pub fn deriv_outer(&self) -> BiPoly {
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, a)| a.scale(&BigInt::from(i)))
            .collect();
        Self::new(self.outer, self.inner, c)
    }

    pub fn deriv_inner(&self) -> BiPoly {
        Self::new(
            self.outer,
            self.inner,
            self.coeffs.iter().map(UniPoly::deriv).collect(),
        )
    }

    pub fn deriv(&self, v: Var) -> BiPoly {
        if v == self.outer {
            self.deriv_outer()
        } else if v == self.inner {
            self.deriv_inner()
        } else {
            Self::zero(self.outer, self.inner)
        }
    }

    /// Specialise the outer variable to an integer.
    pub fn eval_outer(&self, x: &BigInt) -> UniPoly {
        let mut acc = UniPoly::zero(self.inner);
        for c in self.coeffs.iter().rev() {
            acc = &acc.scale(x) + c;
        }
        acc
    }

    /// Specialise the inner variable to an integer, giving a polynomial in outer.
    pub fn eval_inner(&self, x: &BigInt) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|c| c.eval(x)).collect(), self.outer)
    }

    pub fn eval_rat(&self, outer_val: &BigRational, inner_val: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * outer_val + c.eval_rat(inner_val);
        }
        acc
    }

    /// Specialise the inner variable to a rational; result has rational coefficients.
    pub fn eval_inner_rat(&self, x: &BigRational) -> Vec<BigRational> {
        self.coeffs.iter().map(|c| c.eval_rat(x)).collect()
    }

    /// Specialise the outer variable to a rational; result has rational coefficients
    /// in the inner variable.
    pub fn eval_outer_rat(&self, x: &BigRational) -> Vec<BigRational> {
        let di = self.deg_inner().map_or(0, |d| d + 1);
        let mut out = vec![BigRational::zero(); di];
        let mut pw = BigRational::one();
        for c in &self.coeffs {
            for (j, a) in c.coeffs().iter().enumerate() {
                out[j] += &pw * BigRational::from_integer(a.clone());
            }
            pw *= x;
        }
        out
    }

    /// Substitute outer := q(inner), giving a univariate polynomial in inner.
    pub fn subst_outer(&self, q: &UniPoly) -> UniPoly {
        let q = q.clone().with_var(self.inner);
        let mut acc = UniPoly::zero(self.inner);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * &q) + c;
        }
        acc
    }

    /// Substitute outer := q(new_outer), keeping the inner variable.
    pub fn subst_outer_poly(&self, q: &UniPoly) -> BiPoly {
        let new_outer = q.var();
        let qb = BiPoly::from_outer(q, new_outer, self.inner);
        let mut acc = BiPoly::zero(new_outer, self.inner);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * &qb) + &BiPoly::from_inner(c, new_outer, self.inner);
        }
        acc
    }

    /// Substitute inner := q(outer, inner) expressed as a BiPoly in the same variables.
    pub fn subst_inner_bi(&self, q: &BiPoly) -> BiPoly {
        let mut acc = BiPoly::zero(self.outer, self.inner);
        let di = self.deg_inner().unwrap_or(0);
        // Horner in the inner variable over coefficient rows.
        let t = self.transpose();
        for j in (0..=di).rev() {
            let row = BiPoly::from_outer(&t.coeff(j).with_var(self.outer), self.outer, self.inner);
            acc = &(&acc * q) + &row;
        }
        acc
    }

    pub fn scale(&self, c: &BigInt) -> BiPoly {
        Self::new(
            self.outer,
            self.inner,
            self.coeffs.iter().map(|p| p.scale(c)).collect(),
        )
    }

    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(&c.content());
        }
        g
    }

    /// Leading integer coefficient in lexicographic order (outer, then inner).
    pub fn lex_lead(&self) -> Option<BigInt> {
        self.coeffs.last().and_then(|c| c.lead().cloned())
    }

    /// Primitive with positive lexicographic leading coefficient.
    pub fn normalized(&self) -> BiPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = self.content();
        if self.lex_lead().is_some_and(|l| l.is_negative()) {
            c = -c;
        }
        Self::new(
            self.outer,
            self.inner,
            self.coeffs
                .iter()
                .map(|p| p.div_scalar_exact(&c).expect("content divides"))
                .collect(),
        )
    }

    /// Polynomial gcd of the outer coefficients (the content in ℤ[inner]).
    pub fn poly_content(&self) -> UniPoly {
        let mut g = UniPoly::zero(self.inner);
        for c in &self.coeffs {
            g = g.gcd(c);
        }
        g
    }

    pub fn div_inner_poly_exact(&self, d: &UniPoly) -> Option<BiPoly> {
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            out.push(c.div_exact(d)?);
        }
        Some(Self::new(self.outer, self.inner, out))
    }

    /// Exact division in ℤ[inner][outer]; `None` if it does not divide.
    pub fn div_exact(&self, d: &BiPoly) -> Option<BiPoly> {
        let d = d.oriented(self.outer);
        let dd = d.deg_outer()?;
        if self.is_zero() {
            return Some(self.clone());
        }
        let n = self.deg_outer().unwrap();
        if n < dd {
            return None;
        }
        let lc = d.coeffs.last().unwrap().clone();
        let mut rem = self.coeffs.clone();
        let mut q = vec![UniPoly::zero(self.inner); n - dd + 1];
        for i in (0..=n - dd).rev() {
            let c = &rem[i + dd];
            if c.is_zero() {
                continue;
            }
            let qi = c.div_exact(&lc)?;
            for (j, dj) in d.coeffs.iter().enumerate() {
                rem[i + j] = &rem[i + j] - &(&qi * dj);
            }
            q[i] = qi;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(Self::new(self.outer, self.inner, q))
    }

    /// Resultant eliminating `v`, as a polynomial in the other variable.
    pub fn resultant(&self, other: &BiPoly, v: Var) -> Result<UniPoly, ExactError> {
        resultant(self, other, v)
    }

    /// Swap the variable labels without moving coefficients, i.e. F(a,b) -> F(b,a)
    /// read in the original labels.
    pub fn swap_labels(&self) -> BiPoly {
        let c = self.coeffs.iter().map(|p| p.clone().with_var(self.outer)).collect();
        Self::new(self.inner, self.outer, c)
    }

    /// p(self) for a univariate p, by Horner's rule.
    pub fn compose_into(&self, p: &UniPoly) -> BiPoly {
        let mut acc = BiPoly::zero(self.outer, self.inner);
        for c in p.coeffs().iter().rev() {
            acc = &(&acc * self) + &BiPoly::constant(c.clone(), self.outer, self.inner);
        }
        acc
    }

    /// Equality after normalizing content and sign, in a common orientation.
    pub fn eq_up_to_unit(&self, other: &BiPoly) -> bool {
        let o = if other.outer == self.outer || other.is_constant() {
            other.clone()
        } else {
            other.oriented(self.outer)
        };
        self.normalized() == o.normalized()
    }

    /// Number of nonzero monomials.
    pub fn term_count(&self) -> usize {
        self.coeffs
            .iter()
            .map(|c| c.coeffs().iter().filter(|a| !a.is_zero()).count())
            .sum()
    }
}

/// Resultant of `f` and `g` eliminating `v`.
pub fn resultant(f: &BiPoly, g: &BiPoly, v: Var) -> Result<UniPoly, ExactError> {
    if f.is_zero() && g.is_zero() {
        return Err(ExactError::UndefinedResultant);
    }
    let f = f.oriented(v);
    let g = g.oriented(v);
    let unit = UniPoly::one(f.inner);
    Ok(resultant_coeffs(&f.coeffs, &g.coeffs, &unit).with_var(f.inner))
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            for (j, a) in c.coeffs().iter().enumerate().rev() {
                if a.is_zero() {
                    continue;
                }
                let mut mono = vec![(self.outer, i), (self.inner, j)];
                mono.sort_by_key(|(v, _)| *v);
                terms.push((a.clone(), mono));
            }
        }
        f.write_str(&super::text::format_terms(&terms))
    }
}

impl Add for &BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: &BiPoly) -> BiPoly {
        let rhs = rhs.oriented(self.outer);
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let v = (0..n).map(|i| &self.coeff(i) + &rhs.coeff(i)).collect();
        BiPoly::new(self.outer, self.inner, v)
    }
}

impl Sub for &BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: &BiPoly) -> BiPoly {
        let rhs = rhs.oriented(self.outer);
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let v = (0..n).map(|i| &self.coeff(i) - &rhs.coeff(i)).collect();
        BiPoly::new(self.outer, self.inner, v)
    }
}

impl Mul for &BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: &BiPoly) -> BiPoly {
        if self.is_zero() || rhs.is_zero() {
            return BiPoly::zero(self.outer, self.inner);
        }
        let rhs = rhs.oriented(self.outer);
        let mut v = vec![UniPoly::zero(self.inner); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                v[i + j] = &v[i + j] + &(a * b);
            }
        }
        BiPoly::new(self.outer, self.inner, v)
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        BiPoly::new(self.outer, self.inner, self.coeffs.iter().map(|c| -c).collect())
    }
}
