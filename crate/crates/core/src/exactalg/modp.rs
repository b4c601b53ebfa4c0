//! Polynomials over 𝔽_p, distinct-degree factorisation and the derived
//! irreducibility analysis over ℚ.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use serde::Serialize;

use super::poly::UniPoly;
use super::roots::rational_roots;
use super::ExactError;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for small in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(small) {
            return n == small;
        }
    }
    // deterministic Miller-Rabin for 64-bit inputs
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, m);
        }
        a = mul_mod(a, a, m);
        e >>= 1;
    }
    acc
}

/// Dense polynomial over 𝔽_p, low to high, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Fp {
    c: Vec<u64>,
    p: u64,
}

impl Fp {
    fn new(mut c: Vec<u64>, p: u64) -> Self {
        while c.last() == Some(&0) {
            c.pop();
        }
        Fp { c, p }
    }

    fn from_uni(f: &UniPoly, p: u64) -> Self {
        let pb = BigInt::from(p);
        let c = f
            .coeffs()
            .iter()
            .map(|a| {
                let r = a % &pb;
                let r = if r.is_negative() { r + &pb } else { r };
                r.to_u64().unwrap()
            })
            .collect();
        Fp::new(c, p)
    }

    fn deg(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    fn x(p: u64) -> Self {
        Fp::new(vec![0, 1], p)
    }

    fn inv(&self, a: u64) -> u64 {
        pow_mod(a, self.p - 2, self.p)
    }

    fn sub(&self, o: &Fp) -> Fp {
        let n = self.c.len().max(o.c.len());
        let v = (0..n)
            .map(|i| {
                let a = self.c.get(i).copied().unwrap_or(0);
                let b = o.c.get(i).copied().unwrap_or(0);
                (a + self.p - b) % self.p
            })
            .collect();
        Fp::new(v, self.p)
    }

    fn mul(&self, o: &Fp) -> Fp {
        if self.c.is_empty() || o.c.is_empty() {
            return Fp::new(vec![], self.p);
        }
        let mut v = vec![0u64; self.c.len() + o.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.c.iter().enumerate() {
                v[i + j] = (v[i + j] + mul_mod(a, b, self.p)) % self.p;
            }
        }
        Fp::new(v, self.p)
    }

    fn divrem(&self, d: &Fp) -> (Fp, Fp) {
        let dd = d.deg().expect("division by zero");
        let mut r = self.c.clone();
        if r.len() <= dd {
            return (Fp::new(vec![], self.p), self.clone());
        }
        let inv = self.inv(d.c[dd]);
        let mut q = vec![0u64; r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = mul_mod(r[i + dd], inv, self.p);
            if c == 0 {
                continue;
            }
            for (j, &dj) in d.c.iter().enumerate() {
                r[i + j] = (r[i + j] + self.p - mul_mod(c, dj, self.p)) % self.p;
            }
            q[i] = c;
        }
        r.truncate(dd);
        (Fp::new(q, self.p), Fp::new(r, self.p))
    }

    fn rem(&self, d: &Fp) -> Fp {
        self.divrem(d).1
    }

    fn monic(&self) -> Fp {
        match self.c.last() {
            None => self.clone(),
            Some(&l) => {
                let inv = self.inv(l);
                Fp::new(self.c.iter().map(|&a| mul_mod(a, inv, self.p)).collect(), self.p)
            }
        }
    }

    fn gcd(&self, o: &Fp) -> Fp {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.c.is_empty() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    fn deriv(&self) -> Fp {
        let v = self
            .c
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &a)| mul_mod(a, i as u64 % self.p, self.p))
            .collect();
        Fp::new(v, self.p)
    }

    fn pow_mod_poly(&self, mut e: u64, m: &Fp) -> Fp {
        let mut acc = Fp::new(vec![1], self.p).rem(m);
        let mut base = self.rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m);
            }
            base = base.mul(&base).rem(m);
            e >>= 1;
        }
        acc
    }
}

/// Degrees of the irreducible factors of `f` mod `p` (sorted), or `None` for a
/// bad prime (p divides the leading coefficient, or f mod p is not squarefree).
pub fn modp_degree_pattern(f: &UniPoly, p: u64) -> Result<Option<Vec<usize>>, ExactError> {
    if !is_prime(p) {
        return Err(ExactError::NotPrime(p));
    }
    let Some(deg) = f.degree() else {
        return Err(ExactError::ZeroPolynomial);
    };
    let fp = Fp::from_uni(f, p);
    if fp.deg() != Some(deg) {
        return Ok(None);
    }
    if deg == 0 {
        return Ok(Some(Vec::new()));
    }
    if fp.gcd(&fp.deriv()).deg() != Some(0) {
        return Ok(None);
    }
    let mut g = fp.monic();
    let x = Fp::x(p);
    let mut h = x.rem(&g);
    let mut out = Vec::new();
    let mut d = 1usize;
    while g.deg().unwrap() >= 2 * d {
        h = h.pow_mod_poly(p, &g);
        let t = g.gcd(&h.sub(&x));
        let dt = t.deg().unwrap();
        if dt > 0 {
            out.extend(std::iter::repeat_n(d, dt / d));
            g = g.divrem(&t).0;
            h = h.rem(&g);
        }
        d += 1;
    }
    if let Some(dg) = g.deg() {
        if dg > 0 {
            out.push(dg);
        }
    }
    out.sort_unstable();
    Ok(Some(out))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum IrreducibleWitness {
    /// Degree one.
    Linear,
    /// f stays irreducible modulo this prime.
    Prime { p: u64 },
    /// No proper factor degree survives the intersection over these primes.
    DegreeSets { primes: Vec<u64> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Irreducibility {
    Irreducible { witness: IrreducibleWitness },
    Reducible {
        #[serde(with = "crate::serial::rat")]
        rational_root: BigRational,
    },
    Inconclusive { possible_factor_degrees: Vec<usize>, primes: Vec<u64> },
}

impl Irreducibility {
    pub fn is_irreducible(&self) -> bool {
        matches!(self, Irreducibility::Irreducible { .. })
    }
}

fn subset_sums(pattern: &[usize], deg: usize) -> Vec<bool> {
    let mut reach = vec![false; deg + 1];
    reach[0] = true;
    for &d in pattern {
        for s in (d..=deg).rev() {
            if reach[s - d] {
                reach[s] = true;
            }
        }
    }
    reach
}

/// Three-valued irreducibility test over ℚ for a squarefree polynomial.
pub fn irreducibility_analysis(f: &UniPoly, prime_budget: usize) -> Result<Irreducibility, ExactError> {
    let deg = match f.degree() {
        None | Some(0) => return Err(ExactError::ConstantInput),
        Some(d) => d,
    };
    if deg == 1 {
        return Ok(Irreducibility::Irreducible { witness: IrreducibleWitness::Linear });
    }
    if let Some((root, _)) = rational_roots(f)?.into_iter().next() {
        return Ok(Irreducibility::Reducible { rational_root: root });
    }
    let lc = f.lead().unwrap().clone();
    let c0 = f.coeff(0);
    let bound = (lc * c0).abs().nth_root(4).to_u64().unwrap_or(u64::MAX / 4).max(50);
    let mut candidate = bound + 1;
    let mut used = Vec::new();
    let mut inter = vec![true; deg + 1];
    while used.len() < prime_budget && candidate < u64::MAX / 4 {
        if is_prime(candidate) {
            if let Some(pattern) = modp_degree_pattern(f, candidate)? {
                if pattern == [deg] {
                    return Ok(Irreducibility::Irreducible {
                        witness: IrreducibleWitness::Prime { p: candidate },
                    });
                }
                used.push(candidate);
                let reach = subset_sums(&pattern, deg);
                for (a, b) in inter.iter_mut().zip(reach) {
                    *a &= b;
                }
            }
        }
        candidate += 1;
    }
    let possible: Vec<usize> = (0..=deg).filter(|&d| inter[d]).collect();
    if possible == [0, deg] && !used.is_empty() {
        return Ok(Irreducibility::Irreducible {
            witness: IrreducibleWitness::DegreeSets { primes: used },
        });
    }
    Ok(Irreducibility::Inconclusive { possible_factor_degrees: possible, primes: used })
}
