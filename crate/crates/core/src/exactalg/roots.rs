use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::modp::is_prime;
use super::poly::UniPoly;
use super::ExactError;

const TRIAL_LIMIT: u64 = 100_000;

fn pollard_rho(n: u64) -> u64 {
    if n.is_multiple_of(2) {
        return 2;
    }
    let mul = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    for c in 1u64.. {
        let f = |x: u64| (mul(x, x) + c) % n;
        let (mut x, mut y, mut d) = (2u64, 2u64, 1u64);
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = x.abs_diff(y).gcd(&n);
        }
        if d != n {
            return d;
        }
    }
    unreachable!()
}

fn factor_u64(n: u64, out: &mut Vec<(BigInt, u32)>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        match out.iter_mut().find(|(p, _)| p == &BigInt::from(n)) {
            Some(e) => e.1 += 1,
            None => out.push((BigInt::from(n), 1)),
        }
        return;
    }
    let d = pollard_rho(n);
    factor_u64(d, out);
    factor_u64(n / d, out);
}

/// Prime factorisation of |n| (n ≠ 0). Fails only if a cofactor beyond 64 bits
/// survives trial division.
pub fn factor_integer(n: &BigInt) -> Result<Vec<(BigInt, u32)>, ExactError> {
    let mut m = n.abs();
    let mut out: Vec<(BigInt, u32)> = Vec::new();
    let mut p = 2u64;
    while p <= TRIAL_LIMIT {
        let pb = BigInt::from(p);
        if &pb * &pb > m {
            break;
        }
        let mut e = 0;
        while (&m % &pb).is_zero() {
            m /= &pb;
            e += 1;
        }
        if e > 0 {
            out.push((pb, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if !m.is_one() {
        match m.to_u64() {
            Some(v) => factor_u64(v, &mut out),
            None => {
                let pb = BigInt::from(TRIAL_LIMIT);
                if &pb * &pb > m {
                    out.push((m, 1));
                } else {
                    return Err(ExactError::FactorLimit(n.to_string()));
                }
            }
        }
    }
    out.sort();
    Ok(out)
}

pub fn divisors(n: &BigInt) -> Result<Vec<BigInt>, ExactError> {
    let mut divs = vec![BigInt::one()];
    for (p, e) in factor_integer(n)? {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d in &divs {
            let mut pw = d.clone();
            for _ in 0..=e {
                next.push(pw.clone());
                pw *= &p;
            }
        }
        divs = next;
    }
    divs.sort();
    Ok(divs)
}

/// q^n f(p/q), exact.
fn homogeneous_eval(f: &UniPoly, p: &BigInt, q: &BigInt) -> BigInt {
    let n = f.degree().unwrap_or(0);
    let mut acc = BigInt::zero();
    let mut qpow = BigInt::one();
    let c = f.coeffs();
    // acc accumulates from the top: Σ a_i p^i q^(n-i)
    for i in (0..=n).rev() {
        acc = acc * p + &c[i] * &qpow;
        qpow *= q;
    }
    acc
}

/// All rational roots of `f` with multiplicities, sorted increasingly.
pub fn rational_roots(f: &UniPoly) -> Result<Vec<(BigRational, usize)>, ExactError> {
    if f.is_zero() {
        return Err(ExactError::ZeroPolynomial);
    }
    let zeros = f.coeffs().iter().take_while(|c| c.is_zero()).count();
    let mut g = UniPoly::new(f.coeffs()[zeros..].to_vec(), f.var()).primitive_part();
    let mut out = Vec::new();
    if zeros > 0 {
        out.push((BigRational::zero(), zeros));
    }
    if g.degree().unwrap() == 0 {
        return Ok(out);
    }
    let s = g.squarefree_part();
    let a0 = s.coeff(0);
    let an = s.lead().unwrap().clone();
    let bound = {
        let mut m = BigRational::zero();
        for c in s.coeffs() {
            let r = BigRational::new(c.abs(), an.abs());
            if r > m {
                m = r;
            }
        }
        m + BigRational::one()
    };
    let nums = divisors(&a0)?;
    let dens = divisors(&an)?;
    let mut found = Vec::new();
    for q in &dens {
        for p in &nums {
            if !p.gcd(q).is_one() {
                continue;
            }
            if BigRational::new(p.clone(), q.clone()) > bound {
                continue;
            }
            for sp in [p.clone(), -p.clone()] {
                if homogeneous_eval(&s, &sp, q).is_zero() {
                    found.push(BigRational::new(sp, q.clone()));
                }
            }
        }
    }
    found.sort();
    for r in found {
        let lin = UniPoly::new(vec![-r.numer().clone(), r.denom().clone()], f.var());
        let mut mult = 0;
        while let Some(h) = g.div_exact(&lin) {
            g = h;
            mult += 1;
        }
        debug_assert!(mult > 0);
        out.push((r, mult));
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(out)
}

/// Relative residual |f(z)| / Σ|aᵢ||z|ⁱ.
pub fn relative_residual(coeffs: &[f64], z: Complex64) -> f64 {
    let mut val = Complex64::new(0.0, 0.0);
    let mut scale = 0.0;
    let az = z.norm();
    for &a in coeffs.iter().rev() {
        val = val * z + a;
        scale = scale * az + a.abs();
    }
    if scale == 0.0 {
        0.0
    } else {
        val.norm() / scale
    }
}

const ABERTH_MAX_ITER: usize = 200;

/// Approximate all complex roots by Aberth iteration.
///
/// Residuals are measured relative to Σ|aᵢ||z|ⁱ, the natural scale of the
/// rounding error in evaluating f at z.
pub fn complex_roots(f: &UniPoly, tol: f64) -> Result<Vec<Complex64>, ExactError> {
    let n = match f.degree() {
        None | Some(0) => return Err(ExactError::ConstantInput),
        Some(n) => n,
    };
    let big = f.coeffs().iter().map(|c| c.abs()).max().unwrap();
    // scale to keep the float coefficients in range
    let a: Vec<f64> = f
        .coeffs()
        .iter()
        .map(|c| BigRational::new(c.clone(), big.clone()).to_f64().unwrap_or(0.0))
        .collect();
    let lead = a[n];
    let radius = 1.0 + a.iter().take(n).map(|c| (c / lead).abs()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4;
            Complex64::from_polar(radius, theta)
        })
        .collect();
    let eval = |x: Complex64| {
        let mut p = Complex64::new(0.0, 0.0);
        let mut dp = Complex64::new(0.0, 0.0);
        for &c in a.iter().rev() {
            dp = dp * x + p;
            p = p * x + c;
        }
        (p, dp)
    };
    let mut converged = false;
    for _ in 0..ABERTH_MAX_ITER {
        let mut max_step: f64 = 0.0;
        for k in 0..n {
            let (p, dp) = eval(z[k]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let mut s = Complex64::new(0.0, 0.0);
            for j in 0..n {
                if j != k {
                    s += (z[k] - z[j]).inv();
                }
            }
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
            if w.is_finite() {
                z[k] -= w;
                max_step = max_step.max(w.norm() / (1.0 + z[k].norm()));
            }
        }
        let worst = z.iter().map(|&x| relative_residual(&a, x)).fold(0.0, f64::max);
        if worst < tol && max_step < 1e-3 {
            converged = true;
            if max_step < 1e-14 {
                break;
            }
        }
    }
    let worst = z.iter().map(|&x| relative_residual(&a, x)).fold(0.0, f64::max);
    if !converged || worst >= tol {
        return Err(ExactError::NoConvergence {
            best: z.iter().map(|c| (c.re, c.im)).collect(),
        });
    }
    let key = |c: &Complex64| ((c.re * 1e9).round() as i64, (c.im * 1e9).round() as i64);
    z.sort_by_key(key);
    Ok(z)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::poly::Var;

    fn p(c: &[i64]) -> UniPoly {
        UniPoly::from_i64s(c, Var::U)
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn rational_root_examples() {
        assert_eq!(rational_roots(&p(&[-2, 1])).unwrap(), vec![(rat(2, 1), 1)]);
        assert_eq!(
            rational_roots(&p(&[-1, 0, 1])).unwrap(),
            vec![(rat(-1, 1), 1), (rat(1, 1), 1)]
        );
        assert!(rational_roots(&p(&[2, -2, 1])).unwrap().is_empty());
        // (2x - 3)^2 x (x + 5)
        let f = &(&p(&[-3, 2]) * &p(&[-3, 2])) * &(&p(&[0, 1]) * &p(&[5, 1]));
        assert_eq!(
            rational_roots(&f).unwrap(),
            vec![(rat(-5, 1), 1), (rat(0, 1), 1), (rat(3, 2), 2)]
        );
    }

    #[test]
    fn factoring() {
        let n = BigInt::from(2u64 * 2 * 3 * 1_000_000_007);
        let f = factor_integer(&n).unwrap();
        assert_eq!(
            f,
            vec![(BigInt::from(2), 2), (BigInt::from(3), 1), (BigInt::from(1_000_000_007u64), 1)]
        );
        let semi = BigInt::from(1_000_003u64 * 1_000_033u64);
        assert_eq!(factor_integer(&semi).unwrap().len(), 2);
        assert_eq!(divisors(&BigInt::from(12)).unwrap().len(), 6);
    }

    #[test]
    fn complex_root_examples() {
        let z = complex_roots(&p(&[2, -2, 1]), 1e-12).unwrap();
        assert_eq!(z.len(), 2);
        assert!((z[0] - Complex64::new(1.0, -1.0)).norm() < 1e-10);
        assert!((z[1] - Complex64::new(1.0, 1.0)).norm() < 1e-10);
        let z = complex_roots(&p(&[-1, 0, 1]), 1e-12).unwrap();
        assert!((z[0] + 1.0).norm() < 1e-10 && (z[1] - 1.0).norm() < 1e-10);
        assert!(complex_roots(&p(&[4]), 1e-12).is_err());
    }
}
