use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

/// ℤ[i] (ω² = −1) or ℤ[√3] (ω² = 3).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum QuadRing {
    GaussInt,
    RootThree,
}

impl QuadRing {
    pub fn disc(self) -> i64 {
        match self {
            QuadRing::GaussInt => -1,
            QuadRing::RootThree => 3,
        }
    }
}

/// a + b·ω
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadElem {
    pub a: BigInt,
    pub b: BigInt,
    pub ring: QuadRing,
}

impl QuadElem {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>, ring: QuadRing) -> Self {
        QuadElem { a: a.into(), b: b.into(), ring }
    }

    pub fn int(a: impl Into<BigInt>, ring: QuadRing) -> Self {
        Self::new(a, 0, ring)
    }

    pub fn zero(ring: QuadRing) -> Self {
        Self::new(0, 0, ring)
    }

    pub fn one(ring: QuadRing) -> Self {
        Self::new(1, 0, ring)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// a² − disc·b²
    pub fn norm(&self) -> BigInt {
        &self.a * &self.a - BigInt::from(self.ring.disc()) * &self.b * &self.b
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.ring);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        QuadElem { a: &self.a * c, b: &self.b * c, ring: self.ring }
    }
}

impl fmt::Display for QuadElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w = match self.ring {
            QuadRing::GaussInt => "i",
            QuadRing::RootThree => "sqrt3",
        };
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else if self.b.is_one() {
            write!(f, "{}+{w}", self.a)
        } else {
            write!(f, "{}{:+}*{w}", self.a, self.b)
        }
    }
}

impl Add for &QuadElem {
    type Output = QuadElem;
    fn add(self, o: &QuadElem) -> QuadElem {
        debug_assert_eq!(self.ring, o.ring);
        QuadElem { a: &self.a + &o.a, b: &self.b + &o.b, ring: self.ring }
    }
}

impl Sub for &QuadElem {
    type Output = QuadElem;
    fn sub(self, o: &QuadElem) -> QuadElem {
        debug_assert_eq!(self.ring, o.ring);
        QuadElem { a: &self.a - &o.a, b: &self.b - &o.b, ring: self.ring }
    }
}

impl Mul for &QuadElem {
    type Output = QuadElem;
    fn mul(self, o: &QuadElem) -> QuadElem {
        debug_assert_eq!(self.ring, o.ring);
        let d = BigInt::from(self.ring.disc());
        QuadElem {
            a: &self.a * &o.a + d * &self.b * &o.b,
            b: &self.a * &o.b + &self.b * &o.a,
            ring: self.ring,
        }
    }
}

impl Neg for &QuadElem {
    type Output = QuadElem;
    fn neg(self) -> QuadElem {
        QuadElem { a: -&self.a, b: -&self.b, ring: self.ring }
    }
}
