//! Exact coefficient arithmetic: prime fields F_p and the rationals.
//!
//! Every scalar carries its field tag; mixing tags is a programming error and
//! panics. Prime moduli are restricted to p < 2^31 so that products fit the
//! fast Barrett reduction used by the matrix kernels.

use num::{BigInt, BigRational, One, Zero};
use std::fmt;

use crate::error::{Error, Result};

/// The coefficient field of a computation.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum FieldKind {
    /// Prime field F_p.
    Fp(u64),
    /// The rational numbers.
    Rat,
}

impl FieldKind {
    pub fn validate(self) -> Result<()> {
        match self {
            FieldKind::Fp(p) => {
                if p < 2 || p >= (1 << 31) || !is_prime(p) {
                    Err(Error::BadModulus(p))
                } else {
                    Ok(())
                }
            }
            FieldKind::Rat => Ok(()),
        }
    }

    pub fn zero(self) -> Scalar {
        match self {
            FieldKind::Fp(p) => Scalar::Fp { p, v: 0 },
            FieldKind::Rat => Scalar::Rat(BigRational::zero()),
        }
    }

    pub fn one(self) -> Scalar {
        match self {
            FieldKind::Fp(p) => Scalar::Fp { p, v: 1 },
            FieldKind::Rat => Scalar::Rat(BigRational::one()),
        }
    }

    pub fn from_int(self, n: i64) -> Scalar {
        match self {
            FieldKind::Fp(p) => {
                let m = n.rem_euclid(p as i64) as u64;
                Scalar::Fp { p, v: m }
            }
            FieldKind::Rat => Scalar::Rat(BigRational::from_integer(BigInt::from(n))),
        }
    }
}

impl fmt::Display for FieldKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldKind::Fp(p) => write!(f, "GF({p})"),
            FieldKind::Rat => write!(f, "QQ"),
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// A field element together with its field tag.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Scalar {
    Fp { p: u64, v: u64 },
    Rat(BigRational),
}

impl Scalar {
    pub fn field(&self) -> FieldKind {
        match self {
            Scalar::Fp { p, .. } => FieldKind::Fp(*p),
            Scalar::Rat(_) => FieldKind::Rat,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Fp { v, .. } => *v == 0,
            Scalar::Rat(r) => r.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Fp { v, .. } => *v == 1,
            Scalar::Rat(r) => r.is_one(),
        }
    }

    pub fn add(&self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Fp { p, v: a }, Scalar::Fp { p: q, v: b }) => {
                assert_eq!(p, q, "field tag mismatch");
                Scalar::Fp {
                    p: *p,
                    v: (a + b) % p,
                }
            }
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            _ => panic!("field tag mismatch"),
        }
    }

    pub fn sub(&self, rhs: &Scalar) -> Scalar {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Fp { p, v } => Scalar::Fp {
                p: *p,
                v: if *v == 0 { 0 } else { p - v },
            },
            Scalar::Rat(a) => Scalar::Rat(-a),
        }
    }

    pub fn mul(&self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Fp { p, v: a }, Scalar::Fp { p: q, v: b }) => {
                assert_eq!(p, q, "field tag mismatch");
                Scalar::Fp {
                    p: *p,
                    v: a * b % p,
                }
            }
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            _ => panic!("field tag mismatch"),
        }
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(&self) -> Scalar {
        match self {
            Scalar::Fp { p, v } => {
                assert!(*v != 0, "division by zero");
                Scalar::Fp {
                    p: *p,
                    v: mod_inv(*v, *p),
                }
            }
            Scalar::Rat(a) => {
                assert!(!a.is_zero(), "division by zero");
                Scalar::Rat(a.recip())
            }
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Fp { v, .. } => write!(f, "{v}"),
            Scalar::Rat(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
        }
    }
}

/// Extended Euclid inverse of a mod p, 0 < a < p.
pub(crate) fn mod_inv(a: u64, p: u64) -> u64 {
    let (mut t, mut new_t): (i64, i64) = (0, 1);
    let (mut r, mut new_r): (i64, i64) = (p as i64, a as i64);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    debug_assert_eq!(r, 1, "not invertible mod p");
    t.rem_euclid(p as i64) as u64
}

/// Barrett reducer for a fixed prime p < 2^31; reduces any x < 2^62.
#[derive(Clone, Copy)]
pub(crate) struct FpRed {
    pub p: u64,
    magic: u64,
}

impl FpRed {
    pub fn new(p: u64) -> Self {
        FpRed {
            p,
            magic: u64::MAX / p,
        }
    }

    #[inline(always)]
    pub fn red(&self, x: u64) -> u64 {
        let q = ((x as u128 * self.magic as u128) >> 64) as u64;
        let mut r = x - q * self.p;
        while r >= self.p {
            r -= self.p;
        }
        r
    }

    #[inline(always)]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        self.red(a * b)
    }

    pub fn inv(&self, a: u64) -> u64 {
        mod_inv(a, self.p)
    }

    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }
}

/// `rationals` helper: the canonical Q tag.
pub const QQ: FieldKind = FieldKind::Rat;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_validation() {
        assert!(FieldKind::Fp(101).validate().is_ok());
        assert!(FieldKind::Fp(2).validate().is_ok());
        assert!(FieldKind::Fp(91).validate().is_err()); // 7*13
        assert!(FieldKind::Fp(1).validate().is_err());
        assert!(FieldKind::Rat.validate().is_ok());
    }

    #[test]
    fn fp_arith() {
        let f = FieldKind::Fp(5);
        let two = f.from_int(2);
        let three = f.from_int(3);
        assert_eq!(two.mul(&three), f.from_int(1));
        assert_eq!(two.inv(), three); // 2*3 = 6 = 1 mod 5
        assert_eq!(two.add(&three), f.zero());
        assert_eq!(f.from_int(-1), f.from_int(4));
    }

    #[test]
    fn rat_arith() {
        let f = FieldKind::Rat;
        let half = f.from_int(1).mul(&f.from_int(2).inv());
        assert_eq!(half.add(&half), f.one());
        assert_eq!(format!("{}", half), "1/2");
    }

    #[test]
    fn barrett_matches_naive() {
        for &p in &[2u64, 3, 101, 65537, (1 << 31) - 1] {
            let r = FpRed::new(p);
            for &x in &[
                0u64,
                1,
                p - 1,
                p,
                p + 1,
                p * p - 1,
                (p - 1) * (p - 1) + p - 1,
            ] {
                assert_eq!(r.red(x), x % p, "p={p} x={x}");
            }
        }
    }
}
