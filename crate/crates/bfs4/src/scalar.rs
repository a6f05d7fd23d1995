//! Exact scalar arithmetic: arbitrary-precision rationals and prime fields.
//!
//! A scalar lives in a coefficient domain identified by a characteristic:
//! `0` for the rationals, a prime `p` for `Z/p`. The characteristic is owned
//! by the enclosing [`crate::poly::PolyRing`]; scalar operations take it as a
//! parameter so the variants stay a single word of payload.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Default prime for finite-field runs. Large enough that accidental
/// coefficient collisions do not occur at desk scale.
pub const DEFAULT_PRIME: u64 = 32003;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Coeff {
    Q(BigRational),
    Fp(u64),
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn fp_pow(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

pub fn fp_inv(v: u64, p: u64) -> Option<u64> {
    if v.is_multiple_of(p) {
        None
    } else {
        Some(fp_pow(v, p - 2, p))
    }
}

fn bigint_mod(n: &BigInt, p: u64) -> u64 {
    let pp = BigInt::from(p);
    let mut r = n % &pp;
    if r.is_negative() {
        r += &pp;
    }
    r.to_u64().expect("residue fits u64")
}

impl Coeff {
    pub fn zero(characteristic: u64) -> Self {
        if characteristic == 0 {
            Coeff::Q(BigRational::zero())
        } else {
            Coeff::Fp(0)
        }
    }

    pub fn one(characteristic: u64) -> Self {
        if characteristic == 0 {
            Coeff::Q(BigRational::one())
        } else {
            Coeff::Fp(1)
        }
    }

    pub fn from_i64(v: i64, characteristic: u64) -> Self {
        if characteristic == 0 {
            Coeff::Q(BigRational::from_integer(BigInt::from(v)))
        } else {
            let p = characteristic as i128;
            let r = ((v as i128 % p) + p) % p;
            Coeff::Fp(r as u64)
        }
    }

    /// Build `num/den` in the domain. In `Z/p` the denominator is inverted;
    /// a denominator divisible by `p` is an error.
    pub fn from_ratio(num: BigInt, den: BigInt, characteristic: u64) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::InvalidParams("zero denominator".into()));
        }
        if characteristic == 0 {
            Ok(Coeff::Q(BigRational::new(num, den)))
        } else {
            let p = characteristic;
            let d = bigint_mod(&den, p);
            let inv = fp_inv(d, p).ok_or_else(|| {
                Error::InvalidParams(format!("denominator {den} is zero mod {p}"))
            })?;
            Ok(Coeff::Fp(bigint_mod(&num, p) * inv % p))
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Coeff::Q(r) => r.is_zero(),
            Coeff::Fp(v) => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Coeff::Q(r) => r.is_one(),
            Coeff::Fp(v) => *v == 1,
        }
    }

    pub fn add(&self, other: &Coeff, characteristic: u64) -> Coeff {
        match (self, other) {
            (Coeff::Q(a), Coeff::Q(b)) => Coeff::Q(a + b),
            (Coeff::Fp(a), Coeff::Fp(b)) => Coeff::Fp((a + b) % characteristic),
            _ => panic!("mixed coefficient domains"),
        }
    }

    pub fn sub(&self, other: &Coeff, characteristic: u64) -> Coeff {
        match (self, other) {
            (Coeff::Q(a), Coeff::Q(b)) => Coeff::Q(a - b),
            (Coeff::Fp(a), Coeff::Fp(b)) => {
                Coeff::Fp((a + characteristic - b) % characteristic)
            }
            _ => panic!("mixed coefficient domains"),
        }
    }

    pub fn mul(&self, other: &Coeff, characteristic: u64) -> Coeff {
        match (self, other) {
            (Coeff::Q(a), Coeff::Q(b)) => Coeff::Q(a * b),
            (Coeff::Fp(a), Coeff::Fp(b)) => Coeff::Fp(a * b % characteristic),
            _ => panic!("mixed coefficient domains"),
        }
    }

    pub fn neg(&self, characteristic: u64) -> Coeff {
        match self {
            Coeff::Q(a) => Coeff::Q(-a),
            Coeff::Fp(a) => Coeff::Fp(if *a == 0 { 0 } else { characteristic - a }),
        }
    }

    pub fn inv(&self, characteristic: u64) -> Option<Coeff> {
        match self {
            Coeff::Q(a) => {
                if a.is_zero() {
                    None
                } else {
                    Some(Coeff::Q(a.recip()))
                }
            }
            Coeff::Fp(a) => fp_inv(*a, characteristic).map(Coeff::Fp),
        }
    }

    /// Reduce a rational coefficient mod `p`. Fails if `p` divides the
    /// denominator.
    pub fn reduce_mod(&self, p: u64) -> Result<Coeff> {
        match self {
            Coeff::Q(r) => Coeff::from_ratio(r.numer().clone(), r.denom().clone(), p),
            Coeff::Fp(_) => Err(Error::InvalidParams(
                "cannot reduce a prime-field coefficient".into(),
            )),
        }
    }

    /// Residue in `Z/p` for numeric evaluation (rank cross-checks).
    pub fn residue(&self, p: u64) -> Result<u64> {
        match self {
            Coeff::Q(r) => {
                let d = bigint_mod(r.denom(), p);
                let inv = fp_inv(d, p).ok_or_else(|| {
                    Error::InvalidParams(format!("denominator hits the prime {p}"))
                })?;
                Ok(bigint_mod(r.numer(), p) * inv % p)
            }
            Coeff::Fp(v) => Ok(*v),
        }
    }
}

impl std::fmt::Display for Coeff {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Coeff::Q(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Coeff::Fp(v) => write!(f, "{v}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_inverse() {
        let p = DEFAULT_PRIME;
        for v in [1u64, 2, 17, p - 1] {
            let inv = fp_inv(v, p).unwrap();
            assert_eq!(v * inv % p, 1);
        }
        assert_eq!(fp_inv(0, p), None);
    }

    #[test]
    fn ratio_mod_p() {
        // 1/2 mod 5 = 3
        let c = Coeff::from_ratio(BigInt::from(1), BigInt::from(2), 5).unwrap();
        assert_eq!(c, Coeff::Fp(3));
        assert!(Coeff::from_ratio(BigInt::from(1), BigInt::from(5), 5).is_err());
    }

    #[test]
    fn q_reduction_matches_fp_arithmetic() {
        let a = Coeff::Q(BigRational::new(BigInt::from(7), BigInt::from(3)));
        let b = Coeff::Q(BigRational::new(BigInt::from(-2), BigInt::from(5)));
        let p = 32003;
        let lhs = a.mul(&b, 0).reduce_mod(p).unwrap();
        let rhs = a.reduce_mod(p).unwrap().mul(&b.reduce_mod(p).unwrap(), p);
        assert_eq!(lhs, rhs);
    }
}
