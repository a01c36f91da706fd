//! Exact scalars over the rationals or a prime field.
//!
//! Every arithmetic operation is exact; there is no floating point anywhere
//! in this crate. Rationals are arbitrary-precision fractions in lowest
//! terms, prime-field elements are canonical residues.

use crate::error::{Error, Result};
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

/// The ground field: the rationals or a prime field F_p.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Rationals,
    Prime(u64),
}

/// A field element. Interpreting an `Fp` residue requires the `FieldSpec`
/// it belongs to; values never mix fields.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rat(BigRational),
    Fp(u64),
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl FieldSpec {
    pub fn rationals() -> Self {
        FieldSpec::Rationals
    }

    pub fn prime(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::Invalid(format!("{p} is not prime")));
        }
        Ok(FieldSpec::Prime(p))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rat(BigRational::zero()),
            FieldSpec::Prime(_) => Scalar::Fp(0),
        }
    }

    pub fn one(&self) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rat(BigRational::one()),
            FieldSpec::Prime(_) => Scalar::Fp(1),
        }
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rat(BigRational::from(BigInt::from(n))),
            FieldSpec::Prime(p) => {
                let p = *p as i128;
                Scalar::Fp((((n as i128) % p + p) % p) as u64)
            }
        }
    }

    pub fn is_zero(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Fp(v) => *v == 0,
        }
    }

    pub fn is_one(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Rat(r) => r.is_one(),
            Scalar::Fp(v) => *v == 1,
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (FieldSpec::Rationals, Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x + y),
            (FieldSpec::Prime(p), Scalar::Fp(x), Scalar::Fp(y)) => {
                Scalar::Fp(((*x as u128 + *y as u128) % (*p as u128)) as u64)
            }
            _ => panic!("scalar/field mismatch"),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.add(a, &self.neg(b))
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match (self, a) {
            (FieldSpec::Rationals, Scalar::Rat(x)) => Scalar::Rat(-x),
            (FieldSpec::Prime(p), Scalar::Fp(x)) => Scalar::Fp(if *x == 0 { 0 } else { p - x }),
            _ => panic!("scalar/field mismatch"),
        }
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (FieldSpec::Rationals, Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x * y),
            (FieldSpec::Prime(p), Scalar::Fp(x), Scalar::Fp(y)) => {
                Scalar::Fp(((*x as u128 * *y as u128) % (*p as u128)) as u64)
            }
            _ => panic!("scalar/field mismatch"),
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: &Scalar) -> Option<Scalar> {
        match (self, a) {
            (FieldSpec::Rationals, Scalar::Rat(x)) => {
                if x.is_zero() {
                    None
                } else {
                    Some(Scalar::Rat(x.recip()))
                }
            }
            (FieldSpec::Prime(p), Scalar::Fp(x)) => {
                if *x == 0 {
                    None
                } else {
                    // extended Euclid on signed 128-bit, safe for u64 moduli
                    let (mut r0, mut r1) = (*p as i128, *x as i128);
                    let (mut t0, mut t1) = (0i128, 1i128);
                    while r1 != 0 {
                        let q = r0 / r1;
                        (r0, r1) = (r1, r0 - q * r1);
                        (t0, t1) = (t1, t0 - q * t1);
                    }
                    debug_assert_eq!(r0, 1);
                    let p = *p as i128;
                    Some(Scalar::Fp(((t0 % p + p) % p) as u64))
                }
            }
            _ => panic!("scalar/field mismatch"),
        }
    }

    pub fn div(&self, a: &Scalar, b: &Scalar) -> Option<Scalar> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    /// Parse an integer or a fraction `p/q`.
    pub fn parse(&self, s: &str) -> Result<Scalar> {
        let s = s.trim();
        let bad = || Error::Parse(format!("invalid coefficient `{s}`"));
        let (num_s, den_s) = match s.split_once('/') {
            Some((n, d)) => (n, Some(d)),
            None => (s, None),
        };
        let numer: i64 = num_s.parse().map_err(|_| bad())?;
        let denom: i64 = match den_s {
            Some(d) => d.parse().map_err(|_| bad())?,
            None => 1,
        };
        if denom == 0 {
            return Err(bad());
        }
        let d = self.from_i64(denom);
        let n = self.from_i64(numer);
        self.div(&n, &d)
            .ok_or_else(|| Error::Parse(format!("coefficient `{s}` has zero denominator in F_p")))
    }

    /// Exact decimal-free rendering, re-parseable by `parse`.
    pub fn render(&self, a: &Scalar) -> String {
        match a {
            Scalar::Rat(r) => {
                if r.denom().is_one() {
                    r.numer().to_string()
                } else {
                    format!("{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Fp(v) => v.to_string(),
        }
    }

    /// True when the characteristic is zero or exceeds `dim`, the range in
    /// which the trace-form radical criterion is valid.
    pub fn trace_form_valid(&self, dim: usize) -> bool {
        match self {
            FieldSpec::Rationals => true,
            FieldSpec::Prime(p) => *p as usize > dim,
        }
    }
}

impl Scalar {
    pub fn is_negative_rat(&self) -> bool {
        matches!(self, Scalar::Rat(r) if r.is_negative())
    }
}
