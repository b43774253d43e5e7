//! Scalar fields the evaluator is generic over.
//!
//! Three instantiations exist: plain `f64`, exact [`Exact`] rationals, and
//! [`MultiDual`] numbers over either of them. Every evaluation path in the
//! crate goes through [`Scalar`], so the same expression tree yields values,
//! exact values, or mixed directional derivatives depending on the type.

use alloc::format;
use alloc::vec::Vec;
use core::fmt::Debug;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::expr::Primitive;
use crate::multidual::MultiDual;

/// Exact rational scalar.
pub type Exact = BigRational;

/// A commutative ring with the smooth primitives of the expression language.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    /// Underlying coefficient field (`f64` or [`Exact`]).
    type Field: Field;

    /// Whether arithmetic in this scalar is free of rounding.
    const EXACT: bool;

    /// Embeds a double. Exact for [`Exact`] (the binary value is kept).
    fn from_f64(v: f64) -> Self;
    fn from_field(v: Self::Field) -> Self;
    /// Real part as a double (lossy for rationals).
    fn to_f64(&self) -> f64;
    fn is_zero(&self) -> bool;
    fn recip(&self) -> Result<Self>;
    fn apply(&self, prim: Primitive) -> Result<Self>;
    /// Largest power of the nilpotent part that can be non-zero.
    fn nil_order(&self) -> usize;
    fn into_dual(self) -> MultiDual<Self::Field>;
    fn from_dual(d: MultiDual<Self::Field>) -> Result<Self>;

    fn zero() -> Self {
        Self::from_f64(0.0)
    }
    fn one() -> Self {
        Self::from_f64(1.0)
    }
    fn div(&self, rhs: &Self) -> Result<Self> {
        Ok(self.clone() * rhs.recip()?)
    }
}

/// A base field: a scalar with no infinitesimal part.
pub trait Field: Scalar<Field = Self> {}

impl Field for f64 {}
impl Field for Exact {}

fn integral(c: f64) -> Option<i32> {
    if c.is_finite() && libm::trunc(c) == c && c.abs() <= i32::MAX as f64 {
        Some(c as i32)
    } else {
        None
    }
}

impl Scalar for f64 {
    type Field = f64;
    const EXACT: bool = false;

    fn from_f64(v: f64) -> Self {
        v
    }
    fn from_field(v: f64) -> Self {
        v
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn recip(&self) -> Result<Self> {
        if *self == 0.0 {
            return Err(Error::Evaluation("division by zero".into()));
        }
        Ok(1.0 / *self)
    }
    fn apply(&self, prim: Primitive) -> Result<Self> {
        let v = *self;
        match prim {
            Primitive::Exp => Ok(libm::exp(v)),
            Primitive::Log => {
                if v <= 0.0 {
                    Err(Error::Evaluation(format!("log of non-positive value {v}")))
                } else {
                    Ok(libm::log(v))
                }
            }
            Primitive::Sin => Ok(libm::sin(v)),
            Primitive::Cos => Ok(libm::cos(v)),
            Primitive::Recip => self.recip(),
            Primitive::Pow(c) => match integral(c) {
                Some(k) if k >= 0 => Ok(powi(v, k as u32)),
                Some(k) => Ok(powi(self.recip()?, k.unsigned_abs())),
                None if v > 0.0 => Ok(libm::pow(v, c)),
                None => Err(Error::Evaluation(format!(
                    "non-integer power {c} of non-positive value {v}"
                ))),
            },
        }
    }
    fn nil_order(&self) -> usize {
        0
    }
    fn into_dual(self) -> MultiDual<f64> {
        MultiDual::constant(self)
    }
    fn from_dual(d: MultiDual<f64>) -> Result<Self> {
        d.into_field()
    }
}

fn powi<S: Scalar>(base: S, exp: u32) -> S {
    let mut acc = S::one();
    let mut b = base;
    let mut e = exp;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b.clone();
        }
        e >>= 1;
        if e > 0 {
            b = b.clone() * b;
        }
    }
    acc
}

impl Scalar for Exact {
    type Field = Exact;
    const EXACT: bool = true;

    fn from_f64(v: f64) -> Self {
        BigRational::from_float(v).unwrap_or_else(<BigRational as num_traits::Zero>::zero)
    }
    fn from_field(v: Exact) -> Self {
        v
    }
    fn to_f64(&self) -> f64 {
        self.to_f64_lossy()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn recip(&self) -> Result<Self> {
        if Zero::is_zero(self) {
            return Err(Error::Evaluation("division by zero".into()));
        }
        Ok(BigRational::recip(self))
    }
    fn apply(&self, prim: Primitive) -> Result<Self> {
        match prim {
            Primitive::Recip => Scalar::recip(self),
            Primitive::Pow(c) => match integral(c) {
                Some(k) if k >= 0 => Ok(powi(self.clone(), k as u32)),
                Some(k) => Ok(powi(Scalar::recip(self)?, k.unsigned_abs())),
                None => Err(Error::NotExact(prim)),
            },
            other => Err(Error::NotExact(other)),
        }
    }
    fn nil_order(&self) -> usize {
        0
    }
    fn into_dual(self) -> MultiDual<Exact> {
        MultiDual::constant(self)
    }
    fn from_dual(d: MultiDual<Exact>) -> Result<Self> {
        d.into_field()
    }
}

trait LossyFloat {
    fn to_f64_lossy(&self) -> f64;
}

impl LossyFloat for BigRational {
    fn to_f64_lossy(&self) -> f64 {
        // Shift both parts into f64 range before dividing so huge
        // numerators and denominators do not overflow to inf/inf.
        let num = self.numer();
        let den = self.denom();
        let shift = num.bits().max(den.bits()).saturating_sub(1000) as usize;
        let n: BigInt = num >> shift;
        let d: BigInt = den >> shift;
        match (n.to_f64(), d.to_f64()) {
            (Some(a), Some(b)) if b != 0.0 => a / b,
            _ => {
                if self.is_negative() {
                    f64::NEG_INFINITY
                } else if self.is_one() {
                    1.0
                } else {
                    f64::INFINITY
                }
            }
        }
    }
}

/// Normalised Taylor coefficients `φ⁽ᵏ⁾(v) / k!` for `k = 0..=n`.
pub(crate) fn taylor_coeffs<F: Field>(prim: Primitive, v: &F, n: usize) -> Result<Vec<F>> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(v.apply(prim)?);
    if n == 0 {
        return Ok(out);
    }
    let inv_fact = |k: usize| -> F {
        let mut f = F::one();
        for m in 2..=k {
            f = f * F::from_f64(m as f64);
        }
        // k! is a non-zero integer
        f.recip().unwrap_or_else(|_| F::zero())
    };
    match prim {
        Primitive::Exp => {
            let e = out[0].clone();
            for k in 1..=n {
                out.push(e.clone() * inv_fact(k));
            }
        }
        Primitive::Sin | Primitive::Cos => {
            let s = v.apply(Primitive::Sin)?;
            let c = v.apply(Primitive::Cos)?;
            // derivative cycle of sin: sin, cos, -sin, -cos
            let cycle = [s.clone(), c.clone(), -s, -c];
            let offset = if prim == Primitive::Sin { 0 } else { 1 };
            for k in 1..=n {
                out.push(cycle[(k + offset) % 4].clone() * inv_fact(k));
            }
        }
        Primitive::Log => {
            let r = v.recip()?;
            let mut rk = F::one();
            for k in 1..=n {
                rk = rk * r.clone();
                let mut c = rk.clone() * F::from_f64(k as f64).recip()?;
                if k % 2 == 0 {
                    c = -c;
                }
                out.push(c);
            }
        }
        Primitive::Recip => {
            let r = v.recip()?;
            let mut rk = r.clone();
            for k in 1..=n {
                rk = rk * r.clone();
                out.push(if k % 2 == 1 { -rk.clone() } else { rk.clone() });
            }
        }
        Primitive::Pow(c) => {
            let mut binom = 1.0;
            let exhausted = |k: usize| integral(c).is_some_and(|m| m >= 0 && (k as i64) > m as i64);
            for k in 1..=n {
                binom *= (c - (k as f64 - 1.0)) / k as f64;
                if exhausted(k) {
                    out.push(F::zero());
                } else {
                    out.push(F::from_f64(binom) * v.apply(Primitive::Pow(c - k as f64))?);
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_from_f64_keeps_binary_value() {
        let q = Exact::from_f64(0.375);
        assert_eq!(q, BigRational::new(3.into(), 8.into()));
        assert_eq!(Scalar::to_f64(&q), 0.375);
    }

    #[test]
    fn exact_rejects_transcendental_primitives() {
        let q = Exact::from_f64(1.0);
        assert_eq!(q.apply(Primitive::Exp), Err(Error::NotExact(Primitive::Exp)));
        assert!(q.apply(Primitive::Pow(0.5)).is_err());
        assert_eq!(
            Exact::from_f64(2.0).apply(Primitive::Pow(-2.0)).unwrap(),
            Exact::from_f64(0.25)
        );
    }

    #[test]
    fn float_domain_errors() {
        assert!(0.0f64.apply(Primitive::Log).is_err());
        assert!((-1.0f64).apply(Primitive::Pow(0.5)).is_err());
        assert!(0.0f64.apply(Primitive::Recip).is_err());
        assert_eq!((-2.0f64).apply(Primitive::Pow(3.0)).unwrap(), -8.0);
    }

    #[test]
    fn taylor_coefficients_of_log_at_one() {
        let c = taylor_coeffs(Primitive::Log, &1.0f64, 4).unwrap();
        let expected = [0.0, 1.0, -0.5, 1.0 / 3.0, -0.25];
        for (a, b) in c.iter().zip(expected) {
            assert!((a - b).abs() < 1e-15);
        }
    }

    #[test]
    fn taylor_coefficients_of_integer_power_terminate() {
        let c = taylor_coeffs(Primitive::Pow(2.0), &Exact::from_f64(3.0), 4).unwrap();
        let expected = [9.0, 6.0, 1.0, 0.0, 0.0];
        for (a, b) in c.iter().zip(expected) {
            assert_eq!(*a, Exact::from_f64(b));
        }
    }
}
