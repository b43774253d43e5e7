//! Truncated multivariate Taylor scalars with square-free generators.
//!
//! A `MultiDual` of order `n` carries one coefficient per subset of the
//! generators `ε₁ … εₙ`, each of which squares to zero. Coefficients are
//! stored densely, indexed by the bitmask of the subset (bit `s - 1` stands
//! for `εₛ`). The coefficient of `ε₁···εₙ` is the mixed derivative along the
//! `n` perturbation slots.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};

use crate::error::{domain, Error, Result};
use crate::expr::Primitive;
use crate::scalar::{taylor_coeffs, Field, Scalar};

/// Maximum number of generators.
pub const ORDER_CAP: usize = 8;

#[derive(Debug, Clone, PartialEq)]
pub struct MultiDual<F> {
    order: usize,
    coeffs: Vec<F>,
}

impl<F: Field> MultiDual<F> {
    /// Order-0 dual, i.e. the field element itself.
    pub fn constant(v: F) -> Self {
        Self { order: 0, coeffs: vec![v] }
    }

    /// Embeds `v` with `order` generators, all infinitesimal parts zero.
    pub fn lift(v: F, order: usize) -> Result<Self> {
        check_cap(order)?;
        let mut coeffs = vec![F::zero(); 1 << order];
        coeffs[0] = v;
        Ok(Self { order, coeffs })
    }

    /// `v + εₛ` in the algebra with `order` generators (`slot` is 1-based).
    pub fn variable(v: F, slot: usize, order: usize) -> Result<Self> {
        let mut d = Self::lift(v, order)?;
        if slot == 0 || slot > order {
            return Err(domain("generator slot out of range"));
        }
        d.coeffs[1 << (slot - 1)] = F::one();
        Ok(d)
    }

    /// Builds a dual from dense coefficients; the length must be a power of two.
    pub fn from_coeffs(coeffs: Vec<F>) -> Result<Self> {
        let len = coeffs.len();
        if len == 0 || !len.is_power_of_two() {
            return Err(domain("coefficient count must be a power of two"));
        }
        let order = len.trailing_zeros() as usize;
        check_cap(order)?;
        Ok(Self { order, coeffs })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    /// Coefficient of the empty monomial.
    pub fn value(&self) -> &F {
        &self.coeffs[0]
    }

    /// Coefficient of `∏_{s ∈ slots} εₛ` (1-based, duplicates rejected).
    pub fn coeff(&self, slots: &[usize]) -> Result<F> {
        let mut mask = 0usize;
        for &s in slots {
            if s == 0 || s > self.order {
                return Err(domain("generator slot out of range"));
            }
            let bit = 1 << (s - 1);
            if mask & bit != 0 {
                return Err(domain("repeated generator in subset"));
            }
            mask |= bit;
        }
        Ok(self.coeffs[mask].clone())
    }

    /// Coefficient by bitmask.
    pub fn coeff_mask(&self, mask: usize) -> Result<F> {
        self.coeffs
            .get(mask)
            .cloned()
            .ok_or_else(|| domain("subset mask out of range"))
    }

    /// Coefficient of the product of all generators.
    pub fn top(&self) -> F {
        self.coeffs[self.coeffs.len() - 1].clone()
    }

    /// Re-embeds into an algebra with more generators.
    pub fn promote(&self, order: usize) -> Self {
        if order <= self.order {
            return self.clone();
        }
        let mut coeffs = vec![F::zero(); 1 << order];
        coeffs[..self.coeffs.len()].clone_from_slice(&self.coeffs);
        Self { order, coeffs }
    }

    /// Collapses an order-0 dual to its field value.
    pub fn into_field(self) -> Result<F> {
        if self.coeffs[1..].iter().any(|c| !c.is_zero()) {
            return Err(domain("dual number has a non-zero infinitesimal part"));
        }
        Ok(self.coeffs.into_iter().next().expect("non-empty"))
    }

    /// Splits off the trailing `extra` generators: returns the dual over the
    /// leading `order - extra` generators whose coefficient at subset `T` is
    /// this dual's coefficient at `T ∪ {all trailing generators}`.
    pub fn coefficient_of_trailing(&self, extra: usize) -> Result<Self> {
        if extra > self.order {
            return Err(domain("more trailing generators than the order"));
        }
        let keep = self.order - extra;
        let high = ((1usize << extra) - 1) << keep;
        let coeffs = (0..1usize << keep)
            .map(|t| self.coeffs[t | high].clone())
            .collect();
        Ok(Self { order: keep, coeffs })
    }

    /// Strict product: both operands must have the same order.
    pub fn try_mul(&self, rhs: &Self) -> Result<Self> {
        if self.order != rhs.order {
            return Err(domain("multi-dual order mismatch"));
        }
        Ok(self.mul_same(rhs))
    }

    /// Truncated Taylor composition `φ(v + n) = Σ φ⁽ᵏ⁾(v)/k! · nᵏ`.
    pub fn compose(&self, prim: Primitive) -> Result<Self> {
        let v = self.coeffs[0].clone();
        let taylor = taylor_coeffs(prim, &v, self.order)?;
        if self.order == 0 {
            return Ok(Self::constant(taylor.into_iter().next().expect("one")));
        }
        let mut nil = self.clone();
        nil.coeffs[0] = F::zero();
        // Horner in the nilpotent part; n^(order+1) vanishes.
        let mut acc = Self::lift(taylor[self.order].clone(), self.order)?;
        for k in (0..self.order).rev() {
            acc = acc.mul_same(&nil);
            acc.coeffs[0] = acc.coeffs[0].clone() + taylor[k].clone();
        }
        Ok(acc)
    }

    fn mul_same(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len();
        let mut out = vec![F::zero(); n];
        for (a_mask, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let free = (n - 1) & !a_mask;
            // enumerate all submasks b of the complement of a
            let mut b_mask = free;
            loop {
                let b = &rhs.coeffs[b_mask];
                if !b.is_zero() {
                    let idx = a_mask | b_mask;
                    out[idx] = out[idx].clone() + a.clone() * b.clone();
                }
                if b_mask == 0 {
                    break;
                }
                b_mask = (b_mask - 1) & free;
            }
        }
        Self { order: self.order, coeffs: out }
    }

    fn zip_with(self, rhs: Self, op: impl Fn(F, F) -> F) -> Self {
        let order = self.order.max(rhs.order);
        let a = if self.order < order { self.promote(order) } else { self };
        let b = if rhs.order < order { rhs.promote(order) } else { rhs };
        let coeffs = a.coeffs.into_iter().zip(b.coeffs).map(|(x, y)| op(x, y)).collect();
        Self { order, coeffs }
    }
}

fn check_cap(order: usize) -> Result<()> {
    if order > ORDER_CAP {
        Err(Error::Capacity { requested: order, cap: ORDER_CAP })
    } else {
        Ok(())
    }
}

// Operators promote the lower-order operand: an order-k dual is an element of
// every algebra with at least k generators.
impl<F: Field> Add for MultiDual<F> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl<F: Field> Sub for MultiDual<F> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl<F: Field> Mul for MultiDual<F> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let order = self.order.max(rhs.order);
        if self.order == 0 {
            let c = self.coeffs[0].clone();
            let coeffs = rhs.coeffs.into_iter().map(|x| c.clone() * x).collect();
            return Self { order, coeffs };
        }
        if rhs.order == 0 {
            let c = rhs.coeffs[0].clone();
            let coeffs = self.coeffs.into_iter().map(|x| x * c.clone()).collect();
            return Self { order, coeffs };
        }
        self.promote(order).mul_same(&rhs.promote(order))
    }
}

impl<F: Field> Neg for MultiDual<F> {
    type Output = Self;
    fn neg(self) -> Self {
        let coeffs = self.coeffs.into_iter().map(|c| -c).collect();
        Self { order: self.order, coeffs }
    }
}

impl<F: Field> Scalar for MultiDual<F> {
    type Field = F;
    const EXACT: bool = F::EXACT;

    fn from_f64(v: f64) -> Self {
        Self::constant(F::from_f64(v))
    }
    fn from_field(v: F) -> Self {
        Self::constant(v)
    }
    fn to_f64(&self) -> f64 {
        self.coeffs[0].to_f64()
    }
    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }
    fn recip(&self) -> Result<Self> {
        self.compose(Primitive::Recip)
    }
    fn apply(&self, prim: Primitive) -> Result<Self> {
        self.compose(prim)
    }
    fn nil_order(&self) -> usize {
        self.order
    }
    fn into_dual(self) -> MultiDual<F> {
        self
    }
    fn from_dual(d: MultiDual<F>) -> Result<Self> {
        Ok(d)
    }
}
