//! Currying `f ↦ f^∨` and uncurrying `g ↦ g^∧` for functions on `U × V`.
//!
//! Function-valued maps are represented extensionally: `f^∨(x)` is the slice
//! `y ↦ f(x, y)` of the underlying two-argument function.

use alloc::vec::Vec;

use crate::calculus::{iterated, partial_ij};
use crate::error::{domain, Result};
use crate::expr::Expr;
use crate::function::GroupFunction;
use crate::group::{GroupElement, GroupSpec, LieDirection};
use crate::scalar::Field;

/// `x ↦ f(x, ·)`; the first argument is the curried one.
#[derive(Debug, Clone, PartialEq)]
pub struct CurriedFunction {
    inner: GroupFunction,
}

impl CurriedFunction {
    /// A family `x ↦ (y ↦ g(x)(y))` given by expressions in `x` (argument 0)
    /// and `y` (argument 1).
    pub fn family(x_spec: GroupSpec, y_spec: GroupSpec, components: Vec<Expr>) -> Result<Self> {
        Ok(Self { inner: GroupFunction::new(alloc::vec![x_spec, y_spec], components)? })
    }

    /// `g(x)`, a function on `V`.
    pub fn at(&self, x: &GroupElement<f64>) -> Result<GroupFunction> {
        self.inner.slice(x)
    }

    pub fn source(&self) -> &GroupSpec {
        &self.inner.arg_specs()[0]
    }
    pub fn fibre(&self) -> &GroupSpec {
        &self.inner.arg_specs()[1]
    }
}

pub fn curry(f: &GroupFunction) -> Result<CurriedFunction> {
    if f.arity() != 2 {
        return Err(domain("only two-argument functions can be curried"));
    }
    Ok(CurriedFunction { inner: f.clone() })
}

/// `g^∧(x, y) = g(x)(y)`.
pub fn uncurry(g: &CurriedFunction) -> GroupFunction {
    g.inner.clone()
}

/// `(D_{γᵢ}···D_{γ₁} g)(x)` as a function of `y`: the slice at `x` of
/// `D_{(γᵢ,0)}···D_{(γ₁,0)} g^∧`.
pub fn curried_derivative(
    g: &CurriedFunction,
    x: &GroupElement<f64>,
    g_dirs: &[LieDirection<f64>],
) -> Result<GroupFunction> {
    g.inner.differentiate(0, g_dirs)?.slice(x)
}

/// `(d⁽ʲ⁾(d⁽ⁱ⁾g(x, γs))(y, ηs), d^{(i,j)}g^∧(x, y, γs, ηs))`.
pub fn verify_exchange<F: Field>(
    g: &CurriedFunction,
    x: &GroupElement<f64>,
    y: &GroupElement<f64>,
    g_dirs: &[LieDirection<f64>],
    h_dirs: &[LieDirection<f64>],
) -> Result<(Vec<F>, Vec<F>)> {
    let slice = curried_derivative(g, x, g_dirs)?;
    if !g.inner.contains(&[x.clone(), y.clone()])? {
        return Err(crate::error::Error::OutsideDomain(alloc::format!("{:?}", (x.flatten(), y.flatten()))));
    }
    let left = iterated::<F>(&slice, y, h_dirs)?;
    let right = partial_ij::<F>(&g.inner, x, y, g_dirs, h_dirs)?;
    Ok((left, right))
}

/// `(D_{ηⱼ}···D_{η₁}(f^∨(x)))(y)` against `(D_{(0,ηⱼ)}···D_{(0,η₁)} f)(x, y)`.
pub fn slice_derivative_sides<F: Field>(
    f: &GroupFunction,
    x: &GroupElement<f64>,
    y: &GroupElement<f64>,
    h_dirs: &[LieDirection<f64>],
) -> Result<(Vec<F>, Vec<F>)> {
    let slice = curry(f)?.at(x)?;
    Ok((iterated::<F>(&slice, y, h_dirs)?, partial_ij::<F>(f, x, y, &[], h_dirs)?))
}

/// Two routes to `d^{(i,j)}(g^∧)` for a family `g`: mixed partials of the
/// uncurried map, and `(d⁽ʲ⁾ ∘ d⁽ⁱ⁾ g)^∧` read off the curried side.
pub fn uncurried_derivative_routes<F: Field>(
    g: &CurriedFunction,
    x: &GroupElement<f64>,
    y: &GroupElement<f64>,
    g_dirs: &[LieDirection<f64>],
    h_dirs: &[LieDirection<f64>],
) -> Result<(Vec<F>, Vec<F>)> {
    let direct = partial_ij::<F>(&uncurry(g), x, y, g_dirs, h_dirs)?;
    let via_curried = iterated::<F>(&curried_derivative(g, x, g_dirs)?, y, h_dirs)?;
    Ok((direct, via_curried))
}
