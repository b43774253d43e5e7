//! Derivative operators along one-parameter subgroups and the identities
//! relating them.
//!
//! Iterated derivatives are read off multi-dual evaluations: for
//! `d⁽ⁱ⁾f(x, γ₁, …, γᵢ) = (D_{γᵢ}···D_{γ₁}f)(x)` the argument is perturbed to
//! `x · exp(εᵢXᵢ) ··· exp(ε₁X₁)` and the coefficient of `ε₁···εᵢ` is taken.
//! The derivative applied last multiplies nearest to `x`; in non-abelian
//! groups the order matters.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{domain, Error, Result};
use crate::expr::Expr;
use crate::function::GroupFunction;
use crate::group::{infinitesimal, one_param_eval, GroupElement, GroupSpec, LieDirection};
use crate::hom::GroupHom;
use crate::matrix::Matrix;
use crate::multidual::{MultiDual, ORDER_CAP};
use crate::quadrature::gauss_legendre_unit;
use crate::scalar::Field;

/// Default Gauss–Legendre node count for [`integral_rep`].
pub const DEFAULT_QUAD_NODES: usize = 16;
/// Default finite-difference step for first-order oracles.
pub const FD_STEP_ORDER1: f64 = 1e-3;
/// Default finite-difference step for second-order oracles.
pub const FD_STEP_ORDER2: f64 = 1e-2;
/// Steps at which difference quotients are sampled before extrapolating to `t = 0`.
pub const QUOTIENT_STEPS: [f64; 3] = [1e-2, 1e-3, 1e-4];

/// `x · exp(ε_{s+i-1} Xᵢ) ··· exp(ε_s X₁)` with `s = first_slot`, inside an
/// algebra with `order` generators.
pub(crate) fn perturb<F: Field>(
    x: &GroupElement<MultiDual<F>>,
    dirs: &[LieDirection<f64>],
    first_slot: usize,
    order: usize,
) -> Result<GroupElement<MultiDual<F>>> {
    let mut acc = x.clone();
    for (k, dir) in dirs.iter().enumerate().rev() {
        if dir.spec() != x.spec() {
            return Err(domain(format!("direction in {} applied to a point of {}", dir.spec(), x.spec())));
        }
        acc = acc.multiply(&infinitesimal::<F>(dir, first_slot + k, order)?)?;
    }
    Ok(acc)
}

fn lift_dual<F: Field>(x: &GroupElement<f64>) -> GroupElement<MultiDual<F>> {
    x.map(&|v| MultiDual::constant(F::from_f64(*v)))
}

fn ensure_inside(f: &GroupFunction, args: &[GroupElement<f64>]) -> Result<()> {
    if f.contains(args)? {
        Ok(())
    } else {
        Err(Error::OutsideDomain(format!("{:?}", args.iter().map(|a| a.flatten()).collect::<Vec<_>>())))
    }
}

fn check_order(n: usize) -> Result<()> {
    if n > ORDER_CAP {
        Err(Error::Capacity { requested: n, cap: ORDER_CAP })
    } else {
        Ok(())
    }
}

fn top_coefficients<F: Field>(values: Vec<MultiDual<F>>, order: usize) -> Vec<F> {
    values.into_iter().map(|v| v.promote(order).top()).collect()
}

/// `d⁽ⁱ⁾f(x, γ₁, …, γᵢ)` for a one-argument `f`; `i = 0` is plain evaluation.
pub fn iterated<F: Field>(
    f: &GroupFunction,
    x: &GroupElement<f64>,
    dirs: &[LieDirection<f64>],
) -> Result<Vec<F>> {
    if f.arity() != 1 {
        return Err(domain("iterated derivatives need a one-argument function"));
    }
    check_order(dirs.len())?;
    ensure_inside(f, core::slice::from_ref(x))?;
    let order = dirs.len();
    let point = perturb(&lift_dual::<F>(x), dirs, 1, order)?;
    Ok(top_coefficients(f.eval(&[point])?, order))
}

/// `D_γ f(x)`.
pub fn directional<F: Field>(
    f: &GroupFunction,
    x: &GroupElement<f64>,
    gamma: &LieDirection<f64>,
) -> Result<Vec<F>> {
    iterated(f, x, core::slice::from_ref(gamma))
}

/// `d^{(i,j)}f(x, y, γ₁…γᵢ, η₁…ηⱼ) = (D_{(γᵢ,0)}···D_{(γ₁,0)}D_{(0,ηⱼ)}···D_{(0,η₁)}f)(x, y)`.
pub fn partial_ij<F: Field>(
    f: &GroupFunction,
    x: &GroupElement<f64>,
    y: &GroupElement<f64>,
    g_dirs: &[LieDirection<f64>],
    h_dirs: &[LieDirection<f64>],
) -> Result<Vec<F>> {
    if f.arity() != 2 {
        return Err(domain("partial derivatives need a two-argument function"));
    }
    let (i, j) = (g_dirs.len(), h_dirs.len());
    check_order(i + j)?;
    ensure_inside(f, &[x.clone(), y.clone()])?;
    let order = i + j;
    let xp = perturb(&lift_dual::<F>(x), g_dirs, 1, order)?;
    let yp = perturb(&lift_dual::<F>(y), h_dirs, i + 1, order)?;
    Ok(top_coefficients(f.eval(&[xp, yp])?, order))
}

/// Central-difference estimate with one Richardson step.
#[derive(Debug, Clone, PartialEq)]
pub struct FdEstimate {
    pub value: Vec<f64>,
    /// `|est(h) − est(h/2)|` per component.
    pub error: Vec<f64>,
}

/// Finite-difference oracle for `d⁽ⁱ⁾f(x, γ, …, γ)`, `i ∈ {1, 2}`, along
/// the curve `t ↦ f(x · γ(t))`.
pub fn fd_oracle(
    f: &GroupFunction,
    x: &GroupElement<f64>,
    gamma: &LieDirection<f64>,
    order: usize,
    h: f64,
) -> Result<FdEstimate> {
    if !(order == 1 || order == 2) {
        return Err(domain("finite-difference oracle supports orders 1 and 2"));
    }
    if !(h > 0.0 && h.is_finite()) {
        return Err(domain("finite-difference step must be positive"));
    }
    if f.arity() != 1 {
        return Err(domain("finite-difference oracle needs a one-argument function"));
    }
    let along = |t: f64| -> Result<Vec<f64>> {
        let p = x.multiply(&one_param_eval(gamma, &t)?)?;
        ensure_inside(f, core::slice::from_ref(&p))?;
        f.eval(&[p])
    };
    let centre = along(0.0)?;
    let raw = |step: f64| -> Result<Vec<f64>> {
        let plus = along(step)?;
        let minus = along(-step)?;
        Ok((0..centre.len())
            .map(|k| {
                if order == 1 {
                    (plus[k] - minus[k]) / (2.0 * step)
                } else {
                    (plus[k] - 2.0 * centre[k] + minus[k]) / (step * step)
                }
            })
            .collect())
    };
    // both stencils have an even error expansion: D(h) = D + c h² + O(h⁴)
    let richardson = |step: f64| -> Result<Vec<f64>> {
        let coarse = raw(step)?;
        let fine = raw(step / 2.0)?;
        Ok(coarse.iter().zip(&fine).map(|(c, f)| (4.0 * f - c) / 3.0).collect())
    };
    let est = richardson(h)?;
    let est_half = richardson(h / 2.0)?;
    let error = est.iter().zip(&est_half).map(|(a, b)| (a - b).abs()).collect();
    Ok(FdEstimate { value: est, error })
}

/// A point `(x, γ, t)` of `U^{[1]}`, optionally with a second argument `y`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuotientPoint {
    pub x: GroupElement<f64>,
    pub gamma: LieDirection<f64>,
    pub t: f64,
    pub y: Option<GroupElement<f64>>,
}

impl QuotientPoint {
    pub fn new(x: GroupElement<f64>, gamma: LieDirection<f64>, t: f64) -> Self {
        Self { x, gamma, t, y: None }
    }

    pub fn with_y(mut self, y: GroupElement<f64>) -> Self {
        self.y = Some(y);
        self
    }

    /// `x · γ(t)`.
    pub fn endpoint(&self) -> Result<GroupElement<f64>> {
        self.x.multiply(&one_param_eval(&self.gamma, &self.t)?)
    }
}

/// `f^{[1]}(x, γ, t)`: the difference quotient for `t ≠ 0` and `df(x, γ)` at `t = 0`.
pub fn diff_quotient(f: &GroupFunction, q: &QuotientPoint) -> Result<Vec<f64>> {
    if f.arity() != 1 || q.y.is_some() {
        return Err(domain("f^[1] needs a one-argument function and no second point"));
    }
    ensure_inside(f, core::slice::from_ref(&q.x))?;
    let end = q.endpoint()?;
    ensure_inside(f, core::slice::from_ref(&end))?;
    if q.t == 0.0 {
        return directional(f, &q.x, &q.gamma);
    }
    let a = f.eval(&[end])?;
    let b = f.eval(core::slice::from_ref(&q.x))?;
    Ok(a.iter().zip(&b).map(|(a, b)| (a - b) / q.t).collect())
}

/// `f^{[1,0]}(x, γ, t, y)`; at `t = 0` this is `d^{(1,0)}f(x, y, γ)`.
pub fn diff_quotient_partial(f: &GroupFunction, q: &QuotientPoint) -> Result<Vec<f64>> {
    let y = q.y.as_ref().ok_or_else(|| domain("f^[1,0] needs the second point y"))?;
    if f.arity() != 2 {
        return Err(domain("f^[1,0] needs a two-argument function"));
    }
    ensure_inside(f, &[q.x.clone(), y.clone()])?;
    let end = q.endpoint()?;
    ensure_inside(f, &[end.clone(), y.clone()])?;
    if q.t == 0.0 {
        return partial_ij(f, &q.x, y, core::slice::from_ref(&q.gamma), &[]);
    }
    let a = f.eval(&[end, y.clone()])?;
    let b = f.eval(&[q.x.clone(), y.clone()])?;
    Ok(a.iter().zip(&b).map(|(a, b)| (a - b) / q.t).collect())
}

/// Extrapolates `f^{[1]}(x, γ, t)` sampled at [`QUOTIENT_STEPS`] to `t = 0`
/// through the interpolating polynomial in `t`.
pub fn quotient_limit(f: &GroupFunction, x: &GroupElement<f64>, gamma: &LieDirection<f64>) -> Result<Vec<f64>> {
    let samples: Vec<Vec<f64>> = QUOTIENT_STEPS
        .iter()
        .map(|&t| diff_quotient(f, &QuotientPoint::new(x.clone(), gamma.clone(), t)))
        .collect::<Result<_>>()?;
    let weights: Vec<f64> = (0..QUOTIENT_STEPS.len())
        .map(|k| {
            QUOTIENT_STEPS
                .iter()
                .enumerate()
                .filter(|(m, _)| *m != k)
                .map(|(_, tm)| tm / (tm - QUOTIENT_STEPS[k]))
                .product()
        })
        .collect();
    Ok((0..f.target_dim())
        .map(|c| samples.iter().zip(&weights).map(|(s, w)| w * s[c]).sum())
        .collect())
}

/// `∫₀¹ d^{(1,0)}f(x·γ(tu), y, γ) du` by Gauss–Legendre quadrature.
pub fn integral_rep(f: &GroupFunction, q: &QuotientPoint, quad_nodes: usize) -> Result<Vec<f64>> {
    let y = q.y.as_ref().ok_or_else(|| domain("the integral representation needs y"))?;
    if f.arity() != 2 {
        return Err(domain("the integral representation needs a two-argument function"));
    }
    let (nodes, weights) = gauss_legendre_unit(quad_nodes)?;
    let gamma = core::slice::from_ref(&q.gamma);
    let mut acc = vec![0.0; f.target_dim()];
    for (u, w) in nodes.iter().zip(&weights) {
        let p = q.x.multiply(&one_param_eval(&q.gamma, &(q.t * u))?)?;
        let d = partial_ij::<f64>(f, &p, y, gamma, &[])?;
        for (a, v) in acc.iter_mut().zip(d) {
            *a += w * v;
        }
    }
    Ok(acc)
}

/// One summand `d^{(j,i−j)}f(x, y, γ_{r₁}…γ_{r_j}, η_{s₁}…η_{s_{i−j}})`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExpansionTerm<F> {
    /// `r₁ < … < r_j` (1-based).
    pub first: Vec<usize>,
    /// `s₁ < … < s_{i−j}` (1-based).
    pub second: Vec<usize>,
    pub value: Vec<F>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Expansion<F> {
    /// `d⁽ⁱ⁾f((x,y), (γ₁,η₁), …, (γᵢ,ηᵢ))` on the product group.
    pub left: Vec<F>,
    /// Sum of all `2ⁱ` terms.
    pub right: Vec<F>,
    pub terms: Vec<ExpansionTerm<F>>,
}

/// Derivative of `f` on `G × H` along product directions, against its
/// expansion into mixed partials over all ordered splits of `{1, …, i}`.
pub fn expand_product_derivative<F: Field>(
    f: &GroupFunction,
    x: &GroupElement<f64>,
    y: &GroupElement<f64>,
    pairs: &[(LieDirection<f64>, LieDirection<f64>)],
) -> Result<Expansion<F>> {
    let i = pairs.len();
    check_order(i)?;
    let on_product = f.on_product()?;
    let point = GroupElement::pair(x.clone(), y.clone());
    let dirs: Vec<_> = pairs.iter().map(|(g, h)| LieDirection::pair(g.clone(), h.clone())).collect();
    let left = iterated::<F>(&on_product, &point, &dirs)?;

    let mut right = vec![F::zero(); f.target_dim()];
    let mut terms = Vec::with_capacity(1 << i);
    for mask in 0..(1usize << i) {
        let first: Vec<usize> = (0..i).filter(|r| mask & (1 << r) != 0).collect();
        let second: Vec<usize> = (0..i).filter(|s| mask & (1 << s) == 0).collect();
        let gs: Vec<_> = first.iter().map(|&r| pairs[r].0.clone()).collect();
        let hs: Vec<_> = second.iter().map(|&s| pairs[s].1.clone()).collect();
        let value = partial_ij::<F>(f, x, y, &gs, &hs)?;
        for (acc, v) in right.iter_mut().zip(&value) {
            *acc = acc.clone() + v.clone();
        }
        terms.push(ExpansionTerm {
            first: first.iter().map(|r| r + 1).collect(),
            second: second.iter().map(|s| s + 1).collect(),
            value,
        });
    }
    Ok(Expansion { left, right, terms })
}

/// The pair `(d^{(i,j)}f(x,y,γs,ηs), d^{(i+j)}f((x,y), (γ₁,ε_H)…(γᵢ,ε_H), (ε_G,η₁)…(ε_G,ηⱼ)))`.
pub fn rho_identity_check<F: Field>(
    f: &GroupFunction,
    x: &GroupElement<f64>,
    y: &GroupElement<f64>,
    g_dirs: &[LieDirection<f64>],
    h_dirs: &[LieDirection<f64>],
) -> Result<(Vec<F>, Vec<F>)> {
    let mixed = partial_ij::<F>(f, x, y, g_dirs, h_dirs)?;
    let padded = rho_directions(x.spec(), y.spec(), g_dirs, h_dirs);
    let total = iterated::<F>(&f.on_product()?, &GroupElement::pair(x.clone(), y.clone()), &padded)?;
    Ok((mixed, total))
}

/// `ρ_{i,j}`: pads first-factor directions with `ε_H` and second-factor
/// directions with `ε_G`.
pub fn rho_directions(
    g: &GroupSpec,
    h: &GroupSpec,
    g_dirs: &[LieDirection<f64>],
    h_dirs: &[LieDirection<f64>],
) -> Vec<LieDirection<f64>> {
    let eps_g = LieDirection::zero(g);
    let eps_h = LieDirection::zero(h);
    g_dirs
        .iter()
        .map(|d| LieDirection::pair(d.clone(), eps_h.clone()))
        .chain(h_dirs.iter().map(|d| LieDirection::pair(eps_g.clone(), d.clone())))
        .collect()
}

/// Both operator orders of the restricted Schwarz identity, each computed by
/// nesting derivative operators:
/// `(D_{(γᵢ,0)}···D_{(γ₁,0)} D_{(0,ηⱼ)}···D_{(0,η₁)} f)(x,y)` and
/// `(D_{(0,ηⱼ)}···D_{(0,η₁)} D_{(γᵢ,0)}···D_{(γ₁,0)} f)(x,y)`.
pub fn schwarz_sides<F: Field>(
    f: &GroupFunction,
    x: &GroupElement<f64>,
    y: &GroupElement<f64>,
    g_dirs: &[LieDirection<f64>],
    h_dirs: &[LieDirection<f64>],
) -> Result<(Vec<F>, Vec<F>)> {
    if f.arity() != 2 {
        return Err(domain("the Schwarz identity needs a two-argument function"));
    }
    check_order(g_dirs.len() + h_dirs.len())?;
    ensure_inside(f, &[x.clone(), y.clone()])?;
    let args = [x.lift::<F>(), y.lift::<F>()];
    let eta_first = f.differentiate(1, h_dirs)?.differentiate(0, g_dirs)?;
    let gamma_first = f.differentiate(0, g_dirs)?.differentiate(1, h_dirs)?;
    Ok((eta_first.eval(&args)?, gamma_first.eval(&args)?))
}

/// `(d^{(j,i)}(flip f)(y, x, ηs, γs), d^{(i,j)}f(x, y, γs, ηs))`.
pub fn flip_sides<F: Field>(
    f: &GroupFunction,
    x: &GroupElement<f64>,
    y: &GroupElement<f64>,
    g_dirs: &[LieDirection<f64>],
    h_dirs: &[LieDirection<f64>],
) -> Result<(Vec<F>, Vec<F>)> {
    let flipped = partial_ij::<F>(&f.flip()?, y, x, h_dirs, g_dirs)?;
    Ok((flipped, partial_ij::<F>(f, x, y, g_dirs, h_dirs)?))
}

/// `f ∘ φ` on `U = φ⁻¹(V)`.
pub fn compose_hom(f: &GroupFunction, phi: &GroupHom) -> Result<GroupFunction> {
    f.compose_hom(phi)
}

/// `(d⁽ⁱ⁾(f∘φ)(x, γs), d⁽ⁱ⁾f(φ(x), φ∘γs))`.
pub fn hom_chain_sides<F: Field>(
    f: &GroupFunction,
    phi: &GroupHom,
    x: &GroupElement<f64>,
    dirs: &[LieDirection<f64>],
) -> Result<(Vec<F>, Vec<F>)> {
    let composite = compose_hom(f, phi)?;
    let lhs = iterated::<F>(&composite, x, dirs)?;
    let pushed: Vec<_> = dirs.iter().map(|d| phi.push(d)).collect::<Result<_>>()?;
    let rhs = iterated::<F>(f, &phi.apply(x)?, &pushed)?;
    Ok((lhs, rhs))
}

/// `λ ∘ f`.
pub fn compose_linear(lambda: &Matrix<f64>, f: &GroupFunction) -> Result<GroupFunction> {
    f.compose_linear(lambda)
}

/// `(d⁽ⁱ⁾(λ∘f)(x, γs), λ · d⁽ⁱ⁾f(x, γs))`.
pub fn linear_sides<F: Field>(
    lambda: &Matrix<f64>,
    f: &GroupFunction,
    x: &GroupElement<f64>,
    dirs: &[LieDirection<f64>],
) -> Result<(Vec<F>, Vec<F>)> {
    let lhs = iterated::<F>(&compose_linear(lambda, f)?, x, dirs)?;
    let inner = iterated::<F>(f, x, dirs)?;
    let rhs = lambda.map(|c| F::from_f64(*c)).mul_vec(&inner)?;
    Ok((lhs, rhs))
}

/// `g ∘ f` for a smooth `g: ℝⁿ → ℝᵐ` written over `(coord 0 k)`.
pub fn compose_lcs(g: &[Expr], f: &GroupFunction) -> Result<GroupFunction> {
    f.compose_outer(g.to_vec())
}

/// `dg(u, v)`: derivative of `g: ℝⁿ → ℝᵐ` at `u` in direction `v`.
pub fn vector_derivative(g: &[Expr], u: &[f64], v: &[f64]) -> Result<Vec<f64>> {
    let spec = GroupSpec::Translation(u.len());
    let g_fn = GroupFunction::new(alloc::vec![spec], g.to_vec())?;
    directional::<f64>(&g_fn, &GroupElement::translation(u), &LieDirection::translation(v))
}

/// `(d(g∘f)(x, γ), dg(f(x), df(x, γ)))`.
pub fn lcs_chain_sides(
    g: &[Expr],
    f: &GroupFunction,
    x: &GroupElement<f64>,
    gamma: &LieDirection<f64>,
) -> Result<(Vec<f64>, Vec<f64>)> {
    let lhs = directional::<f64>(&compose_lcs(g, f)?, x, gamma)?;
    let u = f.eval(core::slice::from_ref(x))?;
    let v = directional::<f64>(f, x, gamma)?;
    Ok((lhs, vector_derivative(g, &u, &v)?))
}

/// Two-argument variant: `(d^{(1,0)}(g∘f)(x, p, γ), dg(f(x,p), d^{(1,0)}f(x, p, γ)))`.
pub fn lcs_chain_sides_partial(
    g: &[Expr],
    f: &GroupFunction,
    x: &GroupElement<f64>,
    p: &GroupElement<f64>,
    gamma: &LieDirection<f64>,
) -> Result<(Vec<f64>, Vec<f64>)> {
    let gs = core::slice::from_ref(gamma);
    let lhs = partial_ij::<f64>(&compose_lcs(g, f)?, x, p, gs, &[])?;
    let u = f.eval(&[x.clone(), p.clone()])?;
    let v = partial_ij::<f64>(f, x, p, gs, &[])?;
    Ok((lhs, vector_derivative(g, &u, &v)?))
}

/// Generators of the two one-parameter subgroups of the Heisenberg
/// counterexample: `γ(t)` moves `x₁`, `η(t)` moves `x₃` (and `x₂` by `t·x₁`).
pub fn heisenberg_generators() -> (LieDirection<f64>, LieDirection<f64>) {
    (LieDirection::heisenberg(1.0, 0.0, 0.0), LieDirection::heisenberg(0.0, 0.0, 1.0))
}

/// Coordinates `(x₁, x₂, x₃)` of a Heisenberg element.
pub fn heisenberg_chart(x: &GroupElement<f64>) -> Result<[f64; 3]> {
    if x.spec() != &GroupSpec::Heisenberg3 {
        return Err(domain("chart expects a Heisenberg element"));
    }
    let d = x.flatten();
    Ok([d[1], d[2], d[5]])
}

/// `g ∘ φ` on the Heisenberg group, for `g` written over `(coord 0 k)`, `k < 3`.
pub fn heisenberg_pullback(g: &Expr) -> Result<GroupFunction> {
    g.validate(&[GroupSpec::Translation(3)])?;
    let f = g.map_leaves(&|leaf| match leaf {
        Expr::Coord { index: 0, .. } => Expr::entry(0, 0, 1),
        Expr::Coord { index: 1, .. } => Expr::entry(0, 0, 2),
        Expr::Coord { index: 2, .. } => Expr::entry(0, 1, 2),
        other => other.clone(),
    });
    GroupFunction::new(vec![GroupSpec::Heisenberg3], vec![f])
}

#[derive(Debug, Clone, PartialEq)]
pub struct HeisenbergDefect<F> {
    /// `(D_γ D_η f)(x)`.
    pub gamma_eta: F,
    /// `(D_η D_γ f)(x)`.
    pub eta_gamma: F,
    /// `gamma_eta − eta_gamma`.
    pub defect: F,
    /// `∂g/∂x₂` at `φ(x)`, computed on `ℝ³`.
    pub partial_x2: F,
}

/// Both second-order mixed derivatives of `f = g ∘ φ`, their difference,
/// and the reference value `∂₂g(φ(x))` it should equal.
pub fn heisenberg_defect<F: Field>(g: &Expr, x: &GroupElement<f64>) -> Result<HeisenbergDefect<F>> {
    let f = heisenberg_pullback(g)?;
    let (gamma, eta) = heisenberg_generators();
    // d⁽²⁾f(x, η, γ) = (D_γ D_η f)(x)
    let gamma_eta = iterated::<F>(&f, x, &[eta.clone(), gamma.clone()])?.remove(0);
    let eta_gamma = iterated::<F>(&f, x, &[gamma, eta])?.remove(0);
    let g_fn = GroupFunction::new(vec![GroupSpec::Translation(3)], vec![g.clone()])?;
    let chart = heisenberg_chart(x)?;
    let partial_x2 = directional::<F>(
        &g_fn,
        &GroupElement::translation(&chart),
        &LieDirection::translation(&[0.0, 1.0, 0.0]),
    )?
    .remove(0);
    let defect = gamma_eta.clone() - eta_gamma.clone();
    Ok(HeisenbergDefect { gamma_eta, eta_gamma, defect, partial_x2 })
}
