//! Vector-valued functions on one group or on a product of two groups.
//!
//! A [`GroupFunction`] is either a list of expression components or a
//! construction over other functions (flip, composition with a homomorphism
//! or a linear map, slices of curried functions, derivative operators).
//! Every construction evaluates over any [`Scalar`], so derivatives pass
//! through all of them.

use alloc::boxed::Box;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::calculus::perturb;
use crate::error::{domain, Error, Result};
use crate::expr::Expr;
use crate::group::{Domain, Element, GroupElement, GroupSpec, LieDirection};
use crate::hom::GroupHom;
use crate::matrix::Matrix;
use crate::multidual::{MultiDual, ORDER_CAP};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq)]
enum Body {
    Exprs { exprs: Vec<Expr>, domains: Vec<Domain> },
    Flip(Box<GroupFunction>),
    OnProduct(Box<GroupFunction>),
    Hom(Box<GroupFunction>, GroupHom),
    Linear(Matrix<f64>, Box<GroupFunction>),
    Outer(Vec<Expr>, Box<GroupFunction>),
    Slice { inner: Box<GroupFunction>, fixed: GroupElement<f64> },
    Derivative { inner: Box<GroupFunction>, slot: usize, dirs: Vec<LieDirection<f64>> },
}

/// `f: U → ℝᵐ` or `f: U × V → ℝᵐ`.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupFunction {
    arg_specs: Vec<GroupSpec>,
    target_dim: usize,
    body: Body,
}

impl GroupFunction {
    /// Function whose components are expressions over the given arguments.
    pub fn new(arg_specs: Vec<GroupSpec>, components: Vec<Expr>) -> Result<Self> {
        if arg_specs.is_empty() || arg_specs.len() > 2 {
            return Err(domain("functions take one or two group arguments"));
        }
        if components.is_empty() {
            return Err(domain("a function needs at least one component"));
        }
        for e in &components {
            e.validate(&arg_specs)?;
        }
        let domains = vec![Domain::Whole; arg_specs.len()];
        Ok(Self {
            target_dim: components.len(),
            arg_specs,
            body: Body::Exprs { exprs: components, domains },
        })
    }

    /// Restricts an expression function to open subsets of its arguments.
    pub fn with_domains(mut self, new: Vec<Domain>) -> Result<Self> {
        match &mut self.body {
            Body::Exprs { domains, .. } if new.len() == domains.len() => {
                *domains = new;
                Ok(self)
            }
            Body::Exprs { .. } => Err(domain("one domain per argument required")),
            _ => Err(domain("domains attach to expression functions only")),
        }
    }

    pub fn arity(&self) -> usize {
        self.arg_specs.len()
    }
    pub fn arg_specs(&self) -> &[GroupSpec] {
        &self.arg_specs
    }
    pub fn target_dim(&self) -> usize {
        self.target_dim
    }

    /// Expression components, if this is a plain expression function.
    pub fn components(&self) -> Option<&[Expr]> {
        match &self.body {
            Body::Exprs { exprs, .. } => Some(exprs),
            _ => None,
        }
    }

    /// True when the function evaluates exactly over rationals on every
    /// group (polynomial components, no transcendental constructions).
    pub fn is_polynomial(&self) -> bool {
        match &self.body {
            Body::Exprs { exprs, .. } => exprs.iter().all(Expr::is_polynomial),
            Body::Outer(g, inner) => g.iter().all(Expr::is_polynomial) && inner.is_polynomial(),
            Body::Flip(i) | Body::OnProduct(i) | Body::Hom(i, _) | Body::Linear(_, i) => {
                i.is_polynomial()
            }
            Body::Slice { inner, .. } | Body::Derivative { inner, .. } => inner.is_polynomial(),
        }
    }

    fn require_binary(&self, what: &str) -> Result<()> {
        if self.arity() == 2 {
            Ok(())
        } else {
            Err(domain(format!("{what} needs a two-argument function")))
        }
    }

    /// `g(y, x) = f(x, y)`.
    pub fn flip(&self) -> Result<Self> {
        self.require_binary("flip")?;
        Ok(Self {
            arg_specs: vec![self.arg_specs[1].clone(), self.arg_specs[0].clone()],
            target_dim: self.target_dim,
            body: Body::Flip(Box::new(self.clone())),
        })
    }

    /// The same map viewed as a one-argument function on `G × H`.
    pub fn on_product(&self) -> Result<Self> {
        self.require_binary("the product view")?;
        Ok(Self {
            arg_specs: vec![GroupSpec::product(self.arg_specs[0].clone(), self.arg_specs[1].clone())],
            target_dim: self.target_dim,
            body: Body::OnProduct(Box::new(self.clone())),
        })
    }

    /// `f ∘ φ` on `φ⁻¹(V)`.
    pub fn compose_hom(&self, phi: &GroupHom) -> Result<Self> {
        if self.arity() != 1 || &self.arg_specs[0] != phi.target() {
            return Err(domain(format!(
                "homomorphism into {} cannot feed a function on {:?}",
                phi.target(),
                self.arg_specs
            )));
        }
        Ok(Self {
            arg_specs: vec![phi.source().clone()],
            target_dim: self.target_dim,
            body: Body::Hom(Box::new(self.clone()), phi.clone()),
        })
    }

    /// The `k`-th component `pr_k ∘ f`. Expression functions keep the
    /// component's own tree so its evaluation path is unchanged.
    pub fn component(&self, k: usize) -> Result<Self> {
        if k >= self.target_dim {
            return Err(domain(format!("component {k} out of range for ℝ^{}", self.target_dim)));
        }
        match &self.body {
            Body::Exprs { exprs, domains } => Ok(Self {
                arg_specs: self.arg_specs.clone(),
                target_dim: 1,
                body: Body::Exprs { exprs: vec![exprs[k].clone()], domains: domains.clone() },
            }),
            _ => {
                let mut row = vec![0.0; self.target_dim];
                row[k] = 1.0;
                self.compose_linear(&Matrix::from_vec(1, self.target_dim, row)?)
            }
        }
    }

    /// `λ ∘ f` for a real `m × n` matrix `λ`.
    pub fn compose_linear(&self, lambda: &Matrix<f64>) -> Result<Self> {
        if lambda.cols() != self.target_dim || lambda.rows() == 0 {
            return Err(domain(format!(
                "linear map with {} columns cannot follow a function into ℝ^{}",
                lambda.cols(),
                self.target_dim
            )));
        }
        Ok(Self {
            arg_specs: self.arg_specs.clone(),
            target_dim: lambda.rows(),
            body: Body::Linear(lambda.clone(), Box::new(self.clone())),
        })
    }

    /// `g ∘ f` where each component of `g` is an expression in
    /// `(coord 0 k)`, the k-th component of `f`.
    pub fn compose_outer(&self, g: Vec<Expr>) -> Result<Self> {
        if g.is_empty() {
            return Err(domain("outer map needs at least one component"));
        }
        let specs = [GroupSpec::Translation(self.target_dim)];
        for e in &g {
            e.validate(&specs)?;
        }
        Ok(Self {
            arg_specs: self.arg_specs.clone(),
            target_dim: g.len(),
            body: Body::Outer(g, Box::new(self.clone())),
        })
    }

    /// `y ↦ f(x, y)` for fixed `x`.
    pub fn slice(&self, x: &GroupElement<f64>) -> Result<Self> {
        self.require_binary("slicing")?;
        if x.spec() != &self.arg_specs[0] {
            return Err(domain(format!("slice point lies in {}, expected {}", x.spec(), self.arg_specs[0])));
        }
        Ok(Self {
            arg_specs: vec![self.arg_specs[1].clone()],
            target_dim: self.target_dim,
            body: Body::Slice { inner: Box::new(self.clone()), fixed: x.clone() },
        })
    }

    /// The function `D_{γ_i}···D_{γ_1} f` in argument `slot` (other arguments
    /// untouched). With an empty list this is `f` itself.
    pub fn differentiate(&self, slot: usize, dirs: &[LieDirection<f64>]) -> Result<Self> {
        let spec = self
            .arg_specs
            .get(slot)
            .ok_or_else(|| domain(format!("no argument slot {slot}")))?;
        if let Some(bad) = dirs.iter().find(|d| d.spec() != spec) {
            return Err(domain(format!("direction in {} used on {}", bad.spec(), spec)));
        }
        if dirs.len() > ORDER_CAP {
            return Err(Error::Capacity { requested: dirs.len(), cap: ORDER_CAP });
        }
        Ok(Self {
            arg_specs: self.arg_specs.clone(),
            target_dim: self.target_dim,
            body: Body::Derivative { inner: Box::new(self.clone()), slot, dirs: dirs.to_vec() },
        })
    }

    fn check_args<S: Scalar>(&self, args: &[GroupElement<S>]) -> Result<()> {
        if args.len() != self.arity() {
            return Err(domain(format!("expected {} arguments, got {}", self.arity(), args.len())));
        }
        for (a, s) in args.iter().zip(&self.arg_specs) {
            if a.spec() != s {
                return Err(domain(format!("argument in {} where {} was expected", a.spec(), s)));
            }
        }
        Ok(())
    }

    /// Whether the arguments lie in the function's open domain.
    pub fn contains(&self, args: &[GroupElement<f64>]) -> Result<bool> {
        self.check_args(args)?;
        match &self.body {
            Body::Exprs { domains, .. } => Ok(domains.iter().zip(args).all(|(d, a)| d.contains(a))),
            Body::Flip(inner) => inner.contains(&[args[1].clone(), args[0].clone()]),
            Body::OnProduct(inner) => {
                let (x, y) = args[0].split()?;
                inner.contains(&[x, y])
            }
            Body::Hom(inner, phi) => inner.contains(&[phi.apply(&args[0])?]),
            Body::Linear(_, inner) | Body::Outer(_, inner) | Body::Derivative { inner, .. } => {
                inner.contains(args)
            }
            Body::Slice { inner, fixed } => inner.contains(&[fixed.clone(), args[0].clone()]),
        }
    }

    /// Evaluates all components. Over [`MultiDual`] scalars the
    /// infinitesimal parts carry directional derivatives.
    pub fn eval<S: Scalar>(&self, args: &[GroupElement<S>]) -> Result<Vec<S>> {
        self.check_args(args)?;
        match &self.body {
            Body::Exprs { exprs, .. } => exprs.iter().map(|e| e.eval(args)).collect(),
            Body::Flip(inner) => inner.eval(&[args[1].clone(), args[0].clone()]),
            Body::OnProduct(inner) => {
                let (x, y) = args[0].split()?;
                inner.eval(&[x, y])
            }
            Body::Hom(inner, phi) => inner.eval(&[phi.apply(&args[0])?]),
            Body::Linear(lambda, inner) => {
                let v = inner.eval(args)?;
                lambda.map(|c| S::from_f64(*c)).mul_vec(&v)
            }
            Body::Outer(g, inner) => {
                let v = inner.eval(args)?;
                let point =
                    GroupElement::from_data(GroupSpec::Translation(v.len()), Element::Vec(v))?;
                let point = [point];
                g.iter().map(|e| e.eval(&point)).collect()
            }
            Body::Slice { inner, fixed } => {
                let x = fixed.map(&|v| S::from_f64(*v));
                inner.eval(&[x, args[0].clone()])
            }
            Body::Derivative { inner, slot, dirs } => {
                let lifted: Vec<GroupElement<MultiDual<S::Field>>> =
                    args.iter().map(|a| a.map(&|v| v.clone().into_dual())).collect();
                let base_order = lifted
                    .iter()
                    .flat_map(|a| a.flatten())
                    .map(|d| d.order())
                    .max()
                    .unwrap_or(0);
                let total = base_order + dirs.len();
                if total > ORDER_CAP {
                    return Err(Error::Capacity { requested: total, cap: ORDER_CAP });
                }
                let mut perturbed = lifted;
                perturbed[*slot] = perturb(&perturbed[*slot], dirs, base_order + 1, total)?;
                inner
                    .eval(&perturbed)?
                    .into_iter()
                    .map(|v| S::from_dual(v.promote(total).coefficient_of_trailing(dirs.len())?))
                    .collect()
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Exact;

    fn r1() -> GroupSpec {
        GroupSpec::Translation(1)
    }

    fn x() -> Expr {
        Expr::coord(0, 0)
    }
    fn y() -> Expr {
        Expr::coord(1, 0)
    }

    #[test]
    fn eval_examples() {
        let h = GroupSpec::Heisenberg3;
        let f = GroupFunction::new(vec![h], vec![Expr::entry(0, 0, 1).pow(2.0)]).unwrap();
        assert_eq!(f.eval(&[GroupElement::heisenberg(3.0, 0.0, 0.0)]).unwrap(), vec![9.0]);

        let g = GroupFunction::new(vec![r1(), r1()], vec![x() * y()]).unwrap();
        let args = [GroupElement::translation(&[2.0]), GroupElement::translation(&[3.0])];
        assert_eq!(g.eval(&args).unwrap(), vec![6.0]);

        let s = GroupFunction::new(vec![r1()], vec![x().sin()]).unwrap();
        let eps = MultiDual::variable(0.0, 1, 1).unwrap();
        let arg = GroupElement::from_data(r1(), Element::Vec(vec![eps])).unwrap();
        let out = s.eval(&[arg]).unwrap();
        assert_eq!(out[0].coeffs(), &[0.0, 1.0]);
    }

    #[test]
    fn flip_swaps_arguments() {
        let f = GroupFunction::new(vec![r1(), r1()], vec![x() - y()]).unwrap();
        let g = f.flip().unwrap();
        let args = [GroupElement::translation(&[1.0]), GroupElement::translation(&[4.0])];
        assert_eq!(g.eval(&args).unwrap(), vec![3.0]);

        let f = GroupFunction::new(vec![r1(), r1()], vec![x() * y() * y()]).unwrap();
        let args = [GroupElement::translation(&[3.0]), GroupElement::translation(&[2.0])];
        let swapped = [args[1].clone(), args[0].clone()];
        assert_eq!(f.eval(&args).unwrap(), vec![12.0]);
        assert_eq!(f.flip().unwrap().eval(&swapped).unwrap(), vec![12.0]);
        assert_eq!(f.flip().unwrap().eval(&args).unwrap(), vec![18.0]);
        assert_eq!(f.flip().unwrap().flip().unwrap().eval(&args).unwrap(), f.eval(&args).unwrap());

        let one = GroupFunction::new(vec![r1()], vec![x()]).unwrap();
        assert!(matches!(one.flip(), Err(Error::Domain(_))));
    }

    #[test]
    fn flip_of_mixed_groups_swaps_specs() {
        let f = GroupFunction::new(
            vec![GroupSpec::Heisenberg3, r1()],
            vec![Expr::entry(0, 0, 2) * y()],
        )
        .unwrap();
        let g = f.flip().unwrap();
        assert_eq!(g.arg_specs(), &[r1(), GroupSpec::Heisenberg3]);
        let out = g
            .eval(&[GroupElement::translation(&[2.0]), GroupElement::heisenberg(0.0, 5.0, 0.0)])
            .unwrap();
        assert_eq!(out, vec![10.0]);
    }

    #[test]
    fn rational_polynomial_evaluation_is_exact() {
        let h = GroupSpec::Heisenberg3;
        let e = Expr::entry(0, 0, 1) * Expr::entry(0, 0, 2) + Expr::entry(0, 1, 2).pow(2.0);
        let f = GroupFunction::new(vec![h], vec![e]).unwrap();
        let p = GroupElement::heisenberg(0.1, 0.2, 0.3).lift::<Exact>();
        let out = f.eval(&[p]).unwrap();
        let (a, b, c) = (Exact::from_f64(0.1), Exact::from_f64(0.2), Exact::from_f64(0.3));
        assert_eq!(out[0], a * b + c.clone() * c);
    }

    #[test]
    fn arity_and_spec_errors() {
        let f = GroupFunction::new(vec![r1()], vec![x()]).unwrap();
        assert!(f.eval(&[GroupElement::heisenberg(0.0, 0.0, 0.0)]).is_err());
        assert!(f.eval::<f64>(&[]).is_err());
        assert!(GroupFunction::new(vec![r1()], vec![]).is_err());
        assert!(GroupFunction::new(vec![r1()], vec![Expr::coord(1, 0)]).is_err());
    }

    #[test]
    fn log_domain_error_propagates() {
        let f = GroupFunction::new(vec![r1()], vec![x().log()]).unwrap();
        assert!(matches!(
            f.eval(&[GroupElement::translation(&[-1.0])]),
            Err(Error::Evaluation(_))
        ));
    }
}
