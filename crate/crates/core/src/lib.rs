//! Differential calculus for functions on matrix Lie groups.
//!
//! Functions `f: U → ℝᵐ` (or `U × V → ℝᵐ`) are differentiated along
//! one-parameter subgroups `t ↦ exp(tX)`. Derivatives of any order are exact
//! up to rounding: arguments are perturbed by square-zero infinitesimals and
//! the function is evaluated over [`MultiDual`] numbers. Over [`Exact`]
//! rationals polynomial functions on nilpotent groups differentiate with no
//! rounding at all.
//!
//! ```
//! use groupcalc_core::{iterated, Expr, GroupElement, GroupFunction, GroupSpec, LieDirection};
//!
//! let f = GroupFunction::new(
//!     vec![GroupSpec::Heisenberg3],
//!     vec![Expr::entry(0, 0, 2)],
//! ).unwrap();
//! let gamma = LieDirection::heisenberg(1.0, 0.0, 0.0);
//! let eta = LieDirection::heisenberg(0.0, 0.0, 1.0);
//! let e = GroupElement::identity(&GroupSpec::Heisenberg3);
//! assert_eq!(iterated::<f64>(&f, &e, &[eta.clone(), gamma.clone()]).unwrap(), vec![1.0]);
//! assert_eq!(iterated::<f64>(&f, &e, &[gamma, eta]).unwrap(), vec![0.0]);
//! ```
#![no_std]
extern crate alloc;

pub mod calculus;
pub mod error;
pub mod explaw;
pub mod expr;
pub mod function;
pub mod group;
pub mod hom;
pub mod matrix;
pub mod multidual;
pub mod quadrature;
pub mod scalar;

pub use calculus::{
    diff_quotient, diff_quotient_partial, directional, expand_product_derivative, fd_oracle,
    heisenberg_defect, integral_rep, iterated, partial_ij, rho_identity_check, schwarz_sides,
    FdEstimate, QuotientPoint,
};
pub use error::{Error, Result};
pub use explaw::{curried_derivative, curry, uncurry, verify_exchange, CurriedFunction};
pub use expr::{Expr, Primitive};
pub use function::GroupFunction;
pub use group::{one_param_eval, Domain, Element, GroupElement, GroupSpec, LieDirection};
pub use hom::GroupHom;
pub use matrix::Matrix;
pub use multidual::{MultiDual, ORDER_CAP};
pub use scalar::{Exact, Field, Scalar};
