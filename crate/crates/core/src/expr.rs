//! Smooth expression trees over the coordinates of group arguments.

use alloc::boxed::Box;
use alloc::format;
use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};

use crate::error::{domain, Result};
use crate::group::{Element, GroupElement, GroupSpec};
use crate::scalar::Scalar;

/// Smooth unary primitives.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Primitive {
    Exp,
    Log,
    Sin,
    Cos,
    /// `v ↦ v^c` for a fixed real exponent `c`.
    Pow(f64),
    Recip,
}

impl fmt::Display for Primitive {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Primitive::Exp => f.write_str("exp"),
            Primitive::Log => f.write_str("log"),
            Primitive::Sin => f.write_str("sin"),
            Primitive::Cos => f.write_str("cos"),
            Primitive::Pow(c) => write!(f, "pow {c:?}"),
            Primitive::Recip => f.write_str("recip"),
        }
    }
}

/// Expression node. Leaves read matrix entries (`Entry`) or translation
/// coordinates (`Coord`) of argument `arg`.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Const(f64),
    Entry { arg: usize, row: usize, col: usize },
    Coord { arg: usize, index: usize },
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Apply(Primitive, Box<Expr>),
}

impl Expr {
    pub fn constant(v: f64) -> Self {
        Expr::Const(v)
    }
    pub fn entry(arg: usize, row: usize, col: usize) -> Self {
        Expr::Entry { arg, row, col }
    }
    pub fn coord(arg: usize, index: usize) -> Self {
        Expr::Coord { arg, index }
    }
    pub fn apply(self, prim: Primitive) -> Self {
        Expr::Apply(prim, Box::new(self))
    }
    pub fn exp(self) -> Self {
        self.apply(Primitive::Exp)
    }
    pub fn log(self) -> Self {
        self.apply(Primitive::Log)
    }
    pub fn sin(self) -> Self {
        self.apply(Primitive::Sin)
    }
    pub fn cos(self) -> Self {
        self.apply(Primitive::Cos)
    }
    pub fn recip(self) -> Self {
        self.apply(Primitive::Recip)
    }
    pub fn pow(self, c: f64) -> Self {
        self.apply(Primitive::Pow(c))
    }

    /// Evaluates over any scalar; `args` supplies the group arguments.
    pub fn eval<S: Scalar>(&self, args: &[GroupElement<S>]) -> Result<S> {
        Ok(match self {
            Expr::Const(c) => S::from_f64(*c),
            Expr::Entry { arg, row, col } => match args.get(*arg).map(GroupElement::data) {
                Some(Element::Mat(m)) if *row < m.rows() && *col < m.cols() => {
                    m[(*row, *col)].clone()
                }
                Some(_) => return Err(domain(format!("no matrix entry ({row},{col}) in argument {arg}"))),
                None => return Err(domain(format!("missing argument {arg}"))),
            },
            Expr::Coord { arg, index } => match args.get(*arg).map(GroupElement::data) {
                Some(Element::Vec(v)) if *index < v.len() => v[*index].clone(),
                Some(_) => return Err(domain(format!("no coordinate {index} in argument {arg}"))),
                None => return Err(domain(format!("missing argument {arg}"))),
            },
            Expr::Add(a, b) => a.eval(args)? + b.eval(args)?,
            Expr::Sub(a, b) => a.eval(args)? - b.eval(args)?,
            Expr::Mul(a, b) => a.eval(args)? * b.eval(args)?,
            Expr::Div(a, b) => a.eval(args)?.div(&b.eval(args)?)?,
            Expr::Neg(a) => -a.eval(args)?,
            Expr::Apply(p, a) => a.eval(args)?.apply(*p)?,
        })
    }

    /// Rewrites every leaf through `f`.
    pub fn map_leaves(&self, f: &impl Fn(&Expr) -> Expr) -> Expr {
        match self {
            Expr::Const(_) | Expr::Entry { .. } | Expr::Coord { .. } => f(self),
            Expr::Add(a, b) => Expr::Add(Box::new(a.map_leaves(f)), Box::new(b.map_leaves(f))),
            Expr::Sub(a, b) => Expr::Sub(Box::new(a.map_leaves(f)), Box::new(b.map_leaves(f))),
            Expr::Mul(a, b) => Expr::Mul(Box::new(a.map_leaves(f)), Box::new(b.map_leaves(f))),
            Expr::Div(a, b) => Expr::Div(Box::new(a.map_leaves(f)), Box::new(b.map_leaves(f))),
            Expr::Neg(a) => Expr::Neg(Box::new(a.map_leaves(f))),
            Expr::Apply(p, a) => Expr::Apply(*p, Box::new(a.map_leaves(f))),
        }
    }

    /// True when the tree only uses ring operations and non-negative
    /// integer powers, so it evaluates exactly over rationals.
    pub fn is_polynomial(&self) -> bool {
        match self {
            Expr::Const(_) | Expr::Entry { .. } | Expr::Coord { .. } => true,
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => {
                a.is_polynomial() && b.is_polynomial()
            }
            Expr::Div(..) => false,
            Expr::Neg(a) => a.is_polynomial(),
            Expr::Apply(Primitive::Pow(c), a) => {
                *c >= 0.0 && libm::trunc(*c) == *c && a.is_polynomial()
            }
            Expr::Apply(..) => false,
        }
    }

    /// Checks every leaf against the argument shapes.
    pub fn validate(&self, specs: &[GroupSpec]) -> Result<()> {
        match self {
            Expr::Const(c) if !c.is_finite() => Err(domain("non-finite constant")),
            Expr::Const(_) => Ok(()),
            Expr::Entry { arg, row, col } => match specs.get(*arg) {
                Some(s) => match s.matrix_size() {
                    Some(n) if *row < n && *col < n => Ok(()),
                    _ => Err(domain(format!("entry ({row},{col}) not available on {s}"))),
                },
                None => Err(domain(format!("argument index {arg} out of range"))),
            },
            Expr::Coord { arg, index } => match specs.get(*arg) {
                Some(GroupSpec::Translation(n)) if index < n => Ok(()),
                Some(s) => Err(domain(format!("coordinate {index} not available on {s}"))),
                None => Err(domain(format!("argument index {arg} out of range"))),
            },
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.validate(specs)?;
                b.validate(specs)
            }
            Expr::Neg(a) => a.validate(specs),
            Expr::Apply(Primitive::Pow(c), _) if !c.is_finite() => {
                Err(domain("non-finite exponent"))
            }
            Expr::Apply(_, a) => a.validate(specs),
        }
    }
}

/// Prefix (s-expression) form, e.g. `(mul (entry 0 0 1) (entry 1 0 1))`.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Const(c) => write!(f, "{c:?}"),
            Expr::Entry { arg, row, col } => write!(f, "(entry {arg} {row} {col})"),
            Expr::Coord { arg, index } => write!(f, "(coord {arg} {index})"),
            Expr::Add(a, b) => write!(f, "(add {a} {b})"),
            Expr::Sub(a, b) => write!(f, "(sub {a} {b})"),
            Expr::Mul(a, b) => write!(f, "(mul {a} {b})"),
            Expr::Div(a, b) => write!(f, "(div {a} {b})"),
            Expr::Neg(a) => write!(f, "(neg {a})"),
            Expr::Apply(p, a) => write!(f, "({p} {a})"),
        }
    }
}

impl Add for Expr {
    type Output = Expr;
    fn add(self, rhs: Expr) -> Expr {
        Expr::Add(Box::new(self), Box::new(rhs))
    }
}

impl Sub for Expr {
    type Output = Expr;
    fn sub(self, rhs: Expr) -> Expr {
        Expr::Sub(Box::new(self), Box::new(rhs))
    }
}

impl Mul for Expr {
    type Output = Expr;
    fn mul(self, rhs: Expr) -> Expr {
        Expr::Mul(Box::new(self), Box::new(rhs))
    }
}

impl Div for Expr {
    type Output = Expr;
    fn div(self, rhs: Expr) -> Expr {
        Expr::Div(Box::new(self), Box::new(rhs))
    }
}

impl Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr::Neg(Box::new(self))
    }
}
