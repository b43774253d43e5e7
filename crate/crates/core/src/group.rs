//! Matrix groups, translation groups and their products, together with
//! one-parameter subgroups `t ↦ exp(tX)`.

use alloc::boxed::Box;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{domain, Error, Result};
use crate::matrix::Matrix;
use crate::multidual::MultiDual;
use crate::scalar::{Field, Scalar};

/// Absolute tolerance for group-law checks.
pub const GROUP_TOL: f64 = 1e-10;

/// Structural description of a supported group.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GroupSpec {
    /// Unipotent upper-triangular 3×3 matrices.
    Heisenberg3,
    /// `(ℝⁿ, +)`.
    Translation(usize),
    /// Invertible n×n matrices.
    GL(usize),
    /// Rigid motions of the plane as 3×3 homogeneous matrices.
    SE2,
    Product(Box<GroupSpec>, Box<GroupSpec>),
}

impl GroupSpec {
    pub fn product(a: GroupSpec, b: GroupSpec) -> Self {
        GroupSpec::Product(Box::new(a), Box::new(b))
    }

    /// Side length of the matrix representation, `None` for translation and
    /// product groups.
    pub fn matrix_size(&self) -> Option<usize> {
        match self {
            GroupSpec::Heisenberg3 | GroupSpec::SE2 => Some(3),
            GroupSpec::GL(n) => Some(*n),
            GroupSpec::Translation(_) | GroupSpec::Product(..) => None,
        }
    }

    /// Number of real entries in an element.
    pub fn element_dim(&self) -> usize {
        match self {
            GroupSpec::Translation(n) => *n,
            GroupSpec::Product(a, b) => a.element_dim() + b.element_dim(),
            other => other.matrix_size().map_or(0, |n| n * n),
        }
    }

    /// Dimension of the Lie algebra.
    pub fn algebra_dim(&self) -> usize {
        match self {
            GroupSpec::Heisenberg3 | GroupSpec::SE2 => 3,
            GroupSpec::Translation(n) => *n,
            GroupSpec::GL(n) => n * n,
            GroupSpec::Product(a, b) => a.algebra_dim() + b.algebra_dim(),
        }
    }

    pub fn is_abelian(&self) -> bool {
        match self {
            GroupSpec::Translation(_) => true,
            GroupSpec::GL(n) => *n <= 1,
            GroupSpec::Heisenberg3 | GroupSpec::SE2 => false,
            GroupSpec::Product(a, b) => a.is_abelian() && b.is_abelian(),
        }
    }

    /// Lie-algebra element from its coordinates in the standard basis
    /// (see [`LieDirection::from_coords`]).
    pub fn basis_direction(&self, k: usize) -> Result<LieDirection<f64>> {
        let dim = self.algebra_dim();
        if k >= dim {
            return Err(domain(format!("basis index {k} out of range for {self}")));
        }
        let mut c = vec![0.0; dim];
        c[k] = 1.0;
        LieDirection::from_coords(self, &c)
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Heisenberg3 => f.write_str("heisenberg3"),
            GroupSpec::Translation(n) => write!(f, "r{n}"),
            GroupSpec::GL(n) => write!(f, "gl{n}"),
            GroupSpec::SE2 => f.write_str("se2"),
            GroupSpec::Product(a, b) => write!(f, "(product {a} {b})"),
        }
    }
}

/// Raw data of an element or a Lie-algebra element.
#[derive(Debug, Clone, PartialEq)]
pub enum Element<S> {
    Mat(Matrix<S>),
    Vec(Vec<S>),
    Pair(Box<Element<S>>, Box<Element<S>>),
}

impl<S: Scalar> Element<S> {
    pub fn map<T>(&self, f: &impl Fn(&S) -> T) -> Element<T> {
        match self {
            Element::Mat(m) => Element::Mat(m.map(f)),
            Element::Vec(v) => Element::Vec(v.iter().map(f).collect()),
            Element::Pair(a, b) => Element::Pair(Box::new(a.map(f)), Box::new(b.map(f))),
        }
    }

    /// All real entries, factors concatenated.
    pub fn flatten(&self) -> Vec<S> {
        let mut out = Vec::new();
        self.flatten_into(&mut out);
        out
    }

    fn flatten_into(&self, out: &mut Vec<S>) {
        match self {
            Element::Mat(m) => out.extend_from_slice(m.as_slice()),
            Element::Vec(v) => out.extend_from_slice(v),
            Element::Pair(a, b) => {
                a.flatten_into(out);
                b.flatten_into(out);
            }
        }
    }

    fn shape_matches(&self, spec: &GroupSpec) -> bool {
        match (self, spec) {
            (Element::Vec(v), GroupSpec::Translation(n)) => v.len() == *n,
            (Element::Mat(m), s) => {
                s.matrix_size().is_some_and(|n| m.rows() == n && m.cols() == n)
            }
            (Element::Pair(a, b), GroupSpec::Product(sa, sb)) => {
                a.shape_matches(sa) && b.shape_matches(sb)
            }
            _ => false,
        }
    }

    fn combine(&self, rhs: &Self) -> Result<Self> {
        Ok(match (self, rhs) {
            (Element::Mat(a), Element::Mat(b)) => Element::Mat(a.matmul(b)?),
            (Element::Vec(a), Element::Vec(b)) => {
                Element::Vec(a.iter().zip(b).map(|(x, y)| x.clone() + y.clone()).collect())
            }
            (Element::Pair(a1, b1), Element::Pair(a2, b2)) => {
                Element::Pair(Box::new(a1.combine(a2)?), Box::new(b1.combine(b2)?))
            }
            _ => return Err(domain("element shapes differ")),
        })
    }

    fn unit(spec: &GroupSpec) -> Self {
        match spec {
            GroupSpec::Translation(n) => Element::Vec(vec![S::zero(); *n]),
            GroupSpec::Product(a, b) => {
                Element::Pair(Box::new(Self::unit(a)), Box::new(Self::unit(b)))
            }
            other => Element::Mat(Matrix::identity(other.matrix_size().unwrap_or(0))),
        }
    }

    fn zero(spec: &GroupSpec) -> Self {
        match spec {
            GroupSpec::Translation(n) => Element::Vec(vec![S::zero(); *n]),
            GroupSpec::Product(a, b) => {
                Element::Pair(Box::new(Self::zero(a)), Box::new(Self::zero(b)))
            }
            other => {
                let n = other.matrix_size().unwrap_or(0);
                Element::Mat(Matrix::zeros(n, n))
            }
        }
    }
}

/// A point of a supported group, with entries in any scalar.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupElement<S = f64> {
    spec: GroupSpec,
    data: Element<S>,
}

/// A Lie-algebra element `X`, standing for the one-parameter subgroup
/// `t ↦ exp(tX)`.
#[derive(Debug, Clone, PartialEq)]
pub struct LieDirection<S = f64> {
    spec: GroupSpec,
    data: Element<S>,
}

impl<S: Scalar> GroupElement<S> {
    /// Wraps raw data without validating group membership.
    pub fn from_data(spec: GroupSpec, data: Element<S>) -> Result<Self> {
        if !data.shape_matches(&spec) {
            return Err(domain(format!("data shape does not match {spec}")));
        }
        Ok(Self { spec, data })
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }
    pub fn data(&self) -> &Element<S> {
        &self.data
    }
    pub fn into_data(self) -> Element<S> {
        self.data
    }

    pub fn identity(spec: &GroupSpec) -> Self {
        Self { spec: spec.clone(), data: Element::unit(spec) }
    }

    pub fn multiply(&self, rhs: &Self) -> Result<Self> {
        if self.spec != rhs.spec {
            return Err(domain(format!("cannot multiply {} by {}", self.spec, rhs.spec)));
        }
        Ok(Self { spec: self.spec.clone(), data: self.data.combine(&rhs.data)? })
    }

    pub fn pair(a: Self, b: Self) -> Self {
        Self {
            spec: GroupSpec::product(a.spec, b.spec),
            data: Element::Pair(Box::new(a.data), Box::new(b.data)),
        }
    }

    /// Factors of a product element.
    pub fn split(&self) -> Result<(Self, Self)> {
        match (&self.spec, &self.data) {
            (GroupSpec::Product(sa, sb), Element::Pair(a, b)) => Ok((
                Self { spec: (**sa).clone(), data: (**a).clone() },
                Self { spec: (**sb).clone(), data: (**b).clone() },
            )),
            _ => Err(domain("element is not in a product group")),
        }
    }

    pub fn map<T: Scalar>(&self, f: &impl Fn(&S) -> T) -> GroupElement<T> {
        GroupElement { spec: self.spec.clone(), data: self.data.map(f) }
    }

    pub fn flatten(&self) -> Vec<S> {
        self.data.flatten()
    }

    /// Entry-wise infinity-norm distance.
    pub fn distance(&self, rhs: &Self) -> f64 {
        self.flatten()
            .iter()
            .zip(rhs.flatten())
            .map(|(a, b)| (a.clone() - b).to_f64().abs())
            .fold(0.0, f64::max)
    }
}

impl GroupElement<f64> {
    /// Heisenberg element with coordinates `(x₁, x₂, x₃)` at entries
    /// `(0,1)`, `(0,2)`, `(1,2)`.
    pub fn heisenberg(x1: f64, x2: f64, x3: f64) -> Self {
        let m = Matrix::from_vec(3, 3, vec![1.0, x1, x2, 0.0, 1.0, x3, 0.0, 0.0, 1.0])
            .expect("3x3");
        Self { spec: GroupSpec::Heisenberg3, data: Element::Mat(m) }
    }

    pub fn translation(v: &[f64]) -> Self {
        Self { spec: GroupSpec::Translation(v.len()), data: Element::Vec(v.to_vec()) }
    }

    /// Rotation by `theta` followed by translation `(tx, ty)`.
    pub fn se2(theta: f64, tx: f64, ty: f64) -> Self {
        let (s, c) = (libm::sin(theta), libm::cos(theta));
        let m = Matrix::from_vec(3, 3, vec![c, -s, tx, s, c, ty, 0.0, 0.0, 1.0]).expect("3x3");
        Self { spec: GroupSpec::SE2, data: Element::Mat(m) }
    }

    pub fn gl(n: usize, entries: &[f64]) -> Result<Self> {
        let m = Matrix::from_vec(n, n, entries.to_vec())?;
        let el = Self { spec: GroupSpec::GL(n), data: Element::Mat(m) };
        el.validate()?;
        Ok(el)
    }

    /// Lifts to another field (exact for rationals: binary values are kept).
    pub fn lift<F: Field>(&self) -> GroupElement<F> {
        self.map(&|v| F::from_f64(*v))
    }

    /// Checks the defining constraints of the group.
    pub fn validate(&self) -> Result<()> {
        validate_element(&self.spec, &self.data)
    }

    /// Group inverse (LU based for general matrices).
    pub fn inverse(&self) -> Result<Self> {
        Ok(Self { spec: self.spec.clone(), data: invert(&self.data)? })
    }
}

fn invert(data: &Element<f64>) -> Result<Element<f64>> {
    Ok(match data {
        Element::Mat(m) => Element::Mat(m.inverse()?),
        Element::Vec(v) => Element::Vec(v.iter().map(|x| -x).collect()),
        Element::Pair(a, b) => Element::Pair(Box::new(invert(a)?), Box::new(invert(b)?)),
    })
}

fn validate_element(spec: &GroupSpec, data: &Element<f64>) -> Result<()> {
    match (spec, data) {
        (GroupSpec::Translation(n), Element::Vec(v)) if v.len() == *n => {
            if v.iter().all(|x| x.is_finite()) {
                Ok(())
            } else {
                Err(domain("non-finite translation"))
            }
        }
        (GroupSpec::Heisenberg3, Element::Mat(m)) if m.rows() == 3 && m.cols() == 3 => {
            let ok = (0..3).all(|i| m[(i, i)] == 1.0)
                && m[(1, 0)] == 0.0
                && m[(2, 0)] == 0.0
                && m[(2, 1)] == 0.0;
            if ok {
                Ok(())
            } else {
                Err(domain("Heisenberg element must be unipotent upper triangular"))
            }
        }
        (GroupSpec::GL(n), Element::Mat(m)) if m.rows() == *n && m.cols() == *n => {
            let det = m.determinant();
            if det != 0.0 && det.is_finite() {
                Ok(())
            } else {
                Err(domain("GL element must be invertible"))
            }
        }
        (GroupSpec::SE2, Element::Mat(m)) if m.rows() == 3 && m.cols() == 3 => {
            let r = [m[(0, 0)], m[(0, 1)], m[(1, 0)], m[(1, 1)]];
            let orth = (r[0] * r[0] + r[2] * r[2] - 1.0).abs() < GROUP_TOL
                && (r[1] * r[1] + r[3] * r[3] - 1.0).abs() < GROUP_TOL
                && (r[0] * r[1] + r[2] * r[3]).abs() < GROUP_TOL
                && (r[0] * r[3] - r[1] * r[2] - 1.0).abs() < GROUP_TOL;
            let last = m[(2, 0)] == 0.0 && m[(2, 1)] == 0.0 && m[(2, 2)] == 1.0;
            if orth && last {
                Ok(())
            } else {
                Err(domain("SE(2) element must be a homogeneous rigid motion"))
            }
        }
        (GroupSpec::Product(sa, sb), Element::Pair(a, b)) => {
            validate_element(sa, a)?;
            validate_element(sb, b)
        }
        _ => Err(domain(format!("data shape does not match {spec}"))),
    }
}

impl<S: Scalar> LieDirection<S> {
    pub fn from_data(spec: GroupSpec, data: Element<S>) -> Result<Self> {
        if !data.shape_matches(&spec) {
            return Err(domain(format!("data shape does not match {spec}")));
        }
        Ok(Self { spec, data })
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }
    pub fn data(&self) -> &Element<S> {
        &self.data
    }

    /// The zero element, generating the constant subgroup `t ↦ e`.
    pub fn zero(spec: &GroupSpec) -> Self {
        Self { spec: spec.clone(), data: Element::zero(spec) }
    }

    /// Direction on a product group whose flow is `t ↦ (γ(t), η(t))`.
    pub fn pair(a: Self, b: Self) -> Self {
        Self {
            spec: GroupSpec::product(a.spec, b.spec),
            data: Element::Pair(Box::new(a.data), Box::new(b.data)),
        }
    }

    pub fn split(&self) -> Result<(Self, Self)> {
        match (&self.spec, &self.data) {
            (GroupSpec::Product(sa, sb), Element::Pair(a, b)) => Ok((
                Self { spec: (**sa).clone(), data: (**a).clone() },
                Self { spec: (**sb).clone(), data: (**b).clone() },
            )),
            _ => Err(domain("direction is not in a product algebra")),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.flatten().iter().all(Scalar::is_zero)
    }

    pub fn scale(&self, s: &S) -> Self {
        Self { spec: self.spec.clone(), data: self.data.map(&|v| v.clone() * s.clone()) }
    }

    pub fn map<T: Scalar>(&self, f: &impl Fn(&S) -> T) -> LieDirection<T> {
        LieDirection { spec: self.spec.clone(), data: self.data.map(f) }
    }
}

impl LieDirection<f64> {
    /// Strictly upper-triangular generator `a·E₀₁ + b·E₀₂ + c·E₁₂`.
    pub fn heisenberg(a: f64, b: f64, c: f64) -> Self {
        let m = Matrix::from_vec(3, 3, vec![0.0, a, b, 0.0, 0.0, c, 0.0, 0.0, 0.0]).expect("3x3");
        Self { spec: GroupSpec::Heisenberg3, data: Element::Mat(m) }
    }

    pub fn translation(v: &[f64]) -> Self {
        Self { spec: GroupSpec::Translation(v.len()), data: Element::Vec(v.to_vec()) }
    }

    /// `se(2)` generator with angular velocity `w` and linear velocity `(vx, vy)`.
    pub fn se2(w: f64, vx: f64, vy: f64) -> Self {
        let m = Matrix::from_vec(3, 3, vec![0.0, -w, vx, w, 0.0, vy, 0.0, 0.0, 0.0]).expect("3x3");
        Self { spec: GroupSpec::SE2, data: Element::Mat(m) }
    }

    pub fn gl(n: usize, entries: &[f64]) -> Result<Self> {
        Ok(Self { spec: GroupSpec::GL(n), data: Element::Mat(Matrix::from_vec(n, n, entries.to_vec())?) })
    }

    /// Builds a direction from coordinates in the standard basis:
    /// Heisenberg `(a, b, c)` as in [`Self::heisenberg`], SE(2) `(w, vx, vy)`,
    /// GL(n) row-major entries, translations the velocity itself, products the
    /// concatenation of their factors.
    pub fn from_coords(spec: &GroupSpec, c: &[f64]) -> Result<Self> {
        if c.len() != spec.algebra_dim() {
            return Err(domain(format!("{spec} needs {} direction coordinates", spec.algebra_dim())));
        }
        Ok(match spec {
            GroupSpec::Heisenberg3 => Self::heisenberg(c[0], c[1], c[2]),
            GroupSpec::SE2 => Self::se2(c[0], c[1], c[2]),
            GroupSpec::Translation(_) => Self::translation(c),
            GroupSpec::GL(n) => Self::gl(*n, c)?,
            GroupSpec::Product(a, b) => {
                let k = a.algebra_dim();
                Self::pair(Self::from_coords(a, &c[..k])?, Self::from_coords(b, &c[k..])?)
            }
        })
    }

    pub fn lift<F: Field>(&self) -> LieDirection<F> {
        self.map(&|v| F::from_f64(*v))
    }

    /// Checks the algebra pattern (strictly upper triangular for Heisenberg,
    /// `se(2)` shape for SE(2)).
    pub fn validate(&self) -> Result<()> {
        validate_direction(&self.spec, &self.data)
    }
}

fn validate_direction(spec: &GroupSpec, data: &Element<f64>) -> Result<()> {
    match (spec, data) {
        (GroupSpec::Heisenberg3, Element::Mat(m)) => {
            let ok = (0..3).all(|i| (0..=i).all(|j| m[(i, j)] == 0.0));
            if ok {
                Ok(())
            } else {
                Err(domain("Heisenberg direction must be strictly upper triangular"))
            }
        }
        (GroupSpec::SE2, Element::Mat(m)) => {
            let ok = m[(0, 0)] == 0.0
                && m[(1, 1)] == 0.0
                && m[(0, 1)] == -m[(1, 0)]
                && (0..3).all(|j| m[(2, j)] == 0.0);
            if ok {
                Ok(())
            } else {
                Err(domain("SE(2) direction must have the se(2) pattern"))
            }
        }
        (GroupSpec::Product(sa, sb), Element::Pair(a, b)) => {
            validate_direction(sa, a)?;
            validate_direction(sb, b)
        }
        (s, d) if d.shape_matches(s) => Ok(()),
        _ => Err(domain(format!("direction shape does not match {spec}"))),
    }
}

/// `exp(tX)` for a square matrix. Nilpotent generators use the terminating
/// series (exact in every scalar); otherwise the real part of `t` goes
/// through the Padé exponential and the nilpotent part of `t` through a
/// truncated series, which is exact because that part has bounded order.
fn matrix_flow<S: Scalar>(x: &Matrix<S>, t: &S) -> Result<Matrix<S>> {
    let n = x.rows();
    let series = |step: &S, terms: usize| -> Result<Matrix<S>> {
        let mut acc = Matrix::identity(n);
        let mut term = Matrix::identity(n);
        for k in 1..=terms {
            let coef = step.clone() * S::from_f64(k as f64).recip()?;
            term = term.matmul(x)?.scale(&coef);
            if term.is_zero() {
                break;
            }
            acc = acc.add(&term)?;
        }
        Ok(acc)
    };
    if let Some(k) = x.nilpotency_index() {
        return series(t, k.saturating_sub(1));
    }
    if S::EXACT {
        return Err(Error::Evaluation(
            "exponential of a non-nilpotent generator is not exactly representable".into(),
        ));
    }
    let t0 = t.to_f64();
    let real = x.map(|v| v.to_f64() * t0).expm()?.map(|v| S::from_f64(*v));
    let nil = t.clone() - S::from_f64(t0);
    let order = nil.nil_order();
    if order == 0 || nil.is_zero() {
        return Ok(real);
    }
    real.matmul(&series(&nil, order)?)
}

fn flow_data<S: Scalar>(spec: &GroupSpec, x: &Element<S>, t: &S) -> Result<Element<S>> {
    Ok(match (spec, x) {
        (GroupSpec::Translation(_), Element::Vec(v)) => {
            Element::Vec(v.iter().map(|c| c.clone() * t.clone()).collect())
        }
        (GroupSpec::Product(sa, sb), Element::Pair(a, b)) => {
            Element::Pair(Box::new(flow_data(sa, a, t)?), Box::new(flow_data(sb, b, t)?))
        }
        (_, Element::Mat(m)) => Element::Mat(matrix_flow(m, t)?),
        _ => return Err(domain("direction shape does not match its group")),
    })
}

/// `γ(t) = exp(tX)`.
pub fn one_param_eval<S: Scalar>(x: &LieDirection<S>, t: &S) -> Result<GroupElement<S>> {
    Ok(GroupElement { spec: x.spec.clone(), data: flow_data(&x.spec, &x.data, t)? })
}

/// `exp(ε X)` where `ε` is generator `slot` of a dual algebra with `order`
/// generators; exact because `ε² = 0`.
pub(crate) fn infinitesimal<F: Field>(
    x: &LieDirection<f64>,
    slot: usize,
    order: usize,
) -> Result<GroupElement<MultiDual<F>>> {
    let eps = MultiDual::<F>::variable(F::zero(), slot, order)?;
    fn build<F: Field>(data: &Element<f64>, eps: &MultiDual<F>) -> Element<MultiDual<F>> {
        match data {
            Element::Vec(v) => {
                Element::Vec(v.iter().map(|c| eps.clone() * MultiDual::from_f64(*c)).collect())
            }
            Element::Mat(m) => {
                let n = m.rows();
                let mut out = Matrix::<MultiDual<F>>::identity(n);
                for i in 0..n {
                    for j in 0..n {
                        let c = m[(i, j)];
                        if c != 0.0 {
                            out[(i, j)] = out[(i, j)].clone() + eps.clone() * MultiDual::from_f64(c);
                        }
                    }
                }
                Element::Mat(out)
            }
            Element::Pair(a, b) => Element::Pair(Box::new(build(a, eps)), Box::new(build(b, eps))),
        }
    }
    Ok(GroupElement { spec: x.spec.clone(), data: build(&x.data, &eps) })
}

/// Point-set constraint describing an open subset of a group.
#[derive(Debug, Clone, PartialEq, Default)]
pub enum Domain {
    /// The whole group.
    #[default]
    Whole,
    /// Open box on the flattened entries: `lo < entry < hi`.
    EntryBox(Vec<(f64, f64)>),
    Product(Box<Domain>, Box<Domain>),
}

impl Domain {
    pub fn contains(&self, x: &GroupElement<f64>) -> bool {
        match self {
            Domain::Whole => true,
            Domain::EntryBox(bounds) => {
                let flat = x.flatten();
                flat.len() == bounds.len()
                    && flat.iter().zip(bounds).all(|(v, (lo, hi))| lo < v && v < hi)
            }
            Domain::Product(a, b) => match x.split() {
                Ok((xa, xb)) => a.contains(&xa) && b.contains(&xb),
                Err(_) => false,
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Exact;

    #[test]
    fn identities() {
        let e = GroupElement::<f64>::identity(&GroupSpec::Heisenberg3);
        assert_eq!(e, GroupElement::heisenberg(0.0, 0.0, 0.0));
        let e = GroupElement::<f64>::identity(&GroupSpec::Translation(2));
        assert_eq!(e.flatten(), vec![0.0, 0.0]);
        let r1 = GroupSpec::Translation(1);
        let e = GroupElement::<f64>::identity(&GroupSpec::product(r1.clone(), r1));
        assert_eq!(e.flatten(), vec![0.0, 0.0]);
        let x = GroupElement::se2(0.3, 1.0, -2.0);
        assert_eq!(GroupElement::identity(&GroupSpec::SE2).multiply(&x).unwrap(), x);
    }

    #[test]
    fn heisenberg_products() {
        let x = GroupElement::heisenberg(0.0, 0.0, 0.0);
        let gamma = one_param_eval(&LieDirection::heisenberg(1.0, 0.0, 0.0), &5.0).unwrap();
        assert_eq!(x.multiply(&gamma).unwrap(), GroupElement::heisenberg(5.0, 0.0, 0.0));

        let (x1, x2, x3, t) = (1.5, -2.0, 0.25, 3.0);
        let x = GroupElement::heisenberg(x1, x2, x3);
        let eta = one_param_eval(&LieDirection::heisenberg(0.0, 0.0, 1.0), &t).unwrap();
        assert_eq!(
            x.multiply(&eta).unwrap(),
            GroupElement::heisenberg(x1, x2 + t * x1, x3 + t)
        );
    }

    #[test]
    fn translation_products_and_flows() {
        let a = GroupElement::translation(&[1.0, 2.0]);
        let b = GroupElement::translation(&[3.0, 4.0]);
        assert_eq!(a.multiply(&b).unwrap().flatten(), vec![4.0, 6.0]);
        let flow = one_param_eval(&LieDirection::translation(&[1.0, 2.0]), &0.5).unwrap();
        assert_eq!(flow.flatten(), vec![0.5, 1.0]);
    }

    #[test]
    fn multiply_rejects_mismatched_groups() {
        let a = GroupElement::translation(&[1.0]);
        let b = GroupElement::heisenberg(0.0, 0.0, 0.0);
        assert!(matches!(a.multiply(&b), Err(Error::Domain(_))));
    }

    #[test]
    fn constant_direction_flows_to_identity() {
        for spec in [
            GroupSpec::Heisenberg3,
            GroupSpec::Translation(1),
            GroupSpec::SE2,
            GroupSpec::GL(2),
            GroupSpec::product(GroupSpec::Heisenberg3, GroupSpec::Translation(2)),
        ] {
            let z = LieDirection::<f64>::zero(&spec);
            assert!(z.is_zero());
            for t in [-3.0, 0.0, 7.5] {
                assert_eq!(one_param_eval(&z, &t).unwrap(), GroupElement::identity(&spec));
            }
        }
        let zero_h = LieDirection::<f64>::zero(&GroupSpec::Heisenberg3);
        assert_eq!(zero_h, LieDirection::heisenberg(0.0, 0.0, 0.0));
    }

    #[test]
    fn product_direction_flows_componentwise() {
        let r1 = GroupSpec::Translation(1);
        let a = 2.5;
        let psi = LieDirection::pair(LieDirection::translation(&[a]), LieDirection::zero(&r1));
        assert_eq!(one_param_eval(&psi, &1.0).unwrap().flatten(), vec![a, 0.0]);

        let gamma = LieDirection::heisenberg(1.0, 0.0, 0.0);
        let psi = LieDirection::pair(gamma.clone(), LieDirection::translation(&[1.0]));
        let flowed = one_param_eval(&psi, &2.0).unwrap();
        let want = GroupElement::pair(
            one_param_eval(&gamma, &2.0).unwrap(),
            GroupElement::translation(&[2.0]),
        );
        assert_eq!(flowed, want);
    }

    #[test]
    fn exact_heisenberg_flow_is_a_homomorphism() {
        let x = LieDirection::heisenberg(0.5, -1.25, 3.0).lift::<Exact>();
        let s = Exact::from_f64(0.75);
        let t = Exact::from_f64(-2.5);
        let lhs = one_param_eval(&x, &(s.clone() + t.clone())).unwrap();
        let rhs = one_param_eval(&x, &s).unwrap().multiply(&one_param_eval(&x, &t).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn exact_flow_of_non_nilpotent_generator_is_rejected() {
        let x = LieDirection::se2(1.0, 0.0, 0.0).lift::<Exact>();
        assert!(one_param_eval(&x, &Exact::from_f64(1.0)).is_err());
    }

    #[test]
    fn se2_flow_is_rigid_motion() {
        let x = LieDirection::se2(0.7, 1.0, -0.5);
        let g = one_param_eval(&x, &1.3).unwrap();
        g.validate().unwrap();
    }

    #[test]
    fn validation() {
        assert!(GroupElement::gl(2, &[1.0, 2.0, 2.0, 4.0]).is_err());
        assert!(GroupElement::gl(2, &[1.0, 2.0, 0.0, 4.0]).is_ok());
        let bad = GroupElement::from_data(
            GroupSpec::Heisenberg3,
            Element::Mat(Matrix::from_vec(3, 3, vec![2.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0]).unwrap()),
        )
        .unwrap();
        assert!(bad.validate().is_err());
        assert!(LieDirection::heisenberg(1.0, 2.0, 3.0).validate().is_ok());
        let lower = LieDirection::from_data(
            GroupSpec::Heisenberg3,
            Element::Mat(Matrix::from_vec(3, 3, vec![0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0]).unwrap()),
        )
        .unwrap();
        assert!(lower.validate().is_err());
        assert!(LieDirection::se2(1.0, 2.0, 3.0).validate().is_ok());
    }

    #[test]
    fn box_domain_membership() {
        let d = Domain::EntryBox(vec![(0.5, 1.5), (-0.5, 0.5), (-0.5, 0.5), (0.5, 1.5)]);
        assert!(d.contains(&GroupElement::gl(2, &[1.0, 0.0, 0.0, 1.0]).unwrap()));
        assert!(!d.contains(&GroupElement::gl(2, &[2.0, 0.0, 0.0, 1.0]).unwrap()));
        assert!(Domain::Whole.contains(&GroupElement::translation(&[1e9])));
    }
}
