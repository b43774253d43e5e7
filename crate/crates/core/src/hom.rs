//! Continuous group homomorphisms `φ: G → H` and their induced maps
//! `𝔏(φ): γ ↦ φ∘γ` on one-parameter subgroups.

use alloc::format;

use crate::error::{domain, Result};
use crate::group::{one_param_eval, Element, GroupElement, GroupSpec, LieDirection};
use crate::matrix::Matrix;
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub enum HomKind {
    Identity,
    /// `(x, y) ↦ x`.
    ProjectFirst,
    /// `(x, y) ↦ y`.
    ProjectSecond,
    /// `x ↦ (x, e)`.
    InjectFirst,
    /// `y ↦ (e, y)`.
    InjectSecond,
    /// `ℝ → H, s ↦ exp(sX)`.
    Curve(LieDirection<f64>),
    /// `x ↦ g x g⁻¹` on a matrix group.
    Conjugation { g: Matrix<f64>, g_inv: Matrix<f64> },
}

#[derive(Debug, Clone, PartialEq)]
pub struct GroupHom {
    source: GroupSpec,
    target: GroupSpec,
    kind: HomKind,
}

impl GroupHom {
    pub fn identity(spec: &GroupSpec) -> Self {
        Self { source: spec.clone(), target: spec.clone(), kind: HomKind::Identity }
    }

    pub fn project_first(product: &GroupSpec) -> Result<Self> {
        match product {
            GroupSpec::Product(a, _) => Ok(Self {
                source: product.clone(),
                target: (**a).clone(),
                kind: HomKind::ProjectFirst,
            }),
            other => Err(domain(format!("{other} is not a product group"))),
        }
    }

    pub fn project_second(product: &GroupSpec) -> Result<Self> {
        match product {
            GroupSpec::Product(_, b) => Ok(Self {
                source: product.clone(),
                target: (**b).clone(),
                kind: HomKind::ProjectSecond,
            }),
            other => Err(domain(format!("{other} is not a product group"))),
        }
    }

    pub fn inject_first(g: &GroupSpec, h: &GroupSpec) -> Self {
        Self {
            source: g.clone(),
            target: GroupSpec::product(g.clone(), h.clone()),
            kind: HomKind::InjectFirst,
        }
    }

    pub fn inject_second(g: &GroupSpec, h: &GroupSpec) -> Self {
        Self {
            source: h.clone(),
            target: GroupSpec::product(g.clone(), h.clone()),
            kind: HomKind::InjectSecond,
        }
    }

    /// The one-parameter subgroup generated by `x`, as a homomorphism from `ℝ`.
    pub fn curve(x: &LieDirection<f64>) -> Self {
        Self {
            source: GroupSpec::Translation(1),
            target: x.spec().clone(),
            kind: HomKind::Curve(x.clone()),
        }
    }

    /// Inner automorphism by a matrix-group element.
    pub fn conjugation(g: &GroupElement<f64>) -> Result<Self> {
        match g.data() {
            Element::Mat(m) => Ok(Self {
                source: g.spec().clone(),
                target: g.spec().clone(),
                kind: HomKind::Conjugation { g: m.clone(), g_inv: m.inverse()? },
            }),
            _ => Err(domain("conjugation needs a matrix group element")),
        }
    }

    pub fn source(&self) -> &GroupSpec {
        &self.source
    }
    pub fn target(&self) -> &GroupSpec {
        &self.target
    }
    pub fn kind(&self) -> &HomKind {
        &self.kind
    }

    /// `φ(x)`, over any scalar.
    pub fn apply<S: Scalar>(&self, x: &GroupElement<S>) -> Result<GroupElement<S>> {
        if x.spec() != &self.source {
            return Err(domain(format!("homomorphism expects {}, got {}", self.source, x.spec())));
        }
        match &self.kind {
            HomKind::Identity => Ok(x.clone()),
            HomKind::ProjectFirst => Ok(x.split()?.0),
            HomKind::ProjectSecond => Ok(x.split()?.1),
            HomKind::InjectFirst => {
                let (_, h) = split_spec(&self.target)?;
                Ok(GroupElement::pair(x.clone(), GroupElement::identity(h)))
            }
            HomKind::InjectSecond => {
                let (g, _) = split_spec(&self.target)?;
                Ok(GroupElement::pair(GroupElement::identity(g), x.clone()))
            }
            HomKind::Curve(dir) => {
                let s = match x.data() {
                    Element::Vec(v) => v[0].clone(),
                    _ => return Err(domain("curve expects a real parameter")),
                };
                one_param_eval(&dir.map(&|v| S::from_f64(*v)), &s)
            }
            HomKind::Conjugation { g, g_inv } => match x.data() {
                Element::Mat(m) => {
                    let lg = g.map(|v| S::from_f64(*v));
                    let lgi = g_inv.map(|v| S::from_f64(*v));
                    GroupElement::from_data(
                        self.target.clone(),
                        Element::Mat(lg.matmul(m)?.matmul(&lgi)?),
                    )
                }
                _ => Err(domain("conjugation needs a matrix argument")),
            },
        }
    }

    /// `𝔏(φ)(γ)`: the generator of `t ↦ φ(γ(t))`.
    pub fn push(&self, x: &LieDirection<f64>) -> Result<LieDirection<f64>> {
        if x.spec() != &self.source {
            return Err(domain(format!("homomorphism expects {}, got {}", self.source, x.spec())));
        }
        match &self.kind {
            HomKind::Identity => Ok(x.clone()),
            HomKind::ProjectFirst => Ok(x.split()?.0),
            HomKind::ProjectSecond => Ok(x.split()?.1),
            HomKind::InjectFirst => {
                let (_, h) = split_spec(&self.target)?;
                Ok(LieDirection::pair(x.clone(), LieDirection::zero(h)))
            }
            HomKind::InjectSecond => {
                let (g, _) = split_spec(&self.target)?;
                Ok(LieDirection::pair(LieDirection::zero(g), x.clone()))
            }
            HomKind::Curve(dir) => match x.data() {
                Element::Vec(v) => Ok(dir.scale(&v[0])),
                _ => Err(domain("curve expects a real velocity")),
            },
            HomKind::Conjugation { g, g_inv } => match x.data() {
                Element::Mat(m) => LieDirection::from_data(
                    self.target.clone(),
                    Element::Mat(g.matmul(m)?.matmul(g_inv)?),
                ),
                _ => Err(domain("conjugation needs a matrix direction")),
            },
        }
    }
}

fn split_spec(spec: &GroupSpec) -> Result<(&GroupSpec, &GroupSpec)> {
    match spec {
        GroupSpec::Product(a, b) => Ok((a, b)),
        other => Err(domain(format!("{other} is not a product group"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: &GroupElement<f64>, b: &GroupElement<f64>, tol: f64) -> bool {
        a.distance(b) <= tol
    }

    #[test]
    fn curve_into_heisenberg_pushes_unit_speed_to_generator() {
        let gamma = LieDirection::heisenberg(1.0, 0.0, 0.0);
        let phi = GroupHom::curve(&gamma);
        let unit = LieDirection::translation(&[1.0]);
        let pushed = phi.push(&unit).unwrap();
        assert_eq!(pushed, gamma);
        for t in [-1.0, 0.5, 2.0] {
            let lhs = phi.apply(&one_param_eval(&unit, &t).unwrap()).unwrap();
            let rhs = one_param_eval(&pushed, &t).unwrap();
            assert!(close(&lhs, &rhs, 1e-10));
        }
    }

    #[test]
    fn projection_of_product_direction() {
        let g = LieDirection::heisenberg(1.0, 2.0, 3.0);
        let h = LieDirection::translation(&[4.0]);
        let psi = LieDirection::pair(g.clone(), h);
        let pr = GroupHom::project_first(psi.spec()).unwrap();
        assert_eq!(pr.push(&psi).unwrap(), g);
    }

    #[test]
    fn zero_direction_maps_to_zero() {
        let x = GroupElement::se2(0.4, 1.0, 2.0);
        let homs = [
            GroupHom::identity(&GroupSpec::SE2),
            GroupHom::conjugation(&x).unwrap(),
            GroupHom::inject_first(&GroupSpec::SE2, &GroupSpec::Translation(2)),
        ];
        for phi in homs {
            let z = LieDirection::zero(phi.source());
            assert!(phi.push(&z).unwrap().is_zero());
        }
        let phi = GroupHom::curve(&LieDirection::se2(1.0, 0.0, 1.0));
        assert!(phi.push(&LieDirection::translation(&[0.0])).unwrap().is_zero());
    }

    #[test]
    fn conjugation_is_a_homomorphism_with_matching_flow() {
        let g = GroupElement::gl(2, &[1.2, 0.3, -0.4, 0.9]).unwrap();
        let phi = GroupHom::conjugation(&g).unwrap();
        let a = GroupElement::gl(2, &[0.8, 0.1, 0.2, 1.1]).unwrap();
        let b = GroupElement::gl(2, &[1.0, -0.3, 0.5, 0.7]).unwrap();
        let lhs = phi.apply(&a.multiply(&b).unwrap()).unwrap();
        let rhs = phi.apply(&a).unwrap().multiply(&phi.apply(&b).unwrap()).unwrap();
        assert!(close(&lhs, &rhs, 1e-12));
        let e = GroupElement::identity(&GroupSpec::GL(2));
        assert!(close(&phi.apply(&e).unwrap(), &e, 1e-12));

        let x = LieDirection::gl(2, &[0.3, -1.0, 0.7, 0.2]).unwrap();
        let pushed = phi.push(&x).unwrap();
        for t in [-0.8, 0.3, 1.7] {
            let lhs = phi.apply(&one_param_eval(&x, &t).unwrap()).unwrap();
            let rhs = one_param_eval(&pushed, &t).unwrap();
            assert!(close(&lhs, &rhs, 1e-10));
        }
    }

    #[test]
    fn spec_mismatch_is_a_domain_error() {
        let phi = GroupHom::identity(&GroupSpec::Heisenberg3);
        assert!(phi.push(&LieDirection::translation(&[1.0])).is_err());
        assert!(phi.apply(&GroupElement::translation(&[1.0])).is_err());
    }
}
