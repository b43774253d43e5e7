//! Named test scenarios: a function on one or two groups plus sampling data.

use groupcalc_core::calculus::heisenberg_pullback;
use groupcalc_core::{Domain, Expr, GroupFunction, GroupSpec, ORDER_CAP};

use crate::sexpr::parse_expr;

/// Highest total derivative order requested by the default suites.
pub const DEFAULT_MAX_ORDER: usize = 4;

#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub name: String,
    pub groups: Vec<GroupSpec>,
    pub components: Vec<Expr>,
    /// `g: ℝ³ → ℝ` when the function is `g ∘ φ` on the Heisenberg group.
    pub chart: Option<Expr>,
    pub max_order: usize,
    pub samples: Option<usize>,
    /// Sampling interval for each point coordinate, arguments concatenated.
    pub sample_box: Vec<(f64, f64)>,
    pub domains: Vec<Domain>,
    pub tolerance: Option<f64>,
    pub fd_step: Option<f64>,
    function: GroupFunction,
}

impl Scenario {
    /// Scenario for `components` on `groups`, default box and whole-group domains.
    pub fn new(name: &str, groups: Vec<GroupSpec>, components: Vec<Expr>) -> Result<Self, String> {
        let function = GroupFunction::new(groups.clone(), components.clone()).map_err(|e| e.to_string())?;
        let sample_box = groups.iter().flat_map(default_box).collect();
        Ok(Self {
            name: name.to_string(),
            domains: vec![Domain::Whole; groups.len()],
            groups,
            components,
            chart: None,
            max_order: DEFAULT_MAX_ORDER,
            samples: None,
            sample_box,
            tolerance: None,
            fd_step: None,
            function,
        })
    }

    /// `g ∘ φ` on the Heisenberg group for a chart expression `g` over `(coord 0 k)`.
    pub fn heisenberg_chart(name: &str, chart: Expr) -> Result<Self, String> {
        let function = heisenberg_pullback(&chart).map_err(|e| e.to_string())?;
        let components = function.components().map(<[Expr]>::to_vec).unwrap_or_default();
        let mut s = Self::new(name, vec![GroupSpec::Heisenberg3], components)?;
        s.chart = Some(chart);
        Ok(s)
    }

    pub fn with_domains(mut self, domains: Vec<Domain>) -> Result<Self, String> {
        self.function = self.function.with_domains(domains.clone()).map_err(|e| e.to_string())?;
        self.domains = domains;
        Ok(self)
    }

    pub fn with_box(mut self, sample_box: Vec<(f64, f64)>) -> Result<Self, String> {
        let want: usize = self.groups.iter().map(GroupSpec::algebra_dim).sum();
        if sample_box.len() != want {
            return Err(format!("sample box needs {want} intervals, got {}", sample_box.len()));
        }
        if let Some((lo, hi)) = sample_box.iter().find(|(lo, hi)| !lo.is_finite() || !hi.is_finite() || lo > hi) {
            return Err(format!("bad sample interval [{lo}, {hi}]"));
        }
        self.sample_box = sample_box;
        Ok(self)
    }

    pub fn with_max_order(mut self, order: usize) -> Result<Self, String> {
        if order == 0 || order > ORDER_CAP {
            return Err(format!("max_order must be in 1..={ORDER_CAP}"));
        }
        self.max_order = order;
        Ok(self)
    }

    pub fn function(&self) -> &GroupFunction {
        &self.function
    }

    pub fn is_binary(&self) -> bool {
        self.groups.len() == 2
    }

    /// Sampling box of argument `k`.
    pub fn arg_box(&self, k: usize) -> &[(f64, f64)] {
        let start: usize = self.groups[..k].iter().map(GroupSpec::algebra_dim).sum();
        &self.sample_box[start..start + self.groups[k].algebra_dim()]
    }

    /// One line for `groupcalc list`.
    pub fn summary(&self) -> String {
        let groups: Vec<String> = self.groups.iter().map(ToString::to_string).collect();
        let function = match &self.chart {
            Some(g) => format!("chart {g}"),
            None => self.components.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ; "),
        };
        format!("{}\t{}\t{}\torders<={}", self.name, groups.join(" x "), function, self.max_order)
    }
}

/// Sampling box for point coordinates: Heisenberg `(x₁, x₂, x₃)`, SE(2)
/// `(θ, tx, ty)`, GL(n) row-major entries near the identity.
pub fn default_box(spec: &GroupSpec) -> Vec<(f64, f64)> {
    match spec {
        GroupSpec::Heisenberg3 => vec![(-1.0, 1.0); 3],
        GroupSpec::Translation(n) => vec![(-1.0, 1.0); *n],
        GroupSpec::SE2 => vec![(-1.5, 1.5), (-1.0, 1.0), (-1.0, 1.0)],
        GroupSpec::GL(n) => (0..n * n)
            .map(|k| if k / n == k % n { (0.75, 1.25) } else { (-0.25, 0.25) })
            .collect(),
        GroupSpec::Product(a, b) => default_box(a).into_iter().chain(default_box(b)).collect(),
    }
}

fn expr(src: &str) -> Expr {
    parse_expr(src).unwrap_or_else(|e| panic!("built-in expression `{src}`: {e}"))
}

/// Open box on GL(n) entries: diagonal in `diag`, off-diagonal in `off`.
fn gl_box(n: usize, diag: (f64, f64), off: (f64, f64)) -> Domain {
    Domain::EntryBox((0..n * n).map(|k| if k / n == k % n { diag } else { off }).collect())
}

/// The built-in corpus.
pub fn builtin() -> Vec<Scenario> {
    let h = GroupSpec::Heisenberg3;
    let r1 = GroupSpec::Translation(1);
    let r2 = GroupSpec::Translation(2);
    let gl2 = GroupSpec::GL(2);
    let trace_x = "(add (entry 0 0 0) (entry 0 1 1))";
    let trace_y = "(add (entry 1 0 0) (entry 1 1 1))";
    let trace_xy = "(add (add (mul (entry 0 0 0) (entry 1 0 0)) (mul (entry 0 0 1) (entry 1 1 0))) \
                    (add (mul (entry 0 1 0) (entry 1 0 1)) (mul (entry 0 1 1) (entry 1 1 1))))";
    let det_x = "(sub (mul (entry 0 0 0) (entry 0 1 1)) (mul (entry 0 0 1) (entry 0 1 0)))";
    let build = || -> Result<Vec<Scenario>, String> {
        Ok(vec![
            Scenario::heisenberg_chart("heisenberg-x2", expr("(coord 0 1)"))?,
            Scenario::heisenberg_chart(
                "heisenberg-poly",
                expr("(add (mul (coord 0 0) (coord 0 1)) (mul (coord 0 2) (coord 0 2)))"),
            )?,
            Scenario::new(
                "translation-poly",
                vec![r1.clone(), r1.clone()],
                vec![expr("(mul (coord 0 0) (mul (coord 1 0) (coord 1 0)))")],
            )?,
            Scenario::new(
                "translation-analytic",
                vec![r1.clone(), r1],
                vec![expr("(mul (sin (coord 0 0)) (cos (coord 1 0)))")],
            )?,
            Scenario::new(
                "product-heisenberg-r2",
                vec![h.clone(), r2],
                vec![
                    expr("(add (mul (entry 0 0 1) (coord 1 0)) (mul (entry 0 1 2) (mul (coord 1 1) (coord 1 1))))"),
                    expr("(add (mul (entry 0 0 2) (coord 1 0)) (mul (entry 0 0 1) (mul (entry 0 1 2) (coord 1 1))))"),
                ],
            )?,
            Scenario::new(
                "gl2-trace",
                vec![gl2.clone(), gl2],
                vec![
                    expr(&format!("(add {trace_xy} (mul {trace_x} (mul {trace_y} {trace_y})))")),
                    expr(&format!("(mul {det_x} {trace_y})")),
                ],
            )?
            .with_domains(vec![gl_box(2, (0.25, 2.0), (-1.0, 1.0)), gl_box(2, (0.25, 2.0), (-1.0, 1.0))])?,
            Scenario::new(
                "se2-heisenberg",
                vec![GroupSpec::SE2, h],
                vec![expr(
                    "(add (mul (entry 0 0 2) (entry 1 0 1)) \
                     (add (mul (entry 0 0 0) (mul (entry 1 1 2) (entry 1 1 2))) \
                     (mul (exp (entry 0 1 2)) (entry 1 0 2))))",
                )],
            )?,
        ])
    };
    build().unwrap_or_else(|e| panic!("built-in corpus: {e}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_is_well_formed() {
        let corpus = builtin();
        let names: Vec<&str> = corpus.iter().map(|s| s.name.as_str()).collect();
        assert!(names.contains(&"heisenberg-x2"));
        for n in ["heisenberg-poly", "translation-poly", "translation-analytic", "product-heisenberg-r2", "gl2-trace"] {
            assert!(names.contains(&n), "{n}");
        }
        let mut sorted = names.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), names.len());
        for s in &corpus {
            assert_eq!(s.sample_box.len(), s.groups.iter().map(GroupSpec::algebra_dim).sum::<usize>());
        }
    }

    #[test]
    fn box_validation() {
        let s = Scenario::new("t", vec![GroupSpec::Translation(1)], vec![Expr::coord(0, 0)]).unwrap();
        assert!(s.clone().with_box(vec![(0.0, 1.0), (0.0, 1.0)]).is_err());
        assert!(s.clone().with_box(vec![(1.0, 0.0)]).is_err());
        assert!(s.clone().with_max_order(ORDER_CAP + 1).is_err());
        assert!(s.with_box(vec![(0.0, 1.0)]).is_ok());
    }
}
