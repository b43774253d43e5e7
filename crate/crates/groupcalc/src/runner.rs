//! Suite execution over a scenario set.

use std::time::Instant;

use groupcalc_core::calculus::{
    diff_quotient, diff_quotient_partial, directional, expand_product_derivative, fd_oracle,
    flip_sides, heisenberg_defect, hom_chain_sides, integral_rep, iterated, lcs_chain_sides,
    lcs_chain_sides_partial, linear_sides, partial_ij, quotient_limit, rho_identity_check,
    schwarz_sides, QuotientPoint, DEFAULT_QUAD_NODES, FD_STEP_ORDER1, FD_STEP_ORDER2,
};
use groupcalc_core::explaw::{slice_derivative_sides, uncurried_derivative_routes};
use groupcalc_core::{
    curry, uncurry, verify_exchange, Error, Exact, Expr, Field, GroupElement, GroupFunction,
    GroupHom, GroupSpec, LieDirection, Matrix, Result,
};

use crate::report::{Entry, Metadata, Report, Witness};
use crate::sampling::{derive_seed, Sampler};
use crate::scenario::Scenario;
use crate::{Mode, Suite, Tolerances};

/// Attempts per sample before giving up on landing inside the domain.
const MAX_ATTEMPTS: usize = 50;

#[derive(Debug, Clone, PartialEq)]
pub struct RunOptions {
    pub seed: u64,
    pub suites: Vec<Suite>,
    /// Overrides every suite's and scenario's sample count.
    pub samples: Option<usize>,
    /// Overrides the identity tolerance.
    pub tolerance: Option<f64>,
    pub mode: Mode,
    /// Finite-difference step for the oracle suite, unless a scenario sets its own.
    pub fd_step: Option<f64>,
}

impl Default for RunOptions {
    fn default() -> Self {
        Self { seed: 42, suites: Suite::ALL.to_vec(), samples: None, tolerance: None, mode: Mode::Exact, fd_step: None }
    }
}

impl RunOptions {
    pub fn tolerances(&self) -> Tolerances {
        let mut t = Tolerances::default();
        if let Some(v) = self.tolerance {
            t.identity = v;
        }
        t
    }
}

pub fn applies(suite: Suite, sc: &Scenario) -> bool {
    match suite {
        Suite::Schwarz
        | Suite::Flip
        | Suite::Expansion
        | Suite::Rho
        | Suite::Integral
        | Suite::Exchange
        | Suite::Roundtrip => sc.is_binary(),
        Suite::Heisenberg => sc.chart.is_some(),
        Suite::Quotient | Suite::Chain | Suite::Oracle => true,
    }
}

/// Runs every selected suite on every applicable scenario, suites outermost.
pub fn run(scenarios: &[Scenario], opts: &RunOptions) -> Report {
    let start = Instant::now();
    let tol = opts.tolerances();
    let mut entries = Vec::new();
    for &suite in &opts.suites {
        for sc in scenarios.iter().filter(|sc| applies(suite, sc)) {
            entries.push(run_entry(suite, sc, opts, &tol));
        }
    }
    Report {
        metadata: Metadata {
            seed: opts.seed,
            mode: opts.mode.name().to_string(),
            tolerances: tol,
            suites: opts.suites.iter().map(|s| s.name().to_string()).collect(),
            scenarios: scenarios.iter().map(|s| s.name.clone()).collect(),
            wall_time_s: start.elapsed().as_secs_f64(),
        },
        entries,
    }
}

#[derive(Debug, Default)]
struct Acc {
    samples: usize,
    max_abs: f64,
    max_rel: f64,
    error: Option<String>,
}

impl Acc {
    fn merge(&mut self, devs: &[(f64, f64)]) {
        for &(a, r) in devs {
            self.max_abs = self.max_abs.max(if a.is_nan() { f64::INFINITY } else { a });
            self.max_rel = self.max_rel.max(if r.is_nan() { f64::INFINITY } else { r });
        }
    }
}

fn sample_loop(n: usize, sampler: &mut Sampler, mut check: impl FnMut(&mut Sampler) -> Result<Vec<(f64, f64)>>) -> Acc {
    let mut acc = Acc::default();
    for _ in 0..n {
        let mut landed = false;
        for _ in 0..MAX_ATTEMPTS {
            match check(sampler) {
                Ok(devs) => {
                    acc.merge(&devs);
                    acc.samples += 1;
                    landed = true;
                    break;
                }
                Err(Error::OutsideDomain(_)) => continue,
                Err(e) => {
                    acc.error = Some(e.to_string());
                    return acc;
                }
            }
        }
        if !landed {
            acc.error = Some(format!("no sample inside the domain after {MAX_ATTEMPTS} attempts"));
            return acc;
        }
    }
    acc
}

fn effective_mode(suite: Suite, sc: &Scenario, mode: Mode) -> Mode {
    if mode == Mode::Exact && suite.supports_exact() && sc.function().is_polynomial() {
        Mode::Exact
    } else {
        Mode::Float
    }
}

fn run_entry(suite: Suite, sc: &Scenario, opts: &RunOptions, tol: &Tolerances) -> Entry {
    let seed = derive_seed(opts.seed, &[suite.name(), &sc.name]);
    let mode = effective_mode(suite, sc, opts.mode);
    let n = opts.samples.or(sc.samples).unwrap_or_else(|| suite.default_samples());
    let fd_step = sc.fd_step.or(opts.fd_step);
    let mut sampler = Sampler::new(seed, mode == Mode::Exact);
    let mut acc = sample_loop(n, &mut sampler, |s| match mode {
        Mode::Exact => one_sample::<Exact>(suite, sc, s, fd_step),
        Mode::Float => one_sample::<f64>(suite, sc, s, fd_step),
    });
    let mut witness = None;
    if suite == Suite::Heisenberg && acc.error.is_none() {
        let e = GroupElement::identity(&GroupSpec::Heisenberg3);
        let chart = sc.chart.as_ref().expect("heisenberg suite needs a chart");
        let w = match mode {
            Mode::Exact => heisenberg_witness::<Exact>(chart, &e),
            Mode::Float => heisenberg_witness::<f64>(chart, &e),
        };
        match w {
            Ok((w, devs)) => {
                acc.merge(&devs);
                witness = Some(w);
            }
            Err(err) => acc.error = Some(err.to_string()),
        }
    }
    let (measure, tolerance) = match suite {
        Suite::Oracle => (acc.max_rel, tol.oracle),
        Suite::Quotient => (acc.max_abs, tol.quotient_limit),
        Suite::Integral if sc.function().is_polynomial() => (acc.max_abs, tol.quadrature_polynomial),
        Suite::Integral => (acc.max_abs, tol.quadrature_analytic),
        Suite::Roundtrip => (acc.max_abs, 0.0),
        _ => (acc.max_abs, sc.tolerance.unwrap_or(tol.identity)),
    };
    Entry {
        suite: suite.name().to_string(),
        scenario: sc.name.clone(),
        samples: acc.samples,
        max_abs_dev: acc.max_abs,
        max_rel_dev: acc.max_rel,
        pass: acc.error.is_none() && acc.samples == n && measure <= tolerance,
        seed,
        mode: mode.name().to_string(),
        tolerance,
        error: acc.error,
        witness,
    }
}

fn heisenberg_witness<F: Field>(chart: &Expr, e: &GroupElement) -> Result<(Witness, Vec<(f64, f64)>)> {
    let d = heisenberg_defect::<F>(chart, e)?;
    let devs = vec![dev(std::slice::from_ref(&d.defect), std::slice::from_ref(&d.partial_x2))];
    let w = Witness { gamma_eta: d.gamma_eta.to_f64(), eta_gamma: d.eta_gamma.to_f64(), defect: d.defect.to_f64() };
    Ok((w, devs))
}

/// `(max |a−b|, max |a−b| / max(1, |b|))`.
fn dev<F: Field>(a: &[F], b: &[F]) -> (f64, f64) {
    if a.len() != b.len() {
        return (f64::INFINITY, f64::INFINITY);
    }
    a.iter().zip(b).fold((0.0f64, 0.0f64), |(ma, mr), (x, y)| {
        let d = (x.clone() - y.clone()).to_f64().abs();
        let r = d / y.to_f64().abs().max(1.0);
        (ma.max(if d.is_nan() { f64::INFINITY } else { d }), mr.max(if r.is_nan() { f64::INFINITY } else { r }))
    })
}

fn pair_dev<F: Field>(sides: (Vec<F>, Vec<F>)) -> (f64, f64) {
    dev(&sides.0, &sides.1)
}

struct Args {
    x: GroupElement,
    y: Option<GroupElement>,
}

fn sample_args(sc: &Scenario, s: &mut Sampler) -> Result<Args> {
    let x = s.point(&sc.groups[0], sc.arg_box(0))?;
    let y = if sc.is_binary() { Some(s.point(&sc.groups[1], sc.arg_box(1))?) } else { None };
    Ok(Args { x, y })
}

impl Args {
    fn y(&self) -> &GroupElement {
        self.y.as_ref().expect("binary scenario")
    }
    /// The argument as one point of the (product) group.
    fn joined(&self) -> GroupElement {
        match &self.y {
            Some(y) => GroupElement::pair(self.x.clone(), y.clone()),
            None => self.x.clone(),
        }
    }
}

/// The scenario's function on a single group (`G × H` for two arguments).
fn unary_view(sc: &Scenario) -> Result<(GroupFunction, GroupSpec)> {
    if sc.is_binary() {
        Ok((sc.function().on_product()?, GroupSpec::product(sc.groups[0].clone(), sc.groups[1].clone())))
    } else {
        Ok((sc.function().clone(), sc.groups[0].clone()))
    }
}

/// `(i, j)` with `i, j ≤ min(2, max_order)` and `i + j ≤ max_order`.
fn mixed_orders(max_order: usize) -> Vec<(usize, usize)> {
    let m = max_order.min(2);
    (0..=m).flat_map(|i| (0..=m).map(move |j| (i, j))).filter(|(i, j)| i + j <= max_order).collect()
}

fn one_sample<F: Field>(suite: Suite, sc: &Scenario, s: &mut Sampler, fd_step: Option<f64>) -> Result<Vec<(f64, f64)>> {
    let a = sample_args(sc, s)?;
    let f = sc.function();
    let mut out = Vec::new();
    match suite {
        Suite::Schwarz | Suite::Flip => {
            for (i, j) in mixed_orders(sc.max_order) {
                let gd = s.directions(&sc.groups[0], i)?;
                let hd = s.directions(&sc.groups[1], j)?;
                let sides = if suite == Suite::Schwarz {
                    schwarz_sides::<F>(f, &a.x, a.y(), &gd, &hd)?
                } else {
                    flip_sides::<F>(f, &a.x, a.y(), &gd, &hd)?
                };
                out.push(pair_dev(sides));
            }
        }
        Suite::Expansion => {
            for i in 1..=sc.max_order.min(3) {
                let pairs = (0..i)
                    .map(|_| Ok((s.direction(&sc.groups[0])?, s.direction(&sc.groups[1])?)))
                    .collect::<Result<Vec<_>>>()?;
                let e = expand_product_derivative::<F>(f, &a.x, a.y(), &pairs)?;
                if e.terms.len() != 1 << i {
                    out.push((f64::INFINITY, f64::INFINITY));
                }
                out.push(dev(&e.left, &e.right));
            }
        }
        Suite::Rho => {
            for total in 0..=sc.max_order {
                for i in 0..=total {
                    let gd = s.directions(&sc.groups[0], i)?;
                    let hd = s.directions(&sc.groups[1], total - i)?;
                    out.push(pair_dev(rho_identity_check::<F>(f, &a.x, a.y(), &gd, &hd)?));
                }
            }
        }
        Suite::Exchange => {
            let g = curry(f)?;
            for (i, j) in mixed_orders(sc.max_order) {
                let gd = s.directions(&sc.groups[0], i)?;
                let hd = s.directions(&sc.groups[1], j)?;
                out.push(pair_dev(verify_exchange::<F>(&g, &a.x, a.y(), &gd, &hd)?));
                out.push(pair_dev(uncurried_derivative_routes::<F>(&g, &a.x, a.y(), &gd, &hd)?));
                if i == 0 {
                    out.push(pair_dev(slice_derivative_sides::<F>(f, &a.x, a.y(), &hd)?));
                }
            }
        }
        Suite::Roundtrip => {
            let (xf, yf) = (a.x.lift::<F>(), a.y().lift::<F>());
            let direct = f.eval(&[xf.clone(), yf.clone()])?;
            let g = curry(f)?;
            out.push(dev(&uncurry(&g).eval(&[xf, yf.clone()])?, &direct));
            let slice = g.at(&a.x)?.eval(std::slice::from_ref(&yf))?;
            out.push(dev(&slice, &direct));
            let again = curry(&uncurry(&g))?.at(&a.x)?.eval(&[yf])?;
            out.push(dev(&again, &slice));
        }
        Suite::Heisenberg => {
            let chart = sc.chart.as_ref().expect("heisenberg suite needs a chart");
            let d = heisenberg_defect::<F>(chart, &a.x)?;
            out.push(dev(&[d.defect], &[d.partial_x2]));
        }
        Suite::Quotient => {
            let (g, spec) = unary_view(sc)?;
            let p = a.joined();
            let gamma = s.direction(&spec)?;
            let d = directional::<f64>(&g, &p, &gamma)?;
            out.push(dev(&quotient_limit(&g, &p, &gamma)?, &d));
            out.push(dev(&diff_quotient(&g, &QuotientPoint::new(p, gamma, 0.0))?, &d));
            if sc.is_binary() {
                let gx = s.direction(&sc.groups[0])?;
                let q = QuotientPoint::new(a.x.clone(), gx.clone(), 0.0).with_y(a.y().clone());
                let reference = partial_ij::<f64>(f, &a.x, a.y(), &[gx], &[])?;
                out.push(dev(&diff_quotient_partial(f, &q)?, &reference));
            }
        }
        Suite::Integral => {
            let gamma = s.direction(&sc.groups[0])?;
            let sign = if s.index(2) == 0 { -1.0 } else { 1.0 };
            let t = sign * s.uniform(0.05, 0.5);
            let q = QuotientPoint::new(a.x.clone(), gamma, t).with_y(a.y().clone());
            out.push(dev(&integral_rep(f, &q, DEFAULT_QUAD_NODES)?, &diff_quotient_partial(f, &q)?));
        }
        Suite::Oracle => {
            let (g, spec) = unary_view(sc)?;
            let p = a.joined();
            let gamma = s.direction(&spec)?;
            for order in 1..=sc.max_order.min(2) {
                let h = fd_step.unwrap_or(if order == 1 { FD_STEP_ORDER1 } else { FD_STEP_ORDER2 });
                let exact = iterated::<f64>(&g, &p, &vec![gamma.clone(); order])?;
                let fd = fd_oracle(&g, &p, &gamma, order, h)?;
                out.push(dev(&fd.value, &exact));
            }
        }
        Suite::Chain => chain_sample(sc, &a, s, &mut out)?,
    }
    Ok(out)
}

/// `g: ℝᵐ → ℝ²` used as the outer map in the chain-rule checks.
fn outer_map(m: usize) -> Vec<Expr> {
    let u = |k: usize| Expr::coord(0, k);
    let sum = (1..m).fold(u(0), |acc, k| acc + u(k));
    vec![u(0).sin() * u(m - 1) + u(0) * u(0), sum * u(m - 1).cos()]
}

fn chain_sample(sc: &Scenario, a: &Args, s: &mut Sampler, out: &mut Vec<(f64, f64)>) -> Result<()> {
    let (g, spec) = unary_view(sc)?;
    let p = a.joined();
    let order = 1 + s.index(sc.max_order.min(2));
    let dirs = s.directions(&spec, order)?;

    // homomorphism ℝ → G given by a one-parameter subgroup
    let curve = GroupHom::curve(&s.direction(&spec)?);
    let t = GroupElement::translation(&[s.uniform(-1.0, 1.0)]);
    let tdirs: Vec<_> = (0..order).map(|_| LieDirection::translation(&[s.uniform(-1.0, 1.0)])).collect();
    out.push(pair_dev(hom_chain_sides::<f64>(&g, &curve, &t, &tdirs)?));

    if spec.matrix_size().is_some() {
        let c = s.point(&spec, sc.arg_box(0))?;
        out.push(pair_dev(hom_chain_sides::<f64>(&g, &GroupHom::conjugation(&c)?, &p, &dirs)?));
    } else {
        let outer = GroupSpec::product(spec.clone(), GroupSpec::Translation(1));
        let pr = GroupHom::project_first(&outer)?;
        let q = GroupElement::pair(p.clone(), GroupElement::translation(&[s.uniform(-1.0, 1.0)]));
        let qdirs: Vec<_> = dirs
            .iter()
            .map(|d| LieDirection::pair(d.clone(), LieDirection::translation(&[s.uniform(-1.0, 1.0)])))
            .collect();
        out.push(pair_dev(hom_chain_sides::<f64>(&g, &pr, &q, &qdirs)?));
    }

    let m = g.target_dim();
    let lambda = Matrix::from_vec(2, m, s.coords(&vec![(-1.0, 1.0); 2 * m]))?;
    out.push(pair_dev(linear_sides::<f64>(&lambda, &g, &p, &dirs)?));

    let outer = outer_map(m);
    let gamma = s.direction(&spec)?;
    out.push(pair_dev(lcs_chain_sides(&outer, &g, &p, &gamma)?));
    if sc.is_binary() {
        let gx = s.direction(&sc.groups[0])?;
        out.push(pair_dev(lcs_chain_sides_partial(&outer, sc.function(), &a.x, a.y(), &gx)?));
    }

    let whole = iterated::<f64>(&g, &p, &dirs)?;
    for k in 0..m {
        let part = iterated::<f64>(&g.component(k)?, &p, &dirs)?;
        out.push(dev(&part, &whole[k..=k]));
    }
    Ok(())
}
