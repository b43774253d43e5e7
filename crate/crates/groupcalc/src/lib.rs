//! Scenario registry, configuration, seeded suites and reports for the
//! `groupcalc` verifier.

pub mod config;
pub mod random;
pub mod report;
pub mod runner;
pub mod sampling;
pub mod scenario;
pub mod sexpr;

use serde::{Deserialize, Serialize};

pub use report::{Entry, Report};
pub use runner::{run, RunOptions};
pub use scenario::Scenario;

/// Arithmetic used by a suite.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Float,
    /// Rational arithmetic where the scenario and suite allow it; float elsewhere.
    Exact,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Float => "float",
            Mode::Exact => "exact",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Schwarz,
    Flip,
    Expansion,
    Rho,
    Quotient,
    Integral,
    Exchange,
    Roundtrip,
    Chain,
    Heisenberg,
    Oracle,
}

impl Suite {
    pub const ALL: [Suite; 11] = [
        Suite::Schwarz,
        Suite::Flip,
        Suite::Expansion,
        Suite::Rho,
        Suite::Quotient,
        Suite::Integral,
        Suite::Exchange,
        Suite::Roundtrip,
        Suite::Chain,
        Suite::Heisenberg,
        Suite::Oracle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Schwarz => "schwarz",
            Suite::Flip => "flip",
            Suite::Expansion => "expansion",
            Suite::Rho => "rho",
            Suite::Quotient => "quotient",
            Suite::Integral => "integral",
            Suite::Exchange => "exchange",
            Suite::Roundtrip => "roundtrip",
            Suite::Chain => "chain",
            Suite::Heisenberg => "heisenberg",
            Suite::Oracle => "oracle",
        }
    }

    /// The identity each suite checks, for listings and the report schema.
    pub fn checks(self) -> &'static str {
        match self {
            Suite::Schwarz => "eta-derivatives before gamma-derivatives equal the reverse order",
            Suite::Flip => "mixed partials of flip(f) equal swapped mixed partials of f",
            Suite::Expansion => "product-group derivative equals the sum over all 2^i splits",
            Suite::Rho => "d^(i,j)f equals d^(i+j) on the product with padded directions",
            Suite::Quotient => "difference quotients extrapolate to the directional derivative",
            Suite::Integral => "f^[1,0] equals its integral representation",
            Suite::Exchange => "curried derivatives equal mixed partials; slice and family routes agree",
            Suite::Roundtrip => "uncurry(curry f) = f and curry(uncurry g) = g on evaluation",
            Suite::Chain => "chain rules for homomorphisms, linear maps, outer smooth maps, components",
            Suite::Heisenberg => "Heisenberg commutator defect equals the x2-partial of the chart",
            Suite::Oracle => "dual-number derivatives match Richardson central differences",
        }
    }

    /// Whether the suite can run in rational arithmetic.
    pub fn supports_exact(self) -> bool {
        !matches!(self, Suite::Quotient | Suite::Integral | Suite::Oracle | Suite::Chain)
    }

    pub fn default_samples(self) -> usize {
        match self {
            Suite::Schwarz => 200,
            Suite::Roundtrip | Suite::Heisenberg => 100,
            _ => 50,
        }
    }
}

/// Pass thresholds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tolerances {
    /// Absolute, for identity suites.
    pub identity: f64,
    /// Relative (denominator `max(1, |value|)`), for the oracle suite.
    pub oracle: f64,
    /// Absolute, integral representation on polynomial scenarios.
    pub quadrature_polynomial: f64,
    /// Absolute, integral representation on analytic scenarios.
    pub quadrature_analytic: f64,
    /// Absolute, extrapolated difference-quotient limit.
    pub quotient_limit: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            identity: 1e-9,
            oracle: 1e-5,
            quadrature_polynomial: 1e-8,
            quadrature_analytic: 1e-6,
            quotient_limit: 1e-6,
        }
    }
}
