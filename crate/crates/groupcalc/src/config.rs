//! TOML configuration: run settings and custom scenarios.
//!
//! ```toml
//! [settings]
//! seed = 7
//! samples = 20
//!
//! [[scenario]]
//! name = "plane"
//! groups = ["r2"]
//! components = ["(mul (coord 0 0) (coord 0 1))"]
//! ```

use std::ops::Range;

use groupcalc_core::{Domain, GroupSpec};
use serde::Deserialize;
use toml::Spanned;

use crate::scenario::Scenario;
use crate::sexpr::{parse_expr, parse_group};
use crate::Mode;

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{0}")]
    Syntax(String),
    #[error("line {line}: {message}")]
    Invalid { line: usize, message: String },
}

#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Settings {
    pub seed: Option<u64>,
    pub samples: Option<usize>,
    pub tolerance: Option<f64>,
    pub fd_step: Option<f64>,
    pub mode: Option<Mode>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    #[serde(default)]
    settings: Settings,
    #[serde(default)]
    scenario: Vec<RawScenario>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawScenario {
    name: Spanned<String>,
    groups: Spanned<Vec<Spanned<String>>>,
    #[serde(default)]
    components: Vec<Spanned<String>>,
    chart: Option<Spanned<String>>,
    max_order: Option<Spanned<usize>>,
    samples: Option<usize>,
    sample_box: Option<Spanned<Vec<[f64; 2]>>>,
    /// One list of open entry intervals per argument; empty means the whole group.
    domains: Option<Spanned<Vec<Vec<[f64; 2]>>>>,
    tolerance: Option<Spanned<f64>>,
    fd_step: Option<Spanned<f64>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Config {
    pub settings: Settings,
    pub scenarios: Vec<Scenario>,
}

fn line_of(src: &str, span: Range<usize>) -> usize {
    src[..span.start.min(src.len())].matches('\n').count() + 1
}

pub fn load(path: &str) -> Result<Config, ConfigError> {
    let src = std::fs::read_to_string(path).map_err(|source| ConfigError::Io { path: path.to_string(), source })?;
    parse(&src)
}

pub fn parse(src: &str) -> Result<Config, ConfigError> {
    let raw: RawConfig = toml::from_str(src).map_err(|e| ConfigError::Syntax(e.to_string().trim_end().to_string()))?;
    let invalid = |span: Range<usize>, message: String| ConfigError::Invalid { line: line_of(src, span), message };

    let s = &raw.settings;
    if let Some(t) = s.tolerance.filter(|t| t.is_nan() || *t < 0.0) {
        return Err(ConfigError::Invalid { line: 1, message: format!("settings.tolerance {t} must be non-negative") });
    }
    if s.samples == Some(0) {
        return Err(ConfigError::Invalid { line: 1, message: "settings.samples must be positive".into() });
    }

    let mut scenarios: Vec<Scenario> = Vec::new();
    for r in raw.scenario {
        let name = r.name.get_ref().clone();
        if name.is_empty() {
            return Err(invalid(r.name.span(), "scenario name is empty".into()));
        }
        if scenarios.iter().any(|s| s.name == name) {
            return Err(invalid(r.name.span(), format!("duplicate scenario name `{name}`")));
        }
        let groups: Vec<GroupSpec> = r
            .groups
            .get_ref()
            .iter()
            .map(|g| parse_group(g.get_ref()).map_err(|e| invalid(g.span(), format!("group `{}`: {e}", g.get_ref()))))
            .collect::<Result<_, _>>()?;
        let mut sc = match (&r.chart, r.components.is_empty()) {
            (Some(chart), true) => {
                if groups != [GroupSpec::Heisenberg3] {
                    return Err(invalid(r.groups.span(), "a chart scenario lives on [\"heisenberg3\"]".into()));
                }
                let g = parse_expr(chart.get_ref()).map_err(|e| invalid(chart.span(), format!("chart: {e}")))?;
                Scenario::heisenberg_chart(&name, g).map_err(|e| invalid(chart.span(), e))?
            }
            (None, false) => {
                let comps = r
                    .components
                    .iter()
                    .map(|c| parse_expr(c.get_ref()).map_err(|e| invalid(c.span(), format!("component: {e}"))))
                    .collect::<Result<Vec<_>, _>>()?;
                Scenario::new(&name, groups, comps).map_err(|e| invalid(r.groups.span(), e))?
            }
            (Some(chart), false) => {
                return Err(invalid(chart.span(), "give either `chart` or `components`, not both".into()))
            }
            (None, true) => return Err(invalid(r.name.span(), "scenario needs `components` or `chart`".into())),
        };
        if let Some(o) = &r.max_order {
            sc = sc.with_max_order(*o.get_ref()).map_err(|e| invalid(o.span(), e))?;
        }
        if let Some(b) = &r.sample_box {
            let b_vals = b.get_ref().iter().map(|[lo, hi]| (*lo, *hi)).collect();
            sc = sc.with_box(b_vals).map_err(|e| invalid(b.span(), e))?;
        }
        if let Some(d) = &r.domains {
            if d.get_ref().len() != sc.groups.len() {
                return Err(invalid(d.span(), format!("need {} domain lists", sc.groups.len())));
            }
            let mut domains = Vec::new();
            for (list, g) in d.get_ref().iter().zip(&sc.groups) {
                if list.is_empty() {
                    domains.push(Domain::Whole);
                } else if list.len() != g.element_dim() {
                    return Err(invalid(d.span(), format!("{g} needs {} entry intervals", g.element_dim())));
                } else {
                    domains.push(Domain::EntryBox(list.iter().map(|[lo, hi]| (*lo, *hi)).collect()));
                }
            }
            sc = sc.with_domains(domains).map_err(|e| invalid(d.span(), e))?;
        }
        if let Some(t) = &r.tolerance {
            if t.get_ref().is_nan() || *t.get_ref() < 0.0 {
                return Err(invalid(t.span(), "tolerance must be non-negative".into()));
            }
            sc.tolerance = Some(*t.get_ref());
        }
        if let Some(h) = &r.fd_step {
            if h.get_ref().is_nan() || *h.get_ref() <= 0.0 {
                return Err(invalid(h.span(), "fd_step must be positive".into()));
            }
            sc.fd_step = Some(*h.get_ref());
        }
        if r.samples == Some(0) {
            return Err(invalid(r.name.span(), "samples must be positive".into()));
        }
        sc.samples = r.samples;
        scenarios.push(sc);
    }
    Ok(Config { settings: raw.settings, scenarios })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_config_has_no_scenarios() {
        let c = parse("").unwrap();
        assert!(c.scenarios.is_empty());
        assert_eq!(c.settings, Settings::default());
    }

    #[test]
    fn two_scenarios() {
        let src = r#"
[settings]
seed = 9
mode = "float"

[[scenario]]
name = "a"
groups = ["r1", "r1"]
components = ["(mul (coord 0 0) (coord 1 0))"]
max_order = 3

[[scenario]]
name = "b"
groups = ["heisenberg3"]
chart = "(coord 0 1)"
samples = 5
"#;
        let c = parse(src).unwrap();
        assert_eq!(c.settings.seed, Some(9));
        assert_eq!(c.settings.mode, Some(Mode::Float));
        assert_eq!(c.scenarios.len(), 2);
        assert_eq!(c.scenarios[0].max_order, 3);
        assert!(c.scenarios[1].chart.is_some());
        assert_eq!(c.scenarios[1].samples, Some(5));
    }

    #[test]
    fn errors_carry_lines() {
        let src = "[[scenario]]\nname = \"a\"\ngroups = [\"r1\"]\ncomponents = [\"(mul (coord 0 0)\"]\n";
        match parse(src) {
            Err(ConfigError::Invalid { line, .. }) => assert_eq!(line, 4),
            other => panic!("{other:?}"),
        }
        let src = "[[scenario]]\nname = \"a\"\ngroups = [\"so3\"]\ncomponents = [\"1.0\"]\n";
        assert!(matches!(parse(src), Err(ConfigError::Invalid { line: 3, .. })));
        let src = "[settings]\nseed = \"x\"\n";
        let msg = parse(src).unwrap_err().to_string();
        assert!(msg.contains("line 2"), "{msg}");
        let src = "[[scenario]]\nname = \"a\"\ngroups = [\"r1\"]\ncomponents = [\"(coord 1 0)\"]\n";
        assert!(matches!(parse(src), Err(ConfigError::Invalid { line: 3, .. })));
    }

    #[test]
    fn duplicate_names_rejected() {
        let one = "[[scenario]]\nname = \"a\"\ngroups = [\"r1\"]\ncomponents = [\"1.0\"]\n";
        let src = format!("{one}{one}");
        assert!(matches!(parse(&src), Err(ConfigError::Invalid { line: 6, .. })));
    }

    #[test]
    fn domains_and_boxes() {
        let src = r#"
[[scenario]]
name = "g"
groups = ["gl2"]
components = ["(entry 0 0 0)"]
sample_box = [[0.9, 1.1], [-0.1, 0.1], [-0.1, 0.1], [0.9, 1.1]]
domains = [[[0.5, 2.0], [-1.0, 1.0], [-1.0, 1.0], [0.5, 2.0]]]
"#;
        let c = parse(src).unwrap();
        assert!(matches!(c.scenarios[0].domains[0], Domain::EntryBox(_)));
        let bad = src.replace("[0.5, 2.0]]]", "]]");
        assert!(parse(&bad).is_err());
    }
}
