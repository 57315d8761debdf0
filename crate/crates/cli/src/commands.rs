use std::path::Path;
use std::sync::Arc;

use quadbound_core::bounds::{
    ellipse_bound_table, ellipse_node_estimates, gauss_legendre_upper, new_lower_ellipse, new_lower_gamma,
    new_lower_measure, BoundKind, BoundRecord, UpperMethod,
};
use quadbound_core::domains::ellipse_params;
use quadbound_core::extremal::{adversary_for_rule, jplus_minimize, sample_table, AdversaryDescriptor, OptimizerConfig};
use quadbound_core::quadrature::{gauss_rule, quadrature_error, WeightKind};
use quadbound_core::{Map, Weight};
use rayon::prelude::*;

use crate::config::RunConfig;

/// Accuracy of every integral of an adversary.
const INTEGRATION_TOL: f64 = 1e-12;

/// Koebe constant of convex domains.
const CONVEX_L: f64 = 0.5;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    /// A numerical routine failed on a valid configuration.
    Failure(String),
}

impl From<quadbound_core::Error> for CliError {
    fn from(e: quadbound_core::Error) -> Self {
        match e {
            quadbound_core::Error::Usage(m) => CliError::Usage(m),
            other => CliError::Failure(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Failure(e.to_string())
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// Rows produced by a grid command and the inequalities that did not hold.
#[derive(Debug, Default)]
pub struct Report {
    pub records: Vec<BoundRecord>,
    pub failures: Vec<String>,
}

impl Report {
    fn merge(mut self, other: Report) -> Report {
        self.records.extend(other.records);
        self.failures.extend(other.failures);
        self
    }

    /// Orders rows by `(name, c, n)`; rows without `n` use `N`.
    fn sorted(mut self) -> Report {
        fn key(r: &BoundRecord, k: &str) -> f64 {
            r.params.get(k).copied().unwrap_or(f64::NEG_INFINITY)
        }
        fn count(r: &BoundRecord) -> f64 {
            r.params.get("n").or_else(|| r.params.get("N")).copied().unwrap_or(f64::NEG_INFINITY)
        }
        self.records.sort_by(|a, b| {
            a.name
                .cmp(&b.name)
                .then_with(|| key(a, "c").total_cmp(&key(b, "c")))
                .then_with(|| count(a).total_cmp(&count(b)))
                .then_with(|| a.weight.map(|w| w.to_string()).cmp(&b.weight.map(|w| w.to_string())))
        });
        self
    }
}

fn node_estimate_rows(c: f64, m: f64, eps: f64) -> CliResult<Vec<BoundRecord>> {
    let e = ellipse_node_estimates(m / eps, c)?;
    let params = [("c", c), ("M", m), ("eps", eps)];
    let mut rows = vec![BoundRecord::new(
        "nodes_lower_exact",
        BoundKind::Lower,
        e.exact,
        &params,
        "information needed for error eps from the hyperbolic-metric bound",
    )?];
    if let Some(a) = e.asymptotic {
        rows.push(BoundRecord::new(
            "nodes_lower_asymptotic",
            BoundKind::Reference,
            a,
            &params,
            "-ln(M/eps)/(4(c-1)ln(c-1)) as c tends to 1",
        )?);
    }
    rows.push(BoundRecord::new(
        "nodes_ratio_to_gauss",
        BoundKind::Reference,
        e.ratio_to_ng,
        &params,
        "magnitude of exact lower count over ln(M/eps)/ln c, near |1/(4 ln(c-1))| as c tends to 1",
    )?);
    Ok(rows)
}

/// A Gauss rule, its extremal adversary and the measured error.
pub struct AdversaryCase {
    pub report: Report,
    pub table: Vec<(f64, f64)>,
    pub descriptor: AdversaryDescriptor<f64>,
}

pub fn adversary_case(c: f64, n: usize, weight: WeightKind, m: f64, tol: f64, samples: usize) -> CliResult<AdversaryCase> {
    let w = Weight::from_kind(weight)?;
    let map = Arc::new(Map::for_ellipse(c)?);
    let rule = gauss_rule(&w, n)?;
    let adv = adversary_for_rule(Arc::clone(&map), &w, &rule, m, INTEGRATION_TOL)?;
    let measured = quadrature_error(&rule, &adv.function, &w, INTEGRATION_TOL)?.error.abs();
    let (_, delta) = ellipse_params(c)?;
    let gamma = new_lower_gamma(delta, n, true)? * m;
    let measure = new_lower_measure(&w, delta, CONVEX_L, n)? * m;
    let params = [("c", c), ("n", n as f64), ("M", m)];
    let row = |name: &str, kind, value, provenance: &str| -> CliResult<BoundRecord> {
        Ok(BoundRecord::new(name, kind, value, &params, provenance)?.with_weight(weight))
    };
    let mut report = Report {
        records: vec![
            row("adversary_measured", BoundKind::Reference, measured, "|I(f0) - G_n(f0)| for the extremal adversary f0")?,
            row("adversary_guaranteed", BoundKind::Lower, adv.guaranteed_error, "M J+ at the nodes of G_n")?,
            row("adversary_gamma_floor", BoundKind::Lower, gamma, "M gamma for the convex domain")?,
            row("adversary_measure_floor", BoundKind::Lower, measure, "M times the measure-modulus bound")?,
        ],
        failures: Vec::new(),
    };
    let mut floors = vec![("guaranteed", adv.guaranteed_error), ("measure bound", measure)];
    if weight == WeightKind::Lebesgue {
        floors.push(("gamma", gamma));
        let upper = gauss_legendre_upper(c, n, UpperMethod::Petras)? * m;
        report.records.push(row("adversary_upper_petras", BoundKind::Upper, upper, "M times the Petras upper bound")?);
        if measured > upper + tol {
            report.failures.push(format!("c={c} n={n}: measured {measured:e} exceeds the upper bound {upper:e}"));
        }
    }
    for (what, floor) in floors {
        if measured < floor - tol {
            report.failures.push(format!("c={c} n={n}: measured {measured:e} below the {what} {floor:e}"));
        }
    }
    Ok(AdversaryCase {
        report,
        table: sample_table(&adv.function, samples),
        descriptor: AdversaryDescriptor {
            c,
            nodes: adv.scheme.nodes().to_vec(),
            mults: adv.scheme.mults().to_vec(),
            bound: m,
        },
    })
}

fn jplus_rows(c: f64, big_n: usize, weight: WeightKind, seed: u64) -> CliResult<Report> {
    let w = Weight::from_kind(weight)?;
    let map = Map::for_ellipse(c)?;
    let (_, delta) = ellipse_params(c)?;
    let mut floor = new_lower_measure(&w, delta, CONVEX_L, big_n)?;
    if weight == WeightKind::Lebesgue {
        floor = floor.max(new_lower_ellipse(c, big_n)?);
    }
    let cfg = OptimizerConfig {
        seed,
        floor: Some(floor),
        ..OptimizerConfig::default()
    };
    let params = [("c", c), ("N", big_n as f64)];
    let min = jplus_minimize(&map, &w, big_n, &cfg)?;
    Ok(Report {
        records: vec![
            BoundRecord::new("jplus_min", BoundKind::Upper, min.value, &params, "smallest J+ found by seeded multistart coordinate descent")?
                .with_weight(weight),
            BoundRecord::new("jplus_floor", BoundKind::Lower, floor, &params, "largest proven lower bound on J+")?.with_weight(weight),
        ],
        failures: Vec::new(),
    })
}

enum Task {
    Table(f64, usize),
    Nodes(f64, f64),
    Adversary(f64, usize),
    Jplus(f64, usize),
}

fn run_task(task: &Task, cfg: &RunConfig) -> CliResult<Report> {
    match *task {
        Task::Table(c, n) => Ok(Report {
            records: ellipse_bound_table(c, n, cfg.weight)?,
            failures: Vec::new(),
        }),
        Task::Nodes(c, eps) => Ok(Report {
            records: node_estimate_rows(c, cfg.m, eps)?,
            failures: Vec::new(),
        }),
        Task::Adversary(c, n) => Ok(adversary_case(c, n, cfg.weight, cfg.m, cfg.tol, 2)?.report),
        Task::Jplus(c, big_n) => jplus_rows(c, big_n, cfg.weight, cfg.seed),
    }
}

fn bound_tasks(cfg: &RunConfig) -> Vec<Task> {
    let mut tasks = Vec::new();
    for &c in &cfg.cs {
        tasks.extend(cfg.ns.iter().map(|&n| Task::Table(c, n)));
        if let Some(eps) = cfg.eps {
            tasks.push(Task::Nodes(c, eps));
        }
    }
    tasks
}

pub fn run_bounds(cfg: &RunConfig) -> CliResult<Report> {
    if cfg.ns.is_empty() {
        return Err(CliError::Usage("bounds needs --n".into()));
    }
    if !cfg.big_ns.is_empty() {
        return Err(CliError::Usage("--N is only used by sweep".into()));
    }
    let mut report = Report::default();
    for task in bound_tasks(cfg) {
        report = report.merge(run_task(&task, cfg)?);
    }
    Ok(report.sorted())
}

pub fn run_sweep(cfg: &RunConfig) -> CliResult<Report> {
    if cfg.ns.is_empty() && cfg.big_ns.is_empty() {
        return Err(CliError::Usage("sweep needs --n or --N".into()));
    }
    let mut tasks = bound_tasks(cfg);
    for &c in &cfg.cs {
        tasks.extend(cfg.ns.iter().map(|&n| Task::Adversary(c, n)));
        tasks.extend(cfg.big_ns.iter().map(|&k| Task::Jplus(c, k)));
    }
    let parts: Vec<CliResult<Report>> = tasks.par_iter().map(|t| run_task(t, cfg)).collect();
    let mut report = Report::default();
    for part in parts {
        report = report.merge(part?);
    }
    Ok(report.sorted())
}

pub fn run_adversary(cfg: &RunConfig, export: Option<&Path>, samples: usize) -> CliResult<Report> {
    if cfg.ns.is_empty() {
        return Err(CliError::Usage("adversary needs --n".into()));
    }
    if !cfg.big_ns.is_empty() {
        return Err(CliError::Usage("--N is only used by sweep".into()));
    }
    if samples < 2 {
        return Err(CliError::Usage("--samples must be at least 2".into()));
    }
    if let Some(dir) = export {
        std::fs::create_dir_all(dir)?;
    }
    let mut report = Report::default();
    for &c in &cfg.cs {
        for &n in &cfg.ns {
            let case = adversary_case(c, n, cfg.weight, cfg.m, cfg.tol, samples)?;
            if let Some(dir) = export {
                let stem = format!("adversary_c{c}_n{n}_{}", cfg.weight);
                crate::report::write_table(&dir.join(format!("{stem}.csv")), &case.table)?;
                let json = serde_json::to_string_pretty(&case.descriptor).map_err(|e| CliError::Failure(e.to_string()))?;
                std::fs::write(dir.join(format!("{stem}.json")), json + "\n")?;
            }
            report = report.merge(case.report);
        }
    }
    Ok(report.sorted())
}
