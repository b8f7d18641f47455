//! End-to-end analysis of one instance and the versioned JSON report.
//!
//! Pipeline: load, perturb if some vertex is degenerate, enumerate vertices
//! and edges, compute the diameter and the sub-determinant profile, run the
//! requested checks for the boundedness class, and evaluate the bounds.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::bounds::{polyhedron_diameter_bound, polytope_diameter_bound, refined_diameter_bound, Regime};
use crate::checks::{
    bound_checks, cone_formula_checks, dockable_ratio_checks, dual_bfs_check, expansion_checks,
    facet_distance_checks, gamma_check, halfball_check, membership_check, prefix_surface_checks,
    spread_sources, tiling_checks, vertex_volume_checks, worst, CheckGroup, CheckRecord, Relation, Status,
};
use crate::cone::NormalFan;
use crate::error::{Error, Result};
use crate::graph::{enumerate_vertices, PolyGraph};
use crate::instances::InstanceSpec;
use crate::polyhedron::{Polyhedron, DEFAULT_BASIS_BUDGET};
use crate::sampling::{Estimator, DEFAULT_FACET_SAMPLES, DEFAULT_VOLUME_SAMPLES};
use crate::subdet::{subdet_profile, SubdetProfile, DEFAULT_MINOR_BUDGET};

pub const SCHEMA_VERSION: u32 = 1;

pub const EXIT_OK: i32 = 0;
pub const EXIT_BUDGET: i32 = 2;
pub const EXIT_VIOLATION: i32 = 3;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_FAILURE: i32 = 1;

#[derive(Clone, Debug)]
pub struct AnalyzeOptions {
    pub volume_samples: usize,
    pub facet_samples: usize,
    pub seed: u64,
    pub minor_budget: u128,
    pub basis_budget: u128,
    /// Exact checks only.
    pub skip_mc: bool,
    /// Checks to run; `None` runs every group.
    pub groups: Option<Vec<CheckGroup>>,
    /// BFS sources per prefix-based check.
    pub max_sources: usize,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        Self {
            volume_samples: DEFAULT_VOLUME_SAMPLES,
            facet_samples: DEFAULT_FACET_SAMPLES,
            seed: 0,
            minor_budget: DEFAULT_MINOR_BUDGET,
            basis_budget: DEFAULT_BASIS_BUDGET,
            skip_mc: false,
            groups: None,
            max_sources: 16,
        }
    }
}

impl AnalyzeOptions {
    fn wants(&self, g: CheckGroup) -> bool {
        (!self.skip_mc || !g.is_sampled()) && self.groups.as_ref().is_none_or(|gs| gs.contains(&g))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Pass,
    /// A budget ran out; the report is partial.
    Budget,
    /// At least one check failed beyond its slack.
    Violation,
}

impl Outcome {
    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Pass => EXIT_OK,
            Outcome::Budget => EXIT_BUDGET,
            Outcome::Violation => EXIT_VIOLATION,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Bounds {
    pub polytope_diameter_bound: Option<u64>,
    pub polyhedron_diameter_bound: Option<u64>,
    pub refined_diameter_bound: Option<u64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Settings {
    pub volume_samples: usize,
    pub facet_samples: usize,
    pub seed: u64,
    pub minor_budget: String,
    pub basis_budget: String,
    pub skip_mc: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundReport {
    pub schema_version: u32,
    pub instance: String,
    pub n: usize,
    pub m: usize,
    pub bounded: Option<bool>,
    /// Set when the right-hand side had to be perturbed.
    pub epsilon: Option<String>,
    pub vertices: Option<usize>,
    pub edges: Option<usize>,
    pub diameter: Option<usize>,
    /// Diameter of the unperturbed graph, when perturbation happened.
    pub original_diameter: Option<usize>,
    pub delta: Option<u64>,
    pub delta1: Option<u64>,
    pub delta_nm1: Option<u64>,
    pub max_minor_by_size: BTreeMap<usize, u64>,
    pub bounds: Bounds,
    pub settings: Settings,
    pub checks: Vec<CheckRecord>,
    pub outcome: Outcome,
    pub message: Option<String>,
}

impl BoundReport {
    fn new(instance: String, p: &Polyhedron, opts: &AnalyzeOptions) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            instance,
            n: p.n(),
            m: p.m(),
            bounded: None,
            epsilon: None,
            vertices: None,
            edges: None,
            diameter: None,
            original_diameter: None,
            delta: None,
            delta1: None,
            delta_nm1: None,
            max_minor_by_size: BTreeMap::new(),
            bounds: Bounds::default(),
            settings: Settings {
                volume_samples: opts.volume_samples,
                facet_samples: opts.facet_samples,
                seed: opts.seed,
                minor_budget: opts.minor_budget.to_string(),
                basis_budget: opts.basis_budget.to_string(),
                skip_mc: opts.skip_mc,
            },
            checks: Vec::new(),
            outcome: Outcome::Pass,
            message: None,
        }
    }

    pub fn exit_code(&self) -> i32 {
        self.outcome.exit_code()
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)? + "\n")
    }

    /// Counts of (pass, fail, not applicable) per check name, in first-seen order.
    pub fn summary(&self) -> Vec<(String, [usize; 3])> {
        let mut out: Vec<(String, [usize; 3])> = Vec::new();
        for c in &self.checks {
            let idx = match out.iter().position(|(n, _)| *n == c.check) {
                Some(i) => i,
                None => {
                    out.push((c.check.clone(), [0; 3]));
                    out.len() - 1
                }
            };
            let slot = match c.status {
                Status::Pass => 0,
                Status::Fail => 1,
                Status::NotApplicable => 2,
            };
            out[idx].1[slot] += 1;
        }
        out
    }

    pub fn render_table(&self) -> String {
        let mut s = String::new();
        let opt = |v: Option<usize>| v.map_or("-".to_string(), |x| x.to_string());
        let opt64 = |v: Option<u64>| v.map_or("-".to_string(), |x| x.to_string());
        let _ = writeln!(s, "instance          {}", self.instance);
        let _ = writeln!(s, "size              m = {}, n = {}", self.m, self.n);
        let class = match self.bounded {
            Some(true) => "bounded",
            Some(false) => "unbounded",
            None => "-",
        };
        let _ = writeln!(s, "class             {class}");
        if let Some(e) = &self.epsilon {
            let _ = writeln!(s, "perturbation      epsilon = {e}");
        }
        let _ = writeln!(s, "vertices, edges   {}, {}", opt(self.vertices), opt(self.edges));
        let _ = write!(s, "diameter          {}", opt(self.diameter));
        if let Some(d) = self.original_diameter {
            let _ = write!(s, " (unperturbed {d})");
        }
        let _ = writeln!(s);
        let _ = writeln!(
            s,
            "max minors        all {}, entries {}, size n-1 {}",
            opt64(self.delta),
            opt64(self.delta1),
            opt64(self.delta_nm1)
        );
        let b = &self.bounds;
        let _ = writeln!(
            s,
            "diameter bounds   polytope {}, polyhedron {}, refined {}",
            opt64(b.polytope_diameter_bound),
            opt64(b.polyhedron_diameter_bound),
            opt64(b.refined_diameter_bound)
        );
        if !self.checks.is_empty() {
            let _ = writeln!(s, "\n{:<28} {:>6} {:>6} {:>6}", "check", "pass", "fail", "n/a");
            for (name, [p, f, na]) in self.summary() {
                let _ = writeln!(s, "{name:<28} {p:>6} {f:>6} {na:>6}");
            }
        }
        let failures: Vec<_> = self.failures().collect();
        if !failures.is_empty() {
            let _ = writeln!(s, "\nfailures (seed {}):", self.settings.seed);
            for c in failures {
                let _ = writeln!(
                    s,
                    "  {} [{}]: {:.6} {} {:.6} (se {:.3e}, margin {:.3e})",
                    c.check, c.subject, c.measured, c.relation, c.bound, c.standard_error, c.margin
                );
            }
        }
        let _ = write!(s, "\noutcome           {:?}", self.outcome);
        if let Some(m) = &self.message {
            let _ = write!(s, ": {m}");
        }
        let _ = writeln!(s);
        s
    }
}

/// Run the full pipeline on an instance specification.
pub fn analyze(spec: &InstanceSpec, opts: &AnalyzeOptions) -> Result<BoundReport> {
    let p = spec.build()?;
    analyze_polyhedron(&p, &spec.to_string(), opts)
}

pub fn analyze_polyhedron(p: &Polyhedron, instance: &str, opts: &AnalyzeOptions) -> Result<BoundReport> {
    if opts.volume_samples == 0 || opts.facet_samples == 0 {
        return Err(Error::param("sample count must be positive"));
    }
    let mut report = BoundReport::new(instance.to_string(), p, opts);
    match run(p, opts, &mut report) {
        Ok(()) => {}
        Err(e @ Error::Budget { .. }) => {
            report.outcome = Outcome::Budget;
            report.message = Some(e.to_string());
            return Ok(report);
        }
        Err(e) => return Err(e),
    }
    if let Some(w) = worst(&report.checks) {
        report.outcome = Outcome::Violation;
        report.message = Some(format!(
            "{} [{}]: {} {} {} beyond slack (seed {})",
            w.check, w.subject, w.measured, w.relation, w.bound, opts.seed
        ));
    }
    Ok(report)
}

fn run(p: &Polyhedron, opts: &AnalyzeOptions, report: &mut BoundReport) -> Result<()> {
    let n = p.n();
    let bounded = p.classify_boundedness(opts.basis_budget)?;
    report.bounded = Some(bounded);
    let regime = if bounded { Regime::Bounded } else { Regime::Unbounded };

    let original = enumerate_vertices(p, opts.basis_budget)?;
    if original.vertex_count() == 0 {
        return Err(Error::NoVertex);
    }
    let (work, graph, original_diameter) = if original.is_simple() {
        (p.clone(), original, None)
    } else {
        let q = p.perturb(opts.basis_budget)?;
        let g = enumerate_vertices(&q, opts.basis_budget)?;
        (q, g, Some(original.diameter()?))
    };
    report.epsilon = work.epsilon().map(|e| e.to_string());
    report.vertices = Some(graph.vertex_count());
    report.edges = Some(graph.edge_count());
    let diameter = graph.diameter()?;
    report.diameter = Some(diameter);
    report.original_diameter = original_diameter;

    let profile = subdet_profile(p.a(), None, opts.minor_budget)?;
    report.delta1 = profile.delta1;
    report.delta_nm1 = profile.delta_nm1;
    report.max_minor_by_size = profile.per_size.clone();
    if let Some(&k) = profile.missing_sizes.first() {
        return Err(Error::Budget {
            what: "minor",
            required: crate::polyhedron::binomial(p.m(), k) * crate::polyhedron::binomial(n, k),
            budget: opts.minor_budget,
        });
    }
    report.delta = Some(profile.delta);
    let delta = profile.delta as f64;
    if n >= 2 && profile.delta >= 1 {
        report.bounds.polytope_diameter_bound = Some(polytope_diameter_bound(n, delta)?);
        report.bounds.polyhedron_diameter_bound = Some(polyhedron_diameter_bound(n, delta)?);
        if let (Some(d1), Some(dn)) = (profile.delta1, profile.delta_nm1) {
            report.bounds.refined_diameter_bound = Some(refined_diameter_bound(n, d1 as f64, dn as f64, regime)?);
        }
    }

    report.checks = collect_checks(&work, &graph, &profile, regime, diameter, original_diameter, opts)?;
    Ok(())
}

fn collect_checks(
    p: &Polyhedron,
    g: &PolyGraph,
    profile: &SubdetProfile,
    regime: Regime,
    diameter: usize,
    original_diameter: Option<usize>,
    opts: &AnalyzeOptions,
) -> Result<Vec<CheckRecord>> {
    let n = p.n();
    let bounded = regime == Regime::Bounded;
    let sources = spread_sources(g.vertex_count(), opts.max_sources);
    let mut out = Vec::new();

    if opts.wants(CheckGroup::Bounds) && n >= 2 {
        out.extend(bound_checks(n, diameter, profile, regime)?);
        if let Some(d0) = original_diameter {
            out.push(CheckRecord::exact(
                "perturbed-diameter",
                "graph",
                Relation::AtLeast,
                diameter as f64,
                d0 as f64,
                diameter >= d0,
            ));
        }
    }
    if opts.wants(CheckGroup::DualBfs) {
        out.push(dual_bfs_check(g, &sources)?);
    }
    if opts.wants(CheckGroup::FacetDistance) {
        out.extend(facet_distance_checks(&NormalFan::new(p, g)?, profile)?);
    }
    if n >= 2 && opts.wants(CheckGroup::Gamma) {
        out.push(gamma_check(n)?);
    }
    if n >= 2 && opts.wants(CheckGroup::Halfball) {
        out.push(halfball_check(n)?);
    }
    if n >= 2 && opts.wants(CheckGroup::ConeFormulas) {
        out.extend(cone_formula_checks(n, opts.volume_samples, opts.seed)?);
    }

    let sampled = [
        CheckGroup::Tiling,
        CheckGroup::Membership,
        CheckGroup::VertexVolume,
        CheckGroup::DockableUpper,
        CheckGroup::Isoperimetric,
        CheckGroup::Expansion,
        CheckGroup::UnboundedDockable,
    ];
    if n < 2 || !sampled.iter().any(|&gr| opts.wants(gr)) {
        return Ok(out);
    }
    let est = Estimator::new(p, g, opts.volume_samples, opts.facet_samples, opts.seed)?;
    if opts.wants(CheckGroup::Tiling) {
        out.extend(tiling_checks(&est, bounded));
    }
    if opts.wants(CheckGroup::Membership) {
        out.push(membership_check(&est));
    }
    if opts.wants(CheckGroup::VertexVolume) {
        out.extend(vertex_volume_checks(&est, profile));
    }
    if opts.wants(CheckGroup::DockableUpper) {
        out.extend(dockable_ratio_checks(&est, profile)?);
    }
    if bounded && opts.wants(CheckGroup::Isoperimetric) || !bounded && opts.wants(CheckGroup::UnboundedDockable) {
        for &s in &sources {
            out.extend(prefix_surface_checks(&est, s, bounded)?);
        }
    }
    if opts.wants(CheckGroup::Expansion) {
        for &s in &sources {
            out.extend(expansion_checks(&est, s, profile, regime)?);
        }
    }
    Ok(out)
}

/// Exit code for an error that prevented a report.
pub fn error_exit_code(e: &Error) -> i32 {
    match e {
        Error::Budget { .. } => EXIT_BUDGET,
        Error::Parameter(_)
        | Error::Parse { .. }
        | Error::NonIntegral { .. }
        | Error::RankDeficient { .. }
        | Error::Dimension(_)
        | Error::Io(_)
        | Error::Json(_) => EXIT_USAGE,
        _ => EXIT_FAILURE,
    }
}

/// One line of a sweep.
#[derive(Clone, Debug, Serialize)]
pub struct SweepRow {
    pub instance: String,
    pub n: usize,
    pub m: usize,
    pub bounded: Option<bool>,
    pub perturbed: bool,
    pub vertices: Option<usize>,
    pub delta: Option<u64>,
    pub delta1: Option<u64>,
    pub delta_nm1: Option<u64>,
    pub diameter: Option<usize>,
    pub bound: Option<u64>,
    pub refined_bound: Option<u64>,
    pub margin: Option<i64>,
    pub refined_margin: Option<i64>,
    pub checks_passed: usize,
    pub checks_failed: usize,
    pub outcome: Outcome,
}

impl SweepRow {
    pub fn from_report(r: &BoundReport) -> Self {
        let bound = match r.bounded {
            Some(true) => r.bounds.polytope_diameter_bound,
            Some(false) => r.bounds.polyhedron_diameter_bound,
            None => None,
        };
        let gap = |b: Option<u64>| Some(b? as i64 - r.diameter? as i64);
        Self {
            instance: r.instance.clone(),
            n: r.n,
            m: r.m,
            bounded: r.bounded,
            perturbed: r.epsilon.is_some(),
            vertices: r.vertices,
            delta: r.delta,
            delta1: r.delta1,
            delta_nm1: r.delta_nm1,
            diameter: r.diameter,
            bound,
            refined_bound: r.bounds.refined_diameter_bound,
            margin: gap(bound),
            refined_margin: gap(r.bounds.refined_diameter_bound),
            checks_passed: r.checks.iter().filter(|c| c.status == Status::Pass).count(),
            checks_failed: r.checks.iter().filter(|c| c.status == Status::Fail).count(),
            outcome: r.outcome,
        }
    }
}

pub const SWEEP_HEADER: [&str; 17] = [
    "instance",
    "n",
    "m",
    "bounded",
    "perturbed",
    "vertices",
    "delta",
    "delta1",
    "delta_nm1",
    "diameter",
    "bound",
    "refined_bound",
    "margin",
    "refined_margin",
    "checks_passed",
    "checks_failed",
    "outcome",
];

/// Instances of a family for each `n` in `range`. Random families produce
/// `trials` instances per `n` with `m = 2n + 2` and seeds `seed + t`;
/// `transport` uses `2 x n` tables.
pub fn sweep_instances(
    family: &str,
    range: std::ops::RangeInclusive<usize>,
    trials: usize,
    max_entry: i64,
    seed: u64,
) -> Result<Vec<InstanceSpec>> {
    let mut out = Vec::new();
    for n in range {
        match family {
            "cube" => out.push(InstanceSpec::Cube { n }),
            "simplex" => out.push(InstanceSpec::Simplex { n }),
            "cross" => out.push(InstanceSpec::Cross { n }),
            "transport" => out.push(InstanceSpec::transport(2, n)),
            "random" | "random_int" => {
                for t in 0..trials {
                    out.push(InstanceSpec::RandomInt { n, m: 2 * n + 2, max_entry, seed: seed.wrapping_add(t as u64) });
                }
            }
            other => return Err(Error::param(format!("unknown family '{other}'"))),
        }
    }
    Ok(out)
}

/// Analyze every instance and write the CSV; returns the worst exit code.
pub fn sweep<W: std::io::Write>(specs: &[InstanceSpec], opts: &AnalyzeOptions, out: W) -> Result<i32> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    w.write_record(SWEEP_HEADER).map_err(csv_error)?;
    let mut code = EXIT_OK;
    for spec in specs {
        let report = analyze(spec, opts)?;
        code = match (code, report.exit_code()) {
            (EXIT_VIOLATION, _) | (_, EXIT_VIOLATION) => EXIT_VIOLATION,
            (a, b) => a.max(b),
        };
        w.serialize(SweepRow::from_report(&report)).map_err(csv_error)?;
    }
    w.flush()?;
    Ok(code)
}

fn csv_error(e: csv::Error) -> Error {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::Io(io),
        other => Error::param(format!("csv: {other:?}")),
    }
}
