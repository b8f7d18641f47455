//! Measured checks of the inequalities behind the diameter bounds.
//!
//! Every check produces [`CheckRecord`]s. Monte Carlo checks pass when the
//! inequality holds for the point estimates after granting `3 SE + 1e-6` of
//! slack to the disadvantaged side; exact checks are decided in rational
//! arithmetic and carry zero standard error.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::Serialize;

use crate::bounds::{diameter_bound, expansion_factor, refined_diameter_bound, vertex_volume_lower_bound, Regime};
use crate::cone::{facet_distance, NormalFan};
use crate::error::{Error, Result};
use crate::gamma::{gamma_inequality_check, halfball_bound_holds, halfball_ratio, sphere_area};
use crate::graph::PolyGraph;
use crate::linalg::{f_dot, f_norm, Rational};
use crate::sampling::{ratio_se, Estimator, SphereSampler, VolumeEstimate};
use crate::subdet::SubdetProfile;

/// Standard errors of slack granted to a statistical comparison.
pub const SE_SLACK: f64 = 3.0;
/// Absolute slack floor for values that are exact up to rounding.
pub const ABS_SLACK: f64 = 1e-6;
/// Sampled directions whose owner is re-certified in exact arithmetic.
pub const CERTIFIED_DIRECTIONS: usize = 1000;
const SIMPSON_PANELS: usize = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    AtMost,
    AtLeast,
    Equal,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::AtMost => "<=",
            Relation::AtLeast => ">=",
            Relation::Equal => "==",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    NotApplicable,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::NotApplicable => "N/A",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckRecord {
    pub check: String,
    pub subject: String,
    /// `measured <relation> bound`.
    pub relation: Relation,
    pub measured: f64,
    pub bound: f64,
    pub standard_error: f64,
    /// Signed distance to the bound on the favourable side.
    pub margin: f64,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

fn margin(relation: Relation, measured: f64, bound: f64) -> f64 {
    match relation {
        Relation::AtMost => bound - measured,
        Relation::AtLeast => measured - bound,
        Relation::Equal => -(measured - bound).abs(),
    }
}

impl CheckRecord {
    /// Comparison of Monte Carlo quantities under the slack policy.
    pub fn statistical(
        check: &str,
        subject: impl Into<String>,
        relation: Relation,
        measured: f64,
        bound: f64,
        standard_error: f64,
    ) -> Self {
        let margin = margin(relation, measured, bound);
        let slack = SE_SLACK * standard_error + ABS_SLACK;
        let status = if margin.is_finite() && margin + slack >= 0.0 { Status::Pass } else { Status::Fail };
        Self {
            check: check.into(),
            subject: subject.into(),
            relation,
            measured,
            bound,
            standard_error,
            margin,
            status,
            note: None,
        }
    }

    /// Comparison decided elsewhere in exact arithmetic; the floats are for display.
    pub fn exact(
        check: &str,
        subject: impl Into<String>,
        relation: Relation,
        measured: f64,
        bound: f64,
        holds: bool,
    ) -> Self {
        Self {
            check: check.into(),
            subject: subject.into(),
            relation,
            measured,
            bound,
            standard_error: 0.0,
            margin: margin(relation, measured, bound),
            status: if holds { Status::Pass } else { Status::Fail },
            note: None,
        }
    }

    pub fn not_applicable(mut self, note: impl Into<String>) -> Self {
        self.status = Status::NotApplicable;
        self.note = Some(note.into());
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }
}

/// Named families of checks, selectable individually.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckGroup {
    Tiling,
    Membership,
    VertexVolume,
    FacetDistance,
    DockableUpper,
    Isoperimetric,
    Expansion,
    UnboundedDockable,
    DualBfs,
    Bounds,
    Gamma,
    Halfball,
    ConeFormulas,
}

impl CheckGroup {
    pub const ALL: [CheckGroup; 13] = [
        CheckGroup::Tiling,
        CheckGroup::Membership,
        CheckGroup::VertexVolume,
        CheckGroup::FacetDistance,
        CheckGroup::DockableUpper,
        CheckGroup::Isoperimetric,
        CheckGroup::Expansion,
        CheckGroup::UnboundedDockable,
        CheckGroup::DualBfs,
        CheckGroup::Bounds,
        CheckGroup::Gamma,
        CheckGroup::Halfball,
        CheckGroup::ConeFormulas,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CheckGroup::Tiling => "tiling",
            CheckGroup::Membership => "membership",
            CheckGroup::VertexVolume => "vertex-volume",
            CheckGroup::FacetDistance => "facet-distance",
            CheckGroup::DockableUpper => "dockable-upper",
            CheckGroup::Isoperimetric => "isoperimetric",
            CheckGroup::Expansion => "expansion",
            CheckGroup::UnboundedDockable => "unbounded-dockable",
            CheckGroup::DualBfs => "dual-bfs",
            CheckGroup::Bounds => "bounds",
            CheckGroup::Gamma => "gamma",
            CheckGroup::Halfball => "halfball",
            CheckGroup::ConeFormulas => "cone-formulas",
        }
    }

    /// Whether the group needs Monte Carlo estimates.
    pub fn is_sampled(self) -> bool {
        !matches!(
            self,
            CheckGroup::FacetDistance
                | CheckGroup::DualBfs
                | CheckGroup::Bounds
                | CheckGroup::Gamma
                | CheckGroup::Halfball
        )
    }
}

impl fmt::Display for CheckGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CheckGroup {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CheckGroup::ALL
            .into_iter()
            .find(|g| g.name() == s)
            .ok_or_else(|| {
                let names: Vec<_> = CheckGroup::ALL.iter().map(|g| g.name()).collect();
                Error::param(format!("unknown check '{s}', expected one of {}", names.join(", ")))
            })
    }
}

fn set_label(set: &[usize]) -> String {
    if set.len() <= 8 {
        format!("{set:?}")
    } else {
        format!("{} vertices", set.len())
    }
}

/// Every sampled direction has an owner, and the per-vertex volumes add up
/// to the ball (bounded case) or to the region of bounded objectives.
pub fn tiling_checks(est: &Estimator, bounded: bool) -> Vec<CheckRecord> {
    let table = est.owners();
    let hits = table.per_vertex_hits(est.graph.vertex_count());
    let samples = table.samples();
    let owned: u64 = hits.iter().sum();
    let total: f64 = hits
        .iter()
        .map(|&h| VolumeEstimate::from_hits(h, samples, est.ball_volume()).point_estimate)
        .sum();
    let mut out = Vec::new();
    if bounded {
        let unbounded = table.unbounded_count();
        out.push(CheckRecord::exact(
            "tiling-finite-owner",
            "all sampled directions",
            Relation::Equal,
            owned as f64,
            samples as f64,
            unbounded == 0,
        ));
        out.push(CheckRecord::exact(
            "tiling-volume-sum",
            "all vertices",
            Relation::Equal,
            total,
            est.ball_volume(),
            owned == samples,
        ));
    } else {
        let region = table.bounded_region();
        out.push(
            CheckRecord::exact(
                "tiling-volume-sum",
                "all vertices",
                Relation::Equal,
                total,
                region.point_estimate,
                owned == region.hit_count,
            )
            .with_note(format!("{} of {samples} directions unbounded", table.unbounded_count())),
        );
    }
    out
}

/// Re-derive the owner of the first sampled directions with exact
/// nonnegative multipliers.
pub fn membership_check(est: &Estimator) -> CheckRecord {
    let table = est.owners();
    let sampler = SphereSampler::new(table.seed);
    let count = CERTIFIED_DIRECTIONS.min(table.owners.len());
    let certified = (0..count)
        .filter(|&i| match table.owners[i] {
            Some(v) => est.fan.certify(v as usize, &sampler.direction(i as u64, est.n())).is_some(),
            None => true,
        })
        .count();
    CheckRecord::exact(
        "membership-certificate",
        format!("first {count} directions"),
        Relation::Equal,
        certified as f64,
        count as f64,
        certified == count,
    )
}

/// Each single-vertex cone has at least the volume of the simplex on its
/// integral generators.
pub fn vertex_volume_checks(est: &Estimator, profile: &SubdetProfile) -> Vec<CheckRecord> {
    let n = est.n();
    let lower = vertex_volume_lower_bound(n, profile.delta as f64);
    let refined = profile.delta1.map(|d1| vertex_volume_lower_bound(n, d1 as f64));
    let mut out = Vec::new();
    for v in 0..est.graph.vertex_count() {
        let vol = est.volume(&[v]);
        let subject = format!("vertex {v}");
        out.push(CheckRecord::statistical(
            "vertex-volume-lower",
            subject.clone(),
            Relation::AtLeast,
            vol.point_estimate,
            lower,
            vol.standard_error,
        ));
        if let Some(r) = refined {
            out.push(CheckRecord::statistical(
                "vertex-volume-lower-entry",
                subject,
                Relation::AtLeast,
                vol.point_estimate,
                r,
                vol.standard_error,
            ));
        }
    }
    out
}

/// Exact check `h_F^2 >= 1/(n D^2)^2` over every facet of every normal cone;
/// one record per vertex carrying the smallest distance.
pub fn facet_distance_checks(fan: &NormalFan, profile: &SubdetProfile) -> Result<Vec<CheckRecord>> {
    let n = fan.n;
    let delta = profile.delta;
    let inv = Rational::new(1.into(), (n as u64 * delta * delta).into());
    let bound_sq = &inv * &inv;
    let mut out = Vec::new();
    for cone in &fan.cones {
        let mut smallest: Option<Rational> = None;
        for k in 0..n {
            let d = facet_distance(cone, k)?;
            if smallest.as_ref().is_none_or(|s| d.squared < *s) {
                smallest = Some(d.squared);
            }
        }
        let smallest = smallest.expect("cones have n >= 1 facets");
        out.push(CheckRecord::exact(
            "facet-distance",
            format!("vertex {}", cone.vertex_index),
            Relation::AtLeast,
            crate::linalg::to_f64(&smallest).sqrt(),
            1.0 / (n as f64 * (delta * delta) as f64),
            smallest >= bound_sq,
        ));
    }
    Ok(out)
}

/// Surface-to-volume ratio of every single-vertex cone against `D^2 n^3`,
/// the entry/codimension-one refinement and the sum over facet distances.
pub fn dockable_ratio_checks(est: &Estimator, profile: &SubdetProfile) -> Result<Vec<CheckRecord>> {
    let n = est.n();
    let n3 = (n as f64).powi(3);
    let delta = profile.delta as f64;
    let refined = match (profile.delta1, profile.delta_nm1) {
        (Some(a), Some(b)) => Some(a as f64 * b as f64 * n3),
        _ => None,
    };
    let mut out = Vec::new();
    for v in 0..est.graph.vertex_count() {
        let r = est.dockable_ratio(v)?;
        let subject = format!("vertex {v}");
        let cone = &est.fan.cones[v];
        let mut inv_h = 0.0;
        for k in 0..n {
            inv_h += 1.0 / facet_distance(cone, k)?.value;
        }
        let mut records = vec![CheckRecord::statistical(
            "dockable-upper",
            subject.clone(),
            Relation::AtMost,
            r.ratio,
            delta * delta * n3,
            r.standard_error,
        )];
        if let Some(b) = refined {
            records.push(CheckRecord::statistical(
                "dockable-upper-refined",
                subject.clone(),
                Relation::AtMost,
                r.ratio,
                b,
                r.standard_error,
            ));
        }
        records.push(CheckRecord::statistical(
            "dockable-facet-sum",
            subject,
            Relation::AtMost,
            r.ratio,
            n as f64 * inv_h,
            r.standard_error,
        ));
        if r.volume.hit_count == 0 {
            records = records
                .into_iter()
                .map(|c| c.not_applicable("no sampled direction fell in the cone"))
                .collect();
        }
        out.extend(records);
    }
    Ok(out)
}

/// `D(S_I) / vol(S_I) >= sqrt(2n/pi)` for a set of at most half the ball.
pub fn isoperimetric_check(est: &Estimator, set: &[usize]) -> Result<CheckRecord> {
    let n = est.n();
    let vol = est.volume(set);
    let d = est.dockable_area(set)?;
    let ratio = d.total / vol.point_estimate;
    let se = ratio_se(d.total, d.standard_error, vol.point_estimate, vol.standard_error);
    let rec = CheckRecord::statistical(
        "isoperimetric",
        set_label(set),
        Relation::AtLeast,
        ratio,
        (2.0 * n as f64 / PI).sqrt(),
        se,
    );
    let half = 0.5 * est.ball_volume();
    Ok(if vol.point_estimate > half + SE_SLACK * vol.standard_error {
        rec.not_applicable("volume exceeds half the ball")
    } else if vol.hit_count == 0 {
        rec.not_applicable("no sampled direction fell in the set")
    } else {
        rec
    })
}

/// `D'(S_I) >= vol(S_I)` for a set of at most half the region of bounded
/// objectives; `D'` ignores the boundary of that region.
pub fn unbounded_dockable_check(est: &Estimator, set: &[usize]) -> Result<CheckRecord> {
    let vol = est.volume(set);
    let region = est.owners().bounded_region();
    let d = est.dockable_area(set)?;
    let rec = CheckRecord::statistical(
        "unbounded-dockable",
        set_label(set),
        Relation::AtLeast,
        d.total,
        vol.point_estimate,
        d.standard_error.hypot(vol.standard_error),
    );
    let slack = SE_SLACK * vol.standard_error.hypot(0.5 * region.standard_error);
    Ok(if vol.point_estimate > 0.5 * region.point_estimate + slack {
        rec.not_applicable("volume exceeds half the region of bounded objectives")
    } else {
        rec
    })
}

/// Isoperimetric check (bounded) or its unbounded analogue on every BFS
/// prefix from `source`.
pub fn prefix_surface_checks(est: &Estimator, source: usize, bounded: bool) -> Result<Vec<CheckRecord>> {
    let trace = est.graph.bfs(source);
    (0..=trace.eccentricity)
        .map(|j| {
            let set = trace.prefix(j);
            let rec = if bounded {
                isoperimetric_check(est, &set)?
            } else {
                unbounded_dockable_check(est, &set)?
            };
            Ok(CheckRecord { subject: format!("source {source}, radius {j}"), ..rec })
        })
        .collect()
}

/// Volume expansion along the BFS from `source`: the neighbourhood of every
/// discovered prefix carries a fixed fraction of its volume, the discovered
/// volume grows geometrically, and the surface of the prefix is absorbed by
/// the cones of its neighbours.
pub fn expansion_checks(
    est: &Estimator,
    source: usize,
    profile: &SubdetProfile,
    regime: Regime,
) -> Result<Vec<CheckRecord>> {
    let n = est.n();
    let d2 = (profile.delta * profile.delta) as f64;
    let c = expansion_factor(n, d2, regime);
    let cap = match regime {
        Regime::Bounded => {
            VolumeEstimate { point_estimate: 0.5 * est.ball_volume(), standard_error: 0.0, samples: 0, hit_count: 0 }
        }
        Regime::Unbounded => {
            let r = est.owners().bounded_region();
            VolumeEstimate { point_estimate: 0.5 * r.point_estimate, standard_error: 0.5 * r.standard_error, ..r }
        }
    };
    let trace = est.graph.bfs(source);
    let mut out = Vec::new();
    for j in 0..trace.eccentricity {
        let prefix = trace.prefix(j);
        let next = trace.prefix(j + 1);
        let layer = &trace.layers[j + 1];
        let subject = format!("source {source}, radius {j}");
        let vol_i = est.volume(&prefix);
        let vol_next = est.volume(&next);
        let vol_n = est.volume(layer);
        let applicable =
            vol_i.point_estimate <= cap.point_estimate + SE_SLACK * vol_i.standard_error.hypot(cap.standard_error);
        let gate = |r: CheckRecord| {
            if applicable {
                r
            } else {
                r.not_applicable("discovered volume exceeds half")
            }
        };
        out.push(gate(CheckRecord::statistical(
            "expansion",
            subject.clone(),
            Relation::AtLeast,
            vol_n.point_estimate,
            c * vol_i.point_estimate,
            vol_n.standard_error.hypot(c * vol_i.standard_error),
        )));
        out.push(gate(CheckRecord::statistical(
            "expansion-growth",
            subject.clone(),
            Relation::AtLeast,
            vol_next.point_estimate,
            (1.0 + c) * vol_i.point_estimate,
            vol_next.standard_error.hypot((1.0 + c) * vol_i.standard_error),
        )));

        let surface_i = est.dockable_area(&prefix)?;
        let (mut neigh, mut neigh_var) = (0.0, 0.0);
        for &v in layer {
            let (s, se) = est.cone_surface(v)?;
            neigh += s;
            neigh_var += se * se;
        }
        let neigh_se = neigh_var.sqrt();
        out.push(CheckRecord::statistical(
            "neighbour-surface-lower",
            subject.clone(),
            Relation::AtLeast,
            neigh,
            surface_i.total,
            neigh_se.hypot(surface_i.standard_error),
        ));
        out.push(CheckRecord::statistical(
            "neighbour-surface-upper",
            subject,
            Relation::AtMost,
            neigh,
            d2 * (n as f64).powi(3) * vol_n.point_estimate,
            neigh_se.hypot(d2 * (n as f64).powi(3) * vol_n.standard_error),
        ));
    }
    Ok(out)
}

/// Up to `k` sources spread evenly over `0..count`.
pub fn spread_sources(count: usize, k: usize) -> Vec<usize> {
    if count <= k {
        return (0..count).collect();
    }
    let mut s: Vec<usize> = (0..k).map(|i| i * count / k).collect();
    s.dedup();
    s
}

/// The lockstep BFS from both ends meets at radius `ceil(d/2)`.
pub fn dual_bfs_check(g: &PolyGraph, sources: &[usize]) -> Result<CheckRecord> {
    let v = g.vertex_count();
    let (mut pairs, mut good) = (0usize, 0usize);
    for &s in sources {
        let trace = g.bfs(s);
        for (d, layer) in trace.layers.iter().enumerate() {
            for &t in layer {
                pairs += 1;
                if g.dual_bfs_meet(s, t)? == d.div_ceil(2) {
                    good += 1;
                }
            }
        }
    }
    Ok(CheckRecord::exact(
        "dual-bfs-meeting",
        format!("{} sources x {v} targets", sources.len()),
        Relation::Equal,
        good as f64,
        pairs as f64,
        good == pairs,
    ))
}

/// Measured diameter against the explicit bounds.
pub fn bound_checks(n: usize, diameter: usize, profile: &SubdetProfile, regime: Regime) -> Result<Vec<CheckRecord>> {
    let main = diameter_bound(n, profile.delta as f64, regime)?;
    let mut out = vec![CheckRecord::exact(
        "diameter-bound",
        "graph",
        Relation::AtMost,
        diameter as f64,
        main as f64,
        diameter as u64 <= main,
    )];
    if let (Some(d1), Some(dn)) = (profile.delta1, profile.delta_nm1) {
        let refined = refined_diameter_bound(n, d1 as f64, dn as f64, regime)?;
        out.push(CheckRecord::exact(
            "diameter-bound-refined",
            "graph",
            Relation::AtMost,
            diameter as f64,
            refined as f64,
            diameter as u64 <= refined,
        ));
    }
    Ok(out)
}

/// `Gamma(n/2 + 1) >= sqrt(n/2) Gamma((n+1)/2)`, decided exactly.
pub fn gamma_check(n: usize) -> Result<CheckRecord> {
    let lhs = crate::gamma::gamma_half(n as u32 + 2)?.to_f64();
    let rhs = (n as f64 / 2.0).sqrt() * crate::gamma::gamma_half(n as u32 + 1)?.to_f64();
    Ok(CheckRecord::exact("gamma", format!("n = {n}"), Relation::AtLeast, lhs, rhs, gamma_inequality_check(n)?))
}

/// `L/B >= sqrt(2/pi) (n-1)/sqrt(n)` for the half-ball, decided exactly.
pub fn halfball_check(n: usize) -> Result<CheckRecord> {
    let h = halfball_ratio(n)?;
    let nf = n as f64;
    let bound = (2.0 / PI).sqrt() * (nf - 1.0) / nf.sqrt();
    Ok(CheckRecord::exact("halfball", format!("n = {n}"), Relation::AtLeast, h.ratio, bound, halfball_bound_holds(n)?))
}

/// Points of the unit ball within angle `angle` of `axis`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConeOfRevolution {
    pub axis: Vec<f64>,
    pub angle: f64,
}

impl ConeOfRevolution {
    pub fn new(axis: Vec<f64>, angle: f64) -> Result<Self> {
        if axis.len() < 2 {
            return Err(Error::param("cone of revolution needs n >= 2"));
        }
        if !(angle > 0.0 && angle <= PI / 2.0) {
            return Err(Error::param(format!("angle {angle} outside (0, pi/2]")));
        }
        let norm = f_norm(&axis);
        if !(norm > 0.0 && norm.is_finite()) {
            return Err(Error::param("axis must be a nonzero vector"));
        }
        Ok(Self { axis: axis.into_iter().map(|x| x / norm).collect(), angle })
    }

    /// Cone around the last coordinate axis.
    pub fn upright(n: usize, angle: f64) -> Result<Self> {
        let mut axis = vec![0.0; n];
        if let Some(last) = axis.last_mut() {
            *last = 1.0;
        }
        Self::new(axis, angle)
    }

    pub fn n(&self) -> usize {
        self.axis.len()
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        let r = f_norm(x);
        r <= 1.0 && f_dot(x, &self.axis) >= r * self.angle.cos()
    }

    fn sphere_factor(&self) -> f64 {
        sphere_area(self.n() - 1).to_f64()
    }

    /// Area of the spherical cap, by Simpson's rule on the colatitude integral.
    pub fn base_area(&self) -> f64 {
        let k = (self.n() - 2) as i32;
        let h = self.angle / SIMPSON_PANELS as f64;
        let f = |i: usize| (i as f64 * h).sin().powi(k);
        let inner: f64 = (1..SIMPSON_PANELS).map(|i| if i % 2 == 1 { 4.0 * f(i) } else { 2.0 * f(i) }).sum();
        self.sphere_factor() * h / 3.0 * (f(0) + inner + f(SIMPSON_PANELS))
    }

    /// Measure of the boundary of the cap: a sphere of radius `sin(angle)`.
    pub fn boundary_length(&self) -> f64 {
        self.sphere_factor() * self.angle.sin().powi(self.n() as i32 - 2)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConeFormulaReport {
    pub n: usize,
    pub angle: f64,
    pub base_area: f64,
    pub boundary_length: f64,
    pub volume: f64,
    pub volume_se: f64,
    pub lateral_area: f64,
    pub lateral_area_se: f64,
    pub records: Vec<CheckRecord>,
}

/// Monte Carlo volume and lateral area of a cone of revolution against
/// `B/n` and `L/(n-1)`.
///
/// The volume is estimated by rejection from `[-1, 1]^n`; the lateral area
/// integrates the cross-sections `L t^(n-2)` along the unit generators at
/// uniform `t`.
pub fn cones_formulas_check(cone: &ConeOfRevolution, samples: usize, seed: u64) -> Result<ConeFormulaReport> {
    if samples == 0 {
        return Err(Error::param("sample count must be positive"));
    }
    let n = cone.n();
    let sampler = SphereSampler::keyed(seed, &[n, cone.angle.to_bits() as usize]);
    let mut hits = 0u64;
    let (mut sum, mut sum_sq) = (0.0, 0.0);
    for i in 0..samples as u64 {
        let mut rng = sampler.stream(i);
        let x: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..=1.0)).collect();
        if cone.contains(&x) {
            hits += 1;
        }
        let t: f64 = rng.random::<f64>().powi(n as i32 - 2);
        sum += t;
        sum_sq += t * t;
    }
    let vol = VolumeEstimate::from_hits(hits, samples as u64, 2f64.powi(n as i32));
    let s = samples as f64;
    let mean = sum / s;
    let var = (sum_sq / s - mean * mean).max(0.0);
    let l = cone.boundary_length();
    let lateral = l * mean;
    let lateral_se = l * (var / s).sqrt();
    let b = cone.base_area();
    let subject = format!("n = {n}, angle = {:.6}", cone.angle);
    let records = vec![
        CheckRecord::statistical(
            "cone-volume",
            subject.clone(),
            Relation::Equal,
            vol.point_estimate,
            b / n as f64,
            vol.standard_error,
        ),
        CheckRecord::statistical(
            "cone-lateral-area",
            subject,
            Relation::Equal,
            lateral,
            l / (n as f64 - 1.0),
            lateral_se,
        ),
    ];
    Ok(ConeFormulaReport {
        n,
        angle: cone.angle,
        base_area: b,
        boundary_length: l,
        volume: vol.point_estimate,
        volume_se: vol.standard_error,
        lateral_area: lateral,
        lateral_area_se: lateral_se,
        records,
    })
}

/// The standard set of angles for the cone-formula check.
pub const CONE_ANGLES: [f64; 3] = [PI / 6.0, PI / 4.0, PI / 2.0];

pub fn cone_formula_checks(n: usize, samples: usize, seed: u64) -> Result<Vec<CheckRecord>> {
    let mut out = Vec::new();
    for angle in CONE_ANGLES {
        let cone = ConeOfRevolution::upright(n, angle)?;
        out.extend(cones_formulas_check(&cone, samples, seed)?.records);
    }
    Ok(out)
}

/// Largest violation among the given records, for diagnostics.
pub fn worst(records: &[CheckRecord]) -> Option<&CheckRecord> {
    records
        .iter()
        .filter(|r| r.status == Status::Fail)
        .min_by(|a, b| a.margin.total_cmp(&b.margin))
}
