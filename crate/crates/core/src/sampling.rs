//! Seeded Monte Carlo estimates of normal-cone volumes and facet areas.
//!
//! Directions are a pure function of `(seed, index, dimension)`: each sample
//! draws Gaussians from its own ChaCha stream, so estimates do not depend on
//! how the sample range is split across worker threads.

use std::collections::BTreeMap;
use std::sync::{Mutex, OnceLock};

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::Serialize;

use crate::cone::{ConeTest, NormalFan};
use crate::error::{Error, Result};
use crate::gamma::ball_volume_f64;
use crate::graph::PolyGraph;
use crate::linalg::{f_norm, orthonormal_basis};
use crate::polyhedron::Polyhedron;

pub const DEFAULT_VOLUME_SAMPLES: usize = 200_000;
pub const DEFAULT_FACET_SAMPLES: usize = 100_000;

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DirectionSample {
    pub seed: u64,
    pub index: u64,
    pub direction: Vec<f64>,
}

/// Uniform directions on the unit sphere, one independent stream per index.
#[derive(Clone, Debug)]
pub struct SphereSampler {
    seed: u64,
    base: ChaCha8Rng,
}

impl SphereSampler {
    pub fn new(seed: u64) -> Self {
        Self { seed, base: ChaCha8Rng::seed_from_u64(seed) }
    }

    /// Sampler whose streams are additionally keyed by `key`.
    pub fn keyed(seed: u64, key: &[usize]) -> Self {
        let mixed = key
            .iter()
            .fold(splitmix64(seed), |h, &k| splitmix64(h ^ (k as u64 + 1)));
        Self::new(mixed)
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Independent generator for sample `index`.
    pub fn stream(&self, index: u64) -> ChaCha8Rng {
        let mut rng = self.base.clone();
        rng.set_stream(index);
        rng.set_word_pos(0);
        rng
    }

    /// Normalised standard Gaussian vector.
    pub fn direction(&self, index: u64, dim: usize) -> Vec<f64> {
        let mut rng = self.stream(index);
        loop {
            let v: Vec<f64> = (0..dim).map(|_| rng.sample(StandardNormal)).collect();
            let norm = f_norm(&v);
            if norm > 0.0 && norm.is_finite() {
                return v.into_iter().map(|x| x / norm).collect();
            }
        }
    }

    pub fn sample(&self, index: u64, dim: usize) -> DirectionSample {
        DirectionSample { seed: self.seed, index, direction: self.direction(index, dim) }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct VolumeEstimate {
    pub point_estimate: f64,
    pub standard_error: f64,
    pub samples: u64,
    pub hit_count: u64,
}

impl VolumeEstimate {
    /// Binomial estimate of `hits / samples` of a set of measure `total`.
    pub fn from_hits(hits: u64, samples: u64, total: f64) -> Self {
        let p = hits as f64 / samples as f64;
        Self {
            point_estimate: p * total,
            standard_error: total * (p * (1.0 - p) / samples as f64).sqrt(),
            samples,
            hit_count: hits,
        }
    }

    pub fn fraction(&self) -> f64 {
        self.hit_count as f64 / self.samples as f64
    }
}

/// Owner of each sampled direction: the vertex whose normal cone contains
/// it, or `None` when the direction is unbounded over `P`.
#[derive(Clone, Debug)]
pub struct OwnerTable {
    pub seed: u64,
    pub n: usize,
    pub owners: Vec<Option<u32>>,
}

impl OwnerTable {
    pub fn compute(fan: &NormalFan, samples: usize, seed: u64) -> Result<Self> {
        if samples == 0 {
            return Err(Error::param("sample count must be positive"));
        }
        let sampler = SphereSampler::new(seed);
        let n = fan.n;
        let owners = (0..samples as u64)
            .into_par_iter()
            .map(|i| fan.owning_vertex(&sampler.direction(i, n)).map(|v| v as u32))
            .collect();
        Ok(Self { seed, n, owners })
    }

    pub fn samples(&self) -> u64 {
        self.owners.len() as u64
    }

    pub fn hits(&self, members: &[bool]) -> u64 {
        self.owners
            .iter()
            .filter(|o| o.is_some_and(|v| members[v as usize]))
            .count() as u64
    }

    pub fn per_vertex_hits(&self, vertices: usize) -> Vec<u64> {
        let mut counts = vec![0u64; vertices];
        for v in self.owners.iter().flatten() {
            counts[*v as usize] += 1;
        }
        counts
    }

    pub fn unbounded_count(&self) -> u64 {
        self.owners.iter().filter(|o| o.is_none()).count() as u64
    }

    pub fn estimate(&self, members: &[bool]) -> VolumeEstimate {
        VolumeEstimate::from_hits(self.hits(members), self.samples(), ball_volume_f64(self.n))
    }

    /// Volume of the union of all normal cones within the unit ball.
    pub fn bounded_region(&self) -> VolumeEstimate {
        let hits = self.samples() - self.unbounded_count();
        VolumeEstimate::from_hits(hits, self.samples(), ball_volume_f64(self.n))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct AreaEstimate {
    pub area: f64,
    pub standard_error: f64,
    pub samples: u64,
    pub hit_count: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FacetArea {
    pub u: usize,
    pub w: usize,
    pub area: f64,
    pub standard_error: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SurfaceEstimate {
    pub per_facet: Vec<FacetArea>,
    pub total: f64,
    /// Facets use independent streams, so errors add in quadrature.
    pub standard_error: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RatioEstimate {
    pub dockable: f64,
    pub dockable_se: f64,
    pub volume: VolumeEstimate,
    pub ratio: f64,
    pub standard_error: f64,
}

/// First-order standard error of `a / b`.
pub fn ratio_se(a: f64, sa: f64, b: f64, sb: f64) -> f64 {
    let r = a / b;
    r.abs() * ((sa / a).powi(2) + (sb / b).powi(2)).sqrt()
}

/// `(n-1)`-volume of `cone(rows) ∩ B_n` for `n - 1` independent rows.
///
/// Directions are drawn uniformly on the unit sphere of the span of the
/// rows; the hit fraction times `vol(B_{n-1})` is the area. For `n = 2` the
/// facet is a unit segment and no sampling happens.
pub fn facet_area_of_rows(
    p: &Polyhedron,
    rows: &[usize],
    samples: usize,
    seed: u64,
) -> Result<AreaEstimate> {
    let n = p.n();
    if n < 2 || rows.len() + 1 != n {
        return Err(Error::param(format!("a facet in R^{n} needs {} generators", n.saturating_sub(1))));
    }
    if samples == 0 {
        return Err(Error::param("sample count must be positive"));
    }
    let gens = p.a().select_rows(rows)?;
    let test = ConeTest::new(&gens.row_vecs())?;
    if n == 2 {
        return Ok(AreaEstimate { area: 1.0, standard_error: 0.0, samples: 0, hit_count: 0 });
    }
    let basis = orthonormal_basis(&gens.to_f64_rows());
    debug_assert_eq!(basis.len(), n - 1);
    let sampler = SphereSampler::keyed(seed, rows);
    let hits = (0..samples as u64)
        .into_par_iter()
        .filter(|&i| {
            let g = sampler.direction(i, n - 1);
            let mut d = vec![0.0; n];
            for (coef, q) in g.iter().zip(&basis) {
                d.iter_mut().zip(q).for_each(|(x, y)| *x += coef * y);
            }
            test.contains(&d)
        })
        .count() as u64;
    let est = VolumeEstimate::from_hits(hits, samples as u64, ball_volume_f64(n - 1));
    Ok(AreaEstimate {
        area: est.point_estimate,
        standard_error: est.standard_error,
        samples: samples as u64,
        hit_count: hits,
    })
}

/// Shared Monte Carlo state for one polyhedron: the normal fan, a lazily
/// computed owner table and memoised facet areas.
pub struct Estimator<'a> {
    pub poly: &'a Polyhedron,
    pub graph: &'a PolyGraph,
    pub fan: NormalFan,
    pub volume_samples: usize,
    pub facet_samples: usize,
    pub seed: u64,
    owners: OnceLock<OwnerTable>,
    facets: Mutex<BTreeMap<Vec<usize>, AreaEstimate>>,
}

impl<'a> Estimator<'a> {
    pub fn new(
        poly: &'a Polyhedron,
        graph: &'a PolyGraph,
        volume_samples: usize,
        facet_samples: usize,
        seed: u64,
    ) -> Result<Self> {
        if volume_samples == 0 || facet_samples == 0 {
            return Err(Error::param("sample count must be positive"));
        }
        Ok(Self {
            poly,
            graph,
            fan: NormalFan::new(poly, graph)?,
            volume_samples,
            facet_samples,
            seed,
            owners: OnceLock::new(),
            facets: Mutex::new(BTreeMap::new()),
        })
    }

    pub fn n(&self) -> usize {
        self.poly.n()
    }

    pub fn owners(&self) -> &OwnerTable {
        self.owners.get_or_init(|| {
            OwnerTable::compute(&self.fan, self.volume_samples, self.seed)
                .expect("sample count checked at construction")
        })
    }

    pub fn membership(&self, set: &[usize]) -> Vec<bool> {
        let mut m = vec![false; self.graph.vertex_count()];
        set.iter().for_each(|&v| m[v] = true);
        m
    }

    pub fn volume(&self, set: &[usize]) -> VolumeEstimate {
        self.owners().estimate(&self.membership(set))
    }

    pub fn ball_volume(&self) -> f64 {
        ball_volume_f64(self.n())
    }

    pub fn facet_area_rows(&self, rows: &[usize]) -> Result<AreaEstimate> {
        if let Some(a) = self.facets.lock().unwrap().get(rows) {
            return Ok(*a);
        }
        let a = facet_area_of_rows(self.poly, rows, self.facet_samples, self.seed)?;
        self.facets.lock().unwrap().insert(rows.to_vec(), a);
        Ok(a)
    }

    /// Area of the common facet of the normal cones of adjacent `u` and `w`.
    pub fn facet_area(&self, u: usize, w: usize) -> Result<AreaEstimate> {
        if !self.graph.are_adjacent(u, w) {
            return Err(Error::NotAdjacent(u, w));
        }
        self.facet_area_rows(&self.graph.shared_rows(u, w))
    }

    /// Flat boundary of `S_I` shared with cones outside `I`. Boundary pieces
    /// of the region of bounded objectives have no neighbouring cone and
    /// drop out.
    pub fn dockable_area(&self, set: &[usize]) -> Result<SurfaceEstimate> {
        let inside = self.membership(set);
        let mut per_facet = Vec::new();
        for &(a, b) in &self.graph.edges {
            if inside[a] == inside[b] {
                continue;
            }
            let (u, w) = if inside[a] { (a, b) } else { (b, a) };
            let est = self.facet_area(u, w)?;
            per_facet.push(FacetArea { u, w, area: est.area, standard_error: est.standard_error });
        }
        per_facet.sort_by_key(|f| (f.u, f.w));
        let total = per_facet.iter().fold(0.0, |acc, f| acc + f.area);
        let var: f64 = per_facet.iter().map(|f| f.standard_error.powi(2)).sum();
        Ok(SurfaceEstimate { per_facet, total, standard_error: var.sqrt() })
    }

    /// Sum of the areas of all `n` facets of the simplicial cone of `v`.
    pub fn cone_surface(&self, v: usize) -> Result<(f64, f64)> {
        let rows = &self.fan.cones[v].rows;
        let mut total = 0.0;
        let mut var = 0.0;
        for facet in rows.iter().copied().combinations(rows.len() - 1) {
            let a = self.facet_area_rows(&facet)?;
            total += a.area;
            var += a.standard_error.powi(2);
        }
        Ok((total, var.sqrt()))
    }

    /// `D(S_v) / vol(S_v)` over the full surface of the cone.
    pub fn dockable_ratio(&self, v: usize) -> Result<RatioEstimate> {
        let (dockable, dockable_se) = self.cone_surface(v)?;
        let volume = self.volume(&[v]);
        let ratio = dockable / volume.point_estimate;
        Ok(RatioEstimate {
            dockable,
            dockable_se,
            volume,
            ratio,
            standard_error: ratio_se(dockable, dockable_se, volume.point_estimate, volume.standard_error),
        })
    }
}

pub fn estimate_vol(
    p: &Polyhedron,
    g: &PolyGraph,
    set: &[usize],
    samples: usize,
    seed: u64,
) -> Result<VolumeEstimate> {
    Ok(Estimator::new(p, g, samples, 1, seed)?.volume(set))
}

pub fn facet_area(
    p: &Polyhedron,
    g: &PolyGraph,
    u: usize,
    w: usize,
    samples: usize,
    seed: u64,
) -> Result<AreaEstimate> {
    Estimator::new(p, g, 1, samples, seed)?.facet_area(u, w)
}

pub fn dockable_area(
    p: &Polyhedron,
    g: &PolyGraph,
    set: &[usize],
    samples: usize,
    seed: u64,
) -> Result<SurfaceEstimate> {
    Estimator::new(p, g, 1, samples, seed)?.dockable_area(set)
}

pub fn dockable_ratio(
    p: &Polyhedron,
    g: &PolyGraph,
    v: usize,
    samples: usize,
    seed: u64,
) -> Result<RatioEstimate> {
    Estimator::new(p, g, samples, samples, seed)?.dockable_ratio(v)
}
