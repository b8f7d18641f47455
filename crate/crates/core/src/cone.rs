//! Normal cones of vertices and exact membership tests.
//!
//! A direction `c` lies in the cone generated by independent rows `G` iff
//! the coefficients `(G G^T)^-1 G c` are nonnegative. For a full cone this is
//! `G^-T c`; for a facet it tests the projection of `c` onto the span of the
//! generators. Decisions are made on exact dyadic rationals; a float filter
//! only short-circuits cases whose sign is beyond any rounding error.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{float::FloatCore, One, Signed, Zero};

use crate::error::{Error, Result};
use crate::graph::PolyGraph;
use crate::linalg::{dot, norm_sq, to_f64, Rational, RationalMatrix};
use crate::polyhedron::Polyhedron;

/// Relative width of the band in which the float filter defers to exact
/// arithmetic. Far above the accumulated rounding of an `n`-term dot product.
const FILTER_REL: f64 = 1e-12;

#[derive(Clone, Debug)]
pub struct ConeTest {
    dim: usize,
    /// `lambda = coeffs * c`.
    coeffs: RationalMatrix,
    /// `coeffs` scaled by a positive integer.
    weights: Vec<Vec<BigInt>>,
    weights_f: Vec<Vec<f64>>,
}

impl ConeTest {
    pub fn new(generators: &[Vec<Rational>]) -> Result<Self> {
        let g = RationalMatrix::from_rows(generators)?;
        let gram = g.mul(&g.transpose())?;
        let inv = gram.inverse()?.ok_or(Error::Singular)?;
        let coeffs = inv.mul(&g)?;
        let lcm = coeffs
            .row_vecs()
            .iter()
            .flatten()
            .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
        let scaled = coeffs.scale(&Rational::from_integer(lcm));
        let weights: Vec<Vec<BigInt>> = scaled.to_int_rows().expect("cleared denominators");
        let weights_f = scaled.to_f64_rows();
        Ok(Self { dim: g.cols(), coeffs, weights, weights_f })
    }

    pub fn generators(&self) -> usize {
        self.weights.len()
    }

    pub fn contains(&self, c: &[f64]) -> bool {
        debug_assert_eq!(c.len(), self.dim);
        let mut undecided = false;
        for w in &self.weights_f {
            let (s, mag) = w
                .iter()
                .zip(c)
                .fold((0.0, 0.0), |(s, m), (a, b)| (s + a * b, m + (a * b).abs()));
            let band = FILTER_REL * mag;
            if s < -band {
                return false;
            }
            if s <= band {
                undecided = true;
            }
        }
        !undecided || self.contains_exact(&dyadic_integers(c))
    }

    /// Exact test on an integer multiple of the direction.
    pub fn contains_exact(&self, c: &[BigInt]) -> bool {
        self.weights.iter().all(|w| {
            let s: BigInt = w.iter().zip(c).map(|(a, b)| a * b).sum();
            !s.is_negative()
        })
    }

    /// Exact generator coefficients of the (projected) direction.
    pub fn coefficients(&self, c: &[Rational]) -> Vec<Rational> {
        self.coeffs.mul_vec(c).expect("dimension checked at construction")
    }
}

/// Integers proportional (by a positive power of two) to the exact values of
/// the given floats.
pub fn dyadic_integers(c: &[f64]) -> Vec<BigInt> {
    let parts: Vec<(u64, i16, i8)> = c.iter().map(|x| x.integer_decode()).collect();
    let min_exp = parts
        .iter()
        .filter(|p| p.0 != 0)
        .map(|p| p.1)
        .min()
        .unwrap_or(0);
    parts
        .iter()
        .map(|&(mant, exp, sign)| {
            if mant == 0 {
                return BigInt::zero();
            }
            let v = BigInt::from(mant) << (exp - min_exp) as usize;
            if sign < 0 {
                -v
            } else {
                v
            }
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct NormalCone {
    pub vertex_index: usize,
    /// Indices of the tight rows, ascending.
    pub rows: Vec<usize>,
    /// `A_v`: the tight rows of `A`, one generator per row.
    pub generator_matrix: RationalMatrix,
}

impl NormalCone {
    pub fn generators(&self) -> Vec<Vec<Rational>> {
        self.generator_matrix.row_vecs()
    }

    pub fn dim(&self) -> usize {
        self.generator_matrix.cols()
    }
}

/// Cone of objectives optimised at vertex `v`; requires exactly `n` tight rows.
pub fn normal_cone(p: &Polyhedron, g: &PolyGraph, v: usize) -> Result<NormalCone> {
    let vertex = &g.vertices[v];
    if vertex.tight_rows.len() != p.n() {
        return Err(Error::DegenerateVertex { vertex: v, tight: vertex.tight_rows.len() });
    }
    Ok(NormalCone {
        vertex_index: v,
        rows: vertex.tight_rows.clone(),
        generator_matrix: p.a().select_rows(&vertex.tight_rows)?,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct FacetDistance {
    /// Squared distance, exact.
    pub squared: Rational,
    pub value: f64,
}

/// Distance from the unit point on generator `k` to the hyperplane spanned
/// by the other generators: `|<a_k, b_k>| / (|a_k| |b_k|)` where `b_k` is the
/// adjugate column orthogonal to every other generator.
pub fn facet_distance(cone: &NormalCone, k: usize) -> Result<FacetDistance> {
    let n = cone.dim();
    if k >= n {
        return Err(Error::param(format!("facet index {k} out of range for {n} generators")));
    }
    let adj = cone.generator_matrix.adjugate()?;
    let a_k = cone.generator_matrix.row(k).to_vec();
    let b_k: Vec<Rational> = (0..n).map(|i| adj.get(i, k).clone()).collect();
    let num = dot(&a_k, &b_k);
    let squared = &num * &num / (norm_sq(&a_k) * norm_sq(&b_k));
    Ok(FacetDistance { value: to_f64(&squared).sqrt(), squared })
}

/// The normal cones of all vertices with their membership tests.
#[derive(Clone, Debug)]
pub struct NormalFan {
    pub n: usize,
    pub cones: Vec<NormalCone>,
    tests: Vec<ConeTest>,
}

impl NormalFan {
    pub fn new(p: &Polyhedron, g: &PolyGraph) -> Result<Self> {
        let cones = (0..g.vertex_count())
            .map(|v| normal_cone(p, g, v))
            .collect::<Result<Vec<_>>>()?;
        let tests = cones
            .iter()
            .map(|c| ConeTest::new(&c.generators()))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { n: p.n(), cones, tests })
    }

    pub fn len(&self) -> usize {
        self.cones.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cones.is_empty()
    }

    /// Lowest-index vertex whose normal cone contains `c`, i.e. the
    /// lowest-index maximiser of `c^T x`; `None` when the maximum is unbounded.
    pub fn owning_vertex(&self, c: &[f64]) -> Option<usize> {
        self.tests.iter().position(|t| t.contains(c))
    }

    /// Exact nonnegative multipliers `lambda` with `A_v^T lambda = c`, or
    /// `None` if `c` is not in the cone of `v`.
    pub fn certify(&self, v: usize, c: &[f64]) -> Option<Vec<Rational>> {
        let exact: Vec<Rational> = c.iter().map(|&x| crate::linalg::rational_from_f64(x)).collect();
        let lambda = self.tests[v].coefficients(&exact);
        lambda.iter().all(|l| !l.is_negative()).then_some(lambda)
    }
}

/// Convenience wrapper building the fan for a single query.
pub fn owning_vertex(p: &Polyhedron, g: &PolyGraph, c: &[f64]) -> Result<Option<usize>> {
    if c.len() != p.n() {
        return Err(Error::Dimension(format!("direction of length {} in R^{}", c.len(), p.n())));
    }
    Ok(NormalFan::new(p, g)?.owning_vertex(c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::enumerate_vertices;
    use crate::linalg::int;

    fn cube(n: usize) -> (Polyhedron, PolyGraph) {
        let mut a = Vec::new();
        for s in [1, -1] {
            for i in 0..n {
                let mut r = vec![0; n];
                r[i] = s;
                a.push(r);
            }
        }
        let p = Polyhedron::from_i64(&a, &vec![1; 2 * n]).unwrap();
        let g = enumerate_vertices(&p, u128::MAX).unwrap();
        (p, g)
    }

    #[test]
    fn cube_corner_cone_is_orthant() {
        let (p, g) = cube(3);
        let v = g.find_vertex(&[int(1), int(1), int(1)]).unwrap();
        let c = normal_cone(&p, &g, v).unwrap();
        assert_eq!(c.generator_matrix, RationalMatrix::identity(3));
        assert_eq!(owning_vertex(&p, &g, &[1.0, 1.0, 1.0]).unwrap(), Some(v));
        assert_eq!(owning_vertex(&p, &g, &[0.3, 2.0, 1e-9]).unwrap(), Some(v));
    }

    #[test]
    fn simplex_origin_cone() {
        let p = Polyhedron::from_i64(
            &[vec![-1, 0, 0], vec![0, -1, 0], vec![0, 0, -1], vec![1, 1, 1]],
            &[0, 0, 0, 1],
        )
        .unwrap();
        let g = enumerate_vertices(&p, u128::MAX).unwrap();
        let origin = g.find_vertex(&[int(0), int(0), int(0)]).unwrap();
        let c = normal_cone(&p, &g, origin).unwrap();
        assert_eq!(c.generator_matrix, RationalMatrix::identity(3).scale(&int(-1)));
    }

    #[test]
    fn quadrant_directions() {
        let p = Polyhedron::from_i64(&[vec![-1, 0], vec![0, -1]], &[0, 0]).unwrap();
        let g = enumerate_vertices(&p, u128::MAX).unwrap();
        let c = normal_cone(&p, &g, 0).unwrap();
        assert_eq!(c.generators(), vec![vec![int(-1), int(0)], vec![int(0), int(-1)]]);
        assert_eq!(owning_vertex(&p, &g, &[1.0, 0.0]).unwrap(), None);
        assert_eq!(owning_vertex(&p, &g, &[-1.0, -0.5]).unwrap(), Some(0));
    }

    #[test]
    fn ties_go_to_lowest_index() {
        let (p, g) = cube(3);
        // e1 is optimal on the whole facet x1 = 1; four vertices contain it
        let owners: Vec<usize> = (0..g.vertex_count())
            .filter(|&v| g.vertices[v].coords[0] == int(1))
            .collect();
        assert_eq!(owners.len(), 4);
        assert_eq!(owning_vertex(&p, &g, &[1.0, 0.0, 0.0]).unwrap(), Some(owners[0]));
    }

    #[test]
    fn exact_band_decides_boundary_directions() {
        let t = ConeTest::new(&[vec![int(1), int(0)], vec![int(1), int(1)]]).unwrap();
        assert!(t.contains(&[1.0, 0.0]));
        assert!(t.contains(&[1.0, 1.0]));
        assert!(!t.contains(&[1.0, 1.0 + f64::EPSILON]));
        assert!(!t.contains(&[1.0, -1e-300]));
        assert!(t.contains(&[0.5, 1e-300]));
    }

    #[test]
    fn facet_cone_projection_test() {
        // quarter disk in the x1 x2 plane of R^3
        let t = ConeTest::new(&[vec![int(1), int(0), int(0)], vec![int(0), int(1), int(0)]]).unwrap();
        assert!(t.contains(&[0.5, 0.5, 0.0]));
        assert!(!t.contains(&[-0.5, 0.5, 0.0]));
    }

    #[test]
    fn facet_distances() {
        let (p, g) = cube(3);
        let c = normal_cone(&p, &g, 0).unwrap();
        for k in 0..3 {
            assert_eq!(facet_distance(&c, k).unwrap().squared, int(1));
        }
        let skew = NormalCone {
            vertex_index: 0,
            rows: vec![0, 1],
            generator_matrix: RationalMatrix::from_i64_rows(&[vec![1, 0], vec![1, 1]]).unwrap(),
        };
        let h = facet_distance(&skew, 0).unwrap();
        assert_eq!(h.squared, Rational::new(1.into(), 2.into()));
        assert!((h.value - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
        assert!(facet_distance(&skew, 2).is_err());
    }

    #[test]
    fn dyadic_scaling() {
        let v = dyadic_integers(&[0.5, -0.25, 0.0, 3.0]);
        let unit = -v[1].clone();
        assert!(unit.is_positive());
        let expect: Vec<BigInt> = [2, -1, 0, 12].iter().map(|&k| BigInt::from(k) * &unit).collect();
        assert_eq!(v, expect);
    }

    #[test]
    fn degenerate_vertex_rejected() {
        // apex of a square pyramid with a redundant cap
        let p = Polyhedron::from_i64(
            &[vec![0, 0, 1], vec![1, 0, 1], vec![-1, 0, 1], vec![0, 1, 1], vec![0, -1, 1], vec![0, 0, -1]],
            &[1, 1, 1, 1, 1, 0],
        )
        .unwrap();
        let g = enumerate_vertices(&p, u128::MAX).unwrap();
        let apex = g.find_vertex(&[int(0), int(0), int(1)]).unwrap();
        assert!(matches!(normal_cone(&p, &g, apex), Err(Error::DegenerateVertex { tight: 5, .. })));
    }
}
