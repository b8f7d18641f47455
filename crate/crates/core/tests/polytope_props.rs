mod common;

use common::*;
use polydiam::graph::{enumerate_vertices, simple_system};
use polydiam::linalg::{dot, RationalMatrix};
use polydiam::polyhedron::{Polyhedron, DEFAULT_BASIS_BUDGET};
use proptest::prelude::*;

/// Random rows together with a box, so the result is a polytope containing 0.
fn boxed_polytope() -> impl Strategy<Value = Polyhedron> {
    (2usize..=3)
        .prop_flat_map(|n| {
            (
                Just(n),
                prop::collection::vec(prop::collection::vec(-2i64..=2, n), 0..=4),
                prop::collection::vec(1i64..=4, 4),
                1i64..=3,
            )
        })
        .prop_filter_map("zero row", |(n, rows, rhs, half)| {
            if rows.iter().any(|r| r.iter().all(|&v| v == 0)) {
                return None;
            }
            let mut a = rows.clone();
            let mut b: Vec<i64> = rhs[..rows.len()].to_vec();
            for s in [1, -1] {
                for i in 0..n {
                    let mut r = vec![0; n];
                    r[i] = s;
                    a.push(r);
                    b.push(half);
                }
            }
            Some(Polyhedron::from_i64(&a, &b).unwrap())
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn simple_polytope_graph_invariants(p in boxed_polytope()) {
        let (q, g) = simple_system(&p, DEFAULT_BASIS_BUDGET).unwrap();
        let n = q.n();
        prop_assert!(g.is_simple());
        // every vertex of a simple polytope has exactly n neighbours
        prop_assert_eq!(2 * g.edge_count(), n * g.vertex_count());
        prop_assert!(g.vertices.iter().all(|v| v.tight_rows.len() == n));
        let d = g.diameter().unwrap();
        // a perturbation never merges vertices, so the graph cannot shrink
        let orig = enumerate_vertices(&p, DEFAULT_BASIS_BUDGET).unwrap();
        prop_assert!(g.vertex_count() >= orig.vertex_count());
        for u in 0..g.vertex_count().min(6) {
            for w in 0..g.vertex_count() {
                let dist = g.distance(u, w).unwrap();
                prop_assert!(dist <= d);
                prop_assert_eq!(g.dual_bfs_meet(u, w).unwrap(), dist.div_ceil(2));
            }
        }
    }

    #[test]
    fn vertices_are_feasible_with_correct_tight_rows(p in boxed_polytope()) {
        let g = enumerate_vertices(&p, DEFAULT_BASIS_BUDGET).unwrap();
        for v in &g.vertices {
            for i in 0..p.m() {
                let lhs = dot(p.a().row(i), &v.coords);
                prop_assert!(lhs <= p.rhs()[i]);
                prop_assert_eq!(lhs == p.rhs()[i], v.tight_rows.binary_search(&i).is_ok());
            }
            let tight = p.a().select_rows(&v.tight_rows).unwrap();
            prop_assert_eq!(tight.rank(), p.n());
        }
        prop_assert!(p.classify_boundedness(DEFAULT_BASIS_BUDGET).unwrap());
    }

    #[test]
    fn text_format_round_trip(p in boxed_polytope()) {
        let back: Polyhedron = p.to_text(Some("round trip")).parse().unwrap();
        prop_assert_eq!(back.a(), p.a());
        prop_assert_eq!(back.b(), p.b());
    }
}

#[test]
fn pyramid_apex_splits_into_simple_vertices() {
    let p = pyramid();
    let g = enumerate_vertices(&p, DEFAULT_BASIS_BUDGET).unwrap();
    assert_eq!(g.vertices[0].tight_rows.len(), 5);
    let q = p.perturb(DEFAULT_BASIS_BUDGET).unwrap();
    let h = enumerate_vertices(&q, DEFAULT_BASIS_BUDGET).unwrap();
    assert!(h.is_simple());
    // each perturbed vertex sits near an original one whose tight rows contain its own
    for v in &g.vertices {
        assert!(h.vertices.iter().any(|w| w.tight_rows.iter().all(|r| v.tight_rows.contains(r))));
    }
    assert!(h.diameter().unwrap() >= g.diameter().unwrap());
}

#[test]
fn perturbing_a_simple_cube_keeps_its_graph() {
    let p = polydiam::instances::cube(3).unwrap();
    let q = p.perturb(DEFAULT_BASIS_BUDGET).unwrap();
    let g = enumerate_vertices(&q, DEFAULT_BASIS_BUDGET).unwrap();
    assert_eq!((g.vertex_count(), g.edge_count()), (8, 12));
}

#[test]
fn unbounded_examples() {
    assert!(!quadrant().classify_boundedness(DEFAULT_BASIS_BUDGET).unwrap());
    let ray = half_strip().recession_ray(DEFAULT_BASIS_BUDGET).unwrap().unwrap();
    let a = half_strip().a().clone();
    assert!(a.mul_vec(&ray).unwrap().iter().all(|v| *v <= polydiam::linalg::int(0)));
    assert!(polydiam::instances::simplex(3).unwrap().classify_boundedness(DEFAULT_BASIS_BUDGET).unwrap());
}

#[test]
fn strip_without_vertex_is_rejected() {
    let a = RationalMatrix::from_i64_rows(&[vec![0, -1], vec![0, 1]]).unwrap();
    let err = Polyhedron::new(a, vec![polydiam::linalg::int(0), polydiam::linalg::int(1)]).unwrap_err();
    assert!(matches!(err, polydiam::Error::RankDeficient { rank: 1, cols: 2 }));
}
