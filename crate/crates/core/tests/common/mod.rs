#![allow(dead_code)]

use polydiam::instances::{cross_polytope, cube, random_int, simplex, InstanceSpec};
use polydiam::polyhedron::Polyhedron;

pub fn skew_triangle() -> Polyhedron {
    Polyhedron::from_i64(&[vec![1, 1], vec![-1, 2], vec![0, -1]], &[2, 2, 1]).unwrap()
}

/// Square pyramid whose apex has five tight rows.
pub fn pyramid() -> Polyhedron {
    Polyhedron::from_i64(
        &[
            vec![1, 0, 1],
            vec![-1, 0, 1],
            vec![0, 1, 1],
            vec![0, -1, 1],
            vec![0, 0, 1],
            vec![0, 0, -1],
        ],
        &[1, 1, 1, 1, 1, 0],
    )
    .unwrap()
}

/// `{x >= 0}` in the plane.
pub fn quadrant() -> Polyhedron {
    Polyhedron::from_i64(&[vec![-1, 0], vec![0, -1]], &[0, 0]).unwrap()
}

/// `{x1 >= 0, 0 <= x2 <= 1}`.
pub fn half_strip() -> Polyhedron {
    Polyhedron::from_i64(&[vec![0, -1], vec![0, 1], vec![-1, 0]], &[0, 1, 0]).unwrap()
}

pub fn random_family() -> Vec<(String, Polyhedron)> {
    (0..10).map(|s| (format!("random:3,8,2,{s}"), random_int(3, 8, 2, s).unwrap())).collect()
}

/// Every instance the acceptance criteria quantify over.
pub fn all_instances() -> Vec<(String, Polyhedron)> {
    let mut out = Vec::new();
    for n in 2..=6 {
        out.push((format!("cube:{n}"), cube(n).unwrap()));
        out.push((format!("simplex:{n}"), simplex(n).unwrap()));
    }
    for n in 2..=3 {
        out.push((format!("cross:{n}"), cross_polytope(n).unwrap()));
    }
    for spec in ["transport:2x2", "transport:2x3"] {
        out.push((spec.to_string(), spec.parse::<InstanceSpec>().unwrap().build().unwrap()));
    }
    out.push(("skew".into(), skew_triangle()));
    out.push(("pyramid".into(), pyramid()));
    out.push(("quadrant".into(), quadrant()));
    out.push(("half-strip".into(), half_strip()));
    out.extend(random_family());
    out
}
