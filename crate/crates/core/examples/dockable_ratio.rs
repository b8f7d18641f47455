//! Flat surface over volume of single-vertex spherical cones, against the
//! upper bound `D^2 n^3` and its entry/codimension-one refinement.

use polydiam::checks::dockable_ratio_checks;
use polydiam::graph::enumerate_vertices;
use polydiam::instances::cube;
use polydiam::polyhedron::{Polyhedron, DEFAULT_BASIS_BUDGET};
use polydiam::sampling::Estimator;
use polydiam::subdet::{subdet_profile, DEFAULT_MINOR_BUDGET};

fn report(name: &str, p: &Polyhedron) -> polydiam::Result<()> {
    let g = enumerate_vertices(p, DEFAULT_BASIS_BUDGET)?;
    let prof = subdet_profile(p.a(), None, DEFAULT_MINOR_BUDGET)?;
    let est = Estimator::new(p, &g, 100_000, 100_000, 3)?;
    println!("{name}");
    for rec in dockable_ratio_checks(&est, &prof)? {
        println!(
            "  {:<24} {:<10} {:>9.4} {} {:>9.4}  se {:.4}  {}",
            rec.check, rec.subject, rec.measured, rec.relation, rec.bound, rec.standard_error, rec.status
        );
    }
    Ok(())
}

fn main() -> polydiam::Result<()> {
    // orthant cones: 8/pi in the plane, 4.5 in space
    report("square", &cube(2)?)?;
    report("3-cube", &cube(3)?)?;
    let skew = Polyhedron::from_i64(&[vec![1, 1], vec![-1, 2], vec![0, -1]], &[2, 2, 1])?;
    report("skew triangle (max minor 3)", &skew)
}
