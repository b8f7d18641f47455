//! Breadth-first search over the 4-cube, tracking the normal-cone volume of
//! each discovered prefix and of its neighbourhood.

use polydiam::bounds::{expansion_factor, Regime};
use polydiam::checks::expansion_checks;
use polydiam::graph::enumerate_vertices;
use polydiam::instances::cube;
use polydiam::polyhedron::DEFAULT_BASIS_BUDGET;
use polydiam::sampling::Estimator;
use polydiam::subdet::{subdet_profile, DEFAULT_MINOR_BUDGET};

fn main() -> polydiam::Result<()> {
    let p = cube(4)?;
    let g = enumerate_vertices(&p, DEFAULT_BASIS_BUDGET)?;
    let prof = subdet_profile(p.a(), None, DEFAULT_MINOR_BUDGET)?;
    let est = Estimator::new(&p, &g, 200_000, 50_000, 9)?;
    println!("guaranteed growth per step: {:.5}", expansion_factor(4, 1.0, Regime::Bounded));

    let trace = g.bfs(0);
    for j in 0..=trace.eccentricity {
        let vol = est.volume(&trace.prefix(j));
        println!("radius {j}: {:>2} vertices, volume {:.4} +- {:.4}", trace.prefix(j).len(), vol.point_estimate, vol.standard_error);
    }
    println!("ball volume {:.4}\n", est.ball_volume());

    for rec in expansion_checks(&est, 0, &prof, Regime::Bounded)? {
        println!("{:<24} {:<20} {:>9.4} {} {:>9.4}  {}", rec.check, rec.subject, rec.measured, rec.relation, rec.bound, rec.status);
    }
    Ok(())
}
