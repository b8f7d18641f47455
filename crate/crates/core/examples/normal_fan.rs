//! The normal cones of a polytope tile the space of objectives. Sampling
//! uniform directions gives each cone's share of the unit ball; for an
//! unbounded polyhedron some directions have no owner.

use polydiam::cone::NormalFan;
use polydiam::gamma::ball_volume_f64;
use polydiam::graph::enumerate_vertices;
use polydiam::instances::cube;
use polydiam::polyhedron::{Polyhedron, DEFAULT_BASIS_BUDGET};
use polydiam::sampling::OwnerTable;

fn main() -> polydiam::Result<()> {
    let p = cube(3)?;
    let g = enumerate_vertices(&p, DEFAULT_BASIS_BUDGET)?;
    let fan = NormalFan::new(&p, &g)?;
    println!("owner of (1, 2, -3): vertex {:?}", fan.owning_vertex(&[1.0, 2.0, -3.0]));

    let table = OwnerTable::compute(&fan, 100_000, 11)?;
    let hits = table.per_vertex_hits(g.vertex_count());
    let ball = ball_volume_f64(3);
    for (v, h) in hits.iter().enumerate() {
        let share = *h as f64 / table.samples() as f64;
        println!("vertex {v}: volume {:.4} (exact {:.4})", share * ball, ball / 8.0);
    }
    println!("unowned directions: {}", table.unbounded_count());

    // the nonnegative quadrant: only objectives in the nonpositive quadrant are bounded
    let q = Polyhedron::from_i64(&[vec![-1, 0], vec![0, -1]], &[0, 0])?;
    let qg = enumerate_vertices(&q, DEFAULT_BASIS_BUDGET)?;
    let t = OwnerTable::compute(&NormalFan::new(&q, &qg)?, 100_000, 11)?;
    println!("\nquadrant: unbounded fraction {:.4} (expected 0.75)", t.unbounded_count() as f64 / t.samples() as f64);
    Ok(())
}
