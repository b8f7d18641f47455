//! Exact vertex enumeration and graph diameters of cubes and simplices,
//! plus the two-sided BFS meeting radius.

use polydiam::graph::enumerate_vertices;
use polydiam::instances::{cube, simplex};
use polydiam::polyhedron::DEFAULT_BASIS_BUDGET;

fn main() -> polydiam::Result<()> {
    println!("{:<10} {:>8} {:>6} {:>8}", "instance", "vertices", "edges", "diameter");
    for n in 2..=6 {
        for (name, p) in [("cube", cube(n)?), ("simplex", simplex(n)?)] {
            let g = enumerate_vertices(&p, DEFAULT_BASIS_BUDGET)?;
            println!("{:<10} {:>8} {:>6} {:>8}", format!("{name}:{n}"), g.vertex_count(), g.edge_count(), g.diameter()?);
        }
    }

    let g = enumerate_vertices(&cube(4)?, DEFAULT_BASIS_BUDGET)?;
    let far = (0..g.vertex_count()).max_by_key(|&v| g.distance(0, v)).unwrap();
    println!(
        "\n4-cube: distance(0, {far}) = {}, BFS balls meet at radius {}",
        g.distance(0, far).unwrap(),
        g.dual_bfs_meet(0, far)?
    );
    Ok(())
}
