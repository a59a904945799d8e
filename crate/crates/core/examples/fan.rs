//! Secondary fan, psi vertices and the polygon Delta of a lattice.
//!
//! cargo run --example fan -- '[[2,-1,-1],[1,1,-2]]'

use gkz_dessins::lattice::parse_b_json;
use gkz_dessins::secondary::{area_and_interior, delta_polygon, psi_vertices, secondary_fan};

fn main() -> gkz_dessins::Result<()> {
    let b = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "[[2,-1,-1],[1,1,-2]]".into());
    let l = parse_b_json(&b)?;
    let cones = secondary_fan(&l);
    for c in &cones {
        let (a2, interior) = area_and_interior(&l, c);
        let lc: Vec<String> =
            c.lc.iter()
                .map(|(i, j)| format!("{{{},{}}}", i + 1, j + 1))
                .collect();
        println!(
            "cone right={:?} left={:?} psi={:?} L_C={} 2*area={} interior={}",
            c.right.iter().map(|i| i + 1).collect::<Vec<_>>(),
            c.left.iter().map(|i| i + 1).collect::<Vec<_>>(),
            c.psi,
            lc.join(" "),
            a2,
            interior
        );
    }
    let sp = psi_vertices(&l, &cones);
    println!("secondary polygon vertices: {:?}", sp.vertices);
    let d = delta_polygon(&l);
    println!(
        "Delta: {:?}, 2*area {}, boundary {}, interior {}",
        d.polygon.vertices,
        d.polygon.twice_area(),
        d.polygon.boundary_lattice_points(),
        d.polygon.interior_lattice_points()
    );
    Ok(())
}
