//! Critical-weight Kasteleyn determinants of every perfect dessin of a lattice.
//!
//! cargo run --release --example kasteleyn -- '[[0,1,1,-2],[-1,0,2,-1]]'

use gkz_dessins::dessin::{constellation_from_list, perfect_dessins, superpotential};
use gkz_dessins::kasteleyn::{kasteleyn_det, newton_polygon, WeightSpec};
use gkz_dessins::lattice::parse_b_json;
use gkz_dessins::surface::DEFAULT_CAP;

fn main() -> gkz_dessins::Result<()> {
    let b = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "[[0,1,1,-2],[-1,0,2,-1]]".into());
    let l = parse_b_json(&b)?;
    for (k, m) in perfect_dessins(&l, 7, DEFAULT_CAP)?.iter().enumerate() {
        println!("dessin {}\n{}", k + 1, m);
        let c = constellation_from_list(m)?;
        println!("W = {}", superpotential(&c));
        let d = kasteleyn_det(m, &WeightSpec::Critical)?;
        println!("det K^crit = {}", d);
        println!("unit       = {}", kasteleyn_det(m, &WeightSpec::Unit)?);
        println!("newton = secondary: {}\n", newton_polygon(&d, &l)?.equal);
    }
    Ok(())
}
