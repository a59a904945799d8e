//! Round trip between quadruple lists, constellations and superpotentials.
//!
//! cargo run --release --example dessin -- '[[0,0,1,1,1,-3],[-1,-1,0,0,0,2]]'

use gkz_dessins::dessin::{
    constellation_from_list, cycles_text, dessin_isomorphism, list_from_constellation,
    perfect_dessins, superpotential,
};
use gkz_dessins::lattice::parse_b_json;
use gkz_dessins::surface::DEFAULT_CAP;

fn main() -> gkz_dessins::Result<()> {
    let b = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "[[0,0,1,1,1,-3],[-1,-1,0,0,0,2]]".into());
    let l = parse_b_json(&b)?;
    for (k, m) in perfect_dessins(&l, 7, DEFAULT_CAP)?.iter().enumerate() {
        let c = constellation_from_list(m)?;
        println!("dessin {} genus {}", k + 1, c.genus());
        println!("  sigma0 = {}", cycles_text(&c.sigma0));
        println!("  sigma1 = {}", cycles_text(&c.sigma1));
        println!("  W = {}", superpotential(&c));
        let back = list_from_constellation(&c);
        println!("  round trip: {}", dessin_isomorphism(m, &back).is_some());
        let mc = c.mirror();
        println!("  mirror genus {}", mc.genus());
    }
    Ok(())
}
