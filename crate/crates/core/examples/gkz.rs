//! The A-sequence, its volume and the symbolic f_A.
//!
//! cargo run --example gkz -- '[[0,1,1,-2],[-1,0,2,-1]]'

use gkz_dessins::gkz::{f_a_symbolic, gkz_info};
use gkz_dessins::lattice::parse_b_json;

fn main() -> gkz_dessins::Result<()> {
    let b = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "[[0,1,1,-2],[-1,0,2,-1]]".into());
    let l = parse_b_json(&b)?;
    let info = gkz_info(&l)?;
    for (i, a) in info.a.iter().enumerate() {
        println!("a_{} = {:?}", i + 1, a);
    }
    println!("vol(A) = {}", info.vol_a);
    if !info.torsion.is_empty() {
        println!("torsion factors {:?}", info.torsion);
    }
    println!("unimodular triangulation exists: {}", info.unimodular);
    println!("minimal relations:");
    for r in &info.relations {
        println!("  {:?}", r);
    }
    match f_a_symbolic(&l) {
        Ok(f) => println!("f_A = {}", f),
        Err(e) => println!("f_A unavailable: {}", e),
    }
    Ok(())
}
