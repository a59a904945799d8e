//! Enumerate square-tiled surfaces for a lattice and report the perfect ones.
//!
//! cargo run --release --example surfaces -- '[[0,1,1,-2],[-1,0,2,-1]]' 7

use gkz_dessins::lattice::parse_b_json;
use gkz_dessins::surface::{enumerate_surfaces, Quotient, DEFAULT_CAP};

fn main() -> gkz_dessins::Result<()> {
    let args: Vec<String> = std::env::args().collect();
    let b = args
        .get(1)
        .map(String::as_str)
        .unwrap_or("[[0,1,1,-2],[-1,0,2,-1]]");
    let seed = args.get(2).and_then(|s| s.parse().ok()).unwrap_or(7);
    let l = parse_b_json(b)?;
    let q = Quotient::new(&l);
    let t = std::time::Instant::now();
    let cap = args
        .get(3)
        .and_then(|s| s.parse().ok())
        .unwrap_or(DEFAULT_CAP);
    let en = enumerate_surfaces(&l, seed, cap)?;
    let perfect = en.perfect(&q);
    println!("surfaces: {}", en.surfaces.len());
    println!("perfect:  {}", perfect.len());
    for s in &perfect {
        println!(
            "  heights {:?}, {} squares",
            s.heights(&q),
            s.squares().len()
        );
    }
    eprintln!("elapsed {:?}", t.elapsed());
    Ok(())
}
