//! Compare the critical Kasteleyn determinant with a principal A-determinant,
//! computed for univariate supports or read from a JSON fixture.
//!
//! cargo run --release --example adet -- '[[0,1,1,-2],[-1,0,2,-1]]' [fixture.json]

use gkz_dessins::adet::{conjecture_check, principal_a_det_univariate, EaFixture};
use gkz_dessins::dessin::perfect_dessins;
use gkz_dessins::kasteleyn::WeightSpec;
use gkz_dessins::lattice::parse_b_json;
use gkz_dessins::surface::DEFAULT_CAP;

fn main() -> gkz_dessins::Result<()> {
    let mut args = std::env::args().skip(1);
    let b = args
        .next()
        .unwrap_or_else(|| "[[0,1,1,-2],[-1,0,2,-1]]".into());
    let l = parse_b_json(&b)?;
    let ea = match args.next() {
        Some(path) => EaFixture::parse(&std::fs::read_to_string(path)?)?.to_poly(l.n())?,
        None => principal_a_det_univariate(&l)?,
    };
    println!("E_A = {}", ea);
    for (k, m) in perfect_dessins(&l, 7, DEFAULT_CAP)?.iter().enumerate() {
        let r = conjecture_check(&l, m, &WeightSpec::Critical, Some(&ea))?;
        println!("dessin {}: {}", k + 1, r.status);
        for d in &r.diffs {
            println!("  {}", d);
        }
    }
    Ok(())
}
