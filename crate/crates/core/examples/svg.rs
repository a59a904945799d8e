//! Write the fan, Delta and the tiling of the first perfect surface as SVG.
//!
//! cargo run --example svg -- '[[0,1,1,-2],[-1,0,2,-1]]' /tmp/b2

use gkz_dessins::lattice::parse_b_json;
use gkz_dessins::secondary::delta_polygon;
use gkz_dessins::surface::{find_perfect, Quotient, DEFAULT_CAP};
use gkz_dessins::svg::{fan_svg, polygon_svg, tiling_area_check, tiling_svg};

fn main() -> gkz_dessins::Result<()> {
    let mut args = std::env::args().skip(1);
    let b = args
        .next()
        .unwrap_or_else(|| "[[0,1,1,-2],[-1,0,2,-1]]".into());
    let dir = std::path::PathBuf::from(args.next().unwrap_or_else(|| "svg-out".into()));
    std::fs::create_dir_all(&dir)?;
    let l = parse_b_json(&b)?;
    std::fs::write(dir.join("fan.svg"), fan_svg(&l))?;
    std::fs::write(
        dir.join("delta.svg"),
        polygon_svg(&delta_polygon(&l).polygon),
    )?;
    let q = Quotient::new(&l);
    let s = &find_perfect(&l, 7, DEFAULT_CAP)?[0];
    let (rhombi, gram) = tiling_area_check(&q, s);
    println!("rhombus area {} vs period area {}", rhombi, gram);
    std::fs::write(dir.join("tiling.svg"), tiling_svg(&q, s, true)?)?;
    println!("wrote {}", dir.display());
    Ok(())
}
