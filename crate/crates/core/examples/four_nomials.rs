//! Critical determinants against discriminants for the four-nomials
//! u1 x^(c-a) + u2 x^c + u3 + u4 x^b with small b.
//!
//! cargo run --release --example four_nomials -- 5

use gkz_dessins::adet::conjecture_check;
use gkz_dessins::dessin::perfect_dessins;
use gkz_dessins::intmat::ext_gcd;
use gkz_dessins::kasteleyn::WeightSpec;
use gkz_dessins::lattice::LatticeEmbedding;
use gkz_dessins::surface::DEFAULT_CAP;

/// k, l with c k + b l = 1.
fn bezout(b: i64, c: i64) -> Option<(i64, i64)> {
    let (g, k, l) = ext_gcd(c, b);
    (g == 1).then_some((k, l))
}

fn main() -> gkz_dessins::Result<()> {
    let max_b: i64 = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(4);
    for b in 1..=max_b {
        for a in 1..=b {
            for c in 0..=b {
                // distinct exponents c - a, c, 0, b
                if c == 0 || c == a || c - a == b || c == b {
                    continue;
                }
                let Some((k, l)) = bezout(b, c) else { continue };
                let rows = [
                    vec![1, a * k - 1, -a * l - a * k, a * l],
                    vec![0, b, c - b, -c],
                ];
                let Ok(lat) = LatticeEmbedding::new(&rows) else {
                    continue;
                };
                let dessins = perfect_dessins(&lat, 7, DEFAULT_CAP)?;
                let mut verdicts = Vec::new();
                for m in &dessins {
                    let r = conjecture_check(&lat, m, &WeightSpec::Critical, None);
                    verdicts.push(match r {
                        Ok(r) => r.status,
                        Err(e) => format!("error: {}", e),
                    });
                }
                println!(
                    "L^{{{},{},{}}} B={:?}: {} dessins {:?}",
                    a,
                    b,
                    c,
                    rows,
                    dessins.len(),
                    verdicts
                );
            }
        }
    }
    Ok(())
}
