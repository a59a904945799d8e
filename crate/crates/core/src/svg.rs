//! SVG drawings: the secondary fan, lattice polygons and rhombus tilings of
//! perfect surfaces.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt::Write;

use crate::error::Result;
use crate::lattice::LatticeEmbedding;
use crate::secondary::{secondary_fan, LatticePolygon};
use crate::surface::{colouring, zigzag_loops, Class, Colour, DiscreteSurface, Quotient};

const PALETTE: [&str; 10] = [
    "#d62728", "#1f77b4", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf",
    "#bcbd22", "#7f7f7f",
];

fn header(out: &mut String, min: (f64, f64), max: (f64, f64)) {
    let pad = 1.0;
    let (w, h) = (max.0 - min.0 + 2.0 * pad, max.1 - min.1 + 2.0 * pad);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{:.3} {:.3} {:.3} {:.3}" width="{:.0}" height="{:.0}">"#,
        min.0 - pad,
        -(max.1 + pad),
        w,
        h,
        (w * 40.0).min(1200.0),
        (h * 40.0).min(1200.0)
    );
    // y axis points up
    out.push_str("<g transform=\"scale(1,-1)\">\n");
}

fn footer(out: &mut String) {
    out.push_str("</g>\n</svg>\n");
}

fn text(out: &mut String, x: f64, y: f64, size: f64, s: &str) {
    let _ = writeln!(
        out,
        r#"<text x="{:.3}" y="{:.3}" font-size="{:.3}" transform="scale(1,-1)" text-anchor="middle">{}</text>"#,
        x, -y, size, s
    );
}

/// Rays through b_1..b_N with index labels and the pair list of every cone.
pub fn fan_svg(l: &LatticeEmbedding) -> String {
    let cones = secondary_fan(l);
    let r = 4.0;
    let mut out = String::new();
    header(&mut out, (-r - 1.0, -r - 1.0), (r + 1.0, r + 1.0));
    let unit = |v: (i64, i64)| {
        let n = ((v.0 * v.0 + v.1 * v.1) as f64).sqrt();
        (v.0 as f64 / n, v.1 as f64 / n)
    };
    let mut by_ray: BTreeMap<(i64, i64), Vec<usize>> = BTreeMap::new();
    for (i, b) in l.cols().into_iter().enumerate() {
        let g = num_integer::gcd(b.0, b.1);
        by_ray.entry((b.0 / g, b.1 / g)).or_default().push(i);
    }
    for (dir, idx) in &by_ray {
        let u = unit(*dir);
        let _ = writeln!(
            out,
            r##"<line x1="0" y1="0" x2="{:.3}" y2="{:.3}" stroke="#333" stroke-width="0.04"/>"##,
            u.0 * r,
            u.1 * r
        );
        let label: Vec<String> = idx.iter().map(|i| format!("b{}", i + 1)).collect();
        text(
            &mut out,
            u.0 * (r + 0.5),
            u.1 * (r + 0.5),
            0.35,
            &label.join(","),
        );
    }
    for c in &cones {
        let (a, b) = (unit(l.col(c.right[0])), unit(l.col(c.left[0])));
        let mut m = (a.0 + b.0, a.1 + b.1);
        let n = (m.0 * m.0 + m.1 * m.1).sqrt();
        if n < 1e-9 {
            m = (-a.1, a.0);
        } else {
            m = (m.0 / n, m.1 / n);
        }
        let pairs: Vec<String> =
            c.lc.iter()
                .map(|(i, j)| format!("{{{},{}}}", i + 1, j + 1))
                .collect();
        text(
            &mut out,
            m.0 * r * 0.6,
            m.1 * r * 0.6,
            0.28,
            &pairs.join(" "),
        );
    }
    let _ = writeln!(out, r##"<circle cx="0" cy="0" r="0.08" fill="#000"/>"##);
    footer(&mut out);
    out
}

/// A lattice polygon with its lattice points.
pub fn polygon_svg(p: &LatticePolygon) -> String {
    let xs: Vec<i64> = p.points.iter().map(|q| q.0).collect();
    let ys: Vec<i64> = p.points.iter().map(|q| q.1).collect();
    let (x0, x1) = (
        *xs.iter().min().unwrap_or(&0),
        *xs.iter().max().unwrap_or(&0),
    );
    let (y0, y1) = (
        *ys.iter().min().unwrap_or(&0),
        *ys.iter().max().unwrap_or(&0),
    );
    let mut out = String::new();
    header(&mut out, (x0 as f64, y0 as f64), (x1 as f64, y1 as f64));
    let pts: Vec<String> = p
        .vertices
        .iter()
        .map(|v| format!("{},{}", v.0, v.1))
        .collect();
    let _ = writeln!(
        out,
        r##"<polygon points="{}" fill="#e8eef8" stroke="#1f4e9a" stroke-width="0.05"/>"##,
        pts.join(" ")
    );
    for x in x0..=x1 {
        for y in y0..=y1 {
            let _ = writeln!(
                out,
                r##"<circle cx="{}" cy="{}" r="0.06" fill="#444"/>"##,
                x, y
            );
        }
    }
    for q in &p.points {
        let _ = writeln!(
            out,
            r##"<circle cx="{}" cy="{}" r="0.1" fill="#1f4e9a"/>"##,
            q.0, q.1
        );
    }
    footer(&mut out);
    out
}

fn project(l: &LatticeEmbedding, p: &[i64]) -> (f64, f64) {
    let mut x = (0.0, 0.0);
    for (i, &c) in p.iter().enumerate() {
        let b = l.col(i);
        x.0 += (c * b.0) as f64;
        x.1 += (c * b.1) as f64;
    }
    x
}

/// Plane positions of one representative per vertex class, chosen along a
/// spanning tree so that the patch is connected.
fn place_vertices(q: &Quotient, s: &DiscreteSurface) -> HashMap<Class, (f64, f64)> {
    let mut pos = HashMap::new();
    let Some(root) = s.vertices().iter().next() else {
        return pos;
    };
    pos.insert(root.clone(), project(&q.l, &q.cc.lift(root)));
    let mut queue = VecDeque::from([root.clone()]);
    while let Some(v) = queue.pop_front() {
        let p = pos[&v];
        for i in 0..q.n() {
            for sign in [1i64, -1] {
                let w = q.step(&v, i, sign);
                if s.contains(&w) && !pos.contains_key(&w) {
                    let b = q.l.col(i);
                    pos.insert(
                        w.clone(),
                        (p.0 + (sign * b.0) as f64, p.1 + (sign * b.1) as f64),
                    );
                    queue.push_back(w);
                }
            }
        }
    }
    pos
}

/// The rhombus tiling of a perfect surface (3 x 3 period copies), the dashed
/// period parallelogram and optionally the zigzag loops.
pub fn tiling_svg(q: &Quotient, s: &DiscreteSurface, zigzag: bool) -> Result<String> {
    let l = &q.l;
    let col = colouring(q, s)?;
    let pos = place_vertices(q, s);
    let rows = l.rows();
    let period = |r: &Vec<i64>| project(l, r);
    let (g1, g2) = (period(&rows[0]), period(&rows[1]));
    let shifts: Vec<(f64, f64)> = (-1..=1)
        .flat_map(|a| (-1..=1).map(move |b| (a as f64, b as f64)))
        .map(|(a, b)| (a * g1.0 + b * g2.0, a * g1.1 + b * g2.1))
        .collect();
    let corners = |sq: &crate::surface::Square| {
        let p = pos[&sq.corner];
        let (bi, bj) = (l.col(sq.i), l.col(sq.j));
        let (bi, bj) = ((bi.0 as f64, bi.1 as f64), (bj.0 as f64, bj.1 as f64));
        [
            p,
            (p.0 + bi.0, p.1 + bi.1),
            (p.0 + bi.0 + bj.0, p.1 + bi.1 + bj.1),
            (p.0 + bj.0, p.1 + bj.1),
        ]
    };
    let mut all: Vec<(f64, f64)> = Vec::new();
    for sq in s.squares() {
        for c in corners(sq) {
            for sh in &shifts {
                all.push((c.0 + sh.0, c.1 + sh.1));
            }
        }
    }
    let fold = |f: fn(f64, f64) -> f64, k: usize| {
        all.iter().map(|p| if k == 0 { p.0 } else { p.1 }).fold(
            if f(0.0, 1.0) == 0.0 {
                f64::MAX
            } else {
                f64::MIN
            },
            f,
        )
    };
    let (minx, maxx, miny, maxy) = (
        fold(f64::min, 0),
        fold(f64::max, 0),
        fold(f64::min, 1),
        fold(f64::max, 1),
    );
    let mut out = String::new();
    header(&mut out, (minx, miny), (maxx, maxy));
    for sh in &shifts {
        for sq in s.squares() {
            let c = corners(sq);
            let pts: Vec<String> = c
                .iter()
                .map(|p| format!("{:.3},{:.3}", p.0 + sh.0, p.1 + sh.1))
                .collect();
            let _ = writeln!(
                out,
                r##"<polygon points="{}" fill="#f4f1e8" stroke="#555" stroke-width="0.04"/>"##,
                pts.join(" ")
            );
        }
    }
    let _ = writeln!(
        out,
        r##"<polygon points="0,0 {:.3},{:.3} {:.3},{:.3} {:.3},{:.3}" fill="none" stroke="#000" stroke-width="0.08" stroke-dasharray="0.4,0.25"/>"##,
        g1.0,
        g1.1,
        g1.0 + g2.0,
        g1.1 + g2.1,
        g2.0,
        g2.1
    );
    if zigzag {
        for z in zigzag_loops(q, s)? {
            let colour = PALETTE[z.index % PALETTE.len()];
            for comp in &z.components {
                for &k in comp {
                    let sq = &s.squares()[k];
                    let c = corners(sq);
                    // midpoints of the two sides parallel to e_i
                    let (a, b) = if sq.i == z.index {
                        ((c[0], c[1]), (c[3], c[2]))
                    } else {
                        ((c[0], c[3]), (c[1], c[2]))
                    };
                    let m1 = ((a.0 .0 + a.1 .0) / 2.0, (a.0 .1 + a.1 .1) / 2.0);
                    let m2 = ((b.0 .0 + b.1 .0) / 2.0, (b.0 .1 + b.1 .1) / 2.0);
                    for sh in &shifts {
                        let _ = writeln!(
                            out,
                            r#"<line x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}" stroke="{}" stroke-width="0.1"/>"#,
                            m1.0 + sh.0,
                            m1.1 + sh.1,
                            m2.0 + sh.0,
                            m2.1 + sh.1,
                            colour
                        );
                    }
                }
            }
        }
    }
    for sh in &shifts {
        for sq in s.squares() {
            let c = corners(sq);
            let classes = [
                sq.corner.clone(),
                q.step(&sq.corner, sq.i, 1),
                q.step(&q.step(&sq.corner, sq.i, 1), sq.j, 1),
                q.step(&sq.corner, sq.j, 1),
            ];
            for (p, v) in c.iter().zip(&classes) {
                let (fill, stroke) = match col[v] {
                    Colour::Black => ("#000", "#000"),
                    Colour::Grey => ("#999", "#999"),
                    Colour::White => ("#fff", "#000"),
                };
                let _ = writeln!(
                    out,
                    r#"<circle cx="{:.3}" cy="{:.3}" r="0.18" fill="{}" stroke="{}" stroke-width="0.05"/>"#,
                    p.0 + sh.0,
                    p.1 + sh.1,
                    fill,
                    stroke
                );
            }
        }
    }
    footer(&mut out);
    Ok(out)
}

/// Sum of rhombus areas against the area of the period parallelogram.
pub fn tiling_area_check(q: &Quotient, s: &DiscreteSurface) -> (i64, i64) {
    let l = &q.l;
    let rhombi: i64 = s.squares().iter().map(|sq| l.det(sq.i, sq.j).abs()).sum();
    let r = l.rows();
    let dot = |a: &Vec<i64>, b: &Vec<i64>| a.iter().zip(b).map(|(x, y)| x * y).sum::<i64>();
    let gram = dot(&r[0], &r[0]) * dot(&r[1], &r[1]) - dot(&r[0], &r[1]).pow(2);
    (rhombi, gram)
}
