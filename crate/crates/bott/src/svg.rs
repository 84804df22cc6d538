//! SVG drawing of two-dimensional fans.

use std::fmt::Write;

use bott_core::{Fan, GeneralFan};
use num_traits::ToPrimitive;

pub const CANVAS: f64 = 600.0;
pub const RAY_LENGTH: f64 = 200.0;
const ORIGIN: f64 = CANVAS / 2.0;
const FILLS: [&str; 4] = ["#4e79a7", "#f28e2b", "#59a14f", "#b07aa1"];

#[derive(Debug, thiserror::Error)]
#[error("only two-dimensional fans can be drawn, got dimension {0}")]
pub struct NotPlanar(pub usize);

fn coord(x: f64) -> String {
    // avoid "-0.00"
    let s = format!("{x:.2}");
    if s == "-0.00" {
        "0.00".to_string()
    } else {
        s
    }
}

/// Canvas position of the unit ray in direction `v`.
fn endpoint(v: &[num_bigint::BigInt], scale: f64) -> (f64, f64) {
    let x = v[0].to_f64().unwrap_or(f64::MAX);
    let y = v[1].to_f64().unwrap_or(f64::MAX);
    let norm = x.hypot(y);
    (ORIGIN + scale * x / norm, ORIGIN - scale * y / norm)
}

pub fn render(fan: &GeneralFan) -> Result<String, NotPlanar> {
    if fan.dim() != 2 {
        return Err(NotPlanar(fan.dim()));
    }
    let mut out = String::new();
    let size = CANVAS as u32;
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">"#
    )
    .unwrap();
    out.push_str(concat!(
        "  <defs>\n",
        r#"    <marker id="head" viewBox="0 0 10 10" refX="9" refY="5" markerWidth="8" markerHeight="8" orient="auto-start-reverse">"#,
        "\n",
        r#"      <path d="M 0 0 L 10 5 L 0 10 z" fill="black"/>"#,
        "\n    </marker>\n  </defs>\n",
    ));
    writeln!(out, r#"  <rect width="{size}" height="{size}" fill="white"/>"#).unwrap();

    let o = coord(ORIGIN);
    for (ci, cone) in fan.cones().iter().enumerate() {
        let (a, b) = (&fan.rays()[cone[0]], &fan.rays()[cone[1]]);
        let (x1, y1) = endpoint(a, RAY_LENGTH);
        let (x2, y2) = endpoint(b, RAY_LENGTH);
        let cross = &a[0] * &b[1] - &a[1] * &b[0];
        // counterclockwise in the plane is counterclockwise on screen: sweep 0
        let sweep = if cross > num_bigint::BigInt::from(0) { 0 } else { 1 };
        writeln!(
            out,
            r#"  <path d="M {o} {o} L {} {} A {r} {r} 0 0 {sweep} {} {} Z" fill="{}" fill-opacity="0.35" stroke="none"/>"#,
            coord(x1),
            coord(y1),
            coord(x2),
            coord(y2),
            FILLS[ci % FILLS.len()],
            r = coord(RAY_LENGTH),
        )
        .unwrap();
    }
    for ray in fan.rays() {
        let (x, y) = endpoint(ray, RAY_LENGTH);
        writeln!(
            out,
            r#"  <line x1="{o}" y1="{o}" x2="{}" y2="{}" stroke="black" stroke-width="2" marker-end="url(#head)"/>"#,
            coord(x),
            coord(y)
        )
        .unwrap();
    }
    for ray in fan.rays() {
        let (x, y) = endpoint(ray, RAY_LENGTH + 28.0);
        writeln!(
            out,
            r#"  <text x="{}" y="{}" font-family="monospace" font-size="14" text-anchor="middle" dominant-baseline="middle">({}, {})</text>"#,
            coord(x),
            coord(y),
            ray[0],
            ray[1]
        )
        .unwrap();
    }
    writeln!(out, r#"  <circle cx="{o}" cy="{o}" r="3" fill="black"/>"#).unwrap();
    out.push_str("</svg>\n");
    Ok(out)
}
