//! SVG pictures of planar Newton polyhedra.
//!
//! Everything is computed over the rationals and rounded only when printed,
//! so the output is byte-stable.

use std::fmt::Write;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use toric_closure::closure::IdealData;
use toric_closure::lattice::IntVec;
use toric_closure::polyhedra::HalfSpace;

pub const SIZE: i64 = 480;
pub const MARGIN: i64 = 20;

type Pt = (BigRational, BigRational);

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn qi(n: &BigInt) -> BigRational {
    BigRational::from_integer(n.clone())
}

/// Three decimals, rounded half away from zero, trailing zeros dropped.
pub fn fmt3(x: &BigRational) -> String {
    let scaled = x * q(1000);
    let (fl, rem) = scaled.numer().div_mod_floor(scaled.denom());
    let twice = rem * 2;
    let mut k = fl;
    if x.is_negative() {
        if twice > *scaled.denom() {
            k += 1;
        }
    } else if twice >= *scaled.denom() {
        k += 1;
    }
    let neg = k.is_negative();
    let k = k.abs();
    let (int_part, frac) = k.div_rem(&BigInt::from(1000));
    let mut s = String::new();
    if neg {
        s.push('-');
    }
    s.push_str(&int_part.to_string());
    let frac = frac.to_u32().unwrap_or(0);
    if frac != 0 {
        let digits = format!("{frac:03}");
        s.push('.');
        s.push_str(digits.trim_end_matches('0'));
    }
    s
}

/// Clips a convex polygon to `<normal, x> >= offset` (Sutherland–Hodgman).
pub fn clip(poly: &[Pt], h: &HalfSpace) -> Vec<Pt> {
    let a = qi(&h.normal[0]);
    let b = qi(&h.normal[1]);
    let val = |p: &Pt| &a * &p.0 + &b * &p.1 - &h.offset;
    let mut out = Vec::new();
    for i in 0..poly.len() {
        let cur = &poly[i];
        let next = &poly[(i + 1) % poly.len()];
        let (vc, vn) = (val(cur), val(next));
        if !vc.is_negative() {
            out.push(cur.clone());
        }
        if (vc.is_negative() && vn.is_positive()) || (vc.is_positive() && vn.is_negative()) {
            let t = &vc / (&vc - &vn);
            out.push((&cur.0 + &t * (&next.0 - &cur.0), &cur.1 + &t * (&next.1 - &cur.1)));
        }
    }
    out.dedup();
    if out.len() > 1 && out.first() == out.last() {
        out.pop();
    }
    out
}

/// The part of the polyhedron inside `[0, extent]^2`, as a convex polygon.
pub fn clipped_region(ideal: &IdealData, extent: &BigRational) -> Vec<Pt> {
    let zero = BigRational::zero();
    let mut poly = vec![
        (zero.clone(), zero.clone()),
        (extent.clone(), zero.clone()),
        (extent.clone(), extent.clone()),
        (zero.clone(), extent.clone()),
    ];
    for h in ideal.newton().facets() {
        poly = clip(&poly, h);
        if poly.is_empty() {
            break;
        }
    }
    poly
}

/// Largest coordinate among support points and vertices.
pub fn max_coordinate(ideal: &IdealData) -> BigInt {
    ideal
        .supp()
        .iter()
        .chain(ideal.newton().vertices())
        .flat_map(|p| p.entries().iter().cloned())
        .max()
        .unwrap_or_default()
}

pub struct PlotOptions {
    /// side of the square viewport in lattice units; default `max coordinate + 2`
    pub extent: Option<u64>,
}

struct Frame {
    scale: BigRational,
}

impl Frame {
    fn x(&self, v: &BigRational) -> String {
        fmt3(&(q(MARGIN) + v * &self.scale))
    }

    fn y(&self, v: &BigRational) -> String {
        fmt3(&(q(SIZE - MARGIN) - v * &self.scale))
    }

    fn pt(&self, p: &Pt) -> String {
        format!("{},{}", self.x(&p.0), self.y(&p.1))
    }
}

fn ipt(p: &IntVec) -> Pt {
    (qi(&p[0]), qi(&p[1]))
}

/// Where the ray `t * r` leaves `[0, extent]^2`.
fn ray_exit(r: &IntVec, extent: &BigRational) -> Pt {
    let t = (0..2)
        .filter(|&i| r[i].is_positive())
        .map(|i| extent / qi(&r[i]))
        .min()
        .unwrap_or_else(BigRational::zero);
    (&t * qi(&r[0]), &t * qi(&r[1]))
}

/// Renders the polyhedron of a planar ideal. The caller checks `n = 2`.
pub fn render(ideal: &IdealData, opts: &PlotOptions) -> String {
    let extent = match opts.extent {
        Some(e) => q(e.max(1) as i64),
        None => qi(&(max_coordinate(ideal) + 2)),
    };
    let frame = Frame { scale: q(SIZE - 2 * MARGIN) / &extent };
    let mut s = String::new();
    let w = |s: &mut String, line: String| {
        s.push_str(&line);
        s.push('\n');
    };

    w(&mut s, format!(
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    ));
    w(&mut s, format!(r#"<rect x="0" y="0" width="{SIZE}" height="{SIZE}" fill="white"/>"#));

    let region = clipped_region(ideal, &extent);
    if region.len() >= 3 {
        let pts: Vec<String> = region.iter().map(|p| frame.pt(p)).collect();
        w(&mut s, format!(r##"<polygon class="region" points="{}" fill="#cfe0f3" stroke="none"/>"##, pts.join(" ")));
    }

    // axes and integer ticks
    let zero = BigRational::zero();
    let origin = (zero.clone(), zero.clone());
    let x_end = (extent.clone(), zero.clone());
    let y_end = (zero.clone(), extent.clone());
    w(&mut s, format!(
        r#"<g class="axes" stroke="black" stroke-width="1"><line x1="{}" y1="{}" x2="{}" y2="{}"/><line x1="{}" y1="{}" x2="{}" y2="{}"/></g>"#,
        frame.x(&origin.0), frame.y(&origin.1), frame.x(&x_end.0), frame.y(&x_end.1),
        frame.x(&origin.0), frame.y(&origin.1), frame.x(&y_end.0), frame.y(&y_end.1),
    ));
    let top = extent.floor().to_integer().to_i64().unwrap_or(0);
    let label_step = if top <= 12 { 1 } else { 5 };
    let mut ticks = String::new();
    let mut labels = String::new();
    let base_y = SIZE - MARGIN;
    for k in 1..=top {
        let c = frame.x(&q(k));
        let r = frame.y(&q(k));
        let _ = write!(ticks, r#"<line x1="{c}" y1="{base_y}" x2="{c}" y2="{}"/>"#, base_y + 4);
        let _ = write!(ticks, r#"<line x1="{MARGIN}" y1="{r}" x2="{}" y2="{r}"/>"#, MARGIN - 4);
        if k % label_step == 0 {
            let _ = write!(labels, r#"<text x="{c}" y="{}" text-anchor="middle">{k}</text>"#, base_y + 14);
            let _ = write!(labels, r#"<text x="{}" y="{r}" text-anchor="end" dominant-baseline="middle">{k}</text>"#, MARGIN - 6);
        }
    }
    w(&mut s, format!(r#"<g class="ticks" stroke="black" stroke-width="1">{ticks}</g>"#));
    w(&mut s, format!(r#"<g class="labels" font-family="sans-serif" font-size="8" fill="black">{labels}</g>"#));

    // boundary rays of cone(S)
    for r in ideal.semigroup().cone().rays() {
        let end = ray_exit(r, &extent);
        w(&mut s, format!(
            r##"<line class="cone-ray" x1="{}" y1="{}" x2="{}" y2="{}" stroke="#555555" stroke-width="1" stroke-dasharray="6 4"/>"##,
            frame.x(&origin.0), frame.y(&origin.1), frame.x(&end.0), frame.y(&end.1),
        ));
    }

    // unbounded boundary edges, thin; compact edges come next, thick
    let compact = ideal.compact_faces();
    for h in ideal.newton().facets() {
        let on: Vec<&Pt> = region.iter().filter(|p| on_line(h, p)).collect();
        if on.len() < 2 {
            continue;
        }
        let is_compact = compact.iter().any(|f| f.dim == 1 && f.normal == h.normal);
        if is_compact {
            continue;
        }
        let (a, b) = (on[0], on[on.len() - 1]);
        w(&mut s, format!(
            r##"<line class="edge" x1="{}" y1="{}" x2="{}" y2="{}" stroke="#1f4e8c" stroke-width="1.5"/>"##,
            frame.x(&a.0), frame.y(&a.1), frame.x(&b.0), frame.y(&b.1),
        ));
    }
    for f in compact.iter().filter(|f| f.dim == 1) {
        let (a, b) = (ipt(&f.vertex_set[0]), ipt(&f.vertex_set[f.vertex_set.len() - 1]));
        w(&mut s, format!(
            r#"<line class="compact-edge" x1="{}" y1="{}" x2="{}" y2="{}" stroke="black" stroke-width="3"/>"#,
            frame.x(&a.0), frame.y(&a.1), frame.x(&b.0), frame.y(&b.1),
        ));
    }
    for f in compact.iter().filter(|f| f.dim == 0) {
        let p = ipt(&f.vertex_set[0]);
        w(&mut s, format!(
            r#"<circle class="compact-vertex" cx="{}" cy="{}" r="6" fill="none" stroke="black" stroke-width="2"/>"#,
            frame.x(&p.0), frame.y(&p.1),
        ));
    }

    for p in ideal.supp() {
        let p = ipt(p);
        w(&mut s, format!(
            r#"<circle class="support" cx="{}" cy="{}" r="3.5" fill="black"/>"#,
            frame.x(&p.0), frame.y(&p.1),
        ));
    }
    w(&mut s, "</svg>".to_string());
    s
}

fn on_line(h: &HalfSpace, p: &Pt) -> bool {
    qi(&h.normal[0]) * &p.0 + qi(&h.normal[1]) * &p.1 == h.offset
}
