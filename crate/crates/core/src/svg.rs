//! SVG figures: graphs of windowed PL maps and laminations drawn as
//! semicircles in the upper half-plane.

use std::fmt::Write as _;

use num_traits::ToPrimitive;

use crate::lamination::Leaf;
use crate::pl::PLMap;
use crate::realization::Realization;
use crate::scalar::{Coeff, Scalar};

const SIZE: f64 = 600.0;
const MARGIN: f64 = 20.0;

fn to_f64<Q: Scalar>(q: &Q) -> f64 {
    q.to_big().to_f64().unwrap_or(f64::NAN)
}

struct Frame {
    lo: f64,
    hi: f64,
}

impl Frame {
    fn x(&self, v: f64) -> f64 {
        MARGIN + (v - self.lo) / (self.hi - self.lo) * (SIZE - 2.0 * MARGIN)
    }

    fn len(&self, v: f64) -> f64 {
        v / (self.hi - self.lo) * (SIZE - 2.0 * MARGIN)
    }
}

fn header(out: &mut String, height: f64) {
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{height}" viewBox="0 0 {SIZE} {height}">"#
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
}

/// Graph of `map` over `[lo, hi]` with the interpolation nodes marked.
pub fn pl_graph<Q: Scalar>(map: &PLMap<Q>, nodes: &[Q], lo: &Q, hi: &Q) -> String {
    let f = Frame {
        lo: to_f64(lo),
        hi: to_f64(hi),
    };
    let y = |v: f64| SIZE - f.x(v);
    let mut out = String::new();
    header(&mut out, SIZE);
    let _ = writeln!(
        out,
        r##"<line x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}" stroke="#bbb" stroke-dasharray="4 4"/>"##,
        f.x(f.lo),
        y(f.lo),
        f.x(f.hi),
        y(f.hi)
    );
    let mut xs: Vec<Q> = vec![lo.clone()];
    xs.extend(map.breakpoints().iter().filter(|b| *b > lo && *b < hi).cloned());
    xs.push(hi.clone());
    let points: Vec<String> = xs
        .iter()
        .map(|x| format!("{:.3},{:.3}", f.x(to_f64(x)), y(to_f64(&map.eval(x)))))
        .collect();
    let _ = writeln!(
        out,
        r#"<polyline fill="none" stroke="black" stroke-width="1.5" points="{}"/>"#,
        points.join(" ")
    );
    for x in nodes.iter().filter(|x| *x >= lo && *x <= hi) {
        let _ = writeln!(
            out,
            r#"<circle cx="{:.3}" cy="{:.3}" r="2.5" fill="crimson"/>"#,
            f.x(to_f64(x)),
            y(to_f64(&map.eval(x)))
        );
    }
    out.push_str("</svg>\n");
    out
}

/// Endpoints of a leaf on the realized line: halfway between its extreme
/// realized members and their nearest realized non-members.
pub fn leaf_endpoints<C: Coeff, Q: Scalar>(r: &Realization<C, Q>, leaf: &Leaf<C>) -> Option<(Q, Q)> {
    let tag = r.tag();
    let points: Vec<(&Q, bool)> = r
        .assignments()
        .map(|(q, p)| (q, leaf.contains_tagged(p, tag)))
        .collect();
    let first = points.iter().position(|(_, m)| *m)?;
    let last = points.iter().rposition(|(_, m)| *m)?;
    let half = Q::one() / Q::two();
    let left = match first.checked_sub(1) {
        Some(i) => Q::midpoint(points[i].0, points[first].0),
        None => points[first].0.clone() - half.clone(),
    };
    let right = match points.get(last + 1) {
        Some((q, _)) => Q::midpoint(points[last].0, q),
        None => points[last].0.clone() + half,
    };
    Some((left, right))
}

/// Leaves as semicircles over their realized endpoints, clipped to `[lo, hi]`.
pub fn lamination<C: Coeff, Q: Scalar>(r: &Realization<C, Q>, leaves: &[Leaf<C>], lo: &Q, hi: &Q) -> String {
    let f = Frame {
        lo: to_f64(lo),
        hi: to_f64(hi),
    };
    let height = SIZE / 2.0 + MARGIN;
    let base = height - MARGIN;
    let mut out = String::new();
    header(&mut out, height);
    let _ = writeln!(
        out,
        r#"<line x1="{MARGIN}" y1="{base}" x2="{:.3}" y2="{base}" stroke="black"/>"#,
        SIZE - MARGIN
    );
    let _ = writeln!(out, r#"<g fill="none" stroke="navy" stroke-width="0.8">"#);
    for leaf in leaves {
        let Some((a, b)) = leaf_endpoints(r, leaf) else {
            continue;
        };
        if b <= *lo || a >= *hi {
            continue;
        }
        let (x1, x2) = (f.x(to_f64(&a)), f.x(to_f64(&b)));
        let radius = f.len(to_f64(&b) - to_f64(&a)) / 2.0;
        let _ = writeln!(
            out,
            r#"<path d="M {x1:.3} {base} A {radius:.3} {radius:.3} 0 0 1 {x2:.3} {base}"><title>{}</title></path>"#,
            escape(&leaf.to_string())
        );
    }
    out.push_str("</g>\n");
    for (q, _) in r.assignments().filter(|(q, _)| *q >= lo && *q <= hi) {
        let _ = writeln!(
            out,
            r#"<circle cx="{:.3}" cy="{base}" r="1.2" fill="crimson"/>"#,
            f.x(to_f64(q))
        );
    }
    out.push_str("</svg>\n");
    out
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
