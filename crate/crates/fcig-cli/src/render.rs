//! SVG drawing of a representation: points evenly spaced on a circle,
//! vertices as dots stacked outward from their point, intervals as arcs on
//! distinct inner radii, and chosen fuzzy edges as dashed chords.

use std::f64::consts::PI;
use std::fmt::Write;

use fcig_core::Representation;

const SIZE: f64 = 480.0;
const RADIUS: f64 = 150.0;
const STACK: f64 = 12.0;

fn polar(radius: f64, point: usize, count: usize) -> (f64, f64) {
    let angle = 2.0 * PI * point as f64 / count as f64 - PI / 2.0;
    (SIZE / 2.0 + radius * angle.cos(), SIZE / 2.0 + radius * angle.sin())
}

pub fn svg(rep: &Representation) -> String {
    let p = rep.point_count.max(1);
    let k = rep.intervals.len();
    let ring = if k == 0 { 0.0 } else { (RADIUS - 30.0) / k as f64 };
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(out, r##"<rect width="100%" height="100%" fill="#ffffff"/>"##);
    for x in 0..rep.point_count {
        let (cx, cy) = polar(RADIUS, x, p);
        let _ = writeln!(out, r##"<circle class="point" id="point{x}" cx="{cx:.2}" cy="{cy:.2}" r="2" fill="#999999"/>"##);
    }
    for (i, a) in rep.intervals.iter().enumerate() {
        let r = RADIUS - 12.0 - ring * i as f64;
        let (x0, y0) = polar(r, a.start, p);
        let (x1, y1) = polar(r, a.end, p);
        let large = u8::from(2 * a.span(p) > p);
        let _ = writeln!(
            out,
            r##"<path class="interval" id="interval{}" d="M {x0:.2} {y0:.2} A {r:.2} {r:.2} 0 {large} 1 {x1:.2} {y1:.2}" fill="none" stroke="#3366cc" stroke-width="2"/>"##,
            i + 1
        );
    }
    let mut dot = vec![(0.0, 0.0); rep.vertex_count()];
    for (x, occ) in rep.occupants().iter().enumerate() {
        for (depth, &v) in occ.iter().enumerate() {
            dot[v] = polar(RADIUS + 12.0 + STACK * depth as f64, x, p);
        }
    }
    for (i, &(u, v)) in rep.fuzzy_edges.iter().enumerate() {
        let ((x0, y0), (x1, y1)) = (dot[u], dot[v]);
        let _ = writeln!(
            out,
            r##"<line class="fuzzy" id="fuzzy{}" x1="{x0:.2}" y1="{y0:.2}" x2="{x1:.2}" y2="{y1:.2}" stroke="#cc3333" stroke-dasharray="5,4"/>"##,
            i + 1
        );
    }
    for (v, &(cx, cy)) in dot.iter().enumerate() {
        let _ = writeln!(
            out,
            r##"<circle class="vertex" id="vertex{}" cx="{cx:.2}" cy="{cy:.2}" r="5" fill="#222222"><title>{}</title></circle>"##,
            v + 1,
            v + 1
        );
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use fcig_core::{Arc, Kind};

    fn count(s: &str, class: &str) -> usize {
        s.matches(&format!(r#"class="{class}""#)).count()
    }

    #[test]
    fn two_point_c4() {
        let rep = Representation::new(
            Kind::Circular,
            3,
            vec![0, 0, 1, 1],
            vec![Arc::new(0, 1)],
            vec![(0, 3), (1, 2)],
        );
        let s = svg(&rep);
        assert_eq!(count(&s, "vertex"), 4);
        assert_eq!(count(&s, "interval"), 1);
        assert_eq!(count(&s, "fuzzy"), 2);
    }

    #[test]
    fn edgeless() {
        let rep = Representation::new(Kind::Circular, 3, vec![0, 1, 2], Vec::new(), Vec::new());
        let s = svg(&rep);
        assert_eq!(count(&s, "vertex"), 3);
        assert_eq!(count(&s, "interval"), 0);
    }
}
