//! Static SVG figures of parameter boxes and projected cube sets.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::cubical::CubicalSet;
use crate::henon::Param;

const SIZE: f64 = 600.0;
const MARGIN: f64 = 20.0;

struct Canvas {
    x0: f64,
    x1: f64,
    y0: f64,
    y1: f64,
    body: String,
}

impl Canvas {
    fn new(x: (f64, f64), y: (f64, f64)) -> Canvas {
        let pad = |(a, b): (f64, f64)| if b > a { (a, b) } else { (a - 0.5, a + 0.5) };
        let (x0, x1) = pad(x);
        let (y0, y1) = pad(y);
        Canvas {
            x0,
            x1,
            y0,
            y1,
            body: String::new(),
        }
    }

    fn px(&self, x: f64) -> f64 {
        MARGIN + (x - self.x0) / (self.x1 - self.x0) * SIZE
    }

    // SVG y grows downward.
    fn py(&self, y: f64) -> f64 {
        MARGIN + (self.y1 - y) / (self.y1 - self.y0) * SIZE
    }

    fn rect(&mut self, x: (f64, f64), y: (f64, f64), fill: &str) {
        let (l, r) = (self.px(x.0), self.px(x.1));
        let (t, b) = (self.py(y.1), self.py(y.0));
        let _ = writeln!(
            self.body,
            r#"<rect x="{l:.3}" y="{t:.3}" width="{:.3}" height="{:.3}" fill="{fill}"/>"#,
            (r - l).max(0.2),
            (b - t).max(0.2)
        );
    }

    fn finish(self, title: &str) -> String {
        let w = SIZE + 2.0 * MARGIN;
        let mut out = String::new();
        let _ = writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{w}" viewBox="0 0 {w} {w}">"#
        );
        let _ = writeln!(out, "<title>{title}</title>");
        let _ = writeln!(
            out,
            r#"<rect x="{MARGIN}" y="{MARGIN}" width="{SIZE}" height="{SIZE}" fill="white" stroke="black"/>"#
        );
        out.push_str(&self.body);
        out.push_str("</svg>\n");
        out
    }
}

fn coord(p: &Param, k: usize) -> (f64, f64) {
    let i = match k {
        0 => p.a().re,
        1 => p.a().im,
        2 => p.c().re,
        _ => p.c().im,
    };
    (i.lo(), i.hi())
}

/// Shaded parameter boxes projected on parameter coordinates
/// `(0, 1, 2, 3) = (Re a, Im a, Re c, Im c)`.
pub fn render_boxes(boxes: &[Param], axes: (usize, usize), title: &str) -> String {
    let span = |k: usize| {
        boxes.iter().map(|p| coord(p, k)).fold((f64::INFINITY, f64::NEG_INFINITY), |acc, r| {
            (acc.0.min(r.0), acc.1.max(r.1))
        })
    };
    let mut c = if boxes.is_empty() {
        Canvas::new((0.0, 1.0), (0.0, 1.0))
    } else {
        Canvas::new(span(axes.0), span(axes.1))
    };
    for p in boxes {
        c.rect(coord(p, axes.0), coord(p, axes.1), "#7a7a7a");
    }
    c.finish(title)
}

/// Projection of a cube set onto two phase-space axes; with labels, cells
/// holding only 0-cubes are light, only 1-cubes dark, both mid-gray.
pub fn render_cubes(set: &CubicalSet, labels: Option<&[u8]>, axes: (usize, usize), title: &str) -> String {
    let g = set.grid();
    let dom = g.domain();
    let mut c = Canvas::new(
        (dom[axes.0].lo(), dom[axes.0].hi()),
        (dom[axes.1].lo(), dom[axes.1].hi()),
    );
    let mut cells: BTreeMap<(u32, u32), u8> = BTreeMap::new();
    for (i, id) in set.iter().enumerate() {
        let k = g.unpack(id);
        let bit = match labels.map(|l| l[i]) {
            Some(0) => 1,
            Some(1) => 2,
            Some(_) => 4,
            None => 2,
        };
        *cells.entry((k[axes.0], k[axes.1])).or_default() |= bit;
    }
    for ((i, j), bits) in cells {
        let mut probe = g.unpack(set.cubes()[0]);
        probe[axes.0] = i;
        probe[axes.1] = j;
        let b = g.cube_box(g.pack(&probe[..g.dim()]));
        let fill = match bits {
            1 => "#c8c8c8",
            2 => "#404040",
            4 => "#e8b0b0",
            _ => "#8a8a8a",
        };
        c.rect(
            (b[axes.0].lo(), b[axes.0].hi()),
            (b[axes.1].lo(), b[axes.1].hi()),
            fill,
        );
    }
    c.finish(title)
}
