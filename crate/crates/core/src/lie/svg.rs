//! Static SVG drawings of cycle scenes.

use std::fmt::Write;

use super::LieCycle;

#[derive(Debug, Clone, PartialEq)]
pub struct DrawStyle {
    pub stroke: String,
}

impl Default for DrawStyle {
    fn default() -> Self {
        DrawStyle {
            stroke: "black".into(),
        }
    }
}

const DEFAULT_BOX: [f64; 4] = [-1.0, -1.0, 1.0, 1.0];

struct View {
    min: [f64; 2],
    max: [f64; 2],
}

impl View {
    fn extent(&self) -> f64 {
        (self.max[0] - self.min[0]).max(self.max[1] - self.min[1])
    }
}

fn bounding_box(cycles: &[LieCycle]) -> View {
    let mut bb: Option<[f64; 4]> = None;
    let mut grow = |x0: f64, y0: f64, x1: f64, y1: f64| {
        bb = Some(match bb {
            None => [x0, y0, x1, y1],
            Some(b) => [b[0].min(x0), b[1].min(y0), b[2].max(x1), b[3].max(y1)],
        });
    };
    for c in cycles {
        match c {
            LieCycle::Circle(c) => {
                let (m, r) = (c.center(), c.radius().abs());
                grow(m[0] - r, m[1] - r, m[0] + r, m[1] + r);
            }
            LieCycle::Point(p) => grow(p[0], p[1], p[0], p[1]),
            LieCycle::Spear(s) => {
                let f = s.foot();
                grow(f[0], f[1], f[0], f[1]);
            }
            LieCycle::Infinity => {}
        }
    }
    let [x0, y0, x1, y1] = bb.unwrap_or(DEFAULT_BOX);
    let size = (x1 - x0).max(y1 - y0);
    let margin = 0.1 * if size > 0.0 { size } else { 1.0 };
    View {
        min: [x0 - margin, y0 - margin],
        max: [x1 + margin, y1 + margin],
    }
}

/// Arrowhead with its tip at `at`, pointing along the unit vector `dir`.
fn arrow(out: &mut String, at: [f64; 2], dir: [f64; 2], size: f64, stroke: &str) {
    let back = [at[0] - dir[0] * size, at[1] - dir[1] * size];
    let side = [-dir[1] * size * 0.5, dir[0] * size * 0.5];
    let _ = writeln!(
        out,
        r#"  <path class="arrow" d="M {:.6} {:.6} L {:.6} {:.6} L {:.6} {:.6} Z" fill="{stroke}"/>"#,
        at[0],
        at[1],
        back[0] + side[0],
        back[1] + side[1],
        back[0] - side[0],
        back[1] - side[1],
    );
}

/// Parameter interval of `foot + t * dir` inside the view.
fn clip(foot: [f64; 2], dir: [f64; 2], view: &View) -> Option<(f64, f64)> {
    let (mut lo, mut hi) = (f64::NEG_INFINITY, f64::INFINITY);
    for k in 0..2 {
        if dir[k].abs() < 1e-15 {
            if foot[k] < view.min[k] || foot[k] > view.max[k] {
                return None;
            }
        } else {
            let a = (view.min[k] - foot[k]) / dir[k];
            let b = (view.max[k] - foot[k]) / dir[k];
            lo = lo.max(a.min(b));
            hi = hi.min(a.max(b));
        }
    }
    (lo < hi).then_some((lo, hi))
}

/// SVG document drawing `cycles`; `styles[i]` applies to `cycles[i]` and
/// missing styles fall back to the default. Infinity is not drawn.
pub fn render_svg(cycles: &[LieCycle], styles: &[DrawStyle]) -> String {
    let view = bounding_box(cycles);
    let ext = view.extent();
    let stroke_width = ext / 300.0;
    let head = ext / 40.0;
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{:.6} {:.6} {:.6} {:.6}">"#,
        view.min[0],
        -view.max[1],
        view.max[0] - view.min[0],
        view.max[1] - view.min[1],
    );
    let _ = writeln!(
        out,
        r#"<g transform="scale(1,-1)" stroke-width="{stroke_width:.6}">"#
    );
    let default = DrawStyle::default();
    for (i, c) in cycles.iter().enumerate() {
        let stroke = styles.get(i).unwrap_or(&default).stroke.as_str();
        match c {
            LieCycle::Circle(c) => {
                let (m, r) = (c.center(), c.radius());
                let _ = writeln!(
                    out,
                    r#"  <circle class="cycle circle" cx="{:.6}" cy="{:.6}" r="{:.6}" fill="none" stroke="{stroke}"/>"#,
                    m[0],
                    m[1],
                    r.abs(),
                );
                let tip = [m[0] + r.abs(), m[1]];
                arrow(&mut out, tip, [0.0, r.signum()], head, stroke);
            }
            LieCycle::Point(p) => {
                let _ = writeln!(
                    out,
                    r#"  <circle class="cycle point" cx="{:.6}" cy="{:.6}" r="{:.6}" fill="{stroke}"/>"#,
                    p[0],
                    p[1],
                    head / 3.0,
                );
            }
            LieCycle::Spear(s) => {
                let (foot, dir) = (s.foot(), s.direction());
                if let Some((lo, hi)) = clip(foot, dir, &view) {
                    let at = |t: f64| [foot[0] + t * dir[0], foot[1] + t * dir[1]];
                    let (p, q) = (at(lo), at(hi));
                    let _ = writeln!(
                        out,
                        r#"  <line class="cycle spear" x1="{:.6}" y1="{:.6}" x2="{:.6}" y2="{:.6}" stroke="{stroke}"/>"#,
                        p[0], p[1], q[0], q[1],
                    );
                    arrow(&mut out, at((lo + hi) / 2.0), dir, head, stroke);
                }
            }
            LieCycle::Infinity => {}
        }
    }
    out.push_str("</g>\n</svg>\n");
    out
}
