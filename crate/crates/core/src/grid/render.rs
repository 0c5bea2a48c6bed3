//! Deterministic text and SVG rendering. Vertical arcs draw in front of
//! horizontal arcs, matching the crossing convention.

use std::fmt::Write as _;

use super::RectDiagram;

impl RectDiagram {
    /// ASCII picture: one cell per (theta, z), `-` for horizontal arcs, `|`
    /// for vertical arcs (drawn on top), `+` at corners. Row 0 is the top.
    pub fn render_ascii(&self) -> String {
        let w = 2 * self.width;
        let h = self.height;
        let mut canvas = vec![vec![' '; w]; h];
        for arc in &self.horizontals {
            let row = self.height - 1 - arc.z;
            for off in 0..=arc.sweep(self.width) {
                let theta = (arc.theta_from + off) % self.width;
                canvas[row][2 * theta] = '-';
                if off < arc.sweep(self.width) {
                    canvas[row][(2 * theta + 1) % w] = '-';
                }
            }
        }
        for v in &self.verticals {
            let col = 2 * v.theta;
            for z in v.lo()..=v.hi() {
                let row = self.height - 1 - z;
                canvas[row][col] = if z == v.lo() || z == v.hi() { '+' } else { '|' };
            }
        }
        let mut out = String::new();
        for row in canvas {
            let line: String = row.into_iter().collect();
            out.push_str(line.trim_end());
            out.push('\n');
        }
        out
    }

    /// Standalone SVG with a fixed 32-px slot pitch; vertical arcs drawn last
    /// so they appear in front.
    pub fn render_svg(&self) -> String {
        const PITCH: usize = 32;
        const MARGIN: usize = 16;
        let px = |slot: usize| MARGIN + slot * PITCH;
        let py = |z: usize| MARGIN + (self.height - 1 - z) * PITCH;
        let mut out = String::new();
        let width = 2 * MARGIN + PITCH * self.width.max(1);
        let height = 2 * MARGIN + PITCH * self.height.max(1);
        let _ = writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
        );
        let _ = writeln!(out, r#"<rect width="{width}" height="{height}" fill="white"/>"#);
        for h in &self.horizontals {
            let y = py(h.z);
            // draw the forward sweep, splitting at the wrap
            let mut runs: Vec<(usize, usize)> = Vec::new();
            if h.theta_from <= h.theta_to {
                runs.push((h.theta_from, h.theta_to));
            } else {
                runs.push((h.theta_from, self.width - 1));
                runs.push((0, h.theta_to));
            }
            for (a, b) in runs {
                let _ = writeln!(
                    out,
                    r#"<line x1="{}" y1="{y}" x2="{}" y2="{y}" stroke="black" stroke-width="2"/>"#,
                    px(a),
                    if h.theta_from > h.theta_to && b == self.width - 1 {
                        px(b) + PITCH / 2
                    } else {
                        px(b)
                    }
                );
            }
            if h.theta_from > h.theta_to {
                let _ = writeln!(
                    out,
                    r#"<line x1="{}" y1="{y}" x2="{}" y2="{y}" stroke="black" stroke-width="2"/>"#,
                    px(0).saturating_sub(PITCH / 2),
                    px(0)
                );
            }
        }
        for v in &self.verticals {
            let x = px(v.theta);
            let _ = writeln!(
                out,
                r#"<line x1="{x}" y1="{}" x2="{x}" y2="{}" stroke="crimson" stroke-width="3"/>"#,
                py(v.lo()),
                py(v.hi())
            );
        }
        out.push_str("</svg>\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::super::RectDiagram;

    #[test]
    fn rendering_is_deterministic() {
        let d = RectDiagram::minimal_unknot();
        assert_eq!(d.render_ascii(), d.render_ascii());
        assert_eq!(d.render_svg(), d.render_svg());
        assert!(d.render_svg().starts_with("<svg"));
    }
}
