//! SVG 1.1 rendering of the extended diagram around the principal underarc.

use std::fmt::Write;

use twobridge_core::diagram::{signed_crossings, ArcKind, GridPoint, UnderarcTrace};

/// Largest `p + q` accepted for rendering.
pub const RENDER_BOUND: u64 = 200;

const MARGIN: i64 = 40;
const COL: i64 = 80;
const ROW: i64 = 18;

struct Layout {
    top_label: i64,
}

impl Layout {
    fn x(&self, line: i64) -> i64 {
        MARGIN + line * COL
    }

    fn y(&self, label: i64) -> i64 {
        MARGIN + (self.top_label - label) * ROW
    }

    fn at(&self, pt: GridPoint) -> (i64, i64) {
        (self.x(pt.line), self.y(pt.label))
    }
}

/// Renders the grid lines `W_0..=W_l`, with overarc segments emphasised,
/// the principal underarc and one sign annotation per crossing.
pub fn render(t: &UnderarcTrace) -> String {
    let p = t.pair.p() as i64;
    let half = (t.pair.q() as i64 - 1) / 2;
    let lay = Layout { top_label: p + half };
    let lines = t.length as i64 + 1;
    let width = 2 * MARGIN + (lines - 1) * COL;
    let height = 2 * MARGIN + (p + 2 * half) * ROW;

    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    let sigma: i64 = signed_crossings(t).iter().map(|c| i64::from(c.sign)).sum();
    let _ = writeln!(
        s,
        r#"<title>two-bridge type ({},{}): l={}, signature={}</title>"#,
        t.pair.p(),
        t.pair.q(),
        t.length,
        sigma
    );
    s.push_str(
        "<style>.grid{stroke:#bbb;stroke-width:1}.overarc{stroke:#000;stroke-width:4}\
         .underarc{fill:none;stroke:#1a7f37;stroke-width:2}.mark{fill:#555}\
         .label{font:10px sans-serif;fill:#555}.sign{font:bold 12px sans-serif}</style>\n",
    );

    for line in 0..lines {
        let x = lay.x(line);
        let _ = writeln!(
            s,
            r#"<line class="grid" x1="{x}" y1="{}" x2="{x}" y2="{}"/>"#,
            lay.y(p + half),
            lay.y(-half)
        );
        let _ = writeln!(
            s,
            r#"<line class="overarc" data-line="{line}" x1="{x}" y1="{}" x2="{x}" y2="{}"/>"#,
            lay.y(p),
            lay.y(0)
        );
        for label in 0..=p {
            let _ = writeln!(s, r#"<circle class="mark" cx="{x}" cy="{}" r="2"/>"#, lay.y(label));
        }
        let _ = writeln!(s, r#"<text class="label" x="{}" y="{}">W{line}</text>"#, x - 8, MARGIN / 2);
    }
    for label in 0..=p {
        let _ = writeln!(
            s,
            r#"<text class="label" x="4" y="{}">{label}</text>"#,
            lay.y(label) + 3
        );
    }

    let (x0, y0) = lay.at(t.points[0]);
    let mut d = format!("M {x0} {y0}");
    for arc in &t.arcs {
        let (x, y) = lay.at(arc.endpoints.1);
        match arc.kind {
            ArcKind::Connecting => {
                let _ = write!(d, " L {x} {y}");
            }
            ArcKind::BottomLoop | ArcKind::TopLoop => {
                let bulge = if arc.kind == ArcKind::BottomLoop { -COL / 2 } else { COL / 2 };
                let (_, ya) = lay.at(arc.endpoints.0);
                let _ = write!(d, " Q {} {} {x} {y}", x + bulge, (ya + y) / 2);
            }
        }
    }
    let _ = writeln!(s, r#"<path class="underarc" d="{d}"/>"#);

    for c in signed_crossings(t) {
        let (x, y) = lay.at(c.at);
        let (glyph, colour, value) = if c.sign > 0 { ("+", "#0550ae", "+1") } else { ("\u{2212}", "#cf222e", "-1") };
        let _ = writeln!(
            s,
            r#"<text class="sign" data-sign="{value}" x="{}" y="{}" fill="{colour}">{glyph}</text>"#,
            x + 5,
            y - 3
        );
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use twobridge_core::{trace_principal_underarc, AdmissiblePair};

    fn svg(p: u64, q: u64) -> String {
        render(&trace_principal_underarc(AdmissiblePair::new(p, q).unwrap()).unwrap())
    }

    fn signs(doc: &roxmltree::Document) -> Vec<i64> {
        doc.descendants()
            .filter(|n| n.attribute("class") == Some("sign"))
            .map(|n| n.attribute("data-sign").unwrap().parse().unwrap())
            .collect()
    }

    fn overarcs(doc: &roxmltree::Document) -> usize {
        doc.descendants().filter(|n| n.attribute("class") == Some("overarc")).count()
    }

    #[test]
    fn four_three() {
        let text = svg(4, 3);
        let doc = roxmltree::Document::parse(&text).unwrap();
        assert_eq!(overarcs(&doc), 3);
        let s = signs(&doc);
        assert_eq!(s.len(), 3);
        assert_eq!(s.iter().sum::<i64>(), 1);
    }

    #[test]
    fn unknot() {
        let text = svg(1, 1);
        let doc = roxmltree::Document::parse(&text).unwrap();
        assert_eq!(overarcs(&doc), 2);
        assert!(signs(&doc).is_empty());
    }

    #[test]
    fn figure_eight() {
        let text = svg(5, 3);
        let doc = roxmltree::Document::parse(&text).unwrap();
        let s = signs(&doc);
        assert_eq!(s.len(), 4);
        assert_eq!(s.iter().filter(|&&v| v == 1).count(), 2);
        assert_eq!(s.iter().filter(|&&v| v == -1).count(), 2);
    }
}
