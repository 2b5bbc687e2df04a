//! Deterministic SVG diagrams for trees and interval configurations.
//!
//! Identical inputs produce byte-identical documents: all geometry derives
//! from integer grid positions and exact rationals formatted to two decimal
//! places.

use std::fmt::Write;

use num_traits::ToPrimitive;
use operads::tree::{Branch, Color, Tree};
use operads::swiss_cheese::Config;
use operads::Q;

const LEAF_DX: f64 = 52.0;
const LEVEL_DY: f64 = 64.0;
const MARGIN: f64 = 26.0;

fn px(v: f64) -> String {
    format!("{v:.2}")
}

struct TreeLayout {
    lines: Vec<(f64, f64, f64, f64)>,
    labels: Vec<(f64, f64, String)>,
    leaves: Vec<(f64, f64, char)>,
    width: f64,
    height: f64,
}

fn depth_of<L>(ch: &[Branch<L>]) -> usize {
    ch.iter()
        .map(|b| match b {
            Branch::Leaf => 1,
            Branch::Edge(_, gch) => 1 + depth_of(gch),
        })
        .max()
        .unwrap_or(1)
}

fn layout_tree(t: &Tree<Q>, color: Color) -> TreeLayout {
    let leaf_count = t.leaf_count().max(1);
    let depth = match t {
        Tree::Unit => 1,
        Tree::Rooted(ch) => depth_of(ch),
    };
    let height = MARGIN * 2.0 + LEVEL_DY * (depth as f64) + 30.0;
    let mut out = TreeLayout {
        lines: Vec::new(),
        labels: Vec::new(),
        leaves: Vec::new(),
        width: MARGIN * 2.0 + LEAF_DX * ((leaf_count - 1) as f64).max(0.5),
        height,
    };
    let leaf_y = MARGIN;
    let mut next_leaf = 0usize;
    let open_last = color == Color::Open;

    // returns the x position of the subtree root
    fn place(
        ch: &[Branch<Q>],
        y: f64,
        out: &mut TreeLayout,
        next_leaf: &mut usize,
        leaf_y: f64,
        total_leaves: usize,
        open_last: bool,
    ) -> f64 {
        let mut xs = Vec::with_capacity(ch.len());
        for b in ch {
            match b {
                Branch::Leaf => {
                    let x = MARGIN + LEAF_DX * (*next_leaf as f64);
                    let glyph = if open_last && *next_leaf + 1 == total_leaves {
                        'o'
                    } else {
                        '*'
                    };
                    *next_leaf += 1;
                    out.leaves.push((x, leaf_y - 8.0, glyph));
                    xs.push((x, leaf_y));
                }
                Branch::Edge(l, gch) => {
                    let x = place(gch, y - LEVEL_DY, out, next_leaf, leaf_y, total_leaves, open_last);
                    out.labels
                        .push((x + 6.0, y - LEVEL_DY / 2.0, l.to_string()));
                    xs.push((x, y - LEVEL_DY));
                }
            }
        }
        let x = if xs.is_empty() {
            MARGIN + LEAF_DX * (*next_leaf as f64)
        } else {
            xs.iter().map(|(x, _)| *x).sum::<f64>() / xs.len() as f64
        };
        for (cx, cy) in &xs {
            out.lines.push((x, y, *cx, *cy));
        }
        x
    }

    match t {
        Tree::Unit => {
            let x = MARGIN;
            out.leaves
                .push((x, leaf_y - 8.0, if open_last { 'o' } else { '*' }));
            out.lines.push((x, leaf_y + LEVEL_DY, x, leaf_y));
        }
        Tree::Rooted(ch) => {
            let root_y = leaf_y + LEVEL_DY * (depth as f64);
            let x = place(
                ch,
                root_y,
                &mut out,
                &mut next_leaf,
                leaf_y,
                leaf_count,
                open_last,
            );
            // the outgoing root edge
            out.lines.push((x, root_y + 30.0, x, root_y));
        }
    }
    out
}

/// A tree drawn with its leaves on top and the root edge at the bottom.
pub fn tree_svg(t: &Tree<Q>, color: Color) -> String {
    let l = layout_tree(t, color);
    let mut s = String::new();
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\">",
        px(l.width + MARGIN),
        px(l.height),
        px(l.width + MARGIN),
        px(l.height)
    );
    for (x1, y1, x2, y2) in &l.lines {
        let _ = writeln!(
            s,
            "  <line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\" stroke-width=\"1.5\"/>",
            px(*x1),
            px(*y1),
            px(*x2),
            px(*y2)
        );
    }
    for (x, y, text) in &l.labels {
        let _ = writeln!(
            s,
            "  <text x=\"{}\" y=\"{}\" font-size=\"12\" font-family=\"monospace\">{}</text>",
            px(*x),
            px(*y),
            text
        );
    }
    for (x, y, glyph) in &l.leaves {
        let _ = writeln!(
            s,
            "  <text x=\"{}\" y=\"{}\" font-size=\"14\" font-family=\"monospace\" text-anchor=\"middle\">{}</text>",
            px(*x),
            px(*y),
            glyph
        );
    }
    s.push_str("</svg>\n");
    s
}

fn interval_rect(s: &mut String, a: &Q, b: &Q, y: f64, h: f64, fill: &str) {
    let scale = 440.0;
    let x0 = 30.0 + scale * a.to_f64().unwrap_or(0.0);
    let x1 = 30.0 + scale * b.to_f64().unwrap_or(0.0);
    let _ = writeln!(
        s,
        "  <rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"{}\" stroke=\"black\"/>",
        px(x0),
        px(y),
        px(x1 - x0),
        px(h),
        fill
    );
    let _ = writeln!(
        s,
        "  <text x=\"{}\" y=\"{}\" font-size=\"10\" font-family=\"monospace\">[{},{}]</text>",
        px(x0),
        px(y + h + 12.0),
        a,
        b
    );
}

/// The symmetric [−1,1] display of an open configuration: mirrored side
/// intervals around the central one.
pub fn symmetric_svg(o: &operads::swiss_cheese::OpenConfig<Q>) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"500\" height=\"110\" viewBox=\"0 0 500 110\">"
    );
    let _ = writeln!(
        s,
        "  <rect x=\"30.00\" y=\"20.00\" width=\"440.00\" height=\"50.00\" fill=\"none\" stroke=\"black\" stroke-width=\"2\"/>"
    );
    let scale = 220.0;
    for (k, (a, b)) in o.to_symmetric().iter().enumerate() {
        let dist = o.distinguished().is_some() && k == o.closed_slots().len();
        let x0 = 250.0 + scale * a.to_f64().unwrap_or(0.0);
        let x1 = 250.0 + scale * b.to_f64().unwrap_or(0.0);
        let _ = writeln!(
            s,
            "  <rect x=\"{}\" y=\"30.00\" width=\"{}\" height=\"30.00\" fill=\"{}\" stroke=\"black\"/>",
            px(x0),
            px(x1 - x0),
            if dist { "#ffe0b0" } else { "#cfe2ff" }
        );
        let _ = writeln!(
            s,
            "  <text x=\"{}\" y=\"72.00\" font-size=\"10\" font-family=\"monospace\">[{},{}]</text>",
            px(x0),
            a,
            b
        );
    }
    s.push_str("</svg>\n");
    s
}

/// Interval configurations drawn as little rectangles in the unit ruler.
pub fn config_svg(c: &Config<Q>) -> String {
    use num_traits::One;
    let mut s = String::new();
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"500\" height=\"110\" viewBox=\"0 0 500 110\">"
    );
    // the ambient interval
    let _ = writeln!(
        s,
        "  <rect x=\"30.00\" y=\"20.00\" width=\"440.00\" height=\"50.00\" fill=\"none\" stroke=\"black\" stroke-width=\"2\"/>"
    );
    match c {
        Config::Closed(cc) => {
            for (a, b) in cc.intervals() {
                interval_rect(&mut s, a, b, 30.0, 30.0, "#cfe2ff");
            }
        }
        Config::Open(oc) => {
            for (a, b) in oc.closed_slots() {
                interval_rect(&mut s, a, b, 30.0, 30.0, "#cfe2ff");
            }
            if let Some(a) = oc.distinguished() {
                interval_rect(&mut s, a, &Q::one(), 30.0, 30.0, "#ffe0b0");
            }
        }
    }
    s.push_str("</svg>\n");
    s
}
