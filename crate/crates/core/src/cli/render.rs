//! ASCII and SVG drawings of a polyomino with optional facet and rook overlays.

use std::collections::BTreeSet;
use std::fmt::Write;

use crate::complex::{corner_candidates, Facet};
use crate::grid::{Cell, GridPoint, Polyomino};
use crate::rooks::RookConfig;

/// SVG units per cell side.
pub const SCALE: i32 = 24;
const PAD: i32 = 12;

#[derive(Debug, Clone, Default)]
pub struct Overlay {
    pub facet: Option<Facet>,
    pub rooks: Option<RookConfig>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OverlayOutOfRange(pub String);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Mark {
    Plain,
    Facet,
    Step,
    NonStep,
}

struct Marks {
    vertices: BTreeSet<GridPoint>,
    steps: BTreeSet<GridPoint>,
    non_steps: BTreeSet<GridPoint>,
    rooks: BTreeSet<Cell>,
}

impl Marks {
    fn new(p: &Polyomino, overlay: &Overlay) -> Result<Self, OverlayOutOfRange> {
        let mut marks = Marks {
            vertices: BTreeSet::new(),
            steps: BTreeSet::new(),
            non_steps: BTreeSet::new(),
            rooks: BTreeSet::new(),
        };
        if let Some(f) = &overlay.facet {
            for &v in f.sorted() {
                if !p.has_vertex(v) {
                    return Err(OverlayOutOfRange(format!("facet vertex {v} is not a vertex of the polyomino")));
                }
                marks.vertices.insert(v);
            }
            for s in corner_candidates(p, f) {
                if p.lower_right_cell(s.corner).is_some() {
                    marks.steps.insert(s.corner);
                } else {
                    marks.non_steps.insert(s.corner);
                }
            }
        }
        if let Some(r) = &overlay.rooks {
            for &c in r.rooks() {
                if !p.contains(c) {
                    return Err(OverlayOutOfRange(format!("rook cell {c} is not a cell of the polyomino")));
                }
                marks.rooks.insert(c);
            }
        }
        Ok(marks)
    }

    fn mark(&self, v: GridPoint) -> Mark {
        if self.steps.contains(&v) {
            Mark::Step
        } else if self.non_steps.contains(&v) {
            Mark::NonStep
        } else if self.vertices.contains(&v) {
            Mark::Facet
        } else {
            Mark::Plain
        }
    }
}

/// Text drawing, top row first. Vertices are `+`, facet vertices `o`, step
/// corners `*`, rejected corners `x`; cells show `.` or `R` for a rook.
pub fn render_ascii(p: &Polyomino, overlay: &Overlay) -> Result<String, OverlayOutOfRange> {
    let marks = Marks::new(p, overlay)?;
    let (lo, hi) = p.bounding_box();
    let mut out = String::new();
    for j in (lo.j..=hi.j).rev() {
        let mut line = String::new();
        for i in lo.i..=hi.i {
            let v = GridPoint::new(i, j);
            line.push(if !p.has_vertex(v) {
                ' '
            } else {
                match marks.mark(v) {
                    Mark::Plain => '+',
                    Mark::Facet => 'o',
                    Mark::Step => '*',
                    Mark::NonStep => 'x',
                }
            });
            if i < hi.i {
                line.push_str(if p.has_unit_edge(v, v.offset(1, 0)) { "---" } else { "   " });
            }
        }
        out.push_str(line.trim_end());
        out.push('\n');
        if j == lo.j {
            break;
        }
        let mut line = String::new();
        for i in lo.i..=hi.i {
            let v = GridPoint::new(i, j - 1);
            line.push(if p.has_unit_edge(v, v.offset(0, 1)) { '|' } else { ' ' });
            if i < hi.i {
                let c = Cell { llc: v };
                line.push_str(if marks.rooks.contains(&c) {
                    " R "
                } else if p.contains(c) {
                    " . "
                } else {
                    "   "
                });
            }
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    Ok(out)
}

/// SVG drawing at [`SCALE`] units per cell. Cells come first, then edges,
/// vertex marks and rooks, each group in sorted order.
pub fn render_svg(p: &Polyomino, overlay: &Overlay) -> Result<String, OverlayOutOfRange> {
    let marks = Marks::new(p, overlay)?;
    let (lo, hi) = p.bounding_box();
    let width = (hi.i - lo.i) * SCALE + 2 * PAD;
    let height = (hi.j - lo.j) * SCALE + 2 * PAD;
    let x = |i: i32| PAD + (i - lo.i) * SCALE;
    let y = |j: i32| PAD + (hi.j - j) * SCALE;
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    for c in p.cells() {
        let _ = writeln!(
            s,
            r##"<rect x="{}" y="{}" width="{SCALE}" height="{SCALE}" fill="#dde6f0" stroke="none"/>"##,
            x(c.llc.i),
            y(c.llc.j + 1)
        );
    }
    for (u, v) in p.edges() {
        let _ = writeln!(
            s,
            r##"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="#334" stroke-width="1"/>"##,
            x(u.i),
            y(u.j),
            x(v.i),
            y(v.j)
        );
    }
    for &v in p.vertices().iter().filter(|&&v| marks.mark(v) != Mark::Plain).collect::<BTreeSet<_>>() {
        let (fill, r) = match marks.mark(v) {
            Mark::Facet => ("#1f5fbf", 4),
            Mark::Step => ("#d03020", 5),
            Mark::NonStep => ("#888888", 5),
            Mark::Plain => unreachable!(),
        };
        let _ = writeln!(s, r#"<circle cx="{}" cy="{}" r="{r}" fill="{fill}"/>"#, x(v.i), y(v.j));
    }
    for c in &marks.rooks {
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{}" font-size="16" text-anchor="middle" dominant-baseline="central">R</text>"#,
            x(c.llc.i) + SCALE / 2,
            y(c.llc.j) - SCALE / 2
        );
    }
    s.push_str("</svg>\n");
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_cell() {
        let c1 = Polyomino::from_cells([Cell::new(1, 1)]).unwrap();
        assert_eq!(render_ascii(&c1, &Overlay::default()).unwrap(), "+---+\n| . |\n+---+\n");
        let rooks = Overlay { facet: None, rooks: Some(RookConfig::new(vec![Cell::new(1, 1)])) };
        assert_eq!(render_ascii(&c1, &rooks).unwrap(), "+---+\n| R |\n+---+\n");
        let svg = render_svg(&c1, &rooks).unwrap();
        assert!(svg.starts_with("<svg") && svg.contains(">R</text>"));
        let off = Overlay { facet: None, rooks: Some(RookConfig::new(vec![Cell::new(2, 1)])) };
        assert!(render_ascii(&c1, &off).is_err());
    }
}
