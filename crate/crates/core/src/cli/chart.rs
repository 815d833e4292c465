use std::fmt::Write as _;

use num_bigint::BigUint;

use crate::abgroup::FgAbGroup;
use crate::specseq::{Page, PageDifferential, Provenance};

use super::report::visible_entries;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChartFormat {
    Ascii,
    Svg,
}

pub const LEGEND: &str = "□ Z   • Z/2   ⊙ Z_2   2^k Z/2^k";

#[derive(Debug, Clone, PartialEq, Eq)]
enum Glyph {
    Free,
    Pro2,
    Two,
    PowerOfTwo(u64),
    Other(BigUint),
}

impl Glyph {
    fn text(&self) -> String {
        match self {
            Glyph::Free => "□".into(),
            Glyph::Pro2 => "⊙".into(),
            Glyph::Two => "•".into(),
            Glyph::PowerOfTwo(k) => format!("2^{k}"),
            Glyph::Other(n) => format!("Z/{n}"),
        }
    }
}

fn glyphs(g: &FgAbGroup) -> Vec<Glyph> {
    let mut out: Vec<Glyph> = g
        .torsion()
        .iter()
        .map(|n| {
            let k = n.trailing_zeros().unwrap_or(0);
            if *n == BigUint::from(2u8) {
                Glyph::Two
            } else if n.count_ones() == 1 {
                Glyph::PowerOfTwo(k)
            } else {
                Glyph::Other(n.clone())
            }
        })
        .collect();
    let free = if g.is_pro2() {
        Glyph::Pro2
    } else {
        Glyph::Free
    };
    out.extend(std::iter::repeat_n(free, g.free_rank()));
    out
}

/// Draws page `page` in Adams grading (stem across, filtration up) with
/// the differentials of `d` that leave it.
pub fn render_chart(page: &Page, d: Option<&PageDifferential>, format: ChartFormat) -> String {
    match format {
        ChartFormat::Ascii => ascii(page, d),
        ChartFormat::Svg => svg(page, d),
    }
}

fn ascii(page: &Page, d: Option<&PageDifferential>) -> String {
    let w = page.window;
    let label = |s: i64, t: i64| -> String {
        glyphs(&page.group(s, t))
            .iter()
            .map(Glyph::text)
            .collect::<Vec<_>>()
            .join("")
    };
    let mut width = 3;
    for ((s, t), _) in page.nonzero_cells() {
        if w.contains(s, t) {
            width = width.max(label(s, t).chars().count() + 1);
        }
    }
    let mut out = String::new();
    let _ = writeln!(out, "E_{} page", page.r);
    for s in (0..=w.filtration_max).rev() {
        let _ = write!(out, "{s:>3} |");
        for n in w.stem_min..=w.stem_max {
            let l = label(s, n + s);
            let cell = if l.is_empty() { ".".to_string() } else { l };
            let pad = width - cell.chars().count();
            let _ = write!(out, "{}{}", " ".repeat(pad), cell);
        }
        out.push('\n');
    }
    let cols = (w.stem_max - w.stem_min + 1) as usize;
    let _ = writeln!(out, "    +{}", "-".repeat(cols * width));
    let _ = write!(out, "     ");
    for n in w.stem_min..=w.stem_max {
        let _ = write!(out, "{n:>width$}");
    }
    out.push('\n');
    let _ = writeln!(out, "legend: {LEGEND}");
    if let Some(d) = d {
        for e in visible_entries(page, d) {
            let arrow = if e.provenance == Provenance::AssumedZeroUnknown {
                "⇢"
            } else {
                "→"
            };
            let _ = writeln!(
                out,
                "d{} ({},{}) {arrow} ({},{}) [{}]",
                d.r,
                e.source.1 - e.source.0,
                e.source.0,
                e.target.1 - e.target.0,
                e.target.0,
                e.provenance
            );
        }
    }
    out
}

const CELL: i64 = 40;
const MARGIN: i64 = 40;

fn svg(page: &Page, d: Option<&PageDifferential>) -> String {
    let w = page.window;
    let cols = w.stem_max - w.stem_min + 1;
    let rows = w.filtration_max + 1;
    let width = cols * CELL + 2 * MARGIN;
    let height = rows * CELL + 2 * MARGIN + 20;
    let x_of = |n: i64| MARGIN + (n - w.stem_min) * CELL + CELL / 2;
    let y_of = |s: i64| MARGIN + (w.filtration_max - s) * CELL + CELL / 2;

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="10">"#
    );
    out.push_str(
        r#"<defs><marker id="arrow" viewBox="0 0 10 10" refX="9" refY="5" markerWidth="6" markerHeight="6" orient="auto"><path d="M0,0 L10,5 L0,10 z" fill="black"/></marker></defs>"#,
    );
    out.push('\n');
    let _ = writeln!(
        out,
        r#"<text x="{MARGIN}" y="16" font-size="12">E_{} page</text>"#,
        page.r
    );
    for i in 0..=cols {
        let x = MARGIN + i * CELL;
        let _ = writeln!(
            out,
            r##"<line x1="{x}" y1="{MARGIN}" x2="{x}" y2="{}" stroke="#ddd"/>"##,
            MARGIN + rows * CELL
        );
    }
    for j in 0..=rows {
        let y = MARGIN + j * CELL;
        let _ = writeln!(
            out,
            r##"<line x1="{MARGIN}" y1="{y}" x2="{}" y2="{y}" stroke="#ddd"/>"##,
            MARGIN + cols * CELL
        );
    }
    for n in w.stem_min..=w.stem_max {
        let _ = writeln!(
            out,
            r#"<text x="{}" y="{}" text-anchor="middle">{n}</text>"#,
            x_of(n),
            MARGIN + rows * CELL + 14
        );
    }
    for s in 0..=w.filtration_max {
        let _ = writeln!(
            out,
            r#"<text x="{}" y="{}" text-anchor="end">{s}</text>"#,
            MARGIN - 6,
            y_of(s) + 4
        );
    }
    for ((s, t), _) in page.nonzero_cells() {
        if !w.contains(s, t) {
            continue;
        }
        let gs = glyphs(&page.group(s, t));
        let k = gs.len() as i64;
        for (i, g) in gs.iter().enumerate() {
            let cx = x_of(t - s) + (2 * i as i64 - (k - 1)) * 6;
            let cy = y_of(s);
            let _ = match g {
                Glyph::Free => writeln!(
                    out,
                    r#"<rect x="{}" y="{}" width="8" height="8" fill="none" stroke="black"/>"#,
                    cx - 4,
                    cy - 4
                ),
                Glyph::Pro2 => writeln!(
                    out,
                    r#"<circle cx="{cx}" cy="{cy}" r="4.5" fill="none" stroke="black"/><circle cx="{cx}" cy="{cy}" r="1.5" fill="black"/>"#
                ),
                Glyph::Two => writeln!(out, r#"<circle cx="{cx}" cy="{cy}" r="3" fill="black"/>"#),
                _ => writeln!(
                    out,
                    r#"<text x="{cx}" y="{}" text-anchor="middle">{}</text>"#,
                    cy + 4,
                    g.text()
                ),
            };
        }
    }
    if let Some(d) = d {
        for e in visible_entries(page, d) {
            let (x1, y1) = (x_of(e.source.1 - e.source.0), y_of(e.source.0));
            let (x2, y2) = (x_of(e.target.1 - e.target.0), y_of(e.target.0));
            let dash = if e.provenance == Provenance::AssumedZeroUnknown {
                r#" stroke-dasharray="4 3""#
            } else {
                ""
            };
            let _ = writeln!(
                out,
                r#"<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="black"{dash} marker-end="url(#arrow)"/>"#
            );
            let _ = writeln!(
                out,
                r#"<text x="{}" y="{}" font-size="9">{}</text>"#,
                (x1 + x2) / 2 + 3,
                (y1 + y2) / 2,
                d.r
            );
        }
    }
    let _ = writeln!(
        out,
        r#"<text x="{MARGIN}" y="{}">{LEGEND}</text>"#,
        height - 6
    );
    out.push_str("</svg>\n");
    out
}
