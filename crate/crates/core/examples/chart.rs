//! Charts of the Picard spectral sequence: ASCII to stdout, SVG to a file.
//!
//!     cargo run --example chart -- [page] [out.svg]

use c2sseq::cli::{render_chart, ChartFormat};
use c2sseq::scenarios::{builtin, run_scenario};
use c2sseq::specseq::{Overrides, DEFAULT_MAX_PAGE};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let r: Option<usize> = args.next().map(|a| a.parse()).transpose()?;
    let svg_path = args.next().unwrap_or_else(|| "pic.svg".into());

    let out = run_scenario(
        &builtin("pic-kgl-2adic")?,
        DEFAULT_MAX_PAGE,
        &Overrides::new(),
    )?;
    let run = out.run.as_ref().unwrap();
    let page = match r {
        Some(r) => run.page(r).ok_or("page not computed")?,
        None => run.einfty(),
    };
    let d = run.differentials.iter().find(|d| d.r == page.r);
    print!("{}", render_chart(page, d, ChartFormat::Ascii));
    std::fs::write(&svg_path, render_chart(page, d, ChartFormat::Svg))?;
    println!("wrote {svg_path}");
    Ok(())
}
