//! Homotopy fixed points of KU under complex conjugation: the E∞ page and
//! the abutment in stems 0..8.

use c2sseq::scenarios::{builtin, run_scenario};
use c2sseq::specseq::{Overrides, DEFAULT_MAX_PAGE};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let scenario = builtin("ko-endo")?;
    let out = run_scenario(&scenario, DEFAULT_MAX_PAGE, &Overrides::new())?;

    for (page, diffs) in &out.generator_diffs {
        let ring = out.ring.as_ref().unwrap();
        for (g, d) in ring.generators().iter().zip(diffs) {
            println!("d{page}({}) = {}", g.name, ring.format(d));
        }
    }
    println!();
    for c in out.stems.iter().filter(|c| (0..=8).contains(&c.stem)) {
        let gr: Vec<String> = c.gr.iter().map(|(s, g)| format!("s={s}: {g}")).collect();
        println!(
            "pi_{} = {}   [{}]",
            c.stem,
            c.expected.as_ref().map_or("?".into(), |g| g.symbol()),
            gr.join(", ")
        );
    }
    println!("\nall stems match: {}", out.success());
    Ok(())
}
