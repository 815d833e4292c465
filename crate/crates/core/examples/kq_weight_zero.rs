//! Weight-zero line of a motivic presentation with weights.

use c2sseq::scenarios::{builtin, run_scenario};
use c2sseq::specseq::{Overrides, DEFAULT_MAX_PAGE};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let scenario = builtin("kq-weight0")?;
    let ring = scenario.presentation.as_ref().unwrap();
    for g in ring.generators() {
        println!("{}: (t, s, w) = ({}, {}, {:?})", g.name, g.t, g.s, g.weight);
    }
    let out = run_scenario(&scenario, DEFAULT_MAX_PAGE, &Overrides::new())?;
    for c in &out.stems {
        let gr: Vec<String> = c.gr.iter().map(|(s, g)| format!("{g}@{s}")).collect();
        println!("stem {}: {}", c.stem, gr.join(" "));
    }
    println!("matches ko pattern: {}", out.success());
    Ok(())
}
