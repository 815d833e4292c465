//! The classical case: Pic(KO) = Z/8 from the Picard spectral sequence of
//! KU with its C2 action.

use c2sseq::scenarios::{builtin, run_scenario};
use c2sseq::specseq::{Overrides, DEFAULT_MAX_PAGE};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let out = run_scenario(
        &builtin("pic-ko-classical")?,
        DEFAULT_MAX_PAGE,
        &Overrides::new(),
    )?;
    let bound = out.bound.unwrap();
    for (s, g) in &bound.gr_list {
        println!("s={s}: {g}");
    }
    println!("Pic(KO) = {}", bound.conclusion);
    Ok(())
}
