//! Picard spectral sequence of 2-complete Hermitian K-theory. The stem-0
//! survivors bound the Picard group from above, and the known invertible
//! objects bound it from below.

use c2sseq::scenarios::{builtin, run_scenario};
use c2sseq::specseq::{Overrides, DEFAULT_MAX_PAGE};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let out = run_scenario(
        &builtin("pic-kgl-2adic")?,
        DEFAULT_MAX_PAGE,
        &Overrides::new(),
    )?;
    let run = out.run.as_ref().unwrap();

    println!("stabilized at E_{}", run.stabilized_at);
    for (i, d) in run.differentials.iter().enumerate() {
        let nonzero = d.entries.values().filter(|e| !e.is_zero()).count();
        println!("d{}: {nonzero} nonzero entries", run.pages[i].r);
    }

    let bound = out.bound.as_ref().unwrap();
    println!("\nstem 0 survivors:");
    for (s, g) in &bound.gr_list {
        println!("  s={s}: {g}");
    }
    println!(
        "upper bound: rank <= {}, torsion order <= {}",
        bound.free_rank_upper, bound.torsion_order_upper
    );
    println!("lower bound: {}", bound.lower_bound);
    println!("Pic = {}", bound.conclusion);
    Ok(())
}
