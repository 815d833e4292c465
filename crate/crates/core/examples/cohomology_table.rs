//! Group cohomology of C2 from the periodic resolution, checked against
//! the bar complex.

use c2sseq::c2cohomology::{cohomology_bar, cohomology_periodic, C2Module, DEFAULT_ORACLE_LIMIT};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let modules = [
        ("Z trivial", C2Module::integers("x", 1, false)),
        ("Z sign", C2Module::integers("x", -1, false)),
        ("Z/4 sign", C2Module::cyclic("x", 4, -1)),
        ("Z[C2]", C2Module::swap(["x", "y"])),
    ];
    for (label, m) in &modules {
        let row: Vec<String> = (0..=5)
            .map(|s| {
                let h = cohomology_periodic(m, s);
                assert!(h.is_isomorphic(&cohomology_bar(m, s, DEFAULT_ORACLE_LIMIT).unwrap()));
                h.symbol()
            })
            .collect();
        println!("{label:>10}: {}", row.join(" | "));
    }
    Ok(())
}
