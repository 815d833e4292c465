//! Writing a scenario to JSON, editing it, and reading it back. The edit
//! claims pi_3 = Z/2, which the run refutes.

use c2sseq::scenarios::{builtin, from_json, run_scenario, to_json};
use c2sseq::specseq::{AbutmentVerdict, Overrides, DEFAULT_MAX_PAGE};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut doc: serde_json::Value = serde_json::from_str(&to_json(&builtin("ko-endo")?))?;
    doc["name"] = "ko-wrong-pi3".into();
    for e in doc["expected_abutment"].as_array_mut().unwrap() {
        if e["stem"] == 3 {
            e["orders"] = serde_json::json!([2]);
        }
    }
    let scenario = from_json(&doc.to_string())?;
    let out = run_scenario(&scenario, DEFAULT_MAX_PAGE, &Overrides::new())?;
    for c in &out.stems {
        if let Some(AbutmentVerdict::Mismatch(why)) = &c.verdict {
            println!("stem {}: {why}", c.stem);
        }
    }
    println!("success: {}", out.success());
    Ok(())
}
