//! Serialize a synthesis to JSON, load it back and re-verify it from the
//! interferometer alone.

use biphoton::gates::build_cnz;
use biphoton::io::{verify_document, SynthesisDocument};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let (gate, spec) = build_cnz(3, 1.0)?;
    let json = serde_json::to_string(&SynthesisDocument::cnz(&gate, &spec))?;
    println!("document: {} bytes", json.len());

    let doc: SynthesisDocument = serde_json::from_str(&json)?;
    let outcome = verify_document(&doc, 1e-9)?;
    println!("passed = {}, p_s = {:.12} (reported {:.12})", outcome.passed, outcome.success_probability, doc.success_probability);

    let mut tampered = doc.clone();
    tampered.phi = Some(2.0);
    println!("with a different phase: passed = {}", verify_document(&tampered, 1e-9)?.passed);
    Ok(())
}
