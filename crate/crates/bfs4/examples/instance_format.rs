//! Tour of the instance file format: generate the complete-intersection
//! instance, show the schema, round-trip it through the parser, and
//! demonstrate the validation diagnostics.
//!
//! Run with: cargo run --example instance_format

use bfs4::instance::{gen_ci, load_instance, parse_instance_str};

fn main() -> bfs4::Result<()> {
    let spec = gen_ci(0)?;
    let text = serde_json::to_string_pretty(&spec).expect("serializes");

    // Show the head of the document and a few representative entries.
    for line in text.lines().take(12) {
        println!("{line}");
    }
    println!("  ...");
    println!(
        "products entries: {} (keys like \"1:0,1:1\")",
        spec.m.products.len()
    );
    println!("gamma2 entries: {} (keys like \"2:0\")", spec.m.gamma2.len());

    // Round trip: parse and validate.
    let back = parse_instance_str(&text)?;
    let loaded = load_instance(&back)?;
    println!(
        "parsed: char {} with variables {:?}, splitting {:?}, r = {}",
        loaded.ring.characteristic, loaded.ring.vars, loaded.splitting, loaded.r
    );

    // Validation diagnostics carry the schema path and the polynomial
    // grammar position.
    let mut broken = back.clone();
    broken.r = "x1 +* x2".into();
    match load_instance(&broken) {
        Err(e) => println!("diagnostic: {e}"),
        Ok(_) => unreachable!(),
    }
    let mut missing = back.clone();
    missing.m.gamma2.clear();
    match load_instance(&missing) {
        Err(e) => println!("diagnostic: {e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}
