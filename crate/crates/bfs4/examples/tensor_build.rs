//! Tensor products of DG algebras: build a length-4 input by tensoring a
//! length-3 Koszul algebra with the Koszul complex on one extra variable,
//! verify it, and run the pipeline on the generated instance.
//!
//! Run with: cargo run --example tensor_build

use bfs4::instance::{gen_tensor, load_instance};
use bfs4::multialg::{koszul_algebra, tensor_dga, verify_dga};
use bfs4::pipeline::{run_bfs, PipelineOptions};
use bfs4::poly::{Poly, PolyRing};

fn main() -> bfs4::Result<()> {
    // Library level: the tensor constructor with the Koszul sign rule.
    let ring = PolyRing::new(
        0,
        vec!["x1".into(), "x2".into(), "x3".into(), "x4".into()],
    )?;
    let a = koszul_algebra(&ring, &(0..3).map(|i| Poly::var(&ring, i)).collect::<Vec<_>>())?;
    let b = koszul_algebra(&ring, &[Poly::var(&ring, 3)])?;
    let c = tensor_dga(&a, &b)?;
    println!("tensor ranks:");
    for i in 0..=c.len() {
        println!("  rank C_{i} = {}", c.rank(i));
    }
    let rep = verify_dga(&c);
    println!(
        "tensor verifies: {} ({} checks)",
        rep.pass(),
        rep.items.len()
    );
    assert!(rep.pass());

    // Instance level: the `tensor` generator family feeding the pipeline.
    let spec = gen_tensor(0, None)?;
    let loaded = load_instance(&spec)?;
    println!(
        "generated tensor instance: sequence ({}, {}, {}), r = {}",
        loaded.seq[0], loaded.seq[1], loaded.seq[2], loaded.r
    );
    let outcome = run_bfs(&spec, &PipelineOptions::default())?;
    println!(
        "pipeline on the tensor instance: {}",
        if outcome.pass() { "PASS" } else { "FAIL" }
    );
    assert!(outcome.pass());
    Ok(())
}
