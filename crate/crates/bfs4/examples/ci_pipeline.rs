//! The full pipeline on the complete-intersection instance: comparison
//! maps, the Tate-like complex, the morphism into the shifted Koszul
//! complex, the constrained homotopy, the induced bilinear maps, and the
//! assembled five-term complex with its verified multiplication.
//!
//! Run with: cargo run --example ci_pipeline

use bfs4::instance::gen_ci;
use bfs4::pipeline::{run_bfs, PipelineOptions};

fn main() -> bfs4::Result<()> {
    let spec = gen_ci(0)?;
    let opts = PipelineOptions {
        r_override: Some("x4".into()),
        ..Default::default()
    };
    let outcome = run_bfs(&spec, &opts)?;
    print!("{}", outcome.report.to_text());

    // The golden matrices are part of the machine report.
    let golden = outcome.report.golden.as_ref().unwrap();
    println!("\nf_1 = {:?}", golden.f[0]);
    println!("beta_1 = {:?}", golden.beta[0]);
    assert!(outcome.pass());
    Ok(())
}
