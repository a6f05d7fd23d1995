//! Build the Koszul algebra on four variables and run the full DG-algebra
//! axiom verifier over it: differentials, Leibniz, graded commutativity,
//! odd squares, associativity, divided squares, Poincare duality, unit.
//!
//! Run with: cargo run --example verify_koszul

use bfs4::multialg::{koszul_algebra, verify_dga};
use bfs4::poly::{Poly, PolyRing};

fn main() -> bfs4::Result<()> {
    let ring = PolyRing::new(
        0,
        vec!["x1".into(), "x2".into(), "x3".into(), "x4".into()],
    )?;
    let vars: Vec<Poly> = (0..4).map(|i| Poly::var(&ring, i)).collect();
    let k = koszul_algebra(&ring, &vars)?;

    println!("Koszul algebra on (x1, x2, x3, x4):");
    for i in 0..=k.len() {
        println!("  rank K_{i} = {}", k.rank(i));
    }
    println!("  d_2 = {}", k.complex.d(2));

    let report = verify_dga(&k);
    for item in &report.items {
        println!("  {} {}", if item.pass { "PASS" } else { "FAIL" }, item.name);
    }
    assert!(report.pass());

    // The degree-1 pairing into the top wedge is a signed permutation.
    let pairing = k.pairing_matrix(1);
    println!("degree-1 Poincare pairing (unimodular: {}):", pairing.unimodular);
    println!("  {}", pairing.matrix);
    Ok(())
}
