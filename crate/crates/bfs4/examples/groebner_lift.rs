//! Module Groebner bases in action: reduced bases, division with
//! quotients, lifting a vector through a matrix, and kernel generators.
//!
//! Run with: cargo run --example groebner_lift

use bfs4::grobner::{groebner_basis, lift, syzygies};
use bfs4::matrix::PolyMatrix;
use bfs4::parse::parse_poly;
use bfs4::poly::PolyRing;

fn main() -> bfs4::Result<()> {
    let ring = PolyRing::new(0, vec!["x1".into(), "x2".into(), "x3".into()])?;
    let p = |s: &str| parse_poly(&ring, s).unwrap();

    // A rank-1 module (an ideal): {x1, x1 + x2} reduces to {x1, x2}.
    let gb = groebner_basis(&ring, 1, vec![vec![p("x1")], vec![p("x1 + x2")]])?;
    println!("reduced basis of (x1, x1 + x2):");
    for v in &gb.basis {
        println!("  {}", v[0]);
    }

    // Division with quotients: x1*x2*x3 + x3^2 against the basis.
    let (rem, quots) = gb.normal_form(&[p("x1*x2*x3 + x3^2")])?;
    println!("normal form of x1*x2*x3 + x3^2: remainder {}", rem[0]);
    for (q, b) in quots.iter().zip(&gb.basis) {
        println!("  quotient {} against {}", q, b[0]);
    }

    // Lifting through the first Koszul differential: solve k1 * x = b.
    let k1 = PolyMatrix::from_rows(&ring, vec![vec![p("x1"), p("x2"), p("x3")]])?;
    let x = lift(&k1, &[p("x1*x2 - x2*x3")])?;
    println!(
        "lift of x1*x2 - x2*x3 through (x1 x2 x3): ({}, {}, {})",
        x[0], x[1], x[2]
    );

    // 1 is not in the ideal (x1): lifting fails with the remainder.
    match lift(
        &PolyMatrix::from_rows(&ring, vec![vec![p("x1")]])?,
        &[p("1")],
    ) {
        Err(e) => println!("lift of 1 through (x1): {e}"),
        Ok(_) => unreachable!(),
    }

    // Kernel generators: the Koszul syzygy of (x1, x2).
    let a = PolyMatrix::from_rows(&ring, vec![vec![p("x1"), p("x2")]])?;
    for s in syzygies(&a)? {
        println!("syzygy of (x1 x2): ({}, {})", s[0], s[1]);
    }
    Ok(())
}
