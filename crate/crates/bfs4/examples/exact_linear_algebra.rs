//! Fraction-free linear algebra over the polynomial ring: ranks and
//! determinants via Bareiss elimination, fraction-field solving with a
//! polynomiality flag, and unimodular inversion.
//!
//! Run with: cargo run --example exact_linear_algebra

use bfs4::matrix::{FracSolve, PolyMatrix};
use bfs4::parse::parse_poly;
use bfs4::poly::PolyRing;

fn main() -> bfs4::Result<()> {
    let ring = PolyRing::new(0, vec!["x1".into(), "x2".into(), "x3".into()])?;
    let p = |s: &str| parse_poly(&ring, s).unwrap();
    let m = |rows: &[&[&str]]| {
        PolyMatrix::from_rows(
            &ring,
            rows.iter()
                .map(|r| r.iter().map(|s| p(s)).collect())
                .collect(),
        )
        .unwrap()
    };

    let a = m(&[&["x1", "x2", "1"], &["0", "x3", "x1"], &["1", "0", "x2"]]);
    println!("A = {a}");
    println!("rank A = {}", a.rank());
    println!("det A  = {}", a.det()?);

    // Solve A x = b over the fraction field; free variables are set to
    // zero, and the solver reports whether the solution stayed polynomial.
    let b = m(&[&["x1*x2"], &["x1*x3"], &["x2"]]);
    match a.solve_fraction_field(&b)? {
        FracSolve::Solution {
            entries,
            polynomial,
        } => {
            println!("solution (polynomial: {polynomial}):");
            for (i, e) in entries[0].iter().enumerate() {
                println!("  x[{i}] = {e}");
            }
        }
        FracSolve::NoSolution => println!("inconsistent"),
    }

    // A forced non-polynomial solution.
    let single = m(&[&["x1"]]);
    match single.solve_fraction_field(&m(&[&["1"]]))? {
        FracSolve::Solution {
            entries,
            polynomial,
        } => println!(
            "x1 * x = 1 over Frac(R): x = {} (polynomial: {polynomial})",
            entries[0][0]
        ),
        FracSolve::NoSolution => unreachable!(),
    }

    // Unimodular inversion: determinant must be a nonzero constant.
    let u = m(&[&["1", "x1", "0"], &["0", "1", "x2"], &["0", "0", "1"]]);
    let inv = u.unimodular_inverse()?;
    println!("U^-1 = {inv}");
    assert_eq!(u.compose(&inv)?, PolyMatrix::identity(&ring, 3));
    match m(&[&["x1", "0"], &["0", "1"]]).unimodular_inverse() {
        Err(e) => println!("diag(x1, 1): {e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}
