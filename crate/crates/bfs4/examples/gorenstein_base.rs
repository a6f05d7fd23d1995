#![allow(clippy::needless_range_loop)]

//! Build a length-3 self-dual DG algebra from scratch: resolve the
//! five-generated ideal apolar to `x1^3 + x2^3 + x3^3` by iterated syzygy
//! computations, equip the resolution with products by lifting the Leibniz
//! right-hand sides through the differentials, verify every axiom, and
//! emit the result in the base-file schema consumed by `gen tensor --base`.
//!
//! Tensored with a Koszul factor this yields a rank-6 input whose splitting
//! complement is two-dimensional, so the construction pipeline performs
//! genuine homotopy lifts and produces nonzero induced bilinear maps.
//!
//! Run with: cargo run --example gorenstein_base [-- OUT.json]

use std::collections::BTreeMap;

use bfs4::complexes::{build_complex, BasedModule};
use bfs4::instance::{DgaFileSpec, RingSpec};
use bfs4::matrix::PolyMatrix;
use bfs4::multialg::{verify_dga, DgAlgebra, ProductTensor};
use bfs4::parse::parse_poly;
use bfs4::poly::{Poly, PolyRing};

/// Drop generators that lie in the span of the others.
fn minimize(
    ring: &std::sync::Arc<PolyRing>,
    rank: usize,
    gens: Vec<Vec<Poly>>,
) -> Vec<Vec<Poly>> {
    let mut out = gens;
    loop {
        let mut dropped = false;
        for i in 0..out.len() {
            let others: Vec<Vec<Poly>> = out
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, v)| v.clone())
                .collect();
            if others.is_empty() {
                break;
            }
            let mut mat = PolyMatrix::zero(ring, rank, others.len());
            for (j, v) in others.iter().enumerate() {
                mat.set_col(j, v);
            }
            if bfs4::grobner::lift(&mat, &out[i]).is_ok() {
                out.remove(i);
                dropped = true;
                break;
            }
        }
        if !dropped {
            return out;
        }
    }
}

pub fn build() -> bfs4::Result<(DgAlgebra, DgaFileSpec)> {
    let ring = PolyRing::new(0, vec!["x1".into(), "x2".into(), "x3".into()])?;
    let p = |s: &str| parse_poly(&ring, s).unwrap();

    let gens = ["x1*x2", "x1*x3", "x2*x3", "x1^2 - x2^2", "x2^2 - x3^2"];
    let d1 = PolyMatrix::from_rows(&ring, vec![gens.iter().map(|s| p(s)).collect()])?;

    // Minimal free resolution by iterated syzygies: ranks come out 1,5,5,1.
    let syz1 = minimize(&ring, 5, bfs4::grobner::syzygies(&d1)?);
    let mut d2 = PolyMatrix::zero(&ring, 5, syz1.len());
    for (j, v) in syz1.iter().enumerate() {
        d2.set_col(j, v);
    }
    let syz2 = minimize(&ring, syz1.len(), bfs4::grobner::syzygies(&d2)?);
    let mut d3 = PolyMatrix::zero(&ring, syz1.len(), syz2.len());
    for (j, v) in syz2.iter().enumerate() {
        d3.set_col(j, v);
    }
    assert_eq!((d2.cols, d3.cols), (5, 1), "expected Betti numbers 1,5,5,1");

    // Degree (1,1) products: lift the Leibniz right-hand side through d2.
    let n1 = 5usize;
    let mut t11: ProductTensor = vec![vec![vec![]; n1]; n1];
    for i in 0..n1 {
        for j in 0..n1 {
            let mut rhs = vec![Poly::zero(&ring); n1];
            rhs[j] = rhs[j].plus(d1.at(0, i));
            rhs[i] = rhs[i].minus(d1.at(0, j));
            t11[i][j] = bfs4::grobner::lift(&d2, &rhs)?;
        }
    }
    // Degree (1,2) products through the injective top differential.
    let n2 = d2.cols;
    let mut t12: ProductTensor = vec![vec![vec![]; n2]; n1];
    for i in 0..n1 {
        for j in 0..n2 {
            let mut rhs = vec![Poly::zero(&ring); n2];
            rhs[j] = rhs[j].plus(d1.at(0, i));
            for u in 0..n1 {
                let tu = d2.at(u, j);
                if tu.is_zero() {
                    continue;
                }
                for (w, c) in t11[i][u].iter().enumerate() {
                    rhs[w] = rhs[w].minus(&tu.times(c));
                }
            }
            t12[i][j] = bfs4::grobner::lift(&d3, &rhs)?;
        }
    }

    let modules: Vec<BasedModule> = [1usize, n1, n2, 1]
        .iter()
        .enumerate()
        .map(|(i, &rk)| BasedModule::atoms(i, "a", rk))
        .collect();
    let complex = build_complex(&ring, modules, vec![d1, d2, d3])?;
    let mut products = BTreeMap::new();
    products.insert((1usize, 1usize), t11);
    products.insert((1usize, 2usize), t12);
    let alg = DgAlgebra {
        complex,
        products,
        gamma2: BTreeMap::new(),
        orientation: PolyMatrix::from_rows(&ring, vec![vec![Poly::one(&ring)]])?,
    };

    let mut products_out = BTreeMap::new();
    for (&(i, j), tensor) in &alg.products {
        for (s, row) in tensor.iter().enumerate() {
            for (t, v) in row.iter().enumerate() {
                products_out.insert(
                    format!("{i}:{s},{j}:{t}"),
                    v.iter().map(|q| q.to_string()).collect(),
                );
            }
        }
    }
    let spec = DgaFileSpec {
        format: 1,
        ring: RingSpec {
            characteristic: 0,
            variables: ring.vars.clone(),
        },
        differentials: (1..=3).map(|i| alg.complex.d(i).to_strings()).collect(),
        products: products_out,
        orientation: vec!["1".into()],
    };
    Ok((alg, spec))
}

fn main() -> bfs4::Result<()> {
    let (alg, spec) = build()?;
    println!("resolution ranks: 1, {}, {}, 1", alg.rank(1), alg.rank(2));
    println!("d_3 = {}", alg.complex.d(3).transpose());
    let rep = verify_dga(&alg);
    for item in &rep.items {
        println!("  {} {}", if item.pass { "PASS" } else { "FAIL" }, item.name);
    }
    assert!(rep.pass());

    if let Some(path) = std::env::args().nth(1) {
        let text = serde_json::to_string_pretty(&spec).expect("serializes");
        std::fs::write(&path, text)?;
        println!("wrote base file to {path}");
    } else {
        println!("pass an output path to write the base file");
    }
    Ok(())
}
