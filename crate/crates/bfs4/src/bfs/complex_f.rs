//! Assembly and verification of the five-term complex `F(alpha, r)` with
//! its multiplication, and extraction of the degree-zero homology ideal.

use crate::complexes::{build_complex, rank_condition_check, BasedModule, BasisLabel};
use crate::error::{Error, Result};
use crate::grobner::groebner_basis;
use crate::multialg::{verify_dga, CheckItem, DgAlgebra};
use crate::poly::Poly;

use super::comparison::ComparisonData;
use super::skeleton::{Assignment, FBuilder, FStructure};
use super::xmaps::XMaps;

#[derive(Debug, Clone)]
pub struct BfsComplex {
    /// The complex with products and orientation, as a DG algebra (no
    /// divided squares are defined on it).
    pub algebra: DgAlgebra,
    pub r: Poly,
    pub structure: FStructure,
}

fn f_labels(data: &ComparisonData) -> Vec<BasedModule> {
    let m = &data.m;
    let k = &data.k;
    let part = |alg: &DgAlgebra, i: usize, tag: &str| -> Vec<BasisLabel> {
        (0..alg.rank(i))
            .map(|s| BasisLabel::Atom(format!("{tag}{i}:{}", alg.complex.modules[i].labels[s])))
            .collect()
    };
    let mut f1 = part(k, 1, "K");
    f1.extend(part(m, 1, "M"));
    let mut f2 = part(k, 2, "K");
    f2.extend(part(m, 2, "M"));
    f2.extend(part(k, 1, "K"));
    let mut f3 = part(m, 3, "M");
    f3.extend(part(k, 2, "K"));
    vec![
        BasedModule {
            degree: 0,
            labels: vec![BasisLabel::Atom("1".into())],
        },
        BasedModule { degree: 1, labels: f1 },
        BasedModule { degree: 2, labels: f2 },
        BasedModule { degree: 3, labels: f3 },
        BasedModule {
            degree: 4,
            labels: part(m, 4, "M"),
        },
    ]
}

/// Assemble `F(alpha, r)` from a calibrated assignment. Rejects any
/// structure whose differentials fail `f o f = 0`.
pub fn build_f(
    data: &ComparisonData,
    x: &XMaps,
    r: &Poly,
    assign: &Assignment,
) -> Result<BfsComplex> {
    let builder = FBuilder {
        data,
        x,
        r,
        assign,
    };
    let structure = builder.build()?;
    let complex = build_complex(
        data.m.ring(),
        f_labels(data),
        structure.f.clone(),
    )?;
    let algebra = DgAlgebra {
        complex,
        products: structure.products.clone(),
        gamma2: Default::default(),
        orientation: data.m.orientation.clone(),
    };
    Ok(BfsComplex {
        algebra,
        r: r.clone(),
        structure,
    })
}

/// The full acceptance battery for an assembled structure: four zero
/// composites, every DG axiom, the two middle Poincare pairings by name,
/// and the rank condition.
pub fn verify_f(fc: &BfsComplex, prime: u64, seed: u64) -> Vec<CheckItem> {
    let mut items = Vec::new();
    let alg = &fc.algebra;

    for i in 1..=4usize {
        let di = alg.complex.d(i);
        let dnext = alg.complex.d(i + 1);
        let prod = di.compose(&dnext).expect("shapes match");
        let failure = prod
            .first_nonzero()
            .map(|(r, c, e)| format!("entry ({r},{c}) = {e}"));
        items.push(CheckItem::from(format!("f_squared@{i}"), failure));
    }

    let dga = verify_dga(alg);
    items.extend(dga.items);

    for (name, degree) in [("pairing_f1_f3", 1usize), ("pairing_f2_f2", 2usize)] {
        let p = alg.pairing_matrix(degree);
        let failure = if p.unimodular {
            None
        } else {
            Some(match p.matrix.det() {
                Ok(d) => format!("determinant {d}"),
                Err(_) => format!("pairing is {}x{}", p.matrix.rows, p.matrix.cols),
            })
        };
        items.push(CheckItem::from(name, failure));
    }

    match rank_condition_check(&alg.complex, prime, seed) {
        Ok(rep) => {
            let failure = rep
                .rows
                .iter()
                .find(|r| !r.4)
                .map(|r| format!("degree {}: {} + {} != {}", r.0, r.1, r.2, r.3));
            items.push(CheckItem::from("rank_condition", failure));
        }
        Err(e) => items.push(CheckItem::fail("rank_condition", e.to_string())),
    }

    items
}

#[derive(Debug, Clone)]
pub struct H0Ideal {
    pub generators: Vec<Poly>,
    pub groebner: Vec<Poly>,
}

/// The entries of `f_1` generate the ideal the complex augments to; also
/// returns its reduced Groebner basis (deterministic).
pub fn compute_h0_ideal(fc: &BfsComplex) -> Result<H0Ideal> {
    let f1 = &fc.structure.f[0];
    let gens: Vec<Poly> = (0..f1.cols).map(|j| f1.at(0, j).clone()).collect();
    let gb = groebner_basis(
        fc.algebra.ring(),
        1,
        gens.iter().map(|p| vec![p.clone()]).collect(),
    )?;
    Ok(H0Ideal {
        generators: gens,
        groebner: gb.basis.iter().map(|v| v[0].clone()).collect(),
    })
}

/// Fault-injection points used by the negative-control tests and the
/// `--corrupt` flag.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Corruption {
    /// Negate the first nonzero entry of `f_2`.
    F2Entry,
    /// Negate the first nonzero entry of the degree-(1,1) product tensor.
    Prod11Entry,
    /// Negate the first nonzero divided-square value of the input algebra.
    Gamma2,
}

pub fn corrupt_structure(fc: &mut BfsComplex, what: Corruption) -> Result<()> {
    match what {
        Corruption::F2Entry => {
            let f2 = &mut fc.structure.f[1];
            let (r, c) = f2
                .first_nonzero()
                .map(|(r, c, _)| (r, c))
                .ok_or_else(|| Error::InvalidParams("f_2 is zero".into()))?;
            let v = f2.at(r, c).negated();
            f2.set(r, c, v);
            fc.algebra
                .complex
                .replace_differentials_unchecked(fc.structure.f.clone());
            Ok(())
        }
        Corruption::Prod11Entry => {
            let t = fc
                .structure
                .products
                .get_mut(&(1, 1))
                .expect("(1,1) tensor present");
            'outer: for row in t.iter_mut() {
                for v in row.iter_mut() {
                    for p in v.iter_mut() {
                        if !p.is_zero() {
                            *p = p.negated();
                            break 'outer;
                        }
                    }
                }
            }
            fc.algebra.products = fc.structure.products.clone();
            Ok(())
        }
        Corruption::Gamma2 => Err(Error::InvalidParams(
            "gamma2 corruption applies to the input algebra, not the output".into(),
        )),
    }
}
