//! The six-term Tate-like complex `B` built from wedge powers of `M_1`,
//! divided powers of `M_2`, and `M_3`, with the Leibniz-induced
//! differential, plus the registry of direct summands on which the
//! nullhomotopy will be forced to vanish.

use crate::complexes::{build_complex, BasedModule, BasisLabel, ChainComplex};
use crate::error::Result;
use crate::matrix::PolyMatrix;
use crate::multialg::{divided_basis, wedge_append, wedge_basis, DgAlgebra};
use crate::poly::Poly;

/// One direct summand `Lambda^a M_1 (x) D_b M_2 (x) M_3^c` of a `B_i`.
#[derive(Debug, Clone)]
pub struct TateSummand {
    pub wedge: usize,
    pub div: usize,
    pub m3: usize,
    pub wedge_tuples: Vec<Vec<usize>>,
    pub div_tuples: Vec<Vec<usize>>,
    pub col_start: usize,
    pub ncols: usize,
}

impl TateSummand {
    pub fn n_m3(&self, rank_m3: usize) -> usize {
        if self.m3 == 1 {
            rank_m3
        } else {
            1
        }
    }

    /// Column offset of the basis element `(wedge_idx, div_idx, m3_idx)`.
    pub fn col(&self, wi: usize, di: usize, mi: usize, rank_m3: usize) -> usize {
        self.col_start + (wi * self.div_tuples.len() + di) * self.n_m3(rank_m3) + mi
    }
}

#[derive(Debug, Clone)]
pub struct TateComplexB {
    pub complex: ChainComplex,
    pub summands: Vec<Vec<TateSummand>>,
    /// Per degree, per column: whether the nullhomotopy is forced to vanish
    /// there (the short-product summands and the wedge columns meeting the
    /// splitting summand).
    pub registered: Vec<Vec<bool>>,
}

impl TateComplexB {
    pub fn summand(&self, degree: usize, wedge: usize, div: usize, m3: usize) -> &TateSummand {
        self.summands[degree]
            .iter()
            .find(|s| s.wedge == wedge && s.div == div && s.m3 == m3)
            .expect("summand present")
    }

    /// Column of a basis element in the `Lambda^2 M_1 (x) M_2` summand of
    /// `B_4`, given a *sorted* wedge pair.
    pub fn b4_wedge_m2_col(&self, pair: &[usize], t: usize, rank_m2: usize) -> usize {
        let s = self.summand(4, 2, 1, 0);
        let wi = s
            .wedge_tuples
            .iter()
            .position(|w| w == pair)
            .expect("wedge pair");
        let _ = rank_m2;
        s.col(wi, t, 0, 0)
    }
}

const SPECS: [&[(usize, usize, usize)]; 6] = [
    &[(0, 0, 0)],
    &[(1, 0, 0)],
    &[(2, 0, 0), (0, 1, 0)],
    &[(3, 0, 0), (1, 1, 0), (0, 0, 1)],
    &[(2, 1, 0), (0, 2, 0), (1, 0, 1)],
    &[(1, 2, 0), (2, 0, 1)],
];

/// Comultiplication of a `D_b` tuple into `(component index, remaining
/// tuple)` pairs, each with multiplicity one.
fn divided_comult(tuple: &[usize]) -> Vec<(usize, Vec<usize>)> {
    let mut out = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    for (pos, &f) in tuple.iter().enumerate() {
        if !seen.insert(f) {
            continue;
        }
        let mut rest = tuple.to_vec();
        rest.remove(pos);
        out.push((f, rest));
    }
    out
}

/// Build `B` with the Leibniz-induced differential and the summand
/// registry. `d^2 = 0` is verified by construction.
pub fn build_tate_b(m: &DgAlgebra, splitting: &[usize]) -> Result<TateComplexB> {
    let ring = m.ring().clone();
    let rank_m1 = m.rank(1);
    let rank_m3 = m.rank(3);
    let d1 = m.complex.d(1);
    let d2 = m.complex.d(2);
    let d3 = m.complex.d(3);

    // Enumerate summands and bases per degree.
    let mut summands: Vec<Vec<TateSummand>> = Vec::new();
    let mut modules: Vec<BasedModule> = Vec::new();
    for (degree, spec) in SPECS.iter().enumerate() {
        let mut degree_summands = Vec::new();
        let mut labels = Vec::new();
        let mut col = 0;
        for &(a, b, c) in spec.iter() {
            let wt = wedge_basis(rank_m1, a);
            let dt = divided_basis(m.rank(2), b);
            let nm3 = if c == 1 { rank_m3 } else { 1 };
            let ncols = wt.len() * dt.len() * nm3;
            for w in &wt {
                for d in &dt {
                    for g in 0..nm3 {
                        let mut parts = Vec::new();
                        if a > 0 {
                            parts.push(BasisLabel::Wedge(w.clone()));
                        }
                        if b > 0 {
                            parts.push(BasisLabel::Divided(d.clone()));
                        }
                        if c == 1 {
                            parts.push(BasisLabel::Atom(format!("g{g}")));
                        }
                        labels.push(match parts.len() {
                            0 => BasisLabel::Atom("1".into()),
                            1 => parts.pop().unwrap(),
                            _ => BasisLabel::Tensor(parts),
                        });
                    }
                }
            }
            degree_summands.push(TateSummand {
                wedge: a,
                div: b,
                m3: c,
                wedge_tuples: wt,
                div_tuples: dt,
                col_start: col,
                ncols,
            });
            col += ncols;
        }
        modules.push(BasedModule { degree, labels });
        summands.push(degree_summands);
    }

    // Differentials.
    let mut diffs = Vec::new();
    for i in 1..=5usize {
        let rows = modules[i - 1].rank();
        let cols = modules[i].rank();
        let mut d = PolyMatrix::zero(&ring, rows, cols);
        let add = |d: &mut PolyMatrix, row: usize, col: usize, v: &Poly| {
            if !v.is_zero() {
                d.set(row, col, d.at(row, col).plus(v));
            }
        };
        for src in &summands[i] {
            let (a, b, c) = (src.wedge, src.div, src.m3);
            let nm3_src = src.n_m3(rank_m3);
            for (wi, wt) in src.wedge_tuples.iter().enumerate() {
                for (di, dt) in src.div_tuples.iter().enumerate() {
                    for mi in 0..nm3_src {
                        let col = src.col(wi, di, mi, rank_m3);

                        // Rule 1: derive the wedge factor.
                        if a >= 1 {
                            let dst = summands[i - 1]
                                .iter()
                                .find(|s| s.wedge == a - 1 && s.div == b && s.m3 == c)
                                .expect("wedge-derivative target");
                            for (pos, &v) in wt.iter().enumerate() {
                                let scalar = d1.at(0, v);
                                if scalar.is_zero() {
                                    continue;
                                }
                                let mut rest = wt.clone();
                                rest.remove(pos);
                                let nwi = dst
                                    .wedge_tuples
                                    .iter()
                                    .position(|t| *t == rest)
                                    .unwrap();
                                let row = dst.col(nwi, di, mi, rank_m3);
                                let term = if pos % 2 == 0 {
                                    scalar.clone()
                                } else {
                                    scalar.negated()
                                };
                                add(&mut d, row, col, &term);
                            }
                        }

                        // Rule 2: derive the divided factor; the produced
                        // M_1 element joins the wedge on the right, with the
                        // Koszul sign (-1)^a.
                        if b >= 1 {
                            let dst = summands[i - 1]
                                .iter()
                                .find(|s| s.wedge == a + 1 && s.div == b - 1 && s.m3 == c)
                                .expect("divided-derivative target");
                            for (x, rest) in divided_comult(dt) {
                                let ndi = dst
                                    .div_tuples
                                    .iter()
                                    .position(|t| *t == rest)
                                    .unwrap();
                                for u in 0..rank_m1 {
                                    let coeff = d2.at(u, x);
                                    if coeff.is_zero() {
                                        continue;
                                    }
                                    let Some((sgn, nwt)) = wedge_append(wt, u) else {
                                        continue;
                                    };
                                    let nwi = dst
                                        .wedge_tuples
                                        .iter()
                                        .position(|t| *t == nwt)
                                        .unwrap();
                                    let row = dst.col(nwi, ndi, mi, rank_m3);
                                    let mut total = sgn;
                                    if a % 2 == 1 {
                                        total = -total;
                                    }
                                    let term = if total >= 0 {
                                        coeff.clone()
                                    } else {
                                        coeff.negated()
                                    };
                                    add(&mut d, row, col, &term);
                                }
                            }
                        }

                        // Rule 3: derive the M_3 factor into the divided
                        // part, sign (-1)^a (the divided factor is even).
                        if c == 1 {
                            assert_eq!(b, 0, "M_3 factor only pairs with empty divided part");
                            let dst = summands[i - 1]
                                .iter()
                                .find(|s| s.wedge == a && s.div == b + 1 && s.m3 == 0)
                                .expect("m3-derivative target");
                            for t in 0..m.rank(2) {
                                let coeff = d3.at(t, mi);
                                if coeff.is_zero() {
                                    continue;
                                }
                                let ndi = dst
                                    .div_tuples
                                    .iter()
                                    .position(|tt| *tt == vec![t])
                                    .unwrap();
                                let nwi = dst
                                    .wedge_tuples
                                    .iter()
                                    .position(|tt| *tt == *wt)
                                    .unwrap();
                                let row = dst.col(nwi, ndi, 0, rank_m3);
                                let term = if a % 2 == 0 {
                                    coeff.clone()
                                } else {
                                    coeff.negated()
                                };
                                add(&mut d, row, col, &term);
                            }
                        }
                    }
                }
            }
        }
        diffs.push(d);
    }

    let complex = build_complex(&ring, modules, diffs)?;

    // Registry: all of B_0..B_2; in B_3 everything except the wedge columns
    // avoiding the splitting; in B_4 the two short-product summands plus the
    // splitting-meeting wedge columns; nothing in B_5.
    let meets_splitting =
        |wt: &[usize]| -> bool { wt.iter().any(|i| splitting.contains(i)) };
    let mut registered: Vec<Vec<bool>> = Vec::new();
    for (degree, degree_summands) in summands.iter().enumerate() {
        let mut reg = vec![false; complex.rank(degree)];
        for s in degree_summands {
            let nm3 = s.n_m3(rank_m3);
            for (wi, wt) in s.wedge_tuples.iter().enumerate() {
                for di in 0..s.div_tuples.len() {
                    for mi in 0..nm3 {
                        let col = s.col(wi, di, mi, rank_m3);
                        let flag = match degree {
                            0..=2 => true,
                            3 => match (s.wedge, s.div, s.m3) {
                                (3, 0, 0) => meets_splitting(wt),
                                _ => true,
                            },
                            4 => match (s.wedge, s.div, s.m3) {
                                (2, 1, 0) => meets_splitting(wt),
                                _ => true,
                            },
                            _ => false,
                        };
                        reg[col] = flag;
                    }
                }
            }
        }
        registered.push(reg);
    }

    Ok(TateComplexB {
        complex,
        summands,
        registered,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multialg::koszul_algebra;
    use crate::poly::{pp, PolyRing};

    fn ci_m() -> DgAlgebra {
        let r = PolyRing::new(
            0,
            vec!["x1".into(), "x2".into(), "x3".into(), "x4".into()],
        )
        .unwrap();
        koszul_algebra(&r, &["x1", "x2", "x3", "x4"].map(|s| pp(&r, s))).unwrap()
    }

    #[test]
    fn ranks_on_ci() {
        let m = ci_m();
        let b = build_tate_b(&m, &[0, 1, 2]).unwrap();
        // M_1 = 4, M_2 = 6, M_3 = 4:
        // B_2 = C(4,2) + 6 = 12; B_3 = C(4,3) + 4*6 + 4 = 32;
        // B_4 = 6*6 + D_2(6) + 4*4 = 36 + 21 + 16 = 73;
        // B_5 = 4*21 + 6*4 = 108.
        assert_eq!(b.complex.rank(2), 12);
        assert_eq!(b.complex.rank(3), 32);
        assert_eq!(b.complex.rank(4), 73);
        assert_eq!(b.complex.rank(5), 108);
    }

    #[test]
    fn wedge_and_divided_derivative_formulas() {
        let m = ci_m();
        let b = build_tate_b(&m, &[0, 1, 2]).unwrap();
        let ring = m.ring().clone();
        // d(e0 ^ e1) = x1 e1 - x2 e0 in B_2 -> B_1.
        let s2 = b.summand(2, 2, 0, 0);
        let col = s2.col(0, 0, 0, m.rank(3));
        let d2 = b.complex.d(2);
        assert_eq!(*d2.at(1, col), pp(&ring, "x1"));
        assert_eq!(*d2.at(0, col), pp(&ring, "-x2"));

        // d(b_t^{(2)}) = m_2(b_t) (x) b_t: pick t = 0 (wedge {0,1} of M).
        let s4 = b.summand(4, 0, 2, 0);
        let di = s4.div_tuples.iter().position(|t| *t == vec![0, 0]).unwrap();
        let col = s4.col(0, di, 0, m.rank(3));
        let d4col = b.complex.d(4).col(col);
        // Target summand (1,1,0) of B_3: entries e_u (x) b_0 with coefficient
        // m_2[u, 0].
        let s3 = b.summand(3, 1, 1, 0);
        let m2 = m.complex.d(2);
        for u in 0..m.rank(1) {
            let wi = s3.wedge_tuples.iter().position(|t| *t == vec![u]).unwrap();
            let row = s3.col(wi, 0, 0, m.rank(3));
            assert_eq!(d4col[row], *m2.at(u, 0), "component e{u} (x) b0");
        }
    }

    #[test]
    fn registry_shape_on_ci() {
        let m = ci_m();
        let b = build_tate_b(&m, &[0, 1, 2]).unwrap();
        // On the CI instance every wedge tuple meets the splitting, so all
        // of B_3 and B_4 are registered and none of B_5 is.
        assert!(b.registered[3].iter().all(|&x| x));
        assert!(b.registered[4].iter().all(|&x| x));
        assert!(b.registered[5].iter().all(|&x| !x));
    }
}
