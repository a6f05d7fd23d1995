//! The morphism `c : B -> K[-2]` with components `c_3`, `c_4`, `c_5`
//! assembled from products of `beta`-images in the Koszul algebra, verified
//! to commute with the differentials and to vanish on the summands the
//! homotopy construction relies on.

use crate::error::{Error, Result};
use crate::matrix::PolyMatrix;
use crate::multialg::{unit_vec, vec_add, vec_is_zero, CheckItem};
use crate::poly::Poly;

use super::comparison::ComparisonData;
use super::tate::TateComplexB;

#[derive(Debug, Clone)]
pub struct CMorphism {
    /// `comps[i] : B_i -> K_{i-2}`; zero rows for `i < 2`.
    pub comps: Vec<PolyMatrix>,
    pub checks: Vec<CheckItem>,
}

fn scale_vec(v: &[Poly], s: &Poly) -> Vec<Poly> {
    v.iter().map(|p| p.times(s)).collect()
}

/// Assemble `c` and verify: chain-map residuals, vanishing on all
/// registered columns, and the extra structural vanishings of `c_3`/`c_4`
/// on the splitting-related summands.
pub fn build_c(data: &ComparisonData, b: &TateComplexB) -> Result<CMorphism> {
    let m = &data.m;
    let k = &data.k;
    let ring = m.ring().clone();
    let rank_m1 = m.rank(1);
    let rank_m2 = m.rank(2);
    let rank_m3 = m.rank(3);

    let beta1_scalar = |a: usize| -> Poly { data.beta[0].at(0, a).clone() };
    // Product of two degree-1 basis elements of M, as an M_2 vector.
    let p_m2 = |a: usize, bb: usize| -> Vec<Poly> { m.mul_basis(1, a, 1, bb) };
    // e_a * b_t in M_3.
    let q_m3 = |a: usize, t: usize| -> Vec<Poly> { m.mul_basis(1, a, 2, t) };
    // e_a * g_v in M_4.
    let s_m4 = |a: usize, v: usize| -> Vec<Poly> { m.mul_basis(1, a, 3, v) };
    // Image of a divided tuple in M_4 (divided square or plain product).
    let div_to_m4 = |t: &[usize]| -> Vec<Poly> {
        if t[0] == t[1] {
            data.m.gamma2[&2][t[0]].clone()
        } else {
            m.mul_basis(2, t[0], 2, t[1])
        }
    };

    let mut comps: Vec<PolyMatrix> = Vec::new();
    for i in 0..=5usize {
        let rows = if i >= 2 { k.rank(i - 2) } else { 0 };
        comps.push(PolyMatrix::zero(&ring, rows, b.complex.rank(i)));
    }

    // c_3 on the Lambda^3 M_1 summand.
    {
        let s = b.summand(3, 3, 0, 0);
        for (wi, wt) in s.wedge_tuples.iter().enumerate() {
            let (a, bb, c) = (wt[0], wt[1], wt[2]);
            let mut v = scale_vec(&data.beta_apply(2, &p_m2(a, bb)), &beta1_scalar(c));
            v = crate::multialg::vec_sub(
                &v,
                &scale_vec(&data.beta_apply(2, &p_m2(a, c)), &beta1_scalar(bb)),
            );
            v = vec_add(
                &v,
                &scale_vec(&data.beta_apply(2, &p_m2(bb, c)), &beta1_scalar(a)),
            );
            let col = s.col(wi, 0, 0, rank_m3);
            comps[3].set_col(col, &v);
        }
    }

    // c_4 on the Lambda^2 M_1 (x) M_2 summand.
    {
        let s = b.summand(4, 2, 1, 0);
        for (wi, wt) in s.wedge_tuples.iter().enumerate() {
            let (a, bb) = (wt[0], wt[1]);
            for t in 0..rank_m2 {
                let mut v = scale_vec(&data.beta_apply(3, &q_m3(a, t)), &beta1_scalar(bb));
                v = crate::multialg::vec_sub(
                    &v,
                    &scale_vec(&data.beta_apply(3, &q_m3(bb, t)), &beta1_scalar(a)),
                );
                let b2p = data.beta_apply(2, &p_m2(a, bb));
                let b2t = data.beta_apply(2, &unit_vec(&ring, rank_m2, t));
                v = crate::multialg::vec_sub(&v, &k.mul_vec(1, &b2p, 1, &b2t));
                let col = s.col(wi, t, 0, rank_m3);
                comps[4].set_col(col, &v);
            }
        }
    }

    // c_5 on M_1 (x) D_2 M_2.
    {
        let s = b.summand(5, 1, 2, 0);
        for (wi, wt) in s.wedge_tuples.iter().enumerate() {
            let a = wt[0];
            for (di, dt) in s.div_tuples.iter().enumerate() {
                let mut v = scale_vec(&data.beta_apply(4, &div_to_m4(dt)), &beta1_scalar(a));
                // Comultiplication terms: subtract beta_3(e_a x) ^ beta_2(y).
                let pairs: Vec<(usize, usize)> = if dt[0] == dt[1] {
                    vec![(dt[0], dt[0])]
                } else {
                    vec![(dt[0], dt[1]), (dt[1], dt[0])]
                };
                for (x, y) in pairs {
                    let b3 = data.beta_apply(3, &q_m3(a, x));
                    let b2 = data.beta_apply(2, &unit_vec(&ring, rank_m2, y));
                    v = crate::multialg::vec_sub(&v, &k.mul_vec(2, &b3, 1, &b2));
                }
                let col = s.col(wi, di, 0, rank_m3);
                comps[5].set_col(col, &v);
            }
        }
    }

    // c_5 on Lambda^2 M_1 (x) M_3. The sign of the last term is forced by
    // the chain-map condition against c_4.
    {
        let s = b.summand(5, 2, 0, 1);
        for (wi, wt) in s.wedge_tuples.iter().enumerate() {
            let (a, bb) = (wt[0], wt[1]);
            for vtx in 0..rank_m3 {
                let mut v = scale_vec(
                    &data.beta_apply(4, &s_m4(a, vtx)),
                    &beta1_scalar(bb).negated(),
                );
                v = vec_add(
                    &v,
                    &scale_vec(&data.beta_apply(4, &s_m4(bb, vtx)), &beta1_scalar(a)),
                );
                let b2p = data.beta_apply(2, &p_m2(a, bb));
                let b3g = data.beta_apply(3, &unit_vec(&ring, rank_m3, vtx));
                v = vec_add(&v, &k.mul_vec(1, &b2p, 2, &b3g));
                let col = s.col(wi, 0, vtx, rank_m3);
                comps[5].set_col(col, &v);
            }
        }
    }

    let mut checks = Vec::new();

    // Chain-map residuals: k_{i-2} o c_i = c_{i-1} o d_i for i = 3..5 (and
    // trivially below).
    for i in 3..=5usize {
        let lhs = k.complex.d(i - 2).compose(&comps[i])?;
        let rhs = comps[i - 1].compose(&b.complex.d(i))?;
        let res = lhs.minus(&rhs)?;
        if let Some((r, c, e)) = res.first_nonzero() {
            return Err(Error::ChainMapFailure {
                degree: i,
                row: r,
                col: c,
                entry: e.to_string(),
            });
        }
        checks.push(CheckItem::ok(format!("c_chain_map@{i}")));
    }

    // c vanishes on every registered column (the homotopy construction
    // relies on exactly this).
    for i in 0..=5usize {
        let mut failure = None;
        for (col, &reg) in b.registered[i].iter().enumerate() {
            if reg && !vec_is_zero(&comps[i].col(col)) {
                failure = Some(format!("degree {i} column {col}"));
                break;
            }
        }
        if i >= 3 {
            checks.push(CheckItem::from(
                format!("c_zero_on_registered@{i}"),
                failure.clone(),
            ));
        }
        if let Some(w) = failure {
            return Err(Error::PropertyFailure(format!(
                "c is nonzero on a registered summand: {w}"
            )));
        }
    }

    // Structural vanishings beyond the registry. Evaluate c_4 on a wedge
    // pair that may be unsorted or repeated.
    let c4_apply = |a: usize, bb: usize, m2vec: &[Poly]| -> Vec<Poly> {
        let mut out = vec![Poly::zero(&ring); k.rank(2)];
        if a == bb {
            return out;
        }
        let (sgn, pair) = if a < bb {
            (1i64, vec![a, bb])
        } else {
            (-1i64, vec![bb, a])
        };
        for (t, coeff) in m2vec.iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            let col = b.b4_wedge_m2_col(&pair, t, rank_m2);
            let cv = comps[4].col(col);
            for (o, e) in out.iter_mut().zip(&cv) {
                let term = e.times(coeff);
                *o = if sgn >= 0 { o.plus(&term) } else { o.minus(&term) };
            }
        }
        out
    };

    // c_4(Lambda^2 M_1 (x) alpha_2(K_2)) = 0.
    {
        let mut failure = None;
        'outer: for a in 0..rank_m1 {
            for bb in a + 1..rank_m1 {
                for kappa in 0..k.rank(2) {
                    let av = data.alpha[2].col(kappa);
                    if !vec_is_zero(&c4_apply(a, bb, &av)) {
                        failure = Some(format!("wedge ({a},{bb}) with alpha_2 column {kappa}"));
                        break 'outer;
                    }
                }
            }
        }
        checks.push(CheckItem::from("c4_on_alpha2_image", failure.clone()));
        if let Some(w) = failure {
            return Err(Error::PropertyFailure(format!(
                "c_4 does not vanish on the alpha_2 summand: {w}"
            )));
        }
    }

    // Symmetrized alpha_1 vanishing:
    // c_4(e_a ^ e_b (x) alpha_1(phi) e_c) + c_4(e_c ^ e_b (x) alpha_1(phi) e_a) = 0,
    // including the diagonal case c = a.
    {
        let mut failure = None;
        'outer: for s in 0..3usize {
            let aphi = data.alpha[1].col(s);
            for a in 0..rank_m1 {
                for bb in 0..rank_m1 {
                    for c in 0..rank_m1 {
                        let pa = data
                            .m
                            .mul_vec(1, &aphi, 1, &unit_vec(&ring, rank_m1, c));
                        let pc = data
                            .m
                            .mul_vec(1, &aphi, 1, &unit_vec(&ring, rank_m1, a));
                        let v = vec_add(&c4_apply(a, bb, &pa), &c4_apply(c, bb, &pc));
                        if !vec_is_zero(&v) {
                            failure =
                                Some(format!("phi index {s}, wedge indices ({a},{bb},{c})"));
                            break 'outer;
                        }
                    }
                }
            }
        }
        checks.push(CheckItem::from("c4_symmetrized_alpha1", failure.clone()));
        if let Some(w) = failure {
            return Err(Error::PropertyFailure(format!(
                "symmetrized alpha_1 identity for c_4 fails: {w}"
            )));
        }
    }

    Ok(CMorphism { comps, checks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multialg::koszul_algebra;
    use crate::poly::{pp, PolyRing};

    fn setup() -> (ComparisonData, TateComplexB) {
        let r = PolyRing::new(
            0,
            vec!["x1".into(), "x2".into(), "x3".into(), "x4".into()],
        )
        .unwrap();
        let m = koszul_algebra(&r, &["x1", "x2", "x3", "x4"].map(|s| pp(&r, s))).unwrap();
        let seq: Vec<_> = ["x1", "x2", "x3"].iter().map(|s| pp(&r, s)).collect();
        let k = koszul_algebra(&r, &seq).unwrap();
        let mut data = super::super::comparison::build_alpha(&m, &k, &seq, &[0, 1, 2]).unwrap();
        super::super::comparison::build_beta(&mut data).unwrap();
        let b = super::super::tate::build_tate_b(&m, &[0, 1, 2]).unwrap();
        (data, b)
    }

    #[test]
    fn c_is_a_chain_map_on_ci() {
        let (data, b) = setup();
        let c = build_c(&data, &b).unwrap();
        assert!(c.checks.iter().all(|i| i.pass));
        // All summand columns where the homotopy is forced to vanish carry
        // zero c-columns; on the CI instance this covers all of c_3, c_4.
        assert!(c.comps[3].is_zero());
        assert!(c.comps[4].is_zero());
    }
}
