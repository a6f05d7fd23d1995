//! The bilinear maps `X : Lambda^2 M_1 -> M_2` and `Xt : M_1 (x) M_2 -> M_3`
//! extracted from the homotopy block `h_4` through the Poincare pairings,
//! together with the full identity suite they must satisfy.

use crate::error::{Error, Result};
use crate::matrix::PolyMatrix;
use crate::multialg::{unit_vec, vec_add, vec_is_zero, vec_sub, wedge_basis, CheckItem};
use crate::poly::Poly;

use super::comparison::ComparisonData;
use super::homotopy::HomotopyData;
use super::tate::TateComplexB;

#[derive(Debug, Clone)]
pub struct XMaps {
    /// Columns indexed by the wedge basis of `Lambda^2 M_1`.
    pub x: PolyMatrix,
    /// Columns indexed by pairs `(s, t)` in row-major order
    /// (`s * rank_m2 + t`).
    pub xt: PolyMatrix,
    pub wedge_pairs: Vec<Vec<usize>>,
    pub checks: Vec<CheckItem>,
}

impl XMaps {
    /// Signed column `X(e_s ^ e_u)` for arbitrary index order.
    pub fn x_wedge(&self, s: usize, u: usize, rank_m2: usize) -> Vec<Poly> {
        if s == u {
            return vec![Poly::zero(self.x.ring()); rank_m2];
        }
        let (sgn, pair) = if s < u {
            (1i64, vec![s, u])
        } else {
            (-1i64, vec![u, s])
        };
        let idx = self
            .wedge_pairs
            .iter()
            .position(|p| *p == pair)
            .expect("wedge pair");
        let col = self.x.col(idx);
        if sgn >= 0 {
            col
        } else {
            col.into_iter().map(|p| p.negated()).collect()
        }
    }

    /// Bilinear alternating extension of `X` to coefficient vectors.
    pub fn x_bilinear(&self, v1: &[Poly], v2: &[Poly], rank_m2: usize) -> Vec<Poly> {
        let ring = self.x.ring().clone();
        let mut out = vec![Poly::zero(&ring); rank_m2];
        for (s, a) in v1.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (u, b) in v2.iter().enumerate() {
                if b.is_zero() || s == u {
                    continue;
                }
                let col = self.x_wedge(s, u, rank_m2);
                let c = a.times(b);
                for (o, e) in out.iter_mut().zip(&col) {
                    if !e.is_zero() {
                        *o = o.plus(&e.times(&c));
                    }
                }
            }
        }
        out
    }

    pub fn xt_pair(&self, s: usize, t: usize, rank_m2: usize) -> Vec<Poly> {
        self.xt.col(s * rank_m2 + t)
    }

    /// Bilinear extension of `Xt` to coefficient vectors.
    pub fn xt_bilinear(&self, v1: &[Poly], v2: &[Poly], rank_m2: usize) -> Vec<Poly> {
        let ring = self.xt.ring().clone();
        let mut out = vec![Poly::zero(&ring); self.xt.rows];
        for (s, a) in v1.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (t, b) in v2.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let col = self.xt_pair(s, t, rank_m2);
                let c = a.times(b);
                for (o, e) in out.iter_mut().zip(&col) {
                    if !e.is_zero() {
                        *o = o.plus(&e.times(&c));
                    }
                }
            }
        }
        out
    }
}

/// Extract `X` and `Xt` by inverting the degree-(2,2) and (1,3) Poincare
/// pairings against `beta_4^{-1} h_4`, then verify the defining chain of
/// equalities and the nine induced identities (plus their dual forms) as
/// exact matrix identities.
pub fn extract_x(
    data: &ComparisonData,
    b: &TateComplexB,
    hdata: &HomotopyData,
) -> Result<XMaps> {
    let m = &data.m;
    let ring = m.ring().clone();
    let rank_m1 = m.rank(1);
    let rank_m2 = m.rank(2);
    let rank_m3 = m.rank(3);

    let p22 = m.pairing_matrix(2);
    let p13 = m.pairing_matrix(1);
    if !p22.unimodular {
        return Err(Error::DualityFailure(
            "M_2 (x) M_2 pairing is not unimodular".into(),
        ));
    }
    if !p13.unimodular {
        return Err(Error::DualityFailure(
            "M_1 (x) M_3 pairing is not unimodular".into(),
        ));
    }
    let p22t_inv = p22.matrix.transpose().unimodular_inverse()?;
    let p13_inv = p13.matrix.unimodular_inverse()?;

    // Bracket of beta_4^{-1} h_4 on a basis column of Lambda^2 M_1 (x) M_2,
    // for a *sorted* pair.
    let h4_bracket = |pair: &[usize], t: usize| -> Poly {
        let col = b.b4_wedge_m2_col(pair, t, rank_m2);
        let hv = hdata.h[4].col(col);
        let mv = data.beta4_inv.apply(&hv);
        m.orient(&mv)
    };

    let pairs = wedge_basis(rank_m1, 2);
    let mut x = PolyMatrix::zero(&ring, rank_m2, pairs.len());
    for (w, pair) in pairs.iter().enumerate() {
        let rhs: Vec<Poly> = (0..rank_m2).map(|u| h4_bracket(pair, u)).collect();
        x.set_col(w, &p22t_inv.apply(&rhs));
    }

    let mut xt = PolyMatrix::zero(&ring, rank_m3, rank_m1 * rank_m2);
    for s in 0..rank_m1 {
        for t in 0..rank_m2 {
            let mut rhs = vec![Poly::zero(&ring); rank_m1];
            for (u, slot) in rhs.iter_mut().enumerate() {
                if u == s {
                    continue;
                }
                let (sgn, pair) = if s < u {
                    (1i64, vec![s, u])
                } else {
                    (-1i64, vec![u, s])
                };
                let v = h4_bracket(&pair, t);
                *slot = if sgn >= 0 { v } else { v.negated() };
            }
            xt.set_col(s * rank_m2 + t, &p13_inv.apply(&rhs));
        }
    }

    let maps = XMaps {
        x,
        xt,
        wedge_pairs: pairs,
        checks: Vec::new(),
    };
    let mut checks = Vec::new();
    let fail = |prop: &str, witness: String| -> Error {
        Error::IdentityFailure {
            property: prop.to_string(),
            witness,
        }
    };

    // Defining chain: X(e_s ^ e_u) * b_t = beta4^{-1} h4(e_s ^ e_u (x) b_t)
    // = e_u * Xt(e_s (x) b_t), on every basis triple.
    {
        let mut failure = None;
        'outer: for s in 0..rank_m1 {
            for u in 0..rank_m1 {
                for t in 0..rank_m2 {
                    let mid = if s == u {
                        Poly::zero(&ring)
                    } else {
                        let (sgn, pair) = if s < u {
                            (1i64, vec![s, u])
                        } else {
                            (-1i64, vec![u, s])
                        };
                        let v = h4_bracket(&pair, t);
                        if sgn >= 0 {
                            v
                        } else {
                            v.negated()
                        }
                    };
                    let xw = maps.x_wedge(s, u, rank_m2);
                    let lhs =
                        m.orient(&m.mul_vec(2, &xw, 2, &unit_vec(&ring, rank_m2, t)));
                    let xtv = maps.xt_pair(s, t, rank_m2);
                    let rhs =
                        m.orient(&m.mul_vec(1, &unit_vec(&ring, rank_m1, u), 3, &xtv));
                    if lhs != mid || rhs != mid {
                        failure = Some(format!("basis triple ({s},{u},{t})"));
                        break 'outer;
                    }
                }
            }
        }
        checks.push(CheckItem::from("x_defining_identity", failure.clone()));
        if let Some(w) = failure {
            return Err(fail("defining", w));
        }
    }

    let alpha1 = &data.alpha[1];
    let alpha2 = &data.alpha[2];
    let alpha3 = &data.alpha[3];
    let beta1 = &data.beta[0];
    let beta2 = &data.beta[1];
    let beta3 = &data.beta[2];
    let beta4 = &data.beta[3];
    let m2 = m.complex.d(2);
    let m3mat = m.complex.d(3);

    // (1) beta_2 X = 0 and (2) beta_3 Xt = 0 as matrix products.
    {
        let prod = beta2.compose(&maps.x)?;
        let failure = prod
            .first_nonzero()
            .map(|(r, c, e)| format!("entry ({r},{c}) = {e}"));
        checks.push(CheckItem::from("x_prop1_beta2_x", failure.clone()));
        if let Some(w) = failure {
            return Err(fail("1", w));
        }
    }
    {
        let prod = beta3.compose(&maps.xt)?;
        let failure = prod
            .first_nonzero()
            .map(|(r, c, e)| format!("entry ({r},{c}) = {e}"));
        checks.push(CheckItem::from("x_prop2_beta3_xt", failure.clone()));
        if let Some(w) = failure {
            return Err(fail("2", w));
        }
    }

    // (3), guaranteed parts: Xt(- (x) alpha_2) = 0, X(- ^ alpha_1) = 0,
    // Xt(alpha_1 (x) -) = 0. These follow formally from the forced zero
    // columns of h_4.
    {
        let mut failure = None;
        'p3: for s in 0..rank_m1 {
            for kappa in 0..3usize {
                let av = alpha2.col(kappa);
                if !vec_is_zero(&maps.xt_bilinear(
                    &unit_vec(&ring, rank_m1, s),
                    &av,
                    rank_m2,
                )) {
                    failure = Some(format!("Xt(e{s} (x) alpha_2 col {kappa})"));
                    break 'p3;
                }
            }
        }
        if failure.is_none() {
            'p3b: for c in 0..3usize {
                let ac = alpha1.col(c);
                for s in 0..rank_m1 {
                    if !vec_is_zero(&maps.x_bilinear(
                        &unit_vec(&ring, rank_m1, s),
                        &ac,
                        rank_m2,
                    )) {
                        failure = Some(format!("X(e{s} ^ alpha_1 col {c})"));
                        break 'p3b;
                    }
                }
                for t in 0..rank_m2 {
                    if !vec_is_zero(&maps.xt_bilinear(
                        &ac,
                        &unit_vec(&ring, rank_m2, t),
                        rank_m2,
                    )) {
                        failure = Some(format!("Xt(alpha_1 col {c} (x) b{t})"));
                        break 'p3b;
                    }
                }
            }
        }
        checks.push(CheckItem::from("x_prop3_alpha_annihilation", failure.clone()));
        if let Some(w) = failure {
            return Err(fail("3", w));
        }
    }

    // (3), pointwise part alpha_1 * X = 0, and (4) in its plain pointwise
    // form. These hold exactly when the homotopy gauge correction met no
    // obstruction; otherwise only the alpha-multiplied alternating form
    // below is available, and it is the one the final structure consumes.
    if hdata.gauge_obstructions.is_empty() {
        let mut failure = None;
        'p3c: for c in 0..3usize {
            let ac = alpha1.col(c);
            for w in 0..maps.wedge_pairs.len() {
                let xw = maps.x.col(w);
                if !vec_is_zero(&m.mul_vec(1, &ac, 2, &xw)) {
                    failure = Some(format!("alpha_1 col {c} * X wedge {w}"));
                    break 'p3c;
                }
            }
        }
        if failure.is_none() {
            'p4: for s in 0..rank_m1 {
                for t in 0..rank_m1 {
                    for u in 0..rank_m1 {
                        let a = m.mul_vec(
                            1,
                            &unit_vec(&ring, rank_m1, u),
                            2,
                            &maps.x_wedge(s, t, rank_m2),
                        );
                        let bb = m.mul_vec(
                            1,
                            &unit_vec(&ring, rank_m1, s),
                            2,
                            &maps.x_wedge(u, t, rank_m2),
                        );
                        if !vec_is_zero(&vec_add(&a, &bb)) {
                            failure = Some(format!("indices ({s},{t},{u})"));
                            break 'p4;
                        }
                    }
                }
            }
        }
        checks.push(CheckItem::from(
            "x_prop4_symmetrized_annihilation",
            failure.clone(),
        ));
        if let Some(w) = failure {
            return Err(fail("3/4", w));
        }
    }

    // (4), alpha-multiplied alternating form, always guaranteed:
    // alpha(phi) e_u * X(e_s ^ e_t) + alpha(phi) e_s * X(e_u ^ e_t) = 0.
    {
        let mut failure = None;
        'p4a: for c in 0..3usize {
            let ac = alpha1.col(c);
            for s in 0..rank_m1 {
                for t in 0..rank_m1 {
                    for u in 0..rank_m1 {
                        let mu = m.mul_vec(1, &ac, 1, &unit_vec(&ring, rank_m1, u));
                        let ms = m.mul_vec(1, &ac, 1, &unit_vec(&ring, rank_m1, s));
                        let a = m.mul_vec(2, &mu, 2, &maps.x_wedge(s, t, rank_m2));
                        let bb = m.mul_vec(2, &ms, 2, &maps.x_wedge(u, t, rank_m2));
                        if !vec_is_zero(&vec_add(&a, &bb)) {
                            failure = Some(format!("phi {c}, indices ({s},{t},{u})"));
                            break 'p4a;
                        }
                    }
                }
            }
        }
        checks.push(CheckItem::from(
            "x_prop4_alpha_alternating",
            failure.clone(),
        ));
        if let Some(w) = failure {
            return Err(fail("4", w));
        }
    }

    // (5) m_2 X(e_s ^ e_t) = beta_1(e_t) e_s - beta_1(e_s) e_t
    //     - alpha_1 beta_2 (e_s e_t).
    {
        let mut failure = None;
        'p5: for (w, pair) in maps.wedge_pairs.iter().enumerate() {
            let (s, t) = (pair[0], pair[1]);
            let lhs = m2.apply(&maps.x.col(w));
            let mut rhs = unit_vec(&ring, rank_m1, s)
                .iter()
                .map(|p| p.times(beta1.at(0, t)))
                .collect::<Vec<_>>();
            rhs = vec_sub(
                &rhs,
                &unit_vec(&ring, rank_m1, t)
                    .iter()
                    .map(|p| p.times(beta1.at(0, s)))
                    .collect::<Vec<_>>(),
            );
            let prod = m.mul_basis(1, s, 1, t);
            rhs = vec_sub(&rhs, &alpha1.apply(&beta2.apply(&prod)));
            if lhs != rhs {
                failure = Some(format!("wedge ({s},{t})"));
                break 'p5;
            }
        }
        checks.push(CheckItem::from("x_prop5_m2x", failure.clone()));
        if let Some(w) = failure {
            return Err(fail("5", w));
        }
    }

    // (6) Xt(e_s (x) m_3(g_v)) = beta_1(e_s) g_v - e_s * alpha_2 beta_3(g_v)
    //     + alpha_3 beta_4 (e_s g_v).
    {
        let mut failure = None;
        'p6: for s in 0..rank_m1 {
            for v in 0..rank_m3 {
                let lhs = maps.xt_bilinear(
                    &unit_vec(&ring, rank_m1, s),
                    &m3mat.col(v),
                    rank_m2,
                );
                let mut rhs: Vec<Poly> = unit_vec(&ring, rank_m3, v)
                    .iter()
                    .map(|p| p.times(beta1.at(0, s)))
                    .collect();
                let ab = alpha2.apply(&beta3.col(v));
                rhs = vec_sub(&rhs, &m.mul_vec(1, &unit_vec(&ring, rank_m1, s), 2, &ab));
                let prod = m.mul_basis(1, s, 3, v);
                rhs = vec_add(&rhs, &alpha3.apply(&beta4.apply(&prod)));
                if lhs != rhs {
                    failure = Some(format!("pair ({s},{v})"));
                    break 'p6;
                }
            }
        }
        checks.push(CheckItem::from("x_prop6_xt_m3", failure.clone()));
        if let Some(w) = failure {
            return Err(fail("6", w));
        }
    }

    // (7) X(e_s ^ m_2 b_t) - m_3 Xt(e_s (x) b_t)
    //     = alpha_2 beta_3(e_s b_t) - e_s * alpha_1 beta_2(b_t)
    //       - beta_1(e_s) b_t.
    {
        let mut failure = None;
        'p7: for s in 0..rank_m1 {
            for t in 0..rank_m2 {
                let lhs1 = maps.x_bilinear(
                    &unit_vec(&ring, rank_m1, s),
                    &m2.col(t),
                    rank_m2,
                );
                let lhs2 = m3mat.apply(&maps.xt_pair(s, t, rank_m2));
                let lhs = vec_sub(&lhs1, &lhs2);
                let prod = m.mul_basis(1, s, 2, t);
                let mut rhs = alpha2.apply(&beta3.apply(&prod));
                let ab = alpha1.apply(&beta2.col(t));
                rhs = vec_sub(&rhs, &m.mul_vec(1, &unit_vec(&ring, rank_m1, s), 1, &ab));
                rhs = vec_sub(
                    &rhs,
                    &unit_vec(&ring, rank_m2, t)
                        .iter()
                        .map(|p| p.times(beta1.at(0, s)))
                        .collect::<Vec<_>>(),
                );
                if lhs != rhs {
                    failure = Some(format!("pair ({s},{t})"));
                    break 'p7;
                }
            }
        }
        checks.push(CheckItem::from("x_prop7_mixed_leibniz", failure.clone()));
        if let Some(w) = failure {
            return Err(fail("7", w));
        }
    }

    // (8) Xt(m_2 b_t (x) b_u) + Xt(m_2 b_u (x) b_t)
    //     = alpha_1 beta_2(b_t) * b_u + alpha_1 beta_2(b_u) * b_t
    //       - alpha_3 beta_4 (b_t b_u).
    {
        let mut failure = None;
        'p8: for t in 0..rank_m2 {
            for u in t..rank_m2 {
                let lhs = vec_add(
                    &maps.xt_bilinear(&m2.col(t), &unit_vec(&ring, rank_m2, u), rank_m2),
                    &maps.xt_bilinear(&m2.col(u), &unit_vec(&ring, rank_m2, t), rank_m2),
                );
                let abt = alpha1.apply(&beta2.col(t));
                let abu = alpha1.apply(&beta2.col(u));
                let mut rhs = m.mul_vec(1, &abt, 2, &unit_vec(&ring, rank_m2, u));
                rhs = vec_add(&rhs, &m.mul_vec(1, &abu, 2, &unit_vec(&ring, rank_m2, t)));
                let prod = m.mul_basis(2, t, 2, u);
                rhs = vec_sub(&rhs, &alpha3.apply(&beta4.apply(&prod)));
                if lhs != rhs {
                    failure = Some(format!("pair ({t},{u})"));
                    break 'p8;
                }
            }
        }
        checks.push(CheckItem::from("x_prop8_adjoint_symmetric", failure.clone()));
        if let Some(w) = failure {
            return Err(fail("8", w));
        }
    }

    // (9) Xt(e_s (x) X(e_u ^ e_t)) + Xt(e_u (x) X(e_s ^ e_t)) = 0.
    {
        let mut failure = None;
        'p9: for s in 0..rank_m1 {
            for t in 0..rank_m1 {
                for u in 0..rank_m1 {
                    let a = maps.xt_bilinear(
                        &unit_vec(&ring, rank_m1, s),
                        &maps.x_wedge(u, t, rank_m2),
                        rank_m2,
                    );
                    let bb = maps.xt_bilinear(
                        &unit_vec(&ring, rank_m1, u),
                        &maps.x_wedge(s, t, rank_m2),
                        rank_m2,
                    );
                    if !vec_is_zero(&vec_add(&a, &bb)) {
                        failure = Some(format!("indices ({s},{t},{u})"));
                        break 'p9;
                    }
                }
            }
        }
        checks.push(CheckItem::from("x_prop9_xt_of_x", failure.clone()));
        if let Some(w) = failure {
            return Err(fail("9", w));
        }
    }

    Ok(XMaps { checks, ..maps })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multialg::koszul_algebra;
    use crate::poly::{pp, PolyRing};

    #[test]
    fn x_maps_vanish_on_ci_and_identities_hold() {
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
        let c = super::super::cmorph::build_c(&data, &b).unwrap();
        let h = super::super::homotopy::solve_homotopy(&data, &b, &c).unwrap();
        let x = extract_x(&data, &b, &h).unwrap();
        // The homotopy vanishes on this instance, so X and Xt are zero; the
        // identity suite still exercises all the alpha/beta cancellations
        // (their right-hand sides must collapse to zero exactly).
        assert!(x.x.is_zero());
        assert!(x.xt.is_zero());
        assert!(x.checks.iter().all(|i| i.pass));
    }
}
