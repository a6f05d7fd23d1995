//! The comparison map `alpha : K -> M` and the duality map
//! `beta : M -> K[-1]`.
//!
//! `alpha_1` is the inclusion of the splitting summand; higher components
//! are the multiplicative extension. `beta` is solved degree by degree from
//! the pairing identity
//! `[beta_i(theta) * phi]_K = (-1)^(i+1) [theta * alpha_{4-i}(phi)]_M`,
//! inverting the Koszul-side pairing (unimodular by Koszul duality).
//! Commutation and adjoint signs are measured and recorded, never assumed.

use crate::error::{Error, Result};
use crate::matrix::PolyMatrix;
use crate::multialg::{unit_vec, vec_is_zero, vec_neg, DgAlgebra};
use crate::poly::Poly;

#[derive(Debug, Clone)]
pub struct ComparisonData {
    pub m: DgAlgebra,
    pub k: DgAlgebra,
    pub seq: Vec<Poly>,
    pub splitting: Vec<usize>,
    /// `alpha[i] : K_i -> M_i` for `i = 0..3`.
    pub alpha: Vec<PolyMatrix>,
    /// `beta[i-1] : M_i -> K_{i-1}` for `i = 1..4`.
    pub beta: Vec<PolyMatrix>,
    /// Measured signs `eps(i)` in `k o beta_i = eps(i) * beta_{i-1} o m_i`.
    pub beta_chain_signs: Vec<i64>,
    /// Measured signs in `beta_{i+j}(alpha_i(phi) theta) = eps * phi beta_j(theta)`.
    pub adjoint_signs: Vec<(usize, usize, i64)>,
    /// Orientation generator of `M_4` (coefficient vector with bracket 1).
    pub omega: Vec<Poly>,
    /// Inverse of the (1x1 unimodular) `beta_4`.
    pub beta4_inv: PolyMatrix,
}

impl ComparisonData {
    pub fn beta_mat(&self, i: usize) -> &PolyMatrix {
        &self.beta[i - 1]
    }

    pub fn alpha_mat(&self, i: usize) -> &PolyMatrix {
        &self.alpha[i]
    }

    /// `beta_i` applied to a coefficient vector over `M_i`.
    pub fn beta_apply(&self, i: usize, v: &[Poly]) -> Vec<Poly> {
        self.beta[i - 1].apply(v)
    }

    /// `alpha_i` applied to a coefficient vector over `K_i`.
    pub fn alpha_apply(&self, i: usize, v: &[Poly]) -> Vec<Poly> {
        self.alpha[i].apply(v)
    }
}

/// Build `alpha`: the splitting columns of `m_1` must equal the regular
/// sequence entrywise (checked, not solved); `alpha_1` is then the inclusion
/// and `alpha_2`, `alpha_3` are forced by multiplicativity.
pub fn build_alpha(
    m: &DgAlgebra,
    k: &DgAlgebra,
    seq: &[Poly],
    splitting: &[usize],
) -> Result<ComparisonData> {
    let ring = m.ring().clone();
    if m.len() != 4 {
        return Err(Error::InvalidParams(format!(
            "expected a length-4 algebra, got length {}",
            m.len()
        )));
    }
    if k.len() != 3 || seq.len() != 3 {
        return Err(Error::InvalidParams(
            "expected a length-3 Koszul complex on a 3-element sequence".into(),
        ));
    }
    if splitting.len() != 3 {
        return Err(Error::SplittingMismatch(format!(
            "splitting has {} indices, expected 3",
            splitting.len()
        )));
    }
    let rank_m1 = m.rank(1);
    let mut seen = std::collections::BTreeSet::new();
    for &s in splitting {
        if s >= rank_m1 {
            return Err(Error::SplittingMismatch(format!(
                "splitting index {s} out of range (rank {rank_m1})"
            )));
        }
        if !seen.insert(s) {
            return Err(Error::SplittingMismatch(format!(
                "repeated splitting index {s}"
            )));
        }
    }
    // m_1 restricted to the splitting columns must equal the sequence.
    let d1 = m.complex.d(1);
    for (j, &col) in splitting.iter().enumerate() {
        if *d1.at(0, col) != seq[j] {
            return Err(Error::SplittingMismatch(format!(
                "m_1 column {col} is {} but the sequence entry {} is {}",
                d1.at(0, col),
                j,
                seq[j]
            )));
        }
    }

    let alpha0 = PolyMatrix::identity(&ring, 1);
    let mut alpha1 = PolyMatrix::zero(&ring, rank_m1, 3);
    for (j, &col) in splitting.iter().enumerate() {
        alpha1.set(col, j, Poly::one(&ring));
    }
    // alpha_2 on the wedge basis of K_2 (pairs, lexicographic).
    let w2 = crate::multialg::wedge_basis(3, 2);
    let mut alpha2 = PolyMatrix::zero(&ring, m.rank(2), w2.len());
    for (c, t) in w2.iter().enumerate() {
        let v = m.mul_basis(1, splitting[t[0]], 1, splitting[t[1]]);
        alpha2.set_col(c, &v);
    }
    // alpha_3 on the single top wedge.
    let mut alpha3 = PolyMatrix::zero(&ring, m.rank(3), 1);
    {
        let a23 = alpha2.col(w2.iter().position(|t| *t == vec![1, 2]).unwrap());
        let v = m.mul_vec(1, &unit_vec(&ring, rank_m1, splitting[0]), 2, &a23);
        alpha3.set_col(0, &v);
    }
    let alpha = vec![alpha0, alpha1, alpha2, alpha3];

    // Multiplicativity on every wedge basis pair of K.
    for i in 1..=3usize {
        for j in 1..=3usize {
            if i + j > 3 {
                continue;
            }
            for s in 0..k.rank(i) {
                for t in 0..k.rank(j) {
                    let kw = k.mul_basis(i, s, j, t);
                    let lhs = alpha[i + j].apply(&kw);
                    let rhs = m.mul_vec(i, &alpha[i].col(s), j, &alpha[j].col(t));
                    if lhs != rhs {
                        return Err(Error::PropertyFailure(format!(
                            "alpha multiplicativity fails on degrees ({i},{j}) basis ({s},{t})"
                        )));
                    }
                }
            }
        }
    }

    // Chain map: m_i o alpha_i = alpha_{i-1} o k_i for i = 1..3.
    for i in 1..=3usize {
        let lhs = m.complex.d(i).compose(&alpha[i])?;
        let rhs = alpha[i - 1].compose(&k.complex.d(i))?;
        let res = lhs.minus(&rhs)?;
        if let Some((r, c, e)) = res.first_nonzero() {
            return Err(Error::ChainMapFailure {
                degree: i,
                row: r,
                col: c,
                entry: e.to_string(),
            });
        }
    }

    let omega = m.orientation_generator()?;
    Ok(ComparisonData {
        m: m.clone(),
        k: k.clone(),
        seq: seq.to_vec(),
        splitting: splitting.to_vec(),
        alpha,
        beta: Vec::new(),
        beta_chain_signs: Vec::new(),
        adjoint_signs: Vec::new(),
        omega,
        beta4_inv: PolyMatrix::zero(&ring, 0, 0),
    })
}

/// Solve `beta` from the pairing identity and verify its properties:
/// `beta o alpha = 0`, the adjoint identity with measured signs, `beta_4`
/// unimodular, and the chain-commutation signs.
pub fn build_beta(data: &mut ComparisonData) -> Result<()> {
    let m = data.m.clone();
    let k = data.k.clone();
    let ring = m.ring().clone();

    let mut beta = Vec::new();
    for i in 1..=4usize {
        // Koszul-side pairing K_{i-1} (x) K_{4-i} -> R.
        let ri = k.rank(i - 1);
        let rj = k.rank(4 - i);
        let mut pairing = PolyMatrix::zero(&ring, ri, rj);
        for s in 0..ri {
            for t in 0..rj {
                let prod = k.mul_basis(i - 1, s, 4 - i, t);
                pairing.set(s, t, k.orient(&prod));
            }
        }
        let inv_t = pairing.transpose().unimodular_inverse().map_err(|_| {
            Error::DualityFailure(format!(
                "Koszul pairing K_{} (x) K_{} is not unimodular",
                i - 1,
                4 - i
            ))
        })?;
        let mut bi = PolyMatrix::zero(&ring, ri, m.rank(i));
        for u in 0..m.rank(i) {
            let mut rhs = vec![Poly::zero(&ring); rj];
            for (t, slot) in rhs.iter_mut().enumerate() {
                let av = data.alpha[4 - i].col(t);
                let prod = m.mul_vec(i, &unit_vec(&ring, m.rank(i), u), 4 - i, &av);
                let val = m.orient(&prod);
                *slot = if (i + 1) % 2 == 0 { val } else { val.negated() };
            }
            bi.set_col(u, &inv_t.apply(&rhs));
        }
        beta.push(bi);
    }
    data.beta = beta;

    // beta o alpha = 0 in every degree where alpha exists.
    for i in 1..=3usize {
        let prod = data.beta[i - 1].compose(&data.alpha[i])?;
        if !prod.is_zero() {
            return Err(Error::PropertyFailure(format!(
                "beta_{i} o alpha_{i} != 0"
            )));
        }
    }

    // Adjoint identity with measured sign per degree pair.
    let mut adjoint_signs = Vec::new();
    for i in 1..=3usize {
        for j in 1..=3usize {
            if i + j > 4 {
                continue;
            }
            let mut sign: Option<i64> = None;
            let mut consistent = true;
            for s in 0..k.rank(i) {
                for t in 0..m.rank(j) {
                    let av = data.alpha[i].col(s);
                    let prod = m.mul_vec(i, &av, j, &unit_vec(&ring, m.rank(j), t));
                    let lhs = data.beta_apply(i + j, &prod);
                    let bt = data.beta_apply(j, &unit_vec(&ring, m.rank(j), t));
                    let rhs = k.mul_vec(i, &unit_vec(&ring, k.rank(i), s), j - 1, &bt);
                    if vec_is_zero(&lhs) && vec_is_zero(&rhs) {
                        continue;
                    }
                    if lhs == rhs {
                        match sign {
                            None => sign = Some(1),
                            Some(1) => {}
                            Some(_) => consistent = false,
                        }
                    } else if lhs == vec_neg(&rhs) {
                        match sign {
                            None => sign = Some(-1),
                            Some(-1) => {}
                            Some(_) => consistent = false,
                        }
                    } else {
                        consistent = false;
                    }
                }
            }
            if !consistent {
                return Err(Error::PropertyFailure(format!(
                    "adjoint identity beta(alpha(phi) theta) = +- phi beta(theta) fails on degrees ({i},{j})"
                )));
            }
            adjoint_signs.push((i, j, sign.unwrap_or(1)));
        }
    }
    data.adjoint_signs = adjoint_signs;

    // beta_4 must be a 1x1 unit.
    let b4 = &data.beta[3];
    data.beta4_inv = b4.unimodular_inverse().map_err(|_| {
        Error::DualityFailure("beta_4 is not unimodular".into())
    })?;

    // Chain commutation sign per degree.
    let mut signs = vec![1i64; 5];
    for i in 2..=4usize {
        let lhs = k.complex.d(i - 1).compose(&data.beta[i - 1])?;
        let rhs = data.beta[i - 2].compose(&m.complex.d(i))?;
        if lhs == rhs {
            signs[i] = 1;
        } else if lhs == rhs.negated() {
            signs[i] = -1;
        } else {
            let res = lhs.minus(&rhs)?;
            let (r, c, e) = res.first_nonzero().unwrap();
            return Err(Error::ChainMapFailure {
                degree: i,
                row: r,
                col: c,
                entry: e.to_string(),
            });
        }
    }
    data.beta_chain_signs = signs;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multialg::koszul_algebra;
    use crate::poly::{pp, PolyRing};

    fn ci_data() -> ComparisonData {
        let r = PolyRing::new(
            0,
            vec!["x1".into(), "x2".into(), "x3".into(), "x4".into()],
        )
        .unwrap();
        let m = koszul_algebra(
            &r,
            &["x1", "x2", "x3", "x4"].map(|s| pp(&r, s)),
        )
        .unwrap();
        let seq: Vec<_> = ["x1", "x2", "x3"].iter().map(|s| pp(&r, s)).collect();
        let k = koszul_algebra(&r, &seq).unwrap();
        let mut data = build_alpha(&m, &k, &seq, &[0, 1, 2]).unwrap();
        build_beta(&mut data).unwrap();
        data
    }

    #[test]
    fn alpha_is_inclusion_on_ci() {
        let data = ci_data();
        // alpha_1 = [I_3; 0].
        for i in 0..3 {
            for j in 0..3 {
                let e = data.alpha[1].at(i, j);
                assert_eq!(!e.is_zero(), i == j);
            }
        }
        for j in 0..3 {
            assert!(data.alpha[1].at(3, j).is_zero());
        }
    }

    #[test]
    fn permuted_splitting_rejected() {
        let r = PolyRing::new(
            0,
            vec!["x1".into(), "x2".into(), "x3".into(), "x4".into()],
        )
        .unwrap();
        let m = koszul_algebra(&r, &["x1", "x2", "x3", "x4"].map(|s| pp(&r, s))).unwrap();
        let seq: Vec<_> = ["x1", "x2", "x3"].iter().map(|s| pp(&r, s)).collect();
        let k = koszul_algebra(&r, &seq).unwrap();
        let res = build_alpha(&m, &k, &seq, &[1, 2, 0]);
        assert!(matches!(res, Err(Error::SplittingMismatch(_))));
    }

    #[test]
    fn beta_properties_on_ci() {
        let data = ci_data();
        // beta_1 vanishes on the splitting summand.
        for &col in &data.splitting {
            assert!(data.beta[0].at(0, col).is_zero());
        }
        // beta_4 is a 1x1 unit.
        assert_eq!(data.beta[3].rows, 1);
        assert!(data.beta[3].at(0, 0).is_constant());
        // Chain signs and adjoint signs are all +1 under these conventions.
        assert!(data.beta_chain_signs.iter().all(|&s| s == 1));
        assert!(data.adjoint_signs.iter().all(|&(_, _, s)| s == 1));
    }
}
