//! The constrained nullhomotopy `h : B -> K[-1]` with `c = kh + hd`.
//!
//! Components are solved degree by degree: columns on registered summands
//! are forced to zero before lifting (their right-hand sides must already
//! vanish), remaining columns are lifted through the Koszul differential by
//! the deterministic Groebner lift. Every lift is logged and resubstituted.

use crate::error::{Error, Result};
use crate::matrix::PolyMatrix;
use crate::multialg::{unit_vec, vec_add, vec_is_zero, CheckItem};
use crate::poly::Poly;

use super::comparison::ComparisonData;
use super::cmorph::CMorphism;
use super::tate::TateComplexB;

#[derive(Debug, Clone)]
pub struct LiftRecord {
    pub degree: usize,
    pub col: usize,
    pub rhs: Vec<Poly>,
    pub solution: Vec<Poly>,
}

#[derive(Debug, Clone)]
pub struct HomotopyData {
    /// `h[i] : B_i -> K_{i-1}` (zero rows at `i = 0`; forced zero through
    /// degree 2; solved at 3 and 4; `K_4 = 0` leaves nothing at 5).
    pub h: Vec<PolyMatrix>,
    pub lift_log: Vec<LiftRecord>,
    pub checks: Vec<CheckItem>,
    /// Wedge columns where the alpha-annihilation gauge could not be
    /// enforced; the pointwise annihilation identities downstream hold only
    /// in their alternating-combination forms there.
    pub gauge_obstructions: Vec<String>,
}

/// Gauge correction: `h_4` is unique once `h_3` is fixed (the top Koszul
/// differential is injective), and `h_3` is free modulo `im k_3` exactly on
/// the unregistered top-wedge columns. Choose that gauge so that `h_4`
/// vanishes on `Lambda^2 M_1 (x) (M_1 * alpha_1(K_1))` wherever possible:
/// the correction scalar per unregistered wedge column is pinned by exact
/// division against the regular-sequence entries, consistently across all
/// decompositions of the wedge.
///
/// The vanishing is not always achievable: the residual is an alternating
/// form that the one-parameter gauge cannot always kill (instances with a
/// nontrivial complement of the splitting can leave a genuine obstruction).
/// Obstructed columns are skipped and recorded; the pointwise alpha
/// annihilation identities of the induced maps are then only guaranteed in
/// their alternating-combination forms, which is all the final structure
/// needs.
fn correct_h4_on_alpha_products(
    data: &ComparisonData,
    b: &TateComplexB,
    h: &mut [PolyMatrix],
) -> Result<Vec<String>> {
    let m = &data.m;
    let k = &data.k;
    let ring = m.ring().clone();
    let rank_m2 = m.rank(2);
    let rank_m3 = m.rank(3);
    let s3 = b.summand(3, 3, 0, 0);

    let h4_bracket = |h4: &PolyMatrix, a: usize, bb: usize, m2vec: &[Poly]| -> Poly {
        let mut out = Poly::zero(&ring);
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
            let e = h4.at(0, col);
            if !e.is_zero() {
                let term = e.times(coeff);
                out = if sgn >= 0 {
                    out.plus(&term)
                } else {
                    out.minus(&term)
                };
            }
        }
        out
    };

    let mut delta = PolyMatrix::zero(&ring, k.rank(3), b.complex.rank(3));
    let mut any = false;
    let mut obstructed = Vec::new();
    'columns: for (wi, wt) in s3.wedge_tuples.iter().enumerate() {
        let col = s3.col(wi, 0, 0, rank_m3);
        if b.registered[3][col] {
            continue;
        }
        // Every decomposition e_a ^ e_b (x) e_c alpha(phi_s) of this wedge
        // must pin the same correction scalar.
        let (ta, tb, tc) = (wt[0], wt[1], wt[2]);
        let decomps = [(ta, tb, tc, 1i64), (ta, tc, tb, -1), (tb, tc, ta, 1)];
        let mut common: Option<Poly> = None;
        for (u, v, theta, sign) in decomps {
            for s in 0..3usize {
                let aphi = data.alpha[1].col(s);
                let prod = m.mul_vec(
                    1,
                    &crate::multialg::unit_vec(&ring, m.rank(1), theta),
                    1,
                    &aphi,
                );
                let val = h4_bracket(&h[4], u, v, &prod);
                // Constraint: val = -a_s * sign * delta.
                let Some(mut cand) = val.div_exact(&data.seq[s]) else {
                    obstructed.push(format!("wedge ({ta},{tb},{tc})"));
                    continue 'columns;
                };
                if sign >= 0 {
                    cand = cand.negated();
                }
                match &common {
                    None => common = Some(cand),
                    Some(c) => {
                        if *c != cand {
                            obstructed.push(format!("wedge ({ta},{tb},{tc})"));
                            continue 'columns;
                        }
                    }
                }
            }
        }
        if let Some(c) = common {
            if !c.is_zero() {
                any = true;
                delta.set(0, col, c);
            }
        }
    }
    if any {
        h[3] = h[3].plus(&k.complex.d(3).compose(&delta)?)?;
        h[4] = h[4].minus(&delta.compose(&b.complex.d(4))?)?;
    }
    Ok(obstructed)
}

/// Solve the homotopy and verify the residual identity in all six degrees
/// plus the structural vanishing properties of `h_4`.
pub fn solve_homotopy(
    data: &ComparisonData,
    b: &TateComplexB,
    c: &CMorphism,
) -> Result<HomotopyData> {
    let m = &data.m;
    let k = &data.k;
    let ring = m.ring().clone();
    let rank_m1 = m.rank(1);
    let rank_m2 = m.rank(2);

    let mut h: Vec<PolyMatrix> = Vec::new();
    for i in 0..=5usize {
        let rows = if (1..=4).contains(&i) { k.rank(i - 1) } else { 0 };
        h.push(PolyMatrix::zero(&ring, rows, b.complex.rank(i)));
    }

    let mut lift_log = Vec::new();
    for degree in 3..=4usize {
        // rhs = c_i - h_{i-1} d_i.
        let rhs = c.comps[degree].minus(&h[degree - 1].compose(&b.complex.d(degree))?)?;
        let target = k.complex.d(degree - 1);
        let mut hi = PolyMatrix::zero(&ring, k.rank(degree - 1), b.complex.rank(degree));
        for col in 0..b.complex.rank(degree) {
            let rhs_col = rhs.col(col);
            if b.registered[degree][col] {
                if !vec_is_zero(&rhs_col) {
                    return Err(Error::LiftFailure {
                        degree,
                        col,
                        detail: "registered column has nonzero right-hand side".into(),
                    });
                }
                continue;
            }
            if vec_is_zero(&rhs_col) {
                continue;
            }
            let x = crate::grobner::lift(&target, &rhs_col).map_err(|e| match e {
                Error::NotInImage { remainder } => Error::LiftFailure {
                    degree,
                    col,
                    detail: format!("not in the image: remainder {remainder}"),
                },
                other => other,
            })?;
            hi.set_col(col, &x);
            lift_log.push(LiftRecord {
                degree,
                col,
                rhs: rhs_col,
                solution: x,
            });
        }
        h[degree] = hi;
    }

    let gauge_obstructions = correct_h4_on_alpha_products(data, b, &mut h)?;

    let mut checks = Vec::new();

    // Residual c_i - k_{i-1} h_i - h_{i-1} d_i = 0 for i = 0..5. At i = 5
    // this is the consistency identity c_5 = h_4 d_5 (K_4 = 0).
    for i in 0..=5usize {
        let mut res = c.comps[i].clone();
        if (1..=4).contains(&i) && i >= 2 {
            res = res.minus(&k.complex.d(i - 1).compose(&h[i])?)?;
        }
        if i >= 1 {
            let hd = h[i - 1].compose(&b.complex.d(i))?;
            if hd.rows == res.rows {
                res = res.minus(&hd)?;
            } else if !hd.is_zero() {
                return Err(Error::PropertyFailure(format!(
                    "homotopy residual shape mismatch at degree {i}"
                )));
            }
        }
        if let Some((r, cc, e)) = res.first_nonzero() {
            let item = CheckItem::fail(
                format!("homotopy_residual@{i}"),
                format!("entry ({r},{cc}) = {e}"),
            );
            checks.push(item);
            return Err(Error::PropertyFailure(format!(
                "homotopy residual nonzero at degree {i}: entry ({r},{cc}) = {e}"
            )));
        }
        checks.push(CheckItem::ok(format!("homotopy_residual@{i}")));
    }

    // Property (1)-(3): h vanishes on all registered columns (by
    // construction; asserted).
    {
        let mut failure = None;
        'outer: for i in 0..=5usize {
            for (col, &reg) in b.registered[i].iter().enumerate() {
                if reg && h[i].rows > 0 && !vec_is_zero(&h[i].col(col)) {
                    failure = Some(format!("degree {i} column {col}"));
                    break 'outer;
                }
            }
        }
        checks.push(CheckItem::from("h_zero_on_registered", failure.clone()));
        if let Some(w) = failure {
            return Err(Error::PropertyFailure(format!(
                "h nonzero on a registered summand: {w}"
            )));
        }
    }

    // Evaluate h_4 on a (possibly unsorted) wedge pair tensor an M_2 vector.
    let h4_apply = |a: usize, bb: usize, m2vec: &[Poly]| -> Vec<Poly> {
        let mut out = vec![Poly::zero(&ring); k.rank(3)];
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
            let cv = h[4].col(col);
            for (o, e) in out.iter_mut().zip(&cv) {
                let term = e.times(coeff);
                *o = if sgn >= 0 { o.plus(&term) } else { o.minus(&term) };
            }
        }
        out
    };

    // Property (4): h_4 vanishes against alpha_2 images in the M_2 slot.
    {
        let mut failure = None;
        'outer: for a in 0..rank_m1 {
            for bb in a + 1..rank_m1 {
                for kappa in 0..k.rank(2) {
                    let av = data.alpha[2].col(kappa);
                    if !vec_is_zero(&h4_apply(a, bb, &av)) {
                        failure = Some(format!("wedge ({a},{bb}) alpha_2 column {kappa}"));
                        break 'outer;
                    }
                }
            }
        }
        checks.push(CheckItem::from("h4_on_alpha2_image", failure.clone()));
        if let Some(w) = failure {
            return Err(Error::PropertyFailure(format!(
                "h_4 does not vanish on alpha_2 images: {w}"
            )));
        }
    }

    // Properties (5) and (6): the quadratic family
    // h_4(e_a ^ e_b (x) alpha_1(phi) e_a) = 0 and its polarization.
    {
        let mut failure = None;
        'outer: for s in 0..3usize {
            let aphi = data.alpha[1].col(s);
            for a in 0..rank_m1 {
                for bb in 0..rank_m1 {
                    // (5): repeated first slot.
                    let pa = m.mul_vec(1, &aphi, 1, &unit_vec(&ring, rank_m1, a));
                    if !vec_is_zero(&h4_apply(a, bb, &pa)) {
                        failure = Some(format!("diagonal: phi {s}, wedge ({a},{bb})"));
                        break 'outer;
                    }
                    // (6): symmetrized in (a, c).
                    for cdx in 0..rank_m1 {
                        let pc = m.mul_vec(1, &aphi, 1, &unit_vec(&ring, rank_m1, cdx));
                        let v = vec_add(&h4_apply(a, bb, &pc), &h4_apply(cdx, bb, &pa));
                        if !vec_is_zero(&v) {
                            failure =
                                Some(format!("symmetrized: phi {s}, indices ({a},{bb},{cdx})"));
                            break 'outer;
                        }
                    }
                }
            }
        }
        checks.push(CheckItem::from("h4_alpha1_product_family", failure.clone()));
        if let Some(w) = failure {
            return Err(Error::PropertyFailure(format!(
                "h_4 alpha_1-product vanishing fails: {w}"
            )));
        }
    }

    // The gauge-corrected vanishing: h_4 annihilates every wedge pair
    // tensored with an M_1 * alpha_1(K_1) product. Guaranteed exactly when
    // the gauge correction met no obstruction; in the obstructed case only
    // the alternating-combination form (the quadratic family above) holds,
    // and that is what the final structure actually consumes.
    if gauge_obstructions.is_empty() {
        let mut failure = None;
        'outer: for a in 0..rank_m1 {
            for bb in a + 1..rank_m1 {
                for cdx in 0..rank_m1 {
                    for s in 0..3usize {
                        let aphi = data.alpha[1].col(s);
                        let prod =
                            m.mul_vec(1, &unit_vec(&ring, rank_m1, cdx), 1, &aphi);
                        if !vec_is_zero(&h4_apply(a, bb, &prod)) {
                            failure = Some(format!(
                                "wedge ({a},{bb}) with e{cdx} * alpha_1 col {s}"
                            ));
                            break 'outer;
                        }
                    }
                }
            }
        }
        checks.push(CheckItem::from("h4_on_m1_alpha1_products", failure.clone()));
        if let Some(w) = failure {
            return Err(Error::PropertyFailure(format!(
                "h_4 does not annihilate the alpha_1-product columns: {w}"
            )));
        }
    }

    // Every recorded lift resubstitutes exactly (also rechecked inside
    // grobner::lift; kept here as a named item for the report).
    {
        let mut failure = None;
        for rec in &lift_log {
            let target = k.complex.d(rec.degree - 1);
            if target.apply(&rec.solution) != rec.rhs {
                failure = Some(format!("degree {} column {}", rec.degree, rec.col));
                break;
            }
        }
        checks.push(CheckItem::from("lift_resubstitution", failure));
    }

    Ok(HomotopyData {
        h,
        lift_log,
        checks,
        gauge_obstructions,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multialg::koszul_algebra;
    use crate::poly::{pp, PolyRing};

    #[test]
    fn homotopy_on_ci_is_zero_and_consistent() {
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
        let h = solve_homotopy(&data, &b, &c).unwrap();
        // On the CI instance every column is registered, so no lifts happen
        // and h vanishes; the degree-5 residual c_5 = h_4 d_5 still holds
        // because c_5 itself is hit by zero columns... it is checked above.
        assert!(h.lift_log.is_empty());
        assert!(h.h[3].is_zero());
        assert!(h.h[4].is_zero());
        assert!(h.checks.iter().all(|i| i.pass));
    }
}
