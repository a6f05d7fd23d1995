//! Buchberger's algorithm for submodules of free modules, division with
//! quotients, lifting through matrices, and syzygies.
//!
//! The module order is position-over-term: an earlier component dominates,
//! ties broken by grevlex on the monomial. This keeps lifts component-local
//! and deterministic. Generators are kept with coordinate vectors expressing
//! each basis element in terms of the original generators, so `lift` can
//! return quotients against the caller's matrix columns.
//!
//! No pair-skipping criteria are applied: instance sizes here are tiny and
//! Buchberger's first criterion does not carry over to modules unchanged.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::matrix::PolyMatrix;
use crate::poly::{Mono, Poly, PolyRing};
use crate::scalar::Coeff;

type VecPoly = Vec<Poly>;

/// Lead term of a module element: first nonzero component, grevlex-leading
/// monomial within it.
fn lead_term(v: &[Poly]) -> Option<(usize, Mono, Coeff)> {
    for (c, p) in v.iter().enumerate() {
        if let Some((m, co)) = p.lead() {
            return Some((c, m.clone(), co.clone()));
        }
    }
    None
}

fn vec_is_zero(v: &[Poly]) -> bool {
    v.iter().all(|p| p.is_zero())
}

fn vec_sub(a: &[Poly], b: &[Poly]) -> VecPoly {
    a.iter().zip(b).map(|(x, y)| x.minus(y)).collect()
}

fn vec_mul_term(v: &[Poly], m: &Mono, c: &Coeff) -> VecPoly {
    v.iter().map(|p| p.mul_term(m, c)).collect()
}

fn vec_scale(v: &[Poly], c: &Coeff) -> VecPoly {
    v.iter().map(|p| p.scaled(c)).collect()
}

#[derive(Debug, Clone)]
pub struct ModuleGb {
    pub ring: Arc<PolyRing>,
    pub rank: usize,
    /// Reduced, monic, deterministically ordered basis.
    pub basis: Vec<VecPoly>,
    /// `basis[i] = sum_j coords[i][j] * gens[j]`.
    pub coords: Vec<Vec<Poly>>,
    pub gens: Vec<VecPoly>,
}

impl ModuleGb {
    /// Full division: returns `(remainder, quotients)` with
    /// `v == sum quotients[i] * basis[i] + remainder` and no remainder term
    /// divisible by a basis lead term.
    pub fn normal_form(&self, v: &[Poly]) -> Result<(VecPoly, Vec<Poly>)> {
        if v.len() != self.rank {
            return Err(Error::DimensionMismatch(format!(
                "normal_form: vector rank {} vs module rank {}",
                v.len(),
                self.rank
            )));
        }
        let mut rem: VecPoly = vec![Poly::zero(&self.ring); self.rank];
        let mut quots = vec![Poly::zero(&self.ring); self.basis.len()];
        let mut p: VecPoly = v.to_vec();
        'outer: while let Some((pc, pm, pco)) = lead_term(&p) {
            for (gi, g) in self.basis.iter().enumerate() {
                let (gc, gm, _) = lead_term(g).expect("basis elements are nonzero");
                if gc == pc && gm.divides(&pm) {
                    let qm = gm.div_into(&pm);
                    // Basis is monic, so the quotient coefficient is pco.
                    quots[gi] = quots[gi].plus(&Poly::monomial(&self.ring, qm.clone(), pco.clone()));
                    p = vec_sub(&p, &vec_mul_term(g, &qm, &pco));
                    continue 'outer;
                }
            }
            // Lead term irreducible: move it to the remainder.
            rem[pc] = rem[pc].plus(&Poly::monomial(&self.ring, pm.clone(), pco.clone()));
            let t = Poly::monomial(&self.ring, pm, pco);
            p[pc] = p[pc].minus(&t);
        }
        Ok((rem, quots))
    }
}

/// Reduced Groebner basis of the submodule generated by `gens` in
/// `R^rank`, with coordinate tracking.
pub fn groebner_basis(
    ring: &Arc<PolyRing>,
    rank: usize,
    gens: Vec<VecPoly>,
) -> Result<ModuleGb> {
    for g in &gens {
        if g.len() != rank {
            return Err(Error::DimensionMismatch(
                "generator rank differs from ambient rank".into(),
            ));
        }
    }
    let ch = ring.characteristic;
    let ngens = gens.len();
    // Working set: (vector, coords).
    let mut work: Vec<(VecPoly, Vec<Poly>)> = Vec::new();
    for (i, g) in gens.iter().enumerate() {
        if vec_is_zero(g) {
            continue;
        }
        let mut coord = vec![Poly::zero(ring); ngens];
        coord[i] = Poly::one(ring);
        work.push((g.clone(), coord));
    }

    // Full reduction with coordinate tracking.
    fn reduce_full(
        ring: &Arc<PolyRing>,
        rank: usize,
        v: &[Poly],
        coord: &[Poly],
        set: &[(VecPoly, Vec<Poly>)],
    ) -> (VecPoly, Vec<Poly>) {
        let ch = ring.characteristic;
        let mut rem: VecPoly = vec![Poly::zero(ring); rank];
        let mut rc: Vec<Poly> = coord.to_vec();
        let mut p: VecPoly = v.to_vec();
        'outer: while let Some((pc, pm, pco)) = lead_term(&p) {
            for (g, gcoord) in set.iter() {
                let (gc, gm, gco) = lead_term(g).expect("nonzero");
                if gc == pc && gm.divides(&pm) {
                    let qm = gm.div_into(&pm);
                    let qc = pco.mul(&gco.inv(ch).unwrap(), ch);
                    p = vec_sub(&p, &vec_mul_term(g, &qm, &qc));
                    let delta = vec_mul_term(gcoord, &qm, &qc);
                    rc = vec_sub(&rc, &delta);
                    continue 'outer;
                }
            }
            let t = Poly::monomial(ring, pm.clone(), pco.clone());
            rem[pc] = rem[pc].plus(&t);
            p[pc] = p[pc].minus(&t);
        }
        (rem, rc)
    }

    // Buchberger loop.
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    let push_pairs = |pairs: &mut Vec<(usize, usize)>, n: usize, upto: usize| {
        for i in 0..upto {
            pairs.push((i, n));
        }
    };
    for n in 0..work.len() {
        push_pairs(&mut pairs, n, n);
    }
    let mut qi = 0;
    while qi < pairs.len() {
        let (i, j) = pairs[qi];
        qi += 1;
        let (li, lj) = (
            lead_term(&work[i].0).unwrap(),
            lead_term(&work[j].0).unwrap(),
        );
        if li.0 != lj.0 {
            continue; // lead terms in different components: no S-pair
        }
        let l = li.1.lcm(&lj.1);
        let mi = li.1.div_into(&l);
        let mj = lj.1.div_into(&l);
        let ci = li.2.inv(ch).unwrap();
        let cj = lj.2.inv(ch).unwrap();
        let si = vec_mul_term(&work[i].0, &mi, &ci);
        let sj = vec_mul_term(&work[j].0, &mj, &cj);
        let s = vec_sub(&si, &sj);
        let sci = vec_mul_term(&work[i].1, &mi, &ci);
        let scj = vec_mul_term(&work[j].1, &mj, &cj);
        let sc = vec_sub(&sci, &scj);
        let (rem, rcoord) = reduce_full(ring, rank, &s, &sc, &work);
        if !vec_is_zero(&rem) {
            let n = work.len();
            work.push((rem, rcoord));
            push_pairs(&mut pairs, n, n);
        }
    }

    // Auto-reduce: reduce each element against the others until stable,
    // then normalize to monic and sort by lead term (descending).
    let mut changed = true;
    while changed {
        changed = false;
        for i in 0..work.len() {
            let (v, c) = work[i].clone();
            if vec_is_zero(&v) {
                continue;
            }
            let others: Vec<(VecPoly, Vec<Poly>)> = work
                .iter()
                .enumerate()
                .filter(|(j, w)| *j != i && !vec_is_zero(&w.0))
                .map(|(_, w)| w.clone())
                .collect();
            let (rem, rc) = reduce_full(ring, rank, &v, &c, &others);
            if rem != v {
                changed = true;
                work[i] = (rem, rc);
            }
        }
        work.retain(|(v, _)| !vec_is_zero(v));
    }
    for (v, c) in work.iter_mut() {
        let (_, _, lc) = lead_term(v).unwrap();
        let inv = lc.inv(ch).unwrap();
        *v = vec_scale(v, &inv);
        *c = vec_scale(c, &inv);
    }
    work.sort_by(|a, b| {
        let (ca, ma, _) = lead_term(&a.0).unwrap();
        let (cb, mb, _) = lead_term(&b.0).unwrap();
        ca.cmp(&cb).then(mb.cmp(&ma))
    });

    let gb = ModuleGb {
        ring: ring.clone(),
        rank,
        basis: work.iter().map(|(v, _)| v.clone()).collect(),
        coords: work.iter().map(|(_, c)| c.clone()).collect(),
        gens,
    };
    // Invariant: every original generator reduces to zero.
    for g in &gb.gens {
        let (rem, _) = gb.normal_form(g)?;
        debug_assert!(vec_is_zero(&rem), "generator does not reduce to zero");
    }
    Ok(gb)
}

/// Solve `A x = b` over the ring: `x` has polynomial entries, or the column
/// is not in the image of `A`. Deterministic: quotients of the normal form
/// against the column-module Groebner basis.
pub fn lift(a: &PolyMatrix, b: &[Poly]) -> Result<Vec<Poly>> {
    if b.len() != a.rows {
        return Err(Error::DimensionMismatch(format!(
            "lift: rhs length {} vs {} rows",
            b.len(),
            a.rows
        )));
    }
    let ring = a.ring().clone();
    let gens: Vec<VecPoly> = (0..a.cols).map(|j| a.col(j)).collect();
    let gb = groebner_basis(&ring, a.rows, gens)?;
    let (rem, quots) = gb.normal_form(b)?;
    if !vec_is_zero(&rem) {
        let pretty: Vec<String> = rem.iter().map(|p| p.to_string()).collect();
        return Err(Error::NotInImage {
            remainder: format!("({})", pretty.join(", ")),
        });
    }
    // x_j = sum_i quots[i] * coords[i][j]
    let mut x = vec![Poly::zero(&ring); a.cols];
    for (i, q) in quots.iter().enumerate() {
        if q.is_zero() {
            continue;
        }
        for j in 0..a.cols {
            if !gb.coords[i][j].is_zero() {
                x[j] = x[j].plus(&q.times(&gb.coords[i][j]));
            }
        }
    }
    // The defining identity of the lift, rechecked exactly.
    let ax = a.apply(&x);
    for (i, (l, r)) in ax.iter().zip(b).enumerate() {
        if l != r {
            return Err(Error::LiftFailure {
                degree: 0,
                col: i,
                detail: "resubstitution mismatch".into(),
            });
        }
    }
    Ok(x)
}

/// Generators of the kernel of `A`, via Groebner elimination: compute a
/// basis of the graph module `{(A x, x)}` and keep elements whose first
/// block vanishes.
pub fn syzygies(a: &PolyMatrix) -> Result<Vec<Vec<Poly>>> {
    let ring = a.ring().clone();
    let ext_rank = a.rows + a.cols;
    let mut gens: Vec<VecPoly> = Vec::new();
    for j in 0..a.cols {
        let mut v = a.col(j);
        let mut unit = vec![Poly::zero(&ring); a.cols];
        unit[j] = Poly::one(&ring);
        v.extend(unit);
        gens.push(v);
    }
    let gb = groebner_basis(&ring, ext_rank, gens)?;
    let mut out = Vec::new();
    for v in &gb.basis {
        if v[..a.rows].iter().all(|p| p.is_zero()) {
            out.push(v[a.rows..].to_vec());
        }
    }
    // Re-substitution check.
    for s in &out {
        assert!(
            a.apply(s).iter().all(|p| p.is_zero()),
            "syzygy fails A*s = 0"
        );
    }
    Ok(out)
}

/// Fast path for lifting through a Koszul differential on distinct
/// variables: the classical weight-graded contracting homotopy. Over the
/// rationals, for `b` with `k_i b = 0` in positive degree, returns `x` with
/// `k_{i+1} x = b` by coefficient extraction. Used as an independent oracle
/// against the Groebner lift.
pub fn koszul_contract(
    vars: &[usize],
    degree: usize,
    basis_src: &[Vec<usize>],
    basis_dst: &[Vec<usize>],
    b: &[Poly],
) -> Result<Vec<Poly>> {
    let ring = b
        .first()
        .map(|p| p.ring().clone())
        .ok_or_else(|| Error::InvalidParams("empty vector".into()))?;
    if ring.characteristic != 0 {
        return Err(Error::InvalidParams(
            "contracting homotopy fast path requires characteristic 0".into(),
        ));
    }
    if basis_src.iter().any(|t| t.len() != degree)
        || basis_dst.iter().any(|t| t.len() != degree + 1)
    {
        return Err(Error::DimensionMismatch(
            "basis tuples inconsistent with the stated degree".into(),
        ));
    }
    let mut out = vec![Poly::zero(&ring); basis_dst.len()];
    for (ti, tuple) in basis_src.iter().enumerate() {
        for (mono, coeff) in b[ti].terms() {
            let weight: u32 =
                mono.total_degree() + tuple.len() as u32;
            assert!(weight > 0, "weight-zero component not contractible");
            let w_inv = Coeff::from_i64(weight as i64, 0).inv(0).unwrap();
            // s(c * x^E * e_T) = sum_j E_j/weight * c * x^(E - d_j) * e_(j ^ T)
            for (vpos, &v) in vars.iter().enumerate() {
                let e = mono.0[v];
                if e == 0 {
                    continue;
                }
                if tuple.contains(&vpos) {
                    continue;
                }
                let mut newt = tuple.clone();
                newt.push(vpos);
                newt.sort_unstable();
                let pos = newt.iter().position(|&x| x == vpos).unwrap();
                let sign = if pos % 2 == 0 { 1 } else { -1 };
                let di = basis_dst
                    .iter()
                    .position(|t| *t == newt)
                    .expect("target tuple present");
                let mut newmono = mono.clone();
                newmono.0[v] -= 1;
                let c = coeff
                    .mul(&Coeff::from_i64(e as i64 * sign as i64, 0), 0)
                    .mul(&w_inv, 0);
                out[di] = out[di].plus(&Poly::monomial(&ring, newmono, c));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::pp;

    fn ring() -> Arc<PolyRing> {
        PolyRing::new(0, vec!["x1".into(), "x2".into(), "x3".into()]).unwrap()
    }

    #[test]
    fn already_reduced_basis() {
        let r = ring();
        let gb = groebner_basis(&r, 1, vec![vec![pp(&r, "x1")], vec![pp(&r, "x2")]]).unwrap();
        let lead: Vec<String> = gb.basis.iter().map(|v| v[0].to_string()).collect();
        assert_eq!(lead, vec!["x1", "x2"]);
    }

    #[test]
    fn hand_buchberger_run() {
        // {x1, x1 + x2} reduces to the basis {x1, x2}.
        let r = ring();
        let gb = groebner_basis(
            &r,
            1,
            vec![vec![pp(&r, "x1")], vec![pp(&r, "x1 + x2")]],
        )
        .unwrap();
        let lead: Vec<String> = gb.basis.iter().map(|v| v[0].to_string()).collect();
        assert_eq!(lead, vec!["x1", "x2"]);
    }

    #[test]
    fn zero_generators_give_empty_basis() {
        let r = ring();
        let gb = groebner_basis(&r, 1, vec![vec![Poly::zero(&r)]]).unwrap();
        assert!(gb.basis.is_empty());
        let gb2 = groebner_basis(&r, 1, vec![]).unwrap();
        assert!(gb2.basis.is_empty());
    }

    #[test]
    fn normal_form_division_identity() {
        let r = ring();
        let gb = groebner_basis(&r, 1, vec![vec![pp(&r, "x1")], vec![pp(&r, "x2")]]).unwrap();
        let v = vec![pp(&r, "x1*x2 + x3 + x1^2")];
        let (rem, quots) = gb.normal_form(&v).unwrap();
        assert_eq!(rem[0], pp(&r, "x3"));
        // Reconstruct.
        let mut acc = rem.clone();
        for (i, q) in quots.iter().enumerate() {
            acc[0] = acc[0].plus(&q.times(&gb.basis[i][0]));
        }
        assert_eq!(acc[0], v[0]);
    }

    #[test]
    fn normal_form_rank_mismatch() {
        let r = ring();
        let gb = groebner_basis(&r, 1, vec![vec![pp(&r, "x1")]]).unwrap();
        assert!(gb.normal_form(&[pp(&r, "x1"), pp(&r, "x2")]).is_err());
    }

    #[test]
    fn remainder_when_no_lead_divides() {
        let r = ring();
        let gb = groebner_basis(&r, 1, vec![vec![pp(&r, "x1")], vec![pp(&r, "x2")]]).unwrap();
        let (rem, _) = gb.normal_form(&[pp(&r, "x3")]).unwrap();
        assert_eq!(rem[0], pp(&r, "x3"));
    }

    #[test]
    fn lift_through_koszul_d1() {
        let r = ring();
        let k1 = PolyMatrix::from_rows(
            &r,
            vec![vec![pp(&r, "x1"), pp(&r, "x2"), pp(&r, "x3")]],
        )
        .unwrap();
        let x = lift(&k1, &[pp(&r, "x1*x2")]).unwrap();
        assert_eq!(x[0], pp(&r, "x2"));
        assert!(x[1].is_zero() && x[2].is_zero());
        // b = 0 lifts to 0.
        let z = lift(&k1, &[Poly::zero(&r)]).unwrap();
        assert!(z.iter().all(|p| p.is_zero()));
        // 1 is not in (x1).
        let a = PolyMatrix::from_rows(&r, vec![vec![pp(&r, "x1")]]).unwrap();
        assert!(matches!(
            lift(&a, &[pp(&r, "1")]),
            Err(Error::NotInImage { .. })
        ));
    }

    #[test]
    fn koszul_syzygy() {
        let r = ring();
        let a = PolyMatrix::from_rows(&r, vec![vec![pp(&r, "x1"), pp(&r, "x2")]]).unwrap();
        let syz = syzygies(&a).unwrap();
        assert_eq!(syz.len(), 1);
        // Up to sign the syzygy is (x2, -x1).
        let s = &syz[0];
        let matches_pos = s[0] == pp(&r, "x2") && s[1] == pp(&r, "-x1");
        let matches_neg = s[0] == pp(&r, "-x2") && s[1] == pp(&r, "x1");
        assert!(matches_pos || matches_neg);
    }

    #[test]
    fn identity_has_no_syzygies() {
        let r = ring();
        let id = PolyMatrix::identity(&r, 3);
        assert!(syzygies(&id).unwrap().is_empty());
    }

    #[test]
    fn koszul_kernel_equals_next_image_by_mutual_lift() {
        // ker k_2 = im k_3 for the Koszul complex on (x1, x2, x3): every
        // syzygy of k_2 lifts through k_3, and every column of k_3 lies in
        // the syzygy module of k_2.
        let r = ring();
        let k2 = PolyMatrix::from_rows(
            &r,
            vec![
                vec![pp(&r, "x2"), pp(&r, "x3"), pp(&r, "0")],
                vec![pp(&r, "-x1"), pp(&r, "0"), pp(&r, "x3")],
                vec![pp(&r, "0"), pp(&r, "-x1"), pp(&r, "-x2")],
            ],
        )
        .unwrap();
        let k3 = PolyMatrix::from_rows(
            &r,
            vec![vec![pp(&r, "x3")], vec![pp(&r, "-x2")], vec![pp(&r, "x1")]],
        )
        .unwrap();
        assert!(k2.compose(&k3).unwrap().is_zero());
        let syz = syzygies(&k2).unwrap();
        assert!(!syz.is_empty());
        for s in &syz {
            lift(&k3, s).expect("syzygy lifts through k_3");
        }
        for j in 0..k3.cols {
            let col = k3.col(j);
            let gb = groebner_basis(&r, 3, syz.clone()).unwrap();
            let (rem, _) = gb.normal_form(&col).unwrap();
            assert!(rem.iter().all(|p| p.is_zero()), "k_3 column in ker k_2");
        }
    }
}
