//! Based free modules, chain complexes, chain maps, and homotopy records.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::matrix::PolyMatrix;
use crate::poly::PolyRing;

/// Structured basis label: an atom, a wedge tuple, a divided-power tuple,
/// or a tensor of labels. Tuples index into the underlying module basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BasisLabel {
    Atom(String),
    Wedge(Vec<usize>),
    Divided(Vec<usize>),
    Tensor(Vec<BasisLabel>),
}

impl std::fmt::Display for BasisLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            BasisLabel::Atom(s) => write!(f, "{s}"),
            BasisLabel::Wedge(t) => {
                let parts: Vec<String> = t.iter().map(|i| format!("e{i}")).collect();
                write!(f, "{}", parts.join("^"))
            }
            BasisLabel::Divided(t) => {
                // Weakly increasing tuple; repeated index means a divided square.
                if t.len() == 2 && t[0] == t[1] {
                    write!(f, "b{}((2))", t[0])
                } else {
                    let parts: Vec<String> = t.iter().map(|i| format!("b{i}")).collect();
                    write!(f, "{}", parts.join("*"))
                }
            }
            BasisLabel::Tensor(parts) => {
                let parts: Vec<String> = parts.iter().map(|p| p.to_string()).collect();
                write!(f, "{}", parts.join("(x)"))
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct BasedModule {
    pub degree: usize,
    pub labels: Vec<BasisLabel>,
}

impl BasedModule {
    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn atoms(degree: usize, prefix: &str, rank: usize) -> BasedModule {
        BasedModule {
            degree,
            labels: (0..rank)
                .map(|i| BasisLabel::Atom(format!("{prefix}{i}")))
                .collect(),
        }
    }
}

/// A finite chain complex of based free modules. Differential `d_i` maps
/// `module_i` to `module_{i-1}`; `d o d = 0` is verified at construction.
#[derive(Debug, Clone)]
pub struct ChainComplex {
    pub ring: Arc<PolyRing>,
    pub modules: Vec<BasedModule>,
    diffs: Vec<PolyMatrix>,
}

impl ChainComplex {
    pub fn len(&self) -> usize {
        self.modules.len() - 1
    }

    pub fn rank(&self, i: usize) -> usize {
        if i < self.modules.len() {
            self.modules[i].rank()
        } else {
            0
        }
    }

    /// `d_i : module_i -> module_{i-1}`, for `1 <= i <= len`. Out of range
    /// yields an appropriately shaped zero matrix.
    pub fn d(&self, i: usize) -> PolyMatrix {
        if i >= 1 && i <= self.len() {
            self.diffs[i - 1].clone()
        } else if i == self.len() + 1 {
            PolyMatrix::zero(&self.ring, self.rank(self.len()), 0)
        } else {
            PolyMatrix::zero(&self.ring, 0, 0)
        }
    }

    pub fn differentials(&self) -> &[PolyMatrix] {
        &self.diffs
    }

    /// Replace the differentials without re-verifying `d*d = 0`. Only used
    /// for fault injection in negative-control tests; verifiers will report
    /// the breakage.
    pub fn replace_differentials_unchecked(&mut self, diffs: Vec<PolyMatrix>) {
        assert_eq!(diffs.len(), self.diffs.len());
        self.diffs = diffs;
    }
}

/// Assemble a complex from differentials `mats[i] = d_{i+1}`, verifying
/// shape compatibility and `d*d = 0` exactly.
pub fn build_complex(
    ring: &Arc<PolyRing>,
    modules: Vec<BasedModule>,
    mats: Vec<PolyMatrix>,
) -> Result<ChainComplex> {
    if modules.len() != mats.len() + 1 {
        return Err(Error::DimensionMismatch(format!(
            "{} modules vs {} differentials",
            modules.len(),
            mats.len()
        )));
    }
    for (i, m) in mats.iter().enumerate() {
        if m.rows != modules[i].rank() || m.cols != modules[i + 1].rank() {
            return Err(Error::DimensionMismatch(format!(
                "d_{} is {}x{}, expected {}x{}",
                i + 1,
                m.rows,
                m.cols,
                modules[i].rank(),
                modules[i + 1].rank()
            )));
        }
    }
    for i in 0..mats.len().saturating_sub(1) {
        let prod = mats[i].compose(&mats[i + 1])?;
        if let Some((r, c, e)) = prod.first_nonzero() {
            return Err(Error::NotAComplex {
                degree: i + 2,
                row: r,
                col: c,
                entry: e.to_string(),
            });
        }
    }
    Ok(ChainComplex {
        ring: ring.clone(),
        modules,
        diffs: mats,
    })
}

/// A degree-`shift` map of complexes with an explicit per-degree sign rule:
/// the commutation checked is `d^target o phi_i = sign(i) * phi_{i-1} o d^source_i`.
#[derive(Debug, Clone)]
pub struct ChainMap {
    pub shift: i64,
    /// `comps[i]` is the component out of `source_i` (indexes follow the
    /// source complex; missing degrees are zero maps).
    pub comps: Vec<PolyMatrix>,
    pub signs: Vec<i64>,
}

impl ChainMap {
    pub fn comp(&self, i: usize) -> Option<&PolyMatrix> {
        self.comps.get(i)
    }
}

#[derive(Debug, Clone)]
pub struct ChainMapReport {
    /// Failing entries: (degree, row, col, entry).
    pub failures: Vec<(usize, usize, usize, String)>,
}

impl ChainMapReport {
    pub fn pass(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Check the chain-map identity in every degree where both composites are
/// defined; the residual `d^target o phi - sign * phi o d^source` must be
/// identically zero.
pub fn verify_chain_map(
    source: &ChainComplex,
    target: &ChainComplex,
    map: &ChainMap,
) -> Result<ChainMapReport> {
    let mut failures = Vec::new();
    for i in 1..=source.len() {
        let phi_i = match map.comp(i) {
            Some(m) => m.clone(),
            None => continue,
        };
        let ti = i as i64 + map.shift;
        if ti < 1 {
            continue;
        }
        let phi_prev = match map.comp(i - 1) {
            Some(m) => m.clone(),
            None => PolyMatrix::zero(
                &source.ring,
                target.rank((ti - 1).max(0) as usize),
                source.rank(i - 1),
            ),
        };
        let lhs = target.d(ti as usize).compose(&phi_i)?;
        let rhs = phi_prev.compose(&source.d(i))?;
        let sign = *map.signs.get(i).unwrap_or(&1);
        let rhs = if sign >= 0 { rhs } else { rhs.negated() };
        let res = lhs.minus(&rhs)?;
        for r in 0..res.rows {
            for c in 0..res.cols {
                if !res.at(r, c).is_zero() {
                    failures.push((i, r, c, res.at(r, c).to_string()));
                }
            }
        }
    }
    Ok(ChainMapReport { failures })
}

/// A homotopy record: `comps[i] : B_i -> target_{i-1+shift}` style component
/// maps, with the defining identity owned by the operation that produced it.
#[derive(Debug, Clone)]
pub struct Homotopy {
    pub comps: Vec<PolyMatrix>,
}

#[derive(Debug, Clone)]
pub struct RankConditionReport {
    /// Per degree `i >= 1`: (degree, rank d_i, rank d_{i+1}, rank module_i, pass).
    pub rows: Vec<(usize, usize, usize, usize, bool)>,
    /// Probabilistic cross-check: evaluated rank never exceeded exact rank.
    pub evaluation_consistent: bool,
}

impl RankConditionReport {
    pub fn pass(&self) -> bool {
        self.rows.iter().all(|r| r.4)
    }
}

/// Necessary condition for acyclicity: for each `i >= 1`,
/// `rank d_i + rank d_{i+1} == rank module_i` over the fraction field.
/// Ranks are cross-checked by evaluating at a deterministic point over
/// `Z/p`, where rank can only drop.
pub fn rank_condition_check(
    c: &ChainComplex,
    prime: u64,
    seed: u64,
) -> Result<RankConditionReport> {
    let nvars = c.ring.nvars();
    // Deterministic "random" point derived from the seed.
    let point: Vec<u64> = (0..nvars)
        .map(|i| {
            let mut x = seed
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407 + i as u64);
            x ^= x >> 33;
            x % (prime - 3) + 2
        })
        .collect();
    let mut rows = Vec::new();
    let mut eval_ok = true;
    for i in 1..=c.len() {
        let di = c.d(i);
        let dnext = c.d(i + 1);
        let r1 = di.rank();
        let r2 = if dnext.cols == 0 { 0 } else { dnext.rank() };
        if c.ring.characteristic == 0 {
            let n1 = di.rank_at_point(&point, prime)?;
            if n1 > r1 {
                eval_ok = false;
            }
        }
        let pass = r1 + r2 == c.rank(i);
        rows.push((i, r1, r2, c.rank(i), pass));
    }
    Ok(RankConditionReport {
        rows,
        evaluation_consistent: eval_ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::pp;

    fn ring() -> Arc<PolyRing> {
        PolyRing::new(0, vec!["x1".into(), "x2".into(), "x3".into()]).unwrap()
    }

    fn mat(r: &Arc<PolyRing>, rows: &[&[&str]]) -> PolyMatrix {
        PolyMatrix::from_rows(
            r,
            rows.iter()
                .map(|row| row.iter().map(|s| pp(r, s)).collect())
                .collect(),
        )
        .unwrap()
    }

    fn koszul3(r: &Arc<PolyRing>) -> Vec<PolyMatrix> {
        vec![
            mat(r, &[&["x1", "x2", "x3"]]),
            mat(
                r,
                &[
                    &["x2", "x3", "0"],
                    &["-x1", "0", "x3"],
                    &["0", "-x1", "-x2"],
                ],
            ),
            mat(r, &[&["x3"], &["-x2"], &["x1"]]),
        ]
    }

    fn modules(ranks: &[usize]) -> Vec<BasedModule> {
        ranks
            .iter()
            .enumerate()
            .map(|(i, &rk)| BasedModule::atoms(i, "e", rk))
            .collect()
    }

    #[test]
    fn koszul_is_a_complex() {
        let r = ring();
        let c = build_complex(&r, modules(&[1, 3, 3, 1]), koszul3(&r)).unwrap();
        assert_eq!(c.len(), 3);
    }

    #[test]
    fn non_complex_rejected() {
        let r = ring();
        let res = build_complex(
            &r,
            modules(&[1, 1, 1]),
            vec![mat(&r, &[&["x1"]]), mat(&r, &[&["x1"]])],
        );
        match res {
            Err(Error::NotAComplex { degree, .. }) => assert_eq!(degree, 2),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn chain_map_detects_corruption() {
        let r = ring();
        let c = build_complex(&r, modules(&[1, 3, 3, 1]), koszul3(&r)).unwrap();
        let id = ChainMap {
            shift: 0,
            comps: (0..4)
                .map(|i| PolyMatrix::identity(&r, c.rank(i)))
                .collect(),
            signs: vec![1; 4],
        };
        assert!(verify_chain_map(&c, &c, &id).unwrap().pass());
        let mut bad = id.clone();
        bad.comps[1] = mat(
            &r,
            &[&["1", "x3", "0"], &["0", "1", "0"], &["0", "0", "1"]],
        );
        let rep = verify_chain_map(&c, &c, &bad).unwrap();
        assert!(!rep.pass());
    }

    #[test]
    fn rank_condition_on_koszul() {
        let r = ring();
        let c = build_complex(&r, modules(&[1, 3, 3, 1]), koszul3(&r)).unwrap();
        let rep = rank_condition_check(&c, 32003, 1).unwrap();
        assert!(rep.pass());
        assert!(rep.evaluation_consistent);
    }

    #[test]
    fn rank_condition_fails_on_padding() {
        // Pad the Koszul complex with an extra zero-mapped generator in
        // degree 1: the rank condition must fail there.
        let r = ring();
        let d1 = mat(&r, &[&["x1", "x2", "x3", "0"]]);
        let d2 = mat(
            &r,
            &[
                &["x2", "x3", "0"],
                &["-x1", "0", "x3"],
                &["0", "-x1", "-x2"],
                &["0", "0", "0"],
            ],
        );
        let d3 = mat(&r, &[&["x3"], &["-x2"], &["x1"]]);
        let c = build_complex(&r, modules(&[1, 4, 3, 1]), vec![d1, d2, d3]).unwrap();
        let rep = rank_condition_check(&c, 32003, 1).unwrap();
        assert!(!rep.pass());
        let failing: Vec<usize> = rep
            .rows
            .iter()
            .filter(|r| !r.4)
            .map(|r| r.0)
            .collect();
        assert_eq!(failing, vec![1]);
    }
}
