//! Dense matrices of polynomials with exact linear algebra.
//!
//! Rank, determinant, and solving all go through fraction-free (Bareiss)
//! elimination, so intermediate entries stay polynomial and every division
//! is exact. Instance sizes are tiny, so dense storage keeps this simple.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::poly::{Poly, PolyRing};
use crate::scalar::Coeff;

#[derive(Debug, Clone, PartialEq)]
pub struct PolyMatrix {
    ring: Arc<PolyRing>,
    pub rows: usize,
    pub cols: usize,
    entries: Vec<Poly>,
}

impl PolyMatrix {
    pub fn zero(ring: &Arc<PolyRing>, rows: usize, cols: usize) -> PolyMatrix {
        PolyMatrix {
            ring: ring.clone(),
            rows,
            cols,
            entries: vec![Poly::zero(ring); rows * cols],
        }
    }

    pub fn identity(ring: &Arc<PolyRing>, n: usize) -> PolyMatrix {
        let mut m = PolyMatrix::zero(ring, n, n);
        for i in 0..n {
            m.set(i, i, Poly::one(ring));
        }
        m
    }

    pub fn from_rows(ring: &Arc<PolyRing>, rows: Vec<Vec<Poly>>) -> Result<PolyMatrix> {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        for row in &rows {
            if row.len() != c {
                return Err(Error::DimensionMismatch("ragged rows".into()));
            }
            for e in row {
                if **e.ring() != **ring {
                    return Err(Error::RingMismatch("matrix entry in wrong ring".into()));
                }
            }
        }
        Ok(PolyMatrix {
            ring: ring.clone(),
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_fn(
        ring: &Arc<PolyRing>,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Poly,
    ) -> PolyMatrix {
        let mut m = PolyMatrix::zero(ring, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn at(&self, r: usize, c: usize) -> &Poly {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Poly) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn col(&self, c: usize) -> Vec<Poly> {
        (0..self.rows).map(|r| self.at(r, c).clone()).collect()
    }

    pub fn set_col(&mut self, c: usize, v: &[Poly]) {
        assert_eq!(v.len(), self.rows);
        for (r, p) in v.iter().enumerate() {
            self.set(r, c, p.clone());
        }
    }

    pub fn from_col(ring: &Arc<PolyRing>, v: &[Poly]) -> PolyMatrix {
        let mut m = PolyMatrix::zero(ring, v.len(), 1);
        for (r, p) in v.iter().enumerate() {
            m.set(r, 0, p.clone());
        }
        m
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn first_nonzero(&self) -> Option<(usize, usize, &Poly)> {
        for r in 0..self.rows {
            for c in 0..self.cols {
                let e = self.at(r, c);
                if !e.is_zero() {
                    return Some((r, c, e));
                }
            }
        }
        None
    }

    pub fn plus(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} + {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = self.clone();
        for i in 0..self.entries.len() {
            out.entries[i] = self.entries[i].plus(&other.entries[i]);
        }
        Ok(out)
    }

    pub fn minus(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        self.plus(&other.negated())
    }

    pub fn negated(&self) -> PolyMatrix {
        let mut out = self.clone();
        for e in &mut out.entries {
            *e = e.negated();
        }
        out
    }

    pub fn scaled(&self, p: &Poly) -> PolyMatrix {
        let mut out = self.clone();
        for e in &mut out.entries {
            *e = e.times(p);
        }
        out
    }

    /// Exact matrix product; the realization of every composite of maps.
    pub fn compose(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "compose {}x{} with {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = PolyMatrix::zero(&self.ring, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.at(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let v = out.at(i, j).plus(&a.times(b));
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn apply(&self, v: &[Poly]) -> Vec<Poly> {
        assert_eq!(v.len(), self.cols, "matrix-vector dimension mismatch");
        let mut out = vec![Poly::zero(&self.ring); self.rows];
        for (j, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for i in 0..self.rows {
                let a = self.at(i, j);
                if !a.is_zero() {
                    out[i] = out[i].plus(&a.times(x));
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> PolyMatrix {
        PolyMatrix::from_fn(&self.ring, self.cols, self.rows, |i, j| {
            self.at(j, i).clone()
        })
    }

    pub fn hstack(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch("hstack".into()));
        }
        Ok(PolyMatrix::from_fn(
            &self.ring,
            self.rows,
            self.cols + other.cols,
            |i, j| {
                if j < self.cols {
                    self.at(i, j).clone()
                } else {
                    other.at(i, j - self.cols).clone()
                }
            },
        ))
    }

    /// Assemble from a grid of blocks. Each row of blocks must agree on row
    /// count, each column of blocks on column count.
    pub fn from_blocks(ring: &Arc<PolyRing>, blocks: &[Vec<&PolyMatrix>]) -> Result<PolyMatrix> {
        let row_heights: Vec<usize> = blocks.iter().map(|row| row[0].rows).collect();
        let col_widths: Vec<usize> = blocks[0].iter().map(|b| b.cols).collect();
        for (bi, row) in blocks.iter().enumerate() {
            if row.len() != col_widths.len() {
                return Err(Error::DimensionMismatch("ragged block grid".into()));
            }
            for (bj, b) in row.iter().enumerate() {
                if b.rows != row_heights[bi] || b.cols != col_widths[bj] {
                    return Err(Error::DimensionMismatch(format!(
                        "block ({bi},{bj}) is {}x{}, expected {}x{}",
                        b.rows, b.cols, row_heights[bi], col_widths[bj]
                    )));
                }
            }
        }
        let total_r: usize = row_heights.iter().sum();
        let total_c: usize = col_widths.iter().sum();
        let mut out = PolyMatrix::zero(ring, total_r, total_c);
        let mut roff = 0;
        for (bi, row) in blocks.iter().enumerate() {
            let mut coff = 0;
            for (bj, b) in row.iter().enumerate() {
                for i in 0..b.rows {
                    for j in 0..b.cols {
                        out.set(roff + i, coff + j, b.at(i, j).clone());
                    }
                }
                coff += col_widths[bj];
            }
            roff += row_heights[bi];
        }
        Ok(out)
    }

    pub fn reduce_mod(&self, target: &Arc<PolyRing>) -> Result<PolyMatrix> {
        let mut out = PolyMatrix::zero(target, self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.at(i, j).reduce_mod(target)?);
            }
        }
        Ok(out)
    }

    pub fn extend_ring(&self, target: &Arc<PolyRing>) -> PolyMatrix {
        PolyMatrix::from_fn(target, self.rows, self.cols, |i, j| {
            self.at(i, j).extend_ring(target)
        })
    }

    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.at(i, j).to_string()).collect())
            .collect()
    }

    /// Fraction-free row echelon form. Returns the transformed matrix, the
    /// pivot positions, and the row-swap sign.
    fn bareiss(&self) -> (PolyMatrix, Vec<(usize, usize)>, i32) {
        let mut m = self.clone();
        let mut pivots: Vec<(usize, usize)> = Vec::new();
        let mut sign = 1i32;
        let mut prev = Poly::one(&self.ring);
        let mut r = 0;
        for c in 0..m.cols {
            if r >= m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| !m.at(i, c).is_zero()) else {
                continue;
            };
            if pr != r {
                for j in 0..m.cols {
                    let a = m.at(r, j).clone();
                    let b = m.at(pr, j).clone();
                    m.set(r, j, b);
                    m.set(pr, j, a);
                }
                sign = -sign;
            }
            let pivot = m.at(r, c).clone();
            for i in r + 1..m.rows {
                let head = m.at(i, c).clone();
                for j in 0..m.cols {
                    if j == c {
                        continue;
                    }
                    let num = pivot
                        .times(m.at(i, j))
                        .minus(&head.times(m.at(r, j)));
                    let q = num
                        .div_exact(&prev)
                        .expect("Bareiss division is exact over an integral domain");
                    m.set(i, j, q);
                }
                m.set(i, c, Poly::zero(&self.ring));
            }
            prev = pivot;
            pivots.push((r, c));
            r += 1;
        }
        (m, pivots, sign)
    }

    pub fn rank(&self) -> usize {
        self.bareiss().1.len()
    }

    pub fn det(&self) -> Result<Poly> {
        if self.rows != self.cols {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        if self.rows == 0 {
            return Ok(Poly::one(&self.ring));
        }
        let (m, pivots, sign) = self.bareiss();
        if pivots.len() < self.rows {
            return Ok(Poly::zero(&self.ring));
        }
        let (r, c) = pivots[pivots.len() - 1];
        let d = m.at(r, c).clone();
        Ok(if sign < 0 { d.negated() } else { d })
    }

    /// Solve `self * X = rhs` over the fraction field; deterministic
    /// particular solution with free variables set to zero.
    pub fn solve_fraction_field(&self, rhs: &PolyMatrix) -> Result<FracSolve> {
        if rhs.rows != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "solve: {}x{} vs rhs {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let aug = self.hstack(rhs)?;
        let (ech, pivots, _) = aug.bareiss();
        // Pivot inside the rhs block means an inconsistent system.
        if pivots.iter().any(|&(_, c)| c >= self.cols) {
            return Ok(FracSolve::NoSolution);
        }
        let mut xs: Vec<Vec<Frac>> = Vec::with_capacity(rhs.cols);
        for bc in 0..rhs.cols {
            let mut x = vec![Frac::from_poly(Poly::zero(&self.ring)); self.cols];
            for &(pr, pc) in pivots.iter().rev() {
                let mut acc = Frac::from_poly(ech.at(pr, self.cols + bc).clone());
                for j in pc + 1..self.cols {
                    let a = ech.at(pr, j);
                    if a.is_zero() || x[j].num.is_zero() {
                        continue;
                    }
                    acc = acc.sub(&x[j].mul_poly(a));
                }
                x[pc] = acc.div_poly(ech.at(pr, pc));
            }
            xs.push(x);
        }
        let polynomial = xs.iter().flatten().all(|f| f.is_polynomial());
        Ok(FracSolve::Solution {
            entries: xs,
            polynomial,
        })
    }

    /// Inverse of a matrix whose determinant is a nonzero constant.
    pub fn unimodular_inverse(&self) -> Result<PolyMatrix> {
        if self.rows != self.cols {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let d = self.det()?;
        if d.is_zero() || !d.is_constant() {
            return Err(Error::NotUnimodular { det: d.to_string() });
        }
        let id = PolyMatrix::identity(&self.ring, self.rows);
        match self.solve_fraction_field(&id)? {
            FracSolve::NoSolution => unreachable!("unit determinant implies solvable"),
            FracSolve::Solution { entries, .. } => {
                let mut inv = PolyMatrix::zero(&self.ring, self.rows, self.cols);
                for (c, colv) in entries.iter().enumerate() {
                    for (r, f) in colv.iter().enumerate() {
                        let p = f.to_poly().ok_or_else(|| Error::NotUnimodular {
                            det: d.to_string(),
                        })?;
                        inv.set(r, c, p);
                    }
                }
                Ok(inv)
            }
        }
    }

    /// Whether this matrix is square with unit constant determinant.
    pub fn is_unimodular(&self) -> bool {
        self.rows == self.cols
            && self
                .det()
                .map(|d| !d.is_zero() && d.is_constant())
                .unwrap_or(false)
    }

    /// Numeric rank after evaluating all variables at a point over `Z/p`.
    /// Rank can only drop under evaluation, so this is a cheap plausibility
    /// cross-check for the exact rank.
    pub fn rank_at_point(&self, point: &[u64], p: u64) -> Result<usize> {
        let mut m: Vec<Vec<u64>> = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let mut row = Vec::with_capacity(self.cols);
            for j in 0..self.cols {
                row.push(self.at(i, j).eval_fp(point, p)?);
            }
            m.push(row);
        }
        let mut rank = 0;
        let mut r = 0;
        for c in 0..self.cols {
            if r >= self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| m[i][c] != 0) else {
                continue;
            };
            m.swap(r, pr);
            let inv = crate::scalar::fp_inv(m[r][c], p).unwrap();
            for i in r + 1..self.rows {
                if m[i][c] == 0 {
                    continue;
                }
                let f = m[i][c] * inv % p;
                for j in c..self.cols {
                    m[i][j] = (m[i][j] + p - f * m[r][j] % p) % p;
                }
            }
            rank += 1;
            r += 1;
        }
        Ok(rank)
    }
}

impl std::fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.at(i, j))?;
            }
        }
        write!(f, "]")
    }
}

/// A quotient of polynomials, used only inside fraction-field solving.
#[derive(Debug, Clone)]
pub struct Frac {
    pub num: Poly,
    pub den: Poly,
}

impl Frac {
    pub fn from_poly(p: Poly) -> Frac {
        let one = Poly::one(p.ring());
        Frac { num: p, den: one }
    }

    fn normalize(mut self) -> Frac {
        if self.num.is_zero() {
            self.den = Poly::one(self.num.ring());
            return self;
        }
        if let Some(q) = self.num.div_exact(&self.den) {
            return Frac {
                den: Poly::one(q.ring()),
                num: q,
            };
        }
        self
    }

    pub fn sub(&self, other: &Frac) -> Frac {
        Frac {
            num: self
                .num
                .times(&other.den)
                .minus(&other.num.times(&self.den)),
            den: self.den.times(&other.den),
        }
        .normalize()
    }

    pub fn mul_poly(&self, p: &Poly) -> Frac {
        Frac {
            num: self.num.times(p),
            den: self.den.clone(),
        }
        .normalize()
    }

    pub fn div_poly(&self, p: &Poly) -> Frac {
        assert!(!p.is_zero(), "division by zero polynomial");
        Frac {
            num: self.num.clone(),
            den: self.den.times(p),
        }
        .normalize()
    }

    pub fn is_polynomial(&self) -> bool {
        self.num.is_zero() || self.num.div_exact(&self.den).is_some()
    }

    pub fn to_poly(&self) -> Option<Poly> {
        if self.num.is_zero() {
            return Some(Poly::zero(self.num.ring()));
        }
        self.num.div_exact(&self.den)
    }
}

impl std::fmt::Display for Frac {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.den.is_constant() && !self.den.is_zero() {
            if let Some(p) = self.to_poly() { return write!(f, "{p}") }
        }
        write!(f, "({})/({})", self.num, self.den)
    }
}

#[derive(Debug, Clone)]
pub enum FracSolve {
    /// Columns of the solution, one `Vec<Frac>` per rhs column.
    Solution {
        entries: Vec<Vec<Frac>>,
        polynomial: bool,
    },
    NoSolution,
}

/// Scalar-level convenience: a 1x1 matrix from a coefficient.
pub fn scalar_matrix(ring: &Arc<PolyRing>, c: Coeff) -> PolyMatrix {
    let mut m = PolyMatrix::zero(ring, 1, 1);
    m.set(0, 0, Poly::constant(ring, c));
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::pp;

    fn ring() -> Arc<PolyRing> {
        PolyRing::new(0, vec!["x1".into(), "x2".into(), "x3".into()]).unwrap()
    }

    fn m(r: &Arc<PolyRing>, rows: &[&[&str]]) -> PolyMatrix {
        PolyMatrix::from_rows(
            r,
            rows.iter()
                .map(|row| row.iter().map(|s| pp(r, s)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn compose_identity() {
        let r = ring();
        let a = m(&r, &[&["x1", "x2"], &["0", "x3"]]);
        let id = PolyMatrix::identity(&r, 2);
        assert_eq!(a.compose(&id).unwrap(), a);
    }

    #[test]
    fn koszul_d1_d2_is_zero() {
        let r = PolyRing::new(0, vec!["x1".into(), "x2".into()]).unwrap();
        let k1 = m(&r, &[&["x1", "x2"]]);
        let k2 = m(&r, &[&["x2"], &["-x1"]]);
        assert!(k1.compose(&k2).unwrap().is_zero());
    }

    #[test]
    fn compose_matches_schoolbook_oracle() {
        let r = ring();
        let a = m(
            &r,
            &[
                &["x1", "x2 + 1", "3"],
                &["0", "x3", "x1*x2"],
                &["1/2", "x1 - x3", "x2^2"],
            ],
        );
        let b = m(
            &r,
            &[
                &["x3", "1", "0"],
                &["x1", "x2", "2"],
                &["5", "0", "x1 + x2 + x3"],
            ],
        );
        let got = a.compose(&b).unwrap();
        // Independent triple loop accumulating in reverse order.
        for i in 0..3 {
            for j in 0..3 {
                let mut acc = Poly::zero(&r);
                for k in (0..3).rev() {
                    acc = b.at(k, j).times(a.at(i, k)).plus(&acc);
                }
                assert_eq!(*got.at(i, j), acc);
            }
        }
    }

    #[test]
    fn dimension_mismatch_errors() {
        let r = ring();
        let a = PolyMatrix::zero(&r, 2, 3);
        let b = PolyMatrix::zero(&r, 2, 2);
        assert!(matches!(
            a.compose(&b),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn unimodular_inverse_identity_and_failure() {
        let r = ring();
        let id = PolyMatrix::identity(&r, 3);
        assert_eq!(id.unimodular_inverse().unwrap(), id);
        let bad = m(&r, &[&["x1", "0"], &["0", "1"]]);
        assert!(matches!(
            bad.unimodular_inverse(),
            Err(Error::NotUnimodular { .. })
        ));
    }

    #[test]
    fn signed_permutation_inverse() {
        let r = ring();
        let p = m(&r, &[&["0", "0", "1"], &["0", "-1", "0"], &["1", "0", "0"]]);
        let inv = p.unimodular_inverse().unwrap();
        assert_eq!(p.compose(&inv).unwrap(), PolyMatrix::identity(&r, 3));
        assert_eq!(inv.compose(&p).unwrap(), PolyMatrix::identity(&r, 3));
    }

    #[test]
    fn solve_identity_returns_rhs() {
        let r = ring();
        let id = PolyMatrix::identity(&r, 2);
        let b = m(&r, &[&["x1*x2"], &["x3 - 1"]]);
        match id.solve_fraction_field(&b).unwrap() {
            FracSolve::Solution {
                entries,
                polynomial,
            } => {
                assert!(polynomial);
                assert_eq!(entries[0][0].to_poly().unwrap(), pp(&r, "x1*x2"));
                assert_eq!(entries[0][1].to_poly().unwrap(), pp(&r, "x3 - 1"));
            }
            _ => panic!("expected a solution"),
        }
    }

    #[test]
    fn underdetermined_solve_is_deterministic() {
        let r = ring();
        let a = m(&r, &[&["x1", "x2"]]);
        let b = m(&r, &[&["x1*x2"]]);
        match a.solve_fraction_field(&b).unwrap() {
            FracSolve::Solution {
                entries,
                polynomial,
            } => {
                assert!(polynomial);
                assert_eq!(entries[0][0].to_poly().unwrap(), pp(&r, "x2"));
                assert!(entries[0][1].to_poly().unwrap().is_zero());
            }
            _ => panic!("expected a solution"),
        }
    }

    #[test]
    fn nonpolynomial_solution_flagged() {
        let r = ring();
        let a = m(&r, &[&["x1"]]);
        let b = m(&r, &[&["1"]]);
        match a.solve_fraction_field(&b).unwrap() {
            FracSolve::Solution { polynomial, .. } => assert!(!polynomial),
            _ => panic!("expected a fraction-field solution"),
        }
    }

    #[test]
    fn rank_and_det() {
        let r = ring();
        let a = m(&r, &[&["x1", "x2"], &["x1", "x2"]]);
        assert_eq!(a.rank(), 1);
        assert!(a.det().unwrap().is_zero());
        let b = m(&r, &[&["x1", "x2"], &["x3", "1"]]);
        assert_eq!(b.det().unwrap(), pp(&r, "x1 - x2*x3"));
        assert_eq!(b.rank(), 2);
    }

    #[test]
    fn numeric_rank_cross_check() {
        let r = ring();
        let b = m(&r, &[&["x1", "x2"], &["x3", "1"]]);
        let exact = b.rank();
        let numeric = b.rank_at_point(&[3, 5, 7], 32003).unwrap();
        assert!(numeric <= exact);
        assert_eq!(numeric, exact);
    }
}
