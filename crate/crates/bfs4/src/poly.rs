//! Multivariate polynomials with exact coefficients.
//!
//! Terms live in a `BTreeMap` keyed by exponent vectors under the graded
//! reverse lexicographic order, so every polynomial is always in canonical
//! form: no zero coefficients are ever stored and the leading term is the
//! maximal key.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::scalar::{is_prime, Coeff};

/// Exponent vector. Ordered by graded reverse lexicographic comparison:
/// higher total degree wins; on ties the *last* differing exponent decides,
/// smaller exponent winning.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Mono(pub Vec<u16>);

impl Mono {
    pub fn constant(nvars: usize) -> Self {
        Mono(vec![0; nvars])
    }

    pub fn var(nvars: usize, idx: usize) -> Self {
        let mut e = vec![0; nvars];
        e[idx] = 1;
        Mono(e)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn is_constant(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        Mono(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn divides(&self, other: &Mono) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming divisibility.
    pub fn div_into(&self, other: &Mono) -> Mono {
        Mono(
            other
                .0
                .iter()
                .zip(&self.0)
                .map(|(b, a)| b - a)
                .collect(),
        )
    }

    pub fn lcm(&self, other: &Mono) -> Mono {
        Mono(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        use std::cmp::Ordering::*;
        match self.total_degree().cmp(&other.total_degree()) {
            Equal => {}
            ord => return ord,
        }
        for i in (0..self.0.len()).rev() {
            match self.0[i].cmp(&other.0[i]) {
                Equal => continue,
                Less => return Greater,
                Greater => return Less,
            }
        }
        std::cmp::Ordering::Equal
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// The ambient polynomial ring: a characteristic (0 or a prime) and an
/// ordered list of variable names.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyRing {
    pub characteristic: u64,
    pub vars: Vec<String>,
}

impl PolyRing {
    pub fn new(characteristic: u64, vars: Vec<String>) -> Result<Arc<PolyRing>> {
        if characteristic != 0 && !is_prime(characteristic) {
            return Err(Error::InvalidParams(format!(
                "characteristic {characteristic} is neither 0 nor prime"
            )));
        }
        let mut seen = std::collections::BTreeSet::new();
        for v in &vars {
            if v.is_empty() {
                return Err(Error::InvalidParams("empty variable name".into()));
            }
            if !seen.insert(v.clone()) {
                return Err(Error::InvalidParams(format!("duplicate variable {v}")));
            }
        }
        Ok(Arc::new(PolyRing {
            characteristic,
            vars,
        }))
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }
}

#[derive(Debug, Clone)]
pub struct Poly {
    ring: Arc<PolyRing>,
    terms: BTreeMap<Mono, Coeff>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        *self.ring == *other.ring && self.terms == other.terms
    }
}

impl Eq for Poly {}

impl Poly {
    pub fn zero(ring: &Arc<PolyRing>) -> Poly {
        Poly {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ring: &Arc<PolyRing>) -> Poly {
        Poly::constant(ring, Coeff::one(ring.characteristic))
    }

    pub fn constant(ring: &Arc<PolyRing>, c: Coeff) -> Poly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Mono::constant(ring.nvars()), c);
        }
        Poly {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn from_i64(ring: &Arc<PolyRing>, v: i64) -> Poly {
        Poly::constant(ring, Coeff::from_i64(v, ring.characteristic))
    }

    pub fn var(ring: &Arc<PolyRing>, idx: usize) -> Poly {
        let mut terms = BTreeMap::new();
        terms.insert(
            Mono::var(ring.nvars(), idx),
            Coeff::one(ring.characteristic),
        );
        Poly {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn monomial(ring: &Arc<PolyRing>, m: Mono, c: Coeff) -> Poly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_constant())
    }

    pub fn nterms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Coeff)> {
        self.terms.iter()
    }

    pub fn constant_coeff(&self) -> Coeff {
        self.terms
            .get(&Mono::constant(self.ring.nvars()))
            .cloned()
            .unwrap_or_else(|| Coeff::zero(self.ring.characteristic))
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.total_degree()).max()
    }

    /// Leading (maximal) term under grevlex.
    pub fn lead(&self) -> Option<(&Mono, &Coeff)> {
        self.terms.iter().next_back()
    }

    fn insert_term(&mut self, m: Mono, c: Coeff) {
        if c.is_zero() {
            return;
        }
        let ch = self.ring.characteristic;
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().add(&c, ch);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    fn same_ring(&self, other: &Poly) {
        assert_eq!(
            *self.ring, *other.ring,
            "polynomial rings differ; validate inputs first"
        );
    }

    pub fn plus(&self, other: &Poly) -> Poly {
        self.same_ring(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert_term(m.clone(), c.clone());
        }
        out
    }

    pub fn minus(&self, other: &Poly) -> Poly {
        self.plus(&other.negated())
    }

    pub fn negated(&self) -> Poly {
        let ch = self.ring.characteristic;
        Poly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.neg(ch)))
                .collect(),
        }
    }

    pub fn times(&self, other: &Poly) -> Poly {
        self.same_ring(other);
        let ch = self.ring.characteristic;
        let mut out = Poly::zero(&self.ring);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.insert_term(ma.mul(mb), ca.mul(cb, ch));
            }
        }
        out
    }

    pub fn scaled(&self, c: &Coeff) -> Poly {
        let ch = self.ring.characteristic;
        let mut out = Poly::zero(&self.ring);
        for (m, cc) in &self.terms {
            out.insert_term(m.clone(), cc.mul(c, ch));
        }
        out
    }

    pub fn mul_term(&self, m: &Mono, c: &Coeff) -> Poly {
        let ch = self.ring.characteristic;
        let mut out = Poly::zero(&self.ring);
        for (mm, cc) in &self.terms {
            out.insert_term(mm.mul(m), cc.mul(c, ch));
        }
        out
    }

    pub fn pow(&self, n: u32) -> Poly {
        let mut out = Poly::one(&self.ring);
        for _ in 0..n {
            out = out.times(self);
        }
        out
    }

    /// Exact single-divisor division: returns `self / g` when `g` divides
    /// `self`, `None` otherwise. For one divisor the standard division
    /// algorithm decides divisibility.
    pub fn div_exact(&self, g: &Poly) -> Option<Poly> {
        self.same_ring(g);
        let ch = self.ring.characteristic;
        let (glm, glc) = g.lead()?;
        let glc_inv = glc.inv(ch).expect("nonzero lead over a field");
        let mut rem = self.clone();
        let mut quot = Poly::zero(&self.ring);
        while let Some((rlm, rlc)) = rem.lead().map(|(m, c)| (m.clone(), c.clone())) {
            if !glm.divides(&rlm) {
                return None;
            }
            let qm = glm.div_into(&rlm);
            let qc = rlc.mul(&glc_inv, ch);
            quot.insert_term(qm.clone(), qc.clone());
            rem = rem.minus(&g.mul_term(&qm, &qc));
        }
        Some(quot)
    }

    /// Reduce every coefficient mod `p`, producing a polynomial over the
    /// prime-field ring with the same variables.
    pub fn reduce_mod(&self, target: &Arc<PolyRing>) -> Result<Poly> {
        if target.vars != self.ring.vars {
            return Err(Error::RingMismatch(
                "variable lists differ under reduction".into(),
            ));
        }
        let p = target.characteristic;
        let mut out = Poly::zero(target);
        for (m, c) in &self.terms {
            out.insert_term(m.clone(), c.reduce_mod(p)?);
        }
        Ok(out)
    }

    /// Numeric evaluation in `Z/p` at the given point.
    pub fn eval_fp(&self, point: &[u64], p: u64) -> Result<u64> {
        let mut acc = 0u64;
        for (m, c) in &self.terms {
            let mut t = c.residue(p)?;
            for (i, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    t = t * (point[i] % p) % p;
                }
            }
            acc = (acc + t) % p;
        }
        Ok(acc)
    }

    /// Re-embed into a ring with additional trailing variables.
    pub fn extend_ring(&self, target: &Arc<PolyRing>) -> Poly {
        assert!(target.vars.len() >= self.ring.vars.len());
        assert_eq!(
            &target.vars[..self.ring.vars.len()],
            &self.ring.vars[..],
            "target ring must extend the source ring"
        );
        assert_eq!(target.characteristic, self.ring.characteristic);
        let extra = target.nvars() - self.ring.nvars();
        let mut out = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut e = m.0.clone();
            e.extend(std::iter::repeat_n(0, extra));
            out.insert_term(Mono(e), c.clone());
        }
        out
    }
}

/// Public checked arithmetic entry point. Errors on ring mismatch.
pub fn poly_arith(a: &Poly, b: &Poly, kind: ArithKind) -> Result<Poly> {
    if *a.ring() != *b.ring() {
        return Err(Error::RingMismatch(format!(
            "{:?} vs {:?}",
            a.ring().vars,
            b.ring().vars
        )));
    }
    Ok(match kind {
        ArithKind::Add => a.plus(b),
        ArithKind::Sub => a.minus(b),
        ArithKind::Mul => a.times(b),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithKind {
    Add,
    Sub,
    Mul,
}

impl std::fmt::Display for Poly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let cs = c.to_string();
            let (neg, mag) = match cs.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, cs),
            };
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            if mag != "1" || m.is_constant() {
                factors.push(mag.clone());
            }
            for (i, &e) in m.0.iter().enumerate() {
                if e == 1 {
                    factors.push(self.ring.vars[i].clone());
                } else if e > 1 {
                    factors.push(format!("{}^{}", self.ring.vars[i], e));
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

/// Convenience constructor used across tests: parse in the given ring.
pub fn pp(ring: &Arc<PolyRing>, text: &str) -> Poly {
    crate::parse::parse_poly(ring, text).expect("test polynomial parses")
}

#[allow(unused)]
pub fn big(v: i64) -> BigInt {
    BigInt::from(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qring() -> Arc<PolyRing> {
        PolyRing::new(0, vec!["x1".into(), "x2".into(), "x3".into()]).unwrap()
    }

    #[test]
    fn grevlex_order() {
        // x1^2 > x1*x2 > x2^2 > x1*x3 > x2*x3 > x3^2
        let m = |a: u16, b: u16, c: u16| Mono(vec![a, b, c]);
        let mut v = vec![
            m(2, 0, 0),
            m(1, 1, 0),
            m(0, 2, 0),
            m(1, 0, 1),
            m(0, 1, 1),
            m(0, 0, 2),
        ];
        let sorted = v.clone();
        v.reverse();
        v.sort_by(|a, b| b.cmp(a));
        assert_eq!(v, sorted);
    }

    #[test]
    fn difference_of_squares() {
        let r = qring();
        let a = pp(&r, "x1 + x2");
        let b = pp(&r, "x1 - x2");
        assert_eq!(a.times(&b), pp(&r, "x1^2 - x2^2"));
    }

    #[test]
    fn add_zero_is_identity() {
        let r = qring();
        let p = pp(&r, "2*x1^2 - 1/3*x2 + 7");
        assert_eq!(p.plus(&Poly::zero(&r)), p);
    }

    #[test]
    fn ring_mismatch_rejected() {
        let r1 = qring();
        let r2 = PolyRing::new(0, vec!["y".into()]).unwrap();
        let res = poly_arith(&pp(&r1, "x1"), &pp(&r2, "y"), ArithKind::Add);
        assert!(matches!(res, Err(Error::RingMismatch(_))));
    }

    #[test]
    fn freshman_dream_mod_3() {
        let r = PolyRing::new(3, vec!["x1".into()]).unwrap();
        let p = pp(&r, "x1 + 1").pow(3);
        // Oracle: expand term by term with binomial coefficients mod 3.
        let binom = [1i64, 3, 3, 1];
        let mut oracle = Poly::zero(&r);
        for (k, &b) in binom.iter().enumerate() {
            let term = Poly::var(&r, 0)
                .pow(k as u32)
                .scaled(&Coeff::from_i64(b, 3));
            oracle = oracle.plus(&term);
        }
        assert_eq!(p, oracle);
        assert_eq!(p, pp(&r, "x1^3 + 1"));
    }

    #[test]
    fn exact_division() {
        let r = qring();
        let f = pp(&r, "x1^2 - x2^2");
        let g = pp(&r, "x1 - x2");
        assert_eq!(f.div_exact(&g).unwrap(), pp(&r, "x1 + x2"));
        assert!(pp(&r, "x1^2 + x2").div_exact(&g).is_none());
    }

    #[test]
    fn display_roundtrip_samples() {
        let r = qring();
        for s in [
            "0",
            "1",
            "-1/2",
            "x1",
            "2*x1^2*x2 - x3 + 5",
            "-x1 + 1/3",
        ] {
            let p = pp(&r, s);
            assert_eq!(pp(&r, &p.to_string()), p, "roundtrip of {s}");
        }
    }
}
