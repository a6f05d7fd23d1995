//! Instance files: the canonical schema, parsing and validation, conversion
//! to a DG algebra, and the shipped generator families (`ci`, `tensor`,
//! `perturbed`).
//!
//! The format is versioned JSON (`"format": 1`). Matrices are arrays of
//! arrays of polynomial strings (rows indexed by the target basis); the
//! product tensors are maps from basis-pair labels `"i:s,j:t"` to
//! coefficient vectors over the basis of degree `i + j`. All polynomials
//! use the shared text grammar.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::complexes::{build_complex, BasedModule};
use crate::error::{Error, Result};
use crate::matrix::PolyMatrix;
use crate::multialg::{koszul_algebra, tensor_dga, DgAlgebra, ProductTensor};
use crate::parse::parse_poly;
use crate::poly::{Poly, PolyRing};

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingSpec {
    pub characteristic: u64,
    pub variables: Vec<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraSpec {
    /// `differentials[i-1]` is the matrix of `d_i`, rows over the basis of
    /// degree `i-1`.
    pub differentials: Vec<Vec<Vec<String>>>,
    /// Keys `"i:s,j:t"` with `1 <= i <= j`, `i + j <= n`; values are
    /// coefficient vectors over the degree `i+j` basis.
    pub products: BTreeMap<String, Vec<String>>,
    /// Divided squares per positive even degree `e` with `2e <= n`: keys
    /// `"e:t"`, values coefficient vectors over degree `2e`.
    pub gamma2: BTreeMap<String, Vec<String>>,
    /// Row vector on the top module.
    pub orientation: Vec<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
#[derive(Default)]
pub struct OptionsSpec {
    #[serde(default)]
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub calibration: Option<String>,
}


#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceSpec {
    pub format: u32,
    pub ring: RingSpec,
    pub m: AlgebraSpec,
    pub regular_sequence: Vec<String>,
    pub splitting: Vec<usize>,
    pub r: String,
    #[serde(default)]
    pub options: OptionsSpec,
}

/// Parse and validate an instance file.
pub fn parse_instance(path: &std::path::Path) -> Result<InstanceSpec> {
    let text = std::fs::read_to_string(path)?;
    parse_instance_str(&text)
}

pub fn parse_instance_str(text: &str) -> Result<InstanceSpec> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let spec: InstanceSpec =
        serde_path_to_error::deserialize(de).map_err(|e| Error::SchemaViolation {
            path: e.path().to_string(),
            detail: e.to_string(),
        })?;
    if spec.format != 1 {
        return Err(Error::SchemaViolation {
            path: "format".into(),
            detail: format!("unsupported format {}", spec.format),
        });
    }
    Ok(spec)
}

fn parse_matrix(
    ring: &Arc<PolyRing>,
    rows: &[Vec<String>],
    path: &str,
) -> Result<PolyMatrix> {
    let mut out = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        let mut r = Vec::new();
        for (j, s) in row.iter().enumerate() {
            r.push(parse_poly(ring, s).map_err(|e| annotate(e, &format!("{path}[{i}][{j}]")))?);
        }
        out.push(r);
    }
    PolyMatrix::from_rows(ring, out)
}

fn annotate(e: Error, path: &str) -> Error {
    match e {
        Error::ParseError {
            input,
            column,
            detail,
        } => Error::SchemaViolation {
            path: path.to_string(),
            detail: format!("parse error at column {column}: {detail} in {input:?}"),
        },
        other => other,
    }
}

fn parse_vec(ring: &Arc<PolyRing>, v: &[String], path: &str) -> Result<Vec<Poly>> {
    v.iter()
        .enumerate()
        .map(|(i, s)| parse_poly(ring, s).map_err(|e| annotate(e, &format!("{path}[{i}]"))))
        .collect()
}

#[derive(Debug)]
pub struct LoadedInstance {
    pub ring: Arc<PolyRing>,
    pub m: DgAlgebra,
    pub seq: Vec<Poly>,
    pub splitting: Vec<usize>,
    pub r: Poly,
    pub seed: u64,
    pub calibration: Option<String>,
}

/// Turn a validated schema into a checked `DgAlgebra` plus pipeline inputs.
pub fn load_instance(spec: &InstanceSpec) -> Result<LoadedInstance> {
    let ring = PolyRing::new(spec.ring.characteristic, spec.ring.variables.clone())?;

    let diffs: Vec<PolyMatrix> = spec
        .m
        .differentials
        .iter()
        .enumerate()
        .map(|(i, rows)| parse_matrix(&ring, rows, &format!("m.differentials[{i}]")))
        .collect::<Result<_>>()?;
    let n = diffs.len();
    if n != 4 {
        return Err(Error::SchemaViolation {
            path: "m.differentials".into(),
            detail: format!("expected 4 differentials, got {n}"),
        });
    }
    let ranks: Vec<usize> = {
        let mut r = vec![diffs[0].rows];
        for d in &diffs {
            r.push(d.cols);
        }
        r
    };
    if ranks[0] != 1 {
        return Err(Error::SchemaViolation {
            path: "m.differentials[0]".into(),
            detail: format!("degree-0 module must have rank 1, got {}", ranks[0]),
        });
    }
    for i in 1..diffs.len() {
        if diffs[i].rows != ranks[i] {
            return Err(Error::SchemaViolation {
                path: format!("m.differentials[{i}]"),
                detail: format!(
                    "rows {} inconsistent with previous columns {}",
                    diffs[i].rows, ranks[i]
                ),
            });
        }
    }
    let modules: Vec<BasedModule> = (0..=n)
        .map(|i| BasedModule::atoms(i, "b", ranks[i]))
        .collect();
    let complex = build_complex(&ring, modules, diffs)?;

    // Products: require exactly the nontrivial degree pairs on all basis
    // pairs.
    let mut products: BTreeMap<(usize, usize), ProductTensor> = BTreeMap::new();
    for i in 1..=n {
        for j in i..=n {
            if i + j > n {
                continue;
            }
            let mut tensor: ProductTensor = Vec::new();
            for s in 0..ranks[i] {
                let mut row = Vec::new();
                for t in 0..ranks[j] {
                    let key = format!("{i}:{s},{j}:{t}");
                    let v = spec.m.products.get(&key).ok_or_else(|| {
                        Error::SchemaViolation {
                            path: format!("m.products.{key}"),
                            detail: "missing product entry".into(),
                        }
                    })?;
                    if v.len() != ranks[i + j] {
                        return Err(Error::SchemaViolation {
                            path: format!("m.products.{key}"),
                            detail: format!(
                                "vector length {} != rank {}",
                                v.len(),
                                ranks[i + j]
                            ),
                        });
                    }
                    row.push(parse_vec(&ring, v, &format!("m.products.{key}"))?);
                }
                tensor.push(row);
            }
            products.insert((i, j), tensor);
        }
    }
    for key in spec.m.products.keys() {
        let parsed = parse_product_key(key)?;
        let (i, s, j, t) = parsed;
        if !(i >= 1 && i <= j && i + j <= n && s < ranks[i] && t < ranks[j]) {
            return Err(Error::SchemaViolation {
                path: format!("m.products.{key}"),
                detail: "key out of range or not in i <= j form".into(),
            });
        }
    }

    // Divided squares on positive even degrees with 2e <= n.
    let mut gamma2: BTreeMap<usize, Vec<Vec<Poly>>> = BTreeMap::new();
    let mut e = 2usize;
    while 2 * e <= n {
        let mut rows = Vec::new();
        for t in 0..ranks[e] {
            let key = format!("{e}:{t}");
            let v = spec
                .m
                .gamma2
                .get(&key)
                .ok_or_else(|| Error::SchemaViolation {
                    path: format!("m.gamma2.{key}"),
                    detail: "missing divided-square entry".into(),
                })?;
            if v.len() != ranks[2 * e] {
                return Err(Error::SchemaViolation {
                    path: format!("m.gamma2.{key}"),
                    detail: format!("vector length {} != rank {}", v.len(), ranks[2 * e]),
                });
            }
            rows.push(parse_vec(&ring, v, &format!("m.gamma2.{key}"))?);
        }
        gamma2.insert(e, rows);
        e += 2;
    }

    if spec.m.orientation.len() != ranks[n] {
        return Err(Error::SchemaViolation {
            path: "m.orientation".into(),
            detail: format!(
                "length {} != top rank {}",
                spec.m.orientation.len(),
                ranks[n]
            ),
        });
    }
    let orientation = PolyMatrix::from_rows(
        &ring,
        vec![parse_vec(&ring, &spec.m.orientation, "m.orientation")?],
    )?;

    let m = DgAlgebra {
        complex,
        products,
        gamma2,
        orientation,
    };

    let seq = parse_vec(&ring, &spec.regular_sequence, "regular_sequence")?;
    if seq.len() != 3 {
        return Err(Error::SchemaViolation {
            path: "regular_sequence".into(),
            detail: format!("expected 3 entries, got {}", seq.len()),
        });
    }
    if spec.splitting.len() != 3 {
        return Err(Error::SchemaViolation {
            path: "splitting".into(),
            detail: format!("expected exactly 3 indices, got {}", spec.splitting.len()),
        });
    }
    let r = parse_poly(&ring, &spec.r).map_err(|e| annotate(e, "r"))?;

    Ok(LoadedInstance {
        ring,
        m,
        seq,
        splitting: spec.splitting.clone(),
        r,
        seed: spec.options.seed,
        calibration: spec.options.calibration.clone(),
    })
}

fn parse_product_key(key: &str) -> Result<(usize, usize, usize, usize)> {
    let bad = || Error::SchemaViolation {
        path: format!("m.products.{key}"),
        detail: "expected key of the form \"i:s,j:t\"".into(),
    };
    let (a, b) = key.split_once(',').ok_or_else(bad)?;
    let (i, s) = a.split_once(':').ok_or_else(bad)?;
    let (j, t) = b.split_once(':').ok_or_else(bad)?;
    Ok((
        i.parse().map_err(|_| bad())?,
        s.parse().map_err(|_| bad())?,
        j.parse().map_err(|_| bad())?,
        t.parse().map_err(|_| bad())?,
    ))
}

/// Serialize a `DgAlgebra` plus pipeline inputs back into the schema.
pub fn algebra_to_spec(
    m: &DgAlgebra,
    seq: &[Poly],
    splitting: &[usize],
    r: &Poly,
    seed: u64,
) -> InstanceSpec {
    let n = m.len();
    let mut products = BTreeMap::new();
    for (&(i, j), tensor) in &m.products {
        for (s, row) in tensor.iter().enumerate() {
            for (t, v) in row.iter().enumerate() {
                products.insert(
                    format!("{i}:{s},{j}:{t}"),
                    v.iter().map(|p| p.to_string()).collect(),
                );
            }
        }
    }
    let mut gamma2 = BTreeMap::new();
    for (&e, rows) in &m.gamma2 {
        for (t, v) in rows.iter().enumerate() {
            gamma2.insert(
                format!("{e}:{t}"),
                v.iter().map(|p| p.to_string()).collect(),
            );
        }
    }
    InstanceSpec {
        format: 1,
        ring: RingSpec {
            characteristic: m.ring().characteristic,
            variables: m.ring().vars.clone(),
        },
        m: AlgebraSpec {
            differentials: (1..=n).map(|i| m.complex.d(i).to_strings()).collect(),
            products,
            gamma2,
            orientation: (0..m.rank(n))
                .map(|t| m.orientation.at(0, t).to_string())
                .collect(),
        },
        regular_sequence: seq.iter().map(|p| p.to_string()).collect(),
        splitting: splitting.to_vec(),
        r: r.to_string(),
        options: OptionsSpec {
            seed,
            calibration: None,
        },
    }
}

// ---------------------------------------------------------------------------
// Generators.
// ---------------------------------------------------------------------------

/// The complete-intersection family: the Koszul algebra on four variables,
/// the first three as the regular sequence, splitting the first three
/// columns, and `r` the last variable.
pub fn gen_ci(characteristic: u64) -> Result<InstanceSpec> {
    let ring = PolyRing::new(
        characteristic,
        vec!["x1".into(), "x2".into(), "x3".into(), "x4".into()],
    )?;
    let vars: Vec<Poly> = (0..4).map(|i| Poly::var(&ring, i)).collect();
    let m = koszul_algebra(&ring, &vars)?;
    let seq = &vars[..3];
    Ok(algebra_to_spec(&m, seq, &[0, 1, 2], &vars[3], 0))
}

/// A base description for the tensor family: a length-3 DG algebra in the
/// same schema shape (no divided squares are needed at length 3).
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DgaFileSpec {
    pub format: u32,
    pub ring: RingSpec,
    pub differentials: Vec<Vec<Vec<String>>>,
    pub products: BTreeMap<String, Vec<String>>,
    pub orientation: Vec<String>,
}

/// Tensor family: a supplied (or default Koszul) length-3 DG algebra
/// tensored with the Koszul complex on one additional variable.
pub fn gen_tensor(characteristic: u64, base: Option<&std::path::Path>) -> Result<InstanceSpec> {
    let (a, extra_var): (DgAlgebra, String) = match base {
        None => {
            let ring = PolyRing::new(
                characteristic,
                vec!["x1".into(), "x2".into(), "x3".into(), "x4".into()],
            )?;
            let vars: Vec<Poly> = (0..3).map(|i| Poly::var(&ring, i)).collect();
            (koszul_algebra(&ring, &vars)?, "x4".into())
        }
        Some(path) => {
            let text = std::fs::read_to_string(path)?;
            let de = &mut serde_json::Deserializer::from_str(&text);
            let spec: DgaFileSpec =
                serde_path_to_error::deserialize(de).map_err(|e| Error::SchemaViolation {
                    path: e.path().to_string(),
                    detail: e.to_string(),
                })?;
            let mut vars = spec.ring.variables.clone();
            let extra = format!("y{}", vars.len());
            vars.push(extra.clone());
            let ring = PolyRing::new(spec.ring.characteristic, vars)?;
            let n = spec.differentials.len();
            if n != 3 {
                return Err(Error::SchemaViolation {
                    path: "differentials".into(),
                    detail: format!("tensor base must have length 3, got {n}"),
                });
            }
            let diffs: Vec<PolyMatrix> = spec
                .differentials
                .iter()
                .enumerate()
                .map(|(i, rows)| parse_matrix(&ring, rows, &format!("differentials[{i}]")))
                .collect::<Result<_>>()?;
            let ranks: Vec<usize> = {
                let mut r = vec![diffs[0].rows];
                for d in &diffs {
                    r.push(d.cols);
                }
                r
            };
            let modules: Vec<BasedModule> = (0..=n)
                .map(|i| BasedModule::atoms(i, "a", ranks[i]))
                .collect();
            let complex = build_complex(&ring, modules, diffs)?;
            let mut products: BTreeMap<(usize, usize), ProductTensor> = BTreeMap::new();
            for i in 1..=n {
                for j in i..=n {
                    if i + j > n {
                        continue;
                    }
                    let mut tensor: ProductTensor = Vec::new();
                    for s in 0..ranks[i] {
                        let mut row = Vec::new();
                        for t in 0..ranks[j] {
                            let key = format!("{i}:{s},{j}:{t}");
                            let v = spec.products.get(&key).ok_or_else(|| {
                                Error::SchemaViolation {
                                    path: format!("products.{key}"),
                                    detail: "missing product entry".into(),
                                }
                            })?;
                            row.push(parse_vec(&ring, v, &format!("products.{key}"))?);
                        }
                        tensor.push(row);
                    }
                    products.insert((i, j), tensor);
                }
            }
            let orientation = PolyMatrix::from_rows(
                &ring,
                vec![parse_vec(&ring, &spec.orientation, "orientation")?],
            )?;
            (
                DgAlgebra {
                    complex,
                    products,
                    gamma2: Default::default(),
                    orientation,
                },
                extra,
            )
        }
    };
    let ring = a.ring().clone();
    let yidx = ring.var_index(&extra_var).ok_or_else(|| {
        Error::InvalidParams(format!("variable {extra_var} missing from the ring"))
    })?;
    let y = Poly::var(&ring, yidx);
    let kos1 = koszul_algebra(&ring, std::slice::from_ref(&y))?;
    let m = tensor_dga(&a, &kos1)?;
    // Splitting selection: a set of three columns of m_1 whose boundaries
    // form a regular sequence. Prefer columns 1..3 (the base's first three
    // degree-1 generators; in the tensor ordering the extra variable sits
    // at column 0), falling back to a lexicographic scan with the Koszul
    // regularity test.
    let d1 = m.complex.d(1);
    let rank1 = m.rank(1);
    let col_seq = |set: &[usize]| -> Vec<Poly> {
        set.iter().map(|&j| d1.at(0, j).clone()).collect()
    };
    let mut candidates: Vec<Vec<usize>> = vec![vec![1, 2, 3]];
    for a in 0..rank1 {
        for b in a + 1..rank1 {
            for c in b + 1..rank1 {
                candidates.push(vec![a, b, c]);
            }
        }
    }
    let mut chosen = None;
    for set in candidates {
        if set.iter().any(|&j| j >= rank1) {
            continue;
        }
        let seq = col_seq(&set);
        if crate::multialg::is_regular_sequence(&ring, &seq)? {
            chosen = Some((set, seq));
            break;
        }
    }
    let (splitting, seq) = chosen.ok_or_else(|| {
        Error::InvalidParams(
            "no three columns of m_1 cut out a regular sequence".into(),
        )
    })?;
    Ok(algebra_to_spec(&m, &seq, &splitting, &y, 0))
}

/// Unimodular basis perturbation with transported structure. The change of
/// basis on `M_1` is block-triangular with respect to the splitting: the
/// splitting columns mix only among themselves (the regular sequence is
/// transported along), and the complement may additionally receive
/// contributions from anywhere in `M_1`.
pub fn gen_perturbed(base: &InstanceSpec, seed: u64) -> Result<InstanceSpec> {
    let loaded = load_instance(base)?;
    let m = &loaded.m;
    let ring = loaded.ring.clone();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = m.len();

    // Unimodular integer matrix as a product of elementary operations.
    let mut elementary = |size: usize, allowed: &dyn Fn(usize, usize) -> bool| -> PolyMatrix {
        let mut u = PolyMatrix::identity(&ring, size);
        if size <= 1 {
            return u;
        }
        let ops = 2 * size;
        for _ in 0..ops {
            let i = rng.gen_range(0..size);
            let j = rng.gen_range(0..size);
            if i == j || !allowed(i, j) {
                continue;
            }
            let c: i64 = *[-2i64, -1, 1, 2].get(rng.gen_range(0..4)).unwrap();
            // row_i += c * row_j acting on basis columns: u = E * u keeps
            // det = +-1.
            let mut e = PolyMatrix::identity(&ring, size);
            e.set(i, j, Poly::from_i64(&ring, c));
            u = e.compose(&u).expect("square");
        }
        u
    };

    let rank1 = m.rank(1);
    let in_split = |i: usize| loaded.splitting.contains(&i);
    // Keep splitting columns supported on splitting rows: a non-splitting
    // row may never receive a contribution from a splitting row.
    let u1 = elementary(rank1, &|i, j| in_split(i) || !in_split(j));
    let u2 = elementary(m.rank(2), &|_, _| true);
    let u3 = elementary(m.rank(3), &|_, _| true);
    // Top degree: possibly flip the orientation sign.
    let mut u4 = PolyMatrix::identity(&ring, m.rank(4));
    if rng.gen_bool(0.5) {
        u4 = u4.negated();
    }
    let us = [PolyMatrix::identity(&ring, 1), u1, u2, u3, u4];

    // Transport: d'_i = U_{i-1}^{-1} d_i U_i; mu'(s,t) = U_{i+j}^{-1}
    // mu(U_i e_s, U_j e_t); gamma2'(t) = U_4^{-1} gamma2(U_2 e_t);
    // orientation' = orientation o U_4.
    let inv: Vec<PolyMatrix> = us
        .iter()
        .map(|u| u.unimodular_inverse().expect("unimodular by construction"))
        .collect();
    let mut diffs = Vec::new();
    for i in 1..=n {
        let d = inv[i - 1].compose(&m.complex.d(i))?.compose(&us[i])?;
        diffs.push(d);
    }
    let modules: Vec<BasedModule> = (0..=n)
        .map(|i| BasedModule::atoms(i, "b", m.rank(i)))
        .collect();
    let complex = build_complex(&ring, modules, diffs)?;

    let mut products: BTreeMap<(usize, usize), ProductTensor> = BTreeMap::new();
    for &(i, j) in m.products.keys() {
        let mut tensor: ProductTensor = Vec::new();
        for s in 0..m.rank(i) {
            let mut row = Vec::new();
            for t in 0..m.rank(j) {
                let prod = m.mul_vec(i, &us[i].col(s), j, &us[j].col(t));
                row.push(inv[i + j].apply(&prod));
            }
            tensor.push(row);
        }
        products.insert((i, j), tensor);
    }

    let mut gamma2 = BTreeMap::new();
    for &e in m.gamma2.keys() {
        let mut rows = Vec::new();
        for t in 0..m.rank(e) {
            let g = m.gamma2_vec(e, &us[e].col(t));
            rows.push(inv[2 * e].apply(&g));
        }
        gamma2.insert(e, rows);
    }

    let orientation = m.orientation.compose(&us[n])?;
    let perturbed = DgAlgebra {
        complex,
        products,
        gamma2,
        orientation,
    };

    // Transport the regular sequence through the splitting block of U_1.
    let d1 = perturbed.complex.d(1);
    let seq: Vec<Poly> = loaded
        .splitting
        .iter()
        .map(|&c| d1.at(0, c).clone())
        .collect();
    Ok(algebra_to_spec(
        &perturbed,
        &seq,
        &loaded.splitting,
        &loaded.r,
        seed,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multialg::verify_dga;

    #[test]
    fn ci_roundtrip() {
        let spec = gen_ci(0).unwrap();
        let text = serde_json::to_string_pretty(&spec).unwrap();
        let back = parse_instance_str(&text).unwrap();
        let loaded = load_instance(&back).unwrap();
        let rep = verify_dga(&loaded.m);
        assert!(rep.pass(), "{:?}", rep.first_failure());
        // Round trip again: identical serialization.
        let spec2 = algebra_to_spec(
            &loaded.m,
            &loaded.seq,
            &loaded.splitting,
            &loaded.r,
            loaded.seed,
        );
        assert_eq!(text, serde_json::to_string_pretty(&spec2).unwrap());
    }

    #[test]
    fn missing_gamma2_is_schema_violation() {
        let mut spec = gen_ci(0).unwrap();
        spec.m.gamma2.clear();
        let err = load_instance(&spec).unwrap_err();
        match err {
            Error::SchemaViolation { path, .. } => assert!(path.contains("gamma2")),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn bad_polynomial_reports_location() {
        let mut spec = gen_ci(0).unwrap();
        spec.r = "x1 +* x2".into();
        let err = load_instance(&spec).unwrap_err();
        match err {
            Error::SchemaViolation { path, detail } => {
                assert_eq!(path, "r");
                assert!(detail.contains("column 5"), "{detail}");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn tensor_default_matches_ci_shape() {
        let spec = gen_tensor(0, None).unwrap();
        let loaded = load_instance(&spec).unwrap();
        let rep = verify_dga(&loaded.m);
        assert!(rep.pass(), "{:?}", rep.first_failure());
        assert_eq!(loaded.m.rank(1), 4);
        assert_eq!(loaded.m.rank(2), 6);
    }

    #[test]
    fn perturbed_instance_still_verifies() {
        let base = gen_ci(0).unwrap();
        let spec = gen_perturbed(&base, 7).unwrap();
        let loaded = load_instance(&spec).unwrap();
        let rep = verify_dga(&loaded.m);
        assert!(rep.pass(), "{:?}", rep.first_failure());
        // The splitting columns still map onto the declared sequence.
        let d1 = loaded.m.complex.d(1);
        for (j, &c) in loaded.splitting.iter().enumerate() {
            assert_eq!(*d1.at(0, c), loaded.seq[j]);
        }
    }
}
