//! Closed-form theory of `G_{P^k}(D)` for a monic irreducible `P`.
//!
//! A divisor set is stored by its exponents: `D = {P^{k_1}, ..., P^{k_s}}`
//! with `0 <= k_1 < ... < k_s < k`.

use serde::{Deserialize, Serialize};

use crate::arith::norm;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::graph::PlainGraph;
use crate::poly::{monic_irreducible, Poly, PolyJson};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PrimePowerSpec {
    p: Poly,
    k: u32,
    exponents: Vec<u32>,
}

impl PrimePowerSpec {
    pub fn new(p: &Poly, k: u32, exponents: &[u32]) -> Result<PrimePowerSpec> {
        if !p.is_monic() || !p.is_irreducible()? {
            return Err(Error::invalid(format!("{p} is not monic irreducible")));
        }
        if k == 0 {
            return Err(Error::invalid("exponent k must be at least 1"));
        }
        if exponents.windows(2).any(|w| w[0] >= w[1]) || exponents.last().is_some_and(|&e| e >= k) {
            return Err(Error::invalid(format!("exponents {exponents:?} must increase strictly and stay below {k}")));
        }
        Ok(PrimePowerSpec { p: p.clone(), k, exponents: exponents.to_vec() })
    }

    /// Reads `f = P^k` and `D` back into exponent form.
    pub fn from_divisor_set(f: &Poly, d_set: &[Poly]) -> Result<PrimePowerSpec> {
        let fac = f.factor()?;
        let [(p, k)] = fac.factors.as_slice() else {
            return Err(Error::invalid(format!("{f} is not a power of an irreducible")));
        };
        let mut exponents = Vec::with_capacity(d_set.len());
        for d in d_set {
            let e = (d.deg() / p.deg()) as u32;
            if *d != p.pow(e) || e >= *k {
                return Err(Error::InvalidDivisor(d.to_string()));
            }
            exponents.push(e);
        }
        exponents.sort_unstable();
        PrimePowerSpec::new(p, *k, &exponents)
    }

    pub fn prime(&self) -> &Poly {
        &self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    /// `|P|`.
    pub fn prime_norm(&self) -> i64 {
        norm(&self.p) as i64
    }

    pub fn modulus(&self) -> Poly {
        self.p.pow(self.k)
    }

    pub fn divisor_set(&self) -> Vec<Poly> {
        self.exponents.iter().map(|&e| self.p.pow(e)).collect()
    }

    fn contains(&self, e: u32) -> bool {
        self.exponents.binary_search(&e).is_ok()
    }
}

/// `phi(P^e)` from `|P|`.
fn phi_pp(np: i64, e: u32) -> i64 {
    if e == 0 {
        1
    } else {
        np.pow(e - 1) * (np - 1)
    }
}

/// 1 if some `k_i = k - t - 1`.
pub fn chi(spec: &PrimePowerSpec, t: u32) -> u32 {
    assert!(t <= spec.k, "t out of range");
    (t < spec.k && spec.contains(spec.k - t - 1)) as u32
}

/// Eigenvalue on the class of `g` with `gcd(g, P^k) = P^t`.
pub fn pp_eigenvalue(spec: &PrimePowerSpec, t: u32) -> i64 {
    let np = spec.prime_norm();
    let k = spec.k;
    let tail: i64 = spec.exponents.iter().filter(|&&ki| ki + t >= k).map(|&ki| phi_pp(np, k - ki)).sum();
    tail - chi(spec, t) as i64 * np.pow(t)
}

/// Number of residues with `gcd = P^t`.
pub fn pp_multiplicity(spec: &PrimePowerSpec, t: u32) -> u64 {
    phi_pp(spec.prime_norm(), spec.k - t) as u64
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PPClass {
    pub t: u32,
    pub lambda: i64,
    pub mult: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PPFlags {
    pub has_zero: bool,
    pub has_neg_one: bool,
    pub has_one: bool,
    pub exactly_two_distinct: bool,
    /// The closed-form eigenvalue-1 criterion; only stated when `1 in D`.
    pub has_one_predicted: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PPEigenReport {
    pub classes: Vec<PPClass>,
    /// Read off the class table.
    pub flags: PPFlags,
}

impl PPEigenReport {
    /// `(value, multiplicity)`, value descending.
    pub fn multiset(&self) -> Vec<(i64, u64)> {
        let mut acc = std::collections::BTreeMap::new();
        for c in &self.classes {
            *acc.entry(c.lambda).or_insert(0u64) += c.mult;
        }
        acc.into_iter().rev().collect()
    }
}

pub fn pp_report(spec: &PrimePowerSpec) -> PPEigenReport {
    let classes: Vec<PPClass> =
        (0..=spec.k).map(|t| PPClass { t, lambda: pp_eigenvalue(spec, t), mult: pp_multiplicity(spec, t) }).collect();
    let has = |v: i64| classes.iter().any(|c| c.lambda == v);
    let mut distinct: Vec<i64> = classes.iter().map(|c| c.lambda).collect();
    distinct.sort_unstable();
    distinct.dedup();
    let flags = PPFlags {
        has_zero: has(0),
        has_neg_one: has(-1),
        has_one: has(1),
        exactly_two_distinct: distinct.len() == 2,
        has_one_predicted: spec.contains(0).then(|| predicted_flags(spec).has_one),
    };
    PPEigenReport { classes, flags }
}

/// Flags from the membership criteria alone, without evaluating eigenvalues.
pub fn pp_special_eigs(spec: &PrimePowerSpec) -> PPFlags {
    predicted_flags(spec)
}

fn predicted_flags(spec: &PrimePowerSpec) -> PPFlags {
    let k = spec.k;
    let top = spec.contains(k - 1);
    let field = spec.p.field();
    let has_one = field.q() == 2
        && spec.p.deg() == 1
        && top
        && (k < 2 || !spec.contains(k - 2))
        && spec.contains(0);
    let consecutive = !spec.exponents.is_empty()
        && spec.exponents.iter().enumerate().all(|(i, &e)| e == spec.exponents[0] + i as u32)
        && top;
    PPFlags {
        has_zero: !top,
        has_neg_one: top,
        has_one,
        exactly_two_distinct: consecutive,
        has_one_predicted: spec.contains(0).then_some(has_one),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PPStructure {
    pub components: u64,
    pub bipartite: bool,
    pub clique_number: u64,
    pub chromatic_number: u64,
    pub independence_number: u64,
    /// Lexicographic product of `K_{|P|}` / `E_{|P|}` factors, e.g. `K_2*K_2*E_2`.
    pub decomposition: String,
}

pub fn pp_structure(spec: &PrimePowerSpec) -> PPStructure {
    let np = spec.prime_norm() as u64;
    let s = spec.exponents.len() as u32;
    let components = match spec.exponents.first() {
        None => np.pow(spec.k),
        Some(&k1) => np.pow(k1),
    };
    // G is |P|^{k_1} copies of G_{P^{k-k_1}}(D / P^{k_1}); the connected piece is
    // bipartite only for K_2-based unitary graphs over F_2
    let bipartite = match spec.exponents.as_slice() {
        [] => true,
        [_] => spec.p.field().q() == 2 && spec.p.deg() == 1,
        _ => false,
    };
    PPStructure {
        components,
        bipartite,
        clique_number: np.pow(s),
        chromatic_number: np.pow(s),
        independence_number: np.pow(spec.k - s),
        decomposition: factors(spec).join("*"),
    }
}

fn factors(spec: &PrimePowerSpec) -> Vec<String> {
    let np = spec.prime_norm();
    (0..spec.k).map(|j| format!("{}_{np}", if spec.contains(j) { 'K' } else { 'E' })).collect()
}

/// Materializes the decomposition; vertex order is unrelated to residue order.
pub fn decomposition_graph(spec: &PrimePowerSpec) -> PlainGraph {
    let np = spec.prime_norm() as usize;
    (0..spec.k)
        .map(|j| if spec.contains(j) { PlainGraph::complete(np) } else { PlainGraph::empty(np) })
        .reduce(|acc, x| acc.wreath(&x))
        .expect("k >= 1")
}

/// `lambda = 0 (mod |P| - 1)` for `lambda >= 0`, `-1 (mod |P| - 1)` otherwise.
pub fn congruence_check(lambda: i64, p: &Poly) -> bool {
    let m = norm(p) as i64 - 1;
    if lambda >= 0 {
        lambda % m == 0
    } else {
        (lambda + 1) % m == 0
    }
}

/// Base-`b` digits, least significant first; `None` if some digit exceeds 1.
fn binary_digits(mut v: i64, b: i64) -> Option<Vec<bool>> {
    let mut out = Vec::new();
    while v > 0 {
        match v % b {
            0 => out.push(false),
            1 => out.push(true),
            _ => return None,
        }
        v /= b;
    }
    Some(out)
}

/// Some `(k, D)` over `P` with `lambda` in the spectrum of `G_{P^k}(D)`, or `None`.
pub fn realizable_eigen(lambda: i64, p: &Poly) -> Option<PrimePowerSpec> {
    let np = norm(p) as i64;
    if !congruence_check(lambda, p) {
        return None;
    }
    let spec = if lambda >= 0 {
        let digits = binary_digits(lambda / (np - 1), np)?;
        if digits.is_empty() {
            PrimePowerSpec::new(p, 1, &[]).ok()?
        } else {
            let k = digits.len() as u32;
            let mut exps: Vec<u32> =
                digits.iter().enumerate().filter(|(_, &d)| d).map(|(j, _)| k - 1 - j as u32).collect();
            exps.sort_unstable();
            PrimePowerSpec::new(p, k, &exps).ok()?
        }
    } else {
        let digits = binary_digits((-lambda - 1) / (np - 1), np)?;
        let t = digits.len() as u32;
        let mut exps: Vec<u32> = vec![0];
        exps.extend((0..t).filter(|&j| !digits[j as usize]).map(|j| t - j));
        exps.sort_unstable();
        PrimePowerSpec::new(p, t + 1, &exps).ok()?
    };
    debug_assert!((0..=spec.k).any(|t| pp_eigenvalue(&spec, t) == lambda));
    Some(spec)
}

/// Inverts `lambda_max = (|P| - 1) sum |P|^{k - k_i - 1}` to the exponent set.
pub fn recover_from_lambda_max(p: &Poly, k: u32, lambda_max: i64) -> Result<PrimePowerSpec> {
    let np = norm(p) as i64;
    let bad = || Error::NotLargestEigenvalue(format!("{lambda_max} for P = {p}, k = {k}"));
    if lambda_max < 0 || lambda_max % (np - 1) != 0 {
        return Err(bad());
    }
    let digits = binary_digits(lambda_max / (np - 1), np).ok_or_else(bad)?;
    if digits.len() > k as usize {
        return Err(bad());
    }
    let mut exps: Vec<u32> = digits.iter().enumerate().filter(|(_, &d)| d).map(|(j, _)| k - 1 - j as u32).collect();
    exps.sort_unstable();
    PrimePowerSpec::new(p, k, &exps)
}

/// Every spec over F_q with `|P^k| <= max_vertices` and `deg P <= max_prime_degree`.
pub fn sweep_specs(field: &Field, max_vertices: u64, max_prime_degree: usize) -> Vec<PrimePowerSpec> {
    let mut out = Vec::new();
    for d in 1..=max_prime_degree {
        for p in monic_irreducible(field, d) {
            let np = norm(&p);
            let mut k = 1u32;
            while np.checked_pow(k).is_some_and(|n| n <= max_vertices) {
                for mask in 0u32..1 << k {
                    let exps: Vec<u32> = (0..k).filter(|i| mask >> i & 1 == 1).collect();
                    out.push(PrimePowerSpec::new(&p, k, &exps).expect("valid by construction"));
                }
                k += 1;
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PPReportJson {
    #[serde(rename = "P")]
    pub p: PolyJson,
    pub k: u32,
    pub exponents: Vec<u32>,
    pub classes: Vec<PPClass>,
    pub flags: PPFlags,
    pub decomposition: String,
}

pub fn pp_report_json(spec: &PrimePowerSpec) -> PPReportJson {
    let report = pp_report(spec);
    PPReportJson {
        p: spec.p.to_json(),
        k: spec.k,
        exponents: spec.exponents.clone(),
        classes: report.classes,
        flags: report.flags,
        decomposition: pp_structure(spec).decomposition,
    }
}
