//! Classification: unitary-graph classes by factorization type, full censuses
//! of `G_f(D)` over all divisor sets, and generators of isomorphic pairs.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{factorization_type, factorization_type_of, norm, radical, tau_and_radical};
use crate::charpoly::CharPoly;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::graph::{build_graph, char_poly_spectral};
use crate::iso::is_isomorphic;
use crate::poly::{divisors, gauss_count, monic, monic_irreducible, Poly, PolyJson};

/// Unitary-graph isomorphism classes for monic moduli of degree `n` over F_q.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnitaryClassTable {
    pub q: u64,
    pub n: usize,
    pub count: usize,
    /// Distinct-irreducible-factor counts `(a_1, ..., a_n)` by degree, one per class.
    pub representatives: Vec<Vec<u32>>,
}

/// Enumerates the factorization types of radicals of degree-`n` moduli.
///
/// A type `(a_1, ..., a_n)` occurs iff `a_m <= gauss_count(m, q)`, some
/// `a_m > 0`, and the shortfall `n - sum m a_m` can be made up by raising
/// exponents, i.e. is a nonnegative combination of degrees `m` with `a_m > 0`.
pub fn unitary_classes(q: u64, n: usize) -> Result<UnitaryClassTable> {
    crate::field::prime_power_parts(q).ok_or_else(|| Error::invalid(format!("{q} is not a prime power")))?;
    if n == 0 {
        return Err(Error::invalid("degree must be positive"));
    }
    let bounds: Vec<u32> =
        (1..=n).map(|m| gauss_count(m as u32, q).min((n / m) as u128) as u32).collect();
    let mut reps = Vec::new();
    let mut current = vec![0u32; n];
    enumerate_types(&bounds, 0, n, &mut current, &mut reps);
    reps.sort();
    Ok(UnitaryClassTable { q, n, count: reps.len(), representatives: reps })
}

fn enumerate_types(bounds: &[u32], m: usize, budget: usize, current: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if m == bounds.len() {
        if current.iter().any(|&a| a > 0) && shortfall_fillable(current, budget) {
            out.push(current.clone());
        }
        return;
    }
    let deg = m + 1;
    for a in 0..=bounds[m].min((budget / deg) as u32) {
        current[m] = a;
        enumerate_types(bounds, m + 1, budget - a as usize * deg, current, out);
    }
    current[m] = 0;
}

fn shortfall_fillable(counts: &[u32], shortfall: usize) -> bool {
    let mut reach = vec![false; shortfall + 1];
    reach[0] = true;
    for (i, _) in counts.iter().enumerate().filter(|(_, &a)| a > 0) {
        let deg = i + 1;
        for s in deg..=shortfall {
            reach[s] |= reach[s - deg];
        }
    }
    reach[shortfall]
}

/// Groups all monic degree-`n` moduli by isomorphism of `G_f({1})`; returns the class sizes.
pub fn unitary_classes_brute(field: &Field, n: usize, cap: usize) -> Result<Vec<Vec<Poly>>> {
    let mut classes: Vec<(crate::graph::PlainGraph, Vec<Poly>)> = Vec::new();
    for f in monic(field, n) {
        let g = build_graph(&f, &[Poly::one(field)], cap)?.into_graph();
        let mut placed = false;
        for (rep, members) in classes.iter_mut() {
            if is_isomorphic(rep, &g, cap)?.is_some() {
                members.push(f.clone());
                placed = true;
                break;
            }
        }
        if !placed {
            classes.push((g, vec![f]));
        }
    }
    Ok(classes.into_iter().map(|(_, m)| m).collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilizationProbe {
    pub n: usize,
    pub counts: Vec<(u64, usize)>,
    /// Smallest `q` in the range from which the count no longer changes.
    pub stable_from: Option<u64>,
}

pub fn stabilization_probe(n: usize, qs: &[u64]) -> Result<StabilizationProbe> {
    if n > 8 {
        return Err(Error::CapExceeded { what: "degree for stabilization probe", limit: 8, actual: n });
    }
    let counts: Vec<(u64, usize)> =
        qs.iter().map(|&q| unitary_classes(q, n).map(|t| (q, t.count))).collect::<Result<_>>()?;
    let stable_from = counts.last().map(|&(_, last)| {
        let i = counts.iter().rposition(|&(_, c)| c != last).map_or(0, |i| i + 1);
        counts[i].0
    });
    Ok(StabilizationProbe { n, counts, stable_from })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GroupingMode {
    Isospectral,
    Isomorphism,
}

#[derive(Debug, Clone, Copy)]
pub struct CensusOptions {
    pub mode: GroupingMode,
    pub verify_isomorphism: bool,
    pub max_vertices: usize,
    pub max_tau: usize,
}

impl Default for CensusOptions {
    fn default() -> Self {
        CensusOptions { mode: GroupingMode::Isospectral, verify_isomorphism: true, max_vertices: 64, max_tau: 12 }
    }
}

#[derive(Debug, Clone)]
pub struct CensusClass {
    /// Divisor sets, in subset bitmask order.
    pub members: Vec<Vec<Poly>>,
    pub charpoly: CharPoly,
    /// Whether every member is isomorphic to the first; `None` if not checked.
    pub isomorphism_verified: Option<bool>,
}

impl CensusClass {
    pub fn representative(&self) -> &[Poly] {
        &self.members[0]
    }
}

#[derive(Debug, Clone)]
pub struct CensusReport {
    pub modulus: Poly,
    pub mode: GroupingMode,
    pub classes: Vec<CensusClass>,
    /// Isospectral classes that split into several isomorphism classes.
    pub split_classes: usize,
    /// Whether `f` has two distinct irreducible factors of equal degree.
    pub equal_degree_factors: bool,
}

/// Every `D` of proper divisors, grouped by characteristic polynomial (and, in
/// isomorphism mode, further split by isomorphism). Classes are ordered by
/// their first member's bitmask over the canonical proper-divisor order.
pub fn full_census(f: &Poly, opts: &CensusOptions) -> Result<CensusReport> {
    let n = norm(f) as usize;
    if n > opts.max_vertices {
        return Err(Error::CapExceeded { what: "vertices for census", limit: opts.max_vertices, actual: n });
    }
    let (tau, _) = tau_and_radical(f)?;
    if tau as usize > opts.max_tau {
        return Err(Error::CapExceeded { what: "divisors for census", limit: opts.max_tau, actual: tau as usize });
    }
    let proper = divisors(f, true)?;
    let subsets: Vec<Vec<Poly>> = (0u64..1 << proper.len())
        .map(|mask| proper.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, p)| p.clone()).collect())
        .collect();
    let polys: Vec<CharPoly> = subsets.par_iter().map(|d| char_poly_spectral(f, d)).collect::<Result<_>>()?;

    let mut order: Vec<CharPoly> = Vec::new();
    let mut groups: HashMap<CharPoly, Vec<usize>> = HashMap::new();
    for (i, cp) in polys.iter().enumerate() {
        groups.entry(cp.clone()).or_insert_with(|| {
            order.push(cp.clone());
            Vec::new()
        }).push(i);
    }
    let need_graphs = opts.verify_isomorphism || opts.mode == GroupingMode::Isomorphism;
    let results: Vec<Result<(Vec<Vec<usize>>, Option<bool>)>> = order
        .par_iter()
        .map(|cp| {
            let idx = &groups[cp];
            if !need_graphs || idx.len() == 1 {
                return Ok((vec![idx.clone()], need_graphs.then_some(true)));
            }
            let graphs: Vec<_> = idx
                .iter()
                .map(|&i| build_graph(f, &subsets[i], opts.max_vertices).map(|g| g.into_graph()))
                .collect::<Result<_>>()?;
            // partition by isomorphism against sub-class representatives
            let mut parts: Vec<Vec<usize>> = Vec::new();
            for (j, g) in graphs.iter().enumerate() {
                let mut placed = false;
                for part in parts.iter_mut() {
                    if is_isomorphic(&graphs[part[0]], g, opts.max_vertices.max(256))?.is_some() {
                        part.push(j);
                        placed = true;
                        break;
                    }
                }
                if !placed {
                    parts.push(vec![j]);
                }
            }
            let verified = parts.len() == 1;
            Ok((parts.into_iter().map(|p| p.into_iter().map(|j| idx[j]).collect()).collect(), Some(verified)))
        })
        .collect();

    let mut classes = Vec::new();
    let mut split_classes = 0;
    for (cp, res) in order.iter().zip(results) {
        let (parts, verified) = res?;
        if parts.len() > 1 {
            split_classes += 1;
        }
        let member_sets = |ids: &[usize]| ids.iter().map(|&i| subsets[i].clone()).collect::<Vec<_>>();
        match opts.mode {
            GroupingMode::Isospectral => {
                let all = &groups[cp];
                classes.push(CensusClass { members: member_sets(all), charpoly: cp.clone(), isomorphism_verified: verified });
            }
            GroupingMode::Isomorphism => {
                for part in parts {
                    classes.push(CensusClass { members: member_sets(&part), charpoly: cp.clone(), isomorphism_verified: Some(true) });
                }
            }
        }
    }
    if opts.mode == GroupingMode::Isomorphism {
        let first = |c: &CensusClass| subsets.iter().position(|s| *s == c.members[0]).unwrap_or(usize::MAX);
        classes.sort_by_key(first);
    }
    Ok(CensusReport {
        modulus: f.clone(),
        mode: opts.mode,
        classes,
        split_classes,
        equal_degree_factors: has_equal_degree_factors(f)?,
    })
}

pub fn has_equal_degree_factors(f: &Poly) -> Result<bool> {
    let fac = f.factor()?;
    let mut degs: Vec<usize> = fac.factors.iter().map(|(p, _)| p.deg()).collect();
    let before = degs.len();
    degs.sort_unstable();
    degs.dedup();
    Ok(degs.len() < before)
}

/// Divisor as printed in tables: irreducibles expanded, composites factored.
pub fn divisor_label(d: &Poly) -> String {
    match d.factor() {
        Ok(fac) if fac.factors.len() == 1 && fac.factors[0].1 == 1 => d.to_string(),
        _ => d.factored_string(),
    }
}

pub fn divisor_set_label(d: &[Poly]) -> String {
    format!("[{}]", d.iter().map(divisor_label).collect::<Vec<_>>().join(", "))
}

impl CensusReport {
    /// Rows of the form `[1], [x, x + 1] | (x - 4)*(x - 1)^4*(x + 2)^4`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.classes {
            let members: Vec<String> = c.members.iter().map(|d| divisor_set_label(d)).collect();
            out.push_str(&format!("{} | {}\n", members.join(", "), c.charpoly));
        }
        out
    }

    /// Isospectral classes with several distinct divisor sets.
    pub fn isospectral_pairs(&self) -> usize {
        self.classes.iter().filter(|c| c.members.len() > 1).count()
    }

    /// Holds unless distinct divisor sets share a class although all factor degrees differ.
    pub fn equal_degree_scope_holds(&self) -> bool {
        self.equal_degree_factors || self.isospectral_pairs() == 0
    }

    pub fn to_json(&self) -> CensusJson {
        CensusJson {
            modulus: self.modulus.to_json(),
            modulus_text: self.modulus.factored_string(),
            mode: self.mode,
            classes: self
                .classes
                .iter()
                .map(|c| CensusClassJson {
                    members: c.members.iter().map(|d| d.iter().map(Poly::to_json).collect()).collect(),
                    members_text: c.members.iter().map(|d| divisor_set_label(d)).collect(),
                    charpoly: c.charpoly.to_string(),
                    isomorphism_verified: c.isomorphism_verified,
                })
                .collect(),
            split_classes: self.split_classes,
            equal_degree_factors: self.equal_degree_factors,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusClassJson {
    #[serde(rename = "D")]
    pub members: Vec<Vec<PolyJson>>,
    #[serde(rename = "D_text")]
    pub members_text: Vec<String>,
    pub charpoly: String,
    pub isomorphism_verified: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusJson {
    pub modulus: PolyJson,
    pub modulus_text: String,
    pub mode: GroupingMode,
    pub classes: Vec<CensusClassJson>,
    pub split_classes: usize,
    pub equal_degree_factors: bool,
}

/// `p(x + c)`.
pub fn shift(p: &Poly, c: crate::field::Elem) -> Poly {
    let field = p.field();
    let lin = Poly::new(field, vec![c, field.one()]);
    p.coeffs().iter().rev().fold(Poly::zero(field), |acc, &a| acc.mul(&lin).add(&Poly::constant(field, a)))
}

/// Constructions yielding isomorphic gcd-graphs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IsoConstruction {
    /// `f = f1 f2` coprime with radicals of equal factorization type;
    /// `D_i` = all divisors of `f_i`.
    Coprime { f1: Poly, f2: Poly },
    /// Distinct irreducible factors `f1, f2` of `f` of equal degree;
    /// `D_i` = all divisors of the full power of `f_i` in `f`.
    PrimePower { f: Poly, f1: Poly, f2: Poly },
    /// `f = f1^n f2`, `D_1 = {1, f2, f1^2, ..., f1^n}`, `D_2 = {1, f2, f1 f2}`.
    PowerTail { f1: Poly, f2: Poly, n: u32 },
    /// `G_{f1^m f2}({1, f1, ..., f1^m})` vs `G_{f1^{m+1}}({1})`.
    CrossModulus { f1: Poly, f2: Poly, m: u32 },
}

impl IsoConstruction {
    pub fn kind(&self) -> &'static str {
        match self {
            IsoConstruction::Coprime { .. } => "coprime",
            IsoConstruction::PrimePower { .. } => "prime-power",
            IsoConstruction::PowerTail { .. } => "power-tail",
            IsoConstruction::CrossModulus { .. } => "cross-modulus",
        }
    }
}

pub const CONSTRUCTION_KINDS: [&str; 4] = ["coprime", "prime-power", "power-tail", "cross-modulus"];

/// A claim `G_{f}(D) ≅ G_{f'}(D')`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsoClaim {
    pub kind: &'static str,
    pub left: (Poly, Vec<Poly>),
    pub right: (Poly, Vec<Poly>),
}

impl IsoClaim {
    pub fn describe(&self) -> String {
        format!(
            "{}: G_{{{}}}({}) ~ G_{{{}}}({})",
            self.kind,
            self.left.0.factored_string(),
            divisor_set_label(&self.left.1),
            self.right.0.factored_string(),
            divisor_set_label(&self.right.1)
        )
    }

    pub fn vertex_count(&self) -> u64 {
        norm(&self.left.0)
    }

    /// Builds both graphs and searches for an isomorphism.
    pub fn verify(&self, cap: usize) -> Result<bool> {
        let a = build_graph(&self.left.0, &self.left.1, cap)?;
        let b = build_graph(&self.right.0, &self.right.1, cap)?;
        Ok(is_isomorphic(a.graph(), b.graph(), cap)?.is_some())
    }
}

fn hyp(msg: impl Into<String>) -> Error {
    Error::Hypothesis(msg.into())
}

fn require_irreducible(p: &Poly) -> Result<()> {
    if p.is_monic() && p.is_irreducible()? {
        Ok(())
    } else {
        Err(hyp(format!("{p} is not monic irreducible")))
    }
}

fn sorted(mut v: Vec<Poly>) -> Vec<Poly> {
    v.sort();
    v.dedup();
    v
}

pub fn iso_claim(c: &IsoConstruction) -> Result<IsoClaim> {
    let kind = c.kind();
    match c {
        IsoConstruction::Coprime { f1, f2 } => {
            for p in [f1, f2] {
                if !p.is_monic() || p.is_constant() {
                    return Err(hyp(format!("{p} must be monic of positive degree")));
                }
            }
            if !f1.gcd(f2).is_one() {
                return Err(hyp(format!("gcd({f1}, {f2}) != 1")));
            }
            let t1 = factorization_type(&radical(f1)?)?;
            let t2 = factorization_type(&radical(f2)?)?;
            if t1 != t2 {
                return Err(hyp(format!("radicals of {f1} and {f2} have different factorization types")));
            }
            let f = f1.mul(f2);
            Ok(IsoClaim { kind, left: (f.clone(), divisors(f1, false)?), right: (f, divisors(f2, false)?) })
        }
        IsoConstruction::PrimePower { f, f1, f2 } => {
            require_irreducible(f1)?;
            require_irreducible(f2)?;
            if f1 == f2 || f1.deg() != f2.deg() {
                return Err(hyp("f1, f2 must be distinct of equal degree"));
            }
            let fac = f.factor()?;
            let exp = |p: &Poly| fac.factors.iter().find(|(g, _)| g == p).map(|(_, e)| *e);
            let (Some(a1), Some(a2)) = (exp(f1), exp(f2)) else {
                return Err(hyp(format!("{f1} and {f2} must both divide {f}")));
            };
            Ok(IsoClaim {
                kind,
                left: (f.clone(), divisors(&f1.pow(a1), false)?),
                right: (f.clone(), divisors(&f2.pow(a2), false)?),
            })
        }
        IsoConstruction::PowerTail { f1, f2, n } => {
            require_irreducible(f1)?;
            require_irreducible(f2)?;
            if f1 == f2 || f1.deg() != f2.deg() || *n < 2 {
                return Err(hyp("need distinct f1, f2 of equal degree and n >= 2"));
            }
            let field = f1.field();
            let f = f1.pow(*n).mul(f2);
            let one = Poly::one(field);
            let mut d1 = vec![one.clone(), f2.clone()];
            d1.extend((2..=*n).map(|e| f1.pow(e)));
            let d2 = vec![one, f2.clone(), f1.mul(f2)];
            Ok(IsoClaim { kind, left: (f.clone(), sorted(d1)), right: (f, sorted(d2)) })
        }
        IsoConstruction::CrossModulus { f1, f2, m } => {
            require_irreducible(f1)?;
            require_irreducible(f2)?;
            if f1 == f2 || f1.deg() != f2.deg() || *m < 1 {
                return Err(hyp("need distinct f1, f2 of equal degree and m >= 1"));
            }
            let field = f1.field();
            let f = f1.pow(*m).mul(f2);
            let d: Vec<Poly> = (0..=*m).map(|e| f1.pow(e)).collect();
            Ok(IsoClaim { kind, left: (f, sorted(d)), right: (f1.pow(m + 1), vec![Poly::one(field)]) })
        }
    }
}

fn shape(f: &Poly) -> Result<Vec<(usize, u32)>> {
    let mut s: Vec<(usize, u32)> = f.factor()?.factors.iter().map(|(p, e)| (p.deg(), *e)).collect();
    s.sort_unstable();
    Ok(s)
}

fn max_degree(q: u64, max_vertices: u64) -> usize {
    let mut d = 0;
    while q.pow(d as u32 + 1) <= max_vertices {
        d += 1;
    }
    d
}

/// All claims of one construction kind over `field` with at most `max_vertices`
/// vertices, one per factorization shape.
pub fn iso_pair_generator(kind: &str, field: &Field, max_vertices: u64) -> Result<Vec<IsoClaim>> {
    let q = field.q() as u64;
    let maxd = max_degree(q, max_vertices);
    let mut seen: BTreeMap<Vec<Vec<(usize, u32)>>, ()> = BTreeMap::new();
    let mut out = Vec::new();
    let mut push = |key: Vec<Vec<(usize, u32)>>, c: IsoConstruction| -> Result<()> {
        if seen.insert(key, ()).is_none() {
            out.push(iso_claim(&c)?);
        }
        Ok(())
    };
    match kind {
        "coprime" => {
            for d1 in 1..maxd {
                for d2 in 1..=maxd - d1 {
                    for f1 in monic(field, d1) {
                        let t1 = factorization_type_of(&radical(&f1)?.factor()?, maxd);
                        for f2 in monic(field, d2) {
                            if !f1.gcd(&f2).is_one() {
                                continue;
                            }
                            if factorization_type_of(&radical(&f2)?.factor()?, maxd) != t1 {
                                continue;
                            }
                            push(vec![shape(&f1)?, shape(&f2)?], IsoConstruction::Coprime { f1: f1.clone(), f2 })?;
                        }
                    }
                }
            }
        }
        "prime-power" => {
            for d in 2..=maxd {
                for f in monic(field, d) {
                    let fac = f.factor()?;
                    for (i, (f1, a1)) in fac.factors.iter().enumerate() {
                        for (f2, a2) in &fac.factors[i + 1..] {
                            if f1.deg() == f2.deg() {
                                let key = vec![shape(&f)?, vec![(f1.deg(), *a1), (f2.deg(), *a2)]];
                                push(key, IsoConstruction::PrimePower { f: f.clone(), f1: f1.clone(), f2: f2.clone() })?;
                            }
                        }
                    }
                }
            }
        }
        "power-tail" | "cross-modulus" => {
            for d in 1..=maxd / 2 {
                let irr: Vec<Poly> = monic_irreducible(field, d).collect();
                for f1 in &irr {
                    for f2 in irr.iter().filter(|p| *p != f1) {
                        let mut e = if kind == "power-tail" { 2 } else { 1 };
                        while (e as usize + 1) * d <= maxd {
                            let key = vec![vec![(d, e)]];
                            let c = if kind == "power-tail" {
                                IsoConstruction::PowerTail { f1: f1.clone(), f2: f2.clone(), n: e }
                            } else {
                                IsoConstruction::CrossModulus { f1: f1.clone(), f2: f2.clone(), m: e }
                            };
                            push(key, c)?;
                            e += 1;
                        }
                    }
                }
            }
        }
        other => return Err(Error::invalid(format!("unknown construction kind {other:?}"))),
    }
    Ok(out)
}

/// Claims of every kind over each field, in order.
pub fn iso_sweep(fields: &[Field], max_vertices: u64) -> Result<Vec<IsoClaim>> {
    let mut out = Vec::new();
    for field in fields {
        for kind in CONSTRUCTION_KINDS {
            out.extend(iso_pair_generator(kind, field, max_vertices)?);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_poly, parse_poly_list};

    fn fq(q: u32) -> Field {
        Field::from_order(q).unwrap()
    }

    const TABLE3: [[usize; 8]; 6] = [
        [1, 1, 1, 1, 1, 1, 1, 1],
        [3, 3, 3, 3, 3, 3, 3, 3],
        [4, 5, 5, 5, 5, 5, 5, 5],
        [7, 9, 10, 10, 10, 10, 10, 10],
        [9, 12, 13, 14, 14, 14, 14, 14],
        [15, 22, 24, 25, 26, 26, 26, 26],
    ];

    #[test]
    fn unitary_class_counts() {
        for (i, row) in TABLE3.iter().enumerate() {
            for (j, &q) in [2u64, 3, 4, 5, 7, 8, 9, 11].iter().enumerate() {
                assert_eq!(unitary_classes(q, i + 1).unwrap().count, row[j], "n = {}, q = {q}", i + 1);
            }
        }
        assert!(unitary_classes(6, 2).is_err());
        assert!(unitary_classes(2, 0).is_err());
    }

    #[test]
    fn unitary_types_match_enumeration() {
        // the set of radical types actually occurring among monic degree-n polynomials
        for (q, n) in [(2u32, 5usize), (3, 4), (4, 3), (5, 3)] {
            let field = fq(q);
            let mut seen: Vec<Vec<u32>> =
                monic(&field, n).map(|f| factorization_type(&radical(&f).unwrap()).unwrap().0).collect();
            seen.iter_mut().for_each(|t| t.resize(n, 0));
            seen.sort();
            seen.dedup();
            assert_eq!(unitary_classes(q as u64, n).unwrap().representatives, seen, "q = {q}, n = {n}");
        }
    }

    #[test]
    fn unitary_counts_match_isomorphism_grouping() {
        for (q, n) in [(2u32, 1usize), (2, 2), (2, 3), (2, 4), (3, 1), (3, 2), (3, 3)] {
            let classes = unitary_classes_brute(&fq(q), n, 256).unwrap();
            assert_eq!(classes.len(), unitary_classes(q as u64, n).unwrap().count, "q = {q}, n = {n}");
        }
    }

    #[test]
    fn stabilization_examples() {
        let p = stabilization_probe(4, &[2, 3, 4, 5, 7]).unwrap();
        assert_eq!(p.counts.iter().map(|c| c.1).collect::<Vec<_>>(), vec![7, 9, 10, 10, 10]);
        assert_eq!(p.stable_from, Some(4));
        let p = stabilization_probe(1, &[2, 3, 5]).unwrap();
        assert_eq!(p.stable_from, Some(2));
        let p = stabilization_probe(6, &[5, 7, 8]).unwrap();
        assert_eq!(p.counts.iter().map(|c| c.1).collect::<Vec<_>>(), vec![25, 26, 26]);
        assert!(stabilization_probe(9, &[2]).is_err());
    }

    #[test]
    fn census_table1() {
        let field = fq(3);
        let f = parse_poly(&field, "x*(x+1)").unwrap();
        let r = full_census(&f, &CensusOptions::default()).unwrap();
        assert_eq!(
            r.to_text(),
            "[] | x^9\n\
             [1], [x, x + 1] | (x - 4)*(x - 1)^4*(x + 2)^4\n\
             [x], [x + 1] | (x - 2)^3*(x + 1)^6\n\
             [1, x], [1, x + 1] | (x - 6)*(x + 3)^2*x^6\n\
             [1, x, x + 1] | (x - 8)*(x + 1)^8\n"
        );
        assert!(r.classes.iter().all(|c| c.isomorphism_verified == Some(true)));
        assert!(r.equal_degree_scope_holds());
        let iso = full_census(&f, &CensusOptions { mode: GroupingMode::Isomorphism, ..Default::default() }).unwrap();
        assert_eq!(iso.to_text(), r.to_text());
    }

    #[test]
    fn census_irreducible_modulus() {
        let field = fq(5);
        let f = parse_poly(&field, "x^2+2").unwrap();
        let r = full_census(&f, &CensusOptions::default()).unwrap();
        assert_eq!(r.to_text(), "[] | x^25\n[1] | (x - 24)*(x + 1)^24\n");
    }

    #[test]
    fn census_caps() {
        let field = fq(3);
        let f = parse_poly(&field, "x^4").unwrap();
        assert!(matches!(full_census(&f, &CensusOptions::default()), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn census_without_verification() {
        let field = fq(2);
        let f = parse_poly(&field, "x^2*(x+1)").unwrap();
        let opts = CensusOptions { verify_isomorphism: false, ..Default::default() };
        let r = full_census(&f, &opts).unwrap();
        assert!(r.classes.iter().all(|c| c.isomorphism_verified.is_none()));
        let total: usize = r.classes.iter().map(|c| c.members.len()).sum();
        assert_eq!(total, 32);
    }

    #[test]
    fn distinct_degree_moduli() {
        for (q, f) in [(2, "x*(x^2+x+1)"), (3, "x*(x^2+1)"), (2, "(x+1)*(x^3+x+1)")] {
            let field = fq(q);
            let r = full_census(&parse_poly(&field, f).unwrap(), &CensusOptions::default()).unwrap();
            assert!(!r.equal_degree_factors);
            assert!(r.equal_degree_scope_holds(), "{f}");
        }
        // |x^2| = |x^2 + x + 1| over F_2: isomorphic pairs despite distinct factor degrees
        let field = fq(2);
        let r = full_census(&parse_poly(&field, "x^2*(x^2+x+1)").unwrap(), &CensusOptions::default()).unwrap();
        assert!(!r.equal_degree_scope_holds());
        let pairs: Vec<&CensusClass> = r.classes.iter().filter(|c| c.members.len() > 1).collect();
        assert_eq!(pairs.len(), 2);
        assert!(pairs.iter().all(|c| c.isomorphism_verified == Some(true)));
        assert_eq!(divisor_set_label(&pairs[0].members[0]), "[x^2]");
        assert_eq!(divisor_set_label(&pairs[0].members[1]), "[x^2 + x + 1, x*(x^2 + x + 1)]");
    }

    #[test]
    fn shift_examples() {
        let field = fq(3);
        let p = parse_poly(&field, "x^2*(x+1)").unwrap();
        let one = field.one();
        assert_eq!(shift(&p, one), parse_poly(&field, "(x+1)^2*(x+2)").unwrap());
        assert_eq!(shift(&shift(&p, one), field.neg(one)), p);
    }

    #[test]
    fn shift_gives_isomorphic_graphs() {
        let field = fq(3);
        let f = parse_poly(&field, "x^2*(x+1)").unwrap();
        let proper = divisors(&f, true).unwrap();
        for c in field.elements() {
            let g = shift(&f, c);
            for mask in 0u32..1 << proper.len() {
                let d: Vec<Poly> = proper.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, p)| p.clone()).collect();
                let d2: Vec<Poly> = d.iter().map(|p| shift(p, c)).collect();
                let a = build_graph(&f, &d, 256).unwrap();
                let b = build_graph(&g, &d2, 256).unwrap();
                assert!(is_isomorphic(a.graph(), b.graph(), 256).unwrap().is_some());
            }
        }
    }

    #[test]
    fn construction_examples() {
        let f3 = fq(3);
        let x = parse_poly(&f3, "x").unwrap();
        let x1 = parse_poly(&f3, "x+1").unwrap();
        let claim = iso_claim(&IsoConstruction::PowerTail { f1: x.clone(), f2: x1.clone(), n: 2 }).unwrap();
        assert_eq!(claim.left.0, parse_poly(&f3, "x^2*(x+1)").unwrap());
        assert_eq!(claim.left.1, parse_poly_list(&f3, "1, x+1, x^2").unwrap());
        assert_eq!(claim.right.1, parse_poly_list(&f3, "1, x+1, x*(x+1)").unwrap());
        assert!(claim.verify(256).unwrap());

        let f2 = fq(2);
        let claim = iso_claim(&IsoConstruction::CrossModulus {
            f1: parse_poly(&f2, "x").unwrap(),
            f2: parse_poly(&f2, "x+1").unwrap(),
            m: 1,
        })
        .unwrap();
        assert_eq!(claim.right.0, parse_poly(&f2, "x^2").unwrap());
        assert!(claim.verify(256).unwrap());

        let claim = iso_claim(&IsoConstruction::Coprime { f1: x.pow(2), f2: x1.pow(2) }).unwrap();
        assert_eq!(claim.left.1, parse_poly_list(&f3, "1, x, x^2").unwrap());
        assert_eq!(claim.right.1, parse_poly_list(&f3, "1, x+1, (x+1)^2").unwrap());
        assert_eq!(claim.vertex_count(), 81);
        assert!(claim.verify(256).unwrap());
    }

    #[test]
    fn construction_hypotheses() {
        let f3 = fq(3);
        let p = |s: &str| parse_poly(&f3, s).unwrap();
        let bad = [
            IsoConstruction::Coprime { f1: p("x"), f2: p("x^2") },
            IsoConstruction::Coprime { f1: p("x"), f2: p("x^2+1") },
            IsoConstruction::Coprime { f1: p("1"), f2: p("x") },
            IsoConstruction::PrimePower { f: p("x*(x^2+1)"), f1: p("x"), f2: p("x^2+1") },
            IsoConstruction::PrimePower { f: p("x*(x+1)"), f1: p("x"), f2: p("x+2") },
            IsoConstruction::PowerTail { f1: p("x"), f2: p("x+1"), n: 1 },
            IsoConstruction::PowerTail { f1: p("x"), f2: p("x"), n: 2 },
            IsoConstruction::CrossModulus { f1: p("x^2"), f2: p("x+1"), m: 1 },
        ];
        for c in &bad {
            assert!(matches!(iso_claim(c), Err(Error::Hypothesis(_))), "{c:?}");
        }
        assert!(iso_pair_generator("nope", &f3, 64).is_err());
    }

    #[test]
    fn small_sweep_verifies() {
        for q in [2, 3] {
            let claims = iso_sweep(&[fq(q)], 64).unwrap();
            for kind in CONSTRUCTION_KINDS {
                assert!(claims.iter().any(|c| c.kind == kind), "q = {q}: no {kind} claims");
            }
            for c in &claims {
                assert!(c.verify(256).unwrap(), "{}", c.describe());
            }
        }
    }
}
