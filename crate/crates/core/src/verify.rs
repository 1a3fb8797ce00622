//! Named property suites. Each suite sweeps a fixed parameter range, counts
//! checks, and keeps the first few counterexamples.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::arith::{norm, tau_and_radical};
use crate::census::{
    full_census, iso_sweep, shift, stabilization_probe, unitary_classes, unitary_classes_brute, CensusOptions,
};
use crate::clique::{clique_number, independence_number};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::graph::{build_graph, char_poly_spectral};
use crate::iso::is_isomorphic;
use crate::parse::{parse_poly, parse_poly_list};
use crate::poly::{divisors, monic, residues, Poly};
use crate::prime_power::{
    congruence_check, decomposition_graph, pp_eigenvalue, pp_report, pp_special_eigs, pp_structure, sweep_specs,
    PrimePowerSpec,
};
use crate::ramanujan::{ramanujan_matrix, ramanujan_sum, recover_divisor_set, spectral_vector, CharacterSum};

const KEEP: usize = 5;

#[derive(Debug, Clone, Default)]
pub struct SuiteReport {
    pub name: &'static str,
    pub checked: u64,
    pub violation_count: u64,
    /// First few counterexamples.
    pub violations: Vec<String>,
    pub notes: Vec<String>,
}

impl SuiteReport {
    fn new(name: &'static str) -> SuiteReport {
        SuiteReport { name, ..Default::default() }
    }

    pub fn passed(&self) -> bool {
        self.violation_count == 0
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.violation_count += 1;
            if self.violations.len() < KEEP {
                self.violations.push(what());
            }
        }
    }

    fn merge(&mut self, other: SuiteReport) {
        self.checked += other.checked;
        self.violation_count += other.violation_count;
        for v in other.violations {
            if self.violations.len() < KEEP {
                self.violations.push(v);
            }
        }
        self.notes.extend(other.notes);
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "{}: {} ({} checks, {} violations)\n",
            self.name,
            if self.passed() { "PASS" } else { "FAIL" },
            self.checked,
            self.violation_count
        );
        for v in &self.violations {
            out.push_str(&format!("  counterexample: {v}\n"));
        }
        for n in &self.notes {
            out.push_str(&format!("  note: {n}\n"));
        }
        out
    }
}

pub const SUITES: [&str; 11] = [
    "table1",
    "table2",
    "unitary",
    "determinant",
    "ramanujan",
    "spectral",
    "injectivity",
    "prime-power",
    "iso-constructions",
    "so-scope",
    "affine",
];

pub fn run_suite(name: &str) -> Result<SuiteReport> {
    match name {
        "table1" => table1(),
        "table2" => table2(),
        "unitary" => unitary(),
        "determinant" => determinant(5),
        "ramanujan" => ramanujan(125),
        "spectral" => spectral(27),
        "injectivity" => injectivity(),
        "prime-power" => prime_power(64),
        "iso-constructions" => iso_constructions(256),
        "so-scope" => so_scope(64),
        "affine" => affine(),
        other => Err(Error::invalid(format!("unknown suite {other:?}; expected one of {}", SUITES.join(", ")))),
    }
}

fn field(q: u32) -> Result<Field> {
    Field::from_order(q)
}

/// The first published census, with `*` marking products.
pub const TABLE1: &str = "\
[] | x^9
[1], [x, x + 1] | (x - 4)*(x - 1)^4*(x + 2)^4
[x], [x + 1] | (x - 2)^3*(x + 1)^6
[1, x], [1, x + 1] | (x - 6)*(x + 3)^2*x^6
[1, x, x + 1] | (x - 8)*(x + 1)^8
";

/// The second published census.
pub const TABLE2: &str = "\
[] | x^27
[1], [x, x + 1, x^2] | (x - 12)*(x - 3)^4*(x + 6)^4*x^18
[x], [x^2, x*(x + 1)] | (x - 4)^3*(x - 1)^12*(x + 2)^12
[1, x] | (x - 16)*(x + 8)^2*(x + 2)^8*(x - 1)^16
[x + 1], [x, x^2], [x, x*(x + 1)] | (x - 6)^3*(x + 3)^6*x^18
[1, x + 1], [1, x, x^2] | (x - 18)*(x + 9)^2*x^24
[x, x + 1] | (x - 10)*(x - 4)^2*(x + 5)^4*(x + 2)^6*(x - 1)^14
[1, x, x + 1], [1, x + 1, x^2, x*(x + 1)] | (x - 22)*(x + 5)^2*(x - 1)^12*(x + 2)^12
[x^2], [x*(x + 1)] | (x - 2)^9*(x + 1)^18
[1, x^2] | (x - 14)*(x + 4)^2*(x + 7)^2*(x - 2)^10*(x + 1)^12
[x + 1, x^2] | (x - 8)*(x - 5)^2*(x + 4)^4*(x - 2)^6*(x + 1)^14
[1, x + 1, x^2], [1, x + 1, x*(x + 1)], [1, x, x^2, x*(x + 1)] | (x - 20)*(x + 7)^2*(x - 2)^6*(x + 1)^18
[1, x, x + 1, x^2], [1, x, x + 1, x*(x + 1)] | (x - 24)*(x + 3)^8*x^18
[1, x*(x + 1)], [x, x + 1, x^2, x*(x + 1)] | (x - 14)*(x - 5)^4*(x + 4)^4*(x + 1)^18
[1, x, x*(x + 1)] | (x - 18)*(x + 6)^2*(x - 3)^4*(x + 3)^6*x^14
[x + 1, x*(x + 1)], [x, x^2, x*(x + 1)] | (x - 8)^3*(x + 1)^24
[x, x + 1, x*(x + 1)] | (x - 12)*(x - 6)^2*(x - 3)^2*(x + 3)^10*x^12
[1, x^2, x*(x + 1)] | (x - 16)*(x + 5)^2*(x - 4)^4*(x - 1)^6*(x + 2)^14
[x + 1, x^2, x*(x + 1)] | (x - 10)*(x - 7)^2*(x - 1)^8*(x + 2)^16
[1, x, x + 1, x^2, x*(x + 1)] | (x - 26)*(x + 1)^26
";

/// The published unitary class counts: rows `n = 1..6`, columns `q`.
pub const TABLE3_Q: [u64; 8] = [2, 3, 4, 5, 7, 8, 9, 11];
pub const TABLE3: [[usize; 8]; 6] = [
    [1, 1, 1, 1, 1, 1, 1, 1],
    [3, 3, 3, 3, 3, 3, 3, 3],
    [4, 5, 5, 5, 5, 5, 5, 5],
    [7, 9, 10, 10, 10, 10, 10, 10],
    [9, 12, 13, 14, 14, 14, 14, 14],
    [15, 22, 24, 25, 26, 26, 26, 26],
];

fn census_table(name: &'static str, modulus: &str, expected: &str) -> Result<SuiteReport> {
    let mut r = SuiteReport::new(name);
    let f3 = field(3)?;
    let f = parse_poly(&f3, modulus)?;
    let census = full_census(&f, &CensusOptions::default())?;
    let got = census.to_text();
    let (g, e): (Vec<&str>, Vec<&str>) = (got.lines().collect(), expected.lines().collect());
    r.check(g.len() == e.len(), || format!("{} classes, expected {}", g.len(), e.len()));
    for (i, (a, b)) in g.iter().zip(&e).enumerate() {
        r.check(a == b, || format!("row {}: got {a:?}, expected {b:?}", i + 1));
    }
    for c in &census.classes {
        r.check(c.isomorphism_verified == Some(true), || format!("class {:?} not isomorphism-certified", c.charpoly.to_string()));
    }
    Ok(r)
}

pub fn table1() -> Result<SuiteReport> {
    census_table("table1", "x*(x+1)", TABLE1)
}

pub fn table2() -> Result<SuiteReport> {
    census_table("table2", "x^2*(x+1)", TABLE2)
}

pub fn unitary() -> Result<SuiteReport> {
    let mut r = SuiteReport::new("unitary");
    for (i, row) in TABLE3.iter().enumerate() {
        for (&q, &want) in TABLE3_Q.iter().zip(row) {
            let got = unitary_classes(q, i + 1)?.count;
            r.check(got == want, || format!("n = {}, q = {q}: {got} classes, table says {want}", i + 1));
        }
    }
    for (q, n) in [(2u32, 1usize), (2, 2), (2, 3), (2, 4), (3, 1), (3, 2), (3, 3)] {
        let brute = unitary_classes_brute(&field(q)?, n, 256)?.len();
        let count = unitary_classes(q as u64, n)?.count;
        r.check(brute == count, || format!("q = {q}, n = {n}: isomorphism grouping gives {brute}, types give {count}"));
    }
    for n in 1..=6 {
        let probe = stabilization_probe(n, &TABLE3_Q)?;
        r.notes.push(format!(
            "n = {n}: counts {:?}, constant from q = {}",
            probe.counts.iter().map(|c| c.1).collect::<Vec<_>>(),
            probe.stable_from.unwrap_or(0)
        ));
    }
    Ok(r)
}

fn monic_moduli(field: &Field, max_norm: u64) -> Vec<Poly> {
    let q = field.q() as u64;
    let mut out = Vec::new();
    let mut d = 1;
    while q.pow(d as u32) <= max_norm {
        out.extend(monic(field, d));
        d += 1;
    }
    out
}

/// `det(C_f)^2 = |f|^{tau(f)}` for monic `f` of degree `<= max_degree`, q in {2,3,4,5}.
pub fn determinant(max_degree: usize) -> Result<SuiteReport> {
    let mut r = SuiteReport::new("determinant");
    for q in [2, 3, 4, 5] {
        let fq = field(q)?;
        let moduli: Vec<Poly> = (0..=max_degree).flat_map(|d| monic(&fq, d).collect::<Vec<_>>()).collect();
        let parts: Vec<Result<SuiteReport>> = moduli
            .par_iter()
            .map(|f| {
                let mut part = SuiteReport::new("determinant");
                let det = ramanujan_matrix(f)?.det();
                let (tau, _) = tau_and_radical(f)?;
                let rhs = BigInt::from(norm(f)).pow(tau as u32);
                part.check(&det * &det == rhs, || format!("q = {q}, f = {f}: det = {det}"));
                Ok(part)
            })
            .collect();
        for p in parts {
            r.merge(p?);
        }
    }
    Ok(r)
}

/// Closed form vs character sum for every residue `g` and monic `f` with `|f| <= max_norm`.
pub fn ramanujan(max_norm: u64) -> Result<SuiteReport> {
    let mut r = SuiteReport::new("ramanujan");
    for q in [2, 3, 5] {
        let fq = field(q)?;
        let parts: Vec<Result<SuiteReport>> = monic_moduli(&fq, max_norm)
            .par_iter()
            .map(|f| {
                let mut part = SuiteReport::new("ramanujan");
                let cs = CharacterSum::new(f)?;
                for g in residues(f) {
                    let closed = ramanujan_sum(&g, f)?;
                    let direct = cs.eval(&g)?;
                    part.check(closed == direct, || format!("q = {q}, c({g}, {f}): closed {closed}, direct {direct}"));
                }
                Ok(part)
            })
            .collect();
        for p in parts {
            r.merge(p?);
        }
    }
    Ok(r)
}

fn subsets(items: &[Poly]) -> impl Iterator<Item = Vec<Poly>> + '_ {
    (0u64..1 << items.len())
        .map(move |m| items.iter().enumerate().filter(|(i, _)| m >> i & 1 == 1).map(|(_, p)| p.clone()).collect())
}

/// Spectral charpoly vs the adjacency matrix charpoly for every `f` with `|f| <= max_norm` and every `D`.
pub fn spectral(max_norm: u64) -> Result<SuiteReport> {
    let mut r = SuiteReport::new("spectral");
    let qs: Vec<u32> = (2..=max_norm as u32).filter(|&q| crate::field::prime_power_parts(q as u64).is_some()).collect();
    for q in qs {
        let fq = field(q)?;
        let cases: Vec<(Poly, Vec<Poly>)> = monic_moduli(&fq, max_norm)
            .into_iter()
            .map(|f| Ok(subsets(&divisors(&f, true)?).map(|d| (f.clone(), d)).collect::<Vec<_>>()))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .flatten()
            .collect();
        let parts: Vec<Result<SuiteReport>> = cases
            .par_iter()
            .map(|(f, d)| {
                let mut part = SuiteReport::new("spectral");
                let a = char_poly_spectral(f, d)?;
                let b = build_graph(f, d, max_norm as usize)?.graph().char_poly(max_norm as usize)?;
                part.check(a == b, || format!("q = {q}, f = {f}, D = {d:?}: {a} vs {b}"));
                Ok(part)
            })
            .collect();
        for p in parts {
            r.merge(p?);
        }
    }
    Ok(r)
}

/// Distinct divisor sets give distinct spectral vectors, and recovery inverts.
pub fn injectivity() -> Result<SuiteReport> {
    let mut r = SuiteReport::new("injectivity");
    let f3 = field(3)?;
    for s in ["x^2*(x+1)", "x*(x+1)*(x+2)"] {
        let f = parse_poly(&f3, s)?;
        let mut seen: HashMap<Vec<i64>, Vec<Poly>> = HashMap::new();
        for d in subsets(&divisors(&f, true)?) {
            let sv = spectral_vector(&f, &d)?;
            let v = sv.restricted().to_vec();
            let back = recover_divisor_set(&f, &v)?;
            r.check(back == d, || format!("f = {s}: recovered {back:?} from D = {d:?}"));
            if let Some(prev) = seen.insert(v, d.clone()) {
                r.check(false, || format!("f = {s}: D = {prev:?} and {d:?} share a spectral vector"));
            } else {
                r.check(true, String::new);
            }
        }
    }
    Ok(r)
}

/// Closed-form prime-power theory against brute force for `|P^k| <= max_vertices`, q in {2,3,4}.
pub fn prime_power(max_vertices: u64) -> Result<SuiteReport> {
    let mut r = SuiteReport::new("prime-power");
    for q in [2, 3, 4] {
        let fq = field(q)?;
        let specs = sweep_specs(&fq, max_vertices, 2);
        let parts: Vec<Result<SuiteReport>> = specs.par_iter().map(|s| prime_power_spec(s, max_vertices)).collect();
        for p in parts {
            r.merge(p?);
        }
        // spectrum determines D within each (P, k)
        let mut by_pk: BTreeMap<(u64, u32), HashMap<Vec<(i64, u64)>, Vec<u32>>> = BTreeMap::new();
        for s in &specs {
            let seen = by_pk.entry((s.prime().index(), s.k())).or_default();
            let ms = pp_report(s).multiset();
            let dup = seen.insert(ms, s.exponents().to_vec());
            r.check(dup.is_none(), || format!("q = {q}, {s:?} isospectral with exponents {dup:?}"));
        }
    }
    Ok(r)
}

fn prime_power_spec(s: &PrimePowerSpec, max_vertices: u64) -> Result<SuiteReport> {
    let mut r = SuiteReport::new("prime-power");
    let cap = max_vertices as usize;
    let f = s.modulus();
    let d = s.divisor_set();
    let report = pp_report(s);
    let ms = report.multiset();
    let g = build_graph(&f, &d, cap.max(1))?;
    r.check(g.graph().has_spectrum(&ms)?, || format!("{s:?}: closed-form spectrum {ms:?} is not the adjacency spectrum"));
    for c in &report.classes {
        r.check(congruence_check(c.lambda, s.prime()), || format!("{s:?}: eigenvalue {} fails the congruence", c.lambda));
    }
    let flags = &report.flags;
    r.check(flags.has_zero != flags.has_neg_one, || format!("{s:?}: zero {} / minus one {}", flags.has_zero, flags.has_neg_one));
    let pred = pp_special_eigs(s);
    r.check(pred.has_zero == flags.has_zero && pred.has_neg_one == flags.has_neg_one, || {
        format!("{s:?}: 0/-1 criteria disagree with the spectrum")
    });
    if !s.exponents().is_empty() {
        r.check(pred.exactly_two_distinct == flags.exactly_two_distinct, || {
            format!("{s:?}: two-eigenvalue criterion disagrees with the spectrum")
        });
    }
    if let Some(p) = flags.has_one_predicted {
        r.check(p == flags.has_one, || format!("{s:?}: eigenvalue-1 criterion {p}, spectrum says {}", flags.has_one));
    }
    for u in 0..s.k() {
        for v in u..s.k() {
            let (a, b) = (pp_eigenvalue(s, u), pp_eigenvalue(s, v));
            r.check(a.abs() <= b.abs(), || format!("{s:?}: |lambda_{u}| = {} > |lambda_{v}| = {}", a.abs(), b.abs()));
        }
    }
    let st = pp_structure(s);
    let props = g.graph().props();
    if !s.exponents().is_empty() {
        r.check(props.components as u64 == st.components, || {
            format!("{s:?}: {} components, formula {}", props.components, st.components)
        });
    }
    r.check(props.bipartite == st.bipartite, || format!("{s:?}: bipartite {} vs formula {}", props.bipartite, st.bipartite));
    if g.graph().vertex_count() <= 128 {
        let w = clique_number(g.graph(), 128)? as u64;
        let a = independence_number(g.graph(), 128)? as u64;
        r.check(w == st.clique_number, || format!("{s:?}: clique number {w}, formula {}", st.clique_number));
        r.check(a == st.independence_number, || format!("{s:?}: independence {a}, formula {}", st.independence_number));
    }
    let iso = is_isomorphic(&decomposition_graph(s), g.graph(), cap.max(256))?;
    r.check(iso.is_some(), || format!("{s:?}: {} is not isomorphic to the built graph", st.decomposition));
    Ok(r)
}

/// Every construction claim over q in {2,3,5} up to `max_vertices` has a certificate.
pub fn iso_constructions(max_vertices: u64) -> Result<SuiteReport> {
    let mut r = SuiteReport::new("iso-constructions");
    let fields = [field(2)?, field(3)?, field(5)?];
    let claims = iso_sweep(&fields, max_vertices)?;
    let cap = max_vertices as usize;
    let results: Vec<Result<bool>> = claims.par_iter().map(|c| c.verify(cap)).collect();
    let mut per_kind: BTreeMap<&str, usize> = BTreeMap::new();
    for (c, ok) in claims.iter().zip(results) {
        let ok = ok?;
        *per_kind.entry(c.kind).or_default() += 1;
        r.check(ok, || format!("not isomorphic: {}", c.describe()));
    }
    r.notes.push(format!("claims per kind: {per_kind:?}"));
    for q in [2, 3, 4, 5] {
        let fq = field(q)?;
        let f = parse_poly(&fq, "x^2*(x+1)")?;
        for (a, b) in [("1, x, x^2", "1, x+1"), ("1, x+1, x^2", "1, x+1, x*(x+1)")] {
            let ga = build_graph(&f, &parse_poly_list(&fq, a)?, 125)?;
            let gb = build_graph(&f, &parse_poly_list(&fq, b)?, 125)?;
            let ok = is_isomorphic(ga.graph(), gb.graph(), 256)?.is_some();
            r.check(ok, || format!("q = {q}: G({a}) and G({b}) not isomorphic"));
        }
    }
    Ok(r)
}

/// Searches all censuses with `|f| <= max_vertices` over q in {2,3,4} for
/// isospectral distinct divisor sets whose modulus has no two irreducible
/// factors of equal degree. Findings are reported as notes, not violations.
pub fn so_scope(max_vertices: u64) -> Result<SuiteReport> {
    let mut r = SuiteReport::new("so-scope");
    let opts = CensusOptions { verify_isomorphism: true, max_vertices: max_vertices as usize, ..Default::default() };
    let mut moduli = 0;
    let mut with_pairs = 0;
    let mut outside = Vec::new();
    for q in [2, 3, 4] {
        let fq = field(q)?;
        let fs: Vec<Poly> = monic_moduli(&fq, max_vertices)
            .into_iter()
            .filter(|f| f.factor().map(|fac| fac.factors.len() >= 2).unwrap_or(false))
            .filter(|f| tau_and_radical(f).map(|(t, _)| t as usize <= opts.max_tau).unwrap_or(false))
            .collect();
        let reports: Vec<Result<_>> = fs.par_iter().map(|f| full_census(f, &opts)).collect();
        for rep in reports {
            let rep = rep?;
            moduli += 1;
            r.checked += 1;
            if rep.isospectral_pairs() > 0 {
                with_pairs += 1;
            }
            for c in rep.classes.iter().filter(|c| c.isomorphism_verified == Some(false)) {
                let members: Vec<String> = c.members.iter().map(|d| crate::census::divisor_set_label(d)).collect();
                r.notes.push(format!(
                    "q = {q}, f = {}: isospectral but not isomorphic: {}",
                    rep.modulus.factored_string(),
                    members.join(" ~ ")
                ));
            }
            if !rep.equal_degree_scope_holds() {
                let example = rep.classes.iter().find(|c| c.members.len() > 1).expect("has pairs");
                outside.push(format!(
                    "q = {q}, f = {}: {} classes with several D, e.g. {}",
                    rep.modulus.factored_string(),
                    rep.isospectral_pairs(),
                    example.members.iter().map(|d| crate::census::divisor_set_label(d)).collect::<Vec<_>>().join(" ~ ")
                ));
            }
        }
    }
    r.notes.push(format!("{moduli} moduli with at least two distinct factors, {with_pairs} with isospectral distinct D"));
    r.notes.push(format!("{} moduli with isospectral distinct D and all factor degrees distinct", outside.len()));
    r.notes.extend(outside);
    Ok(r)
}

/// `x -> x + c` preserves every characteristic polynomial, and the graphs are isomorphic.
pub fn affine() -> Result<SuiteReport> {
    let mut r = SuiteReport::new("affine");
    for (q, max_norm) in [(2u32, 32u64), (3, 27), (4, 16), (5, 25)] {
        let fq = field(q)?;
        for f in monic_moduli(&fq, max_norm) {
            for c in fq.elements().skip(1) {
                let g = shift(&f, c);
                for d in subsets(&divisors(&f, true)?) {
                    let d2: Vec<Poly> = d.iter().map(|p| shift(p, c)).collect();
                    let a = char_poly_spectral(&f, &d)?;
                    let b = char_poly_spectral(&g, &d2)?;
                    r.check(a == b, || format!("q = {q}, f = {f}, D = {d:?}, shift {}: {a} vs {b}", fq.format_elem(c)));
                    if norm(&f) <= 16 {
                        let ga = build_graph(&f, &d, 16)?;
                        let gb = build_graph(&g, &d2, 16)?;
                        let ok = is_isomorphic(ga.graph(), gb.graph(), 256)?.is_some();
                        r.check(ok, || format!("q = {q}, f = {f}, D = {d:?}: shifted graph not isomorphic"));
                    }
                }
            }
        }
    }
    Ok(r)
}
