//! Ramanujan sums over F_q[x], spectral vectors of gcd-graphs, the divisor
//! matrix `C_f` and recovery of the divisor set from a spectral vector.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{euler_phi, mobius};
use crate::error::{Error, Result};
use crate::field::Elem;
use crate::linalg::{det_exact, solve_rational};
use crate::poly::{divisors, residues, Poly, PolyJson};

fn require_monic(f: &Poly) -> Result<()> {
    if f.is_zero() || !f.is_monic() {
        return Err(Error::invalid(format!("modulus must be monic and nonzero, got {f}")));
    }
    Ok(())
}

/// `c(g, f) = mu(t) phi(f) / phi(t)` with `t = f / gcd(f, g)`.
pub fn ramanujan_sum(g: &Poly, f: &Poly) -> Result<i64> {
    require_monic(f)?;
    let t = f.exact_div(&f.gcd(&g.rem(f)?))?;
    let mu = mobius(&t)?;
    if mu == 0 {
        return Ok(0);
    }
    Ok(mu * (euler_phi(f)? / euler_phi(&t)?) as i64)
}

/// Character-sum evaluation of `c(g, f)` for a fixed modulus.
///
/// Uses `psi(a)` = coefficient of `x^{deg f - 1}` of the reduced representative.
/// The sum `sum_a zeta_p^{Tr(psi(g a))}` over units `a` is a rational integer,
/// so the fibre counts over nonzero traces must coincide and the sum equals
/// `n_0 - n_1`.
pub struct CharacterSum {
    modulus: Poly,
    units: Vec<Vec<Elem>>,
}

impl CharacterSum {
    pub fn new(f: &Poly) -> Result<CharacterSum> {
        require_monic(f)?;
        if f.is_constant() {
            return Err(Error::invalid("character sums need a nonconstant modulus"));
        }
        let n = f.deg();
        let units = residues(f)
            .filter(|a| a.gcd(f).is_one())
            .map(|a| (0..n).map(|i| a.coeff(i)).collect())
            .collect();
        Ok(CharacterSum { modulus: f.clone(), units })
    }

    pub fn modulus(&self) -> &Poly {
        &self.modulus
    }

    pub fn unit_count(&self) -> usize {
        self.units.len()
    }

    /// Fibre counts `n_j = #{a unit : Tr(psi(g a)) = j}`.
    pub fn fibres(&self, g: &Poly) -> Result<Vec<u64>> {
        let f = &self.modulus;
        let field = f.field();
        let n = f.deg();
        // psi(g * x^i) for each basis monomial; psi(g a) is linear in a
        let mut functional = Vec::with_capacity(n);
        let mut gx = g.rem(f)?;
        let x = Poly::x(field);
        for _ in 0..n {
            functional.push(gx.coeff(n - 1));
            gx = gx.mul(&x).rem(f)?;
        }
        let mut counts = vec![0u64; field.p() as usize];
        for a in &self.units {
            let psi = a
                .iter()
                .zip(&functional)
                .fold(Elem::ZERO, |acc, (&ai, &li)| field.add(acc, field.mul(ai, li)));
            counts[field.trace(psi) as usize] += 1;
        }
        Ok(counts)
    }

    pub fn eval(&self, g: &Poly) -> Result<i64> {
        let counts = self.fibres(g)?;
        if counts.len() > 2 && counts[2..].iter().any(|&c| c != counts[1]) {
            return Err(Error::Inconsistency(format!(
                "unequal nonzero-trace fibres {counts:?} for g = {g}, f = {}",
                self.modulus
            )));
        }
        Ok(counts[0] as i64 - counts[1] as i64)
    }
}

/// Direct character-sum value of `c(g, f)`; see [`CharacterSum`].
pub fn ramanujan_sum_direct(g: &Poly, f: &Poly) -> Result<i64> {
    CharacterSum::new(f)?.eval(g)
}

/// Returns true when `psi` (top coefficient) vanishes on no nonzero ideal of F_q[x]/f.
pub fn psi_is_nondegenerate(f: &Poly) -> Result<bool> {
    let n = f.deg();
    for h in divisors(f, true)? {
        let ideal_killed = residues(f).all(|a| a.mul(&h).rem(f).map(|r| r.coeff(n - 1).is_zero()).unwrap_or(false));
        if ideal_killed {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Checks `D` against the proper monic divisors of `f`, returning it sorted.
pub fn validate_divisor_set(f: &Poly, d_set: &[Poly]) -> Result<Vec<Poly>> {
    require_monic(f)?;
    let mut sorted = d_set.to_vec();
    sorted.sort();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::invalid("duplicate entries in the divisor set"));
    }
    for d in &sorted {
        if !d.is_monic() || d == f || !d.divides(f) {
            return Err(Error::InvalidDivisor(d.to_string()));
        }
    }
    Ok(sorted)
}

/// For each residue index, the position of `gcd(g, f)` in `divisors`.
pub(crate) fn gcd_classes(f: &Poly, divisors: &[Poly]) -> Vec<u32> {
    residues(f)
        .map(|g| {
            let t = g.gcd(f);
            let t = if t.is_zero() { f.clone() } else { t };
            divisors.binary_search(&t).expect("gcd divides the modulus") as u32
        })
        .collect()
}

/// Eigenvalue data of `G_f(D)`: one value per gcd class `t = gcd(g, f)`.
#[derive(Debug, Clone)]
pub struct SpectralVector {
    modulus: Poly,
    d_set: Vec<Poly>,
    divisors: Vec<Poly>,
    class_values: Vec<i64>,
}

/// `lambda_g(f, D) = sum_{d in D} c(g, f/d)`, computed per gcd class.
pub fn spectral_vector(f: &Poly, d_set: &[Poly]) -> Result<SpectralVector> {
    let d_set = validate_divisor_set(f, d_set)?;
    let divs = divisors(f, false)?;
    let cofactors: Vec<Poly> = d_set.iter().map(|d| f.exact_div(d)).collect::<Result<_>>()?;
    let class_values = divs
        .iter()
        .map(|t| cofactors.iter().map(|h| ramanujan_sum(t, h)).sum::<Result<i64>>())
        .collect::<Result<Vec<_>>>()?;
    Ok(SpectralVector { modulus: f.clone(), d_set, divisors: divs, class_values })
}

impl SpectralVector {
    pub fn modulus(&self) -> &Poly {
        &self.modulus
    }

    pub fn divisor_set(&self) -> &[Poly] {
        &self.d_set
    }

    /// All monic divisors of the modulus, canonical order.
    pub fn divisors(&self) -> &[Poly] {
        &self.divisors
    }

    /// `(lambda_g)_{g | f}` in canonical divisor order.
    pub fn restricted(&self) -> &[i64] {
        &self.class_values
    }

    /// Value at an arbitrary residue `g`.
    pub fn value_at(&self, g: &Poly) -> Result<i64> {
        let t = g.rem(&self.modulus)?.gcd(&self.modulus);
        let t = if t.is_zero() { self.modulus.clone() } else { t };
        let idx = self.divisors.binary_search(&t).expect("gcd divides the modulus");
        Ok(self.class_values[idx])
    }

    /// One entry per residue, in residue index order.
    pub fn entries(&self) -> Vec<i64> {
        gcd_classes(&self.modulus, &self.divisors).into_iter().map(|c| self.class_values[c as usize]).collect()
    }

    /// Size of each gcd class: `phi(f / t)` residues have `gcd = t`.
    pub fn class_sizes(&self) -> Vec<u64> {
        self.divisors
            .iter()
            .map(|t| euler_phi(&self.modulus.exact_div(t).expect("divisor")).expect("monic"))
            .collect()
    }

    /// Eigenvalue multiset as `(value, multiplicity)`, value descending.
    pub fn multiset(&self) -> Vec<(i64, u64)> {
        let mut acc: BTreeMap<i64, u64> = BTreeMap::new();
        for (v, m) in self.class_values.iter().zip(self.class_sizes()) {
            *acc.entry(*v).or_default() += m;
        }
        acc.into_iter().rev().collect()
    }

    pub fn to_json(&self) -> SpectrumJson {
        SpectrumJson {
            modulus: self.modulus.to_json(),
            d: self.d_set.iter().map(Poly::to_json).collect(),
            eigenvalues: self
                .multiset()
                .into_iter()
                .map(|(value, multiplicity)| EigenvalueJson { value, multiplicity })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EigenvalueJson {
    pub value: i64,
    pub multiplicity: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumJson {
    pub modulus: PolyJson,
    #[serde(rename = "D")]
    pub d: Vec<PolyJson>,
    pub eigenvalues: Vec<EigenvalueJson>,
}

/// The matrix `C_f = (c(g, h))` over all monic divisors `g, h` of `f`.
#[derive(Debug, Clone)]
pub struct RamanujanMatrix {
    pub modulus: Poly,
    pub divisors: Vec<Poly>,
    pub entries: Vec<Vec<i64>>,
}

pub fn ramanujan_matrix(f: &Poly) -> Result<RamanujanMatrix> {
    require_monic(f)?;
    let divs = divisors(f, false)?;
    let entries = divs
        .iter()
        .map(|g| divs.iter().map(|h| ramanujan_sum(g, h)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Ok(RamanujanMatrix { modulus: f.clone(), divisors: divs, entries })
}

impl RamanujanMatrix {
    pub fn det(&self) -> BigInt {
        det_exact(&self.entries)
    }
}

/// Inverts `restricted = C_f v` for a 0/1 indicator `v` (`v_h = 1` iff `f/h in D`).
pub fn recover_divisor_set(f: &Poly, restricted: &[i64]) -> Result<Vec<Poly>> {
    let mat = ramanujan_matrix(f)?;
    if restricted.len() != mat.divisors.len() {
        return Err(Error::invalid(format!(
            "expected {} entries (one per monic divisor), got {}",
            mat.divisors.len(),
            restricted.len()
        )));
    }
    let v = solve_rational(&mat.entries, restricted)
        .ok_or_else(|| Error::Inconsistency("C_f is singular".into()))?;
    let mut d_set = Vec::new();
    for (h, vh) in mat.divisors.iter().zip(&v) {
        if vh.is_zero() {
            continue;
        }
        if !(vh.is_integer() && vh.to_integer().is_one()) {
            return Err(Error::NotSpectralVector(format!("indicator entry {vh} at h = {h}")));
        }
        if h.is_one() {
            return Err(Error::NotSpectralVector("solution puts the modulus itself in D".into()));
        }
        d_set.push(f.exact_div(h)?);
    }
    d_set.sort();
    Ok(d_set)
}
