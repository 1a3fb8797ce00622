//! Multiplicative arithmetic functions on F_q[x].
//!
//! Every function has a `*_of` form taking a precomputed [`Factorization`] so
//! that sweeps can factor each modulus once.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{Factorization, Poly};

fn monic_nonzero(f: &Poly) -> Result<Factorization> {
    if f.is_zero() || !f.is_monic() {
        return Err(Error::invalid(format!("expected a monic nonzero polynomial, got {f}")));
    }
    f.factor()
}

fn q_pow(q: u64, e: usize) -> u64 {
    q.checked_pow(e as u32).expect("norm overflows u64")
}

/// `|f| = q^{deg f}`.
pub fn norm(f: &Poly) -> u64 {
    q_pow(f.field().q() as u64, f.deg())
}

pub fn euler_phi_of(fac: &Factorization, q: u64) -> u64 {
    fac.factors
        .iter()
        .map(|(p, e)| {
            let np = q_pow(q, p.deg());
            np.pow(*e - 1) * (np - 1)
        })
        .product()
}

/// Order of the unit group of F_q[x]/f.
pub fn euler_phi(f: &Poly) -> Result<u64> {
    Ok(euler_phi_of(&monic_nonzero(f)?, f.field().q() as u64))
}

pub fn mobius_of(fac: &Factorization) -> i64 {
    if fac.is_squarefree() {
        if fac.distinct().is_multiple_of(2) {
            1
        } else {
            -1
        }
    } else {
        0
    }
}

pub fn mobius(f: &Poly) -> Result<i64> {
    Ok(mobius_of(&monic_nonzero(f)?))
}

pub fn tau_of(fac: &Factorization) -> u64 {
    fac.factors.iter().map(|(_, e)| *e as u64 + 1).product()
}

/// Number of monic divisors and the radical (product of distinct prime factors).
pub fn tau_and_radical(f: &Poly) -> Result<(u64, Poly)> {
    let fac = monic_nonzero(f)?;
    Ok((tau_of(&fac), radical_of(&fac, f)))
}

fn radical_of(fac: &Factorization, f: &Poly) -> Poly {
    fac.factors.iter().fold(Poly::one(f.field()), |acc, (p, _)| acc.mul(p))
}

pub fn radical(f: &Poly) -> Result<Poly> {
    Ok(radical_of(&monic_nonzero(f)?, f))
}

/// Counts `(a_1, ..., a_n)` of distinct irreducible factors by degree, padded to the degree `n`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FactorizationType(pub Vec<u32>);

impl FactorizationType {
    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn counts(&self) -> &[u32] {
        &self.0
    }

    /// `sum m * a_m`, the degree of the radical.
    pub fn radical_degree(&self) -> usize {
        self.0.iter().enumerate().map(|(i, &a)| (i + 1) * a as usize).sum()
    }
}

pub fn factorization_type_of(fac: &Factorization, n: usize) -> FactorizationType {
    let mut counts = vec![0u32; n];
    for (p, _) in &fac.factors {
        counts[p.deg() - 1] += 1;
    }
    FactorizationType(counts)
}

pub fn factorization_type(f: &Poly) -> Result<FactorizationType> {
    let fac = monic_nonzero(f)?;
    Ok(factorization_type_of(&fac, f.deg()))
}

/// `|{a in A/n : gcd(a, m) = 1}| = |n| * prod_{P | m} (1 - 1/|P|)` for `m | n`.
pub fn generalized_euler(m: &Poly, n: &Poly) -> Result<u64> {
    let fac_m = monic_nonzero(m)?;
    monic_nonzero(n)?;
    if !m.divides(n) {
        return Err(Error::invalid(format!("{m} does not divide {n}")));
    }
    let q = n.field().q() as u64;
    let mut count = norm(n);
    for (p, _) in &fac_m.factors {
        let np = q_pow(q, p.deg());
        count = count / np * (np - 1);
    }
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::parse::parse_poly;
    use crate::poly::{divisors, monic, residues};

    fn p(q: u32, s: &str) -> Poly {
        parse_poly(&Field::from_order(q).unwrap(), s).unwrap()
    }

    fn brute_units(f: &Poly) -> u64 {
        residues(f).filter(|a| a.gcd(f).is_one()).count() as u64
    }

    #[test]
    fn norm_examples() {
        assert_eq!(norm(&p(3, "x^2*(x+1)")), 27);
        assert_eq!(norm(&p(3, "1")), 1);
        assert_eq!(norm(&p(2, "x^2+x+1")), 4);
    }

    #[test]
    fn phi_examples() {
        assert_eq!(euler_phi(&p(3, "x*(x+1)")).unwrap(), 4);
        assert_eq!(euler_phi(&p(3, "1")).unwrap(), 1);
        assert_eq!(euler_phi(&p(3, "x^2")).unwrap(), 6);
        assert_eq!(brute_units(&p(3, "x^2")), 6);
        assert!(euler_phi(&p(3, "2*x")).is_err());
    }

    #[test]
    fn mobius_examples() {
        assert_eq!(mobius(&p(3, "x")).unwrap(), -1);
        assert_eq!(mobius(&p(3, "x^2")).unwrap(), 0);
        assert_eq!(mobius(&p(3, "x*(x+1)")).unwrap(), 1);
    }

    #[test]
    fn tau_radical_examples() {
        let f = p(3, "x^2*(x+1)");
        assert_eq!(tau_and_radical(&f).unwrap(), (6, p(3, "x*(x+1)")));
        assert_eq!(divisors(&f, false).unwrap().len(), 6);
        assert_eq!(tau_and_radical(&p(3, "x^2+1")).unwrap(), (2, p(3, "x^2+1")));
        assert_eq!(tau_and_radical(&p(5, "x^2")).unwrap(), (3, p(5, "x")));
    }

    #[test]
    fn factorization_type_examples() {
        assert_eq!(factorization_type(&p(3, "x^2*(x+1)*(x^2+1)")).unwrap(), FactorizationType(vec![2, 1, 0, 0, 0]));
        assert_eq!(factorization_type(&p(7, "x")).unwrap(), FactorizationType(vec![1]));
        assert_eq!(factorization_type(&p(2, "x*(x+1)")).unwrap(), FactorizationType(vec![2, 0]));
        assert_eq!(serde_json::to_string(&FactorizationType(vec![2, 1, 0])).unwrap(), "[2,1,0]");
    }

    #[test]
    fn generalized_euler_examples() {
        let n = p(3, "x*(x+1)");
        assert_eq!(generalized_euler(&n, &n).unwrap(), euler_phi(&n).unwrap());
        assert_eq!(generalized_euler(&p(3, "1"), &n).unwrap(), 9);
        assert_eq!(generalized_euler(&p(3, "x"), &n).unwrap(), 6);
        assert!(generalized_euler(&p(3, "x+2"), &n).is_err());
    }

    #[test]
    fn generalized_euler_matches_brute_force() {
        for q in [2u32, 3, 4, 5] {
            let field = Field::from_order(q).unwrap();
            for d in 0..=4usize {
                if (q as u64).pow(d as u32) > 625 {
                    continue;
                }
                for n in monic(&field, d) {
                    for m in divisors(&n, false).unwrap() {
                        let brute = residues(&n).filter(|a| a.gcd(&m).is_one()).count() as u64;
                        assert_eq!(generalized_euler(&m, &n).unwrap(), brute, "{m} | {n}");
                    }
                }
            }
        }
    }

    #[test]
    fn phi_matches_unit_count_and_divisor_sums() {
        for q in [2u32, 3, 4, 5] {
            let field = Field::from_order(q).unwrap();
            for d in 1..=5usize {
                if (q as u64).pow(d as u32) > 3125 {
                    continue;
                }
                for f in monic(&field, d) {
                    let divs = divisors(&f, false).unwrap();
                    let mu_sum: i64 = divs.iter().map(|g| mobius(g).unwrap()).sum();
                    assert_eq!(mu_sum, 0, "{f}");
                    let phi_sum: u64 = divs.iter().map(|g| euler_phi(g).unwrap()).sum();
                    assert_eq!(phi_sum, norm(&f), "{f}");
                    if d <= 3 {
                        assert_eq!(euler_phi(&f).unwrap(), brute_units(&f), "{f}");
                    }
                }
            }
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn monic_poly(field: &Field, lower: &[u32]) -> Poly {
            let mut c: Vec<i64> = lower.iter().map(|&v| v as i64).collect();
            c.push(1);
            Poly::from_ints(field, &c)
        }

        proptest! {
            #[test]
            fn multiplicative_on_coprime_pairs(a in proptest::collection::vec(0u32..5, 0..4),
                                               b in proptest::collection::vec(0u32..5, 0..4)) {
                let field = Field::new(5, 1).unwrap();
                let f = monic_poly(&field, &a);
                let g = monic_poly(&field, &b);
                prop_assume!(f.gcd(&g).is_one());
                let fg = f.mul(&g);
                prop_assert_eq!(euler_phi(&fg).unwrap(), euler_phi(&f).unwrap() * euler_phi(&g).unwrap());
                prop_assert_eq!(mobius(&fg).unwrap(), mobius(&f).unwrap() * mobius(&g).unwrap());
                prop_assert_eq!(tau_and_radical(&fg).unwrap().0,
                                tau_and_radical(&f).unwrap().0 * tau_and_radical(&g).unwrap().0);
            }
        }
    }
}
