//! Univariate polynomials over a [`Field`], factorization and enumeration.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Elem, Field};

/// A polynomial with coefficients in ascending degree, trailing zeros stripped.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    field: Field,
    coeffs: Vec<Elem>,
}

impl Poly {
    pub fn new(field: &Field, mut coeffs: Vec<Elem>) -> Poly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { field: field.clone(), coeffs }
    }

    /// Builds a polynomial from integer coefficients (ascending), reduced into the prime subfield.
    pub fn from_ints(field: &Field, coeffs: &[i64]) -> Poly {
        Poly::new(field, coeffs.iter().map(|&c| field.from_int(c)).collect())
    }

    pub fn zero(field: &Field) -> Poly {
        Poly { field: field.clone(), coeffs: Vec::new() }
    }

    pub fn one(field: &Field) -> Poly {
        Poly::constant(field, Elem::ONE)
    }

    pub fn constant(field: &Field, c: Elem) -> Poly {
        Poly::new(field, vec![c])
    }

    /// The indeterminate `x`.
    pub fn x(field: &Field) -> Poly {
        Poly::new(field, vec![Elem::ZERO, Elem::ONE])
    }

    /// `x + c` for a prime-subfield constant `c`.
    pub fn linear(field: &Field, c: i64) -> Poly {
        Poly::new(field, vec![field.from_int(c), Elem::ONE])
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Elem {
        self.coeffs.get(i).copied().unwrap_or(Elem::ZERO)
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0; for moduli and norms.
    pub(crate) fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == Elem::ONE
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> Elem {
        self.coeffs.last().copied().unwrap_or(Elem::ZERO)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == Elem::ONE
    }

    /// Scales by the inverse leading coefficient; zero stays zero.
    pub fn monic(&self) -> Poly {
        if self.is_zero() || self.is_monic() {
            return self.clone();
        }
        let inv = self.field.inv(self.leading()).expect("nonzero leading coefficient");
        self.scale(inv)
    }

    pub fn scale(&self, c: Elem) -> Poly {
        let f = &self.field;
        Poly::new(f, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    pub fn neg(&self) -> Poly {
        let f = &self.field;
        Poly::new(f, self.coeffs.iter().map(|&a| f.neg(a)).collect())
    }

    pub fn add(&self, other: &Poly) -> Poly {
        debug_assert!(self.field == other.field);
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new(f, (0..n).map(|i| f.add(self.coeff(i), other.coeff(i))).collect())
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        debug_assert!(self.field == other.field);
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new(f, (0..n).map(|i| f.sub(self.coeff(i), other.coeff(i))).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        debug_assert!(self.field == other.field);
        if self.is_zero() || other.is_zero() {
            return Poly::zero(&self.field);
        }
        let f = &self.field;
        let mut out = vec![Elem::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Poly::new(f, out)
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(&self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Quotient and remainder with `deg r < deg divisor`.
    pub fn divmod(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        if divisor.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let f = &self.field;
        let dd = divisor.coeffs.len() - 1;
        let lead_inv = f.inv(divisor.leading())?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Poly::zero(f), self.clone()));
        }
        let mut quot = vec![Elem::ZERO; rem.len() - dd];
        for top in (dd..rem.len()).rev() {
            let c = f.mul(rem[top], lead_inv);
            if c.is_zero() {
                continue;
            }
            let shift = top - dd;
            quot[shift] = c;
            for (i, &d) in divisor.coeffs.iter().enumerate() {
                rem[shift + i] = f.sub(rem[shift + i], f.mul(c, d));
            }
        }
        rem.truncate(dd);
        Ok((Poly::new(f, quot), Poly::new(f, rem)))
    }

    pub fn rem(&self, divisor: &Poly) -> Result<Poly> {
        Ok(self.divmod(divisor)?.1)
    }

    /// Exact quotient; errors when `divisor` does not divide `self`.
    pub fn exact_div(&self, divisor: &Poly) -> Result<Poly> {
        let (q, r) = self.divmod(divisor)?;
        if !r.is_zero() {
            return Err(Error::invalid(format!("{divisor} does not divide {self}")));
        }
        Ok(q)
    }

    pub fn divides(&self, other: &Poly) -> bool {
        !self.is_zero() && other.rem(self).map(|r| r.is_zero()).unwrap_or(false)
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn eval(&self, point: Elem) -> Elem {
        let f = &self.field;
        self.coeffs.iter().rev().fold(Elem::ZERO, |acc, &c| f.add(f.mul(acc, point), c))
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, mut e: u64, m: &Poly) -> Result<Poly> {
        let mut base = self.rem(m)?;
        let mut acc = Poly::one(&self.field).rem(m)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m)?;
            }
            base = base.mul(&base).rem(m)?;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Base-q index of the coefficient vector: `sum c_i q^i`.
    pub fn index(&self) -> u64 {
        let q = self.field.q() as u64;
        self.coeffs.iter().rev().fold(0u64, |acc, c| acc * q + c.index() as u64)
    }

    /// Inverse of [`Poly::index`].
    pub fn from_index(field: &Field, mut index: u64) -> Poly {
        let q = field.q() as u64;
        let mut coeffs = Vec::new();
        while index > 0 {
            coeffs.push(field.elem((index % q) as usize));
            index /= q;
        }
        Poly::new(field, coeffs)
    }

    /// Monic polynomial of degree `deg` whose lower coefficients have base-q index `lower`.
    pub fn monic_from_index(field: &Field, deg: usize, lower: u64) -> Poly {
        let q = field.q() as u64;
        let mut coeffs = Vec::with_capacity(deg + 1);
        let mut rest = lower;
        for _ in 0..deg {
            coeffs.push(field.elem((rest % q) as usize));
            rest /= q;
        }
        coeffs.push(Elem::ONE);
        Poly::new(field, coeffs)
    }

    pub fn to_json(&self) -> PolyJson {
        PolyJson { coeffs: self.coeffs.iter().map(|&c| self.field.coords(c)).collect() }
    }

    pub fn from_json(field: &Field, json: &PolyJson) -> Result<Poly> {
        let coeffs = json.coeffs.iter().map(|t| field.from_coords(t)).collect::<Result<Vec<_>>>()?;
        Ok(Poly::new(field, coeffs))
    }

    /// Rabin's test: `x^{q^n} = x mod f` and `gcd(x^{q^{n/r}} - x, f) = 1` for each prime `r | n`.
    pub fn is_irreducible(&self) -> Result<bool> {
        let n = match self.degree() {
            None | Some(0) => return Err(Error::invalid("irreducibility of a constant")),
            Some(n) => n,
        };
        if n == 1 {
            return Ok(true);
        }
        let f = self.monic();
        let q = self.field.q() as u64;
        let x = Poly::x(&self.field);
        // frob[j] = x^{q^j} mod f
        let mut frob = vec![x.rem(&f)?];
        for j in 1..=n {
            let next = frob[j - 1].pow_mod(q, &f)?;
            frob.push(next);
        }
        if frob[n] != x.rem(&f)? {
            return Ok(false);
        }
        for r in prime_factors(n as u64) {
            let j = n / r as usize;
            if !frob[j].sub(&x).gcd(&f).is_one() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Irreducibility by trial division against all monic polynomials of degree `<= n/2`.
    pub fn is_irreducible_trial(&self) -> Result<bool> {
        let n = match self.degree() {
            None | Some(0) => return Err(Error::invalid("irreducibility of a constant")),
            Some(n) => n,
        };
        for d in 1..=n / 2 {
            for cand in monic(&self.field, d) {
                if cand.divides(self) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Canonical factorization by trial division.
    pub fn factor(&self) -> Result<Factorization> {
        if self.is_zero() {
            return Err(Error::invalid("factorization of the zero polynomial"));
        }
        let unit = self.leading();
        let mut rest = self.monic();
        let mut factors = Vec::new();
        let mut d = 1;
        // candidates come in (degree, lex) order; anything dividing the
        // remaining cofactor is irreducible because smaller factors are gone
        'outer: while 2 * d <= rest.deg() {
            for cand in monic(&self.field, d) {
                if 2 * d > rest.deg() {
                    break 'outer;
                }
                let mut e = 0;
                while let Ok((qt, r)) = rest.divmod(&cand) {
                    if !r.is_zero() {
                        break;
                    }
                    rest = qt;
                    e += 1;
                }
                if e > 0 {
                    factors.push((cand, e));
                }
            }
            d += 1;
        }
        if rest.deg() > 0 {
            match factors.iter_mut().find(|(p, _)| *p == rest) {
                Some((_, e)) => *e += 1,
                None => factors.push((rest, 1)),
            }
        }
        factors.sort();
        Ok(Factorization { factors, unit })
    }

    /// Product-of-powers form, e.g. `x^2*(x + 1)`.
    pub fn factored_string(&self) -> String {
        match self.factor() {
            Err(_) => "0".into(),
            Ok(fac) => fac.to_string(),
        }
    }
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl Ord for Poly {
    /// Degree first (zero smallest), then coefficients from the top down.
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(out, "0");
        }
        let f = &self.field;
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(out, " + ")?;
            }
            first = false;
            let cs = f.format_elem(c);
            let cs = if cs.contains('+') { format!("({cs})") } else { cs };
            match (i, c == Elem::ONE) {
                (0, _) => write!(out, "{cs}")?,
                (1, true) => write!(out, "x")?,
                (1, false) => write!(out, "{cs}*x")?,
                (_, true) => write!(out, "x^{i}")?,
                (_, false) => write!(out, "{cs}*x^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self} over {:?})", self.field)
    }
}

/// JSON form: ascending coefficients, each as its base-p coordinate tuple.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub coeffs: Vec<Vec<u32>>,
}

/// Canonical factorization: distinct monic irreducibles with multiplicities,
/// sorted by (degree, lex), and the leading coefficient of the input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub factors: Vec<(Poly, u32)>,
    pub unit: Elem,
}

impl Factorization {
    pub fn product(&self, field: &Field) -> Poly {
        self.factors
            .iter()
            .fold(Poly::constant(field, self.unit), |acc, (p, e)| acc.mul(&p.pow(*e)))
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|&(_, e)| e == 1)
    }

    pub fn distinct(&self) -> usize {
        self.factors.len()
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|(p, e)| {
                let base = if p.coeffs.iter().filter(|c| !c.is_zero()).count() > 1 {
                    format!("({p})")
                } else {
                    p.to_string()
                };
                if *e == 1 {
                    base
                } else {
                    format!("{base}^{e}")
                }
            })
            .collect();
        let unit = if self.unit == Elem::ONE { None } else { Some(self.unit.index().to_string()) };
        match (unit, parts.is_empty()) {
            (None, true) => write!(out, "1"),
            (Some(u), true) => write!(out, "{u}"),
            (None, false) => write!(out, "{}", parts.join("*")),
            (Some(u), false) => write!(out, "{u}*{}", parts.join("*")),
        }
    }
}

/// All monic divisors of `f` in (degree, lex) order; `proper` drops `f` itself.
pub fn divisors(f: &Poly, proper: bool) -> Result<Vec<Poly>> {
    if f.is_zero() || !f.is_monic() {
        return Err(Error::invalid(format!("divisors need a monic nonzero polynomial, got {f}")));
    }
    let fac = f.factor()?;
    let mut out = vec![Poly::one(f.field())];
    for (p, e) in &fac.factors {
        let mut next = Vec::with_capacity(out.len() * (*e as usize + 1));
        for d in &out {
            let mut acc = d.clone();
            next.push(acc.clone());
            for _ in 0..*e {
                acc = acc.mul(p);
                next.push(acc.clone());
            }
        }
        out = next;
    }
    out.sort();
    if proper {
        out.pop();
    }
    Ok(out)
}

/// Integer Möbius function.
pub(crate) fn int_mobius(mut n: u64) -> i64 {
    let mut sign = 1;
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            n /= d;
            if n.is_multiple_of(d) {
                return 0;
            }
            sign = -sign;
        }
        d += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

/// Number of monic irreducibles of degree `m` over F_q: `(1/m) sum_{d|m} mu(m/d) q^d`.
pub fn gauss_count(m: u32, q: u64) -> u128 {
    assert!(m >= 1, "degree must be positive");
    let mut total: i128 = 0;
    for d in (1..=m).filter(|d| m.is_multiple_of(*d)) {
        let term = (q as i128).checked_pow(d).expect("gauss_count overflow");
        total += int_mobius((m / d) as u64) as i128 * term;
    }
    (total / m as i128) as u128
}

/// Monic polynomials of degree `deg`, lex order.
pub fn monic(field: &Field, deg: usize) -> impl Iterator<Item = Poly> + '_ {
    let count = (field.q() as u64).pow(deg as u32);
    (0..count).map(move |lower| Poly::monic_from_index(field, deg, lower))
}

/// Monic irreducibles of degree `deg >= 1`, lex order.
pub fn monic_irreducible(field: &Field, deg: usize) -> impl Iterator<Item = Poly> + '_ {
    monic(field, deg).filter(move |p| deg >= 1 && p.is_irreducible().unwrap_or(false))
}

/// All residues modulo `f` (polynomials of degree `< deg f`), in index order.
pub fn residues(f: &Poly) -> impl Iterator<Item = Poly> + '_ {
    let count = (f.field().q() as u64).pow(f.deg() as u32);
    (0..count).map(move |i| Poly::from_index(f.field(), i))
}

/// Selector for [`enumerate`].
#[derive(Debug, Clone, Copy)]
pub enum PolyKind<'a> {
    Monic(usize),
    MonicIrreducible(usize),
    ResiduesMod(&'a Poly),
}

pub fn enumerate<'a>(field: &'a Field, kind: PolyKind<'a>) -> Box<dyn Iterator<Item = Poly> + 'a> {
    match kind {
        PolyKind::Monic(d) => Box::new(monic(field, d)),
        PolyKind::MonicIrreducible(d) => Box::new(monic_irreducible(field, d)),
        PolyKind::ResiduesMod(f) => Box::new(residues(f)),
    }
}

/// Operations exposed through [`poly_arith`].
#[derive(Debug, Clone)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
    DivMod,
    Gcd,
    Eval(Elem),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PolyValue {
    Poly(Poly),
    Pair(Poly, Poly),
    Elem(Elem),
}

/// Checked dispatcher over the ring operations; rejects mixed fields.
pub fn poly_arith(a: &Poly, b: Option<&Poly>, op: PolyOp) -> Result<PolyValue> {
    if let PolyOp::Eval(point) = op {
        return Ok(PolyValue::Elem(a.eval(point)));
    }
    let b = b.ok_or_else(|| Error::invalid("binary operation needs two operands"))?;
    if a.field() != b.field() {
        return Err(Error::FieldMismatch);
    }
    Ok(match op {
        PolyOp::Add => PolyValue::Poly(a.add(b)),
        PolyOp::Sub => PolyValue::Poly(a.sub(b)),
        PolyOp::Mul => PolyValue::Poly(a.mul(b)),
        PolyOp::Gcd => PolyValue::Poly(a.gcd(b)),
        PolyOp::DivMod => {
            let (q, r) = a.divmod(b)?;
            PolyValue::Pair(q, r)
        }
        PolyOp::Eval(_) => unreachable!(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(q: u32) -> Field {
        Field::from_order(q).unwrap()
    }

    fn p(field: &Field, c: &[i64]) -> Poly {
        Poly::from_ints(field, c)
    }

    #[test]
    fn arith_examples() {
        let f3 = f(3);
        // x^2+2x = x(x+2)
        assert_eq!(p(&f3, &[0, 2, 1]).gcd(&p(&f3, &[2, 1])), p(&f3, &[2, 1]));
        let f2 = f(2);
        let (qt, r) = p(&f2, &[1, 0, 1]).divmod(&p(&f2, &[1, 1])).unwrap();
        assert_eq!((qt, r), (p(&f2, &[1, 1]), Poly::zero(&f2)));
        let g = p(&f3, &[2, 0, 2]);
        assert_eq!(g.gcd(&Poly::zero(&f3)), g.monic());
        assert_eq!(g.divmod(&Poly::zero(&f3)), Err(Error::DivisionByZero));
        assert_eq!(p(&f3, &[1, 1, 1]).eval(f3.from_int(2)), f3.from_int(1));
    }

    #[test]
    fn poly_arith_dispatch() {
        let f3 = f(3);
        let f5 = f(5);
        let a = p(&f3, &[1, 1]);
        assert_eq!(poly_arith(&a, Some(&p(&f5, &[1])), PolyOp::Add), Err(Error::FieldMismatch));
        assert_eq!(
            poly_arith(&a, Some(&a), PolyOp::Mul).unwrap(),
            PolyValue::Poly(p(&f3, &[1, 2, 1]))
        );
        assert_eq!(
            poly_arith(&a, Some(&Poly::zero(&f3)), PolyOp::DivMod),
            Err(Error::DivisionByZero)
        );
        assert_eq!(poly_arith(&a, None, PolyOp::Eval(f3.from_int(1))).unwrap(), PolyValue::Elem(f3.from_int(2)));
    }

    #[test]
    fn irreducibility_examples() {
        assert!(p(&f(3), &[1, 0, 1]).is_irreducible().unwrap());
        assert!(!p(&f(2), &[1, 0, 1]).is_irreducible().unwrap());
        for q in [2, 3, 4, 5] {
            assert!(Poly::x(&f(q)).is_irreducible().unwrap());
        }
        assert!(Poly::one(&f(3)).is_irreducible().is_err());
    }

    #[test]
    fn factor_examples() {
        let f3 = f(3);
        let x = Poly::x(&f3);
        let x1 = Poly::linear(&f3, 1);
        let fac = x.pow(2).mul(&x1).factor().unwrap();
        assert_eq!(fac.factors, vec![(x.clone(), 2), (x1.clone(), 1)]);
        let irr = p(&f3, &[1, 0, 1]);
        assert_eq!(irr.factor().unwrap().factors, vec![(irr.clone(), 1)]);
        let f2 = f(2);
        let fac = p(&f2, &[0, 0, 1, 0, 1]).factor().unwrap();
        assert_eq!(fac.factors, vec![(Poly::x(&f2), 2), (Poly::linear(&f2, 1), 2)]);
        assert!(Poly::zero(&f3).factor().is_err());
        // non-monic input keeps its unit
        let g = p(&f3, &[0, 2, 2]);
        let fac = g.factor().unwrap();
        assert_eq!(fac.unit, f3.from_int(2));
        assert_eq!(fac.product(&f3), g);
    }

    #[test]
    fn divisor_examples() {
        let f3 = f(3);
        let x = Poly::x(&f3);
        let x1 = Poly::linear(&f3, 1);
        let one = Poly::one(&f3);
        assert_eq!(divisors(&x.pow(2), false).unwrap(), vec![one.clone(), x.clone(), x.pow(2)]);
        assert_eq!(divisors(&x.mul(&x1), true).unwrap(), vec![one.clone(), x.clone(), x1.clone()]);
        assert_eq!(
            divisors(&x.pow(2).mul(&x1), true).unwrap(),
            vec![one, x.clone(), x1.clone(), x.pow(2), x.mul(&x1)]
        );
        assert!(divisors(&p(&f3, &[1, 2]), false).is_err());
    }

    #[test]
    fn gauss_count_examples() {
        for q in [2, 3, 4, 5, 7] {
            assert_eq!(gauss_count(1, q), q as u128);
        }
        assert_eq!(gauss_count(2, 3), 3);
        assert_eq!(gauss_count(3, 2), 2);
        // exhaustive scan of the 9 monic quadratics over F_3
        assert_eq!(monic(&f(3), 2).filter(|g| g.is_irreducible_trial().unwrap()).count(), 3);
        assert_eq!(monic_irreducible(&f(2), 3).count(), 2);
    }

    #[test]
    fn enumerate_examples() {
        let f2 = f(2);
        let lin: Vec<Poly> = enumerate(&f2, PolyKind::Monic(1)).collect();
        assert_eq!(lin, vec![Poly::x(&f2), Poly::linear(&f2, 1)]);
        let quad: Vec<Poly> = enumerate(&f2, PolyKind::MonicIrreducible(2)).collect();
        assert_eq!(quad, vec![p(&f2, &[1, 1, 1])]);
        let f3 = f(3);
        let m = Poly::x(&f3).mul(&Poly::linear(&f3, 1));
        let res: Vec<Poly> = enumerate(&f3, PolyKind::ResiduesMod(&m)).collect();
        assert_eq!(res.len(), 9);
        assert!(res.windows(2).all(|w| w[0] < w[1]));
        assert!(res.iter().enumerate().all(|(i, r)| r.index() == i as u64));
    }

    #[test]
    fn irreducible_counts_match_gauss() {
        for q in [2, 3, 4, 5, 7, 8, 9] {
            let field = f(q);
            for m in 1..=5usize {
                if (q as u64).pow(m as u32) > 20_000 {
                    continue;
                }
                assert_eq!(monic_irreducible(&field, m).count() as u128, gauss_count(m as u32, q as u64), "q={q} m={m}");
            }
        }
    }

    #[test]
    fn rabin_agrees_with_trial_division_and_factor() {
        for q in [2, 3, 4, 5] {
            let field = f(q);
            for d in 1..=4 {
                for g in monic(&field, d) {
                    let rabin = g.is_irreducible().unwrap();
                    assert_eq!(rabin, g.is_irreducible_trial().unwrap(), "{g:?}");
                    let fac = g.factor().unwrap();
                    assert_eq!(rabin, fac.factors.len() == 1 && fac.factors[0].1 == 1, "{g:?}");
                }
            }
        }
    }

    #[test]
    fn factor_round_trip_and_divisor_count() {
        for q in [2, 3, 4, 5] {
            let field = f(q);
            let max_deg = if q <= 3 { 6 } else { 4 };
            for d in 0..=max_deg {
                for g in monic(&field, d) {
                    let fac = g.factor().unwrap();
                    assert_eq!(fac.product(&field), g);
                    assert!(fac.factors.windows(2).all(|w| w[0].0 < w[1].0));
                    let tau: usize = fac.factors.iter().map(|(_, e)| *e as usize + 1).product();
                    assert_eq!(divisors(&g, false).unwrap().len(), tau);
                }
            }
        }
    }

    #[test]
    fn display_forms() {
        let f3 = f(3);
        let g = Poly::x(&f3).pow(2).mul(&Poly::linear(&f3, 1));
        assert_eq!(g.to_string(), "x^3 + x^2");
        assert_eq!(g.factored_string(), "x^2*(x + 1)");
        assert_eq!(p(&f3, &[2, 2]).to_string(), "2*x + 2");
        let f4 = f(4);
        let h = Poly::new(&f4, vec![f4.generator(), Elem::ONE]);
        assert_eq!(h.to_string(), "x + a");
        let h = Poly::new(&f4, vec![f4.from_coords(&[1, 1]).unwrap(), Elem::ONE]);
        assert_eq!(h.to_string(), "x + (a+1)");
    }

    #[test]
    fn json_form() {
        let f4 = f(4);
        let h = Poly::new(&f4, vec![f4.generator(), Elem::ONE]);
        let js = serde_json::to_string(&h.to_json()).unwrap();
        assert_eq!(js, r#"{"coeffs":[[0,1],[1,0]]}"#);
        assert_eq!(Poly::from_json(&f4, &serde_json::from_str(&js).unwrap()).unwrap(), h);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn divmod_reconstructs(a in proptest::collection::vec(0i64..5, 0..8),
                                   b in proptest::collection::vec(0i64..5, 1..5)) {
                let field = Field::new(5, 1).unwrap();
                let a = Poly::from_ints(&field, &a);
                let b = Poly::from_ints(&field, &b);
                prop_assume!(!b.is_zero());
                let (q, r) = a.divmod(&b).unwrap();
                prop_assert_eq!(q.mul(&b).add(&r), a);
                prop_assert!(r.is_zero() || r.degree() < b.degree());
            }

            #[test]
            fn gcd_divides_both(a in proptest::collection::vec(0i64..3, 0..7),
                                b in proptest::collection::vec(0i64..3, 0..7)) {
                let field = Field::new(3, 1).unwrap();
                let a = Poly::from_ints(&field, &a);
                let b = Poly::from_ints(&field, &b);
                let g = a.gcd(&b);
                prop_assume!(!g.is_zero());
                prop_assert!(g.is_monic());
                prop_assert!(g.divides(&a) && g.divides(&b));
            }
        }
    }
}
