//! Finite fields F_q with q = p^k.
//!
//! Elements are stored as indices in `[0, q)`: the element with coefficient
//! tuple `(c_0, ..., c_{k-1})` over the basis `1, a, ..., a^{k-1}` has index
//! `c_0 + c_1 p + ... + c_{k-1} p^{k-1}`. Index 0 is zero and index 1 is one.
//! All arithmetic goes through tables built once at construction.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default upper bound on the field order.
pub const DEFAULT_MAX_Q: u32 = 32;

/// A field element, as an index into the owning [`Field`]'s enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Elem(pub(crate) u16);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

struct FieldInner {
    p: u32,
    k: u32,
    q: u32,
    modulus: Vec<u32>,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    inv: Vec<u16>,
    trace: Vec<u16>,
}

/// Handle to an immutable finite field. Cloning is cheap.
#[derive(Clone)]
pub struct Field(Arc<FieldInner>);

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.q())
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.k == other.0.k && self.0.modulus == other.0.modulus)
    }
}

impl Eq for Field {}

impl std::hash::Hash for Field {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.0.p.hash(state);
        self.0.k.hash(state);
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits a prime power `q` into `(p, k)`.
pub fn prime_power_parts(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while !q.is_multiple_of(p) {
        p += 1;
    }
    let (mut rest, mut k) = (q, 0);
    while rest % p == 0 {
        rest /= p;
        k += 1;
    }
    (rest == 1).then_some((p, k))
}

// Dense polynomials over F_p used only while building the tables.
fn prime_poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    let dm = m.len() - 1;
    let lead_inv = prime_inv(m[dm], p);
    while r.len() > dm {
        let top = *r.last().unwrap();
        if top != 0 {
            let c = top * lead_inv % p;
            let shift = r.len() - 1 - dm;
            for (i, &mi) in m.iter().enumerate() {
                r[shift + i] = (r[shift + i] + p - c * mi % p) % p;
            }
        }
        r.pop();
    }
    r
}

fn prime_inv(a: u32, p: u32) -> u32 {
    (1..p).find(|&b| a * b % p == 1).expect("nonzero element of F_p")
}

fn digits(mut n: u32, base: u32, len: usize) -> Vec<u32> {
    let mut out = vec![0; len];
    for d in out.iter_mut() {
        *d = n % base;
        n /= base;
    }
    out
}

fn prime_irreducible(m: &[u32], p: u32) -> bool {
    let deg = m.len() - 1;
    for d in 1..=deg / 2 {
        for lower in 0..p.pow(d as u32) {
            let mut cand = digits(lower, p, d);
            cand.push(1);
            if prime_poly_rem(m, &cand, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// Lexicographically smallest monic irreducible of degree `k` over F_p,
/// ascending coefficients, ordered by the lower coefficients read from the
/// top down.
fn smallest_irreducible(p: u32, k: u32) -> Vec<u32> {
    (0..p.pow(k))
        .map(|lower| {
            let mut m = digits(lower, p, k as usize);
            m.push(1);
            m
        })
        .find(|m| prime_irreducible(m, p))
        .expect("irreducible polynomials exist in every degree")
}

impl Field {
    /// Builds F_{p^k} with the default order cap.
    pub fn new(p: u32, k: u32) -> Result<Field> {
        Field::with_cap(p, k, DEFAULT_MAX_Q)
    }

    /// Builds F_q for a prime power `q`.
    pub fn from_order(q: u32) -> Result<Field> {
        let (p, k) = prime_power_parts(q as u64)
            .ok_or_else(|| Error::invalid(format!("{q} is not a prime power")))?;
        Field::new(p as u32, k)
    }

    pub fn with_cap(p: u32, k: u32, max_q: u32) -> Result<Field> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        if k < 1 {
            return Err(Error::invalid("extension degree must be at least 1"));
        }
        let q = (p as u64).checked_pow(k).unwrap_or(u64::MAX);
        if q > max_q as u64 {
            return Err(Error::CapExceeded {
                what: "field order",
                limit: max_q as usize,
                actual: q.min(usize::MAX as u64) as usize,
            });
        }
        let q = q as u32;
        let ku = k as usize;
        let modulus = if k == 1 { vec![0, 1] } else { smallest_irreducible(p, k) };
        let n = q as usize;

        let mut add = vec![0u16; n * n];
        let mut mul = vec![0u16; n * n];
        let encode = |c: &[u32]| -> u16 {
            c.iter().rev().fold(0u32, |acc, &d| acc * p + d) as u16
        };
        for a in 0..q {
            let ca = digits(a, p, ku);
            for b in 0..q {
                let cb = digits(b, p, ku);
                let sum: Vec<u32> = ca.iter().zip(&cb).map(|(x, y)| (x + y) % p).collect();
                add[(a * q + b) as usize] = encode(&sum);
                let mut prod = vec![0u32; 2 * ku - 1];
                for (i, x) in ca.iter().enumerate() {
                    for (j, y) in cb.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                let mut red = if k == 1 { prod } else { prime_poly_rem(&prod, &modulus, p) };
                red.resize(ku, 0);
                mul[(a * q + b) as usize] = encode(&red);
            }
        }
        let neg: Vec<u16> = (0..q)
            .map(|a| (0..q).find(|&b| add[(a * q + b) as usize] == 0).unwrap() as u16)
            .collect();
        let mut inv = vec![0u16; n];
        for a in 1..q {
            inv[a as usize] = (1..q).find(|&b| mul[(a * q + b) as usize] == 1).unwrap() as u16;
        }
        let mut trace = vec![0u16; n];
        for a in 0..q as usize {
            // a + a^p + ... + a^{p^{k-1}}
            let mut acc = 0u16;
            let mut frob = a as u16;
            for _ in 0..k {
                acc = add[acc as usize * n + frob as usize];
                let mut next = 1u16;
                for _ in 0..p {
                    next = mul[next as usize * n + frob as usize];
                }
                frob = next;
            }
            trace[a] = acc;
        }

        Ok(Field(Arc::new(FieldInner { p, k, q, modulus, add, mul, neg, inv, trace })))
    }

    pub fn p(&self) -> u32 {
        self.0.p
    }

    pub fn k(&self) -> u32 {
        self.0.k
    }

    pub fn q(&self) -> u32 {
        self.0.q
    }

    /// Defining polynomial over F_p, ascending coefficients. `[0, 1]` for prime fields.
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    pub fn zero(&self) -> Elem {
        Elem::ZERO
    }

    pub fn one(&self) -> Elem {
        Elem::ONE
    }

    /// Element with the given enumeration index.
    pub fn elem(&self, index: usize) -> Elem {
        assert!(index < self.0.q as usize, "element index out of range");
        Elem(index as u16)
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> Elem {
        Elem(n.rem_euclid(self.0.p as i64) as u16)
    }

    /// The generator `a` of F_q over F_p (equal to `0` when k = 1).
    pub fn generator(&self) -> Elem {
        if self.0.k == 1 {
            Elem::ZERO
        } else {
            Elem(self.0.p as u16)
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.0.q as u16).map(Elem)
    }

    /// Coordinates over F_p, ascending powers of the generator.
    pub fn coords(&self, a: Elem) -> Vec<u32> {
        digits(a.0 as u32, self.0.p, self.0.k as usize)
    }

    pub fn from_coords(&self, coords: &[u32]) -> Result<Elem> {
        if coords.len() != self.0.k as usize || coords.iter().any(|&c| c >= self.0.p) {
            return Err(Error::invalid(format!("bad coordinate tuple {coords:?} for {self:?}")));
        }
        Ok(Elem(coords.iter().rev().fold(0u32, |acc, &d| acc * self.0.p + d) as u16))
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        Elem(self.0.add[a.index() * self.0.q as usize + b.index()])
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        Elem(self.0.mul[a.index() * self.0.q as usize + b.index()])
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        Elem(self.0.neg[a.index()])
    }

    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if a.is_zero() {
            Err(Error::DivisionByZero)
        } else {
            Ok(Elem(self.0.inv[a.index()]))
        }
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: Elem, mut e: u64) -> Elem {
        let (mut base, mut acc) = (a, Elem::ONE);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Absolute trace to F_p, returned as an integer in `[0, p)`.
    #[inline]
    pub fn trace(&self, a: Elem) -> u32 {
        self.0.trace[a.index()] as u32
    }

    /// Renders an element: plain integers in prime fields, polynomials in `a` otherwise.
    pub fn format_elem(&self, e: Elem) -> String {
        if self.0.k == 1 {
            return e.0.to_string();
        }
        let coords = self.coords(e);
        let terms: Vec<String> = coords
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| match (i, c) {
                (0, c) => c.to_string(),
                (1, 1) => "a".to_string(),
                (1, c) => format!("{c}*a"),
                (i, 1) => format!("a^{i}"),
                (i, c) => format!("{c}*a^{i}"),
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join("+")
        }
    }

    pub fn to_json(&self) -> FieldJson {
        FieldJson { p: self.0.p, k: self.0.k, modulus: self.0.modulus.clone() }
    }

    pub fn from_json(json: &FieldJson) -> Result<Field> {
        let field = Field::new(json.p, json.k)?;
        if field.modulus() != json.modulus.as_slice() {
            return Err(Error::invalid(format!(
                "modulus {:?} is not the canonical modulus {:?}",
                json.modulus,
                field.modulus()
            )));
        }
        Ok(field)
    }
}

/// Serialized form of a [`Field`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldJson {
    pub p: u32,
    pub k: u32,
    pub modulus: Vec<u32>,
}

/// Arithmetic operations exposed on [`FieldElem`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow(u64),
    Inv,
    Neg,
}

/// An element bundled with its field; operations check field agreement.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElem {
    field: Field,
    value: Elem,
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in {:?}", self.field.format_elem(self.value), self.field)
    }
}

impl FieldElem {
    pub fn new(field: &Field, value: Elem) -> FieldElem {
        assert!(value.index() < field.q() as usize);
        FieldElem { field: field.clone(), value }
    }

    pub fn from_coords(field: &Field, coords: &[u32]) -> Result<FieldElem> {
        Ok(FieldElem { field: field.clone(), value: field.from_coords(coords)? })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn value(&self) -> Elem {
        self.value
    }

    pub fn coords(&self) -> Vec<u32> {
        self.field.coords(self.value)
    }

    /// Applies `op`. Binary operations need `rhs`; unary ones ignore it.
    pub fn apply(&self, op: FieldOp, rhs: Option<&FieldElem>) -> Result<FieldElem> {
        let f = &self.field;
        let other = |rhs: Option<&FieldElem>| -> Result<Elem> {
            let rhs = rhs.ok_or_else(|| Error::invalid("binary operation needs two operands"))?;
            if rhs.field != *f {
                return Err(Error::FieldMismatch);
            }
            Ok(rhs.value)
        };
        let value = match op {
            FieldOp::Add => f.add(self.value, other(rhs)?),
            FieldOp::Sub => f.sub(self.value, other(rhs)?),
            FieldOp::Mul => f.mul(self.value, other(rhs)?),
            FieldOp::Div => f.div(self.value, other(rhs)?)?,
            FieldOp::Pow(e) => f.pow(self.value, e),
            FieldOp::Inv => f.inv(self.value)?,
            FieldOp::Neg => f.neg(self.value),
        };
        Ok(FieldElem { field: f.clone(), value })
    }

    /// Trace to the prime field, as a prime-field element.
    pub fn trace(&self) -> FieldElem {
        let t = self.field.trace(self.value);
        FieldElem { field: self.field.clone(), value: self.field.from_int(t as i64) }
    }
}
