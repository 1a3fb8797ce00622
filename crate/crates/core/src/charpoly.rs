//! Exact characteristic polynomials with integer coefficients.

use std::cmp::Reverse;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Monic integer polynomial, coefficients ascending.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CharPoly {
    coeffs: Vec<BigInt>,
}

impl CharPoly {
    pub fn from_coeffs(coeffs: Vec<BigInt>) -> CharPoly {
        assert!(coeffs.last().is_some_and(|c| c.is_one()), "characteristic polynomials are monic");
        CharPoly { coeffs }
    }

    /// Expands `prod (x - lambda)^m`.
    pub fn from_roots(roots: &[(i64, u64)]) -> CharPoly {
        let mut coeffs = vec![BigInt::one()];
        for &(lambda, mult) in roots {
            let neg = BigInt::from(-lambda);
            for _ in 0..mult {
                let mut next = vec![BigInt::zero(); coeffs.len() + 1];
                for (i, c) in coeffs.iter().enumerate() {
                    next[i + 1] += c;
                    if !neg.is_zero() {
                        next[i] += c * &neg;
                    }
                }
                coeffs = next;
            }
        }
        CharPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Splits into integer roots with multiplicity; `None` when some factor is
    /// not linear over Z. Candidate roots are bounded by the Cauchy bound.
    pub fn integer_roots(&self) -> Option<Vec<(i64, u64)>> {
        let mut rest = self.coeffs.clone();
        let mut roots = Vec::new();
        // zero roots
        let zeros = rest.iter().take_while(|c| c.is_zero()).count();
        if zeros > 0 {
            rest.drain(..zeros);
            roots.push((0, zeros as u64));
        }
        let bound: BigInt = rest.iter().map(|c| c.abs()).max().unwrap_or_else(BigInt::zero) + 1u32;
        let bound = i64::try_from(bound).unwrap_or(i64::MAX).min(1 << 40);
        let mut lambda = 1i64;
        // try +l, -l for l = 1, 2, ... while the residual has positive degree
        while rest.len() > 1 && lambda <= bound {
            for cand in [lambda, -lambda] {
                let mut m = 0;
                while rest.len() > 1 {
                    match synthetic_div(&rest, cand) {
                        Some(q) => {
                            rest = q;
                            m += 1;
                        }
                        None => break,
                    }
                }
                if m > 0 {
                    roots.push((cand, m));
                }
            }
            lambda += 1;
        }
        (rest.len() == 1).then_some(roots)
    }

    /// Factored text such as `(x - 12)*(x - 3)^4*(x + 6)^4*x^18`.
    ///
    /// Factors appear by ascending multiplicity, ties by descending root; this
    /// is the order used in the published tables.
    pub fn factored_string(&self) -> String {
        match self.integer_roots() {
            Some(roots) => format_roots(&roots),
            None => self.expanded_string(),
        }
    }

    pub fn expanded_string(&self) -> String {
        let mut terms = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            let body = match (i, mag.is_one()) {
                (0, _) => mag.to_string(),
                (1, true) => "x".into(),
                (1, false) => format!("{mag}*x"),
                (_, true) => format!("x^{i}"),
                (_, false) => format!("{mag}*x^{i}"),
            };
            terms.push((sign, body));
        }
        let mut out = String::new();
        for (k, (sign, body)) in terms.into_iter().enumerate() {
            if k == 0 {
                if sign == "-" {
                    out.push('-');
                }
            } else {
                out.push_str(&format!(" {sign} "));
            }
            out.push_str(&body);
        }
        out
    }
}

fn synthetic_div(coeffs: &[BigInt], root: i64) -> Option<Vec<BigInt>> {
    let n = coeffs.len() - 1;
    let r = BigInt::from(root);
    let mut q = vec![BigInt::zero(); n];
    let mut carry = BigInt::zero();
    for i in (0..=n).rev() {
        let v = &coeffs[i] + &carry * &r;
        if i == 0 {
            return v.is_zero().then_some(q);
        }
        q[i - 1] = v.clone();
        carry = v;
    }
    unreachable!()
}

/// Renders `(value, multiplicity)` pairs in table order.
pub fn format_roots(roots: &[(i64, u64)]) -> String {
    let mut sorted: Vec<(i64, u64)> = roots.iter().copied().filter(|&(_, m)| m > 0).collect();
    sorted.sort_by_key(|&(v, m)| (m, Reverse(v)));
    if sorted.is_empty() {
        return "1".into();
    }
    sorted
        .iter()
        .map(|&(v, m)| {
            let base = match v {
                0 => "x".to_string(),
                v if v > 0 => format!("(x - {v})"),
                v => format!("(x + {})", -v),
            };
            if m == 1 {
                base
            } else {
                format!("{base}^{m}")
            }
        })
        .collect::<Vec<_>>()
        .join("*")
}

impl fmt::Display for CharPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.factored_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expansion() {
        // (x - 2)(x + 1)^2 = x^3 - 3x - 2
        let cp = CharPoly::from_roots(&[(2, 1), (-1, 2)]);
        let expect: Vec<BigInt> = [-2, -3, 0, 1].iter().map(|&v| BigInt::from(v)).collect();
        assert_eq!(cp.coeffs(), expect.as_slice());
        assert_eq!(cp.expanded_string(), "x^3 - 3*x - 2");
        assert_eq!(CharPoly::from_roots(&[(0, 3)]).expanded_string(), "x^3");
    }

    #[test]
    fn table_order() {
        let cp = CharPoly::from_roots(&[(-6, 4), (0, 18), (12, 1), (3, 4)]);
        assert_eq!(cp.factored_string(), "(x - 12)*(x - 3)^4*(x + 6)^4*x^18");
        let cp = CharPoly::from_roots(&[(-8, 2), (16, 1), (1, 16), (-2, 8)]);
        assert_eq!(cp.factored_string(), "(x - 16)*(x + 8)^2*(x + 2)^8*(x - 1)^16");
        assert_eq!(CharPoly::from_roots(&[(0, 9)]).factored_string(), "x^9");
        assert_eq!(CharPoly::from_roots(&[]).factored_string(), "1");
    }

    #[test]
    fn roots_recovered() {
        let roots = vec![(0, 6), (6, 1), (-3, 2)];
        let cp = CharPoly::from_roots(&roots);
        let mut got = cp.integer_roots().unwrap();
        got.sort();
        let mut want = roots;
        want.sort();
        assert_eq!(got, want);
        // x^2 - 2 has no integer roots
        let irr = CharPoly::from_coeffs(vec![BigInt::from(-2), BigInt::zero(), BigInt::one()]);
        assert!(irr.integer_roots().is_none());
        assert_eq!(irr.factored_string(), "x^2 - 2");
    }
}
