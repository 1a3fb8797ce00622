//! Exact integer and rational linear algebra.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Determinant by Bareiss fraction-free elimination.
pub fn det_exact(matrix: &[Vec<i64>]) -> BigInt {
    let n = matrix.len();
    assert!(matrix.iter().all(|r| r.len() == n), "determinant of a non-square matrix");
    if n == 0 {
        return BigInt::one();
    }
    let mut m: Vec<Vec<BigInt>> =
        matrix.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect();
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                // exact by Sylvester's identity
                m[i][j] = v / &prev;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

/// Solves `A v = b` exactly over Q; `None` when `A` is singular.
pub fn solve_rational(a: &[Vec<i64>], b: &[i64]) -> Option<Vec<BigRational>> {
    let n = a.len();
    assert_eq!(b.len(), n);
    let mut m: Vec<Vec<BigRational>> = a
        .iter()
        .zip(b)
        .map(|(row, &rhs)| {
            row.iter()
                .chain(std::iter::once(&rhs))
                .map(|&v| BigRational::from_integer(BigInt::from(v)))
                .collect()
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot);
        let inv = m[col][col].recip();
        for v in m[col].iter_mut() {
            *v *= &inv;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                for c in col..=n {
                    let delta = &factor * &m[col][c];
                    m[r][c] -= delta;
                }
            }
        }
    }
    Some(m.into_iter().map(|row| row[n].clone()).collect())
}

/// Characteristic polynomial `det(xI - A)` of a square integer matrix by the
/// Faddeev-LeVerrier recurrence; coefficients ascending, monic.
pub fn charpoly_faddeev(a: &[Vec<i64>]) -> Vec<BigInt> {
    let n = a.len();
    let sparse: Vec<Vec<(usize, i64)>> = a
        .iter()
        .map(|row| row.iter().enumerate().filter(|(_, &v)| v != 0).map(|(j, &v)| (j, v)).collect())
        .collect();
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::one();
    // m holds M_k; M_1 = I
    let mut m: Vec<Vec<BigInt>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect();
    for k in 1..=n {
        // am = A * M_k
        let am: Vec<Vec<BigInt>> = sparse
            .iter()
            .map(|row| {
                let mut out = vec![BigInt::zero(); n];
                for &(l, v) in row {
                    for (o, x) in out.iter_mut().zip(&m[l]) {
                        if !x.is_zero() {
                            *o += x * v;
                        }
                    }
                }
                out
            })
            .collect();
        let trace: BigInt = (0..n).map(|i| am[i][i].clone()).sum();
        let c = -(trace / BigInt::from(k as u64));
        coeffs[n - k] = c.clone();
        if k < n {
            m = am;
            for (i, row) in m.iter_mut().enumerate() {
                row[i] += &c;
            }
        }
    }
    coeffs
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_integer::Integer;

    // cofactor expansion, independent of elimination
    fn det_laplace(m: &[Vec<i64>]) -> BigInt {
        let n = m.len();
        if n == 0 {
            return BigInt::one();
        }
        (0..n)
            .map(|j| {
                let minor: Vec<Vec<i64>> = m[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &v)| v).collect())
                    .collect();
                let term = BigInt::from(m[0][j]) * det_laplace(&minor);
                if j.is_even() {
                    term
                } else {
                    -term
                }
            })
            .sum()
    }

    #[test]
    fn identity_and_small() {
        for n in 0..6 {
            let id: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| (i == j) as i64).collect()).collect();
            assert_eq!(det_exact(&id), BigInt::one());
        }
        assert_eq!(det_exact(&[vec![1, -1], vec![1, 2]]), BigInt::from(3));
        assert_eq!(det_exact(&[vec![0, 1], vec![1, 0]]), BigInt::from(-1));
        assert_eq!(det_exact(&[vec![1, 2], vec![2, 4]]), BigInt::zero());
    }

    #[test]
    fn solve_small() {
        let v = solve_rational(&[vec![1, -1], vec![1, 2]], &[0, 3]).unwrap();
        assert_eq!(v, vec![BigRational::one(), BigRational::one()]);
        assert!(solve_rational(&[vec![1, 2], vec![2, 4]], &[1, 2]).is_none());
    }

    #[test]
    fn charpoly_small() {
        // K_3: x^3 - 3x - 2
        let k3 = vec![vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]];
        let c: Vec<BigInt> = [-2, -3, 0, 1].iter().map(|&v| BigInt::from(v)).collect();
        assert_eq!(charpoly_faddeev(&k3), c);
        let e3 = vec![vec![0; 3]; 3];
        let c: Vec<BigInt> = [0, 0, 0, 1].iter().map(|&v| BigInt::from(v)).collect();
        assert_eq!(charpoly_faddeev(&e3), c);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn bareiss_matches_laplace(n in 1usize..6, seed in proptest::collection::vec(-6i64..7, 36)) {
                let m: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| seed[i * 6 + j]).collect()).collect();
                prop_assert_eq!(det_exact(&m), det_laplace(&m));
            }

            #[test]
            fn charpoly_constant_term_is_signed_det(n in 1usize..6, seed in proptest::collection::vec(-4i64..5, 36)) {
                let m: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| seed[i * 6 + j]).collect()).collect();
                let c = charpoly_faddeev(&m);
                let det = det_laplace(&m);
                let expected = if n % 2 == 0 { det } else { -det };
                prop_assert_eq!(c[0].clone(), expected);
            }
        }
    }
}
