//! Hankel determinants straight from the definition `H_n^(k) = det(a_{k+i+j})`,
//! independent of any continued-fraction machinery.
//!
//! Over `F_p` the matrix is reduced by Gaussian elimination; over `Q` and
//! `Z` the entries are lifted to integers and eliminated fraction-free
//! (Bareiss), with every division checked to be exact.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::series::SeriesHandle;

/// `H_n^(k)` of `s`.
pub fn hankel_det(s: &SeriesHandle, n: usize, k: usize) -> Result<FieldElement> {
    if n == 0 {
        return Ok(s.spec().one());
    }
    let coeffs = s.prefix(k + 2 * n - 1)?;
    hankel_det_window(s.spec(), &coeffs[k..], n)
}

/// Determinant of the `n x n` Hankel matrix built from `window[0..2n-1]`.
pub fn hankel_det_window(spec: FieldSpec, window: &[FieldElement], n: usize) -> Result<FieldElement> {
    if n == 0 {
        return Ok(spec.one());
    }
    if window.len() < 2 * n - 1 {
        return Err(Error::InsufficientData {
            requested: 2 * n - 1,
            available: window.len(),
        });
    }
    match spec.modulus() {
        Some(_) => {
            let m: Vec<Vec<FieldElement>> = (0..n).map(|i| window[i..i + n].to_vec()).collect();
            Ok(det_gauss(spec, m))
        }
        None => {
            let rats: Vec<BigRational> = window[..2 * n - 1].iter().map(|c| c.lift()).collect();
            let l = rats.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
            let ints: Vec<BigInt> = rats.iter().map(|q| (q * &l).to_integer()).collect();
            let d = hankel_det_integer(&ints, n, 0)?;
            let scale = num_traits::pow(l, n);
            spec.from_rational(&BigRational::new(d, scale))
        }
    }
}

/// `H_0 .. H_{n_max}` of `s`; reads `2 n_max - 1` coefficients.
pub fn hankel_sequence_bruteforce(s: &SeriesHandle, n_max: usize) -> Result<Vec<FieldElement>> {
    let coeffs = s.prefix((2 * n_max).saturating_sub(1))?;
    (0..=n_max).map(|n| hankel_det_window(s.spec(), &coeffs, n)).collect()
}

/// `H_n^(k)` of an integer sequence, by Bareiss elimination.
pub fn hankel_det_integer(a: &[BigInt], n: usize, k: usize) -> Result<BigInt> {
    if n == 0 {
        return Ok(BigInt::one());
    }
    if a.len() < k + 2 * n - 1 {
        return Err(Error::InsufficientData {
            requested: k + 2 * n - 1,
            available: a.len(),
        });
    }
    let m: Vec<Vec<BigInt>> = (0..n).map(|i| a[k + i..k + i + n].to_vec()).collect();
    bareiss(m)
}

/// `H_0 .. H_{n_max}` of an integer sequence.
pub fn hankel_sequence_integer(a: &[BigInt], n_max: usize) -> Result<Vec<BigInt>> {
    (0..=n_max).map(|n| hankel_det_integer(a, n, 0)).collect()
}

fn det_gauss(spec: FieldSpec, mut m: Vec<Vec<FieldElement>>) -> FieldElement {
    let n = m.len();
    let mut det = spec.one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return spec.zero();
        };
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        let inv = m[col][col].inv().expect("nonzero pivot");
        det = &det * &m[col][col];
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = &m[r][col] * &inv;
            for c in col..n {
                let t = &factor * &m[col][c];
                m[r][c] = &m[r][c] - &t;
            }
        }
    }
    det
}

fn bareiss(mut m: Vec<Vec<BigInt>>) -> Result<BigInt> {
    let n = m.len();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Ok(BigInt::zero());
        };
        if pivot != col {
            m.swap(pivot, col);
            sign = -sign;
        }
        for r in col + 1..n {
            for c in col + 1..n {
                let num = &m[r][c] * &m[col][col] - &m[r][col] * &m[col][c];
                let (q, rem) = num.div_rem(&prev);
                if !rem.is_zero() {
                    return Err(Error::Invariant("inexact Bareiss division".into()));
                }
                m[r][c] = q;
            }
            m[r][col] = BigInt::zero();
        }
        prev = m[col][col].clone();
    }
    Ok(sign * &m[n - 1][n - 1])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Polynomial;
    use proptest::prelude::*;

    fn leibniz(spec: FieldSpec, m: &[Vec<FieldElement>]) -> FieldElement {
        let n = m.len();
        let mut total = spec.zero();
        let mut perm: Vec<usize> = (0..n).collect();
        permutations(&mut perm, 0, &mut |p| {
            let inversions = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
            let mut term = spec.one();
            for (i, &j) in p.iter().enumerate() {
                term = &term * &m[i][j];
            }
            total = if inversions % 2 == 0 { &total + &term } else { &total - &term };
        });
        total
    }

    fn permutations(p: &mut Vec<usize>, i: usize, visit: &mut dyn FnMut(&[usize])) {
        if i == p.len() {
            visit(p);
            return;
        }
        for j in i..p.len() {
            p.swap(i, j);
            permutations(p, i + 1, visit);
            p.swap(i, j);
        }
    }

    #[test]
    fn trivial_orders() {
        let q = FieldSpec::Q;
        let s = SeriesHandle::polynomial(Polynomial::from_i64s(q, &[3, 5, 7]));
        assert_eq!(hankel_det(&s, 0, 0).unwrap(), q.one());
        assert_eq!(hankel_det(&s, 1, 0).unwrap(), q.from_i64(3));
        assert_eq!(hankel_det(&s, 1, 2).unwrap(), q.from_i64(7));
    }

    #[test]
    fn stern_two_by_two() {
        let a: Vec<BigInt> = [1, 1, 2, 1].iter().map(|&x| BigInt::from(x)).collect();
        assert_eq!(hankel_det_integer(&a, 2, 0).unwrap(), BigInt::from(1));
    }

    #[test]
    fn geometric_series_has_rank_one() {
        let q = FieldSpec::Q;
        let s = SeriesHandle::rational(Polynomial::one(q), Polynomial::from_i64s(q, &[1, -1])).unwrap();
        let h = hankel_sequence_bruteforce(&s, 6).unwrap();
        assert_eq!(h[0], q.one());
        assert_eq!(h[1], q.one());
        assert!(h[2..].iter().all(|c| c.is_zero()));
    }

    #[test]
    fn rational_entries() {
        let q = FieldSpec::Q;
        let w: Vec<_> = [(1, 2), (1, 3), (1, 4)].iter().map(|&(a, b)| q.from_ratio(a, b).unwrap()).collect();
        // det [[1/2, 1/3], [1/3, 1/4]] = 1/8 - 1/9 = 1/72
        assert_eq!(hankel_det_window(q, &w, 2).unwrap(), q.from_ratio(1, 72).unwrap());
    }

    proptest! {
        #[test]
        fn elimination_matches_leibniz_fp(c in proptest::collection::vec(0i64..5, 9), n in 1usize..6) {
            let f = FieldSpec::F5;
            let w: Vec<_> = c.iter().map(|&x| f.from_i64(x)).collect();
            let m: Vec<Vec<_>> = (0..n).map(|i| w[i..i + n].to_vec()).collect();
            prop_assert_eq!(hankel_det_window(f, &w, n).unwrap(), leibniz(f, &m));
        }

        #[test]
        fn bareiss_matches_leibniz_q(c in proptest::collection::vec((-9i64..9, 1i64..5), 9), n in 1usize..6) {
            let q = FieldSpec::Q;
            let w: Vec<_> = c.iter().map(|&(a, b)| q.from_ratio(a, b).unwrap()).collect();
            let m: Vec<Vec<_>> = (0..n).map(|i| w[i..i + n].to_vec()).collect();
            prop_assert_eq!(hankel_det_window(q, &w, n).unwrap(), leibniz(q, &m));
        }
    }
}
