//! Truncated power-series arithmetic on coefficient slices.

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};

/// First `n` coefficients of `a * b`. Missing coefficients count as zero.
pub fn mul_trunc(spec: FieldSpec, a: &[FieldElement], b: &[FieldElement], n: usize) -> Vec<FieldElement> {
    let mut out = vec![spec.zero(); n];
    for (i, ai) in a.iter().enumerate().take(n) {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate().take(n - i) {
            out[i + j] = &out[i + j] + &(ai * bj);
        }
    }
    out
}

/// First `n` coefficients of `1 / a`; needs `a[0] != 0`.
pub fn inverse(spec: FieldSpec, a: &[FieldElement], n: usize) -> Result<Vec<FieldElement>> {
    let a0 = a.first().ok_or(Error::DivisionByZero)?;
    let inv0 = a0.inv()?;
    let mut out: Vec<FieldElement> = Vec::with_capacity(n);
    for m in 0..n {
        if m == 0 {
            out.push(inv0.clone());
            continue;
        }
        let mut acc = spec.zero();
        for i in 1..=m.min(a.len().saturating_sub(1)) {
            acc = &acc + &(&a[i] * &out[m - i]);
        }
        out.push(-(&acc * &inv0));
    }
    Ok(out)
}

/// First `n` coefficients of `a / b`; needs `b[0] != 0`.
pub fn div_trunc(spec: FieldSpec, a: &[FieldElement], b: &[FieldElement], n: usize) -> Result<Vec<FieldElement>> {
    let inv = inverse(spec, b, n)?;
    Ok(mul_trunc(spec, a, &inv, n))
}

/// First `n` coefficients of the square root of `t` with constant term `r0`
/// (`r0^2 = t[0]`, characteristic not 2).
pub fn sqrt_unit(spec: FieldSpec, t: &[FieldElement], r0: FieldElement, n: usize) -> Result<Vec<FieldElement>> {
    let two_r0_inv = (&r0 + &r0).inv()?;
    let mut out: Vec<FieldElement> = Vec::with_capacity(n);
    for m in 0..n {
        if m == 0 {
            out.push(r0.clone());
            continue;
        }
        let mut acc = t.get(m).cloned().unwrap_or_else(|| spec.zero());
        for j in 1..m {
            acc = &acc - &(&out[j] * &out[m - j]);
        }
        out.push(&acc * &two_r0_inv);
    }
    Ok(out)
}

/// Index of the first nonzero coefficient.
pub fn valuation(a: &[FieldElement]) -> Option<usize> {
    a.iter().position(|c| !c.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(spec: FieldSpec, c: &[i64]) -> Vec<FieldElement> {
        c.iter().map(|&x| spec.from_i64(x)).collect()
    }

    #[test]
    fn inverse_of_one_minus_x() {
        let q = FieldSpec::Q;
        assert_eq!(inverse(q, &v(q, &[1, -1]), 5).unwrap(), v(q, &[1, 1, 1, 1, 1]));
        assert!(inverse(q, &v(q, &[0, 1]), 3).is_err());
    }

    #[test]
    fn fibonacci_by_division() {
        let q = FieldSpec::Q;
        let got = div_trunc(q, &v(q, &[1]), &v(q, &[1, -1, -1]), 8).unwrap();
        assert_eq!(got, v(q, &[1, 1, 2, 3, 5, 8, 13, 21]));
    }

    #[test]
    fn sqrt_squares_back() {
        let f = FieldSpec::F5;
        let t = v(f, &[4, 1, 3, 0, 2, 1]);
        let r = sqrt_unit(f, &t, f.from_i64(2), 6).unwrap();
        assert_eq!(mul_trunc(f, &r, &r, 6), t);
    }
}
