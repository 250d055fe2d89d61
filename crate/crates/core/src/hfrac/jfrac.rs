//! Classical J-fraction by the Stieltjes recurrence for monic orthogonal
//! polynomials `p_{n+1} = (x - b_n) p_n - λ_n p_{n-1}` with respect to the
//! moment functional `L(x^i) = f_i`.

use crate::error::Result;
use crate::field::FieldElement;
use crate::poly::Polynomial;
use crate::series::SeriesHandle;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum JOutcome {
    /// `max_depth` levels were produced.
    Complete,
    /// The last orthogonal polynomial annihilates every available moment:
    /// the series is rational and the fraction ends.
    Terminated,
    /// `v_index` would be zero: some Hankel determinant vanishes, so no
    /// J-fraction exists past this level.
    Blocked { index: usize },
}

/// `F = v0 / (1 + u1 x - v1 x^2 / (1 + u2 x - ...))`, i.e. a super 2-fraction
/// with every `k_j = 0`. `u[j]` is the constant `u_{j+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JFraction {
    pub v: Vec<FieldElement>,
    pub u: Vec<FieldElement>,
    pub outcome: JOutcome,
}

fn functional(moments: &[FieldElement], p: &Polynomial, shift: usize) -> FieldElement {
    let mut acc = p.spec().zero();
    for (i, c) in p.coeffs().iter().enumerate() {
        acc = &acc + &(c * &moments[i + shift]);
    }
    acc
}

/// Runs the recurrence for up to `max_depth` levels; reads `2 max_depth`
/// coefficients of `f`.
pub fn jfrac_expand(f: &SeriesHandle, max_depth: usize) -> Result<JFraction> {
    let spec = f.spec();
    let mu = f.prefix(2 * max_depth + 1)?;
    let mut v = Vec::new();
    let mut u = Vec::new();
    if max_depth == 0 {
        return Ok(JFraction {
            v,
            u,
            outcome: JOutcome::Complete,
        });
    }
    let x = Polynomial::monomial(spec.one(), 1);
    let mut prev = Polynomial::zero(spec);
    let mut cur = Polynomial::one(spec);
    let mut norm_prev = spec.one();
    for n in 0..max_depth {
        // L(p_n^2) = L(x^n p_n) by orthogonality.
        let norm = functional(&mu, &cur, n);
        if norm.is_zero() {
            let annihilated = (0..=2 * max_depth - n).all(|i| functional(&mu, &cur, i).is_zero());
            let outcome = if annihilated {
                JOutcome::Terminated
            } else {
                JOutcome::Blocked { index: n }
            };
            return Ok(JFraction { v, u, outcome });
        }
        let lambda = if n == 0 { norm.clone() } else { &norm / &norm_prev };
        v.push(lambda.clone());
        let b = &functional(&mu, &(&cur * &cur), 1) / &norm;
        u.push(-&b);
        let next = &(&(&x * &cur) - &cur.scale(&b)) - &prev.scale(&if n == 0 { spec.zero() } else { lambda });
        prev = cur;
        cur = next;
        norm_prev = norm;
    }
    Ok(JFraction {
        v,
        u,
        outcome: JOutcome::Complete,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;

    #[test]
    fn geometric_series_terminates() {
        let q = FieldSpec::Q;
        let s = SeriesHandle::rational(Polynomial::one(q), Polynomial::from_i64s(q, &[1, -1])).unwrap();
        let j = jfrac_expand(&s, 5).unwrap();
        assert_eq!(j.v, vec![q.one()]);
        assert_eq!(j.u, vec![-q.one()]);
        assert_eq!(j.outcome, JOutcome::Terminated);
    }

    #[test]
    fn catalan_is_all_ones() {
        // C(x) = 1 / (1 - x - x^2 / (1 - 2x - x^2 / (1 - 2x - ...)))
        let q = FieldSpec::Q;
        let cat = [1i64, 1, 2, 5, 14, 42, 132, 429, 1430, 4862, 16796, 58786, 208012];
        let s = SeriesHandle::explicit(q, cat.iter().map(|&c| q.from_i64(c)).collect()).unwrap();
        let j = jfrac_expand(&s, 6).unwrap();
        assert_eq!(j.outcome, JOutcome::Complete);
        assert!(j.v.iter().all(|c| c.is_one()));
        let want: Vec<_> = [-1i64, -2, -2, -2, -2, -2].iter().map(|&c| q.from_i64(c)).collect();
        assert_eq!(j.u, want);
    }

    #[test]
    fn zero_moment_blocks_immediately() {
        let q = FieldSpec::Q;
        let s = SeriesHandle::polynomial(Polynomial::from_i64s(q, &[0, 1]));
        assert_eq!(jfrac_expand(&s, 3).unwrap().outcome, JOutcome::Blocked { index: 0 });
        let zero = SeriesHandle::polynomial(Polynomial::zero(q));
        assert_eq!(jfrac_expand(&zero, 3).unwrap().outcome, JOutcome::Terminated);
    }
}
