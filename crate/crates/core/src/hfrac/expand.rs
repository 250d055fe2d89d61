use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::poly::Polynomial;
use crate::series::{ops, SeriesHandle};

use super::{HFraction, PartialQuotient, Tail};

/// Coefficient budget used by [`expand_super_delta`] for sources that are
/// neither rational nor explicit.
pub const DEFAULT_MAX_DEPTH: usize = 2048;

/// Expands a known prefix. Each quotient with shift `k` consumes `2k + δ`
/// coefficients; the tail records how far the leftover remainder is known
/// to vanish.
pub fn expand_prefix(spec: FieldSpec, prefix: &[FieldElement], delta: usize, max_quotients: usize) -> Result<HFraction> {
    if delta == 0 {
        return Err(Error::InvalidInput("delta must be at least 1".into()));
    }
    let mut f = prefix.to_vec();
    let mut quotients = Vec::new();
    let remainder_zeros = loop {
        let k = match ops::valuation(&f) {
            None => break f.len(),
            Some(k) => k,
        };
        if quotients.len() == max_quotients || f.len() < 2 * k + delta {
            break k;
        }
        let v = f[k].clone();
        let scale = v.inv()?;
        let g: Vec<FieldElement> = f[k..].iter().map(|c| c * &scale).collect();
        let r = ops::inverse(spec, &g, g.len())?;
        let cut = k + delta;
        let u = Polynomial::from_coeffs(spec, r[1..cut].to_vec());
        f = r[cut..].iter().map(|c| -c).collect();
        quotients.push(PartialQuotient { v, k, u });
    };
    HFraction::new(spec, delta, quotients, Tail::Truncated { remainder_zeros })
}

/// Exact expansion of `num / den`; the result terminates unless
/// `max_quotients` is reached first.
pub fn expand_rational(num: &Polynomial, den: &Polynomial, delta: usize, max_quotients: usize) -> Result<HFraction> {
    if delta == 0 {
        return Err(Error::InvalidInput("delta must be at least 1".into()));
    }
    let spec = num.spec();
    let (mut p, mut q) = (num.clone(), den.clone());
    if q.coeff(0).is_zero() {
        return Err(Error::InvalidInput(format!("denominator {} vanishes at 0", q)));
    }
    let mut quotients = Vec::new();
    loop {
        let k = match p.valuation() {
            None => return HFraction::new(spec, delta, quotients, Tail::Terminated),
            Some(k) => k,
        };
        if quotients.len() == max_quotients {
            return HFraction::new(spec, delta, quotients, Tail::Truncated { remainder_zeros: k });
        }
        // v x^k / (P/Q) = v Q / Pt with Pt = P / x^k; its first k + δ terms
        // are 1 + u x, the rest is -x^(k+δ) F1.
        let pt = p.div_by_power(k)?;
        let v = &p.coeff(k) / &q.coeff(0);
        let vq = q.scale(&v);
        let cut = k + delta;
        let d = Polynomial::from_coeffs(spec, ops::div_trunc(spec, vq.coeffs(), pt.coeffs(), cut)?);
        let next_p = (&(&d * &pt) - &vq)
            .div_by_power(cut)
            .map_err(|e| Error::Invariant(format!("rational expansion: {}", e)))?;
        let u = (&d - &Polynomial::one(spec))
            .div_by_power(1)
            .map_err(|e| Error::Invariant(format!("rational expansion: {}", e)))?;
        quotients.push(PartialQuotient { v, k, u });
        p = next_p;
        q = pt;
    }
}

/// Super δ-fraction expansion of a series.
///
/// Rational sources are expanded exactly. Explicit prefixes are expanded as
/// far as their data reaches. Other sources are pulled with a doubling
/// prefix length until `max_quotients` quotients appear or `max_depth`
/// coefficients have been used.
pub fn expand_super_delta(f: &SeriesHandle, delta: usize, max_quotients: usize, max_depth: usize) -> Result<HFraction> {
    if let Some((num, den)) = f.as_rational() {
        return expand_rational(num, den, delta, max_quotients);
    }
    if let Some(n) = f.declared_len() {
        return expand_prefix(f.spec(), &f.prefix(n)?, delta, max_quotients);
    }
    let mut len = 32.min(max_depth);
    loop {
        let h = expand_prefix(f.spec(), &f.prefix(len)?, delta, max_quotients)?;
        if h.quotients().len() >= max_quotients || len >= max_depth {
            return Ok(h);
        }
        len = (2 * len).min(max_depth);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ints(spec: FieldSpec, c: &[i64]) -> Vec<FieldElement> {
        c.iter().map(|&x| spec.from_i64(x)).collect()
    }

    #[test]
    fn geometric_series_terminates() {
        let q = FieldSpec::Q;
        let h = expand_rational(&Polynomial::one(q), &Polynomial::from_i64s(q, &[1, -1]), 2, 10).unwrap();
        assert_eq!(h.tail(), Tail::Terminated);
        assert_eq!(h.quotients().len(), 1);
        let q0 = &h.quotients()[0];
        assert_eq!((q0.v.clone(), q0.k), (q.one(), 0));
        assert_eq!(q0.u, Polynomial::from_i64s(q, &[-1]));
    }

    #[test]
    fn zero_series_is_empty() {
        let q = FieldSpec::Q;
        let h = expand_rational(&Polynomial::zero(q), &Polynomial::one(q), 2, 10).unwrap();
        assert!(h.quotients().is_empty());
        assert_eq!(h.tail(), Tail::Terminated);
        let h = expand_prefix(q, &ints(q, &[0, 0, 0]), 2, 10).unwrap();
        assert_eq!(h.tail(), Tail::Truncated { remainder_zeros: 3 });
    }

    #[test]
    fn prefix_and_rational_routes_agree() {
        let f = FieldSpec::F3;
        let num = Polynomial::from_i64s(f, &[0, 1, 2, 0, 1]);
        let den = Polynomial::from_i64s(f, &[1, 2, 0, 1, 1, 2]);
        let exact = expand_rational(&num, &den, 2, 100).unwrap();
        let s = SeriesHandle::rational(num, den).unwrap();
        let approx = expand_prefix(f, &s.prefix(40).unwrap(), 2, 100).unwrap();
        assert_eq!(exact.tail(), Tail::Terminated);
        assert_eq!(approx.quotients(), exact.quotients());
    }

    #[test]
    fn depth_accounting_is_honest() {
        let f = FieldSpec::F2;
        let prefix = ints(f, &[1, 1, 0, 1, 1, 0, 0, 1, 1, 1, 0, 0, 1, 0, 0, 1]);
        let h = expand_prefix(f, &prefix, 2, 100).unwrap();
        let depth = h.determined_depth().unwrap();
        assert!(depth <= prefix.len());
        assert_eq!(h.eval(depth).unwrap(), prefix[..depth].to_vec());
    }

    fn series(p: u64) -> impl Strategy<Value = (u64, Vec<i64>)> {
        proptest::collection::vec(0..p as i64, 0..50).prop_map(move |c| (p, c))
    }

    proptest! {
        #[test]
        fn round_trip(
            (p, c) in prop_oneof![series(2), series(3), series(5)],
            delta in 1usize..3,
        ) {
            let spec = FieldSpec::prime(p).unwrap();
            let mut c = c;
            c.resize(50, 0);
            let prefix = ints(spec, &c);
            let h = expand_prefix(spec, &prefix, delta, 1000).unwrap();
            let depth = h.determined_depth().unwrap();
            prop_assert!(depth <= 50);
            let back = h.eval(depth).unwrap();
            prop_assert_eq!(&back[..], &prefix[..depth]);
            let again = expand_prefix(spec, &back, delta, 1000).unwrap();
            prop_assert_eq!(again, h);
        }
    }
}
