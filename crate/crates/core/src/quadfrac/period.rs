//! Ultimate periodicity of the Hankel sequence of a periodic fraction.

use std::fmt;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::hfrac::{hankel_from_hfrac, HFraction, Tail};
use crate::series::SeriesHandle;

/// Quantities behind the a-priori period of `H(F)` for a fraction with
/// periodic tail `(m, t)` over `F_p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodBound {
    /// Ladder advance over one period, `s_{m+t} - s_m`.
    pub r: usize,
    /// `s_m`, where periodicity of `H` is guaranteed to start.
    pub s_m: usize,
    /// `v_m ... v_{m+t-1}`.
    pub beta: FieldElement,
    pub gamma1: FieldElement,
    pub gamma2: FieldElement,
    pub gamma3: FieldElement,
    pub gamma: FieldElement,
    /// Least `π` with `β^π = γ^(2π) = 1`.
    pub pi: u64,
    /// `2 π r`, or `r` when `p = 2`.
    pub bound: u64,
}

fn ladder_positions(h: &HFraction, n: usize) -> Vec<usize> {
    let mut s = vec![0usize];
    for j in 0..n {
        let k = h.quotient(j).expect("periodic fraction is infinite").k;
        s.push(s[j] + k + 1);
    }
    s
}

/// The a-priori period bound for `H(F)`; `H` is periodic from `s_m` on with
/// period dividing `bound`.
pub fn hankel_period_bound(h: &HFraction) -> Result<PeriodBound> {
    let Tail::Periodic { m, t } = h.tail() else {
        return Err(Error::InvalidInput("period bound needs a periodic tail".into()));
    };
    let spec = h.spec();
    let p = spec
        .modulus()
        .ok_or_else(|| Error::Unsupported("period bound needs a prime field".into()))?;
    let s = ladder_positions(h, m + t);
    let s_m = s[m];
    let r = s[m + t] - s_m;
    let q = h.quotients();
    let mut beta = spec.one();
    let mut gamma1 = spec.one();
    let mut gamma2 = spec.one();
    for i in m..m + t {
        beta = &beta * &q[i].v;
        if (q[i].k * (q[i].k + 1) / 2) % 2 == 1 {
            gamma1 = -gamma1;
        }
        gamma2 = &gamma2 * &q[i].v.pow(s_m as i64 - s[i] as i64)?;
    }
    let gamma3 = q[..m].iter().fold(spec.one(), |acc, qi| &acc * &qi.v);
    let gamma = &(&(&gamma1 * &gamma3.pow(r as i64)?) * &gamma2) * &beta.pow(r as i64 - s_m as i64)?;
    let pi = beta.multiplicative_order()?.lcm(&(&gamma * &gamma).multiplicative_order()?);
    let bound = if p == 2 { r as u64 } else { 2 * pi * r as u64 };
    Ok(PeriodBound {
        r,
        s_m,
        beta,
        gamma1,
        gamma2,
        gamma3,
        gamma,
        pi,
        bound,
    })
}

/// `(preperiod)(period)*`; an empty period never occurs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EventuallyPeriodicSeq {
    pub preperiod: Vec<FieldElement>,
    pub period: Vec<FieldElement>,
    /// Backed by a proof rather than by inspection of a prefix.
    pub certified: bool,
    /// No shorter preperiod or period describes the same sequence.
    pub minimal: bool,
}

impl EventuallyPeriodicSeq {
    pub fn get(&self, n: usize) -> &FieldElement {
        if n < self.preperiod.len() {
            &self.preperiod[n]
        } else {
            &self.period[(n - self.preperiod.len()) % self.period.len()]
        }
    }

    pub fn prefix(&self, n: usize) -> Vec<FieldElement> {
        (0..n).map(|i| self.get(i).clone()).collect()
    }
}

impl fmt::Display for EventuallyPeriodicSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for x in &self.preperiod {
            write!(f, "{},", x)?;
        }
        let body: Vec<String> = self.period.iter().map(|x| x.to_string()).collect();
        write!(f, "({})*", body.join(","))
    }
}

/// Lexicographically least `(pre, per)` with `pre <= max_pre` and `per`
/// dividing `period_bound` such that `prefix[i] = prefix[i + per]` for
/// every `i >= pre` inside the prefix.
///
/// Needs at least `max_pre + period_bound + 1` terms so that every
/// candidate is compared over a full bound-length window.
pub fn detect_eventual_period(
    prefix: &[FieldElement],
    max_pre: usize,
    period_bound: usize,
) -> Result<Option<(usize, usize)>> {
    if period_bound == 0 {
        return Err(Error::InvalidInput("period bound must be positive".into()));
    }
    let need = max_pre + period_bound + 1;
    if prefix.len() < need {
        return Err(Error::InsufficientData {
            requested: need,
            available: prefix.len(),
        });
    }
    let periods: Vec<usize> = (1..=period_bound).filter(|d| period_bound % d == 0).collect();
    for pre in 0..=max_pre {
        for &per in &periods {
            if (pre..prefix.len() - per).all(|i| prefix[i] == prefix[i + per]) {
                return Ok(Some((pre, per)));
            }
        }
    }
    Ok(None)
}

/// `H(F)` as a certified, minimal eventually periodic sequence.
///
/// Periodic tails use [`hankel_period_bound`]; terminated ones end in zeros
/// after the last ladder rung, which is double-checked against the
/// determinant of the evaluated series.
pub fn certified_hankel_period(h: &HFraction) -> Result<EventuallyPeriodicSeq> {
    match h.tail() {
        Tail::Truncated { .. } => Err(Error::InvalidInput(
            "a truncated fraction does not determine the whole Hankel sequence".into(),
        )),
        Tail::Terminated => {
            let s_last: usize = h.quotients().iter().map(|q| q.k + 1).sum();
            let guard = s_last + 10;
            let values = hankel_from_hfrac(h, guard)?;
            let coeffs = h.eval(2 * guard)?;
            let series = SeriesHandle::explicit(h.spec(), coeffs)?;
            let oracle = crate::oracle::hankel_sequence_bruteforce(&series, guard)?;
            if oracle != values {
                return Err(Error::Invariant("terminated fraction disagrees with its determinants".into()));
            }
            Ok(EventuallyPeriodicSeq {
                preperiod: values[..=s_last].to_vec(),
                period: vec![h.spec().zero()],
                certified: true,
                minimal: true,
            })
        }
        Tail::Periodic { .. } => {
            let b = hankel_period_bound(h)?;
            let bound = usize::try_from(b.bound).map_err(|_| Error::Invariant("period bound overflow".into()))?;
            let values = hankel_from_hfrac(h, b.s_m + 2 * bound)?;
            let (pre, per) = detect_eventual_period(&values, b.s_m, bound)?.ok_or_else(|| {
                Error::Invariant(format!("no period dividing {} from index {}", bound, b.s_m))
            })?;
            Ok(EventuallyPeriodicSeq {
                preperiod: values[..pre].to_vec(),
                period: values[pre..pre + per].to_vec(),
                certified: true,
                minimal: true,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::hfrac::PartialQuotient;
    use crate::poly::Polynomial;

    fn els(spec: crate::field::FieldSpec, xs: &[i64]) -> Vec<FieldElement> {
        xs.iter().map(|&x| spec.from_i64(x)).collect()
    }

    #[test]
    fn detect_small_cases() {
        let q = FieldSpec::Q;
        assert_eq!(detect_eventual_period(&els(q, &[1, 3, 0, 3, 0, 3, 0]), 4, 2).unwrap(), Some((1, 2)));
        assert_eq!(detect_eventual_period(&els(q, &[5; 9]), 3, 4).unwrap(), Some((0, 1)));
        let f2 = FieldSpec::F2;
        let h = els(f2, &[1, 1, 1, 0, 0, 1, 0, 0, 1, 1, 1]);
        assert_eq!(detect_eventual_period(&h, 0, 10).unwrap(), Some((0, 10)));
        assert!(detect_eventual_period(&h, 1, 10).is_err());
        assert_eq!(detect_eventual_period(&els(q, &[1, 2, 3, 4]), 0, 3).unwrap(), None);
    }

    #[test]
    fn trivial_bound() {
        let f = FieldSpec::F5;
        let q = PartialQuotient::new(f.one(), 0, Polynomial::zero(f));
        let h = HFraction::new(f, 2, vec![q], Tail::Periodic { m: 0, t: 1 }).unwrap();
        let b = hankel_period_bound(&h).unwrap();
        assert_eq!((b.beta.clone(), b.gamma.clone(), b.pi, b.r), (f.one(), f.one(), 1, 1));
        let seq = certified_hankel_period(&h).unwrap();
        assert_eq!(seq.to_string(), "(1)*");
    }

    #[test]
    fn zero_series() {
        let h = HFraction::zero(FieldSpec::F3, 2);
        assert_eq!(certified_hankel_period(&h).unwrap().to_string(), "1,(0)*");
    }

    #[test]
    fn display_forms() {
        let f = FieldSpec::F3;
        let s = EventuallyPeriodicSeq {
            preperiod: els(f, &[1, 1, 1]),
            period: els(f, &[0]),
            certified: false,
            minimal: true,
        };
        assert_eq!(s.to_string(), "1,1,1,(0)*");
        assert_eq!(s.prefix(5), els(f, &[1, 1, 1, 0, 0]));
    }
}
