//! Super δ-fractions
//!
//! ```text
//! F = v0 x^k0 / (1 + u1(x) x - v1 x^(k0+k1+δ) / (1 + u2(x) x - v2 x^(k1+k2+δ) / ...))
//! ```
//!
//! with `v_j != 0` and `deg u_{j+1} <= k_j + δ - 2`. Quotient `j` stores
//! `(v_j, k_j, u_{j+1})`: the polynomial kept with a quotient is the one in
//! its own denominator. For `δ = 2` these are Hankel continued fractions and
//! the ladder `(k_j, v_j)` gives every nonzero Hankel determinant.

mod expand;
mod hankel;
mod jfrac;
mod peel;

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::poly::Polynomial;
use crate::series::ops;

pub use expand::{expand_prefix, expand_rational, expand_super_delta, DEFAULT_MAX_DEPTH};
pub use hankel::{hankel_from_hfrac, hankel_ladder, LadderStep};
pub use jfrac::{jfrac_expand, JFraction, JOutcome};
pub use peel::{peel_check, peel_series, PeelRow};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PartialQuotient {
    pub v: FieldElement,
    pub k: usize,
    /// Polynomial in this quotient's denominator `1 + u(x) x`.
    pub u: Polynomial,
}

impl PartialQuotient {
    pub fn new(v: FieldElement, k: usize, u: Polynomial) -> Self {
        PartialQuotient { v, k, u }
    }

    /// `1 + u(x) x`.
    pub fn denominator(&self) -> Polynomial {
        &Polynomial::one(self.u.spec()) + &self.u.mul_x_power(1)
    }
}

/// How the quotient list continues.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Tail {
    /// The remainder after the last quotient is exactly zero.
    Terminated,
    /// Expansion stopped early; the remainder is only known to vanish to
    /// order `remainder_zeros`.
    Truncated { remainder_zeros: usize },
    /// `quotients[m..m+t]` repeats forever.
    Periodic { m: usize, t: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HFraction {
    spec: FieldSpec,
    delta: usize,
    quotients: Vec<PartialQuotient>,
    tail: Tail,
}

impl HFraction {
    pub fn new(spec: FieldSpec, delta: usize, quotients: Vec<PartialQuotient>, tail: Tail) -> Result<Self> {
        if delta == 0 {
            return Err(Error::InvalidInput("delta must be at least 1".into()));
        }
        for (j, q) in quotients.iter().enumerate() {
            if q.v.spec() != spec || q.u.spec() != spec {
                return Err(Error::FieldMismatch {
                    left: spec.to_string(),
                    right: q.v.spec().to_string(),
                });
            }
            if q.v.is_zero() {
                return Err(Error::InvalidInput(format!("quotient {} has v = 0", j)));
            }
            if q.u.degree() > q.k as isize + delta as isize - 2 {
                return Err(Error::InvalidInput(format!(
                    "quotient {}: deg u = {} exceeds k + delta - 2 = {}",
                    j,
                    q.u.degree(),
                    q.k as isize + delta as isize - 2
                )));
            }
        }
        if let Tail::Periodic { m, t } = tail {
            if t == 0 || m + t != quotients.len() {
                return Err(Error::InvalidInput(format!(
                    "periodic tail (m = {}, t = {}) needs exactly m + t = {} quotients and t >= 1",
                    m,
                    t,
                    quotients.len()
                )));
            }
        }
        Ok(HFraction {
            spec,
            delta,
            quotients,
            tail,
        })
    }

    /// The zero series: no quotients.
    pub fn zero(spec: FieldSpec, delta: usize) -> Self {
        HFraction {
            spec,
            delta,
            quotients: Vec::new(),
            tail: Tail::Terminated,
        }
    }

    /// Builds a fraction from the "+" display form used when writing
    /// fractions out by hand:
    ///
    /// ```text
    /// c0 x^e0 / D1 + c1 x^e1 / D2 + ...
    /// ```
    ///
    /// Each term is `(c, e, D)`. Then `v0 = c0`, `k0 = e0`, and for `j >= 1`
    /// `v_j = -c_j`, `k_j = e_j - k_{j-1} - δ`.
    pub fn from_display(
        spec: FieldSpec,
        delta: usize,
        terms: &[(FieldElement, usize, Polynomial)],
        tail: Tail,
    ) -> Result<Self> {
        let mut quotients = Vec::with_capacity(terms.len());
        let mut prev_k = 0usize;
        for (j, (c, e, den)) in terms.iter().enumerate() {
            let (v, k) = if j == 0 {
                (c.clone(), *e)
            } else {
                let k = e.checked_sub(prev_k + delta).ok_or_else(|| {
                    Error::InvalidInput(format!("term {}: exponent {} below k_prev + delta", j, e))
                })?;
                (-c, k)
            };
            if !den.coeff(0).is_one() {
                return Err(Error::InvalidInput(format!("term {}: denominator {} must start with 1", j, den)));
            }
            let u = (den - &Polynomial::one(spec)).div_by_power(1)?;
            quotients.push(PartialQuotient { v, k, u });
            prev_k = k;
        }
        Self::new(spec, delta, quotients, tail)
    }

    /// Terms `(c, e, D)` of the "+" display form; inverse of [`Self::from_display`].
    pub fn display_terms(&self) -> Vec<(FieldElement, usize, Polynomial)> {
        let mut prev_k = 0;
        self.quotients
            .iter()
            .enumerate()
            .map(|(j, q)| {
                let term = if j == 0 {
                    (q.v.clone(), q.k, q.denominator())
                } else {
                    (-&q.v, prev_k + q.k + self.delta, q.denominator())
                };
                prev_k = q.k;
                term
            })
            .collect()
    }

    pub fn spec(&self) -> FieldSpec {
        self.spec
    }

    pub fn delta(&self) -> usize {
        self.delta
    }

    pub fn quotients(&self) -> &[PartialQuotient] {
        &self.quotients
    }

    pub fn tail(&self) -> Tail {
        self.tail
    }

    /// Quotient `j` of the (possibly periodic) expansion.
    pub fn quotient(&self, j: usize) -> Option<&PartialQuotient> {
        if j < self.quotients.len() {
            return self.quotients.get(j);
        }
        match self.tail {
            Tail::Periodic { m, t } => self.quotients.get(m + (j - m) % t),
            _ => None,
        }
    }

    /// The first `n` quotients with any periodic part unrolled (fewer if the
    /// fraction is finite).
    pub fn unrolled(&self, n: usize) -> Vec<PartialQuotient> {
        (0..n).map_while(|j| self.quotient(j).cloned()).collect()
    }

    /// Number of series coefficients fixed by the stored quotients, `None`
    /// when every coefficient is (terminated or periodic fractions).
    pub fn determined_depth(&self) -> Option<usize> {
        match self.tail {
            Tail::Truncated { remainder_zeros } => Some(
                self.quotients.iter().map(|q| 2 * q.k + self.delta).sum::<usize>() + remainder_zeros,
            ),
            _ => None,
        }
    }

    /// Same fraction with the quotient list cut to `n` entries.
    pub fn truncated(&self, n: usize) -> HFraction {
        if n >= self.quotients.len() && !matches!(self.tail, Tail::Periodic { .. }) {
            return self.clone();
        }
        let quotients = self.unrolled(n);
        let tail = match self.quotient(n) {
            Some(q) => Tail::Truncated { remainder_zeros: q.k },
            None => self.tail,
        };
        HFraction {
            spec: self.spec,
            delta: self.delta,
            quotients,
            tail,
        }
    }

    /// First `n` coefficients of the series the fraction defines.
    pub fn eval(&self, n: usize) -> Result<Vec<FieldElement>> {
        let spec = self.spec;
        if let Some(depth) = self.determined_depth() {
            if n > depth {
                return Err(Error::InsufficientDepth(format!(
                    "fraction determines {} coefficients, {} requested",
                    depth, n
                )));
            }
        }
        // Offsets D_j at which level j starts to influence F.
        let mut levels: Vec<(&PartialQuotient, usize)> = Vec::new();
        let mut offset = 0usize;
        let mut j = 0;
        while offset < n {
            match self.quotient(j) {
                Some(q) => {
                    levels.push((q, offset));
                    offset += 2 * q.k + self.delta;
                    j += 1;
                }
                None => break,
            }
        }
        let mut below: Vec<FieldElement> = Vec::new();
        for &(q, off) in levels.iter().rev() {
            let prec = n - off;
            if prec <= q.k {
                below = vec![spec.zero(); prec];
                continue;
            }
            let len = prec - q.k;
            let mut den = vec![spec.zero(); len];
            den[0] = spec.one();
            for (i, c) in q.u.coeffs().iter().enumerate() {
                if i + 1 < len {
                    den[i + 1] = &den[i + 1] + c;
                }
            }
            for (i, c) in below.iter().enumerate() {
                let idx = i + q.k + self.delta;
                if idx < len {
                    den[idx] = &den[idx] - c;
                }
            }
            let inv = ops::inverse(spec, &den, len)?;
            let mut level = vec![spec.zero(); q.k];
            level.extend(inv.iter().map(|c| c * &q.v));
            below = level;
        }
        below.resize(n, spec.zero());
        Ok(below)
    }
}

impl fmt::Display for HFraction {
    /// "+" display form: `1/(1+4*x) + x^2/(1+3*x) + (...)*`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.quotients.is_empty() {
            return write!(f, "0");
        }
        let render = |(c, e, den): &(FieldElement, usize, Polynomial)| {
            let num = Polynomial::monomial(c.clone(), *e);
            format!("({})/({})", num, den)
        };
        let terms = self.display_terms();
        let (head, period) = match self.tail {
            Tail::Periodic { m, .. } => terms.split_at(m),
            _ => (&terms[..], &terms[..0]),
        };
        let mut parts: Vec<String> = head.iter().map(render).collect();
        if !period.is_empty() {
            let inner: Vec<String> = period.iter().map(render).collect();
            parts.push(format!("[{}]*", inner.join(" + ")));
        }
        write!(f, "{}", parts.join(" + "))?;
        match self.tail {
            Tail::Truncated { .. } => write!(f, " + ..."),
            _ => Ok(()),
        }
    }
}
