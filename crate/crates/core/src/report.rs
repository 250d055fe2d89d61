//! Serializable views of fractions, certificates and Hankel sequences.
//!
//! Field elements and polynomials travel as strings in canonical form
//! (`F_p` residues in `[0, p)`, rationals as `a/b` in lowest terms).

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::field::{FieldElement, FieldSpec};
use crate::hfrac::{hankel_ladder, HFraction, PartialQuotient, Tail};
use crate::poly::Polynomial;
use crate::quadfrac::{
    certified_hankel_period, hankel_period_bound, EventuallyPeriodicSeq, PeriodBound, QuadraticExpansion,
    QuadraticTriple,
};

fn strings(v: &[FieldElement]) -> Vec<String> {
    v.iter().map(|c| c.to_string()).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientDto {
    pub v: String,
    pub k: usize,
    /// `u` in the denominator `1 + u x`.
    pub u: String,
    pub denominator: String,
}

impl From<&PartialQuotient> for QuotientDto {
    fn from(q: &PartialQuotient) -> Self {
        QuotientDto {
            v: q.v.to_string(),
            k: q.k,
            u: q.u.to_string(),
            denominator: q.denominator().to_string(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum TailDto {
    Terminated,
    Truncated { remainder_zeros: usize },
    Periodic { m: usize, t: usize },
}

impl From<Tail> for TailDto {
    fn from(t: Tail) -> Self {
        match t {
            Tail::Terminated => TailDto::Terminated,
            Tail::Truncated { remainder_zeros } => TailDto::Truncated { remainder_zeros },
            Tail::Periodic { m, t } => TailDto::Periodic { m, t },
        }
    }
}

impl From<TailDto> for Tail {
    fn from(t: TailDto) -> Self {
        match t {
            TailDto::Terminated => Tail::Terminated,
            TailDto::Truncated { remainder_zeros } => Tail::Truncated { remainder_zeros },
            TailDto::Periodic { m, t } => Tail::Periodic { m, t },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HFractionDto {
    pub field: String,
    pub delta: usize,
    pub quotients: Vec<QuotientDto>,
    pub tail: TailDto,
}

impl From<&HFraction> for HFractionDto {
    fn from(h: &HFraction) -> Self {
        HFractionDto {
            field: h.spec().to_string(),
            delta: h.delta(),
            quotients: h.quotients().iter().map(QuotientDto::from).collect(),
            tail: h.tail().into(),
        }
    }
}

impl HFractionDto {
    /// Rebuilds the fraction; `denominator` is ignored in favour of `u`.
    pub fn to_fraction(&self) -> Result<HFraction> {
        let spec: FieldSpec = self.field.parse()?;
        let quotients = self
            .quotients
            .iter()
            .map(|q| Ok(PartialQuotient::new(spec.parse_element(&q.v)?, q.k, Polynomial::parse(&q.u, spec)?)))
            .collect::<Result<Vec<_>>>()?;
        HFraction::new(spec, self.delta, quotients, self.tail.into())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TripleDto {
    pub a: String,
    pub b: String,
    pub c: String,
    pub delta: usize,
}

impl From<&QuadraticTriple> for TripleDto {
    fn from(t: &QuadraticTriple) -> Self {
        TripleDto {
            a: t.a.to_string(),
            b: t.b.to_string(),
            c: t.c.to_string(),
            delta: t.delta,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SequenceDto {
    pub preperiod: Vec<String>,
    pub period: Vec<String>,
    pub certified: bool,
    pub minimal: bool,
    /// Contracted form such as `1,1,(0)*`.
    pub text: String,
}

impl From<&EventuallyPeriodicSeq> for SequenceDto {
    fn from(s: &EventuallyPeriodicSeq) -> Self {
        SequenceDto {
            preperiod: strings(&s.preperiod),
            period: strings(&s.period),
            certified: s.certified,
            minimal: s.minimal,
            text: s.to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeriodBoundDto {
    pub r: usize,
    pub s_m: usize,
    pub beta: String,
    pub gamma1: String,
    pub gamma2: String,
    pub gamma3: String,
    pub gamma: String,
    pub pi: u64,
    pub bound: u64,
}

impl From<&PeriodBound> for PeriodBoundDto {
    fn from(b: &PeriodBound) -> Self {
        PeriodBoundDto {
            r: b.r,
            s_m: b.s_m,
            beta: b.beta.to_string(),
            gamma1: b.gamma1.to_string(),
            gamma2: b.gamma2.to_string(),
            gamma3: b.gamma3.to_string(),
            gamma: b.gamma.to_string(),
            pi: b.pi,
            bound: b.bound,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateDto {
    pub m: usize,
    pub t: usize,
    pub trace_len: usize,
    pub verified: bool,
}

/// Everything known about the root of one quadratic equation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadraticReport {
    pub field: String,
    pub input: TripleDto,
    pub case: String,
    pub branch: String,
    /// Quotients peeled before the iteration.
    pub peel: Vec<QuotientDto>,
    /// Equation of the remainder the iteration started from.
    pub remainder: Option<TripleDto>,
    pub fraction: HFractionDto,
    pub display: String,
    /// Certificate of the remainder's iteration (indices relative to it).
    pub certificate: Option<CertificateDto>,
    pub period_bound: Option<PeriodBoundDto>,
    pub hankel: Option<SequenceDto>,
}

impl QuadraticReport {
    /// Builds the report, certifying the Hankel sequence when `δ = 2`.
    pub fn build(e: &QuadraticExpansion) -> Result<Self> {
        let certificate = match &e.tail {
            Some(r) => match r.certificate() {
                Some((m, t)) => {
                    r.verify_certificate()?;
                    Some(CertificateDto {
                        m,
                        t,
                        trace_len: r.trace.len(),
                        verified: true,
                    })
                }
                None => None,
            },
            None => None,
        };
        let (period_bound, hankel) = if e.fraction.delta() == 2 {
            let bound = match e.fraction.tail() {
                Tail::Periodic { .. } => Some(PeriodBoundDto::from(&hankel_period_bound(&e.fraction)?)),
                _ => None,
            };
            (bound, Some(SequenceDto::from(&certified_hankel_period(&e.fraction)?)))
        } else {
            (None, None)
        };
        Ok(QuadraticReport {
            field: e.input.spec().to_string(),
            input: (&e.input).into(),
            case: e.case.label().to_string(),
            branch: e.branch.to_string(),
            peel: e.head.iter().map(QuotientDto::from).collect(),
            remainder: e.tail.as_ref().map(|r| (&r.trace[0]).into()),
            fraction: (&e.fraction).into(),
            display: e.fraction.to_string(),
            certificate,
            period_bound,
            hankel,
        })
    }

    /// Plain-text rendering.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let i = &self.input;
        out += &format!("equation: ({}) + ({})F + ({})F^2 = 0 over {}, delta = {}\n", i.a, i.b, i.c, self.field, i.delta);
        out += &format!("case: {} (F(0) selector {})\n", self.case, self.branch);
        if let Some(r) = &self.remainder {
            if !self.peel.is_empty() {
                out += &format!("remainder: ({}) + ({})G + ({})G^2 = 0\n", r.a, r.b, r.c);
            }
        }
        out += &format!("fraction: {}\n", self.display);
        match self.fraction.tail {
            TailDto::Periodic { m, t } => out += &format!("periodic: m = {}, t = {}\n", m, t),
            TailDto::Terminated => out += "terminated\n",
            TailDto::Truncated { .. } => out += "truncated\n",
        }
        let ks: Vec<String> = self.fraction.quotients.iter().map(|q| q.k.to_string()).collect();
        out += &format!("k: {}\n", ks.join(","));
        if let Some(c) = &self.certificate {
            out += &format!("certificate: triple {} repeats at {} (verified)\n", c.m, c.m + c.t);
        }
        if let Some(b) = &self.period_bound {
            out += &format!(
                "period bound: r = {}, beta = {}, gamma1 = {}, gamma2 = {}, gamma3 = {}, gamma = {}, pi = {}, bound = {}\n",
                b.r, b.beta, b.gamma1, b.gamma2, b.gamma3, b.gamma, b.pi, b.bound
            );
        }
        if let Some(h) = &self.hankel {
            out += &format!("hankel: {}\n", h.text);
            out += &format!("hankel period: {}, preperiod: {}\n", h.period.len(), h.preperiod.len());
        }
        out
    }
}

/// One rung `(j, s_j, H_{s_j})` of the determinant ladder.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RungDto {
    pub j: usize,
    pub s: usize,
    pub h: String,
}

/// Expansion of a series with its ladder and Hankel prefix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpansionReport {
    pub source: String,
    pub fraction: HFractionDto,
    pub display: String,
    pub ladder: Vec<RungDto>,
    pub hankel: Vec<String>,
}

impl ExpansionReport {
    /// `hankel` holds `H_0 .. H_{n}` for the largest `n <= n_max` the
    /// fraction determines (empty unless `δ = 2`).
    pub fn build(source: String, h: &HFraction, n_max: usize) -> Result<Self> {
        let (ladder, hankel) = if h.delta() == 2 {
            let limit = match h.tail() {
                Tail::Truncated { remainder_zeros } => {
                    let s_j: usize = h.quotients().iter().map(|q| q.k + 1).sum();
                    n_max.min(s_j + remainder_zeros)
                }
                _ => n_max,
            };
            let ladder = hankel_ladder(h, limit)
                .into_iter()
                .map(|r| RungDto {
                    j: r.j,
                    s: r.s,
                    h: r.h.to_string(),
                })
                .collect();
            (ladder, strings(&crate::hfrac::hankel_from_hfrac(h, limit)?))
        } else {
            (Vec::new(), Vec::new())
        };
        Ok(ExpansionReport {
            source,
            fraction: h.into(),
            display: h.to_string(),
            ladder,
            hankel,
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("series: {}\nfraction: {}\n", self.source, self.display);
        let q = &self.fraction.quotients;
        let join = |f: &dyn Fn(&QuotientDto) -> String| q.iter().map(f).collect::<Vec<_>>().join(",");
        out += &format!("k: {}\n", join(&|q| q.k.to_string()));
        out += &format!("v: {}\n", join(&|q| q.v.clone()));
        if !self.ladder.is_empty() {
            let s: Vec<String> = self.ladder.iter().map(|r| r.s.to_string()).collect();
            out += &format!("s: {}\n", s.join(","));
            out += &format!("hankel: {}\n", self.hankel.join(","));
        }
        out
    }
}
