//! Hankel continued fractions of roots of `A + B F + C F^2 = 0` over `F_p`.
//!
//! [`next_abc`] peels one quotient off the root and rewrites the equation
//! for the remainder; [`hfrac_quadratic`] iterates it until the triple
//! `(A, B, C)` vanishes or repeats. A repeat is a certificate that the
//! fraction is ultimately periodic. [`expand_quadratic_equation`] brings the
//! other admissible equation shapes into that form by peeling one head
//! quotient by hand.

mod period;

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::hfrac::{expand_rational, HFraction, PartialQuotient, Tail};
use crate::poly::Polynomial;
use crate::series::{ops, solve_quadratic, SeriesHandle};

pub use period::{
    certified_hankel_period, detect_eventual_period, hankel_period_bound, EventuallyPeriodicSeq, PeriodBound,
};

/// Coefficients of `A + B F + C F^2 = 0` and the fraction parameter δ.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadraticTriple {
    pub a: Polynomial,
    pub b: Polynomial,
    pub c: Polynomial,
    pub delta: usize,
}

impl QuadraticTriple {
    pub fn new(a: Polynomial, b: Polynomial, c: Polynomial, delta: usize) -> Result<Self> {
        let spec = a.spec();
        for p in [&b, &c] {
            if p.spec() != spec {
                return Err(Error::FieldMismatch {
                    left: spec.to_string(),
                    right: p.spec().to_string(),
                });
            }
        }
        if delta == 0 {
            return Err(Error::InvalidInput("delta must be at least 1".into()));
        }
        Ok(QuadraticTriple { a, b, c, delta })
    }

    pub fn parse(spec: FieldSpec, a: &str, b: &str, c: &str, delta: usize) -> Result<Self> {
        Self::new(
            Polynomial::parse(a, spec)?,
            Polynomial::parse(b, spec)?,
            Polynomial::parse(c, spec)?,
            delta,
        )
    }

    pub fn spec(&self) -> FieldSpec {
        self.a.spec()
    }

    /// `B(0) = 1`, `C(0) = 0`, `C != 0`.
    pub fn is_canonical(&self) -> bool {
        self.b.coeff(0).is_one() && self.c.coeff(0).is_zero() && !self.c.is_zero()
    }

    /// Degree measure that never increases along [`next_abc`]:
    /// `max(deg A + max(δ, 2) - 2, deg B - 1, deg C - δ)`.
    pub fn degree_measure(&self) -> isize {
        let delta = self.delta as isize;
        (self.a.degree() + delta.max(2) - 2)
            .max(self.b.degree() - 1)
            .max(self.c.degree() - delta)
    }

    fn scaled(&self, s: &FieldElement) -> QuadraticTriple {
        QuadraticTriple {
            a: self.a.scale(s),
            b: self.b.scale(s),
            c: self.c.scale(s),
            delta: self.delta,
        }
    }
}

impl fmt::Display for QuadraticTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) + ({})F + ({})F^2 = 0", self.a, self.b, self.c)
    }
}

/// One [`next_abc`] step: `F = -A_k x^k / (D - x^(k+δ) G)` where `G` solves `next`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NextStepResult {
    pub next: QuadraticTriple,
    pub k: usize,
    pub a_k: FieldElement,
    pub d: Polynomial,
}

impl NextStepResult {
    /// The quotient `(v, k, u)` with `v = -A_k` and `1 + u x = D`.
    pub fn quotient(&self) -> PartialQuotient {
        let u = (&self.d - &Polynomial::one(self.d.spec()))
            .div_by_power(1)
            .expect("D(0) = 1");
        PartialQuotient::new(-&self.a_k, self.k, u)
    }
}

fn exact(p: Polynomial, m: usize, what: &str) -> Result<Polynomial> {
    p.div_by_power(m)
        .map_err(|e| Error::Invariant(format!("{}: {}", what, e)))
}

/// One step on a triple with `B(0) = 1` and `A != 0`, following the root
/// with `F(0) = -A(0)`. Also valid for `C(0) != 0` when `A(0) = 0`.
fn step(t: &QuadraticTriple) -> Result<NextStepResult> {
    let spec = t.spec();
    let delta = t.delta;
    let k = t
        .a
        .valuation()
        .ok_or_else(|| Error::InvalidInput("A must be nonzero".into()))?;
    let a_k = t.a.coeff(k);
    let f0 = -t.a.coeff(0);
    let f = solve_quadratic(&t.a, &t.b, &t.c, &f0, 2 * k + delta)?;
    let shifted = &f[k..];
    if shifted[0] != -&a_k {
        return Err(Error::Invariant(format!(
            "root does not start with -A_k x^k (got {} at x^{})",
            shifted[0], k
        )));
    }
    let minus_ak = vec![-&a_k];
    let d = Polynomial::from_coeffs(spec, ops::div_trunc(spec, &minus_ak, shifted, k + delta)?);
    let inv_ak = a_k.inv()?;
    let xk = Polynomial::monomial(spec.one(), k);
    let d2 = &d * &d;
    let a_star = {
        let t1 = (&d2 * &t.a).scale(&-&inv_ak);
        let t2 = &(&t.b * &d) * &xk;
        let t3 = t.c.scale(&a_k).mul_x_power(2 * k);
        exact(&(&t1 + &t2) - &t3, 2 * k + delta, "A*")?
    };
    let b_star = {
        let ad = exact((&t.a * &d).scale(&(&inv_ak + &inv_ak)), k, "B*")?;
        &ad - &t.b
    };
    let c_star = t.a.scale(&-&inv_ak).mul_x_power(delta);
    Ok(NextStepResult {
        next: QuadraticTriple {
            a: a_star,
            b: b_star,
            c: c_star,
            delta,
        },
        k,
        a_k,
        d,
    })
}

/// One quotient of the root of a canonical triple.
///
/// Requires `B(0) = 1`, `C(0) = 0`, `C != 0` and `A != 0`; the returned
/// triple is canonical again.
pub fn next_abc(t: &QuadraticTriple) -> Result<NextStepResult> {
    if !t.is_canonical() {
        return Err(Error::InvalidInput(format!(
            "triple must satisfy B(0) = 1, C(0) = 0, C != 0: {}",
            t
        )));
    }
    if t.a.is_zero() {
        return Err(Error::InvalidInput("A must be nonzero".into()));
    }
    step(t)
}

/// Output of [`hfrac_quadratic`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodicHFracResult {
    /// Terminated or periodic.
    pub fraction: HFraction,
    /// Triples visited; `trace[j]` is the equation of the remainder after
    /// `j` quotients. For a periodic tail `trace[m] == trace[m + t]`.
    pub trace: Vec<QuadraticTriple>,
}

impl PeriodicHFracResult {
    /// `(m, t)` of a periodic result.
    pub fn certificate(&self) -> Option<(usize, usize)> {
        match self.fraction.tail() {
            Tail::Periodic { m, t } => Some((m, t)),
            _ => None,
        }
    }

    /// Replays `t` steps from `trace[m]` and checks that they reproduce
    /// `trace[m..=m+t]` and the periodic quotients.
    pub fn verify_certificate(&self) -> Result<()> {
        let Some((m, t)) = self.certificate() else {
            return match self.trace.last() {
                Some(last) if last.a.is_zero() => Ok(()),
                _ => Err(Error::Invariant("terminated trace does not end with A = 0".into())),
            };
        };
        let mut cur = self.trace[m].clone();
        for i in 0..t {
            let s = next_abc(&cur)?;
            if s.quotient() != self.fraction.quotients()[m + i] {
                return Err(Error::Invariant(format!("quotient {} differs on replay", m + i)));
            }
            cur = s.next;
            if cur != self.trace[m + i + 1] {
                return Err(Error::Invariant(format!("triple {} differs on replay", m + i + 1)));
            }
        }
        if cur != self.trace[m] {
            return Err(Error::Invariant("replayed period does not close".into()));
        }
        Ok(())
    }
}

fn iteration_cap(p: u32, d: isize) -> u64 {
    let e = 3 * (d.max(0) as u32 + 3);
    (p as u64).checked_pow(e).map_or(u64::MAX, |x| x.saturating_add(1))
}

/// Iterates [`next_abc`] until `A = 0` (terminated) or a triple repeats
/// (periodic). Every step checks that the degree measure does not grow.
pub fn hfrac_quadratic(t: &QuadraticTriple) -> Result<PeriodicHFracResult> {
    let spec = t.spec();
    let p = spec
        .modulus()
        .ok_or_else(|| Error::Unsupported("periodicity needs a prime field".into()))?;
    if !t.is_canonical() {
        return Err(Error::InvalidInput(format!(
            "triple must satisfy B(0) = 1, C(0) = 0, C != 0: {}",
            t
        )));
    }
    let cap = iteration_cap(p, t.degree_measure());
    let mut seen: HashMap<QuadraticTriple, usize> = HashMap::new();
    let mut trace = vec![t.clone()];
    let mut quotients = Vec::new();
    seen.insert(t.clone(), 0);
    loop {
        let cur = trace.last().expect("nonempty trace");
        if cur.a.is_zero() {
            let fraction = HFraction::new(spec, t.delta, quotients, Tail::Terminated)?;
            return Ok(PeriodicHFracResult { fraction, trace });
        }
        if quotients.len() as u64 >= cap {
            return Err(Error::Invariant(format!("no repetition within {} steps", cap)));
        }
        let s = next_abc(cur)?;
        let (before, after) = (cur.degree_measure(), s.next.degree_measure());
        if after > before {
            return Err(Error::Invariant(format!(
                "degree measure grew from {} to {} at step {}",
                before,
                after,
                quotients.len()
            )));
        }
        quotients.push(s.quotient());
        let j = trace.len();
        if let Some(&i) = seen.get(&s.next) {
            trace.push(s.next);
            quotients.truncate(j);
            let fraction = HFraction::new(spec, t.delta, quotients, Tail::Periodic { m: i, t: j - i })?;
            return Ok(PeriodicHFracResult { fraction, trace });
        }
        seen.insert(s.next.clone(), j);
        trace.push(s.next);
    }
}

/// Which equation shape was recognized.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuadraticCase {
    /// `B(0) = 1, C(0) = 0, C != 0`.
    Canonical,
    /// `C = 0`: `F = -A/B`.
    Linear,
    /// `B(0) = 1, C(0) != 0`, root with `F(0) = 0`.
    VanishingRoot,
    /// `B(0) = 1, C(0) != 0`, root with `F(0) = -1/C(0)`.
    UnitRoot,
    /// `B = 0, C(0) != 0`: `F = sqrt(-A/C)`.
    SquareRoot,
}

impl QuadraticCase {
    pub fn label(&self) -> &'static str {
        match self {
            QuadraticCase::Canonical => "canonical",
            QuadraticCase::Linear => "linear",
            QuadraticCase::VanishingRoot => "vanishing-root",
            QuadraticCase::UnitRoot => "unit-root",
            QuadraticCase::SquareRoot => "square-root",
        }
    }
}

/// Full expansion of a root: hand-peeled head quotients followed by the
/// periodic or terminated expansion of the remainder.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticExpansion {
    pub case: QuadraticCase,
    /// The equation as given.
    pub input: QuadraticTriple,
    /// Root selector: `F(0)` for the unit/vanishing root cases, the leading
    /// coefficient `a` of `F = a x^k + ...` for square roots.
    pub branch: FieldElement,
    /// Quotients peeled before the canonical iteration.
    pub head: Vec<PartialQuotient>,
    /// Iteration on the remainder's equation, if one was run.
    pub tail: Option<PeriodicHFracResult>,
    /// `head` followed by the remainder's quotients.
    pub fraction: HFraction,
}

impl QuadraticExpansion {
    /// The root as a series, for cross-checks.
    pub fn series(&self) -> Result<SeriesHandle> {
        let t = &self.input;
        match self.case {
            QuadraticCase::SquareRoot => {
                let inner = SeriesHandle::rational(-&t.a, t.c.clone())?;
                inner.sqrt_with_root(self.branch.clone())
            }
            _ => {
                let f0 = if self.case == QuadraticCase::Linear {
                    &-&t.a.coeff(0) / &t.b.coeff(0)
                } else {
                    self.branch.clone()
                };
                SeriesHandle::quadratic_root(t.a.clone(), t.b.clone(), t.c.clone(), f0)
            }
        }
    }
}

fn join(spec: FieldSpec, delta: usize, head: Vec<PartialQuotient>, tail: &HFraction) -> Result<HFraction> {
    let shift = head.len();
    let mut quotients = head;
    quotients.extend(tail.quotients().iter().cloned());
    let t = match tail.tail() {
        Tail::Periodic { m, t } => Tail::Periodic { m: m + shift, t },
        other => other,
    };
    HFraction::new(spec, delta, quotients, t)
}

fn with_head(
    case: QuadraticCase,
    input: &QuadraticTriple,
    branch: FieldElement,
    head: Vec<PartialQuotient>,
    rest: &QuadraticTriple,
) -> Result<QuadraticExpansion> {
    let spec = input.spec();
    let tail = hfrac_quadratic(rest)?;
    let fraction = join(spec, input.delta, head.clone(), &tail.fraction)?;
    Ok(QuadraticExpansion {
        case,
        input: input.clone(),
        branch,
        head,
        tail: Some(tail),
        fraction,
    })
}

/// Expands the root of `A + B F + C F^2 = 0` over `F_p`.
///
/// After scaling so that `B(0) = 1` (or `C(0) = 1` when `B = 0`), one of
/// these shapes must hold:
///
/// * `C(0) = 0, C != 0`: iterated directly;
/// * `C = 0`: `F = -A/B`, expanded exactly;
/// * `C(0) != 0, A(0) = 0`: two roots, `F(0) = 0` or `F(0) = -1/C(0)`,
///   chosen by `branch` (required);
/// * `B = 0`, `A = -a^2 x^(2k) + ...`, `p != 2`: `F = a x^k + ...`;
///   `branch` picks `a` and defaults to the smaller residue.
///
/// In the last two shapes one quotient is peeled by hand first.
pub fn expand_quadratic_equation(t: &QuadraticTriple, branch: Option<FieldElement>) -> Result<QuadraticExpansion> {
    let spec = t.spec();
    let p = spec
        .modulus()
        .ok_or_else(|| Error::Unsupported("quadratic expansion needs a prime field".into()))?;
    if let Some(b) = &branch {
        if b.spec() != spec {
            return Err(Error::FieldMismatch {
                left: spec.to_string(),
                right: b.spec().to_string(),
            });
        }
    }
    let delta = t.delta;
    if t.b.is_zero() {
        return square_root_case(t, branch, p);
    }
    let b0 = t.b.coeff(0);
    if b0.is_zero() {
        return Err(Error::Unsupported(format!("B(0) = 0 with B != 0 is not handled: {}", t)));
    }
    let n = t.scaled(&b0.inv()?);
    let c0 = n.c.coeff(0);

    if n.c.is_zero() {
        let f0 = -n.a.coeff(0);
        check_branch(&branch, &f0)?;
        let fraction = expand_rational(&-&n.a, &n.b, delta, usize::MAX)?;
        return Ok(QuadraticExpansion {
            case: QuadraticCase::Linear,
            input: t.clone(),
            branch: f0,
            head: Vec::new(),
            tail: None,
            fraction,
        });
    }
    if c0.is_zero() {
        let f0 = -n.a.coeff(0);
        check_branch(&branch, &f0)?;
        let tail = hfrac_quadratic(&n)?;
        return Ok(QuadraticExpansion {
            case: QuadraticCase::Canonical,
            input: t.clone(),
            branch: f0,
            head: Vec::new(),
            fraction: tail.fraction.clone(),
            tail: Some(tail),
        });
    }
    if !n.a.coeff(0).is_zero() {
        return Err(Error::Unsupported(format!(
            "C(0) != 0 needs A(0) = 0: {}",
            t
        )));
    }
    let unit = -&c0.inv()?;
    let f0 = branch.ok_or_else(|| {
        Error::InvalidBranch(format!("C(0) != 0: choose F(0) = 0 or F(0) = {}", unit))
    })?;
    if f0.is_zero() {
        vanishing_root(t, &n)
    } else if f0 == unit {
        unit_root(t, &n, unit)
    } else {
        Err(Error::InvalidBranch(format!(
            "F(0) must be 0 or {}, got {}",
            unit, f0
        )))
    }
}

fn check_branch(branch: &Option<FieldElement>, f0: &FieldElement) -> Result<()> {
    match branch {
        Some(b) if b != f0 => Err(Error::InvalidBranch(format!(
            "the root is determined: F(0) = {}, got {}",
            f0, b
        ))),
        _ => Ok(()),
    }
}

fn vanishing_root(input: &QuadraticTriple, n: &QuadraticTriple) -> Result<QuadraticExpansion> {
    let spec = n.spec();
    if n.a.is_zero() {
        return Ok(QuadraticExpansion {
            case: QuadraticCase::VanishingRoot,
            input: input.clone(),
            branch: spec.zero(),
            head: Vec::new(),
            tail: None,
            fraction: HFraction::zero(spec, n.delta),
        });
    }
    // F = -A_k x^k / (D - x^(k+δ) G): the canonical step applies verbatim.
    let s = step(n)?;
    with_head(QuadraticCase::VanishingRoot, input, spec.zero(), vec![s.quotient()], &s.next)
}

fn unit_root(input: &QuadraticTriple, n: &QuadraticTriple, c: FieldElement) -> Result<QuadraticExpansion> {
    let spec = n.spec();
    let delta = n.delta;
    if n.a.is_zero() {
        // F (B + C F) = 0 and F(0) != 0, so F = -B/C.
        let fraction = expand_rational(&-&n.b, &n.c, delta, usize::MAX)?;
        return Ok(QuadraticExpansion {
            case: QuadraticCase::UnitRoot,
            input: input.clone(),
            branch: c,
            head: Vec::new(),
            tail: None,
            fraction,
        });
    }
    // F = c / (D - x^δ G), c = -1/C(0).
    let c0 = n.c.coeff(0);
    let f = solve_quadratic(&n.a, &n.b, &n.c, &c, delta)?;
    let d = Polynomial::from_coeffs(spec, ops::div_trunc(spec, &[c.clone()], &f, delta)?);
    let c0_inv = c0.inv()?;
    let a_star = {
        let t1 = (&(&d * &d) * &n.a).scale(&c0);
        let t2 = &n.b * &d;
        let t3 = n.c.scale(&c0_inv);
        exact(&(&t1 - &t2) + &t3, delta, "A* (unit root)")?
    };
    let b_star = &n.b - &(&n.a * &d).scale(&(&c0 + &c0));
    let c_star = n.a.scale(&c0).mul_x_power(delta);
    let rest = QuadraticTriple {
        a: a_star,
        b: b_star,
        c: c_star,
        delta,
    };
    let u = exact(&d - &Polynomial::one(spec), 1, "D(0) = 1")?;
    let head = vec![PartialQuotient::new(c.clone(), 0, u)];
    with_head(QuadraticCase::UnitRoot, input, c, head, &rest)
}

fn square_root_case(t: &QuadraticTriple, branch: Option<FieldElement>, p: u32) -> Result<QuadraticExpansion> {
    let spec = t.spec();
    let delta = t.delta;
    if p == 2 {
        return Err(Error::Unsupported(
            "B = 0 in characteristic 2: the square-root peel needs p != 2".into(),
        ));
    }
    let c0 = t.c.coeff(0);
    if c0.is_zero() {
        return Err(Error::Unsupported(format!("B = 0 needs C(0) != 0: {}", t)));
    }
    let n = t.scaled(&c0.inv()?);
    let v = n
        .a
        .valuation()
        .ok_or_else(|| Error::Unsupported("B = 0 and A = 0: every series is a root".into()))?;
    if v % 2 == 1 {
        return Err(Error::Unsupported(format!("A must start with an even power of x, got x^{}", v)));
    }
    let k = v / 2;
    let sq = -n.a.coeff(v);
    let roots = sq.square_roots();
    let a = match branch {
        Some(b) => {
            if &(&b * &b) != &sq {
                return Err(Error::InvalidBranch(format!("{}^2 != {}", b, sq)));
            }
            b
        }
        None => roots
            .first()
            .cloned()
            .ok_or_else(|| Error::Unsupported(format!("-A_{} = {} is not a square mod {}", v, sq, p)))?,
    };
    // F = a x^k / E with E = 1 / sqrt(W), W = -A / (a^2 x^(2k) C), W(0) = 1.
    let len = k + delta;
    let a_shift = n.a.div_by_power(v)?.scale(&-&(&a * &a).inv()?);
    let num: Vec<FieldElement> = (0..len).map(|i| a_shift.coeff(i)).collect();
    let w = ops::div_trunc(spec, &num, n.c.coeffs(), len)?;
    let root = ops::sqrt_unit(spec, &w, spec.one(), len)?;
    let d = Polynomial::from_coeffs(spec, ops::inverse(spec, &root, len)?);
    let a2x2k = Polynomial::monomial(&a * &a, 2 * k);
    let shift = 3 * k + delta;
    let a_bar = &(&(&d * &d) * &n.a) + &(&n.c * &a2x2k);
    let b_bar = (&n.a * &d).scale(&-spec.from_i64(2)).mul_x_power(k + delta);
    let c_bar = n.a.mul_x_power(2 * k + 2 * delta);
    let raw = QuadraticTriple {
        a: exact(a_bar, shift, "A* (square root)")?,
        b: exact(b_bar, shift, "B* (square root)")?,
        c: exact(c_bar, shift, "C* (square root)")?,
        delta,
    };
    let b0 = raw.b.coeff(0);
    if b0.is_zero() {
        return Err(Error::Invariant("B*(0) vanished in the square-root peel".into()));
    }
    let rest = raw.scaled(&b0.inv()?);
    let u = exact(&d - &Polynomial::one(spec), 1, "D(0) = 1")?;
    let head = vec![PartialQuotient::new(a.clone(), k, u)];
    with_head(QuadraticCase::SquareRoot, t, a, head, &rest)
}

/// The same pipeline with δ = 1.
pub fn super1_quadratic(a: &Polynomial, b: &Polynomial, c: &Polynomial, branch: Option<FieldElement>) -> Result<QuadraticExpansion> {
    expand_quadratic_equation(&QuadraticTriple::new(a.clone(), b.clone(), c.clone(), 1)?, branch)
}
