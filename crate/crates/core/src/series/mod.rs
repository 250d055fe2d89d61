//! Formal power series pulled by prefix.
//!
//! A [`SeriesHandle`] is a cheap, clonable reference to a series definition.
//! `prefix(n)` returns the first `n` coefficients and memoizes them; the cache
//! sits behind a mutex, so handles can be shared across threads.

pub mod ops;

use std::fmt;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::poly::Polynomial;

/// Coefficient generator: given `n`, returns the first `n` coefficients.
pub type GeneratorFn = dyn Fn(usize) -> Vec<FieldElement> + Send + Sync;

#[derive(Clone)]
enum Source {
    Explicit(Vec<FieldElement>),
    Rational {
        num: Polynomial,
        den: Polynomial,
    },
    Quadratic {
        a: Polynomial,
        b: Polynomial,
        c: Polynomial,
        f0: FieldElement,
    },
    Sqrt {
        inner: SeriesHandle,
        root: Option<FieldElement>,
    },
    BinomialPower {
        r: BigRational,
        base: SeriesHandle,
    },
    Add(SeriesHandle, SeriesHandle),
    Mul(SeriesHandle, SeriesHandle),
    ComposeXPower(SeriesHandle, usize),
    ShiftDiv(SeriesHandle, usize),
    Scale(FieldElement, SeriesHandle),
    Reciprocal(SeriesHandle),
    ReduceModP(SeriesHandle),
    Generator {
        label: String,
        f: Arc<GeneratorFn>,
    },
}

struct Node {
    spec: FieldSpec,
    source: Source,
    cache: Mutex<Vec<FieldElement>>,
}

#[derive(Clone)]
pub struct SeriesHandle(Arc<Node>);

impl fmt::Debug for SeriesHandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SeriesHandle({} over {})", self.describe(), self.spec())
    }
}

impl SeriesHandle {
    fn new(spec: FieldSpec, source: Source) -> Self {
        SeriesHandle(Arc::new(Node {
            spec,
            source,
            cache: Mutex::new(Vec::new()),
        }))
    }

    /// A series known only through its first `coeffs.len()` coefficients.
    pub fn explicit(spec: FieldSpec, coeffs: Vec<FieldElement>) -> Result<Self> {
        if let Some(c) = coeffs.iter().find(|c| c.spec() != spec) {
            return Err(Error::FieldMismatch {
                left: spec.to_string(),
                right: c.spec().to_string(),
            });
        }
        Ok(Self::new(spec, Source::Explicit(coeffs)))
    }

    /// The expansion of `num / den`; requires `den(0) != 0`.
    pub fn rational(num: Polynomial, den: Polynomial) -> Result<Self> {
        if num.spec() != den.spec() {
            return Err(Error::FieldMismatch {
                left: num.spec().to_string(),
                right: den.spec().to_string(),
            });
        }
        if den.coeff(0).is_zero() {
            return Err(Error::InvalidInput(format!(
                "denominator {} vanishes at x = 0",
                den
            )));
        }
        Ok(Self::new(num.spec(), Source::Rational { num, den }))
    }

    pub fn polynomial(p: Polynomial) -> Self {
        let one = Polynomial::one(p.spec());
        Self::rational(p, one).expect("unit denominator")
    }

    /// The root of `A + B F + C F^2 = 0` with `F(0) = f0`, solved term by term.
    ///
    /// `f0` must satisfy the constant equation. The linear coefficient
    /// `B(0) + 2 C(0) f0` must be invertible for any coefficient past the
    /// first to be available; otherwise `prefix` reports an unsolvable branch.
    pub fn quadratic_root(a: Polynomial, b: Polynomial, c: Polynomial, f0: FieldElement) -> Result<Self> {
        let spec = a.spec();
        for other in [b.spec(), c.spec(), f0.spec()] {
            if other != spec {
                return Err(Error::FieldMismatch {
                    left: spec.to_string(),
                    right: other.to_string(),
                });
            }
        }
        let constant = &(&a.coeff(0) + &(&b.coeff(0) * &f0)) + &(&(&c.coeff(0) * &f0) * &f0);
        if !constant.is_zero() {
            return Err(Error::InvalidBranch(format!(
                "f0 = {} does not satisfy A(0) + B(0) f0 + C(0) f0^2 = 0",
                f0
            )));
        }
        Ok(Self::new(spec, Source::Quadratic { a, b, c, f0 }))
    }

    /// Square root. Over `F_p` the default branch has the least residue as its
    /// leading coefficient, over `Q` the positive one; see [`Self::sqrt_with_root`].
    pub fn sqrt(&self) -> Self {
        Self::new(
            self.spec(),
            Source::Sqrt {
                inner: self.clone(),
                root: None,
            },
        )
    }

    /// Square root whose leading coefficient is `root`.
    pub fn sqrt_with_root(&self, root: FieldElement) -> Result<Self> {
        if root.spec() != self.spec() || root.is_zero() {
            return Err(Error::InvalidBranch(format!("leading root {}", root)));
        }
        Ok(Self::new(
            self.spec(),
            Source::Sqrt {
                inner: self.clone(),
                root: Some(root),
            },
        ))
    }

    /// `base^r` for `base(0) = 1`, computed over `Q` on the integer lift of
    /// `base` and reduced into `target`.
    pub fn binomial_power(r: BigRational, base: &SeriesHandle, target: FieldSpec) -> Result<Self> {
        if let Some(p) = target.modulus() {
            if (r.denom() % BigInt::from(p)).is_zero() {
                return Err(Error::NotReducible {
                    value: format!("exponent {}", r),
                    p,
                });
            }
        }
        if base.spec().is_prime_field() && base.spec() != target {
            return Err(Error::FieldMismatch {
                left: base.spec().to_string(),
                right: target.to_string(),
            });
        }
        Ok(Self::new(
            target,
            Source::BinomialPower {
                r,
                base: base.clone(),
            },
        ))
    }

    /// A series defined by a coefficient generator.
    pub fn generator<F>(spec: FieldSpec, label: impl Into<String>, f: F) -> Self
    where
        F: Fn(usize) -> Vec<FieldElement> + Send + Sync + 'static,
    {
        Self::new(
            spec,
            Source::Generator {
                label: label.into(),
                f: Arc::new(f),
            },
        )
    }

    fn same_field(&self, other: &SeriesHandle) -> Result<()> {
        if self.spec() != other.spec() {
            return Err(Error::FieldMismatch {
                left: self.spec().to_string(),
                right: other.spec().to_string(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &SeriesHandle) -> Result<Self> {
        self.same_field(other)?;
        Ok(Self::new(self.spec(), Source::Add(self.clone(), other.clone())))
    }

    pub fn mul(&self, other: &SeriesHandle) -> Result<Self> {
        self.same_field(other)?;
        Ok(Self::new(self.spec(), Source::Mul(self.clone(), other.clone())))
    }

    /// `s(x^d)` for `d >= 1`.
    pub fn compose_x_power(&self, d: usize) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidInput("compose_x_power needs d >= 1".into()));
        }
        Ok(Self::new(self.spec(), Source::ComposeXPower(self.clone(), d)))
    }

    /// `s / x^m`; the first `m` coefficients must vanish.
    pub fn shift_div(&self, m: usize) -> Result<Self> {
        let head = self.prefix(m)?;
        if let Some(i) = ops::valuation(&head) {
            return Err(Error::NotDivisible(format!(
                "series has nonzero coefficient at x^{} (shift by {})",
                i, m
            )));
        }
        Ok(Self::new(self.spec(), Source::ShiftDiv(self.clone(), m)))
    }

    pub fn scale(&self, c: FieldElement) -> Result<Self> {
        if c.spec() != self.spec() {
            return Err(Error::FieldMismatch {
                left: self.spec().to_string(),
                right: c.spec().to_string(),
            });
        }
        Ok(Self::new(self.spec(), Source::Scale(c, self.clone())))
    }

    /// `1 / s`; needs a nonzero constant term.
    pub fn reciprocal(&self) -> Result<Self> {
        if self.coeff(0)?.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::new(self.spec(), Source::Reciprocal(self.clone())))
    }

    /// Coefficientwise reduction of a series over `Q` into `F_p`.
    pub fn reduce_mod_p(&self, p: u32) -> Result<Self> {
        if self.spec() != FieldSpec::Q {
            return Err(Error::InvalidInput("only series over Q can be reduced".into()));
        }
        let target = FieldSpec::prime(p as u64)?;
        Ok(Self::new(target, Source::ReduceModP(self.clone())))
    }

    pub fn spec(&self) -> FieldSpec {
        self.0.spec
    }

    /// Coefficients available from an explicit prefix; `None` when unbounded.
    pub fn declared_len(&self) -> Option<usize> {
        match &self.0.source {
            Source::Explicit(c) => Some(c.len()),
            _ => None,
        }
    }

    /// `(P, Q)` with the series equal to `P / Q`, for rational sources.
    pub fn as_rational(&self) -> Option<(&Polynomial, &Polynomial)> {
        match &self.0.source {
            Source::Rational { num, den } => Some((num, den)),
            _ => None,
        }
    }

    /// Short human-readable description of the source.
    pub fn describe(&self) -> String {
        match &self.0.source {
            Source::Explicit(c) => format!("explicit[{}]", c.len()),
            Source::Rational { num, den } => format!("({})/({})", num, den),
            Source::Quadratic { a, b, c, f0 } => {
                format!("root of ({}) + ({})F + ({})F^2, F(0) = {}", a, b, c, f0)
            }
            Source::Sqrt { inner, .. } => format!("sqrt({})", inner.describe()),
            Source::BinomialPower { r, base } => format!("({})^({})", base.describe(), r),
            Source::Add(a, b) => format!("{} + {}", a.describe(), b.describe()),
            Source::Mul(a, b) => format!("({}) * ({})", a.describe(), b.describe()),
            Source::ComposeXPower(s, d) => format!("({})(x^{})", s.describe(), d),
            Source::ShiftDiv(s, m) => format!("({}) / x^{}", s.describe(), m),
            Source::Scale(c, s) => format!("{} * ({})", c, s.describe()),
            Source::Reciprocal(s) => format!("1 / ({})", s.describe()),
            Source::ReduceModP(s) => format!("({}) mod {}", s.describe(), self.spec().characteristic()),
            Source::Generator { label, .. } => label.clone(),
        }
    }

    pub fn coeff(&self, i: usize) -> Result<FieldElement> {
        Ok(self.prefix(i + 1)?.pop().expect("nonempty prefix"))
    }

    /// The first `n` coefficients `f_0 .. f_{n-1}`.
    pub fn prefix(&self, n: usize) -> Result<Vec<FieldElement>> {
        let mut cache = self.0.cache.lock().unwrap_or_else(|e| e.into_inner());
        if cache.len() < n {
            *cache = self.compute(n)?;
            debug_assert_eq!(cache.len(), n);
        }
        Ok(cache[..n].to_vec())
    }

    fn compute(&self, n: usize) -> Result<Vec<FieldElement>> {
        let spec = self.spec();
        match &self.0.source {
            Source::Explicit(c) => {
                if n > c.len() {
                    return Err(Error::InsufficientData {
                        requested: n,
                        available: c.len(),
                    });
                }
                Ok(c[..n].to_vec())
            }
            Source::Rational { num, den } => ops::div_trunc(spec, num.coeffs(), den.coeffs(), n),
            Source::Quadratic { a, b, c, f0 } => solve_quadratic(a, b, c, f0, n),
            Source::Sqrt { inner, root } => sqrt_prefix(inner, root.as_ref(), n),
            Source::BinomialPower { r, base } => binomial_prefix(r, base, spec, n),
            Source::Add(a, b) => {
                let (x, y) = (a.prefix(n)?, b.prefix(n)?);
                Ok(x.iter().zip(&y).map(|(u, v)| u + v).collect())
            }
            Source::Mul(a, b) => Ok(ops::mul_trunc(spec, &a.prefix(n)?, &b.prefix(n)?, n)),
            Source::ComposeXPower(s, d) => {
                let inner = s.prefix(n.div_ceil(*d))?;
                Ok((0..n)
                    .map(|i| {
                        if i % d == 0 {
                            inner[i / d].clone()
                        } else {
                            spec.zero()
                        }
                    })
                    .collect())
            }
            Source::ShiftDiv(s, m) => {
                let inner = s.prefix(n + m)?;
                if let Some(i) = ops::valuation(&inner[..*m]) {
                    return Err(Error::NotDivisible(format!("nonzero coefficient at x^{}", i)));
                }
                Ok(inner[*m..].to_vec())
            }
            Source::Scale(c, s) => Ok(s.prefix(n)?.iter().map(|a| a * c).collect()),
            Source::Reciprocal(s) => ops::inverse(spec, &s.prefix(n)?, n),
            Source::ReduceModP(s) => {
                let p = spec.characteristic();
                s.prefix(n)?.iter().map(|c| c.reduce_mod_p(p)).collect()
            }
            Source::Generator { label, f } => {
                let out = f(n);
                if out.len() < n || out.iter().any(|c| c.spec() != spec) {
                    return Err(Error::Invariant(format!("generator {} misbehaved", label)));
                }
                Ok(out[..n].to_vec())
            }
        }
    }
}

/// First `n` coefficients of the root of `A + B F + C F^2 = 0` with
/// `F(0) = f0`, by undetermined coefficients. `f0` is assumed to satisfy the
/// constant equation.
pub fn solve_quadratic(
    a: &Polynomial,
    b: &Polynomial,
    c: &Polynomial,
    f0: &FieldElement,
    n: usize,
) -> Result<Vec<FieldElement>> {
    let spec = a.spec();
    let mut f: Vec<FieldElement> = Vec::with_capacity(n);
    let mut sq: Vec<FieldElement> = Vec::with_capacity(n);
    if n == 0 {
        return Ok(f);
    }
    f.push(f0.clone());
    sq.push(f0 * f0);
    let lin = &b.coeff(0) + &(&(&c.coeff(0) + &c.coeff(0)) * f0);
    let lin_inv = if n > 1 {
        Some(lin.inv().map_err(|_| Error::UnsolvableBranch { index: 1 })?)
    } else {
        None
    };
    for m in 1..n {
        // x^m coefficient of A + B F + C F^2, without the f_m terms.
        let mut cross = spec.zero();
        for j in 1..m {
            cross = &cross + &(&f[j] * &f[m - j]);
        }
        let mut rest = &a.coeff(m) + &(&c.coeff(0) * &cross);
        for i in 1..=m.min(b.coeffs().len().saturating_sub(1)) {
            rest = &rest + &(&b.coeffs()[i] * &f[m - i]);
        }
        for i in 1..=m.min(c.coeffs().len().saturating_sub(1)) {
            rest = &rest + &(&c.coeffs()[i] * &sq[m - i]);
        }
        let fm = -(&rest * lin_inv.as_ref().expect("n > 1"));
        let two_f0_fm = &(f0 + f0) * &fm;
        f.push(fm);
        sq.push(&two_f0_fm + &cross);
    }
    Ok(f)
}

fn sqrt_prefix(inner: &SeriesHandle, root: Option<&FieldElement>, n: usize) -> Result<Vec<FieldElement>> {
    let spec = inner.spec();
    let s = inner.prefix(2 * n)?;
    if spec.characteristic() == 2 {
        // Frobenius: (sum r_i x^i)^2 = sum r_i x^{2i} in characteristic 2.
        if let Some(i) = (0..s.len()).find(|&i| i % 2 == 1 && !s[i].is_zero()) {
            return Err(Error::NoSquareRoot(format!(
                "odd exponent x^{} in characteristic 2",
                i
            )));
        }
        if let Some(r) = root {
            if !r.is_one() {
                return Err(Error::InvalidBranch(format!("leading root {} in F2", r)));
            }
        }
        return Ok((0..n).map(|i| s[2 * i].clone()).collect());
    }
    let v = match ops::valuation(&s) {
        None => return Ok(vec![spec.zero(); n]),
        Some(v) => v,
    };
    if v % 2 == 1 {
        return Err(Error::NoSquareRoot(format!("odd valuation {}", v)));
    }
    let t = &s[v..];
    let roots = t[0].square_roots();
    let r0 = match root {
        Some(r) => {
            if &(r * r) != &t[0] {
                return Err(Error::InvalidBranch(format!("{}^2 != {}", r, t[0])));
            }
            r.clone()
        }
        None => {
            let pick = if spec.is_prime_field() { roots.first() } else { roots.last() };
            pick.cloned()
                .ok_or_else(|| Error::NoSquareRoot(format!("{} is not a square in {}", t[0], spec)))?
        }
    };
    let half = v / 2;
    let mut out = vec![spec.zero(); half.min(n)];
    if n > half {
        out.extend(ops::sqrt_unit(spec, t, r0, n - half)?);
    }
    Ok(out)
}

fn binomial_prefix(r: &BigRational, base: &SeriesHandle, target: FieldSpec, n: usize) -> Result<Vec<FieldElement>> {
    let b: Vec<BigRational> = base.prefix(n)?.iter().map(|c| c.lift()).collect();
    if n > 0 && !b[0].is_one() {
        return Err(Error::InvalidInput(format!(
            "binomial power base must have constant term 1, got {}",
            b[0]
        )));
    }
    // n g_n = sum_{k=1}^n (k (r + 1) - n) b_k g_{n-k}, from g' b = r b' g.
    let r1 = r + BigRational::one();
    let mut g: Vec<BigRational> = Vec::with_capacity(n);
    for m in 0..n {
        if m == 0 {
            g.push(BigRational::one());
            continue;
        }
        let mut acc = BigRational::zero();
        let mr = BigRational::from_integer(BigInt::from(m));
        for k in 1..=m {
            if b[k].is_zero() {
                continue;
            }
            let kr = BigRational::from_integer(BigInt::from(k));
            acc += (&kr * &r1 - &mr) * &b[k] * &g[m - k];
        }
        g.push(acc / mr);
    }
    g.iter().map(|q| target.from_rational(q)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn poly(spec: FieldSpec, c: &[i64]) -> Polynomial {
        Polynomial::from_i64s(spec, c)
    }

    fn ints(spec: FieldSpec, c: &[i64]) -> Vec<FieldElement> {
        c.iter().map(|&x| spec.from_i64(x)).collect()
    }

    #[test]
    fn geometric_series() {
        let q = FieldSpec::Q;
        let s = SeriesHandle::rational(poly(q, &[1]), poly(q, &[1, -1])).unwrap();
        assert_eq!(s.prefix(4).unwrap(), ints(q, &[1, 1, 1, 1]));
        assert!(SeriesHandle::rational(poly(q, &[1]), poly(q, &[0, 1])).is_err());
    }

    #[test]
    fn shifted_fibonacci_matches_recurrence() {
        let q = FieldSpec::Q;
        let s = SeriesHandle::rational(poly(q, &[0, 0, 0, 1]), poly(q, &[1, -1, -1])).unwrap();
        let got = s.shift_div(3).unwrap().prefix(6).unwrap();
        let mut fib = vec![1i64, 1];
        while fib.len() < 6 {
            let k = fib.len();
            fib.push(fib[k - 1] + fib[k - 2]);
        }
        assert_eq!(got, ints(q, &fib));
    }

    #[test]
    fn quadratic_root_over_f2() {
        let f = FieldSpec::F2;
        let s = SeriesHandle::quadratic_root(
            Polynomial::parse("-1", f).unwrap(),
            Polynomial::parse("1-x^4", f).unwrap(),
            Polynomial::parse("-x+x^5", f).unwrap(),
            f.one(),
        )
        .unwrap();
        // Substitution: 1 + (1+x^4) F + (x+x^5) F^2 = 0 forces f = 1,1,0,1,...
        assert_eq!(s.prefix(4).unwrap(), ints(f, &[1, 1, 0, 1]));
    }

    #[test]
    fn quadratic_root_constant_and_branch_errors() {
        let q = FieldSpec::Q;
        let s = SeriesHandle::quadratic_root(poly(q, &[-1]), poly(q, &[1]), poly(q, &[]), q.one()).unwrap();
        assert_eq!(s.prefix(3).unwrap(), ints(q, &[1, 0, 0]));
        assert!(matches!(
            SeriesHandle::quadratic_root(poly(q, &[-1]), poly(q, &[1]), poly(q, &[]), q.zero()),
            Err(Error::InvalidBranch(_))
        ));
        // B(0) + 2 C(0) f0 = 0: F^2 - 2F + 1 = 0 at f0 = 1.
        let s = SeriesHandle::quadratic_root(poly(q, &[1, 1]), poly(q, &[-2]), poly(q, &[1]), q.one()).unwrap();
        assert_eq!(s.prefix(1).unwrap(), ints(q, &[1]));
        assert_eq!(s.prefix(2), Err(Error::UnsolvableBranch { index: 1 }));
    }

    #[test]
    fn square_roots() {
        let q = FieldSpec::Q;
        assert_eq!(SeriesHandle::polynomial(poly(q, &[1])).sqrt().prefix(3).unwrap(), ints(q, &[1, 0, 0]));
        let f2 = FieldSpec::F2;
        let s = SeriesHandle::polynomial(poly(f2, &[1, 0, 1, 0, 1])).sqrt();
        assert_eq!(s.prefix(5).unwrap(), ints(f2, &[1, 1, 1, 0, 0]));
        let odd = SeriesHandle::polynomial(poly(f2, &[1, 1])).sqrt();
        assert!(matches!(odd.prefix(2), Err(Error::NoSquareRoot(_))));
        // (1 + x)^{1/2} over F3: 1 + 2x + x^2 + x^3 + ... squares back to 1 + x.
        let f3 = FieldSpec::F3;
        let s = SeriesHandle::polynomial(poly(f3, &[1, 1])).sqrt();
        let r = s.prefix(4).unwrap();
        assert_eq!(r, ints(f3, &[1, 2, 1, 1]));
        assert_eq!(ops::mul_trunc(f3, &r, &r, 4), ints(f3, &[1, 1, 0, 0]));
        let non_square = SeriesHandle::polynomial(poly(FieldSpec::F5, &[2, 1])).sqrt();
        assert!(matches!(non_square.prefix(2), Err(Error::NoSquareRoot(_))));
        // x^2 (1 - x): valuation is halved.
        let s = SeriesHandle::polynomial(poly(q, &[0, 0, 4, -4])).sqrt();
        assert_eq!(s.prefix(3).unwrap(), ints(q, &[0, 2, -1]));
    }

    #[test]
    fn binomial_powers() {
        let q = FieldSpec::Q;
        let base = SeriesHandle::polynomial(poly(q, &[1, -1]));
        let one = SeriesHandle::binomial_power(BigRational::one(), &base, q).unwrap();
        assert_eq!(one.prefix(4).unwrap(), ints(q, &[1, -1, 0, 0]));

        let r = BigRational::new(1.into(), 3.into());
        let f2 = FieldSpec::F2;
        let b2 = SeriesHandle::polynomial(poly(f2, &[1, 1]));
        let h = SeriesHandle::binomial_power(r, &b2, f2).unwrap();
        let got = h.prefix(5).unwrap();
        assert_eq!(got, ints(f2, &[1, 1, 1, 1, 0]));
        let cube = ops::mul_trunc(f2, &ops::mul_trunc(f2, &got, &got, 5), &got, 5);
        assert_eq!(cube, ints(f2, &[1, 1, 0, 0, 0]));

        let catalan_base = SeriesHandle::polynomial(poly(q, &[1, -4]));
        let half = BigRational::new(1.into(), 2.into());
        let s = SeriesHandle::binomial_power(half.clone(), &catalan_base, q).unwrap();
        let got = s.prefix(6).unwrap();
        assert_eq!(&got[..4], &ints(q, &[1, -2, -2, -4])[..]);
        // (1 - sqrt(1 - 4x)) / (2x) = sum Catalan_n x^n
        let catalan = [1i64, 1, 2, 5, 14];
        for (i, c) in catalan.iter().enumerate() {
            assert_eq!(-&got[i + 1] / q.from_i64(2), q.from_i64(*c));
        }
        assert!(matches!(
            SeriesHandle::binomial_power(half, &SeriesHandle::polynomial(poly(f2, &[1, 1])), f2),
            Err(Error::NotReducible { .. })
        ));
    }

    #[test]
    fn combinators() {
        let q = FieldSpec::Q;
        let s = SeriesHandle::polynomial(poly(q, &[1, 1]));
        assert_eq!(s.compose_x_power(2).unwrap().prefix(4).unwrap(), ints(q, &[1, 0, 1, 0]));
        let t = SeriesHandle::polynomial(poly(q, &[0, 0, 1, 1]));
        assert_eq!(t.shift_div(2).unwrap().prefix(3).unwrap(), ints(q, &[1, 1, 0]));
        assert!(matches!(s.shift_div(1), Err(Error::NotDivisible(_))));
        let geo = SeriesHandle::rational(poly(q, &[1]), poly(q, &[1, -1])).unwrap();
        let prod = geo.mul(&SeriesHandle::polynomial(poly(q, &[1, -1]))).unwrap();
        assert_eq!(prod.prefix(5).unwrap(), ints(q, &[1, 0, 0, 0, 0]));
        let sum = geo.add(&geo).unwrap().scale(q.from_ratio(1, 2).unwrap()).unwrap();
        assert_eq!(sum.prefix(3).unwrap(), ints(q, &[1, 1, 1]));
        assert_eq!(geo.reciprocal().unwrap().prefix(3).unwrap(), ints(q, &[1, -1, 0]));
        let red = SeriesHandle::polynomial(poly(q, &[3, 1])).reduce_mod_p(2).unwrap();
        assert_eq!(red.prefix(2).unwrap(), ints(FieldSpec::F2, &[1, 1]));
    }

    #[test]
    fn explicit_prefix_is_bounded() {
        let q = FieldSpec::Q;
        let s = SeriesHandle::explicit(q, ints(q, &[1, 2, 3])).unwrap();
        assert_eq!(s.prefix(3).unwrap(), ints(q, &[1, 2, 3]));
        assert_eq!(
            s.prefix(4),
            Err(Error::InsufficientData {
                requested: 4,
                available: 3
            })
        );
    }

    #[test]
    fn shared_across_threads() {
        let q = FieldSpec::Q;
        let s = SeriesHandle::rational(poly(q, &[1]), poly(q, &[1, -1, -1])).unwrap();
        let handles: Vec<_> = (0..4)
            .map(|i| {
                let s = s.clone();
                std::thread::spawn(move || s.prefix(10 + i).unwrap())
            })
            .collect();
        let outs: Vec<_> = handles.into_iter().map(|h| h.join().unwrap()).collect();
        for o in &outs {
            assert_eq!(&o[..10], &outs[0][..10]);
        }
    }

    fn random_poly(spec: FieldSpec, c: &[i64]) -> Polynomial {
        Polynomial::from_i64s(spec, c)
    }

    proptest! {
        #[test]
        fn quadratic_root_satisfies_equation(
            a in proptest::collection::vec(0i64..3, 0..6),
            b in proptest::collection::vec(0i64..3, 0..6),
            c in proptest::collection::vec(0i64..3, 0..6),
            n in 1usize..80,
        ) {
            let f = FieldSpec::F3;
            // canonical contract: B(0) = 1, C(0) = 0, A(0) = -f0 * B(0) with f0 = -A(0)
            let mut b = b; if b.is_empty() { b.push(1) } else { b[0] = 1 }
            let mut c = c; if !c.is_empty() { c[0] = 0 }
            let (a, b, c) = (random_poly(f, &a), random_poly(f, &b), random_poly(f, &c));
            let f0 = -a.coeff(0);
            let s = SeriesHandle::quadratic_root(a.clone(), b.clone(), c.clone(), f0).unwrap();
            let p = s.prefix(n).unwrap();
            let bf = ops::mul_trunc(f, b.coeffs(), &p, n);
            let ff = ops::mul_trunc(f, &p, &p, n);
            let cff = ops::mul_trunc(f, c.coeffs(), &ff, n);
            for i in 0..n {
                prop_assert!((&(&a.coeff(i) + &bf[i]) + &cff[i]).is_zero());
            }
        }

        #[test]
        fn prefixes_are_consistent(n in 0usize..40, m in 0usize..40) {
            let f = FieldSpec::F5;
            let s = SeriesHandle::rational(random_poly(f, &[1, 2, 3]), random_poly(f, &[1, 4, 0, 2])).unwrap();
            let (lo, hi) = (n.min(m), n.max(m));
            let long = s.prefix(hi).unwrap();
            let fresh = SeriesHandle::rational(random_poly(f, &[1, 2, 3]), random_poly(f, &[1, 4, 0, 2])).unwrap();
            prop_assert_eq!(&fresh.prefix(lo).unwrap()[..], &long[..lo]);
        }

        #[test]
        fn frobenius_in_char_two(c in proptest::collection::vec(0i64..2, 1..10)) {
            let f = FieldSpec::F2;
            let s = SeriesHandle::rational(random_poly(f, &c), random_poly(f, &[1, 1, 0, 1])).unwrap();
            let sq = s.mul(&s).unwrap().prefix(40).unwrap();
            prop_assert_eq!(s.compose_x_power(2).unwrap().prefix(40).unwrap(), sq.clone());
            let back = SeriesHandle::explicit(f, sq).unwrap().sqrt().prefix(20).unwrap();
            prop_assert_eq!(back, s.prefix(20).unwrap());
        }

        #[test]
        fn sqrt_then_square(c in proptest::collection::vec(0i64..7, 1..8), root in 1i64..7) {
            let f = FieldSpec::prime(7).unwrap();
            let mut c = c; c[0] = root * root;
            let s = SeriesHandle::polynomial(random_poly(f, &c));
            let r = s.sqrt().prefix(30).unwrap();
            prop_assert_eq!(ops::mul_trunc(f, &r, &r, 30), s.prefix(30).unwrap());
        }
    }
}
