//! Dense univariate polynomials over a [`FieldSpec`], plus the text grammar
//! used on the command line and in JSON:
//!
//! ```text
//! poly  := sign? term (sign term)*
//! term  := coeff ('*' xpow)? | xpow
//! coeff := digits ('/' digits)?
//! xpow  := 'x' ('^' digits)?
//! ```
//!
//! Whitespace is ignored everywhere.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};

/// Canonical dense polynomial: `coeffs[i]` is the coefficient of `x^i` and the
/// last stored coefficient is nonzero. The zero polynomial stores nothing.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    spec: FieldSpec,
    coeffs: Vec<FieldElement>,
}

impl Polynomial {
    pub fn zero(spec: FieldSpec) -> Self {
        Polynomial {
            spec,
            coeffs: Vec::new(),
        }
    }

    pub fn one(spec: FieldSpec) -> Self {
        Self::constant(spec.one())
    }

    pub fn constant(c: FieldElement) -> Self {
        Self::monomial(c, 0)
    }

    /// `c * x^e`.
    pub fn monomial(c: FieldElement, e: usize) -> Self {
        let spec = c.spec();
        let mut coeffs = vec![spec.zero(); e];
        coeffs.push(c);
        Self::from_coeffs(spec, coeffs)
    }

    /// Builds a polynomial from ascending coefficients, trimming trailing zeros.
    ///
    /// # Panics
    /// If a coefficient belongs to another field.
    pub fn from_coeffs(spec: FieldSpec, mut coeffs: Vec<FieldElement>) -> Self {
        assert!(
            coeffs.iter().all(|c| c.spec() == spec),
            "coefficient outside {}",
            spec
        );
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { spec, coeffs }
    }

    pub fn from_i64s(spec: FieldSpec, coeffs: &[i64]) -> Self {
        Self::from_coeffs(spec, coeffs.iter().map(|&c| spec.from_i64(c)).collect())
    }

    pub fn spec(&self) -> FieldSpec {
        self.spec
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    /// Coefficient of `x^i`, zero past the degree.
    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.spec.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with `-1` for the zero polynomial.
    pub fn degree(&self) -> isize {
        self.coeffs.len() as isize - 1
    }

    /// Least exponent with a nonzero coefficient; `None` stands for the
    /// infinite valuation of zero.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn leading_coeff(&self) -> Option<&FieldElement> {
        self.coeffs.last()
    }

    fn check(&self, other: &Polynomial) -> Result<()> {
        if self.spec != other.spec {
            return Err(Error::FieldMismatch {
                left: self.spec.to_string(),
                right: other.spec.to_string(),
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check(other)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| &self.coeff(i) + &other.coeff(i)).collect();
        Ok(Self::from_coeffs(self.spec, coeffs))
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check(other)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| &self.coeff(i) - &other.coeff(i)).collect();
        Ok(Self::from_coeffs(self.spec, coeffs))
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.spec));
        }
        let mut out = vec![self.spec.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Ok(Self::from_coeffs(self.spec, out))
    }

    pub fn scale(&self, c: &FieldElement) -> Polynomial {
        Self::from_coeffs(self.spec, self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        (0..e).fold(Self::one(self.spec), |acc, _| &acc * self)
    }

    /// `self * x^m`.
    pub fn mul_x_power(&self, m: usize) -> Polynomial {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![self.spec.zero(); m];
        coeffs.extend(self.coeffs.iter().cloned());
        Polynomial {
            spec: self.spec,
            coeffs,
        }
    }

    /// Exact quotient `self / x^m`; fails when a coefficient below `x^m` is nonzero.
    pub fn div_by_power(&self, m: usize) -> Result<Polynomial> {
        if let Some(v) = self.valuation() {
            if v < m {
                return Err(Error::NotDivisible(format!("{} by x^{}", self, m)));
            }
        }
        Ok(Polynomial {
            spec: self.spec,
            coeffs: self.coeffs.iter().skip(m).cloned().collect(),
        })
    }

    /// `self mod x^n`.
    pub fn truncate(&self, n: usize) -> Polynomial {
        Self::from_coeffs(self.spec, self.coeffs.iter().take(n).cloned().collect())
    }

    /// Coefficientwise image in `F_p` of a polynomial over `Q`.
    pub fn reduce_mod_p(&self, p: u32) -> Result<Polynomial> {
        let spec = FieldSpec::prime(p as u64)?;
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.reduce_mod_p(p))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_coeffs(spec, coeffs))
    }

    /// Parses the grammar described in the module docs.
    pub fn parse(text: &str, spec: FieldSpec) -> Result<Polynomial> {
        Parser::new(text, spec).poly()
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut s = c.to_string();
            let negative = s.starts_with('-');
            if negative {
                s.remove(0);
            }
            if negative {
                write!(f, "-")?;
            } else if !first {
                write!(f, "+")?;
            }
            first = false;
            let xpart = match e {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{}", e),
            };
            match (e, s.as_str()) {
                (0, _) => write!(f, "{}", s)?,
                (_, "1") => write!(f, "{}", xpart)?,
                _ => write!(f, "{}*{}", s, xpart)?,
            }
        }
        Ok(())
    }
}

macro_rules! poly_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl<'a> $tr<&'a Polynomial> for &'a Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &'a Polynomial) -> Polynomial {
                match self.$checked(rhs) {
                    Ok(r) => r,
                    Err(e) => panic!("{}", e),
                }
            }
        }
    };
}

poly_binop!(Add, add, try_add);
poly_binop!(Sub, sub, try_sub);
poly_binop!(Mul, mul, try_mul);

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            spec: self.spec,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

struct Parser<'a> {
    text: &'a str,
    chars: Vec<(usize, char)>,
    pos: usize,
    spec: FieldSpec,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str, spec: FieldSpec) -> Self {
        let chars = text
            .char_indices()
            .filter(|(_, c)| !c.is_whitespace())
            .collect();
        Parser {
            text,
            chars,
            pos: 0,
            spec,
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn offset(&self) -> usize {
        self.chars
            .get(self.pos)
            .map(|&(i, _)| i)
            .unwrap_or(self.text.len())
    }

    fn err(&self, message: &str) -> Error {
        Error::parse(self.text, self.offset(), message)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        let s: String = self.chars[start..self.pos].iter().map(|&(_, c)| c).collect();
        Ok(s.parse().expect("ascii digits"))
    }

    fn exponent(&mut self) -> Result<usize> {
        let at = self.offset();
        let e = self.digits()?;
        usize::try_from(&e)
            .ok()
            .filter(|&e| e <= 1 << 20)
            .ok_or_else(|| Error::parse(self.text, at, "exponent too large"))
    }

    fn xpow(&mut self) -> Result<usize> {
        if !self.eat('x') {
            return Err(self.err("expected 'x'"));
        }
        if self.eat('^') {
            self.exponent()
        } else {
            Ok(1)
        }
    }

    fn term(&mut self) -> Result<(BigRational, usize)> {
        match self.peek() {
            Some('x') => Ok((BigRational::from_integer(1.into()), self.xpow()?)),
            Some(c) if c.is_ascii_digit() => {
                let num = self.digits()?;
                let den = if self.eat('/') {
                    let at = self.offset();
                    let d = self.digits()?;
                    if d == BigInt::from(0) {
                        return Err(Error::parse(self.text, at, "zero denominator"));
                    }
                    d
                } else {
                    BigInt::from(1)
                };
                let e = if self.eat('*') { self.xpow()? } else { 0 };
                Ok((BigRational::new(num, den), e))
            }
            _ => Err(self.err("expected a term")),
        }
    }

    fn poly(mut self) -> Result<Polynomial> {
        let mut acc: Vec<FieldElement> = Vec::new();
        let mut first = true;
        loop {
            let negative = if self.eat('-') {
                true
            } else if self.eat('+') {
                false
            } else if first {
                false
            } else {
                return Err(self.err("expected '+' or '-'"));
            };
            let at = self.offset();
            let (mut c, e) = self.term()?;
            if negative {
                c = -c;
            }
            let c = self
                .spec
                .from_rational(&c)
                .map_err(|err| Error::parse(self.text, at, err.to_string()))?;
            if acc.len() <= e {
                acc.resize(e + 1, self.spec.zero());
            }
            acc[e] = &acc[e] + &c;
            first = false;
            if self.peek().is_none() {
                break;
            }
        }
        Ok(Polynomial::from_coeffs(self.spec, acc))
    }
}
