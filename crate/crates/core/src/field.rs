//! Exact scalars: residues modulo a prime below 2^31, or rationals in lowest terms.
//!
//! Every [`FieldElement`] carries its field, so mixing elements of different
//! fields is detected at run time. The `try_*` methods report the mismatch as
//! an error; the operator impls panic on it, since inside the algorithms a
//! mismatch can only come from a bug.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

const MAX_MODULUS: u64 = 1 << 31;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Kind {
    Prime(u32),
    Rationals,
}

/// The field a scalar lives in: `F_p` for a prime `p < 2^31`, or `Q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldSpec(Kind);

impl FieldSpec {
    pub const Q: FieldSpec = FieldSpec(Kind::Rationals);
    pub const F2: FieldSpec = FieldSpec(Kind::Prime(2));
    pub const F3: FieldSpec = FieldSpec(Kind::Prime(3));
    pub const F5: FieldSpec = FieldSpec(Kind::Prime(5));

    /// The prime field `F_p`. Composite moduli and moduli `>= 2^31` are rejected.
    pub fn prime(p: u64) -> Result<Self> {
        if p >= MAX_MODULUS {
            return Err(Error::ModulusOutOfRange(p));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(FieldSpec(Kind::Prime(p as u32)))
    }

    pub fn rationals() -> Self {
        FieldSpec::Q
    }

    /// `Some(p)` for `F_p`, `None` for `Q`.
    pub fn modulus(&self) -> Option<u32> {
        match self.0 {
            Kind::Prime(p) => Some(p),
            Kind::Rationals => None,
        }
    }

    pub fn is_prime_field(&self) -> bool {
        matches!(self.0, Kind::Prime(_))
    }

    /// 0 for `Q`.
    pub fn characteristic(&self) -> u32 {
        self.modulus().unwrap_or(0)
    }

    pub fn zero(&self) -> FieldElement {
        self.from_i64(0)
    }

    pub fn one(&self) -> FieldElement {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> FieldElement {
        match self.0 {
            Kind::Prime(p) => FieldElement(Repr::Mod {
                v: n.rem_euclid(p as i64) as u32,
                p,
            }),
            Kind::Rationals => FieldElement(Repr::Rat(BigRational::from_integer(n.into()))),
        }
    }

    pub fn from_bigint(&self, n: &BigInt) -> FieldElement {
        match self.0 {
            Kind::Prime(p) => FieldElement(Repr::Mod {
                v: mod_bigint(n, p),
                p,
            }),
            Kind::Rationals => FieldElement(Repr::Rat(BigRational::from_integer(n.clone()))),
        }
    }

    /// Image of a rational number; fails in `F_p` when `p` divides the denominator.
    pub fn from_rational(&self, q: &BigRational) -> Result<FieldElement> {
        match self.0 {
            Kind::Prime(p) => reduce_rational(q, p),
            Kind::Rationals => Ok(FieldElement(Repr::Rat(q.clone()))),
        }
    }

    pub fn from_ratio(&self, num: i64, den: i64) -> Result<FieldElement> {
        if den == 0 {
            return Err(Error::DivisionByZero);
        }
        self.from_rational(&BigRational::new(num.into(), den.into()))
    }

    /// Parses `"n"`, `"-n"` or `"a/b"` into this field.
    pub fn parse_element(&self, text: &str) -> Result<FieldElement> {
        let t = text.trim();
        let q = parse_rational(t).ok_or_else(|| Error::parse(text, 0, "expected an integer or a/b"))?;
        self.from_rational(&q)
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            Kind::Prime(p) => write!(f, "F{}", p),
            Kind::Rationals => write!(f, "Q"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    /// Accepts `"Q"` and `"F<p>"`, e.g. `"F2"`, `"F5"`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t == "Q" {
            return Ok(FieldSpec::Q);
        }
        let digits = t
            .strip_prefix('F')
            .ok_or_else(|| Error::parse(s, 0, "expected \"Q\" or \"F<prime>\""))?;
        let p: u64 = digits
            .parse()
            .map_err(|_| Error::parse(s, 1, "expected a prime after 'F'"))?;
        FieldSpec::prime(p)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Repr {
    Mod { v: u32, p: u32 },
    Rat(BigRational),
}

/// An exact element of `F_p` or `Q`, always in normal form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldElement(Repr);

impl FieldElement {
    pub fn spec(&self) -> FieldSpec {
        match &self.0 {
            Repr::Mod { p, .. } => FieldSpec(Kind::Prime(*p)),
            Repr::Rat(_) => FieldSpec::Q,
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.0 {
            Repr::Mod { v, .. } => *v == 0,
            Repr::Rat(q) => q.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.0 {
            Repr::Mod { v, .. } => *v == 1,
            Repr::Rat(q) => q.is_one(),
        }
    }

    /// Residue in `[0, p)` for prime-field elements.
    pub fn residue(&self) -> Option<u32> {
        match &self.0 {
            Repr::Mod { v, .. } => Some(*v),
            Repr::Rat(_) => None,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match &self.0 {
            Repr::Rat(q) => Some(q),
            Repr::Mod { .. } => None,
        }
    }

    /// Rational value; residues lift to their representative in `[0, p)`.
    pub fn lift(&self) -> BigRational {
        match &self.0 {
            Repr::Mod { v, .. } => BigRational::from_integer(BigInt::from(*v)),
            Repr::Rat(q) => q.clone(),
        }
    }

    fn mismatch(&self, other: &FieldElement) -> Error {
        Error::FieldMismatch {
            left: self.spec().to_string(),
            right: other.spec().to_string(),
        }
    }

    pub fn try_add(&self, other: &FieldElement) -> Result<FieldElement> {
        match (&self.0, &other.0) {
            (Repr::Mod { v: a, p }, Repr::Mod { v: b, p: q }) if p == q => {
                let s = (*a as u64 + *b as u64) % *p as u64;
                Ok(FieldElement(Repr::Mod { v: s as u32, p: *p }))
            }
            (Repr::Rat(a), Repr::Rat(b)) => Ok(FieldElement(Repr::Rat(a + b))),
            _ => Err(self.mismatch(other)),
        }
    }

    pub fn try_sub(&self, other: &FieldElement) -> Result<FieldElement> {
        match (&self.0, &other.0) {
            (Repr::Mod { v: a, p }, Repr::Mod { v: b, p: q }) if p == q => {
                let s = (*a as u64 + *p as u64 - *b as u64) % *p as u64;
                Ok(FieldElement(Repr::Mod { v: s as u32, p: *p }))
            }
            (Repr::Rat(a), Repr::Rat(b)) => Ok(FieldElement(Repr::Rat(a - b))),
            _ => Err(self.mismatch(other)),
        }
    }

    pub fn try_mul(&self, other: &FieldElement) -> Result<FieldElement> {
        match (&self.0, &other.0) {
            (Repr::Mod { v: a, p }, Repr::Mod { v: b, p: q }) if p == q => {
                let s = (*a as u64 * *b as u64) % *p as u64;
                Ok(FieldElement(Repr::Mod { v: s as u32, p: *p }))
            }
            (Repr::Rat(a), Repr::Rat(b)) => Ok(FieldElement(Repr::Rat(a * b))),
            _ => Err(self.mismatch(other)),
        }
    }

    pub fn try_div(&self, other: &FieldElement) -> Result<FieldElement> {
        self.try_mul(&other.inv()?)
    }

    pub fn inv(&self) -> Result<FieldElement> {
        match &self.0 {
            Repr::Mod { v, p } => {
                if *v == 0 {
                    return Err(Error::DivisionByZero);
                }
                Ok(FieldElement(Repr::Mod {
                    v: inv_mod(*v, *p),
                    p: *p,
                }))
            }
            Repr::Rat(q) => {
                if q.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                Ok(FieldElement(Repr::Rat(q.recip())))
            }
        }
    }

    /// `self^e`; negative exponents require `self != 0`.
    pub fn pow(&self, e: i64) -> Result<FieldElement> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = self.spec().one();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            sq = &sq * &sq;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Maps a rational element into `F_p`.
    pub fn reduce_mod_p(&self, p: u32) -> Result<FieldElement> {
        let spec = FieldSpec::prime(p as u64)?;
        match &self.0 {
            Repr::Rat(q) => reduce_rational(q, p),
            Repr::Mod { p: q, .. } if *q == p => Ok(self.clone()),
            Repr::Mod { .. } => Err(Error::FieldMismatch {
                left: self.spec().to_string(),
                right: spec.to_string(),
            }),
        }
    }

    /// Smallest `n >= 1` with `self^n = 1` in `F_p`.
    pub fn multiplicative_order(&self) -> Result<u64> {
        let (v, p) = match &self.0 {
            Repr::Mod { v, p } => (*v, *p),
            Repr::Rat(_) => {
                return Err(Error::InvalidInput(
                    "multiplicative order is only defined in prime fields".into(),
                ))
            }
        };
        if v == 0 {
            return Err(Error::DivisionByZero);
        }
        let group = (p - 1) as u64;
        let mut order = group;
        for q in prime_factors(group) {
            while order % q == 0 && pow_mod(v as u64, order / q, p as u64) == 1 {
                order /= q;
            }
        }
        Ok(order)
    }

    /// All square roots, in increasing order (residue order in `F_p`,
    /// numeric order in `Q`).
    pub fn square_roots(&self) -> Vec<FieldElement> {
        match &self.0 {
            Repr::Mod { v, p } => sqrt_mod(*v, *p)
                .map(|r| {
                    let mut roots = vec![r, (*p - r) % *p];
                    roots.sort_unstable();
                    roots.dedup();
                    roots
                        .into_iter()
                        .map(|v| FieldElement(Repr::Mod { v, p: *p }))
                        .collect()
                })
                .unwrap_or_default(),
            Repr::Rat(q) => {
                if q.is_negative() {
                    return Vec::new();
                }
                let (n, d) = (q.numer(), q.denom());
                let (rn, rd) = (n.sqrt(), d.sqrt());
                if &(&rn * &rn) != n || &(&rd * &rd) != d {
                    return Vec::new();
                }
                let r = BigRational::new(rn, rd);
                if r.is_zero() {
                    vec![FieldElement(Repr::Rat(r))]
                } else {
                    vec![FieldElement(Repr::Rat(-r.clone())), FieldElement(Repr::Rat(r))]
                }
            }
        }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Mod { v, .. } => write!(f, "{}", v),
            Repr::Rat(q) => {
                if q.is_integer() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
        }
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl<'a> $tr<&'a FieldElement> for &'a FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &'a FieldElement) -> FieldElement {
                match self.$checked(rhs) {
                    Ok(r) => r,
                    Err(e) => panic!("{}", e),
                }
            }
        }
        impl $tr for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);
forward_binop!(Div, div, try_div);

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        match &self.0 {
            Repr::Mod { v, p } => FieldElement(Repr::Mod {
                v: (*p - *v) % *p,
                p: *p,
            }),
            Repr::Rat(q) => FieldElement(Repr::Rat(-q)),
        }
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

fn inv_mod(a: u32, p: u32) -> u32 {
    let (mut r0, mut r1) = (p as i64, a as i64);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    t0.rem_euclid(p as i64) as u32
}

/// One square root of `a` modulo `p` (Tonelli-Shanks), if any.
fn sqrt_mod(a: u32, p: u32) -> Option<u32> {
    let (a, p) = (a as u64, p as u64);
    if a == 0 || p == 2 {
        return Some(a as u32);
    }
    if pow_mod(a, (p - 1) / 2, p) != 1 {
        return None;
    }
    let (mut q, mut s) = (p - 1, 0u32);
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    let mut z = 2;
    while pow_mod(z, (p - 1) / 2, p) != p - 1 {
        z += 1;
    }
    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(a, q, p);
    let mut r = pow_mod(a, (q + 1) / 2, p);
    while t != 1 {
        let mut i = 0;
        let mut tt = t;
        while tt != 1 {
            tt = tt * tt % p;
            i += 1;
        }
        let b = pow_mod(c, 1 << (m - i - 1), p);
        m = i;
        c = b * b % p;
        t = t * c % p;
        r = r * b % p;
    }
    Some(r as u32)
}

fn mod_bigint(n: &BigInt, p: u32) -> u32 {
    n.mod_floor(&BigInt::from(p)).to_u32().expect("residue fits in u32")
}

fn reduce_rational(q: &BigRational, p: u32) -> Result<FieldElement> {
    let den = mod_bigint(q.denom(), p);
    if den == 0 {
        return Err(Error::NotReducible {
            value: FieldElement(Repr::Rat(q.clone())).to_string(),
            p,
        });
    }
    let num = mod_bigint(q.numer(), p) as u64;
    let v = num * inv_mod(den, p) as u64 % p as u64;
    Ok(FieldElement(Repr::Mod { v: v as u32, p }))
}

fn parse_rational(t: &str) -> Option<BigRational> {
    let (n, d) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let n: BigInt = n.parse().ok()?;
    let d: BigInt = d.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(BigRational::new(n, d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn fp(p: u64, v: i64) -> FieldElement {
        FieldSpec::prime(p).unwrap().from_i64(v)
    }

    fn q(n: i64, d: i64) -> FieldElement {
        FieldSpec::Q.from_ratio(n, d).unwrap()
    }

    #[test]
    fn basic_arithmetic() {
        assert_eq!(fp(5, 3) + fp(5, 4), fp(5, 2));
        assert_eq!(q(1, 3) + q(1, 6), q(1, 2));
        assert_eq!(fp(2, 1) + fp(2, 1), fp(2, 0));
        assert_eq!(-fp(5, 1), fp(5, 4));
        assert_eq!(fp(7, 3) - fp(7, 5), fp(7, 5));
    }

    #[test]
    fn inverses() {
        assert_eq!(fp(5, 2).inv().unwrap(), fp(5, 3));
        assert_eq!(fp(3, 2).inv().unwrap(), fp(3, 2));
        assert_eq!(q(-3, 4).inv().unwrap(), q(-4, 3));
        assert_eq!(fp(7, 0).inv(), Err(Error::DivisionByZero));
        assert_eq!(q(0, 1).inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn mismatched_fields_are_rejected() {
        assert!(matches!(fp(5, 1).try_add(&fp(7, 1)), Err(Error::FieldMismatch { .. })));
        assert!(matches!(fp(5, 1).try_mul(&q(1, 2)), Err(Error::FieldMismatch { .. })));
    }

    #[test]
    fn reduction_mod_p() {
        assert_eq!(q(11, 4).reduce_mod_p(3).unwrap(), fp(3, 2));
        assert_eq!(q(-3, 2).reduce_mod_p(5).unwrap(), fp(5, 1));
        assert!(matches!(q(1, 2).reduce_mod_p(2), Err(Error::NotReducible { .. })));
    }

    #[test]
    fn orders() {
        assert_eq!(fp(5, 4).multiplicative_order().unwrap(), 2);
        assert_eq!(fp(7, 1).multiplicative_order().unwrap(), 1);
        assert_eq!(fp(5, 2).multiplicative_order().unwrap(), 4);
        assert!(fp(5, 0).multiplicative_order().is_err());
        // brute force on a mid-size prime
        let p = 1009u64;
        for a in 1..p as i64 {
            let x = fp(p, a);
            let mut n = 1;
            let mut acc = x.clone();
            while !acc.is_one() {
                acc = &acc * &x;
                n += 1;
            }
            assert_eq!(x.multiplicative_order().unwrap(), n);
        }
    }

    #[test]
    fn spec_parsing() {
        assert_eq!("F2".parse::<FieldSpec>().unwrap(), FieldSpec::F2);
        assert_eq!("Q".parse::<FieldSpec>().unwrap(), FieldSpec::Q);
        assert_eq!("F4".parse::<FieldSpec>(), Err(Error::NotPrime(4)));
        assert!("F2147483648".parse::<FieldSpec>().is_err());
        assert!("G7".parse::<FieldSpec>().is_err());
        assert_eq!(FieldSpec::prime(2147483647).unwrap().to_string(), "F2147483647");
    }

    #[test]
    fn square_roots() {
        let roots: Vec<_> = fp(13, 10).square_roots();
        assert_eq!(roots, vec![fp(13, 6), fp(13, 7)]);
        assert!(fp(5, 2).square_roots().is_empty());
        assert_eq!(q(9, 4).square_roots(), vec![q(-3, 2), q(3, 2)]);
        assert!(q(2, 1).square_roots().is_empty());
        assert_eq!(fp(2, 1).square_roots(), vec![fp(2, 1)]);
        for p in [3u64, 5, 7, 11, 13, 17, 97, 101] {
            for a in 0..p as i64 {
                let x = fp(p, a);
                for r in x.square_roots() {
                    assert_eq!(&r * &r, x);
                }
            }
        }
    }

    #[test]
    fn display_is_canonical() {
        assert_eq!(fp(5, -1).to_string(), "4");
        assert_eq!(q(6, -4).to_string(), "-3/2");
        assert_eq!(q(4, 2).to_string(), "2");
        assert_eq!(FieldSpec::Q.parse_element(" -3/2 ").unwrap(), q(-3, 2));
        assert_eq!(FieldSpec::F5.parse_element("-3/2").unwrap(), fp(5, 1));
    }

    const PRIMES: [u64; 6] = [2, 3, 5, 7, 101, 2147483647];

    proptest! {
        #[test]
        fn fermat(pi in 0usize..PRIMES.len(), a in 1i64..i64::MAX) {
            let p = PRIMES[pi];
            let x = fp(p, a);
            prop_assume!(!x.is_zero());
            prop_assert!(x.pow(p as i64 - 1).unwrap().is_one());
            prop_assert!((&x * &x.inv().unwrap()).is_one());
            prop_assert_eq!((p - 1) % x.multiplicative_order().unwrap(), 0);
        }

        #[test]
        fn field_axioms_mod_p(pi in 0usize..PRIMES.len(), a: i64, b: i64, c: i64) {
            let p = PRIMES[pi];
            let (a, b, c) = (fp(p, a), fp(p, b), fp(p, c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&(&a + &b) - &b, a);
        }

        #[test]
        fn reduction_is_a_ring_homomorphism(
            pi in 0usize..5,
            n1 in -1000i64..1000, d1 in 1i64..1000,
            n2 in -1000i64..1000, d2 in 1i64..1000,
        ) {
            let p = PRIMES[pi] as u32;
            prop_assume!(d1 % p as i64 != 0 && d2 % p as i64 != 0);
            let (x, y) = (q(n1, d1), q(n2, d2));
            let r = |e: &FieldElement| e.reduce_mod_p(p).unwrap();
            prop_assert_eq!(r(&(&x + &y)), &r(&x) + &r(&y));
            prop_assert_eq!(r(&(&x * &y)), &r(&x) * &r(&y));
        }
    }
}
