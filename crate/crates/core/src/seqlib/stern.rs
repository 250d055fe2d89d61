//! Stern's diatomic sequence, its twisted variant, and the grafting step
//! that moves their Hankel determinants to `F_2`.
//!
//! Both series are rational mod 2, so their Hankel determinants vanish mod 2
//! from some point on. Peeling two levels over `Q` exposes a factor 2 in the
//! next quotient; the remainder `G` behind it satisfies a Mahler equation
//! that is quadratic over `F_2` once `G(x^2)` is replaced by `G(x)^2`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::Result;
use crate::field::{FieldElement, FieldSpec};
use crate::poly::Polynomial;
use crate::quadfrac::QuadraticTriple;
use crate::series::SeriesHandle;

/// `a_0 .. a_{len-1}` with `a_0 = 0`, `a_1 = 1`, `a_{2n} = a_n`,
/// `a_{2n+1} = a_n + a_{n+1}`.
pub fn stern(len: usize) -> Vec<BigInt> {
    let mut a = vec![BigInt::zero(); len];
    for n in 1..len {
        a[n] = if n == 1 {
            BigInt::one()
        } else if n % 2 == 0 {
            a[n / 2].clone()
        } else {
            &a[n / 2] + &a[n / 2 + 1]
        };
    }
    a
}

/// `b_0 .. b_{len-1}` with `b_0 = 0`, `b_1 = 1`, `b_{2n} = -b_n`,
/// `b_{2n+1} = -(b_n + b_{n+1})`.
pub fn twisted_stern(len: usize) -> Vec<BigInt> {
    let mut b = vec![BigInt::zero(); len];
    for n in 1..len {
        b[n] = if n == 1 {
            BigInt::one()
        } else if n % 2 == 0 {
            -&b[n / 2]
        } else {
            -(&b[n / 2] + &b[n / 2 + 1])
        };
    }
    b
}

fn shifted_series(label: &str, seq: fn(usize) -> Vec<BigInt>) -> SeriesHandle {
    let q = FieldSpec::Q;
    SeriesHandle::generator(q, label, move |n| seq(n + 1)[1..].iter().map(|c| q.from_bigint(c)).collect())
}

/// `S(x) = Σ a_{n+1} x^n` over `Q`.
pub fn stern_series() -> SeriesHandle {
    shifted_series("stern", stern)
}

/// `B(x) = Σ b_{n+1} x^n` over `Q`.
pub fn twisted_stern_series() -> SeriesHandle {
    shifted_series("twisted-stern", twisted_stern)
}

/// `(1+x+x^2) + (1+x+x^2) G + x^4 G^2 = 0` over `F_2`, shared by the
/// remainders of `S` and `B`.
pub fn grafted_triple() -> QuadraticTriple {
    let f2 = FieldSpec::F2;
    let t = Polynomial::from_i64s(f2, &[1, 1, 1]);
    QuadraticTriple {
        a: t.clone(),
        b: t,
        c: Polynomial::monomial(f2.one(), 4),
        delta: 2,
    }
}

/// Two-level head `f = v0 / (1 + u1 x - v1 x^2 / (1 + u2 x - w x^2 G))`
/// with integer parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraftHead {
    pub v0: i64,
    pub u1: i64,
    pub v1: i64,
    pub u2: i64,
    pub w: i64,
}

impl GraftHead {
    /// `S = 1 / (1 - x - x^2 / (1 + 2x + 2x^2 G))`.
    pub const STERN: GraftHead = GraftHead { v0: 1, u1: -1, v1: 1, u2: 2, w: -2 };
    /// `B = 1 / (1 + x + x^2 / (1 + 2x^2 U))`.
    pub const TWISTED_STERN: GraftHead = GraftHead { v0: 1, u1: 1, v1: -1, u2: 0, w: -2 };

    /// The remainder `G` of `f` behind this head, over `Q`.
    pub fn remainder(&self, f: &SeriesHandle) -> Result<SeriesHandle> {
        let q = FieldSpec::Q;
        let lin = |c: i64, d: i64| SeriesHandle::polynomial(Polynomial::from_i64s(q, &[c, d]));
        // v1 x^2 / E2 = 1 + u1 x - v0 / f
        let t = lin(1, self.u1)
            .add(&f.reciprocal()?.scale(q.from_i64(-self.v0))?)?
            .shift_div(2)?;
        let e2 = t.reciprocal()?.scale(q.from_i64(self.v1))?;
        // w x^2 G = 1 + u2 x - E2
        lin(1, self.u2)
            .add(&e2.scale(-q.one())?)?
            .shift_div(2)?
            .scale(q.from_ratio(1, self.w)?)
    }
}

/// `(H_n(f) / 2^(n-2)) mod 2` for `2 <= n <= n_max`, from exact integer
/// determinants; `None` where `2^(n-2)` does not divide `H_n(f)`.
pub fn scaled_parity(seq: &[BigInt], n_max: usize) -> Result<Vec<(usize, Option<u8>)>> {
    let h = crate::oracle::hankel_sequence_integer(seq, n_max)?;
    Ok((2..=n_max)
        .map(|n| {
            let scale = BigInt::one() << (n - 2);
            let (q, r) = num_integer::Integer::div_rem(&h[n], &scale);
            let parity = r.is_zero().then(|| if num_integer::Integer::is_odd(&q) { 1 } else { 0 });
            (n, parity)
        })
        .collect())
}

/// Coefficients reduced mod 2, or `None` if one has an even denominator.
pub fn reduce_to_f2(coeffs: &[FieldElement]) -> Option<Vec<FieldElement>> {
    coeffs.iter().map(|c| c.reduce_mod_p(2).ok()).collect()
}
