//! Paperfolding-type series `G_{a,b}` and the Rudin-Shapiro sequence over `F_2`.

use crate::field::{FieldElement, FieldSpec};
use crate::poly::Polynomial;
use crate::quadfrac::QuadraticTriple;
use crate::series::SeriesHandle;

/// Coefficients of `G_{a,b} = x^(-2^a) Σ_n x^(2^(n+a)) / (1 - x^(2^(n+b)))`.
///
/// Coefficient `e` counts the pairs `(n, k)` with
/// `e + 2^a = 2^(n+a) + k 2^(n+b)`, reduced mod 2.
pub fn paperfolding_coefficients(a: u32, b: u32, len: usize) -> Vec<FieldElement> {
    let f2 = FieldSpec::F2;
    let base = 1u64 << a;
    (0..len as u64)
        .map(|e| {
            let target = e + base;
            let mut count = 0u32;
            let mut n = 0u32;
            while (1u64 << (n + a)) <= target {
                let rest = target - (1u64 << (n + a));
                if rest % (1u64 << (n + b)) == 0 {
                    count += 1;
                }
                n += 1;
            }
            f2.from_i64(count as i64)
        })
        .collect()
}

pub fn paperfolding_series(a: u32, b: u32) -> SeriesHandle {
    SeriesHandle::generator(FieldSpec::F2, format!("G_{{{},{}}}", a, b), move |n| {
        paperfolding_coefficients(a, b, n)
    })
}

/// `1 + (1 + x^(2^b)) G + x^(2^a) (1 + x^(2^b)) G^2 = 0`.
pub fn paperfolding_triple(a: u32, b: u32) -> QuadraticTriple {
    let f2 = FieldSpec::F2;
    let one_plus = &Polynomial::one(f2) + &Polynomial::monomial(f2.one(), 1 << b);
    QuadraticTriple {
        a: Polynomial::one(f2),
        c: one_plus.mul_x_power(1 << a),
        b: one_plus,
        delta: 2,
    }
}

/// `u_0 .. u_{len-1}`: `u_0 = 0`, `u_{2n} = u_n`, `u_{4n+1} = u_n`,
/// `u_{4n+3} = 1 - u_{2n+1}`.
pub fn rudin_shapiro(len: usize) -> Vec<u8> {
    let mut u = vec![0u8; len];
    for n in 1..len {
        u[n] = match n % 4 {
            0 | 2 => u[n / 2],
            1 => u[n / 4],
            _ => 1 - u[n / 2],
        };
    }
    u
}

/// `f_s = Σ u_{n+s} x^n` over `F_2`.
pub fn rudin_shapiro_series(shift: usize) -> SeriesHandle {
    SeriesHandle::generator(FieldSpec::F2, format!("rudin-shapiro/x^{}", shift), move |n| {
        rudin_shapiro(n + shift)[shift..]
            .iter()
            .map(|&b| FieldSpec::F2.from_i64(b as i64))
            .collect()
    })
}

/// `x^(3-s) + (1+x)^4 f_s + (1+x)^5 x^s f_s^2 = 0` for `s` in 0..=3; the
/// shifts are exact because `u_0 = u_1 = u_2 = 0`.
pub fn rudin_shapiro_triple(shift: usize) -> QuadraticTriple {
    assert!(shift <= 3, "shift must be at most 3");
    let f2 = FieldSpec::F2;
    let one_x = Polynomial::from_i64s(f2, &[1, 1]);
    QuadraticTriple {
        a: Polynomial::monomial(f2.one(), 3 - shift),
        b: one_x.pow(4),
        c: one_x.pow(5).mul_x_power(shift),
        delta: 2,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bits(v: &[FieldElement]) -> Vec<u32> {
        v.iter().map(|c| c.residue().unwrap()).collect()
    }

    #[test]
    fn regular_paperfolding() {
        assert_eq!(bits(&paperfolding_coefficients(0, 2, 8)), [1, 1, 0, 1, 1, 0, 0, 1]);
    }

    #[test]
    fn rudin_shapiro_counts_eleven_blocks() {
        let u = rudin_shapiro(256);
        assert_eq!(&u[..8], &[0, 0, 0, 1, 0, 0, 1, 0]);
        for (n, &un) in u.iter().enumerate() {
            let blocks = (0..8).filter(|i| (n >> i) & 3 == 3).count();
            assert_eq!(un as usize, blocks % 2, "n = {}", n);
        }
    }

    #[test]
    fn generators_solve_their_equations() {
        let check = |t: &QuadraticTriple, s: &SeriesHandle, n: usize| {
            let f = Polynomial::from_coeffs(t.spec(), s.prefix(n).unwrap());
            let r = &(&t.a + &(&t.b * &f)) + &(&(&t.c * &f) * &f);
            assert!(r.truncate(n).is_zero(), "{} fails below x^{}", t, n);
        };
        for a in 0..4 {
            for b in 0..4 {
                check(&paperfolding_triple(a, b), &paperfolding_series(a, b), 200);
            }
        }
        for s in 0..=3 {
            check(&rudin_shapiro_triple(s), &rudin_shapiro_series(s), 200);
        }
    }
}
