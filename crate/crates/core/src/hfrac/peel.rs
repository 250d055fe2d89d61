//! The peel relation: if `F = x^k / (1 + u(x) x - x^(k+2) G)` with
//! `deg u <= k`, then `H_n(F) = (-1)^(k(k+1)/2) H_{n-k-1}(G)`.

use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::oracle::hankel_sequence_bruteforce;
use crate::poly::Polynomial;
use crate::series::SeriesHandle;

/// `x^k / (1 + u x - x^(k+2) G)` as a series.
pub fn peel_series(k: usize, u: &Polynomial, g: &SeriesHandle) -> Result<SeriesHandle> {
    if u.degree() > k as isize {
        return Err(Error::InvalidInput(format!("deg u = {} exceeds k = {}", u.degree(), k)));
    }
    let spec = g.spec();
    let den_poly = &Polynomial::one(spec) + &u.mul_x_power(1);
    let tail = g
        .mul(&SeriesHandle::polynomial(Polynomial::monomial(-spec.one(), k + 2)))?;
    let den = SeriesHandle::polynomial(den_poly).add(&tail)?;
    den.reciprocal()?
        .mul(&SeriesHandle::polynomial(Polynomial::monomial(spec.one(), k)))
}

/// Both sides of the relation for one `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeelRow {
    pub n: usize,
    pub lhs: FieldElement,
    pub rhs: FieldElement,
}

/// Rows `n = k+1 ..= n_max`, both sides from the determinant oracle.
pub fn peel_check(f: &SeriesHandle, k: usize, g: &SeriesHandle, n_max: usize) -> Result<Vec<PeelRow>> {
    let hf = hankel_sequence_bruteforce(f, n_max)?;
    let hg = hankel_sequence_bruteforce(g, n_max.saturating_sub(k + 1))?;
    let negate = (k * (k + 1) / 2) % 2 == 1;
    Ok((k + 1..=n_max)
        .map(|n| {
            let g_side = hg[n - k - 1].clone();
            PeelRow {
                n,
                lhs: hf[n].clone(),
                rhs: if negate { -g_side } else { g_side },
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;

    #[test]
    fn constant_case() {
        let q = FieldSpec::Q;
        let g = SeriesHandle::polynomial(Polynomial::zero(q));
        let f = peel_series(0, &Polynomial::zero(q), &g).unwrap();
        assert_eq!(f.prefix(3).unwrap(), vec![q.one(), q.zero(), q.zero()]);
        let rows = peel_check(&f, 0, &g, 4).unwrap();
        assert_eq!(rows[0].lhs, q.one());
        assert!(rows.iter().all(|r| r.lhs == r.rhs));
    }

    #[test]
    fn seven_by_seven_with_k_three() {
        let f3 = FieldSpec::F3;
        let g = SeriesHandle::polynomial(Polynomial::from_i64s(f3, &[2, 1, 0, 2, 1, 1, 2, 0, 1, 2, 2, 1]));
        let u = Polynomial::from_i64s(f3, &[1, 0, 2, 1]);
        let f = peel_series(3, &u, &g).unwrap();
        let rows = peel_check(&f, 3, &g, 7).unwrap();
        assert_eq!(rows.last().unwrap().n, 7);
        assert!(rows.iter().all(|r| r.lhs == r.rhs));
    }
}
