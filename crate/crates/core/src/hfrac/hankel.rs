use crate::error::{Error, Result};
use crate::field::FieldElement;

use super::{HFraction, Tail};

/// One rung of the Hankel ladder: `H_s` for `s = s_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LadderStep {
    pub j: usize,
    pub s: usize,
    pub h: FieldElement,
}

/// Rungs `s_j = k_0 + ... + k_{j-1} + j` with their determinants, up to
/// `s_j <= n_max`, for as many quotients as the fraction provides.
///
/// Uses `H_{s_{j+1}} = H_{s_j} (-1)^{k_j (k_j + 1) / 2} (v_0 ... v_j)^{k_j + 1}`.
pub fn hankel_ladder(h: &HFraction, n_max: usize) -> Vec<LadderStep> {
    let spec = h.spec();
    let mut out = vec![LadderStep {
        j: 0,
        s: 0,
        h: spec.one(),
    }];
    let (mut det, mut prod, mut s) = (spec.one(), spec.one(), 0usize);
    let mut j = 0;
    while let Some(q) = h.quotient(j) {
        prod = &prod * &q.v;
        let k = q.k;
        let mut step = prod.pow(k as i64 + 1).expect("non-negative exponent");
        if (k * (k + 1) / 2) % 2 == 1 {
            step = -step;
        }
        det = &det * &step;
        s += k + 1;
        j += 1;
        if s > n_max {
            break;
        }
        out.push(LadderStep {
            j,
            s,
            h: det.clone(),
        });
    }
    out
}

/// `H_0 .. H_{n_max}` from the fraction's ladder; off-ladder entries are 0.
///
/// Terminated fractions have `H_n = 0` past the last rung. Truncated ones
/// determine `H_n` only up to `s_J + r`, where `J` is the number of
/// quotients and `r` the known zeros of the remainder.
pub fn hankel_from_hfrac(h: &HFraction, n_max: usize) -> Result<Vec<FieldElement>> {
    let spec = h.spec();
    if h.delta() != 2 {
        return Err(Error::Unsupported(format!(
            "the determinant ladder needs delta = 2, got {}",
            h.delta()
        )));
    }
    let ladder = hankel_ladder(h, n_max);
    if let Tail::Truncated { remainder_zeros } = h.tail() {
        let s_j: usize = h.quotients().iter().map(|q| q.k + 1).sum();
        if n_max > s_j + remainder_zeros {
            return Err(Error::InsufficientDepth(format!(
                "fraction determines H_n for n <= {}, {} requested",
                s_j + remainder_zeros,
                n_max
            )));
        }
    }
    let mut out = vec![spec.zero(); n_max + 1];
    for step in ladder {
        out[step.s] = step.h;
    }
    Ok(out)
}
