//! Named sequences with direct generators and, where available, quadratic
//! equations for the periodicity pipeline.

mod automatic;
mod stern;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::poly::Polynomial;
use crate::quadfrac::QuadraticTriple;
use crate::series::SeriesHandle;

pub use automatic::{
    paperfolding_coefficients, paperfolding_series, paperfolding_triple, rudin_shapiro, rudin_shapiro_series,
    rudin_shapiro_triple,
};
pub use stern::{
    grafted_triple, reduce_to_f2, scaled_parity, stern, stern_series, twisted_stern, twisted_stern_series, GraftHead,
};

/// Number of partitions of `n` into distinct parts, for `n < len`.
pub fn distinct_partitions(len: usize) -> Vec<BigInt> {
    let mut q = vec![BigInt::from(0); len];
    if len == 0 {
        return q;
    }
    q[0] = BigInt::from(1);
    for part in 1..len {
        for n in (part..len).rev() {
            let add = q[n - part].clone();
            q[n] += add;
        }
    }
    q
}

pub fn distinct_partitions_series() -> SeriesHandle {
    let q = FieldSpec::Q;
    SeriesHandle::generator(q, "distinct-partitions", move |n| {
        distinct_partitions(n).iter().map(|c| q.from_bigint(c)).collect()
    })
}

/// Ids of the worked example series; [`example_series`] also accepts
/// `distinct-partitions`.
pub const EXAMPLE_IDS: &[&str] = &[
    "quartic-catalan",
    "cube-root-f2",
    "catalan-f5",
    "catalan-f2",
    "vanishing-root-f2",
    "unit-root-f2",
    "square-root-f3",
];

fn poly(spec: FieldSpec, c: &[i64]) -> Polynomial {
    Polynomial::from_i64s(spec, c)
}

/// `(1 - sqrt(1 - w)) / (2 x^m)` for a rational `w = num / den` of valuation `m`.
fn catalan_like(num: Polynomial, den: Polynomial, m: usize) -> Result<SeriesHandle> {
    let spec = num.spec();
    let inner = SeriesHandle::rational(&den - &num, den)?;
    let root = inner.sqrt_with_root(spec.one())?;
    SeriesHandle::polynomial(Polynomial::one(spec))
        .add(&root.scale(-spec.one())?)?
        .shift_div(m)?
        .scale(spec.from_i64(2).inv()?)
}

/// The series of a worked example, built from its defining formula.
pub fn example_series(id: &str) -> Result<SeriesHandle> {
    let q = FieldSpec::Q;
    let f2 = FieldSpec::F2;
    let f3 = FieldSpec::F3;
    let f5 = FieldSpec::F5;
    match id {
        "quartic-catalan" => catalan_like(poly(q, &[0, 0, 0, 0, 4]), poly(q, &[1, 1]), 4),
        "distinct-partitions" => Ok(distinct_partitions_series()),
        "cube-root-f2" => SeriesHandle::binomial_power(
            BigRational::new(1.into(), 3.into()),
            &SeriesHandle::polynomial(poly(q, &[1, -1])),
            f2,
        ),
        "catalan-f5" => catalan_like(poly(f5, &[0, 4]), poly(f5, &[1, 0, 0, 0, -1]), 1),
        "catalan-f2" => SeriesHandle::quadratic_root(
            poly(f2, &[-1]),
            poly(f2, &[1, 0, 0, 0, -1]),
            poly(f2, &[0, -1, 0, 0, 0, 1]),
            f2.one(),
        ),
        "vanishing-root-f2" | "unit-root-f2" => SeriesHandle::quadratic_root(
            poly(f2, &[0, -1]),
            poly(f2, &[1, 0, 0, 0, -1]),
            poly(f2, &[-1, 0, 0, 0, 1]),
            if id == "vanishing-root-f2" { f2.zero() } else { f2.one() },
        ),
        "square-root-f3" => Ok(SeriesHandle::rational(poly(f3, &[0, 0, 1, -1]), poly(f3, &[1, 0, 0, 1]))?.sqrt()),
        _ => Err(Error::UnknownId(id.to_string())),
    }
}

/// The equation and root selector behind a quadratic example.
pub fn example_equation(id: &str) -> Result<(QuadraticTriple, Option<crate::field::FieldElement>)> {
    let spec_of = |p: u64| FieldSpec::prime(p).expect("prime");
    let t = |p: u64, a: &str, b: &str, c: &str| QuadraticTriple::parse(spec_of(p), a, b, c, 2);
    match id {
        "catalan-f5" => Ok((t(5, "-1", "1-x^4", "-x+x^5")?, None)),
        "catalan-f2" => Ok((t(2, "-1", "1-x^4", "-x+x^5")?, None)),
        "vanishing-root-f2" => Ok((t(2, "-x", "1-x^4", "-1+x^4")?, Some(FieldSpec::F2.zero()))),
        "unit-root-f2" => Ok((t(2, "-x", "1-x^4", "-1+x^4")?, Some(FieldSpec::F2.one()))),
        "square-root-f3" => Ok((t(3, "-x^2+x^3", "0", "1+x^3")?, None)),
        _ => Err(Error::UnknownId(id.to_string())),
    }
}

/// A named sequence, as accepted on the command line and in JSON.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "kebab-case")]
pub enum NamedSequence {
    Paperfolding { a: u32, b: u32 },
    RudinShapiro { shift: usize },
    Stern,
    TwistedStern,
    DistinctPartitions,
    Example { id: String },
}

impl NamedSequence {
    /// Parses `paperfolding:A,B`, `rudin-shapiro:S`, `stern`,
    /// `twisted-stern`, `distinct-partitions`, or an example id.
    pub fn parse(text: &str) -> Result<Self> {
        let bad = || Error::UnknownId(text.to_string());
        let (head, args) = match text.split_once(':') {
            Some((h, a)) => (h, Some(a)),
            None => (text, None),
        };
        let nums = |a: Option<&str>, n: usize| -> Result<Vec<u32>> {
            let v: Vec<u32> = a
                .ok_or_else(bad)?
                .split(',')
                .map(|s| s.trim().parse::<u32>().map_err(|_| bad()))
                .collect::<Result<_>>()?;
            if v.len() != n {
                return Err(bad());
            }
            Ok(v)
        };
        let named = match head {
            "paperfolding" => {
                let v = nums(args, 2)?;
                if v[0] > 16 || v[1] > 16 {
                    return Err(Error::InvalidInput("paperfolding parameters must be at most 16".into()));
                }
                NamedSequence::Paperfolding { a: v[0], b: v[1] }
            }
            "rudin-shapiro" => {
                let s = nums(args, 1)?[0] as usize;
                if s > 3 {
                    return Err(Error::InvalidInput("rudin-shapiro shift must be 0..=3".into()));
                }
                NamedSequence::RudinShapiro { shift: s }
            }
            _ if args.is_some() => return Err(bad()),
            "stern" => NamedSequence::Stern,
            "twisted-stern" => NamedSequence::TwistedStern,
            "distinct-partitions" => NamedSequence::DistinctPartitions,
            id if EXAMPLE_IDS.contains(&id) => NamedSequence::Example { id: id.to_string() },
            _ => return Err(bad()),
        };
        Ok(named)
    }

    /// Identifiers with a short description, for listings.
    pub fn catalogue() -> Vec<(String, &'static str)> {
        let mut out = vec![
            ("paperfolding:A,B".to_string(), "G_{a,b} over F2"),
            ("rudin-shapiro:S".to_string(), "sum u_{n+S} x^n over F2, S in 0..=3"),
            ("stern".to_string(), "Stern's diatomic sequence a_{n+1} over Q"),
            ("twisted-stern".to_string(), "twisted Stern sequence b_{n+1} over Q"),
            ("distinct-partitions".to_string(), "partitions into distinct parts over Q"),
        ];
        out.extend(EXAMPLE_IDS.iter().map(|id| (id.to_string(), "worked example series")));
        out
    }

    pub fn series(&self) -> Result<SeriesHandle> {
        Ok(match self {
            NamedSequence::Paperfolding { a, b } => paperfolding_series(*a, *b),
            NamedSequence::RudinShapiro { shift } => rudin_shapiro_series(*shift),
            NamedSequence::Stern => stern_series(),
            NamedSequence::TwistedStern => twisted_stern_series(),
            NamedSequence::DistinctPartitions => distinct_partitions_series(),
            NamedSequence::Example { id } => example_series(id)?,
        })
    }

    /// Quadratic equation for the pipeline, with its root selector.
    pub fn equation(&self) -> Option<(QuadraticTriple, Option<crate::field::FieldElement>)> {
        match self {
            NamedSequence::Paperfolding { a, b } => Some((paperfolding_triple(*a, *b), None)),
            NamedSequence::RudinShapiro { shift } => Some((rudin_shapiro_triple(*shift), None)),
            NamedSequence::Example { id } => example_equation(id).ok(),
            _ => None,
        }
    }

    /// First `len` terms as integers, for sequences that are integral.
    pub fn integer_terms(&self, len: usize) -> Option<Vec<BigInt>> {
        match self {
            NamedSequence::Stern => Some(stern(len + 1)[1..].to_vec()),
            NamedSequence::TwistedStern => Some(twisted_stern(len + 1)[1..].to_vec()),
            NamedSequence::DistinctPartitions => Some(distinct_partitions(len)),
            NamedSequence::RudinShapiro { shift } => Some(
                rudin_shapiro(len + shift)[*shift..]
                    .iter()
                    .map(|&b| BigInt::from(b))
                    .collect(),
            ),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadfrac::expand_quadratic_equation;

    #[test]
    fn distinct_partitions_prefix() {
        let want: Vec<BigInt> = [1, 1, 1, 2, 2, 3, 4, 5, 6, 8].iter().map(|&x| BigInt::from(x)).collect();
        assert_eq!(distinct_partitions(10), want);
    }

    #[test]
    fn distinct_partitions_by_subsets() {
        let dp = distinct_partitions(21);
        let mut count = vec![0u64; 21];
        for mask in 0u32..(1 << 20) {
            let total: u32 = (0..20).filter(|i| mask >> i & 1 == 1).map(|i| i + 1).sum();
            if total <= 20 {
                count[total as usize] += 1;
            }
        }
        for n in 0..=20 {
            assert_eq!(dp[n], BigInt::from(count[n]), "n = {}", n);
        }
        assert_eq!(dp[20], BigInt::from(64));
    }

    #[test]
    fn examples_satisfy_their_equations() {
        for id in ["catalan-f5", "catalan-f2", "vanishing-root-f2", "unit-root-f2", "square-root-f3"] {
            let (t, branch) = example_equation(id).unwrap();
            let s = example_series(id).unwrap();
            let e = expand_quadratic_equation(&t, branch).unwrap();
            assert_eq!(e.series().unwrap().prefix(60).unwrap(), s.prefix(60).unwrap(), "{}", id);
        }
    }

    #[test]
    fn example_two_one_solves_its_equation() {
        // (1+x) x^4 f^2 - (1+x) f + 1 = 0
        let q = FieldSpec::Q;
        let s = example_series("quartic-catalan").unwrap();
        let r = SeriesHandle::quadratic_root(poly(q, &[1]), poly(q, &[-1, -1]), poly(q, &[0, 0, 0, 0, 1, 1]), q.one())
            .unwrap();
        assert_eq!(s.prefix(40).unwrap(), r.prefix(40).unwrap());
    }

    #[test]
    fn parse_names() {
        assert_eq!(NamedSequence::parse("paperfolding:0,2").unwrap(), NamedSequence::Paperfolding { a: 0, b: 2 });
        assert_eq!(NamedSequence::parse("stern").unwrap(), NamedSequence::Stern);
        assert!(NamedSequence::parse("stern:1").is_err());
        assert!(NamedSequence::parse("rudin-shapiro:4").is_err());
        assert!(NamedSequence::parse("nope").is_err());
        let json = serde_json::to_string(&NamedSequence::Paperfolding { a: 0, b: 2 }).unwrap();
        assert_eq!(json, r#"{"name":"paperfolding","a":0,"b":2}"#);
    }
}
