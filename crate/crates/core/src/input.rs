//! JSON description of a series, as read by the command line.
//!
//! ```json
//! {"field": "F5", "source": {"kind": "quadratic", "A": "-1", "B": "1-x^4", "C": "-x+x^5", "f0": "1"}}
//! {"field": "Q", "source": {"kind": "rational", "num": "1", "den": "1-x-x^2"}}
//! {"field": "F3", "source": {"kind": "explicit", "coeffs": ["1", "2", "0"]}}
//! {"field": "F2", "source": {"kind": "named", "name": "paperfolding", "a": 0, "b": 2}}
//! ```

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::poly::Polynomial;
use crate::quadfrac::QuadraticTriple;
use crate::seqlib::NamedSequence;
use crate::series::SeriesHandle;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum SourceSpec {
    Quadratic {
        #[serde(rename = "A")]
        a: String,
        #[serde(rename = "B")]
        b: String,
        #[serde(rename = "C")]
        c: String,
        /// Selects the root; defaults to the unique one when there is one.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        f0: Option<String>,
    },
    Rational {
        num: String,
        den: String,
    },
    Explicit {
        coeffs: Vec<String>,
    },
    Named(NamedSequence),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesSpec {
    /// Ignored for named sources, which fix their own field.
    #[serde(default = "default_field")]
    pub field: String,
    pub source: SourceSpec,
}

fn default_field() -> String {
    "Q".to_string()
}

impl SeriesSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidInput(format!("series spec: {}", e)))
    }

    pub fn field(&self) -> Result<FieldSpec> {
        self.field.parse()
    }

    /// Quadratic equation with its root selector, for sources that have one.
    pub fn equation(&self, delta: usize) -> Result<Option<(QuadraticTriple, Option<FieldElement>)>> {
        match &self.source {
            SourceSpec::Quadratic { a, b, c, f0 } => {
                let spec = self.field()?;
                let t = QuadraticTriple::parse(spec, a, b, c, delta)?;
                let branch = f0.as_deref().map(|s| spec.parse_element(s)).transpose()?;
                Ok(Some((t, branch)))
            }
            SourceSpec::Named(n) => Ok(n.equation().map(|(mut t, b)| {
                t.delta = delta;
                (t, b)
            })),
            _ => Ok(None),
        }
    }

    pub fn build(&self) -> Result<SeriesHandle> {
        match &self.source {
            SourceSpec::Named(n) => n.series(),
            SourceSpec::Rational { num, den } => {
                let spec = self.field()?;
                SeriesHandle::rational(Polynomial::parse(num, spec)?, Polynomial::parse(den, spec)?)
            }
            SourceSpec::Explicit { coeffs } => {
                let spec = self.field()?;
                let c = coeffs.iter().map(|s| spec.parse_element(s)).collect::<Result<Vec<_>>>()?;
                SeriesHandle::explicit(spec, c)
            }
            SourceSpec::Quadratic { .. } => {
                let (t, branch) = self.equation(2)?.expect("quadratic source has an equation");
                let f0 = match branch {
                    Some(b) => b,
                    None => unique_root(&t)?,
                };
                SeriesHandle::quadratic_root(t.a, t.b, t.c, f0)
            }
        }
    }
}

/// `F(0)` for `A + B F + C F^2 = 0` when it is forced.
fn unique_root(t: &QuadraticTriple) -> Result<FieldElement> {
    let (a0, b0, c0) = (t.a.coeff(0), t.b.coeff(0), t.c.coeff(0));
    if c0.is_zero() && !b0.is_zero() {
        return Ok(-&(&a0 / &b0));
    }
    Err(Error::InvalidBranch(format!(
        "{} does not determine F(0); give f0 explicitly",
        t
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_every_kind() {
        let q = SeriesSpec::from_json(
            r#"{"field": "F5", "source": {"kind": "quadratic", "A": "-1", "B": "1-x^4", "C": "-x+x^5"}}"#,
        )
        .unwrap();
        let f5 = FieldSpec::F5;
        assert_eq!(q.build().unwrap().prefix(3).unwrap(), vec![f5.one(), f5.one(), f5.from_i64(2)]);
        let r = SeriesSpec::from_json(r#"{"field": "Q", "source": {"kind": "rational", "num": "1", "den": "1-x-x^2"}}"#)
            .unwrap();
        let fib: Vec<String> = r.build().unwrap().prefix(6).unwrap().iter().map(|c| c.to_string()).collect();
        assert_eq!(fib, ["1", "1", "2", "3", "5", "8"]);
        let e = SeriesSpec::from_json(r#"{"field": "F3", "source": {"kind": "explicit", "coeffs": ["1", "2"]}}"#)
            .unwrap();
        assert_eq!(e.build().unwrap().declared_len(), Some(2));
        let n = SeriesSpec::from_json(r#"{"source": {"kind": "named", "name": "paperfolding", "a": 0, "b": 2}}"#)
            .unwrap();
        assert_eq!(n.source, SourceSpec::Named(NamedSequence::Paperfolding { a: 0, b: 2 }));
        assert!(n.equation(2).unwrap().is_some());
        let back: SeriesSpec = serde_json::from_str(&serde_json::to_string(&n).unwrap()).unwrap();
        assert_eq!(back, n);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(SeriesSpec::from_json("{}"), Err(Error::InvalidInput(_))));
        let ambiguous = SeriesSpec::from_json(
            r#"{"field": "F3", "source": {"kind": "quadratic", "A": "-1", "B": "0", "C": "1"}}"#,
        )
        .unwrap();
        assert!(matches!(ambiguous.build(), Err(Error::InvalidBranch(_))));
    }
}
