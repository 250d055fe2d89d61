pub mod error;
pub mod field;
pub mod hfrac;
pub mod input;
pub mod oracle;
pub mod poly;
pub mod quadfrac;
pub mod report;
pub mod reproduce;
pub mod seqlib;
pub mod series;

pub use error::{Error, ErrorClass, Result};
pub use field::{FieldElement, FieldSpec};
pub use hfrac::{HFraction, PartialQuotient, Tail};
pub use poly::Polynomial;
pub use series::SeriesHandle;
