//! Inputs shared by the benchmarks.

use hankelfrac::quadfrac::QuadraticTriple;
use hankelfrac::seqlib::{self, NamedSequence};
use hankelfrac::SeriesHandle;

/// Series with a quadratic equation over a prime field, by name.
pub fn quadratic_inputs() -> Vec<(&'static str, QuadraticTriple)> {
    vec![
        ("catalan-f5", seqlib::example_equation("catalan-f5").unwrap().0),
        ("paperfolding:0,3", seqlib::paperfolding_triple(0, 3)),
        ("paperfolding:0,4", seqlib::paperfolding_triple(0, 4)),
        ("rudin-shapiro:1", seqlib::rudin_shapiro_triple(1)),
    ]
}

/// Lazily generated series for the general expansion.
pub fn series_inputs() -> Vec<(&'static str, SeriesHandle)> {
    ["cube-root-f2", "quartic-catalan", "distinct-partitions"]
        .into_iter()
        .map(|id| (id, NamedSequence::parse(id).unwrap().series().unwrap()))
        .collect()
}
