//! Benchmark inputs shared by the criterion benches.

use cubic_moduli::complexes::sections_matrix;
use cubic_moduli::moduli::Fixture;
use cubic_moduli::QMatrix;

/// The degree-`m` section matrix of `A` for a shipped fixture.
pub fn fixture_sections(fixture: Fixture, m: i64) -> QMatrix {
    sections_matrix(fixture.load().a(), m).expect("fixtures are not parametric")
}
