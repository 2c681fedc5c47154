//! Shared fixture configurations for the benchmark targets.

use zonotopal_core::VectorConfig;

/// Three generic vectors in the plane.
pub fn planar_pair() -> VectorConfig {
    VectorConfig::from_int_rows(&[&[1, 0, 1], &[0, 1, 1]]).unwrap()
}

/// Seven columns of rank three with repeated columns and rich flat structure.
pub fn seven_columns() -> VectorConfig {
    VectorConfig::from_int_rows(&[
        &[1, 1, 0, 0, 1, 1, 0],
        &[1, 1, 1, 1, 0, 0, 0],
        &[0, 0, 0, 0, 1, 1, 1],
    ])
    .unwrap()
}

/// Oriented incidence configuration of the complete graph K4: six columns of
/// rank three, the largest graph case exercised by the unit tests.
pub fn k4_incidence() -> VectorConfig {
    use zonotopal_core::matroid::{graph_to_config, GraphInput};
    let g = GraphInput::new(4, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
    graph_to_config(&g).unwrap()
}
