//! Inputs shared by the criterion benchmarks.

use charpair::{CharacteristicPair, SquareKind};

/// Pairs of increasing size for the decision benchmarks.
pub fn decision_inputs() -> Vec<(&'static str, CharacteristicPair)> {
    vec![
        ("cp3", CharacteristicPair::simplex(3)),
        ("lens(4)", CharacteristicPair::lens_family(4)),
        ("prism(4)", CharacteristicPair::prism_family(4)),
        (
            "cube a(2)",
            CharacteristicPair::square(SquareKind::A(2))
                .product_with_s2()
                .expect("valid product"),
        ),
        (
            "S2 x 4CP2",
            CharacteristicPair::polygon_sum(4)
                .product_with_s2()
                .expect("valid product"),
        ),
    ]
}
