//! Named reference symbols, shipped as JSON documents under `gallery/`.

use crate::symbols::{Symbol, SymbolError};

/// `(name, description, document)`.
pub const ENTRIES: &[(&str, &str, &str)] = &[
    ("rot_i", "rotation z -> iz", include_str!("../gallery/rot_i.json")),
    (
        "rot_golden",
        "rotation by the golden angle (sqrt(5)-1)/2 turns",
        include_str!("../gallery/rot_golden.json"),
    ),
    ("half", "z/2", include_str!("../gallery/half.json")),
    ("zsq", "z^2", include_str!("../gallery/zsq.json")),
    ("quad_half", "z/2 + z^2/2", include_str!("../gallery/quad_half.json")),
    (
        "hyp",
        "hyperbolic automorphism (2z+1)/(z+2)",
        include_str!("../gallery/hyp.json"),
    ),
    (
        "parab",
        "parabolic automorphism with translation 1",
        include_str!("../gallery/parab.json"),
    ),
    (
        "tangent",
        "internally tangent map (z+1)/2",
        include_str!("../gallery/tangent.json"),
    ),
];

pub fn names() -> impl Iterator<Item = &'static str> {
    ENTRIES.iter().map(|(name, _, _)| *name)
}

pub fn document(name: &str) -> Option<&'static str> {
    ENTRIES.iter().find(|(n, _, _)| *n == name).map(|(_, _, doc)| *doc)
}

pub fn get(name: &str) -> Result<Symbol, SymbolError> {
    let doc = document(name).ok_or_else(|| SymbolError::Parameter(format!("unknown gallery symbol {name:?}")))?;
    Symbol::parse(doc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::classify;
    use crate::Complex;

    #[test]
    fn every_entry_parses_and_classifies() {
        let expected = [
            ("rot_i", "elliptic_automorphism"),
            ("rot_golden", "elliptic_automorphism"),
            ("half", "interior_dw"),
            ("zsq", "interior_dw"),
            ("quad_half", "interior_dw"),
            ("hyp", "hyperbolic_dw"),
            ("parab", "parabolic_dw"),
            ("tangent", "hyperbolic_dw"),
        ];
        assert_eq!(names().count(), expected.len());
        for (name, class) in expected {
            let s = get(name).unwrap();
            assert_eq!(classify(&s).unwrap().name(), class, "{name}");
        }
    }

    #[test]
    fn values() {
        let z = Complex::new(0.3, -0.2);
        assert!((get("hyp").unwrap().apply(z) - (2.0 * z + 1.0) / (z + 2.0)).norm() < 1e-15);
        assert!((get("tangent").unwrap().apply(z) - (z + 1.0) / 2.0).norm() < 1e-15);
        let golden = (5f64.sqrt() - 1.0) / 2.0;
        let lambda = Complex::from_polar(1.0, std::f64::consts::TAU * golden);
        assert!((get("rot_golden").unwrap().apply(z) - lambda * z).norm() < 1e-15);
        assert!(get("missing").is_err());
    }
}
