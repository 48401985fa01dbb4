//! Field specs shipped with the crate.

use crate::error::{Error, Result};
use crate::field::{validate, FieldSpec, NumberField};

/// `(name, json)` for every bundled spec.
pub const SPECS: &[(&str, &str)] = &[
    ("q_i", include_str!("../specs/q_i.json")),
    ("sqrt_m5", include_str!("../specs/sqrt_m5.json")),
    ("sqrt2", include_str!("../specs/sqrt2.json")),
    ("sqrt229", include_str!("../specs/sqrt229.json")),
    ("cbrt2", include_str!("../specs/cbrt2.json")),
    ("zeta7_plus", include_str!("../specs/zeta7_plus.json")),
    ("zeta9_plus", include_str!("../specs/zeta9_plus.json")),
    ("zeta5", include_str!("../specs/zeta5.json")),
];

pub fn names() -> impl Iterator<Item = &'static str> {
    SPECS.iter().map(|(n, _)| *n)
}

pub fn spec(name: &str) -> Result<FieldSpec> {
    let json = SPECS
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, j)| *j)
        .ok_or_else(|| Error::InvalidArgument(format!("no bundled spec named {name}")))?;
    FieldSpec::from_json(json)
}

pub fn field(name: &str) -> Result<NumberField> {
    validate(spec(name)?)
}

pub fn all() -> Result<Vec<NumberField>> {
    names().map(field).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_bundled_spec_validates_cleanly() {
        for k in all().unwrap() {
            assert!(k.warnings().is_empty(), "{}: {:?}", k.label(), k.warnings());
        }
    }

    #[test]
    fn golden_forms() {
        let form = |n: &str| field(n).unwrap().norm_form().unwrap().to_string();
        assert_eq!(form("q_i"), "x1^2 + x2^2");
        assert_eq!(form("sqrt229"), "x1^2 + x1*x2 - 57*x2^2");
        assert_eq!(form("sqrt_m5"), "x1^2 + 5*x2^2");
        assert_eq!(form("cbrt2"), "x1^3 + 2*x2^3 - 6*x1*x2*x3 + 4*x3^3");
    }

    #[test]
    fn unknown_name() {
        assert!(spec("nope").is_err());
    }
}
