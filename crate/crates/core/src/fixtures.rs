//! The built-in fixture corpus.

use crate::error::{Error, Result};
use crate::input::InputDocument;

pub const FIXTURES: &[(&str, &str)] = &[
    ("FIX-A", include_str!("../../../fixtures/FIX-A.json")),
    ("FIX-B", include_str!("../../../fixtures/FIX-B.json")),
    ("FIX-C", include_str!("../../../fixtures/FIX-C.json")),
    ("FIX-D", include_str!("../../../fixtures/FIX-D.json")),
];

pub fn names() -> impl Iterator<Item = &'static str> {
    FIXTURES.iter().map(|(n, _)| *n)
}

pub fn source(name: &str) -> Option<&'static str> {
    FIXTURES.iter().find(|(n, _)| *n == name).map(|(_, s)| *s)
}

pub fn load(name: &str) -> Result<InputDocument> {
    let src = source(name).ok_or_else(|| Error::Parse(format!("unknown fixture {name}")))?;
    InputDocument::from_json(src)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_fixture_parses() {
        for name in names() {
            let doc = load(name).unwrap();
            assert_eq!(doc.name.as_deref(), Some(name));
            doc.presentation().unwrap();
        }
    }
}
