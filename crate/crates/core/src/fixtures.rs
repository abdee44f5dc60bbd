//! Named example states shipped with the crate.

use crate::error::Result;
use crate::json::StateDocument;

pub struct Fixture {
    pub name: &'static str,
    pub file: &'static str,
    pub json: &'static str,
}

pub const FIXTURES: &[Fixture] = &[
    Fixture {
        name: "bell",
        file: "fixtures/bell.json",
        json: include_str!("../../../fixtures/bell.json"),
    },
    Fixture {
        name: "ghz3",
        file: "fixtures/ghz3.json",
        json: include_str!("../../../fixtures/ghz3.json"),
    },
    Fixture {
        name: "w3",
        file: "fixtures/w3.json",
        json: include_str!("../../../fixtures/w3.json"),
    },
    Fixture {
        name: "product3",
        file: "fixtures/product3.json",
        json: include_str!("../../../fixtures/product3.json"),
    },
];

pub fn find(name: &str) -> Option<&'static Fixture> {
    FIXTURES.iter().find(|f| f.name == name)
}

impl Fixture {
    pub fn document(&self) -> Result<StateDocument> {
        StateDocument::parse(self.json)
    }
}
