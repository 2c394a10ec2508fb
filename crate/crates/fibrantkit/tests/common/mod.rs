#![allow(dead_code)]

use std::path::PathBuf;
use std::sync::OnceLock;

use fibrantkit::core::Limits;
use fibrantkit::generate::bounded_groupoids;
use fibrantkit::{load_fixture, Fixture};

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(format!("{name}.fix"))
}

pub fn shipped(name: &str) -> Fixture {
    load_fixture(fixture_path(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

/// `bounded_groupoids(2, 8)`, built once per test binary.
pub fn groupoids() -> &'static Fixture {
    static CELL: OnceLock<Fixture> = OnceLock::new();
    CELL.get_or_init(|| bounded_groupoids(2, 8, &Limits::default()).expect("groupoid family"))
}

pub const NEGATIVE_CONTROLS: [&str; 4] = ["broken_two_out_of_three", "corrupted_product", "broken_v", "no_terminal"];
