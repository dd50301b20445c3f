//! Pins the reference data to golden JSON files.
//!
//! The blocks of the reference datum that are not given in closed form are
//! produced by a nullspace solver; the golden files freeze the solver's basis
//! choices so downstream factor tables cannot drift silently. Regenerate with
//! `CGKIT_BLESS=1 cargo test -p cgkit-core --test reference_data`.

use cgkit_core::cgvariety::{phi0, CGDatum};
use cgkit_core::reptheory::KleinianGroup;
use std::path::PathBuf;

fn golden_path(n: u32) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("data")
        .join(format!("phi0_D{n}.json"))
}

#[test]
fn type_d_reference_data_match_golden_files() {
    for n in 4..=10 {
        let group = KleinianGroup::d(n);
        let datum = phi0(&group);
        let path = golden_path(n);
        if std::env::var("CGKIT_BLESS").is_ok() {
            let mut text = serde_json::to_string_pretty(&datum).unwrap();
            text.push('\n');
            std::fs::write(&path, text).unwrap();
        }
        let text = std::fs::read_to_string(&path)
            .unwrap_or_else(|_| panic!("missing golden file for D_{n}; rerun with CGKIT_BLESS=1"));
        let loaded: CGDatum = serde_json::from_str(&text).unwrap();
        assert_eq!(loaded, datum, "reference datum for D_{n} drifted from its golden file");
    }
}

#[test]
fn golden_files_round_trip_bit_exactly() {
    for n in [4, 7, 10] {
        let text = std::fs::read_to_string(golden_path(n)).unwrap();
        let loaded: CGDatum = serde_json::from_str(&text).unwrap();
        let again = serde_json::to_string_pretty(&loaded).unwrap() + "\n";
        assert_eq!(text, again);
    }
}
