//! Every golden case must reproduce its committed report byte-for-byte.
//! Regenerate with GOLDEN_WRITE=1 after an intentional change.

use std::fs;
use std::path::PathBuf;

use pretor_cli::{canonical_json, digest, list_cases, run_case};

fn golden_path(id: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("golden").join(format!("{}.json", id))
}

#[test]
fn golden_cases_match() {
    let regen = std::env::var("GOLDEN_WRITE").is_ok();
    for case in list_cases() {
        let (report, ok) = run_case(case.id).unwrap();
        assert!(ok, "case {} did not pass", case.id);
        let canon = canonical_json(&report);
        let path = golden_path(case.id);
        if regen {
            fs::write(&path, &canon).unwrap();
            continue;
        }
        let committed = fs::read_to_string(&path)
            .unwrap_or_else(|_| panic!("missing golden file for {}", case.id));
        assert_eq!(
            canon,
            committed,
            "case {} drifted from its golden report (digest {} vs {})",
            case.id,
            digest(&canon),
            digest(&committed)
        );
    }
}

#[test]
fn unknown_case_errors() {
    assert!(run_case("nonexistent").is_err());
}
