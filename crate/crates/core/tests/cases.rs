use std::time::Instant;

use steiner_core::search::{reproduce_case, CaseId};
use steiner_core::Caps;

#[test]
fn every_case_is_consistent() {
    let caps = Caps::default();
    let mut bad = Vec::new();
    for case in CaseId::ALL {
        let start = Instant::now();
        let report = reproduce_case(case, &caps).unwrap();
        println!("{} ({:.2?})", case.as_str(), start.elapsed());
        for claim in report.claims.iter().filter(|c| !c.holds) {
            println!("  MISMATCH {}: expected {} observed {}", claim.statement, claim.expected, claim.observed);
            bad.push(format!("{}: {}", case.as_str(), claim.statement));
        }
        assert_eq!(report.consistent, report.claims.iter().all(|c| c.holds));
    }
    assert!(bad.is_empty(), "{bad:?}");
}
