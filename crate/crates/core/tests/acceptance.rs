// The nine acceptance criteria, run in order with the default profile.  One
// PASS/FAIL line is printed per criterion (run with --nocapture to see them).

use causal_beams::verify::{run_criterion, VerifyOptions, CRITERIA};

#[test]
fn acceptance() {
    let opts = VerifyOptions::default();
    let mut failures = Vec::new();
    for (i, &(title, budget)) in CRITERIA.iter().enumerate() {
        let n = i + 1;
        let (checks, secs) = run_criterion(n, &opts).unwrap_or_else(|e| panic!("criterion {n} errored: {e}"));
        let ok = checks.iter().all(|c| c.pass) && secs <= budget;
        println!("{} criterion {n} ({title}): {} checks, {secs:.2} s of {budget} s", if ok { "PASS" } else { "FAIL" }, checks.len());
        for c in checks.iter().filter(|c| !c.pass) {
            println!("    failed: {} got {:e} tolerance {:e}", c.name, c.got, c.tolerance);
        }
        if !ok {
            failures.push(n);
        }
    }
    assert!(failures.is_empty(), "criteria failed: {failures:?}");
}
