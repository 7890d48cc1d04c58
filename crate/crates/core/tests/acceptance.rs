use std::io::Write;

use kct::acceptance::run_all;

#[test]
fn acceptance() {
    let results = run_all(20_240_501);
    // written past the test harness capture so the lines always show
    let mut out = std::io::stdout().lock();
    for r in &results {
        writeln!(out, "{r}").unwrap();
    }
    drop(out);
    let failed: Vec<&str> = results.iter().filter(|r| !r.passed).map(|r| r.name).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
