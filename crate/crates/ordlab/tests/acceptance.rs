use ordlab::suite::{run_all, DEFAULT_SEED};

#[test]
fn acceptance_criteria() {
    let results = run_all(DEFAULT_SEED);
    for r in &results {
        println!("{}", r.line());
        for note in &r.notes {
            println!("    note: {note}");
        }
    }
    let failed: Vec<u8> = results.iter().filter(|r| !r.passed).map(|r| r.id).collect();
    println!(
        "acceptance: {}/{} criteria pass",
        results.len() - failed.len(),
        results.len()
    );
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
