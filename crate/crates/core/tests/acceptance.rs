use pseudodiff::acceptance;

fn main() {
    let mut failed = 0;
    for id in 1..=acceptance::criterion_count() {
        let r = acceptance::run(id).expect("criterion exists");
        let status = if r.passed { "PASS" } else { "FAIL" };
        println!(
            "{status} [{}] {} ({:.2}s / {}s): {}",
            r.id, r.name, r.seconds, r.budget_seconds, r.detail
        );
        if !r.passed {
            failed += 1;
        }
    }
    println!(
        "{} of {} criteria passed",
        acceptance::criterion_count() - failed,
        acceptance::criterion_count()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
