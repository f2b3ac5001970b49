//! Acceptance gate: every criterion at its stated tolerance and time budget.
//! Runs without the test harness so that the verdict lines always print.

use biphoton::selftest::{run_all, DEFAULT_SEED};

fn main() {
    let outcomes = run_all(DEFAULT_SEED);
    for o in &outcomes {
        println!("{o}");
    }
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    println!("acceptance: {} of {} criteria passed", outcomes.len() - failed, outcomes.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
