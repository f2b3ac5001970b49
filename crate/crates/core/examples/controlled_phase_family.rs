//! Success probability of multi-controlled phase gates against its lower bound.

use std::f64::consts::PI;

use biphoton::gates::{build_cnz, cnz_success_lower_bound, cnz_success_probability, verify_cnz};

fn main() -> biphoton::Result<()> {
    println!("{:>2} {:>8} {:>12} {:>12} {:>6}", "n", "phi/pi", "p_s", "bound", "ok");
    for n in 2..=5 {
        for phi in [PI / 4.0, PI / 2.0, PI] {
            let (gate, _) = build_cnz(n, phi)?;
            println!(
                "{n:>2} {:>8.3} {:>12.6e} {:>12.6e} {:>6}",
                phi / PI,
                cnz_success_probability(n, phi),
                cnz_success_lower_bound(n, phi),
                verify_cnz(&gate, n, phi, 1e-9)
            );
        }
    }
    Ok(())
}
