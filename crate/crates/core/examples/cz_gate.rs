//! Post-selected CZ gate on two dual-rail qubits.

use std::f64::consts::PI;

use biphoton::gates::{build_cnz, logical_action, verify_cnz};

fn main() -> biphoton::Result<()> {
    let (gate, spec) = build_cnz(2, PI)?;
    println!("alpha = {:.6}, modes = {}, p_s = {:.6}", spec.alpha, gate.modes(), gate.success_probability);

    let action = logical_action(&gate.interferometer, 2)?;
    for x in 0..4 {
        println!("<{x:02b}|G|{x:02b}> = {:+.6}", action[(x, x)].re);
    }
    println!("verified: {}", verify_cnz(&gate, 2, PI, 1e-9));
    Ok(())
}
