//! Heralded Bell pair from four single photons, with two herald photons
//! detected in one mode.

use biphoton::herald::synthesize_herald_with;
use biphoton::twophoton::{from_qudit_target, QuditTarget};
use biphoton::verify::extract_heralded;

fn main() -> biphoton::Result<()> {
    let bell = from_qudit_target(&QuditTarget::bell(2));
    let (res, construction) = synthesize_herald_with(&bell, 4, None)?;
    let pattern = res.herald.clone().expect("four photons need a herald");
    println!("{} modes, herald signal {:?}, p_s = {:.6e}", res.modes(), pattern.signal(), res.success_probability);
    println!("herald identity deviation: {:.2e}", construction.identity_error()?);

    let report = extract_heralded(&res.interferometer, 4, &pattern, bell.modes(), bell.matrix())?;
    println!("fidelity with target: {:.12}", report.fidelity_vs_target);

    match synthesize_herald_with(&bell, 3, None) {
        Err(e) => println!("three photons: {e}"),
        Ok(_) => unreachable!("rank 4 state from 3 photons"),
    }
    Ok(())
}
