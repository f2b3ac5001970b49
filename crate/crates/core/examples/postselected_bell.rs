//! Bell pair from two single photons by post-selection, and the rank rule
//! that forbids a qutrit Bell state from the same input.

use biphoton::postselect::synthesize_postselect;
use biphoton::twophoton::{single_photons_state, QuditTarget};
use biphoton::verify::extract_postselected;

fn main() -> biphoton::Result<()> {
    let photons = single_photons_state(2)?;
    let bell = QuditTarget::bell(2);
    let res = synthesize_postselect(&photons, &bell)?;
    let report = extract_postselected(&res.interferometer, &photons, &bell)?;
    println!("{} modes ({} auxiliary), p_s = {:.6}", res.modes(), res.aux_modes, res.success_probability);
    println!("fidelity with target: {:.12}", report.fidelity_vs_target);
    println!("extracted coefficients:{:.6}", report.extracted);

    match synthesize_postselect(&photons, &QuditTarget::bell(3)) {
        Err(e) => println!("qutrit Bell pair: {e}"),
        Ok(_) => unreachable!("rank 3 target from a rank 2 input"),
    }
    Ok(())
}
