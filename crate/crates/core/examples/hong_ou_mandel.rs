//! Two photons on a balanced beam splitter: output distribution over all
//! two-photon Fock states.

use std::f64::consts::FRAC_1_SQRT_2;

use biphoton::fock::{amplitude, FockState, Interferometer};
use biphoton::linalg::c64;
use biphoton::ComplexMatrix;

fn main() -> biphoton::Result<()> {
    let r = FRAC_1_SQRT_2;
    let bs = Interferometer::new(ComplexMatrix::from_row_slice(2, 2, &[c64(r, 0.0), c64(r, 0.0), c64(r, 0.0), c64(-r, 0.0)]))?;
    let input = FockState::new(vec![1, 1]);
    for out in FockState::enumerate(2, 2) {
        let a = amplitude(&bs, &out, &input)?;
        println!("{:?}: amplitude {:+.6}, probability {:.6}", out.occupations(), a.re, a.norm_sqr());
    }
    Ok(())
}
