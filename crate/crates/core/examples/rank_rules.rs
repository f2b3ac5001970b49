//! Which targets are reachable: post-selection needs rank(C) <= rank(S_in),
//! heralding needs at least rank(S_out) photons.

use biphoton::herald::feasible_herald;
use biphoton::linalg::RANK_TOL;
use biphoton::postselect::feasible_postselect;
use biphoton::random::{random_coefficients_of_rank, random_symmetric_of_rank, seeded};
use biphoton::twophoton::{from_qudit_target, state_rank, QuditTarget, TwoPhotonState};

fn main() -> biphoton::Result<()> {
    let mut rng = seeded(11);
    println!("post-selection onto 3x3 targets");
    for input_rank in 1..=3 {
        let s_in = TwoPhotonState::new(random_symmetric_of_rank(&mut rng, 4, input_rank))?;
        let row: Vec<&str> = (1..=3)
            .map(|r| {
                let t = QuditTarget::new(random_coefficients_of_rank(&mut rng, 3, 3, r)).unwrap();
                if feasible_postselect(&s_in, &t, RANK_TOL) { "yes" } else { "no" }
            })
            .collect();
        println!("  rank(S_in) = {input_rank}: rank(C) = 1, 2, 3 -> {row:?}");
    }

    println!("heralding of qudit Bell states");
    for d in 2..=3 {
        let s = from_qudit_target(&QuditTarget::bell(d));
        let rank = state_rank(&s, RANK_TOL);
        let n = (2..=2 * d).find(|&n| feasible_herald(&s, n, RANK_TOL)).unwrap();
        println!("  d = {d}: rank(S) = {rank}, minimum photons = {n}");
    }
    Ok(())
}
