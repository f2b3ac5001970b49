//! Values computed by an independent brute-force simulation (explicit
//! permanents over every permutation, written separately from this crate) and
//! frozen here.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use biphoton::gates::{build_cnz, cnz_success_probability};
use biphoton::herald::synthesize_herald;
use biphoton::linalg::{c64, ComplexMatrix};
use biphoton::postselect::synthesize_postselect;
use biphoton::twophoton::{from_qudit_target, single_photons_state, QuditTarget, TwoPhotonState};
use biphoton::verify::extract_heralded;

#[test]
fn controlled_phase_success_probabilities() {
    let table = [
        (3, PI / 4.0, 0.028129245623987425),
        (3, PI / 2.0, 0.01755999378002109),
        (3, PI, 0.017559993780021075),
        (4, PI / 4.0, 0.006479513755124683),
        (4, PI / 2.0, 0.0038958953205824065),
        (4, PI, 0.0035526914991271964),
    ];
    for (n, phi, expected) in table {
        assert!((cnz_success_probability(n, phi) - expected).abs() < 1e-14, "n = {n}, phi = {phi}");
        let (res, _) = build_cnz(n, phi).unwrap();
        assert!((res.success_probability - expected).abs() < 1e-12);
    }
}

#[test]
fn postselected_bell_from_two_photons() {
    let res = synthesize_postselect(&single_photons_state(2).unwrap(), &QuditTarget::bell(2)).unwrap();
    assert!((res.success_probability - 0.5).abs() < 1e-12);
    assert_eq!(res.modes(), 6);
}

#[test]
fn heralded_bell_from_four_photons() {
    let bell = from_qudit_target(&QuditTarget::bell(2));
    let res = synthesize_herald(&bell, 4).unwrap();
    assert_eq!(res.modes(), 9);
    assert!((res.success_probability - 0.020013089644602).abs() < 1e-12);
}

#[test]
fn heralded_rank_three_diagonal_state() {
    let d = [0.6, 0.5, 0.3];
    let norm = (2.0 * d.iter().map(|x| x * x).sum::<f64>()).sqrt();
    let s = TwoPhotonState::new(ComplexMatrix::from_fn(3, 3, |i, j| if i == j { c64(d[i] / norm, 0.0) } else { c64(0.0, 0.0) })).unwrap();
    let res = synthesize_herald(&s, 3).unwrap();
    assert_eq!(res.modes(), 7);
    assert!((res.success_probability - 0.013197976202970).abs() < 1e-12);
    let pattern = res.herald.clone().unwrap();
    let report = extract_heralded(&res.interferometer, 3, &pattern, 3, s.matrix()).unwrap();
    assert!(report.fidelity_vs_target > 1.0 - 1e-12);
}

#[test]
fn beam_splitter_bunching() {
    use biphoton::fock::{amplitude, FockState, Interferometer};
    let r = FRAC_1_SQRT_2;
    let bs = Interferometer::new(ComplexMatrix::from_row_slice(2, 2, &[c64(r, 0.0), c64(r, 0.0), c64(r, 0.0), c64(-r, 0.0)])).unwrap();
    let input = FockState::new(vec![1, 1]);
    let bunched = amplitude(&bs, &FockState::new(vec![2, 0]), &input).unwrap();
    assert!((bunched - c64(r, 0.0)).norm() < 1e-15);
    let coincidence = amplitude(&bs, &input, &input).unwrap();
    assert!(coincidence.norm() < 1e-15);
}
