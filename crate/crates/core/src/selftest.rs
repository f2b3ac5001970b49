//! Seeded end-to-end checks of every capability, each with a runtime budget.
//!
//! The same suite backs `biphoton selftest` and the `acceptance` test target.

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use rand::Rng;
use serde::Serialize;

use crate::error::Error;
use crate::fock::{amplitude, evolve_two_photon, permanent, permanent_by_expansion, FockState, Interferometer};
use crate::gates::{build_cnz, cnz_success_probability, cnz_success_probability_for_root, verify_cnz};
use crate::herald::{synthesize_herald_with, HeraldPattern};
use crate::linalg::{c64, numerical_rank, takagi, unitarity_error, unitary_extension, ComplexMatrix, RANK_TOL, UNITARY_TOL};
use crate::postselect::synthesize_postselect;
use crate::random::{
    random_coefficients_of_rank, random_complex, random_diagonal_state, random_symmetric, random_symmetric_of_rank, random_unitary, seeded,
    SuiteRng,
};
use crate::twophoton::{state_rank, QuditTarget, TwoPhotonState};
use crate::verify::{extract_heralded, extract_postselected};

pub const DEFAULT_SEED: u64 = 0x5eed_2024;

#[derive(Debug, Clone, Serialize)]
pub struct CriterionOutcome {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
}

impl std::fmt::Display for CriterionOutcome {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "[{verdict}] {}. {} ({:.3} s): {}", self.id, self.name, self.seconds, self.detail)
    }
}

type Check = std::result::Result<String, String>;

fn timed(id: usize, name: &'static str, budget: Duration, check: impl FnOnce() -> Check) -> CriterionOutcome {
    let start = Instant::now();
    let result = check();
    let elapsed = start.elapsed();
    let (mut passed, mut detail) = match result {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    if elapsed > budget {
        passed = false;
        detail = format!("{detail}; exceeded budget of {:?}", budget);
    }
    CriterionOutcome { id, name, passed, detail, seconds: elapsed.as_secs_f64() }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond { Ok(()) } else { Err(msg()) }
}

pub fn cz_gate() -> CriterionOutcome {
    timed(1, "CZ gate at p_s = 1/9", Duration::from_secs(1), || {
        let (res, spec) = build_cnz(2, PI).map_err(|e| e.to_string())?;
        let dev = (res.success_probability - 1.0 / 9.0).abs().max((spec.p_s - 1.0 / 9.0).abs());
        ensure(dev <= 1e-9, || format!("p_s = {} deviates from 1/9 by {dev:.2e}", res.success_probability))?;
        ensure(verify_cnz(&res, 2, PI, 1e-9), || "logical action differs from sqrt(p_s) CZ".into())?;
        Ok(format!("p_s = {:.12}, {} modes", res.success_probability, res.modes()))
    })
}

pub fn controlled_phase_family() -> CriterionOutcome {
    timed(2, "controlled-phase family n in {3,4}", Duration::from_secs(10), || {
        let mut worst_root: f64 = 0.0;
        for n in [3usize, 4] {
            for phi in [PI / 4.0, PI / 2.0, PI] {
                let (res, _) = build_cnz(n, phi).map_err(|e| e.to_string())?;
                ensure(verify_cnz(&res, n, phi, 1e-9), || format!("n={n}, phi={phi:.4}: logical action mismatch"))?;
                let p = cnz_success_probability(n, phi);
                ensure((res.success_probability - p).abs() <= 1e-10, || {
                    format!("n={n}, phi={phi:.4}: p_s {} vs closed form {p}", res.success_probability)
                })?;
                for j in 1..n {
                    worst_root = worst_root.max((cnz_success_probability_for_root(n, phi, j) - p).abs());
                }
            }
        }
        ensure(worst_root <= 1e-12, || format!("p_s depends on the root choice by {worst_root:.2e}"))?;
        Ok(format!("6 gates verified, root spread {worst_root:.1e}"))
    })
}

fn random_input_state(rng: &mut SuiteRng, rank: usize) -> TwoPhotonState {
    let m = rng.random_range(rank.max(2)..=6);
    let s = if rng.random_bool(0.5) { random_symmetric_of_rank(rng, m, rank) } else { random_diagonal_state(rng, m, rank) };
    TwoPhotonState::new(s).expect("random state is valid")
}

pub fn postselection_rank_rule(seed: u64) -> CriterionOutcome {
    timed(3, "post-selection succeeds iff rank(C) <= rank(S_in)", Duration::from_secs(60), || {
        let mut rng = seeded(seed);
        let (mut successes, mut refusals) = (0, 0);
        let mut worst_fidelity: f64 = 1.0;
        for case in 0..200 {
            let d1 = rng.random_range(1..=4);
            let d2 = rng.random_range(1..=4);
            let target_rank = rng.random_range(1..=d1.min(d2));
            let input_rank = rng.random_range(1..=4);
            let t = QuditTarget::new(random_coefficients_of_rank(&mut rng, d1, d2, target_rank)).map_err(|e| e.to_string())?;
            let s_in = random_input_state(&mut rng, input_rank);
            let feasible = target_rank <= input_rank;
            match synthesize_postselect(&s_in, &t) {
                Ok(res) if feasible => {
                    let report = extract_postselected(&res.interferometer, &s_in, &t).map_err(|e| e.to_string())?;
                    worst_fidelity = worst_fidelity.min(report.fidelity_vs_target);
                    ensure(report.fidelity_vs_target > 1.0 - 1e-9 && report.probability > 0.0, || {
                        format!("case {case}: fidelity {} at p_s {}", report.fidelity_vs_target, report.probability)
                    })?;
                    successes += 1;
                }
                Err(Error::InfeasibleRank(_)) if !feasible => refusals += 1,
                Ok(_) => return Err(format!("case {case}: rank(C)={target_rank} > rank(S_in)={input_rank} but synthesis succeeded")),
                Err(e) => return Err(format!("case {case}: rank(C)={target_rank}, rank(S_in)={input_rank}: {e}")),
            }
        }
        Ok(format!("{successes} synthesized, {refusals} refused, min fidelity 1 - {:.1e}", 1.0 - worst_fidelity))
    })
}

struct HeraldTally {
    successes: usize,
    refusals: usize,
    worst_fidelity: f64,
    worst_identity: f64,
}

fn herald_cases(seed: u64) -> std::result::Result<HeraldTally, String> {
    let mut rng = seeded(seed);
    let mut tally = HeraldTally { successes: 0, refusals: 0, worst_fidelity: 1.0, worst_identity: 0.0 };
    let mut run = |s: &TwoPhotonState, n: usize, expected_signal: Option<&[usize]>| -> std::result::Result<(), String> {
        let rank = state_rank(s, RANK_TOL);
        let (res, construction) = synthesize_herald_with(s, n, None).map_err(|e| format!("rank {rank}, n = {n}: {e}"))?;
        let pattern = res.herald.clone().unwrap_or_else(HeraldPattern::none);
        if let Some(signal) = expected_signal {
            ensure(pattern.signal() == signal, || format!("herald signal {:?}, expected {signal:?}", pattern.signal()))?;
        }
        let report = extract_heralded(&res.interferometer, n, &pattern, s.modes(), s.matrix()).map_err(|e| e.to_string())?;
        ensure(report.fidelity_vs_target > 1.0 - 1e-9, || format!("rank {rank}, n = {n}: fidelity {}", report.fidelity_vs_target))?;
        let identity = construction.identity_error().map_err(|e| e.to_string())?;
        ensure(identity <= 1e-9, || format!("rank {rank}, n = {n}: herald permanent identity off by {identity:.2e}"))?;
        tally.worst_fidelity = tally.worst_fidelity.min(report.fidelity_vs_target);
        tally.worst_identity = tally.worst_identity.max(identity);
        tally.successes += 1;
        Ok(())
    };

    run(&crate::twophoton::from_qudit_target(&QuditTarget::bell(2)), 4, Some(&[2]))?;
    let mut refusals = 0;
    for case in 0..36 {
        let rank = 2 + case % 3;
        let m = rng.random_range(rank..=6);
        let s = if case % 2 == 0 { random_diagonal_state(&mut rng, m, rank) } else { random_symmetric_of_rank(&mut rng, m, rank) };
        let s = TwoPhotonState::new(s).map_err(|e| e.to_string())?;
        run(&s, rank, None)?;
        match synthesize_herald_with(&s, rank - 1, None) {
            Err(Error::InfeasibleRank(_)) => refusals += 1,
            Ok(_) => return Err(format!("case {case}: rank {rank} state synthesized from {} photons", rank - 1)),
            Err(e) => return Err(format!("case {case}: expected an infeasibility report, got {e}")),
        }
    }
    tally.refusals = refusals;
    Ok(tally)
}

pub fn heralded_rank_rule(seed: u64) -> CriterionOutcome {
    timed(4, "heralding succeeds iff n >= rank(S_out)", Duration::from_secs(60), || {
        let t = herald_cases(seed)?;
        Ok(format!("{} synthesized, {} refused, min fidelity 1 - {:.1e}", t.successes, t.refusals, 1.0 - t.worst_fidelity))
    })
}

pub fn herald_identity(seed: u64) -> CriterionOutcome {
    timed(5, "herald permanent identity", Duration::from_secs(60), || {
        let t = herald_cases(seed)?;
        Ok(format!("max deviation {:.2e} over {} constructions", t.worst_identity, t.successes))
    })
}

pub fn linear_algebra(seed: u64) -> CriterionOutcome {
    timed(6, "Takagi factorization and unitary extension", Duration::from_secs(60), || {
        let mut rng = seeded(seed);
        let (mut worst_rec, mut worst_unit, mut min_d): (f64, f64, f64) = (0.0, 0.0, f64::INFINITY);
        for case in 0..500 {
            let m = rng.random_range(1..=8);
            let rank = rng.random_range(0..=m);
            let s = match case % 4 {
                0 => random_symmetric(&mut rng, m),
                1 => random_symmetric_of_rank(&mut rng, m, rank),
                2 => {
                    // Repeated Takagi values.
                    let v = random_unitary(&mut rng, m);
                    let d: Vec<f64> = (0..m).map(|i| [1.0, 1.0, 0.5][i % 3]).collect();
                    v.conjugate() * crate::linalg::diag_from_reals(&d) * v.adjoint()
                }
                _ => random_diagonal_state(&mut rng, m, rank),
            };
            let s = crate::linalg::symmetrize(&s);
            let f = takagi(&s, UNITARY_TOL).map_err(|e| format!("case {case}: {e}"))?;
            worst_rec = worst_rec.max((f.reconstruct() - &s).norm());
            worst_unit = worst_unit.max(unitarity_error(&f.v));
            min_d = f.diagonal().iter().copied().fold(min_d, f64::min);
        }
        ensure(worst_rec < 1e-9, || format!("Takagi reconstruction error {worst_rec:.2e}"))?;
        ensure(worst_unit < 1e-10, || format!("Takagi unitarity error {worst_unit:.2e}"))?;
        ensure(min_d >= -1e-12, || format!("negative Takagi value {min_d:.2e}"))?;

        let (mut ext_unit, mut ext_block): (f64, f64) = (0.0, 0.0);
        for case in 0..200 {
            let (m1, m2) = (rng.random_range(1..=6), rng.random_range(1..=6));
            let mut a = random_complex(&mut rng, m1, m2) * c64(rng.random_range(0.1..3.0), 0.0);
            if case % 5 == 0 && m1 > 1 {
                let row = a.row(0).clone_owned();
                a.set_row(m1 - 1, &row);
            }
            let ext = unitary_extension(&a).map_err(|e| format!("extension {case}: {e}"))?;
            ensure(ext.dim <= m1 + m2, || format!("extension {case}: {} modes for a {m1}x{m2} block", ext.dim))?;
            ext_unit = ext_unit.max(unitarity_error(&ext.u));
            let block = ext.u.view((0, 0), (m1, m2)) * c64(ext.sigma1, 0.0);
            ext_block = ext_block.max((block - &a).norm() / a.norm().max(1.0));
        }
        ensure(ext_unit < 1e-10, || format!("extension unitarity error {ext_unit:.2e}"))?;
        ensure(ext_block < 1e-10, || format!("extension block error {ext_block:.2e}"))?;
        Ok(format!(
            "Takagi: rec {worst_rec:.1e}, unit {worst_unit:.1e}, min D {min_d:.1e}; extension: unit {ext_unit:.1e}, block {ext_block:.1e}"
        ))
    })
}

pub fn permanents_and_fock(seed: u64) -> CriterionOutcome {
    timed(7, "permanents and Fock-space amplitudes", Duration::from_secs(60), || {
        let mut rng = seeded(seed);
        let mut worst_rel: f64 = 0.0;
        for case in 0..100 {
            let n = 1 + case % 6;
            let m = random_complex(&mut rng, n, n);
            let fast = permanent(&m).map_err(|e| e.to_string())?;
            let slow = permanent_by_expansion(&m);
            worst_rel = worst_rel.max((fast - slow).norm() / slow.norm().max(1e-300));
        }
        ensure(worst_rel < 1e-9, || format!("Ryser vs expansion relative error {worst_rel:.2e}"))?;

        let s = std::f64::consts::FRAC_1_SQRT_2;
        let bs = Interferometer::new(ComplexMatrix::from_row_slice(2, 2, &[c64(s, 0.0), c64(s, 0.0), c64(s, 0.0), c64(-s, 0.0)]))
            .map_err(|e| e.to_string())?;
        let hom = amplitude(&bs, &FockState::new(vec![1, 1]), &FockState::new(vec![1, 1])).map_err(|e| e.to_string())?.norm();
        ensure(hom < 1e-12, || format!("coincidence amplitude {hom:.2e} on a balanced beam splitter"))?;

        let mut worst_sum: f64 = 0.0;
        for modes in 1..=4 {
            let u = Interferometer::new(random_unitary(&mut rng, modes)).map_err(|e| e.to_string())?;
            for photons in 1..=3 {
                let basis = FockState::enumerate(modes, photons);
                for input in &basis {
                    let mut total = 0.0;
                    for output in &basis {
                        total += amplitude(&u, output, input).map_err(|e| e.to_string())?.norm_sqr();
                    }
                    worst_sum = worst_sum.max((total - 1.0).abs());
                }
            }
        }
        ensure(worst_sum < 1e-9, || format!("output probabilities sum to 1 +- {worst_sum:.2e}"))?;
        Ok(format!("Ryser rel {worst_rel:.1e}, HOM {hom:.1e}, probability sums {worst_sum:.1e}"))
    })
}

pub fn rank_invariance(seed: u64) -> CriterionOutcome {
    timed(8, "rank and norm invariant under interferometers", Duration::from_secs(60), || {
        let mut rng = seeded(seed);
        let mut worst_norm: f64 = 0.0;
        let mut states = 0;
        for m in 2..=6 {
            for rank in [1, m / 2 + 1, m] {
                let s = TwoPhotonState::new(random_symmetric_of_rank(&mut rng, m, rank)).map_err(|e| e.to_string())?;
                let r0 = state_rank(&s, RANK_TOL);
                for _ in 0..100 {
                    let u = Interferometer::new(random_unitary(&mut rng, m)).map_err(|e| e.to_string())?;
                    let out = evolve_two_photon(&u, s.matrix()).map_err(|e| e.to_string())?;
                    let r = numerical_rank(&out, RANK_TOL);
                    ensure(r == r0, || format!("rank changed from {r0} to {r} on {m} modes"))?;
                    let norm = 2.0 * out.iter().map(|z| z.norm_sqr()).sum::<f64>();
                    worst_norm = worst_norm.max((norm - 1.0).abs());
                }
                states += 1;
            }
        }
        ensure(worst_norm < 1e-9, || format!("2Tr(S^†S) drifted by {worst_norm:.2e}"))?;
        Ok(format!("{states} states x 100 unitaries, norm drift {worst_norm:.1e}"))
    })
}

/// Runs every criterion in order.
pub fn run_all(seed: u64) -> Vec<CriterionOutcome> {
    vec![
        cz_gate(),
        controlled_phase_family(),
        postselection_rank_rule(seed),
        heralded_rank_rule(seed.wrapping_add(1)),
        herald_identity(seed.wrapping_add(1)),
        linear_algebra(seed.wrapping_add(2)),
        permanents_and_fock(seed.wrapping_add(3)),
        rank_invariance(seed.wrapping_add(4)),
    ]
}
