//! Acceptance suite: ten end-to-end criteria covering solver quality,
//! oracle agreement, known analytic limits, model comparisons, and
//! determinism. Runs as a single sequential test so per-solve timing is
//! not skewed by parallel test threads; prints one pass/fail line per
//! criterion.

use std::time::Instant;

use mcd_cert::experiments::{
    run_certify, run_max_advantage, run_sweep, sweep_to_csv, ConfidencePolicy, SweepSpec,
    TheoryPair,
};
use mcd_cert::noncontextual::{max_confidence_nc, pg_nc_device_quantum_eve, pg_noncontextual};
use mcd_cert::oracle::nc_vertex_oracle;
use mcd_cert::quantum::max_confidence_quantum;
use mcd_cert::scenario::{
    classify_region, helstrom_error, min_entropy, nudge_eta0, usd_inconclusive_rate, Region,
};
use mcd_cert::verify::{run_verification, VerifyConfig};
use mcd_cert::{NoncontextualProgram, Overlap, Priors, Theory};

struct Tally {
    failures: Vec<String>,
}

impl Tally {
    fn new() -> Self {
        Tally {
            failures: Vec::new(),
        }
    }

    fn record(&mut self, idx: usize, name: &str, passed: bool, detail: String) {
        let tag = if passed { "PASS" } else { "FAIL" };
        println!("{tag} criterion {idx} ({name}): {detail}");
        if !passed {
            self.failures
                .push(format!("criterion {idx} ({name}): {detail}"));
        }
    }
}

/// Shared grid data produced while timing the duality-gap suite, reused by
/// the later model-comparison criteria.
struct GridPoint {
    confusability: f64,
    region_quantum: Region,
    region_nc: Region,
    hmin_quantum: f64,
    hmin_nc: f64,
}

const GRID_CONFUSABILITIES: [f64; 3] = [0.3, 0.5, 0.7];
const GRID_RATES: usize = 100;

fn grid_eta0(i: usize) -> f64 {
    0.01 + (1.0 - 0.01) * i as f64 / (GRID_RATES - 1) as f64
}

/// Criterion 1: every solve on the 3 x 100 maximal-confidence grid is
/// optimal with duality gap <= 1e-8 and a validated certificate, each
/// solve within 1 second and the whole grid within 2 minutes. Returns the
/// per-point entropies for reuse.
fn run_duality_gap_suite(tally: &mut Tally) -> Vec<GridPoint> {
    let priors = Priors::unbiased();
    let mut points = Vec::with_capacity(GRID_CONFUSABILITIES.len() * GRID_RATES);
    let mut worst_gap = 0.0_f64;
    let mut worst_solve = 0.0_f64;
    let mut bad = 0usize;
    let started = Instant::now();
    for &d in &GRID_CONFUSABILITIES {
        let overlap = Overlap::calibrated_from_confusability(d).unwrap();
        for i in 0..GRID_RATES {
            let eta = grid_eta0(i);
            let rq = classify_region(Theory::Quantum, &overlap, eta);
            let (eta_q, _) = nudge_eta0(&rq, eta);
            let rn = classify_region(Theory::Noncontextual, &overlap, eta);
            let (eta_n, _) = nudge_eta0(&rn, eta);

            let t0 = Instant::now();
            let res_q = run_certify(
                Theory::Quantum,
                &overlap,
                priors,
                eta_q,
                ConfidencePolicy::Maximal,
            )
            .unwrap();
            let dt_q = t0.elapsed().as_secs_f64();
            let t1 = Instant::now();
            let res_n = run_certify(
                Theory::Noncontextual,
                &overlap,
                priors,
                eta_n,
                ConfidencePolicy::Maximal,
            )
            .unwrap();
            let dt_n = t1.elapsed().as_secs_f64();

            for (res, dt) in [(&res_q, dt_q), (&res_n, dt_n)] {
                worst_gap = worst_gap.max(res.gap.abs());
                worst_solve = worst_solve.max(dt);
                if res.status != "optimal"
                    || res.gap.abs() > 1e-8
                    || !res.certificate_valid
                    || dt > 1.0
                {
                    bad += 1;
                }
            }
            points.push(GridPoint {
                confusability: d,
                region_quantum: classify_region(Theory::Quantum, &overlap, eta_q).label,
                region_nc: classify_region(Theory::Noncontextual, &overlap, eta_n).label,
                hmin_quantum: res_q.min_entropy_bits,
                hmin_nc: res_n.min_entropy_bits,
            });
        }
    }
    let total = started.elapsed().as_secs_f64();
    let passed = bad == 0 && total <= 120.0;
    tally.record(
        1,
        "duality-gap suite",
        passed,
        format!(
            "600 solves, {bad} violations, worst gap {worst_gap:.2e}, \
             worst solve {worst_solve:.3}s, total {total:.1}s"
        ),
    );
    points
}

/// Criterion 2: the noncontextual interior-point value matches the exact
/// vertex-enumeration oracle within 1e-9 on a 20 x 20 grid, within 5
/// minutes.
fn run_nc_oracle_equivalence(tally: &mut Tally) {
    let priors = Priors::unbiased();
    let started = Instant::now();
    let mut worst = 0.0_f64;
    let mut bad = 0usize;
    let mut compared = 0usize;
    for di in 0..20 {
        let d = 0.05 + 0.90 * di as f64 / 19.0;
        let overlap = Overlap::calibrated_from_confusability(d).unwrap();
        // The rate spacing 0.94/19 avoids landing exactly on a regime
        // boundary (1 +- Delta)/2 of any sampled confusability; boundary
        // points are quasi-degenerate after nudging and carry a documented
        // accuracy floor near 1e-8, coarser than this comparison.
        for ei in 0..20 {
            let eta = 0.03 + 0.94 * ei as f64 / 19.0;
            let info = classify_region(Theory::Noncontextual, &overlap, eta);
            let (eta_n, _) = nudge_eta0(&info, eta);
            let c0 = max_confidence_nc(d, eta_n).unwrap();
            let np = NoncontextualProgram::new(priors, d, eta_n, c0).unwrap();
            let solved = pg_noncontextual(&np).unwrap();
            let Some(exact) = nc_vertex_oracle(&np) else {
                bad += 1;
                continue;
            };
            compared += 1;
            let err = (solved.p_guess - exact).abs();
            worst = worst.max(err);
            if err > 1e-9 {
                bad += 1;
            }
        }
    }
    let total = started.elapsed().as_secs_f64();
    let passed = bad == 0 && compared == 400 && total <= 300.0;
    tally.record(
        2,
        "exact oracle equivalence",
        passed,
        format!("{compared}/400 points, worst |solver - oracle| {worst:.2e}, total {total:.1}s"),
    );
}

/// Criterion 3: wherever a rate is unambiguous under both models (with the
/// calibrated distinguishability link), the certified entropies of the two
/// models agree to 1e-6 bits.
fn run_unambiguous_equality(tally: &mut Tally, points: &[GridPoint]) {
    let mut worst = 0.0_f64;
    let mut count = 0usize;
    for p in points {
        let both_unambiguous = p.region_quantum != Region::Interior
            && p.region_nc != Region::Interior
            && p.region_quantum == p.region_nc;
        if both_unambiguous {
            count += 1;
            worst = worst.max((p.hmin_quantum - p.hmin_nc).abs());
        }
    }
    let passed = count > 0 && worst <= 1e-6;
    tally.record(
        3,
        "unambiguous-region equality",
        passed,
        format!("{count} grid points, worst |H^Q - H^NC| {worst:.2e} bits"),
    );
}

/// Criterion 4: at the balanced rate 0.5, each model's own eavesdropper
/// gives the noncontextual scheme more entropy below distinguishability
/// 1/2 and less above it, by at least 1e-3 bits.
fn run_crossover(tally: &mut Tally) {
    let priors = Priors::unbiased();
    let mut margins = [0.0_f64; 2];
    for (slot, d) in [(0usize, 0.3), (1usize, 0.7)] {
        let overlap = Overlap::calibrated_from_confusability(d).unwrap();
        let hq = run_certify(
            Theory::Quantum,
            &overlap,
            priors,
            0.5,
            ConfidencePolicy::Maximal,
        )
        .unwrap()
        .min_entropy_bits;
        let hn = run_certify(
            Theory::Noncontextual,
            &overlap,
            priors,
            0.5,
            ConfidencePolicy::Maximal,
        )
        .unwrap()
        .min_entropy_bits;
        margins[slot] = hn - hq;
    }
    let passed = margins[0] >= 1e-3 && margins[1] <= -1e-3;
    tally.record(
        4,
        "crossover at rate 0.5",
        passed,
        format!(
            "H^NC - H^Q = {:+.3e} bits at 0.3 (need >= 1e-3), {:+.3e} at 0.7 (need <= -1e-3)",
            margins[0], margins[1]
        ),
    );
}

/// Criterion 5: against a quantum eavesdropper, the quantum scheme is
/// never worse than a noncontextual device (slack 1e-8) and strictly
/// better by 1e-4 bits wherever the rate is interior for both models.
fn run_quantum_dominance(tally: &mut Tally, points: &[GridPoint]) {
    let priors = Priors::unbiased();
    let mut worst_global = f64::INFINITY;
    let mut worst_interior = f64::INFINITY;
    let mut interior_count = 0usize;
    let mut idx = 0usize;
    for &d in &GRID_CONFUSABILITIES {
        let overlap = Overlap::calibrated_from_confusability(d).unwrap();
        for i in 0..GRID_RATES {
            let eta = grid_eta0(i);
            let info = classify_region(Theory::Noncontextual, &overlap, eta);
            let (eta_n, _) = nudge_eta0(&info, eta);
            let c0 = max_confidence_nc(d, eta_n).unwrap();
            let np = NoncontextualProgram::new(priors, d, eta_n, c0).unwrap();
            let h_nc_dev = pg_nc_device_quantum_eve(&np).unwrap().min_entropy_bits;

            let p = &points[idx];
            idx += 1;
            assert_eq!(p.confusability, d);
            let margin = p.hmin_quantum - h_nc_dev;
            worst_global = worst_global.min(margin);
            if p.region_quantum == Region::Interior && p.region_nc == Region::Interior {
                interior_count += 1;
                worst_interior = worst_interior.min(margin);
            }
        }
    }
    let passed = worst_global >= -1e-8 && interior_count > 0 && worst_interior >= 1e-4;
    tally.record(
        5,
        "quantum dominance",
        passed,
        format!(
            "worst margin {worst_global:+.2e} bits overall, \
             {worst_interior:+.2e} over {interior_count} interior points"
        ),
    );
}

/// Criterion 6: maximal confidence equals 1 exactly up to the lower regime
/// boundary and drops strictly below 1 past it, and both confidence curves
/// are continuous (jump < 1e-4) across both regime boundaries. The strict
/// drop is probed 1e-9 past the boundary for the noncontextual curve; the
/// quantum curve grows off its boundary like the square root of the
/// offset, so a 1e-9 step changes it by ~1 ulp and the strictness probe
/// sits 1e-7 past the boundary instead.
fn run_boundary_structure(tally: &mut Tally) {
    let mut passed = true;
    let mut detail = String::new();
    for d in [0.2_f64, 0.36, 0.5, 0.8] {
        let overlap = Overlap::calibrated_from_confusability(d).unwrap();
        let delta = overlap.delta();

        // Noncontextual curve around its boundaries.
        let lower_nc = (1.0 - d) / 2.0;
        let upper_nc = (1.0 + d) / 2.0;
        let at = max_confidence_nc(d, lower_nc).unwrap();
        let below = max_confidence_nc(d, lower_nc - 1e-9).unwrap();
        let above = max_confidence_nc(d, lower_nc + 1e-9).unwrap();
        if at != 1.0 || below != 1.0 || above >= 1.0 {
            passed = false;
            detail.push_str(&format!("[nc lower d={d}: {below} {at} {above}] "));
        }
        let jump_low = (above - at).abs();
        let u_below = max_confidence_nc(d, upper_nc - 1e-9).unwrap();
        let u_above = max_confidence_nc(d, upper_nc + 1e-9).unwrap();
        let jump_up = (u_above - u_below).abs();
        if jump_low >= 1e-4 || jump_up >= 1e-4 {
            passed = false;
            detail.push_str(&format!("[nc jump d={d}: {jump_low:.1e} {jump_up:.1e}] "));
        }

        // Quantum curve around its boundaries.
        let lower_q = (1.0 - delta * delta) / 2.0;
        let upper_q = (1.0 + delta * delta) / 2.0;
        let at = max_confidence_quantum(delta, lower_q).unwrap();
        let below = max_confidence_quantum(delta, lower_q - 1e-9).unwrap();
        let near = max_confidence_quantum(delta, lower_q + 1e-9).unwrap();
        let strict = max_confidence_quantum(delta, lower_q + 1e-7).unwrap();
        if at != 1.0 || below != 1.0 || strict >= 1.0 {
            passed = false;
            detail.push_str(&format!("[q lower d={d}: {below} {at} {strict}] "));
        }
        let jump_low = (near - at).abs();
        let u_below = max_confidence_quantum(delta, upper_q - 1e-9).unwrap();
        let u_above = max_confidence_quantum(delta, upper_q + 1e-9).unwrap();
        let jump_up = (u_above - u_below).abs();
        if jump_low >= 1e-4 || jump_up >= 1e-4 {
            passed = false;
            detail.push_str(&format!("[q jump d={d}: {jump_low:.1e} {jump_up:.1e}] "));
        }
    }
    if detail.is_empty() {
        detail = "confidence = 1 iff rate <= lower boundary (quantum strictness probed at \
                  +1e-7), all boundary jumps < 1e-4"
            .into();
    }
    tally.record(6, "regime boundaries", passed, detail);
}

/// Criterion 7: closed-form sanity values. The balanced minimum-error rate
/// at overlap 0.6 is 0.1 up to 2 ulps of accumulated rounding; the other
/// two identities are exact in floating point.
fn run_closed_form_sanity(tally: &mut Tally) {
    let unbiased = Priors::unbiased();
    let hel = helstrom_error(&unbiased, 0.6).unwrap();
    let hel_ok = (hel - 0.1).abs() <= 4e-17;
    let mut usd_ok = true;
    for delta in [0.0, 0.2, 0.5, 0.6, 0.9, 1.0] {
        usd_ok &= usd_inconclusive_rate(&unbiased, delta).unwrap() == delta;
    }
    let ent = min_entropy(0.5).unwrap();
    let ent_ok = ent == 1.0;
    let passed = hel_ok && usd_ok && ent_ok;
    tally.record(
        7,
        "closed-form sanity",
        passed,
        format!(
            "helstrom(1/2, 0.6) = {hel:.17} (|err| <= 4e-17: {hel_ok}), \
             inconclusive rate identity: {usd_ok}, min_entropy(0.5) = {ent}"
        ),
    );
}

/// Criterion 8: in every degenerate limit (rate 1, overlap 1,
/// distinguishability 1) each applicable pipeline certifies no randomness:
/// guessing probability 1, entropy 0.
fn run_trivial_limits(tally: &mut Tally) {
    let priors = Priors::unbiased();
    let mut passed = true;
    let mut detail = String::new();
    let cases: [(&str, Theory, Overlap, f64); 4] = [
        (
            "quantum rate=1",
            Theory::Quantum,
            Overlap::calibrated_from_delta(0.5).unwrap(),
            1.0,
        ),
        (
            "quantum overlap=1",
            Theory::Quantum,
            Overlap::calibrated_from_delta(1.0).unwrap(),
            0.6,
        ),
        (
            "nc rate=1",
            Theory::Noncontextual,
            Overlap::calibrated_from_confusability(0.25).unwrap(),
            1.0,
        ),
        (
            "nc confusability=1",
            Theory::Noncontextual,
            Overlap::calibrated_from_confusability(1.0).unwrap(),
            0.6,
        ),
    ];
    for (name, theory, overlap, eta0) in cases {
        let res = run_certify(theory, &overlap, priors, eta0, ConfidencePolicy::Maximal).unwrap();
        let ok = (res.p_guess - 1.0).abs() <= 1e-8
            && res.min_entropy_bits.abs() <= 2e-8
            && res.certificate_valid;
        if !ok {
            passed = false;
        }
        detail.push_str(&format!("{name}: pg = {:.10} ", res.p_guess));
    }
    tally.record(8, "trivial limits", passed, detail.trim_end().to_string());
}

/// Criterion 9: the scanned maximal entropy advantage grows monotonically
/// in the distinguishability (1e-4 slack per step) and vanishes within
/// 1e-3 at distinguishability 0.05.
fn run_advantage_trend(tally: &mut Tally) {
    let trend = run_max_advantage(&[0.1, 0.3, 0.5, 0.7, 0.9]).unwrap();
    let mut monotone = true;
    for w in trend.windows(2) {
        if w[1].advantage < w[0].advantage - 1e-4 {
            monotone = false;
        }
    }
    let limit = run_max_advantage(&[0.05]).unwrap()[0].advantage;
    let limit_ok = limit.abs() <= 1e-3;
    let passed = monotone && limit_ok;
    let series: Vec<String> = trend
        .iter()
        .map(|r| format!("{:.3e}", r.advantage))
        .collect();
    tally.record(
        9,
        "advantage trend",
        passed,
        format!(
            "advantages [{}] monotone: {monotone}; at 0.05: {limit:.3e} (<= 1e-3: {limit_ok})",
            series.join(", ")
        ),
    );
}

/// Criterion 10: the seeded verification suite and repeated sweeps are
/// byte-identical across consecutive runs.
fn run_determinism(tally: &mut Tally) {
    let cfg = VerifyConfig {
        density: 3,
        seed: 42,
        solver_gap_tol: 1e-9,
    };
    let report_a = run_verification(&cfg).to_string();
    let report_b = run_verification(&cfg).to_string();
    let verify_passed = report_a.contains("verification: pass");

    let spec = SweepSpec {
        pair: TheoryPair::RespectiveEavesdroppers,
        confusabilities: vec![0.3, 0.7],
        eta0_start: 0.05,
        eta0_stop: 0.95,
        eta0_count: 7,
        p0: 0.5,
        policy: ConfidencePolicy::Maximal,
    };
    let sweep_a = sweep_to_csv(&run_sweep(&spec).unwrap());
    let sweep_b = sweep_to_csv(&run_sweep(&spec).unwrap());

    let passed = report_a == report_b && verify_passed && sweep_a == sweep_b;
    tally.record(
        10,
        "determinism",
        passed,
        format!(
            "verification reports identical: {}, suite passed: {verify_passed}, \
             sweep emissions identical: {}",
            report_a == report_b,
            sweep_a == sweep_b
        ),
    );
}

#[test]
fn acceptance() {
    let mut tally = Tally::new();
    let grid = run_duality_gap_suite(&mut tally);
    run_nc_oracle_equivalence(&mut tally);
    run_unambiguous_equality(&mut tally, &grid);
    run_crossover(&mut tally);
    run_quantum_dominance(&mut tally, &grid);
    run_boundary_structure(&mut tally);
    run_closed_form_sanity(&mut tally);
    run_trivial_limits(&mut tally);
    run_advantage_trend(&mut tally);
    run_determinism(&mut tally);
    assert!(
        tally.failures.is_empty(),
        "acceptance failures:\n{}",
        tally.failures.join("\n")
    );
}
