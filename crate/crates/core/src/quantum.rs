//! Guessing-probability bound against a quantum eavesdropper.
//!
//! The eavesdropper holds a classical label pair (l0, l1), each entry a
//! planned announcement in {0, 1, inconclusive}, and steers the device's
//! qubit measurement accordingly. Absorbing the label distribution into the
//! measurement operators makes the guessing probability a semidefinite
//! program over 27 two-by-two PSD blocks: one rescaled POVM element per
//! strategy and outcome. The observed outcome rate and confidence enter as
//! two linear statistics constraints.

use crate::scenario::{
    classify_region, min_entropy, AdversaryModel, CertificationResult, Overlap, Priors, Region,
    ScenarioError, StrategyIndex, Theory,
};
use crate::solver::mat2::Herm2;
use crate::solver::{
    check_dual_certificate, extract_bound, solve, BlockKind, BlockMat, ConicProblem, Constraint,
    SolveStatus, SolverSettings,
};
use crate::CertError;

/// Statistics-feasibility slack: confidences this close above the maximum
/// curve still count as achievable, absorbing sweep roundoff.
pub const STATS_TOL: f64 = 1e-9;

/// A fully specified instance: prepared-state overlap plus the observed
/// rate and confidence for outcome 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuantumProgram {
    priors: Priors,
    delta: f64,
    eta0: f64,
    c0: f64,
}

impl QuantumProgram {
    /// Builds an instance after checking that the statistics are achievable
    /// for this overlap. Only unbiased priors are supported: the maximum
    /// confidence curve that gates feasibility is derived for p0 = p1.
    pub fn new(priors: Priors, delta: f64, eta0: f64, c0: f64) -> Result<Self, CertError> {
        if !priors.is_unbiased() {
            return Err(ScenarioError::UnsupportedConfiguration(
                "quantum certification requires unbiased priors".into(),
            )
            .into());
        }
        if !(0.0..=1.0).contains(&delta) || !delta.is_finite() {
            return Err(ScenarioError::InvalidParameter(format!(
                "overlap delta must be in [0,1], got {delta}"
            ))
            .into());
        }
        if !(0.0..=1.0).contains(&c0) || !c0.is_finite() {
            return Err(ScenarioError::InvalidProbability {
                name: "c0",
                value: c0,
            }
            .into());
        }
        if !(eta0 > 0.0 && eta0 <= 1.0) {
            return Err(ScenarioError::InvalidProbability {
                name: "eta0",
                value: eta0,
            }
            .into());
        }
        if !validate_statistics_quantum(delta, eta0, c0) {
            return Err(CertError::InfeasibleStatistics(format!(
                "no qubit strategy with overlap {delta} attains rate {eta0} at confidence {c0}"
            )));
        }
        Ok(QuantumProgram {
            priors,
            delta,
            eta0,
            c0,
        })
    }

    /// Instance pinned to the maximum achievable confidence at this rate.
    pub fn at_max_confidence(priors: Priors, delta: f64, eta0: f64) -> Result<Self, CertError> {
        let c0 = max_confidence_quantum(delta, eta0)?;
        Self::new(priors, delta, eta0, c0)
    }

    pub fn priors(&self) -> Priors {
        self.priors
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn eta0(&self) -> f64 {
        self.eta0
    }

    pub fn c0(&self) -> f64 {
        self.c0
    }

    pub fn region(&self) -> Region {
        let ov = Overlap::calibrated_from_delta(self.delta).expect("validated overlap");
        classify_region(Theory::Quantum, &ov, self.eta0).label
    }

    fn sin_phi(&self) -> f64 {
        (1.0 - self.delta * self.delta).max(0.0).sqrt()
    }

    /// Prepared states as density matrices, mirrored about the Z axis.
    fn states(&self) -> [Herm2; 2] {
        let s = self.sin_phi();
        let c = self.delta;
        [
            Herm2::from_pauli(0.5, -0.5 * s, 0.0, 0.5 * c),
            Herm2::from_pauli(0.5, 0.5 * s, 0.0, 0.5 * c),
        ]
    }

    fn average_state(&self) -> Herm2 {
        let [r0, r1] = self.states();
        let mut avg = r0.scaled(self.priors.p0());
        avg.axpy(self.priors.p1(), &r1);
        avg
    }
}

const PAULIS: [Herm2; 3] = [
    // sigma_x, sigma_y, sigma_z
    Herm2 {
        a: 0.0,
        d: 0.0,
        cr: 1.0,
        ci: 0.0,
    },
    Herm2 {
        a: 0.0,
        d: 0.0,
        cr: 0.0,
        ci: -1.0,
    },
    Herm2 {
        a: 1.0,
        d: -1.0,
        cr: 0.0,
        ci: 0.0,
    },
];

/// Assembles the guessing-probability maximization.
///
/// Blocks: index s*3 + b holds the rescaled POVM element for strategy s and
/// outcome b. Rows: three completeness components per strategy (the
/// traceless part of the summed elements vanishes), one normalization row,
/// and the two statistics rows fixing p0*p(0|0) and p1*p(0|1).
pub fn build_primal(qp: &QuantumProgram) -> ConicProblem {
    let [rho0, rho1] = qp.states();
    let avg = qp.average_state();
    let p0 = qp.priors.p0();
    let p1 = qp.priors.p1();

    // Two kinds of exposed faces leave the primal without interior unless
    // the pinned blocks are reduced to scalars up front.
    //
    // 1. A statistics row with zero right-hand side and rank-1 PSD
    //    coefficient pins every outcome-0 block onto a one-dimensional
    //    face: a nonnegative multiple of the complementary projector. The
    //    row itself contracts to zero and is dropped.
    // 2. A statistics row saturating its algebraic cap (p_x * p(0|x) = p_x,
    //    i.e. the state is detected with certainty) forces the summed
    //    outcome-0 element to act as the identity on that state, so every
    //    outcome != 0 block is pinned onto the complement of the state.
    //    Both statistics rows keep nonzero coefficients and stay.
    // Alongside the face: which statistics rows survive. An outcome-0 face
    // contracts the zero-rhs row to all-zero coefficients; a saturated cap
    // makes its own row an exact combination of the sigma_x completeness
    // rows and normalization. Either way the degenerate row is dropped.
    let (face, pins_outcome0, keep_stat0, keep_stat1) = if qp.c0 == 1.0 && qp.delta < 1.0 {
        (Some(Herm2::identity(1.0).sub(&rho1)), true, true, false)
    } else if qp.c0 == 0.0 && qp.delta < 1.0 {
        (Some(Herm2::identity(1.0).sub(&rho0)), true, false, true)
    } else if qp.c0 * qp.eta0 >= p0 - 1e-12 {
        (Some(Herm2::identity(1.0).sub(&rho0)), false, false, true)
    } else if (1.0 - qp.c0) * qp.eta0 >= p1 - 1e-12 {
        (Some(Herm2::identity(1.0).sub(&rho1)), false, true, false)
    } else {
        (None, true, true, true)
    };
    // Third face kind, handled by a dedicated builder: maximal confidence
    // in the rotation regime admits exactly one outcome-0 element, a rank-1
    // projector, so every block collapses onto a one-dimensional face and
    // the program becomes linear.
    if face.is_none() {
        if let Some(problem) = build_rotation_collapsed(qp) {
            return problem;
        }
    }

    let pinned = |b: usize| -> bool { pins_outcome0 == (b == 0) };
    // Coefficient for block (s, b) given the full-space matrix.
    let coeff = |b: usize, m: Herm2| -> BlockMat {
        match (&face, pinned(b)) {
            (Some(p), true) => BlockMat::Scalar(m.inner(p)),
            _ => BlockMat::Psd2(m),
        }
    };

    let mut blocks = Vec::with_capacity(27);
    let mut objective = Vec::with_capacity(27);
    for s in StrategyIndex::all() {
        for bi in 0..3 {
            let kind = if face.is_some() && pinned(bi) {
                BlockKind::NonnegScalar
            } else {
                BlockKind::Psd2
            };
            blocks.push((
                kind,
                format!("M[s={},{}][b={}]", s.lambda0.index(), s.lambda1.index(), bi),
            ));
            let mut c = Herm2::ZERO;
            if s.lambda0.index() == bi {
                c.axpy(p0, &rho0);
            }
            if s.lambda1.index() == bi {
                c.axpy(p1, &rho1);
            }
            objective.push(coeff(bi, c));
        }
    }

    let mut constraints = Vec::with_capacity(30);
    for s in 0..9 {
        for (axis, sigma) in PAULIS.iter().enumerate() {
            constraints.push(Constraint {
                label: format!("completeness[s={s}][axis={axis}]"),
                coeffs: (0..3).map(|b| (s * 3 + b, coeff(b, *sigma))).collect(),
                rhs: 0.0,
            });
        }
    }
    constraints.push(Constraint {
        label: "normalization".into(),
        coeffs: (0..27).map(|k| (k, coeff(k % 3, avg))).collect(),
        rhs: 1.0,
    });
    if keep_stat0 {
        constraints.push(Constraint {
            label: "stat[x=0]".into(),
            coeffs: (0..9).map(|s| (s * 3, coeff(0, rho0.scaled(p0)))).collect(),
            rhs: qp.eta0 * qp.c0,
        });
    }
    if keep_stat1 {
        constraints.push(Constraint {
            label: "stat[x=1]".into(),
            coeffs: (0..9).map(|s| (s * 3, coeff(0, rho1.scaled(p1)))).collect(),
            rhs: qp.eta0 * (1.0 - qp.c0),
        });
    }

    // With multiplier -v/2 on each completeness row and 1 on normalization,
    // the adjoint is I/2 on every block (v is the average-state Bloch
    // vector), a strictly interior dual start.
    let v = [(p1 - p0) * qp.sin_phi(), 0.0, qp.delta];
    let mut hint = Vec::with_capacity(30);
    for _s in 0..9 {
        for vk in v {
            hint.push(-0.5 * vk);
        }
    }
    hint.push(1.0);
    hint.resize(constraints.len(), 0.0);

    ConicProblem {
        blocks,
        objective,
        constraints,
        dual_interior_hint: Some(hint),
    }
}

/// Collapsed program for maximal confidence in the rotation regime.
///
/// There the statistics admit a single outcome-0 element: the rank-1
/// projector with cos(theta) = (2 eta0 - 1)/delta tilted below the x-axis.
/// Both the projector and its complement are rank-1, so all 27 blocks are
/// pinned to nonnegative multiples of one of them and the program becomes
/// linear. Rows: one weight-balance row per strategy (the surviving
/// component of completeness), the normalization, and the outcome-0
/// statistics row; every other row of the full program contracts to zero
/// or to an exact repeat of these. Returns None when the instance is not
/// of this shape or the closed-form element fails to reproduce the
/// statistics, in which case the general builder proceeds.
fn build_rotation_collapsed(qp: &QuantumProgram) -> Option<ConicProblem> {
    let delta = qp.delta;
    if !(delta > 0.0 && delta < 1.0) {
        return None;
    }
    let d2 = delta * delta;
    let lower = (1.0 - d2) / 2.0;
    let upper = (1.0 + d2) / 2.0;
    if qp.eta0 <= lower || qp.eta0 >= upper {
        return None;
    }
    let u = (2.0 * qp.eta0 - 1.0) / delta;
    let cmax = (2.0 * qp.eta0 + ((1.0 - u * u).max(0.0) * (1.0 - d2)).sqrt()) / (4.0 * qp.eta0);
    if (qp.c0 - cmax).abs() > 1e-12 {
        return None;
    }
    let sin_theta = -(1.0 - u * u).max(0.0).sqrt();
    let pi0 = Herm2::from_pauli(0.5, 0.5 * sin_theta, 0.0, 0.5 * u);
    let perp = Herm2::identity(1.0).sub(&pi0);
    let [rho0, rho1] = qp.states();
    let avg = qp.average_state();
    let p0 = qp.priors.p0();
    let p1 = qp.priors.p1();
    // The collapse is only sound if the projector reproduces the observed
    // statistics to rounding accuracy.
    let p00 = pi0.inner(&rho0);
    let p01 = pi0.inner(&rho1);
    let eta = p0 * p00 + p1 * p01;
    if (eta - qp.eta0).abs() > 1e-10 || (p0 * p00 - qp.eta0 * qp.c0).abs() > 1e-10 {
        return None;
    }

    let mut blocks = Vec::with_capacity(27);
    let mut objective = Vec::with_capacity(27);
    let face_of = |b: usize| if b == 0 { &pi0 } else { &perp };
    for s in StrategyIndex::all() {
        for bi in 0..3 {
            blocks.push((
                BlockKind::NonnegScalar,
                format!("M[s={},{}][b={}]", s.lambda0.index(), s.lambda1.index(), bi),
            ));
            let mut c = Herm2::ZERO;
            if s.lambda0.index() == bi {
                c.axpy(p0, &rho0);
            }
            if s.lambda1.index() == bi {
                c.axpy(p1, &rho1);
            }
            objective.push(BlockMat::Scalar(c.inner(face_of(bi))));
        }
    }

    // Surviving completeness component: whichever Pauli has the larger
    // contraction against the projector.
    let sigma = if sin_theta.abs() >= u.abs() {
        PAULIS[0]
    } else {
        PAULIS[2]
    };
    let mut constraints = Vec::with_capacity(11);
    for s in 0..9 {
        constraints.push(Constraint {
            label: format!("balance[s={s}]"),
            coeffs: (0..3)
                .map(|b| (s * 3 + b, BlockMat::Scalar(sigma.inner(face_of(b)))))
                .collect(),
            rhs: 0.0,
        });
    }
    constraints.push(Constraint {
        label: "normalization".into(),
        coeffs: (0..27)
            .map(|k| (k, BlockMat::Scalar(avg.inner(face_of(k % 3)))))
            .collect(),
        rhs: 1.0,
    });
    constraints.push(Constraint {
        label: "stat[x=0]".into(),
        coeffs: (0..9)
            .map(|s| (s * 3, BlockMat::Scalar(rho0.scaled(p0).inner(&pi0))))
            .collect(),
        rhs: qp.eta0 * qp.c0,
    });

    // Normalization multiplier alone is an interior dual start: its adjoint
    // is Tr[avg Pi0] = eta0 or Tr[avg (I - Pi0)] = 1 - eta0 on every block.
    let mut hint = vec![0.0; 9];
    hint.push(1.0);
    hint.push(0.0);

    Some(ConicProblem {
        blocks,
        objective,
        constraints,
        dual_interior_hint: Some(hint),
    })
}

/// Certified upper bound on the eavesdropper's guessing probability, with
/// the corresponding min-entropy. The reported value is the dual bound
/// revalidated by an independent cone scan of the certificate.
pub fn pg_quantum(qp: &QuantumProgram) -> Result<CertificationResult, CertError> {
    let problem = build_primal(qp);
    let solution = solve(&problem, &SolverSettings::default())?;
    match solution.status {
        SolveStatus::Optimal | SolveStatus::MaxIterations => {}
        SolveStatus::Infeasible => {
            return Err(CertError::InfeasibleStatistics(format!(
                "solver certified rate {} and confidence {} as unachievable",
                qp.eta0, qp.c0
            )));
        }
        SolveStatus::Unbounded => {
            return Err(crate::solver::SolverError::NumericalFailure(
                "guessing probability reported unbounded".into(),
            )
            .into());
        }
    }
    extract_bound(&solution, 1e-7)?;
    let report = check_dual_certificate(&problem, &solution);
    if !report.valid {
        return Err(CertError::CertificateInvalid(report.max_cone_violation));
    }
    let p_guess = report.bound.min(1.0);
    Ok(CertificationResult {
        p_guess,
        min_entropy_bits: min_entropy(p_guess)?,
        adversary: AdversaryModel::Quantum,
        certificate_valid: true,
        gap: solution.gap,
        status: solution.status.to_string(),
    })
}

/// Maximum confidence achievable for outcome 0 at output rate `eta0` with
/// qubit strategies on states of overlap `delta`, unbiased priors.
///
/// Three regimes in eta0, split at (1 -+ delta^2)/2: an unambiguous regime
/// where the confidence reaches 1, a rotation regime where the optimal
/// rank-1 element tilts away from the orthogonal direction, and a top
/// regime where the element dilutes towards the identity and C0 = 1/(2 eta0).
pub fn max_confidence_quantum(delta: f64, eta0: f64) -> Result<f64, ScenarioError> {
    if !(0.0..=1.0).contains(&delta) || !delta.is_finite() {
        return Err(ScenarioError::InvalidParameter(format!(
            "overlap delta must be in [0,1], got {delta}"
        )));
    }
    if !eta0.is_finite() || !(0.0..=1.0).contains(&eta0) {
        return Err(ScenarioError::InvalidProbability {
            name: "eta0",
            value: eta0,
        });
    }
    if eta0 == 0.0 {
        return Err(ScenarioError::UndefinedConfidence);
    }
    let d2 = delta * delta;
    let lower = (1.0 - d2) / 2.0;
    let upper = (1.0 + d2) / 2.0;
    if eta0 <= lower {
        return Ok(1.0);
    }
    if eta0 >= upper {
        return Ok(1.0 / (2.0 * eta0));
    }
    // Rotation regime: rank-1 element with cos(theta) = (2 eta0 - 1)/delta.
    let u = (2.0 * eta0 - 1.0) / delta;
    let c0 = (2.0 * eta0 + ((1.0 - u * u).max(0.0) * (1.0 - d2)).sqrt()) / (4.0 * eta0);
    // Roundoff can push the curve a few ulps past 1 right at the regime
    // boundary; the confidence is a probability.
    Ok(c0.min(1.0))
}

/// Whether the pair (eta0, c0) is achievable for the given overlap, within
/// a small feasibility slack. Verdict-valued: invalid inputs are simply
/// infeasible.
pub fn validate_statistics_quantum(delta: f64, eta0: f64, c0: f64) -> bool {
    let Ok(max_c0) = max_confidence_quantum(delta, eta0) else {
        return false;
    };
    if !(0.0..=1.0).contains(&c0) {
        return false;
    }
    c0 <= max_c0 + STATS_TOL && c0 * eta0 <= 0.5 + 1e-12
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn unbiased(delta: f64, eta0: f64, c0: f64) -> QuantumProgram {
        QuantumProgram::new(Priors::unbiased(), delta, eta0, c0).unwrap()
    }

    #[test]
    fn program_shape_and_hint() {
        let qp = unbiased(0.5, 0.4, 0.9);
        let problem = build_primal(&qp);
        assert_eq!(problem.blocks.len(), 27);
        assert_eq!(problem.constraints.len(), 30);
        problem.validate().unwrap();
        let hint = problem.dual_interior_hint.as_ref().unwrap();
        for block in problem.adjoint(hint) {
            assert_abs_diff_eq!(block.min_eig(), 0.5, epsilon = 1e-12);
            assert_abs_diff_eq!(block.max_eig(), 0.5, epsilon = 1e-12);
        }
    }

    #[test]
    fn identical_states_give_trivial_guessing() {
        // With overlapping (identical) states the device carries no secret:
        // the eavesdropper predicts perfectly.
        let qp = unbiased(1.0, 0.6, 0.5);
        let result = pg_quantum(&qp).unwrap();
        assert_abs_diff_eq!(result.p_guess, 1.0, epsilon = 1e-6);
        assert!(result.certificate_valid);
    }

    #[test]
    fn orthogonal_states_give_trivial_guessing() {
        let qp = unbiased(0.0, 0.5, 1.0);
        let result = pg_quantum(&qp).unwrap();
        assert_abs_diff_eq!(result.p_guess, 1.0, epsilon = 1e-6);
    }

    #[test]
    fn max_confidence_regimes() {
        // Unambiguous regime.
        assert_abs_diff_eq!(max_confidence_quantum(0.5, 0.3).unwrap(), 1.0);
        // Forced outcome: confidence collapses to the prior.
        assert_abs_diff_eq!(
            max_confidence_quantum(0.5, 1.0).unwrap(),
            0.5,
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(
            max_confidence_quantum(0.9, 1.0).unwrap(),
            0.5,
            epsilon = 1e-15
        );
        // Zero rate leaves the confidence undefined.
        assert!(max_confidence_quantum(0.5, 0.0).is_err());
    }

    #[test]
    fn max_confidence_continuity() {
        for d2 in [0.3, 0.5, 0.7] {
            let delta = d2_sqrt(d2);
            for boundary in [(1.0 - d2) / 2.0, (1.0 + d2) / 2.0] {
                let below = max_confidence_quantum(delta, boundary - 1e-6).unwrap();
                let above = max_confidence_quantum(delta, boundary + 1e-6).unwrap();
                assert!((below - above).abs() < 1e-4);
            }
            // Exactly 1 on the closed unambiguous regime. The curve leaves 1
            // quadratically, so just past the boundary the deficit is below
            // f64 resolution; strictness becomes representable around 1e-7.
            assert_eq!(
                max_confidence_quantum(delta, (1.0 - d2) / 2.0).unwrap(),
                1.0
            );
            assert_eq!(
                max_confidence_quantum(delta, (1.0 - d2) / 2.0 - 1e-9).unwrap(),
                1.0
            );
            assert!(max_confidence_quantum(delta, (1.0 - d2) / 2.0 + 1e-7).unwrap() < 1.0);
        }
    }

    fn d2_sqrt(d2: f64) -> f64 {
        d2.sqrt()
    }

    #[test]
    fn max_confidence_matches_povm_grid() {
        // Direct maximization over rank-and-weight parametrized elements:
        // E = (R/2)(I + r n.sigma), with R fixed by the rate constraint.
        let delta: f64 = 0.5;
        let eta0: f64 = 0.5;
        let sin_phi = (1.0 - delta * delta).sqrt();
        let mut best: f64 = 0.0;
        for it in 0..=600 {
            let theta = std::f64::consts::TAU * it as f64 / 600.0;
            for ir in 0..=120 {
                let r = ir as f64 / 120.0;
                // Average-state Bloch vector is (0, 0, delta).
                let nv = r * theta.cos() * delta;
                let big_r = 2.0 * eta0 / (1.0 + nv);
                if big_r * (1.0 + r) > 2.0 + 1e-12 {
                    continue;
                }
                // p0 * p(0|0) with rho0 tilted towards -x.
                let p00 = 0.5
                    * (big_r / 2.0)
                    * (1.0 + r * (-theta.sin() * sin_phi + theta.cos() * delta));
                best = best.max(p00 / eta0);
            }
        }
        let closed = max_confidence_quantum(delta, eta0).unwrap();
        assert!(closed >= best - 1e-9);
        assert_abs_diff_eq!(closed, best, epsilon = 1e-3);
    }

    #[test]
    fn statistics_validation() {
        assert!(validate_statistics_quantum(0.5, 0.3, 1.0));
        assert!(!validate_statistics_quantum(0.5, 1.0, 0.9));
        let max = max_confidence_quantum(0.5, 0.5).unwrap();
        assert!(!validate_statistics_quantum(0.5, 0.5, max + 0.01));
        assert!(QuantumProgram::new(Priors::unbiased(), 0.5, 0.5, max + 0.01).is_err());
    }

    #[test]
    fn unambiguous_point_solves_cleanly() {
        // Maximal-confidence instances sit on an exposed face of the primal
        // feasible set; the solve must still converge with a valid
        // certificate.
        let qp = QuantumProgram::at_max_confidence(Priors::unbiased(), d2_sqrt(0.5), 0.2).unwrap();
        assert_eq!(qp.c0(), 1.0);
        let result = pg_quantum(&qp).unwrap();
        assert!(result.certificate_valid);
        assert!(result.gap < 1e-7, "gap {}", result.gap);
        assert!(result.p_guess >= 0.5);
        assert!(result.p_guess < 1.0);
    }

    #[test]
    fn confidence_constraint_never_helps_the_eavesdropper() {
        // Strictly below maximal confidence, so the full 30-row program is
        // built and the two statistics rows are explicit.
        let cmax = max_confidence_quantum(d2_sqrt(0.5), 0.55).unwrap();
        let qp = unbiased(d2_sqrt(0.5), 0.55, 0.5 + 0.9 * (cmax - 0.5));
        let constrained = pg_quantum(&qp).unwrap();

        // Rate-only relaxation: the two statistics rows collapse to their sum.
        let mut problem = build_primal(&qp);
        let conf = problem.constraints.remove(28);
        let rest = problem.constraints.remove(28);
        let mut merged = conf.clone();
        merged.label = "rate".into();
        merged.coeffs.extend(rest.coeffs);
        merged.rhs = conf.rhs + rest.rhs;
        problem.constraints.push(merged);
        if let Some(h) = problem.dual_interior_hint.as_mut() {
            h.pop();
        }
        let relaxed = solve(&problem, &SolverSettings::default()).unwrap();
        assert!(relaxed.dual_value >= constrained.p_guess - 1e-8);
    }

    #[test]
    fn invariant_under_reflection() {
        // Conjugating every datum by sigma_z mirrors the states about the Z
        // axis and cannot change the optimum.
        let qp = unbiased(0.6, 0.45, 0.9);
        let base = solve(&build_primal(&qp), &SolverSettings::default()).unwrap();
        let mut mirrored = build_primal(&qp);
        let flip = |m: &mut BlockMat| {
            if let BlockMat::Psd2(h) = m {
                h.cr = -h.cr;
                h.ci = -h.ci;
            }
        };
        for m in mirrored.objective.iter_mut() {
            flip(m);
        }
        for c in mirrored.constraints.iter_mut() {
            for (_, m) in c.coeffs.iter_mut() {
                flip(m);
            }
        }
        let other = solve(&mirrored, &SolverSettings::default()).unwrap();
        assert_abs_diff_eq!(base.primal_value, other.primal_value, epsilon = 1e-7);
    }
}
