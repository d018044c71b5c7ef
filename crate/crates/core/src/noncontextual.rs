//! Guessing-probability bound against a preparation-noncontextual
//! eavesdropper.
//!
//! In the four-region epistemic representation each measurement response is
//! a 2x2 matrix of region integrals, so an eavesdropper strategy is a point
//! in a nonnegative orthant and the guessing probability is a linear
//! program: 9 strategies x 3 outcomes x 4 region entries = 108 scalar
//! variables. Completeness forces the four column sums of each strategy's
//! summed response to agree; the observed rate and confidence enter exactly
//! as in the quantum program.

use crate::quantum::{pg_quantum, QuantumProgram};
use crate::scenario::{
    classify_region, min_entropy, AdversaryModel, CertificationResult, EpistemicMatrix, Overlap,
    Priors, Region, ScenarioError, StrategyIndex, Theory,
};
use crate::solver::{
    check_dual_certificate, extract_bound, reduce_problem, solve, BlockKind, BlockMat,
    ConicProblem, Constraint, SolveStatus, SolverSettings,
};
use crate::CertError;

/// Confidence slack mirroring the quantum gate.
pub const STATS_TOL: f64 = 1e-9;

/// Region-entry index within one (strategy, outcome) group: the response
/// integral over the first state's exclusive region, the shared confusion
/// region, the complementary confusion region, and the second state's
/// exclusive region.
const A0: usize = 0;
const B: usize = 1;
const B_BAR: usize = 2;
const A1: usize = 3;

/// A fully specified noncontextual instance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoncontextualProgram {
    priors: Priors,
    confusability: f64,
    eta0: f64,
    c0: f64,
}

impl NoncontextualProgram {
    /// Builds an instance after checking achievability. As in the quantum
    /// case, the gating maximum-confidence curve assumes unbiased priors.
    pub fn new(priors: Priors, confusability: f64, eta0: f64, c0: f64) -> Result<Self, CertError> {
        if !priors.is_unbiased() {
            return Err(ScenarioError::UnsupportedConfiguration(
                "noncontextual certification requires unbiased priors".into(),
            )
            .into());
        }
        if !(0.0..=1.0).contains(&confusability) || !confusability.is_finite() {
            return Err(ScenarioError::InvalidParameter(format!(
                "confusability must be in [0,1], got {confusability}"
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
        if !validate_statistics_nc(confusability, eta0, c0) {
            return Err(CertError::InfeasibleStatistics(format!(
                "no noncontextual strategy with confusability {confusability} attains rate {eta0} at confidence {c0}"
            )));
        }
        Ok(NoncontextualProgram {
            priors,
            confusability,
            eta0,
            c0,
        })
    }

    pub fn at_max_confidence(
        priors: Priors,
        confusability: f64,
        eta0: f64,
    ) -> Result<Self, CertError> {
        let c0 = max_confidence_nc(confusability, eta0)?;
        Self::new(priors, confusability, eta0, c0)
    }

    pub fn priors(&self) -> Priors {
        self.priors
    }

    pub fn confusability(&self) -> f64 {
        self.confusability
    }

    pub fn eta0(&self) -> f64 {
        self.eta0
    }

    pub fn c0(&self) -> f64 {
        self.c0
    }

    pub fn region(&self) -> Region {
        let ov =
            Overlap::new(self.confusability.sqrt(), self.confusability).expect("validated overlap");
        classify_region(Theory::Noncontextual, &ov, self.eta0).label
    }

    /// The four canonical epistemic states for this confusability.
    pub fn canonical_states(&self) -> [EpistemicMatrix; 4] {
        EpistemicMatrix::canonical(self.confusability)
    }

    pub fn maximally_mixed(&self) -> EpistemicMatrix {
        EpistemicMatrix::maximally_mixed(self.confusability)
    }
}

fn idx(s: usize, b: usize, j: usize) -> usize {
    s * 12 + b * 4 + j
}

/// Assembles the noncontextual guessing-probability LP.
///
/// Per-strategy completeness is encoded as three difference rows (the four
/// column sums agree; the common value is fixed by the global normalization
/// row, making a fourth equation redundant). Outcome probabilities are
/// p(b|0) = (1-D) A0b + D Bb and p(b|1) = (1-D) A1b + D Bb for
/// confusability D.
pub fn build_primal_nc(np: &NoncontextualProgram) -> ConicProblem {
    let d = np.confusability;
    let p0 = np.priors.p0();
    let p1 = np.priors.p1();

    let mut blocks = Vec::with_capacity(108);
    let mut objective = vec![BlockMat::Scalar(0.0); 108];
    for s in StrategyIndex::all() {
        let si = s.index();
        for b in 0..3 {
            for (j, name) in ["A0", "B", "Bbar", "A1"].iter().enumerate() {
                blocks.push((BlockKind::NonnegScalar, format!("{name}[s={si}][b={b}]")));
                let mut c = 0.0;
                if s.lambda0.index() == b {
                    c += match j {
                        A0 => p0 * (1.0 - d),
                        B => p0 * d,
                        _ => 0.0,
                    };
                }
                if s.lambda1.index() == b {
                    c += match j {
                        A1 => p1 * (1.0 - d),
                        B => p1 * d,
                        _ => 0.0,
                    };
                }
                objective[idx(si, b, j)] = BlockMat::Scalar(c);
            }
        }
    }

    let mut constraints = Vec::with_capacity(30);
    for s in 0..9 {
        for (row, other) in [A1, B, B_BAR].into_iter().enumerate() {
            let mut coeffs = Vec::with_capacity(6);
            for b in 0..3 {
                coeffs.push((idx(s, b, A0), BlockMat::Scalar(1.0)));
                coeffs.push((idx(s, b, other), BlockMat::Scalar(-1.0)));
            }
            constraints.push(Constraint {
                label: format!("completeness[s={s}][{row}]"),
                coeffs,
                rhs: 0.0,
            });
        }
    }
    // Sum over strategies of p0 p(b|0) + p1 p(b|1) over all outcomes equals
    // the total strategy weight, which must be 1.
    let mut norm_coeffs = Vec::with_capacity(81);
    for s in 0..9 {
        for b in 0..3 {
            norm_coeffs.push((idx(s, b, A0), BlockMat::Scalar(p0 * (1.0 - d))));
            norm_coeffs.push((idx(s, b, B), BlockMat::Scalar(d)));
            norm_coeffs.push((idx(s, b, A1), BlockMat::Scalar(p1 * (1.0 - d))));
        }
    }
    constraints.push(Constraint {
        label: "normalization".into(),
        coeffs: norm_coeffs,
        rhs: 1.0,
    });
    constraints.push(Constraint {
        label: "stat[x=0]".into(),
        coeffs: (0..9)
            .flat_map(|s| {
                [
                    (idx(s, 0, A0), BlockMat::Scalar(p0 * (1.0 - d))),
                    (idx(s, 0, B), BlockMat::Scalar(p0 * d)),
                ]
            })
            .collect(),
        rhs: np.eta0 * np.c0,
    });
    constraints.push(Constraint {
        label: "stat[x=1]".into(),
        coeffs: (0..9)
            .flat_map(|s| {
                [
                    (idx(s, 0, A1), BlockMat::Scalar(p1 * (1.0 - d))),
                    (idx(s, 0, B), BlockMat::Scalar(p1 * d)),
                ]
            })
            .collect(),
        rhs: np.eta0 * (1.0 - np.c0),
    });

    // Multipliers (per strategy) on the three difference rows plus 1 on the
    // normalization row give an adjoint equal to 1/4 on every entry, for
    // any confusability and priors: a strictly interior dual start.
    let mut hint = Vec::with_capacity(30);
    for _s in 0..9 {
        hint.push(p1 * (1.0 - d) - 0.25);
        hint.push(d - 0.25);
        hint.push(-0.25);
    }
    hint.push(1.0);
    hint.push(0.0);
    hint.push(0.0);

    let problem = ConicProblem {
        blocks,
        objective,
        constraints,
        dual_interior_hint: Some(hint),
    };

    // A zero right-hand side in a statistics row forces every variable with
    // a positive coefficient there to zero; remove them and the row so the
    // reduced primal regains an interior.
    if np.c0 == 1.0 || np.c0 == 0.0 {
        let mut removed = Vec::new();
        for s in 0..9 {
            if d > 0.0 {
                removed.push(idx(s, 0, B));
            }
            if d < 1.0 {
                removed.push(idx(s, 0, if np.c0 == 1.0 { A1 } else { A0 }));
            }
        }
        let dropped_row = if np.c0 == 1.0 { 29 } else { 28 };
        return reduce_problem(&problem, &removed, &[dropped_row]);
    }
    problem
}

/// Certified bound on the noncontextual eavesdropper's guessing
/// probability.
pub fn pg_noncontextual(np: &NoncontextualProgram) -> Result<CertificationResult, CertError> {
    let problem = build_primal_nc(np);
    // The reported bound inherits the duality gap, and this LP is small and
    // well-conditioned enough to close it an order tighter than the
    // semidefinite default; that keeps the bound within 1e-9 of the exact
    // vertex-enumeration value away from regime boundaries.
    let settings = SolverSettings {
        gap_tol: 1e-10,
        ..SolverSettings::default()
    };
    let solution = solve(&problem, &settings)?;
    match solution.status {
        SolveStatus::Optimal | SolveStatus::MaxIterations => {}
        SolveStatus::Infeasible => {
            return Err(CertError::InfeasibleStatistics(format!(
                "solver certified rate {} and confidence {} as unachievable",
                np.eta0, np.c0
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
        adversary: AdversaryModel::Noncontextual,
        certificate_valid: true,
        gap: solution.gap,
        status: solution.status.to_string(),
    })
}

/// Quantum eavesdropper attacking statistics achievable by a noncontextual
/// device, under the calibration delta^2 = confusability. Same program as
/// the quantum bound, evaluated at the device's (typically lower) maximal
/// confidence.
pub fn pg_nc_device_quantum_eve(
    np: &NoncontextualProgram,
) -> Result<CertificationResult, CertError> {
    let qp = QuantumProgram::new(np.priors, np.confusability.sqrt(), np.eta0, np.c0)?;
    let mut result = pg_quantum(&qp)?;
    result.adversary = AdversaryModel::QuantumVsNoncontextualDevice;
    Ok(result)
}

/// Maximum confidence for outcome 0 at rate `eta0` under noncontextual
/// strategies with confusability `confusability`, unbiased priors.
///
/// Piecewise linear in the rate: 1 up to (1-D)/2, then the exclusive region
/// saturates and the confusion region fills in, then from (1+D)/2 the
/// complementary exclusive region must also fire and C0 = 1/(2 eta0).
pub fn max_confidence_nc(confusability: f64, eta0: f64) -> Result<f64, ScenarioError> {
    if !(0.0..=1.0).contains(&confusability) || !confusability.is_finite() {
        return Err(ScenarioError::InvalidParameter(format!(
            "confusability must be in [0,1], got {confusability}"
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
    let d = confusability;
    let lower = (1.0 - d) / 2.0;
    let upper = (1.0 + d) / 2.0;
    if eta0 <= lower {
        return Ok(1.0);
    }
    if eta0 >= upper {
        return Ok(1.0 / (2.0 * eta0));
    }
    let beta0 = (2.0 * eta0 - (1.0 - d)) / (2.0 * d);
    Ok(((1.0 - d) + beta0 * d) / (2.0 * eta0))
}

/// Whether (eta0, c0) is noncontextually achievable for this confusability.
pub fn validate_statistics_nc(confusability: f64, eta0: f64, c0: f64) -> bool {
    let Ok(max_c0) = max_confidence_nc(confusability, eta0) else {
        return false;
    };
    if !(0.0..=1.0).contains(&c0) {
        return false;
    }
    c0 <= max_c0 + STATS_TOL && c0 * eta0 <= 0.5 + 1e-12
}
